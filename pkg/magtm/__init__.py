# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""

magtm package - Numerical Checks for Magnetic Trudinger-Moser Inequalities
"""

from magtm.config import Config

__version__ = Config.APP_VERSION
