# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
serializers/ - Output File Contracts

STABLE OUTPUT CONTRACT
----------------------
Files written here are compared byte-for-byte across re-runs.

1. FROZEN FIELDS: Existing columns and keys must NEVER be removed or renamed.
2. STABLE ORDER: JSON keys are sorted; CSV columns follow the first row's key order.
3. NO TIMESTAMPS: Outputs carry the seed and parameters, never the wall clock.
4. CONVENTIONS: Field files carry convention_version; bump it when the Fourier
   normalization or node placement changes.
"""

from .certificates import (
    bound_certificate_from_dict,
    certificate_from_dict,
    certificate_to_dict,
    read_certificate,
    write_certificate,
)
from .fields import read_field, write_field
from .tables import format_table, parse_csv_table, write_table

__all__ = [
    "certificate_to_dict",
    "certificate_from_dict",
    "bound_certificate_from_dict",
    "write_certificate",
    "read_certificate",
    "write_field",
    "read_field",
    "format_table",
    "write_table",
    "parse_csv_table",
]
