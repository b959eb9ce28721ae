# Copyright (c) 2025 Alphonce Liguori Oreny. All rights reserved.
# This software is proprietary and confidential.
# Unauthorized copying of this file, via any medium is strictly prohibited.

"""
Setup configuration for magtm package.
"""

from setuptools import find_packages, setup

setup(
    name="magtm",
    version="1.0.0",
    description="Numerical checks for magnetic Trudinger-Moser inequalities",
    author="Alphonce Liguori Oreny (Agent ALO)",
    author_email="orenyalphy256@gmail.com",
    license="Proprietary",
    packages=find_packages(exclude=["tests", "tests.*", "tests.*.*", "logs", "logs.*", "examples*"]),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "python-dotenv>=1.0.0",
        "cachetools>=5.5.0",
    ],
    extras_require={
        "color": ["colorama>=0.4.6"],
        "dev": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "coverage>=7.3.2",
            "flake8>=7.0.0",
            "black>=23.12.1",
        ],
    },
    entry_points={
        "console_scripts": [
            "magtm=magtm.cli:main",
        ]
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3.9",
    ],
)
