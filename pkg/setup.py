#!/usr/bin/env python
import io

# Always prefer setuptools over distutils
from setuptools import setup

from kemmer import __version__

with io.open("README.md", "rt", encoding="utf8") as f:
    readme = f.read()

setup(
    name="kemmer",
    version=__version__,
    description="Exact verification of Kemmer-Duffin-Petiau operator identities.",
    long_description=readme,
    long_description_content_type="text/markdown",
    packages=["kemmer"],
    python_requires=">=3.8",
    install_requires=["sympy>=1.12", "numpy>=1.22", "scipy>=1.8"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["kemmer=kemmer.cli:entry"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    license="MIT",
)
