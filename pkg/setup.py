# dendrifield - neural field with dendritic processing
from pathlib import Path

from setuptools import setup, find_packages

setup(
    name="dendrifield",
    version="0.1.0",
    description="Neural field with dendritic cables: IMEX stepper, wave-speed and Turing analysis",
    long_description=Path(__file__).with_name("README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24.0",
        "scipy>=1.10.0",
        "PyYAML>=6.0.0",
    ],
    extras_require={
        "test": ["pytest>=7.0.0", "pytest-cov>=4.0.0"],
    },
    entry_points={
        "console_scripts": ["dendrifield=dendrifield.cli:main"],
    },
)
