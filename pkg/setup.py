"""A setuptools based setup module.

See:
https://packaging.python.org/guides/distributing-packages-using-setuptools/
https://github.com/pypa/sampleproject
"""

import pathlib

# Always prefer setuptools over distutils
from setuptools import find_packages, setup

here = pathlib.Path(__file__).parent.resolve()

# Get the long description from the README file
long_description = (here / "README.md").read_text(encoding="utf-8")

setup(
    name="troplin",  # Required
    version="v0.1.0",  # Required
    description="Tropical lines through two columns of a normal idempotent max-plus matrix.",
    long_description=long_description,  # Optional
    long_description_content_type="text/markdown",  # Optional
    packages=find_packages(
        exclude=["tests"],
    ),  # Required
    python_requires=">=3.9, <4",
    install_requires=[
        "numpy>=1.17",
    ],  # Optional
    extras_require={
        "tests": ["flake8", "pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": ["troplin = troplin.cli:main"],
    },
)
