#!/usr/bin/env python3
"""
Packaging for the kgframes toolkit.
Installs the top-level packages and the `kgframes` command.
"""

from setuptools import find_packages, setup


def read_requirements():
    """Runtime requirements, i.e. requirements.txt without the testing block."""
    requirements = []
    with open("requirements.txt", encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line.startswith("# Testing"):
                break
            if line and not line.startswith("#"):
                requirements.append(line)
    return requirements


setup(
    name="kgframes",
    version="0.1.0",
    description="Certified K-g-frame constructions over the matrix algebra M_d",
    packages=find_packages(include=["algebra", "hilbert", "frames", "constructions", "harness"]),
    py_modules=["cli", "config", "errors", "graph"],
    python_requires=">=3.9",
    install_requires=read_requirements(),
    extras_require={"test": ["pytest==8.3.3", "hypothesis==6.112.1"]},
    entry_points={"console_scripts": ["kgframes=cli:main"]},
)
