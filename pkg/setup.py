from setuptools import find_packages, setup  # type: ignore
from version import __version__

setup(
    name="spincorr",
    version=__version__,
    packages=find_packages(exclude=["tests"]),
    package_data={"spincorr": ["py.typed"]},
    python_requires=">=3.8",
    install_requires=["numpy>=1.22", "scipy>=1.8"],
    entry_points={"console_scripts": ["spincorr=spincorr.cli:main"]},
    license="Apache 2.",
    description="Net pairwise quantum correlation of N two-level atoms under one-axis twisting",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
)
