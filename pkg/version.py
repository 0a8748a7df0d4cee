# to show the CHANGELOG: git log -- version.py
__version__ = "0.1.0"
