"""Version information for numrec."""

__version__ = "0.1.0"
