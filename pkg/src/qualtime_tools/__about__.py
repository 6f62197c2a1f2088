"""The `__about__` module exposes the version of the `qualtime_tools` package"""

__version__ = "0.1.0"
"""`qualtime-tools` package version."""
