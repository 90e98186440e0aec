"""Source package for the PV performance toolkit."""

__version__ = "0.1.0"
