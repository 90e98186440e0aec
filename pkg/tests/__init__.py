"""Test package for the PV performance toolkit."""
