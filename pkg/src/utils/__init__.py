"""Shared helpers for logging, file output and number formatting."""
