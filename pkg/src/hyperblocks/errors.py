"""Shared exception types."""


class CapacityError(Exception):
    """An enumeration or search exceeds its configured budget."""
