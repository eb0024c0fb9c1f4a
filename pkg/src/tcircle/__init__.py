"""tcircle: exact cylindrical (t-circle) and book crossing number toolkit."""

__version__ = "0.1.0"
