"""Binary permutation actions of small simple groups, computed by brute force."""

__version__ = "0.1.0"
