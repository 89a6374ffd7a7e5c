"""Exact tools for the quintic equal-sum equation a^5 + b^5 = c^5 + d^5 on linear slices."""

__version__ = "0.1.0"
