"""Exact, simulated and asymptotic failure probabilities of binary and
box-constrained l1 recovery from Gaussian measurements."""

__version__ = "0.1.0"
