"""Adequate-set certificates for field rigidity over the reals, p-adics,
rationals and finite fields."""

__version__ = "0.1.0"
