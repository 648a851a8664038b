"""Exact factorization of rational primes in number fields defined by monic
squarefree integer polynomials, using Newton polygons of higher order."""

__version__ = "0.1.0"

from .zpoly import IntPolynomial  # noqa: F401
