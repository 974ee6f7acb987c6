"""Exact counts and asymptotic local laws for the number of small prime factors.

The package is split by concern:

``euler``    primes, Mertens-type products and the Euler product F(z)
``specfun``  Dickman, Buchstab and fractional Dickman functions
``sieve``    exact histograms of nu(n, y), friable sums, Legendre's Phi
``laws``     main terms of the local laws and regime classification
``harness``  experiment grids, histogram cache, reports and the CLI
"""

from .errors import BudgetError, DomainError

__all__ = ["BudgetError", "DomainError"]
__version__ = "0.1.0"
