"""Exact algebraic number theory around Q-adic closures of rings of integers.

The package builds number fields with their rings of integers, factors
rational primes, computes decomposition groups and fields, decides Q-adic
closure membership by two independent methods, constructs integer-valued
witness polynomials and reduces unimodular pairs by elementary operations.
"""
from .errors import DedekindError
from .fieldspec import catalog_field, load_field
from .numberfield import RATIONALS, FieldElement, NumberField, make_field, rational_embedding
from .primes import INFINITY, PrimeIdeal, factor_prime, primes_above, valuation

__all__ = [
    "DedekindError",
    "FieldElement",
    "INFINITY",
    "NumberField",
    "PrimeIdeal",
    "RATIONALS",
    "catalog_field",
    "factor_prime",
    "load_field",
    "make_field",
    "primes_above",
    "rational_embedding",
    "valuation",
]
