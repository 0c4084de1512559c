"""
Semigroups
Numerical semigroups as bitmasks, the semigroup tree and the analyses built on it
"""
from semigroups.core import TRIVIAL, Semigroup, from_gaps, from_generators, parse
from semigroups.errors import SemigroupError

__all__ = ["TRIVIAL", "Semigroup", "SemigroupError", "from_gaps", "from_generators", "parse"]
