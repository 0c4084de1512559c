"""
Infinite Chains
Decides infinite-chain membership from the gcd of the non-gaps below the conductor,
finds the deepest descendant of finite subtrees and counts chains for prime gcd
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import List, Optional, Tuple, Union

from semigroups.core import TRIVIAL, Semigroup, canonical_string, from_gaps, from_generators
from semigroups.errors import BadParameter, NotApplicable, NotEffective, TrivialSemigroup
from semigroups.tree import Strength, classify, effective_generators, iter_subtree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteSubtree:
    deepest: Semigroup
    max_genus: int


@dataclass(frozen=True)
class FinitelyManyChains:
    count: int
    witnesses: Tuple[Semigroup, ...]
    # descendants of the statement-4 base counted without the trace condition; None if infinite
    literal_descendant_count: Optional[int] = None


@dataclass(frozen=True)
class InfinitelyManyChains:
    pass


Verdict = Union[FiniteSubtree, FinitelyManyChains, InfinitelyManyChains]


@dataclass(frozen=True)
class ChainAnalysis:
    d: int
    verdict: Verdict

    @property
    def in_infinite_chain(self) -> bool:
        return not isinstance(self.verdict, FiniteSubtree)


@dataclass(frozen=True)
class BoundsCheck:
    effective_lb_ok: bool
    strong_lb_ok: bool
    notes: List[str] = field(default_factory=list)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


def small_element_gcd(s: Semigroup) -> int:
    """gcd of the nonzero members below the conductor; 0 for ordinary semigroups."""
    if s.is_trivial:
        raise TrivialSemigroup("the trivial semigroup has no members below its conductor")
    return math.gcd(*s.small_elements[1:])


def chain_base(s: Semigroup, d: int) -> Tuple[Semigroup, int]:
    """
    The semigroup {lambda_i / d : i < c - g} U [ceil(c/d), inf) and the threshold ceil(c/d).

    Every semigroup whose members below the threshold are exactly the lambda_i / d
    is a descendant of this base reached by removing only elements >= threshold.
    """
    threshold = -(-s.conductor // d)
    trace = {x // d for x in s.small_elements}
    return from_gaps(n for n in range(1, threshold) if n not in trace), threshold


def _literal_descendant_count(base: Semigroup) -> Optional[int]:
    if base.is_trivial or small_element_gcd(base) != 1:
        return None
    return sum(1 for _ in iter_subtree(base, None))


def analyze(s: Semigroup) -> ChainAnalysis:
    """
    Chain verdict for a non-trivial semigroup.

    Ordinary semigroups have the whole tree below them and are reported as lying in
    infinitely many chains with d = 0.
    """
    d = small_element_gcd(s)
    if d == 0:
        return ChainAnalysis(d, InfinitelyManyChains())
    if d == 1:
        deepest = from_generators(s.small_elements[1:])
        return ChainAnalysis(d, FiniteSubtree(deepest, deepest.genus))
    if not is_prime(d):
        return ChainAnalysis(d, InfinitelyManyChains())

    base, threshold = chain_base(s, d)
    witnesses = tuple(
        n.semigroup for n in iter_subtree(base, None, admit=lambda e: e >= threshold)
    )
    literal = _literal_descendant_count(base)
    if literal is not None and literal != len(witnesses):
        logger.info(
            f"{canonical_string(s)}: {len(witnesses)} chains, literal descendant count "
            f"of {canonical_string(base)} is {literal}"
        )
    return ChainAnalysis(d, FinitelyManyChains(len(witnesses), witnesses, literal))


def in_scaled(d: int, base: Semigroup, x: int) -> bool:
    """Membership of x in d * base."""
    return x % d == 0 and base.contains(x // d)


def chain_prefix(d: int, base: Semigroup, max_genus: int) -> List[Semigroup]:
    """
    The chain d*base U [j, inf), j = 0, 1, ..., with repetitions deleted, up to max_genus.

    Consecutive entries differ by one gap: the next integer outside d*base.
    """
    if d < 2:
        raise BadParameter(f"chains need d >= 2, got {d}")
    if max_genus < 0:
        raise BadParameter(f"max_genus must be non-negative, got {max_genus}")
    entries = [TRIVIAL]
    gaps: List[int] = []
    x = 0
    while len(gaps) < max_genus:
        x += 1
        if in_scaled(d, base, x):
            continue
        gaps.append(x)
        entries.append(from_gaps(gaps))
    return entries


def in_chain(s: Semigroup, d: int, base: Semigroup) -> bool:
    """True iff s lies on the chain generated by (d, base)."""
    return all(s.contains(x) == in_scaled(d, base, x) for x in range(s.conductor))


def effective_generator_bounds_check(s: Semigroup) -> BoundsCheck:
    """
    Lower bounds on effective and strong generators of a semigroup with d > 1.

    (a) members in [c, c + m) not divisible by d are generators;
    (b) with two or more nonzero members below c, members in [c, c + d) not divisible
        by d are strong;
    (c) with exactly one nonzero member below c, c or c + 1 is strong.
    """
    d = small_element_gcd(s)
    if d <= 1:
        raise NotApplicable(f"{canonical_string(s)} has d = {d}, the bounds need d > 1")
    c, m = s.conductor, s.multiplicity
    gens = set(s.minimal_generators)
    effective = effective_generators(s)
    notes: List[str] = []

    window = [n for n in range(c, c + m) if n % d]
    missing = [n for n in window if n not in gens]
    effective_lb_ok = not missing and len(effective) >= m - m // d
    if missing:
        notes.append(f"not generators: {missing}")

    def strong(n: int) -> bool:
        try:
            return classify(s, n) is Strength.STRONG
        except NotEffective:
            return False

    if len(s.small_elements) - 1 >= 2:
        weak = [n for n in range(c, c + d) if n % d and not strong(n)]
        strong_lb_ok = not weak
        if weak:
            notes.append(f"not strong: {weak}")
    else:
        strong_lb_ok = strong(c) or strong(c + 1)
    return BoundsCheck(effective_lb_ok, strong_lb_ok, notes)
