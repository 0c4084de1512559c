"""
Semigroup Core
Finite bitmask representation of a numerical semigroup and the per-element machinery
(enumeration, nu-sequence, D(i), generator tests, text formats)
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
import logging
import math
import re
from typing import Iterable, List, Tuple

from semigroups.errors import (
    BadParameter,
    GcdNotOne,
    IndexBelowConductor,
    NotClosed,
    NotMember,
    ParseError,
    RootHasNoParent,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Semigroup:
    """
    A numerical semigroup held as a membership bitmask over [0, bound).

    Bit n of ``mask`` is set iff n is a non-gap. The bound is always
    conductor + 2 * multiplicity, so two instances are equal exactly when their gap
    sets are equal. Every integer >= bound is implicitly a member.
    """
    mask: int
    bound: int
    conductor: int
    genus: int
    multiplicity: int

    @classmethod
    def from_small_mask(cls, low: int, conductor: int) -> "Semigroup":
        """Build from the membership bits below the conductor (bit conductor-1 clear)."""
        low &= (1 << conductor) - 1
        nonzero = low & ~1
        if nonzero:
            multiplicity = (nonzero & -nonzero).bit_length() - 1
        else:
            # ordinary, or the trivial semigroup whose multiplicity is reported as 1
            multiplicity = max(conductor, 1)
        bound = conductor + 2 * multiplicity
        mask = low | (((1 << bound) - 1) ^ ((1 << conductor) - 1))
        return cls(
            mask=mask,
            bound=bound,
            conductor=conductor,
            genus=conductor - low.bit_count(),
            multiplicity=multiplicity,
        )

    def __repr__(self) -> str:
        return f"Semigroup({canonical_string(self)})"

    # --- membership -------------------------------------------------------

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        return n >= self.conductor or bool(self.mask >> n & 1)

    @property
    def is_trivial(self) -> bool:
        return self.conductor == 0

    @property
    def is_ordinary(self) -> bool:
        return self.conductor == 0 or self.multiplicity == self.conductor

    @property
    def frobenius_number(self) -> int:
        return self.conductor - 1

    @cached_property
    def small_elements(self) -> Tuple[int, ...]:
        """Members below the conductor, ascending (lambda_0 .. lambda_{c-g-1})."""
        return tuple(n for n in range(self.conductor) if self.mask >> n & 1)

    @cached_property
    def gaps(self) -> Tuple[int, ...]:
        return tuple(n for n in range(1, self.conductor) if not self.mask >> n & 1)

    def members_below(self, limit: int) -> List[int]:
        small = [n for n in self.small_elements if n < limit]
        return small + list(range(self.conductor, limit))

    def gaps_below(self, limit: int) -> int:
        return bisect_left(self.gaps, limit)

    # --- tree moves -------------------------------------------------------

    def remove(self, e: int) -> "Semigroup":
        """Drop a generator e >= conductor; the result has conductor e + 1."""
        return Semigroup.from_small_mask(self.mask & ((1 << e) - 1), e + 1)

    def add_frobenius(self) -> "Semigroup":
        if self.is_trivial:
            raise RootHasNoParent("the trivial semigroup is the root of the tree")
        below = ~self.mask & ((1 << (self.conductor - 1)) - 1) & ~1
        conductor = below.bit_length()
        return Semigroup.from_small_mask(self.mask, conductor)

    # --- generators -------------------------------------------------------

    def is_decomposable(self, n: int) -> bool:
        """True iff n is a sum of two nonzero members."""
        for a in self.members_below(n // 2 + 1):
            if a and self.contains(n - a):
                return True
        return False

    @cached_property
    def minimal_generators(self) -> Tuple[int, ...]:
        if self.is_trivial:
            return (1,)
        top = self.conductor + self.multiplicity
        return tuple(
            n for n in self.members_below(top) if n and not self.is_decomposable(n)
        )

    def as_dict(self) -> dict:
        return {
            "gens": list(self.minimal_generators),
            "gaps": list(self.gaps),
            "c": self.conductor,
            "g": self.genus,
            "m": self.multiplicity,
        }


TRIVIAL = Semigroup.from_small_mask(0, 0)


def from_generators(gens: Iterable[int]) -> Semigroup:
    """
    Smallest additively closed set containing 0 and the generators.

    Sieves up to (max gen)^2, which lies above the Frobenius number of any coprime set.
    """
    gens = list(gens)
    if not gens or any(a <= 0 for a in gens):
        raise BadParameter(f"generators must be a nonempty list of positive integers, got {gens}")
    d = math.gcd(*gens)
    if d != 1:
        raise GcdNotOne(gens, d)
    if 1 in gens:
        return TRIVIAL

    top = max(gens) ** 2 + 1
    full = (1 << top) - 1
    reach = 1
    while True:
        grown = reach
        for a in gens:
            grown |= (grown << a) & full
        if grown == reach:
            break
        reach = grown
    conductor = (~reach & full).bit_length()
    return Semigroup.from_small_mask(reach, conductor)


def from_gaps(gaps: Iterable[int]) -> Semigroup:
    gaps = sorted(set(gaps))
    if any(x <= 0 for x in gaps):
        raise BadParameter(f"gaps must be positive integers, got {gaps}")
    if not gaps:
        return TRIVIAL
    conductor = gaps[-1] + 1
    low = (1 << conductor) - 1
    for x in gaps:
        low &= ~(1 << x)

    members = [n for n in range(1, conductor) if low >> n & 1]
    for i, a in enumerate(members):
        for b in members[i:]:
            if a + b >= conductor:
                break
            if not low >> (a + b) & 1:
                raise NotClosed(a, b)
    return Semigroup.from_small_mask(low, conductor)


def contains(s: Semigroup, n: int) -> bool:
    return s.contains(n)


def lambda_(s: Semigroup, i: int) -> int:
    """The i-th member in increasing order; lambda_i = i + g once lambda_i >= c."""
    if i < 0:
        raise BadParameter(f"enumeration index must be non-negative, got {i}")
    small = s.small_elements
    if i < len(small):
        return small[i]
    return i + s.genus


def lambda_index(s: Semigroup, n: int) -> int:
    if not s.contains(n):
        raise NotMember(f"{n} is a gap of {canonical_string(s)}")
    if n >= s.conductor:
        return n - s.genus
    return bisect_left(s.small_elements, n)


def minimal_generators(s: Semigroup) -> List[int]:
    return list(s.minimal_generators)


def d_set(s: Semigroup, i: int) -> set[int]:
    """Gaps l with lambda_i - l also a gap; symmetric pairs contribute both elements."""
    value = lambda_(s, i)
    return {l for l in s.gaps if l <= value and not s.contains(value - l)}


def nu(s: Semigroup, i: int) -> int:
    """#{j : lambda_i - lambda_j in the semigroup}, counted directly."""
    value = lambda_(s, i)
    return sum(1 for x in s.members_below(value + 1) if s.contains(value - x))


def nu_by_formula(s: Semigroup, i: int) -> int:
    """i - g(i) + #D(i) + 1 with g(i) the number of gaps below lambda_i."""
    value = lambda_(s, i)
    return i - s.gaps_below(value) + len(d_set(s, i)) + 1


def is_generator_above_conductor(s: Semigroup, i: int) -> bool:
    value = lambda_(s, i)
    if value < s.conductor:
        raise IndexBelowConductor(
            f"lambda_{i} = {value} is below the conductor {s.conductor}"
        )
    return len(d_set(s, i)) == s.genus - i + 1


# --- text formats -------------------------------------------------------------

_NUMBER = re.compile(r"\s*(\d+)\s*")
_BLANK = re.compile(r"\s*")


def canonical_string(s: Semigroup) -> str:
    return "<" + ",".join(str(a) for a in s.minimal_generators) + ">"


def _parse_list(body: str, offset: int, closer: str, allow_empty: bool) -> List[int]:
    pos = 1
    numbers: List[int] = []
    blank = _BLANK.match(body, pos).end()
    if blank < len(body) and body[blank] == closer:
        if not allow_empty:
            raise ParseError("empty generator list", offset + blank)
        pos = blank + 1
    else:
        while True:
            match = _NUMBER.match(body, pos)
            if not match:
                raise ParseError("expected a non-negative integer", offset + pos)
            numbers.append(int(match.group(1)))
            pos = match.end()
            if pos < len(body) and body[pos] == ",":
                pos += 1
                continue
            if pos < len(body) and body[pos] == closer:
                pos += 1
                break
            raise ParseError(f"expected ',' or '{closer}'", offset + pos)
    if pos != len(body):
        raise ParseError("unexpected trailing characters", offset + pos)
    return numbers


def parse(text: str) -> Semigroup:
    """
    Parse "<a1,a2,...>" (generators) or "G:{g1,g2,...}" (gaps).

    Raises:
        ParseError: with the offending position in ``text``
        GcdNotOne, NotClosed: propagated from the constructors
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if stripped.startswith("<"):
        return from_generators(_parse_list(stripped, offset, ">", allow_empty=False))
    if stripped.startswith("G:{"):
        return from_gaps(_parse_list(stripped[2:], offset + 2, "}", allow_empty=True))
    raise ParseError("expected '<' or 'G:{'", offset)
