"""
Semigroup Classes
Ordinary, symmetric, pseudo-symmetric, hyperelliptic, Arf and irreducible predicates,
and the explicit pseudo-symmetric families
"""
from __future__ import annotations

from dataclasses import dataclass, fields
import logging
from typing import Iterator, List

from semigroups.core import Semigroup, canonical_string, from_gaps
from semigroups.errors import BadGenus, BadParameter, LemmaViolation
from semigroups.tree import children

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassFlags:
    ordinary: bool
    symmetric: bool
    pseudo_symmetric: bool
    hyperelliptic: bool
    arf: bool
    irreducible: bool

    def labels(self) -> List[str]:
        """Names of the set flags, in declaration order."""
        return [f.name for f in fields(self) if getattr(self, f.name)]


def is_ordinary(s: Semigroup) -> bool:
    return s.is_ordinary


def _mirror_holds(s: Semigroup, skip_middle: bool) -> bool:
    c = s.conductor
    for i in range(c):
        if skip_middle and 2 * i == c - 1:
            continue
        if (not s.contains(i)) != s.contains(c - 1 - i):
            return False
    if skip_middle:
        return c % 2 == 1 and not s.contains((c - 1) // 2)
    return True


def is_symmetric(s: Semigroup) -> bool:
    """c = 2g, cross-checked against the mirror property (i gap iff c-1-i member)."""
    by_count = s.conductor == 2 * s.genus
    if by_count != _mirror_holds(s, skip_middle=False):
        raise LemmaViolation(f"symmetry tests disagree on {canonical_string(s)}")
    return by_count


def is_pseudo_symmetric(s: Semigroup) -> bool:
    """c = 2g - 1, cross-checked against the mirror property away from (c-1)/2."""
    by_count = s.conductor == 2 * s.genus - 1
    if by_count != _mirror_holds(s, skip_middle=True):
        raise LemmaViolation(f"pseudo-symmetry tests disagree on {canonical_string(s)}")
    return by_count


def is_hyperelliptic(s: Semigroup) -> bool:
    gens = s.minimal_generators
    return len(gens) == 2 and gens[0] == 2


def is_irreducible(s: Semigroup) -> bool:
    return is_symmetric(s) or is_pseudo_symmetric(s)


def is_arf(s: Semigroup) -> bool:
    """
    lambda_i + lambda_j - lambda_k in the semigroup for all i >= j >= k.

    Only triples with lambda_i < c are checked: otherwise the value is at least
    lambda_i >= c and is a member.
    """
    small = s.small_elements
    for i, x in enumerate(small):
        for j in range(i + 1):
            y = small[j]
            for k in range(j + 1):
                if not s.contains(x + y - small[k]):
                    return False
    return True


def class_flags(s: Semigroup) -> ClassFlags:
    symmetric = is_symmetric(s)
    pseudo = is_pseudo_symmetric(s)
    return ClassFlags(
        ordinary=is_ordinary(s),
        symmetric=symmetric,
        pseudo_symmetric=pseudo,
        hyperelliptic=is_hyperelliptic(s),
        arf=is_arf(s),
        irreducible=symmetric or pseudo,
    )


def non_gap_intervals(s: Semigroup) -> int:
    """Maximal runs of consecutive members strictly between 0 and the conductor."""
    runs = 0
    previous = None
    for n in s.small_elements[1:]:
        if previous is None or n != previous + 1:
            runs += 1
        previous = n
    return runs


def arf_children(s: Semigroup) -> List[Semigroup]:
    return [child for child in children(s) if is_arf(child)]


def arf_generator_test(s: Semigroup) -> Iterator[tuple[int, bool, bool]]:
    """
    For an Arf semigroup, a member other than 0 and the multiplicity is a generator
    iff subtracting the multiplicity leaves a gap. Yields (member, is_generator,
    predicted) for every member below conductor + multiplicity.
    """
    m = s.multiplicity
    gens = set(s.minimal_generators)
    for n in s.members_below(s.conductor + m):
        if n in (0, m):
            continue
        yield n, n in gens, not s.contains(n - m)


# --- explicit families --------------------------------------------------------

def ps_family(g: int) -> Semigroup:
    """{0, g, g+1, ..., 2g-3} U [2g-1, inf): the one-interval pseudo-symmetric semigroup."""
    if g < 3:
        raise BadGenus(f"the one-interval pseudo-symmetric family needs g >= 3, got {g}")
    gaps = list(range(1, g)) + [2 * g - 2]
    return from_gaps(gaps)


def ps_mult3_family(k: int, variant: str) -> Semigroup:
    """
    Pseudo-symmetric semigroups of multiplicity 3.

    Variant A has genus 3k and members {0, 3, ..., 3k} U {3(k+i)-1, 3(k+i) : 1 <= i <= k-1}
    below the conductor 3(2k-1)+2; variant B has genus 3k+2 and members
    {0, 3, ..., 3k} U {3(k+i), 3(k+i)+1 : 1 <= i <= k} below the conductor 6k+3.
    """
    if k < 1:
        raise BadParameter(f"k must be at least 1, got {k}")
    members = {3 * i for i in range(k + 1)}
    if variant == "A":
        for i in range(1, k):
            members |= {3 * (k + i) - 1, 3 * (k + i)}
        conductor = 3 * (2 * k - 1) + 2
    elif variant == "B":
        for i in range(1, k + 1):
            members |= {3 * (k + i), 3 * (k + i) + 1}
        conductor = 6 * k + 3
    else:
        raise BadParameter(f"variant must be 'A' or 'B', got {variant!r}")
    return from_gaps(n for n in range(1, conductor) if n not in members)
