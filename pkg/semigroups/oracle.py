"""
Reference Enumerator
Slow set-based enumeration used to cross-check the bitmask walker: semigroups are
frozensets of gaps, generators are recomputed from scratch for every node and
strength is decided only by comparing a child's generators with its parent's;
descendants that can carry infinite chains come from a walk pruned by gcd alone
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import logging
import math
from typing import FrozenSet, Iterator, List, Set

logger = logging.getLogger(__name__)

Gaps = FrozenSet[int]


@dataclass
class NaiveLevel:
    g: int
    n_g: int = 0
    strong: int = 0
    weak: int = 0
    strong_histogram: Counter = field(default_factory=Counter)


def conductor(gaps: Gaps) -> int:
    return max(gaps) + 1 if gaps else 0


def multiplicity(gaps: Gaps) -> int:
    n = 1
    while n in gaps:
        n += 1
    return n


def generators(gaps: Gaps) -> List[int]:
    if not gaps:
        return [1]
    c, m = conductor(gaps), multiplicity(gaps)
    members = [n for n in range(1, c + m) if n not in gaps]
    member_set = set(members)
    return [
        n for n in members
        if not any(a in member_set and n - a in member_set for a in range(1, n))
    ]


def effective(gaps: Gaps) -> List[int]:
    c = conductor(gaps)
    return [e for e in generators(gaps) if e >= c]


def is_ordinary(gaps: Gaps) -> bool:
    return gaps == frozenset(range(1, conductor(gaps)))


def is_strong(gaps: Gaps, e: int) -> bool:
    """True iff removing e leaves a child with a generator its parent did not have."""
    parent_gens = set(effective(gaps))
    return any(x not in parent_gens for x in effective(gaps | {e}))


def levels(max_genus: int) -> List[Set[Gaps]]:
    result: List[Set[Gaps]] = [{frozenset()}]
    for _ in range(max_genus):
        result.append({parent | {e} for parent in result[-1] for e in effective(parent)})
    return result


def level_stats(max_genus: int) -> List[NaiveLevel]:
    """n_g, S_g, W_g and strong-count histograms with ordinary nodes left out of S and W."""
    table = []
    for g, level in enumerate(levels(max_genus)):
        row = NaiveLevel(g, n_g=len(level))
        for gaps in level:
            if is_ordinary(gaps):
                row.strong_histogram[0] += 1
                continue
            flags = [is_strong(gaps, e) for e in effective(gaps)]
            row.strong += sum(flags)
            row.weak += len(flags) - sum(flags)
            row.strong_histogram[sum(flags)] += 1
        table.append(row)
    logger.debug(f"Reference enumeration to genus {max_genus}: {[r.n_g for r in table]}")
    return table


def small_gcd(gaps: Gaps) -> int:
    """gcd of the nonzero members below the conductor, 0 when there are none."""
    return math.gcd(*(n for n in range(1, conductor(gaps)) if n not in gaps))


def is_generator(gaps: Gaps, n: int) -> bool:
    if n <= 0 or n in gaps:
        return False
    return not any(a not in gaps and n - a not in gaps for a in range(1, n))


def chain_descendants(gaps: Gaps, depth: int) -> Iterator[Gaps]:
    """
    Descendants exactly ``depth`` levels below ``gaps`` whose nonzero members below the
    conductor keep a common divisor other than 1, depth first. Descendants with gcd 1
    have finite subtrees, so these are the nodes infinite chains pass through.

    Removing any e > c + 1 puts c and c + 1 below the new conductor, so only c and
    c + 1 are tried at each level.
    """
    stack = [(gaps, 0)]
    while stack:
        current, level = stack.pop()
        if level == depth:
            yield current
            continue
        c = conductor(current)
        for e in (c + 1, c):
            if is_generator(current, e) and small_gcd(current | {e}) != 1:
                stack.append((current | {e}, level + 1))
