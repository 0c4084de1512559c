"""
Tree A
Level multisets of the abstract label tree, the generalized L_k recursion from an
arbitrary admissible seed, and exact Fibonacci checks
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import logging
from typing import Dict, Iterable, List, Mapping, Tuple

from semigroups.errors import BadParameter, BadSeed

logger = logging.getLogger(__name__)


@dataclass
class LabelMultiset:
    """Count per label; counts are exact Python integers."""
    counts: Counter = field(default_factory=Counter)

    @classmethod
    def of(cls, labels: Mapping[int, int] | Iterable[int]) -> "LabelMultiset":
        if isinstance(labels, Mapping):
            return cls(Counter({k: v for k, v in labels.items() if v}))
        return cls(Counter(labels))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_label(self) -> int:
        return max(self.counts, default=-1)

    def as_dict(self) -> Dict[int, int]:
        return {k: self.counts[k] for k in sorted(self.counts) if self.counts[k]}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabelMultiset):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def at_least(self, t: int) -> int:
        return sum(v for k, v in self.counts.items() if k >= t)


def _step(previous: LabelMultiset, k: int) -> LabelMultiset:
    """{k+1} U (union over m of {0..m-1}) minus one copy of k-2."""
    top = previous.max_label
    expanded: Counter = Counter()
    running = 0
    # label x appears once for every m > x
    for x in range(top - 1, -1, -1):
        running += previous.counts.get(x + 1, 0)
        if running:
            expanded[x] = running
    expanded[k + 1] += 1
    if expanded[k - 2] == 0:
        raise BadSeed(f"level {k} has no label {k - 2} to remove")
    expanded[k - 2] -= 1
    return LabelMultiset.of(expanded)


def a_level(g: int) -> LabelMultiset:
    if g < 0:
        raise BadParameter(f"level must be non-negative, got {g}")
    level = LabelMultiset.of({1: 1})
    if g == 0:
        return level
    level = LabelMultiset.of({2: 1})
    for k in range(2, g + 1):
        level = _step(level, k)
    return level


def a_levels(g_max: int) -> List[LabelMultiset]:
    """A_0 .. A_{g_max} in one pass."""
    levels = [LabelMultiset.of({1: 1})]
    if g_max >= 1:
        levels.append(LabelMultiset.of({2: 1}))
    for k in range(2, g_max + 1):
        levels.append(_step(levels[-1], k))
    return levels


def validate_seed(l: int, seed: LabelMultiset) -> None:
    if l < 2:
        raise BadSeed(f"l must be at least 2, got {l}")
    for label, count in seed.counts.items():
        if count < 0:
            raise BadSeed(f"negative multiplicity for label {label}")
        if label < 0:
            raise BadSeed(f"negative label {label}")
        if label in (l - 1, l + 1):
            if count != 1:
                raise BadSeed(f"label {label} must appear exactly once, found {count}")
        elif label > l - 2 and count:
            raise BadSeed(f"label {label} not allowed in a seed for l = {l}")
    for label in (l - 1, l + 1):
        if seed.counts.get(label, 0) != 1:
            raise BadSeed(f"seed for l = {l} must contain label {label} exactly once")


def l_recursion(l: int, seed: LabelMultiset, k_max: int) -> List[LabelMultiset]:
    """[L_l, L_{l+1}, ..., L_{k_max}] starting from an admissible seed L_l."""
    validate_seed(l, seed)
    levels = [seed]
    for k in range(l + 1, k_max + 1):
        levels.append(_step(levels[-1], k))
    return levels


def fibonacci(n: int) -> int:
    """F_0 = 0, F_1 = F_2 = 1."""
    if n < 0:
        raise BadParameter(f"fibonacci index must be non-negative, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def dominates(tree_labels: LabelMultiset, level: LabelMultiset) -> bool:
    """
    True iff ``level`` embeds into ``tree_labels`` label-wise from above: for every
    threshold t, at least as many tree nodes as A-nodes carry a label >= t.
    """
    top = max(tree_labels.max_label, level.max_label)
    return all(level.at_least(t) <= tree_labels.at_least(t) for t in range(top + 1))


def tree_a_rows(levels: List[LabelMultiset], start: int = 0) -> List[Tuple[int, int, int, Dict[int, int]]]:
    """(level, total, 2F_level, label counts) per level, numbering from ``start``."""
    return [
        (start + k, level.total, 2 * fibonacci(start + k), level.as_dict())
        for k, level in enumerate(levels)
    ]


def parse_seed(text: str) -> LabelMultiset:
    """Parse "label:count,label:count,..." (a bare label counts once)."""
    counts: Counter = Counter()
    for part in filter(None, (p.strip() for p in text.split(","))):
        label, _, count = part.partition(":")
        try:
            counts[int(label)] += int(count) if count else 1
        except ValueError:
            raise BadSeed(f"cannot read seed entry {part!r}") from None
    return LabelMultiset.of(counts)
