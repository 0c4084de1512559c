"""
Genus Statistics
Per-genus aggregates from one tree walk (n_g, strong/weak totals, strong-count
histograms, node kinds, class counts) and the evidence reports built from them
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from semigroups.classes import class_flags
from semigroups.errors import BadParameter, InsufficientRange
from semigroups.tree import TreeNode, Visitor, walk
from semigroups.tree_a import fibonacci

logger = logging.getLogger(__name__)

CLASS_NAMES = (
    "symmetric",
    "pseudo_symmetric",
    "hyperelliptic",
    "arf",
    "ordinary",
    "irreducible",
)


class StrengthConvention(str, Enum):
    """Whether generators of ordinary nodes enter S_g, W_g and the histograms"""
    EXCLUDE_ORDINARY = "exclude-ordinary"
    INCLUDE_ORDINARY = "include-ordinary"


@dataclass
class GenusStats:
    g: int
    n_g: int = 0
    strong: int = 0
    weak: int = 0
    strong_histogram: Counter = field(default_factory=Counter)
    kind_counts: Counter = field(default_factory=Counter)
    class_counts: Counter = field(default_factory=Counter)

    def merge(self, other: "GenusStats") -> None:
        if other.g != self.g:
            raise BadParameter(f"cannot merge genus {other.g} into genus {self.g}")
        self.n_g += other.n_g
        self.strong += other.strong
        self.weak += other.weak
        self.strong_histogram.update(other.strong_histogram)
        self.kind_counts.update(other.kind_counts)
        self.class_counts.update(other.class_counts)

    def histogram(self, i: int) -> int:
        return self.strong_histogram.get(i, 0)

    @property
    def strong_weak_ratio(self) -> Optional[Fraction]:
        return Fraction(self.strong, self.weak) if self.weak else None


@dataclass
class StatsOptions:
    include_ordinary: bool = False
    workers: int = 1
    partition_genus: Optional[int] = None
    incremental: bool = True
    with_classes: bool = True

    @property
    def convention(self) -> StrengthConvention:
        if self.include_ordinary:
            return StrengthConvention.INCLUDE_ORDINARY
        return StrengthConvention.EXCLUDE_ORDINARY


class StatsCollector(Visitor):
    """Visitor accumulating one GenusStats per genus."""

    def __init__(self, include_ordinary: bool = False, with_classes: bool = True):
        self.include_ordinary = include_ordinary
        self.with_classes = with_classes
        self.rows: Dict[int, GenusStats] = {}

    def __call__(self, tree_node: TreeNode) -> None:
        row = self.rows.get(tree_node.genus)
        if row is None:
            row = self.rows[tree_node.genus] = GenusStats(tree_node.genus)
        row.n_g += 1
        row.kind_counts[tree_node.kind.value] += 1
        if tree_node.is_ordinary and not self.include_ordinary:
            row.strong_histogram[0] += 1
        else:
            strong = tree_node.strong_count
            row.strong += strong
            row.weak += len(tree_node.effective_gens) - strong
            row.strong_histogram[strong] += 1
        if self.with_classes:
            row.class_counts.update(class_flags(tree_node.semigroup).labels())

    def spawn(self) -> "StatsCollector":
        return StatsCollector(self.include_ordinary, self.with_classes)

    def merge(self, other: "StatsCollector") -> None:
        for g, row in other.rows.items():
            if g in self.rows:
                self.rows[g].merge(row)
            else:
                self.rows[g] = row

    def table(self) -> List[GenusStats]:
        return [self.rows[g] for g in sorted(self.rows)]


def aggregate(max_genus: int, options: Optional[StatsOptions] = None) -> List[GenusStats]:
    """One GenusStats per genus 0..max_genus from a single walk."""
    options = options or StatsOptions()
    collector = StatsCollector(options.include_ordinary, options.with_classes)
    walk(
        max_genus,
        collector,
        incremental=options.incremental,
        workers=options.workers,
        partition_genus=options.partition_genus,
    )
    table = collector.table()
    logger.info(
        f"Aggregated genus 0..{max_genus} ({options.convention.value}): "
        f"{sum(row.n_g for row in table)} semigroups"
    )
    return table


# --- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class DiagonalEntry:
    j: int
    value: int
    stabilized: bool
    samples: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class EODiagonals:
    e: List[DiagonalEntry]
    o: List[DiagonalEntry]

    def stable_prefix(self, which: str) -> List[int]:
        """Values of the leading run of stabilized entries."""
        prefix = []
        for entry in getattr(self, which):
            if not entry.stabilized:
                break
            prefix.append(entry.value)
        return prefix


class GenusIndexing(str, Enum):
    """
    Which genus a histogram diagonal is read at. LITERAL takes e from even g along
    n^{floor((g-1)/2) - j}_g; SHIFTED reads every row one genus later, so e comes
    from odd g along n^{floor(g/2) - j}_g and the histogram bound becomes i <= floor(g/2)
    """
    LITERAL = "literal"
    SHIFTED = "shifted"

    @property
    def shift(self) -> int:
        return 1 if self is GenusIndexing.SHIFTED else 0


def _diagonal(stats: Sequence[GenusStats], j: int, parity: int, shift: int = 0) -> DiagonalEntry:
    samples = tuple(
        (row.g, row.histogram((row.g + shift - 1) // 2 - j))
        for row in stats
        if row.g + shift >= 1 and (row.g + shift) % 2 == parity and (row.g + shift - 1) // 2 - j >= 0
    )
    tail = [value for _, value in samples[-3:]]
    stabilized = len(tail) == 3 and len(set(tail)) == 1
    return DiagonalEntry(j, samples[-1][1] if samples else 0, stabilized, samples)


def eo_diagonals(
    stats: Sequence[GenusStats],
    j_max: Optional[int] = None,
    indexing: GenusIndexing = GenusIndexing.LITERAL,
) -> EODiagonals:
    """
    Diagonals n^{floor((h-1)/2) - j}_g along even h (e) and odd h (o), h being
    g plus the shift of the indexing.

    An entry is stabilized when its last three samples agree.

    Raises:
        InsufficientRange: the table does not reach h = 2 * j_max + 4
    """
    last = max((row.g for row in stats), default=-1)
    top = last + indexing.shift
    if j_max is None:
        j_max = (top - 4) // 2
        if j_max < 0:
            raise InsufficientRange(f"diagonals need genus >= {4 - indexing.shift}, table stops at {last}")
    if top < 2 * j_max + 4:
        raise InsufficientRange(
            f"diagonal j = {j_max} needs genus {2 * j_max + 4 - indexing.shift}, table stops at {last}"
        )
    return EODiagonals(
        e=[_diagonal(stats, j, parity=0, shift=indexing.shift) for j in range(j_max + 1)],
        o=[_diagonal(stats, j, parity=1, shift=indexing.shift) for j in range(j_max + 1)],
    )


@dataclass(frozen=True)
class BoundsRow:
    g: int
    n_g: int
    lower: int
    upper: int

    @property
    def lower_ok(self) -> bool:
        return self.lower <= self.n_g

    @property
    def upper_ok(self) -> bool:
        return self.n_g <= self.upper


def bounds_report(stats: Sequence[GenusStats]) -> List[BoundsRow]:
    """2F_g <= n_g <= 1 + 3 * 2^(g-3) for every genus >= 3 in the table."""
    rows = [
        BoundsRow(row.g, row.n_g, 2 * fibonacci(row.g), 1 + 3 * 2 ** (row.g - 3))
        for row in stats
        if row.g >= 3
    ]
    if not rows:
        logger.warning("Bounds report requested for a table without genus >= 3")
    return rows


def histogram_bound_violations(
    stats: Sequence[GenusStats],
    indexing: GenusIndexing = GenusIndexing.LITERAL,
) -> List[Tuple[int, int]]:
    """(g, i) pairs with n^i_g > 0 although i > floor((g + shift - 1)/2), for g + shift >= 1."""
    return [
        (row.g, i)
        for row in stats
        if row.g + indexing.shift >= 1
        for i, count in sorted(row.strong_histogram.items())
        if count and i > (row.g + indexing.shift - 1) // 2
    ]


def prefix_agreement(observed: Sequence[int], known: Sequence[int]) -> int:
    """Length of the leading run on which two prefixes agree."""
    agreed = 0
    for ours, theirs in zip(observed, known):
        if ours != theirs:
            break
        agreed += 1
    return agreed


def superincreasing(values: Sequence[int]) -> bool:
    running = 0
    for value in values:
        if value < running:
            return False
        running += value
    return True


def strong_weak_trend(stats: Sequence[GenusStats], span: int = 10) -> Tuple[Optional[Fraction], Optional[Fraction], bool]:
    """S_g/W_g at the top genus, the same ratio span levels earlier, and whether it fell."""
    by_genus = {row.g: row for row in stats}
    top = max(by_genus)
    if top - span not in by_genus:
        raise InsufficientRange(f"trend over {span} levels needs genus {span}, table stops at {top}")
    now = by_genus[top].strong_weak_ratio
    before = by_genus[top - span].strong_weak_ratio
    return now, before, now is not None and before is not None and now < before


def plot_rows(stats: Sequence[GenusStats]) -> List[Tuple[int, int, int, int]]:
    """(g, n_g, 2F_g, 1 + 3 * 2^(g-3)) for every genus >= 3."""
    return [(row.g, row.n_g, row.lower, row.upper) for row in bounds_report(stats)]
