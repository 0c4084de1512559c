"""
Semitree Stats Service
Runs aggregation walks and turns their results into output records and files
"""
import csv
import json
import logging
from typing import IO, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from app.core.config import settings
from app.core.logging_config import log_milestone
from app.schemas.models import (
    DiagonalRecord,
    DiagonalReport,
    GenusStatsRow,
    OutputFormat,
    PlotRow,
    GenusIndexing,
    StrengthConvention,
    TreeALevelRow,
)
from semigroups import stats, tree_a
from semigroups.errors import InsufficientRange
from semigroups.stats import EODiagonals, GenusStats, StatsOptions

logger = logging.getLogger(__name__)

TREND_SPAN = 10


class StatsService:
    """Service wrapping stats.aggregate with the configured worker layout"""

    def __init__(self, workers: Optional[int] = None, partition_genus: Optional[int] = None):
        self.workers = workers or settings.workers
        self.partition_genus = partition_genus if partition_genus is not None else settings.partition_genus

    def options(self, convention: StrengthConvention, with_classes: bool = True) -> StatsOptions:
        return StatsOptions(
            include_ordinary=convention is StrengthConvention.INCLUDE_ORDINARY,
            workers=self.workers,
            partition_genus=self.partition_genus if self.workers > 1 else None,
            with_classes=with_classes,
        )

    def table(
        self,
        max_genus: int,
        convention: StrengthConvention = StrengthConvention.EXCLUDE_ORDINARY,
        with_classes: bool = True,
    ) -> List[GenusStats]:
        log_milestone(f"Walk to genus {max_genus} ({convention.value}, {self.workers} workers)")
        return stats.aggregate(max_genus, self.options(convention, with_classes))

    # --- records ----------------------------------------------------------

    @staticmethod
    def rows(table: Sequence[GenusStats]) -> List[GenusStatsRow]:
        rows = []
        previous = None
        for row in table:
            classes = row.class_counts
            rows.append(GenusStatsRow(
                g=row.g,
                n_g=row.n_g,
                S_g=row.strong,
                W_g=row.weak,
                ratio=f"{row.n_g / previous:.6f}" if previous else "",
                leaf=row.kind_counts.get("L", 0),
                stick=row.kind_counts.get("S", 0),
                bush=row.kind_counts.get("B", 0),
                sym=classes.get("symmetric", 0),
                psym=classes.get("pseudo_symmetric", 0),
                hyp=classes.get("hyperelliptic", 0),
                arf=classes.get("arf", 0),
                ord=classes.get("ordinary", 0),
                irr=classes.get("irreducible", 0),
                histogram={i: row.strong_histogram[i] for i in sorted(row.strong_histogram)},
            ))
            previous = row.n_g
        return rows

    @staticmethod
    def plot_rows(table: Sequence[GenusStats]) -> List[PlotRow]:
        return [PlotRow(g=g, n_g=n, lower=lo, upper=hi) for g, n, lo, hi in stats.plot_rows(table)]

    @staticmethod
    def tree_a_rows(levels: int, l: Optional[int] = None, seed: Optional[tree_a.LabelMultiset] = None) -> List[TreeALevelRow]:
        if seed is None:
            rows = tree_a.tree_a_rows(tree_a.a_levels(levels))
        else:
            rows = tree_a.tree_a_rows(tree_a.l_recursion(l, seed, levels), start=l)
        return [TreeALevelRow(level=k, total=t, two_fib=f, labels=labels) for k, t, f, labels in rows]

    @staticmethod
    def _diagonal_records(entries) -> List[DiagonalRecord]:
        return [
            DiagonalRecord(j=e.j, value=e.value, stabilized=e.stabilized, samples=[list(s) for s in e.samples])
            for e in entries
        ]

    def report(
        self,
        table: Sequence[GenusStats],
        convention: StrengthConvention,
        indexing: GenusIndexing = GenusIndexing.LITERAL,
    ) -> DiagonalReport:
        """e/o diagonals, bound checks and the S_g/W_g trend for one table read under one indexing."""
        top = table[-1].g
        try:
            diagonals = stats.eo_diagonals(table, indexing=indexing)
        except InsufficientRange as e:
            logger.warning(f"No e/o diagonals: {e}")
            diagonals = EODiagonals(e=[], o=[])
        report = DiagonalReport(
            convention=convention,
            indexing=indexing,
            max_genus=top,
            e=self._diagonal_records(diagonals.e),
            o=self._diagonal_records(diagonals.o),
            e_superincreasing=stats.superincreasing(diagonals.stable_prefix("e")),
            o_superincreasing=stats.superincreasing(diagonals.stable_prefix("o")),
            bounds_ok=all(r.lower_ok and r.upper_ok for r in stats.bounds_report(table)),
            histogram_violations=[list(v) for v in stats.histogram_bound_violations(table, indexing)],
        )
        if top >= TREND_SPAN:
            now, before, decreasing = stats.strong_weak_trend(table, TREND_SPAN)
            report.strong_weak_now = str(now) if now is not None else None
            report.strong_weak_before = str(before) if before is not None else None
            report.strong_weak_decreasing = decreasing
        return report

    # --- writers ----------------------------------------------------------

    @staticmethod
    def write_csv(dict_rows: Iterable[dict], stream: IO[str], header: Optional[str] = None) -> None:
        dict_rows = list(dict_rows)
        if header:
            stream.write(f"# {header}\n")
        if not dict_rows:
            return
        writer = csv.DictWriter(stream, fieldnames=list(dict_rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(dict_rows)

    @staticmethod
    def write_json(payload, stream: IO[str]) -> None:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        elif isinstance(payload, list):
            payload = [p.model_dump(mode="json") if isinstance(p, BaseModel) else p for p in payload]
        stream.write(json.dumps(payload, sort_keys=False) + "\n")

    def write_table(
        self,
        rows: Sequence[GenusStatsRow],
        convention: StrengthConvention,
        fmt: OutputFormat,
        stream: IO[str],
    ) -> None:
        if fmt is OutputFormat.JSON:
            self.write_json({"convention": convention.value, "rows": [r.model_dump(mode="json") for r in rows]}, stream)
            return
        width = max((max(r.histogram, default=-1) for r in rows), default=-1) + 1
        self.write_csv((r.csv_row(width) for r in rows), stream, header=f"convention: {convention.value}")
