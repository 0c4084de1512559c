"""
Semitree Output Schemas
Pydantic records for everything the CLI writes as JSON or CSV
"""
from pydantic import BaseModel, Field
from typing import Dict, List, Optional
from enum import Enum

from semigroups.core import Semigroup
from semigroups.stats import GenusIndexing, StrengthConvention

__all__ = [
    "OutputFormat",
    "StrengthConvention",
    "GenusIndexing",
    "SemigroupRecord",
    "EffectiveGeneratorRecord",
    "InspectReport",
    "ChainReport",
    "GenusStatsRow",
    "PlotRow",
    "TreeALevelRow",
    "DiagonalRecord",
    "DiagonalReport",
    "SuiteResult",
]


class OutputFormat(str, Enum):
    """Output format enumeration"""
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class SemigroupRecord(BaseModel):
    """JSON form of a semigroup"""
    gens: List[int] = Field(..., description="Minimal generators, ascending")
    gaps: List[int] = Field(..., description="Gaps, ascending")
    c: int = Field(..., description="Conductor")
    g: int = Field(..., description="Genus")
    m: int = Field(..., description="Multiplicity")

    @classmethod
    def of(cls, s: Semigroup) -> "SemigroupRecord":
        return cls(**s.as_dict())


class EffectiveGeneratorRecord(BaseModel):
    value: int = Field(..., description="Effective generator")
    strength: str = Field(..., description="weak or strong (strong-like for ordinary nodes)")


class InspectReport(BaseModel):
    """Everything `inspect` knows about one semigroup"""
    canonical: str = Field(..., description="Canonical <a,b,...> form")
    semigroup: SemigroupRecord
    frobenius: int = Field(..., description="Frobenius number c - 1")
    effective: List[EffectiveGeneratorRecord] = Field(default_factory=list)
    kind: str = Field(..., description="L, S or B")
    classes: List[str] = Field(default_factory=list, description="Set class flags in fixed order")
    d: Optional[int] = Field(None, description="gcd of nonzero members below c (0 for ordinary)")
    non_gap_intervals: int = Field(..., description="Runs of members strictly between 0 and c")


class ChainReport(BaseModel):
    """One line of `chains` output"""
    input: str = Field(..., description="Canonical form of the analyzed semigroup")
    d: int = Field(..., description="gcd of nonzero members below the conductor")
    verdict: str = Field(..., description="finite-subtree, finitely-many-chains or infinitely-many-chains")
    max_genus: Optional[int] = Field(None, description="Genus of the deepest descendant (finite subtree)")
    deepest: Optional[str] = Field(None, description="Deepest descendant (finite subtree)")
    count: Optional[int] = Field(None, description="Number of infinite chains (prime d)")
    witnesses: List[str] = Field(default_factory=list, description="Semigroups T with the chain d*T")
    literal_descendant_count: Optional[int] = Field(
        None, description="Descendants of the base without the trace condition, when finite"
    )


class GenusStatsRow(BaseModel):
    """One row of the per-genus statistics table"""
    g: int
    n_g: int
    S_g: int = Field(..., description="Strong generators over counted nodes")
    W_g: int = Field(..., description="Weak generators over counted nodes")
    ratio: str = Field("", description="n_g / n_(g-1), six decimals")
    leaf: int = 0
    stick: int = 0
    bush: int = 0
    sym: int = 0
    psym: int = 0
    hyp: int = 0
    arf: int = 0
    ord: int = 0
    irr: int = 0
    histogram: Dict[int, int] = Field(default_factory=dict, description="i -> nodes with i strong generators")

    def csv_row(self, width: int) -> Dict[str, object]:
        row = self.model_dump(exclude={"histogram"})
        for i in range(width):
            row[f"n{i}"] = self.histogram.get(i, 0)
        return row


class PlotRow(BaseModel):
    """(g, n_g, 2F_g, 1 + 3 * 2^(g-3)) for external plotting"""
    g: int
    n_g: int
    lower: int = Field(..., description="2F_g")
    upper: int = Field(..., description="1 + 3 * 2^(g-3)")


class TreeALevelRow(BaseModel):
    level: int
    total: int
    two_fib: int = Field(..., description="2F_level")
    labels: Dict[int, int] = Field(default_factory=dict)

    def csv_row(self, width: int) -> Dict[str, object]:
        row: Dict[str, object] = {"level": self.level, "total": self.total, "2F_g": self.two_fib}
        for label in range(width):
            row[f"label_{label}"] = self.labels.get(label, 0)
        return row


class DiagonalRecord(BaseModel):
    j: int
    value: int
    stabilized: bool
    samples: List[List[int]] = Field(default_factory=list, description="[g, n^i_g] along the diagonal")


class DiagonalReport(BaseModel):
    """e/o diagonals and related evidence for one strength convention and genus indexing"""
    convention: StrengthConvention
    indexing: GenusIndexing = GenusIndexing.LITERAL
    max_genus: int
    e: List[DiagonalRecord] = Field(default_factory=list)
    o: List[DiagonalRecord] = Field(default_factory=list)
    e_superincreasing: bool
    o_superincreasing: bool
    bounds_ok: bool
    histogram_violations: List[List[int]] = Field(default_factory=list)
    strong_weak_now: Optional[str] = None
    strong_weak_before: Optional[str] = None
    strong_weak_decreasing: Optional[bool] = None


class SuiteResult(BaseModel):
    """Outcome of one verification suite"""
    name: str = Field(..., description="Suite name")
    passed: bool = Field(..., description="True when every check held")
    max_genus: int = Field(..., description="Genus limit the suite ran to")
    checked: int = Field(0, description="Number of individual checks")
    failures: List[str] = Field(default_factory=list, description="First failing checks")
    notes: List[str] = Field(default_factory=list, description="Informational findings")