"""
Semitree Verification Service
Exhaustive property suites over the semigroup tree, catalogued in config/suites.yaml
"""
from pathlib import Path
from typing import Callable, Dict, List, Optional
import logging
import random

import yaml

from app.core.config import settings
from app.core.logging_config import log_milestone
from app.schemas.models import StrengthConvention, SuiteResult
from semigroups import oracle
from semigroups.chains import (
    FiniteSubtree,
    FinitelyManyChains,
    InfinitelyManyChains,
    analyze,
    chain_prefix,
    in_chain,
    in_scaled,
    is_prime,
)
from semigroups.classes import (
    arf_children,
    arf_generator_test,
    class_flags,
    is_arf,
    is_hyperelliptic,
    is_pseudo_symmetric,
    is_symmetric,
    non_gap_intervals,
    ps_family,
    ps_mult3_family,
)
from semigroups.core import (
    TRIVIAL,
    canonical_string,
    from_gaps,
    from_generators,
    is_generator_above_conductor,
    lambda_,
    nu,
    nu_by_formula,
    parse,
)
from semigroups.errors import BadParameter, InsufficientRange, LemmaViolation, SemigroupError
from semigroups.stats import (
    GenusIndexing,
    StatsOptions,
    aggregate,
    bounds_report,
    eo_diagonals,
    histogram_bound_violations,
    prefix_agreement,
    strong_weak_trend,
    superincreasing,
)
from semigroups.tree import (
    NodeKind,
    Strength,
    TreeNode,
    children,
    classify,
    effective_generators,
    iter_subtree,
    node,
    nu_at_shift,
    parent,
)
from semigroups.tree_a import (
    LabelMultiset,
    a_levels,
    dominates,
    fibonacci,
    l_recursion,
)

logger = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 20


def load_suites(path: Path) -> dict:
    """Load the YAML suite catalogue."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Suite catalogue not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


class _Checks:
    """Collects the outcome of individual checks for one suite run."""

    def __init__(self, name: str, max_genus: int):
        self.name = name
        self.max_genus = max_genus
        self.checked = 0
        self.failed = 0
        self.failures: List[str] = []
        self.notes: List[str] = []

    def expect(self, condition: bool, message: str) -> bool:
        self.checked += 1
        if not condition:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(message)
        return condition

    def note(self, message: str) -> None:
        self.notes.append(message)

    def result(self) -> SuiteResult:
        if self.failed > len(self.failures):
            self.notes.append(f"{self.failed - len(self.failures)} further failures not listed")
        return SuiteResult(
            name=self.name,
            passed=self.failed == 0,
            max_genus=self.max_genus,
            checked=self.checked,
            failures=self.failures,
            notes=self.notes,
        )


class VerificationService:
    """Runs the property suites named in the catalogue"""

    def __init__(self, suites_file: Optional[Path] = None):
        self.catalogue = load_suites(suites_file or settings.suites_file)
        self.suites: Dict[str, dict] = self.catalogue.get("suites", {})
        self.groups: Dict[str, List[str]] = self.catalogue.get("groups", {})
        self._runners: Dict[str, Callable[[_Checks, dict], None]] = {
            "core-identities": self._core_identities,
            "lemma1": self._lemma1,
            "strength-equivalence": self._strength_equivalence,
            "symmetric": self._symmetric,
            "pseudo-symmetric": self._pseudo_symmetric,
            "arf": self._arf,
            "chains": self._chains,
            "tree-a": self._tree_a,
            "bounds": self._bounds,
            "histograms": self._histograms,
        }
        self._levels: List[TreeNode] = []
        self._levels_genus = -1

    def names(self) -> List[str]:
        return list(self.suites) + list(self.groups)

    def resolve(self, name: str) -> List[str]:
        if name in self.groups:
            return list(self.groups[name])
        if name in self.suites and name in self._runners:
            return [name]
        raise BadParameter(f"unknown suite {name!r}; choose from {', '.join(self.names())}")

    def run(self, name: str, max_genus: Optional[int] = None) -> List[SuiteResult]:
        return [self.run_suite(suite, max_genus) for suite in self.resolve(name)]

    def run_suite(self, name: str, max_genus: Optional[int] = None) -> SuiteResult:
        config = self.suites.get(name, {})
        limit = max_genus if max_genus is not None else config.get("max_genus", settings.default_max_genus)
        if limit < 0:
            raise BadParameter(f"max_genus must be non-negative, got {limit}")
        checks = _Checks(name, limit)
        log_milestone(f"Suite {name} to genus {limit}")
        try:
            self._runners[name](checks, config)
        except SemigroupError as e:
            checks.expect(False, f"{type(e).__name__}: {e}")
        result = checks.result()
        if result.passed:
            logger.info(f"Suite passed: {name} ({result.checked} checks)")
        else:
            logger.warning(f"Suite failed: {name} ({len(result.failures)} failures)")
        return result

    def _nodes(self, max_genus: int) -> List[TreeNode]:
        """All nodes of genus <= max_genus, pre-order; one walk reused across suites."""
        if max_genus > self._levels_genus:
            self._levels = list(iter_subtree(TRIVIAL, max_genus))
            self._levels_genus = max_genus
        return [n for n in self._levels if n.genus <= max_genus]

    @staticmethod
    def _stats_options(include_ordinary: bool = False) -> StatsOptions:
        """Options without class counts, using the configured worker layout."""
        return StatsOptions(
            include_ordinary=include_ordinary,
            workers=settings.workers,
            partition_genus=settings.partition_genus if settings.workers > 1 else None,
            with_classes=False,
        )

    # --- suites -----------------------------------------------------------

    def _core_identities(self, checks: _Checks, config: dict) -> None:
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            label = canonical_string(s)
            top = s.conductor + s.multiplicity - s.genus
            for i in range(top + 1):
                checks.expect(nu(s, i) == nu_by_formula(s, i), f"{label}: nu_{i} differs from its D(i) form")
            by_nu = [lambda_(s, i) for i in range(1, top + 1) if nu(s, i) == 2]
            checks.expect(by_nu == list(s.minimal_generators), f"{label}: nu = 2 members {by_nu}")
            for i in range(s.conductor - s.genus, top + 1):
                checks.expect(
                    is_generator_above_conductor(s, i) == (lambda_(s, i) in s.minimal_generators),
                    f"{label}: generator test at lambda_{i}",
                )
            checks.expect(lambda_(s, s.conductor - s.genus) == s.conductor, f"{label}: lambda_(c-g) != c")
            checks.expect(parse(label) == s, f"{label}: generator form does not round-trip")
            gap_form = "G:{" + ",".join(map(str, s.gaps)) + "}"
            checks.expect(parse(gap_form) == s, f"{label}: gap form does not round-trip")

    def _lemma1(self, checks: _Checks, config: dict) -> None:
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_ordinary:
                continue
            label = canonical_string(s)
            for e in tree_node.generators:
                checks.expect(s.conductor <= e < s.conductor + s.multiplicity, f"{label}: {e} outside [c, c+m)")
                try:
                    classify(s, e)
                except LemmaViolation as error:
                    checks.expect(False, str(error))
            checks.expect(2 * s.multiplicity not in s.minimal_generators, f"{label}: 2m is a generator")
            k = len(tree_node.effective_gens)
            if k and not tree_node.strong_count:
                cascade = [len(effective_generators(child)) for child in children(s)]
                checks.expect(cascade == list(range(k - 1, -1, -1)), f"{label}: all-weak children have {cascade} generators")

        limit = min(checks.max_genus, config.get("oracle_max_genus", checks.max_genus))
        if limit < checks.max_genus:
            checks.note(f"reference enumerator compared to genus {limit}")
        reference = oracle.level_stats(limit)
        table = aggregate(limit, self._stats_options())
        for ours, theirs in zip(table, reference):
            checks.expect(
                (ours.n_g, ours.strong, ours.weak) == (theirs.n_g, theirs.strong, theirs.weak),
                f"g={ours.g}: walker (n, S, W) = {(ours.n_g, ours.strong, ours.weak)}, "
                f"reference {(theirs.n_g, theirs.strong, theirs.weak)}",
            )
            checks.expect(
                dict(ours.strong_histogram) == dict(theirs.strong_histogram),
                f"g={ours.g}: strong-count histograms differ",
            )

    def _strength_equivalence(self, checks: _Checks, config: dict) -> None:
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_ordinary:
                continue
            label = canonical_string(s)
            for e in tree_node.generators:
                definitional = classify(s, e, method="definitional")
                checks.expect(classify(s, e, method="nu") is definitional, f"{label}: strength of {e} by nu")
                checks.expect(
                    (nu_at_shift(s, e) == 4) == (definitional is Strength.STRONG),
                    f"{label}: nu at {e}+m through the enumeration",
                )
        incremental = list(iter_subtree(TRIVIAL, checks.max_genus, incremental=True))
        recomputed = list(iter_subtree(TRIVIAL, checks.max_genus, incremental=False))
        checks.expect(incremental == recomputed, "inherited generator lists differ from recomputed ones")

    def _symmetric(self, checks: _Checks, config: dict) -> None:
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_trivial:
                continue
            label = canonical_string(s)
            flags = class_flags(s)
            checks.expect(flags.irreducible == (flags.symmetric or flags.pseudo_symmetric), f"{label}: irreducible")
            checks.expect(not (flags.symmetric and flags.pseudo_symmetric), f"{label}: both symmetric kinds")
            if flags.hyperelliptic:
                checks.expect(flags.symmetric and flags.arf, f"{label}: hyperelliptic but not symmetric Arf")
            if not flags.symmetric:
                continue
            if flags.hyperelliptic:
                if s.genus < 2:
                    continue
                checks.expect(
                    tree_node.effective_gens == ((s.conductor + 1, Strength.STRONG),),
                    f"{label}: hyperelliptic node is not a stick with strong c+1",
                )
            else:
                checks.expect(tree_node.kind is NodeKind.LEAF, f"{label}: symmetric non-hyperelliptic with children")

        for odd in range(5, config.get("hyperelliptic_max_odd", 61) + 1, 2):
            s = from_generators([2, odd])
            decorated = node(s, method="definitional")
            checks.expect(
                decorated.effective_gens == ((s.conductor + 1, Strength.STRONG),),
                f"<2,{odd}>: not a stick with strong c+1",
            )

    def _pseudo_symmetric(self, checks: _Checks, config: dict) -> None:
        smallest = ps_family(3)
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_ordinary or not is_pseudo_symmetric(s):
                continue
            label = canonical_string(s)
            if s.multiplicity == 3:
                self._check_multiplicity_three(checks, tree_node, smallest)
            elif non_gap_intervals(s) >= 2:
                checks.expect(tree_node.kind is NodeKind.LEAF, f"{label}: multi-interval node has children")
            else:
                checks.expect(s == ps_family(s.genus), f"{label}: one-interval node outside the explicit family")

        for g in range(3, config.get("family_max_genus", 16) + 1):
            s = ps_family(g)
            label = canonical_string(s)
            checks.expect(is_pseudo_symmetric(s) and s.genus == g, f"{label}: family member for g={g}")
            decorated = node(s, method="definitional")
            if g == 3:
                expected = ((5, Strength.STRONG), (7, Strength.WEAK))
            elif g == 4:
                expected = ((7, Strength.STRONG),)
            else:
                expected = ((s.conductor, Strength.WEAK),)
            checks.expect(decorated.effective_gens == expected, f"{label}: effective generators for g={g}")

        for k in range(1, config.get("family_max_genus", 16) // 3 + 1):
            for variant, genus in (("A", 3 * k), ("B", 3 * k + 2)):
                s = ps_mult3_family(k, variant)
                checks.expect(
                    is_pseudo_symmetric(s) and s.multiplicity == 3 and s.genus == genus,
                    f"multiplicity-3 family ({k}, {variant}) gives {canonical_string(s)}",
                )

    @staticmethod
    def _check_multiplicity_three(checks: _Checks, tree_node: TreeNode, smallest) -> None:
        s = tree_node.semigroup
        label = canonical_string(s)
        g, c = s.genus, s.conductor
        if g % 3 == 0:
            family = ps_mult3_family(g // 3, "A")
        elif g % 3 == 2:
            family = ps_mult3_family((g - 2) // 3, "B")
        else:
            family = None
        checks.expect(s == family, f"{label}: multiplicity 3 outside both families")
        if s == smallest:
            checks.expect(
                tree_node.effective_gens == ((5, Strength.STRONG), (7, Strength.WEAK)),
                f"{label}: expected 5 strong and 7 weak",
            )
            return
        checks.expect(
            tree_node.effective_gens == ((c + 2, Strength.WEAK),),
            f"{label}: expected the single weak generator c+2",
        )
        child = s.remove(c + 2)
        checks.expect(
            is_symmetric(child) and not is_hyperelliptic(child) and not effective_generators(child),
            f"{label}: child {canonical_string(child)} is not a symmetric leaf",
        )

    def _arf(self, checks: _Checks, config: dict) -> None:
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_trivial or not is_arf(s):
                continue
            label = canonical_string(s)
            for n, is_generator, predicted in arf_generator_test(s):
                checks.expect(is_generator == predicted, f"{label}: generator shortcut fails at {n}")
            up = parent(s)
            if not up.is_ordinary:
                checks.expect(
                    classify(up, s.frobenius_number) is Strength.STRONG,
                    f"{label}: reached by removing a weak generator",
                )
            if is_hyperelliptic(s):
                continue
            checks.expect(tree_node.kind is NodeKind.BUSH, f"{label}: Arf node is not a bush")
            kids = arf_children(s)
            checks.expect(len(kids) <= 2, f"{label}: {len(kids)} Arf children")

    def _chains(self, checks: _Checks, config: dict) -> None:
        max_conductor = config.get("count_max_conductor", 20)
        for tree_node in self._nodes(checks.max_genus):
            s = tree_node.semigroup
            if s.is_trivial:
                continue
            label = canonical_string(s)
            analysis = analyze(s)
            d, verdict = analysis.d, analysis.verdict
            if d == 1:
                if not checks.expect(isinstance(verdict, FiniteSubtree), f"{label}: d = 1 but not finite"):
                    continue
                below = list(iter_subtree(s, None))
                depth = max(n.genus for n in below)
                deepest = [n.semigroup for n in below if n.genus == depth]
                checks.expect(
                    depth == verdict.max_genus and deepest == [verdict.deepest],
                    f"{label}: deepest descendant {deepest} at genus {depth}",
                )
                continue

            horizon = s.conductor + 3 * d
            gaps = frozenset(s.gaps)
            checks.expect(
                next(oracle.chain_descendants(gaps, horizon), None) is not None,
                f"{label}: d = {d} but no descendants {horizon} levels down",
            )
            if d == 0 or not is_prime(d):
                checks.expect(isinstance(verdict, InfinitelyManyChains), f"{label}: d = {d} verdict")
                continue
            if not checks.expect(isinstance(verdict, FinitelyManyChains), f"{label}: prime d = {d} verdict"):
                continue
            for witness in verdict.witnesses:
                checks.expect(in_chain(s, d, witness), f"{label}: not on the chain of {canonical_string(witness)}")
            if s.conductor > max_conductor:
                continue
            survivors = [from_gaps(sorted(g)) for g in oracle.chain_descendants(gaps, horizon)]
            checks.expect(
                len(survivors) == verdict.count,
                f"{label}: {verdict.count} chains, {len(survivors)} descendants {horizon} levels down keep d = {d}",
            )
            for survivor in survivors:
                on = [w for w in verdict.witnesses if in_chain(survivor, d, w)]
                checks.expect(
                    len(on) == 1,
                    f"{label}: descendant {canonical_string(survivor)} lies on {len(on)} predicted chains",
                )

        self._chain_prefixes(checks, config.get("prefix_max_d", 5))

    def _chain_prefixes(self, checks: _Checks, max_d: int) -> None:
        bases = [n.semigroup for n in self._nodes(4)]
        horizon = 8 * max_d * (max(b.conductor for b in bases) + 2)
        signatures = {}
        for d in range(2, max_d + 1):
            for base in bases:
                label = f"{d}*{canonical_string(base)}"
                if base.genus <= 2:
                    prefix = chain_prefix(d, base, 8)
                    checks.expect(
                        all(parent(b) == a for a, b in zip(prefix, prefix[1:])),
                        f"{label}: consecutive chain entries are not parent and child",
                    )
                    last = prefix[-1]
                    checks.expect(
                        all(last.contains(x) == in_scaled(d, base, x) for x in range(last.conductor)),
                        f"{label}: members below the conductor differ from the scaled base",
                    )
                signature = tuple(x for x in range(1, horizon) if not in_scaled(d, base, x))
                checks.expect(signature not in signatures, f"{label}: same chain as {signatures.get(signature)}")
                signatures[signature] = label

    def _tree_a(self, checks: _Checks, config: dict) -> None:
        levels = a_levels(config.get("levels", 200))
        for g, level in enumerate(levels):
            if g >= 2:
                checks.expect(level.total == 2 * fibonacci(g), f"|A_{g}| = {level.total}")

        rng = random.Random(config.get("rng_seed", 0))
        for _ in range(config.get("random_seeds", 50)):
            l = rng.randint(2, config.get("max_l", 8))
            counts = {label: rng.randint(0, 5) for label in range(l - 1)}
            counts.update({l - 1: 1, l + 1: 1})
            seed = LabelMultiset.of(counts)
            k_max = 2 * l + 40
            sequence = l_recursion(l, seed, k_max)
            minimal = l_recursion(l, LabelMultiset.of({l - 1: 1, l + 1: 1}), k_max)
            for k in range(2 * l, k_max + 1):
                current = sequence[k - l]
                checks.expect(current.total == 2 * fibonacci(k), f"seed {seed.as_dict()} (l={l}): |L_{k}| != 2F_{k}")
                checks.expect(current == minimal[k - l], f"seed {seed.as_dict()} (l={l}): L_{k} not stabilized")
                # L_{k-2} is seed-dependent until k - 2 >= 2l
                if k >= 2 * l + 2:
                    checks.expect(
                        current.total == sequence[k - l - 1].total + sequence[k - l - 2].total,
                        f"seed {seed.as_dict()} (l={l}): |L_{k}| breaks the recursion",
                    )

        limit = min(checks.max_genus, 14)
        by_genus: Dict[int, List[int]] = {}
        for tree_node in self._nodes(limit):
            by_genus.setdefault(tree_node.genus, []).append(len(tree_node.effective_gens))
        for g in range(limit + 1):
            checks.expect(
                dominates(LabelMultiset.of(by_genus.get(g, [])), levels[g]),
                f"A_{g} is not dominated by the tree's child counts at genus {g}",
            )

    def _bounds(self, checks: _Checks, config: dict) -> None:
        table = aggregate(checks.max_genus, self._stats_options())
        for row in bounds_report(table):
            checks.expect(row.lower_ok, f"g={row.g}: n_g = {row.n_g} below 2F_g = {row.lower}")
            checks.expect(row.upper_ok, f"g={row.g}: n_g = {row.n_g} above {row.upper}")

    def _histograms(self, checks: _Checks, config: dict) -> None:
        tables = {
            convention: aggregate(
                checks.max_genus,
                self._stats_options(include_ordinary=convention is StrengthConvention.INCLUDE_ORDINARY),
            )
            for convention in StrengthConvention
        }
        default = tables[StrengthConvention.EXCLUDE_ORDINARY]
        for row in default:
            checks.expect(sum(row.strong_histogram.values()) == row.n_g, f"g={row.g}: histogram total")
            checks.expect(sum(row.kind_counts.values()) == row.n_g, f"g={row.g}: leaf/stick/bush total")

        for g, i in histogram_bound_violations(default, GenusIndexing.SHIFTED):
            checks.expect(False, f"g={g}: a node with {i} strong generators exceeds floor(g/2) = {g // 2}")
        # {0,d} U [2d,inf) has d-1 strong generators at genus 2d-2, one above floor((g-1)/2)
        above: Dict[int, List[int]] = {}
        for g, i in histogram_bound_violations(default, GenusIndexing.LITERAL):
            above.setdefault(g, []).append(i)
        for g, counts in above.items():
            checks.note(f"g={g}: nodes with {counts} strong generators exceed floor((g-1)/2) = {(g - 1) // 2}")

        known = {"e": config.get("e_prefix", []), "o": config.get("o_prefix", [])}
        for which, values in known.items():
            checks.expect(superincreasing(values), f"observed {which} prefix {values} is not superincreasing")
        for which, values in known.items():
            self._compare_diagonal(checks, tables, which, values, config.get("min_agreement", 2))

        if checks.max_genus >= 20:
            now, before, decreasing = strong_weak_trend(default, 10)
            checks.expect(decreasing, f"S_g/W_g went from {before} to {now} over ten levels")
        else:
            checks.note("S_g/W_g trend needs genus >= 20")

    @staticmethod
    def _compare_diagonal(checks: _Checks, tables: dict, which: str, values: List[int], min_agreement: int) -> None:
        """A reading reproduces the known prefix when its stabilized prefix agrees on min_agreement leading terms."""
        reproduced = []
        for convention, table in tables.items():
            for indexing in GenusIndexing:
                reading = f"{convention.value}, {indexing.value}"
                try:
                    prefix = eo_diagonals(table, indexing=indexing).stable_prefix(which)
                except InsufficientRange as e:
                    checks.note(f"{which} diagonal ({reading}): {e}")
                    continue
                agreed = prefix_agreement(prefix, values)
                message = f"{which} diagonal ({reading}): stabilized prefix {prefix}, agrees on {agreed} terms"
                if agreed < min(len(prefix), len(values)):
                    message += f", first disagreement {which}_{agreed} = {prefix[agreed]} against {values[agreed]}"
                checks.note(message)
                if agreed >= min(min_agreement, len(values)) and prefix:
                    reproduced.append(reading)
        if checks.expect(bool(reproduced), f"{which} diagonal: no reading agrees with {values} on {min_agreement} terms"):
            checks.note(f"{which} diagonal reproduced under {'; '.join(reproduced)}")
