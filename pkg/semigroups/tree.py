"""
Semigroup Tree
Parent/child navigation, effective generators, weak/strong classification and the
exhaustive depth-first walker (serial or partitioned across worker processes)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
import logging
import multiprocessing
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from semigroups.core import TRIVIAL, Semigroup, canonical_string, lambda_index, nu
from semigroups.errors import (
    BadParameter,
    LemmaViolation,
    NotEffective,
    NotOrdinary,
    OrdinaryInput,
)

logger = logging.getLogger(__name__)


class Strength(str, Enum):
    """Strength of an effective generator"""
    WEAK = "weak"
    STRONG = "strong"

    @property
    def suffix(self) -> str:
        return "+" if self is Strength.STRONG else "-"


class NodeKind(str, Enum):
    """Leaf / stick / bush by number of children"""
    LEAF = "L"
    STICK = "S"
    BUSH = "B"

    @classmethod
    def of(cls, children: int) -> "NodeKind":
        if children == 0:
            return cls.LEAF
        return cls.STICK if children == 1 else cls.BUSH


@dataclass(frozen=True)
class TreeNode:
    """A semigroup decorated with its ascending effective generators and their strengths."""
    semigroup: Semigroup
    effective_gens: Tuple[Tuple[int, Strength], ...]

    @property
    def genus(self) -> int:
        return self.semigroup.genus

    @property
    def kind(self) -> NodeKind:
        return NodeKind.of(len(self.effective_gens))

    @property
    def is_ordinary(self) -> bool:
        return self.semigroup.is_ordinary

    @property
    def generators(self) -> List[int]:
        return [e for e, _ in self.effective_gens]

    @property
    def strong_count(self) -> int:
        return sum(1 for _, st in self.effective_gens if st is Strength.STRONG)

    @property
    def weak_count(self) -> int:
        return len(self.effective_gens) - self.strong_count


@dataclass(frozen=True)
class OrdinaryExtra:
    """Effective generators a child of an ordinary node gains beyond the inherited tail"""
    extra_generators: List[int] = field(default_factory=list)

    @property
    def strong_like(self) -> bool:
        return bool(self.extra_generators)


# --- navigation ---------------------------------------------------------------

def parent(s: Semigroup) -> Semigroup:
    return s.add_frobenius()


def effective_generators(s: Semigroup) -> List[int]:
    """Minimal generators >= conductor, ascending."""
    return [a for a in s.minimal_generators if a >= s.conductor]


def children(s: Semigroup) -> List[Semigroup]:
    """One child per effective generator, in ascending order of the removed generator."""
    return [s.remove(e) for e in effective_generators(s)]


# --- strength -----------------------------------------------------------------

def _classify_by_definition(s: Semigroup, e: int, effective: Sequence[int]) -> Strength:
    later = [x for x in effective if x > e]
    child_effective = effective_generators(s.remove(e))
    if child_effective == later:
        return Strength.WEAK
    if child_effective == later + [e + s.multiplicity]:
        return Strength.STRONG
    raise LemmaViolation(
        f"removing {e} from {canonical_string(s)} gives effective generators "
        f"{child_effective}, expected {later} with or without {e + s.multiplicity}"
    )


def _nu_strength(s: Semigroup, e: int) -> Strength:
    # nu at e + multiplicity, counted over pairs and abandoned once it exceeds 4
    target = e + s.multiplicity
    count = 0
    for x in s.members_below(target // 2 + 1):
        if s.contains(target - x):
            count += 1 if 2 * x == target else 2
            if count > 4:
                return Strength.WEAK
    return Strength.STRONG if count == 4 else Strength.WEAK


def classify(s: Semigroup, e: int, method: str = "definitional") -> Strength:
    """
    Weak/strong classification of an effective generator of a non-ordinary semigroup.

    Args:
        s: a non-ordinary semigroup
        e: one of its effective generators
        method: "definitional" compares the child's effective generators with the
            inherited tail; "nu" tests whether nu at e + multiplicity equals 4

    Raises:
        OrdinaryInput: s is ordinary (use classify_ordinary)
        NotEffective: e is not an effective generator of s
        LemmaViolation: the child matches neither shape allowed by the dichotomy
    """
    if s.is_ordinary:
        raise OrdinaryInput(f"{canonical_string(s)} is ordinary; use classify_ordinary")
    effective = effective_generators(s)
    if e not in effective:
        raise NotEffective(f"{e} is not an effective generator of {canonical_string(s)}")
    if method == "nu":
        if e == 2 * s.multiplicity:
            raise LemmaViolation(f"twice the multiplicity {e} cannot be a generator")
        return _nu_strength(s, e)
    if method != "definitional":
        raise BadParameter(f"unknown classification method {method!r}")
    return _classify_by_definition(s, e, effective)


def nu_at_shift(s: Semigroup, e: int) -> int:
    """nu of the member e + multiplicity, through the enumeration index."""
    return nu(s, lambda_index(s, e + s.multiplicity))


def classify_ordinary(s: Semigroup, e: int) -> OrdinaryExtra:
    if not s.is_ordinary:
        raise NotOrdinary(f"{canonical_string(s)} is not ordinary")
    effective = effective_generators(s)
    if e not in effective:
        raise NotEffective(f"{e} is not an effective generator of {canonical_string(s)}")
    later = {x for x in effective if x > e}
    child_effective = effective_generators(s.remove(e))
    return OrdinaryExtra(sorted(set(child_effective) - later))


# --- walking ------------------------------------------------------------------

def _decorate(s: Semigroup, effective: Sequence[int], incremental: bool) -> TreeNode:
    if s.is_ordinary:
        strengths = [
            Strength.STRONG if classify_ordinary(s, e).strong_like else Strength.WEAK
            for e in effective
        ]
    elif incremental:
        strengths = [_nu_strength(s, e) for e in effective]
    else:
        strengths = [_classify_by_definition(s, e, effective) for e in effective]
    return TreeNode(s, tuple(zip(effective, strengths)))


def node(s: Semigroup, method: str = "nu") -> TreeNode:
    """Decorated node of a single semigroup."""
    return _decorate(s, effective_generators(s), incremental=(method == "nu"))


def _inherited(tree_node: TreeNode, index: int) -> Tuple[int, ...]:
    """Child effective list by inheritance: the tail, plus e + multiplicity when strong."""
    e, strength = tree_node.effective_gens[index]
    tail = [v for v, _ in tree_node.effective_gens[index + 1:]]
    if strength is Strength.STRONG:
        tail.append(e + tree_node.semigroup.multiplicity)
    return tuple(tail)


def iter_subtree(
    root: Semigroup,
    max_genus: Optional[int],
    incremental: bool = True,
    effective: Optional[Sequence[int]] = None,
    admit: Optional[Callable[[int], bool]] = None,
) -> Iterator[TreeNode]:
    """
    Depth-first, pre-order traversal of the subtree below ``root``.

    Args:
        root: subtree root
        max_genus: deepest genus to visit (None for no limit; the subtree must be finite)
        incremental: inherit child generator lists instead of recomputing them
        effective: precomputed effective generators of ``root``
        admit: optional filter on the generator removed to reach a child
    """
    start = tuple(effective) if effective is not None else tuple(effective_generators(root))
    stack: List[Tuple[Semigroup, Tuple[int, ...]]] = [(root, start)]
    while stack:
        s, gens = stack.pop()
        tree_node = _decorate(s, gens, incremental)
        yield tree_node
        if max_genus is not None and s.genus >= max_genus:
            continue
        frames = []
        for index, e in enumerate(gens):
            if admit is not None and not admit(e):
                continue
            child = s.remove(e)
            if incremental and not s.is_ordinary:
                child_gens = _inherited(tree_node, index)
            else:
                child_gens = tuple(effective_generators(child))
            frames.append((child, child_gens))
        stack.extend(reversed(frames))


class Visitor:
    """
    Callback for walk(). Collectors used with several workers also implement
    spawn() (an empty copy) and merge() (an associative, commutative combine).
    """

    def __call__(self, tree_node: TreeNode) -> None:
        raise NotImplementedError

    def spawn(self) -> "Visitor":
        raise NotImplementedError

    def merge(self, other: "Visitor") -> None:
        raise NotImplementedError


def _walk_partition(task) -> Visitor:
    root, gens, max_genus, incremental, visitor = task
    for tree_node in iter_subtree(root, max_genus, incremental, effective=gens):
        visitor(tree_node)
    return visitor


def walk(
    max_genus: int,
    visitor: Callable[[TreeNode], None],
    *,
    incremental: bool = True,
    workers: int = 1,
    partition_genus: Optional[int] = None,
) -> None:
    """
    Visit every semigroup of genus <= max_genus exactly once, depth-first.

    With workers > 1 the nodes of genus ``partition_genus`` become independent
    subtrees, each walked by a worker process with ``visitor.spawn()``; the worker
    results are merged back into ``visitor`` in frontier order.
    """
    if max_genus < 0:
        raise BadParameter(f"max_genus must be non-negative, got {max_genus}")
    if workers < 1:
        raise BadParameter(f"workers must be at least 1, got {workers}")

    if workers == 1 or partition_genus is None or partition_genus >= max_genus:
        logger.debug(f"Serial walk to genus {max_genus}")
        for tree_node in iter_subtree(TRIVIAL, max_genus, incremental):
            visitor(tree_node)
        return

    if not isinstance(visitor, Visitor):
        raise BadParameter("a parallel walk needs a Visitor implementing spawn and merge")

    frontier: List[TreeNode] = []
    for tree_node in iter_subtree(TRIVIAL, partition_genus, incremental):
        if tree_node.genus < partition_genus:
            visitor(tree_node)
        else:
            frontier.append(tree_node)

    tasks = [
        (n.semigroup, tuple(n.generators), max_genus, incremental, visitor.spawn())
        for n in frontier
    ]
    logger.info(
        f"Walking genus <= {max_genus}: {len(tasks)} subtrees at genus "
        f"{partition_genus} across {workers} workers"
    )
    with multiprocessing.Pool(processes=workers) as pool:
        for partial in pool.imap(_walk_partition, tasks):
            visitor.merge(partial)


def format_node(tree_node: TreeNode) -> str:
    """Node dump line: genus, generators, effective generators with +/- strength, kind."""
    gens = " ".join(f"{e}{st.suffix}" for e, st in tree_node.effective_gens)
    return (
        f"{tree_node.genus}\t{canonical_string(tree_node.semigroup)}\t{gens}\t"
        f"{tree_node.kind.value}"
    )
