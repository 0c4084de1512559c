"""
Unit tests for tree navigation, strength classification and the walkers
"""
import math

import pytest
from hypothesis import assume, given, settings as hypothesis_settings
from hypothesis import strategies as st

from semigroups.core import TRIVIAL, canonical_string, from_gaps, from_generators
from semigroups.classes import ps_family
from semigroups.errors import (
    BadParameter,
    NotEffective,
    NotOrdinary,
    OrdinaryInput,
    RootHasNoParent,
)
from semigroups.tree import (
    NodeKind,
    Strength,
    Visitor,
    children,
    classify,
    classify_ordinary,
    effective_generators,
    format_node,
    iter_subtree,
    node,
    nu_at_shift,
    parent,
    walk,
)


def _check_all_weak_cascade(nodes) -> int:
    """Assert the cascade for every all-weak non-ordinary node; return how many were checked."""
    checked = 0
    for tree_node in nodes:
        k = len(tree_node.effective_gens)
        if tree_node.is_ordinary or not k or tree_node.strong_count:
            continue
        counts = [len(effective_generators(child)) for child in children(tree_node.semigroup)]
        assert counts == list(range(k - 1, -1, -1)), canonical_string(tree_node.semigroup)
        checked += 1
    return checked


class GenusCounter(Visitor):
    """Counts nodes per genus; module level so worker processes can unpickle it"""

    def __init__(self):
        self.counts = {}

    def __call__(self, tree_node):
        self.counts[tree_node.genus] = self.counts.get(tree_node.genus, 0) + 1

    def spawn(self):
        return GenusCounter()

    def merge(self, other):
        for g, n in other.counts.items():
            self.counts[g] = self.counts.get(g, 0) + n


class TestNavigation:
    """Test suite for parent, children and effective generators"""

    def test_parent_of_three_five_seven(self, ps_g3):
        """Test parent adds the Frobenius number"""
        assert parent(ps_g3) == from_generators([3, 4, 5])

    def test_parent_of_two_nine(self):
        """Test the hyperelliptic stick walks back one step"""
        assert parent(from_generators([2, 9])) == from_generators([2, 7])

    def test_root_has_no_parent(self):
        """Test parent of N_0"""
        with pytest.raises(RootHasNoParent):
            parent(TRIVIAL)

    def test_children_of_two_three(self):
        """Test children come in ascending order of the removed generator"""
        assert children(from_generators([2, 3])) == [
            from_generators([3, 4, 5]),
            from_generators([2, 5]),
        ]

    def test_children_of_three_five_seven(self, ps_g3):
        """Test removing 5 and then 7"""
        assert children(ps_g3) == [from_generators([3, 7, 8]), from_generators([3, 5])]

    def test_leaf_has_no_children(self):
        """Test <3,5> has no effective generators"""
        s = from_generators([3, 5])
        assert effective_generators(s) == []
        assert children(s) == []

    def test_children_genus_and_parent(self, nodes_to_genus_8):
        """Test every child has genus g+1 and points back to its parent"""
        for tree_node in nodes_to_genus_8:
            s = tree_node.semigroup
            for child in children(s):
                assert child.genus == s.genus + 1
                assert parent(child) == s

    def test_all_weak_cascade(self, nodes_to_genus_8):
        """Test an all-weak node with k effective generators has children with k-1, ..., 0 of them"""
        assert _check_all_weak_cascade(nodes_to_genus_8) > 0

    @pytest.mark.slow
    def test_all_weak_cascade_to_genus_14(self):
        """Test the cascade over every node of genus <= 14"""
        assert _check_all_weak_cascade(iter_subtree(TRIVIAL, 14)) > 0


class TestClassification:
    """Test suite for weak/strong classification"""

    def test_three_five_seven(self, ps_g3):
        """Test <3,5,7> has 5 strong and 7 weak"""
        assert classify(ps_g3, 5) is Strength.STRONG
        assert classify(ps_g3, 7) is Strength.WEAK

    def test_nu_method_agrees(self, ps_g3):
        """Test the nu shortcut on <3,5,7>"""
        assert classify(ps_g3, 5, method="nu") is Strength.STRONG
        assert classify(ps_g3, 7, method="nu") is Strength.WEAK

    def test_nu_at_shift(self, ps_g3):
        """Test nu at e + m is 4 exactly for the strong generator"""
        assert nu_at_shift(ps_g3, 5) == 4
        assert nu_at_shift(ps_g3, 7) == 5

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_hyperelliptic_generator_is_strong(self, n):
        """Test c+1 is strong on <2,2n+1>"""
        s = from_generators([2, 2 * n + 1])
        assert classify(s, s.conductor + 1) is Strength.STRONG

    @pytest.mark.parametrize("g", [5, 6, 7, 8, 9])
    def test_pseudo_symmetric_family_conductor_is_weak(self, g):
        """Test the conductor of the pseudo-symmetric family member is weak"""
        s = ps_family(g)
        assert classify(s, s.conductor) is Strength.WEAK

    def test_ordinary_input(self, ordinary_4):
        """Test classify refuses ordinary semigroups"""
        with pytest.raises(OrdinaryInput):
            classify(ordinary_4, 4)

    def test_not_effective(self, ps_g3):
        """Test 6 is not an effective generator of <3,5,7>"""
        with pytest.raises(NotEffective):
            classify(ps_g3, 6)
        with pytest.raises(NotEffective):
            classify(ps_g3, 3)

    def test_unknown_method(self, ps_g3):
        """Test an unknown method name"""
        with pytest.raises(BadParameter):
            classify(ps_g3, 5, method="guess")

    def test_methods_agree_to_genus_8(self, nodes_to_genus_8):
        """Test definitional and nu classification agree on every non-ordinary node"""
        for tree_node in nodes_to_genus_8:
            s = tree_node.semigroup
            if s.is_ordinary:
                continue
            for e in effective_generators(s):
                assert classify(s, e) is classify(s, e, method="nu"), (canonical_string(s), e)

    @given(st.lists(st.integers(min_value=3, max_value=12), min_size=2, max_size=4))
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_methods_agree_on_random_semigroups(self, gens):
        """Test the two classifications agree on generated semigroups"""
        assume(math.gcd(*gens) == 1)
        s = from_generators(gens)
        assume(not s.is_ordinary)
        for e in effective_generators(s):
            assert classify(s, e) is classify(s, e, method="nu")


class TestOrdinary:
    """Test suite for classify_ordinary"""

    def test_three_four_five(self):
        """Test the extras of the ordinary node of genus 2"""
        s = from_gaps([1, 2])
        assert classify_ordinary(s, 3).extra_generators == [6, 7]
        assert classify_ordinary(s, 4).extra_generators == [7]
        assert classify_ordinary(s, 5).extra_generators == []

    def test_strong_like(self):
        """Test strong_like follows non-empty extras"""
        s = from_generators([2, 3])
        assert classify_ordinary(s, 2).strong_like
        assert classify_ordinary(s, 3).strong_like

    def test_trivial(self):
        """Test removing 1 from N_0"""
        assert classify_ordinary(TRIVIAL, 1).extra_generators == [2, 3]

    def test_not_ordinary(self, ps_g3):
        """Test classify_ordinary refuses non-ordinary input"""
        with pytest.raises(NotOrdinary):
            classify_ordinary(ps_g3, 5)

    def test_not_effective(self, ordinary_4):
        """Test 3 is not an effective generator of {0} U [4, inf)"""
        with pytest.raises(NotEffective):
            classify_ordinary(ordinary_4, 3)


class TestNode:
    """Test suite for decorated nodes"""

    def test_kinds(self, ps_g3):
        """Test leaf, stick and bush"""
        assert node(ps_g3).kind is NodeKind.BUSH
        assert node(from_generators([4, 5, 7])).kind is NodeKind.STICK
        assert node(from_generators([4, 5, 6])).kind is NodeKind.LEAF

    def test_counts(self, ps_g3):
        """Test strong and weak counts"""
        decorated = node(ps_g3)
        assert decorated.generators == [5, 7]
        assert (decorated.strong_count, decorated.weak_count) == (1, 1)

    def test_methods_give_same_node(self):
        """Test node() is independent of the classification method"""
        s = from_generators([4, 6, 7, 9])
        assert node(s, method="nu") == node(s, method="definitional")

    def test_format_node(self):
        """Test the dump line of <4,6,7,9>"""
        assert format_node(node(from_generators([4, 6, 7, 9]))) == "4\t<4,6,7,9>\t6+ 7+ 9-\tB"

    def test_format_leaf(self):
        """Test a leaf has an empty generator column"""
        assert format_node(node(from_generators([3, 4]))) == "3\t<3,4>\t\tL"


class TestWalk:
    """Test suite for iter_subtree and walk"""

    def test_counts_to_genus_4(self):
        """Test 1, 1, 2, 4, 7"""
        counter = GenusCounter()
        walk(4, counter)
        assert [counter.counts[g] for g in range(5)] == [1, 1, 2, 4, 7]

    def test_counts_match_known_values(self, nodes_to_genus_8, known_counts):
        """Test the pre-order walk visits n_g nodes of each genus"""
        per_genus = [0] * 9
        for tree_node in nodes_to_genus_8:
            per_genus[tree_node.genus] += 1
        assert per_genus == known_counts[:9]

    def test_pre_order_dump(self, golden_dir):
        """Test the genus 4 dump byte for byte"""
        expected = (golden_dir / "tree_g4.txt").read_text(encoding="utf-8").splitlines()
        assert [format_node(n) for n in iter_subtree(TRIVIAL, 4)] == expected

    def test_pre_order_dump_to_genus_6(self, golden_dir):
        """Test the genus 6 dump byte for byte"""
        expected = (golden_dir / "tree_g6.txt").read_text(encoding="utf-8").splitlines()
        assert [format_node(n) for n in iter_subtree(TRIVIAL, 6)] == expected
        assert [format_node(n) for n in iter_subtree(TRIVIAL, 6, incremental=False)] == expected

    def test_incremental_matches_recompute(self):
        """Test inherited generator lists equal recomputed ones"""
        fast = list(iter_subtree(TRIVIAL, 8, incremental=True))
        slow = list(iter_subtree(TRIVIAL, 8, incremental=False))
        assert fast == slow

    def test_no_duplicates(self, nodes_to_genus_8):
        """Test every semigroup is visited once"""
        seen = [n.semigroup for n in nodes_to_genus_8]
        assert len(seen) == len(set(seen))

    def test_finite_subtree_without_limit(self):
        """Test a leaf subtree walks to completion with no genus limit"""
        assert [n.semigroup for n in iter_subtree(from_generators([3, 5]), None)] == [
            from_generators([3, 5])
        ]

    def test_admit_filter(self):
        """Test removing only odd generators walks the hyperelliptic stick"""
        visited = iter_subtree(TRIVIAL, 4, admit=lambda e: e % 2 == 1)
        assert [canonical_string(n.semigroup) for n in visited] == [
            "<1>", "<2,3>", "<2,5>", "<2,7>", "<2,9>",
        ]

    def test_plain_callable_visitor(self):
        """Test a serial walk accepts any callable"""
        seen = []
        walk(3, seen.append)
        assert len(seen) == 8

    def test_bad_arguments(self):
        """Test negative genus and zero workers"""
        with pytest.raises(BadParameter):
            walk(-1, GenusCounter())
        with pytest.raises(BadParameter):
            walk(3, GenusCounter(), workers=0)

    def test_parallel_needs_visitor(self):
        """Test a parallel walk refuses a plain callable"""
        with pytest.raises(BadParameter):
            walk(5, [].append, workers=2, partition_genus=2)

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        """Test the partitioned walk merges to the serial counts"""
        serial = GenusCounter()
        walk(10, serial)
        parallel = GenusCounter()
        walk(10, parallel, workers=2, partition_genus=3)
        assert parallel.counts == serial.counts
