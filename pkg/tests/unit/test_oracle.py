"""
Cross-checks between the bitmask walker and the set-based reference enumerator
"""
import pytest

from semigroups import oracle
from semigroups.core import from_gaps
from semigroups.stats import StatsOptions, aggregate
from semigroups.tree import effective_generators, node


class TestReferenceEnumerator:
    """Test suite for the reference enumerator itself"""

    def test_generators(self):
        """Test generators of {1,2,4} and of the empty gap set"""
        assert oracle.generators(frozenset({1, 2, 4})) == [3, 5, 7]
        assert oracle.generators(frozenset()) == [1]

    def test_effective(self):
        """Test effective generators of <4,6,7,9>"""
        assert oracle.effective(frozenset({1, 2, 3, 5})) == [6, 7, 9]

    def test_is_strong(self):
        """Test 5 strong and 7 weak in <3,5,7>"""
        gaps = frozenset({1, 2, 4})
        assert oracle.is_strong(gaps, 5)
        assert not oracle.is_strong(gaps, 7)

    def test_level_sizes(self, known_counts):
        """Test the set-based levels have the known sizes"""
        assert [len(level) for level in oracle.levels(7)] == known_counts[:8]

    def test_small_gcd(self):
        """Test gcd(6, 10, 12) = 2 and the empty case"""
        assert oracle.small_gcd(frozenset({1, 2, 3, 4, 5, 7, 8, 9, 11})) == 2
        assert oracle.small_gcd(frozenset({1, 2, 3})) == 0
        assert oracle.small_gcd(frozenset()) == 0

    def test_is_generator(self):
        """Test 7 is a generator of <3,5,7> and 8 is not"""
        gaps = frozenset({1, 2, 4})
        assert oracle.is_generator(gaps, 7)
        assert not oracle.is_generator(gaps, 8)
        assert not oracle.is_generator(gaps, 4)


class TestChainDescendants:
    """Test suite for the gcd-pruned descendant walk"""

    def test_hyperelliptic(self):
        """Test <2,5> has a single descendant three levels down, <2,11>"""
        assert list(oracle.chain_descendants(frozenset({1, 3}), 3)) == [frozenset({1, 3, 5, 7, 9})]

    def test_ordinary_keeps_two_children(self):
        """Test removing 6 or 7 from {0} U [4,inf) leaves gcd 1"""
        assert list(oracle.chain_descendants(frozenset({1, 2, 3}), 1)) == [
            frozenset({1, 2, 3, 4}),
            frozenset({1, 2, 3, 5}),
        ]

    def test_depth_zero(self):
        """Test depth 0 yields the input"""
        assert list(oracle.chain_descendants(frozenset({1, 3}), 0)) == [frozenset({1, 3})]

    def test_gcd_one_has_none(self):
        """Test {0,4,5} U [8,inf) has the child without 11 but none keeping a common divisor"""
        gaps = frozenset({1, 2, 3, 6, 7})
        assert oracle.effective(gaps) == [11]
        assert list(oracle.chain_descendants(gaps, 1)) == []


class TestCrossCheck:
    """Test suite comparing the fast walker against the reference"""

    def test_levels_match(self, nodes_to_genus_8):
        """Test both enumerations produce the same gap sets"""
        reference = oracle.levels(8)
        for g in range(9):
            walked = {frozenset(n.semigroup.gaps) for n in nodes_to_genus_8 if n.genus == g}
            assert walked == reference[g]

    def test_generators_match(self, nodes_to_genus_8):
        """Test effective generators agree node by node"""
        for tree_node in nodes_to_genus_8:
            gaps = frozenset(tree_node.semigroup.gaps)
            assert tree_node.generators == oracle.effective(gaps)

    def test_stats_match(self):
        """Test n_g, S_g, W_g and the histograms up to genus 8"""
        reference = oracle.level_stats(8)
        table = aggregate(8, StatsOptions(with_classes=False))
        for expected, row in zip(reference, table):
            assert (row.g, row.n_g, row.strong, row.weak) == (
                expected.g, expected.n_g, expected.strong, expected.weak,
            )
            assert row.strong_histogram == expected.strong_histogram

    @pytest.mark.slow
    def test_stats_match_to_genus_12(self):
        """Test the same agreement four levels deeper"""
        reference = oracle.level_stats(12)
        table = aggregate(12, StatsOptions(with_classes=False))
        assert [(r.n_g, r.strong, r.weak) for r in table] == [
            (e.n_g, e.strong, e.weak) for e in reference
        ]

    def test_strength_of_single_node(self):
        """Test one decorated node against the reference strengths"""
        s = from_gaps({1, 2, 3, 5})
        decorated = node(s)
        gaps = frozenset(s.gaps)
        assert [e for e in effective_generators(s)] == oracle.effective(gaps)
        assert [oracle.is_strong(gaps, e) for e in decorated.generators] == [True, True, False]
