"""
Tests for the dominance relation and the dominance cache.
"""
from proofmin.core.config import SearchConfig
from proofmin.core.dominance import DominanceCache, DominanceEntry, dominates
from proofmin.core.subproblem import Subproblem, partition, root_subproblem

from .conftest import T, X, Y, Z, clauses

SHORT = SearchConfig.for_mode("short")


def layer3(formula) -> Subproblem:
    axioms = formula.clause_set
    return Subproblem(
        previous=axioms | clauses([Y, Z, T], [-X, Z]),
        current=clauses([Y, T], [-X, T]),
        next=clauses([-X]),
        forgotten=clauses([Z, T], [Y, Z], [-Y, T]),
        axioms=axioms,
        depth=2,
        tick=5,
    )


class TestDominates:
    """Test the five-condition dominance relation."""

    def test_reflexive(self, layered_formula):
        """Test that a subproblem dominates itself."""
        p = layer3(layered_formula)
        assert dominates(DominanceEntry.of(p), p)

    def test_larger_forgotten_set_loses(self, layered_formula):
        """Test that forgetting more than the candidate breaks dominance."""
        p = layer3(layered_formula)
        entry = DominanceEntry.of(p)
        entry.forgotten = entry.forgotten | clauses([X, Y])
        assert not dominates(entry, p)

    def test_siblings(self, layered_formula):
        """Test that taking {y} does not dominate forgetting it for {x, t}."""
        take_y, take_xt, _ = partition(layer3(layered_formula), SHORT)
        assert not dominates(DominanceEntry.of(take_y), take_xt)

    def test_more_known_clauses_loses(self, layered_formula):
        """Test the known-count condition."""
        p = layer3(layered_formula)
        entry = DominanceEntry.of(p)
        entry.known_count += 1
        assert not dominates(entry, p)

    def test_axiom_condition_skipped_for_mus(self, layered_formula):
        """Test that extra used axioms only matter for general formulas."""
        p = layer3(layered_formula)
        entry = DominanceEntry.of(p)
        entry.axioms = entry.axioms | clauses([Y, -T])
        assert not dominates(entry, p)
        assert dominates(entry, p, is_mus=True)

    def test_entry_fields(self, layered_formula):
        """Test what an entry records."""
        p = layer3(layered_formula)
        entry = DominanceEntry.of(p, now=7)
        assert entry.frontier == p.known_frontier
        assert entry.known_count == 12
        assert entry.origin == 5
        assert entry.last_access == 7
        assert entry.derivable == frozenset(p.frontier_resolvents)


class TestDominanceCache:
    """Test lookup, refresh and eviction."""

    def test_empty_cache(self, small_formula):
        """Test that an empty cache prunes nothing."""
        cache = DominanceCache()
        entry = DominanceEntry.of(root_subproblem(small_formula))
        assert not cache.lookup(entry, now=1)

    def test_own_entry_hits(self, layered_formula):
        """Test that a stored entry dominates the same subproblem."""
        cache = DominanceCache()
        p = layer3(layered_formula)
        cache.insert(DominanceEntry.of(p), now=1)
        assert cache.lookup(DominanceEntry.of(p), now=2)
        assert cache.hits == 1

    def test_ancestor_entries_ignored(self, layered_formula):
        """Test that entries in the candidate lineage are skipped."""
        cache = DominanceCache()
        p = layer3(layered_formula)
        cache.insert(DominanceEntry.of(p), now=1)
        assert not cache.lookup(DominanceEntry.of(p), now=2, lineage=frozenset({5}))

    def test_stale_entry_not_consulted(self, layered_formula):
        """Test the lifetime rule on lookup."""
        cache = DominanceCache(lifetime=10)
        p = layer3(layered_formula)
        cache.insert(DominanceEntry.of(p), now=1)
        assert not cache.lookup(DominanceEntry.of(p), now=12)
        assert cache.lookup(DominanceEntry.of(p), now=11)

    def test_hit_refreshes_entry(self, layered_formula):
        """Test that a hit restarts the lifetime."""
        cache = DominanceCache(lifetime=10)
        p = layer3(layered_formula)
        cache.insert(DominanceEntry.of(p), now=1)
        assert cache.lookup(DominanceEntry.of(p), now=10)
        assert cache.lookup(DominanceEntry.of(p), now=20)

    def test_eviction_on_insert(self, small_formula, layered_formula):
        """Test that idle entries are dropped when a new one arrives."""
        cache = DominanceCache(lifetime=10)
        cache.insert(DominanceEntry.of(layer3(layered_formula)), now=1)
        root = root_subproblem(small_formula)
        cache.insert(DominanceEntry.of(root), now=50)
        assert len(cache) == 1
        assert cache.evicted == 1

    def test_different_frontier_misses(self, small_formula, layered_formula):
        """Test that buckets separate different frontiers."""
        cache = DominanceCache()
        cache.insert(DominanceEntry.of(layer3(layered_formula)), now=1)
        assert not cache.lookup(DominanceEntry.of(root_subproblem(small_formula)), now=2)

    def test_clear(self, layered_formula):
        """Test emptying the cache."""
        cache = DominanceCache()
        cache.insert(DominanceEntry.of(layer3(layered_formula)), now=1)
        cache.clear()
        assert len(cache) == 0
