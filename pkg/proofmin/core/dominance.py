"""
Dominance cache: visited subproblems that can prune later ones.

Entries are bucketed by the frontier of their known set, so a lookup only
checks entries with an identical frontier. Entries idle for longer than the
cache lifetime are skipped on lookup and evicted on insertion.
"""

from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Union

from ..utils.logger import get_logger
from .cnf import Clause
from .subproblem import Subproblem

logger = get_logger(__name__)


@dataclass(eq=False)
class DominanceEntry:
    """The facts about a subproblem that the dominance relation compares."""
    frontier: FrozenSet[Clause]
    forgotten: FrozenSet[Clause]
    axioms: FrozenSet[Clause]
    derivable: FrozenSet[Clause]
    known_count: int
    last_access: int = 0
    origin: int = 0

    @classmethod
    def of(
        cls,
        p: Subproblem,
        derivable: Optional[Iterable[Clause]] = None,
        correcting: FrozenSet[Clause] = frozenset(),
        now: int = 0,
        frontier_branching: bool = True,
    ) -> "DominanceEntry":
        if derivable is None:
            derivable = p.resolvents(frontier_branching)
        return cls(
            frontier=p.known_frontier,
            forgotten=p.forgotten,
            axioms=p.used_axioms | correcting,
            derivable=frozenset(derivable),
            known_count=len(p.known),
            last_access=now,
            origin=p.tick,
        )


def dominates(a: DominanceEntry, b: Union[DominanceEntry, Subproblem],
              is_mus: bool = False) -> bool:
    """
    True iff every proof compatible with ``b`` is matched by one of ``a``
    that is no longer.

    For minimally unsatisfiable formulas every axiom ends up used, so the
    axiom condition is skipped.
    """
    if isinstance(b, Subproblem):
        b = DominanceEntry.of(b)
    return (
        (is_mus or a.axioms <= b.axioms)
        and a.derivable >= b.derivable
        and a.frontier >= b.frontier
        and a.forgotten <= b.forgotten
        and a.known_count <= b.known_count
    )


class DominanceCache:
    """
    Frontier-keyed store of visited subproblems.

    Args:
        lifetime: Iterations an entry survives without being accessed
        is_mus: Skip the axiom condition of the dominance check
    """

    def __init__(self, lifetime: int = 100_000, is_mus: bool = False):
        self.lifetime = lifetime
        self.is_mus = is_mus
        self._buckets: Dict[FrozenSet[Clause], List[DominanceEntry]] = {}
        self._by_access: "OrderedDict[int, DominanceEntry]" = OrderedDict()
        self.hits = 0
        self.evicted = 0

    def __len__(self) -> int:
        return len(self._by_access)

    def _stale(self, entry: DominanceEntry, now: int) -> bool:
        return now - entry.last_access > self.lifetime

    def lookup(self, candidate: DominanceEntry, now: int,
               lineage: FrozenSet[int] = frozenset()) -> bool:
        """
        True iff a live entry dominates ``candidate``.

        Entries created by ancestors of the candidate are ignored. A hit
        refreshes the entry's access time.
        """
        for entry in self._buckets.get(candidate.frontier, ()):
            if self._stale(entry, now):
                continue
            if entry.origin in lineage:
                continue
            if entry.known_count > candidate.known_count:
                continue
            if dominates(entry, candidate, self.is_mus):
                entry.last_access = now
                self._by_access.move_to_end(entry.origin)
                self.hits += 1
                return True
        return False

    def insert(self, entry: DominanceEntry, now: int) -> None:
        """Store an entry, evicting everything idle past the lifetime."""
        while self._by_access:
            oldest = next(iter(self._by_access.values()))
            if not self._stale(oldest, now):
                break
            self._remove(oldest)
        entry.last_access = now
        self._by_access[entry.origin] = entry
        self._buckets.setdefault(entry.frontier, []).append(entry)

    def _remove(self, entry: DominanceEntry) -> None:
        del self._by_access[entry.origin]
        bucket = self._buckets[entry.frontier]
        bucket.remove(entry)
        if not bucket:
            del self._buckets[entry.frontier]
        self.evicted += 1

    def clear(self) -> None:
        self._buckets.clear()
        self._by_access.clear()
