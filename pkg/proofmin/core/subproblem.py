"""
Search subproblems over partial layer lists.

A subproblem fixes the layers built so far (``previous``), the last complete
layer (``current``) and the decisions taken for the next layer: clauses
already placed there (``next``) and clauses ruled out (``forgotten``).
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import count
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .cnf import Clause, Formula, frontier, resolve
from .config import OrderDirection, SearchConfig

Pair = Tuple[Clause, Clause]


class Derivation(NamedTuple):
    """A resolution step recorded by the search: ``clause = left ⋄ right``."""
    clause: Clause
    left: Clause
    right: Clause


@dataclass(frozen=True, eq=False)
class Subproblem:
    """
    A search node.

    ``used`` holds every known clause that premises some pair producing a
    derivation on this branch. ``required`` holds only the axioms found in
    every producing pair of some derivation, so each compatible proof
    contains them. ``derivations`` keeps the derivations in the order they
    were made. ``lineage`` holds the ticks of all ancestors.
    """
    previous: FrozenSet[Clause]
    current: FrozenSet[Clause]
    next: FrozenSet[Clause] = frozenset()
    forgotten: FrozenSet[Clause] = frozenset()
    used: FrozenSet[Clause] = frozenset()
    required: FrozenSet[Clause] = frozenset()
    derivations: Tuple[Derivation, ...] = ()
    axioms: FrozenSet[Clause] = frozenset()
    depth: int = 0
    tick: int = 0
    lineage: FrozenSet[int] = field(default=frozenset(), repr=False)

    @cached_property
    def known(self) -> FrozenSet[Clause]:
        return self.previous | self.current | self.next

    @cached_property
    def known_frontier(self) -> FrozenSet[Clause]:
        return frontier(self.known)

    @property
    def derived(self) -> FrozenSet[Clause]:
        return self.known - self.axioms

    @property
    def used_axioms(self) -> FrozenSet[Clause]:
        """Axioms every proof compatible with this subproblem contains."""
        return self.required

    def has_empty_clause(self) -> bool:
        return any(c.is_empty() for c in self.next) or any(c.is_empty() for c in self.current)

    @cached_property
    def frontier_resolvents(self) -> Dict[Clause, List[Pair]]:
        """Derivable clauses with every frontier premise pair producing them."""
        return self._resolvents(
            frontier(self.current), frontier(self.current | self.previous)
        )

    @cached_property
    def all_resolvents(self) -> Dict[Clause, List[Pair]]:
        """As ``frontier_resolvents``, without the frontier restriction."""
        return self._resolvents(self.current, self.current | self.previous)

    def _resolvents(self, firsts: Iterable[Clause],
                    seconds: Iterable[Clause]) -> Dict[Clause, List[Pair]]:
        known = self.known
        ordered_seconds = sorted(seconds, key=lambda c: c.sort_key)
        found: Dict[Clause, List[Pair]] = {}
        for first in sorted(firsts, key=lambda c: c.sort_key):
            for second in ordered_seconds:
                resolvent = resolve(first, second)
                if resolvent is None or resolvent in known or resolvent in self.forgotten:
                    continue
                found.setdefault(resolvent, []).append((first, second))
        return found

    def resolvents(self, frontier_branching: bool = True) -> Dict[Clause, List[Pair]]:
        return self.frontier_resolvents if frontier_branching else self.all_resolvents

    def summary(self) -> Dict[str, int]:
        return {
            "depth": self.depth,
            "tick": self.tick,
            "known": len(self.known),
            "next": len(self.next),
            "forgotten": len(self.forgotten),
            "derived": len(self.derivations),
        }


def root_subproblem(formula: Formula) -> Subproblem:
    """The root node: both ``previous`` and ``current`` are the formula."""
    clauses = formula.clause_set
    return Subproblem(previous=clauses, current=clauses, axioms=clauses)


def clause_order_key(config: SearchConfig, known_frontier: Iterable[Clause]):
    """Sort key for candidate clauses under the configured ordering."""
    frequency = Counter(lit for clause in known_frontier for lit in clause.lits)
    length_sign = 1 if config.length_order is OrderDirection.ASCENDING else -1
    frequency_sign = 1 if config.frequency_order is OrderDirection.ASCENDING else -1

    def key(clause: Clause):
        score = sum(frequency[lit] for lit in clause.lits)
        return (length_sign * len(clause), frequency_sign * score, clause.sort_key)

    return key


def derivable(p: Subproblem, config: Optional[SearchConfig] = None) -> List[Clause]:
    """
    Clauses that may enter the next layer, in branching order.

    Candidates are resolvents of a frontier clause of ``current`` with a
    frontier clause of ``current ∪ previous`` that are neither known nor
    forgotten.
    """
    config = config or SearchConfig()
    candidates = p.resolvents(config.frontier_branching)
    ordered = sorted(candidates, key=clause_order_key(config, p.known_frontier))
    if config.branch_width is not None:
        ordered = ordered[: config.branch_width]
    return ordered


def partition(p: Subproblem, config: Optional[SearchConfig] = None,
              ticks: Optional[Iterator[int]] = None) -> List[Subproblem]:
    """
    Split a subproblem into disjoint children.

    Child j places the j-th derivable clause into the next layer and forgets
    the ones before it. The commit child closes the layer; it is produced only
    when the next layer is non-empty.
    """
    config = config or SearchConfig()
    if ticks is None:
        ticks = count(p.tick + 1)
    omegas = derivable(p, config)
    pairs = p.resolvents(config.frontier_branching)
    lineage = p.lineage | {p.tick}

    children: List[Subproblem] = []
    for j, omega in enumerate(omegas):
        producers = pairs[omega]
        premises = frozenset(c for pair in producers for c in pair)
        needed = frozenset.intersection(
            *(frozenset(pair) & p.axioms for pair in producers)
        )
        left, right = producers[0]
        children.append(Subproblem(
            previous=p.previous,
            current=p.current,
            next=p.next | {omega},
            forgotten=p.forgotten | frozenset(omegas[:j]),
            used=p.used | premises,
            required=p.required | needed,
            derivations=p.derivations + (Derivation(omega, left, right),),
            axioms=p.axioms,
            depth=p.depth,
            tick=next(ticks),
            lineage=lineage,
        ))

    if p.next:
        children.append(Subproblem(
            previous=p.previous | p.current,
            current=p.next,
            next=frozenset(),
            forgotten=p.forgotten | frozenset(omegas),
            used=p.used,
            required=p.required,
            derivations=p.derivations,
            axioms=p.axioms,
            depth=p.depth + 1,
            tick=next(ticks),
            lineage=lineage,
        ))
    return children


def prune_unused(p: Subproblem) -> bool:
    """True if a derived clause is both subsumed within the known set and unused."""
    front = p.known_frontier
    return any(
        clause not in front and clause not in p.used for clause in p.derived
    )
