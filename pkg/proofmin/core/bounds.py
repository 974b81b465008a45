"""
Lower bounds on the length of proofs compatible with a subproblem.

The bounds count clauses still needed: an unsatisfiable subset of the formula
must appear as axioms, and the known clauses must be narrowed down to an
unsatisfiable subset containing every clause not yet used as a premise.
Both quantities are smallest-unsatisfiable-subset (SMUS) problems, solved
here by a small best-first branch-and-bound over mandatory clause sets.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

from sortedcontainers import SortedList

from ..utils.logger import get_logger
from .cnf import Clause, Formula, frontier, sorted_clauses
from .dpll import SatStatus, correcting_clauses, is_sat
from .exceptions import SatInputError
from .subproblem import Subproblem

logger = get_logger(__name__)


@dataclass(frozen=True)
class SmusQuery:
    """Smallest unsatisfiable subset of ``clauses`` that contains ``fixed``."""
    clauses: FrozenSet[Clause]
    fixed: FrozenSet[Clause] = frozenset()
    time_budget: Optional[float] = 1.0
    node_budget: Optional[int] = None
    sat_budget: Optional[int] = None
    deadline: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", frozenset(self.clauses))
        object.__setattr__(self, "fixed", frozenset(self.fixed))
        if not self.fixed <= self.clauses:
            raise ValueError("fixed clauses must be a subset of the query clauses")


class SmusResult(NamedTuple):
    value: int
    exact: bool


class BoundProvenance(str, Enum):
    """Which expression produced a subproblem bound."""
    MUS_KNOWN = "mus-known"
    GENERAL = "general"
    MUS_TRIVIAL = "mus-trivial"


@dataclass(frozen=True)
class BoundResult:
    """A lower bound on compatible proof length."""
    value: int
    exact: bool
    provenance: BoundProvenance

    def to_text(self) -> str:
        exact = "true" if self.exact else "false"
        return f"bound={self.value} exact={exact} provenance={self.provenance.value}"


def mus_bound(formula: Formula) -> int:
    """Proof length lower bound for a minimally unsatisfiable formula."""
    return 2 * len(formula) - 1


@dataclass(order=True)
class _SmusNode:
    lower: int
    order: int
    clauses: FrozenSet[Clause] = field(compare=False)
    mandatory: FrozenSet[Clause] = field(compare=False)


def cutoff(seconds: Optional[float], deadline: Optional[float]) -> Optional[float]:
    """The earlier of ``seconds`` from now and the absolute ``deadline``."""
    if seconds is None:
        return deadline
    local = time.monotonic() + seconds
    return local if deadline is None else min(local, deadline)


def _branch_clause(free: Iterable[Clause]) -> Clause:
    # longest first; among equals the canonical first
    return max(sorted_clauses(free), key=len)


def smus_lower_bound(query: SmusQuery) -> SmusResult:
    """
    Best-first branch-and-bound for the SMUS size.

    A node is a pair (clauses, mandatory) whose bound is the number of
    mandatory clauses. Branching on a free clause either makes it mandatory
    or drops it, in which case every clause whose removal then makes the rest
    satisfiable becomes mandatory. The first node whose mandatory set is
    proven unsatisfiable is optimal. When the budget runs out the smallest
    bound still open is returned with ``exact=False``.

    Raises:
        SatInputError: if the query clauses are proven satisfiable.
    """
    deadline = cutoff(query.time_budget, query.deadline)
    sat_budget = query.sat_budget

    if is_sat(query.clauses, sat_budget, deadline) is SatStatus.SAT:
        raise SatInputError("SMUS query over a satisfiable clause set")

    root_mandatory = query.fixed | correcting_clauses(query.clauses, sat_budget, deadline)
    queue = SortedList([_SmusNode(len(root_mandatory), 0, query.clauses, root_mandatory)])
    created = 1
    expanded = 0

    while queue:
        out_of_time = deadline is not None and time.monotonic() > deadline
        out_of_nodes = query.node_budget is not None and expanded >= query.node_budget
        if out_of_time or out_of_nodes:
            return SmusResult(max(queue[0].lower, 1), False)

        node = queue.pop(0)
        expanded += 1
        status = is_sat(node.mandatory, sat_budget, deadline)
        if status is SatStatus.UNSAT:
            return SmusResult(len(node.mandatory), True)

        free = node.clauses - node.mandatory
        if not free:
            if status is SatStatus.SAT:
                continue
            # undecided within budget
            return SmusResult(max(node.lower, 1), False)

        omega = _branch_clause(free)
        queue.add(_SmusNode(node.lower + 1, -created, node.clauses,
                            node.mandatory | {omega}))
        created += 1

        rest = node.clauses - {omega}
        if is_sat(rest, sat_budget, deadline) is SatStatus.SAT:
            continue
        mandatory = node.mandatory | correcting_clauses(rest, sat_budget, deadline)
        queue.add(_SmusNode(len(mandatory), -created, rest, mandatory))
        created += 1

    # every branch was refuted; only reachable when SAT checks ran out of budget
    return SmusResult(max(len(query.fixed), 1), False)


def root_smus_bound(query: SmusQuery) -> SmusResult:
    """
    Cheap SMUS bound: the fixed clauses plus the correcting clauses.

    Exact when that set is already unsatisfiable.
    """
    deadline = cutoff(query.time_budget, query.deadline)
    mandatory = query.fixed | correcting_clauses(query.clauses, query.sat_budget, deadline)
    exact = is_sat(mandatory, query.sat_budget, deadline) is SatStatus.UNSAT
    return SmusResult(max(len(mandatory), 1), exact)


def unused_frontier_clauses(p: Subproblem) -> FrozenSet[Clause]:
    """Frontier clauses of the known set never used as a premise."""
    return frozenset(c for c in p.known_frontier if c not in p.used)


class LowerBounder:
    """
    Subproblem bounds for one formula, with memoized SMUS answers.

    Args:
        formula: The input formula
        is_mus: Caller asserts the formula is minimally unsatisfiable
        m_switch: Largest SMUS input solved by full branch-and-bound; larger
            inputs get the cheap correcting-clause bound
        time_budget: Seconds per SMUS call
        node_budget: Node limit per SMUS call
        sat_budget: Assignment budget per satisfiability check
        deadline: Absolute ``time.monotonic()`` cutoff shared by every call
    """

    def __init__(
        self,
        formula: Formula,
        is_mus: bool = False,
        m_switch: int = 28,
        time_budget: Optional[float] = 1.0,
        node_budget: Optional[int] = None,
        sat_budget: Optional[int] = None,
        deadline: Optional[float] = None,
    ):
        self.formula = formula
        self.axioms = formula.clause_set
        self.is_mus = is_mus
        self.m_switch = m_switch
        self.time_budget = time_budget
        self.node_budget = node_budget
        self.sat_budget = sat_budget
        self.deadline = deadline
        self._memo: Dict[Tuple[FrozenSet[Clause], FrozenSet[Clause]], SmusResult] = {}
        self._correcting: Optional[FrozenSet[Clause]] = None
        self.calls = 0
        self.degraded = 0

    @property
    def correcting(self) -> FrozenSet[Clause]:
        """Formula clauses whose removal makes the formula satisfiable."""
        if self._correcting is None:
            if self.is_mus:
                self._correcting = self.axioms
            else:
                seconds = None
                if self.time_budget is not None:
                    seconds = self.time_budget * max(len(self.axioms), 1)
                deadline = cutoff(seconds, self.deadline)
                self._correcting = correcting_clauses(self.axioms, self.sat_budget, deadline)
        return self._correcting

    def smus(self, clauses: Iterable[Clause], fixed: Iterable[Clause]) -> SmusResult:
        """SMUS bound over the frontier of ``clauses`` together with ``fixed``."""
        fixed = frozenset(fixed)
        universe = frontier(clauses) | fixed
        key = (universe, fixed)
        cached = self._memo.get(key)
        if cached is not None:
            return cached

        self.calls += 1
        query = SmusQuery(universe, fixed, self.time_budget, self.node_budget,
                          self.sat_budget, self.deadline)
        try:
            if len(universe) <= self.m_switch:
                result = smus_lower_bound(query)
            else:
                result = root_smus_bound(query)
        except SatInputError as e:
            self.degraded += 1
            logger.warning(f"SMUS bound failed ({e}); using the fixed-set size")
            result = SmusResult(max(len(fixed), 1), False)
        self._memo[key] = result
        return result

    def bound(self, p: Subproblem) -> BoundResult:
        """Lower bound on the length of any proof compatible with ``p``."""
        unused = unused_frontier_clauses(p)

        if self.is_mus:
            if not p.derivations:
                return BoundResult(mus_bound(self.formula), True,
                                   BoundProvenance.MUS_TRIVIAL)
            tail = self.smus(p.known_frontier, unused)
            return BoundResult(len(p.known) + tail.value - 1, tail.exact,
                               BoundProvenance.MUS_KNOWN)

        axioms = self.smus(self.axioms, p.used_axioms | self.correcting)
        tail = self.smus(p.known_frontier, unused - self.axioms)
        value = axioms.value + len(p.derived) + tail.value - 1
        return BoundResult(value, axioms.exact and tail.exact, BoundProvenance.GENERAL)


def subproblem_bound(
    p: Subproblem,
    formula: Formula,
    is_mus: bool = False,
    m_switch: int = 28,
    time_budget: Optional[float] = 1.0,
    bounder: Optional[LowerBounder] = None,
) -> BoundResult:
    """One-off subproblem bound; the search keeps a ``LowerBounder`` instead."""
    if bounder is None:
        bounder = LowerBounder(formula, is_mus=is_mus, m_switch=m_switch,
                               time_budget=time_budget)
    return bounder.bound(p)
