"""
DPLL satisfiability engine with resolution proof extraction.

Unsatisfiable runs produce a tree-like refutation: each conflict is explained
by resolving reason clauses in reverse trail order until only negated
decisions remain, and the explanations of the two branches of a decision are
resolved on the decision variable.
"""

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from ..utils.logger import get_logger
from .cnf import EMPTY_CLAUSE, Clause, Formula, resolve, sorted_clauses
from .exceptions import SearchInvariantError, SolverTimeoutError
from .proof import Proof, ProofBuilder

logger = get_logger(__name__)


class SatStatus(str, Enum):
    """Decision status of a clause set."""
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"


@dataclass
class Assignment:
    """Partial assignment with its trail of (literal, reason clause index)."""
    values: Dict[int, bool] = field(default_factory=dict)
    trail: List[Tuple[int, Optional[int]]] = field(default_factory=list)

    def value(self, lit: int) -> Optional[bool]:
        current = self.values.get(abs(lit))
        if current is None:
            return None
        return current if lit > 0 else not current

    def assign(self, lit: int, reason: Optional[int]) -> None:
        self.values[abs(lit)] = lit > 0
        self.trail.append((lit, reason))

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            lit, _ = self.trail.pop()
            del self.values[abs(lit)]


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a DPLL run: a model, a refutation, or nothing on timeout."""
    status: SatStatus
    model: Optional[Dict[int, bool]] = None
    proof: Optional[Proof] = None
    steps: int = 0

    @property
    def is_sat(self) -> bool:
        return self.status is SatStatus.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is SatStatus.UNSAT


class _BudgetExhausted(Exception):
    pass


@dataclass
class _Decision:
    """An open decision on the explicit search stack."""
    var: int
    mark: int
    explanations: List[Clause] = field(default_factory=list)

    @property
    def literal(self) -> int:
        """The literal currently decided: positive first, then negative."""
        return -self.var if self.explanations else self.var


class DpllSolver:
    """
    Single-use DPLL solver over a clause set.

    Args:
        clauses: Clause set to decide
        seed: Key of the random variable permutation used for branching
        budget: Maximum number of assignments (propagations plus decisions)
        deadline: Absolute ``time.monotonic()`` value after which the run stops
    """

    def __init__(
        self,
        clauses: Iterable[Clause],
        seed: int = 0,
        budget: Optional[int] = None,
        deadline: Optional[float] = None,
    ):
        self.clauses: List[Clause] = sorted_clauses(set(clauses))
        self.seed = seed
        self.budget = budget
        self.deadline = deadline
        self.steps = 0

        variables = sorted({abs(v) for c in self.clauses for v in c.lits})
        random.Random(seed).shuffle(variables)
        self._order = variables
        self._occurrences: Dict[int, List[int]] = {}
        for index, clause in enumerate(self.clauses):
            for lit in clause.lits:
                self._occurrences.setdefault(lit, []).append(index)

        self.assignment = Assignment()
        self._queue_head = 0
        self._builder = ProofBuilder()

    def solve(self) -> SolveResult:
        if EMPTY_CLAUSE in self.clauses:
            return SolveResult(SatStatus.UNSAT, proof=_single_step(EMPTY_CLAUSE), steps=0)
        try:
            explanation = self._search()
        except _BudgetExhausted:
            logger.log_solver_call("unknown", len(self.clauses), self.steps)
            return SolveResult(SatStatus.UNKNOWN, steps=self.steps)

        if explanation is None:
            model = dict(self.assignment.values)
            logger.log_solver_call("sat", len(self.clauses), self.steps)
            return SolveResult(SatStatus.SAT, model=model, steps=self.steps)

        if not explanation.is_empty():
            raise SearchInvariantError(f"refutation ended in {explanation}, not ⊥")
        proof = self._builder.build(EMPTY_CLAUSE, trim=True)
        logger.log_solver_call("unsat", len(self.clauses), self.steps, len(proof))
        return SolveResult(SatStatus.UNSAT, proof=proof, steps=self.steps)

    def _tick(self) -> None:
        self.steps += 1
        if self.budget is not None and self.steps > self.budget:
            raise _BudgetExhausted()
        if self.deadline is not None and self.steps % 256 == 0 \
                and time.monotonic() > self.deadline:
            raise _BudgetExhausted()

    def _assign(self, lit: int, reason: Optional[int]) -> None:
        self._tick()
        self.assignment.assign(lit, reason)

    def _initial_units(self) -> Optional[int]:
        for index, clause in enumerate(self.clauses):
            if len(clause) != 1:
                continue
            lit = clause.lits[0]
            state = self.assignment.value(lit)
            if state is False:
                return index
            if state is None:
                self._assign(lit, index)
        return None

    def _propagate(self) -> Optional[int]:
        """Unit propagation from the queue head; returns a conflict clause index."""
        trail = self.assignment.trail
        while self._queue_head < len(trail):
            lit, _ = trail[self._queue_head]
            self._queue_head += 1
            for index in self._occurrences.get(-lit, ()):
                unassigned = 0
                candidate = 0
                satisfied = False
                for other in self.clauses[index].lits:
                    state = self.assignment.value(other)
                    if state is True:
                        satisfied = True
                        break
                    if state is None:
                        unassigned += 1
                        candidate = other
                        if unassigned > 1:
                            break
                if satisfied or unassigned > 1:
                    continue
                if unassigned == 0:
                    return index
                self._assign(candidate, index)
        return None

    def _explain(self, conflict: int) -> Clause:
        """Resolve the conflict clause against reasons in reverse trail order."""
        current = self.clauses[conflict]
        self._builder.axiom(current)
        for lit, reason in reversed(self.assignment.trail):
            if reason is None or -lit not in current.literal_set:
                continue
            reason_clause = self.clauses[reason]
            self._builder.axiom(reason_clause)
            resolvent = resolve(current, reason_clause)
            if resolvent is None:
                raise SearchInvariantError("reason clause does not resolve with conflict")
            self._builder.resolvent(resolvent, current, reason_clause)
            current = resolvent
        return current

    def _pick_variable(self) -> Optional[int]:
        for var in self._order:
            if var not in self.assignment.values:
                return var
        return None

    def _search(self) -> Optional[Clause]:
        """None when a model was found, else a clause falsified by the decisions."""
        frames: List[_Decision] = []
        conflict = self._initial_units()
        if conflict is None:
            conflict = self._propagate()

        while True:
            if conflict is None:
                var = self._pick_variable()
                if var is None:
                    return None
                frames.append(_Decision(var, len(self.assignment.trail)))
                self._assign(var, None)
                conflict = self._propagate()
                continue

            result = self._explain(conflict)
            conflict = None
            while frames:
                frame = frames[-1]
                self.assignment.undo(frame.mark)
                self._queue_head = frame.mark
                if -frame.literal not in result.literal_set:
                    # the branch never relied on this decision
                    frames.pop()
                    continue
                if not frame.explanations:
                    frame.explanations.append(result)
                    self._assign(-frame.var, None)
                    conflict = self._propagate()
                    break
                positive = frame.explanations[0]
                resolvent = resolve(positive, result)
                if resolvent is None:
                    raise SearchInvariantError("branch explanations do not resolve")
                self._builder.resolvent(resolvent, positive, result)
                frames.pop()
                result = resolvent
            if not frames and conflict is None:
                return result


def _single_step(clause: Clause) -> Proof:
    builder = ProofBuilder()
    builder.axiom(clause)
    return builder.build(clause)


def _as_clauses(source: Iterable[Clause]) -> Iterable[Clause]:
    if isinstance(source, Formula):
        return source.clauses
    return source


def solve(
    formula: Iterable[Clause],
    seed: int = 0,
    budget: Optional[int] = None,
    deadline: Optional[float] = None,
) -> SolveResult:
    """Decide a formula (or plain clause collection) with DPLL."""
    return DpllSolver(_as_clauses(formula), seed, budget, deadline).solve()


def complete(known: Iterable[Clause], seed: int = 0,
             budget: Optional[int] = None,
             deadline: Optional[float] = None) -> Proof:
    """
    Refute a clause set, treating every clause as an axiom.

    Raises:
        SearchInvariantError: if the clause set is satisfiable.
        SolverTimeoutError: if the budget runs out.
    """
    result = solve(known, seed, budget, deadline)
    if result.status is SatStatus.SAT:
        raise SearchInvariantError("completion found a satisfiable known set")
    if result.status is SatStatus.UNKNOWN:
        raise SolverTimeoutError(f"completion exceeded budget after {result.steps} steps")
    assert result.proof is not None
    return result.proof


def is_sat(clauses: Iterable[Clause], budget: Optional[int] = None,
           deadline: Optional[float] = None) -> SatStatus:
    """Decision-only wrapper over ``solve`` with seed 0."""
    return solve(clauses, 0, budget, deadline).status


def correcting_clauses(clauses: Iterable[Clause], budget: Optional[int] = None,
                       deadline: Optional[float] = None) -> FrozenSet[Clause]:
    """
    Clauses whose removal is proven to make the set satisfiable.

    Removals that end UNKNOWN are left out.
    """
    pool = frozenset(_as_clauses(clauses))
    if budget is not None and budget <= 0:
        return frozenset()
    found: Set[Clause] = set()
    for clause in sorted_clauses(pool):
        if is_sat(pool - {clause}, budget, deadline) is SatStatus.SAT:
            found.add(clause)
    return frozenset(found)


def model_satisfies(model: Dict[int, bool], clauses: Sequence[Clause]) -> bool:
    """True iff every clause has a literal made true by the model."""
    return all(
        any(model.get(abs(v)) == (v > 0) for v in clause.lits) for clause in clauses
    )
