"""
Best-first branch-and-bound over subproblems.

The queue is ordered by the most optimistic lower bound, newer subproblems
first on ties. Each popped subproblem is checked against the dominance cache,
the unused-clause rule and its lower bound before it is partitioned; every
child is completed with DPLL so that the incumbent improves as the search
runs. Stopping at any point leaves a valid proof and a valid lower bound.
"""

import random
import sys
import time
from dataclasses import asdict, dataclass, field
from enum import Enum
from itertools import count
from typing import Any, Callable, Dict, Optional

from sortedcontainers import SortedList

from ..utils.logger import get_logger, log_decorator
from .bounds import BoundResult, LowerBounder, mus_bound
from .cnf import EMPTY_CLAUSE, Formula
from .config import SearchConfig
from .dominance import DominanceCache, DominanceEntry
from .dpll import SatStatus, complete, solve
from .exceptions import SatInputError, SearchInvariantError, SolverTimeoutError
from .proof import Proof, ProofBuilder, ProofStep, verify_proof
from .subproblem import Subproblem, partition, prune_unused, root_subproblem

try:
    import resource
except ImportError:  # pragma: no cover - not available on Windows
    resource = None  # type: ignore[assignment]

logger = get_logger(__name__)

MEMORY_CHECK_INTERVAL = 256


class SearchStatus(str, Enum):
    """How a search ended."""
    OPTIMAL = "OPTIMAL"
    FEASIBLE = "FEASIBLE"
    RESOURCE_FAILURE = "RESOURCE_FAILURE"


@dataclass
class SearchStats:
    """Counters collected during a search."""
    nodes_expanded: int = 0
    pruned_by_bound: int = 0
    pruned_by_dominance: int = 0
    pruned_by_unused: int = 0
    cache_size: int = 0
    completions_run: int = 0
    queue_discarded: int = 0
    iterations: int = 0

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class ProgressEvent:
    """Emitted whenever the incumbent or the lower bound improves."""
    elapsed: float
    incumbent_length: int
    bound: int
    nodes: int

    def to_text(self) -> str:
        return (f"t={self.elapsed:.3f} incumbent={self.incumbent_length} "
                f"bound={self.bound} nodes={self.nodes}")


ProgressCallback = Callable[[ProgressEvent], None]


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a minimization run: the best proof found and what is proven about it."""
    incumbent: Proof
    incumbent_length: int
    best_lower_bound: int
    optimal: bool
    status: SearchStatus
    stats: SearchStats
    elapsed: float = 0.0
    root_bound: Optional[BoundResult] = None
    mus_gap: Optional[int] = None

    def to_text(self) -> str:
        return (f"status={self.status.value} length={self.incumbent_length} "
                f"bound={self.best_lower_bound} nodes={self.stats.nodes_expanded}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "optimal": self.optimal,
            "length": self.incumbent_length,
            "bound": self.best_lower_bound,
            "elapsed": round(self.elapsed, 6),
            "root_bound": None if self.root_bound is None else {
                "value": self.root_bound.value,
                "exact": self.root_bound.exact,
                "provenance": self.root_bound.provenance.value,
            },
            "mus_gap": self.mus_gap,
            "stats": self.stats.to_dict(),
        }


@dataclass(order=True)
class _QueueEntry:
    key: int
    order: int
    node: Subproblem = field(compare=False)
    evaluated: bool = field(default=False, compare=False)


class _Halt(Exception):
    pass


def peak_memory_mb() -> Optional[float]:
    """Peak resident set size of this process in MB, or None where unavailable."""
    if resource is None:
        return None
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    # bytes on macOS, kilobytes on Linux and the BSDs
    if sys.platform == "darwin":
        return peak / (1024 * 1024)
    return peak / 1024


def trivial_bound(p: Subproblem) -> int:
    """Length of the shortest known clause."""
    return min((len(c) for c in p.known), default=0)


class ProofMinimizer:
    """
    Anytime shortest-proof search for one formula.

    Args:
        formula: Unsatisfiable formula to refute
        config: Search configuration (defaults to the Optimal preset)
        progress: Called on every incumbent or bound improvement
        initial_proof: A known refutation to start from, e.g. imported from LRAT
    """

    def __init__(
        self,
        formula: Formula,
        config: Optional[SearchConfig] = None,
        progress: Optional[ProgressCallback] = None,
        initial_proof: Optional[Proof] = None,
    ):
        self.formula = formula
        self.config = config or SearchConfig()
        self.progress = progress
        self.initial_proof = initial_proof
        self.stats = SearchStats()
        self.bounder = LowerBounder(
            formula,
            is_mus=self.config.is_mus,
            m_switch=self.config.m_switch,
            time_budget=self.config.smus_time_budget,
            sat_budget=self.config.sat_budget,
        )
        self.cache = DominanceCache(self.config.cache_lifetime, self.config.is_mus)
        self._rng = random.Random(self.config.seed)
        self._ticks = count(1)
        self._start = 0.0
        self._deadline: Optional[float] = None
        self._last_report = 0.0
        self.incumbent: Optional[Proof] = None
        self.best_lower_bound = 1
        self._discarded_floor: Optional[int] = None
        self._queue_ceiling = self.config.queue_limit
        self._queue_ceiling_from_memory = False
        self._branching_truncated = False

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._start

    @property
    def incumbent_length(self) -> int:
        return len(self.incumbent) if self.incumbent is not None else 0

    def _completion_seed(self) -> int:
        if self.config.dynamic_seeding:
            return self._rng.randrange(2 ** 31)
        return self.config.seed

    def _report(self) -> None:
        if self.progress is None:
            return
        self._last_report = self.elapsed
        self.progress(ProgressEvent(self._last_report, self.incumbent_length,
                                    self.best_lower_bound, self.stats.nodes_expanded))

    def _heartbeat(self) -> None:
        interval = self.config.progress_interval
        if interval is not None and self.elapsed - self._last_report >= interval:
            self._report()

    def _install(self, proof: Proof, source: str) -> bool:
        """Adopt ``proof`` if it is strictly shorter than the incumbent."""
        if self.incumbent is not None and len(proof) >= len(self.incumbent):
            return False
        verdict = verify_proof(self.formula, proof)
        if not verdict:
            raise SearchInvariantError(
                f"{source} produced an invalid proof: {verdict.to_text(len(proof))}"
            )
        self.incumbent = proof
        logger.log_incumbent(len(proof), self.best_lower_bound,
                             self.stats.nodes_expanded, self.elapsed)
        self._report()
        return True

    def _raise_bound(self, value: int) -> None:
        value = min(value, self.incumbent_length)
        if self._discarded_floor is not None:
            value = min(value, self._discarded_floor)
        if value > self.best_lower_bound:
            self.best_lower_bound = value
            self._report()

    def _splice(self, node: Subproblem, completion: Optional[Proof]) -> Proof:
        """Join a node's derivations with a refutation of its known set."""
        builder = ProofBuilder()
        for clause in self.formula.clauses:
            builder.axiom(clause)
        for derivation in node.derivations:
            builder.resolvent(derivation.clause, derivation.left, derivation.right)
        if completion is not None:
            steps = completion.steps
            for step in steps:
                if step.premises is None:
                    builder.axiom(step.clause)
                else:
                    left, right = step.premises
                    builder.resolvent(step.clause, steps[left].clause, steps[right].clause)
        return builder.build(EMPTY_CLAUSE, trim=True)

    def _complete(self, node: Subproblem) -> None:
        self.stats.completions_run += 1
        try:
            completion = complete(node.known, self._completion_seed(),
                                  self.config.sat_budget, self._deadline)
        except SolverTimeoutError:
            logger.debug(f"Completion of node {node.tick} ran out of budget")
            return
        self._install(self._splice(node, completion), "completion")

    def _past_deadline(self) -> bool:
        return self._deadline is not None and time.monotonic() > self._deadline

    def _check_limits(self) -> None:
        if self._past_deadline():
            logger.log_search_event("time_limit", {"elapsed": self.elapsed})
            raise _Halt()
        if self.config.node_limit is not None \
                and self.stats.nodes_expanded >= self.config.node_limit:
            logger.log_search_event("node_limit", {"nodes": self.stats.nodes_expanded})
            raise _Halt()

    def _check_memory(self, queue: SortedList) -> None:
        cap = self.config.memory_cap_mb
        if cap is None or self._queue_ceiling_from_memory:
            return
        peak_mb = peak_memory_mb()
        if peak_mb is None or peak_mb <= cap:
            return
        ceiling = max(len(queue) // 2, 1)
        if self._queue_ceiling is not None:
            ceiling = min(ceiling, self._queue_ceiling)
        self._queue_ceiling = ceiling
        self._queue_ceiling_from_memory = True
        logger.warning(
            f"Memory peak {peak_mb:.0f} MB over cap {cap} MB; "
            f"queue limited to {ceiling} subproblems"
        )
        self._truncate(queue)

    def _truncate(self, queue: SortedList) -> None:
        if self._queue_ceiling is None:
            return
        while len(queue) > self._queue_ceiling:
            dropped = queue.pop(-1)
            self.stats.queue_discarded += 1
            if self._discarded_floor is None or dropped.key < self._discarded_floor:
                self._discarded_floor = dropped.key

    def _push(self, queue: SortedList, node: Subproblem, parent_key: int) -> None:
        if self.config.prune_by_bound:
            if parent_key >= self.incumbent_length:
                self.stats.pruned_by_bound += 1
                return
            queue.add(_QueueEntry(parent_key, -node.tick, node))
        else:
            queue.add(_QueueEntry(trivial_bound(node), -node.tick, node, True))

    def _outcome(self, status: SearchStatus, root_bound: Optional[BoundResult]) -> SearchOutcome:
        assert self.incumbent is not None
        optimal = status is SearchStatus.OPTIMAL
        if optimal:
            self.best_lower_bound = len(self.incumbent)
        self.stats.cache_size = len(self.cache)
        mus_gap = None
        if self.config.is_mus:
            mus_gap = len(self.incumbent) - mus_bound(self.formula)
        outcome = SearchOutcome(
            incumbent=self.incumbent,
            incumbent_length=len(self.incumbent),
            best_lower_bound=self.best_lower_bound,
            optimal=optimal,
            status=status,
            stats=self.stats,
            elapsed=self.elapsed,
            root_bound=root_bound,
            mus_gap=mus_gap,
        )
        logger.log_search_event("finished", outcome.to_dict())
        return outcome

    def run(self) -> SearchOutcome:
        """
        Search until optimality is proven or a limit is hit.

        Raises:
            SatInputError: if the formula is satisfiable.
            SolverTimeoutError: if the initial refutation does not fit the
                SAT budget within the time limit.
        """
        cfg = self.config
        self._start = time.monotonic()
        self._deadline = None if cfg.time_limit is None else self._start + cfg.time_limit
        self.bounder.deadline = self._deadline

        if self.formula.has_empty_clause():
            self.incumbent = Proof((ProofStep(EMPTY_CLAUSE),))
            self.best_lower_bound = 1
            return self._outcome(SearchStatus.OPTIMAL, None)

        first = solve(self.formula, cfg.seed, cfg.sat_budget, self._deadline)
        if first.status is SatStatus.SAT:
            raise SatInputError("formula is satisfiable")
        if first.status is SatStatus.UNKNOWN:
            raise SolverTimeoutError(
                "initial refutation exceeded the SAT budget or the time limit")
        assert first.proof is not None
        self._install(first.proof, "initial refutation")
        if self.initial_proof is not None:
            if verify_proof(self.formula, self.initial_proof):
                self._install(self.initial_proof, "initial proof")
            else:
                logger.warning("Ignoring initial proof that does not verify")

        logger.log_search_event("started", {
            "clauses": len(self.formula),
            "variables": self.formula.num_variables,
            "mode": cfg.mode.value,
            "incumbent": self.incumbent_length,
        })

        root = root_subproblem(self.formula)
        root_bound: Optional[BoundResult] = None
        if cfg.prune_by_bound or cfg.is_mus:
            root_bound = self.bounder.bound(root)
            self._raise_bound(root_bound.value)

        queue: SortedList = SortedList()
        if root_bound is not None:
            queue.add(_QueueEntry(root_bound.value, -root.tick, root, True))
        else:
            queue.add(_QueueEntry(trivial_bound(root), -root.tick, root, True))

        try:
            status = self._loop(queue)
        except MemoryError:
            queue.clear()
            logger.error("Out of memory; returning the incumbent")
            status = SearchStatus.RESOURCE_FAILURE
        return self._outcome(status, root_bound)

    def _loop(self, queue: SortedList) -> SearchStatus:
        cfg = self.config
        stats = self.stats
        correcting = self.bounder.correcting if cfg.prune_by_dominance else frozenset()

        while queue:
            if self.incumbent_length <= self.best_lower_bound:
                return SearchStatus.OPTIMAL
            try:
                self._check_limits()
            except _Halt:
                return SearchStatus.FEASIBLE
            stats.iterations += 1
            if stats.iterations % MEMORY_CHECK_INTERVAL == 0:
                self._check_memory(queue)
            self._heartbeat()

            entry = queue.pop(0)
            node = entry.node
            now = stats.iterations

            if cfg.prune_by_bound:
                if entry.key >= self.incumbent_length:
                    # every open key is at least this large
                    queue.clear()
                    break
                if not self._branching_truncated:
                    self._raise_bound(entry.key)

            signature = None
            if cfg.prune_by_dominance:
                signature = DominanceEntry.of(
                    node, node.resolvents(cfg.frontier_branching), correcting, now
                )
                if self.cache.lookup(signature, now, node.lineage):
                    stats.pruned_by_dominance += 1
                    continue

            if cfg.prune_unused and cfg.frontier_branching and prune_unused(node):
                stats.pruned_by_unused += 1
                continue

            if cfg.prune_by_bound and not entry.evaluated:
                value = max(self.bounder.bound(node).value, entry.key)
                if value >= self.incumbent_length:
                    stats.pruned_by_bound += 1
                    continue
                if value > entry.key:
                    queue.add(_QueueEntry(value, entry.order, node, True))
                    continue
                entry.key = value

            if signature is not None:
                self.cache.insert(signature, now)
            stats.nodes_expanded += 1

            static_commit = not cfg.dynamic_seeding
            if cfg.branch_width is not None and \
                    len(node.resolvents(cfg.frontier_branching)) > cfg.branch_width:
                # dropped candidates leave part of the space unexplored
                self._branching_truncated = True
            for child in partition(node, cfg, self._ticks):
                if EMPTY_CLAUSE in child.next:
                    self._install(self._splice(child, None), "derivation")
                    continue
                is_commit = child.depth > node.depth
                if not (is_commit and static_commit) and not self._past_deadline():
                    self._complete(child)
                self._push(queue, child, entry.key)
            self._truncate(queue)

        if self._branching_truncated:
            return SearchStatus.FEASIBLE
        if self._discarded_floor is not None \
                and self._discarded_floor < self.incumbent_length:
            self._raise_bound(self._discarded_floor)
            return SearchStatus.FEASIBLE
        return SearchStatus.OPTIMAL


@log_decorator(logger)
def minimize(
    formula: Formula,
    config: Optional[SearchConfig] = None,
    progress: Optional[ProgressCallback] = None,
    initial_proof: Optional[Proof] = None,
) -> SearchOutcome:
    """Find a short (with the Optimal preset, a shortest) resolution refutation."""
    return ProofMinimizer(formula, config, progress, initial_proof).run()
