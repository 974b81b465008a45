"""
Resolution proofs: steps, verification, the canonical layer list of a proof's
clause set, and the plain-text proof format.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from ..utils.logger import get_logger
from .cnf import EMPTY_CLAUSE, Clause, Formula, resolve, sorted_clauses
from .exceptions import NotAProofSetError, ProofFormatError

logger = get_logger(__name__)


@dataclass(frozen=True)
class ProofStep:
    """
    One clause of a proof.

    ``premises`` is None for axioms, otherwise the 0-based indices of the two
    earlier steps it was resolved from.
    """
    clause: Clause
    premises: Optional[Tuple[int, int]] = None

    @property
    def is_axiom(self) -> bool:
        return self.premises is None


@dataclass(frozen=True)
class Proof:
    """A sequence of proof steps; a valid proof ends with the empty clause."""
    steps: Tuple[ProofStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def length(self) -> int:
        return len(self.steps)

    def clauses(self) -> List[Clause]:
        return [step.clause for step in self.steps]

    def axioms(self) -> FrozenSet[Clause]:
        return frozenset(s.clause for s in self.steps if s.is_axiom)

    def derived(self) -> FrozenSet[Clause]:
        return frozenset(s.clause for s in self.steps if not s.is_axiom)


class VerdictReason(str, Enum):
    """Why a proof was rejected."""
    AXIOM_NOT_IN_FORMULA = "axiom-not-in-formula"
    BAD_RESOLVENT = "bad-resolvent"
    PREMISE_OUT_OF_ORDER = "premise-out-of-order"
    MISSING_EMPTY_CLAUSE = "missing-empty-clause"


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of proof verification.

    ``step`` is the 1-based id of the first failing step, matching the ids of
    the proof text format.
    """
    valid: bool
    reason: Optional[VerdictReason] = None
    step: Optional[int] = None

    def __bool__(self) -> bool:
        return self.valid

    def to_text(self, length: int) -> str:
        if self.valid:
            return f"VALID length={length}"
        assert self.reason is not None
        return f"INVALID step={self.step} reason={self.reason.value}"


VALID = Verdict(True)


def verify_proof(formula: Formula, proof: Proof) -> Verdict:
    """Check every step of a proof against the formula."""
    for index, step in enumerate(proof.steps):
        if step.premises is None:
            if step.clause not in formula.clause_set:
                return Verdict(False, VerdictReason.AXIOM_NOT_IN_FORMULA, index + 1)
            continue
        left, right = step.premises
        if not (0 <= left < index and 0 <= right < index):
            return Verdict(False, VerdictReason.PREMISE_OUT_OF_ORDER, index + 1)
        if resolve(proof.steps[left].clause, proof.steps[right].clause) != step.clause:
            return Verdict(False, VerdictReason.BAD_RESOLVENT, index + 1)
    if not proof.steps or not proof.steps[-1].clause.is_empty():
        return Verdict(False, VerdictReason.MISSING_EMPTY_CLAUSE, max(len(proof.steps), 1))
    return VALID


@dataclass(frozen=True)
class LayerList:
    """Clause sets L0..Ln; L0 is the formula, later layers the derived clauses."""
    layers: Tuple[FrozenSet[Clause], ...]

    def __len__(self) -> int:
        return len(self.layers)

    def __getitem__(self, index: int) -> FrozenSet[Clause]:
        return self.layers[index]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def length(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def derived(self) -> FrozenSet[Clause]:
        return frozenset().union(*self.layers[1:]) if len(self.layers) > 1 else frozenset()


def canonical_layer_list(formula: Formula, derived: Iterable[Clause]) -> LayerList:
    """
    Arrange a derived clause set into its unique layer list.

    Layer k keeps the unplaced derived clauses obtainable from a clause of
    layer k-1 and a clause of any layer up to k-1.

    Raises:
        NotAProofSetError: when a layer comes out empty while derived clauses
            remain unplaced.
    """
    base = frozenset(formula.clause_set)
    remaining: Set[Clause] = set(derived) - base
    layers: List[FrozenSet[Clause]] = [base]
    placed: List[Clause] = list(base)

    while remaining:
        previous = layers[-1]
        layer: Set[Clause] = set()
        for first in previous:
            for second in placed:
                resolvent = resolve(first, second)
                if resolvent is not None and resolvent in remaining:
                    layer.add(resolvent)
        if not layer:
            raise NotAProofSetError(
                f"{len(remaining)} derived clauses cannot be placed after "
                f"layer {len(layers) - 1}"
            )
        remaining -= layer
        layers.append(frozenset(layer))
        placed.extend(layer)

    return LayerList(tuple(layers))


def layers_to_proof(layers: LayerList) -> Proof:
    """
    Write a layer list out as a proof.

    Clauses are emitted layer by layer in canonical order; each derived clause
    takes the first valid premise pair (smallest left index, then smallest
    right index).
    """
    steps: List[ProofStep] = []
    for clause in sorted_clauses(layers.layers[0]):
        steps.append(ProofStep(clause))

    for layer in layers.layers[1:]:
        for clause in sorted_clauses(layer):
            target = clause.literal_set
            pair: Optional[Tuple[int, int]] = None
            for i, left in enumerate(steps):
                # the left premise minus its pivot must sit inside the resolvent
                if not any(len(left.clause.literal_set - target - {lit}) == 0
                           for lit in left.clause.lits):
                    continue
                for j in range(i + 1, len(steps)):
                    if resolve(left.clause, steps[j].clause) == clause:
                        pair = (i, j)
                        break
                if pair is not None:
                    break
            if pair is None:
                raise NotAProofSetError(f"no derivation for {clause} in its layer")
            steps.append(ProofStep(clause, pair))

    return Proof(tuple(steps))


class ProofBuilder:
    """
    Accumulates axioms and resolution records into a proof.

    Repeated clauses are recorded once; a resolvent equal to a declared axiom
    is treated as the axiom. ``build`` orders axioms canonically ahead of the
    derived clauses (kept in record order) and can trim everything that does
    not lead to the goal clause.
    """

    def __init__(self) -> None:
        self._axioms: Dict[Clause, None] = {}
        self._derived: Dict[Clause, Tuple[Clause, Clause]] = {}
        self.raw_steps = 0
        self.dedup_steps = 0

    def axiom(self, clause: Clause) -> None:
        if clause not in self._derived:
            self._axioms.setdefault(clause, None)

    def knows(self, clause: Clause) -> bool:
        return clause in self._axioms or clause in self._derived

    def is_axiom(self, clause: Clause) -> bool:
        return clause in self._axioms

    def resolvent(self, clause: Clause, left: Clause, right: Clause) -> bool:
        """Record ``clause = left ⋄ right``; returns True if the clause is new."""
        self.raw_steps += 1
        if self.knows(clause):
            return False
        if not (self.knows(left) and self.knows(right)):
            raise ValueError(f"premises of {clause} were never recorded")
        self._derived[clause] = (left, right)
        self.dedup_steps += 1
        return True

    def build(self, goal: Clause = EMPTY_CLAUSE, trim: bool = True,
              axiom_order: Optional[Sequence[Clause]] = None) -> Proof:
        if not self.knows(goal):
            raise ValueError(f"goal {goal} was never derived")

        if trim:
            needed: Set[Clause] = {goal}
            for clause in reversed(list(self._derived)):
                if clause in needed:
                    needed.update(self._derived[clause])
            axioms = [c for c in self._axioms if c in needed]
            derived = [c for c in self._derived if c in needed]
        else:
            axioms = list(self._axioms)
            derived = list(self._derived)
            if goal in self._derived:
                derived = derived[: derived.index(goal) + 1]

        if axiom_order is None:
            axioms = sorted_clauses(axioms)
        else:
            rank = {c: i for i, c in enumerate(axiom_order)}
            axioms.sort(key=lambda c: rank.get(c, len(rank)))

        if goal in self._axioms:
            # the goal is given outright
            return Proof((ProofStep(goal),))

        index: Dict[Clause, int] = {}
        steps: List[ProofStep] = []
        for clause in axioms:
            index[clause] = len(steps)
            steps.append(ProofStep(clause))
        for clause in derived:
            left, right = self._derived[clause]
            index[clause] = len(steps)
            steps.append(ProofStep(clause, (index[left], index[right])))
        return Proof(tuple(steps))


def write_proof(proof: Proof) -> str:
    """Serialize to the line format ``<id> <lits> 0 <premise> <premise> 0``."""
    lines = []
    for index, step in enumerate(proof.steps, start=1):
        parts = [str(index), *map(str, step.clause.lits), "0"]
        if step.premises is not None:
            parts.extend(str(p + 1) for p in step.premises)
        parts.append("0")
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def read_proof(text: Union[str, bytes]) -> Proof:
    """
    Parse the line format written by ``write_proof``.

    Raises:
        ProofFormatError: on non-integer tokens, missing terminators,
            non-consecutive ids or a premise list that is neither empty nor a
            pair.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")

    steps: List[ProofStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        try:
            numbers = [int(tok) for tok in line.split()]
        except ValueError:
            raise ProofFormatError(lineno, f"non-integer token in {line!r}") from None
        if len(numbers) < 3 or numbers[-1] != 0:
            raise ProofFormatError(lineno, "line must end with a 0 terminator")
        step_id, body = numbers[0], numbers[1:-1]
        if step_id != len(steps) + 1:
            raise ProofFormatError(lineno, f"expected id {len(steps) + 1}, got {step_id}")
        if 0 not in body:
            raise ProofFormatError(lineno, "clause literals are not terminated")
        cut = body.index(0)
        lits, premises = body[:cut], body[cut + 1:]
        try:
            clause = Clause(lits)
        except ValueError as e:
            raise ProofFormatError(lineno, str(e)) from None
        if not premises:
            steps.append(ProofStep(clause))
        elif len(premises) == 2:
            # out-of-range ids are left for verify_proof to report
            steps.append(ProofStep(clause, (premises[0] - 1, premises[1] - 1)))
        else:
            raise ProofFormatError(lineno, "premise list must be empty or a pair")
    return Proof(tuple(steps))
