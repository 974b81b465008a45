"""
LRAT certificate import.

Each addition line is expanded into resolution steps by folding its hint
clauses back to front. Deletion lines do not count towards proof length; they
are only checked in strict mode.
"""

from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from ..utils.logger import get_logger, log_decorator
from .cnf import EMPTY_CLAUSE, Clause, Formula, resolve
from .exceptions import InvalidCertificateError, LratParseError, UnsupportedRatError
from .proof import Proof, ProofBuilder

logger = get_logger(__name__)


@dataclass(frozen=True)
class LratLine:
    """A parsed LRAT line: either an addition with hints or a deletion."""
    id: int
    clause: Optional[Clause] = None
    hints: Tuple[int, ...] = ()
    is_deletion: bool = False
    deleted_ids: Tuple[int, ...] = ()
    source_line: int = 0


@dataclass(frozen=True)
class MeasureReport:
    """Resolution length of an LRAT certificate with and without duplicates."""
    raw_length: int
    dedup_length: int
    axioms_used: int
    raw_steps: int
    dedup_steps: int

    @property
    def duplication(self) -> float:
        """Share of simulated resolvents that repeat an earlier clause."""
        if self.raw_steps == 0:
            return 0.0
        return (self.raw_steps - self.dedup_steps) / self.raw_steps

    def to_text(self) -> str:
        return f"raw={self.raw_length} dedup={self.dedup_length} axioms={self.axioms_used}"

    def to_dict(self) -> Dict[str, Union[int, float]]:
        data: Dict[str, Union[int, float]] = dict(asdict(self))
        data["duplication"] = round(self.duplication, 6)
        return data


def _parse_ints(tokens: Sequence[str], lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise LratParseError(lineno, "non-integer token") from None


def parse_lrat(text: Union[str, bytes]) -> List[LratLine]:
    """
    Parse an ASCII LRAT certificate.

    Raises:
        LratParseError: on malformed lines or non-increasing addition ids.
        UnsupportedRatError: when a hint id is negative.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")

    lines: List[LratLine] = []
    last_id = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue

        if len(tokens) >= 2 and tokens[1] == "d":
            numbers = _parse_ints([tokens[0], *tokens[2:]], lineno)
            if len(numbers) < 2 or numbers[-1] != 0 or 0 in numbers[1:-1]:
                raise LratParseError(lineno, "deletion line must end with a single 0")
            lines.append(LratLine(numbers[0], is_deletion=True,
                                  deleted_ids=tuple(numbers[1:-1]),
                                  source_line=lineno))
            continue

        numbers = _parse_ints(tokens, lineno)
        if len(numbers) < 3 or numbers[-1] != 0:
            raise LratParseError(lineno, "addition line must end with 0")
        line_id, body = numbers[0], numbers[1:-1]
        if line_id <= last_id:
            raise LratParseError(lineno, f"clause id {line_id} is not increasing")
        if 0 not in body:
            raise LratParseError(lineno, "clause literals are not terminated")
        cut = body.index(0)
        lits, hints = body[:cut], body[cut + 1:]
        if 0 in hints:
            raise LratParseError(lineno, "stray 0 inside the hint list")
        if any(h < 0 for h in hints):
            raise UnsupportedRatError(lineno)
        try:
            clause = Clause(lits)
        except ValueError as e:
            raise LratParseError(lineno, str(e)) from None
        last_id = line_id
        lines.append(LratLine(line_id, clause, tuple(hints), source_line=lineno))
    return lines


def expand_to_resolution(
    formula: Formula,
    lines: Sequence[LratLine],
    strict: bool = False,
) -> Tuple[Proof, int, int]:
    """
    Simulate the resolution steps behind each RUP line.

    Returns the deduplicated proof, the raw number of resolvents and the number
    of distinct new clauses among them. Expansion stops at the first empty
    clause.

    Args:
        formula: The formula the certificate refutes
        lines: Parsed certificate
        strict: Reject hints naming clauses removed by earlier deletion lines

    Raises:
        InvalidCertificateError: when a hint is unknown (or deleted in strict
            mode), a hint does not clash with the accumulated clause, or the
            fold does not end in the stated clause.
    """
    store: Dict[int, Clause] = dict(formula.clause_ids)
    deleted: Set[int] = set()
    axioms = formula.clause_set
    builder = ProofBuilder()
    raw_steps = 0

    def fetch(line_id: int, hint: int) -> Clause:
        clause = store.get(hint)
        if clause is None:
            raise InvalidCertificateError(line_id, f"hint {hint} names no clause")
        if strict and hint in deleted:
            raise InvalidCertificateError(line_id, f"hint {hint} was deleted")
        if clause in axioms:
            builder.axiom(clause)
        return clause

    if formula.has_empty_clause():
        builder.axiom(EMPTY_CLAUSE)

    for line in lines:
        if builder.knows(EMPTY_CLAUSE):
            break
        if line.is_deletion:
            deleted.update(line.deleted_ids)
            continue
        if line.id in store:
            raise InvalidCertificateError(line.id, "id collides with an existing clause")
        if not line.hints:
            raise InvalidCertificateError(line.id, "addition line has no hints")

        accumulator = fetch(line.id, line.hints[-1])
        for hint in reversed(line.hints[:-1]):
            antecedent = fetch(line.id, hint)
            resolvent = resolve(accumulator, antecedent)
            if resolvent is None:
                raise InvalidCertificateError(
                    line.id, f"hint {hint} does not resolve with {accumulator}"
                )
            raw_steps += 1
            if resolvent in axioms:
                builder.axiom(resolvent)
            else:
                builder.resolvent(resolvent, accumulator, antecedent)
            accumulator = resolvent

        if accumulator != line.clause:
            raise InvalidCertificateError(
                line.id, f"hints derive {accumulator}, line states {line.clause}"
            )
        store[line.id] = accumulator

    if not builder.knows(EMPTY_CLAUSE):
        raise InvalidCertificateError(
            lines[-1].id if lines else 0, "certificate never derives the empty clause"
        )

    proof = builder.build(EMPTY_CLAUSE, trim=False)
    dedup_steps = len(proof.derived())
    logger.debug(
        f"Expanded {len(lines)} LRAT lines: raw={raw_steps} dedup={dedup_steps}"
    )
    return proof, raw_steps, dedup_steps


@log_decorator(logger)
def measure(formula: Formula, lrat: Union[str, bytes],
            strict: bool = False) -> MeasureReport:
    """Parse, expand and count an LRAT certificate."""
    proof, raw_steps, dedup_steps = expand_to_resolution(
        formula, parse_lrat(lrat), strict=strict
    )
    axioms_used = len(proof.axioms())
    return MeasureReport(
        raw_length=axioms_used + raw_steps,
        dedup_length=axioms_used + dedup_steps,
        axioms_used=axioms_used,
        raw_steps=raw_steps,
        dedup_steps=dedup_steps,
    )
