"""
Canonical CNF values: literals, clauses and formulas, plus the resolution
operator, subsumption and frontier computation.

Literals are carried around as DIMACS signed integers inside clauses; the
`Literal` dataclass is the typed view used at API boundaries.
"""

from dataclasses import dataclass
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from ..utils.logger import get_logger
from .exceptions import DimacsParseError

logger = get_logger(__name__)


def literal_key(lit: int) -> Tuple[int, bool]:
    """Canonical literal order: by variable, negative before positive."""
    return (abs(lit), lit > 0)


@dataclass(frozen=True, order=True)
class Literal:
    """A propositional literal."""
    variable: int
    polarity: bool = True

    def __post_init__(self) -> None:
        if self.variable < 1:
            raise ValueError(f"variable index must be >= 1, got {self.variable}")

    def __neg__(self) -> "Literal":
        return Literal(self.variable, not self.polarity)

    def to_int(self) -> int:
        """DIMACS signed integer."""
        return self.variable if self.polarity else -self.variable

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value > 0)

    def __str__(self) -> str:
        return str(self.to_int())


class Clause:
    """
    An immutable, non-tautological set of literals in canonical order.

    Equality, hashing and ordering depend only on the canonical literal
    sequence. The empty clause is a valid value.
    """

    __slots__ = ("lits", "_set", "_key", "_hash")

    def __init__(self, literals: Iterable[Union[int, Literal]] = ()):
        ints = set()
        for lit in literals:
            value = lit.to_int() if isinstance(lit, Literal) else int(lit)
            if value == 0:
                raise ValueError("0 is not a literal")
            ints.add(value)
        for value in ints:
            if -value in ints:
                raise ValueError(f"tautological clause on variable {abs(value)}")
        self.lits: Tuple[int, ...] = tuple(sorted(ints, key=literal_key))
        self._set: FrozenSet[int] = frozenset(ints)
        self._key = tuple(literal_key(v) for v in self.lits)
        self._hash = hash(self.lits)

    @classmethod
    def of(cls, *literals: int) -> "Clause":
        """Build a clause from DIMACS integers: ``Clause.of(1, -2)``."""
        return cls(literals)

    @property
    def literals(self) -> Tuple[Literal, ...]:
        return tuple(Literal.from_int(v) for v in self.lits)

    @property
    def literal_set(self) -> FrozenSet[int]:
        return self._set

    @property
    def variables(self) -> FrozenSet[int]:
        return frozenset(abs(v) for v in self.lits)

    @property
    def sort_key(self) -> Tuple[Tuple[int, bool], ...]:
        return self._key

    def is_empty(self) -> bool:
        return not self.lits

    def __len__(self) -> int:
        return len(self.lits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lits)

    def __contains__(self, lit: object) -> bool:
        if isinstance(lit, Literal):
            lit = lit.to_int()
        return lit in self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self.lits == other.lits

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Clause") -> bool:
        return self._key < other._key

    def __le__(self, other: "Clause") -> bool:
        return self._key <= other._key

    def __gt__(self, other: "Clause") -> bool:
        return self._key > other._key

    def __ge__(self, other: "Clause") -> bool:
        return self._key >= other._key

    def __repr__(self) -> str:
        return f"Clause({list(self.lits)})"

    def __str__(self) -> str:
        if not self.lits:
            return "⊥"
        return "{" + ", ".join(str(v) for v in self.lits) + "}"

    def to_dimacs(self) -> str:
        return " ".join([*map(str, self.lits), "0"])


EMPTY_CLAUSE = Clause()


def resolve(a: Clause, b: Clause) -> Optional[Clause]:
    """
    Resolve two clauses.

    Returns the resolvent when the clauses clash on exactly one variable,
    otherwise None (no clash, or a tautological resolvent).
    """
    other = b.literal_set
    pivot = 0
    for lit in a.lits:
        if -lit in other:
            if pivot:
                return None
            pivot = lit
    if not pivot:
        return None
    return Clause((a.literal_set - {pivot}) | (other - {-pivot}))


def subsumes(a: Clause, b: Clause) -> bool:
    """True iff a ⊆ b as literal sets."""
    return a.literal_set <= b.literal_set


def frontier(clauses: Iterable[Clause]) -> FrozenSet[Clause]:
    """
    Subset-minimal clauses of a set.

    A clause is dropped only when some other clause is a strict subset of it.
    """
    kept: List[Clause] = []
    for clause in sorted(set(clauses), key=len):
        own = clause.literal_set
        if not any(
            len(k) < len(clause) and k.literal_set < own for k in kept
        ):
            kept.append(clause)
    return frozenset(kept)


def sorted_clauses(clauses: Iterable[Clause]) -> List[Clause]:
    """Clauses in canonical order."""
    return sorted(clauses, key=lambda c: c.sort_key)


class Formula:
    """
    A CNF formula: a duplicate-free set of clauses and a variable count.

    Clause order of construction is kept (``clauses``) together with the
    DIMACS numbering of the source file (``clause_ids``), which LRAT hints
    refer to. Equality compares the clause set and variable count only.
    """

    def __init__(
        self,
        clauses: Iterable[Clause],
        num_variables: Optional[int] = None,
        clause_ids: Optional[Mapping[int, Clause]] = None,
        comments: Sequence[str] = (),
    ):
        ordered: Dict[Clause, None] = {}
        for clause in clauses:
            ordered.setdefault(clause, None)
        self.clauses: Tuple[Clause, ...] = tuple(ordered)
        self.clause_set: FrozenSet[Clause] = frozenset(ordered)
        seen = max((abs(v) for c in self.clauses for v in c.lits), default=0)
        if num_variables is not None and num_variables < seen:
            raise ValueError(
                f"num_variables={num_variables} below largest variable {seen}"
            )
        self.num_variables = seen if num_variables is None else num_variables
        if clause_ids is None:
            clause_ids = {i: c for i, c in enumerate(self.clauses, start=1)}
        self.clause_ids: Dict[int, Clause] = dict(clause_ids)
        self.comments: Tuple[str, ...] = tuple(comments)

    @classmethod
    def from_ints(cls, clauses: Iterable[Iterable[int]],
                  num_variables: Optional[int] = None) -> "Formula":
        """Build from nested integer lists, dropping tautologies."""
        built = []
        for lits in clauses:
            lits = list(lits)
            if any(-v in lits for v in lits):
                continue
            built.append(Clause(lits))
        return cls(built, num_variables)

    def __len__(self) -> int:
        return len(self.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __contains__(self, clause: object) -> bool:
        return clause in self.clause_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return (self.clause_set == other.clause_set
                and self.num_variables == other.num_variables)

    def __hash__(self) -> int:
        return hash((self.clause_set, self.num_variables))

    def __repr__(self) -> str:
        return f"Formula(clauses={len(self.clauses)}, variables={self.num_variables})"

    def has_empty_clause(self) -> bool:
        return EMPTY_CLAUSE in self.clause_set

    def with_comments(self, comments: Sequence[str]) -> "Formula":
        return Formula(self.clauses, self.num_variables, self.clause_ids, comments)

    def to_dimacs(self, comments: Optional[Sequence[str]] = None) -> str:
        """Serialize with clauses in canonical order."""
        lines = [f"c {text}" for text in (self.comments if comments is None else comments)]
        lines.append(f"p cnf {self.num_variables} {len(self.clauses)}")
        lines.extend(c.to_dimacs() for c in sorted_clauses(self.clauses))
        return "\n".join(lines) + "\n"


def parse_dimacs(text: Union[str, bytes]) -> Formula:
    """
    Parse DIMACS CNF text.

    Duplicate literals are merged, tautologies dropped and duplicate clauses
    merged. Clause numbering follows the file, so tautological clauses keep
    their ids but map to nothing.

    Raises:
        DimacsParseError: on a malformed header, a non-integer token, clauses
            before the header or an unterminated final clause.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")

    header_vars: Optional[int] = None
    clauses: List[Clause] = []
    clause_ids: Dict[int, Clause] = {}
    comments: List[str] = []
    pending: List[int] = []
    pending_line = 0
    next_id = 1
    dropped = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("%"):
            # SATLIB end-of-data marker
            break
        if line.startswith("p"):
            if header_vars is not None:
                raise DimacsParseError(lineno, "duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(lineno, f"malformed header: {line!r}")
            try:
                header_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(lineno, f"malformed header: {line!r}") from None
            if header_vars < 0 or declared < 0:
                raise DimacsParseError(lineno, "negative header counts")
            continue
        if header_vars is None:
            raise DimacsParseError(lineno, "clause data before the 'p cnf' header")

        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise DimacsParseError(lineno, f"non-integer token {token!r}") from None
            if not pending:
                pending_line = lineno
            if value != 0:
                pending.append(value)
                continue
            if any(-v in pending for v in pending):
                dropped += 1
            else:
                clause = Clause(pending)
                clause_ids[next_id] = clause
                clauses.append(clause)
            next_id += 1
            pending = []

    if pending:
        raise DimacsParseError(pending_line, "unterminated final clause")
    if header_vars is None:
        raise DimacsParseError(None, "missing 'p cnf' header")

    largest = max((abs(v) for c in clauses for v in c.lits), default=0)
    formula = Formula(clauses, max(header_vars, largest), clause_ids, comments)
    logger.debug(
        f"Parsed DIMACS: {len(formula)} clauses over {formula.num_variables} "
        f"variables ({dropped} tautologies dropped)"
    )
    return formula
