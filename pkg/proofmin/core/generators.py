"""
Benchmark formula families.

Every generator is a pure function of its parameters and seed; randomized
families draw from ``random.Random(seed)`` only. Clause schemas are described
in docs/ENCODINGS.md.
"""

import random
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from ..utils.logger import get_logger
from .cnf import Clause, Formula, sorted_clauses
from .dpll import SatStatus, is_sat
from .exceptions import GeneratorParameterError, SatInputError

logger = get_logger(__name__)

Edge = Tuple[int, int]


class Family(str, Enum):
    """Supported formula families."""
    PHP = "php"
    PARITY = "parity"
    ORDERING = "ordering"
    RANDOM3CNF = "random3cnf"
    SUBSET_CARDINALITY = "subset_cardinality"
    GRAPH_COLORING = "graph_coloring"
    GRAPH_COLORING_CLIQUE = "graph_coloring_clique"


FAMILY_PARAMS: Dict[Family, Tuple[str, ...]] = {
    Family.PHP: ("holes",),
    Family.PARITY: ("n",),
    Family.ORDERING: ("n",),
    Family.RANDOM3CNF: ("variables", "clauses"),
    Family.SUBSET_CARDINALITY: ("n",),
    Family.GRAPH_COLORING: ("colors", "vertices"),
    Family.GRAPH_COLORING_CLIQUE: ("colors", "vertices"),
}

RANDOMIZED = {
    Family.RANDOM3CNF,
    Family.SUBSET_CARDINALITY,
    Family.GRAPH_COLORING,
    Family.GRAPH_COLORING_CLIQUE,
}


@dataclass(frozen=True)
class InstanceSpec:
    """A family with its named integer parameters and an optional seed."""
    family: Family
    params: Mapping[str, int] = field(default_factory=dict)
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        expected = FAMILY_PARAMS[self.family]
        missing = [name for name in expected if name not in self.params]
        unknown = [name for name in self.params if name not in expected]
        if missing or unknown:
            raise GeneratorParameterError(
                f"{self.family.value} takes parameters {', '.join(expected)}"
            )
        if self.family in RANDOMIZED and self.seed is None:
            raise GeneratorParameterError(f"{self.family.value} requires a seed")

    @classmethod
    def from_args(cls, family: str, values: Sequence[str],
                  seed: Optional[int] = None) -> "InstanceSpec":
        """
        Build from command-line values.

        Values are either ``name=value`` pairs or bare integers taken in the
        family's parameter order.
        """
        try:
            fam = Family(family)
        except ValueError:
            raise GeneratorParameterError(f"unknown family {family!r}") from None
        names = FAMILY_PARAMS[fam]
        params: Dict[str, int] = {}
        positional = 0
        for value in values:
            name, _, raw = value.rpartition("=")
            if not name:
                if positional >= len(names):
                    raise GeneratorParameterError(f"too many parameters for {fam.value}")
                name = names[positional]
                positional += 1
            try:
                params[name.strip()] = int(raw)
            except ValueError:
                raise GeneratorParameterError(f"parameter {value!r} is not an integer") from None
        return cls(fam, params, seed)

    def describe(self) -> str:
        parts = [f"family={self.family.value}"]
        parts.extend(f"{name}={self.params[name]}" for name in FAMILY_PARAMS[self.family])
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return " ".join(parts)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise GeneratorParameterError(message)


def _at_most_one(variables: Sequence[int]) -> List[Clause]:
    return [Clause.of(-a, -b) for a, b in combinations(variables, 2)]


def php(holes: int) -> Formula:
    """Pigeonhole principle: holes+1 pigeons, ``p(i,j)`` is variable (i-1)*holes + j."""
    _require(holes >= 1, "php needs at least one hole")
    pigeons = holes + 1

    def var(i: int, j: int) -> int:
        return (i - 1) * holes + j

    clauses = [Clause(var(i, j) for j in range(1, holes + 1)) for i in range(1, pigeons + 1)]
    for j in range(1, holes + 1):
        clauses.extend(_at_most_one([var(i, j) for i in range(1, pigeons + 1)]))
    return Formula(clauses, pigeons * holes)


def parity(n: int) -> Formula:
    """No perfect matching on 2n+1 elements; one variable per pair."""
    _require(n >= 1, "parity needs n >= 1")
    size = 2 * n + 1
    edge_var: Dict[Edge, int] = {}
    for u, v in combinations(range(1, size + 1), 2):
        edge_var[(u, v)] = len(edge_var) + 1

    clauses: List[Clause] = []
    for u in range(1, size + 1):
        incident = [edge_var[(min(u, v), max(u, v))] for v in range(1, size + 1) if v != u]
        clauses.append(Clause(incident))
        clauses.extend(_at_most_one(incident))
    return Formula(clauses, len(edge_var))


def ordering(n: int) -> Formula:
    """
    Ordering principle on n+1 elements: an antisymmetric, transitive
    relation in which every element has a smaller one.
    """
    _require(n >= 1, "ordering needs n >= 1")
    size = n + 1
    less: Dict[Edge, int] = {}
    for i, j in permutations(range(1, size + 1), 2):
        less[(i, j)] = len(less) + 1

    clauses: List[Clause] = []
    for i, j in combinations(range(1, size + 1), 2):
        clauses.append(Clause.of(-less[(i, j)], -less[(j, i)]))
    for i, j, k in permutations(range(1, size + 1), 3):
        clauses.append(Clause.of(-less[(i, j)], -less[(j, k)], less[(i, k)]))
    for j in range(1, size + 1):
        clauses.append(Clause(less[(i, j)] for i in range(1, size + 1) if i != j))
    return Formula(clauses, len(less))


def random3cnf(variables: int, clauses: int, seed: int) -> Formula:
    """Uniform random distinct width-3 clauses."""
    _require(variables >= 3, "random3cnf needs at least 3 variables")
    _require(clauses >= 1, "random3cnf needs at least one clause")
    capacity = comb(variables, 3) * 8
    _require(clauses <= capacity,
             f"only {capacity} distinct width-3 clauses exist over {variables} variables")
    rng = random.Random(seed)
    chosen: Dict[Clause, None] = {}
    while len(chosen) < clauses:
        picked = rng.sample(range(1, variables + 1), 3)
        lits = [v if rng.random() < 0.5 else -v for v in picked]
        chosen.setdefault(Clause(lits), None)
    return Formula(list(chosen), variables)


def _regular_bipartite(n: int, degree: int, rng: random.Random,
                       attempts: int = 1000) -> Set[Edge]:
    """Union of ``degree`` edge-disjoint random perfect matchings."""
    for _ in range(attempts):
        edges: Set[Edge] = set()
        ok = True
        for _ in range(degree):
            matching = list(range(n))
            rng.shuffle(matching)
            layer = {(left, right) for left, right in enumerate(matching)}
            if layer & edges:
                ok = False
                break
            edges |= layer
        if ok:
            return edges
    raise GeneratorParameterError(f"no {degree}-regular bipartite graph found for n={n}")


def subset_cardinality(n: int, seed: int) -> Formula:
    """
    Subset cardinality formula on a random 4-regular bipartite graph with one
    extra edge.

    Every left vertex needs at least half of its edges true (rounded up),
    every right vertex at most half (rounded down); the extra edge makes the
    two totals incompatible.
    """
    _require(n >= 5, "subset_cardinality needs n >= 5")
    rng = random.Random(seed)
    edges = _regular_bipartite(n, 4, rng)
    free = [(left, right) for left in range(n) for right in range(n)
            if (left, right) not in edges]
    edges.add(rng.choice(free))

    edge_var = {edge: index for index, edge in enumerate(sorted(edges), start=1)}
    left_edges: Dict[int, List[int]] = defaultdict(list)
    right_edges: Dict[int, List[int]] = defaultdict(list)
    for (left, right), var in edge_var.items():
        left_edges[left].append(var)
        right_edges[right].append(var)

    clauses: List[Clause] = []
    for left in range(n):
        incident = left_edges[left]
        at_least = (len(incident) + 1) // 2
        for subset in combinations(incident, len(incident) - at_least + 1):
            clauses.append(Clause(subset))
    for right in range(n):
        incident = right_edges[right]
        at_most = len(incident) // 2
        for subset in combinations(incident, at_most + 1):
            clauses.append(Clause(-v for v in subset))
    return Formula(clauses, len(edge_var))


def _random_regular_graph(vertices: int, degree: int, rng: random.Random,
                          attempts: int = 1000) -> Set[Edge]:
    """Random simple regular graph by repeated stub pairing with restarts."""

    def suitable(edges: Set[Edge], pending: Dict[int, int]) -> bool:
        if not pending:
            return True
        for a, b in combinations(pending, 2):
            if (min(a, b), max(a, b)) not in edges:
                return True
        return False

    for _ in range(attempts):
        edges: Set[Edge] = set()
        stubs = [v for v in range(vertices) for _ in range(degree)]
        failed = False
        while stubs:
            pending: Dict[int, int] = defaultdict(int)
            rng.shuffle(stubs)
            it = iter(stubs)
            for a, b in zip(it, it):
                if a > b:
                    a, b = b, a
                if a != b and (a, b) not in edges:
                    edges.add((a, b))
                else:
                    pending[a] += 1
                    pending[b] += 1
            if not suitable(edges, pending):
                failed = True
                break
            stubs = [v for v in sorted(pending) for _ in range(pending[v])]
        if not failed:
            return edges
    raise GeneratorParameterError(
        f"no simple {degree}-regular graph found on {vertices} vertices"
    )


def graph_coloring(colors: int, vertices: int, seed: int,
                   plant_clique: bool = False) -> Formula:
    """
    Colorability of a random 2(colors-1)-regular graph; with ``plant_clique``
    a random (colors+1)-clique is added, which makes the formula
    unsatisfiable.
    """
    _require(colors >= 2, "graph_coloring needs at least 2 colors")
    degree = 2 * (colors - 1)
    _require(vertices > degree,
             f"a {degree}-regular graph needs more than {degree} vertices")
    if plant_clique:
        _require(vertices >= colors + 1, "the planted clique does not fit")
    rng = random.Random(seed)
    edges = _random_regular_graph(vertices, degree, rng)
    if plant_clique:
        members = sorted(rng.sample(range(vertices), colors + 1))
        edges |= set(combinations(members, 2))

    def var(vertex: int, color: int) -> int:
        return vertex * colors + color + 1

    clauses = [Clause(var(v, c) for c in range(colors)) for v in range(vertices)]
    for a, b in sorted(edges):
        for c in range(colors):
            clauses.append(Clause.of(-var(a, c), -var(b, c)))
    return Formula(clauses, vertices * colors)


def generate(spec: InstanceSpec) -> Formula:
    """Build the formula for an instance spec, tagged with a provenance comment."""
    p = spec.params
    family = spec.family
    if family is Family.PHP:
        formula = php(p["holes"])
    elif family is Family.PARITY:
        formula = parity(p["n"])
    elif family is Family.ORDERING:
        formula = ordering(p["n"])
    elif family is Family.RANDOM3CNF:
        formula = random3cnf(p["variables"], p["clauses"], spec.seed)  # type: ignore[arg-type]
    elif family is Family.SUBSET_CARDINALITY:
        formula = subset_cardinality(p["n"], spec.seed)  # type: ignore[arg-type]
    else:
        formula = graph_coloring(p["colors"], p["vertices"], spec.seed,  # type: ignore[arg-type]
                                 plant_clique=family is Family.GRAPH_COLORING_CLIQUE)
    logger.debug(f"Generated {spec.describe()}: {len(formula)} clauses")
    return formula.with_comments([spec.describe()])


def generate_mus_variant(formula: Formula, budget: Optional[int] = None) -> Formula:
    """
    Destructive-deletion MUS of a formula.

    Clauses are tried in canonical order; a deletion is kept when the rest is
    proven unsatisfiable. If some check ends undecided the clause is kept and
    the result is tagged ``mus=approximate`` instead of ``mus=exact``.

    Raises:
        SatInputError: if the formula is proven satisfiable.
    """
    if is_sat(formula, budget) is SatStatus.SAT:
        raise SatInputError("cannot extract an unsatisfiable core from a satisfiable formula")

    kept: Set[Clause] = set(formula.clause_set)
    exact = True
    for clause in sorted_clauses(formula.clause_set):
        status = is_sat(kept - {clause}, budget)
        if status is SatStatus.UNSAT:
            kept.discard(clause)
        elif status is SatStatus.UNKNOWN:
            exact = False

    tag = "mus=exact" if exact else "mus=approximate"
    if not exact:
        logger.warning(f"MUS variant is approximate: {len(kept)} clauses kept")
    ordered = [c for c in formula.clauses if c in kept]
    return Formula(ordered, formula.num_variables, comments=(*formula.comments, tag))
