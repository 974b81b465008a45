"""
Brute-force reference implementations for tiny formulas.

These share nothing with the package beyond the clause type and the
resolution operator, so they can check search, bounds and the SAT engine
independently.
"""

from itertools import combinations, product
from random import Random
from typing import FrozenSet, Iterable, List, Optional, Set

from proofmin.core.cnf import Clause, Formula, resolve


def brute_force_sat(clause_set: Iterable[Clause]) -> bool:
    """True iff some assignment satisfies every clause."""
    pool = list(clause_set)
    if any(c.is_empty() for c in pool):
        return False
    variables = sorted({abs(v) for c in pool for v in c.lits})
    for values in product((False, True), repeat=len(variables)):
        model = dict(zip(variables, values))
        if all(any(model[abs(v)] == (v > 0) for v in c.lits) for c in pool):
            return True
    return False


def brute_force_smus(clause_set: Iterable[Clause],
                     fixed: Iterable[Clause] = ()) -> int:
    """Size of the smallest unsatisfiable subset containing ``fixed``."""
    fixed_set = frozenset(fixed)
    rest = sorted(frozenset(clause_set) - fixed_set, key=lambda c: c.sort_key)
    for size in range(len(rest) + 1):
        for extra in combinations(rest, size):
            if not brute_force_sat(fixed_set | set(extra)):
                return len(fixed_set) + size
    raise ValueError("clause set is satisfiable")


def _min_derivations(axioms: FrozenSet[Clause], budget: Optional[int]) -> Optional[int]:
    """Fewest resolution steps from ``axioms`` to the empty clause."""
    layer: Set[FrozenSet[Clause]] = {frozenset()}
    seen = set(layer)
    depth = 0
    while layer and (budget is None or depth < budget):
        depth += 1
        following: Set[FrozenSet[Clause]] = set()
        for derived in layer:
            pool = axioms | derived
            for a, b in combinations(pool, 2):
                resolvent = resolve(a, b)
                if resolvent is None or resolvent in pool:
                    continue
                if resolvent.is_empty():
                    return depth
                state = derived | {resolvent}
                if state not in seen:
                    seen.add(state)
                    following.add(state)
        layer = following
    return None


def shortest_proof_length(formula: Formula, upper: Optional[int] = None) -> int:
    """
    Exhaustive shortest refutation length.

    Tries every unsatisfiable axiom subset and runs a breadth-first search
    over sets of derived clauses, bounded by the best length found so far.
    ``upper`` is the length of any known refutation and only narrows the
    search.
    """
    axioms = sorted(formula.clause_set, key=lambda c: c.sort_key)
    if any(c.is_empty() for c in axioms):
        return 1
    best: Optional[int] = upper
    for size in range(1, len(axioms) + 1):
        if best is not None and size + 1 >= best:
            break
        for subset in combinations(axioms, size):
            if brute_force_sat(subset):
                continue
            budget = None if best is None else best - size - 1
            steps = _min_derivations(frozenset(subset), budget)
            if steps is not None and (best is None or size + steps < best):
                best = size + steps
    if best is None:
        raise ValueError("formula is satisfiable")
    return best


def random_small_formula(rng, variables: int = 3, max_clauses: int = 6,
                         min_width: int = 1) -> Formula:
    """Random clauses of width ``min_width``..3 over ``variables`` variables."""
    count = rng.randint(2, max_clauses)
    built = set()
    while len(built) < count:
        width = rng.randint(min_width, min(3, variables))
        picked = rng.sample(range(1, variables + 1), width)
        built.add(Clause(v if rng.random() < 0.5 else -v for v in picked))
    return Formula(sorted(built, key=lambda c: c.sort_key), variables)


def random_unsat_formulas(seed: int, count: int, variables: int = 3,
                          max_clauses: int = 6, min_width: int = 1) -> List[Formula]:
    """``count`` distinct unsatisfiable random formulas."""
    rng = Random(seed)
    found: List[Formula] = []
    while len(found) < count:
        formula = random_small_formula(rng, variables, max_clauses, min_width)
        if formula not in found and not brute_force_sat(formula.clauses):
            found.append(formula)
    return found
