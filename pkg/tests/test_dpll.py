"""
Tests for the DPLL engine, completion and correcting clauses.
"""
import random
import time

import pytest

from proofmin.core.cnf import EMPTY_CLAUSE, Clause, Formula
from proofmin.core.dpll import (
    DpllSolver,
    SatStatus,
    complete,
    correcting_clauses,
    is_sat,
    model_satisfies,
    solve,
)
from proofmin.core.exceptions import SearchInvariantError, SolverTimeoutError
from proofmin.core.generators import php
from proofmin.core.proof import verify_proof

from .conftest import X, Y, Z, clauses
from .oracle import brute_force_sat, random_small_formula


class TestSolve:
    """Test satisfiability decisions and proof extraction."""

    def test_small_formula_unsat(self, small_formula):
        """Test the refutation of the three-clause formula."""
        result = solve(small_formula)
        assert result.is_unsat
        assert len(result.proof) == 5
        assert verify_proof(small_formula, result.proof)

    def test_single_unit_sat(self):
        """Test a satisfiable unit clause."""
        result = solve(Formula.from_ints([[X]]))
        assert result.is_sat
        assert result.model == {X: True}

    def test_no_clauses(self):
        """Test that the empty formula is satisfied by the empty model."""
        result = solve(Formula([]))
        assert result.is_sat
        assert result.model == {}

    def test_empty_clause(self):
        """Test immediate refutation of a formula containing the empty clause."""
        result = solve(Formula([EMPTY_CLAUSE, Clause.of(X)]))
        assert result.is_unsat
        assert len(result.proof) == 1

    def test_plain_clause_collection(self):
        """Test that a clause set works as input too."""
        assert solve(clauses([X], [-X])).is_unsat

    def test_budget_exhausted(self):
        """Test the UNKNOWN status on a tiny assignment budget."""
        result = solve(php(3), budget=1)
        assert result.status is SatStatus.UNKNOWN
        assert result.proof is None and result.model is None

    def test_deterministic_per_seed(self):
        """Test that a fixed seed reproduces the same proof."""
        formula = php(2)
        first = solve(formula, seed=11)
        second = solve(formula, seed=11)
        assert first.proof == second.proof
        assert first.steps == second.steps

    def test_any_seed_gives_valid_proof(self):
        """Test that different branching orders still verify."""
        formula = php(2)
        for seed in range(5):
            result = solve(formula, seed=seed)
            assert result.is_unsat
            assert verify_proof(formula, result.proof)

    def test_solver_is_single_use(self, small_formula):
        """Test the solver counts its own steps."""
        solver = DpllSolver(small_formula.clauses)
        result = solver.solve()
        assert result.steps == solver.steps


class TestDeepSearch:
    """Test formulas needing thousands of decision levels."""

    CHAIN = 1500

    def _chain(self):
        return [[i, i + 1] for i in range(1, self.CHAIN)]

    def test_long_chain_sat(self):
        """Test that every variable can be a decision without exhausting the stack."""
        formula = Formula.from_ints(self._chain())
        result = solve(formula, seed=7)
        assert result.is_sat
        assert model_satisfies(result.model, formula.clauses)
        assert is_sat(formula) is SatStatus.SAT

    def test_long_chain_with_core_unsat(self):
        """Test a small core buried under many free decisions."""
        a, b = self.CHAIN + 1, self.CHAIN + 2
        formula = Formula.from_ints(
            self._chain() + [[a, b], [a, -b], [-a, b], [-a, -b]]
        )
        result = solve(formula, seed=7)
        assert result.is_unsat
        assert verify_proof(formula, result.proof)
        assert len(result.proof) == 7

    def test_deadline_stops_deep_run(self):
        """Test that a passed deadline ends a long run as unknown."""
        formula = Formula.from_ints(self._chain())
        result = solve(formula, deadline=time.monotonic() - 1.0)
        assert result.status is SatStatus.UNKNOWN


class TestAgainstBruteForce:
    """Test agreement with exhaustive assignment enumeration."""

    def test_random_small_formulas(self):
        """Test status, models and proofs on random tiny formulas."""
        rng = random.Random(2024)
        for _ in range(60):
            formula = random_small_formula(rng, variables=4, max_clauses=10)
            result = solve(formula, seed=rng.randrange(1000))
            assert result.is_sat == brute_force_sat(formula.clauses)
            if result.is_sat:
                assert model_satisfies(result.model, formula.clauses)
            else:
                assert verify_proof(formula, result.proof)


class TestComplete:
    """Test completion of known clause sets."""

    def test_refutes_known_set(self, small_formula):
        """Test completion over the formula itself."""
        proof = complete(small_formula.clause_set)
        assert len(proof) == 5
        assert proof.steps[-1].clause.is_empty()

    def test_known_with_empty_clause(self):
        """Test the one-step completion when the empty clause is known."""
        proof = complete(clauses([], [X]))
        assert len(proof) == 1
        assert proof.axioms() == frozenset({EMPTY_CLAUSE})

    def test_satisfiable_known_set(self):
        """Test that a satisfiable known set is an invariant violation."""
        with pytest.raises(SearchInvariantError):
            complete(clauses([X], [Y]))

    def test_timeout(self):
        """Test that budget exhaustion surfaces as a timeout."""
        with pytest.raises(SolverTimeoutError):
            complete(php(3).clause_set, budget=1)


class TestIsSat:
    """Test the decision-only wrapper."""

    def test_statuses(self):
        """Test the three statuses."""
        assert is_sat(clauses([X], [-X])) is SatStatus.UNSAT
        assert is_sat(clauses([X], [Y])) is SatStatus.SAT
        assert is_sat(php(3), budget=1) is SatStatus.UNKNOWN


class TestCorrectingClauses:
    """Test clauses whose removal makes the set satisfiable."""

    def test_minimally_unsatisfiable(self, small_formula):
        """Test that every clause of a MUS is correcting."""
        assert correcting_clauses(small_formula) == small_formula.clause_set

    def test_redundant_clause_excluded(self, small_formula):
        """Test that a removable clause is not correcting."""
        pool = small_formula.clause_set | {Clause.of(X, Y, Z)}
        assert correcting_clauses(pool) == small_formula.clause_set

    def test_zero_budget(self, small_formula):
        """Test that nothing is proven without budget."""
        assert correcting_clauses(small_formula, budget=0) == frozenset()
