"""
Tests for proof verification, layer lists, the proof builder and the proof text format.
"""
import random

import pytest

from proofmin.core.cnf import EMPTY_CLAUSE, Clause, Formula, sorted_clauses
from proofmin.core.dpll import solve
from proofmin.core.exceptions import NotAProofSetError, ProofFormatError
from proofmin.core.proof import (
    Proof,
    ProofBuilder,
    ProofStep,
    VerdictReason,
    canonical_layer_list,
    layers_to_proof,
    read_proof,
    verify_proof,
    write_proof,
)

from .conftest import T, X, Y, Z, clauses
from .oracle import random_unsat_formulas

# derived clauses of the layered refutation, by layer
LAYERS = [
    clauses([-X, Z], [Y, Z, T]),
    clauses([-X, T], [Y, T]),
    clauses([Y], [-X]),
    clauses([-Y]),
    clauses([]),
]


def small_proof() -> Proof:
    return Proof((
        ProofStep(Clause.of(X, -Y)),
        ProofStep(Clause.of(-X)),
        ProofStep(Clause.of(Y)),
        ProofStep(Clause.of(-Y), (0, 1)),
        ProofStep(EMPTY_CLAUSE, (2, 3)),
    ))


class TestVerifyProof:
    """Test step-by-step proof checking."""

    def test_valid(self, small_formula):
        """Test a correct five-step refutation."""
        verdict = verify_proof(small_formula, small_proof())
        assert verdict
        assert verdict.to_text(5) == "VALID length=5"

    def test_axiom_not_in_formula(self, small_formula):
        """Test an axiom that is not a formula clause."""
        steps = list(small_proof().steps)
        steps[0] = ProofStep(Clause.of(X, Y))
        verdict = verify_proof(small_formula, Proof(tuple(steps)))
        assert not verdict
        assert verdict.reason is VerdictReason.AXIOM_NOT_IN_FORMULA
        assert verdict.step == 1

    def test_bad_resolvent(self, small_formula):
        """Test a derived clause that its premises do not produce."""
        steps = list(small_proof().steps)
        steps[3] = ProofStep(Clause.of(Y), (0, 1))
        verdict = verify_proof(small_formula, Proof(tuple(steps)))
        assert verdict.reason is VerdictReason.BAD_RESOLVENT
        assert verdict.step == 4
        assert verdict.to_text(5) == "INVALID step=4 reason=bad-resolvent"

    def test_forward_reference(self, small_formula):
        """Test a premise that points at a later step."""
        steps = list(small_proof().steps)
        steps[3] = ProofStep(Clause.of(-Y), (0, 4))
        verdict = verify_proof(small_formula, Proof(tuple(steps)))
        assert verdict.reason is VerdictReason.PREMISE_OUT_OF_ORDER

    def test_missing_empty_clause(self, small_formula):
        """Test a derivation that stops short of the empty clause."""
        proof = Proof(small_proof().steps[:4])
        verdict = verify_proof(small_formula, proof)
        assert verdict.reason is VerdictReason.MISSING_EMPTY_CLAUSE

    def test_empty_proof(self, small_formula):
        """Test that an empty step list is invalid."""
        assert not verify_proof(small_formula, Proof(()))

    def test_empty_clause_as_axiom(self):
        """Test the one-step proof of a formula containing the empty clause."""
        formula = Formula([EMPTY_CLAUSE, Clause.of(X)])
        assert verify_proof(formula, Proof((ProofStep(EMPTY_CLAUSE),)))


class TestCanonicalLayerList:
    """Test the unique layer list of a derived clause set."""

    def test_layered_example(self, layered_formula):
        """Test the five-layer refutation of the seven-axiom formula."""
        derived = frozenset().union(*LAYERS)
        layers = canonical_layer_list(layered_formula, derived)
        assert layers.depth == 5
        assert list(layers.layers[1:]) == LAYERS
        assert layers.length == 15
        assert layers.derived() == derived

    def test_input_order_irrelevant(self, layered_formula):
        """Test that reordering the derived clauses gives the same layers."""
        derived = [c for layer in LAYERS for c in layer]
        expected = canonical_layer_list(layered_formula, derived)
        rng = random.Random(7)
        for _ in range(25):
            rng.shuffle(derived)
            assert canonical_layer_list(layered_formula, derived) == expected

    def test_reordering_random_refutations(self):
        """Test layer uniqueness over shuffled DPLL refutations of random formulas."""
        for formula in random_unsat_formulas(seed=11, count=40, variables=4, max_clauses=8):
            derived = sorted_clauses(solve(formula).proof.derived())
            expected = canonical_layer_list(formula, derived)
            assert verify_proof(formula, layers_to_proof(expected))
            rng = random.Random(len(derived))
            for _ in range(25):
                rng.shuffle(derived)
                assert canonical_layer_list(formula, derived) == expected

    def test_axioms_in_derived_ignored(self, small_formula):
        """Test that formula clauses passed as derived stay in layer 0."""
        layers = canonical_layer_list(
            small_formula, [Clause.of(X, -Y), Clause.of(-Y), EMPTY_CLAUSE]
        )
        assert layers.layers[1:] == (clauses([-Y]), clauses([]))

    def test_not_a_proof_set(self, small_formula):
        """Test a clause with no derivation from the placed clauses."""
        with pytest.raises(NotAProofSetError):
            canonical_layer_list(small_formula, [EMPTY_CLAUSE, Clause.of(Z)])

    def test_no_derived_clauses(self, small_formula):
        """Test the layer list made of the formula alone."""
        layers = canonical_layer_list(small_formula, [])
        assert layers.depth == 0
        assert layers.length == 3


class TestLayersToProof:
    """Test writing a layer list out as a proof."""

    def test_valid_and_same_length(self, layered_formula):
        """Test the emitted proof verifies and keeps every clause."""
        layers = canonical_layer_list(layered_formula, frozenset().union(*LAYERS))
        proof = layers_to_proof(layers)
        assert verify_proof(layered_formula, proof)
        assert len(proof) == 15

    def test_axioms_first_in_canonical_order(self, small_formula):
        """Test that axioms lead in canonical clause order."""
        layers = canonical_layer_list(small_formula, [Clause.of(-Y), EMPTY_CLAUSE])
        proof = layers_to_proof(layers)
        assert proof.clauses()[:3] == [Clause.of(-X), Clause.of(X, -Y), Clause.of(Y)]
        assert proof.steps[3] == ProofStep(Clause.of(-Y), (0, 1))


class TestProofBuilder:
    """Test the proof builder used by search, DPLL and LRAT import."""

    def test_build_and_trim(self, small_formula):
        """Test that steps not reaching the goal are trimmed."""
        builder = ProofBuilder()
        for clause in small_formula:
            builder.axiom(clause)
        builder.resolvent(Clause.of(-Y), Clause.of(X, -Y), Clause.of(-X))
        builder.resolvent(Clause.of(X), Clause.of(X, -Y), Clause.of(Y))
        builder.resolvent(EMPTY_CLAUSE, Clause.of(-Y), Clause.of(Y))
        trimmed = builder.build()
        assert len(trimmed) == 5
        assert verify_proof(small_formula, trimmed)
        assert len(builder.build(trim=False)) == 6

    def test_duplicates_counted(self):
        """Test raw and deduplicated step counters."""
        builder = ProofBuilder()
        builder.axiom(Clause.of(X))
        builder.axiom(Clause.of(-X, Y))
        assert builder.resolvent(Clause.of(Y), Clause.of(X), Clause.of(-X, Y))
        assert not builder.resolvent(Clause.of(Y), Clause.of(X), Clause.of(-X, Y))
        assert builder.raw_steps == 2
        assert builder.dedup_steps == 1

    def test_unknown_premise(self):
        """Test that premises must be recorded first."""
        builder = ProofBuilder()
        builder.axiom(Clause.of(X))
        with pytest.raises(ValueError):
            builder.resolvent(EMPTY_CLAUSE, Clause.of(X), Clause.of(-X))

    def test_goal_never_derived(self):
        """Test building towards a goal that is unknown."""
        builder = ProofBuilder()
        builder.axiom(Clause.of(X))
        with pytest.raises(ValueError):
            builder.build()

    def test_goal_given_as_axiom(self):
        """Test that an axiom goal gives a one-step proof."""
        builder = ProofBuilder()
        builder.axiom(EMPTY_CLAUSE)
        builder.axiom(Clause.of(X))
        assert builder.build() == Proof((ProofStep(EMPTY_CLAUSE),))

    def test_resolvent_matching_axiom_not_rederived(self):
        """Test that a declared axiom is never recorded as derived."""
        builder = ProofBuilder()
        builder.axiom(Clause.of(X))
        assert not builder.resolvent(Clause.of(X), Clause.of(X), Clause.of(X))
        assert builder.is_axiom(Clause.of(X))


class TestProofText:
    """Test the plain-text proof format."""

    def test_write(self):
        """Test the serialized line layout."""
        text = write_proof(small_proof())
        assert text.splitlines() == [
            "1 1 -2 0 0",
            "2 -1 0 0",
            "3 2 0 0",
            "4 -2 0 1 2 0",
            "5 0 3 4 0",
        ]

    def test_read_back(self, small_formula):
        """Test that written proofs read back and verify."""
        proof = read_proof(write_proof(small_proof()).encode())
        assert proof == small_proof()
        assert verify_proof(small_formula, proof)

    def test_round_trip_of_refutations(self):
        """Test that DPLL refutations of random formulas survive writing and reading."""
        for formula in random_unsat_formulas(seed=41, count=15, variables=4, max_clauses=10):
            proof = solve(formula).proof
            assert read_proof(write_proof(proof)) == proof

    def test_comments_and_blank_lines(self):
        """Test that comment and blank lines are skipped."""
        proof = read_proof("c a proof\n\n1 1 0 0\n")
        assert proof.clauses() == [Clause.of(1)]

    @pytest.mark.parametrize("text", [
        "1 1 0\n",
        "2 1 0 0\n",
        "1 1 0 2 0\n",
        "1 x 0 0\n",
        "1 1 -1 0 0\n",
    ])
    def test_malformed(self, text):
        """Test rejected proof lines."""
        with pytest.raises(ProofFormatError):
            read_proof(text)
