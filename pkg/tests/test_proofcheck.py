import json
from fractions import Fraction

import pytest

from cml_kit import (
    And,
    Axiom,
    Hypothesis,
    Implies,
    L,
    ModusPonens,
    Not,
    Proof,
    ProofCheckError,
    ProofLine,
    RuleR1,
    Tautology,
    Top,
    axiom_instance,
    check,
    check_result,
    dumps_proof,
    loads_proof,
    translate_proof,
    valid_on,
)
from cml_kit.harness.generate import corpus

Q = Fraction
T = Top()


def proof_of(epsilon, lines, conclusion, hypotheses=()):
    return Proof(epsilon, tuple(hypotheses), tuple(lines), conclusion)


def test_axiom_a1_one_liner():
    p = proof_of(Q(1, 2), [ProofLine(L(Q(1, 2), T), Axiom("A1", T))], L(Q(1, 2), T))
    check(p)


def test_monotone_threshold_from_hypothesis():
    # L{3} T proves L{1} T through the threshold-weakening schema
    lines = [
        ProofLine(L(3, T), Hypothesis(0)),
        ProofLine(Implies(L(3, T), L(1, T)), Axiom("A2", T, None, Q(1), Q(2))),
        ProofLine(L(1, T), ModusPonens(1, 2)),
    ]
    p = proof_of(Q(0), lines, L(1, T), hypotheses=[L(3, T)])
    check(p)


def test_additivity_schema_negative_index_rejected():
    with pytest.raises(ProofCheckError, match="negative index"):
        check(
            proof_of(
                Q(1),
                [ProofLine(T, Axiom("A3", T, T, Q(0), Q(0)))],
                T,
            )
        )


def test_additivity_schema_at_boundary_checks():
    inst = axiom_instance("A3", Q(1), T, Not(T), Q(1), Q(0))
    check(proof_of(Q(1), [ProofLine(inst, Axiom("A3", T, Not(T), Q(1), Q(0)))], inst))


def test_schema_mismatch_diagnosed():
    with pytest.raises(ProofCheckError, match="schema mismatch"):
        check(proof_of(Q(0), [ProofLine(L(2, T), Axiom("A1", T))], L(2, T)))


def test_dangling_reference():
    with pytest.raises(ProofCheckError, match="dangling reference"):
        check(proof_of(Q(0), [ProofLine(T, ModusPonens(1, 2))], T))


def test_mp_shape_checked():
    lines = [
        ProofLine(L(0, T), Axiom("A1", T)),
        ProofLine(L(0, T), Axiom("A1", T)),
        ProofLine(T, ModusPonens(1, 2)),
    ]
    with pytest.raises(ProofCheckError, match="not an implication"):
        check(proof_of(Q(0), lines, T))


def test_rule_r1():
    lines = [
        ProofLine(Implies(And(T, T), T), Tautology()),
        ProofLine(
            Implies(L(2, And(T, T)), L(2, T)), RuleR1(1, Q(2))
        ),
    ]
    check(proof_of(Q(0), lines, Implies(L(2, And(T, T)), L(2, T))))


def test_tautology_with_premises():
    a = L(1, T)
    lines = [
        ProofLine(a, Hypothesis(0)),
        ProofLine(Implies(a, a), Tautology()),
        ProofLine(And(a, a), Tautology((1,))),
    ]
    check(proof_of(Q(0), lines, And(a, a), hypotheses=[a]))


def test_tautology_failure_names_assignment():
    with pytest.raises(ProofCheckError, match="tautology check failed"):
        check(proof_of(Q(0), [ProofLine(L(1, T), Tautology())], L(1, T)))


def test_tautology_atom_cap():
    big = L(1, T)
    formula = big
    for i in range(17):
        formula = And(formula, L(Q(i + 2), T))
    with pytest.raises(ProofCheckError, match="exceeds the limit"):
        check(proof_of(Q(0), [ProofLine(Implies(formula, formula), Tautology())],
                       Implies(formula, formula)))


def test_conclusion_must_match_last_line():
    p = proof_of(Q(0), [ProofLine(L(0, T), Axiom("A1", T))], T)
    ok, error = check_result(p)
    assert not ok and "conclusion" in error


def test_sugar_insensitive_comparison():
    # the same implication written via sugar and via its core expansion
    doc = {
        "epsilon": "0",
        "lines": [
            {
                "formula": "!(L{3} T & !L{1} T)",
                "by": {"axiom": "A2", "phi": "T", "r": "1", "s": "2"},
            }
        ],
        "conclusion": "L{3} T -> L{1} T",
    }
    check(loads_proof(json.dumps(doc)))


def test_json_round_trip():
    lines = [
        ProofLine(L(3, T), Hypothesis(0)),
        ProofLine(Implies(L(3, T), L(1, T)), Axiom("A2", T, None, Q(1), Q(2))),
        ProofLine(L(1, T), ModusPonens(1, 2)),
    ]
    p = proof_of(Q(0), lines, L(1, T), hypotheses=[L(3, T)])
    assert loads_proof(dumps_proof(p)) == p


def test_translate_up_shifts_conclusion():
    p = proof_of(Q(1, 2), [ProofLine(L(Q(1, 2), T), Axiom("A1", T))], L(Q(1, 2), T))
    up = translate_proof(p, Q(1, 2), "up")
    assert up.epsilon == 1
    assert up.conclusion == L(1, T)
    check(up)


def test_translate_by_zero_is_identity():
    p = proof_of(Q(1, 2), [ProofLine(L(Q(1, 2), T), Axiom("A1", T))], L(Q(1, 2), T))
    assert translate_proof(p, 0, "up") == p
    assert translate_proof(p, 0, "down") == p


def test_translate_down_underflow():
    p = proof_of(Q(0), [ProofLine(L(0, T), Axiom("A1", T))], L(0, T))
    with pytest.raises(ValueError, match="index underflow"):
        translate_proof(p, Q(1, 2), "down")


def test_translate_round_trip():
    lines = [
        ProofLine(Implies(L(3, T), L(1, T)), Axiom("A2", T, None, Q(1), Q(2))),
    ]
    p = proof_of(Q(1, 4), lines, Implies(L(3, T), L(1, T)))
    up = translate_proof(p, Q(3, 4), "up")
    assert translate_proof(up, Q(3, 4), "down") == p


def test_soundness_of_checked_conclusions():
    kernels = corpus(6, 4, seed=31)
    e = Q(1, 3)
    proofs = [
        proof_of(e, [ProofLine(L(e, T), Axiom("A1", T))], L(e, T)),
        proof_of(
            e,
            [
                ProofLine(
                    Implies(L(2, T), L(1, T)), Axiom("A2", T, None, Q(1), Q(1))
                )
            ],
            Implies(L(2, T), L(1, T)),
        ),
        proof_of(
            e,
            [
                ProofLine(
                    axiom_instance("A4", e, T, L(1, T), Q(1), Q(2)),
                    Axiom("A4", T, L(1, T), Q(1), Q(2)),
                )
            ],
            axiom_instance("A4", e, T, L(1, T), Q(1), Q(2)),
        ),
    ]
    for p in proofs:
        check(p)
        for k in kernels:
            assert valid_on(k, p.conclusion, p.epsilon)
