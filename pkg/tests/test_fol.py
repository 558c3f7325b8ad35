import random

import pytest
from hypothesis import given, settings, strategies as st

from aicwb.errors import DegenerateInputError, EvaluationError, PreconditionError
from aicwb.finite import FiniteRing, diagonal, galois_field, product, zmod
from aicwb.fol import (
    X,
    Add,
    And,
    Eq,
    Exists,
    FiniteModel,
    Forall,
    Implies,
    Mul,
    Not,
    Or,
    Var,
    check_type_omission,
    const,
    delta_formula,
    disjunctive_formula,
    evaluate_formula,
    free_vars,
    gamma_domains,
    gamma_finite,
    local_realization_scan,
    psi_formula,
    sigma1_formula,
    sigma1_truncation,
    sigma2_truncation,
    sigma_extra,
    to_text,
)

F2, F3 = galois_field(2), galois_field(3)
F2xF2 = product(F2, F2)


def square_model(R):
    S, emb = diagonal(R)
    return FiniteModel(S, R, emb)


def test_z6_has_a_nontrivial_idempotent():
    R = zmod(6)
    f = Exists("x", And((Eq(Mul(X, X), X), Not(Eq(X, const(R, 0))), Not(Eq(X, const(R, 1))))))
    assert evaluate_formula(FiniteModel(R), f)


def test_zero_equals_one_is_false():
    R = zmod(5)
    assert not evaluate_formula(FiniteModel(R), Eq(const(R, 0), const(R, 1)))


def test_sigma_extra_in_square_of_f2():
    assert evaluate_formula(square_model(F2), sigma_extra(F2))
    assert not evaluate_formula(FiniteModel(F2), sigma_extra(F2))


def test_unbound_variable():
    with pytest.raises(EvaluationError):
        evaluate_formula(FiniteModel(F2), Eq(X, X))


def test_sigma1_examples():
    f = sigma1_formula(F3, (1, 0, 2))
    assert to_text(f) == "(((([1] * (x * x)) + ([0] * x)) + [2]) = [0] -> [1] = [0])"
    M = FiniteModel(F3)
    assert not evaluate_formula(M, f, {"x": 2})
    assert all(evaluate_formula(M, sigma1_formula(F3, (0, 0, 0)), {"x": s}) for s in F3.elements)
    g = sigma1_formula(F3, (1, 0))
    assert [evaluate_formula(M, g, {"x": s}) for s in F3.elements] == [False, True, True]
    with pytest.raises(DegenerateInputError):
        sigma1_formula(F3, (1,))


def test_psi_structure():
    f = psi_formula(F2xF2, ((1, 1), (0, 1)), ((1, 0), (1, 1)))
    delta, body = f.parts
    assert len(delta.parts) == 4
    concl = body.body.body.concl
    assert len(concl.parts) == 2
    assert free_vars(f) == {"x"}


def test_psi_with_zero_leading_coefficient_reduces_to_delta():
    M = square_model(F2xF2)
    zero = (0, 0)
    f = psi_formula(F2xF2, (zero, (1, 0)), ((1, 1), (0, 1)))
    d = delta_formula(F2xF2)
    for s in M.ring.elements:
        assert evaluate_formula(M, f, {"x": s}) == evaluate_formula(M, d, {"x": s})


def test_psi_fails_at_idempotents_of_r():
    M = square_model(F2xF2)
    f = psi_formula(F2xF2, ((1, 1), (1, 1)), ((1, 1), (1, 1)))
    for d in F2xF2.idempotents():
        assert not evaluate_formula(M, f, {"x": (d, d)})


def test_omission_in_r_itself():
    trunc = sigma2_truncation(F2xF2, 1, 1)
    assert check_type_omission(FiniteModel(F2xF2), trunc).omits


def test_square_realization_report():
    trunc = sigma2_truncation(F2xF2, 1, 1)
    res = check_type_omission(square_model(F2xF2), trunc)
    assert res.omits is False
    assert res.witness[0] != res.witness[1]


def test_trivial_ring():
    one = product()
    M = FiniteModel(one)
    assert evaluate_formula(M, Eq(const(one, ()), const(one, ())))
    assert check_type_omission(M, [gamma_domains(one)]).omits


def test_scan_examples():
    rows = local_realization_scan(gamma_domains(F2xF2), sigma2_truncation(F2xF2, 1, 1), [square_model(F2xF2)])
    assert rows[0].consistency_witness is not None and rows[0].holds
    Z4 = zmod(4)
    M = square_model(Z4)
    assert evaluate_formula(M, gamma_finite(Z4), {"x": (1, 0)})
    false = Eq(const(Z4, 0), const(Z4, 1))
    rows = local_realization_scan(false, sigma2_truncation(Z4, 1, 1), [M])
    assert rows[0].consistency_witness is None and rows[0].holds


def test_model_validation():
    bad = FiniteRing("bad", [0, 1], lambda a, b: (a + b) % 2, lambda a, b: 0, 0, 1)
    with pytest.raises(PreconditionError):
        FiniteModel(bad)
    R = zmod(2)
    with pytest.raises(PreconditionError):
        FiniteModel(zmod(4), R, lambda r: r)  # not additive: 1 + 1 = 0 in Z/2 but 2 in Z/4


def test_disjunction_is_constructible():
    f = disjunctive_formula(F2, (1, 0), (1, 1), (1, 1))
    assert isinstance(f, Or) and free_vars(f) == {"x"}


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 30))
def test_sigma1_truncations_are_omitted(n):
    R = zmod(n)
    assert check_type_omission(FiniteModel(R), sigma1_truncation(R, 1)).omits


def _random_formula(rng, depth, bound, R):
    atoms = [Var(v) for v in bound] + [const(R, c) for c in R.elements[:3]]

    def term(d):
        if d == 0 or rng.random() < 0.4:
            return rng.choice(atoms)
        return rng.choice([Add, Mul])(term(d - 1), term(d - 1))

    if depth == 0 or rng.random() < 0.3:
        return Eq(term(2), term(2))
    kind = rng.choice(["not", "and", "or", "imp", "all", "ex"])
    sub = lambda b=bound: _random_formula(rng, depth - 1, b, R)
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And((sub(), sub()))
    if kind == "or":
        return Or((sub(), sub()))
    if kind == "imp":
        return Implies(sub(), sub())
    v = rng.choice(["y", "z"])
    body = sub(bound | {v})
    return Forall(v, body) if kind == "all" else Exists(v, body)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_evaluation_respects_structure(seed):
    rng = random.Random(seed)
    R = zmod(rng.choice([2, 3, 4, 6]))
    M = FiniteModel(R)
    a = _random_formula(rng, 3, {"x"}, R)
    b = _random_formula(rng, 3, {"x"}, R)
    for s in R.elements:
        env = {"x": s}
        both = evaluate_formula(M, And((a, b)), env)
        assert both == (evaluate_formula(M, a, env) and evaluate_formula(M, b, env))
        body = _random_formula(rng, 2, {"x", "y"}, R)
        assert evaluate_formula(M, Forall("y", body), env) == \
            evaluate_formula(M, Not(Exists("y", Not(body))), env)
        imp = Forall("y", Implies(And((a, body)), b))
        naive = all(
            (not (evaluate_formula(M, a, env) and evaluate_formula(M, body, {**env, "y": t})))
            or evaluate_formula(M, b, env)
            for t in R.elements
        )
        assert evaluate_formula(M, imp, env) == naive
