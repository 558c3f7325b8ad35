import random

import pytest
from hypothesis import given, settings, strategies as st

from aicwb.errors import PreconditionError, RegularityError, UnsupportedError
from aicwb.exact_arith import GF, QQ, Polynomial
from aicwb.finite import galois_field, product, zmod
from aicwb.rings import (
    ALL_REGULAR,
    RingPresentation,
    component_quotient,
    idempotents,
    intersection,
    is_regular,
    localize,
    minimal_primes,
    non_comaximal_pair,
    reducedness_audit,
    sample_regular,
    total_quotient_ring,
)


def flagship(k=QQ):
    return RingPresentation.from_factors(k, ["X", "Y"])


def flagship_subdirect():
    return RingPresentation.subdirect(
        QQ, [("(X)", "Y"), ("(Y)", "X")], {"X": ["0", "X"], "Y": ["Y", "0"]}
    )


def test_minimal_primes_of_xy():
    assert [str(t) for t in minimal_primes(flagship())] == ["(X)", "(Y)"]
    assert [str(t) for t in minimal_primes(flagship_subdirect())] == ["(X)", "(Y)"]


def test_minimal_primes_of_domain():
    tags = minimal_primes(RingPresentation.domain(QQ, "Y"))
    assert [str(t) for t in tags] == ["(0)"]


def test_three_components_over_f2():
    R = RingPresentation.from_factors(GF(2), ["X", "Y", "X+Y"])
    assert len(minimal_primes(R)) == 3


def test_shared_component_rejected():
    with pytest.raises(PreconditionError):
        RingPresentation.from_factors(QQ, ["X", "2*X"])


def test_nonlinear_factor_unsupported():
    with pytest.raises(UnsupportedError):
        RingPresentation.from_factors(QQ, ["X^2 + Y^2 - 1", "X"])


def test_idempotents_of_z36():
    R = RingPresentation.finite(zmod(36))
    assert idempotents(R).members == [0, 1, 9, 28]


def test_idempotents_of_full_product():
    R = RingPresentation.product(RingPresentation.domain(QQ, "Y"), RingPresentation.domain(QQ, "X"))
    census = idempotents(R)
    assert census.count == 4 and census.decided


def test_idempotents_of_connected_rings():
    assert idempotents(RingPresentation.domain(QQ, "Y")).count == 2
    assert idempotents(flagship()).count == 2


def test_undecided_membership_is_reported():
    census = idempotents(flagship_subdirect())
    assert census.members == [(0, 0), (1, 1)]
    assert census.undecided == [(1, 0), (0, 1)]


def test_is_regular():
    R = flagship()
    assert is_regular(R, R.element("X + Y"))
    assert not is_regular(R, R.element("X"))
    assert is_regular(R, R.element("1"))


def test_total_quotient_ring():
    assert [repr(f) for f in total_quotient_ring(flagship()).fields] == ["QQ(Y)", "QQ(X)"]
    assert [repr(f) for f in total_quotient_ring(flagship(GF(3))).fields] == ["GF(3)(Y)", "GF(3)(X)"]
    assert [repr(f) for f in total_quotient_ring(RingPresentation.field_ring(QQ)).fields] == ["QQ"]


def test_localize_examples():
    R = flagship()
    assert localize(R, ["X + Y"]).describe()["components"] == ["QQ[Y, 1/Y]", "QQ[X, 1/X]"]
    assert localize(R, ["1"]).describe()["components"] == ["QQ[Y]", "QQ[X]"]
    assert localize(R, ALL_REGULAR) == total_quotient_ring(R)


def test_localize_rejects_zero_divisors():
    with pytest.raises(RegularityError, match=r"\(X\)"):
        localize(flagship(), ["X"])


def test_total_quotient_ring_after_localization():
    R = flagship()
    assert total_quotient_ring(localize(R, ["X + Y", "X^2 + Y + 1"])) == total_quotient_ring(R)


def test_component_quotients():
    R = flagship()
    D = component_quotient(R, minimal_primes(R)[0])
    assert D.describe()["components"] == [{"tag": "(X)", "domain": "QQ[Y]"}]
    assert D.describe()["generators"] == {"X": ["0"], "Y": ["Y"]}
    R3 = RingPresentation.from_factors(GF(2), ["X", "Y", "X+Y"])
    tag = next(t for t in minimal_primes(R3) if str(t) == "(X + Y)")
    Q = component_quotient(R3, tag)
    assert Q.describe()["generators"] == {"X": ["X"], "Y": ["X"]}
    # the defining relation vanishes on that component
    assert Q.image(Q.element("X*Y*(X+Y)"), 0).is_zero()
    dom = RingPresentation.domain(QQ, "Y")
    assert component_quotient(dom, 0).describe() == dom.describe()


def test_separator_lies_in_the_other_primes():
    R = RingPresentation.from_factors(GF(2), ["X", "Y", "X+Y"])
    for i in range(3):
        c = R.separator(i)
        images = R.images(c)
        assert not images[i].is_zero()
        assert all(images[j].is_zero() for j in range(3) if j != i)


def test_intersections():
    R = flagship()
    H, a, b = intersection(R, 0, 1)
    assert H == Polynomial.var("W") and non_comaximal_pair(R) == (0, 1)
    far = RingPresentation.from_factors(QQ, ["Y", "Y - 1"])
    assert non_comaximal_pair(far) is None


def test_finite_minimal_primes():
    R = RingPresentation.finite(zmod(36))
    assert len(minimal_primes(R)) == 2


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(2, 3), (3, 4), (4, 5), (2, 9), (5, 7)]))
def test_crt_idempotent_counts(mn):
    m, n = mn
    whole = len(zmod(m * n).idempotents())
    assert whole == len(zmod(m).idempotents()) * len(zmod(n).idempotents())


def test_minimal_prime_count_of_products():
    A, B = flagship(), RingPresentation.domain(QQ, "U")
    # rename generators of the second factor to avoid clashes
    B = RingPresentation.subdirect(QQ, [("(0)", "U")], {"U": ["U"]})
    P = RingPresentation.product(A, B)
    assert len(minimal_primes(P)) == len(minimal_primes(A)) + len(minimal_primes(B))
    F = RingPresentation.finite(product(galois_field(2), zmod(4)))
    assert len(minimal_primes(F)) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_reducedness_audit(seed):
    rng = random.Random(seed)
    R = RingPresentation.from_factors(GF(2), ["X", "Y", "X+Y"])
    samples = [R.random_element(rng) for _ in range(5)]
    assert reducedness_audit(R, samples)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_regular_samples_avoid_every_prime(seed):
    R = flagship()
    for r in sample_regular(R, random.Random(seed), 3):
        assert all(not img.is_zero() for img in R.images(r))
