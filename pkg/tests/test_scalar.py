from fractions import Fraction

from hypothesis import given, settings, strategies as st

from yangw.scalar import Poly, ZERO, ONE, HALF, H, C, K, A, EPS, const


def rand_poly(draw_terms):
    p = ZERO
    for exps, coeff in draw_terms:
        p = p + Poly({tuple(exps): Fraction(coeff)}) if coeff else p
    return p


poly_strategy = st.lists(
    st.tuples(
        st.lists(st.integers(min_value=0, max_value=3), min_size=4, max_size=4),
        st.integers(min_value=-9, max_value=9).filter(lambda x: x != 0),
    ),
    max_size=4,
).map(rand_poly)


def test_additive_inverse():
    assert (H + (-H)).is_zero()


def test_mul_identity():
    assert (C * H) * ONE == EPS


def test_rational_product():
    assert (H * HALF) * (const(2) * C) == C * H


def test_zero_is_canonical():
    p = H - H
    assert p.terms == {}
    assert p == ZERO


@settings(max_examples=60, deadline=None)
@given(poly_strategy, poly_strategy, poly_strategy)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=40, deadline=None)
@given(poly_strategy, poly_strategy)
def test_substitution_is_ring_hom(p, q):
    binds = {"c": C - ONE, "a": K * H}
    assert (p * q).substitute(binds) == p.substitute(binds) * q.substitute(binds)
    assert (p + q).substitute(binds) == p.substitute(binds) + q.substitute(binds)


def test_substitute_examples():
    assert EPS.substitute({"c": C - ONE}) == (C - ONE) * H
    x = K + const(2)
    assert A.substitute({"a": -(x * H)}) == -(x * H)
    assert (H * H).substitute({"h": ZERO}) == ZERO


def test_power():
    assert H ** 0 == ONE
    assert H ** 3 == H * H * H


def test_render_deterministic():
    p = HALF * const(3) * H * H * C
    assert p.render() == "3/2*h^2*c"
    assert ZERO.render() == "0"
    assert (H - H + ONE).render() == "1"
    assert (-H).render() == "-h"
