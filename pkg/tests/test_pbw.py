import random

from yangw.scalar import ZERO, ONE, HALF, C
from yangw.superlie import AffineGL
from yangw.pbw import (
    straighten, pbw_mul, pbw_bracket, pbw_anti, add_into,
    word_parity, word_degree, element_degree, tensor_bracket,
)


G = AffineGL(2, 3)
BR = G.bracket


def nf(word, coeff=ONE, vacuum=False):
    return straighten(BR, word, coeff, vacuum)


def test_already_ordered():
    w = (G.E_lbl(1, 2), G.E_lbl(1, 2))
    assert nf(w) == {w: ONE}


def test_one_straightening_step():
    out = nf((G.E_lbl(2, 1), G.E_lbl(1, 2)))
    assert out == {
        (G.E_lbl(1, 2), G.E_lbl(2, 1)): ONE,
        (G.E_lbl(1, 1),): -ONE,
        (G.E_lbl(2, 2),): ONE,
    }


def test_odd_square_vanishing():
    # [E_{1,-1}, E_{1,-1}] = 0, so the square collapses to zero
    out = nf((G.E_lbl(1, -1), G.E_lbl(1, -1)))
    assert out == {}


def test_odd_square_halving():
    # odd modes with a nonzero self bracket keep the exact 1/2
    x = G.E_lbl(1, -1)
    y = G.E_lbl(-1, 1)
    sq = pbw_mul(BR, {(x,): ONE, (y,): ONE}, {(x,): ONE, (y,): ONE})
    # (x+y)^2 = xy + yx + x^2 + y^2 = {x,y} = E_{1,1} + E_{-1,-1}
    expected = pbw_anti(BR, {(x,): ONE}, {(y,): ONE})
    assert sq == expected


def test_bracket_u_of_even_with_itself():
    x = {(G.E_lbl(1, 2),): ONE}
    assert pbw_bracket(BR, x, x) == {}


def test_bracket_u_identity_central():
    one = {(): ONE}
    y = {(G.E_lbl(2, 1), G.E_lbl(1, 2)): ONE}
    assert pbw_bracket(BR, one, y) == {}


def random_mode(rng):
    a = rng.randrange(1, 6)
    b = rng.randrange(1, 6)
    s = rng.randrange(-2, 3)
    return G.E(a, b, s)


def test_confluence_random_words():
    rng = random.Random(7)
    for _ in range(60):
        w1 = tuple(random_mode(rng) for _ in range(rng.randrange(1, 3)))
        w2 = tuple(random_mode(rng) for _ in range(rng.randrange(1, 3)))
        lhs = pbw_mul(BR, nf(w1), nf(w2))
        rhs = nf(w1 + w2)
        assert lhs == rhs


def test_grading_and_parity_preserved():
    rng = random.Random(11)
    for _ in range(40):
        w = tuple(random_mode(rng) for _ in range(3))
        deg = word_degree(w)
        par = word_parity(w)
        for ww in nf(w):
            assert word_degree(ww) == deg
            assert word_parity(ww) == par


def test_vacuum_drop():
    w = (G.E_lbl(1, 2, 1),)
    assert nf(w, vacuum=True) == {}
    w = (G.E_lbl(1, 2, 1), G.E_lbl(2, 1, -1))
    out = nf(w, vacuum=True)
    assert out == {(): C}


def test_tensor_factors_supercommute():
    g0 = AffineGL(2, 3, tag=0)
    g1 = AffineGL(2, 3, tag=1)
    br = tensor_bracket([g0, g1])
    x = g1.E_lbl(1, -1, -1)
    y = g0.E_lbl(-1, 1, -1)
    out = straighten(br, (x, y), ONE)
    assert out == {(y, x): -ONE}
