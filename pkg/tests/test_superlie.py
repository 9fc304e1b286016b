import pytest

from yangw.scalar import ZERO, ONE, C, A, const
from yangw.superindex import PartitionData
from yangw.superlie import (
    AffineGL, TriangularA, presentation_images,
    check_super_skew, check_super_jacobi,
)


def as_dict(terms, scalar):
    out = {}
    for m, c in terms:
        out[m] = out.get(m, ZERO) + c
    return {k: v for k, v in out.items() if v}, scalar


def test_bracket_gl_basic():
    g = AffineGL(2, 3)
    t, s = as_dict(*g.bracket(g.E_lbl(1, 2), g.E_lbl(2, 1)))
    assert t == {g.E_lbl(1, 1): ONE, g.E_lbl(2, 2): -ONE}
    assert s.is_zero()


def test_bracket_gl_odd_pair():
    g = AffineGL(2, 3)
    t, s = as_dict(*g.bracket(g.E_lbl(1, -1), g.E_lbl(-1, 1)))
    assert t == {g.E_lbl(1, 1): ONE, g.E_lbl(-1, -1): ONE}
    assert s.is_zero()


def test_bracket_gl_disjoint():
    g = AffineGL(2, 3)
    t, s = as_dict(*g.bracket(g.E_lbl(1, 2), g.E_lbl(-1, -2)))
    assert t == {} and s.is_zero()


def test_bracket_affine_central():
    g = AffineGL(2, 3)
    t, s = as_dict(*g.bracket(g.E_lbl(1, 2, 1), g.E_lbl(2, 1, -1)))
    assert t == {g.E_lbl(1, 1): ONE, g.E_lbl(2, 2): -ONE}
    assert s == C
    # no central term when the exponents do not cancel
    t, s = as_dict(*g.bracket(g.E_lbl(1, 2, 1), g.E_lbl(2, 1, 1)))
    assert t == {g.E_lbl(1, 1, 2): ONE, g.E_lbl(2, 2, 2): -ONE}
    assert s.is_zero()


def test_bracket_affine_z_term():
    g = AffineGL(2, 3)
    t, s = as_dict(*g.bracket(g.E_lbl(1, 1, 1), g.E_lbl(2, 2, -1)))
    assert t == {}
    assert s == ONE  # z acts by one, both indices even


def test_skew_and_jacobi_gl22():
    g = AffineGL(2, 2)
    modes = list(g.modes(0))
    assert check_super_skew(g, modes) == []
    assert check_super_jacobi(g, modes) == []


def test_jacobi_affine_gl23_sample():
    # |s| <= 1 here to keep the unit test fast; the acceptance suite
    # runs |s| <= 2 exhaustively
    g = AffineGL(2, 3, level=C, z=A)
    modes = [g.E(a, b, s) for s in (-1, 0, 1) for a in range(1, 6) for b in range(1, 6)]
    assert check_super_jacobi(g, modes) == []


def test_triangular_support():
    part = PartitionData((3, 1), (2, 1))
    alg = TriangularA(part)
    alg.e_lbl(4, 1)
    alg.psi_lbl(4, 1)
    with pytest.raises(ValueError):
        alg.e_lbl(1, 4)
    with pytest.raises(ValueError):
        alg.psi_lbl(1, 2)  # same column


def test_triangular_brackets():
    part = PartitionData((3, 1), (2, 1))
    alg = TriangularA(part)
    # [e_{i,j}, psi_{j,y}] = psi_{i,y} when the first delta fires alone
    t, s = as_dict(*alg.bracket(alg.e_lbl(-3, 4), alg.psi_lbl(4, 1)))
    assert t == {alg.psi_lbl(-3, 1): ONE}
    assert s.is_zero()
    # psi-psi brackets vanish
    t, s = as_dict(*alg.bracket(alg.psi_lbl(4, 1), alg.psi_lbl(-3, 2)))
    assert t == {} and s.is_zero()


def test_triangular_kappa():
    part = PartitionData((3, 1), (2, 1))
    alg = TriangularA(part)
    assert alg.kappa(alg.e_lbl(4, 1), alg.psi_lbl(4, 1)).is_zero()
    assert alg.kappa(alg.psi_lbl(4, 1), alg.psi_lbl(4, 2)).is_zero()
    # negative modes never produce central terms (exponent sum < 0)
    t, s = as_dict(*alg.bracket(alg.e_lbl(4, 1, -1), alg.e_lbl(1, 2, -1)))
    assert s.is_zero()
    t, s = as_dict(*alg.bracket(alg.e_lbl(2, 1, -1), alg.e_lbl(1, 2, -1)))
    assert s.is_zero()


def test_skew_and_jacobi_triangular():
    part = PartitionData((3, 1), (2, 1))
    alg = TriangularA(part)
    modes = list(alg.basis(0))
    assert len(modes) == 49
    assert check_super_skew(alg, modes) == []
    assert check_super_jacobi(alg, modes) == []


def test_presentation_images():
    imgs = presentation_images(2, 3)
    g = AffineGL(2, 3)
    h0, xp0, xm0 = imgs[0]
    assert xp0[0] == [(g.E(5, 1, 1), ONE)]
    assert xm0[0] == [(g.E(1, 5, -1), -ONE)]
    assert h0[1] == C
    h2, xp2, xm2 = imgs[2]
    # node 2 has p(2)=0, p(3)=1
    assert xm2[0] == [(g.E(3, 2, 0), ONE)]
    assert h2[0] == [(g.E(2, 2, 0), ONE), (g.E(3, 3, 0), ONE)]


def test_supertrace():
    g = AffineGL(2, 3)
    assert g.idx.supertrace_coeffs()[0] == 1
    assert g.idx.supertrace_coeffs()[2] == -1
