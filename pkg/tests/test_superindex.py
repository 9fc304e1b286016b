import pytest

from yangw.scalar import K, const
from yangw.superindex import SuperIndexSet, PartitionData


def test_parity():
    idx = SuperIndexSet(2, 3)
    assert idx.parity(2) == 0
    assert idx.parity(-3) == 1
    with pytest.raises(IndexError):
        idx.parity(0)
    with pytest.raises(IndexError):
        idx.parity(4)


def test_cyclic_identification():
    idx = SuperIndexSet(2, 3)
    # -i corresponds to m+i, and -n lands on the affine node 0
    assert idx.cyclic(-1) == 3
    assert idx.cyclic(-3) == 0
    assert idx.node_parity(0) == 1
    seen = {idx.cyclic(lbl) for lbl in (1, 2, -1, -2, -3)}
    assert seen == set(range(5))
    # the identification preserves parity
    for lbl in (1, 2, -1, -2, -3):
        assert idx.node_parity(idx.cyclic(lbl)) == idx.parity(lbl)


def test_alt_hat_oracle():
    idx = SuperIndexSet(2, 3)
    # independent oracle: direct alternating sums over the parities
    signs = [1, 1, -1, -1, -1]
    for i in range(1, 5):
        assert idx.alt_hat(i) == sum(signs[:i])
    assert idx.alt_hat(1) == 1
    assert idx.alt_hat(2) == 2
    assert idx.alt_hat(3) == 1


def test_supertrace_coeffs():
    assert SuperIndexSet(2, 3).supertrace_coeffs() == (1, 1, -1, -1, -1)


def brute_col(i, cums):
    for c in range(1, len(cums)):
        if cums[c - 1] < abs(i) <= cums[c]:
            return c
    raise AssertionError


def test_row_col_examples():
    part = PartitionData((5, 2), (4, 2))
    assert part.col(6) == 2
    assert part.row(6) == 4
    assert part.col(1) == 1
    assert part.row(1) == 1
    assert part.col(-5) == 2
    assert part.row(-5) == -3


def test_row_col_against_inequality_oracle():
    part = PartitionData((5, 2, 1), (4, 2, 1))
    ucum = [0, 5, 7, 8]
    qcum = [0, 4, 6, 7]
    for i in part.labels():
        c = part.col(i)
        assert c == brute_col(i, ucum if i > 0 else qcum)
        r = part.row(i)
        if i > 0:
            assert part.u[0] - part.u[c - 1] < r <= part.u[0]
        else:
            assert -part.q[0] <= r < -part.q[0] + part.q[c - 1]


def test_row_col_bijective():
    part = PartitionData((5, 2), (4, 2))
    seen = set()
    for i in part.labels():
        rc = (part.row(i), part.col(i))
        assert rc not in seen
        seen.add(rc)


def test_hat_tilde():
    part = PartitionData((5, 2), (4, 2))
    assert part.hat(1) is None
    assert part.hat(4) == 6
    assert part.tilde(6) == 4
    for i in part.labels():
        h = part.hat(i)
        if h is not None:
            assert part.tilde(h) == i


def test_single_column_has_no_hat():
    part = PartitionData((3,), (2,))
    for i in part.labels():
        assert part.hat(i) is None


def test_generator_rows():
    part = PartitionData((3, 1), (2, 1))
    assert set(part.generator_rows(1)) == {1, 2, -1}
    assert set(part.generator_rows(2)) == {3, -2}
    big = PartitionData((5, 2), (4, 2))
    assert set(big.generator_rows(1)) == {1, 2, 3, -1, -2}
    assert set(big.generator_rows(2)) == {4, 5, -3, -4}


def test_alpha_gamma():
    part = PartitionData((5, 2), (4, 2))
    assert part.alpha(2, K) == K + const(1)
    assert part.gamma(part.l, K).is_zero()
    assert part.gamma(1, K) == K + const(1)


def test_partition_validation():
    with pytest.raises(ValueError):
        PartitionData((1, 2), (2, 2))      # u increasing
    with pytest.raises(ValueError):
        PartitionData((2, 0), (2, 0))      # u_l + q_l = 0
    with pytest.raises(ValueError):
        PartitionData((2, 1), (2, 1))      # M = N
