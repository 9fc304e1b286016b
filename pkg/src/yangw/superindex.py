"""Index bookkeeping for gl(m|n) and for column partitions.

Two coordinate systems are used everywhere:

* signed labels  {1..m} u {-1..-n}, as in the defining formulas;
* positions      1..m+n, where label i>0 sits at position i and label
                 -j at position m+j.  Positions are what the mode tuples
                 store, because they make the cyclic identification with
                 Z/(m+n)Z trivial: position p corresponds to the cyclic
                 node p mod (m+n), the affine node 0 being position m+n.

Two different "hat" maps exist: ``alt_hat`` is the alternating partial sum
used by the evaluation map, ``PartitionData.hat`` is the column shift used
by the nilpotent element on the W side.  They are unrelated.
"""

from __future__ import annotations


class SuperIndexSet:
    """The index set of gl(m|n) with its parity and cyclic structure."""

    __slots__ = ("m", "n", "size")

    def __init__(self, m: int, n: int):
        if m < 0 or n < 0 or m + n == 0:
            raise ValueError(f"invalid size ({m}|{n})")
        self.m = m
        self.n = n
        self.size = m + n

    # -- label <-> position -------------------------------------------

    def pos(self, label: int) -> int:
        if label > 0:
            if label > self.m:
                raise IndexError(f"label {label} out of range for gl({self.m}|{self.n})")
            return label
        if label < 0:
            if -label > self.n:
                raise IndexError(f"label {label} out of range for gl({self.m}|{self.n})")
            return self.m - label
        raise IndexError("0 is not an index label")

    def label(self, pos: int) -> int:
        if not 1 <= pos <= self.size:
            raise IndexError(f"position {pos} out of range")
        return pos if pos <= self.m else self.m - pos

    def parity_pos(self, pos: int) -> int:
        return 0 if pos <= self.m else 1

    def parity(self, label: int) -> int:
        return self.parity_pos(self.pos(label))

    # -- cyclic identification ----------------------------------------

    def cyclic(self, label: int) -> int:
        """Cyclic class of a label in Z/(m+n)Z; -n lands on 0."""
        return self.pos(label) % self.size

    def node_pos(self, node: int) -> int:
        """Position representing a cyclic node (node 0 -> position m+n)."""
        node %= self.size
        return node if node else self.size

    def node_parity(self, node: int) -> int:
        return self.parity_pos(self.node_pos(node))

    def positions(self):
        return range(1, self.size + 1)

    def alt_hat(self, i: int) -> int:
        """Alternating partial sum of signs over positions 1..i."""
        if not 1 <= i <= self.size - 1:
            raise IndexError(f"alt_hat defined for 1..{self.size - 1}")
        return sum(1 if self.parity_pos(u) == 0 else -1 for u in range(1, i + 1))

    def supertrace_coeffs(self):
        return tuple(1 if p <= self.m else -1 for p in self.positions())


class PartitionData:
    """Column data (u, q) of a nilpotent of column type in gl(M|N).

    ``u`` and ``q`` are non-increasing tuples of equal length l with
    u_l + q_l != 0 and sum(u) != sum(q).  Signed labels live in
    {1..M} u {-1..-N}; rows and columns follow the block combinatorics
    of the free-field realization.
    """

    def __init__(self, u, q):
        u = tuple(u)
        q = tuple(q)
        if len(u) != len(q) or not u:
            raise ValueError("u and q must be non-empty and of equal length")
        if any(u[i] < u[i + 1] for i in range(len(u) - 1)):
            raise ValueError("u must be non-increasing")
        if any(q[i] < q[i + 1] for i in range(len(q) - 1)):
            raise ValueError("q must be non-increasing")
        if u[-1] + q[-1] == 0:
            raise ValueError("u_l + q_l must be nonzero")
        if sum(u) == sum(q):
            raise ValueError("M = N is excluded")
        self.u = u
        self.q = q
        self.l = len(u)
        self.M = sum(u)
        self.N = sum(q)
        self.indices = SuperIndexSet(self.M, self.N)
        self._ucum = [0]
        for x in u:
            self._ucum.append(self._ucum[-1] + x)
        self._qcum = [0]
        for x in q:
            self._qcum.append(self._qcum[-1] + x)
        # (row, col) -> signed label, for hat/tilde lookups
        self._by_rc = {}
        for i in self.labels():
            self._by_rc[(self.row(i), self.col(i))] = i

    def u_at(self, s: int) -> int:
        """u_s with the convention u_{l+1} = 0."""
        return self.u[s - 1] if 1 <= s <= self.l else 0

    def q_at(self, s: int) -> int:
        return self.q[s - 1] if 1 <= s <= self.l else 0

    def labels(self):
        for i in range(1, self.M + 1):
            yield i
        for j in range(1, self.N + 1):
            yield -j

    def col(self, i: int) -> int:
        if i > 0:
            for c in range(1, self.l + 1):
                if self._ucum[c - 1] < i <= self._ucum[c]:
                    return c
            raise IndexError(f"label {i} out of range")
        if i < 0:
            for c in range(1, self.l + 1):
                if self._qcum[c - 1] < -i <= self._qcum[c]:
                    return c
            raise IndexError(f"label {i} out of range")
        raise IndexError("0 is not an index label")

    def row(self, i: int) -> int:
        c = self.col(i)
        if i > 0:
            return i - self._ucum[c - 1] + self.u[0] - self.u[c - 1]
        return i + self._qcum[c - 1] - self.q[0] + self.q[c - 1]

    def hat(self, i: int):
        """Label with the same row one column to the right, or None."""
        return self._by_rc.get((self.row(i), self.col(i) + 1))

    def tilde(self, i: int):
        """Label with the same row one column to the left, or None."""
        return self._by_rc.get((self.row(i), self.col(i) - 1))

    # -- row catalogues -------------------------------------------------

    def rows_pos(self, c: int):
        """Positive row values present in column c."""
        return range(self.u[0] - self.u[c - 1] + 1, self.u[0] + 1)

    def rows_neg(self, c: int):
        """Negative row values present in column c."""
        return range(-self.q[0], -self.q[0] + self.q[c - 1])

    def generator_rows(self, s: int):
        """Row labels indexing the level-s generators.

        These are the rows present in column s but absent from column
        s+1; they are in bijection with I_s minus I_{s+1}.
        """
        pos = [r for r in self.rows_pos(s) if r <= self.u[0] - self.u_at(s + 1)]
        neg = [r for r in self.rows_neg(s) if r >= -self.q[0] + self.q_at(s + 1)]
        return pos + neg

    def label_at(self, row: int, c: int):
        return self._by_rc.get((row, c))

    def parity_row(self, row: int) -> int:
        return 0 if row > 0 else 1

    # -- structure constants shared with the free-field side -----------

    def alpha(self, s: int, k):
        """k + M - N - u_s + q_s as a polynomial in k."""
        from .scalar import const
        return k + const(self.M - self.N - self.u_at(s) + self.q_at(s))

    def gamma(self, a: int, k):
        """Sum of alpha_s over s = a+1 .. l."""
        from .scalar import ZERO
        out = ZERO
        for s in range(a + 1, self.l + 1):
            out = out + self.alpha(s, k)
        return out
