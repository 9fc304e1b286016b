"""Structure constants: gl(m|n), its affinization, and the triangular
superalgebras of the free-field complex.

A mode is a plain tuple ``(s, tag, kind, a, b, par)``:

* ``s``    t-exponent,
* ``tag``  tensor factor (0-based),
* ``kind`` KIND_E for gl currents, KIND_PSI / KIND_EW for the odd and even
           generators of the triangular algebra,
* ``a, b`` positions (1-based, row index first),
* ``par``  parity bit.

Tuple comparison is the global monomial order: exponent ascending, then
tag, then kind (so the odd generators sort left of the even ones at equal
exponent), then positions.  Lexicographic tie-breaking on the parity bit
never fires because parity is determined by the rest.
"""

from __future__ import annotations

from .scalar import Poly, ZERO, ONE, const
from .superindex import SuperIndexSet, PartitionData

KIND_E = 0    # gl current E_{a,b}
KIND_PSI = 1  # odd generator of the triangular algebra
KIND_EW = 2   # even generator of the triangular algebra


def mode_key(m):
    return m


class AffineGL:
    """gl(m|n) currents with central terms.

    ``level`` is the scalar by which the charge-type central element acts
    (a symbol on vacuum modules); ``z`` is the scalar for the second,
    diagonal central element, 1 on the modules considered here.
    """

    def __init__(self, m: int, n: int, level: Poly = None, z: Poly = None, tag: int = 0):
        from .scalar import C
        self.idx = SuperIndexSet(m, n)
        self.m = m
        self.n = n
        self.size = m + n
        self.level = C if level is None else level
        self.z = ONE if z is None else z
        self.tag = tag

    # -- mode factories -------------------------------------------------

    def E(self, a: int, b: int, s: int = 0):
        """Mode from positions."""
        par = (self.idx.parity_pos(a) + self.idx.parity_pos(b)) & 1
        return (s, self.tag, KIND_E, a, b, par)

    def E_lbl(self, i: int, j: int, s: int = 0):
        """Mode from signed labels."""
        return self.E(self.idx.pos(i), self.idx.pos(j), s)

    def modes(self, s: int = 0):
        for a in self.idx.positions():
            for b in self.idx.positions():
                yield self.E(a, b, s)

    def render_mode(self, m) -> str:
        s, tag, kind, a, b, par = m
        i, j = self.idx.label(a), self.idx.label(b)
        t = "" if s == 0 else f"t^{s}"
        sup = f"({tag + 1})" if tag else ""
        return f"E{sup}[{i},{j}]{t}"

    # -- bracket --------------------------------------------------------

    def bracket(self, x, y):
        """Super bracket of two modes of this algebra.

        Returns ``(mode_terms, scalar)`` where mode_terms is a list of
        (mode, Poly) pairs and scalar a Poly (central contributions with
        the level already substituted).
        """
        sx, _, _, a, b, px = x
        sy, _, _, c, d, py = y
        terms = []
        if b == c:
            terms.append((self.E(a, d, sx + sy), ONE))
        if a == d:
            sign = -1 if (px & py) else 1
            terms.append((self.E(c, b, sx + sy), const(-sign)))
        scalar = ZERO
        if sx + sy == 0 and sx != 0:
            u = const(sx)
            if a == d and b == c:
                sgn = -1 if self.idx.parity_pos(a) else 1
                scalar = scalar + u * const(sgn) * self.level
            if a == b and c == d:
                sgn = -1 if (self.idx.parity_pos(a) + self.idx.parity_pos(c)) & 1 else 1
                scalar = scalar + u * const(sgn) * self.z
        return terms, scalar


class TriangularA:
    """The column-triangular superalgebra attached to a partition, with its
    odd extension.

    Even generators e_{i,j} exist for col(i) >= col(j); odd generators
    psi_{i,j} for col(i) > col(j).  The psi-psi bracket vanishes; the
    formula printed with a psi-valued right hand side is not parity
    homogeneous and cannot define a Lie superalgebra (see the exhaustive
    Jacobi test).
    """

    def __init__(self, part: PartitionData, k: Poly = None, tag: int = 0):
        from .scalar import K
        self.part = part
        self.idx = part.indices
        self.k = K if k is None else k
        self.tag = tag

    # -- mode factories -------------------------------------------------

    def e_lbl(self, i: int, j: int, s: int = 0):
        if self.part.col(i) < self.part.col(j):
            raise ValueError(f"e[{i},{j}] outside the triangular support")
        par = (self.idx.parity(i) + self.idx.parity(j)) & 1
        return (s, self.tag, KIND_EW, self.idx.pos(i), self.idx.pos(j), par)

    def psi_lbl(self, i: int, j: int, s: int = 0):
        if self.part.col(i) <= self.part.col(j):
            raise ValueError(f"psi[{i},{j}] outside the support")
        par = (self.idx.parity(i) + self.idx.parity(j) + 1) & 1
        return (s, self.tag, KIND_PSI, self.idx.pos(i), self.idx.pos(j), par)

    def basis(self, s: int = 0):
        for i in self.part.labels():
            for j in self.part.labels():
                ci, cj = self.part.col(i), self.part.col(j)
                if ci >= cj:
                    yield self.e_lbl(i, j, s)
                if ci > cj:
                    yield self.psi_lbl(i, j, s)

    def render_mode(self, m) -> str:
        s, tag, kind, a, b, par = m
        i, j = self.idx.label(a), self.idx.label(b)
        name = "psi" if kind == KIND_PSI else "e"
        t = f"[{s}]" if s else ""
        return f"{name}[{i},{j}]{t}"

    # -- inner product ----------------------------------------------------

    def kappa(self, x, y) -> Poly:
        """Inner product; nonzero only on pairs of even generators."""
        _, _, kx, a, b, _ = x
        _, _, ky, c, d, _ = y
        if kx == KIND_PSI or ky == KIND_PSI:
            return ZERO
        out = ZERO
        if a == d and b == c:
            sgn = -1 if self.idx.parity_pos(a) else 1
            out = out + const(sgn) * self.k
        if a == b and c == d:
            sgn = -1 if (self.idx.parity_pos(a) + self.idx.parity_pos(c)) & 1 else 1
            out = out + const(sgn)
        return out

    # -- bracket ----------------------------------------------------------

    def _valid(self, kind, a, b):
        la, lb = self.idx.label(a), self.idx.label(b)
        ca, cb = self.part.col(la), self.part.col(lb)
        return ca > cb if kind == KIND_PSI else ca >= cb

    def _make(self, kind, a, b, s):
        par = (self.idx.parity_pos(a) + self.idx.parity_pos(b) + (1 if kind == KIND_PSI else 0)) & 1
        return (s, self.tag, kind, a, b, par)

    def bracket(self, x, y):
        sx, _, kx, a, b, px = x
        sy, _, ky, c, d, py = y
        terms = []
        if kx == KIND_PSI and ky == KIND_PSI:
            return terms, ZERO
        out_kind = KIND_PSI if (kx == KIND_PSI or ky == KIND_PSI) else KIND_EW
        if b == c:
            if not self._valid(out_kind, a, d):
                raise ValueError("bracket left the triangular support")
            terms.append((self._make(out_kind, a, d, sx + sy), ONE))
        if a == d:
            sign = -1 if (px & py) else 1
            if not self._valid(out_kind, c, b):
                raise ValueError("bracket left the triangular support")
            terms.append((self._make(out_kind, c, b, sx + sy), const(-sign)))
        scalar = ZERO
        if sx + sy == 0 and sx != 0:
            kap = self.kappa((0, 0, kx, a, b, 0), (0, 0, ky, c, d, 0))
            if kap:
                scalar = const(sx) * kap
        return terms, scalar


def presentation_images(m: int, n: int, alg: AffineGL = None):
    """Current images of the Chevalley generators of the affine special
    linear presentation: node -> (h, x+, x-) as (mode lists with Poly
    coefficients, plus a scalar part for h_0).
    """
    if alg is None:
        alg = AffineGL(m, n)
    idx = alg.idx
    L = m + n
    out = {}
    for node in range(L):
        if node == 0:
            h = ([(alg.E(L, L, 0), const(-1)), (alg.E(1, 1, 0), const(-1))], alg.level)
            xp = ([(alg.E(L, 1, 1), ONE)], ZERO)
            xm = ([(alg.E(1, L, -1), const(-1))], ZERO)
        else:
            pi = idx.parity_pos(node)
            pi1 = idx.parity_pos(node + 1)
            h = ([(alg.E(node, node, 0), const(1 if pi == 0 else -1)),
                  (alg.E(node + 1, node + 1, 0), const(-1 if pi1 == 0 else 1))], ZERO)
            xp = ([(alg.E(node, node + 1, 0), ONE)], ZERO)
            xm = ([(alg.E(node + 1, node, 0), const(1 if pi == 0 else -1))], ZERO)
        out[node] = (h, xp, xm)
    return out


def check_super_skew(alg, modes) -> list:
    """Pairs violating [x,y] = -(-1)^{p(x)p(y)}[y,x]; empty when the
    bracket is super skew-symmetric."""
    bad = []
    for x in modes:
        for y in modes:
            tx, sx = alg.bracket(x, y)
            ty, sy = alg.bracket(y, x)
            sign = -1 if (x[5] & y[5]) else 1
            acc = {}
            for mz, cz in tx:
                acc[mz] = acc.get(mz, ZERO) + cz
            for mz, cz in ty:
                acc[mz] = acc.get(mz, ZERO) + cz * const(sign)
            if any(v for v in acc.values()) or (sx + sy * const(sign)):
                bad.append((x, y))
    return bad


def check_super_jacobi(alg, modes, skip_disjoint=True) -> list:
    """Triples violating the super Jacobi identity (central terms included).

    [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]].
    """

    def brk(x, y):
        t, s = alg.bracket(x, y)
        return t, s

    bad = []
    modes = list(modes)
    for x in modes:
        for y in modes:
            txy, sxy = brk(x, y)
            sgn_xy = -1 if (x[5] & y[5]) else 1
            for z in modes:
                if skip_disjoint:
                    ix = {x[3], x[4]}
                    if (ix.isdisjoint({y[3], y[4]}) and ix.isdisjoint({z[3], z[4]})
                            and {y[3], y[4]}.isdisjoint({z[3], z[4]})):
                        continue
                acc = {}
                scl = ZERO

                tyz, _ = brk(y, z)
                for mw, cw in tyz:
                    t2, s2 = brk(x, mw)
                    for m2, c2 in t2:
                        acc[m2] = acc.get(m2, ZERO) + cw * c2
                    scl = scl + cw * s2

                for mw, cw in txy:
                    t2, s2 = brk(mw, z)
                    for m2, c2 in t2:
                        acc[m2] = acc.get(m2, ZERO) - cw * c2
                    scl = scl - cw * s2

                txz, _ = brk(x, z)
                for mw, cw in txz:
                    t2, s2 = brk(y, mw)
                    for m2, c2 in t2:
                        acc[m2] = acc.get(m2, ZERO) - const(sgn_xy) * cw * c2
                    scl = scl - const(sgn_xy) * cw * s2

                if scl or any(v for v in acc.values()):
                    bad.append((x, y, z))
    return bad
