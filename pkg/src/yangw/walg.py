"""The vertex-superalgebra side: free-field states over the triangular
algebra, the odd differential, the quadratic generators, their projections
to the block factors, and mode expansions into tensor current algebras.

States are PBW elements (dicts word -> Poly) in strictly negative modes of
the triangular algebra; projected states live over the block current
algebras, tagged per column.  Everything here is a finite exact
computation with the inner-product level symbolic.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Poly, ZERO, ONE, HALF, K as SK, H as SH, const
from .superindex import PartitionData
from .superlie import TriangularA, AffineGL, KIND_PSI, KIND_EW
from .pbw import straighten, add_into, pbw_mul, word_parity
from .operators import (
    term, esum, scale, series, mode_term, scalar_expr, emul, EXPR_ZERO,
)


class WContext:
    """Partition-indexed free-field data: triangular algebra, block
    algebras, differential, generators, projection, and mode maps."""

    def __init__(self, part: PartitionData, k: Poly = None, levels=None):
        self.part = part
        self.k = SK if k is None else k
        self.alg = TriangularA(part, k=self.k)
        self.idx = part.indices
        if levels is None:
            levels = [None] * part.l
        self.blocks = [AffineGL(part.u_at(s), part.q_at(s),
                                level=levels[s - 1], tag=s - 1)
                       for s in range(1, part.l + 1)]

    # -- mode helpers ---------------------------------------------------

    def e(self, i, j, s=-1):
        return self.alg.e_lbl(i, j, s)

    def psi(self, i, j, s=-1):
        return self.alg.psi_lbl(i, j, s)

    def nf(self, word, coeff=ONE) -> dict:
        return straighten(self.alg.bracket, word, coeff)

    # -- translation ------------------------------------------------------

    def translate(self, state: dict) -> dict:
        """The derivation sending x[-n] to n x[-n-1]."""
        out = {}
        for w, c in state.items():
            for pos in range(len(w)):
                mo = w[pos]
                nw = w[:pos] + ((mo[0] - 1,) + mo[1:],) + w[pos + 1:]
                add_into(out, self.nf(nw, c * const(-mo[0])))
        return out

    # -- the odd differential ---------------------------------------------

    def d0_linear(self, mo) -> dict:
        """Differential of a single negative mode."""
        s, tag, kind, a, b, par = mo
        if kind == KIND_PSI:
            raise ValueError("the differential is defined on the even part")
        depth = -s
        if depth < 1:
            raise ValueError("state modes must be strictly negative")
        base = self._d0_e1(self.idx.label(a), self.idx.label(b))
        # x[-n] = translate^{n-1} x[-1] / (n-1)!
        fact = 1
        for r in range(1, depth):
            base = self.translate(base)
            fact *= r
        if fact != 1:
            base = {w: c * Poly.rational(1, fact) for w, c in base.items()}
        return base

    def _d0_e1(self, i, j) -> dict:
        part = self.part
        ci, cj = part.col(i), part.col(j)
        pi = self.idx.parity(i)
        pe_ij = (pi + self.idx.parity(j)) & 1
        out = {}
        for r in part.labels():
            cr = part.col(r)
            pr = self.idx.parity(r)
            pe_ir = (pi + pr) & 1
            pe_rj = (pr + self.idx.parity(j)) & 1
            if ci > cr >= cj:
                sgn = -1 if (pe_ij + pe_ir * pe_rj) & 1 else 1
                add_into(out, self.nf((self.e(r, j), self.psi(i, r)), const(sgn)))
            if cj < cr <= ci:
                sgn = -1 if (pe_ir * pe_rj) & 1 else 1
                add_into(out, self.nf((self.psi(r, j), self.e(i, r)), const(-sgn)))
        spi = -1 if pi else 1
        if ci > cj:
            add_into(out, {(self.psi(i, j, -2),): const(spi) * part.alpha(ci, self.k)})
        ih = part.hat(i)
        if ih is not None and part.col(ih) > cj:
            add_into(out, {(self.psi(ih, j),): const(spi)})
        jt = part.tilde(j)
        if jt is not None and ci > part.col(jt):
            add_into(out, {(self.psi(i, jt),): const(-spi)})
        return out

    def d0(self, state: dict) -> dict:
        """Odd-derivation extension to products."""
        out = {}
        for w, c in state.items():
            sign = 1
            for pos in range(len(w)):
                mo = w[pos]
                dpart = self.d0_linear(mo)
                for dw, dc in dpart.items():
                    word = w[:pos] + dw + w[pos + 1:]
                    add_into(out, self.nf(word, c * dc * const(sign)))
                if mo[5] & 1:
                    sign = -sign
        return out

    # -- the quadratic generators ------------------------------------------

    def _pairs_same_row(self, cond):
        """Index pairs (x, v) with row(x) = row(v) satisfying cond(colx, colv, row)."""
        part = self.part
        out = []
        for x in part.labels():
            for v in part.labels():
                if part.row(x) != part.row(v):
                    continue
                if cond(part.col(x), part.col(v), part.row(x)):
                    out.append((x, v))
        return out

    def W1(self, s: int, a: int, b: int) -> dict:
        part = self.part
        if a not in part.generator_rows(s) or b not in part.generator_rows(s):
            raise ValueError(f"rows ({a},{b}) are not level-{s} generator rows")
        out = {}
        for c in range(1, part.l + 1):
            i = part.label_at(a, c)
            j = part.label_at(b, c)
            if i is not None and j is not None:
                add_into(out, {(self.e(i, j),): ONE})
        return out

    def W2(self, s: int, a: int, b: int) -> dict:
        part = self.part
        if a not in part.generator_rows(s) or b not in part.generator_rows(s):
            raise ValueError(f"rows ({a},{b}) are not level-{s} generator rows")
        out = {}
        # linear part, one column to the right
        for c in range(1, part.l):
            i = part.label_at(a, c + 1)
            j = part.label_at(b, c)
            if i is not None and j is not None:
                add_into(out, {(self.e(i, j),): ONE})
        # linear part, weight two
        for c in range(1, part.l + 1):
            i = part.label_at(a, c)
            j = part.label_at(b, c)
            if i is not None and j is not None:
                add_into(out, {(self.e(i, j, -2),): -part.gamma(c, self.k)})
        # quadratic parts
        u1 = part.u[0]
        q1 = part.q[0]
        us = part.u_at(s)
        qs = part.q_at(s)
        for i in part.labels():
            if part.row(i) != a:
                continue
            for j in part.labels():
                if part.row(j) != b:
                    continue
                ci, cj = part.col(i), part.col(j)
                for (x, v) in self._pairs_same_row(lambda cx, cv, row: True):
                    if part.col(x) != cj or part.col(v) != ci:
                        continue
                    row = part.row(x)
                    px = self.idx.parity(x)
                    sgn = -1 if (px + ((self.idx.parity(i) + self.idx.parity(v)) & 1)
                                 * ((px + self.idx.parity(j)) & 1)) & 1 else 1
                    coeff = None
                    if cj < ci:
                        if (0 < row and row > u1 - us) or (row < 0 and row < -q1 + qs):
                            coeff = const(sgn)
                    if cj >= ci:
                        if (row < 0 and qs - q1 <= row <= part.q_at(cj) - q1) or \
                           (0 < row and u1 - part.u_at(cj) <= row <= u1 - us):
                            coeff = const(-sgn)
                    if coeff is not None:
                        add_into(out, self.nf((self.e(x, j), self.e(i, v)), coeff))
        return out

    # -- projection to the block factors ------------------------------------

    def to_block(self, mo):
        """Translate a diagonal-column triangular mode into the matching
        block current mode, or None for a cross-column mode."""
        s, tag, kind, a, b, par = mo
        if kind == KIND_PSI:
            raise ValueError("only even modes project")
        part = self.part
        i, j = self.idx.label(a), self.idx.label(b)
        ci, cj = part.col(i), part.col(j)
        if ci != cj:
            return None
        blk = self.blocks[ci - 1]
        li = part.row(i) - part.u[0] + part.u_at(ci) if i > 0 else part.row(i) + part.q[0] - part.q_at(ci)
        lj = part.row(j) - part.u[0] + part.u_at(cj) if j > 0 else part.row(j) + part.q[0] - part.q_at(cj)
        return blk.E_lbl(li, lj, s)

    def miura(self, state: dict) -> dict:
        """Projection killing every cross-column mode; the surviving modes
        become tagged block currents, reordered across tags."""
        from .pbw import tensor_bracket
        br = tensor_bracket(self.blocks)
        out = {}
        for w, c in state.items():
            mapped = []
            dead = False
            for mo in w:
                nm = self.to_block(mo)
                if nm is None:
                    dead = True
                    break
                mapped.append(nm)
            if dead:
                continue
            add_into(out, straighten(br, tuple(mapped), c))
        return out

    # -- mode maps -------------------------------------------------------

    def mode_expr(self, state: dict, power: int):
        """The mode of a projected state at the given t-power, as an
        operator expression over the block currents.

        Supported shapes: scalars, single negative modes, and quadratic
        words in weight-one modes (the shapes the generators produce)."""
        parts = []
        for w, c in state.items():
            if len(w) == 0:
                if power == -1:
                    parts.append(scalar_expr(c))
                continue
            if len(w) == 1:
                parts.append(self._mode_linear(w[0], power, c))
            elif len(w) == 2 and w[0][0] == -1 and w[1][0] == -1:
                parts.append(self._mode_quadratic(w[0], w[1], power, c))
            else:
                raise ValueError("mode map implemented for weight-two states only")
        return esum(parts)

    def _mode_linear(self, mo, b, c: Poly):
        s, tag, kind, x, y, par = mo
        depth = -s
        coeff = c
        # (d/dz-shifted fields) x[-n] t^b = (-1)^(n-1) C(b, n-1) x t^{b-n+1}
        for r in range(1, depth):
            coeff = coeff * Poly.rational(-(b - r + 1), r)
        return mode_term((b - depth + 1, tag, kind, x, y, par), coeff)

    def _mode_quadratic(self, mu, mv, b, c: Poly):
        pu = mu[5] & 1
        pv = mv[5] & 1
        ksign = -1 if (pu and pv) else 1

        def body1(i, mu=mu, mv=mv, c=c):
            a = (-1 - i,) + mu[1:]
            d = (b + i,) + mv[1:]
            return term(c, (a, d))

        def body2(i, mu=mu, mv=mv, c=c):
            a = (b - 1 - i,) + mv[1:]
            d = (i,) + mu[1:]
            return term(c * const(ksign), (a, d))

        par = (pu + pv) & 1
        return esum([
            series(body1, beta=b, lead=-1, par=par, deg=b - 1, label="mode.q1"),
            series(body2, beta=0, lead=b - 1, par=par, deg=b - 1, label="mode.q2"),
        ])


def states_equal(a: dict, b: dict) -> bool:
    if len(a) != len(b):
        return False
    return all(b.get(w) == c for w, c in a.items())


def render_state(ctx: WContext, state: dict) -> str:
    from .pbw import render_element
    return render_element(state, ctx.alg.render_mode)


def render_block_state(ctx: WContext, state: dict) -> str:
    from .pbw import render_element
    return render_element(state, lambda m: ctx.blocks[m[1]].render_mode(m))


# ---------------------------------------------------------------------------
# block-row mode helpers and the quadratic-generator expansion
# ---------------------------------------------------------------------------

def block_row_mode(ctx: WContext, r: int, rowx: int, rowy: int, t: int):
    """Current mode of block r (1-based) addressed by global row labels,
    or None when either row is absent from the block."""
    part = ctx.part
    if rowx > 0:
        if rowx <= part.u[0] - part.u_at(r):
            return None
        lx = rowx - part.u[0] + part.u_at(r)
    else:
        if rowx >= -part.q[0] + part.q_at(r):
            return None
        lx = rowx + part.q[0] - part.q_at(r)
    if rowy > 0:
        if rowy <= part.u[0] - part.u_at(r):
            return None
        ly = rowy - part.u[0] + part.u_at(r)
    else:
        if rowy >= -part.q[0] + part.q_at(r):
            return None
        ly = rowy + part.q[0] - part.q_at(r)
    return ctx.blocks[r - 1].E_lbl(lx, ly, t)


def w1_mode(ctx: WContext, a: int, b: int, power: int):
    """Finite expansion of a weight-one generator mode over the blocks."""
    parts = []
    for r in range(1, ctx.part.l + 1):
        mo = block_row_mode(ctx, r, a, b, power)
        if mo is not None:
            parts.append(mode_term(mo))
    return esum(parts)


def w_gen_expansion(ctx: WContext, s: int):
    """The displayed expansion of the level-one mode of the quadratic
    generator attached to the top-left corner of level s, as a tensor
    current expression (seven groups, two-sided cross-block series)."""
    part = ctx.part
    u1, q1 = part.u[0], part.q[0]
    us, qs = part.u_at(s), part.q_at(s)
    ap = u1 - us + 1
    bp = u1 - us + 2
    ell = part.l
    parts = []

    # group 1: diagonal linear piece
    for a in range(1, s + 1):
        mo = block_row_mode(ctx, a, ap, bp, 0)
        if mo is not None:
            parts.append(mode_term(mo, part.gamma(a, ctx.k)))

    def cross(r1, r2, x, co, sh=0):
        """co * sum_{v in Z} E^{(r1)}_{x,bp} t^{-v-sh} E^{(r2)}_{ap,x} t^{v+sh}"""
        m1 = block_row_mode(ctx, r1, x, bp, 0)
        m2 = block_row_mode(ctx, r2, ap, x, 0)
        if m1 is None or m2 is None:
            return None
        par = (m1[5] + m2[5]) & 1

        def body(v, m1=m1, m2=m2, co=co, sh=sh):
            a1 = (-v - sh,) + m1[1:]
            a2 = (v + sh,) + m2[1:]
            return term(co, (a1, a2))

        return series(body, beta=sh, lead=-sh, bilateral=True, par=par, deg=0,
                      label=f"wgen.x{x}.r{r1}{r2}")

    pos_rows = [x for x in range(u1 - us + 1, u1 + 1)]
    neg_rows = [x for x in range(-q1, -q1 + qs)]
    for r1 in range(1, ell + 1):
        for r2 in range(1, ell + 1):
            if r1 == r2:
                continue
            if r1 < r2:
                # groups 2 and 3
                for x in pos_rows + neg_rows:
                    t = cross(r1, r2, x, ONE)
                    if t is not None:
                        parts.append(t)
            else:
                # groups 4 and 5
                for x in range(qs - q1, part.q_at(r1) - q1):
                    t = cross(r1, r2, x, -ONE)
                    if t is not None:
                        parts.append(t)
                for x in range(u1 - part.u_at(r1) + 1, u1 - us + 1):
                    t = cross(r1, r2, x, -ONE)
                    if t is not None:
                        parts.append(t)

    # groups 6 and 7: same-block normally ordered tails
    def same(r, x, inner_sign):
        m1 = block_row_mode(ctx, r, x, bp, 0)
        m2 = block_row_mode(ctx, r, ap, x, 0)
        if m1 is None or m2 is None:
            return []
        par = (m1[5] + m2[5]) & 1

        def body1(v, m1=m1, m2=m2):
            return term(-ONE, ((-v - 1,) + m1[1:], (v + 1,) + m2[1:]))

        def body2(v, m1=m1, m2=m2, sg=inner_sign):
            return term(const(-sg), ((-v,) + m2[1:], (v,) + m1[1:]))

        return [
            series(body1, beta=1, lead=-1, par=par, deg=0, label=f"wgen6.{r}.{x}a"),
            series(body2, beta=0, lead=0, par=par, deg=0, label=f"wgen6.{r}.{x}b"),
        ]

    for r in range(1, s + 1):
        for x in range(qs - q1, part.q_at(r) - q1):
            parts.extend(same(r, x, -1))
        for x in range(u1 - part.u_at(r) + 1, u1 - us + 1):
            parts.extend(same(r, x, +1))
    return esum(parts)


def phi_images(ctx: WContext, s: int, affine_minus: bool = True):
    """Generator images of the block-diagonal map out of the source
    Yangian, rendered as tensor current expressions.

    Keys are source cyclic nodes of sl(u_s - u_{s+1} | q_s - q_{s+1});
    includes every level-zero generator and the node-one raising
    generator."""
    part = ctx.part
    u1, q1 = part.u[0], part.q[0]
    us, qs = part.u_at(s), part.q_at(s)
    msrc = us - part.u_at(s + 1)
    nsrc = qs - part.q_at(s + 1)
    ap = u1 - us + 1
    bp = u1 - us + 2
    out = {}
    for i in range(1, msrc):
        out[("+", i, 0)] = w1_mode(ctx, u1 - us + i, u1 - us + i + 1, 0)
        out[("-", i, 0)] = w1_mode(ctx, u1 - us + i + 1, u1 - us + i, 0)
    out[("+", msrc, 0)] = w1_mode(ctx, u1 - us + msrc, -q1 + qs - 1, 0)
    out[("-", msrc, 0)] = w1_mode(ctx, -q1 + qs - 1, u1 - us + msrc, 0)
    for j in range(1, nsrc):
        # source node msrc + j, negative label -j
        out[("+", msrc + j, 0)] = w1_mode(ctx, -q1 + qs - j, -q1 + qs - j - 1, 0)
        out[("-", msrc + j, 0)] = scale(
            w1_mode(ctx, -q1 + qs - j - 1, -q1 + qs - j, 0), const(-1))
    out[("+", 0, 0)] = w1_mode(ctx, -q1 + part.q_at(s + 1), u1 - us + 1, 1)
    xm0 = w1_mode(ctx, u1 - us + 1, -q1 + part.q_at(s + 1), -1)
    out[("-", 0, 0)] = scale(xm0, const(-1)) if affine_minus else xm0

    # the node-one raising generator
    w2t = scale(ctx.mode_expr(ctx.miura(ctx.W2(s, ap, bp)), 1), -SH)
    lin = scale(w1_mode(ctx, ap, bp, 0), -(HALF * SH))

    def wpair(rowl, rowm, rowr, sh, co):
        left = w1_mode(ctx, rowl, rowm, 0)
        right = w1_mode(ctx, rowm, rowr, 0)
        if left is EXPR_ZERO or right is EXPR_ZERO:
            return None
        par = (left.par + right.par) & 1

        def body(v, left=left, right=right, co=co, sh=sh):
            lt = _shift_expr(left, -v - sh)
            rt = _shift_expr(right, v + sh)
            return scale(emul(lt, rt), co)

        return series(body, beta=sh, lead=-sh, par=par, deg=0,
                      label=f"phi.{rowm}")

    tails = [wpair(ap, ap, bp, 0, SH)]
    for z in range(2, msrc + 1):
        tails.append(wpair(ap, u1 - us + z, bp, 1, SH))
    for z in range(-(qs - part.q_at(s + 1)), 0):
        tails.append(wpair(ap, -q1 + qs + z, bp, 1, -SH))
    out[("+", 1, 1)] = esum([w2t, lin] + [t for t in tails if t is not None])
    return out


def _shift_expr(expr, t):
    """Re-exponent a finite sum of single weight-one modes."""
    from .operators import Term, Sum
    if isinstance(expr, Term):
        mo = expr.atoms[0]
        return Term(expr.c, ((t,) + mo[1:],))
    return esum([_shift_expr(p, t) for p in expr.parts])


# ---------------------------------------------------------------------------
# displayed projections and the mode cross-check
# ---------------------------------------------------------------------------

def miura_w1_displayed(ctx: WContext, a: int, b: int) -> dict:
    """The displayed projection of a weight-one generator, built directly
    in block coordinates."""
    out = {}
    for c in range(1, ctx.part.l + 1):
        mo = block_row_mode(ctx, c, a, b, -1)
        if mo is not None:
            add_into(out, {(mo,): ONE})
    return out


def miura_w2_displayed(ctx: WContext, s: int, a: int, b: int) -> dict:
    """The displayed projection of a quadratic generator: the weight-two
    linear part and the four quadratic groups, with no cross-column
    linear part."""
    from .pbw import tensor_bracket
    part = ctx.part
    br = tensor_bracket(ctx.blocks)
    out = {}
    for c in range(1, part.l + 1):
        mo = block_row_mode(ctx, c, a, b, -2)
        if mo is not None:
            add_into(out, {(mo,): -part.gamma(c, ctx.k)})
    u1, q1 = part.u[0], part.q[0]
    us, qs = part.u_at(s), part.q_at(s)
    for i in part.labels():
        if part.row(i) != a:
            continue
        for j in part.labels():
            if part.row(j) != b:
                continue
            ci, cj = part.col(i), part.col(j)
            for x in part.labels():
                row = part.row(x)
                if part.col(x) != cj:
                    continue
                v = part.label_at(row, ci)
                if v is None:
                    continue
                px = ctx.idx.parity(x)
                sgn = -1 if (px + ((ctx.idx.parity(i) + ctx.idx.parity(v)) & 1)
                             * ((px + ctx.idx.parity(j)) & 1)) & 1 else 1
                coeff = None
                if cj < ci:
                    if (0 < row and row > u1 - us) or (row < 0 and row < -q1 + qs):
                        coeff = const(sgn)
                if cj >= ci:
                    if (row < 0 and qs - q1 <= row <= part.q_at(cj) - q1) or \
                       (0 < row and u1 - part.u_at(cj) <= row <= u1 - us):
                        coeff = const(-sgn)
                if coeff is None:
                    continue
                m1 = block_row_mode(ctx, cj, row, b, -1)
                m2 = block_row_mode(ctx, ci, a, row, -1)
                add_into(out, straighten(br, (m1, m2), coeff))
    return out


def wgen_crosscheck(part: PartitionData, s: int, D: int, levels=None,
                    words=None):
    """Exact agreement of the displayed level-one mode expansion of the
    quadratic generator with the mode of its projection, as operators on
    the tensor vacuum module."""
    from .smodule import VacuumModule
    from .operators import op_equal
    if levels is None:
        levels = [part.alpha(a, SK) for a in range(1, part.l + 1)]
    ctx = WContext(part, levels=levels)
    module = VacuumModule(ctx.blocks)
    ap = part.u[0] - part.u_at(s) + 1
    bp = ap + 1
    lhs = w_gen_expansion(ctx, s)
    rhs = ctx.mode_expr(ctx.miura(ctx.W2(s, ap, bp)), 1)
    ok, fails = op_equal(module, lhs, rhs, D, words=words)
    rec = {"name": f"wgen-crosscheck[s={s}]", "status": "pass" if ok else "fail"}
    if not ok:
        w, v1, v2 = fails[0]
        rec["counterexample"] = {
            "vector": module.render_word(w),
            "displayed": module.render_state(v1),
            "mode-of-projection": module.render_state(v2),
        }
    return rec
