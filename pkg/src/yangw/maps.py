"""The map zoo: evaluation map, coproduct, the four edge contractions,
their generalized block versions, and the composite pipeline into tensor
products of current algebras.

Image tables are written against target positions (1..m+n per factor);
``gen`` atoms stand for target Yangian generators and are resolved by
substituting a completed evaluation assignment.  Levels are handled by
the modules, not the expressions: an epsilon value enters only through
the relation suite and through each factor's central scalar.
"""

from __future__ import annotations

from .scalar import Poly, ZERO, ONE, HALF, H as SH, C, A as SA, const
from .superindex import SuperIndexSet, PartitionData
from .superlie import AffineGL
from .smodule import VacuumModule
from .operators import (
    Term, mode_term, scalar_expr, term, esum, emul, scale, bracket, series,
    gen, is_gen, subst_atoms, eval_expr, op_equal, op_is_zero, EXPR_ZERO,
    register_cache,
)
from .yangian import Assignment, boundary_coeff


def _gen(tag, sym, node, r, idx: SuperIndexSet):
    par = 0 if sym == "H" else (idx.node_parity(node) ^ idx.node_parity(node + 1))
    deg = 0
    if sym != "H" and node % idx.size == 0:
        deg = 1 if sym == "+" else -1
    return gen(tag, sym, node % idx.size, r, par, deg)


# ---------------------------------------------------------------------------
# evaluation map
# ---------------------------------------------------------------------------

def ev_images(alg: AffineGL, a_param: Poly, variant: str = "adopted"):
    """Images of the level-zero generators and the bulk level-one raising
    generators; everything else is derived by assignment completion.

    ``adopted`` uses the bilinear tails h * sum_k (-1)^{p(k)} E_{i,k} E_{k,i+1};
    ``printed`` keeps the extra (-1)^{p(i)} prefactor of the published
    display, which fails the suite at the odd rows (demonstrable through
    the typo-adjudication checks).
    """
    idx = alg.idx
    L = alg.size
    images = {}
    for node in range(L):
        if node == 0:
            images[("+", 0, 0)] = mode_term(alg.E(L, 1, 1))
            images[("-", 0, 0)] = mode_term(alg.E(1, L, -1), -ONE)
        else:
            images[("+", node, 0)] = mode_term(alg.E(node, node + 1, 0))
            sg = -1 if idx.parity_pos(node) else 1
            images[("-", node, 0)] = mode_term(alg.E(node + 1, node, 0), const(sg))

    for i in range(1, L):
        if variant == "printed":
            spi = -1 if idx.parity_pos(i) else 1
        else:
            spi = 1
        lin = a_param - Poly.rational(idx.alt_hat(i), 2) * SH
        low = tuple(range(1, i + 1))
        high = tuple(range(i + 1, L + 1))

        def mk(i=i, spi=spi, low=low, high=high):
            def body_low(s):
                return esum([
                    term(const(spi) * SH * const(-1 if alg.idx.parity_pos(kk) else 1),
                         (alg.E(i, kk, -s), alg.E(kk, i + 1, s)))
                    for kk in low])

            def body_high(s):
                return esum([
                    term(const(spi) * SH * const(-1 if alg.idx.parity_pos(kk) else 1),
                         (alg.E(i, kk, -s - 1), alg.E(kk, i + 1, s + 1)))
                    for kk in high])
            return body_low, body_high

        body_low, body_high = mk()
        par = (idx.parity_pos(i) + idx.parity_pos(i + 1)) & 1
        images[("+", i, 1)] = esum([
            mode_term(alg.E(i, i + 1, 0), lin),
            series(body_low, beta=0, lead=0, par=par, deg=0, label=f"ev+{i},low"),
            series(body_high, beta=1, lead=-1, par=par, deg=0, label=f"ev+{i},high"),
        ])
    return images


def ev_assignment(m: int, n: int, a_param: Poly = None, level: Poly = None,
                  eps: Poly = None, module: VacuumModule = None,
                  kappa_variant: str = "adopted", variant: str = "adopted") -> Assignment:
    """Completed evaluation assignment on a fresh (or supplied) vacuum
    module at symbolic level."""
    if a_param is None:
        a_param = SA
    alg = module.factors[0] if module else AffineGL(m, n, level=level)
    if module is None:
        module = VacuumModule([alg])
    if eps is None:
        eps = alg.level * SH
    images = ev_images(alg, a_param, variant=variant)
    asg = Assignment(m, n, eps, module, images, name=f"ev({m}|{n})",
                     kappa_variant=kappa_variant)
    return asg.complete()


# ---------------------------------------------------------------------------
# coproduct
# ---------------------------------------------------------------------------

def build_B(alg0: AffineGL, alg1: AffineGL, i: int):
    """Bilinear tail of the coproduct on a bulk level-one generator,
    tagged over two factors of the same size."""
    idx = alg0.idx
    L = alg0.size
    par = (idx.parity_pos(i) + idx.parity_pos(i + 1)) & 1

    def spar(u):
        return -1 if idx.parity_pos(u) else 1

    def ksign(u):
        # (-1)^{p(u) + p(E_{i,u}) p(E_{i+1,u})}
        pu = idx.parity_pos(u)
        p1 = (idx.parity_pos(i) + pu) & 1
        p2 = (idx.parity_pos(i + 1) + pu) & 1
        return -1 if (pu + p1 * p2) & 1 else 1

    low = list(range(1, i + 1))
    high = list(range(i + 1, L + 1))
    parts = []
    if low:
        parts.append(series(
            lambda s, us=tuple(low): esum([
                term(SH * const(spar(u)), (alg0.E(i, u, -s), alg1.E(u, i + 1, s)))
                for u in us]),
            beta=0, lead=0, par=par, deg=0, label=f"B{i}.1"))
        parts.append(series(
            lambda s, us=tuple(low): esum([
                term(-SH * const(ksign(u)), (alg0.E(u, i + 1, -s - 1), alg1.E(i, u, s + 1)))
                for u in us]),
            beta=1, lead=-1, par=par, deg=0, label=f"B{i}.2"))
    if high:
        parts.append(series(
            lambda s, us=tuple(high): esum([
                term(SH * const(spar(u)), (alg0.E(i, u, -s - 1), alg1.E(u, i + 1, s + 1)))
                for u in us]),
            beta=1, lead=-1, par=par, deg=0, label=f"B{i}.3"))
        parts.append(series(
            lambda s, us=tuple(high): esum([
                term(-SH * const(ksign(u)), (alg0.E(u, i + 1, -s), alg1.E(i, u, s)))
                for u in us]),
            beta=0, lead=0, par=par, deg=0, label=f"B{i}.4"))
    return esum(parts)


def coproduct_assignment(m: int, n: int, a_param: Poly = None,
                         kappa_variant: str = "adopted") -> Assignment:
    """(ev (x) ev) composed with the coproduct, as a completed assignment
    on the two-factor vacuum module."""
    if a_param is None:
        a_param = SA
    alg0 = AffineGL(m, n, tag=0)
    alg1 = AffineGL(m, n, tag=1)
    module = VacuumModule([alg0, alg1])
    ev0 = ev_images(alg0, a_param)
    ev1 = ev_images(alg1, a_param)
    L = m + n
    images = {}
    for node in range(L):
        for sym in ("+", "-"):
            images[(sym, node, 0)] = esum([ev0[(sym, node, 0)], ev1[(sym, node, 0)]])
    for i in range(1, L):
        images[("+", i, 1)] = esum([
            ev0[("+", i, 1)], ev1[("+", i, 1)], build_B(alg0, alg1, i)])
    # the coproduct preserves the deformation parameter; both factors
    # evaluate at the same symbolic level
    eps = alg0.level * SH
    asg = Assignment(m, n, eps, module, images, name=f"(ev^2)Delta({m}|{n})",
                     kappa_variant=kappa_variant)
    return asg.complete()


def delta_split(expr, alg_pair, at_tag: int = 0):
    """Structural coproduct: split the content of one tensor slot into two
    primitive copies, with the bilinear tail on bulk level-one atoms.
    Slots above ``at_tag`` shift up by one."""
    alg0 = AffineGL(alg_pair[0].m, alg_pair[0].n, tag=at_tag)
    alg1 = AffineGL(alg_pair[0].m, alg_pair[0].n, tag=at_tag + 1)
    L = alg0.size

    def shift_mode(mo):
        s, tag, kind, a, b, par = mo
        return (s, tag + 1, kind, a, b, par)

    def fn(atom):
        if not is_gen(atom):
            s, tag, kind, a, b, par = atom
            if tag > at_tag:
                return Term(ONE, (shift_mode(atom),))
            if tag != at_tag:
                return None
            return esum([
                mode_term((s, at_tag, kind, a, b, par)),
                mode_term((s, at_tag + 1, kind, a, b, par)),
            ])
        _, tag, sym, node, r, par, deg = atom
        if tag > at_tag:
            return Term(ONE, (("G", tag + 1, sym, node, r, par, deg),))
        if tag != at_tag:
            return None
        g0 = ("G", at_tag, sym, node, r, par, deg)
        g1 = ("G", at_tag + 1, sym, node, r, par, deg)
        if r == 0:
            return esum([Term(ONE, (g0,)), Term(ONE, (g1,))])
        if sym == "+" and 1 <= node <= L - 1:
            return esum([Term(ONE, (g0,)), Term(ONE, (g1,)),
                         build_B(alg0, alg1, node)])
        raise ValueError(f"coproduct undefined on atom {atom}")

    return subst_atoms(expr, fn)


# ---------------------------------------------------------------------------
# edge contractions of sections 6..9
# ---------------------------------------------------------------------------

def _series1(alg, co, a1, b1, e1, a2, b2, e2, off_l, off_r, par, label):
    """One-term series co * E_{a1,b1} t^{-s+e1} E_{a2,b2} t^{s+e2}."""
    return series(
        lambda s: term(co, (alg.E(a1, b1, -s + e1), alg.E(a2, b2, s + e2))),
        beta=off_r, lead=off_l, par=par, deg=e1 + e2, label=label)


def _pair_series(alg, co, a1, b1, a2, b2, shift, par, label, extra_r=0):
    """co * sum_s E_{a1,b1} t^{-s-shift} E_{a2,b2} t^{s+shift+extra_r}."""
    return series(
        lambda s: term(co, (alg.E(a1, b1, -s - shift), alg.E(a2, b2, s + shift + extra_r))),
        beta=shift + extra_r, lead=-shift, par=par, deg=extra_r, label=label)


class EdgeContraction:
    """A section-6..9 style table: target, node translation, raw images
    with generator atoms over the target, plus the displayed level-one
    Cartan table used as an agreement check."""

    def __init__(self, name, src_mn, tgt_mn, eps_shift, images, h_tables):
        self.name = name
        self.src_m, self.src_n = src_mn
        self.tgt_m, self.tgt_n = tgt_mn
        self.eps_shift = eps_shift          # eps_source as fn of eps_target
        self.images = images                # (sym, node, r) -> Expr (gen atoms)
        self.h_tables = h_tables            # node -> Expr, displayed H_{i,1}


def psi1(m: int, n: int, variant: str = "adopted") -> EdgeContraction:
    tgt = AffineGL(m + 1, n)
    idx = tgt.idx
    Lt = m + n + 1
    g = lambda sym, node, r: Term(ONE, (_gen(0, sym, node, r, idx),))
    pos_neg = lambda j: m + 1 + j         # target position of label -j
    images = {}
    # source node of source label i
    for i in range(1, m):
        images[("+", i, 0)] = g("+", i, 0)
        images[("-", i, 0)] = g("-", i, 0)
        images[("H", i, 0)] = g("H", i, 0)
    images[("+", m, 0)] = bracket(g("+", m, 0), g("+", m + 1, 0))
    images[("-", m, 0)] = bracket(g("-", m + 1, 0), g("-", m, 0))
    images[("H", m, 0)] = esum([g("H", m, 0), g("H", m + 1, 0)])
    for j in range(1, n):                 # source label -j, node m+j
        images[("+", m + j, 0)] = g("+", pos_neg(j), 0)
        images[("-", m + j, 0)] = g("-", pos_neg(j), 0)
        images[("H", m + j, 0)] = g("H", pos_neg(j), 0)
    images[("+", 0, 0)] = g("+", 0, 0)
    images[("-", 0, 0)] = g("-", 0, 0)
    images[("H", 0, 0)] = g("H", 0, 0)

    def parx(a, b):
        return (idx.parity_pos(a) + idx.parity_pos(b)) & 1

    # level one
    for i in range(1, m):
        images[("+", i, 1)] = esum([
            g("+", i, 1),
            _pair_series(tgt, -SH, i, m + 1, m + 1, i + 1, 1,
                         parx(i, i + 1), f"psi1+{i}")])
    images[("+", m, 1)] = esum([
        bracket(g("+", m, 1), g("+", m + 1, 0)),
        _pair_series(tgt, -SH, m, m + 1, m + 1, pos_neg(1), 1,
                     parx(m, pos_neg(1)), "psi1+m")])
    for j in range(1, n):
        node = m + j
        p = pos_neg(j)
        images[("+", node, 1)] = esum([
            g("+", p, 1),
            scale(g("+", p, 0), HALF * SH),
            _pair_series(tgt, -SH, p, m + 1, m + 1, pos_neg(j + 1), 0,
                         parx(p, pos_neg(j + 1)), f"psi1+{node}")])
    images[("+", 0, 1)] = esum([
        g("+", 0, 1),
        _pair_series(tgt, -SH, pos_neg(n), m + 1, m + 1, 1, 0,
                     parx(pos_neg(n), 1), "psi1+0", extra_r=1)])

    # displayed level-one Cartan tables (agreement checks)
    h_tables = {}
    for i in range(1, m):
        h_tables[i] = esum([
            g("H", i, 1),
            _pair_series(tgt, -SH, i, m + 1, m + 1, i, 1, 0, f"psi1H{i}a"),
            _pair_series(tgt, SH, i + 1, m + 1, m + 1, i + 1, 1, 0, f"psi1H{i}b")])
    h_tables[m] = esum([
        g("H", m, 1), g("H", m + 1, 1),
        scale(emul(g("H", m, 0), g("H", m + 1, 0)), SH),
        scale(g("H", m + 1, 0), HALF * SH),
        _pair_series(tgt, -SH, m, m + 1, m + 1, m, 1, 0, "psi1Hma"),
        _pair_series(tgt, -SH, pos_neg(1), m + 1, m + 1, pos_neg(1), 0, 0, "psi1Hmb")])
    for j in range(1, n):
        node = m + j
        p = pos_neg(j)
        pm = pos_neg(j + 1)
        second_col = m if variant == "printed" else m + 1
        h_tables[node] = esum([
            g("H", p, 1),
            scale(g("H", p, 0), HALF * SH),
            _pair_series(tgt, SH, p, m + 1, m + 1, p, 0, 0, f"psi1H{node}a"),
            series(lambda s, pm=pm, sc=second_col:
                   term(-SH, (tgt.E(pm, sc, -s), tgt.E(m + 1, pm, s))),
                   beta=0, lead=0,
                   par=(idx.parity_pos(pm) + idx.parity_pos(second_col)
                        + idx.parity_pos(m + 1) + idx.parity_pos(pm)) & 1,
                   deg=0, label=f"psi1H{node}b")])
    h_tables[0] = esum([
        g("H", 0, 1),
        _pair_series(tgt, SH, pos_neg(n), m + 1, m + 1, pos_neg(n), 0, 0, "psi1H0a"),
        _pair_series(tgt, SH, 1, m + 1, m + 1, 1, 1, 0, "psi1H0b")])
    return EdgeContraction("psi1", (m, n), (m + 1, n),
                           lambda eps: eps, images, h_tables)


def psi2(m: int, n: int, variant: str = "adopted") -> EdgeContraction:
    tgt = AffineGL(m, n + 1)
    idx = tgt.idx
    g = lambda sym, node, r: Term(ONE, (_gen(0, sym, node, r, idx),))
    pos_neg = lambda j: m + j             # target position of label -j
    images = {}
    for i in range(1, m):
        images[("+", i, 0)] = mode_term(tgt.E(i, i + 1, 0))
        images[("-", i, 0)] = mode_term(tgt.E(i + 1, i, 0))
    images[("+", m, 0)] = mode_term(tgt.E(m, pos_neg(2), 0))
    images[("-", m, 0)] = mode_term(tgt.E(pos_neg(2), m, 0))
    for j in range(1, n):                 # source label -j
        images[("+", m + j, 0)] = mode_term(tgt.E(pos_neg(j + 1), pos_neg(j + 2), 0))
        images[("-", m + j, 0)] = mode_term(tgt.E(pos_neg(j + 2), pos_neg(j + 1), 0), -ONE)
    images[("+", 0, 0)] = mode_term(tgt.E(pos_neg(n + 1), 1, 1))
    images[("-", 0, 0)] = mode_term(tgt.E(1, pos_neg(n + 1), -1), -ONE)
    for i in range(1, m):
        images[("H", i, 0)] = g("H", i, 0)
    images[("H", m, 0)] = esum([g("H", m, 0), g("H", m + 1, 0)])
    for j in range(1, n):
        images[("H", m + j, 0)] = g("H", m + j + 1, 0)
    images[("H", 0, 0)] = g("H", 0, 0)

    def parx(a, b):
        return (idx.parity_pos(a) + idx.parity_pos(b)) & 1

    for i in range(1, m):
        images[("+", i, 1)] = esum([
            g("+", i, 1),
            _pair_series(tgt, SH, pos_neg(1), i + 1, i, pos_neg(1), 0,
                         parx(i, i + 1), f"psi2+{i}")])
    images[("+", m, 1)] = esum([
        bracket(g("+", m, 1), g("+", m + 1, 0)),
        _pair_series(tgt, -SH, pos_neg(1), pos_neg(2), m, pos_neg(1), 0,
                     parx(m, pos_neg(2)), "psi2+m")])
    for j in range(1, n):
        node = m + j
        images[("+", node, 1)] = esum([
            g("+", m + j + 1, 1),
            scale(g("+", m + j + 1, 0), HALF * SH),
            _pair_series(tgt, -SH, pos_neg(1), pos_neg(j + 2), pos_neg(j + 1), pos_neg(1), 1,
                         parx(pos_neg(j + 1), pos_neg(j + 2)), f"psi2+{node}")])
    # the printed display carries +h on the affine tail; the relation
    # suite forces -h (adjudicated typo)
    tail0 = SH if variant == "printed" else -SH
    images[("+", 0, 1)] = esum([
        g("+", 0, 1),
        _pair_series(tgt, tail0, pos_neg(1), 1, pos_neg(n + 1), pos_neg(1), 0,
                     parx(pos_neg(n + 1), 1), "psi2+0", extra_r=1)])

    h_tables = {}
    for i in range(1, m):
        h_tables[i] = esum([
            g("H", i, 1),
            _pair_series(tgt, SH, pos_neg(1), i, i, pos_neg(1), 0, 0, f"psi2H{i}a"),
            _pair_series(tgt, -SH, pos_neg(1), i + 1, i + 1, pos_neg(1), 0, 0, f"psi2H{i}b")])
    h_tables[m] = esum([
        g("H", m, 1), g("H", m + 1, 1),
        scale(g("H", m + 1, 0), HALF * SH),
        scale(emul(g("H", m + 1, 0), g("H", m, 0)), SH),
        _pair_series(tgt, -SH, pos_neg(1), pos_neg(2), pos_neg(2), pos_neg(1), 1, 0, "psi2Hma"),
        _pair_series(tgt, SH, pos_neg(1), m, m, pos_neg(1), 0, 0, "psi2Hmb")])
    for j in range(1, n):
        node = m + j
        h_tables[node] = esum([
            g("H", m + j + 1, 1),
            scale(g("H", m + j + 1, 0), HALF * SH),
            _pair_series(tgt, SH, pos_neg(1), pos_neg(j + 1), pos_neg(j + 1), pos_neg(1), 1, 0,
                         f"psi2H{node}a"),
            _pair_series(tgt, -SH, pos_neg(1), pos_neg(j + 2), pos_neg(j + 2), pos_neg(1), 1, 0,
                         f"psi2H{node}b")])
    h_tables[0] = esum([
        g("H", 0, 1),
        _pair_series(tgt, SH, pos_neg(1), pos_neg(n + 1), pos_neg(n + 1), pos_neg(1), 1, 0,
                     "psi2H0a"),
        _pair_series(tgt, -SH, pos_neg(1), 1, 1, pos_neg(1), 0, 0, "psi2H0b")])
    return EdgeContraction("psi2", (m, n), (m, n + 1),
                           lambda eps: eps - SH, images, h_tables)


def psi3(m: int, n: int) -> EdgeContraction:
    tgt = AffineGL(m + 1, n)
    idx = tgt.idx
    L = m + n
    g = lambda sym, node, r: Term(ONE, (_gen(0, sym, node, r, idx),))
    images = {}
    for i in range(1, L):
        images[("+", i, 0)] = mode_term(tgt.E(i + 1, i + 2, 0))
        sg = -1 if idx.parity_pos(i + 1) else 1
        images[("-", i, 0)] = mode_term(tgt.E(i + 2, i + 1, 0), const(sg))
    images[("+", 0, 0)] = mode_term(tgt.E(L + 1, 2, 1))
    images[("-", 0, 0)] = mode_term(tgt.E(2, L + 1, -1), -ONE)
    for i in range(1, L):
        images[("H", i, 0)] = g("H", i + 1, 0)
    images[("H", 0, 0)] = esum([g("H", 0, 0), g("H", 1, 0)])

    for i in range(1, L):
        pi1 = idx.parity_pos(i + 1)
        pE1 = (idx.parity_pos(i + 1) + idx.parity_pos(1)) & 1
        pE2 = (idx.parity_pos(i + 1) + idx.parity_pos(i + 2)) & 1
        sg = -1 if (pi1 + pE1 * pE2) & 1 else 1
        images[("+", i, 1)] = esum([
            g("+", i + 1, 1),
            _pair_series(tgt, const(sg) * SH, 1, i + 2, i + 1, 1, 1,
                         (idx.parity_pos(i + 1) + idx.parity_pos(i + 2)) & 1,
                         f"psi3+{i}")])
    images[("+", 0, 1)] = esum([
        bracket(g("+", 0, 0), g("+", 1, 1)),
        series(lambda s: term(SH, (tgt.E(1, 2, -s - 1), tgt.E(L + 1, 1, s + 2))),
               beta=2, lead=-1,
               par=(idx.parity_pos(L + 1) + idx.parity_pos(2)) & 1,
               deg=1, label="psi3+0")])

    h_tables = {}
    for i in range(1, L):
        h_tables[i] = esum([
            g("H", i + 1, 1),
            _pair_series(tgt, SH, 1, i + 1, i + 1, 1, 1, 0, f"psi3H{i}a"),
            _pair_series(tgt, -SH, 1, i + 2, i + 2, 1, 1, 0, f"psi3H{i}b")])
    h_tables[0] = esum([
        g("H", 0, 1), g("H", 1, 1),
        scale(emul(g("H", 0, 0), g("H", 1, 0)), SH),
        scale(g("H", 0, 0), HALF * SH),
        _pair_series(tgt, -SH, 1, 2, 2, 1, 1, 0, "psi3H0a"),
        _pair_series(tgt, SH, 1, L + 1, L + 1, 1, 1, 0, "psi3H0b")])
    return EdgeContraction("psi3", (m, n), (m + 1, n),
                           lambda eps: eps + SH, images, h_tables)


def psi4(m: int, n: int, variant: str = "adopted") -> EdgeContraction:
    tgt = AffineGL(m, n + 1)
    idx = tgt.idx
    L = m + n
    g = lambda sym, node, r: Term(ONE, (_gen(0, sym, node, r, idx),))
    images = {}
    for i in range(1, L):
        images[("+", i, 0)] = mode_term(tgt.E(i, i + 1, 0))
        sg = -1 if idx.parity_pos(i) else 1
        images[("-", i, 0)] = mode_term(tgt.E(i + 1, i, 0), const(sg))
    images[("+", 0, 0)] = mode_term(tgt.E(L, 1, 1))
    images[("-", 0, 0)] = mode_term(tgt.E(1, L, -1), -ONE)
    for i in range(1, L):
        images[("H", i, 0)] = g("H", i, 0)
    images[("H", 0, 0)] = esum([g("H", 0, 0), g("H", L, 0)])

    for i in range(1, L):
        images[("+", i, 1)] = esum([
            g("+", i, 1),
            _pair_series(tgt, SH, i, L + 1, L + 1, i + 1, 1,
                         (idx.parity_pos(i) + idx.parity_pos(i + 1)) & 1,
                         f"psi4+{i}")])
    images[("+", 0, 1)] = esum([
        bracket(g("+", L, 0), g("+", 0, 1)),
        series(lambda s: term(SH, (tgt.E(L, L + 1, -s), tgt.E(L + 1, 1, s + 1))),
               beta=1, lead=0,
               par=(idx.parity_pos(L) + idx.parity_pos(1)) & 1,
               deg=1, label="psi4+0")])

    h_tables = {}
    for i in range(1, L):
        si = -1 if idx.parity_pos(i) else 1
        si1 = -1 if idx.parity_pos(i + 1) else 1
        h_tables[i] = esum([
            g("H", i, 1),
            _pair_series(tgt, const(si) * SH, i, L + 1, L + 1, i, 1, 0, f"psi4H{i}a"),
            _pair_series(tgt, const(-si1) * SH, i + 1, L + 1, L + 1, i + 1, 1, 0,
                         f"psi4H{i}b")])
    second = L if variant != "printed" else n
    h_tables[0] = esum([
        g("H", 0, 1), g("H", L, 1),
        scale(g("H", L, 0), C * SH + Poly.rational(m - n, 2) * SH),
        scale(emul(g("H", L, 0), g("H", 0, 0)), SH),
        series(lambda s, x=second: term(-SH, (tgt.E(L, L + 1, -s - 1), tgt.E(L + 1, x, s + 1))),
               beta=1, lead=-1,
               par=(idx.parity_pos(L) + idx.parity_pos(second)) & 1,
               deg=0, label="psi4H0a"),
        _pair_series(tgt, -SH, 1, L + 1, L + 1, 1, 1, 0, "psi4H0b")])
    return EdgeContraction("psi4", (m, n), (m, n + 1),
                           lambda eps: eps, images, h_tables)


def compose_with_ev(contraction: EdgeContraction, a_param: Poly = None,
                    kappa_variant: str = "adopted"):
    """Resolve the generator atoms of a contraction through the target
    evaluation assignment; returns (source Assignment, target Assignment).
    """
    if a_param is None:
        a_param = SA
    tm, tn = contraction.tgt_m, contraction.tgt_n
    alg = AffineGL(tm, tn)
    module = VacuumModule([alg])
    target = ev_assignment(tm, tn, a_param=a_param, module=module,
                           kappa_variant=kappa_variant)

    def resolver(atom):
        if not is_gen(atom):
            return None
        _, tag, sym, node, r, par, deg = atom
        return target.images[(sym, node, r)]

    images = {k: subst_atoms(e, resolver) for k, e in contraction.images.items()}
    eps_src = contraction.eps_shift(SH * alg.level)
    asg = Assignment(contraction.src_m, contraction.src_n, eps_src, module,
                     images, name=f"ev.{contraction.name}",
                     kappa_variant=kappa_variant)
    asg.complete()
    h_tables = {node: subst_atoms(e, resolver)
                for node, e in contraction.h_tables.items()}
    return asg, h_tables


def check_h_tables(asg: Assignment, h_tables, D: int):
    """Agreement of the derived level-one Cartan images with the displayed
    tables."""
    records = []
    for node in sorted(h_tables):
        ok, fails = op_equal(asg.module, asg.Hgen(node, 1), h_tables[node], D)
        rec = {"name": f"{asg.name}:H[{node},1]-table", "status": "pass" if ok else "fail"}
        if not ok:
            w, v1, v2 = fails[0]
            rec["counterexample"] = {
                "vector": asg.module.render_word(w),
                "derived": asg.module.render_state(v1),
                "table": asg.module.render_state(v2),
            }
        records.append(rec)
    return records


# ---------------------------------------------------------------------------
# generalized block contractions and the composite pipeline
# ---------------------------------------------------------------------------

def psi1_gen_images(m1: int, n1: int, m2: int, n2: int):
    """First block contraction: source gl(m1|n1) currents keep their
    labels inside the enlarged algebra; the node-one generator acquires
    tails through the inserted rows and columns."""
    if m1 < 2 or n1 < 2:
        raise ValueError("source must have at least two even and two odd rows")
    if m2 < 0 or n2 < 0:
        raise ValueError("inserted block sizes must be nonnegative")
    tgt = AffineGL(m1 + m2, n1 + n2)
    idx = tgt.idx
    posn = lambda j: m1 + m2 + j          # target position of label -j
    images = {}
    L1 = m1 + n1
    for i in range(1, m1):
        images[("+", i, 0)] = mode_term(tgt.E(i, i + 1, 0))
        images[("-", i, 0)] = mode_term(tgt.E(i + 1, i, 0))
    images[("+", m1, 0)] = mode_term(tgt.E(m1, posn(1), 0))
    images[("-", m1, 0)] = mode_term(tgt.E(posn(1), m1, 0))
    for j in range(1, n1):
        images[("+", m1 + j, 0)] = mode_term(tgt.E(posn(j), posn(j + 1), 0))
        images[("-", m1 + j, 0)] = mode_term(tgt.E(posn(j + 1), posn(j), 0), -ONE)
    images[("+", 0, 0)] = mode_term(tgt.E(posn(n1), 1, 1))
    images[("-", 0, 0)] = mode_term(tgt.E(1, posn(n1), -1), -ONE)

    par11 = (idx.parity_pos(1) + idx.parity_pos(2)) & 1
    zs_even = tuple(range(m1 + 1, m1 + m2 + 1))
    zs_odd = tuple(posn(j) for j in range(n1 + 1, n1 + n2 + 1))
    parts = [Term(ONE, (_gen(0, "+", 1, 1, idx),))]
    if zs_even:
        parts.append(series(
            lambda v, zs=zs_even: esum([
                term(-SH, (tgt.E(1, z, -v - 1), tgt.E(z, 2, v + 1))) for z in zs]),
            beta=1, lead=-1, par=par11, deg=0, label="psi1g"))
    if zs_odd:
        parts.append(series(
            lambda v, zs=zs_odd: esum([
                term(SH, (tgt.E(1, z, -v - 1), tgt.E(z, 2, v + 1))) for z in zs]),
            beta=1, lead=-1, par=par11, deg=0, label="psi1g-odd"))
    images[("+", 1, 1)] = esum(parts)
    return images


def psi1_gen_iota(m1, n1, m2, n2):
    def fn(pos):
        return pos if pos <= m1 else pos + m2
    return fn


def psi2_gen_images(m1: int, n1: int, m2: int, n2: int, level_one_nodes=(1,)):
    """Second block contraction; the node-one images follow the displayed
    rule transported along the even rows."""
    if m2 < 2 or n2 < 2:
        raise ValueError("source must have at least two even and two odd rows")
    if m1 < 0 or n1 < 0:
        raise ValueError("inserted block sizes must be nonnegative")
    tgt = AffineGL(m1 + m2, n1 + n2)
    idx = tgt.idx
    posn = lambda j: m1 + m2 + j
    images = {}
    for i in range(1, m2):
        images[("+", i, 0)] = mode_term(tgt.E(m1 + i, m1 + i + 1, 0))
        images[("-", i, 0)] = mode_term(tgt.E(m1 + i + 1, m1 + i, 0))
    images[("+", m2, 0)] = mode_term(tgt.E(m1 + m2, posn(n1 + 1), 0))
    images[("-", m2, 0)] = mode_term(tgt.E(posn(n1 + 1), m1 + m2, 0))
    for j in range(1, n2):
        images[("+", m2 + j, 0)] = mode_term(tgt.E(posn(n1 + j), posn(n1 + j + 1), 0))
        images[("-", m2 + j, 0)] = mode_term(tgt.E(posn(n1 + j + 1), posn(n1 + j), 0), -ONE)
    images[("+", 0, 0)] = mode_term(tgt.E(posn(n1 + n2), m1 + 1, 1))
    images[("-", 0, 0)] = mode_term(tgt.E(m1 + 1, posn(n1 + n2), -1), -ONE)

    for i in level_one_nodes:
        if not 1 <= i <= m2 - 1:
            raise ValueError("level-one image only available on the even rows")
        par = (idx.parity_pos(m1 + i) + idx.parity_pos(m1 + i + 1)) & 1
        parts = [Term(ONE, (_gen(0, "+", m1 + i, 1, idx),))]
        zs_odd = tuple(posn(j) for j in range(1, n1 + 1))
        zs_even = tuple(range(1, m1 + 1))
        if zs_odd:
            parts.append(series(
                lambda v, zs=zs_odd, i=i: esum([
                    term(SH, (tgt.E(z, m1 + i + 1, -v), tgt.E(m1 + i, z, v)))
                    for z in zs]),
                beta=0, lead=0, par=par, deg=0, label=f"psi2g{i}-odd"))
        if zs_even:
            parts.append(series(
                lambda v, zs=zs_even, i=i: esum([
                    term(SH, (tgt.E(z, m1 + i + 1, -v - 1), tgt.E(m1 + i, z, v + 1)))
                    for z in zs]),
                beta=1, lead=-1, par=par, deg=0, label=f"psi2g{i}-even"))
        images[("+", i, 1)] = esum(parts)
    return images


def psi2_gen_iota(m1, n1, m2, n2):
    def fn(pos):
        if pos <= m2:
            return m1 + pos
        return m1 + m2 + n1 + (pos - m2)
    return fn


def constants(part: PartitionData, s: int, eps_variant: str = "adopted"):
    """Structure scalars attached to a partition level: the block levels,
    their partial sums, the source deformation parameter, and the
    evaluation shifts."""
    from .scalar import K as SK
    out = {"alpha": {}, "gamma": {}, "x": {}, "eps": {}, "level": {}}
    for a in range(1, part.l + 1):
        out["alpha"][a] = part.alpha(a, SK)
        out["gamma"][a] = part.gamma(a, SK)
        if eps_variant == "adopted":
            lvl = out["alpha"][a]
        elif eps_variant == "body":
            lvl = SK + const(part.N - part.u_at(a) + part.q_at(a))
        else:
            raise ValueError(eps_variant)
        out["level"][a] = lvl
        out["eps"][a] = lvl * SH
        xa = out["gamma"][a] + const(part.q_at(a) - part.q_at(s)) \
            - Poly.rational(part.u_at(a) - part.u_at(s), 2)
        out["x"][a] = xa
    return out


def delta_s_images(part: PartitionData, s: int, eps_variant: str = "adopted",
                   ev_variant: str = "adopted"):
    """The composite of the first block contraction, the coproduct stages
    and the second block contractions, evaluated factorwise: a partial
    assignment of the source Yangian over the tensor module of the first
    s blocks.

    Returns (images, module, meta)."""
    msrc = part.u_at(s) - part.u_at(s + 1)
    nsrc = part.q_at(s) - part.q_at(s + 1)
    if msrc < 2 or nsrc < 2:
        raise ValueError("block steps must be at least two on both sides")
    meta = constants(part, s, eps_variant)
    Lsrc = msrc + nsrc

    # stage s: first block contraction into the level-s algebra
    images = psi1_gen_images(msrc, nsrc, part.u_at(s + 1), part.q_at(s + 1))

    # stages a = s-1 .. 1: coproduct on the leading slot, then the second
    # block contraction into the level-a algebra
    for a in range(s - 1, 0, -1):
        m2, n2 = part.u_at(a + 1), part.q_at(a + 1)
        alg_pair = (AffineGL(m2, n2, tag=0), AffineGL(m2, n2, tag=1))
        images = {k: delta_split(e, alg_pair, 0) for k, e in images.items()}
        m1, n1 = part.u_at(a) - m2, part.q_at(a) - n2
        psim = psi2_gen_images(m1, n1, m2, n2,
                               level_one_nodes=tuple(
                                   range(1, m2)) or (1,))
        iota = psi2_gen_iota(m1, n1, m2, n2)
        tgt_idx = SuperIndexSet(m1 + m2, n1 + n2)

        def apply_psi2(atom, psim=psim, iota=iota, tgt_idx=tgt_idx):
            if not is_gen(atom):
                s_, tag, kind, x, y, par = atom
                if tag != 0:
                    return None
                nx, ny = iota(x), iota(y)
                npar = (tgt_idx.parity_pos(nx) + tgt_idx.parity_pos(ny)) & 1
                return Term(ONE, ((s_, 0, kind, nx, ny, npar),))
            _, tag, sym, node, r, par, deg = atom
            if tag != 0:
                return None
            if r == 1 and sym == "+":
                return psim[("+", node, 1)]
            raise ValueError(f"unsupported atom in the pipeline: {atom}")

        images = {k: subst_atoms(e, apply_psi2) for k, e in images.items()}

    # factorwise evaluation
    factors = [AffineGL(part.u_at(a), part.q_at(a),
                        level=meta["level"][a], tag=a - 1)
               for a in range(1, s + 1)]
    module = VacuumModule(factors)
    ev_tabs = [ev_images(f, -meta["x"][t + 1] * SH, variant=ev_variant)
               for t, f in enumerate(factors)]

    def resolve(atom):
        if not is_gen(atom):
            return None
        _, tag, sym, node, r, par, deg = atom
        return ev_tabs[tag][(sym, node, r)]

    images = {k: register_cache(subst_atoms(e, resolve))
              for k, e in images.items()}
    meta["msrc"], meta["nsrc"] = msrc, nsrc
    return images, module, meta


def expanded_level_one(part: PartitionData, s: int, module, meta):
    """The unfolded form of the pipeline image of the node-one generator:
    the factorwise evaluation terms plus the three displayed tail groups
    (coproduct, first contraction, second contraction).  Independent of
    the structural pipeline; used as a cross-check against it."""
    factors = module.factors
    u1, q1 = part.u[0], part.q[0]
    us = part.u_at(s)
    AP, BP = 1 + u1 - us, 2 + u1 - us
    from .walg import WContext, block_row_mode
    ctx = WContext(part)
    ctx.blocks = factors  # reuse the module's tagged block algebras

    def row_mode(r, x, y, t):
        return block_row_mode(ctx, r, x, y, t)

    parts = []
    # factorwise evaluation of the shifted node-one generators
    for a in range(1, s + 1):
        node = 1 + part.u_at(a) - us
        tab = ev_images(factors[a - 1], -meta["x"][a] * SH)
        parts.append(tab[("+", node, 1)])

    def pair_series(r1, x1, y1, r2, x2, y2, sh, co, extra=0):
        m1 = row_mode(r1, x1, y1, 0)
        m2 = row_mode(r2, x2, y2, 0)
        if m1 is None or m2 is None:
            return None
        par = (m1[5] + m2[5]) & 1

        def body(v, m1=m1, m2=m2, co=co, sh=sh, extra=extra):
            return term(co, ((-v - sh,) + m1[1:], (v + sh + extra,) + m2[1:]))

        return series(body, beta=sh + extra, lead=-sh, par=par, deg=extra,
                      label="exp")

    def addp(p):
        if p is not None:
            parts.append(p)

    # coproduct tails
    for r1 in range(1, s + 1):
        for r2 in range(r1 + 1, s + 1):
            for z in range(1 + part.u_at(r2) - us, 1 + u1 - us + 1):
                addp(pair_series(r1, AP, z, r2, z, BP, 0, SH))
                addp(pair_series(r1, z, BP, r2, AP, z, 1, -SH))
            for z in range(2 + u1 - us, u1 + 1):
                addp(pair_series(r1, AP, z, r2, z, BP, 1, SH))
                addp(pair_series(r1, z, BP, r2, AP, z, 0, -SH))
            for z in range(-q1, -q1 + part.q_at(r2)):
                addp(pair_series(r1, AP, z, r2, z, BP, 1, -SH))
                addp(pair_series(r1, z, BP, r2, AP, z, 0, -SH))

    # first-contraction tails
    xs_even = range(u1 - part.u_at(s + 1) + 1, u1 + 1)
    xs_odd = range(-q1, -q1 + part.q_at(s + 1))
    for r in range(1, part.l + 1):
        for x in xs_even:
            addp(pair_series(r, AP, x, r, x, BP, 1, -SH))
        for x in xs_odd:
            addp(pair_series(r, AP, x, r, x, BP, 1, SH))
    for r1 in range(1, part.l + 1):
        for r2 in range(r1 + 1, part.l + 1):
            for x in xs_even:
                addp(pair_series(r1, AP, x, r2, x, BP, 1, -SH))
                addp(pair_series(r2, AP, x, r1, x, BP, 1, -SH))
            for x in xs_odd:
                addp(pair_series(r1, AP, x, r2, x, BP, 1, SH))
                addp(pair_series(r2, AP, x, r1, x, BP, 1, SH))

    # second-contraction tails
    for r in range(1, s + 1):
        for x in range(-q1 + part.q_at(s), -q1 + part.q_at(r)):
            addp(pair_series(r, x, BP, r, AP, x, 0, SH))
        for x in range(u1 - part.u_at(r) + 1, u1 - us + 1):
            addp(pair_series(r, x, BP, r, AP, x, 1, SH))
    for r1 in range(1, s + 1):
        for r2 in range(r1 + 1, s + 1):
            for x in range(-q1 + part.q_at(s), -q1 + part.q_at(r2)):
                addp(pair_series(r2, x, BP, r1, AP, x, 0, SH))
                addp(pair_series(r1, x, BP, r2, AP, x, 0, SH))
            for x in range(u1 - part.u_at(r2) + 1, u1 - us + 1):
                addp(pair_series(r1, x, BP, r2, AP, x, 1, SH))
            for x in range(u1 - part.u_at(r1) + 1, u1 - us + 1):
                addp(pair_series(r2, x, BP, r1, AP, x, 1, SH))
    return esum(parts)


def check_main_theorem(part: PartitionData, s: int, D: int,
                       eps_variant: str = "adopted", words=None,
                       with_expanded: bool = True):
    """Both sides of the block-diagonal factorization, compared exactly on
    the tensor vacuum module."""
    from .walg import WContext, phi_images
    images, module, meta = delta_s_images(part, s, eps_variant)
    ctx = WContext(part)
    ctx.blocks = module.factors
    phi = phi_images(ctx, s)
    records = []
    msrc, nsrc = meta["msrc"], meta["nsrc"]
    for node in range(msrc + nsrc):
        for sym in ("+", "-"):
            lhs = images[(sym, node, 0)]
            rhs = phi[(sym, node, 0)]
            ok, fails = op_equal(module, lhs, rhs, D, words=words)
            rec = {"name": f"factorization-level0[{sym}{node}]",
                   "status": "pass" if ok else "fail"}
            if not ok:
                w, v1, v2 = fails[0]
                rec["counterexample"] = {
                    "vector": module.render_word(w),
                    "lhs": module.render_state(v1),
                    "rhs": module.render_state(v2),
                }
            records.append(rec)
    lhs11 = images[("+", 1, 1)]
    ok, fails = op_equal(module, lhs11, phi[("+", 1, 1)], D, words=words)
    rec = {"name": "factorization-level1[+1,1]", "status": "pass" if ok else "fail"}
    if not ok:
        w, v1, v2 = fails[0]
        rec["counterexample"] = {
            "vector": module.render_word(w),
            "lhs": module.render_state(v1),
            "rhs": module.render_state(v2),
        }
    records.append(rec)
    if with_expanded:
        expanded = expanded_level_one(part, s, module, meta)
        ok, fails = op_equal(module, lhs11, expanded, D, words=words)
        rec = {"name": "factorization-level1-expanded", "status": "pass" if ok else "fail"}
        if not ok:
            w, v1, v2 = fails[0]
            rec["counterexample"] = {
                "vector": module.render_word(w),
                "pipeline": module.render_state(v1),
                "expanded": module.render_state(v2),
            }
        records.append(rec)
    return records, meta


def check_coassoc(m: int, n: int, D: int, a_param: Poly = None, words=None):
    """Coassociativity after triple evaluation: splitting the first or the
    second slot of the two-slot images must agree on every defined
    generator."""
    if a_param is None:
        a_param = SA
    algs = [AffineGL(m, n, tag=t) for t in range(3)]
    module = VacuumModule(algs)
    L = m + n
    pair01 = (AffineGL(m, n, tag=0), AffineGL(m, n, tag=1))
    ev_tabs = [ev_images(f, a_param) for f in algs]

    def resolve(atom):
        if not is_gen(atom):
            return None
        _, tag, sym, node, r, par, deg = atom
        return ev_tabs[tag][(sym, node, r)]

    idx = SuperIndexSet(m, n)
    records = []
    labels = [("+", j, 0) for j in range(L)] + [("-", j, 0) for j in range(L)] \
        + [("+", i, 1) for i in range(1, L)]
    for key in labels:
        sym, node, r = key
        base = Term(ONE, (_gen(0, sym, node, r, idx),))
        two = delta_split(base, pair01, 0)
        left = subst_atoms(delta_split(two, pair01, 0), resolve)
        right = subst_atoms(delta_split(two, pair01, 1), resolve)
        ok, fails = op_equal(module, left, right, D, words=words)
        rec = {"name": f"coassoc[{sym}{node},{r}]",
               "status": "pass" if ok else "fail"}
        if not ok:
            w, v1, v2 = fails[0]
            rec["counterexample"] = {
                "vector": module.render_word(w),
                "split-first": module.render_state(v1),
                "split-second": module.render_state(v2),
            }
        records.append(rec)
    return records


def presentation_assignment(m: int, n: int) -> Assignment:
    """The displayed current images of the Chevalley generators, packaged
    for the level-zero relation suite."""
    from .superlie import presentation_images
    alg = AffineGL(m, n)
    module = VacuumModule([alg])
    raw = presentation_images(m, n, alg)
    images = {}
    for node, (h, xp, xm) in raw.items():
        for key, (terms, scl) in (("H", h), ("+", xp), ("-", xm)):
            parts = [mode_term(mo, c) for mo, c in terms]
            if scl:
                parts.append(scalar_expr(scl))
            images[(key, node, 0)] = esum(parts)
    return Assignment(m, n, alg.level * SH, module, images,
                      name=f"presentation({m}|{n})")
