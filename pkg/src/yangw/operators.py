"""Expression trees over completed enveloping algebras, with exact
evaluation against vacuum-module vectors.

Atoms are either mode tuples or generator placeholders
``('G', tag, sym, node, r, par, deg)`` that later substitution resolves
into current expressions.  Node kinds: Term (scaled product of atoms),
Sum, Prod, Bracket/anticommutator, and Series.

A Series is sum_{v>=0} body(v) (or over all integers when ``alpha`` is
set).  Its body must end in a factor whose exponent is v + beta, so on a
vector of degree d everything beyond v = d - beta acts by zero; for
two-sided series the leading factor has exponent -v + alpha, cutting the
other tail at v = alpha - d.  Every series in scope has this shape.
"""

from __future__ import annotations

from .scalar import Poly, ZERO, ONE, const
from .smodule import state_degree, states_equal


def gen(tag: int, sym: str, node: int, r: int, par: int, deg: int):
    return ("G", tag, sym, node, r, par, deg)


def is_gen(atom) -> bool:
    return atom[0] == "G"


def atom_parity(atom) -> int:
    return atom[5] if not is_gen(atom) else atom[5]


def atom_degree(atom) -> int:
    return atom[0] if not is_gen(atom) else atom[6]


class Term:
    __slots__ = ("c", "atoms", "par", "deg", "ckey")

    def __init__(self, c: Poly, atoms=()):
        self.ckey = None
        self.c = c
        self.atoms = tuple(atoms)
        p = 0
        d = 0
        for a in self.atoms:
            p ^= atom_parity(a) & 1
            d += atom_degree(a)
        self.par = p
        self.deg = d

    def is_zero(self):
        return not self.c


class Sum:
    __slots__ = ("parts", "par", "deg", "ckey")

    def __init__(self, parts):
        self.ckey = None
        self.parts = tuple(parts)
        pars = {p.par for p in self.parts}
        degs = {p.deg for p in self.parts}
        if len(pars) > 1 or len(degs) > 1:
            raise ValueError("inhomogeneous sum")
        self.par = pars.pop() if pars else 0
        self.deg = degs.pop() if degs else 0


class Prod:
    __slots__ = ("parts", "par", "deg", "ckey")

    def __init__(self, parts):
        self.ckey = None
        self.parts = tuple(parts)
        self.par = 0
        self.deg = 0
        for p in self.parts:
            self.par ^= p.par
            self.deg += p.deg


class Bracket:
    __slots__ = ("a", "b", "anti", "par", "deg", "ckey")

    def __init__(self, a, b, anti=False):
        self.ckey = None
        self.a = a
        self.b = b
        self.anti = anti
        self.par = a.par ^ b.par
        self.deg = a.deg + b.deg


class Series:
    __slots__ = ("build", "beta", "lead", "bilateral", "par", "deg", "label", "ckey")

    def __init__(self, build, beta: int, lead: int, bilateral: bool = False,
                 par: int = 0, deg: int = 0, label: str = ""):
        self.ckey = None
        self.build = build
        self.beta = beta          # rightmost factor exponent is v + beta
        self.lead = lead          # leftmost factor exponent is -v + lead
        self.bilateral = bilateral
        self.par = par
        self.deg = deg
        self.label = label


EXPR_ZERO = Term(ZERO, ())


def is_zero_expr(e) -> bool:
    return isinstance(e, Term) and not e.c


# -- smart constructors ---------------------------------------------------

def term(c: Poly, atoms=()) -> Term:
    return Term(c, atoms)


def scalar_expr(c: Poly) -> Term:
    return Term(c, ())


def mode_term(mode, c: Poly = ONE) -> Term:
    return Term(c, (mode,))


def esum(parts) -> "Sum | Term":
    flat = []
    for p in parts:
        if is_zero_expr(p):
            continue
        if isinstance(p, Sum):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if not flat:
        return EXPR_ZERO
    if len(flat) == 1:
        return flat[0]
    return Sum(flat)


def emul(a, b):
    """Product of two expressions, distributing over finite sums."""
    if is_zero_expr(a) or is_zero_expr(b):
        return EXPR_ZERO
    if isinstance(a, Term) and isinstance(b, Term):
        return Term(a.c * b.c, a.atoms + b.atoms)
    if isinstance(a, Sum):
        return esum([emul(p, b) for p in a.parts])
    if isinstance(b, Sum):
        return esum([emul(a, p) for p in b.parts])
    parts = []
    for x in (a, b):
        if isinstance(x, Prod):
            parts.extend(x.parts)
        else:
            parts.append(x)
    return Prod(parts)


def scale(expr, c: Poly):
    if isinstance(c, int):
        c = const(c)
    if not c:
        return EXPR_ZERO
    if isinstance(expr, Term):
        return Term(expr.c * c, expr.atoms)
    if isinstance(expr, Sum):
        return esum([scale(p, c) for p in expr.parts])
    if isinstance(expr, Prod):
        return Prod((scale(expr.parts[0], c),) + expr.parts[1:])
    if isinstance(expr, Bracket):
        return Bracket(scale(expr.a, c), expr.b, expr.anti)
    if isinstance(expr, Series):
        b = expr.build
        return Series(lambda v, _b=b, _c=c: scale(_b(v), _c),
                      expr.beta, expr.lead, expr.bilateral,
                      expr.par, expr.deg, expr.label)
    raise TypeError(type(expr))


def bracket(a, b, anti=False):
    if is_zero_expr(a) or is_zero_expr(b):
        return EXPR_ZERO
    return Bracket(a, b, anti)


def series(build, beta, lead, bilateral=False, par=0, deg=0, label=""):
    return Series(build, beta, lead, bilateral, par, deg, label)


# -- structural maps -------------------------------------------------------

def subst_atoms(expr, fn):
    """Replace atoms by expressions.  ``fn(atom)`` returns an Expr or None
    to keep the atom unchanged.  Multiplicative on Terms."""
    if isinstance(expr, Term):
        out = Term(expr.c, ())
        for a in expr.atoms:
            img = fn(a)
            if img is None:
                img = Term(ONE, (a,))
            out = emul(out, img)
        return out
    if isinstance(expr, Sum):
        return esum([subst_atoms(p, fn) for p in expr.parts])
    if isinstance(expr, Prod):
        out = subst_atoms(expr.parts[0], fn)
        for p in expr.parts[1:]:
            out = emul(out, subst_atoms(p, fn))
        return out
    if isinstance(expr, Bracket):
        return bracket(subst_atoms(expr.a, fn), subst_atoms(expr.b, fn), expr.anti)
    if isinstance(expr, Series):
        b = expr.build
        return Series(lambda v, _b=b: subst_atoms(_b(v), fn),
                      expr.beta, expr.lead, expr.bilateral,
                      expr.par, expr.deg, expr.label)
    raise TypeError(type(expr))


def map_modes(expr, fn):
    """Relabel modes one-to-one (tags, embeddings); Gen atoms pass through
    unless fn handles them."""

    def sub(a):
        img = fn(a)
        if img is None:
            return None
        if isinstance(img, tuple):
            return Term(ONE, (img,))
        return img

    return subst_atoms(expr, sub)


def collect_gens(expr, acc=None):
    if acc is None:
        acc = set()
    if isinstance(expr, Term):
        for a in expr.atoms:
            if is_gen(a):
                acc.add(a)
    elif isinstance(expr, Sum) or isinstance(expr, Prod):
        for p in expr.parts:
            collect_gens(p, acc)
    elif isinstance(expr, Bracket):
        collect_gens(expr.a, acc)
        collect_gens(expr.b, acc)
    elif isinstance(expr, Series):
        collect_gens(expr.build(0), acc)
    return acc


# -- evaluation ------------------------------------------------------------

_CKEY = [0]
_CREGISTRY = []


def register_cache(expr):
    """Mark an expression for per-basis-word result caching; worthwhile
    for generator images shared across many relation instances."""
    if getattr(expr, "ckey", None) is None:
        _CKEY[0] += 1
        expr.ckey = _CKEY[0]
        _CREGISTRY.append(expr)
    return expr


def eval_expr(module, expr, state: dict) -> dict:
    if not state:
        return {}
    ck = getattr(expr, "ckey", None)
    if ck is not None:
        from .pbw import add_into
        cache = module._apply_cache
        out = {}
        for w, c in state.items():
            key = (ck, w)
            hit = cache.get(key)
            if hit is None:
                hit = _eval_core(module, expr, {w: ONE})
                cache[key] = hit
            add_into(out, hit, c)
        return out
    return _eval_core(module, expr, state)


def _eval_core(module, expr, state: dict) -> dict:
    if not state:
        return {}
    if isinstance(expr, Term):
        if not expr.c:
            return {}
        cur = state
        for a in reversed(expr.atoms):
            if is_gen(a):
                raise ValueError(f"unresolved generator atom {a}")
            cur = module.apply(a, cur)
            if not cur:
                return {}
        return module.scale(cur, expr.c)
    if isinstance(expr, Sum):
        out = {}
        from .pbw import add_into
        for p in expr.parts:
            add_into(out, eval_expr(module, p, state))
        return out
    if isinstance(expr, Prod):
        cur = state
        for p in reversed(expr.parts):
            cur = eval_expr(module, p, cur)
            if not cur:
                return {}
        return cur
    if isinstance(expr, Bracket):
        from .pbw import add_into
        ab = eval_expr(module, expr.a, eval_expr(module, expr.b, state))
        ba = eval_expr(module, expr.b, eval_expr(module, expr.a, state))
        sign = 1 if expr.anti else (-1 if not (expr.a.par and expr.b.par) else 1)
        out = dict(ab)
        add_into(out, ba, const(sign))
        return out
    if isinstance(expr, Series):
        from .pbw import add_into
        d = state_degree(state)
        hi = d - expr.beta
        lo = expr.lead - d if expr.bilateral else 0
        out = {}
        for v in range(lo, hi + 1):
            body = expr.build(v)
            add_into(out, eval_expr(module, body, state))
        return out
    raise TypeError(type(expr))


def eval_series_wide(module, expr, state, extra: int):
    """Series evaluation with the cutoff widened by ``extra`` on both
    sides; used by the truncation-soundness checks."""
    from .pbw import add_into
    d = state_degree(state)
    hi = d - expr.beta + extra
    lo = expr.lead - d - extra if expr.bilateral else 0
    out = {}
    for v in range(lo, hi + 1):
        add_into(out, eval_expr(module, expr.build(v), state))
    return out


def op_equal(module, e1, e2, D: int, max_fail: int = 1, words=None):
    """Compare two operators on every basis vector of degree <= D.

    Returns (ok, failures) with failures a list of
    (word, value_of_e1, value_of_e2).
    """
    failures = []
    for w in (words if words is not None else module.basis_up_to(D)):
        st = {w: ONE}
        v1 = eval_expr(module, e1, st)
        v2 = eval_expr(module, e2, st)
        if not states_equal(v1, v2):
            failures.append((w, v1, v2))
            if len(failures) >= max_fail:
                return False, failures
    return not failures, failures


def op_is_zero(module, e, D: int, max_fail: int = 1, words=None):
    failures = []
    for w in (words if words is not None else module.basis_up_to(D)):
        st = {w: ONE}
        v = eval_expr(module, e, st)
        if v:
            failures.append((w, v, {}))
            if len(failures) >= max_fail:
                return False, failures
    return not failures, failures


# -- the transpose anti-automorphism ---------------------------------------

def omega_tilde_mode(mode, idx, order: str = "position"):
    """Image of a current mode under the transpose anti-automorphism,
    as (mode, sign)."""
    s, tag, kind, a, b, par = mode
    if kind != 0:
        raise ValueError("transpose is defined on gl currents only")
    if order == "position":
        flip = a > b
    elif order == "label":
        flip = idx.label(a) > idx.label(b)
    else:
        raise ValueError(order)
    sign = -1 if (flip and par) else 1
    return (-s, tag, kind, b, a, par), sign


def reversal_sign(parities) -> int:
    odd = sum(1 for p in parities if p & 1)
    return -1 if (odd * (odd - 1) // 2) % 2 else 1


def omega_tilde_expr(expr, idx_of_tag, order: str = "position"):
    """Anti-automorphism on current expressions: products reverse with the
    Koszul sign, modes transpose, series map termwise."""
    if isinstance(expr, Term):
        sign = reversal_sign([atom_parity(a) for a in expr.atoms])
        atoms = []
        for a in reversed(expr.atoms):
            if is_gen(a):
                raise ValueError("transpose over unresolved generator atoms")
            m, sg = omega_tilde_mode(a, idx_of_tag[a[1]], order)
            sign *= sg
            atoms.append(m)
        return Term(expr.c * const(sign), atoms)
    if isinstance(expr, Sum):
        return esum([omega_tilde_expr(p, idx_of_tag, order) for p in expr.parts])
    if isinstance(expr, Prod):
        # reverse the factor order, with the Koszul sign of the block swap
        parts = list(expr.parts)
        sign = reversal_sign([p.par for p in parts])
        out = [omega_tilde_expr(p, idx_of_tag, order) for p in reversed(parts)]
        res = out[0]
        for p in out[1:]:
            res = emul(res, p)
        return scale(res, const(sign))
    if isinstance(expr, Bracket):
        # pi([x, y]) = -[pi x, pi y], pi({x, y}) = {pi x, pi y}
        img = Bracket(omega_tilde_expr(expr.a, idx_of_tag, order),
                      omega_tilde_expr(expr.b, idx_of_tag, order), expr.anti)
        return img if expr.anti else scale(img, const(-1))
    if isinstance(expr, Series):
        b = expr.build
        return Series(lambda v, _b=b: omega_tilde_expr(_b(v), idx_of_tag, order),
                      beta=-expr.lead, lead=-expr.beta, bilateral=expr.bilateral,
                      par=expr.par, deg=-expr.deg, label=expr.label + "~")
    raise TypeError(type(expr))


def render_expr(expr, render_mode=None) -> str:
    rm = render_mode or (lambda m: str(m))

    def r(e):
        if isinstance(e, Term):
            body = " ".join(
                (f"G{a[1:]}" if is_gen(a) else rm(a)) for a in e.atoms
            ) or "1"
            return f"({e.c.render()})*{body}"
        if isinstance(e, Sum):
            return " + ".join(r(p) for p in e.parts)
        if isinstance(e, Prod):
            return " . ".join(f"({r(p)})" for p in e.parts)
        if isinstance(e, Bracket):
            op = "{,}" if e.anti else "[,]"
            return f"{op}({r(e.a)}; {r(e.b)})"
        if isinstance(e, Series):
            return f"Series[{e.label}](v=0: {r(e.build(0))})"
        return "?"

    return r(expr)
