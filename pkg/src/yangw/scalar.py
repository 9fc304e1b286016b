"""Exact coefficient arithmetic: sparse polynomials over Q in the symbols h, c, k, a.

Every coefficient that appears anywhere in the library is a :class:`Poly`.
The symbol set is fixed (h = the deformation step, c = the central level,
k = the inner-product level, a = the evaluation shift), so exponent vectors
are dense length-4 tuples.  The epsilon parameter is never stored: it is
represented as c*h throughout.
"""

from __future__ import annotations

from fractions import Fraction

SYMBOLS = ("h", "c", "k", "a")
_NSYM = 4
_ZEXP = (0, 0, 0, 0)


class Poly:
    """Immutable sparse polynomial: map from exponent tuple to Fraction.

    Zero coefficients are never stored, so equality is plain dict equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms must already be canonical (no zero values); builders below
        # guarantee this, so the constructor does not re-filter.
        self.terms = terms or {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(value) -> "Poly":
        f = Fraction(value)
        return Poly({_ZEXP: f}) if f else Poly({})

    @staticmethod
    def rational(p, q) -> "Poly":
        f = Fraction(p, q)
        return Poly({_ZEXP: f}) if f else Poly({})

    @staticmethod
    def symbol(name: str) -> "Poly":
        e = [0] * _NSYM
        e[SYMBOLS.index(name)] = 1
        return Poly({tuple(e): Fraction(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, v in other.terms.items():
            w = out.get(e)
            if w is None:
                out[e] = v
            else:
                w = w + v
                if w:
                    out[e] = w
                else:
                    del out[e]
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly({e: -v for e, v in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                return ZERO
            return Poly({e: v * f for e, v in self.terms.items()})
        if not self.terms or not other.terms:
            return ZERO
        out = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                v = v1 * v2
                w = out.get(e)
                if w is None:
                    out[e] = v
                else:
                    w = w + v
                    if w:
                        out[e] = w
                    else:
                        del out[e]
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution ---------------------------------------------------

    def substitute(self, bindings: dict) -> "Poly":
        """Simultaneous substitution symbol -> Poly; unbound symbols stay."""
        images = []
        for i, name in enumerate(SYMBOLS):
            if name in bindings:
                images.append(bindings[name])
            else:
                images.append(Poly.symbol(name))
        out = ZERO
        for e, v in self.terms.items():
            term = Poly({_ZEXP: v})
            for i, power in enumerate(e):
                if power:
                    term = term * (images[i] ** power)
            out = out + term
        return out

    # -- rendering ------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, graded-lexicographic term order."""
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        parts = []
        for e in keys:
            v = self.terms[e]
            mono = "*".join(
                (s if p == 1 else f"{s}^{p}")
                for s, p in zip(SYMBOLS, e)
                if p
            )
            if mono:
                body = mono if abs(v) == 1 else f"{v}*{mono}"
                if v < 0 and abs(v) == 1:
                    body = "-" + body
            else:
                body = str(v)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += ("+" + p) if not p.startswith("-") else p
        return out

    def __repr__(self):
        return f"Poly({self.render()})"


ZERO = Poly({})
ONE = Poly.const(1)
HALF = Poly.rational(1, 2)
H = Poly.symbol("h")
C = Poly.symbol("c")
K = Poly.symbol("k")
A = Poly.symbol("a")
EPS = C * H  # epsilon is always represented as c*h


def const(v) -> Poly:
    return Poly.const(v)
