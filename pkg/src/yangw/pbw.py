"""Normal ordering for enveloping superalgebras of mode algebras.

Words are tuples of modes; elements are dicts word -> Poly.  The global
monomial order is plain tuple comparison on modes (exponent ascending,
then tensor tag, then kind and positions).  Straightening runs on an
explicit worklist; odd squares reduce eagerly through x*x = [x,x]/2.
Modes with different tensor tags carry no bracket and swap with the
Koszul sign only.
"""

from __future__ import annotations

from .scalar import Poly, ZERO, HALF


def tensor_bracket(factors):
    """Bracket callback for a tensor product of mode algebras (by tag)."""

    def bracket(x, y):
        if x[1] != y[1]:
            return (), ZERO
        return factors[x[1]].bracket(x, y)

    return bracket


def straighten(bracket, word, coeff: Poly, vacuum: bool = False) -> dict:
    """Normal form of coeff * word, as a dict word -> Poly.

    With ``vacuum`` set, words whose rightmost mode has a nonnegative
    exponent are dropped (they annihilate the vacuum vector).
    """
    out = {}
    if not coeff:
        return out
    stack = [(list(word), coeff)]
    while stack:
        w, c = stack.pop()
        if vacuum and w and w[-1][0] >= 0:
            continue
        i = len(w) - 2
        ev = -1
        while i >= 0:
            x = w[i]
            y = w[i + 1]
            if x > y:
                ev = i
                break
            if x == y and (x[5] & 1):
                ev = i
                break
            i -= 1
        if ev < 0:
            key = tuple(w)
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
            continue
        x = w[ev]
        y = w[ev + 1]
        head = w[:ev]
        tail = w[ev + 2:]
        if x == y:
            # odd square: x*x = [x,x]/2
            terms, scalar = bracket(x, x)
            ch = c * HALF
            for mz, q in terms:
                stack.append((head + [mz] + tail, ch * q))
            if scalar:
                stack.append((head + tail, ch * scalar))
        else:
            swapped = head + [y, x] + tail
            stack.append((swapped, -c if (x[5] & y[5]) else c))
            terms, scalar = bracket(x, y)
            for mz, q in terms:
                stack.append((head + [mz] + tail, c * q))
            if scalar:
                stack.append((head + tail, c * scalar))
    # canonical form: drop exact zeros
    return {k: v for k, v in out.items() if v}


def add_into(acc: dict, element: dict, scale: Poly = None):
    for w, c in element.items():
        if scale is not None:
            c = c * scale
            if not c:
                continue
        prev = acc.get(w)
        s = c if prev is None else prev + c
        if s:
            acc[w] = s
        elif prev is not None:
            del acc[w]
    return acc


def pbw_mul(bracket, u: dict, v: dict, vacuum: bool = False) -> dict:
    out = {}
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            add_into(out, straighten(bracket, w1 + w2, c1 * c2, vacuum))
    return out


def word_parity(word) -> int:
    p = 0
    for m in word:
        p ^= m[5] & 1
    return p


def pbw_bracket(bracket, u: dict, v: dict, vacuum: bool = False) -> dict:
    """Supercommutator [u, v]; inputs must be parity homogeneous."""
    pu = _parity_of(u)
    pv = _parity_of(v)
    out = pbw_mul(bracket, u, v, vacuum)
    sign = Poly.const(-1 if not (pu and pv) else 1)
    add_into(out, pbw_mul(bracket, v, u, vacuum), sign)
    return out


def pbw_anti(bracket, u: dict, v: dict, vacuum: bool = False) -> dict:
    """Anticommutator {u, v} = uv + vu."""
    out = pbw_mul(bracket, u, v, vacuum)
    add_into(out, pbw_mul(bracket, v, u, vacuum))
    return out


def _parity_of(u: dict) -> int:
    parities = {word_parity(w) for w in u}
    if len(parities) > 1:
        raise ValueError("element is not parity homogeneous")
    return parities.pop() if parities else 0


def word_degree(word) -> int:
    """Total module degree (minus the exponent sum)."""
    return -sum(m[0] for m in word)


def element_degree(u: dict) -> int:
    return max((word_degree(w) for w in u), default=0)


def render_element(u: dict, render_mode) -> str:
    if not u:
        return "0"
    parts = []
    for w in sorted(u):
        c = u[w]
        body = " ".join(render_mode(m) for m in w) if w else "1"
        parts.append(f"({c.render()}) {body}")
    return " + ".join(parts)
