"""Smooth vacuum modules over tensor products of affinized algebras.

Vectors are dicts word -> Poly, where words are normal-ordered tuples of
strictly negative modes applied to the (tensor) vacuum.  Mode application
straightens through the factor brackets and drops annihilating tails; the
results are memoized per (mode, word), which is what makes the relation
suites affordable.
"""

from __future__ import annotations

from .scalar import Poly, ZERO, ONE
from .pbw import straighten, add_into, tensor_bracket, word_degree


class VacuumModule:
    def __init__(self, factors):
        """``factors``: list of algebras (one per tensor slot, tags must
        equal the list position)."""
        self.factors = list(factors)
        for t, f in enumerate(self.factors):
            if f.tag != t:
                raise ValueError("factor tag does not match its slot")
        self.bracket = tensor_bracket(self.factors)
        self._apply_cache = {}
        self._basis_cache = {}

    # -- vectors ---------------------------------------------------------

    def vacuum(self) -> dict:
        return {(): ONE}

    def apply_mode(self, mode, word) -> dict:
        key = (mode, word)
        cached = self._apply_cache.get(key)
        if cached is None:
            cached = straighten(self.bracket, (mode,) + word, ONE, vacuum=True)
            self._apply_cache[key] = cached
        return cached

    def apply(self, mode, state: dict) -> dict:
        out = {}
        for w, c in state.items():
            add_into(out, self.apply_mode(mode, w), c)
        return out

    def scale(self, state: dict, c: Poly) -> dict:
        if not c:
            return {}
        return {w: v * c for w, v in state.items()}

    # -- basis -----------------------------------------------------------

    def negative_modes(self, max_degree: int):
        out = []
        for f in self.factors:
            for d in range(1, max_degree + 1):
                out.extend(f.modes(-d))
        out.sort()
        return out

    def basis_words(self, degree: int):
        """All normal-ordered words of the given total degree."""
        if degree in self._basis_cache:
            return self._basis_cache[degree]
        if degree == 0:
            words = [()]
        else:
            modes = self.negative_modes(degree)
            words = []

            def rec(start, remaining, acc):
                if remaining == 0:
                    words.append(tuple(acc))
                    return
                for idx in range(start, len(modes)):
                    m = modes[idx]
                    d = -m[0]
                    if d > remaining:
                        continue
                    if acc and acc[-1] == m and (m[5] & 1):
                        continue
                    acc.append(m)
                    rec(idx, remaining - d, acc)
                    acc.pop()

            rec(0, degree, [])
            words.sort()
        self._basis_cache[degree] = words
        return words

    def basis_up_to(self, degree: int):
        out = []
        for d in range(degree + 1):
            out.extend(self.basis_words(d))
        return out

    # -- rendering ---------------------------------------------------------

    def render_word(self, word) -> str:
        if not word:
            return "|0>"
        return " ".join(self.factors[m[1]].render_mode(m) for m in word) + " |0>"

    def render_state(self, state: dict) -> str:
        if not state:
            return "0"
        parts = []
        for w in sorted(state):
            parts.append(f"({state[w].render()}) {self.render_word(w)}")
        return " + ".join(parts)


def state_degree(state: dict) -> int:
    return max((word_degree(w) for w in state), default=0)


def states_equal(a: dict, b: dict) -> bool:
    if len(a) != len(b):
        return False
    for w, c in a.items():
        if b.get(w) != c:
            return False
    return True
