"""A diagram for the link L_c of a cubic form, by braid-tangle substitution.

Start from n parallel strands (the closure is the 0-framed unlink) and,
for each monomial, stack a pure tangle on the strands involved:

* x_i:         a long trefoil, the closure of sigma^3 on strand i and an
               auxiliary strand that is closed off locally;
* x_i x_j:     a Whitehead clasp, sigma_1 sigma_2^-1 sigma_1 sigma_2^-1 sigma_1
               on strands i, j and a locally closed auxiliary strand;
* x_i x_j x_k: the Borromean braid (sigma_1 sigma_2^-1)^3 on strands i, j, k.

Target strands are brought next to each other by a conjugating braid that
is undone after the tangle, so every block is pure and linking numbers stay
zero. The result is checked against c: the Arf invariant of the sublink
indexed by x must equal c(x) for every x.
"""

from __future__ import annotations

from .errors import BoundExceededError, InconsistentDataError
from .invariants import arf_hoste_murakami
from .pd import PDLink, _relabel, _UnionFind, delete_components
from .sat import CubicForm

__all__ = ["cubic_to_pdlink", "TREFOIL", "WHITEHEAD", "BORROMEAN"]

TREFOIL = (1, 1, 1)
WHITEHEAD = (1, -2, 1, -2, 1)
BORROMEAN = (1, -2, 1, -2, 1, -2)


class _Builder:
    def __init__(self, n: int):
        self._next = 0
        self.start = [self._fresh() for _ in range(n)]
        self.cur = list(self.start)
        self.crossings: list[tuple] = []
        self.uf = _UnionFind()

    def _fresh(self) -> int:
        self._next += 1
        return self._next

    def gen(self, g: int) -> None:
        k = abs(g) - 1
        left, right = self.cur[k], self.cur[k + 1]
        a, b = self._fresh(), self._fresh()
        if g > 0:
            self.crossings.append((right, a, left, b, 1))
            self.cur[k], self.cur[k + 1] = a, b
        else:
            self.crossings.append((left, a, right, b, -1))
            self.cur[k], self.cur[k + 1] = b, a

    def word(self, word, shift: int) -> None:
        for g in word:
            self.gen(g + shift if g > 0 else g - shift)

    def tangle(self, targets: list[int], word, aux: bool) -> None:
        """Apply ``word`` to the strands ``targets`` (0-based positions)."""
        n = len(self.cur)
        conj = []
        for r, t in enumerate(sorted(targets, reverse=True)):
            # move position t (1-based t+1) to position n - r
            conj += list(range(t + 1, n - r))
        self.word(conj, 0)
        top = None
        if aux:
            top = self._fresh()
            self.cur.append(top)
        width = len(targets) + (1 if aux else 0)
        self.word(word, len(self.cur) - width)
        if aux:
            self.uf.union(self.cur.pop(), top)
        self.word([-g for g in reversed(conj)], 0)

    def link(self) -> PDLink:
        for s, e in zip(self.start, self.cur):
            self.uf.union(s, e)
        return _relabel(self.crossings, self.start, self.uf, None)


def cubic_to_pdlink(c: CubicForm, *, validate: bool = True, max_components: int = 4) -> PDLink:
    """A 0-framed diagram whose sublink x has Arf invariant c(x)."""
    if c.n > max_components:
        raise BoundExceededError("components of a cubic-form diagram", c.n, max_components)
    b = _Builder(c.n)
    for i in sorted(c.linear):
        b.tangle([i - 1], TREFOIL, aux=True)
    for i, j in sorted(c.quadratic):
        b.tangle([i - 1, j - 1], WHITEHEAD, aux=True)
    for i, j, k in sorted(c.cubic):
        b.tangle([i - 1, j - 1, k - 1], BORROMEAN, aux=False)
    link = b.link()
    if link.n_components != c.n:
        raise InconsistentDataError(f"construction produced {link.n_components} components, expected {c.n}")
    if validate:
        for mask in range(1 << c.n):
            x = [(mask >> i) & 1 for i in range(c.n)]
            got = arf_hoste_murakami(delete_components(link, mask))
            if got != c.evaluate(x):
                raise InconsistentDataError(f"sublink {x} has Arf {got} but c(x) = {c.evaluate(x)}")
    return link
