"""Oriented, framed link diagrams in planar-diagram (PD) code.

Each crossing is a 4-tuple of arc ids ``(a, b, c, d)`` listed clockwise,
starting from the incoming under-arc, plus a sign. The under-strand runs
a -> c. At a positive crossing the over-strand runs b -> d, at a negative
one d -> b. Internally crossings are kept as ``(ui, uo, oi, oo, sign)``:
under-in, under-out, over-in, over-out.

An arc id that appears in no crossing stands for a crossingless circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, ValidationError

__all__ = [
    "PDLink",
    "from_braid",
    "linking_matrix",
    "delete_components",
    "split_union",
    "mirror",
    "reverse_component",
    "faces",
    "is_planar",
    "reidemeister1",
    "reidemeister2",
    "to_external",
    "to_internal",
]

Crossing = tuple  # (ui, uo, oi, oo, sign)


def to_internal(a, b, c, d, sign) -> Crossing:
    if sign == 1:
        return (a, c, b, d, 1)
    if sign == -1:
        return (a, c, d, b, -1)
    raise ValidationError("E_SIGN", "crossing", f"sign must be +1 or -1, got {sign}")


def to_external(x: Crossing) -> tuple:
    ui, uo, oi, oo, s = x
    return (ui, oi, uo, oo, 1) if s == 1 else (ui, oo, uo, oi, -1)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != x:
            self.parent[x] = self.parent.setdefault(p, p)
            x, p = p, self.parent[p]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _trace_components(crossings: Sequence[Crossing], arcs: Iterable[int]) -> list[list[int]]:
    """Arc cycles in orientation order, ordered by their smallest arc id."""
    nxt = {}
    for ui, uo, oi, oo, _ in crossings:
        nxt[ui] = uo
        nxt[oi] = oo
    seen = set()
    cycles = []
    for start in sorted(arcs):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        a = nxt.get(start, start)
        while a != start:
            cyc.append(a)
            seen.add(a)
            a = nxt[a]
        cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class PDLink:
    """A framed oriented link diagram.

    ``crossings`` are internal tuples, ``component_of_arc`` maps every arc id
    to a component index in ``0..n-1`` and ``framings`` has length n.
    """

    crossings: tuple
    component_of_arc: Mapping[int, int]
    framings: tuple

    def __init__(self, crossings, component_of_arc=None, framings=None, *, free_arcs=(), external=True):
        xs = []
        for k, x in enumerate(crossings):
            x = tuple(int(v) for v in x)
            if len(x) != 5:
                raise ValidationError("E_CROSSING_SHAPE", f"crossings[{k}]", "expected (a, b, c, d, sign)")
            xs.append(to_internal(*x) if external else x)
        xs = tuple(xs)

        incoming: dict[int, int] = {}
        outgoing: dict[int, int] = {}
        for k, (ui, uo, oi, oo, _) in enumerate(xs):
            for arc, side in ((ui, incoming), (oi, incoming), (uo, outgoing), (oo, outgoing)):
                if arc in side:
                    kind = "enters" if side is incoming else "leaves"
                    raise ValidationError(
                        "E_ARC_PAIRING", f"crossings[{k}]", f"arc {arc} {kind} more than one crossing slot"
                    )
                side[arc] = k
        if set(incoming) != set(outgoing):
            bad = min(set(incoming) ^ set(outgoing))
            raise ValidationError(
                "E_ARC_PAIRING", "crossings", f"arc {bad} must occur exactly twice, once entering and once leaving"
            )
        arcs = set(incoming)
        if component_of_arc is not None:
            arcs |= {int(a) for a in component_of_arc}
        arcs |= {int(a) for a in free_arcs}

        cycles = _trace_components(xs, arcs)
        if component_of_arc is None:
            comp = {a: i for i, cyc in enumerate(cycles) for a in cyc}
        else:
            comp = {int(a): int(c) for a, c in component_of_arc.items()}
            missing = arcs - set(comp)
            if missing:
                raise ValidationError("E_COMPONENT_MAP", "component_of_arc", f"arc {min(missing)} has no component")
            labels = []
            for cyc in cycles:
                cs = {comp[a] for a in cyc}
                if len(cs) != 1:
                    raise ValidationError(
                        "E_COMPONENT_MAP", "component_of_arc", f"arcs {cyc} form one closed strand but carry labels {sorted(cs)}"
                    )
                labels.append(cs.pop())
            if sorted(labels) != list(range(len(cycles))):
                raise ValidationError(
                    "E_COMPONENT_MAP", "component_of_arc", f"component labels {sorted(labels)} must be 0..{len(cycles) - 1}, one per strand"
                )
        n = len(cycles)
        if framings is None:
            framings = (0,) * n
        framings = tuple(int(f) for f in framings)
        if len(framings) != n:
            raise DimensionError(f"{len(framings)} framings given for {n} components")
        object.__setattr__(self, "crossings", xs)
        object.__setattr__(self, "component_of_arc", dict(sorted(comp.items())))
        object.__setattr__(self, "framings", framings)

    # basic data -------------------------------------------------------------
    @property
    def n_components(self) -> int:
        return len(self.framings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> list[int]:
        return list(self.component_of_arc)

    def free_arcs(self) -> list[int]:
        used = {a for x in self.crossings for a in x[:4]}
        return [a for a in self.component_of_arc if a not in used]

    def pd_code(self) -> list[tuple]:
        """Crossings in the external clockwise form."""
        return [to_external(x) for x in self.crossings]

    def components(self) -> list[list[int]]:
        """Arc ids of each component, in orientation order."""
        cycles = _trace_components(self.crossings, self.component_of_arc)
        out: list[list[int]] = [[] for _ in range(self.n_components)]
        for cyc in cycles:
            out[self.component_of_arc[cyc[0]]] = cyc
        return out

    def writhe(self) -> int:
        return sum(x[4] for x in self.crossings)

    def with_framings(self, framings: Sequence[int]) -> "PDLink":
        return PDLink(self.crossings, self.component_of_arc, framings, external=False)

    def __repr__(self) -> str:
        return f"PDLink(crossings={self.pd_code()}, n={self.n_components}, framings={list(self.framings)})"


# constructors ---------------------------------------------------------------

def from_braid(word: Sequence[int], strands: int, framings: Sequence[int] | None = None) -> PDLink:
    """Closure of a braid word; generator k > 0 is sigma_k, -k its inverse.

    At sigma_k the strand in position k passes over the strand in position
    k + 1 as they swap places.
    """
    strands = int(strands)
    if strands < 1:
        raise DimensionError("a braid needs at least one strand")
    counter = iter(range(1, 1 << 62))
    start = [next(counter) for _ in range(strands)]
    cur = list(start)
    xs = []
    for g in word:
        g = int(g)
        k = abs(g) - 1
        if not 0 <= k < strands - 1:
            raise DimensionError(f"generator {g} out of range for {strands} strands")
        left, right = cur[k], cur[k + 1]
        a, b = next(counter), next(counter)
        if g > 0:
            xs.append((right, a, left, b, 1))  # under: right -> left position
            cur[k], cur[k + 1] = a, b
        else:
            xs.append((left, a, right, b, -1))  # under: left -> right position
            cur[k], cur[k + 1] = b, a
    uf = _UnionFind()
    for s, e in zip(start, cur):
        uf.union(s, e)
    return _relabel(xs, [uf.find(s) for s in start], uf, framings)


def _relabel(xs, extra_arcs, uf: _UnionFind, framings) -> PDLink:
    """Apply a union-find identification and renumber arcs 1, 2, ..."""
    xs = [tuple(uf.find(a) for a in x[:4]) + (x[4],) for x in xs]
    order: dict[int, int] = {}
    # strand start arcs first, so components come out in strand order
    for a in extra_arcs:
        order.setdefault(uf.find(a), len(order) + 1)
    for x in xs:
        for a in x[:4]:
            order.setdefault(a, len(order) + 1)
    xs = [tuple(order[a] for a in x[:4]) + (x[4],) for x in xs]
    link = PDLink(xs, free_arcs=list(order.values()), external=False)
    if framings is not None:
        link = link.with_framings(framings)
    return link


# matrices and sublinks ------------------------------------------------------

def linking_matrix(link: PDLink) -> list[list[int]]:
    """Framings on the diagonal, pairwise linking numbers off it."""
    n = link.n_components
    twice = np.zeros((n, n), dtype=np.int64)
    comp = link.component_of_arc
    for ui, _, oi, _, s in link.crossings:
        i, j = comp[ui], comp[oi]
        if i != j:
            twice[i, j] += s
            twice[j, i] += s
    M = (twice // 2).tolist()
    for i in range(n):
        M[i][i] = link.framings[i]
    return M


def _keep_set(keep, n: int) -> list[int]:
    if hasattr(keep, "mask"):
        keep = keep.mask
    if isinstance(keep, (int, np.integer)):
        mask = int(keep)
        if mask < 0 or mask >> n:
            raise DimensionError(f"sublink mask {mask} out of range for {n} components")
        return [i for i in range(n) if mask >> i & 1]
    bits = [int(b) for b in keep]
    if len(bits) != n or any(b not in (0, 1) for b in bits):
        raise DimensionError(f"sublink indicator must have length {n} with 0/1 entries")
    return [i for i in range(n) if bits[i]]


def delete_components(link: PDLink, keep) -> PDLink:
    """The sublink on the components in ``keep`` (a bitmask or 0/1 vector).

    Components are renumbered in increasing order of their old index.
    """
    kept = _keep_set(keep, link.n_components)
    new_index = {c: k for k, c in enumerate(kept)}
    comp = link.component_of_arc
    uf = _UnionFind()
    xs = []
    for x in link.crossings:
        ui, uo, oi, oo, s = x
        ku, ko = comp[ui] in new_index, comp[oi] in new_index
        if ku and ko:
            xs.append(x)
        elif ku:
            uf.union(ui, uo)
        elif ko:
            uf.union(oi, oo)
    survivors = [a for a in comp if comp[a] in new_index]
    xs = [tuple(uf.find(a) for a in x[:4]) + (x[4],) for x in xs]
    arcs = sorted({uf.find(a) for a in survivors})
    comp_map = {a: new_index[comp[a]] for a in arcs}
    return PDLink(xs, comp_map, [link.framings[c] for c in kept], external=False)


def split_union(a: PDLink, b: PDLink) -> PDLink:
    """Disjoint, split union; b's components come after a's."""
    off = max(a.component_of_arc, default=0)
    xs = list(a.crossings) + [tuple(v + off for v in x[:4]) + (x[4],) for x in b.crossings]
    comp = dict(a.component_of_arc)
    comp.update({k + off: v + a.n_components for k, v in b.component_of_arc.items()})
    return PDLink(xs, comp, a.framings + b.framings, external=False)


def mirror(link: PDLink) -> PDLink:
    """Switch every crossing; framings change sign."""
    xs = [(oi, oo, ui, uo, -s) for ui, uo, oi, oo, s in link.crossings]
    return PDLink(xs, link.component_of_arc, [-f for f in link.framings], external=False)


def reverse_component(link: PDLink, i: int) -> PDLink:
    comp = link.component_of_arc
    xs = []
    for ui, uo, oi, oo, s in link.crossings:
        ru, ro = comp[ui] == i, comp[oi] == i
        if ru:
            ui, uo = uo, ui
        if ro:
            oi, oo = oo, oi
        xs.append((ui, uo, oi, oo, -s if ru != ro else s))
    return PDLink(xs, comp, link.framings, external=False)


# planar structure -----------------------------------------------------------

def _slots(link: PDLink) -> dict[int, list[tuple[int, int]]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for k, x in enumerate(link.pd_code()):
        for slot in range(4):
            where.setdefault(x[slot], []).append((k, slot))
    return where


def faces(link: PDLink) -> list[list[tuple[int, int]]]:
    """Faces of the diagram as cycles of (crossing, slot) darts.

    A dart (k, s) means: leave crossing k along the arc in slot s. Arriving
    at a crossing in slot t, the walk continues from slot t + 1 (clockwise),
    which keeps the face on the walker's left.
    """
    code = link.pd_code()
    where = _slots(link)
    seen = set()
    out = []
    for k in range(len(code)):
        for s in range(4):
            if (k, s) in seen:
                continue
            face = []
            dart = (k, s)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                c, slot = dart
                ends = where[code[c][slot]]
                other = ends[1] if ends[0] == dart else ends[0]
                dart = (other[0], (other[1] + 1) % 4)
            out.append(face)
    return out


def _pieces(link: PDLink) -> int:
    """Connected pieces of the crossing graph (free circles not counted)."""
    uf = _UnionFind()
    for k, x in enumerate(link.crossings):
        uf.find(("x", k))
        for a in x[:4]:
            uf.union(("x", k), ("a", a))
    return len({uf.find(("x", k)) for k in range(link.n_crossings)})


def is_planar(link: PDLink) -> bool:
    """Euler check: every connected piece with C crossings has C + 2 faces."""
    if not link.crossings:
        return True
    return len(faces(link)) == link.n_crossings + 2 * _pieces(link)


def _fresh(link: PDLink, count: int) -> list[int]:
    top = max(link.component_of_arc, default=0)
    return list(range(top + 1, top + 1 + count))


def _head(link: PDLink, arc: int) -> tuple[int, int] | None:
    """(crossing, internal slot) where ``arc`` enters, or None for a free circle."""
    for k, x in enumerate(link.crossings):
        if x[0] == arc:
            return k, 0
        if x[2] == arc:
            return k, 2
    return None


def _rebuild(link: PDLink, xs, new_arcs: dict[int, int]) -> PDLink:
    comp = dict(link.component_of_arc)
    comp.update(new_arcs)
    return PDLink(xs, comp, link.framings, external=False)


def reidemeister1(link: PDLink, arc: int, kind: str = "A", sign: int = 1) -> PDLink:
    """Insert a kink on ``arc``; ``kind`` picks the side, ``sign`` the crossing sign.

    The framing is left as recorded, so the framed link changes by the
    writhe of the kink while the underlying link does not.
    """
    if arc not in link.component_of_arc:
        raise ValidationError("E_ARC", "arc", f"no arc {arc}")
    loop, tail = _fresh(link, 2)
    head = _head(link, arc)
    e1, e2 = arc, (arc if head is None else tail)
    table = {
        ("A", 1): (e1, loop, loop, e2, 1),
        ("A", -1): (e1, e2, loop, loop, -1),
        ("B", 1): (loop, e1, e2, loop, 1),
        ("B", -1): (loop, loop, e2, e1, -1),
    }
    try:
        kink = to_internal(*table[(kind, sign)])
    except KeyError:
        raise ValidationError("E_MOVE", "kind", "kind must be 'A' or 'B' and sign +-1") from None
    xs = [list(x) for x in link.crossings]
    if head is not None:
        xs[head[0]][head[1]] = e2
    xs.append(list(kink))
    c = link.component_of_arc[arc]
    new = {loop: c} if head is None else {loop: c, tail: c}
    return _rebuild(link, [tuple(x) for x in xs], new)


def _face_direction(link: PDLink, face, arc: int) -> int | None:
    """+1 if the face walk runs along ``arc``'s orientation, -1 against."""
    code = link.pd_code()
    for k, s in face:
        if code[k][s] != arc:
            continue
        return 1 if _outgoing_slot(code[k], s) else -1
    return None


def _outgoing_slot(ext: tuple, s: int) -> bool:
    # slot c is under-out; at a positive crossing d is over-out, at a negative one b
    if s == 2:
        return True
    if s == 0:
        return False
    return (s == 3) == (ext[4] == 1)


def reidemeister2(link: PDLink, over: int, under: int) -> PDLink:
    """Push a finger of arc ``over`` across arc ``under`` through a shared face."""
    if over == under:
        raise ValidationError("E_MOVE", "arcs", "R2 needs two distinct arcs")
    for face in faces(link):
        dx = _face_direction(link, face, over)
        dy = _face_direction(link, face, under)
        if dx is not None and dy is not None:
            break
    else:
        raise ValidationError("E_MOVE", "arcs", f"arcs {over} and {under} share no face")
    x_mid, x_out, y_mid, y_out = _fresh(link, 4)
    hx, hy = _head(link, over), _head(link, under)
    # geometry: the face walk runs east along `under`; the finger comes down
    # from the north, crossing at E (walked first, going south) then W.
    x_east, x_west = (over, x_out) if dx == 1 else (x_out, over)
    y_west, y_east = (under, y_out) if dy == 1 else (y_out, under)
    arms_E = {"N": x_east, "S": x_mid, "W": y_mid, "E": y_east}
    arms_W = {"N": x_west, "S": x_mid, "E": y_mid, "W": y_west}
    order = ("W", "N", "E", "S") if dy == 1 else ("E", "S", "W", "N")
    new = []
    for arms, over_in in ((arms_E, "N" if dx == 1 else "S"), (arms_W, "S" if dx == 1 else "N")):
        a, b, c, d = (arms[o] for o in order)
        sign = 1 if order[1] == over_in else -1
        new.append(to_internal(a, b, c, d, sign))
    xs = [list(x) for x in link.crossings]
    if hx is not None:
        xs[hx[0]][hx[1]] = x_out
    if hy is not None:
        xs[hy[0]][hy[1]] = y_out
    xs.extend(list(x) for x in new)
    cx, cy = link.component_of_arc[over], link.component_of_arc[under]
    return _rebuild(link, [tuple(x) for x in xs], {x_mid: cx, x_out: cx, y_mid: cy, y_out: cy})
