"""Lattice representation of circulant graphs and the Hook/New decomposition.

The circulant C at index n is drawn on a bounded-height lattice: vertex
(u, v) stands for the number u*n + v, rows 0..p-2 hold n vertices each and
row p-1 holds n+s.  Lattice edges are the circulant edges that respect the
row structure (the jump's n-coefficient equals the row displacement mod p);
the remainder is Hook(n).  New(n) is the edge growth from L_n to L_{n+1}.

Both Hook(n) and New(n) are independent of n once vertices are written
relative to an anchor (left end, right end, or the new column).  That claim
is not assumed: decompose() derives the sets by diffing concrete graphs at
consecutive n and asserts stability at a third.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .circulant import CirculantSpec
from .errors import InconsistencyError

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex, int]       # (tail, head, jump index)


@dataclass(frozen=True, order=True)
class SymVertex:
    """Anchored vertex: L offsets from the left end of a row, R from the
    right end, N the single new vertex of a row."""

    anchor: str   # "L" | "R" | "N"
    row: int
    offset: int

    def eval(self, spec: CirculantSpec, n: int) -> Vertex:
        last = row_last(spec, n, self.row)
        if self.anchor == "L":
            return (self.row, self.offset)
        if self.anchor == "R":
            return (self.row, last - self.offset)
        return (self.row, last + 1)

    def __str__(self):
        if self.anchor == "L":
            return f"({self.row},{self.offset})"
        if self.anchor == "R":
            return f"({self.row},end-{self.offset})"
        return f"({self.row},new)"


@dataclass(frozen=True, order=True)
class SymEdge:
    tail: SymVertex
    head: SymVertex
    jump_index: int

    def eval(self, spec: CirculantSpec, n: int) -> Edge:
        return (self.tail.eval(spec, n), self.head.eval(spec, n), self.jump_index)

    def __str__(self):
        return f"{self.tail}->{self.head}[j{self.jump_index}]"


@dataclass(frozen=True)
class BoundarySets:
    """Slot-ordered boundary windows; slot i maps to row i//bar_s,
    in-row offset i%bar_s (the g^L / g^R index maps)."""

    left: tuple[SymVertex, ...]
    right: tuple[SymVertex, ...]
    new_vertices: tuple[SymVertex, ...]
    bar_s: int


@dataclass(frozen=True)
class Decomposition:
    spec: CirculantSpec
    hook: frozenset[SymEdge]
    new: frozenset[SymEdge]
    boundaries: BoundarySets
    bar_s: int           # structural boundary width (s+ + s- for signed jumps)
    s_plus: int
    s_minus: int
    n0: int

    @property
    def slot_width(self) -> int:
        """Classification tuple width p*bar_s."""
        return self.spec.size_coeff * self.bar_s


def row_last(spec: CirculantSpec, n: int, row: int) -> int:
    if row < spec.size_coeff - 1:
        return n - 1
    return n + spec.size_offset - 1


def lattice_vertices(spec: CirculantSpec, n: int) -> list[Vertex]:
    return [(u, v) for u in range(spec.size_coeff)
            for v in range(row_last(spec, n, u) + 1)]


def vertex_value(spec: CirculantSpec, n: int, vertex: Vertex) -> int:
    u, v = vertex
    return u * n + v


def value_vertex(spec: CirculantSpec, n: int, value: int) -> Vertex:
    p = spec.size_coeff
    u = min(value // n, p - 1) if n > 0 else p - 1
    return (u, value - u * n)


def circulant_edges(spec: CirculantSpec, n: int) -> set[Edge]:
    size = spec.size(n)
    out: set[Edge] = set()
    for tail in lattice_vertices(spec, n):
        fv = vertex_value(spec, n, tail)
        for idx, jump in enumerate(spec.jump_values(n)):
            head = value_vertex(spec, n, (fv + jump) % size)
            out.add((tail, head, idx))
    return out


def lattice_edges(spec: CirculantSpec, n: int) -> set[Edge]:
    """Row-respecting circulant edges.

    A jump (p_i, s_i) leaving (u, v) lands either at (u+p_i, v+s_i) when the
    target row exists, or at (u+p_i-p, v+s_i-s) when the jump crosses the top
    row.  Everything else a jump induces is a Hook edge.
    """
    p, s = spec.size_coeff, spec.size_offset
    out: set[Edge] = set()
    for u, v in lattice_vertices(spec, n):
        for idx, (p_i, s_i) in enumerate(spec.jumps):
            if u + p_i <= p - 1:
                head = (u + p_i, v + s_i)
            else:
                head = (u + p_i - p, v + s_i - s)
            if 0 <= head[1] <= row_last(spec, n, head[0]):
                out.add(((u, v), head, idx))
    return out


def symbolize_vertex(spec: CirculantSpec, n: int, vertex: Vertex, width: int,
                     allow_new: bool) -> SymVertex:
    u, v = vertex
    last = row_last(spec, n, u)
    if allow_new and v == last + 1:
        return SymVertex("N", u, 0)
    if v <= last and last - v < width:
        return SymVertex("R", u, last - v)
    if v < width:
        return SymVertex("L", u, v)
    raise InconsistencyError(f"vertex {vertex} not anchored within width {width} at n={n}")


def _symbolize_edges(spec: CirculantSpec, n: int, edges: Iterable[Edge],
                     width: int, allow_new: bool) -> frozenset[SymEdge]:
    width = max(width, 1)
    out = set()
    for tail, head, idx in edges:
        out.add(SymEdge(symbolize_vertex(spec, n, tail, width, allow_new),
                        symbolize_vertex(spec, n, head, width, allow_new), idx))
    return frozenset(out)


def decompose(spec: CirculantSpec, check_span: int = 2) -> Decomposition:
    """Derive Hook(n), New(n) and the boundary windows, symbolically.

    Computed by evaluating the definitions at consecutive concrete n and
    diffing; stability is asserted over `check_span` further values, which
    is what makes the n-independence claim checked rather than assumed.
    """
    offsets = [s for _, s in spec.jumps]
    s_plus = max(max((s for s in offsets if s >= 0), default=0), 0)
    s_minus = max((-s for s in offsets if s < 0), default=0)
    if spec.constant:
        bar_s = s_plus + s_minus
    else:
        if s_minus:
            raise InconsistencyError("linear decomposition requires offsets >= 0 "
                                     "(normalize the spec first)")
        if any(s < spec.size_offset for s in offsets):
            raise InconsistencyError("linear decomposition requires s_i >= s "
                                     "(normalize the spec first)")
        bar_s = s_plus
    n0 = 2 * bar_s
    width = max(s_plus, s_minus)
    n_eval = max(n0, 1)

    def hook_at(n):
        return _symbolize_edges(spec, n, circulant_edges(spec, n) - lattice_edges(spec, n),
                                width, allow_new=False)

    def new_at(n):
        el_n, el_n1 = lattice_edges(spec, n), lattice_edges(spec, n + 1)
        missing = {e for e in el_n if e not in el_n1}
        if missing:
            raise InconsistencyError(f"lattice not monotone at n={n}: {missing}")
        return _symbolize_edges(spec, n, el_n1 - el_n, width, allow_new=True)

    hook = hook_at(n_eval)
    new = new_at(n_eval)
    for n in range(n_eval + 1, n_eval + 1 + check_span):
        if hook_at(n) != hook:
            raise InconsistencyError(f"Hook not n-independent at n={n}")
        if new_at(n) != new:
            raise InconsistencyError(f"New not n-independent at n={n}")

    # Boundary membership: hook edges run between the two windows; new-edge
    # heads are all new vertices, tails sit in the right window or are new.
    for e in hook:
        if {e.tail.anchor, e.head.anchor} not in ({"R", "L"}, {"L", "R"}):
            raise InconsistencyError(f"hook edge {e} leaves the boundary windows")
        if s_minus == 0 and not (e.tail.anchor == "R" and e.head.anchor == "L"):
            raise InconsistencyError(f"hook edge {e} not R->L")
    for e in new:
        if "N" not in (e.tail.anchor, e.head.anchor):
            raise InconsistencyError(f"new edge {e} misses the new column")
        if s_minus == 0 and e.head.anchor != "N":
            raise InconsistencyError(f"new edge {e} head is not a new vertex")
        if "L" in (e.tail.anchor, e.head.anchor):
            raise InconsistencyError(f"new edge {e} touches the left window")

    p = spec.size_coeff
    left = tuple(SymVertex("L", i // bar_s, i % bar_s) for i in range(p * bar_s))
    right = tuple(SymVertex("R", i // bar_s, i % bar_s) for i in range(p * bar_s))
    nv = tuple(SymVertex("N", u, 0) for u in range(p))
    bounds = BoundarySets(left, right, nv, bar_s)
    return Decomposition(spec, hook, new, bounds, bar_s, s_plus, s_minus, n0)
