"""Graph automorphism group order and canonical certificates.

Both use individualization-refinement over ordered partitions.  Cells are
identified by their start position in ``order``; refinement splits cells by
neighbour counts into a splitter cell, fragments sorted by count, so the
whole search tree is labelling invariant.

Graphs are anything with ``vertex_count`` and ``layers`` (one tuple of
bit-packed adjacency rows per edge colour); ``OrthoGraph`` has one layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import CapabilityError

MAX_ORDER_VERTICES = 5000
MAX_CERTIFICATE_VERTICES = 200


@dataclass(frozen=True)
class LayeredGraph:
    """Edge-coloured simple graph; ``layer_labels[k]`` names the colour of ``layers[k]``."""

    vertex_count: int
    layers: tuple[tuple[int, ...], ...]
    layer_labels: tuple[Hashable, ...] = field(default=())

    @classmethod
    def from_weights(cls, weights: Sequence[Sequence[int]]) -> "LayeredGraph":
        """One layer per distinct nonzero off-diagonal weight, ascending."""
        n = len(weights)
        values = sorted({weights[i][j] for i in range(n) for j in range(n) if i != j and weights[i][j]})
        layers = []
        for val in values:
            rows = []
            for i in range(n):
                r = 0
                for j in range(n):
                    if i != j and weights[i][j] == val:
                        r |= 1 << j
                rows.append(r)
            layers.append(tuple(rows))
        return cls(n, tuple(layers), tuple(values))


def _labels(graph) -> tuple:
    labels = getattr(graph, "layer_labels", ())
    return tuple(labels) if labels else tuple(range(len(graph.layers)))


class _Partition:
    __slots__ = ("order", "cell_of", "end", "layers", "single")

    def __init__(self, order, cell_of, end, layers):
        self.order = order
        self.cell_of = cell_of
        self.end = end
        self.layers = layers
        self.single = len(layers) == 1

    @classmethod
    def initial(cls, graph, colors: Sequence | None) -> tuple["_Partition", list[int]]:
        n = graph.vertex_count
        if colors is None:
            groups = [list(range(n))] if n else []
        else:
            by: dict = {}
            for v in range(n):
                by.setdefault(colors[v], []).append(v)
            groups = [by[c] for c in sorted(by, key=_color_key)]
        order, cell_of, end = [], [0] * n, {}
        for g in groups:
            s = len(order)
            order.extend(g)
            end[s] = len(order)
            for v in g:
                cell_of[v] = s
        return cls(order, cell_of, end, graph.layers), sorted(end)

    def copy(self) -> "_Partition":
        return _Partition(self.order[:], self.cell_of[:], dict(self.end), self.layers)

    @property
    def discrete(self) -> bool:
        return len(self.end) == len(self.order)

    def target_cell(self) -> int:
        """Start of the first largest non-singleton cell."""
        best, size = -1, 1
        for s in sorted(self.end):
            k = self.end[s] - s
            if k > size:
                best, size = s, k
        return best

    def cell(self, s: int) -> list[int]:
        return self.order[s:self.end[s]]

    def individualize(self, v: int) -> tuple["_Partition", int]:
        p = self.copy()
        s = p.cell_of[v]
        e = p.end[s]
        i = p.order.index(v, s, e)
        p.order[s], p.order[i] = p.order[i], p.order[s]
        p.end[s] = s + 1
        p.end[s + 1] = e
        for u in p.order[s + 1:e]:
            p.cell_of[u] = s + 1
        return p, s

    def _inv(self, v: int, wmask: int):
        if self.single:
            return (self.layers[0][v] & wmask).bit_count()
        return tuple((layer[v] & wmask).bit_count() for layer in self.layers)

    def refine(self, queue: list[int], expected: list | None = None) -> list | None:
        """Refine to the coarsest equitable partition finer than self.

        Returns the split trace; with ``expected`` given, returns None as soon
        as the trace diverges from it.
        """
        trace: list = []
        pending = set(queue)
        queue = sorted(pending)
        order, end, cell_of = self.order, self.end, self.cell_of
        while queue:
            w = queue.pop(0)
            pending.discard(w)
            wmask = 0
            for u in order[w:end[w]]:
                wmask |= 1 << u
            touched = 0
            for layer in self.layers:
                for u in order[w:end[w]]:
                    touched |= layer[u]
            starts = sorted({cell_of[u] for u in _bits(touched)})
            for s in starts:
                e = end[s]
                if e - s == 1:
                    continue
                vals = {}
                for v in order[s:e]:
                    vals.setdefault(self._inv(v, wmask), []).append(v)
                if len(vals) == 1:
                    continue
                keys = sorted(vals)
                frags = [vals[k] for k in keys]
                step = (w, s, tuple(keys), tuple(len(f) for f in frags))
                if expected is not None:
                    if len(trace) >= len(expected) or expected[len(trace)] != step:
                        return None
                trace.append(step)
                pos = s
                starts_new = []
                for f in frags:
                    order[pos:pos + len(f)] = f
                    end[pos] = pos + len(f)
                    for u in f:
                        cell_of[u] = pos
                    starts_new.append(pos)
                    pos += len(f)
                if s in pending:
                    add = starts_new[1:]
                else:
                    big = max(range(len(frags)), key=lambda k: (len(frags[k]), -k))
                    add = [p for k, p in enumerate(starts_new) if k != big]
                for p in add:
                    if p not in pending:
                        pending.add(p)
                        queue.append(p)
            if self.discrete:
                break
        if expected is not None and len(trace) != len(expected):
            return None
        return trace


def _color_key(c):
    return (type(c).__name__, c)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def dense_layers(graph) -> list[np.ndarray]:
    """Boolean adjacency matrix of every layer, for fast permutation checks."""
    n = graph.vertex_count
    nbytes = (n + 7) // 8
    out = []
    for layer in graph.layers:
        raw = b"".join(row.to_bytes(nbytes, "little") for row in layer)
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes), axis=1, bitorder="little")
        out.append(bits[:, :n].astype(bool))
    return out


def is_automorphism(graph, perm: Sequence[int], colors: Sequence | None = None,
                    dense: list[np.ndarray] | None = None) -> bool:
    if colors is not None and any(colors[v] != colors[perm[v]] for v in range(graph.vertex_count)):
        return False
    if dense is not None:
        p = np.asarray(perm)
        return all(np.array_equal(a[np.ix_(p, p)], a) for a in dense)
    for layer in graph.layers:
        for v, row in enumerate(layer):
            target = layer[perm[v]]
            if row.bit_count() != target.bit_count():
                return False
            for u in _bits(row):
                if not target >> perm[u] & 1:
                    return False
    return True


def _leaf_perm(left: _Partition, right: _Partition) -> list[int]:
    perm = [0] * len(left.order)
    for a, b in zip(left.order, right.order):
        perm[a] = b
    return perm


def _match(graph, colors, left: _Partition, right: _Partition, dense=None) -> list[int] | None:
    """Find an automorphism mapping the left leaf labelling onto some right leaf."""
    if left.discrete:
        perm = _leaf_perm(left, right)
        return perm if is_automorphism(graph, perm, colors, dense) else None
    s = left.target_cell()
    v = left.order[s]
    child, cs = left.individualize(v)
    trace = child.refine([cs])
    for w in right.cell(s):
        rchild, rs = right.individualize(w)
        if rchild.refine([rs], expected=trace) is None:
            continue
        found = _match(graph, colors, child, rchild, dense)
        if found is not None:
            return found
    return None


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> tuple[int, int]:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra
        return ra, rb


@dataclass
class AutomorphismGroup:
    order: int
    generators: list[list[int]]
    base: list[int]
    orbit_sizes: list[int]


def automorphism_group(graph, vertex_colors: Sequence | None = None, max_vertices: int = MAX_ORDER_VERTICES) -> AutomorphismGroup:
    """Order (exact) and a generating set of Aut(graph), colour preserving.

    Walks one path of the search tree.  At each level the orbit of the
    individualized vertex under the pointwise stabilizer of the previous base
    points is found by trying each vertex of the target cell, skipping those
    already known to be in (or out of) the orbit via the generators found so
    far; the order is the product of these orbit lengths.
    """
    n = graph.vertex_count
    if n > max_vertices:
        raise CapabilityError(f"{n} vertices exceeds automorphism bound {max_vertices}")
    part, queue = _Partition.initial(graph, vertex_colors)
    part.refine(queue)
    dense = dense_layers(graph) if n > 64 else None
    order = 1
    gens: list[list[int]] = []
    base: list[int] = []
    orbit_sizes: list[int] = []
    while not part.discrete:
        s = part.target_cell()
        cell = part.cell(s)
        v = cell[0]
        left, ls = part.individualize(v)
        trace = left.refine([ls])
        uf = _UnionFind(n)
        rejected: set[int] = set()
        for w in cell[1:]:
            rw = uf.find(w)
            if rw == uf.find(v) or rw in rejected:
                continue
            right, rs = part.individualize(w)
            perm = None
            if right.refine([rs], expected=trace) is not None:
                perm = _match(graph, vertex_colors, left, right, dense)
            if perm is None:
                rejected.add(rw)
                continue
            gens.append(perm)
            for x in range(n):
                ra, rb = uf.find(x), uf.find(perm[x])
                if ra != rb:
                    bad = ra in rejected or rb in rejected
                    root, _ = uf.union(ra, rb)
                    rejected.discard(ra)
                    rejected.discard(rb)
                    if bad:
                        rejected.add(root)
        rv = uf.find(v)
        size = sum(1 for w in cell if uf.find(w) == rv)
        order *= size
        base.append(v)
        orbit_sizes.append(size)
        part = left
    return AutomorphismGroup(order, gens, base, orbit_sizes)


def automorphism_order(graph, vertex_colors: Sequence | None = None, max_vertices: int = MAX_ORDER_VERTICES) -> int:
    return automorphism_group(graph, vertex_colors, max_vertices).order


# ---------------------------------------------------------------------------
# Canonical certificates


def _leaf_certificate(graph, labels, colors, order: list[int]) -> bytes:
    n = graph.vertex_count
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    nbytes = (n + 7) // 8
    parts = [repr((n, labels)).encode()]
    if colors is not None:
        parts.append(repr([_color_key(colors[v]) for v in order]).encode())
    for layer in graph.layers:
        for v in order:
            r = 0
            for u in _bits(layer[v]):
                r |= 1 << pos[u]
            parts.append(r.to_bytes(nbytes, "big"))
    return b"|".join(parts[:2]) + b"|" + b"".join(parts[2:])


def canonical_labeling(graph, vertex_colors: Sequence | None = None) -> tuple[bytes, list[int]]:
    """Minimum leaf certificate over the pruned search tree and its vertex order."""
    n = graph.vertex_count
    if n > MAX_CERTIFICATE_VERTICES:
        raise CapabilityError(f"{n} vertices exceeds certificate bound {MAX_CERTIFICATE_VERTICES}")
    labels = _labels(graph)
    part, queue = _Partition.initial(graph, vertex_colors)
    part.refine(queue)
    seen: dict[bytes, list[int]] = {}
    gens: list[list[int]] = []
    best: list = [None, None]

    def visit(p: _Partition, prefix: list[int]) -> None:
        if p.discrete:
            cert = _leaf_certificate(graph, labels, vertex_colors, p.order)
            prev = seen.get(cert)
            if prev is None:
                seen[cert] = p.order[:]
            else:
                g = [0] * n
                for a, b in zip(prev, p.order):
                    g[a] = b
                gens.append(g)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, p.order[:]
            return
        s = p.target_cell()
        explored: list[int] = []
        for w in p.cell(s):
            if explored:
                stab = [g for g in gens if all(g[x] == x for x in prefix)]
                if stab and _same_orbit(w, explored, stab, n):
                    continue
            child, cs = p.individualize(w)
            child.refine([cs])
            visit(child, prefix + [w])
            explored.append(w)

    visit(part, [])
    return best[0], best[1]


def _same_orbit(w: int, targets: list[int], gens: list[list[int]], n: int) -> bool:
    goal = set(targets)
    seen = {w}
    stack = [w]
    while stack:
        x = stack.pop()
        if x in goal:
            return True
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


def graph_certificate(graph, vertex_colors: Sequence | None = None) -> bytes:
    """Equal for two graphs iff they are (colour-preserving) isomorphic."""
    return canonical_labeling(graph, vertex_colors)[0]
