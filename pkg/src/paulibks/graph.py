"""Orthogonality graphs over ray catalogs and complete-basis (clique) search."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, VerificationError
from .rays import RayCatalog

_CHUNK = 512


@dataclass(frozen=True)
class OrthoGraph:
    """Simple undirected graph with bit-packed adjacency rows (bit j of rows[i])."""

    vertex_count: int
    rows: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "OrthoGraph":
        rows = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError("self-loops are not allowed")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(n, tuple(rows))

    @property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        return (self.rows,)

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.vertex_count) for b in bits(self.rows[a] >> (a + 1) << (a + 1))]

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def relabel(self, perm: Sequence[int]) -> "OrthoGraph":
        """Graph with vertex v renamed perm[v]."""
        rows = [0] * self.vertex_count
        for v, row in enumerate(self.rows):
            pv = perm[v]
            acc = 0
            for u in bits(row):
                acc |= 1 << perm[u]
            rows[pv] = acc
        return OrthoGraph(self.vertex_count, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "OrthoGraph":
        pos = {v: i for i, v in enumerate(vertices)}
        return OrthoGraph.from_edges(
            len(vertices),
            ((pos[a], pos[b]) for a in vertices for b in bits(self.rows[a]) if b in pos and a < b),
        )


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _rows_from_bool(block: np.ndarray) -> list[int]:
    packed = np.packbits(block, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def build_graph(catalog: RayCatalog, threads: int = 1) -> OrthoGraph:
    """Orthogonality graph: i ~ j iff <r_i|r_j> = 0 exactly.

    Amplitudes are small integers so the float64 products are exact.
    """
    if len(catalog) == 0:
        raise ValueError("empty catalog")
    re8, im8 = catalog.arrays
    re, im = re8.astype(np.float64), im8.astype(np.float64)
    complex_rays = bool(im.any())

    def block(start: int) -> list[int]:
        sl = slice(start, start + _CHUNK)
        gr = re[sl] @ re.T
        if complex_rays:
            gr += im[sl] @ im.T
            gi = re[sl] @ im.T - im[sl] @ re.T
            zero = (gr == 0) & (gi == 0)
        else:
            zero = gr == 0
        return _rows_from_bool(zero)

    starts = range(0, len(catalog), _CHUNK)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(block, starts))
    else:
        parts = [block(s) for s in starts]
    rows = tuple(r for part in parts for r in part)
    for i, r in enumerate(rows):
        if r >> i & 1:
            raise VerificationError(f"ray {i} orthogonal to itself")
    return OrthoGraph(len(catalog), rows)


def enumerate_cliques(graph: OrthoGraph, size: int, within: int | None = None) -> list[tuple[int, ...]]:
    """All cliques of exactly ``size`` vertices, in lexicographic order.

    Candidates are restricted to later vertices adjacent to the whole partial
    clique; branches that cannot reach ``size`` are cut by a popcount bound.
    """
    rows = graph.rows
    out: list[tuple[int, ...]] = []
    universe = within if within is not None else (1 << graph.vertex_count) - 1

    def extend(clique: list[int], cand: int) -> None:
        if len(clique) == size:
            out.append(tuple(clique))
            return
        need = size - len(clique)
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            extend(clique, cand & rows[v])
            clique.pop()

    extend([], universe)
    return out


def enumerate_bases(graph: OrthoGraph, n: int, catalog: RayCatalog | None = None) -> list[tuple[int, ...]]:
    """All n-cliques, i.e. complete orthogonal bases of C^n.

    When a catalog is given every basis is re-checked with exact overlaps.
    """
    if catalog is not None and catalog.dimension != n:
        raise DimensionError(f"catalog dimension {catalog.dimension} != {n}")
    bases = enumerate_cliques(graph, n)
    if catalog is not None:
        for basis in bases:
            for i, a in enumerate(basis):
                for b in basis[i + 1:]:
                    if catalog.overlap2(a, b) != 0:
                        raise VerificationError(f"basis {basis} has non-orthogonal pair ({a}, {b})")
    return bases


def to_edge_list(graph: OrthoGraph) -> str:
    lines = [f"{graph.vertex_count} {graph.edge_count()}"]
    lines += [f"{a} {b}" for a, b in graph.edges()]
    return "\n".join(lines) + "\n"


def to_dot(graph: OrthoGraph, name: str = "G", labels: Sequence[str] | None = None) -> str:
    lines = [f"graph {name} {{"]
    for v in range(graph.vertex_count):
        lab = f' [label="{labels[v]}"]' if labels else ""
        lines.append(f"  {v}{lab};")
    lines += [f"  {a} -- {b};" for a, b in graph.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
