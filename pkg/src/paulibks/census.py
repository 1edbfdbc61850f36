"""Exhaustive census of parity proofs over a ray/basis system.

A parity proof is a set of an odd number of bases covering every one of its
rays an even number of times, which is exactly an odd-weight vector in the
GF(2) kernel of the ray x basis incidence matrix.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import CapabilityError, PreconditionError
from .geometry import distance_matrix, histogram, sharing_multigraph
from .automorphism import graph_certificate
from .graph import OrthoGraph, bits, build_graph, enumerate_bases, mask_of
from .pauli import MagicContext, mcs_of_context, mermin_pentagram, mermin_square
from .rays import RayCatalog, context_eigenbasis

MAX_KERNEL_DIM = 30


@dataclass(frozen=True)
class IncidenceMatrix:
    """Rays x bases over GF(2); ``columns[j]`` is the ray mask of basis j."""

    ray_count: int
    columns: tuple[int, ...]

    @property
    def basis_count(self) -> int:
        return len(self.columns)

    def dense(self) -> list[list[int]]:
        return [[c >> r & 1 for c in self.columns] for r in range(self.ray_count)]

    def column_weights(self) -> list[int]:
        return [c.bit_count() for c in self.columns]


def incidence(catalog: RayCatalog | int, bases: Sequence[Sequence[int]]) -> IncidenceMatrix:
    n = catalog if isinstance(catalog, int) else len(catalog)
    cols = []
    for b in bases:
        for r in b:
            if not 0 <= r < n:
                raise IndexError(f"ray id {r} out of range 0..{n - 1}")
        cols.append(mask_of(b))
    return IncidenceMatrix(n, tuple(cols))


def parity_kernel(matrix: IncidenceMatrix) -> list[int]:
    """Basis of {x : sum of columns selected by x = 0} as column masks."""
    pivots: list[tuple[int, int]] = []  # (reduced column, combination), leading bits distinct
    kernel: list[int] = []
    for j, col in enumerate(matrix.columns):
        combo = 1 << j
        for pc, pcombo in pivots:
            if col ^ pc < col:
                col ^= pc
                combo ^= pcombo
        if col:
            pivots.append((col, combo))
            pivots.sort(reverse=True)
        else:
            kernel.append(combo)
    return kernel


@dataclass(frozen=True, order=True)
class ParityProof:
    basis_ids: tuple[int, ...]
    ray_ids: tuple[int, ...]
    label: str = ""

    @property
    def v(self) -> int:
        return len(self.ray_ids)

    @property
    def l(self) -> int:
        return len(self.basis_ids)

    @property
    def signature(self) -> tuple[int, int]:
        return self.v, self.l


@dataclass
class CensusClass:
    label: str
    v: int
    l: int
    histogram: dict[Fraction, int]
    proofs: list[ParityProof] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.proofs)


@dataclass
class Census:
    kernel_dimension: int
    classes: dict[str, CensusClass]

    def counts(self) -> dict[str, int]:
        return {k: c.count for k, c in self.classes.items()}

    def proofs(self) -> list[ParityProof]:
        return [p for c in self.classes.values() for p in c.proofs]

    def __getitem__(self, label: str) -> list[ParityProof]:
        return self.classes[label].proofs

    @property
    def total(self) -> int:
        return sum(c.count for c in self.classes.values())


def _odd_kernel_vectors(kernel: list[int], threads: int) -> list[int]:
    """All odd-weight combinations of the kernel basis, sorted."""
    dim = len(kernel)
    # split on the top few basis vectors; every chunk walks a Gray code of the rest
    split = min(dim, 4)
    low, high = kernel[: dim - split], kernel[dim - split:]

    def chunk(prefix: int) -> list[int]:
        start = 0
        for k, g in enumerate(high):
            if prefix >> k & 1:
                start ^= g
        out = []
        cur = start
        for i in range(1 << len(low)):
            if i:
                cur ^= low[(i & -i).bit_length() - 1]
            if cur.bit_count() & 1:
                out.append(cur)
        return out

    prefixes = range(1 << split)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(chunk, prefixes))
    else:
        parts = [chunk(p) for p in prefixes]
    return sorted(v for part in parts for v in part)


def _hist_order(hist: dict[Fraction, int], keys: list[Fraction]) -> tuple:
    # subtype letters: more pairs at the largest distances first
    return tuple(-hist.get(k, 0) for k in keys)


def enumerate_parity_proofs(
    matrix: IncidenceMatrix,
    bases: Sequence[Sequence[int]],
    catalog: RayCatalog,
    threads: int = 1,
) -> Census:
    """Every odd-weight kernel vector as a proof, classed by (v, l) and histogram."""
    kernel = parity_kernel(matrix)
    if len(kernel) > MAX_KERNEL_DIM:
        raise CapabilityError(f"kernel dimension {len(kernel)} exceeds {MAX_KERNEL_DIM}")
    dist = distance_matrix(bases, catalog)
    cols = matrix.columns
    groups: dict[tuple[int, int], dict[tuple, list]] = {}
    hists: dict[tuple, dict[Fraction, int]] = {}
    for vec in _odd_kernel_vectors(kernel, threads):
        ids = tuple(bits(vec))
        union = 0
        for j in ids:
            union |= cols[j]
        rays = tuple(bits(union))
        hist = histogram(ids, dist)
        hkey = tuple(hist.items())
        hists[hkey] = hist
        groups.setdefault((len(rays), len(ids)), {}).setdefault(hkey, []).append((ids, rays))
    classes: dict[str, CensusClass] = {}
    for (v, l) in sorted(groups, reverse=True):
        keys = sorted({d for h in groups[(v, l)] for d in hists[h]}, reverse=True)
        variants = sorted(groups[(v, l)], key=lambda h: _hist_order(hists[h], keys))
        for k, hkey in enumerate(variants):
            label = f"{v}-{l}" + (chr(ord("A") + k) if len(variants) > 1 else "")
            proofs = sorted(ParityProof(ids, rays, label) for ids, rays in groups[(v, l)][hkey])
            classes[label] = CensusClass(label, v, l, hists[hkey], proofs)
    return Census(len(kernel), classes)


def sharing_partition_agrees(census: Census, bases: Sequence[Sequence[int]]) -> bool:
    """True iff isomorphism classes of the ray-sharing multigraph coincide with
    the histogram classes."""
    label_of_cert: dict[bytes, set[str]] = {}
    certs_of_label: dict[str, set[bytes]] = {}
    for cls in census.classes.values():
        for p in cls.proofs:
            cert = graph_certificate(sharing_multigraph(p.basis_ids, bases))
            label_of_cert.setdefault(cert, set()).add(cls.label)
            certs_of_label.setdefault(cls.label, set()).add(cert)
    return all(len(v) == 1 for v in label_of_cert.values()) and all(
        len(v) == 1 for v in certs_of_label.values())


# ---------------------------------------------------------------------------
# Ray/basis systems


@dataclass
class System:
    name: str
    catalog: RayCatalog
    graph: OrthoGraph
    bases: list[tuple[int, ...]]
    contexts: list[MagicContext]

    @property
    def matrix(self) -> IncidenceMatrix:
        return incidence(self.catalog, self.bases)


def context_system(name: str, contexts: Sequence[MagicContext], threads: int = 1) -> System:
    """Rays of every context eigenbasis; bases are all complete cliques among them."""
    rays = []
    for ctx in contexts:
        rays.extend(context_eigenbasis(mcs_of_context(ctx.operators)))
    catalog = RayCatalog(rays)
    graph = build_graph(catalog, threads=threads)
    bases = enumerate_bases(graph, catalog.dimension, catalog)
    return System(name, catalog, graph, bases, list(contexts))


SYSTEMS = {
    "mermin-square": lambda threads=1: context_system("mermin-square", mermin_square()[1], threads),
    "mermin-pentagram": lambda threads=1: context_system("mermin-pentagram", mermin_pentagram()[1], threads),
}


def build_system(name: str, threads: int = 1) -> System:
    try:
        factory = SYSTEMS[name]
    except KeyError:
        raise ValueError(f"unknown system {name!r}; choose from {sorted(SYSTEMS)}") from None
    return factory(threads)


def run_census(system: System, threads: int = 1) -> Census:
    return enumerate_parity_proofs(system.matrix, system.bases, system.catalog, threads)


# ---------------------------------------------------------------------------
# Kochen-Specker colourability


def is_ks_colorable(
    ray_ids: Iterable[int],
    bases: Sequence[Sequence[int]],
    graph: OrthoGraph,
    relaxed: Iterable[int] = (),
) -> tuple[bool, frozenset[int] | None]:
    """Search for a 0/1 assignment with exactly one true ray per basis and no
    two orthogonal rays true.

    Orthogonality is taken from ``graph`` over all pairs in ``ray_ids``.
    Bases listed by index in ``relaxed`` only keep the pairwise constraint.
    Returns (True, true-ray set) or (False, None) after exhausting the search.
    """
    universe = mask_of(ray_ids)
    masks = [mask_of(b) for b in bases]
    relaxed = set(relaxed)
    for k, bm in enumerate(masks):
        if k not in relaxed and bm & ~universe:
            raise PreconditionError(f"basis {k} has rays outside the ray set")
    active = [bm for k, bm in enumerate(masks) if k not in relaxed]
    rows = graph.rows
    nbr = {r: rows[r] & universe for r in bits(universe)}

    def solve(true: int, banned: int) -> int | None:
        best = None
        best_avail = 0
        best_n = 1 << 30
        for bm in active:
            if bm & true:
                continue
            avail = bm & ~banned
            c = avail.bit_count()
            if c == 0:
                return None
            if c < best_n:
                best, best_avail, best_n = bm, avail, c
                if c == 1:
                    break
        if best is None:
            return true
        for r in bits(best_avail):
            got = solve(true | 1 << r, banned | nbr[r] | 1 << r)
            if got is not None:
                return got
            banned |= 1 << r
        return None

    found = solve(0, ~universe)
    if found is None:
        return False, None
    return True, frozenset(bits(found))


def criticality(
    basis_ids: Iterable[int],
    bases: Sequence[Sequence[int]],
    graph: OrthoGraph,
    ray_deletion: str = "relax",
) -> tuple[bool, bool]:
    """(ray_critical, basis_critical) of a non-colourable set of bases.

    ``ray_deletion="relax"``: a basis that loses a ray keeps only its pairwise
    orthogonality constraints.  ``"drop"``: such bases are removed entirely.
    """
    if ray_deletion not in ("relax", "drop"):
        raise ValueError("ray_deletion must be 'relax' or 'drop'")
    ids = sorted(set(basis_ids))
    sub = [tuple(bases[i]) for i in ids]
    rays = sorted({r for b in sub for r in b})
    if is_ks_colorable(rays, sub, graph)[0]:
        raise PreconditionError("system is colourable; criticality is undefined")
    basis_critical = True
    for k in range(len(sub)):
        rest = sub[:k] + sub[k + 1:]
        if not is_ks_colorable({r for b in rest for r in b}, rest, graph)[0]:
            basis_critical = False
            break
    ray_critical = True
    for r in rays:
        hit = [k for k, b in enumerate(sub) if r in b]
        if ray_deletion == "relax":
            remaining = [x for x in rays if x != r]
            trimmed = [tuple(x for x in b if x != r) for b in sub]
            ok = is_ks_colorable(remaining, trimmed, graph, relaxed=hit)[0]
        else:
            rest = [b for k, b in enumerate(sub) if k not in hit]
            ok = is_ks_colorable({x for b in rest for x in b} - {r}, rest, graph)[0]
        if not ok:
            ray_critical = False
            break
    return ray_critical, basis_critical
