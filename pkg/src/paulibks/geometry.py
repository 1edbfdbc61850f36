"""Bengtsson distances between orthonormal bases, histograms and proof diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .automorphism import LayeredGraph, automorphism_order, graph_certificate
from .errors import DimensionError, PreconditionError, VerificationError
from .graph import OrthoGraph
from .rays import RayCatalog

Basis = Sequence[int]


def bengtsson_d2(a: Basis, b: Basis, catalog: RayCatalog) -> Fraction:
    """Squared distance 1 - 1/(d-1) * sum_ij (|<a_i|b_j>|^2 - 1/d)^2, exactly."""
    d = catalog.dimension
    if len(a) != d or len(b) != d:
        raise DimensionError(f"bases must have {d} rays, got {len(a)} and {len(b)}")
    inv_d = Fraction(1, d)
    acc = Fraction(0)
    for i in a:
        for j in b:
            diff = catalog.overlap2(i, j) - inv_d
            acc += diff * diff
    return 1 - acc / (d - 1)


def distance_matrix(bases: Sequence[Basis], catalog: RayCatalog) -> list[list[Fraction]]:
    k = len(bases)
    out = [[Fraction(0)] * k for _ in range(k)]
    for i, j in combinations(range(k), 2):
        out[i][j] = out[j][i] = bengtsson_d2(bases[i], bases[j], catalog)
    return out


def histogram(basis_ids: Sequence[int], distances: Sequence[Sequence[Fraction]]) -> dict[Fraction, int]:
    """Counts of D^2 over unordered pairs of the given bases, keys ascending."""
    counts = Counter(distances[i][j] for i, j in combinations(sorted(basis_ids), 2))
    return dict(sorted(counts.items()))


def proof_histogram(basis_ids: Sequence[int], bases: Sequence[Basis], catalog: RayCatalog) -> dict[Fraction, int]:
    counts = Counter(bengtsson_d2(bases[i], bases[j], catalog) for i, j in combinations(sorted(basis_ids), 2))
    return dict(sorted(counts.items()))


def pair_identity(hist: dict[Fraction, int], l: int) -> bool:
    """Twice the number of histogrammed pairs equals l(l-1)."""
    return 2 * sum(hist.values()) == l * (l - 1)


def format_d2(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def surd(value: Fraction) -> str:
    """Display form of the distance itself, e.g. 7/12 -> sqrt(7)/sqrt(12)."""
    if value == 1:
        return "1"
    return f"sqrt({value.numerator})/sqrt({value.denominator})"


# ---------------------------------------------------------------------------
# Proof diagrams


def rook_graph(k: int = 3) -> OrthoGraph:
    """K_k x K_k: cells of a k x k board, adjacent when sharing a row or column."""
    cells = [(r, c) for r in range(k) for c in range(k)]
    edges = [(i, j) for i, j in combinations(range(len(cells)), 2)
             if cells[i][0] == cells[j][0] or cells[i][1] == cells[j][1]]
    return OrthoGraph.from_edges(len(cells), edges)


def triangular_graph(k: int = 5) -> OrthoGraph:
    """Line graph of K_k; for k = 5 the collinearity graph of a pentagram's ten points."""
    pairs = list(combinations(range(k), 2))
    edges = [(i, j) for i, j in combinations(range(len(pairs)), 2) if set(pairs[i]) & set(pairs[j])]
    return OrthoGraph.from_edges(len(pairs), edges)


def _shared(bases: Sequence[Basis], i: int, j: int) -> int:
    return len(set(bases[i]) & set(bases[j]))


@dataclass
class StructureReport:
    kind: str
    ok: bool
    details: dict


def square_structure(basis_ids: Sequence[int], bases: Sequence[Basis], catalog: RayCatalog) -> StructureReport:
    """Check the 9-basis square diagram of an 18-9 proof."""
    ids = sorted(basis_ids)
    if len(ids) != 9:
        raise PreconditionError("square diagram needs a 9-basis proof")
    d = distance_matrix([bases[i] for i in ids], catalog)
    near = Fraction(7, 12)
    local = OrthoGraph.from_edges(9, [(i, j) for i, j in combinations(range(9), 2) if d[i][j] == near])
    rays = Counter(r for i in ids for r in bases[i])
    sharing_ok = all(
        _shared(bases, ids[i], ids[j]) == (1 if local.adjacent(i, j) else 0)
        for i, j in combinations(range(9), 2)
    )
    details = {
        "rook_isomorphic": graph_certificate(local) == graph_certificate(rook_graph(3)),
        "degrees": sorted({local.degree(v) for v in range(9)}),
        "automorphism_order": automorphism_order(local),
        "ray_count": len(rays),
        "every_ray_twice": set(rays.values()) == {2},
        "adjacent_share_one_ray": sharing_ok,
    }
    ok = (details["rook_isomorphic"] and details["automorphism_order"] == 72 and details["ray_count"] == 18
          and details["every_ray_twice"] and sharing_ok)
    return StructureReport("18-9", ok, details)


def pentagram_structure(basis_ids: Sequence[int], bases: Sequence[Basis], catalog: RayCatalog) -> StructureReport:
    """Check the reference-base-plus-pentagram diagram of a 36-11 proof."""
    ids = sorted(basis_ids)
    if len(ids) != 11:
        raise PreconditionError("pentagram diagram needs an 11-basis proof")
    shared = [[_shared(bases, a, b) if a != b else 0 for b in ids] for a in ids]
    refs = [i for i in range(11)
            if sorted(shared[i]).count(4) == 4 and sorted(shared[i]).count(0) == 7]
    details: dict = {"reference_candidates": len(refs)}
    if len(refs) != 1:
        return StructureReport("36-11", False, details)
    ref = refs[0]
    others = [i for i in range(11) if i != ref]
    d = distance_matrix([bases[i] for i in ids], catalog)
    line_d2 = Fraction(9, 14)
    star = OrthoGraph.from_edges(10, [(a, b) for a, b in combinations(range(10), 2)
                                      if d[others[a]][others[b]] == line_d2])
    horizontal = [i for i in others if shared[ref][i] == 4]
    details.update({
        "reference_base": ids[ref],
        "horizontal_bases": [ids[i] for i in horizontal],
        "reference_share_4": len(horizontal),
        "reference_disjoint": sum(1 for i in others if shared[ref][i] == 0),
        "pentagram_isomorphic": graph_certificate(star) == graph_certificate(triangular_graph(5)),
        "collinear_share_two": all(
            shared[others[a]][others[b]] == 2 for a, b in star.edges()
        ),
        "reference_distance": sorted({format_d2(d[ref][i]) for i in horizontal}),
    })
    ok = (details["reference_share_4"] == 4 and details["reference_disjoint"] == 6
          and details["pentagram_isomorphic"] and details["collinear_share_two"])
    return StructureReport("36-11", ok, details)


def structure_signature(proof, bases: Sequence[Basis], catalog: RayCatalog) -> StructureReport:
    if proof.label == "18-9":
        return square_structure(proof.basis_ids, bases, catalog)
    if proof.label == "36-11":
        return pentagram_structure(proof.basis_ids, bases, catalog)
    raise PreconditionError(f"no diagram for class {proof.label}")


def sharing_multigraph(basis_ids: Sequence[int], bases: Sequence[Basis]) -> LayeredGraph:
    """Bases as vertices, edge colour = number of shared rays."""
    ids = sorted(basis_ids)
    return LayeredGraph.from_weights([[_shared(bases, a, b) if a != b else 0 for b in ids] for a in ids])


def check_distance_set(hist: dict[Fraction, int], allowed: set[Fraction]) -> None:
    extra = set(hist) - allowed
    if extra:
        raise VerificationError(f"unexpected distances {sorted(extra)}")
