"""Table reproduction and invariant suites shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import expected
from .automorphism import automorphism_group, automorphism_order
from .census import (
    Census,
    System,
    build_system,
    criticality,
    is_ks_colorable,
    run_census,
    sharing_partition_agrees,
)
from .geometry import check_distance_set, format_d2, pair_identity, structure_signature
from .graph import build_graph
from .lattice import (
    OrthogonalTransform,
    bw_generator,
    clifford_order,
    is_lattice_automorphism,
    kissing_number,
    minimal_vectors,
)
from .pauli import enumerate_mcs, mermin_pentagram, mermin_square, verify_magic
from .rays import all_rays, ray_counts, real_rays
from .errors import PauliBKSError

PASS, FAIL, SKIP, FLAG = "PASS", "FAIL", "SKIP", "FLAG"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


def check(name: str, cond: bool, detail: str = "") -> Check:
    return Check(name, PASS if cond else FAIL, detail)


# ---------------------------------------------------------------------------
# Ray-count table


@dataclass
class Cell:
    value: int | None
    expected: int | None
    status: str

    def as_dict(self) -> dict:
        return {"value": self.value, "expected": self.expected, "status": self.status}


def _cell(value, exp) -> Cell:
    if value is None:
        return Cell(None, exp, SKIP)
    return Cell(value, exp, PASS if value == exp else FAIL)


def table1_row(m: int, long_running: bool = False, threads: int = 1) -> dict:
    n, e_mcs, e_rays, e_real, e_aut = expected.TABLE1[m]
    n_mcs = len(enumerate_mcs(m, long_running))
    aut = None
    if m <= 4:
        catalog = all_rays(m, long_running)
        real = real_rays(catalog)
        n_rays, n_real = len(catalog), len(real)
        if m <= 3 or long_running:
            aut = automorphism_order(build_graph(real, threads=threads))
    else:
        n_rays, n_real = ray_counts(m, long_running)
    cells = {
        "mcs": _cell(n_mcs, e_mcs),
        "rays": _cell(n_rays, e_rays),
        "real_rays": _cell(n_real, e_real),
        "aut": _cell(aut, e_aut),
    }
    if m == 5:
        cells["aut"] = Cell(None, None, FLAG)
    return {"m": m, "n": n, "cells": cells}


def table1(m_max: int, long_running: bool = False, threads: int = 1) -> list[dict]:
    return [table1_row(m, long_running, threads) for m in range(1, m_max + 1)]


# ---------------------------------------------------------------------------
# Censuses


@lru_cache(maxsize=None)
def system_and_census(name: str, threads: int = 1) -> tuple[System, Census]:
    system = build_system(name, threads)
    return system, run_census(system, threads)


def census_document(name: str, threads: int = 1, with_proofs: bool = True) -> dict:
    system, census = system_and_census(name, threads)
    distances, table = expected.CENSUS_TABLES[name]
    classes = []
    all_ok = set(census.classes) == set(table)
    for label, cls in census.classes.items():
        exp_count, exp_counts = table.get(label, (None, None))
        exp_hist = expected.expected_histogram(name, label) if label in table else None
        ok = cls.count == exp_count and cls.histogram == exp_hist
        all_ok &= ok
        entry = {
            "label": label,
            "v": cls.v,
            "l": cls.l,
            "count": cls.count,
            "expected_count": exp_count,
            "histogram": {format_d2(k): v for k, v in cls.histogram.items()},
            "status": PASS if ok else FAIL,
        }
        if with_proofs:
            entry["proofs"] = [list(p.basis_ids) for p in cls.proofs]
        classes.append(entry)
    return {
        "system": name,
        "qubits": system.catalog.m,
        "rays": len(system.catalog),
        "bases": [list(b) for b in system.bases],
        "kernel_dimension": census.kernel_dimension,
        "distances": [format_d2(d) for d in distances],
        "total": census.total,
        "classes": classes,
        "status": PASS if all_ok else FAIL,
    }


# ---------------------------------------------------------------------------
# Verify suites


def magic_checks() -> list[Check]:
    sq = verify_magic(mermin_square()[1])
    pg = verify_magic(mermin_pentagram()[1])
    return [
        check("magic.square_signs", sq == expected.MAGIC_SIGNS["mermin-square"], str(sq)),
        check("magic.pentagram_signs", pg == expected.MAGIC_SIGNS["mermin-pentagram"], str(pg)),
    ]


def _sample(proofs: list, k: int = 32) -> list:
    step = max(1, len(proofs) // k)
    return proofs[::step]


def colorability_checks(full: bool = False, threads: int = 1) -> list[Check]:
    out = []
    for name in ("mermin-square", "mermin-pentagram"):
        system, census = system_and_census(name, threads)
        b0 = system.bases[0]
        ok, witness = is_ks_colorable(b0, [b0], system.graph)
        out.append(check(f"colorability.{name}.single_basis_colorable", ok and len(witness) == 1))
        for label, cls in census.classes.items():
            proofs = cls.proofs if full or label == "18-9" else _sample(cls.proofs)
            bad = [p.basis_ids for p in proofs
                   if is_ks_colorable(p.ray_ids, [system.bases[i] for i in p.basis_ids], system.graph)[0]]
            out.append(check(f"colorability.{name}.{label}.non_colorable", not bad,
                             f"{len(proofs) - len(bad)}/{len(proofs)} proven"))
    system, census = system_and_census("mermin-square", threads)
    crit = {criticality(p.basis_ids, system.bases, system.graph) for p in census["18-9"]}
    out.append(check("criticality.18-9.ray_and_basis_critical", crit == {(True, True)}, str(sorted(crit))))
    _, full_basis = criticality(range(len(system.bases)), system.bases, system.graph)
    out.append(check("criticality.square_system.not_basis_critical", not full_basis))
    return out


def _random_automorphisms(gens: list[list[int]], n: int, count: int, rng: random.Random):
    for _ in range(count):
        perm = list(range(n))
        for _ in range(2 * len(gens) + 5):
            g = rng.choice(gens)
            perm = [g[x] for x in perm]
        yield perm


def structure_checks(seed: int = 0, threads: int = 1) -> list[Check]:
    out = []
    for name, allowed in (("mermin-square", expected.SQUARE_DISTANCES),
                          ("mermin-pentagram", expected.PENTAGRAM_DISTANCES)):
        system, census = system_and_census(name, threads)
        proofs = census.proofs()
        parity_ok = all(p.l % 2 == 1 and _even_cover(p, system.bases) for p in proofs)
        out.append(check(f"structure.{name}.parity_proofs_valid", parity_ok, f"{len(proofs)} proofs"))
        ident = all(pair_identity(census.classes[p.label].histogram, p.l) for p in proofs)
        out.append(check(f"structure.{name}.pair_identity", ident))
        try:
            for cls in census.classes.values():
                check_distance_set(cls.histogram, set(allowed))
            out.append(check(f"structure.{name}.distance_set", True))
        except PauliBKSError as exc:
            out.append(check(f"structure.{name}.distance_set", False, str(exc)))
        out.append(check(f"structure.{name}.sharing_certificates_match_subtypes",
                         sharing_partition_agrees(census, system.bases)))
        out.append(_closure_check(name, system, census, seed))
    system, census = system_and_census("mermin-square", threads)
    reports = [structure_signature(p, system.bases, system.catalog) for p in census["18-9"]]
    auts = sorted({r.details["automorphism_order"] for r in reports})
    out.append(check("structure.18-9.rook_graph_aut72", all(r.ok for r in reports),
                     f"{sum(r.ok for r in reports)}/{len(reports)}; aut orders {auts}"))
    system, census = system_and_census("mermin-pentagram", threads)
    reports = [structure_signature(p, system.bases, system.catalog) for p in census["36-11"]]
    out.append(check("structure.36-11.pentagram_pattern", all(r.ok for r in reports),
                     f"{sum(r.ok for r in reports)}/{len(reports)}"))
    return out


def _even_cover(proof, bases) -> bool:
    counts: dict[int, int] = {}
    for i in proof.basis_ids:
        for r in bases[i]:
            counts[r] = counts.get(r, 0) + 1
    return all(c % 2 == 0 for c in counts.values()) and sorted(counts) == list(proof.ray_ids)


def _closure_check(name: str, system: System, census: Census, seed: int, count: int = 100) -> Check:
    group = automorphism_group(system.graph)
    index = {b: i for i, b in enumerate(system.bases)}
    label = {p.basis_ids: p.label for p in census.proofs()}
    rng = random.Random(seed)
    bad = 0
    for perm in _random_automorphisms(group.generators, system.graph.vertex_count, count, rng):
        for ids, lab in label.items():
            image = tuple(sorted(index.get(tuple(sorted(perm[r] for r in system.bases[i])), -1) for i in ids))
            if label.get(image) != lab:
                bad += 1
    return check(f"structure.{name}.automorphism_closure", bad == 0,
                 f"{count} random automorphisms of a group of order {group.order}")


def lattice_checks(long_running: bool = False, threads: int = 1) -> list[Check]:
    out = []
    for m in range(1, 5):
        n_real = len(real_rays(all_rays(m)))
        out.append(check(f"lattice.kissing_equals_real_rays.m{m}", kissing_number(m) == n_real,
                         f"{kissing_number(m)} vs {n_real}"))
    if long_running:
        _, n_real5 = ray_counts(5, True)
        out.append(check("lattice.kissing_equals_real_rays.m5", kissing_number(5) == n_real5))
    for m in range(2, 5):
        out.append(check(f"lattice.clifford_formula.m{m}", clifford_order(m) == expected.TABLE1[m][4],
                         str(clifford_order(m))))
    ratio = clifford_order(5) / expected.TABLE1_M5_AUT_APPROX
    out.append(Check("lattice.clifford_formula.m5", FLAG,
                     f"formula {clifford_order(5)} vs printed ~4.8e15 (ratio {ratio:.2f})"))
    top = 4 if long_running else 3
    for m in range(1, top + 1):
        real = real_rays(all_rays(m))
        aut = automorphism_order(build_graph(real, threads=threads))
        out.append(check(f"lattice.clifford_equals_graph_aut.m{m}", aut == clifford_order(m), str(aut)))
    for n, (lname, norm, count) in expected.LATTICE_MIN_VECTORS.items():
        basis = bw_generator(n)
        det = basis.gram_determinant()
        out.append(check(f"lattice.{lname}.gram_determinant", det == expected.LATTICE_GRAM_DET[n], str(det)))
        got = minimal_vectors(basis)
        m = n.bit_length() - 1
        out.append(check(f"lattice.{lname}.minimal_vectors", got == (norm, count) and count == kissing_number(m),
                         f"norm {format_d2(Fraction(got[0]))}, count {got[1]}"))
    d4 = bw_generator(4)
    swap = OrthogonalTransform.permutation([1, 0, 2, 3])
    neg = OrthogonalTransform.permutation([0, 1, 2, 3], [-1, -1, -1, -1])
    ident = OrthogonalTransform.permutation([0, 1, 2, 3])
    out.append(check("lattice.D4.automorphisms",
                     all(is_lattice_automorphism(d4, b) for b in (ident, neg, swap, swap @ neg))))
    flip = OrthogonalTransform.permutation(list(range(8)), [-1] + [1] * 7)
    out.append(check("lattice.E8.single_sign_flip_rejected", not is_lattice_automorphism(bw_generator(8), flip)))
    return out


SUITES = {
    "magic": lambda cfg: magic_checks(),
    "colorability": lambda cfg: colorability_checks(cfg.long_running, cfg.threads),
    "structure": lambda cfg: structure_checks(cfg.seed, cfg.threads),
    "lattice": lambda cfg: lattice_checks(cfg.long_running, cfg.threads),
}
