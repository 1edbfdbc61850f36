"""Command-line entry point: ``paulibks {table1,census,verify,export}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import expected
from .errors import PauliBKSError
from .geometry import sharing_multigraph
from .graph import OrthoGraph, build_graph, to_dot, to_edge_list
from .lattice import bw_generator, format_matrix
from .rays import all_rays, real_rays
from .verify import FAIL, SUITES, census_document, system_and_census, table1

FORMATS = ("table", "json", "csv", "dot")


@dataclass
class RunConfig:
    command: str
    qubits: int = 3
    system: str = "mermin-square"
    suite: str = "all"
    fmt: str = "table"
    out: str | None = None
    long_running: bool = False
    threads: int = 1
    seed: int = 0


class UsageError(Exception):
    pass


def _emit(text: str, cfg: RunConfig) -> None:
    text = text.rstrip("\n") + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return json.dumps(doc, indent=2)


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _align(rows: Sequence[Sequence]) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


# ---------------------------------------------------------------------------


def cmd_table1(cfg: RunConfig) -> int:
    top = 5 if cfg.long_running else 4
    if not 1 <= cfg.qubits <= top:
        raise UsageError(f"--qubits must be in 1..{top} for table1" + ("" if cfg.long_running else " (5 needs --long-running)"))
    rows = table1(cfg.qubits, cfg.long_running, cfg.threads)
    failed = any(c.status == FAIL for r in rows for c in r["cells"].values())
    keys = ("mcs", "rays", "real_rays", "aut")
    if cfg.fmt == "json":
        doc = {"rows": [{"m": r["m"], "n": r["n"], **{k: r["cells"][k].as_dict() for k in keys}} for r in rows],
               "status": FAIL if failed else "PASS"}
        text = _json(doc)
    elif cfg.fmt == "csv":
        head = ["m", "n"] + [f"{k}{s}" for k in keys for s in ("", "_expected", "_status")]
        body = [[r["m"], r["n"]] + [x for k in keys for x in (
            "" if r["cells"][k].value is None else r["cells"][k].value,
            "" if r["cells"][k].expected is None else r["cells"][k].expected,
            r["cells"][k].status)] for r in rows]
        text = _csv([head] + body)
    elif cfg.fmt == "table":
        def show(c):
            return f"{'-' if c.value is None else c.value} {c.status}"
        body = [[r["m"], r["n"]] + [show(r["cells"][k]) for k in keys] for r in rows]
        text = _align([["m", "n", "#mcs", "#rays", "#real rays", "#aut group"]] + body)
        if any(r["m"] == 5 for r in rows):
            text += (f"\nnote: printed m=5 group order ~{expected.TABLE1_M5_AUT_APPROX:.1e} is inconsistent"
                     " with the Clifford order formula; flagged, not checked")
    else:
        raise UsageError("table1 supports --format table, json or csv")
    _emit(text, cfg)
    return 1 if failed else 0


def cmd_census(cfg: RunConfig) -> int:
    if cfg.system not in expected.CENSUS_TABLES:
        raise UsageError(f"unknown system {cfg.system!r}; choose from {sorted(expected.CENSUS_TABLES)}")
    doc = census_document(cfg.system, cfg.threads)
    distances = doc["distances"]
    if cfg.fmt == "json":
        text = _json(doc)
    elif cfg.fmt in ("table", "csv"):
        head = ["proof v-l", "#proofs"] + [f"a{i + 1}={d}" for i, d in enumerate(distances)] + ["status"]
        body = [[c["label"], c["count"]] + [c["histogram"].get(d, 0) for d in distances] + [c["status"]]
                for c in doc["classes"]]
        if cfg.fmt == "csv":
            text = _csv([head] + body)
        else:
            text = (f"system {doc['system']}: {doc['rays']} rays, {len(doc['bases'])} bases, "
                    f"kernel dimension {doc['kernel_dimension']}\n"
                    + _align([head] + body)
                    + f"\ntotal {doc['total']} proofs: {doc['status']}")
    else:
        system, census = system_and_census(cfg.system, cfg.threads)
        smallest = min(census.classes.values(), key=lambda c: (c.l, c.label))
        proof = smallest.proofs[0]
        g = sharing_multigraph(proof.basis_ids, system.bases)
        lines = [f"graph proof_{smallest.label.replace('-', '_')} {{"]
        lines += [f'  {i} [label="{b}"];' for i, b in enumerate(proof.basis_ids)]
        for label, layer in zip(g.layer_labels, g.layers):
            for a in range(g.vertex_count):
                for b in range(a + 1, g.vertex_count):
                    if layer[a] >> b & 1:
                        lines.append(f'  {a} -- {b} [label="{label}"];')
        lines.append("}")
        text = "\n".join(lines)
    _emit(text, cfg)
    return 0 if doc["status"] == "PASS" else 1


def cmd_verify(cfg: RunConfig) -> int:
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {sorted(SUITES) + ['all']}")
    checks = [c for n in names for c in SUITES[n](cfg)]
    failed = any(c.status == FAIL for c in checks)
    if cfg.fmt == "json":
        text = _json({"checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
                      "status": FAIL if failed else "PASS"})
    elif cfg.fmt == "csv":
        text = _csv([["name", "status", "detail"]] + [[c.name, c.status, c.detail] for c in checks])
    elif cfg.fmt == "table":
        text = _align([[c.status, c.name, c.detail] for c in checks])
    else:
        raise UsageError("verify supports --format table, json or csv")
    _emit(text, cfg)
    return 1 if failed else 0


def cmd_export(cfg: RunConfig, what: str, real: bool, dim: int) -> int:
    if what == "lattice":
        basis = bw_generator(dim)
        gram = basis.gram()
        text = (f"# {basis.name} generator\n" + format_matrix(basis.rows)
                + f"# {basis.name} gram\n" + format_matrix(gram.tolist()))
        _emit(text, cfg)
        return 0
    catalog = all_rays(cfg.qubits, cfg.long_running)
    if real:
        catalog = real_rays(catalog)
    if what == "rays":
        if cfg.fmt == "json":
            text = _json({"m": catalog.m, "rays": [
                {"id": i, "amplitudes": [[a.re, a.im] for a in r.amplitudes]} for i, r in enumerate(catalog)]})
        elif cfg.fmt == "table":
            lines = ["# id m re,im ..."]
            lines += [f"{i} {r.m} " + " ".join(f"{a.re},{a.im}" for a in r.amplitudes) for i, r in enumerate(catalog)]
            text = "\n".join(lines)
        else:
            raise UsageError("ray export supports --format table or json")
    else:
        graph: OrthoGraph = build_graph(catalog, threads=cfg.threads)
        if cfg.fmt == "dot":
            text = to_dot(graph, name=f"ortho_m{catalog.m}")
        elif cfg.fmt == "table":
            text = to_edge_list(graph)
        else:
            raise UsageError("graph export supports --format table (edge list) or dot")
    _emit(text, cfg)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--long-running", action="store_true",
                        help="allow m=5 enumerations and full sweeps")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks only")

    p = argparse.ArgumentParser(prog="paulibks", description="Pauli-group rays and parity proofs")
    sub = p.add_subparsers(dest="command", required=True)
    t = sub.add_parser("table1", parents=[common], help="reproduce ray counts and symmetry orders")
    t.add_argument("--qubits", type=int, default=3, help="largest qubit count m")
    c = sub.add_parser("census", parents=[common], help="parity-proof census of a magic configuration")
    c.add_argument("--system", required=True)
    v = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    v.add_argument("suite", nargs="?", default="all")
    e = sub.add_parser("export", parents=[common], help="export rays, graphs or lattice matrices")
    e.add_argument("what", choices=("rays", "graph", "lattice"))
    e.add_argument("--qubits", type=int, default=2)
    e.add_argument("--real", action="store_true", help="real rays only")
    e.add_argument("--dim", type=int, default=8, help="lattice dimension for 'export lattice'")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    cfg = RunConfig(
        command=args.command,
        qubits=getattr(args, "qubits", 3),
        system=getattr(args, "system", "mermin-square"),
        suite=getattr(args, "suite", "all"),
        fmt=args.fmt,
        out=args.out,
        long_running=args.long_running,
        threads=args.threads,
        seed=args.seed,
    )
    try:
        if cfg.command == "table1":
            return cmd_table1(cfg)
        if cfg.command == "census":
            return cmd_census(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        return cmd_export(cfg, args.what, args.real, args.dim)
    except UsageError as exc:
        parser.error(str(exc))
    except PauliBKSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
