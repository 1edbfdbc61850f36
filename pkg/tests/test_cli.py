import csv
import io
import json
import subprocess
import sys

import pytest

from paulibks.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


class TestTable1:
    def test_json(self, capsys):
        code, out = run(capsys, "table1", "--qubits", "2", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["status"] == "PASS"
        assert [(r["m"], r["rays"]["value"], r["real_rays"]["value"], r["aut"]["value"]) for r in doc["rows"]] == \
            [(1, 6, 4, 8), (2, 60, 24, 1152)]

    def test_table_and_csv(self, capsys):
        code, out = run(capsys, "table1", "--qubits", "1")
        assert code == 0 and out.splitlines()[0].split()[:2] == ["m", "n"]
        code, out = run(capsys, "table1", "--qubits", "1", "--format", "csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[1][:3] == ["1", "2", "3"]

    def test_m5_needs_flag(self, capsys):
        assert usage_error(capsys, "table1", "--qubits", "5") == 2

    def test_dot_rejected(self, capsys):
        assert usage_error(capsys, "table1", "--qubits", "1", "--format", "dot") == 2


class TestCensus:
    def test_table(self, capsys):
        code, out = run(capsys, "census", "--system", "mermin-square")
        assert code == 0
        lines = out.splitlines()
        assert "kernel dimension 10" in lines[0]
        assert lines[-1] == "total 512 proofs: PASS"
        row = next(l for l in lines if l.startswith("18-9 "))
        assert row.split() == ["18-9", "16", "0", "18", "0", "18", "0", "PASS"]

    def test_json(self, capsys):
        code, out = run(capsys, "census", "--system", "mermin-pentagram", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and doc["total"] == 1024
        assert {c["label"]: c["count"] for c in doc["classes"]} == {"40-15": 64, "38-13": 640, "36-11": 320}
        assert doc["distances"] == ["3/7", "9/14", "6/7"]

    def test_csv_and_dot(self, capsys):
        code, out = run(capsys, "census", "--system", "mermin-square", "--format", "csv")
        assert out.splitlines()[0] == "proof v-l,#proofs,a1=1/3,a2=7/12,a3=2/3,a4=5/6,a5=1,status"
        code, out = run(capsys, "census", "--system", "mermin-square", "--format", "dot")
        assert out.startswith("graph proof_18_9 {") and out.endswith("}\n")

    def test_unknown_system(self, capsys):
        assert usage_error(capsys, "census", "--system", "peres") == 2

    def test_threads_byte_identical(self, tmp_path):
        paths = []
        for t in ("1", "3"):
            p = tmp_path / f"census{t}.json"
            assert main(["census", "--system", "mermin-square", "--format", "json", "--threads", t, "--out", str(p)]) == 0
            paths.append(p)
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestVerify:
    def test_magic(self, capsys):
        code, out = run(capsys, "verify", "magic", "--format", "json")
        assert code == 0 and json.loads(out)["status"] == "PASS"

    def test_unknown_suite(self, capsys):
        assert usage_error(capsys, "verify", "nonsense") == 2

    def test_bad_threads(self, capsys):
        assert usage_error(capsys, "verify", "magic", "--threads", "0") == 2


class TestExport:
    def test_rays(self, capsys):
        code, out = run(capsys, "export", "rays", "--qubits", "1")
        lines = out.splitlines()
        assert lines[0] == "# id m re,im ..."
        assert len(lines) == 7 and lines[1] == "0 1 1,0 1,0"

    def test_rays_json_real(self, capsys):
        code, out = run(capsys, "export", "rays", "--qubits", "2", "--real", "--format", "json")
        doc = json.loads(out)
        assert doc["m"] == 2 and len(doc["rays"]) == 24

    def test_graph(self, capsys):
        code, out = run(capsys, "export", "graph", "--qubits", "2", "--real")
        lines = out.splitlines()
        assert lines[0] == "24 108" and len(lines) == 109
        code, out = run(capsys, "export", "graph", "--qubits", "1", "--format", "dot")
        assert out.startswith("graph ortho_m1 {")

    def test_lattice(self, capsys):
        code, out = run(capsys, "export", "lattice", "--dim", "4")
        assert code == 0 and out.startswith("# D4 generator\n")
        assert "# D4 gram\n" in out

    def test_lattice_unsupported(self, capsys):
        code = main(["export", "lattice", "--dim", "32"])
        assert code == 3
        assert "error:" in capsys.readouterr().err

    def test_out_file(self, tmp_path):
        p = tmp_path / "rays.txt"
        assert main(["export", "rays", "--qubits", "1", "--out", str(p)]) == 0
        text = p.read_text()
        assert text.endswith("1,0\n") and not text.endswith("\n\n")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "paulibks.cli", "verify", "magic"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.count("PASS") == 2
