import random
import subprocess
import sys

import pytest

from gen import random_clifford_t
from paritysynth.circuit import Circuit
from paritysynth.circuitio import parse_qc, write_parity_set, write_phase_poly, write_qc
from paritysynth.cli import run
from paritysynth.f2linear import BitMatrix
from paritysynth.optimizer import mcx_circuit
from paritysynth.paritynet import ParitySet
from paritysynth.phasepoly import PhasePolynomial, extract_sop


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def ccz_text():
    f = PhasePolynomial(3)
    for y in range(1, 8):
        f.add_term(y, "3/8" if bin(y).count("1") == 2 else "1/8")
    return write_phase_poly(f)


def test_stats_lambda3(files, capsys):
    path = files("l3.qc", write_qc(mcx_circuit(3)))
    assert run(["stats", path]) == 0
    assert capsys.readouterr().out.startswith("cnot=21 t=21 ")


def test_stats_raw(files, capsys):
    path = files("l3.qc", write_qc(mcx_circuit(3)))
    assert run(["stats", "--raw", path]) == 0
    assert capsys.readouterr().out.strip() == "cnot=0 t=0 tdepth=0 h=0 total=1"


def test_verify_self(files, capsys):
    path = files("a.qc", write_qc(mcx_circuit(2)))
    assert run(["verify", path, path]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"


def test_verify_mismatch(files):
    a = files("a.qc", ".v q\nBEGIN\nT q\nEND\n")
    b = files("b.qc", ".v q\nBEGIN\nS q\nEND\n")
    assert run(["verify", a, b]) == 1


def test_verify_arity_mismatch(files):
    a = files("a.qc", ".v q\nBEGIN\nEND\n")
    b = files("b.qc", ".v q r\nBEGIN\nEND\n")
    assert run(["verify", a, b]) == 2


def test_optimize_then_verify(files, capsys):
    rng = random.Random(70)
    C = random_clifford_t(rng, 5, 40)
    src = files("c.qc", write_qc(C))
    out = src + ".opt"
    assert run(["optimize", src, "-o", out, "--stats"]) == 0
    err = capsys.readouterr().err
    assert err.startswith("before cnot=") and "after  cnot=" in err
    assert run(["verify", src, out]) == 0


def test_optimize_stdout(files, capsys):
    src = files("c.qc", ".v a\nBEGIN\nT a\nT a\nEND\n")
    assert run(["optimize", src]) == 0
    assert capsys.readouterr().out == ".v a\nBEGIN\nS a\nEND\n"


def test_synth(files, capsys):
    pp = files("ccz.pp", ccz_text())
    assert run(["synth", pp]) == 0
    C = parse_qc(capsys.readouterr().out)
    assert C.cnot_count() == 6 and extract_sop(C).transform.is_identity()


def test_synth_pointed_matrix(files, capsys):
    pp = files("f.pp", "n 2\n1/8 11\n")
    mat = files("a.mat", "01\n10\n")
    assert run(["synth", pp, "--pointed", mat]) == 0
    C = parse_qc(capsys.readouterr().out)
    assert extract_sop(C).transform == BitMatrix(["01", "10"])
    bad = files("b.mat", "011\n101\n110\n")
    assert run(["synth", pp, "--pointed", bad]) == 2


def test_oracle(files, capsys):
    ps = files("s.ps", write_parity_set(ParitySet(3, ["110", "101", "011"])))
    assert run(["oracle", ps]) == 0
    assert capsys.readouterr().out.startswith("length=3\n")
    assert run(["oracle", ps, "--pointed", "identity"]) == 0
    assert capsys.readouterr().out.startswith("length=5\n")
    assert run(["oracle", ps, "--pointed", "identity", "--max-len", "2"]) == 2


def test_experiment_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["experiment", "gap", "--n", "3", "--samples", "15", "--seed", "4"]
    assert run(args + ["--csv", str(a)]) == 0
    assert run(args + ["--csv", str(b), "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert run(args) == 0
    assert capsys.readouterr().out.encode() == a.read_bytes()


def test_usage_errors(files, capsys):
    assert run([]) == 2
    assert run(["bogus"]) == 2
    assert run(["stats", "/nonexistent/file.qc"]) == 2
    bad = files("bad.qc", ".v a\nBEGIN\nQ a\nEND\n")
    assert run(["stats", bad]) == 2
    assert "line 3" in capsys.readouterr().err


def test_help():
    assert run(["--help"]) == 0


def test_module_entry_point(files):
    path = files("a.qc", write_qc(Circuit(1)))
    proc = subprocess.run([sys.executable, "-m", "paritysynth", "stats", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "cnot=0 t=0 tdepth=0 h=0 total=0"
