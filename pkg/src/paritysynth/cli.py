"""Command-line interface.

Exit codes: 0 on success, 1 when ``verify`` finds a mismatch, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuitio import parse_matrix, parse_parity_set, parse_phase_poly, parse_qc, write_qc
from .errors import ParitySynthError
from .f2linear import BitMatrix
from .optimizer import TEMPLATES, decompose_mcx, decompose_toffoli, optimize, stats
from .oracle import DEFAULT_MAX_LEN, gap_experiment, min_parity_network, write_gap_csv
from .paritynet import synth_phase_circuit
from .verify import DEFAULT_TOL, equivalent_unitary

__all__ = ["run", "main", "build_parser"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paritysynth", description="Parity-network synthesis and Clifford+T optimization.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="phase polynomial file to a CNOT+RZ circuit")
    s.add_argument("phasepoly")
    s.add_argument("--pointed", default="identity", help="matrix file for the final transform, or 'identity'")
    s.add_argument("-o", "--output")

    o = sub.add_parser("optimize", help="decompose and optimize a circuit")
    o.add_argument("circuit")
    o.add_argument("-o", "--output")
    o.add_argument("--stats", action="store_true", help="print counts before and after to stderr")
    o.add_argument("--template", choices=sorted(TEMPLATES), default="tdepth3")

    st = sub.add_parser("stats", help="gate counts of a circuit")
    st.add_argument("circuit")
    st.add_argument("--raw", action="store_true", help="count as written, without decomposing Toffoli/MCX")
    st.add_argument("--template", choices=sorted(TEMPLATES), default="tdepth3")

    v = sub.add_parser("verify", help="unitary equivalence up to global phase")
    v.add_argument("a")
    v.add_argument("b")
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)

    r = sub.add_parser("oracle", help="exact minimal parity network")
    r.add_argument("parityset")
    r.add_argument("--pointed", default=None, help="matrix file for the final transform, or 'identity'")
    r.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)

    e = sub.add_parser("experiment", help="experiments")
    e.add_argument("name", choices=["gap"])
    e.add_argument("--n", type=int, default=4)
    e.add_argument("--samples", type=int, default=200)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--sizes", type=int, nargs="+", default=None)
    e.add_argument("--csv", default=None, help="output path; stdout when omitted")
    e.add_argument("--jobs", type=int, default=1)
    return p


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _matrix(arg: str | None, n: int) -> BitMatrix | None:
    if arg is None:
        return None
    if arg == "identity":
        return BitMatrix.identity(n)
    A = parse_matrix(_read(arg))
    if A.shape != (n, n):
        raise ParitySynthError(f"pointed matrix has shape {A.shape}, expected {(n, n)}")
    return A


def _lowered(path: str, template: str):
    C = parse_qc(_read(path))
    return C, decompose_toffoli(decompose_mcx(C), template)


def _dispatch(args) -> int:
    if args.command == "synth":
        f = parse_phase_poly(_read(args.phasepoly))
        C = synth_phase_circuit(f, _matrix(args.pointed, f.n))
        _emit(write_qc(C), args.output)
    elif args.command == "optimize":
        _, base = _lowered(args.circuit, args.template)
        out = optimize(base)
        if args.stats:
            print("before " + stats(base).line(), file=sys.stderr)
            print("after  " + stats(out).line(), file=sys.stderr)
        _emit(write_qc(out), args.output)
    elif args.command == "stats":
        if args.raw:
            C = parse_qc(_read(args.circuit))
        else:
            C = _lowered(args.circuit, args.template)[1]
        print(stats(C).line())
    elif args.command == "verify":
        a = parse_qc(_read(args.a))
        b = parse_qc(_read(args.b))
        same = equivalent_unitary(a, b, args.tol)
        print("equivalent" if same else "not equivalent")
        return 0 if same else 1
    elif args.command == "oracle":
        S = parse_parity_set(_read(args.parityset))
        length, C = min_parity_network(S, _matrix(args.pointed, S.n), args.max_len)
        print(f"length={length}")
        sys.stdout.write(write_qc(C))
    elif args.command == "experiment":
        rows = gap_experiment(args.n, args.sizes, args.samples, args.seed, args.jobs)
        _emit(write_gap_csv(rows), args.csv)
    return 0


def run(argv: list[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _dispatch(args)
    except (ParitySynthError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
