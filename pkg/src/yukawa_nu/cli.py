"""Command-line interface: ``yukawa-nu <subcommand> [flags]``.

Data goes to ``--out`` (or stdout); diagnostics go to stderr.
Exit status: 0 success, 2 argument error, 3 no bound state, 4 solver failure.
"""

import argparse
import contextlib
import csv
import sys

import numpy as np

from . import bench_tables
from .errors import (
    AccuracyError,
    ConvergenceError,
    NoBoundStateError,
    ParameterDomainError,
    StateNotFoundError,
)
from .numeric_solver import SolverConfig, solve_level
from .yukawa_model import (
    PotentialParams,
    QuantumNumbers,
    coulomb_energy,
    energy_nl,
    radial_wavefunction,
)

EXIT_OK, EXIT_USAGE, EXIT_NO_BOUND, EXIT_SOLVER = 0, 2, 3, 4
METHOD_NAMES = {"numerov": "numerov_shooting", "matrix": "matrix_diagonalization"}


def _add_potential(parser, v0_default=None, g_default=None):
    parser.add_argument("--v0", type=float, default=v0_default, required=v0_default is None)
    screen = parser.add_mutually_exclusive_group(required=g_default is None)
    screen.add_argument("--a", type=float, help="screening parameter")
    screen.add_argument("--g", type=float, default=None, help="screening as a = g * v0")
    parser.set_defaults(g_default=g_default)
    parser.add_argument("--m", type=float, default=1.0)
    parser.add_argument("--hbar", type=float, default=1.0)


def _add_state(parser):
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--l", type=int, required=True)


def _add_solver(parser):
    parser.add_argument("--method", choices=sorted(METHOD_NAMES), default="numerov")
    parser.add_argument("--rmin", type=float, default=1e-6)
    parser.add_argument("--rmax", type=float, default=None)
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--tol", type=float, default=1e-10)


def _add_output(parser):
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    parser.add_argument("--format", choices=["csv"], default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="yukawa-nu",
        description="Bound states of the Yukawa potential: closed form and numerical oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", help="closed-form energy of one level")
    _add_state(p)
    _add_potential(p)

    p = sub.add_parser("numeric", help="numerical energy of one level")
    _add_state(p)
    _add_potential(p)
    _add_solver(p)

    p = sub.add_parser("wavefunction", help="sample the normalised closed-form radial function")
    _add_state(p)
    _add_potential(p)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--rmin", type=float, default=0.0)
    p.add_argument("--rmax", type=float, default=None)
    _add_output(p)

    p = sub.add_parser("spectrum", help="all admissible levels up to a principal number")
    _add_potential(p)
    p.add_argument("--nmax", type=int, default=5, help="largest n' = n + l + 1")
    _add_output(p)

    p = sub.add_parser("table", help="regenerate a benchmark table")
    p.add_argument("--id", required=True,
                   choices=["v0-sqrt2", "hbar2m-ground", "hbar2m-excited"])
    _add_solver(p)
    p.add_argument("--include-suspect", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("potential", help="exact vs approximated potential series")
    _add_potential(p, v0_default=bench_tables.FIGURE1_V0, g_default=bench_tables.FIGURE1_G)
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=30.0)
    p.add_argument("--samples", type=int, default=600)
    _add_output(p)
    return parser


def _params(args):
    if args.a is not None:
        a = args.a
    elif args.g is not None:
        a = args.g * args.v0
    else:
        a = args.g_default * args.v0
    return PotentialParams(v0=args.v0, a=a, m=args.m, hbar=args.hbar)


def _config(args):
    return SolverConfig(r_min=args.rmin, r_max=args.rmax, steps=args.steps,
                        energy_tol=args.tol, method=METHOD_NAMES[args.method])


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _fmt(x):
    return bench_tables.format_value(float(x))


def _cmd_energy(args):
    print(format(energy_nl(_params(args), QuantumNumbers(args.n, args.l)), ".6g"))


def _cmd_numeric(args):
    level = solve_level(_params(args), QuantumNumbers(args.n, args.l), _config(args))
    print(format(level.energy, ".10g"))


def _cmd_wavefunction(args):
    p = _params(args)
    state, radial = radial_wavefunction(p, QuantumNumbers(args.n, args.l))
    r_max = args.rmax if args.rmax is not None else state.r_max
    if args.samples < 2 or not 0 <= args.rmin < r_max:
        raise ParameterDomainError("need samples >= 2 and 0 <= rmin < rmax")
    r = np.linspace(args.rmin, r_max, args.samples)
    values = radial(r)
    print(f"energy {state.energy:.10g}, kappa {state.kappa:.10g}, N {state.norm_constant:.10g}",
          file=sys.stderr)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r", "R"])
        for ri, vi in zip(r, values):
            w.writerow([_fmt(ri), _fmt(vi)])


def _cmd_spectrum(args):
    p = _params(args)
    if args.nmax < 1:
        raise ParameterDomainError("--nmax must be at least 1")
    rows = []
    for n_prime in range(1, args.nmax + 1):
        for l in range(n_prime):
            qn = QuantumNumbers(n_prime - l - 1, l)
            try:
                rows.append((qn, energy_nl(p, qn), coulomb_energy(p, n_prime)))
            except NoBoundStateError as exc:
                print(f"skipping {qn.label}: {exc}", file=sys.stderr)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["state", "n", "l", "n_prime", "energy", "coulomb_energy"])
        for qn, e, ec in rows:
            w.writerow([qn.label, qn.n, qn.l, qn.principal, _fmt(e), _fmt(ec)])


def _cmd_table(args):
    rows = bench_tables.generate_table(
        bench_tables.TableId.parse(args.id), _config(args),
        include_suspect=args.include_suspect, workers=args.workers,
    )
    with _open_out(args.out) as fh:
        bench_tables.write_table_csv(rows, fh)
    print(bench_tables.format_report(bench_tables.compare_report(rows)), file=sys.stderr)


def _cmd_potential(args):
    p = _params(args)
    series = bench_tables.figure1_series(p, args.rmin, args.rmax, args.samples)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["r", "v_exact", "v_approx", "relative_error"])
        for r, ve, va in series:
            w.writerow([_fmt(r), _fmt(ve), _fmt(va), _fmt(abs(va - ve) / abs(ve))])


COMMANDS = {
    "energy": _cmd_energy,
    "numeric": _cmd_numeric,
    "wavefunction": _cmd_wavefunction,
    "spectrum": _cmd_spectrum,
    "table": _cmd_table,
    "potential": _cmd_potential,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except NoBoundStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_BOUND
    except ParameterDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, StateNotFoundError, AccuracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
