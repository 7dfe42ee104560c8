"""Command-line front end.

Every subcommand reads a problem file (see :mod:`hyperadj.fileio`)::

    hyperadj adjoints --m 1 --n 1 problem.json
    hyperadj validate problem.json
    hyperadj order problem.json
    hyperadj puiseux curve.json --out divisors/
    hyperadj genus curve.json
    hyperadj dump-matrix problem.json

Exit status is 0 on success, 2 for bad input, 3 when a truncated series
ran out of precision and 1 for anything else.  Failures print a single
``error: <Kind>: <message>`` line on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .adjoint import AdjointProblem, assemble_constraints, adjoint_basis
from .divisor import adjoint_order, validate_divisor
from .errors import (
    AdjointError,
    BadLevel,
    HintMismatch,
    InputError,
    PrecisionExhausted,
    TowerMismatch,
    VariableMismatch,
)
from .fileio import Problem, dump_divisors, load_divisors, load_problem
from .parsing import parse_poly, parse_series, parse_tower_elem
from .puiseux import curve_divisors, plane_curve_adjoints

__all__ = ["main", "run", "build_parser", "parse_poly", "parse_series", "parse_tower_elem"]

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3

COMMANDS = ("adjoints", "validate", "order", "puiseux", "genus", "dump-matrix")


class ValidationFailed(AdjointError):
    kind = "ValidationFailed"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperadj", description="Adjoint forms of projective hypersurfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, problem_options=True):
        sp.add_argument("problem", help="problem file (JSON)")
        sp.add_argument("--divisors", metavar="PATH", help="divisor file or directory; replaces the problem's divisors")
        if problem_options:
            sp.add_argument("--m", type=int, help="power of the canonical sheaf")
            sp.add_argument("--n", type=int, help="twist")
            sp.add_argument("--order", choices=("degrevlex", "lex"), help="monomial order for the quotient basis")
            sp.add_argument("--normalize-rows", action="store_true", default=None,
                            help="scale constraint rows to primitive integer vectors")
            sp.add_argument("--precision-cap", type=int, metavar="N",
                            help="largest branch frontier tried for plane curves")

    sp = sub.add_parser("adjoints", help="print a basis of the adjoint forms")
    common(sp)
    sp.add_argument("--dump-matrix", metavar="PATH", help="also write the constraint matrix")
    common(sub.add_parser("validate", help="check the divisors against the hypersurface"), False)
    common(sub.add_parser("order", help="print the adjoint order of every divisor"), False)
    sp = sub.add_parser("puiseux", help="compute the branch divisors of a plane curve")
    sp.add_argument("problem", help="problem file (JSON)")
    sp.add_argument("--out", metavar="DIR", help="write one file per divisor instead of printing")
    sp.add_argument("--frontier", type=int, metavar="N", help="absolute precision of the branches")
    sp = sub.add_parser("genus", help="geometric genus of an irreducible plane curve")
    sp.add_argument("problem", help="problem file (JSON)")
    sp.add_argument("--precision-cap", type=int, metavar="N")
    sp = sub.add_parser("dump-matrix", help="write the stacked constraint matrix")
    common(sp)
    sp.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    return p


def _problem(args) -> Problem:
    prob = load_problem(args.problem)
    if getattr(args, "divisors", None):
        prob.divisors = load_divisors(args.divisors)
    for key in ("m", "n", "order", "precision_cap"):
        v = getattr(args, key, None)
        if v is not None:
            setattr(prob, key, v)
    if getattr(args, "normalize_rows", None):
        prob.normalize_rows = True
    if prob.m < 1:
        raise InputError(f"m must be a positive integer, got {prob.m}")
    return prob


def _plane_curve(prob: Problem) -> bool:
    return prob.F.nvars == 3


def _ensure_divisors(prob: Problem, frontier: int | None = None):
    """Fill in branch divisors for a plane curve given without any."""
    if prob.divisors:
        return
    if not _plane_curve(prob):
        raise InputError("hypersurfaces of dimension 2 or more need an explicit divisor set")
    _, prob.divisors = curve_divisors(prob.F, frontier)


def _solve(prob: Problem):
    """``(problem, basis)``; plane curves without divisors go through Puiseux."""
    if not prob.divisors and _plane_curve(prob):
        basis, divisors = plane_curve_adjoints(
            prob.F, prob.m, prob.n, prob.order, prob.normalize_rows, prob.precision_cap
        )
        prob.divisors = divisors
        return prob.adjoint_problem(), basis
    if not prob.divisors:
        raise InputError("hypersurfaces of dimension 2 or more need an explicit divisor set")
    problem = prob.adjoint_problem()
    return problem, adjoint_basis(problem)


def _mono_str(names: Sequence[str], e: Sequence[int]) -> str:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def write_matrix(problem: AdjointProblem, out: TextIO):
    """Stacked constraint matrix, one row per line with its provenance."""
    basis, blocks = assemble_constraints(problem)
    vs = problem.F.variables
    out.write(f"columns {len(basis)}: " + " ".join(_mono_str(vs, b) for b in basis) + "\n")
    phis = {d.name: d for d in problem.divisors}
    for blk in blocks:
        K = phis[blk.divisor].tower
        out.write(f"divisor {blk.divisor}: alpha={blk.alpha} bound={blk.bound} rows={len(blk.rows)}\n")
        gens = list(reversed(K.gens))
        for row, (j, path, mono) in zip(blk.rows, blk.tags):
            where = [f"t^{j}"]
            where += [f"{g}^{r}" for g, r in zip(gens, path)]
            if K.transcendentals:
                where.append(_mono_str(K.transcendentals, mono))
            out.write(f"{blk.divisor} [{' '.join(where)}]: " + " ".join(str(x) for x in row) + "\n")


def _cmd_adjoints(args, out: TextIO) -> int:
    prob = _problem(args)
    problem, basis = _solve(prob)
    for f in basis:
        out.write(f"{f}\n")
    if args.dump_matrix:
        with open(args.dump_matrix, "w", encoding="utf-8") as fh:
            write_matrix(problem, fh)
    return EXIT_OK


def _cmd_validate(args, out: TextIO) -> int:
    prob = _problem(args)
    _ensure_divisors(prob)
    failed = []
    for phi in prob.divisors:
        rep = validate_divisor(phi, prob.F)
        out.write(f"divisor {phi.name}\n")
        for line in rep.lines():
            out.write(f"  {line}\n")
        if not rep.ok:
            failed.append(phi.name)
    if failed:
        raise ValidationFailed(f"divisors failing validation: {', '.join(failed)}")
    return EXIT_OK


def _cmd_order(args, out: TextIO) -> int:
    prob = _problem(args)
    _ensure_divisors(prob)
    for phi in prob.divisors:
        out.write(f"{phi.name}: {adjoint_order(phi, prob.F)}\n")
    return EXIT_OK


def _cmd_puiseux(args, out: TextIO) -> int:
    prob = load_problem(args.problem)
    if not _plane_curve(prob):
        raise InputError("puiseux needs a plane curve (three homogeneous variables)")
    _, divisors = curve_divisors(prob.F, args.frontier)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for phi in divisors:
            path = d / f"{phi.name}.json"
            path.write_text(dump_divisors(phi), encoding="utf-8")
            out.write(f"{path}\n")
    else:
        out.write(dump_divisors(divisors))
    return EXIT_OK


def _cmd_genus(args, out: TextIO) -> int:
    prob = load_problem(args.problem)
    if not _plane_curve(prob):
        raise InputError("genus needs a plane curve (three homogeneous variables)")
    if args.precision_cap is not None:
        prob.precision_cap = args.precision_cap
    basis, _ = plane_curve_adjoints(prob.F, 1, 0, prob.order, prob.normalize_rows, prob.precision_cap)
    out.write(f"{len(basis)}\n")
    return EXIT_OK


def _cmd_dump_matrix(args, out: TextIO) -> int:
    prob = _problem(args)
    if not prob.divisors and _plane_curve(prob):
        _solve(prob)
    elif not prob.divisors:
        raise InputError("hypersurfaces of dimension 2 or more need an explicit divisor set")
    problem = prob.adjoint_problem()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_matrix(problem, fh)
    else:
        write_matrix(problem, out)
    return EXIT_OK


_HANDLERS = {
    "adjoints": _cmd_adjoints,
    "validate": _cmd_validate,
    "order": _cmd_order,
    "puiseux": _cmd_puiseux,
    "genus": _cmd_genus,
    "dump-matrix": _cmd_dump_matrix,
}


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, PrecisionExhausted):
        return EXIT_PRECISION
    if isinstance(exc, (InputError, HintMismatch, TowerMismatch, VariableMismatch, BadLevel)):
        return EXIT_INPUT
    return EXIT_OTHER


def run(command: str, args: Sequence[str] = (), out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Run one subcommand; returns the exit status."""
    return main([command, *args], out=out, err=err)


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args, out)
    except AdjointError as exc:
        err.write(f"error: {exc.kind}: {exc}\n")
        return exit_code(exc)
    except RecursionError:
        err.write("error: RecursionError: expression nested too deeply\n")
        return EXIT_INPUT
    except OSError as exc:
        err.write(f"error: OSError: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
