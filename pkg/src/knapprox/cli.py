"""Command line interface: ``knapprox {table,bound,gen,solve,verify,random,reduce}``.

Exit codes: 0 success, 1 usage error, 2 node budget exceeded, 3 property
violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import bounds, model, sequences, solver, worstgen
from .numeric import DomainError, format_rational, parse_rational, to_decimal

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VIOLATION = 0, 1, 2, 3

DEFAULT_TOL = Fraction(1, 10**9)


class UsageError(Exception):
    pass


def _rat(x: Fraction, digits: int = 15) -> dict:
    return {"exact": format_rational(x), "decimal": to_decimal(x, digits)}


# -- table -----------------------------------------------------------------------

CSV_HEADER = ["n", "delta", "epsilon", "alpha_pq", "alpha_decimal"]


def cmd_table(max_n: int, fmt: str = "text", digits: int = 15) -> str:
    if max_n < 1:
        raise UsageError("--max-n must be >= 1")
    rows = [
        [str(r.n), str(r.delta), str(r.epsilon), format_rational(r.alpha1),
         to_decimal(r.alpha1, digits)]
        for r in sequences.sequence_table(max_n)
    ]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([dict(zip(CSV_HEADER, r)) for r in rows], indent=2) + "\n"
    widths = [max(len(h), *(len(r[k]) for r in rows)) for k, h in enumerate(CSV_HEADER)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(CSV_HEADER, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


# -- bound -----------------------------------------------------------------------

def bound_dict(b: bounds.BoundBreakdown, digits: int = 15) -> dict:
    return {
        "m": b.m,
        "n": b.n,
        "q": b.q,
        "r": b.r,
        "alpha_mn": _rat(b.alpha_mn, digits),
        "sandwich_lo": _rat(b.sandwich_lo, digits),
        "sandwich_hi": _rat(b.sandwich_hi, digits),
        "asymptotic": bounds.asymptotic_reference(b.m, min(digits, 15)),
    }


# -- verify ----------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    m: int
    n: int
    tol: Fraction
    bound: Fraction
    measured: Optional[Fraction]
    gap: Optional[Fraction]
    solver_status: solver.Status
    nodes_used: int
    blocks: list = field(default_factory=list)  # (k, opt, expected, all_ones)

    @property
    def blocks_ok(self) -> bool:
        return all(opt == want and ones for _, opt, want, ones in self.blocks)

    @property
    def ok(self) -> bool:
        return (
            self.solver_status is solver.Status.PROVEN_OPTIMAL
            and self.gap is not None
            and self.gap >= 0
            and self.blocks_ok
        )

    def to_dict(self, digits: int = 15) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "tol": format_rational(self.tol),
            "bound": _rat(self.bound, digits),
            "measured": None if self.measured is None else _rat(self.measured, digits),
            "gap": None if self.gap is None else format_rational(self.gap),
            "solver_status": self.solver_status.value,
            "nodes_used": self.nodes_used,
            "blocks": [
                {"k": k, "opt": format_rational(opt), "expected": format_rational(want),
                 "all_ones_witness": ones}
                for k, opt, want, ones in self.blocks
            ],
        }


def cmd_verify(m: int, n: int, tol=DEFAULT_TOL,
               node_budget: int = solver.DEFAULT_NODE_BUDGET) -> VerifyReport:
    if not 1 <= m <= n:
        raise UsageError(f"need 1 <= m <= n, got m={m}, n={n}")
    instance, spec = worstgen.generate(m, n, tol)
    limits = solver.SolveLimits(node_budget=node_budget, block_decompose=True)
    result = solver.solve_exact(instance, limits)
    if not result.proven:
        return VerifyReport(m, n, spec.tol, spec.expected_alpha, None, None,
                            result.status, result.nodes_used)

    checks = []
    structure, parts = model.split_blocks(instance)
    for k, part in zip(spec.block_sizes, parts):
        sub = solver.solve_exact(part, limits)
        expected = Fraction(sequences.epsilon(k), sequences.delta(k))
        checks.append((k, sub.opt_value, expected, sub.witness == (1,) * k))
    report = model.precision(instance, result.as_opt())
    return VerifyReport(
        m, n, spec.tol, spec.expected_alpha, report.alpha,
        report.alpha - spec.expected_alpha, result.status, result.nodes_used, checks,
    )


# -- random ----------------------------------------------------------------------

def _random_fraction(rng: random.Random, num_cap: int, den_cap: int) -> Fraction:
    return Fraction(rng.randint(0, num_cap), rng.randint(1, den_cap))


def random_instance(rng: random.Random, m: int, n: int, coef_cap: int = 5,
                    bound_cap: int = 10, box_cap: Optional[int] = None) -> model.Instance:
    """A well-posed instance with entries p/q, p, q <= coef_cap, 0 <= b_i <= bound_cap.

    All-zero columns are redrawn; with ``box_cap`` the whole instance is
    redrawn until its single-item box has at most that many points.
    """
    while True:
        cols = []
        for _ in range(n):
            col = [_random_fraction(rng, coef_cap, coef_cap) for _ in range(m)]
            while not any(col):
                col = [_random_fraction(rng, coef_cap, coef_cap) for _ in range(m)]
            cols.append(col)
        A = [[cols[j][i] for j in range(n)] for i in range(m)]
        b = [Fraction(rng.randint(0, bound_cap * coef_cap), coef_cap) for _ in range(m)]
        c = [_random_fraction(rng, coef_cap, coef_cap) for _ in range(n)]
        inst = model.Instance(A, b, c)
        if box_cap is None or solver.box_size(inst) <= box_cap:
            return inst


@dataclass
class RandomSummary:
    m: int
    n: int
    count: int
    seed: int
    bound: Optional[Fraction]
    min_alpha: Optional[Fraction] = None
    min_instance: Optional[model.Instance] = None
    violations: list = field(default_factory=list)
    budget_exceeded: int = 0

    @property
    def exit_code(self) -> int:
        if self.violations:
            return EXIT_VIOLATION
        if self.budget_exceeded:
            return EXIT_BUDGET
        return EXIT_OK

    def to_dict(self, digits: int = 15) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "count": self.count,
            "seed": self.seed,
            "bound": None if self.bound is None else _rat(self.bound, digits),
            "min_alpha": None if self.min_alpha is None else _rat(self.min_alpha, digits),
            "min_instance": None if self.min_instance is None else self.min_instance.to_dict(),
            "violations": [inst.to_dict() for inst in self.violations],
            "budget_exceeded": self.budget_exceeded,
        }


def cmd_random(m: int, n: int, count: int, seed: int, coef_cap: int = 5,
               bound_cap: int = 10, box_cap: int = 10**5,
               node_budget: int = solver.DEFAULT_NODE_BUDGET) -> RandomSummary:
    if not 1 <= m <= n:
        raise UsageError(f"need 1 <= m <= n, got m={m}, n={n}")
    if count < 0 or coef_cap < 1 or bound_cap < 0:
        raise UsageError("count, coef-cap and bound-cap must be nonnegative (coef-cap >= 1)")
    bound = bounds.alpha_mn(m, n).alpha_mn
    summary = RandomSummary(m, n, count, seed, bound)
    rng = random.Random(seed)
    limits = solver.SolveLimits(node_budget=node_budget)
    for _ in range(count):
        inst = random_instance(rng, m, n, coef_cap, bound_cap, box_cap)
        result = solver.solve_exact(inst, limits)
        if not result.proven:
            summary.budget_exceeded += 1
            continue
        alpha = model.precision(inst, result.as_opt()).alpha
        if alpha < bound:
            summary.violations.append(inst)
        if summary.min_alpha is None or alpha < summary.min_alpha:
            summary.min_alpha, summary.min_instance = alpha, inst
    return summary


# -- reduce ----------------------------------------------------------------------

def cmd_reduce(instance: model.Instance) -> tuple[model.Instance, list]:
    reduced = model.reduce_columns(instance)
    zeroed = [
        (i, j)
        for i in range(instance.m)
        for j in range(instance.n)
        if instance.A[i][j] != reduced.A[i][j]
    ]
    return reduced, zeroed


# -- argument parsing ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tol(text: str) -> Fraction:
    """Rational tolerance; CLI-only convenience also accepts 1e-9 style input."""
    try:
        value = parse_rational(text)
    except ValueError:
        try:
            value = Fraction(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knapprox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="delta_n, epsilon_n, alpha_1n")
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", choices=["text", "csv", "json"], default="text")
    t.add_argument("--digits", type=int, default=15)

    b = sub.add_parser("bound", help="exact alpha_mn with its sandwich bounds")
    b.add_argument("-m", type=int, required=True)
    b.add_argument("-n", type=int, required=True)
    b.add_argument("--digits", type=int, default=15)
    b.add_argument("--format", choices=["text", "json"], default="text")

    g = sub.add_parser("gen", help="write a worst-case instance")
    g.add_argument("-m", type=int, required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--tol", type=_tol, default=DEFAULT_TOL)
    g.add_argument("-o", "--output", required=True)

    s = sub.add_parser("solve", help="exact optimum and precision of an instance file")
    s.add_argument("file")
    s.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    s.add_argument("--no-decompose", action="store_true")
    s.add_argument("--format", choices=["text", "json"], default="json")

    v = sub.add_parser("verify", help="check that the worst-case instance meets the bound")
    v.add_argument("-m", type=int, required=True)
    v.add_argument("-n", type=int, required=True)
    v.add_argument("--tol", type=_tol, default=DEFAULT_TOL)
    v.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)
    v.add_argument("--format", choices=["text", "json"], default="json")

    r = sub.add_parser("random", help="random search for precision below alpha_mn")
    r.add_argument("-m", type=int, required=True)
    r.add_argument("-n", type=int, required=True)
    r.add_argument("--count", type=int, required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--coef-cap", type=int, default=5)
    r.add_argument("--bound-cap", type=int, default=10)
    r.add_argument("--box-cap", type=int, default=10**5)
    r.add_argument("--node-budget", type=int, default=solver.DEFAULT_NODE_BUDGET)

    d = sub.add_parser("reduce", help="keep one positive entry per column")
    d.add_argument("file")
    d.add_argument("-o", "--output", required=True)
    return p


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
        return
    for key, value in obj.items():
        if isinstance(value, dict) and "exact" in value:
            value = f"{value['exact']}  ({value['decimal']})"
        print(f"{key}: {value}")


def _load(path) -> model.Instance:
    try:
        return model.load_instance(path)
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read instance {path}: {exc}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (UsageError, DomainError, model.IllPosedInstance) as exc:
        print(f"knapprox: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    if args.command == "table":
        sys.stdout.write(cmd_table(args.max_n, args.format, args.digits))
        return EXIT_OK

    if args.command == "bound":
        _emit(bound_dict(bounds.alpha_mn(args.m, args.n), args.digits), args.format)
        return EXIT_OK

    if args.command == "gen":
        instance, _ = worstgen.generate(args.m, args.n, args.tol)
        model.save_instance(instance, args.output)
        print(f"wrote {args.output} (expected alpha {instance.meta['expected_alpha']})")
        return EXIT_OK

    if args.command == "solve":
        instance = _load(args.file)
        limits = solver.SolveLimits(args.node_budget, not args.no_decompose)
        result = solver.solve_exact(instance, limits)
        out = {
            "status": result.status.value,
            "opt_value": _rat(result.opt_value),
            "witness": [str(x) for x in result.witness],
            "nodes_used": result.nodes_used,
        }
        if result.proven:
            rep = model.precision(instance, result.as_opt())
            out["approx_value"] = _rat(rep.approx_value)
            out["approx_index"] = rep.approx_index
            out["alpha"] = _rat(rep.alpha)
        _emit(out, args.format)
        return EXIT_OK if result.proven else EXIT_BUDGET

    if args.command == "verify":
        rep = cmd_verify(args.m, args.n, args.tol, args.node_budget)
        _emit(rep.to_dict(), args.format)
        if rep.solver_status is solver.Status.BUDGET_EXCEEDED:
            return EXIT_BUDGET
        return EXIT_OK if rep.ok else EXIT_VIOLATION

    if args.command == "random":
        summary = cmd_random(args.m, args.n, args.count, args.seed, args.coef_cap,
                             args.bound_cap, args.box_cap, args.node_budget)
        print(json.dumps(summary.to_dict(), indent=2))
        return summary.exit_code

    if args.command == "reduce":
        instance = _load(args.file)
        reduced, zeroed = cmd_reduce(instance)
        model.save_instance(reduced, args.output)
        print(json.dumps({"output": args.output, "zeroed": [list(p) for p in zeroed]}))
        return EXIT_OK

    raise UsageError(f"unknown command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
