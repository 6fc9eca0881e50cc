"""Command-line interface: ``solve``, ``sweep``, ``oracle`` and ``topology``.

Exit codes: 0 success, 2 invalid input, 3 unspecified boundary or
unresolved case, 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryUnspecified, EnumerationCap, GameError, InvalidInput
from .game import GameParams, parse_rational
from .oracle import OracleConfig, brute_force_spe
from .solver import SpeCandidate, SpeSolution, solve
from .topology import edge_connectivity, min_degree, named

EXIT_OK, EXIT_INVALID, EXIT_BOUNDARY, EXIT_DISAGREE = 0, 2, 3, 4
CSV_VERSION = "# infragame-sweep v1"
CSV_COLUMNS = ["param_value", "regime", "situation", "u_d", "u_a", "e1_size", "ea_size", "e2_size"]
SWEEP_PARAMS = {"tau": "tau", "tau_r": "tau_r", "taur": "tau_r", "c_a": "c_a", "ca": "c_a", "c_d": "c_d", "cd": "c_d"}


def fmt(x: Fraction | None, decimal: bool = False) -> str | None:
    if x is None:
        return None
    if decimal:
        return f"{float(x):.6g}"
    return str(x)


def _walk(obj, decimal: bool):
    """Re-render the ``"p/q"`` strings of a JSON tree as decimals."""
    if isinstance(obj, dict):
        return {k: _walk(v, decimal) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_walk(v, decimal) for v in obj]
    if isinstance(obj, str) and decimal:
        try:
            return fmt(Fraction(obj), True)
        except ValueError:
            return obj
    return obj


def _dump(data: dict, decimal: bool) -> str:
    if decimal:
        data = dict(_walk(data, True), lossy=True)
    return json.dumps(data, indent=2, sort_keys=False)


def _boundary_json(params: GameParams, exc: BoundaryUnspecified) -> dict:
    return {
        "params": params.to_json(),
        "regime": exc.regime,
        "thresholds": exc.thresholds.to_json() if exc.thresholds else None,
        "candidates": [c.to_json() for c in exc.candidates],
        "chosen": None,
        "boundary": {
            "kind": type(exc).__name__,
            "message": str(exc),
            "tied": [c.situation for c in exc.tied],
        },
    }


def _candidate_line(c: SpeCandidate, decimal: bool) -> str:
    if not c.feasible and c.u_d is None:
        return f"  {c.situation}: infeasible ({c.reason})"
    mark = "" if c.feasible else " [dominated]"
    kind = f" {c.e1_kind}" if c.e1_kind else ""
    return (f"  {c.situation}: u_d={fmt(c.u_d, decimal)} u_a={fmt(c.u_a, decimal)} "
            f"|E1|={c.e1_size} |EA|={c.ea_size} |E2|={c.e2_size}{kind}{mark}  ({c.reason})")


def render_text(sol: SpeSolution, decimal: bool = False) -> str:
    th = sol.thresholds
    out = [
        f"regime: {sol.regime}",
        "thresholds: " + ", ".join(f"{k}={v}" for k, v in th.to_json().items()),
        "candidates:",
        *(_candidate_line(c, decimal) for c in sol.candidates),
        f"chosen: {sol.situation}  u_d={fmt(sol.chosen.u_d, decimal)}  u_a={fmt(sol.chosen.u_a, decimal)}",
    ]
    if sol.chosen.profile is not None:
        p = sol.chosen.profile
        out.append(f"  e1 ({sol.chosen.e1_kind}): {p.e1.to_json()}")
        out.append(f"  ea: {p.ea.to_json()}")
        out.append(f"  e2: {p.e2.to_json()}")
    out.extend(f"note: {n}" for n in sol.notes)
    return "\n".join(out)


def _params_from(args) -> GameParams:
    return GameParams(args.n, parse_rational(args.cd), parse_rational(args.ca),
                      parse_rational(args.tau), parse_rational(args.taur))


# -- solve -----------------------------------------------------------------


def cmd_solve(args) -> int:
    params = _params_from(args)
    try:
        sol = solve(params)
    except BoundaryUnspecified as exc:
        data = _boundary_json(params, exc)
        if args.format == "text":
            print(f"boundary: {exc}")
            print("candidates:")
            for c in exc.candidates:
                print(_candidate_line(c, args.decimal))
        else:
            print(_dump(data, args.decimal))
        return EXIT_BOUNDARY
    if args.format == "text":
        print(render_text(sol, args.decimal))
    else:
        print(_dump(sol.to_json(), args.decimal))
    return EXIT_OK


# -- sweep -----------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    base: GameParams
    parameter: str
    start: Fraction
    stop: Fraction
    step: Fraction
    boundary: str = "skip"

    def __post_init__(self) -> None:
        if self.parameter not in ("tau", "tau_r", "c_a", "c_d"):
            raise InvalidInput(f"cannot sweep {self.parameter!r}")
        if self.step <= 0:
            raise InvalidInput("sweep step must be positive")
        if self.start > self.stop:
            raise InvalidInput("sweep start exceeds stop")
        if self.boundary not in ("skip", "error"):
            raise InvalidInput("boundary handling must be 'skip' or 'error'")

    def values(self) -> list[Fraction]:
        count = int((self.stop - self.start) / self.step)
        return [self.start + i * self.step for i in range(count + 1)]

    def points(self) -> list[GameParams]:
        return [self.base.replace(**{self.parameter: v}) for v in self.values()]


def _sweep_point(params: GameParams):
    try:
        sol = solve(params)
    except BoundaryUnspecified as exc:
        return None, f"{type(exc).__name__}: {exc}"
    c = sol.chosen
    return (sol.regime, c.situation, c.u_d, c.u_a, c.e1_size, c.ea_size, c.e2_size), None


def switch_points(values: list[Fraction], rows: list) -> list[Fraction]:
    """Parameter values where the chosen situation changes.

    ``rows[i]`` is ``None`` for a skipped boundary point.  A change across a
    single skipped point is attributed to that point; otherwise to the first
    value showing the new situation.
    """
    out = []
    prev, skipped = None, []
    for v, row in zip(values, rows):
        if row is None:
            skipped.append(v)
            continue
        if prev is not None and row[1] != prev:
            out.append(skipped[0] if len(skipped) == 1 else v)
        prev, skipped = row[1], []
    return out


def run_sweep(spec: SweepSpec, jobs: int = 1) -> dict:
    values = spec.values()
    points = spec.points()
    if jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, points, chunksize=8))
    else:
        results = [_sweep_point(p) for p in points]
    rows = [r for r, _ in results]
    return {
        "param": spec.parameter,
        "values": values,
        "rows": rows,
        "boundary_points": [v for v, (r, _) in zip(values, results) if r is None],
        "boundary_reasons": [why for r, why in results if r is None],
        "switch_points": switch_points(values, rows),
    }


def sweep_csv(result: dict, decimal: bool = False) -> str:
    buf = io.StringIO()
    buf.write(CSV_VERSION + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for v, row in zip(result["values"], result["rows"]):
        if row is None:
            continue
        regime, situation, u_d, u_a, s1, sa, s2 = row
        writer.writerow([fmt(v, decimal), regime, situation, fmt(u_d, decimal), fmt(u_a, decimal), s1, sa, s2])
    return buf.getvalue()


def sweep_json(result: dict) -> dict:
    rows = []
    for v, row in zip(result["values"], result["rows"]):
        if row is None:
            continue
        rows.append(dict(zip(CSV_COLUMNS, [str(v), row[0], row[1], str(row[2]), str(row[3]), *row[4:]])))
    return {
        "param": result["param"],
        "rows": rows,
        "switch_points": [str(v) for v in result["switch_points"]],
        "boundary_points": [str(v) for v in result["boundary_points"]],
    }


def _summary(result: dict) -> str:
    sw = ", ".join(str(v) for v in result["switch_points"]) or "none"
    bd = ", ".join(str(v) for v in result["boundary_points"]) or "none"
    return f"switch points: {sw}\nboundary points skipped: {bd}"


def cmd_sweep(args) -> int:
    parameter = SWEEP_PARAMS.get(args.param)
    if parameter is None:
        raise InvalidInput(f"cannot sweep {args.param!r}")
    base = _params_from(args)
    start, stop = parse_rational(getattr(args, "from")), parse_rational(args.to)
    spec = SweepSpec(base, parameter, start, stop, parse_rational(args.step), args.boundary)
    spec.points()  # validates every swept value up front
    result = run_sweep(spec, args.jobs)
    if args.boundary == "error" and result["boundary_points"]:
        for v, why in zip(result["boundary_points"], result["boundary_reasons"]):
            print(f"boundary at {parameter}={v}: {why}", file=sys.stderr)
        return EXIT_BOUNDARY
    if args.format == "csv":
        sys.stdout.write(sweep_csv(result, args.decimal))
        print(_summary(result), file=sys.stderr)
    elif args.format == "json":
        print(_dump(sweep_json(result), args.decimal))
    else:
        print(f"{'value':>10} {'regime':>9} {'sit':>4} {'u_d':>10} {'u_a':>10} |E1| |EA| |E2|")
        for v, row in zip(result["values"], result["rows"]):
            if row is None:
                print(f"{fmt(v, args.decimal):>10} {'boundary':>9}")
                continue
            regime, situation, u_d, u_a, s1, sa, s2 = row
            print(f"{fmt(v, args.decimal):>10} {regime:>9} {situation:>4} {fmt(u_d, args.decimal):>10} "
                  f"{fmt(u_a, args.decimal):>10} {s1:>4} {sa:>4} {s2:>4}")
        print(_summary(result))
    return EXIT_OK


# -- oracle ----------------------------------------------------------------


def cmd_oracle(args) -> int:
    params = _params_from(args)
    cfg = OracleConfig(max_n=args.max_n)
    if params.n > cfg.max_n:
        raise InvalidInput(f"n={params.n} exceeds oracle max_n={cfg.max_n}")
    truth = brute_force_spe(params, cfg)
    try:
        sol = solve(params)
        solver_view = sol.to_json()
        same = (sol.situation, sol.chosen.u_d, sol.chosen.u_a) == (
            truth.situation, truth.chosen.u_d, truth.chosen.u_a)
        verdict = "agree" if same else "disagree"
    except BoundaryUnspecified as exc:
        solver_view = _boundary_json(params, exc)
        verdict = "solver-boundary"
    report = {"verdict": verdict, "solver": solver_view, "oracle": truth.to_json()}
    if args.format == "text":
        print(f"verdict: {verdict}")
        print("-- solver")
        print(render_text(sol, args.decimal) if verdict != "solver-boundary" else solver_view["boundary"]["message"])
        print("-- oracle")
        print(render_text(truth, args.decimal))
    else:
        print(_dump(report, args.decimal))
    return {"agree": EXIT_OK, "disagree": EXIT_DISAGREE}.get(verdict, EXIT_BOUNDARY)


# -- topology --------------------------------------------------------------


def cmd_topology(args) -> int:
    topo = named(args.kind, args.size, args.k)
    n, e = topo.n, topo.edges
    props = {
        "edge_count": len(e),
        "min_degree": min_degree(n, e),
        "edge_connectivity": edge_connectivity(n, e),
    }
    if args.format == "text":
        sys.stdout.write(topo.to_edgelist())
        for key, value in props.items():
            print(f"# {key}: {value}", file=sys.stderr)
    else:
        print(json.dumps({**topo.to_json(), **props}))
    return EXIT_OK


# -- argument parsing ------------------------------------------------------


def _add_params(p: argparse.ArgumentParser, taur_default=None) -> None:
    p.add_argument("--n", type=int, required=True, help="number of nodes")
    p.add_argument("--cd", required=True, help="designer cost per link (e.g. 1/20)")
    p.add_argument("--ca", required=True, help="adversary cost per link (e.g. 0.125)")
    p.add_argument("--tau", required=True, help="pre-attack fraction of the horizon")
    p.add_argument("--taur", required=taur_default is None, default=taur_default,
                   help="attack-to-recovery fraction of the horizon")
    p.add_argument("--decimal", action="store_true", help="show decimals (lossy, display only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infragame", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="closed-form equilibrium of one instance")
    _add_params(p)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="equilibria over a range of one parameter")
    _add_params(p, taur_default="0")
    p.add_argument("--param", default="tau_r", help="tau, tau_r, c_a or c_d")
    p.add_argument("--from", default="0")
    p.add_argument("--to", default="3/5")
    p.add_argument("--step", default="1/200")
    p.add_argument("--boundary", choices=["skip", "error"], default="skip")
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="compare the solver with exhaustive search")
    _add_params(p)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("topology", help="emit a named network")
    p.add_argument("kind", help="empty, tree, ring, harary or reinforced")
    p.add_argument("size", type=int, help="number of nodes")
    p.add_argument("k", type=int, nargs="?", default=None)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_topology)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, EnumerationCap, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
