"""Command line interface.

Subcommands: moments, density, charfun, mc, verify, report.  Output is
JSON lines by default, CSV with --format csv; --output writes to a file
instead of stdout.  Exit codes: 0 success, 1 computational failure
(non-convergence or a failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import charfun, densities, figures, montecarlo, moments
from .core import DiskTriangleError, DomainError, RegionTag, classify_region
from .quadrature import IntegrationSpec
from .verification import AcceptanceSuite, format_table

__all__ = ["build_parser", "run", "main"]


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if v is None:
        return ""
    return str(v)


def _emit(records: List[dict], fmt: str, output: Optional[str],
          field_order: Optional[List[str]] = None) -> None:
    if fmt == "json":
        lines = [json.dumps(rec) for rec in records]
    else:
        fields = field_order or list(records[0].keys())
        lines = [",".join(fields)]
        lines.extend(",".join(_fmt(rec.get(f)) for f in fields)
                     for rec in records)
    text = "\n".join(lines) + "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _specs_from_tol(tol: Optional[float]):
    if tol is None:
        return None, None
    spec = IntegrationSpec(abs_tol=tol, rel_tol=tol)
    return spec, spec


def cmd_moments(ns) -> int:
    spec_1d, spec_2d = _specs_from_tol(ns.tol)
    reports = moments.moment_reports(ns.radius, spec_1d, spec_2d)
    records = [{
        "quantity": m.quantity,
        "value": m.value,
        "route": m.route,
        "err_estimate": m.err_estimate,
        "reference": m.reference,
        "deviation": m.deviation,
    } for m in reports]
    _emit(records, ns.format, ns.output,
          ["quantity", "value", "route", "err_estimate", "reference",
           "deviation"])
    return 0 if all(m.converged for m in reports) else 1


def _density_point(ns) -> List[dict]:
    r = ns.radius
    if ns.kind == "uni":
        value = densities.side_density(ns.x, r)
        out = not (0.0 < ns.x < 2.0 * r)
        rec = {"kind": "uni", "x": ns.x, "radius": r, "value": value}
    else:
        value = densities.pair_density(ns.x, ns.y, r)
        out = classify_region(ns.x, ns.y, r) is RegionTag.OUT_OF_SUPPORT
        rec = {"kind": "biv", "x": ns.x, "y": ns.y, "radius": r, "value": value}
    if out:
        rec["warning"] = "outside support; density is 0 there"
    return [rec]


def _density_grid(ns) -> List[dict]:
    r = ns.radius
    n = ns.grid
    step = 2.0 * r / n
    axis = [(k + 0.5) * step for k in range(n)]
    if ns.kind == "uni":
        return [{"x": x, "f": densities.side_density(x, r)} for x in axis]
    return [{"x": x, "y": y, "f": densities.pair_density(x, y, r)}
            for x in axis for y in axis]


def cmd_density(ns) -> int:
    if ns.grid is not None:
        if ns.grid < 1:
            raise DomainError(f"--grid must be >= 1, got {ns.grid}")
        records = _density_grid(ns)
        fields = ["x", "f"] if ns.kind == "uni" else ["x", "y", "f"]
        _emit(records, ns.format, ns.output, fields)
        return 0
    if ns.x is None or (ns.kind == "biv" and ns.y is None):
        raise DomainError(
            "point query needs --x (and --y for --kind biv); "
            "or pass --grid N")
    records = _density_point(ns)
    fields = ["kind", "x", "y", "radius", "value", "warning"]
    if ns.kind == "uni":
        fields.remove("y")
    _emit(records, ns.format, ns.output, fields)
    return 0


def cmd_charfun(ns) -> int:
    spec_1d, _ = _specs_from_tol(ns.tol)
    if ns.s is not None:
        res = charfun.charfun_pair(ns.s, ns.t, spec_1d)
        rec = {"s": ns.s, "t": ns.t, "route": "conditioned_product",
               "re": res.value.real, "im": res.value.imag,
               "err_estimate": res.err_estimate, "converged": res.converged}
        _emit([rec], ns.format, ns.output,
              ["s", "t", "route", "re", "im", "err_estimate", "converged"])
        return 0 if res.converged else 1
    routes = ["closed", "density", "double_integral"] \
        if ns.route == "all" else [ns.route]
    records = []
    values = {}
    ok = True
    for route in routes:
        res = charfun.charfun_a2(ns.t, route, spec_1d)
        ok = ok and res.converged
        values[route] = res.value
        records.append({"t": ns.t, "route": route, "re": res.value.real,
                        "im": res.value.imag,
                        "err_estimate": res.err_estimate,
                        "converged": res.converged})
    if ns.route == "all":
        names = list(values)
        dev = max(abs(values[a] - values[b])
                  for i, a in enumerate(names) for b in names[i + 1:])
        records.append({"t": ns.t, "route": "max_pairwise_deviation",
                        "re": dev, "im": 0.0, "err_estimate": 0.0,
                        "converged": True})
    _emit(records, ns.format, ns.output,
          ["t", "route", "re", "im", "err_estimate", "converged"])
    return 0 if ok else 1


def cmd_mc(ns) -> int:
    est = montecarlo.estimate_moments(ns.samples, ns.seed, ns.chunks,
                                      ns.radius)
    rec = {"samples": est.n, "seed": est.seed, "chunks": est.chunks,
           "radius": est.radius}
    for field in ("mean_side", "mean_pair_product", "mean_perimeter",
                  "var_perimeter", "mean_sq_pair_product", "corr_sides"):
        e = getattr(est, field)
        rec[field] = e.value
        rec[field + "_se"] = e.std_error
    _emit([rec], ns.format, ns.output, list(rec.keys()))
    return 0


def cmd_verify(ns) -> int:
    suite = AcceptanceSuite(level=ns.level)
    names = [n.strip() for n in ns.only.split(",")] if ns.only else None
    results = suite.run(names)
    if ns.format == "json":
        records = [{"name": r.name, "passed": r.passed, "measured": r.value,
                    "tolerance": r.target, "seconds": r.seconds,
                    "detail": r.detail} for r in results]
        _emit(records, "json", ns.output)
    else:
        text = format_table(results) + "\n"
        if ns.output:
            with open(ns.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def cmd_report(ns) -> int:
    _, spec_2d = _specs_from_tol(ns.tol)
    paths = figures.write_report(ns.out_dir, radius=ns.radius,
                                 samples=ns.samples, seed=ns.seed,
                                 grid=ns.grid, t_max=ns.t_max,
                                 spec_2d=spec_2d)
    _emit([{"file": p} for p in paths], ns.format, ns.output, ["file"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=float, default=1.0,
                        help="disk radius R (default 1)")
    common.add_argument("--tol", type=float, default=None,
                        help="quadrature tolerance override")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default json lines)")
    common.add_argument("--output", default=None,
                        help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(
        prog="disktri",
        description="Side-length statistics of uniform random triangles "
                    "in a disk.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", parents=[common],
                       help="deterministic moment table with references")
    p.set_defaults(handler=cmd_moments)

    p = sub.add_parser("density", parents=[common],
                       help="evaluate a density at a point or on a grid")
    p.add_argument("--kind", choices=("uni", "biv"), required=True,
                   help="univariate side density or bivariate pair density")
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--grid", type=int, default=None,
                   help="emit an N (uni) or NxN (biv) midpoint grid")
    p.set_defaults(handler=cmd_density)

    p = sub.add_parser("charfun", parents=[common],
                       help="characteristic function of squared sides")
    p.add_argument("--t", type=float, required=True, help="frequency")
    p.add_argument("--s", type=float, default=None,
                   help="second frequency; requests the pair charfun")
    p.add_argument("--route",
                   choices=("closed", "density", "double_integral", "all"),
                   default="closed")
    p.set_defaults(handler=cmd_charfun)

    p = sub.add_parser("mc", parents=[common],
                       help="Monte Carlo moment estimates")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunks", type=int, default=1,
                   help="parallel chunks; never changes the values")
    p.set_defaults(handler=cmd_mc)

    p = sub.add_parser("verify", parents=[common],
                       help="run the acceptance cross-checks")
    p.add_argument("--level", choices=("quick", "full"), default="full")
    p.add_argument("--only", default=None,
                   help="comma-separated subset of check names")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("report", parents=[common],
                       help="render figures and CSV tables to a directory")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--samples", type=int, default=200_000,
                   help="Monte Carlo overlay sample count (0 disables)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=120,
                   help="pair-density heatmap resolution")
    p.add_argument("--t-max", type=float, default=6.0,
                   help="charfun trace frequency range")
    p.set_defaults(handler=cmd_report)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.handler(ns)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DiskTriangleError as exc:
        print(f"computation failed: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
