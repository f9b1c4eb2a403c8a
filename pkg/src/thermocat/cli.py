"""Command-line front end.

Thin client over the service handlers: every subcommand builds the same
request model the HTTP API accepts and prints the handler's output.  Data
goes to stdout, diagnostics to stderr.

Exit codes: 0 success; 1 forbidden verdict under --fail-on-forbidden;
2 usage error; 3 I/O failure; 4 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import service
from .errors import ThermocatError

EXIT_OK = 0
EXIT_FORBIDDEN = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DOMAIN = 4


def _floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}")


def _strs(text: str) -> list[str]:
    return [tok.strip() for tok in text.split(",") if tok.strip()]


def _ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="thermocat")
    sub = top.add_subparsers(dest="command", required=True)

    d = sub.add_parser("divergence", help="both divergence families over an order grid")
    d.add_argument("--p", type=_floats, required=True)
    d.add_argument("--q", type=_floats, required=True)
    d.add_argument("--alphas", type=_strs, default=None,
                   help="comma-separated orders (default: built-in grid)")

    s = sub.add_parser("scan", help="free-energy differences over the order grid")
    s.add_argument("--p", type=_floats, required=True)
    s.add_argument("--pp", type=_floats, required=True)
    s.add_argument("--energies", type=_floats, required=True)
    s.add_argument("--beta", type=float, required=True)
    s.add_argument("--alphas", type=_strs, default=None)
    s.add_argument("--fail-on-forbidden", action="store_true")

    c = sub.add_parser("curve", help="thermo-majorization curve breakpoints as CSV")
    c.add_argument("--p", type=_floats, required=True)
    c.add_argument("--g", type=_floats, default=None)
    c.add_argument("--energies", type=_floats, default=None)
    c.add_argument("--beta", type=float, default=None)

    w = sub.add_parser("catalysis-sweep", help="finite-size catalysis landscape CSV")
    w.add_argument("--kind", type=_strs, default=["distributed", "concentrated"])
    w.add_argument("--d", type=_ints, default=[4, 8, 16])
    w.add_argument("--eps", type=_floats, default=[0.001])
    w.add_argument("--alphas", type=_floats, default=[0.5, 2.0, 3.0])
    w.add_argument("--p", type=_floats, default=None)
    w.add_argument("--pp", type=_floats, default=None)
    w.add_argument("--energies", type=_floats, default=[0.0, 2.0])
    w.add_argument("--beta", type=float, default=2.0)

    r = sub.add_parser("correlated-demo", help="two-qubit correlated-catalysis report")
    r.add_argument("--config", type=Path, default=None,
                   help="JSON file with scenario parameters; flags override")
    for name in ("E-g", "E-e", "beta1", "beta2", "beta3", "beta-b"):
        r.add_argument(f"--{name}", type=float, default=None)
    r.add_argument("--chi", type=_floats, default=None,
                   help="classical correlation strengths (default 0.05,0.065)")
    r.add_argument("--lam", type=_floats, default=None,
                   help="coherence amplitudes (default 0.0947)")
    r.add_argument("--csv-dir", type=Path, default=None,
                   help="also write one curve CSV per state into this directory")
    r.add_argument("--fail-on-forbidden", action="store_true")
    return top


def _correlated_request(args: argparse.Namespace) -> service.CorrelatedRequest:
    values: dict = {}
    if args.config is not None:
        values.update(json.loads(args.config.read_text()))
    overrides = {
        "E_g": args.E_g, "E_e": args.E_e,
        "beta1": args.beta1, "beta2": args.beta2,
        "beta3": args.beta3, "beta_b": args.beta_b,
        "chi_list": args.chi, "lambda_list": args.lam,
    }
    for key, val in overrides.items():
        if val is not None:
            values[key] = val
    return service.CorrelatedRequest(**values)


def _write_curve_csvs(report: dict, csv_dir: Path) -> None:
    csv_dir.mkdir(parents=True, exist_ok=True)

    def dump(name: str, points: list) -> None:
        lines = ["x,y"] + [f"{x:.17g},{y:.17g}" for x, y in points]
        (csv_dir / f"{name}.csv").write_text("\n".join(lines) + "\n")

    dump("initial", report["initial_curve"])
    dump("reference", report["reference_curve"])
    for idx, st in enumerate(report["states"]):
        dump(f"state_{idx}", st["curve"])


def _run(args: argparse.Namespace) -> int:
    if args.command == "divergence":
        resp = service.handle_divergence(service.DivergenceRequest(
            p=args.p, q=args.q, alphas=args.alphas))
        print(json.dumps(resp.model_dump(), indent=2))
        return EXIT_OK

    if args.command == "scan":
        resp = service.handle_scan(service.ScanRequest(
            p=args.p, p_prime=args.pp, energies=args.energies,
            beta=args.beta, grid=args.alphas))
        print(json.dumps(resp.model_dump(), indent=2))
        if args.fail_on_forbidden and not resp.allowed:
            return EXIT_FORBIDDEN
        return EXIT_OK

    if args.command == "curve":
        csv = service.handle_curve(service.CurveRequest(
            p=args.p, g=args.g, energies=args.energies, beta=args.beta))
        sys.stdout.write(csv)
        return EXIT_OK

    if args.command == "catalysis-sweep":
        csv = service.handle_sweep(service.SweepRequest(
            kinds=args.kind, d_values=args.d, eps_values=args.eps,
            alphas=args.alphas, p_sys=args.p, p_sys_prime=args.pp,
            energies=args.energies, beta=args.beta))
        sys.stdout.write(csv)
        return EXIT_OK

    if args.command == "correlated-demo":
        report = service.handle_correlated(_correlated_request(args))
        print(json.dumps(report, indent=2))
        if args.csv_dir is not None:
            _write_curve_csvs(report, args.csv_dir)
        if args.fail_on_forbidden and any(
            st["verdict"] == "forbidden" for st in report["states"]
        ):
            return EXIT_FORBIDDEN
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _run(args)
    except ThermocatError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
