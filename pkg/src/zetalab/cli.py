"""Command-line front end: zetalab <subcommand> [flags].

Every run is seed-free and deterministic: --threads changes wall time,
never output. A flat key=value config file can preset any flag; explicit
flags win over the file.
"""

import argparse
import sys

import numpy as np

from .errors import DomainError, ZetalabError
from .integrals import StepFunction, StepKind, estimate_sigma_c, integrate_step
from .liouville import run_scan, sieve_range
from .sums import f_x, l_x, write_sums_csv
from .verify import (
    DEFAULT_S_POINTS,
    DEFAULT_X,
    run_default_suite,
    write_report_json,
)
from .xi import DEFAULT_XI, check_monotone_limit, write_xi_csv, xi, xi_residual
from .zeta import ZetaParams, zeta_with_error

_KIND_CHOICES = tuple(k.value for k in StepKind)


def _num_int(text: str) -> int:
    # accepts 1000000 and 1e6 alike
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if v != int(v):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def _complex_arg(text: str) -> complex:
    # "2", "0.75", or "RE,IM" like "1.5,2"
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")


def _float_list(text: str) -> list[float]:
    # "0.4:0.6:0.05" (inclusive range) or "0.4,0.5,0.6"
    if ":" in text:
        try:
            start, stop, step = (float(p) for p in text.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected START:STOP:STEP, got {text!r}")
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError("need STOP >= START and STEP > 0")
        count = int(round((stop - start) / step)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [_num_int(p) for p in text.split(",")]
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")


def _convert_config_value(raw: str):
    t = raw.strip()
    low = t.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(t)
    except ValueError:
        pass
    try:
        f = float(t)
        return int(f) if f == int(f) and ("e" in low or "E" in raw) else f
    except ValueError:
        return t


def load_config(path: str) -> dict:
    """Flat key=value pairs; '#' starts a comment; blank lines ignored."""
    cfg = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise DomainError(f"{path}:{lineno}: expected key=value, got {body!r}")
            key, _, raw = body.partition("=")
            cfg[key.strip().replace("-", "_")] = _convert_config_value(raw)
    return cfg


def _build_parser(config: dict) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key=value preset file")
    common.add_argument("--threads", type=int, default=1, help="sieve worker count (speed only)")
    common.add_argument("--segment-size", type=_num_int, default=None, help="sieve segment length")
    common.add_argument("--tolerance", type=float, default=1e-6,
                        help="convergence tolerance for integrate/sigma-c flags")
    common.add_argument("--quiet", action="store_true", help="suppress stdout (files still written)")

    parser = argparse.ArgumentParser(
        prog="zetalab",
        description="Numerical workbench for Liouville sums and zeta ratio identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", parents=[common], help="tabulate lambda(n) on a range")
    p.add_argument("--lo", type=_num_int, default=1)
    p.add_argument("--hi", type=_num_int, required=True, help="inclusive upper end")
    p.add_argument("--out", help="CSV destination (default: stdout)")

    p = sub.add_parser("scan", parents=[common], help="scan P(x) and T(x) sign behavior")
    p.add_argument("--limit", type=_num_int, required=True)
    p.add_argument("--polya", action="store_true", help="report only the P(x) series")
    p.add_argument("--turan", action="store_true", help="report only the T(x) series")
    p.add_argument("--checkpoint", help="checkpoint path (resumes if present)")
    p.add_argument("--checkpoint-every", type=int, default=16, help="segments between saves")
    p.add_argument("--csv", help="trace CSV path")
    p.add_argument("--csv-stride", type=_num_int, default=1)

    p = sub.add_parser("sums", parents=[common], help="Dirichlet polynomial partial sums")
    p.add_argument("--x", type=_num_int, required=True)
    p.add_argument("--alpha", type=float, default=None, help="evaluate F_x(alpha) only")
    p.add_argument("--out", help="CSV of (x, F_half, F_one, L) at powers of two")

    p = sub.add_parser("xi", parents=[common], help="mean value theorem exponent sequence")
    p.add_argument("--n", type=_num_int, help="print xi(n) and its defining residual")
    p.add_argument("--table", type=_num_int, help="write a log-spaced table up to this n")
    p.add_argument("--points", type=int, default=200, help="table size")
    p.add_argument("--check-monotone", type=_num_int, help="verify xi decreases up to this n")
    p.add_argument("--out", help="table CSV destination")

    p = sub.add_parser("zeta", parents=[common], help="evaluate zeta(s) with error estimate")
    p.add_argument("--s", type=_complex_arg, required=True, metavar="RE[,IM]")
    p.add_argument("--N", type=_num_int, default=None, help="Euler-Maclaurin cutoff")
    p.add_argument("--bern", type=int, default=8, help="Bernoulli correction terms")

    p = sub.add_parser("integrate", parents=[common], help="integrate a step function against a kernel")
    p.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p.add_argument("--s", type=_complex_arg, required=True, metavar="RE[,IM]")
    p.add_argument("--X", type=_num_int, required=True)
    p.add_argument("--kernel", choices=("auto", "plain", "half_shifted"), default="auto")

    p = sub.add_parser("verify", parents=[common], help="run identity residual checks")
    p.add_argument("--all", action="store_true", help="run the default suite")
    p.add_argument("--case", help="only cases whose name contains this substring")
    p.add_argument("--X", type=_num_int, default=DEFAULT_X)
    p.add_argument("--s", type=_complex_arg, action="append", metavar="RE[,IM]",
                   help="evaluation point (repeatable; default suite points)")
    p.add_argument("--out", help="JSON report destination")

    p = sub.add_parser("sigma-c", parents=[common], help="bracket a convergence abscissa empirically")
    p.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p.add_argument("--grid", type=_float_list, required=True, metavar="A:B:STEP|LIST")
    p.add_argument("--schedule", type=_int_list, required=True, metavar="X1,X2,...")
    p.add_argument("--kernel", choices=("auto", "plain", "half_shifted"), default="auto")
    p.add_argument("--trace", help="trace CSV destination")

    if config:
        for action in sub.choices.values():
            action.set_defaults(**config)
    return parser


def _extract_config_path(argv: list[str]) -> str | None:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                return None  # let argparse report the missing value
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _fmt_complex(z: complex, digits: int = 12) -> str:
    if z.imag == 0:
        return f"{z.real:.{digits}f}"
    return f"{z.real:.{digits}f}{z.imag:+.{digits}f}i"


def _cmd_sieve(args, say) -> int:
    table = sieve_range(args.lo, args.hi + 1,
                        segment_size=args.segment_size, threads=args.threads)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("n,lambda\n")
            for n in range(table.lo, table.hi):
                fh.write(f"{n},{table.value(n)}\n")
        say(f"wrote {len(table)} rows to {args.out}")
    else:
        for n in range(table.lo, table.hi):
            say(f"{n} {table.value(n):+d}")
    return 0


def _cmd_scan(args, say) -> int:
    result = run_scan(
        args.limit,
        segment_size=args.segment_size,
        threads=args.threads,
        checkpoint_path=args.checkpoint,
        checkpoint_every=args.checkpoint_every,
        csv_path=args.csv,
        csv_stride=args.csv_stride,
    )
    both = args.polya == args.turan  # neither or both flags -> report both
    for label, rep in (("polya", result.polya), ("turan", result.turan)):
        if not both and getattr(args, label) is False:
            continue
        first = "none" if rep.first_violation is None else str(rep.first_violation)
        say(
            f"{label}: limit={rep.limit} first_violation={first} "
            f"min={rep.min_value:.6g} argmin={rep.argmin} "
            f"sign_changes={rep.sign_change_count}"
        )
    return 0


def _cmd_sums(args, say) -> int:
    kw = dict(segment_size=args.segment_size, threads=args.threads)
    if args.out:
        rows = write_sums_csv(args.out, args.x, **kw)
        say(f"wrote {rows} rows to {args.out}")
    if args.alpha is not None:
        say(f"F_{args.x}({args.alpha:g}) = {f_x(args.alpha, args.x, **kw):.15g}")
    elif not args.out:
        fh = f_x(0.5, args.x, **kw)
        fo = f_x(1.0, args.x, **kw)
        lv = l_x(DEFAULT_XI, args.x, **kw)
        say(f"F_{args.x}(1/2) = {fh:.15g}")
        say(f"F_{args.x}(1)   = {fo:.15g}")
        say(f"L_{args.x}      = {lv:.15g}")
        say(f"decomposition residual = {abs(fh - fo - lv):.3e}")
    return 0


def _cmd_xi(args, say) -> int:
    did = False
    if args.n is not None:
        say(f"xi({args.n}) = {xi(args.n):.15g}  residual = {xi_residual(args.n):.3e}")
        did = True
    if args.check_monotone is not None:
        rep = check_monotone_limit(DEFAULT_XI, args.check_monotone)
        say(
            f"monotone up to {rep.n_max}: {rep.monotone} "
            f"first_increase={rep.first_increase} gap_at_nmax={rep.gap_at_nmax:.6g}"
        )
        did = True
    if args.table is not None:
        if not args.out:
            raise DomainError("--table needs --out for the CSV destination")
        rows = write_xi_csv(args.out, DEFAULT_XI, args.table, points=args.points)
        say(f"wrote {rows} rows to {args.out}")
        did = True
    if not did:
        raise DomainError("nothing to do: pass --n, --table, or --check-monotone")
    return 0


def _cmd_zeta(args, say) -> int:
    params = ZetaParams(cutoff=args.N, bernoulli_terms=args.bern)
    value, err = zeta_with_error(args.s, params)
    say(f"zeta({_fmt_complex(args.s, 6)}) = {_fmt_complex(value)} (est abs err {err:.1e})")
    return 0


def _cmd_integrate(args, say) -> int:
    G = StepFunction(StepKind(args.kind), max(args.X, 2))
    res = integrate_step(
        G, args.s, args.X,
        kernel=args.kernel, tolerance=args.tolerance,
        segment_size=args.segment_size, threads=args.threads,
    )
    say(f"value = {_fmt_complex(res.value)}")
    say(f"truncation X = {res.truncation}")
    say(f"tail estimate = {res.tail_estimate:.3e} ({res.tail_model})")
    say(f"converged at tolerance {args.tolerance:g}: {res.converged}")
    return 0


def _cmd_verify(args, say) -> int:
    if not args.all and not args.case:
        raise DomainError("pass --all, or --case NAME to filter")
    s_points = tuple(args.s) if args.s else DEFAULT_S_POINTS
    cases = run_default_suite(
        s_points, args.X, segment_size=args.segment_size, threads=args.threads
    )
    if args.case:
        cases = [c for c in cases if args.case in c.name]
        if not cases:
            raise DomainError(f"no case name contains {args.case!r}")
    for c in cases:
        mark = "PASS" if c.passed else "FAIL"
        spart = "" if c.s is None else f" s={_fmt_complex(c.s, 4)}"
        fpart = f" [{', '.join(c.flags)}]" if c.flags else ""
        say(f"[{mark}] {c.name}{spart} X={c.X} residual={c.residual:.3e} tol={c.tolerance:.3e}{fpart}")
    if args.out:
        write_report_json(cases, args.out)
        say(f"wrote {len(cases)} cases to {args.out}")
    gated = [c for c in cases if "empirical" not in c.flags]
    return 0 if all(c.passed for c in gated) else 1


def _cmd_sigma_c(args, say) -> int:
    G = StepFunction(StepKind(args.kind), max(args.schedule))
    est = estimate_sigma_c(
        G, args.grid, args.schedule,
        kernel=args.kernel, trace_path=args.trace,
        segment_size=args.segment_size, threads=args.threads,
    )
    for sigma in est.sigma_grid:
        say(f"sigma={sigma:g}: {est.classifications[sigma]}")
    say(f"abscissa bracket: [{est.lower:g}, {est.upper:g}]")
    for flag in est.flags:
        say(f"note: {flag}")
    if args.trace:
        say(f"wrote trace to {args.trace}")
    return 0


_DISPATCH = {
    "sieve": _cmd_sieve,
    "scan": _cmd_scan,
    "sums": _cmd_sums,
    "xi": _cmd_xi,
    "zeta": _cmd_zeta,
    "integrate": _cmd_integrate,
    "verify": _cmd_verify,
    "sigma-c": _cmd_sigma_c,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config_path = _extract_config_path(argv)
        config = load_config(config_path) if config_path else {}
    except (ZetalabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser = _build_parser(config)
    args = parser.parse_args(argv)

    def say(text: str) -> None:
        if not args.quiet:
            print(text)

    try:
        return _DISPATCH[args.command](args, say)
    except ZetalabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
