"""Exact integration of integer-breakpoint step functions against power kernels.

Every integrand here is piecewise u^(-p) times a per-cell constant, so
the integral over [1, X] is a finite sum of closed-form segment
antiderivatives:

    integral_n^(n+1) u^(-p) du = (n^(1-p) - (n+1)^(1-p)) / (p - 1)

with the p = 1 cell handled by its log limit. No quadrature grid, no
quadrature error; what remains is rounding plus the truncation tail,
which is modeled explicitly and reported rather than hidden.
"""

import csv
import enum
import math
from dataclasses import dataclass

import numpy as np

from .compensated import ComplexCompensatedSum, CompensatedSum
from .errors import DomainError
from .liouville import iter_lambda_segments, iter_mobius_segments

_SINGULAR_WINDOW = 1e-9
UNMODELED = "unmodeled; conditional"


class StepKind(enum.Enum):
    """Step integrands, each constant on [n, n+1) except P_OVER_U.

    F_HALF, F_ONE, L_XI sum the Liouville sequence with a(1) = 0 and
    default to the u^(-s-1/2) kernel; T_SUM (which keeps the n = 1
    term) and P_OVER_U default to the plain u^(-s) kernel. MU_ONE is
    the Mobius analogue of F_ONE (plain kernel), and ONE is the
    constant function for closed-form cross-checks.
    """

    F_HALF = "F_half"
    F_ONE = "F_one"
    L_XI = "L_xi"
    T_SUM = "T_sum"
    P_OVER_U = "P_over_u"
    MU_ONE = "Mu_one"
    ONE = "One"


_HALF_DEFAULT = {StepKind.F_HALF, StepKind.F_ONE, StepKind.L_XI, StepKind.ONE}


@dataclass(frozen=True)
class StepFunction:
    """A step integrand plus its default truncation point."""

    kind: StepKind
    limit: int

    def __post_init__(self):
        if self.limit < 2:
            raise DomainError("StepFunction limit must be >= 2")


@dataclass(frozen=True)
class IntegralResult:
    """Truncated integral with an explicit tail model.

    converged means tail_estimate < the tolerance the caller passed,
    never that the infinite integral was proven to exist; for exponents
    the model cannot reach, tail_estimate is inf and tail_model says so.
    """

    value: complex
    truncation: int
    tail_estimate: float
    converged: bool
    tail_model: str


def _resolve_kernel(kind: StepKind, kernel: str) -> str:
    if kernel == "auto":
        return "half_shifted" if kind in _HALF_DEFAULT else "plain"
    if kernel not in ("plain", "half_shifted"):
        raise DomainError(f"unknown kernel {kernel!r}")
    return kernel


def _cell_weights(p: complex, ns: np.ndarray) -> np.ndarray:
    # integral over [n, n+1) of u^(-p) du
    if p == 1:
        return np.log1p(1.0 / ns).astype(np.complex128)
    one_minus = 1.0 - p
    return (np.power(ns, one_minus) - np.power(ns + 1.0, one_minus)) / (p - 1.0)


def _coefficient_blocks(kind, stop, segment_size, threads):
    """Yield (ns, G values on those ns) for n in [1, stop)."""
    if kind is StepKind.ONE:
        seg = (1 << 20) if segment_size is None else int(segment_size)
        if seg < 1:
            raise DomainError("segment_size must be >= 1")
        for lo in range(1, stop, seg):
            hi = min(lo + seg, stop)
            ns = np.arange(lo, hi, dtype=np.float64)
            yield ns, np.ones_like(ns)
        return

    source = iter_mobius_segments if kind is StepKind.MU_ONE else iter_lambda_segments
    carry = CompensatedSum()
    for lo, coeff in source(1, stop, segment_size=segment_size, threads=threads):
        ns = np.arange(lo, lo + len(coeff), dtype=np.float64)
        cf = coeff.astype(np.float64)
        if kind is StepKind.F_HALF:
            terms = cf * ns**-0.5
        elif kind in (StepKind.F_ONE, StepKind.T_SUM, StepKind.MU_ONE):
            terms = cf / ns
        elif kind is StepKind.L_XI:
            terms = cf * (ns**-0.5 - 1.0 / ns)
        elif kind is StepKind.P_OVER_U:
            terms = cf
        else:  # pragma: no cover
            raise DomainError(f"unhandled kind {kind}")
        if lo == 1 and kind is not StepKind.T_SUM and kind is not StepKind.P_OVER_U:
            terms[0] = 0.0  # a(1) = 0 conventions
        yield ns, carry.value + np.cumsum(terms)
        carry.add_array(terms)


def _integrate(kind, s, X, kernel, tolerance, window_divisor, segment_size, threads):
    X = int(X)
    if X < 2:
        raise DomainError("X must be >= 2")
    s = complex(s)
    kernel = _resolve_kernel(kind, kernel)
    p = s + 0.5 if kernel == "half_shifted" else s
    p_eff = p + 1.0 if kind is StepKind.P_OVER_U else p
    if p_eff != 1 and abs(p_eff - 1.0) < _SINGULAR_WINDOW:
        raise DomainError(
            f"kernel exponent {p_eff} within {_SINGULAR_WINDOW} of the singular value 1"
        )

    window_lo = max(2, X // window_divisor)
    acc = ComplexCompensatedSum()
    env_max = 0.0
    for ns, g_vals in _coefficient_blocks(kind, X, segment_size, threads):
        acc.add_array(g_vals * _cell_weights(p_eff, ns))
        mask = ns >= window_lo
        if mask.any():
            g_win = np.abs(g_vals[mask])
            if kind is StepKind.P_OVER_U:
                env = g_win / ns[mask]
            elif kernel == "half_shifted":
                env = g_win / np.sqrt(ns[mask])
            else:
                env = g_win
            env_max = max(env_max, float(env.max()))

    # decay exponent of the modeled integrand envelope c * u^(-sigma_d)
    sigma_d = s.real + (0.5 if kind is StepKind.P_OVER_U and kernel == "half_shifted" else 0.0)
    if sigma_d > 1.0:
        tail = env_max * X ** (1.0 - sigma_d) / (sigma_d - 1.0)
        if kind is StepKind.P_OVER_U:
            model = f"|P(u)/u| <= {env_max:.3e} fitted on [{window_lo}, {X}]"
        elif kernel == "half_shifted":
            model = f"|G(u)| <= {env_max:.3e} * sqrt(u) fitted on [{window_lo}, {X}]"
        else:
            model = f"|G(u)| <= {env_max:.3e} fitted on [{window_lo}, {X}]"
    else:
        tail = math.inf
        model = UNMODELED
    return IntegralResult(
        value=acc.value,
        truncation=X,
        tail_estimate=tail,
        converged=tail < tolerance,
        tail_model=model,
    )


def integrate_step(
    G: StepFunction,
    s: complex,
    X: int | None = None,
    *,
    kernel: str = "auto",
    tolerance: float = 1e-6,
    segment_size: int | None = None,
    threads: int | None = None,
) -> IntegralResult:
    """Integrate G against its kernel over [1, X], exactly per segment.

    X defaults to G.limit. The kernel is u^(-s-1/2) for the F/L kinds
    and u^(-s) for T_SUM and P_OVER_U; pass kernel="plain" or
    "half_shifted" to override. The tail envelope is fitted on the last
    decade [X/10, X].
    """
    x_eff = G.limit if X is None else X
    return _integrate(G.kind, s, x_eff, kernel, tolerance, 10, segment_size, threads)


def j_xi(
    s: complex,
    X: int,
    *,
    tolerance: float = 1e-6,
    segment_size: int | None = None,
    threads: int | None = None,
) -> IntegralResult:
    """Truncation of J(s) = integral of L_u against u^(-s-1/2).

    Unconditional convergence holds only for sigma > 1; for
    1/2 < sigma <= 1 the returned value is the truncated integral and
    the tail is reported as unmodeled. The envelope window here is the
    last octave [X/2, X], where |L_u| grows too slowly to need a decade.
    """
    s = complex(s)
    if s.real <= 0.5:
        raise DomainError("j_xi needs sigma > 1/2")
    return _integrate(
        StepKind.L_XI, s, X, "half_shifted", tolerance, 2, segment_size, threads
    )


@dataclass(frozen=True)
class SigmaCEstimate:
    """Empirical bracketing of a convergence abscissa.

    classifications maps each grid sigma to "converging", "diverging",
    or "inconclusive"; (lower, upper) is the tightest bracket the
    conclusive points allow, widened across any inconclusive points
    between them (flagged when that happens).
    """

    kind: StepKind
    kernel: str
    sigma_grid: tuple[float, ...]
    x_schedule: tuple[int, ...]
    traces: dict[float, tuple[complex, ...]]
    classifications: dict[float, str]
    lower: float
    upper: float
    flags: tuple[str, ...]


def _classify_trace(values, cauchy_tol, slope_margin, x_schedule):
    diffs = np.abs(np.diff(np.asarray(values, dtype=np.complex128)))
    if len(diffs) < 2:
        return "inconclusive"
    cauchy = bool(np.all(diffs[-2:] < cauchy_tol))
    if cauchy:
        return "converging"
    logx = np.log(np.asarray(x_schedule[1:], dtype=np.float64))
    logd = np.log(np.maximum(diffs, 1e-300))
    slope = float(np.polyfit(logx, logd, 1)[0])
    if slope < -slope_margin:
        return "converging"
    if slope > slope_margin:
        return "diverging"
    return "inconclusive"


def estimate_sigma_c(
    G: StepFunction,
    sigma_grid,
    x_schedule,
    *,
    kernel: str = "auto",
    cauchy_tol: float = 1e-3,
    slope_margin: float = 0.01,
    trace_path: str | None = None,
    segment_size: int | None = None,
    threads: int | None = None,
) -> SigmaCEstimate:
    """Bracket the convergence abscissa of the truncated integrals.

    Each sigma on the grid gets a trace of partial integrals over
    x_schedule and a two-route classification: Cauchy (last two
    successive differences below cauchy_tol) or the log-log slope of
    the successive differences (negative beyond slope_margin means the
    partials are still settling, positive means they are drifting
    apart). Slopes inside the margin are inconclusive, which widens the
    reported bracket instead of forcing a call.
    """
    grid = [float(v) for v in sigma_grid]
    sched = [int(v) for v in x_schedule]
    if len(grid) < 2 or any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("sigma_grid must be ascending with >= 2 points")
    if len(sched) < 3 or any(b <= a for a, b in zip(sched, sched[1:])):
        raise DomainError("x_schedule must be increasing with >= 3 points")

    kernel = _resolve_kernel(G.kind, kernel)
    traces: dict[float, tuple[complex, ...]] = {}
    tails: dict[float, tuple[float, ...]] = {}
    classifications: dict[float, str] = {}
    for sigma in grid:
        results = [
            _integrate(G.kind, sigma, x, kernel, math.inf, 10, segment_size, threads)
            for x in sched
        ]
        traces[sigma] = tuple(r.value for r in results)
        tails[sigma] = tuple(r.tail_estimate for r in results)
        classifications[sigma] = _classify_trace(
            traces[sigma], cauchy_tol, slope_margin, sched
        )

    flags: list[str] = []
    diverging = [s for s in grid if classifications[s] == "diverging"]
    converging = [s for s in grid if classifications[s] == "converging"]
    step = grid[1] - grid[0]
    lower = max(diverging) if diverging else grid[0] - step
    upper = min(converging) if converging else grid[-1] + step
    if not diverging:
        flags.append("no divergence observed on grid")
    if not converging:
        flags.append("no convergence observed on grid")
    inconclusive_inside = [
        s for s in grid if classifications[s] == "inconclusive" and lower < s < upper
    ]
    if inconclusive_inside:
        flags.append(
            "inconclusive at sigma in "
            + ", ".join(f"{s:g}" for s in inconclusive_inside)
        )
    if upper < lower:
        flags.append("classification not monotone on grid")
        lower, upper = min(lower, upper), max(lower, upper)

    if trace_path is not None:
        with open(trace_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sigma", "X", "re", "im", "tail_estimate"])
            for sigma in grid:
                for x, v, t in zip(sched, traces[sigma], tails[sigma]):
                    w.writerow([repr(sigma), x, repr(v.real), repr(v.imag), repr(t)])

    return SigmaCEstimate(
        kind=G.kind,
        kernel=kernel,
        sigma_grid=tuple(grid),
        x_schedule=tuple(sched),
        traces=traces,
        classifications=classifications,
        lower=lower,
        upper=upper,
        flags=tuple(flags),
    )
