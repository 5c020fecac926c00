"""Dirichlet polynomial partial sums over the Liouville sequence.

Everything here sums a(n) = lambda(n) for n >= 2 (and a(1) = 0):

    F_x(alpha) = sum_{2<=n<=x} lambda(n) n^(-alpha)
    L_x(xi)    = (beta-alpha) sum_{2<=n<=x} lambda(n) log(n) n^(-xi(n))

The L sum is never evaluated by exponentiating xi(n): the mean value
theorem construction makes its per-term weight exactly
n^(-alpha) - n^(-beta), and summing that rearranged form keeps the
decomposition F_x(alpha) = F_x(beta) + L_x(xi) tight to rounding. A
direct-exponentiation mode exists only to cross-validate the xi module.
"""

import csv

import numpy as np

from .compensated import CompensatedSum
from .errors import DomainError
from .liouville import iter_lambda_segments
from .xi import DEFAULT_XI, XiSequence


def mvt_weight(n, alpha: float = 0.5, beta: float = 1.0):
    """The exact per-term MVT weight (beta-alpha) log(n) n^(-xi(n)).

    Computed through its closed rearrangement n^(-alpha) - n^(-beta),
    which the defining equation of xi makes identical.
    """
    if not beta > alpha:
        raise DomainError("mvt_weight needs beta > alpha")
    arr = np.asarray(n)
    if not np.all(arr >= 2):
        raise DomainError("mvt_weight needs n >= 2")
    arr = arr.astype(np.float64)
    out = arr ** -alpha - arr ** -beta
    return float(out[()]) if np.isscalar(n) or out.ndim == 0 else out


class PrefixEvaluator:
    """Streaming accumulator for F_x(alpha) with optional history.

    Feed ascending lambda segments through update(); value holds the
    compensated running sum. With record_history=True the prefix value
    at every power of two is kept, which bounds history memory even for
    billion-term runs.
    """

    def __init__(self, alpha: float, record_history: bool = False):
        self.alpha = float(alpha)
        self.limit = 0
        self._acc = CompensatedSum()
        self.history: list[tuple[int, float]] | None = (
            [] if record_history else None
        )
        self._next_pow = 1

    def update(self, lo: int, lam: np.ndarray) -> None:
        if lo != self.limit + 1:
            raise DomainError(
                f"segments must be contiguous: expected lo={self.limit + 1}, got {lo}"
            )
        hi = lo + len(lam) - 1
        ns = np.arange(lo, hi + 1, dtype=np.float64)
        terms = lam.astype(np.float64) * ns ** -self.alpha
        if lo == 1:
            terms[0] = 0.0  # a(1) = 0
        if self.history is not None:
            cs = None
            while self._next_pow <= hi:
                if self._next_pow >= lo:
                    if cs is None:
                        cs = np.cumsum(terms)
                    self.history.append(
                        (self._next_pow, self._acc.value + float(cs[self._next_pow - lo]))
                    )
                self._next_pow *= 2
        self._acc.add_array(terms)
        self.limit = hi

    @property
    def value(self) -> float:
        return self._acc.value


def f_x(
    alpha: float,
    x: int,
    *,
    segment_size: int | None = None,
    threads: int | None = None,
) -> float:
    """F_x(alpha) = sum_{2<=n<=x} lambda(n) n^(-alpha).

    F_1(alpha) = 0 for every alpha, and F_x(1) = T(x) - 1.
    """
    x = int(x)
    if x < 1:
        raise DomainError("f_x needs x >= 1")
    if x == 1:
        return 0.0
    ev = PrefixEvaluator(alpha)
    for lo, lam in iter_lambda_segments(1, x + 1, segment_size=segment_size, threads=threads):
        ev.update(lo, lam)
    return ev.value


def l_x(
    seq: XiSequence,
    x: int,
    *,
    direct: bool = False,
    segment_size: int | None = None,
    threads: int | None = None,
) -> float:
    """L_x for the given xi construction; L_1 = 0.

    Default route sums the exact rearranged weights
    n^(-alpha) - n^(-beta); direct=True exponentiates xi(n) instead
    (slower and slightly lossier, kept for cross-validation).
    """
    x = int(x)
    if x < 1:
        raise DomainError("l_x needs x >= 1")
    if x == 1:
        return 0.0
    a, b = seq.alpha, seq.beta
    acc = CompensatedSum()
    for lo, lam in iter_lambda_segments(1, x + 1, segment_size=segment_size, threads=threads):
        ns = np.arange(lo, lo + len(lam), dtype=np.float64)
        lamf = lam.astype(np.float64)
        if direct:
            mask = ns >= 2
            w = np.zeros_like(ns)
            xs = seq.xi(ns[mask])
            w[mask] = (b - a) * np.log(ns[mask]) * np.power(ns[mask], -xs)
        else:
            w = ns ** -a - ns ** -b
            if lo == 1:
                w[0] = 0.0
        acc.add_array(lamf * w)
    return acc.value


def write_sums_csv(
    path: str,
    x: int,
    *,
    seq: XiSequence = DEFAULT_XI,
    segment_size: int | None = None,
    threads: int | None = None,
) -> int:
    """Stream to x once, writing (x, F_half, F_one, L) rows.

    Rows are kept at powers of two plus the final x; returns the row
    count. F_half/F_one use the seq's endpoints, so the header names
    stay honest for non-default (alpha, beta).
    """
    x = int(x)
    if x < 1:
        raise DomainError("x must be >= 1")
    a, b = seq.alpha, seq.beta
    acc_a = CompensatedSum()
    acc_b = CompensatedSum()
    acc_l = CompensatedSum()
    rows: list[tuple[int, float, float, float]] = []
    next_pow = 1

    def snapshot(n, va, vb, vl):
        rows.append((n, float(va), float(vb), float(vl)))

    for lo, lam in iter_lambda_segments(1, x + 1, segment_size=segment_size, threads=threads):
        hi = lo + len(lam) - 1
        ns = np.arange(lo, hi + 1, dtype=np.float64)
        lamf = lam.astype(np.float64)
        ta = lamf * ns ** -a
        tb = lamf * ns ** -b
        if lo == 1:
            ta[0] = tb[0] = 0.0
        tl = ta - tb
        marks = []
        while next_pow <= hi:
            if next_pow >= lo:
                marks.append(next_pow)
            next_pow *= 2
        if hi == x and (not marks or marks[-1] != x):
            marks.append(x)
        if marks:
            ca, cb, cl = np.cumsum(ta), np.cumsum(tb), np.cumsum(tl)
            for m in marks:
                i = m - lo
                snapshot(m, acc_a.value + ca[i], acc_b.value + cb[i], acc_l.value + cl[i])
        acc_a.add_array(ta)
        acc_b.add_array(tb)
        acc_l.add_array(tl)

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "F_half", "F_one", "L"])
        for n, va, vb, vl in rows:
            w.writerow([n, repr(va), repr(vb), repr(vl)])
    return len(rows)
