"""Compensated floating-point accumulation.

Long scans fold millions of small terms into running totals. A plain
`+=` loses low-order bits once the running value dwarfs the terms, so
cross-segment carries here use Neumaier's variant of Kahan summation:
the rounding error of every add is recovered and banked in a side term.
"""

import math

import numpy as np


class CompensatedSum:
    """Neumaier-compensated running sum.

    add() folds in one value and banks the rounding error exactly.
    add_array() folds in a whole segment: by default the segment is
    reduced with numpy's pairwise sum (fast, error ~ eps*log n), with
    exact=True it is reduced by math.fsum (exactly rounded, slower).
    """

    __slots__ = ("_total", "_comp")

    def __init__(self, value: float = 0.0, comp: float = 0.0):
        self._total = float(value)
        self._comp = float(comp)

    def add(self, term: float) -> None:
        term = float(term)
        t = self._total + term
        if abs(self._total) >= abs(term):
            self._comp += (self._total - t) + term
        else:
            self._comp += (term - t) + self._total
        self._total = t

    def add_array(self, values, exact: bool = False) -> None:
        if len(values) == 0:
            return
        if exact:
            self.add(math.fsum(values.tolist() if isinstance(values, np.ndarray) else values))
        else:
            self.add(float(np.sum(values, dtype=np.float64)))

    @property
    def value(self) -> float:
        return self._total + self._comp

    # Raw parts, used by checkpoint files so a resumed scan reproduces
    # the uninterrupted run bit for bit.
    @property
    def parts(self) -> tuple[float, float]:
        return self._total, self._comp

    def __repr__(self) -> str:
        return f"CompensatedSum({self.value!r})"


class ComplexCompensatedSum:
    """Two CompensatedSums, one per component."""

    __slots__ = ("re", "im")

    def __init__(self, value: complex = 0.0):
        value = complex(value)
        self.re = CompensatedSum(value.real)
        self.im = CompensatedSum(value.imag)

    def add(self, term: complex) -> None:
        term = complex(term)
        self.re.add(term.real)
        self.im.add(term.imag)

    def add_array(self, values, exact: bool = False) -> None:
        arr = np.asarray(values)
        if arr.size == 0:
            return
        if np.iscomplexobj(arr):
            self.re.add_array(arr.real, exact=exact)
            self.im.add_array(arr.imag, exact=exact)
        else:
            self.re.add_array(arr, exact=exact)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)
