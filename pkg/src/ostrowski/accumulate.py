"""Compensated floating-point accumulators.

All large sums in this package run through Neumaier's variant of Kahan
summation: the accumulated rounding error is carried in a separate
compensation term, so adding N terms loses O(1) ulps instead of O(N).
"""

from __future__ import annotations


class Neumaier:
    """Compensated scalar accumulator."""

    __slots__ = ("total", "comp")

    def __init__(self) -> None:
        self.total = 0.0
        self.comp = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            # low-order bits of x survive in the compensation
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp


class ComplexNeumaier:
    """Compensated complex accumulator (independent real/imag channels)."""

    __slots__ = ("re", "im")

    def __init__(self) -> None:
        self.re = Neumaier()
        self.im = Neumaier()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)


def neumaier_sum(xs) -> float:
    acc = Neumaier()
    for x in xs:
        acc.add(x)
    return acc.value
