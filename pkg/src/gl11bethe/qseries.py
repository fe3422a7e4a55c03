"""Truncated power series in q."""

from __future__ import annotations

from .errors import PoleAtZero
from .field import ZERO, Scalar
from .poly import Poly, RatFunc


class QSeries:
    """``sum_{j<=D} c_j q^j``; coefficients beyond ``D`` are unknown and never reported."""

    __slots__ = ("coeffs", "D")

    def __init__(self, coeffs, D: int):
        cs = [Scalar.coerce(c) for c in list(coeffs)[: D + 1]]
        cs += [ZERO] * (D + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.D = D

    def __getitem__(self, j: int) -> Scalar:
        if j > self.D:
            raise IndexError(f"coefficient q^{j} lies beyond truncation degree {self.D}")
        return self.coeffs[j] if j >= 0 else ZERO

    def __add__(self, other: "QSeries") -> "QSeries":
        D = min(self.D, other.D)
        return QSeries([self.coeffs[j] + other.coeffs[j] for j in range(D + 1)], D)

    def __mul__(self, other: "QSeries") -> "QSeries":
        D = min(self.D, other.D)
        out = [ZERO] * (D + 1)
        for i in range(D + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(D + 1 - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return QSeries(out, D)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.D == other.D and self.coeffs == other.coeffs

    def as_ints(self) -> list[int]:
        out = []
        for c in self.coeffs:
            if not c.is_rational() or c.real.denominator != 1:
                raise ValueError(f"coefficient {c} is not an integer")
            out.append(int(c.real))
        return out

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if j == 0 else ("q" if j == 1 else f"q^{j}")
            cs = str(c)
            if mono:
                parts.append(mono if cs == "1" else f"{cs} {mono}")
            else:
                parts.append(cs)
        return (" + ".join(parts) or "0") + f" + O(q^{self.D + 1})"

    def __repr__(self) -> str:
        return f"QSeries({[str(c) for c in self.coeffs]}, D={self.D})"


def qseries_expand(r, D: int) -> QSeries:
    """Taylor expansion at q = 0 through degree ``D``."""
    if isinstance(r, Poly):
        r = RatFunc(r)
    num, den = r.num, r.den
    d0 = den.coeff(0)
    if not d0:
        raise PoleAtZero(f"{r.to_str('q')} has a pole at q = 0")
    inv = d0.inverse()
    out = []
    for k in range(D + 1):
        acc = num.coeff(k)
        for j in range(1, min(k, den.degree) + 1):
            acc = acc - den.coeff(j) * out[k - j]
        out.append(acc * inv)
    return QSeries(out, D)


def q_pochhammer(r: int) -> Poly:
    """``(q)_r = prod_{i=1}^r (1 - q^i)``."""
    p = Poly.const(1)
    for i in range(1, r + 1):
        p = p * (Poly.const(1) - Poly.x() ** i)
    return p
