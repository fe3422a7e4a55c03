"""Rational functions whose poles lie in a fixed finite set of points.

A value is ``num / (den * prod_s (x - b_s)^{e_s})`` where ``num`` is a list of
Gaussian integers (pairs of ints) and ``den`` a positive int.  Poles are
cancelled by synthetic division, so no polynomial gcd is ever needed, and all
inner loops run on plain ints.  Used for the long operator-valued
computations; results convert back to canonical :class:`RatFunc`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .field import Scalar
from .poly import Poly, RatFunc


def _normalize(re, im, den):
    """Trim, make ``den`` positive and divide out the common content."""
    n = len(re)
    while n and not re[n - 1] and not im[n - 1]:
        n -= 1
    if not n:
        return [], [], 1
    re, im = re[:n], im[:n]
    if den < 0:
        re, im, den = [-a for a in re], [-b for b in im], -den
    g = gcd(den, *re, *im)
    if g != 1:
        re, im, den = [a // g for a in re], [b // g for b in im], den // g
    return re, im, den


def _conv(ar, ai, br, bi):
    """Product of two Gaussian-integer coefficient lists."""
    if not ar or not br:
        return [], []
    n = len(ar) + len(br) - 1
    outr, outi = [0] * n, [0] * n
    b_real = not any(bi)
    a_real = not any(ai)
    for i in range(len(ar)):
        x, y = ar[i], ai[i]
        if not x and not y:
            continue
        for j in range(len(br)):
            u, v = br[j], bi[j]
            if b_real:
                if not u:
                    continue
                outr[i + j] += x * u
                outi[i + j] += y * u
            elif a_real:
                outr[i + j] += x * u
                outi[i + j] += x * v
            else:
                outr[i + j] += x * u - y * v
                outi[i + j] += x * v + y * u
    return outr, outi


def _scale(re, im, c):
    return [a * c for a in re], [b * c for b in im]


def _add(ar, ai, br, bi):
    if len(ar) < len(br):
        ar, ai, br, bi = br, bi, ar, ai
    outr, outi = list(ar), list(ai)
    for k in range(len(br)):
        outr[k] += br[k]
        outi[k] += bi[k]
    return outr, outi


class PoleRing:
    """Shared pole set and cached powers of ``R_s x - beta_s`` (with ``b_s = beta_s / R_s``)."""

    def __init__(self, points):
        self.points = tuple(Scalar.coerce(b) for b in points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("pole points must be distinct")
        self.k = len(self.points)
        # (beta real, beta imag, R)
        self.gauss = [b.parts for b in self.points]
        self._pow = {}

    def power(self, s: int, e: int):
        """``(R_s x - beta_s)^e`` as integer lists."""
        key = (s, e)
        if key not in self._pow:
            if e == 0:
                self._pow[key] = ([1], [0])
            else:
                p, q, R = self.gauss[s]
                re, im = self.power(s, e - 1)
                self._pow[key] = _conv(re, im, [-p, R], [-q, 0])
        return self._pow[key]

    def try_divide(self, re, im, s: int):
        """Quotient ``(re, im, extra_den)`` of division by ``x - b_s``, or ``None`` if it leaves a remainder."""
        p, q, R = self.gauss[s]
        n = len(re) - 1
        if n < 1:
            return None
        # Q'_{n-1} = c_n,  Q'_{k-1} = c_k R^{n-k} + beta Q'_k,  remainder Q'_{-1} = R^n P(b)
        Qr, Qi = [0] * n, [0] * n
        accr, acci = re[n], im[n]
        Qr[n - 1], Qi[n - 1] = accr, acci
        Rp = 1
        for k in range(n - 1, -1, -1):
            Rp *= R
            accr, acci = re[k] * Rp + p * accr - q * acci, im[k] * Rp + p * acci + q * accr
            if k:
                Qr[k - 1], Qi[k - 1] = accr, acci
        if accr or acci:
            return None
        if R == 1:
            return Qr, Qi, 1
        # q_k = Q'_k / R^{n-1-k}; common denominator R^{n-1}
        Rk = 1
        for k in range(n):
            Qr[k] *= Rk
            Qi[k] *= Rk
            Rk *= R
        return Qr, Qi, R ** (n - 1)

    def zero(self) -> "PoleFrac":
        return PoleFrac(self, [], [], 1, (0,) * self.k)

    def const(self, c) -> "PoleFrac":
        a, b, d = Scalar.coerce(c).parts
        return PoleFrac(self, [a], [b], d, (0,) * self.k)

    def from_ratfunc(self, r: RatFunc) -> "PoleFrac":
        dre, dim, dd = _int_coeffs(r.den.coeffs)
        exps = [0] * self.k
        for s in range(self.k):
            while True:
                hit = self.try_divide(dre, dim, s)
                if hit is None:
                    break
                dre, dim, extra = hit
                dd *= extra
                exps[s] += 1
        if len(dre) != 1:
            raise ValueError(f"{r} has poles outside the ring's points")
        # remaining constant denominator (dre + i dim) / dd
        nre, nim, nd = _int_coeffs(r.num.coeffs)
        a, b = dre[0], dim[0]
        # num/nd / ((a+bi)/dd) = num * dd * (a-bi) / (nd (a^2+b^2))
        nre, nim = _conv(nre, nim, [a * dd], [-b * dd])
        return PoleFrac(self, nre, nim, nd * (a * a + b * b), tuple(exps))

    def lift(self, v):
        if isinstance(v, PoleFrac):
            return v
        if isinstance(v, RatFunc):
            return self.from_ratfunc(v)
        return self.const(v)


def _int_coeffs(coeffs):
    """Scalar list to ``(re ints, im ints, common denominator)``."""
    den = 1
    for c in coeffs:
        d = c.parts[2]
        den = den * d // gcd(den, d)
    re, im = [], []
    for c in coeffs:
        a, b, d = c.parts
        m = den // d
        re.append(a * m)
        im.append(b * m)
    return re, im, den


class PoleFrac:
    __slots__ = ("ring", "re", "im", "den", "exps")

    def __init__(self, ring: PoleRing, re, im, den, exps, reduce: bool = True):
        self.ring = ring
        re, im, den = _normalize(re, im, den)
        if not re:
            self.re, self.im, self.den, self.exps = [], [], 1, (0,) * ring.k
            return
        if reduce:
            exps = list(exps)
            for s, e in enumerate(exps):
                while e:
                    hit = ring.try_divide(re, im, s)
                    if hit is None:
                        break
                    re, im, extra = hit
                    den *= extra
                    e -= 1
                exps[s] = e
            re, im, den = _normalize(re, im, den)
        self.re, self.im, self.den, self.exps = re, im, den, tuple(exps)

    def _coerce(self, other):
        if isinstance(other, PoleFrac):
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return self.ring.const(other)
        if isinstance(other, RatFunc):
            return self.ring.from_ratfunc(other)
        return None

    def __bool__(self) -> bool:
        return bool(self.re)

    def __neg__(self) -> "PoleFrac":
        return PoleFrac(self.ring, [-a for a in self.re], [-b for b in self.im], self.den, self.exps, reduce=False)

    def _raise_to(self, target):
        """Numerator lists and denominator after rewriting over the pole exponents ``target``."""
        re, im, den = self.re, self.im, self.den
        for s, (e, t) in enumerate(zip(self.exps, target)):
            if t > e:
                pr, pi = self.ring.power(s, t - e)
                re, im = _conv(re, im, pr, pi)
                den *= self.ring.gauss[s][2] ** (t - e)
        return re, im, den

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.re:
            return self
        if not self.re:
            return o
        if self.exps == o.exps:
            target = self.exps
            ar, ai, ad = self.re, self.im, self.den
            br, bi, bd = o.re, o.im, o.den
        else:
            target = tuple(max(a, b) for a, b in zip(self.exps, o.exps))
            ar, ai, ad = self._raise_to(target)
            br, bi, bd = o._raise_to(target)
        g = gcd(ad, bd)
        ma, mb = bd // g, ad // g
        if ma != 1:
            ar, ai = _scale(ar, ai, ma)
        if mb != 1:
            br, bi = _scale(br, bi, mb)
        re, im = _add(ar, ai, br, bi)
        return PoleFrac(self.ring, re, im, ad * ma, target)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            a, b, d = Scalar.coerce(other).parts
            if not a and not b:
                return self.ring.zero()
            re, im = _conv(self.re, self.im, [a], [b])
            return PoleFrac(self.ring, re, im, self.den * d, self.exps, reduce=False)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.re or not o.re:
            return self.ring.zero()
        exps = tuple(a + b for a, b in zip(self.exps, o.exps))
        re, im = _conv(self.re, self.im, o.re, o.im)
        return PoleFrac(self.ring, re, im, self.den * o.den, exps)

    __rmul__ = __mul__

    def derivative(self) -> "PoleFrac":
        # with x - b_s = L_s / R_s and P = prod_{e_s>0} L_s:
        # (n / prod (x-b)^e)' = (n' P - n sum_s e_s R_s P / L_s) / (prod R_s * prod (x-b)^{e+1})
        re, im = self.re, self.im
        if not re:
            return self
        dre = [k * c for k, c in enumerate(re)][1:]
        dim = [k * c for k, c in enumerate(im)][1:]
        active = [s for s, e in enumerate(self.exps) if e]
        if not active:
            return PoleFrac(self.ring, dre, dim, self.den, self.exps, reduce=False)
        ring = self.ring
        Pr, Pi = [1], [0]
        Rall = 1
        for s in active:
            pr, pi = ring.power(s, 1)
            Pr, Pi = _conv(Pr, Pi, pr, pi)
            Rall *= ring.gauss[s][2]
        totr, toti = _conv(dre, dim, Pr, Pi)
        for s in active:
            rr, ri = [-self.exps[s] * ring.gauss[s][2]], [0]
            for t in active:
                if t != s:
                    pr, pi = ring.power(t, 1)
                    rr, ri = _conv(rr, ri, pr, pi)
            tr, ti = _conv(re, im, rr, ri)
            totr, toti = _add(totr, toti, tr, ti)
        exps = tuple(e + 1 if e else 0 for e in self.exps)
        return PoleFrac(ring, totr, toti, self.den * Rall, exps)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.exps == o.exps and self.den == o.den and self.re == o.re and self.im == o.im

    __hash__ = None

    def numerator(self) -> Poly:
        return Poly([Scalar._make(a, b, self.den) for a, b in zip(self.re, self.im)])

    def to_ratfunc(self) -> RatFunc:
        if not self.re:
            return RatFunc(Poly.const(0))
        den = Poly.const(1)
        for s, e in enumerate(self.exps):
            if e:
                den = den * Poly.linear(self.ring.points[s]) ** e
        return RatFunc(self.numerator(), den, _canonical=True)

    def __repr__(self) -> str:
        return f"PoleFrac({self.to_ratfunc().to_str()!r})"
