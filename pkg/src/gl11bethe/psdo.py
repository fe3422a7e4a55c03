"""Truncated pseudo-differential operators ``sum_r A_r d^{-r}`` in one variable x.

Coefficients are :class:`RatFunc` values (scalar operators) or
:class:`OperatorMatrix` values with rational-function entries.  ``N`` is the
largest ``r`` whose coefficient is known exactly; ``None`` marks an operator
with finitely many terms, known to every order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import NonSplitting, DimensionMismatch, NotInvertibleLeadingTerm, ZetaVanishes
from .field import Scalar
from .gaudin import as_module, transfer_G12
from .linalg import OperatorMatrix, Subspace
from .model import ModelSpec
from .polefrac import PoleFrac, PoleRing
from .poly import Poly, RatFunc, split_linear_factors


def gbinom(r: int, s: int) -> Fraction:
    """``r(r-1)...(r-s+1)/s!`` for any integer ``r``."""
    num = 1
    for j in range(s):
        num *= r - j
    return Fraction(num, factorial(s))


def _cmul(a, b):
    if isinstance(a, OperatorMatrix):
        if isinstance(b, OperatorMatrix):
            return a @ b
        return a.scale(b)
    if isinstance(b, OperatorMatrix):
        return b.scale(a)
    return a * b


def _nonzero(c) -> bool:
    return bool(c)


def _min_known(*ns):
    vals = [n for n in ns if n is not None]
    return min(vals) if vals else None


class PsDO:
    __slots__ = ("coeffs", "N", "dim")

    def __init__(self, coeffs: dict, N: int | None, dim: int | None = None):
        self.N = N
        self.dim = dim
        self.coeffs = {
            r: c for r, c in coeffs.items() if _nonzero(c) and (N is None or r <= N)
        }

    # -- construction ----------------------------------------------------
    @classmethod
    def one(cls, dim: int | None = None) -> "PsDO":
        return cls({0: cls._unit(dim)}, None, dim)

    @classmethod
    def d(cls, dim: int | None = None) -> "PsDO":
        """The derivation ``d/dx``."""
        return cls({-1: cls._unit(dim)}, None, dim)

    @classmethod
    def mult(cls, a, dim: int | None = None) -> "PsDO":
        """Multiplication by the function ``a``."""
        if isinstance(a, OperatorMatrix):
            dim = a.nrows
        elif isinstance(a, (Scalar, int, Fraction)):
            a = RatFunc.const(a)
        return cls({0: a}, None, dim)

    @staticmethod
    def _unit(dim):
        if dim is None:
            return RatFunc.const(1)
        return OperatorMatrix.identity(dim, RatFunc.const(1))

    # -- accessors -------------------------------------------------------
    @property
    def top(self) -> int:
        """Largest power of ``d`` present."""
        return -min(self.coeffs) if self.coeffs else 0

    def coeff(self, r: int):
        if self.N is not None and r > self.N:
            raise IndexError(f"coefficient of d^-{r} lies beyond truncation order {self.N}")
        c = self.coeffs.get(r)
        if c is None:
            if self.dim is None:
                return RatFunc.const(0)
            return OperatorMatrix(self.dim)
        return c

    def truncate(self, N: int) -> "PsDO":
        if self.N is not None and N > self.N:
            raise ValueError(f"cannot raise truncation from {self.N} to {N}")
        return PsDO(self.coeffs, N, self.dim)

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "PsDO"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"coefficient sizes {self.dim} and {other.dim}")

    def __add__(self, other: "PsDO") -> "PsDO":
        self._check(other)
        N = _min_known(self.N, other.N)
        out = dict(self.coeffs)
        for r, c in other.coeffs.items():
            out[r] = out[r] + c if r in out else c
        return PsDO(out, N, self.dim)

    def __neg__(self) -> "PsDO":
        return PsDO({r: -c for r, c in self.coeffs.items()}, self.N, self.dim)

    def __sub__(self, other: "PsDO") -> "PsDO":
        return self + (-other)

    def __mul__(self, other: "PsDO") -> "PsDO":
        return psdo_mul(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PsDO):
            return NotImplemented
        if self.N != other.N or self.dim != other.dim:
            return False
        return self.coeffs == other.coeffs

    __hash__ = None

    def agrees_with(self, other: "PsDO", N: int) -> bool:
        """Coefficientwise equality for every ``r <= N``."""
        lo = min(list(self.coeffs) + list(other.coeffs) + [0])
        return all(self.coeff(r) == other.coeff(r) for r in range(lo, N + 1))

    def restrict(self, sub: Subspace) -> "PsDO":
        if self.dim is None:
            raise TypeError("scalar operator has nothing to restrict")
        return PsDO({r: sub.restrict(c) for r, c in self.coeffs.items()}, self.N, sub.dim)

    def apply(self, v) -> dict:
        """``r -> A_r v`` for a constant vector ``v``."""
        return {r: c.apply(v) for r, c in self.coeffs.items()}

    def __repr__(self) -> str:
        return f"PsDO(top={self.top}, N={self.N}, terms={sorted(self.coeffs)})"


def _derivs(c, upto: int) -> list:
    out = [c]
    for _ in range(upto):
        out.append(out[-1].derivative())
    return out


def psdo_mul(A: PsDO, B: PsDO) -> PsDO:
    """Product via ``d^{-i} b = sum_s binom(-i, s) b^(s) d^{-i-s}``."""
    A._check(B)
    N = _min_known(
        None if A.N is None else A.N - B.top,
        None if B.N is None else B.N - A.top,
    )
    if N is None:
        # both finite: the product is finite, but each d^{-i} with i > 0 spreads infinitely
        if any(i > 0 for i in A.coeffs):
            raise ValueError("product of exact operators with negative powers needs a truncation order")
        smax = {i: -i for i in A.coeffs}
    else:
        smax = None
    out: dict = {}
    deriv_cache: dict = {}
    for i, a in A.coeffs.items():
        for j, b in B.coeffs.items():
            if N is None:
                s_hi = smax[i]
            else:
                s_hi = N - i - j
                if i <= 0:
                    s_hi = min(s_hi, -i)
            if s_hi < 0:
                continue
            key = j
            ders = deriv_cache.get(key)
            if ders is None or len(ders) <= s_hi:
                ders = _derivs(b, s_hi)
                deriv_cache[key] = ders
            for s in range(s_hi + 1):
                bs = ders[s]
                if not _nonzero(bs):
                    continue
                g = gbinom(-i, s)
                if not g:
                    continue
                term = _cmul(a, bs)
                if g != 1:
                    term = _cmul(term, Scalar(g)) if isinstance(term, OperatorMatrix) else term * Scalar(g)
                r = i + j + s
                out[r] = out[r] + term if r in out else term
    return PsDO(out, N, A.dim)


def psdo_invert(A: PsDO, N: int | None = None) -> PsDO:
    """Inverse of ``d^d (1 + lower)`` by solving ``A X = 1`` one coefficient at a time.

    ``A`` known through ``d^{-N_A}`` determines the inverse through
    ``d^{-(N_A + 2d)}``; ``N`` optionally asks for fewer terms (required when
    ``A`` is exact).
    """
    d = A.top
    lead = A.coeffs.get(-d)
    unit = PsDO._unit(A.dim)
    if lead is None or not (lead == unit):
        raise NotInvertibleLeadingTerm("leading coefficient must be the identity")
    limit = None if A.N is None else A.N + 2 * d
    if N is None:
        if limit is None:
            raise ValueError("an exact operator needs an explicit truncation order")
        N = limit
    elif limit is not None and N > limit:
        raise ValueError(f"inverse is only determined through order {limit}")
    X: dict = {}
    # coefficient of d^{-m} in A X, m = 0 .. N - d
    for m in range(0, N - d + 1):
        acc = None
        for i, a in A.coeffs.items():
            for j, xj in X.items():
                s = m - i - j
                if s < 0 or (i == -d and s == 0):
                    continue
                if i <= 0 and s > -i:
                    continue
                g = gbinom(-i, s)
                if not g:
                    continue
                xs = xj
                for _ in range(s):
                    xs = xs.derivative()
                if not _nonzero(xs):
                    continue
                term = _cmul(a, xs)
                term = term.scale(Scalar(g)) if isinstance(term, OperatorMatrix) else term * Scalar(g)
                acc = term if acc is None else acc + term
        rhs = unit if m == 0 else None
        if acc is None:
            val = rhs
        elif rhs is None:
            val = -acc
        else:
            val = rhs - acc
        if val is not None and _nonzero(val):
            X[m + d] = val
    return PsDO(X, N, A.dim)


def neumann_invert(A: PsDO, N: int) -> PsDO:
    """Reference inverse ``sum_j (-L)^j d^{-d}`` with ``A = d^d (1 + L)``; used as a test oracle."""
    d = A.top
    dinv = PsDO({d: PsDO._unit(A.dim)}, None, A.dim)
    if d == 0:
        conj = A
    else:
        conj = psdo_mul(dinv.truncate(N + d), A)  # d^{-d} A = 1 + L
    L = conj - PsDO.one(A.dim)
    L = L.truncate(min(N, L.N if L.N is not None else N))
    total = PsDO.one(A.dim).truncate(L.N)
    term = PsDO.one(A.dim).truncate(L.N)
    negL = -L
    for _ in range(L.N + 1):
        term = psdo_mul(term, negL)
        if not term.coeffs:
            break
        total = total + term
    return psdo_mul(total, dinv.truncate(N))


def berezinian(obj, N: int = 6) -> PsDO:
    """``(d - e11)(d + e22 + e21 (d - e11)^{-1} e12)^{-1}`` through ``d^{-N}``."""
    mod = as_module(obj)
    cache = mod.__dict__.setdefault("_ber", {})
    if N in cache:
        return cache[N]
    dim = mod.dim
    ring = PoleRing(mod.pole_points)

    def e(i, j):
        return mod.series(i, j).map(ring.lift)

    D = PsDO.d(dim)
    p = N - 1
    left = D - PsDO.mult(e(1, 1))
    inner = PsDO.mult(e(2, 1)) * psdo_invert(left, p) * PsDO.mult(e(1, 2))
    mid = D + PsDO.mult(e(2, 2)) + inner
    result = _to_ratfunc(psdo_mul(left, psdo_invert(mid)))
    assert result.N == N
    cache[N] = result
    return result


def _to_ratfunc(A: PsDO) -> PsDO:
    def conv(v):
        return v.to_ratfunc() if isinstance(v, PoleFrac) else v

    out = {}
    for r, c in A.coeffs.items():
        out[r] = c.map(conv) if isinstance(c, OperatorMatrix) else conv(c)
    return PsDO(out, A.N, A.dim)


def gaudin_series(obj, N: int = 6) -> list[OperatorMatrix]:
    """``G_0 .. G_N`` from ``Ber = sum_r (-1)^r G_r d^{-r}``."""
    ber = berezinian(obj, N)
    out = []
    for r in range(N + 1):
        c = ber.coeff(r)
        out.append(c if r % 2 == 0 else -c)
    return out


def oper_Dy(model: ModelSpec, y: Poly, N: int = 6) -> PsDO:
    """``(d - sum alpha/(x-b) + y'/y)(d + sum beta/(x-b) + y'/y)^{-1}``."""
    from .bethe import alpha_sum, beta_sum

    ly = RatFunc(y.derivative(), y)
    nu = beta_sum(model) + ly
    left = PsDO.d() - PsDO.mult(alpha_sum(model) - ly)
    right = PsDO.d() + PsDO.mult(nu)
    return psdo_mul(left, psdo_invert(right, N + 1))


def oper_eigen_check(model: ModelSpec, vector, y: Poly, N: int = 6) -> bool:
    """``Ber v = v D_y`` coefficientwise through ``d^{-N}``."""
    ber = berezinian(model, N)
    dy = oper_Dy(model, y, N)
    for r in range(N + 1):
        lhs = ber.coeff(r).apply(vector)
        c = dy.coeff(r)
        for a, b in zip(lhs, vector):
            rhs = c * b if b else RatFunc.const(0)
            if not (a == rhs):
                return False
    return True


def universal_oper(obj, N: int = 6) -> PsDO:
    """``(d - G1 + G2/G1)(d + G2/G1)^{-1}`` with ``G1`` acting as the scalar ``zeta``."""
    mod = as_module(obj)
    z = mod.zeta
    if not z:
        raise ZetaVanishes("zeta is identically zero")
    g1, g2 = transfer_G12(mod)
    q = g2.scale(z.inverse())
    try:
        zeros = [a for a, _ in split_linear_factors(z.num, mod.field)]
    except NonSplitting:
        zeros = None
    if zeros is not None:
        ring = PoleRing(tuple(mod.pole_points) + tuple(a for a in zeros if a not in mod.pole_points))
        q = q.map(ring.lift)
        g1 = g1.map(ring.lift)
    D = PsDO.d(mod.dim)
    left = D - PsDO.mult(g1) + PsDO.mult(q)
    right = D + PsDO.mult(q)
    return _to_ratfunc(psdo_mul(left, psdo_invert(right, N + 1)))


def check_universal_oper(obj, N: int = 6) -> dict:
    """Compare the Berezinian with the universal formula on the whole module and on each singular sector."""
    mod = as_module(obj)
    ber = berezinian(mod, N)
    uni = universal_oper(mod, N)
    report = {"full": ber.agrees_with(uni, N), "sectors": {}}
    for l in range(mod.max_sector + 1):
        basis = mod.singular_basis(l)
        if not basis:
            continue
        sub = Subspace(basis, mod.dim)
        report["sectors"][l] = ber.restrict(sub).agrees_with(uni.restrict(sub), N)
    report["ok"] = report["full"] and all(report["sectors"].values())
    return report
