"""Univariate polynomials and rational functions over Q(i) in canonical form."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, isqrt

from .errors import EvaluationAtPole, NonSplitting
from .field import ONE, ZERO, Field, Scalar


def _sc(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.coerce(c)


class Poly:
    """Dense polynomial; ``coeffs[k]`` multiplies ``x**k``.  Immutable."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=()):
        cs = [_sc(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, cs: list) -> "Poly":
        while cs and not cs[-1]:
            cs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(cs)
        p._hash = None
        return p

    @classmethod
    def x(cls) -> "Poly":
        return cls._raw([ZERO, ONE])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls._raw([_sc(c)])

    @classmethod
    def linear(cls, root) -> "Poly":
        """The monic polynomial ``x - root``."""
        return cls._raw([-_sc(root), ONE])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls.linear(r)
        return p

    # -- basic properties ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == ONE

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == ONE:
            return self
        inv = self.coeffs[-1].inverse()
        return Poly._raw([c * inv for c in self.coeffs])

    # -- arithmetic ------------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (Scalar, int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for k, c in enumerate(b):
            cs[k] = cs[k] + c
        return Poly._raw(cs)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (Scalar, int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (Scalar, int, Fraction)):
                c = _sc(other)
                if not c:
                    return Poly._raw([])
                return Poly._raw([a * c for a in self.coeffs])
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw([])
        if len(b) == 1:
            return Poly._raw([c * b[0] for c in a])
        if len(a) == 1:
            return Poly._raw([a[0] * c for c in b])
        cs = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                cs[i + j] = cs[i + j] + ai * bj
        return Poly._raw(cs)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly._raw([]), self
        inv = other.lead.inverse()
        quo = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] = rem[k + j] - c * bc[j]
        return Poly._raw(quo), Poly._raw(rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def derivative(self) -> "Poly":
        return Poly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if isinstance(x, Poly):
            acc = Poly._raw([])
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        x = _sc(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly._raw([ZERO] * k + list(self.coeffs))

    def conjugate(self) -> "Poly":
        return Poly._raw([c.conjugate() for c in self.coeffs])

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (Scalar, int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not c.is_rational():
                cstr = f"({c})"
                sign = "+"
            else:
                sign = "-" if c.real < 0 else "+"
                mag = abs(c.real)
                cstr = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if mono and cstr == "1":
                body = mono
            elif mono:
                body = f"{cstr}*{mono}"
            else:
                body = cstr
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly._raw([])
    t0, t1 = Poly._raw([]), Poly.const(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = r0.lead.inverse()
    return r0 * inv, s0 * inv, t0 * inv


# ---------------------------------------------------------------------------
# factorization helpers


def squarefree_decompose(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with multiplicities."""
    if not p:
        raise ValueError("squarefree decomposition of the zero polynomial")
    out = []
    a = p.monic()
    if a.degree == 0:
        return out
    da = a.derivative()
    g = poly_gcd(a, da)
    b = a.exact_div(g)
    c = da.exact_div(g)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        b = b.exact_div(f)
        c = d.exact_div(f)
        d = c - b.derivative()
        if f.degree > 0:
            out.append((f, i))
        i += 1
    return out


def _clear_denominators(p: Poly) -> list[tuple[int, int]]:
    den = 1
    for c in p.coeffs:
        d = c.parts[2]
        den = den * d // gcd(den, d)
    out = []
    for c in p.coeffs:
        a, b, d = c.parts
        out.append((a * (den // d), b * (den // d)))
    return out


def _gmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, isqrt(n) + 1))


def _sqrt_minus_one(p: int) -> int:
    for a in range(2, p):
        s = pow(a, (p - 1) // 4, p)
        if s * s % p == p - 1:
            return s
    raise ValueError(p)


def _mod_poly(g, s: int, m: int) -> list[int]:
    """Image of a Gaussian-integer polynomial under ``i -> s`` modulo ``m``."""
    return [(a + b * s) % m for a, b in g]


def _eval_mod(c: list[int], x: int, m: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return acc


def _squarefree_mod(c: list[int], p: int) -> bool:
    """``gcd(c, c') == 1`` over F_p for a monic ``c``."""
    a = c[:]
    b = [(k * c[k]) % p for k in range(1, len(c))]
    while b and not b[-1]:
        b.pop()
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            q = a[-1] * inv % p
            shift = len(a) - len(b)
            for k, bk in enumerate(b):
                a[k + shift] = (a[k + shift] - q * bk) % p
            while a and not a[-1]:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) == 1


def _gaussian_integer_roots(g) -> list[tuple[int, int]]:
    """Candidate Gaussian-integer roots of a monic polynomial over Z[i].

    Roots modulo a prime ``p = 1 (mod 4)`` under both embeddings ``i -> +-s``
    are Hensel-lifted past twice the Cauchy bound; pairing the two images
    recovers real and imaginary parts.  Every true root is among the
    candidates; callers verify them exactly.
    """
    bound = 1 + max(abs(a) + abs(b) for a, b in g[:-1])
    p = 5
    while True:
        if p % 4 == 1 and _is_prime(p):
            s = _sqrt_minus_one(p)
            images = [_mod_poly(g, e, p) for e in (s, p - s)]
            if all(_squarefree_mod(c, p) for c in images):
                break
        p += 1
    roots = [[x for x in range(p) if not _eval_mod(c, x, p)] for c in images]
    m = p
    while m <= 2 * bound:
        m2 = m * m
        # lift s with s^2 + 1 = 0, then every root with one Newton step
        s = (s - (s * s + 1) * pow(2 * s, -1, m2)) % m2
        for idx, e in enumerate((s, (-s) % m2)):
            c = _mod_poly(g, e, m2)
            dc = [(k * c[k]) % m2 for k in range(1, len(c))]
            roots[idx] = [(r - _eval_mod(c, r, m2) * pow(_eval_mod(dc, r, m2), -1, m2)) % m2 for r in roots[idx]]
        m = m2
    inv2, inv2s = pow(2, -1, m), pow(2 * s, -1, m)

    def sym(v):
        return v - m if v > m // 2 else v

    return [
        (sym((r1 + r2) * inv2 % m), sym((r1 - r2) * inv2s % m)) for r1, r2 in product(roots[0], roots[1])
    ]


def _squarefree_roots(f: Poly, field: Field) -> list[Scalar]:
    roots: list[Scalar] = []
    if f.coeff(0) == ZERO:
        roots.append(ZERO)
        f = Poly._raw(list(f.coeffs[1:]))
    if f.degree <= 0:
        return roots
    if f.degree == 1:
        r = -f.coeff(0) / f.coeff(1)
        if field.contains(r):
            roots.append(r)
        return roots
    c = _clear_denominators(f)
    n, lead = f.degree, c[-1]
    # y = lead * x turns f into a monic g over Z[i]: g_j = c_j lead^(n-1-j)
    g, pw = [None] * (n + 1), (1, 0)
    for j in range(n - 1, -1, -1):
        g[j] = _gmul(c[j], pw)
        pw = _gmul(pw, lead)
    g[n] = (1, 0)
    L = Scalar(*lead)
    seen = set()
    for u, v in _gaussian_integer_roots(g):
        if field is Field.Q and v:
            continue
        cand = Scalar(u, v) / L
        if cand not in seen and not f(cand):
            seen.add(cand)
            roots.append(cand)
    return roots


def split_linear_factors(p: Poly, field: Field = Field.Q) -> list[tuple[Scalar, int]]:
    """Roots with multiplicities, sorted by (real, imaginary) part.

    Raises :class:`NonSplitting` when ``p`` has an irreducible factor of
    degree >= 2 over ``field``.
    """
    if not p:
        raise ValueError("cannot split the zero polynomial")
    if field is Field.Q and not p.is_rational():
        raise ValueError("polynomial has non-rational coefficients but field is Q")
    out = []
    for f, mult in squarefree_decompose(p):
        roots = _squarefree_roots(f, field)
        if len(roots) != f.degree:
            raise NonSplitting(p)
        out.extend((r, mult) for r in roots)
    out.sort(key=lambda rm: rm[0].sort_key())
    return out


def splits_over(p: Poly, field: Field) -> bool:
    try:
        split_linear_factors(p, field)
    except NonSplitting:
        return False
    return True


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """``num/den`` with ``gcd(num, den) == 1`` and ``den`` monic; zero is ``0/1``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _canonical: bool = False):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        self._hash = None
        if _canonical:
            self.num, self.den = num, den
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(1)
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lead = den.lead
        if lead != ONE:
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        self.num, self.den = num, den

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls(Poly.const(c), _canonical=False)

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly.x(), Poly.const(1), _canonical=True)

    @classmethod
    def pole(cls, b, order: int = 1) -> "RatFunc":
        """``1/(x - b)**order``."""
        return cls(Poly.const(1), Poly.linear(b) ** order, _canonical=True)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_scalar(self) -> Scalar:
        if self.num.degree > 0 or self.den.degree > 0:
            raise ValueError(f"{self} is not constant")
        return self.num.coeff(0)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, Poly.const(1), _canonical=True)
        if isinstance(other, (Scalar, int, Fraction)):
            return RatFunc(Poly.const(other), Poly.const(1), _canonical=True)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den, _canonical=False)
        d1 = self.den.exact_div(g)
        d2 = o.den.exact_div(g)
        return RatFunc(self.num * d2 + o.num * d1, d1 * o.den)

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
            c = _sc(other)
            if not c:
                return RatFunc(Poly._raw([]), Poly.const(1), _canonical=True)
            return RatFunc(self.num * c, self.den, _canonical=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc(Poly._raw([]), Poly.const(1), _canonical=True)
        # cross-cancel to keep operands small
        g1 = poly_gcd(self.num, o.den) if o.den.degree > 0 else None
        g2 = poly_gcd(o.num, self.den) if self.den.degree > 0 else None
        n1, d2 = self.num, o.den
        if g1 is not None and g1.degree > 0:
            n1, d2 = n1.exact_div(g1), d2.exact_div(g1)
        n2, d1 = o.num, self.den
        if g2 is not None and g2.degree > 0:
            n2, d1 = n2.exact_div(g2), d1.exact_div(g2)
        return RatFunc(n1 * n2, d1 * d2, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, _canonical=True)

    def derivative(self) -> "RatFunc":
        n, d = self.num, self.den
        if d.degree == 0:
            return RatFunc(n.derivative(), d, _canonical=True)
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x) -> Scalar:
        dv = self.den(x)
        if not dv:
            raise EvaluationAtPole(f"{self} has a pole at {x}")
        return self.num(x) / dv

    def laurent_at_infinity(self, lowest: int) -> dict[int, Scalar]:
        """Coefficients ``c_k`` of ``x**k`` in the expansion at infinity, ``k >= lowest``."""
        q, r = divmod(self.num, self.den)
        out = {k: c for k, c in enumerate(q.coeffs) if c and k >= lowest}
        if not r or lowest >= 0:
            return out
        # r/den = sum_{m>=1} s_m x^{-m}; long division in x^{-1}
        dd = self.den.degree
        dc = self.den.coeffs
        rem = list(r.coeffs) + [ZERO] * (dd - len(r.coeffs))
        # work with rem as a polynomial of degree < dd, shifted by x^-m
        for m in range(1, -lowest + 1):
            # multiply remainder by x: shift up
            rem = [ZERO] + rem
            c = rem[dd]
            if c:
                out[-m] = c
                for j in range(dd + 1):
                    rem[j] = rem[j] - c * dc[j]
            rem = rem[:dd]
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def to_str(self, var: str = "x") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)}) / ({self.den.to_str(var)})"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"RatFunc({self.to_str()!r})"


RZERO = RatFunc(Poly(), Poly.const(1), _canonical=True)
RONE = RatFunc(Poly.const(1), Poly.const(1), _canonical=True)
X = RatFunc.x()
