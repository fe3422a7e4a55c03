"""Sparse multivariate polynomials and reduction to elementary symmetric polynomials."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .errors import NotSymmetric
from .field import ONE, ZERO, Scalar


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as ``{exponent tuple: coefficient}``."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c) -> "MultiPoly":
        c = Scalar.coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exps, c=1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(e) == d for e in self.terms)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            c = Scalar.coerce(other)
            if not c:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        o = self._check(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._check(other) if not isinstance(other, MultiPoly) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def permute(self, perm) -> "MultiPoly":
        """Substitute ``z_i -> z_{perm[i]}``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(self.nvars, out)

    def swap(self, i: int, j: int) -> "MultiPoly":
        perm = list(range(self.nvars))
        perm[i], perm[j] = j, i
        return self.permute(perm)

    def is_symmetric(self) -> bool:
        return all(self.swap(i, i + 1) == self for i in range(self.nvars - 1))

    def evaluate(self, values) -> Scalar:
        vals = [Scalar.coerce(v) for v in values]
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            acc = acc + t
        return acc

    def substitute(self, polys) -> "MultiPoly":
        """Replace variable ``i`` by the polynomial ``polys[i]``."""
        nv = polys[0].nvars
        acc = MultiPoly._raw(nv, {})
        for e, c in self.terms.items():
            t = MultiPoly.const(nv, c)
            for p, k in zip(polys, e):
                if k:
                    t = t * p ** k
            acc = acc + t
        return acc

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"z{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=None)
def elementary(i: int, n: int) -> MultiPoly:
    """The i-th elementary symmetric polynomial in n variables."""
    if i == 0:
        return MultiPoly.const(n, 1)
    terms = {}
    from itertools import combinations

    for idx in combinations(range(n), i):
        e = [0] * n
        for k in idx:
            e[k] = 1
        terms[tuple(e)] = ONE
    return MultiPoly._raw(n, terms)


@lru_cache(maxsize=None)
def power_sum(r: int, n: int) -> MultiPoly:
    if r == 0:
        return MultiPoly.const(n, n)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = r
        terms[tuple(e)] = ONE
    return MultiPoly._raw(n, terms)


def reduce_symmetric(p: MultiPoly) -> MultiPoly:
    """Rewrite a symmetric polynomial in the elementary symmetric polynomials.

    The result is a polynomial in ``n`` variables where variable ``i`` stands for
    ``sigma_{i+1}(z)``.  Raises :class:`NotSymmetric` for non-invariant input.
    """
    n = p.nvars
    if not p.is_symmetric():
        raise NotSymmetric(f"polynomial is not symmetric: {p}")
    sig = [elementary(i, n) for i in range(1, n + 1)]
    rest = p
    out: dict = {}
    while rest:
        lead = max(rest.terms)
        c = rest.terms[lead]
        # lex-leading exponent of a symmetric polynomial is non-increasing
        exps = tuple(lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n))
        if any(k < 0 for k in exps):
            raise NotSymmetric(f"polynomial is not symmetric: {p}")
        out[exps] = out.get(exps, ZERO) + c
        term = MultiPoly.const(n, c)
        for s, k in zip(sig, exps):
            if k:
                term = term * s ** k
        rest = rest - term
    return MultiPoly(n, out)


def symmetric_orbit_check(p: MultiPoly) -> bool:
    """Brute-force invariance under every permutation (test oracle)."""
    return all(p.permute(perm) == p for perm in permutations(range(p.nvars)))
