"""The invariant space V^S, its graded characters, and Weyl modules V^S / I_a V^S.

``V = C[z_1..z_n] (x) (C^{1|1})^{(x) n}``.  A vector of ``V`` is a dict from a
label in ``{1,2}^n`` to a :class:`MultiPoly` in ``z``.  In the free
description, an element of ``V^S`` is a dict from a strictly increasing mode
tuple ``R`` (meaning ``e21[r_1] ... e21[r_l] v+``) to a polynomial in the
elementary symmetric functions ``sigma_1 .. sigma_n``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product

from .errors import OutOfDeskRange, TailNotVanishing
from .field import ONE, ZERO, Field, Scalar
from .gaudin import transfer_T
from .linalg import OperatorMatrix, Subspace, echelon, nullspace, rank
from .module import ActionModule
from .multipoly import MultiPoly, elementary, power_sum, reduce_symmetric
from .poly import Poly, RatFunc
from .qseries import QSeries, q_pochhammer, qseries_expand

MAX_N = 4
MAX_DEGREE = 8


# ---------------------------------------------------------------------------
# characters


def character_series(n: int, l: int, D: int, singular: bool = False) -> QSeries:
    """Graded character of the weight-``(n-l, l)`` part of ``V^S`` (or of its singular part)."""
    if not 0 <= l <= n:
        raise ValueError(f"sector {l} outside 0..{n}")
    q = Poly.x()
    if singular:
        if l == n:
            return QSeries([], D)
        num = q ** (l * (l + 1) // 2)
        den = q_pochhammer(l) * q_pochhammer(n - 1 - l) * (Poly.const(1) - q ** n)
    else:
        num = q ** (l * (l - 1) // 2)
        den = q_pochhammer(l) * q_pochhammer(n - l)
    return qseries_expand(RatFunc(num, den), D)


# ---------------------------------------------------------------------------
# the space V with polynomial coefficients


def _slot(i: int, j: int, c: int):
    # C^{1|1} is the module of weight (1, 0)
    if (i, j) == (1, 1):
        return (1, ONE) if c == 1 else None
    if (i, j) == (2, 2):
        return (2, ONE) if c == 2 else None
    if (i, j) == (2, 1):
        return (2, ONE) if c == 1 else None
    if (i, j) == (1, 2):
        return (1, ONE) if c == 2 else None
    raise ValueError(f"bad generator index ({i}, {j})")


def _vadd(acc: dict, lab, p: MultiPoly) -> None:
    if lab in acc:
        s = acc[lab] + p
        if s:
            acc[lab] = s
        else:
            del acc[lab]
    elif p:
        acc[lab] = p


def v_plus(n: int) -> dict:
    return {(1,) * n: MultiPoly.const(n, 1)}


def v_apply(i: int, j: int, r: int, vec: dict, n: int) -> dict:
    """``e_ij[r] = sum_m z_m^r e_ij^{(m)}`` on a vector of ``V``."""
    odd = (i == 2) != (j == 2)
    out: dict = {}
    for lab, p in vec.items():
        for m in range(n):
            hit = _slot(i, j, lab[m])
            if hit is None:
                continue
            c_new, _ = hit
            coef = p * (MultiPoly.var(n, m) ** r) if r else p
            if odd and lab[:m].count(2) % 2:
                coef = -coef
            _vadd(out, lab[:m] + (c_new,) + lab[m + 1:], coef)
    return out


def v_swap(vec: dict, i: int, n: int) -> dict:
    """Simple reflection ``s_i``: graded flip of factors ``i, i+1`` and swap of ``z_i, z_{i+1}``."""
    out: dict = {}
    for lab, p in vec.items():
        sign = -1 if lab[i] == 2 and lab[i + 1] == 2 else 1
        new = lab[:i] + (lab[i + 1], lab[i]) + lab[i + 2:]
        q = p.swap(i, i + 1)
        _vadd(out, new, q if sign == 1 else -q)
    return out


def v_is_invariant(vec: dict, n: int) -> bool:
    return all(v_swap(vec, i, n) == vec for i in range(n - 1))


def _perm_as_swaps(perm) -> list[int]:
    """Adjacent transpositions (applied left to right) realizing ``perm``."""
    p = list(perm)
    swaps = []
    for a in range(len(p)):
        for b in range(len(p) - 1 - a):
            if p[b] > p[b + 1]:
                p[b], p[b + 1] = p[b + 1], p[b]
                swaps.append(b)
    return swaps[::-1]


def v_permute(vec: dict, perm, n: int) -> dict:
    for i in _perm_as_swaps(perm):
        vec = v_swap(vec, i, n)
    return vec


def reynolds(vec: dict, n: int) -> dict:
    """Sum over the group (the average up to the factor ``n!``)."""
    out: dict = {}
    for perm in permutations(range(n)):
        for lab, p in v_permute(vec, perm, n).items():
            _vadd(out, lab, p)
    return out


def v_scale(vec: dict, p: MultiPoly) -> dict:
    out = {}
    for lab, c in vec.items():
        w = c * p
        if w:
            out[lab] = w
    return out


def v_words(n: int, modes, start: dict | None = None) -> dict:
    """``e21[m_1] ... e21[m_l]`` applied to ``start`` (default ``v+``)."""
    vec = v_plus(n) if start is None else start
    for r in reversed(modes):
        vec = v_apply(2, 1, r, vec, n)
    return vec


def _monomials(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _monomials(n - 1, d - first):
            yield (first,) + rest


def _sigma_monomials(n: int, d: int):
    """Exponent vectors ``mu`` with ``sum_i i*mu_i = d``."""
    def rec(i, left):
        if i > n:
            if left == 0:
                yield ()
            return
        for m in range(left // i + 1):
            for rest in rec(i + 1, left - i * m):
                yield (m,) + rest
    yield from rec(1, d)


def _sigma_value(mu, n: int) -> MultiPoly:
    p = MultiPoly.const(n, 1)
    for i, m in enumerate(mu):
        if m:
            p = p * elementary(i + 1, n) ** m
    return p


def _flatten(vectors, n: int):
    keys = sorted({(lab, e) for v in vectors for lab, p in v.items() for e in p.terms})
    index = {k: t for t, k in enumerate(keys)}
    rows = []
    for v in vectors:
        row = [ZERO] * len(keys)
        for lab, p in v.items():
            for e, c in p.terms.items():
                row[index[(lab, e)]] = c
        rows.append(row)
    return rows, keys


class GradedComponent:
    """Degree-``d`` part of ``(V^S)_{(n-l,l)}`` (or of its singular part)."""

    def __init__(self, n: int, l: int, d: int, singular: bool = False):
        if not (1 <= n <= MAX_N and 0 <= d <= MAX_DEGREE):
            raise OutOfDeskRange(f"n={n}, d={d} outside desk range n<={MAX_N}, d<={MAX_DEGREE}")
        if not 0 <= l <= n:
            raise ValueError(f"sector {l} outside 0..{n}")
        self.n, self.l, self.d, self.singular = n, l, d, singular
        self.labels = []
        self.basis = []
        if singular:
            gens = [((0,) + R, R) for R in combinations(range(1, n), l)]
        else:
            gens = [(R, R) for R in combinations(range(n), l)]
        for modes, R in gens:
            deg = sum(R)
            if deg > d:
                continue
            g = v_words(n, modes)
            if singular:
                g = v_apply(1, 2, 0, g, n)
            for mu in _sigma_monomials(n, d - deg):
                self.labels.append((mu, R))
                self.basis.append(v_scale(g, _sigma_value(mu, n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_independent(self) -> bool:
        if not self.basis:
            return True
        rows, _ = _flatten(self.basis, self.n)
        return rank(rows) == len(self.basis)

    def all_invariant(self) -> bool:
        return all(v_is_invariant(v, self.n) for v in self.basis)


def vs_component(n: int, l: int, d: int, singular: bool = False) -> GradedComponent:
    return GradedComponent(n, l, d, singular)


def invariant_component(n: int, l: int, d: int):
    """Basis of the degree-``d``, sector-``l`` invariants by averaging every monomial vector."""
    labs = [lab for lab in product((1, 2), repeat=n) if lab.count(2) == l]
    images = []
    for lab in labs:
        for e in _monomials(n, d):
            vec = {lab: MultiPoly.monomial(e)}
            r = reynolds(vec, n)
            if r:
                images.append(r)
    if not images:
        return []
    rows, keys = _flatten(images, n)
    E, _ = echelon(rows)
    out = []
    for row in E:
        vec: dict = {}
        for (lab, e), c in zip(keys, row):
            if c:
                _vadd(vec, lab, MultiPoly(n, {e: c}))
        out.append(vec)
    return out


def invariant_dimensions(n: int, l: int, d: int) -> tuple[int, int]:
    """``(dim, singular dim)`` of the degree-``d`` invariants by direct linear algebra."""
    inv = invariant_component(n, l, d)
    if not inv:
        return 0, 0
    images = [v_apply(1, 2, 0, v, n) for v in inv]
    if not any(images):
        return len(inv), len(inv)
    # kernel of e12[0] on span(inv): columns = inv vectors
    rows, keys = _flatten(images + inv, n)
    img_rows = rows[: len(inv)]
    # matrix with columns = images; kernel in coefficient space
    M = [[img_rows[c][t] for c in range(len(inv))] for t in range(len(keys))]
    M = [r for r in M if any(r)]
    return len(inv), len(nullspace(M, len(inv)))


def invariant_dimension_by_trace(n: int, l: int, d: int) -> int:
    """Same count from the trace formula ``1/n! sum_pi tr(pi)``."""
    from fractions import Fraction

    labs = [lab for lab in product((1, 2), repeat=n) if lab.count(2) == l]
    mons = list(_monomials(n, d))
    total = Fraction(0)
    for perm in permutations(range(n)):
        for lab in labs:
            # fixed iff the label is constant on cycles; sign from reordering odd factors
            if any(lab[perm[m]] != lab[m] for m in range(n)):
                continue
            odd = [m for m in range(n) if lab[m] == 2]
            sub = [odd.index(perm[m]) for m in odd]
            inv = sum(1 for a in range(len(sub)) for b in range(a + 1, len(sub)) if sub[a] > sub[b])
            sign = -1 if inv % 2 else 1
            fixed = sum(1 for e in mons if all(e[perm[m]] == e[m] for m in range(n)))
            total += sign * fixed
    fact = 1
    for m in range(2, n + 1):
        fact *= m
    total /= fact
    assert total.denominator == 1
    return int(total)


# ---------------------------------------------------------------------------
# symbolic action on the free basis


@lru_cache(maxsize=None)
def _power_sum_sigma(r: int, n: int) -> MultiPoly:
    return reduce_symmetric(power_sum(r, n))


def _sigma_var(n: int, i: int) -> MultiPoly:
    return MultiPoly.var(n, i - 1)


@lru_cache(maxsize=None)
def word_reduce(n: int, modes: tuple) -> tuple:
    """Normal form of ``e21[m_1] ... e21[m_l] v+`` as ``((R, coeff), ...)``."""
    for p, m in enumerate(modes):
        if m >= n:
            out: dict = {}
            for i in range(1, n + 1):
                sub = modes[:p] + (m - i,) + modes[p + 1:]
                c = _sigma_var(n, i) if i % 2 else -_sigma_var(n, i)
                for R, f in word_reduce(n, sub):
                    s = out.get(R)
                    out[R] = f * c if s is None else s + f * c
            return tuple((R, f) for R, f in out.items() if f)
    if len(set(modes)) != len(modes):
        return ()
    # sort by adjacent swaps, tracking the sign
    ms = list(modes)
    sign = 1
    for a in range(len(ms)):
        for b in range(len(ms) - 1 - a):
            if ms[b] > ms[b + 1]:
                ms[b], ms[b + 1] = ms[b + 1], ms[b]
                sign = -sign
    return ((tuple(ms), MultiPoly.const(n, sign)),)


@lru_cache(maxsize=None)
def symbolic_action(n: int, i: int, j: int, r: int, R: tuple) -> tuple:
    """``e_ij[r] g_R`` in the free basis: ``((R', sigma-poly), ...)``."""
    out: dict = {}

    def add(items, scale=None):
        for Rp, f in items:
            if scale is not None:
                f = f * scale
            s = out.get(Rp)
            out[Rp] = f if s is None else s + f

    if (i, j) == (2, 1):
        add(word_reduce(n, (r,) + R))
    elif (i, j) in ((1, 1), (2, 2)):
        sgn = -1 if (i, j) == (1, 1) else 1
        for p in range(len(R)):
            add(word_reduce(n, R[:p] + (R[p] + r,) + R[p + 1:]), MultiPoly.const(n, sgn))
        if (i, j) == (1, 1):
            add(((R, _power_sum_sigma(r, n)),))
    elif (i, j) == (1, 2):
        for p in range(len(R)):
            c = _power_sum_sigma(r + R[p], n)
            add(((R[:p] + R[p + 1:], c if p % 2 == 0 else -c),))
    else:
        raise ValueError(f"bad generator index ({i}, {j})")
    return tuple((Rp, f) for Rp, f in out.items() if f)


def sigma_to_z(f: MultiPoly) -> MultiPoly:
    n = f.nvars
    return f.substitute([elementary(i, n) for i in range(1, n + 1)])


# ---------------------------------------------------------------------------
# Weyl modules


def eta_poly(nparts, points) -> Poly:
    eta = Poly.const(1)
    for m, b in zip(nparts, points):
        eta = eta * Poly.linear(b) ** m
    return eta


class WeylModule(ActionModule):
    """``V^S / I_a V^S`` realized on the free basis ``g_R``, ``R`` a subset of ``{0..n-1}``."""

    def __init__(self, nparts, points):
        super().__init__()
        self.nparts = tuple(int(m) for m in nparts)
        self.points = tuple(Scalar.coerce(b) for b in points)
        if len(self.nparts) != len(self.points):
            raise ValueError("nparts and points differ in length")
        if len(set(self.points)) != len(self.points):
            raise ValueError("points must be distinct")
        if any(m <= 0 for m in self.nparts):
            raise ValueError("multiplicities must be positive")
        self.n = sum(self.nparts)
        if self.n > MAX_N:
            raise OutOfDeskRange(f"n = {self.n} exceeds {MAX_N}")
        n = self.n
        self.labels = [R for l in range(n + 1) for R in combinations(range(n), l)]
        self.index = {R: t for t, R in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.sectors = [len(R) for R in self.labels]
        self.vacuum = 0
        self.eta = eta_poly(self.nparts, self.points)
        # eta = x^n + sum_i (-1)^i a_i x^{n-i}
        self.a = [self.eta.coeff(n - i) * (-1) ** i for i in range(1, n + 1)]
        self.zeta = RatFunc(self.eta.derivative(), self.eta)
        self.pole_points = self.points
        self.field = Field.Q if all(b.is_rational() for b in self.points) else Field.QI

    def _mode(self, i, j, r):
        rows = [dict() for _ in range(self.dim)]
        for col, R in enumerate(self.labels):
            for Rp, f in symbolic_action(self.n, i, j, r, R):
                v = f.evaluate(self.a)
                if v:
                    rows[self.index[Rp]][col] = v
        return OperatorMatrix(self.dim, self.dim, rows)

    def _series(self, i, j):
        # eta(x) e(x) = sum_{m=1}^n c_m sum_{r<m} e[r] x^{m-1-r}
        n = self.n
        acc = OperatorMatrix(self.dim)
        for r in range(n):
            # coefficient of x^{m-1-r} is c_m
            poly = Poly([self.eta.coeff(m) for m in range(r + 1, n + 1)])
            if poly:
                acc = acc + self.mode(i, j, r).scale(RatFunc(poly))
        return acc.scale(RatFunc(Poly.const(1), self.eta))

    def eta_relation_vector(self):
        """``(e21 (x) eta(t)) v+``, which must vanish."""
        v = self.vacuum_vector()
        acc = [ZERO] * self.dim
        for m in range(self.n + 1):
            c = self.eta.coeff(m)
            if c:
                w = self.mode(2, 1, m).apply(v)
                acc = [x + c * y for x, y in zip(acc, w)]
        return acc

    def format_label(self, R) -> str:
        return "".join(f"e21[{r}]" for r in R) + "v+"


@lru_cache(maxsize=32)
def weyl_module(nparts, points) -> WeylModule:
    return WeylModule(tuple(nparts), tuple(Scalar.coerce(b) for b in points))


def power_sums_to_elementary(ps) -> list:
    """Newton identities: ``p_1..p_n`` to ``e_1..e_n``."""
    es = [ONE]
    for k in range(1, len(ps) + 1):
        acc = ZERO
        for i in range(1, k + 1):
            term = es[k - i] * ps[i - 1]
            acc = acc + term if i % 2 else acc - term
        es.append(acc / k)
    return es[1:]


def central_values(module: ActionModule, n: int) -> list:
    """Scalars ``C_1..C_n`` read from the action of ``(e11 + e22)[r]``, r = 1..n."""
    ps = []
    for r in range(1, n + 1):
        M = module.mode(1, 1, r) + module.mode(2, 2, r)
        vals = {M[t, t] for t in range(module.dim)}
        off = any(c != t for t in range(module.dim) for c in M.rows[t])
        if len(vals) != 1 or off:
            raise AssertionError(f"(e11+e22)[{r}] does not act by a scalar")
        ps.append(vals.pop())
    return power_sums_to_elementary(ps)


def extract_BC(module: ActionModule, l: int, n: int | None = None):
    """``B_2..B_n`` on the singular sector ``l`` and the central scalars ``C_1..C_n``.

    ``eta(x) T(x)`` restricted to the sector must be a polynomial of degree
    at most ``n-2``; ``B_i`` is its coefficient of ``x^{n-i}``.
    """
    if n is None:
        n = module.eta.degree
    C = central_values(module, n)
    eta = Poly.x() ** n
    for i, c in enumerate(C, start=1):
        eta = eta + (Poly.x() ** (n - i)) * (c * (-1) ** i)
    basis = module.singular_basis(l)
    if not basis:
        return [], C
    sub = Subspace(basis, module.dim)
    T = sub.restrict(transfer_T(module))
    m = sub.dim
    B = {i: [[ZERO] * m for _ in range(m)] for i in range(0, n + 1)}
    for a in range(m):
        for b in range(m):
            f = T[a, b]
            if not f:
                continue
            g = RatFunc(eta) * f
            if not g.is_polynomial():
                raise TailNotVanishing(
                    f"eta*T has a nonzero fractional part in entry ({a},{b}): {g.to_str()}"
                )
            poly = g.num * g.den.coeff(0).inverse()
            for k, c in enumerate(poly.coeffs):
                i = n - k
                if i < 2:
                    raise TailNotVanishing(f"eta*T has a term x^{k} beyond the B_2 term")
                B[i][a][b] = c
    return [OperatorMatrix.from_dense(B[i]) for i in range(2, n + 1)], C
