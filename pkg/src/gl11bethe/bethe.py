"""Bethe ansatz: the master polynomial, its divisors, Bethe vectors and eigenvalues."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from .errors import EvaluationAtPole
from .field import ZERO, Scalar
from .gaudin import as_module, transfer_H, transfer_T
from .linalg import OperatorMatrix
from .model import ModelSpec
from .poly import Poly, RatFunc, split_linear_factors
from .tensor import build_tensor_module

HALF = Fraction(1, 2)


def _partial_sum(model: ModelSpec, coef) -> RatFunc:
    x = RatFunc.x()
    acc = RatFunc(Poly.const(0))
    for w, b in zip(model.weights, model.points):
        c = coef(w)
        if c:
            acc = acc + RatFunc.const(c) / (x - b)
    return acc


def zeta(model: ModelSpec) -> RatFunc:
    return _partial_sum(model, lambda w: w.size)


def alpha_sum(model: ModelSpec) -> RatFunc:
    return _partial_sum(model, lambda w: w.alpha)


def beta_sum(model: ModelSpec) -> RatFunc:
    return _partial_sum(model, lambda w: w.beta)


def points_poly(model: ModelSpec) -> Poly:
    return Poly.from_roots(model.points)


def phi_poly(model: ModelSpec) -> tuple[RatFunc, Poly]:
    """``(zeta, phi)`` with ``phi = zeta * prod_s (x - b_s)``."""
    z = zeta(model)
    prod = RatFunc(points_poly(model))
    phi = z * prod
    if not phi.is_polynomial():
        raise AssertionError("phi must be a polynomial")
    return z, phi.num


@dataclass(frozen=True)
class BetheSolution:
    y: Poly
    roots: tuple
    model: ModelSpec = field(repr=False, compare=False)

    @property
    def l(self) -> int:
        return len(self.roots)

    def multiplicities(self) -> dict:
        out: dict = {}
        for t in self.roots:
            out[t] = out.get(t, 0) + 1
        return out

    def is_simple(self) -> bool:
        return len(set(self.roots)) == len(self.roots)


def _root_key(t: Scalar):
    return t.sort_key()


def phi_roots(model: ModelSpec) -> list[tuple[Scalar, int]]:
    """Roots of ``phi`` with multiplicities; raises ``NonSplitting``."""
    _, phi = phi_poly(model)
    return split_linear_factors(phi, model.field)


def monic_divisors(roots, l: int) -> list[tuple]:
    """Root multisets of the monic degree-``l`` divisors of a split polynomial.

    ``roots`` lists ``(root, multiplicity)``; the result is sorted by the
    multiset of ``(real, imag)`` keys.
    """
    out = []
    for ms in product(*[range(mult + 1) for _, mult in roots]):
        if sum(ms) != l:
            continue
        rs = []
        for (a, _), m in zip(roots, ms):
            rs.extend([a] * m)
        rs.sort(key=_root_key)
        out.append(tuple(rs))
    out.sort(key=lambda rs: [_root_key(t) for t in rs])
    return out


def enumerate_divisors(model: ModelSpec, l: int) -> list[BetheSolution]:
    """All monic degree-``l`` divisors of ``phi`` in a fixed order."""
    return [
        BetheSolution(Poly.from_roots(rs), rs, model)
        for rs in monic_divisors(phi_roots(model), l)
    ]


def multiplicity_binomial(roots, divisor_roots) -> int:
    """``prod_a binom(Mult_a(p), Mult_a(y))``."""
    my: dict = {}
    for t in divisor_roots:
        my[t] = my.get(t, 0) + 1
    out = 1
    for a, m in roots:
        out *= comb(m, my.get(a, 0))
    return out


def predicted_generalized_dim(model: ModelSpec, sol: BetheSolution) -> int:
    return multiplicity_binomial(phi_roots(model), sol.roots)


def lowering_at(model_or_module, t) -> OperatorMatrix:
    """``e_21(t)`` as a constant matrix; raises ``EvaluationAtPole`` at an evaluation point."""
    mod = as_module(model_or_module)
    t = Scalar.coerce(t)
    acc = OperatorMatrix(mod.dim)
    for s, b in enumerate(mod.model.points):
        if t == b:
            raise EvaluationAtPole(f"t = {t} coincides with evaluation point b_{s + 1}")
        acc = acc + mod.slot(s, 2, 1).scale((t - b).inverse())
    return acc


def lowering_product(model: ModelSpec, t) -> list:
    """``e21(t_1) ... e21(t_l)|0>`` in the order given; swapping two entries flips the sign."""
    mod = build_tensor_module(model)
    v = mod.vacuum_vector()
    for c in reversed([Scalar.coerce(c) for c in t]):
        v = lowering_at(mod, c).apply(v)
    return v


def bethe_vector(model: ModelSpec, t) -> tuple[list, bool]:
    """Bethe vector for the multiset ``t`` and a flag telling whether ``t`` has repeated entries.

    The factors are applied in the canonical root order, so the result does
    not depend on how ``t`` is listed.
    """
    ts = sorted((Scalar.coerce(c) for c in t), key=_root_key)
    v = lowering_product(model, ts)
    multiple = len(set(ts)) != len(ts)
    if multiple:
        # anticommutation forces zero; the product above must agree
        assert not any(v)
    return v, multiple


def _log_derivative(y: Poly) -> RatFunc:
    return RatFunc(y.derivative(), y)


def eigenvalue_H(model: ModelSpec, y: Poly) -> RatFunc:
    """``1/2 zeta' - zeta y'/y + 1/2 (A^2 - B^2)`` with ``A = sum alpha/(x-b)``, ``B = sum beta/(x-b)``."""
    z = zeta(model)
    A = alpha_sum(model)
    B = beta_sum(model)
    return (z.derivative() + A * A - B * B) * HALF - z * _log_derivative(y)


def eigenvalue_T(model: ModelSpec, y: Poly) -> RatFunc:
    """``zeta (y'/y + sum beta/(x-b))``."""
    return zeta(model) * (_log_derivative(y) + beta_sum(model))


def eigenvalue_weyl(nparts, points, y: Poly) -> RatFunc:
    """``1/2 zeta' - zeta y'/y + 1/2 zeta^2`` with ``zeta = sum n_s/(x-b_s)``."""
    x = RatFunc.x()
    z = RatFunc(Poly.const(0))
    for m, b in zip(nparts, points):
        z = z + RatFunc.const(m) / (x - Scalar.coerce(b))
    return (z.derivative() + z * z) * HALF - z * _log_derivative(y)


def apply_is_multiple(M: OperatorMatrix, v, value) -> bool:
    """Exact check of ``M v = value * v`` for a rational-function matrix."""
    w = M.apply(v)
    for a, b in zip(w, v):
        rhs = value * b if b else ZERO
        if not (a == rhs):
            if a or rhs:
                return False
    return True


@dataclass
class OnShellReport:
    y: Poly
    roots: tuple
    vector: list | None
    eig_H: RatFunc
    eig_T: RatFunc
    multiple_root: bool = False
    pole: bool = False
    nonzero: bool = False
    singular: bool | None = None
    eigen_H: bool | None = None
    eigen_T: bool | None = None

    @property
    def ok(self) -> bool:
        """All checks hold (only meaningful for a nonzero vector)."""
        return bool(self.nonzero and self.singular and self.eigen_H and self.eigen_T)


def verify_onshell(model: ModelSpec, sol: BetheSolution) -> OnShellReport:
    mod = build_tensor_module(model)
    rep = OnShellReport(sol.y, sol.roots, None, eigenvalue_H(model, sol.y), eigenvalue_T(model, sol.y))
    try:
        v, multiple = bethe_vector(model, sol.roots)
    except EvaluationAtPole:
        rep.pole = True
        return rep
    rep.vector = v
    rep.multiple_root = multiple
    rep.nonzero = any(v)
    if not rep.nonzero:
        return rep
    rep.singular = mod.is_singular(v)
    rep.eigen_H = apply_is_multiple(transfer_H(mod), v, rep.eig_H)
    rep.eigen_T = apply_is_multiple(transfer_T(mod), v, rep.eig_T)
    return rep


def total_divisor_count(model: ModelSpec) -> int:
    """``prod_a (Mult_a(phi) + 1)``."""
    out = 1
    for _, m in phi_roots(model):
        out *= m + 1
    return out


def vacuum_eigenvalue(model: ModelSpec) -> RatFunc:
    """Eigenvalue of ``SH(x)`` on ``|0>`` read off by matrix application."""
    mod = build_tensor_module(model)
    w = transfer_H(mod).apply(mod.vacuum_vector())
    for i, c in enumerate(w):
        if i != mod.vacuum and c:
            raise AssertionError("vacuum is not an eigenvector")
    return w[mod.vacuum]
