"""Tensor products of two-dimensional evaluation modules."""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from .field import ONE, ZERO, Scalar
from .linalg import OperatorMatrix
from .model import ModelSpec, integer_value
from .module import ActionModule, op_parity
from .poly import Poly, RatFunc


def _slot_action(w, i: int, j: int, c: int):
    """Action of ``e_ij`` on basis label ``c`` of a two-dimensional module; ``None`` means zero."""
    if (i, j) == (1, 1):
        return (1, w.alpha) if c == 1 else (2, w.alpha - 1)
    if (i, j) == (2, 2):
        return (1, w.beta) if c == 1 else (2, w.beta + 1)
    if (i, j) == (2, 1):
        return (2, ONE) if c == 1 else None
    if (i, j) == (1, 2):
        return (1, w.size) if c == 2 else None
    raise ValueError(f"bad generator index ({i}, {j})")


class TensorModule(ActionModule):
    """Basis labels in ``{1,2}^k`` (2 = lowered vector), lexicographic order."""

    def __init__(self, model: ModelSpec):
        super().__init__()
        model.check_nondegenerate()
        self.model = model
        self.k = model.k
        self.labels = list(product((1, 2), repeat=self.k))
        self.index = {lab: n for n, lab in enumerate(self.labels)}
        self.dim = len(self.labels)
        self.sectors = [lab.count(2) for lab in self.labels]
        self.parities = [s % 2 for s in self.sectors]
        self.vacuum = 0
        x = RatFunc.x()
        zeta = RatFunc(Poly.const(0))
        for w, b in zip(model.weights, model.points):
            zeta = zeta + RatFunc.const(w.size) / (x - b)
        self.zeta = zeta
        try:
            eta = Poly.const(1)
            for w, b in zip(model.weights, model.points):
                eta = eta * Poly.linear(b) ** integer_value(w.size)
            self.eta = eta
        except ValueError:
            self.eta = None
        self._slot_cache = {}
        self.pole_points = model.points
        self.field = model.field

    def slot(self, s: int, i: int, j: int) -> OperatorMatrix:
        """``e_ij`` acting in tensor factor ``s`` (0-based) with its Koszul sign."""
        key = (s, i, j)
        if key in self._slot_cache:
            return self._slot_cache[key]
        w = self.model.weights[s]
        par = op_parity(i, j)
        rows = [dict() for _ in range(self.dim)]
        for col, lab in enumerate(self.labels):
            hit = _slot_action(w, i, j, lab[s])
            if hit is None:
                continue
            c_new, coef = hit
            if not coef:
                continue
            if par and lab[:s].count(2) % 2:
                coef = -coef
            new = lab[:s] + (c_new,) + lab[s + 1:]
            rows[self.index[new]][col] = coef
        m = OperatorMatrix(self.dim, self.dim, rows)
        self._slot_cache[key] = m
        return m

    def _mode(self, i, j, r):
        acc = OperatorMatrix(self.dim)
        for s, b in enumerate(self.model.points):
            acc = acc + self.slot(s, i, j).scale(b ** r)
        return acc

    def _series(self, i, j):
        acc = OperatorMatrix(self.dim)
        for s, b in enumerate(self.model.points):
            acc = acc + self.slot(s, i, j).scale(RatFunc.pole(b))
        return acc

    def label_weight(self, lab) -> tuple[Scalar, Scalar]:
        a = ZERO
        b = ZERO
        for w, c in zip(self.model.weights, lab):
            if c == 1:
                a, b = a + w.alpha, b + w.beta
            else:
                a, b = a + w.alpha - 1, b + w.beta + 1
        return a, b

    def weight_indices(self, weight) -> list[int]:
        wt = (Scalar.coerce(weight[0]), Scalar.coerce(weight[1]))
        return [n for n, lab in enumerate(self.labels) if self.label_weight(lab) == wt]

    def format_label(self, lab) -> str:
        return "⊗".join(f"v{c}" for c in lab)


@lru_cache(maxsize=64)
def build_tensor_module(model: ModelSpec) -> TensorModule:
    return TensorModule(model)


def generator_matrix(model: ModelSpec, i: int, j: int, r: int) -> OperatorMatrix:
    return build_tensor_module(model).mode(i, j, r)


def series_matrix(model: ModelSpec, i: int, j: int) -> OperatorMatrix:
    return build_tensor_module(model).series(i, j)


def singular_weight_basis(model: ModelSpec, l: int) -> list:
    """Singular vectors with ``l`` lowered factors, i.e. weight ``(sum alpha - l, sum beta + l)``."""
    return build_tensor_module(model).singular_basis(l)
