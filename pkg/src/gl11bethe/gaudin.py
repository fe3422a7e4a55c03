"""Quadratic Gaudin Hamiltonians and the transfer matrices SH, T, G1, G2."""

from __future__ import annotations

from fractions import Fraction

from .linalg import OperatorMatrix
from .model import ModelSpec
from .module import ActionModule
from .poly import RatFunc
from .tensor import TensorModule, build_tensor_module

HALF = Fraction(1, 2)


def as_module(obj) -> ActionModule:
    if isinstance(obj, ActionModule):
        return obj
    if isinstance(obj, ModelSpec):
        return build_tensor_module(obj)
    raise TypeError(f"expected a model or a module, got {type(obj).__name__}")


def hamiltonians(obj) -> list[OperatorMatrix]:
    """``H_1 .. H_k`` on the tensor module."""
    mod = as_module(obj)
    if not isinstance(mod, TensorModule):
        raise TypeError("Hamiltonians are defined on tensor modules")
    if not hasattr(mod, "_hams"):
        pts = mod.model.points
        out = []
        for r in range(mod.k):
            acc = OperatorMatrix(mod.dim)
            for s in range(mod.k):
                if s == r:
                    continue
                term = (
                    mod.slot(r, 1, 1) @ mod.slot(s, 1, 1)
                    - mod.slot(r, 1, 2) @ mod.slot(s, 2, 1)
                    + mod.slot(r, 2, 1) @ mod.slot(s, 1, 2)
                    - mod.slot(r, 2, 2) @ mod.slot(s, 2, 2)
                )
                acc = acc + term.scale((pts[r] - pts[s]).inverse())
            out.append(acc)
        mod._hams = out
    return mod._hams


def transfer_H(obj) -> OperatorMatrix:
    """``SH(x) = 1/2 sum_{a,b} (-1)^|b| e_ab(x) e_ba(x)``."""
    mod = as_module(obj)
    if not hasattr(mod, "_SH"):
        e = mod.series
        sh = e(1, 1) @ e(1, 1) - e(1, 2) @ e(2, 1) + e(2, 1) @ e(1, 2) - e(2, 2) @ e(2, 2)
        mod._SH = sh.scale(HALF)
    return mod._SH


def transfer_G12(obj) -> tuple[OperatorMatrix, OperatorMatrix]:
    mod = as_module(obj)
    if not hasattr(mod, "_G12"):
        e = mod.series
        g1 = e(1, 1) + e(2, 2)
        g2 = g1 @ e(2, 2) - e(2, 1) @ e(1, 2)
        mod._G12 = (g1, g2)
    return mod._G12


def transfer_T(obj) -> OperatorMatrix:
    """``T(x) = 1/2 G1'(x) + 1/2 G1(x)^2 - SH(x)``."""
    mod = as_module(obj)
    if not hasattr(mod, "_T"):
        g1, _ = transfer_G12(mod)
        mod._T = (g1.derivative() + g1 @ g1).scale(HALF) - transfer_H(mod)
    return mod._T


def hamiltonian_expansion(obj) -> OperatorMatrix:
    """Right-hand side ``sum_s c_s/(x-b_s)^2 Id + sum_s H_s/(x-b_s)`` of the SH decomposition."""
    mod = as_module(obj)
    model = mod.model
    acc = OperatorMatrix(mod.dim)
    for w, b, H in zip(model.weights, model.points, hamiltonians(mod)):
        c = (w.alpha * (w.alpha - 1) - w.beta * (w.beta + 1)) * HALF
        acc = acc + OperatorMatrix.scalar(mod.dim, RatFunc.pole(b, 2) * c)
        acc = acc + H.scale(RatFunc.pole(b))
    return acc


def double_pole_constants(model: ModelSpec) -> list:
    """``c_s = (alpha_s(alpha_s-1) - beta_s(beta_s+1))/2``."""
    return [(w.alpha * (w.alpha - 1) - w.beta * (w.beta + 1)) * HALF for w in model.weights]


def structural_identities(obj) -> dict:
    """Exact operator identities on a tensor module, by name."""
    mod = as_module(obj)
    g1, g2 = transfer_G12(mod)
    sh = transfer_H(mod)
    hams = hamiltonians(mod)
    e12 = mod.mode(1, 2, 0)
    out = {
        "SH = double poles + sum H_s/(x-b_s)": sh == hamiltonian_expansion(mod),
        "T = G2": transfer_T(mod) == g2,
        "SH = G1^2/2 - G2 + G1'/2": sh == (g1 @ g1 + g1.derivative()).scale(HALF) - g2,
        "G1 = zeta Id": g1 == OperatorMatrix.scalar(mod.dim, mod.zeta),
        "[H_r, H_s] = 0": all(not (A @ B - B @ A) for A in hams for B in hams),
        "[H_r, e12[0]] = 0": all(not (A @ e12 - e12 @ A) for A in hams),
        "H_r preserves sectors": all(
            mod.sectors[i] == mod.sectors[j] for H in hams for i, j, _ in H.entries()
        ),
    }
    return out
