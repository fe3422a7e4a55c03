from math import comb

import pytest
from hypothesis import given, strategies as st

from gl11bethe.bethe import lowering_at
from gl11bethe.errors import EvaluationAtPole
from gl11bethe.field import ONE, Scalar
from gl11bethe.gaudin import (
    hamiltonians,
    structural_identities,
    transfer_G12,
    transfer_H,
    transfer_T,
)
from gl11bethe.linalg import OperatorMatrix, supercommutator
from gl11bethe.module import op_parity
from gl11bethe.named_models import model_MA, model_MB, model_MD, model_single
from gl11bethe.tensor import build_tensor_module, generator_matrix, series_matrix, singular_weight_basis

from strategies import models, rationals

IDX = [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_single_slot_action():
    mod = build_tensor_module(model_single(3, 2, 5))
    assert mod.mode(1, 1, 0).to_dense() == [[3, 0], [0, 2]]
    assert mod.mode(2, 2, 0).to_dense() == [[2, 0], [0, 3]]
    assert mod.mode(1, 2, 0).to_dense() == [[0, 5], [0, 0]]
    assert mod.mode(2, 1, 1).to_dense() == [[0, 0], [5, 0]]


def test_koszul_sign():
    mod = build_tensor_module(model_MA())
    # e21 in slot 2 passes the odd vector in slot 1
    v = mod.basis_vector(mod.index[(2, 1)])
    w = mod.slot(1, 2, 1).apply(v)
    assert w[mod.index[(2, 2)]] == -ONE


@given(models(max_k=3), st.integers(0, 2), st.integers(0, 2))
def test_supercommutator_relations(model, r, s):
    mod = build_tensor_module(model)
    for i, j in IDX:
        for k, l in IDX:
            A, B = mod.mode(i, j, r), mod.mode(k, l, s)
            lhs = supercommutator(A, B, op_parity(i, j), op_parity(k, l))
            rhs = OperatorMatrix(mod.dim)
            if j == k:
                rhs = rhs + mod.mode(i, l, r + s)
            if l == i:
                sign = -1 if op_parity(i, j) * op_parity(k, l) else 1
                rhs = rhs - mod.mode(k, j, r + s).scale(Scalar(sign))
            assert lhs == rhs


@given(models(max_k=3), rationals, rationals)
def test_anticommutation_of_lowering_operators(model, t1, t2):
    mod = build_tensor_module(model)
    if t1 in model.points or t2 in model.points:
        with pytest.raises(EvaluationAtPole):
            lowering_at(mod, t1)
            lowering_at(mod, t2)
        return
    A, B = lowering_at(mod, t1), lowering_at(mod, t2)
    assert not (A @ B + B @ A)


@given(models(max_k=3))
def test_transfer_matrices_preserve_weight_and_singular_space(model):
    mod = build_tensor_module(model)
    g1, g2 = transfer_G12(mod)
    ops = [transfer_H(mod), transfer_T(mod), g1, g2] + hamiltonians(mod)
    e12 = mod.mode(1, 2, 0)
    for M in ops:
        for i, j, _ in M.entries():
            assert mod.label_weight(mod.labels[i]) == mod.label_weight(mod.labels[j])
        assert not (M @ e12 - e12 @ M)
    for l in range(model.k):
        basis = mod.singular_basis(l)
        for v in basis:
            for M in ops:
                assert mod.is_singular(M.apply(v))


@given(models(max_k=3))
def test_structural_identities_random(model):
    assert all(structural_identities(model).values())


@pytest.mark.parametrize("factory", [model_MA, model_MB, model_MD, model_single])
def test_structural_identities_examples(factory):
    res = structural_identities(factory())
    assert all(res.values()), res


@pytest.mark.parametrize(
    "factory, dims",
    [(model_MA, [1, 1]), (model_MB, [1, 3, 3, 1]), (model_MD, [1, 2, 1])],
)
def test_singular_sector_dimensions(factory, dims):
    m = factory()
    assert [len(singular_weight_basis(m, l)) for l in range(m.k)] == dims
    assert dims == [comb(m.k - 1, l) for l in range(m.k)]
    # the top sector has no singular vectors
    assert singular_weight_basis(m, m.k) == []


def test_series_is_sum_of_evaluation_poles():
    m = model_MA()
    S = series_matrix(m, 2, 1)
    # residue at x = b_s is the slot operator
    mod = build_tensor_module(m)
    assert S.map(lambda f: f * (f.x() - 1)).evaluate(1) == mod.slot(1, 2, 1)
    assert generator_matrix(m, 2, 1, 0) == mod.slot(0, 2, 1) + mod.slot(1, 2, 1)


def test_weight_indices():
    mod = build_tensor_module(model_MA())
    assert mod.weight_indices((1, 1)) == [mod.index[(1, 2)], mod.index[(2, 1)]]
