from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from gl11bethe.bethe import (
    bethe_vector,
    enumerate_divisors,
    eigenvalue_H,
    eigenvalue_T,
    lowering_product,
    phi_poly,
    phi_roots,
    predicted_generalized_dim,
    total_divisor_count,
    vacuum_eigenvalue,
    verify_onshell,
)
from gl11bethe.errors import EvaluationAtPole, NonSplitting
from gl11bethe.field import Scalar
from gl11bethe.gaudin import transfer_H
from gl11bethe.model import ModelSpec
from gl11bethe.named_models import model_MA, model_MB, model_MC, model_MD
from gl11bethe.poly import Poly, RatFunc
from gl11bethe.tensor import build_tensor_module

from strategies import models, rationals

HALF = Scalar(Fraction(1, 2))
x = RatFunc.x()


def test_MA_worked_example():
    m = model_MA()
    z, phi = phi_poly(m)
    assert phi == Poly([-1, 2])
    assert z == 1 / x + 1 / (x - 1)
    mod = build_tensor_module(m)
    v, multiple = bethe_vector(m, [HALF])
    expected = [0] * 4
    expected[mod.index[(2, 1)]] = 2
    expected[mod.index[(1, 2)]] = -2
    assert v == expected and not multiple
    assert mod.is_singular(v)
    y = Poly.from_roots([HALF])
    assert eigenvalue_H(m, y) == 1 / x - 1 / (x - 1)
    assert vacuum_eigenvalue(m) == 1 / (x * (x - 1))
    rep = verify_onshell(m, enumerate_divisors(m, 1)[0])
    assert rep.ok


def test_MB_repeated_roots():
    m = model_MB()
    assert phi_poly(m)[1] == Poly([0, 0, 0, 4])
    assert phi_roots(m) == [(Scalar(0), 3)]
    assert [len(enumerate_divisors(m, l)) for l in range(4)] == [1, 1, 1, 1]
    assert total_divisor_count(m) == 4
    for l in (2, 3):
        sol = enumerate_divisors(m, l)[0]
        v, multiple = bethe_vector(m, sol.roots)
        assert multiple and not any(v)
        assert predicted_generalized_dim(m, sol) == 3 if l == 2 else 1
    # y = x gives a nonzero eigenvector
    assert verify_onshell(m, enumerate_divisors(m, 1)[0]).ok


def test_MB_eigenvalue_for_x_cubed():
    m = model_MB()
    z = 4 * x ** 3 / (x ** 4 - 1)
    assert eigenvalue_H(m, Poly([0, 0, 0, 1])) == z.derivative() * HALF + z * z * HALF - z * 3 / x


def test_MC_does_not_split():
    with pytest.raises(NonSplitting) as err:
        phi_roots(model_MC())
    assert err.value.poly == Poly([3, -11, 4])


def test_MD_simple_roots():
    m = model_MD()
    assert phi_poly(m)[1] == Poly.from_roots([HALF, 3 * HALF]) * 8
    sols = enumerate_divisors(m, 1)
    assert [s.y for s in sols] == [Poly.linear(HALF), Poly.linear(3 * HALF)]
    for s in sols:
        rep = verify_onshell(m, s)
        assert rep.ok and not rep.multiple_root


def test_T_eigenvalue_on_MD():
    m = model_MD()
    sol = enumerate_divisors(m, 2)[0]
    y = sol.y
    assert eigenvalue_T(m, y) == (RatFunc(y.derivative(), y)) * phi_poly(m)[0]


def test_pole_detection():
    m = model_MA()
    with pytest.raises(EvaluationAtPole):
        bethe_vector(m, [0])


def _sign(perm):
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


@given(models(max_k=3), st.lists(rationals, min_size=1, max_size=3, unique=True))
def test_bethe_vector_order_independent(model, ts):
    if any(t in model.points for t in ts):
        return
    base, _ = bethe_vector(model, ts)
    ordered = lowering_product(model, ts)
    for perm in permutations(range(len(ts))):
        listed = [ts[p] for p in perm]
        v, _ = bethe_vector(model, listed)
        assert v == base
        # the raw product only changes by the sign of the permutation
        assert lowering_product(model, listed) == [c * _sign(perm) for c in ordered]


@given(models(max_k=3), st.lists(rationals, min_size=1, max_size=3))
def test_off_shell_vectors_keep_weight(model, ts):
    if any(t in model.points for t in ts):
        return
    mod = build_tensor_module(model)
    v, multiple = bethe_vector(model, ts)
    if multiple:
        assert not any(v)
    assert all(mod.sectors[i] == len(ts) for i, c in enumerate(v) if c)


@given(models(max_k=3))
def test_onshell_random_models(model):
    try:
        roots = phi_roots(model)
    except NonSplitting:
        return
    for l in range(model.k):
        for sol in enumerate_divisors(model, l):
            rep = verify_onshell(model, sol)
            if rep.nonzero:
                assert rep.ok
            elif sol.is_simple() and not rep.pole:
                pytest.fail(f"simple divisor {sol.y} gave a zero vector")
    assert total_divisor_count(model) == sum(
        len(enumerate_divisors(model, l)) for l in range(sum(m for _, m in roots) + 1)
    )


def test_vacuum_eigenvalue_formula():
    m = ModelSpec.make([(2, 1), (1, 3)], [0, 2])
    SH = transfer_H(m)
    mod = build_tensor_module(m)
    lam = vacuum_eigenvalue(m)
    assert lam == eigenvalue_H(m, Poly.const(1))
    assert SH.apply(mod.vacuum_vector())[0] == lam
