from itertools import combinations
from math import comb

import pytest

from gl11bethe.errors import OutOfDeskRange
from gl11bethe.gaudin import transfer_G12, transfer_T
from gl11bethe.linalg import OperatorMatrix, det
from gl11bethe.model import ModelSpec
from gl11bethe.poly import Poly
from gl11bethe.spectral import spectral_report
from gl11bethe.tensor import build_tensor_module
from gl11bethe.weyl import (
    _vadd,
    character_series,
    extract_BC,
    invariant_dimension_by_trace,
    invariant_dimensions,
    sigma_to_z,
    symbolic_action,
    v_apply,
    v_plus,
    v_scale,
    v_words,
    vs_component,
    weyl_module,
)

IDX = [(1, 1), (1, 2), (2, 1), (2, 2)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_characters_match_explicit_construction(n):
    for l in range(n + 1):
        ch = character_series(n, l, 6).as_ints()
        sing = character_series(n, l, 6, singular=True).as_ints()
        for d in range(7):
            comp = vs_component(n, l, d)
            scomp = vs_component(n, l, d, singular=True)
            assert comp.dim == ch[d] and scomp.dim == sing[d]
            assert comp.is_independent() and comp.all_invariant()
            assert scomp.is_independent()
            assert invariant_dimensions(n, l, d) == (ch[d], sing[d])
            assert invariant_dimension_by_trace(n, l, d) == ch[d]


def test_character_examples():
    # (1 + q) / ((1 - q)(1 - q^2)) = 1 / (1 - q)^2
    assert character_series(2, 1, 4).as_ints() == [1, 2, 3, 4, 5]
    assert character_series(3, 1, 3).as_ints() == [1, 2, 4, 6]
    assert character_series(2, 2, 0, singular=True).as_ints() == [0]


def test_free_ranks():
    # generators of the free module: binom(n, l) in total, binom(n-1, l) singular
    for n in (2, 3):
        for l in range(n + 1):
            assert sum(1 for R in combinations(range(n), l)) == comb(n, l)
            assert sum(1 for R in combinations(range(1, n), l)) == comb(n - 1, l)


def _symbolic_as_vector(n, items):
    acc: dict = {}
    for R, f in items:
        for lab, p in v_scale(v_words(n, R), sigma_to_z(f)).items():
            _vadd(acc, lab, p)
    return acc


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symbolic_action_matches_concrete(n):
    for l in range(n + 1):
        for R in combinations(range(n), l):
            g = v_words(n, R)
            for i, j in IDX:
                for r in range(2 * n + 1):
                    assert v_apply(i, j, r, g, n) == _symbolic_as_vector(n, symbolic_action(n, i, j, r, R))


def test_symbolic_action_n4_lowest_modes():
    n = 4
    for R in [(), (0,), (1, 3), (0, 1, 2)]:
        g = v_words(n, R)
        for i, j in IDX:
            for r in range(2):
                assert v_apply(i, j, r, g, n) == _symbolic_as_vector(n, symbolic_action(n, i, j, r, R))


def test_highest_vector():
    assert v_words(2, ()) == v_plus(2)


INSTANCES = [
    ((1,), (0,)),
    ((2,), (0,)),
    ((1, 1), (0, 3)),
    ((2, 1), (0, 1)),
    ((3,), (2,)),
    ((4,), (0,)),
    ((2, 2), (0, 1)),
    ((3, 1), (0, 1)),
    ((1, 1, 1, 1), (0, 1, 2, 3)),
]


@pytest.mark.parametrize("nparts, points", INSTANCES)
def test_weyl_module_structure(nparts, points):
    mod = weyl_module(nparts, points)
    n = mod.n
    assert mod.dim == 2 ** n
    assert not any(mod.eta_relation_vector())
    g1, g2 = transfer_G12(mod)
    assert g1 == OperatorMatrix.scalar(mod.dim, mod.zeta)
    assert transfer_T(mod) == g2
    for l in range(n):
        m = len(mod.singular_basis(l))
        assert m == comb(n - 1, l)
        B, C = extract_BC(mod, l)
        assert C == mod.a
        assert len(B) == n - 1
        if B:
            assert B[0] == OperatorMatrix.scalar(m, n * l)
            # zero-mode form of B_2
            e = mod.mode
            alt = (e(1, 1, 0) + e(2, 2, 0)) @ e(2, 2, 0) - e(2, 1, 0) @ e(1, 2, 0)
            sub_basis = mod.singular_subspace(l)
            assert sub_basis.restrict(alt) == B[0]


def test_weyl_W2_is_two_copies_of_the_vector_module():
    mod = weyl_module((2,), (0,))
    assert mod.dim == 4
    assert [mod.sectors.count(l) for l in range(3)] == [1, 2, 1]


def test_factorization_for_distinct_points():
    # W_1(0) (x) W_1(3) versus the tensor product of two (1,0) evaluation modules
    W = weyl_module((1, 1), (0, 3))
    T = build_tensor_module(ModelSpec.make([(1, 0), (1, 0)], [0, 3]))
    cols = []
    for R in W.labels:
        v = T.vacuum_vector()
        for r in reversed(R):
            v = T.mode(2, 1, r).apply(v)
        cols.append(v)
    S = [[cols[c][r] for c in range(W.dim)] for r in range(T.dim)]
    assert det(S)
    Sm = OperatorMatrix.from_dense(S)
    for i, j in IDX:
        for r in range(4):
            assert Sm @ W.mode(i, j, r) == T.mode(i, j, r) @ Sm
        assert Sm.map(lambda c: c) @ W.series(i, j) == T.series(i, j) @ Sm


def test_weyl_spectrum_example():
    mod = weyl_module((2, 1), (0, 1))
    psi = mod.eta.derivative()
    assert psi == Poly([0, -2, 3])
    rep = spectral_report(mod)
    assert rep.ok, [s.failures for s in rep.sectors]
    divisors = [d.y for s in rep.sectors for d in s.divisors]
    assert len(divisors) == 4
    assert divisors == [Poly.const(1), Poly.x(), Poly([-2, 3]).monic(), Poly([0, -2, 3]).monic()]


@pytest.mark.parametrize("nparts, points", [((3, 1), (0, 1)), ((2, 2), (0, 1)), ((1, 1, 1, 1), (-4, -1, 0, 3))])
def test_weyl_spectrum_larger(nparts, points):
    rep = spectral_report(weyl_module(nparts, points))
    assert rep.ok, [s.failures for s in rep.sectors]
    assert sum(d.generalized_dim for s in rep.sectors for d in s.divisors) == 2 ** (sum(nparts) - 1)


def test_desk_range():
    with pytest.raises(OutOfDeskRange):
        weyl_module((3, 2), (0, 1))
    with pytest.raises(OutOfDeskRange):
        vs_component(5, 1, 0)
