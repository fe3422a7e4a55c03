"""Exact spectral analysis of the commuting Gaudin family on singular sectors."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .bethe import (
    bethe_vector,
    eigenvalue_H,
    eigenvalue_weyl,
    monic_divisors,
    multiplicity_binomial,
    phi_roots,
)
from .errors import EigenvalueNotInField, EvaluationAtPole, NonSplitting
from .field import ONE, ZERO, Field
from .gaudin import double_pole_constants, hamiltonians, transfer_H
from .linalg import (
    OperatorMatrix,
    Subspace,
    charpoly,
    det,
    identity,
    matmul,
    mat_pow,
    nullspace,
    proportional,
    rank,
)
from .model import ModelSpec
from .module import ActionModule
from .poly import Poly, RatFunc, split_linear_factors
from .tensor import TensorModule, build_tensor_module
from .weyl import WeylModule

CYCLIC_RANDOM_BUDGET = 32
FROBENIUS_BUDGET = 10
RANDOM_RANGE = 3


def _dense(M):
    if isinstance(M, OperatorMatrix):
        return M.to_dense()
    return [list(r) for r in M]


def _sub_id(A, theta):
    return [[a - theta if i == j else a for j, a in enumerate(row)] for i, row in enumerate(A)]


def _flat(A):
    return [a for row in A for a in row]


def _apply(A, v):
    out = []
    for row in A:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _restrict_dense(A, basis):
    """Matrix of ``A`` on the span of ``basis`` (columns are coordinates of ``A b``)."""
    sub = Subspace(basis, len(A))
    cols = [sub.coords(_apply(A, b)) for b in basis]
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def _roots(p: Poly, fld: Field):
    try:
        return split_linear_factors(p, fld)
    except NonSplitting as exc:
        raise EigenvalueNotInField(f"characteristic polynomial {p} does not split over {fld.name}") from exc


@dataclass
class JointSpace:
    eigenvalues: tuple
    eigen_basis: list
    generalized_basis: list

    @property
    def eigen_dim(self) -> int:
        return len(self.eigen_basis)

    @property
    def generalized_dim(self) -> int:
        return len(self.generalized_basis)


def generalized_eigenspaces(family, dim: int, fld: Field = Field.QI) -> list[JointSpace]:
    """Joint (generalized) eigenspaces of commuting ``dim x dim`` matrices.

    Vectors are coordinate lists in ``F^dim``; the result is sorted by the
    eigenvalue tuple.  Raises ``EigenvalueNotInField`` on a non-split
    characteristic polynomial.
    """
    mats = [_dense(M) for M in family]
    for A in mats:
        for B in mats:
            if matmul(A, B) != matmul(B, A):
                raise ValueError("family does not commute")
    if dim == 0:
        return []
    spaces = [((), identity(dim))]
    for A in mats:
        refined = []
        for vals, basis in spaces:
            As = _restrict_dense(A, basis)
            d = len(basis)
            sub = Subspace(basis, dim)
            for theta, _ in _roots(charpoly(As), fld):
                ker = nullspace(mat_pow(_sub_id(As, theta), d), d)
                refined.append((vals + (theta,), [sub.combine(c) for c in ker]))
        spaces = refined
    out = []
    for vals, gen in spaces:
        rows = []
        for A, theta in zip(mats, vals):
            rows.extend(_sub_id(A, theta))
        eig = nullspace(rows, dim)
        out.append(JointSpace(vals, eig, gen))
    out.sort(key=lambda s: [t.sort_key() for t in s.eigenvalues])
    return out


@dataclass
class AlgebraImage:
    basis: list
    generators: list
    dim_space: int

    @property
    def dim(self) -> int:
        return len(self.basis)


def algebra_closure(generators, dim: int) -> AlgebraImage:
    """Unital algebra spanned by words in ``generators`` (dense ``dim x dim``)."""
    gens = [_dense(G) for G in generators]
    basis = [identity(dim)]
    flat = [_flat(basis[0])]
    queue = list(basis)
    while queue:
        A = queue.pop(0)
        for G in gens:
            P = matmul(G, A)
            f = _flat(P)
            if rank(flat + [f]) > len(flat):
                flat.append(f)
                basis.append(P)
                queue.append(P)
    return AlgebraImage(basis, gens, dim)


def commutant(algebra: AlgebraImage) -> int:
    """Dimension of ``{X : [X, A] = 0 for A in the algebra}``."""
    m = algebra.dim_space
    if m == 0:
        return 0
    rows = []
    for A in algebra.basis:
        for i in range(m):
            for j in range(m):
                # (XA - AX)_ij with X_pq at position p*m+q
                r = [ZERO] * (m * m)
                for t in range(m):
                    if A[t][j]:
                        r[i * m + t] = r[i * m + t] + A[t][j]
                    if A[i][t]:
                        r[t * m + j] = r[t * m + j] - A[i][t]
                if any(r):
                    rows.append(r)
    return len(nullspace(rows, m * m))


def orbit_rank(algebra: AlgebraImage, u) -> int:
    return rank([_apply(A, u) for A in algebra.basis])


def find_cyclic(algebra: AlgebraImage, candidates, rng: random.Random):
    """First vector ``u`` with ``A u`` spanning the space: named candidates, then random ones."""
    m = algebra.dim_space
    for name, u in candidates:
        if any(u) and orbit_rank(algebra, u) == m:
            return name, u
    for trial in range(CYCLIC_RANDOM_BUDGET):
        u = [ONE * rng.randint(-RANDOM_RANGE, RANDOM_RANGE) for _ in range(m)]
        if any(u) and orbit_rank(algebra, u) == m:
            return f"random[{trial}]", u
    return None, None


def find_frobenius(algebra: AlgebraImage, rng: random.Random):
    """Trial index of a functional ``xi`` with ``xi(AB)`` nondegenerate, or ``None``."""
    m = algebra.dim_space
    d = algebra.dim
    prods = [[_flat(matmul(A, B)) for B in algebra.basis] for A in algebra.basis]
    for trial in range(FROBENIUS_BUDGET):
        xi = [rng.randint(-RANDOM_RANGE, RANDOM_RANGE) for _ in range(m * m)]
        gram = [[sum((c * a for c, a in zip(xi, prods[i][j]) if c and a), ZERO) for j in range(d)] for i in range(d)]
        if det(gram):
            return trial
    return None


@dataclass
class DivisorRecord:
    roots: tuple
    y: Poly
    eigenvalue: RatFunc
    eigen_dim: int = 0
    generalized_dim: int = 0
    predicted_dim: int = 0
    bethe_vector: str = "n/a"

    def to_dict(self) -> dict:
        return {
            "divisor": self.y.to_str(),
            "roots": [str(t) for t in self.roots],
            "eigenvalue": self.eigenvalue.to_str(),
            "eigen_dim": self.eigen_dim,
            "generalized_dim": self.generalized_dim,
            "predicted_generalized_dim": self.predicted_dim,
            "bethe_vector": self.bethe_vector,
        }


@dataclass
class SectorReport:
    l: int
    dim: int
    divisors: list = field(default_factory=list)
    algebra_dim: int = 0
    expected_algebra_dim: int = 0
    commutant_dim: int = 0
    cyclic_vector: str | None = None
    regular: bool = False
    frobenius_trial: int | None = None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "dim": self.dim,
            "divisors": [d.to_dict() for d in self.divisors],
            "algebra_dim": self.algebra_dim,
            "expected_algebra_dim": self.expected_algebra_dim,
            "commutant_dim": self.commutant_dim,
            "cyclic": self.cyclic_vector is not None,
            "cyclic_vector": self.cyclic_vector,
            "regular_representation": self.regular,
            "frobenius": self.frobenius_trial is not None,
            "frobenius_trial": self.frobenius_trial,
            "failures": list(self.failures),
        }


@dataclass
class SpectralReport:
    kind: str
    seed: int
    sectors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.sectors)

    def sector(self, l: int) -> SectorReport:
        return next(s for s in self.sectors if s.l == l)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "sectors": [s.to_dict() for s in self.sectors]}


def _eigenvalue_of(SH: OperatorMatrix, v):
    """``lambda`` with ``SH v = lambda v``, or ``None`` if ``v`` is not an eigenvector."""
    w = SH.apply(v)
    piv = next(i for i, c in enumerate(v) if c)
    lam = w[piv] * v[piv].inverse()
    for a, b in zip(w, v):
        rhs = lam * b if b else ZERO
        if (a or rhs) and not (a == rhs):
            return None
    return lam


def _residue_eigenvalue(model: ModelSpec, thetas) -> RatFunc:
    acc = RatFunc(Poly.const(0))
    for c, b, t in zip(double_pole_constants(model), model.points, thetas):
        acc = acc + RatFunc.pole(b, 2) * c + RatFunc.pole(b) * t
    return acc


def _sector_family(mod: ActionModule, sub: Subspace):
    """Commuting generators restricted to ``sub`` (dense)."""
    if isinstance(mod, TensorModule):
        return [sub.restrict(H).to_dense() for H in hamiltonians(mod)]
    # coefficients of the polynomial matrix eta^2 SH
    SH = sub.restrict(transfer_H(mod))
    e2 = RatFunc(mod.eta * mod.eta)
    m = sub.dim
    coeffs: dict = {}
    for a in range(m):
        for b in range(m):
            f = SH[a, b]
            if not f:
                continue
            g = e2 * f
            if not g.is_polynomial():
                raise AssertionError("eta^2 SH is not polynomial")
            p = g.num * g.den.coeff(0).inverse()
            for k, c in enumerate(p.coeffs):
                if c:
                    coeffs.setdefault(k, [[ZERO] * m for _ in range(m)])[a][b] = c
    return [coeffs[k] for k in sorted(coeffs)]


def _predictions(mod: ActionModule, l: int):
    """``(roots, y, eigenvalue, predicted generalized dim)`` for each degree-``l`` divisor."""
    if isinstance(mod, TensorModule):
        model = mod.model
        roots = phi_roots(model)
        ev = lambda y: eigenvalue_H(model, y)
    else:
        psi = mod.eta.derivative()
        roots = split_linear_factors(psi, mod.field)
        ev = lambda y: eigenvalue_weyl(mod.nparts, mod.points, y)
    out = []
    for rs in monic_divisors(roots, l):
        y = Poly.from_roots(rs)
        out.append((rs, y, ev(y), multiplicity_binomial(roots, rs)))
    return out


def sector_report(mod: ActionModule, l: int, seed: int = 0, expected_dim: int | None = None) -> SectorReport:
    basis = mod.singular_basis(l)
    sub = Subspace(basis, mod.dim)
    m = sub.dim
    rep = SectorReport(l, m)
    if expected_dim is not None and m != expected_dim:
        rep.failures.append(f"singular sector dim {m} != {expected_dim}")
    preds = _predictions(mod, l)
    rep.divisors = [DivisorRecord(rs, y, e, predicted_dim=p) for rs, y, e, p in preds]
    if m == 0:
        if preds:
            rep.failures.append(f"{len(preds)} divisors but empty sector")
        return rep

    family = _sector_family(mod, sub)
    spaces = generalized_eigenspaces(family, m, mod.field)
    SH = transfer_H(mod)
    matched = set()
    for sp in spaces:
        if sp.eigen_dim != 1:
            rep.failures.append(f"eigenspace for {[str(t) for t in sp.eigenvalues]} has dim {sp.eigen_dim}")
        v = sub.combine(sp.eigen_basis[0])
        lam = _eigenvalue_of(SH, v)
        if lam is None:
            rep.failures.append("joint eigenvector is not an SH(x) eigenvector")
            continue
        if isinstance(mod, TensorModule) and not (_residue_eigenvalue(mod.model, sp.eigenvalues) == lam):
            rep.failures.append(f"residue reconstruction disagrees with SH eigenvalue {lam.to_str()}")
        hits = [i for i, d in enumerate(rep.divisors) if d.eigenvalue == lam]
        if len(hits) != 1:
            rep.failures.append(f"eigenvalue {lam.to_str()} matches {len(hits)} divisors")
            continue
        i = hits[0]
        if i in matched:
            rep.failures.append(f"divisor {rep.divisors[i].y.to_str()} matched twice")
        matched.add(i)
        d = rep.divisors[i]
        d.eigen_dim, d.generalized_dim = sp.eigen_dim, sp.generalized_dim
        if d.generalized_dim != d.predicted_dim:
            rep.failures.append(
                f"divisor {d.y.to_str()}: generalized dim {d.generalized_dim} != predicted {d.predicted_dim}"
            )
        if isinstance(mod, TensorModule):
            d.bethe_vector = _bethe_status(mod, d, v)
            if d.bethe_vector == "not proportional":
                rep.failures.append(f"Bethe vector for {d.y.to_str()} does not span the eigenline")
    for i, d in enumerate(rep.divisors):
        if i not in matched:
            rep.failures.append(f"divisor {d.y.to_str()} has no eigenvector")

    rng = random.Random(f"{seed}:{l}")
    alg = algebra_closure(family, m)
    rep.algebra_dim = alg.dim
    k = mod.k if isinstance(mod, TensorModule) else mod.n
    rep.expected_algebra_dim = comb(k - 1, l)
    if alg.dim != rep.expected_algebra_dim:
        rep.failures.append(f"algebra dim {alg.dim} != {rep.expected_algebra_dim}")
    rep.commutant_dim = commutant(alg)
    if rep.commutant_dim != alg.dim:
        rep.failures.append(f"commutant dim {rep.commutant_dim} != algebra dim {alg.dim}")
    candidates = []
    u = mod.u_vector(l)
    if any(u):
        candidates.append(("u", sub.coords(u)))
    candidates.extend((f"basis[{j}]", [ONE if t == j else ZERO for t in range(m)]) for j in range(m))
    name, u = find_cyclic(alg, candidates, rng)
    rep.cyclic_vector = name
    if name is None:
        rep.failures.append("no cyclic vector found within the search budget")
    else:
        rep.regular = alg.dim == m and orbit_rank(alg, u) == alg.dim
        if not rep.regular:
            rep.failures.append("A -> A u is not a bijection onto the sector")
    rep.frobenius_trial = find_frobenius(alg, rng)
    if rep.frobenius_trial is None:
        rep.failures.append("no nondegenerate functional found within the search budget")
    return rep


def _bethe_status(mod: TensorModule, d: DivisorRecord, v) -> str:
    if len(set(d.roots)) != len(d.roots):
        return "multiple roots"
    try:
        w, _ = bethe_vector(mod.model, d.roots)
    except EvaluationAtPole:
        return "pole"
    if not any(w):
        return "zero"
    return "spans eigenline" if proportional(w, v) else "not proportional"


def spectral_report(obj, sectors=None, seed: int = 0) -> SpectralReport:
    """Spectral report for a tensor model (or module) or a Weyl module.

    Raises ``NonSplitting`` if the divisor polynomial does not split.
    """
    if isinstance(obj, ModelSpec):
        obj = build_tensor_module(obj)
    if isinstance(obj, TensorModule):
        phi_roots(obj.model)
        kind, k = "tensor", obj.k
    elif isinstance(obj, WeylModule):
        split_linear_factors(obj.eta.derivative(), obj.field)
        kind, k = "weyl", obj.n
    else:
        raise TypeError(f"unsupported module {type(obj).__name__}")
    if sectors is None:
        sectors = range(k)
    rep = SpectralReport(kind, seed)
    for l in sectors:
        rep.sectors.append(sector_report(obj, l, seed, expected_dim=comb(k - 1, l)))
    return rep
