"""Exact linear algebra: fraction-free elimination over Q(i) and sparse operator matrices.

Dense matrices over the field are plain lists of rows of :class:`Scalar`.
:class:`OperatorMatrix` is the sparse square-or-rectangular matrix used for
module operators; its entries are either scalars or :class:`RatFunc` values.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch
from .field import ONE, ZERO, Scalar
from .poly import Poly, RatFunc


def _is_zero(v) -> bool:
    return not v


# ---------------------------------------------------------------------------
# dense field linear algebra


def echelon(rows):
    """Bareiss-style fraction-free forward elimination.

    Returns ``(echelon_rows, pivot_columns)``; ``echelon_rows`` has exactly
    ``rank`` rows.  Each update is ``(p*a - m*b)/prev`` with the previous pivot,
    which keeps entries equal to minors of the input.
    """
    M = [list(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    prev = ONE
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = None
        for i in range(r, m):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        row_r = M[r]
        for i in range(r + 1, m):
            row_i = M[i]
            mic = row_i[c]
            if mic:
                for j in range(c + 1, n):
                    row_i[j] = (piv * row_i[j] - mic * row_r[j]) / prev
            else:
                for j in range(c + 1, n):
                    if row_i[j]:
                        row_i[j] = piv * row_i[j] / prev
            row_i[c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(echelon(rows)[1])


def nullspace(rows, ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of ``{v : M v = 0}``."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[ONE if j == i else ZERO for j in range(ncols)] for i in range(ncols)]
    E, piv = echelon(rows)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r in range(len(piv) - 1, -1, -1):
            pc = piv[r]
            acc = ZERO
            row = E[r]
            for j in range(pc + 1, ncols):
                if row[j] and v[j]:
                    acc = acc + row[j] * v[j]
            v[pc] = -acc / row[pc]
        basis.append(v)
    return basis


def solve(A, b):
    """Solve a square nonsingular system ``A x = b``."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    E, piv = echelon(aug)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    x = [ZERO] * n
    for r in range(n - 1, -1, -1):
        acc = E[r][n]
        for j in range(r + 1, n):
            acc = acc - E[r][j] * x[j]
        x[r] = acc / E[r][r]
    return x


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    E, piv = echelon(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    # back substitution to reduced form
    for r in range(n - 1, -1, -1):
        inv = E[r][r].inverse()
        E[r] = [v * inv for v in E[r]]
        for i in range(r):
            f = E[i][r]
            if f:
                E[i] = [a - f * b for a, b in zip(E[i], E[r])]
    return [row[n:] for row in E]


def det(A) -> Scalar:
    n = len(A)
    if n == 0:
        return ONE
    M = [list(r) for r in A]
    sign = ONE
    prev = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[c][c] * M[i][j] - M[i][c] * M[c][j]) / prev
            M[i][c] = ZERO
        prev = M[c][c]
    return sign * M[n - 1][n - 1]


def matmul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        oi = out[i]
        for t in range(k):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            for j in range(m):
                if Bt[j]:
                    oi[j] = oi[j] + a * Bt[j]
    return out


def identity(n: int):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def charpoly(A) -> Poly:
    """Characteristic polynomial ``det(x I - A)`` via Faddeev-LeVerrier."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    Mk = [[ZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        Mk = matmul(A, Mk)
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            Mk[i][i] = Mk[i][i] + c_prev
        AM = matmul(A, Mk)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        coeffs[n - k] = -tr / k
    return Poly(coeffs)


def mat_pow(A, k: int):
    R = identity(len(A))
    for _ in range(k):
        R = matmul(R, A)
    return R


def column_vectors(A):
    """Columns of a dense matrix as lists."""
    if not A:
        return []
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def span_basis(vectors) -> list[list[Scalar]]:
    """An echelon basis of the span of ``vectors``."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    E, _ = echelon(vecs)
    return E


# ---------------------------------------------------------------------------
# sparse operator matrices


class OperatorMatrix:
    """Sparse matrix; ``rows[i]`` maps column index to a nonzero entry."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int | None = None, rows=None):
        self.nrows = nrows
        self.ncols = nrows if ncols is None else ncols
        if rows is None:
            self.rows = tuple({} for _ in range(nrows))
        else:
            self.rows = tuple({j: v for j, v in r.items() if v} for r in rows)

    @classmethod
    def _raw(cls, nrows, ncols, rows):
        m = object.__new__(cls)
        m.nrows, m.ncols, m.rows = nrows, ncols, tuple(rows)
        return m

    @classmethod
    def identity(cls, n: int, one=ONE) -> "OperatorMatrix":
        return cls._raw(n, n, [{i: one} for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> "OperatorMatrix":
        return cls(n, m)

    @classmethod
    def from_dense(cls, A) -> "OperatorMatrix":
        n = len(A)
        m = len(A[0]) if n else 0
        return cls(n, m, [{j: v for j, v in enumerate(row) if v} for row in A])

    @classmethod
    def scalar(cls, n: int, c) -> "OperatorMatrix":
        if not c:
            return cls(n)
        return cls._raw(n, n, [{i: c} for i in range(n)])

    @property
    def dim(self) -> int:
        return self.nrows

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def to_dense(self, zero=ZERO):
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                yield i, j, v

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise DimensionMismatch(
                f"shape {self.nrows}x{self.ncols} vs {other.nrows}x{other.ncols}"
            )

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._same_shape(other)
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                if j in r:
                    s = r[j] + v
                    if s:
                        r[j] = s
                    else:
                        del r[j]
                else:
                    r[j] = v
            rows.append(r)
        return OperatorMatrix._raw(self.nrows, self.ncols, rows)

    def __neg__(self):
        return OperatorMatrix._raw(
            self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self.rows]
        )

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "OperatorMatrix":
        """Multiply every entry by the scalar or rational function ``c``."""
        if not c:
            return OperatorMatrix(self.nrows, self.ncols)
        rows = []
        for r in self.rows:
            nr = {}
            for j, v in r.items():
                w = v * c
                if w:
                    nr[j] = w
            rows.append(nr)
        return OperatorMatrix._raw(self.nrows, self.ncols, rows)

    def __mul__(self, other):
        if isinstance(other, OperatorMatrix):
            return self @ other
        if isinstance(other, (Scalar, RatFunc, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, RatFunc, int, Fraction)):
            if not other:
                return OperatorMatrix(self.nrows, self.ncols)
            return OperatorMatrix._raw(
                self.nrows,
                self.ncols,
                [{j: w for j, v in r.items() if (w := other * v)} for r in self.rows],
            )
        return NotImplemented

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        orows = other.rows
        out = []
        for r in self.rows:
            acc: dict = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    t = a * b
                    if j in acc:
                        acc[j] = acc[j] + t
                    else:
                        acc[j] = t
            out.append({j: v for j, v in acc.items() if v})
        return OperatorMatrix._raw(self.nrows, other.ncols, out)

    def apply(self, vec):
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)} for {self.ncols} columns")
        out = []
        for r in self.rows:
            acc = ZERO
            for j, a in r.items():
                v = vec[j]
                if v:
                    acc = a * v + acc
            out.append(acc)
        return out

    def derivative(self) -> "OperatorMatrix":
        rows = []
        for r in self.rows:
            nr = {}
            for j, v in r.items():
                if isinstance(v, Scalar):
                    continue
                dv = v.derivative()
                if dv:
                    nr[j] = dv
            rows.append(nr)
        return OperatorMatrix._raw(self.nrows, self.ncols, rows)

    def evaluate(self, t) -> "OperatorMatrix":
        """Substitute ``x = t`` in rational-function entries."""
        rows = []
        for r in self.rows:
            nr = {}
            for j, v in r.items():
                w = v(t) if isinstance(v, RatFunc) else v
                if w:
                    nr[j] = w
            rows.append(nr)
        return OperatorMatrix._raw(self.nrows, self.ncols, rows)

    def map(self, f) -> "OperatorMatrix":
        """Apply ``f`` to every stored entry."""
        rows = [{j: w for j, v in r.items() if (w := f(v))} for r in self.rows]
        return OperatorMatrix._raw(self.nrows, self.ncols, rows)

    def transpose(self) -> "OperatorMatrix":
        rows = [dict() for _ in range(self.ncols)]
        for i, j, v in self.entries():
            rows[j][i] = v
        return OperatorMatrix._raw(self.ncols, self.nrows, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        for a, b in zip(self.rows, other.rows):
            if a.keys() != b.keys():
                return False
            for j, v in a.items():
                if not (v == b[j]):
                    return False
        return True

    __hash__ = None

    def __repr__(self) -> str:
        return f"OperatorMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def commutator(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    return A @ B - B @ A


def supercommutator(A, B, parity_a: int, parity_b: int) -> OperatorMatrix:
    if parity_a and parity_b:
        return A @ B + B @ A
    return A @ B - B @ A


def vec_is_zero(v) -> bool:
    return not any(v)


def vec_scale(v, c):
    return [c * a for a in v]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def proportional(u, v) -> bool:
    """True if nonzero vectors ``u`` and ``v`` span the same line."""
    return rank([list(u), list(v)]) == 1


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of ``F^N`` with a fixed basis and coordinate map."""

    def __init__(self, basis, ambient: int):
        self.ambient = ambient
        self.basis = [[Scalar.coerce(c) for c in v] for v in basis]
        self.dim = len(self.basis)
        if self.dim:
            # pivot rows of the N x r basis matrix: pivot columns of its transpose
            _, piv = echelon(self.basis)
            if len(piv) != self.dim:
                raise ValueError("basis vectors are linearly dependent")
            self.pivots = piv
            S_P = [[self.basis[c][p] for c in range(self.dim)] for p in piv]
            self._inv = inverse(S_P)
        else:
            self.pivots = []
            self._inv = []

    def coords(self, w, check: bool = True):
        """Coordinates of ``w`` in the basis; raises ``ValueError`` if ``w`` is outside."""
        wp = [w[p] for p in self.pivots]
        c = []
        for row in self._inv:
            acc = ZERO
            for a, b in zip(row, wp):
                if a and b:
                    acc = b * a + acc
            c.append(acc)
        if check:
            recon = self.combine(c)
            for a, b in zip(recon, w):
                if not (a == b) and (a or b):
                    raise ValueError("vector is not in the subspace")
        return c

    def combine(self, c):
        out = [ZERO] * self.ambient
        for coef, v in zip(c, self.basis):
            if not coef:
                continue
            for i, a in enumerate(v):
                if a:
                    out[i] = coef * a + out[i]
        return out

    def contains(self, w) -> bool:
        try:
            self.coords(w)
        except ValueError:
            return False
        return True

    def restrict(self, A: OperatorMatrix) -> OperatorMatrix:
        """Matrix of ``A`` on this (A-invariant) subspace; raises if not invariant."""
        cols = [self.coords(A.apply(v)) for v in self.basis]
        rows = [{j: cols[j][i] for j in range(self.dim) if cols[j][i]} for i in range(self.dim)]
        return OperatorMatrix._raw(self.dim, self.dim, rows)

    def is_invariant(self, A: OperatorMatrix) -> bool:
        return all(self.contains(A.apply(v)) for v in self.basis)
