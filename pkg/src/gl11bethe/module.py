"""Common interface for finite-dimensional gl(1|1)[t]-modules with an exact action."""

from __future__ import annotations

from .field import ONE, ZERO
from .linalg import OperatorMatrix, Subspace, nullspace


def op_parity(i: int, j: int) -> int:
    return ((i == 2) + (j == 2)) % 2


class ActionModule:
    """Subclasses set ``dim``, ``labels``, ``sectors`` (lowered count per basis
    vector), ``zeta``, ``eta`` and implement ``_mode`` and ``_series``."""

    dim: int
    labels: list
    sectors: list
    vacuum: int = 0

    def __init__(self):
        self._mode_cache = {}
        self._series_cache = {}
        self._sing_cache = {}

    def mode(self, i: int, j: int, r: int) -> OperatorMatrix:
        """Matrix of ``e_ij[r]``."""
        key = (i, j, r)
        if key not in self._mode_cache:
            self._mode_cache[key] = self._mode(i, j, r)
        return self._mode_cache[key]

    def series(self, i: int, j: int) -> OperatorMatrix:
        """Matrix of ``e_ij(x)`` with rational-function entries."""
        key = (i, j)
        if key not in self._series_cache:
            self._series_cache[key] = self._series(i, j)
        return self._series_cache[key]

    def _mode(self, i, j, r):
        raise NotImplementedError

    def _series(self, i, j):
        raise NotImplementedError

    @property
    def max_sector(self) -> int:
        return max(self.sectors)

    def basis_vector(self, idx: int):
        v = [ZERO] * self.dim
        v[idx] = ONE
        return v

    def vacuum_vector(self):
        return self.basis_vector(self.vacuum)

    def sector_indices(self, l: int) -> list[int]:
        return [i for i, s in enumerate(self.sectors) if s == l]

    def sector_subspace(self, l: int) -> Subspace:
        return Subspace([self.basis_vector(i) for i in self.sector_indices(l)], self.dim)

    def singular_basis(self, l: int) -> list:
        """Basis of ``ker e_12[0]`` inside sector ``l``."""
        if l in self._sing_cache:
            return self._sing_cache[l]
        cols = self.sector_indices(l)
        if not cols:
            self._sing_cache[l] = []
            return []
        E = self.mode(1, 2, 0)
        rows = [[E[i, c] for c in cols] for i in range(self.dim)]
        rows = [r for r in rows if any(r)]
        ker = nullspace(rows, len(cols))
        out = []
        for kv in ker:
            v = [ZERO] * self.dim
            for c, a in zip(cols, kv):
                v[c] = a
            out.append(v)
        self._sing_cache[l] = out
        return out

    def singular_subspace(self, l: int) -> Subspace:
        return Subspace(self.singular_basis(l), self.dim)

    def is_singular(self, v) -> bool:
        return not any(self.mode(1, 2, 0).apply(v))

    def u_vector(self, l: int):
        """``e12[0] e21[0] e21[1] ... e21[l] |0>``, the default cyclic candidate."""
        v = self.vacuum_vector()
        for r in range(l, -1, -1):
            v = self.mode(2, 1, r).apply(v)
        return self.mode(1, 2, 0).apply(v)
