"""Sparse complex operators on truncated state spaces, plus interior-restricted norms.

Polynomial operator identities on a truncated basis are exact only on
columns far enough from the cutoff; every deviation helper here therefore
restricts to interior columns before taking a max-norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.sparse as sp

__all__ = ["SparseOperator", "commutator", "matrix_market_text"]


@dataclass
class SparseOperator:
    """Complex operator with optional exact integer radicands per entry.

    ``radicands[(row, col)] = (sign, m)`` records that the entry equals
    sign * sqrt(m) exactly; kept alongside the floating matrix so two
    independently derived ladder constructions can be compared exactly.
    """

    mat: sp.csr_matrix
    radicands: Optional[dict] = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @staticmethod
    def from_triplets(dim: int, triplets, radicands=None) -> "SparseOperator":
        if triplets:
            rows, cols, vals = zip(*triplets)
        else:
            rows, cols, vals = (), (), ()
        m = sp.coo_matrix((np.asarray(vals, dtype=complex), (rows, cols)),
                          shape=(dim, dim)).tocsr()
        return SparseOperator(m, radicands)

    @staticmethod
    def identity(dim: int, scale: complex = 1.0) -> "SparseOperator":
        return SparseOperator(sp.identity(dim, dtype=complex, format="csr") * scale)

    @staticmethod
    def zeros(dim: int) -> "SparseOperator":
        return SparseOperator(sp.csr_matrix((dim, dim), dtype=complex))

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self.mat + other.mat)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self.mat - other.mat)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator((self.mat @ other.mat).tocsr())

    def scale(self, c: complex) -> "SparseOperator":
        return SparseOperator(self.mat * c)

    def dagger(self) -> "SparseOperator":
        return SparseOperator(self.mat.conjugate().transpose().tocsr())

    def to_dense(self) -> np.ndarray:
        return self.mat.toarray()

    def max_abs(self) -> float:
        if self.mat.nnz == 0:
            return 0.0
        return float(np.max(np.abs(self.mat.data)))

    def restrict_columns(self, cols) -> np.ndarray:
        return self.mat[:, cols].toarray()

    def deviation_on(self, cols) -> float:
        """Max |entry| over the given columns (all rows)."""
        block = self.mat[:, cols]
        if block.nnz == 0:
            return 0.0
        return float(np.max(np.abs(block.toarray())))

    def restrict(self, idx) -> np.ndarray:
        return self.mat[np.ix_(idx, idx)].toarray()

    def hermiticity_defect(self, idx=None) -> float:
        if idx is None:
            d = self.mat - self.mat.conjugate().transpose()
            return float(np.max(np.abs(d.toarray()))) if d.nnz else 0.0
        block = self.restrict(idx)
        return float(np.max(np.abs(block - block.conj().T)))

    def is_hermitian(self, tol: float = 1e-12, idx=None) -> bool:
        return self.hermiticity_defect(idx) <= tol


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    return SparseOperator((a.mat @ b.mat - b.mat @ a.mat).tocsr())


def matrix_market_text(op: SparseOperator, comment: str = "") -> str:
    """Matrix Market coordinate format, complex general, 1-based indices."""
    coo = op.mat.tocoo()
    lines = ["%%MatrixMarket matrix coordinate complex general"]
    if comment:
        for c in comment.splitlines():
            lines.append(f"%{c}")
    lines.append(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}")
    order = np.lexsort((coo.row, coo.col))
    for k in order:
        v = coo.data[k]
        lines.append(f"{coo.row[k] + 1} {coo.col[k] + 1} {v.real:.17g} {v.imag:.17g}")
    return "\n".join(lines) + "\n"
