"""Represented Casimir invariants on the product of little-group and Fock spaces.

The normative construction is the direct product-of-W form: the invariant
combination is represented as

    W(a,b) = Id (x) xi'(A+_a A-_b)  -  c * [sigma(Z_ab) (x) Id + Id (x) rho'(Z_ab)]

i.e. the two abstract summands A+A- and I.Z represented separately (the
sigma factor enters through its dual, which presents the composite as
+c sigma + (1 - c/s) xi xi).  Because rho' carries the projective 1/s, the
Fock parts of the two summands cancel exactly when c = s; that is the
parameter surface on which represented Heisenberg-translation invariance
and Casimir centrality are exact, and dropping either summand breaks the
invariance by an O(1) amount.

The second-order-reduced coefficient functions (the f and f-hat tables)
are a cross-check layer: the joint-eigenstate reading of the reduction is
evaluated and reported, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import scipy.sparse as sp

from .algebra import eta
from .fock import (FockBasis, RepresentationParams, build_basis, grading_value,
                   interior_indices, k_grading, ladder_op)
from .gelfand import GTBasis, sigma_general
from .operators import SparseOperator, commutator

__all__ = [
    "FieldOperator",
    "SpectrumResult",
    "trivial_sigma_basis",
    "sigma_matrix",
    "w_op_parts",
    "w_op",
    "rho_z_total",
    "represented_on_product",
    "rho_casimir_op",
    "coefficient_f",
    "f_hat",
    "solve_spectrum",
    "oscillator_operator",
    "oscillator_spectrum",
    "quantization",
    "CompactBlock",
    "compact_block",
    "block_ladder_pair",
    "field_operator_compact",
    "compact_total_action",
    "reduction_cross_check",
]


# ---------------------------------------------------------------------------
# sigma side
# ---------------------------------------------------------------------------

class _TrivialSigma:
    """One-dimensional little-group factor with every Z represented as 0."""

    def __init__(self, n: int):
        self.m = n + 1
        self.dim = 1
        self.compact = False
        self.label = (0,) * (n + 1)


def trivial_sigma_basis(n: int) -> _TrivialSigma:
    return _TrivialSigma(n)


def sigma_matrix(sigma, a: int, b: int) -> sp.csr_matrix:
    if isinstance(sigma, _TrivialSigma):
        return sp.csr_matrix((1, 1), dtype=complex)
    return sigma_general(a, b, sigma).mat


def _kron(a, b) -> SparseOperator:
    return SparseOperator(sp.kron(a, b, format="csr"))


# ---------------------------------------------------------------------------
# W operators and Casimir contractions on the product space
# ---------------------------------------------------------------------------

@dataclass
class FieldOperator:
    """Assembled invariant ready for eigensolving."""

    n: int
    beta: int
    matrix: SparseOperator
    params: RepresentationParams
    sigma_dim: int
    fock: FockBasis

    def interior(self, margin: int) -> list:
        cols = interior_indices(self.fock, margin)
        return [s * self.fock.dim + c for s in range(self.sigma_dim) for c in cols]


def _ladder_pair(fock: FockBasis, a: int, b: int) -> sp.csr_matrix:
    return (ladder_op(a, "+", fock) @ ladder_op(b, "-", fock)).mat


def rho_z_total(a: int, b: int, sigma, fock: FockBasis,
                params: RepresentationParams) -> SparseOperator:
    """Total little-group action sigma(Z_ab) (x) Id + Id (x) rho'(Z_ab)."""
    eye_s = sp.identity(getattr(sigma, "dim", 1), dtype=complex, format="csr")
    eye_f = sp.identity(fock.dim, dtype=complex, format="csr")
    return _kron(sigma_matrix(sigma, a, b), eye_f) + \
        _kron(eye_s, _ladder_pair(fock, a, b) / params.s)


def w_op_parts(a: int, b: int, sigma, fock: FockBasis,
               params: RepresentationParams) -> tuple:
    """(A+A- summand, I.Z summand); their difference is the represented W."""
    eye_s = sp.identity(getattr(sigma, "dim", 1), dtype=complex, format="csr")
    eye_f = sp.identity(fock.dim, dtype=complex, format="csr")
    term_aa = _kron(eye_s, _ladder_pair(fock, a, b))
    # dual of the little-group rep: -sigma(Z_ba); the composite then reads
    # +c sigma(Z_ba) (x) Id + (1 - c/s) Id (x) A+_a A-_b
    dual = -sigma_matrix(sigma, b, a)
    term_iz = (_kron(dual, eye_f) + _kron(eye_s, _ladder_pair(fock, a, b) / params.s))
    return term_aa, term_iz.scale(params.c)


def w_op(a: int, b: int, sigma, fock: FockBasis,
         params: RepresentationParams) -> SparseOperator:
    t_aa, t_iz = w_op_parts(a, b, sigma, fock, params)
    return t_aa - t_iz


def represented_on_product(gid, sigma, fock: FockBasis,
                           params: RepresentationParams) -> SparseOperator:
    """Full-rep matrix for one generator on H_sigma (x) H_fock."""
    eye_s = sp.identity(getattr(sigma, "dim", 1), dtype=complex, format="csr")
    if gid.kind == "Ap":
        return _kron(eye_s, ladder_op(gid.a, "+", fock).mat)
    if gid.kind == "Am":
        return _kron(eye_s, ladder_op(gid.a, "-", fock).mat)
    if gid.kind == "Z":
        return rho_z_total(gid.a, gid.b, sigma, fock, params)
    if gid.kind == "I":
        dim = getattr(sigma, "dim", 1) * fock.dim
        return SparseOperator.identity(dim)
    raise ValueError(f"no product-space representation for {gid}")


def rho_casimir_op(beta: int, sigma, fock: FockBasis,
                   params: RepresentationParams) -> FieldOperator:
    """C_{2 beta} as the eta-contracted trace of represented-W products."""
    n = fock.n
    if not (1 <= beta <= n + 1):
        raise ValueError("beta out of range 1..n+1")
    sdim = getattr(sigma, "dim", 1)
    dim = sdim * fock.dim
    ws = {(a, b): w_op(a, b, sigma, fock, params)
          for a in range(n + 1) for b in range(n + 1)}
    total = SparseOperator.zeros(dim)

    def chains(depth, chain):
        if depth == 0:
            yield chain
            return
        for a in range(n + 1):
            yield from chains(depth - 1, chain + (a,))

    for chain in chains(beta, ()):
        weight = 1.0
        for a in chain:
            weight *= eta(a, a)
        op = None
        for i in range(beta):
            f = ws[(chain[i], chain[(i + 1) % beta])]
            op = f if op is None else op @ f
        total = total + op.scale(weight)
    return FieldOperator(n, beta, total, params, sdim, fock)


# ---------------------------------------------------------------------------
# coefficient functions of the second-order reduction (cross-check layer)
# ---------------------------------------------------------------------------

def coefficient_f(beta: int, kappa: int, alpha: int, n: int, c: float, a: float,
                  c_gamma=(0.0, 0.0)) -> float:
    """Closed-form reduction coefficients f^beta_{kappa,alpha}.

    c and a are independent inputs here: the oscillator point (c, a) =
    (2, 1) does not lie on the a = 1 - c/s surface.
    c_gamma = (c_2, c_4).
    """
    if a == 0:
        raise ZeroDivisionError("a = 0 pole in the reduction coefficients")
    c2 = c_gamma[0] if len(c_gamma) > 0 else 0.0
    c4 = c_gamma[1] if len(c_gamma) > 1 else 0.0
    if beta == 1:
        table = {(0, 1): c2 / a, (1, 1): c / a}
    elif beta == 2:
        if c == 0:
            raise ZeroDivisionError("c = 0 pole in f^2_{0,1}")
        table = {
            (0, 1): 0.5 * (c * n * (1 + n) - ((n + 1) / a + n - 1) * c2
                           + (c2 * c2 + c4) / (a * c)),
            (1, 1): ((1 + a) * c * (1 + n) - 2 * c2) / (2 * a),
            (2, 1): c / (2 * a),
            (2, 2): c / (2 * a),
        }
    else:
        raise ValueError("closed forms exist for beta <= 2 only")
    return table.get((kappa, alpha), 0.0)


def f_hat(beta: int, n: int, c: float, a: float, c_gamma=(0.0, 0.0),
          d_alpha=(0.0, 0.0)) -> float:
    """Polynomial contraction sum_alpha sum_kappa f^beta_{kappa,alpha} d_alpha^kappa."""
    total = 0.0
    for alpha in range(1, beta + 1):
        d = d_alpha[alpha - 1] if alpha - 1 < len(d_alpha) else 0.0
        for kappa in range(0, beta - alpha + 2):
            total += coefficient_f(beta, kappa, alpha, n, c, a, c_gamma) * d ** kappa
    return total


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    multiplicities: list
    residuals: np.ndarray
    metadata: dict

    def distinct(self, tol: float = 1e-8) -> list:
        return [lv for lv, _ in self.clusters(tol)]

    def clusters(self, tol: float = 1e-8) -> list:
        out = []
        for lv in self.eigenvalues:
            if out and abs(lv - out[-1][0]) <= tol:
                out[-1][1] += 1
            else:
                out.append([float(lv), 1])
        return [(lv, m) for lv, m in out]


def solve_spectrum(op, interior_only: bool = False, margin: int = 0,
                   hermiticity_tol: float = 1e-10, cluster_tol: float = 1e-8,
                   metadata: dict | None = None) -> SpectrumResult:
    """Dense Hermitian eigensolve with per-pair residuals.

    ``op`` is a FieldOperator, SparseOperator, or dense array; with
    interior_only the matrix is first projected onto interior states.
    """
    meta = dict(metadata or {})
    if isinstance(op, FieldOperator):
        idx = op.interior(margin) if interior_only else None
        mat = op.matrix.to_dense()
        meta.setdefault("n", op.n)
        meta.setdefault("beta", op.beta)
    elif isinstance(op, SparseOperator):
        mat = op.to_dense()
        idx = None
    else:
        mat = np.asarray(op, dtype=complex)
        idx = None
    if interior_only and idx is not None:
        mat = mat[np.ix_(idx, idx)]
    asym = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
    if asym > hermiticity_tol:
        raise ValueError(f"interior block is non-Hermitian: defect {asym:.3e}")
    mat = 0.5 * (mat + mat.conj().T)
    vals, vecs = np.linalg.eigh(mat)
    residuals = np.array([float(np.linalg.norm(mat @ vecs[:, i] - vals[i] * vecs[:, i]))
                          for i in range(len(vals))])
    meta["hermiticity_defect"] = asym
    meta["dimension"] = mat.shape[0]
    res = SpectrumResult(vals, [], residuals, meta)
    res.multiplicities = res.clusters(cluster_tol)
    return res


# ---------------------------------------------------------------------------
# relativistic oscillator
# ---------------------------------------------------------------------------

def _one_mode_xx_minus_dd(k: int) -> Fraction:
    """Diagonal of x^2 - d^2/dx^2 on eta_k, composed from the Hermite recurrences.

    The H_{k+2} and H_{k-2} coefficients cancel exactly; only the diagonal
    survives, and the function asserts that cancellation.
    """
    # x * eta_k  -> (1/2) H_{k+1} + k H_{k-1}
    # d * eta_k  -> k H_{k-1} - (1/2) H_{k+1}
    x_up, x_dn = Fraction(1, 2), Fraction(k)
    d_up, d_dn = Fraction(-1, 2), Fraction(k)
    # compose: coefficients on H_{k+2}, H_k, H_{k-2}
    xx = (x_up * Fraction(1, 2),
          x_up * Fraction(k + 1) + (x_dn * Fraction(1, 2) if k >= 1 else Fraction(0)),
          x_dn * Fraction(k - 1))
    dd = (d_up * Fraction(-1, 2),
          d_up * Fraction(k + 1) + (d_dn * Fraction(-1, 2) if k >= 1 else Fraction(0)),
          d_dn * Fraction(k - 1))
    up2 = xx[0] - dd[0]
    dn2 = xx[2] - dd[2]
    assert up2 == 0 and (k < 2 or dn2 == 0)
    return xx[1] - dd[1]


def oscillator_operator(n: int, nmax: int) -> SparseOperator:
    """eta^{ab}(x_a x_b - d_a d_b) from the Hermite oracle; exactly diagonal."""
    basis = build_basis(n, nmax)
    diag_one_mode = [float(_one_mode_xx_minus_dd(k)) for k in range(nmax + 1)]
    trip = []
    for i, K in enumerate(basis.states):
        val = sum(eta(a, a) * diag_one_mode[K[a]] for a in range(n + 1))
        trip.append((i, i, val))
    return SparseOperator.from_triplets(basis.dim, trip)


def oscillator_spectrum(n: int, nmax: int) -> SpectrumResult:
    """Spectrum {2k + n - 1} with k the grading value of each basis state."""
    basis = build_basis(n, nmax)
    op = oscillator_operator(n, nmax)
    res = solve_spectrum(op, metadata={"n": n, "nmax": nmax, "mode": "oscillator"})
    res.metadata["grading_check"] = float(max(
        abs(op.mat[i, i].real - (2 * grading_value(K) + n - 1))
        for i, K in enumerate(basis.states)))
    return res


def quantization(s: float) -> tuple:
    """Normalizable-oscillator parameter point (a, c) = (s/(2(s-1)), s/(s-1))."""
    if s == 1:
        raise ValueError("s = 1 is the quantization pole")
    return (s / (2.0 * (s - 1.0)), s / (s - 1.0))


# ---------------------------------------------------------------------------
# compact case: finite k-blocks and their field operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompactBlock:
    """Homogeneous degree-k states of n spatial oscillator modes."""

    n: int
    k: int
    states: tuple
    index: dict

    @property
    def dim(self) -> int:
        return len(self.states)


def compact_block(n: int, k: int) -> CompactBlock:
    def rec(modes, total):
        if modes == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in rec(modes - 1, total - first):
                yield (first,) + rest

    states = tuple(sorted(rec(n, k)))
    return CompactBlock(n, k, states, {s: i for i, s in enumerate(states)})


def block_ladder_pair(block: CompactBlock, i: int, j: int) -> sp.csr_matrix:
    """A+_i A-_j on the block: sqrt(k_j (k_i + 1)) |K - I_j + I_i>; exact within the block."""
    trip = []
    for col, K in enumerate(block.states):
        if K[j - 1] == 0:
            continue
        amp = math.sqrt(K[j - 1] * (K[i - 1] + (0 if i == j else 1)))
        K2 = list(K)
        K2[j - 1] -= 1
        K2[i - 1] += 1
        trip.append((block.index[tuple(K2)], col, amp))
    rows, cols, vals = zip(*trip) if trip else ((), (), ())
    return sp.coo_matrix((np.asarray(vals, dtype=complex), (rows, cols)),
                         shape=(block.dim, block.dim)).tocsr()


def field_operator_compact(beta: int, sigma: GTBasis, block: CompactBlock) -> SparseOperator:
    """Compact field operator: sigma chains traced against A-_i A+_j on one k-block.

    The pairing chain_{ij} (x) A-_i A+_j is the invariant one; A-_i A+_j is
    evaluated as A+_j A-_i + delta_ij, both factors exact on the block.
    """
    n = block.n
    eye_b = sp.identity(block.dim, dtype=complex, format="csr")
    total = SparseOperator.zeros(sigma.dim * block.dim)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            chain = None
            if beta == 1:
                chain = sp.identity(sigma.dim, dtype=complex, format="csr") if i == j else None
            else:
                idx_lists = [(i,) + mid + (j,) for mid in _mid_chains(n, beta - 2)]
                chain_mat = None
                for idx in idx_lists:
                    prod = None
                    for p, q in zip(idx[:-1], idx[1:]):
                        m = sigma_matrix(sigma, p, q)
                        prod = m if prod is None else prod @ m
                    chain_mat = prod if chain_mat is None else chain_mat + prod
                chain = chain_mat
            if chain is None:
                continue
            exch = block_ladder_pair(block, j, i) + (eye_b if i == j else 0.0 * eye_b)
            total = total + _kron(chain, exch)
    return total


def _mid_chains(n: int, depth: int):
    if depth == 0:
        yield ()
        return
    for i in range(1, n + 1):
        for rest in _mid_chains(n, depth - 1):
            yield (i,) + rest


def compact_total_action(sigma: GTBasis, block: CompactBlock, p: int, q: int) -> SparseOperator:
    """Total u(n) generator sigma(Z_pq) (x) Id + Id (x) A+_p A-_q on the block."""
    eye_b = sp.identity(block.dim, dtype=complex, format="csr")
    eye_s = sp.identity(sigma.dim, dtype=complex, format="csr")
    return _kron(sigma_matrix(sigma, p, q), eye_b) + _kron(eye_s, block_ladder_pair(block, p, q))


# ---------------------------------------------------------------------------
# reduction cross-check (report only)
# ---------------------------------------------------------------------------

def reduction_cross_check(n: int, nmax: int, s: float, c: float) -> dict:
    """Joint-eigenstate reading of the second-order reduction, beta = 1.

    Evaluates |a| f-hat vs the direct C_2 eigenvalues on trivial-sigma
    (d_1, k) eigenstates and reports the defect; the operator ordering of
    the reduction is ambiguous, so this is informational only.
    """
    params = RepresentationParams(c=c, s=s)
    sigma = trivial_sigma_basis(n)
    fock = build_basis(n, nmax)
    op = rho_casimir_op(1, sigma, fock, params)
    blocks = k_grading(fock)
    rows = []
    for k, idx in sorted(blocks.items()):
        sub = op.matrix.to_dense()[np.ix_(idx, idx)]
        direct = float(np.real(sub[0, 0]))
        c2_self = params.a * (k - 1)  # self-consistent c_2 from the direct form
        try:
            fh = f_hat(1, n, c, params.a, (c2_self, 0.0), (0.0, 0.0))
            defect = abs(params.a * fh - (c2_self + c * 0.0))
        except ZeroDivisionError:
            fh, defect = float("nan"), float("nan")
        rows.append({"k": k, "direct": direct, "c2_self": c2_self,
                     "a_fhat": params.a * fh if fh == fh else fh, "defect": defect})
    return {"beta": 1, "rows": rows}
