"""Truncated multi-mode oscillator representation of the Heisenberg sector.

Basis states |K> = |k_0, ..., k_n> with total degree <= Nmax.  Mode 0 has
its ladder roles reversed relative to the spatial modes: A-_0 raises and
A+_0 lowers, which is what makes the commutators close on eta = diag(-1,
1, ..., 1) instead of the Euclidean delta.  The central charge convention
inside all operators is c = 1; the physical value of c enters analytically
through RepresentationParams wherever a formula needs it.

Two independent constructions of the same ladder matrices are kept:
``ladder_op`` writes the sqrt(k), sqrt(k+1) amplitudes directly, while
``hermite_oracle_op`` derives the amplitudes from the Hermite-function
recurrences x H_k = H_{k+1}/2 + k H_{k-1} and H_k' = 2 k H_{k-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.linalg

from .algebra import (AlgebraElement, eta, gen, structure_constant_table,
                      table_lookup)
from .operators import SparseOperator, commutator

__all__ = [
    "RepresentationParams",
    "FockBasis",
    "build_basis",
    "interior_indices",
    "ladder_op",
    "rho_Z_op",
    "u_number_op",
    "k_grading_diagonal",
    "k_grading",
    "hermite_oracle_op",
    "rep_group_element",
    "represented_generator",
    "commutator_suite",
]


@dataclass(frozen=True)
class RepresentationParams:
    """Central Casimir eigenvalue c, projective multiplier s, and a = 1 - c/s."""

    c: float = 1.0
    s: float = 1.0

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("c = 0 is the degenerate abelian case")
        if self.s == 0:
            raise ValueError("s must be nonzero")

    @property
    def a(self) -> float:
        return 1.0 - self.c / self.s


@dataclass(frozen=True)
class FockBasis:
    """All occupation tuples K with sum(K) <= Nmax, graded-lexicographic."""

    n: int
    nmax: int
    states: tuple
    index: dict

    @property
    def dim(self) -> int:
        return len(self.states)

    def state_index(self, K) -> int:
        return self.index[tuple(K)]


def _simplex(n_modes: int, total: int):
    if n_modes == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _simplex(n_modes - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def build_basis(n: int, nmax: int) -> FockBasis:
    if nmax < 0:
        raise ValueError("Nmax must be >= 0")
    if n < 0:
        raise ValueError("n must be >= 0")
    states = []
    for deg in range(nmax + 1):
        block = sorted(_simplex(n + 1, deg))
        states.extend(block)
    states = tuple(states)
    index = {K: i for i, K in enumerate(states)}
    return FockBasis(n, nmax, states, index)


def interior_indices(basis: FockBasis, margin: int) -> list:
    """States whose total degree keeps a polynomial identity of that degree exact."""
    return [i for i, K in enumerate(basis.states) if sum(K) <= basis.nmax - margin]


def ladder_op(a: int, sign: str, basis: FockBasis) -> SparseOperator:
    """A+_a / A-_a on the truncated basis (mode 0 roles reversed).

    Spatial modes: A+_i raises k_i with sqrt(k_i + 1), A-_i lowers with
    sqrt(k_i).  Mode 0: A-_0 raises with sqrt(k_0 + 1), A+_0 lowers with
    sqrt(k_0).  Entries leaving the truncation are dropped.
    """
    if not (0 <= a <= basis.n):
        raise IndexError(f"mode {a} outside 0..{basis.n}")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    raising = (sign == "+") if a != 0 else (sign == "-")
    triplets, radicands = [], {}
    for col, K in enumerate(basis.states):
        if raising:
            K2 = K[:a] + (K[a] + 1,) + K[a + 1:]
            if sum(K2) > basis.nmax:
                continue
            amp2 = K[a] + 1
        else:
            if K[a] == 0:
                continue
            K2 = K[:a] + (K[a] - 1,) + K[a + 1:]
            amp2 = K[a]
        row = basis.state_index(K2)
        triplets.append((row, col, math.sqrt(amp2)))
        radicands[(row, col)] = (1, amp2)
    return SparseOperator.from_triplets(basis.dim, triplets, radicands)


def rho_Z_op(a: int, b: int, params: RepresentationParams, basis: FockBasis) -> SparseOperator:
    """Projective extension rho'(Z_ab) = (1/s) A+_a A-_b as a matrix product."""
    op = ladder_op(a, "+", basis) @ ladder_op(b, "-", basis)
    return op.scale(1.0 / params.s)


def u_number_op(params: RepresentationParams, basis: FockBasis) -> SparseOperator:
    """eta-contraction of rho'(Z); diagonal (k - 1)/s, offset -1 from the grading."""
    out = SparseOperator.zeros(basis.dim)
    for a in range(basis.n + 1):
        out = out + rho_Z_op(a, a, params, basis).scale(eta(a, a))
    return out


def grading_value(K) -> int:
    return -K[0] + sum(K[1:])


def k_grading_diagonal(basis: FockBasis) -> SparseOperator:
    """Exact diagonal k = -k_0 + sum k_i used for the subspace decomposition."""
    trip = [(i, i, float(grading_value(K))) for i, K in enumerate(basis.states)]
    return SparseOperator.from_triplets(basis.dim, trip)


def k_grading(basis: FockBasis) -> dict:
    """Partition of basis indices into the invariant blocks H_k."""
    blocks = {}
    for i, K in enumerate(basis.states):
        blocks.setdefault(grading_value(K), []).append(i)
    return blocks


def hermite_oracle_op(a: int, sign: str, basis: FockBasis) -> SparseOperator:
    """Same operator as ladder_op, derived from the analytic Hermite action.

    The differential operator is (x -+ eta_aa d/dx)/sqrt2 applied to the
    normalized functions eta_k = N_k e^{-x^2/2} H_k; amplitudes come out of
    the recurrences and the normalization ratios N_k/N_{k+-1}, not from the
    sqrt(k), sqrt(k+1) formulas.
    """
    if not (0 <= a <= basis.n):
        raise IndexError(f"mode {a} outside 0..{basis.n}")
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    # (x + eps d/dx) with eps = -+ eta_aa: A+- = (x -+ eta_aa d/dx)/sqrt2
    eps = -eta(a, a) if sign == "+" else eta(a, a)

    def one_mode(k):
        # x eta_k    -> N_k e^{.} ( H_{k+1}/2 + k H_{k-1} )
        # d/dx eta_k -> N_k e^{.} ( k H_{k-1} - H_{k+1}/2 )
        up = Fraction(1, 2) + eps * Fraction(-1, 2)      # coefficient of H_{k+1}
        down = Fraction(k) + eps * Fraction(k)           # coefficient of H_{k-1}
        moves = []
        if up:
            # N_k / N_{k+1} = sqrt(2 (k+1))
            amp2 = Fraction(up * up * 2 * (k + 1), 2)    # square incl. the 1/sqrt2
            moves.append((k + 1, amp2))
        if down and k >= 1:
            # N_k / N_{k-1} = 1 / sqrt(2 k)
            amp2 = Fraction(down * down, 2 * k * 2)
            moves.append((k - 1, amp2))
        return moves

    triplets, radicands = [], {}
    for col, K in enumerate(basis.states):
        for k2, amp2 in one_mode(K[a]):
            K2 = K[:a] + (k2,) + K[a + 1:]
            if sum(K2) > basis.nmax:
                continue
            row = basis.state_index(K2)
            triplets.append((row, col, math.sqrt(float(amp2))))
            assert amp2.denominator == 1
            radicands[(row, col)] = (1, int(amp2))
    return SparseOperator.from_triplets(basis.dim, triplets, radicands)


def _xy_operators(basis: FockBasis):
    rt = 1.0 / math.sqrt(2.0)
    xs, ys = [], []
    for a in range(basis.n + 1):
        ap = ladder_op(a, "+", basis)
        am = ladder_op(a, "-", basis)
        xs.append((ap + am).scale(rt))
        ys.append((ap - am).scale(1j * rt))
    return xs, ys


def rep_group_element(h, params: RepresentationParams, basis: FockBasis,
                      norm_tol: float | None = None, margin: int | None = None) -> np.ndarray:
    """Unitary rep of a Heisenberg element as exp of i times the algebra rep.

    The section convention exp(i(c iota + sqrt(2 c) (x.X - y.Y))) is fixed so
    the composition reproduces the group law's central cocycle exactly: the
    represented Weyl commutator carries the phase e^{2 i c w1.zeta.w2}.

    The truncated generator stays Hermitian, so the matrix is unitary no
    matter how hard the truncation bites; what truncation does corrupt is
    the boundary content of interior columns.  With norm_tol set, interior
    columns must keep their amplitude out of the top two degree shells to
    that bound, else the element is reported as truncation-dominated.
    """
    if h.n != basis.n:
        raise ValueError("dimension mismatch between element and basis")
    if params.c <= 0:
        raise ValueError("positive central charge required for the oscillator rep")
    m = basis.n + 1
    x, y = h.w[:m], h.w[m:]
    xs, ys = _xy_operators(basis)
    g = SparseOperator.identity(basis.dim, params.c * h.iota)
    scale = math.sqrt(2.0 * params.c)
    for a in range(m):
        g = g + xs[a].scale(scale * x[a]) + ys[a].scale(-scale * y[a])
    mat = scipy.linalg.expm(1j * g.to_dense())
    if norm_tol is not None:
        cols = interior_indices(basis, basis.nmax // 2 if margin is None else margin)
        boundary = [i for i, K in enumerate(basis.states) if sum(K) > basis.nmax - 2]
        leak = float(np.max(np.linalg.norm(mat[np.ix_(boundary, cols)], axis=0)))
        if leak > norm_tol:
            raise ValueError(f"truncation-dominated element: boundary leakage {leak:.3e}")
    return mat


def represented_generator(gid, params: RepresentationParams, basis: FockBasis) -> SparseOperator:
    """Matrix for one complex-basis generator (internal c = 1 convention)."""
    if gid.kind == "I":
        return SparseOperator.identity(basis.dim)
    if gid.kind == "Ap":
        return ladder_op(gid.a, "+", basis)
    if gid.kind == "Am":
        return ladder_op(gid.a, "-", basis)
    if gid.kind == "Z":
        return rho_Z_op(gid.a, gid.b, params, basis)
    if gid.kind == "U":
        return u_number_op(params, basis)
    raise ValueError(f"no fock representation for {gid}")


def commutator_suite(n: int, nmax: int, s: float = 1.0, margin: int = 4) -> dict:
    """Max deviation of every represented pairwise commutator from its target.

    Targets are i * (1/s)^[Z involved] * (abstract bracket) resolved into
    represented operators -- the Hermitian convention with the projective
    1/s factors; evaluated on interior columns only.
    """
    params = RepresentationParams(c=1.0, s=s)
    basis = build_basis(n, nmax)
    cols = interior_indices(basis, margin)
    table = structure_constant_table(n, "complex")
    gens = [gen("I")]
    gens += [gen("Ap", a) for a in range(n + 1)]
    gens += [gen("Am", a) for a in range(n + 1)]
    gens += [gen("Z", a, b) for a in range(n + 1) for b in range(n + 1)]
    reps = {g: represented_generator(g, params, basis) for g in gens}
    worst = 0.0
    per_pair = {}
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            target = table_lookup(table, g1, g2, n)
            mult = 1j
            if g1.kind == "Z" or g2.kind == "Z":
                mult = 1j / s
            resolved = SparseOperator.zeros(basis.dim)
            for g, c in target.terms.items():
                resolved = resolved + reps[g].scale(c.to_complex())
            defect = (commutator(reps[g1], reps[g2]) - resolved.scale(mult)).deviation_on(cols)
            per_pair[(str(g1), str(g2))] = defect
            worst = max(worst, defect)
    return {"max_deviation": worst, "pairs": per_pair}
