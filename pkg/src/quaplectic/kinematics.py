"""Reciprocal-relativity boost calculus on the (T, E, Q_i, P_i) span, n = 3.

Basis ordering for all 8x8 matrices: (T, E, Q1, Q2, Q3, P1, P2, P3).

The infinitesimal generator defaults to the dimensionally consistent form
in which the energy row reads E -> E - b gamma.Q + c beta.P: that placement
is the one whose exponential reproduces the reference velocity/force boosts
in the pure limits, preserves the phase-space quadratic form exactly, and
matches the finite-difference derivative of the finite boost.  The
uncorrected variant (corrections=False) swaps c and b in the energy row and
repeats the Q rotation term in the P row; it is kept only for comparison.

The finite pure boost is the closed-form matrix exponential.  For mixed
velocity/force rapidities it contains an antisymmetric Q<->P cross block
proportional to (cosh w - 1)/w^2 (beta^i gamma^j - gamma^i beta^j) that
vanishes in the pure limits, where the reference boost matrices are
recovered entrywise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PhysicalConstants",
    "BoostParams",
    "planck_scales",
    "infinitesimal_transform",
    "pure_boost",
    "velocity_boost",
    "force_boost",
    "born_form",
    "born_metric",
    "phase_scale_matrix",
]

_DIM = 8  # (T, E, Q1..Q3, P1..P3)


@dataclass(frozen=True)
class PhysicalConstants:
    """Speed c, force b, action hbar; alpha_G fixes G = alpha_G c^4 / b."""

    c: float = 1.0
    b: float = 1.0
    hbar: float = 1.0
    alpha_G: float = 1.0

    def __post_init__(self):
        if self.c <= 0 or self.b <= 0 or self.hbar <= 0 or self.alpha_G <= 0:
            raise ValueError("constants must be strictly positive")


@dataclass(frozen=True)
class BoostParams:
    """Rapidities: velocity beta, force gamma, rotation alpha, theta, vartheta."""

    beta: tuple = (0.0, 0.0, 0.0)
    gamma: tuple = (0.0, 0.0, 0.0)
    alpha: tuple = (0.0, 0.0, 0.0)
    theta: tuple = ((0.0,) * 3,) * 3
    vartheta: float = 0.0

    def omega(self) -> float:
        return math.sqrt(sum(b * b for b in self.beta) + sum(g * g for g in self.gamma))


def planck_scales(k: PhysicalConstants) -> tuple:
    """(lambda_t, lambda_q, lambda_p, lambda_e) from (c, b, hbar)."""
    lt = math.sqrt(k.hbar / (k.b * k.c))
    lq = math.sqrt(k.hbar * k.c / k.b)
    lp = math.sqrt(k.hbar * k.b / k.c)
    le = math.sqrt(k.hbar * k.b * k.c)
    return lt, lq, lp, le


_EPS = [[[0, 0, 0], [0, 0, 1], [0, -1, 0]],
        [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
        [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]]


def infinitesimal_transform(params: BoostParams, k: PhysicalConstants = PhysicalConstants(),
                            corrections: bool = True) -> np.ndarray:
    """Generator matrix of the infinitesimal frame transformation."""
    beta, gamma, alpha = params.beta, params.gamma, params.alpha
    theta, vt = params.theta, params.vartheta
    c, b = k.c, k.b
    M = np.zeros((_DIM, _DIM))
    T, E = 0, 1
    for i in range(3):
        Q, P = 2 + i, 5 + i
        M[T, Q] = beta[i] / c
        M[T, P] = gamma[i] / b
        if corrections:
            M[E, Q] = -b * gamma[i]
            M[E, P] = c * beta[i]
        else:
            # uncorrected placement (dimensionally inconsistent)
            M[E, Q] = -c * gamma[i]
            M[E, P] = b * beta[i]
        M[Q, T] = c * beta[i]
        M[Q, E] = -gamma[i] / b
        M[P, T] = b * gamma[i]
        M[P, E] = beta[i] / c
        for j in range(3):
            Qj, Pj = 2 + j, 5 + j
            M[Q, Pj] += c * theta[i][j] / b
            M[P, Qj] += -b * theta[i][j] / c
            for kk in range(3):
                Qk, Pk = 2 + kk, 5 + kk
                M[Q, Qk] += _EPS[i][j][kk] * alpha[j]
                if corrections:
                    M[P, Pk] += _EPS[i][j][kk] * alpha[j]
                else:
                    M[P, Qk] += _EPS[i][j][kk] * alpha[j]
    M[T, E] = vt / (c * b)
    M[E, T] = -b * c * vt
    return M


def _sinhc(w: float) -> float:
    # sinh(w)/w with the removable singularity expanded
    if abs(w) < 1e-4:
        w2 = w * w
        return 1.0 + w2 / 6.0 + w2 * w2 / 120.0
    return math.sinh(w) / w


def _coshm1(w: float) -> float:
    # (cosh(w) - 1)/w^2
    if abs(w) < 1e-4:
        w2 = w * w
        return 0.5 + w2 / 24.0 + w2 * w2 / 720.0
    return (math.cosh(w) - 1.0) / (w * w)


def pure_boost(beta, gamma, k: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Finite pure boost: closed form I + sinhc(w) M + coshm1(w) M^2.

    M^3 = w^2 M for the pure-boost generator, so this is the exact matrix
    exponential of infinitesimal_transform(beta, gamma).
    """
    p = BoostParams(beta=tuple(beta), gamma=tuple(gamma))
    M = infinitesimal_transform(p, k)
    w = p.omega()
    return np.eye(_DIM) + _sinhc(w) * M + _coshm1(w) * (M @ M)


def velocity_boost(beta, k: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Reference pure Lorentz velocity boost (the gamma = 0 limit)."""
    beta = tuple(beta)
    w = math.sqrt(sum(b * b for b in beta))
    ch, sh, g = math.cosh(w), _sinhc(w), _coshm1(w)
    B = np.eye(_DIM)
    T, E = 0, 1
    B[T, T] = ch
    B[E, E] = ch
    for i in range(3):
        Q, P = 2 + i, 5 + i
        B[T, Q] = sh * beta[i] / k.c
        B[Q, T] = sh * k.c * beta[i]
        B[E, P] = sh * k.c * beta[i]
        B[P, E] = sh * beta[i] / k.c
        for j in range(3):
            B[Q, 2 + j] += g * beta[i] * beta[j]
            B[P, 5 + j] += g * beta[i] * beta[j]
    return B


def force_boost(gamma, k: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Reference pure force boost (the beta = 0 limit).

    The energy row is E -> cosh E - sinh b gamma.Q; the minus sign is the
    one the mixed finite boost and the quadratic form require.
    """
    gamma = tuple(gamma)
    w = math.sqrt(sum(g * g for g in gamma))
    ch, sh, g2 = math.cosh(w), _sinhc(w), _coshm1(w)
    B = np.eye(_DIM)
    T, E = 0, 1
    B[T, T] = ch
    B[E, E] = ch
    for i in range(3):
        Q, P = 2 + i, 5 + i
        B[T, P] = sh * gamma[i] / k.b
        B[P, T] = sh * k.b * gamma[i]
        B[E, Q] = -sh * k.b * gamma[i]
        B[Q, E] = -sh * gamma[i] / k.b
        for j in range(3):
            B[Q, 2 + j] += g2 * gamma[i] * gamma[j]
            B[P, 5 + j] += g2 * gamma[i] * gamma[j]
    return B


def born_metric(k: PhysicalConstants = PhysicalConstants()) -> np.ndarray:
    """Diagonal of the phase-space quadratic form in (t, e, q, p) slots."""
    c2, b2 = k.c ** 2, k.b ** 2
    return np.diag([-1.0, -1.0 / (b2 * c2), 1 / c2, 1 / c2, 1 / c2, 1 / b2, 1 / b2, 1 / b2])


def born_form(v, k: PhysicalConstants = PhysicalConstants()) -> float:
    """-t^2 + q^2/c^2 + (p^2 - e^2/c^2)/b^2 for v = (t, e, q1..3, p1..3)."""
    v = np.asarray(v, dtype=float)
    return float(v @ born_metric(k) @ v)


def phase_scale_matrix(k: PhysicalConstants) -> np.ndarray:
    """diag of Planck scales per slot; conjugation nondimensionalizes a boost."""
    lt, lq, lp, le = planck_scales(k)
    return np.diag([lt, le, lq, lq, lq, lp, lp, lp])
