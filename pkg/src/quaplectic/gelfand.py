"""Gel'fand-Tsetlin pattern bases and little-group matrix elements.

Compact u(m): classical triangular patterns under betweenness, with the
step amplitudes written through shifted weights l_{k,i} = m_{k,i} - i.
The amplitude formulas are validated, not trusted: the commutation-relation
oracle ``relations_defect`` checks every constructed operator set against
the algebra.

Noncompact u(1,n): the time direction is attached as one extra pattern row
(algebra index 0 maps to Gel'fand row n+1).  The first entry of row n may
then exceed the top row -- the infinite ladder of u(n) irreps -- and is
capped by a window bound W; commutation relations hold on patterns at
distance >= margin from the cap.  Cross generators into the time row carry
a factor i, the diagonal time generator a factor -1.

All operators for a basis are built once and memoized on the basis object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .operators import SparseOperator, commutator

__all__ = [
    "GTPattern",
    "GTBasis",
    "weyl_dimension",
    "enumerate_patterns",
    "sigma_diagonal",
    "sigma_step",
    "sigma_general",
    "window_interior_indices",
    "d_eigenvalues",
    "casimir_scalar_check",
    "relations_defect",
    "pattern_lines",
]


@dataclass(frozen=True)
class GTPattern:
    """rows[j] has j+1 entries; rows[-1] is the top row."""

    rows: tuple

    def flatten_top_first(self) -> tuple:
        return tuple(x for row in reversed(self.rows) for x in row)

    def row(self, k: int) -> tuple:
        """1-based row of length k."""
        return self.rows[k - 1]

    def row_sum(self, k: int) -> int:
        return sum(self.rows[k - 1]) if k >= 1 else 0

    def bump(self, k: int, j: int, delta: int) -> "GTPattern":
        """Pattern with m_{k,j} shifted by delta (1-based j)."""
        row = list(self.rows[k - 1])
        row[j - 1] += delta
        rows = list(self.rows)
        rows[k - 1] = tuple(row)
        return GTPattern(tuple(rows))

    def __str__(self) -> str:
        return "/".join(",".join(str(x) for x in row) for row in reversed(self.rows))


def _betweenness_ok(upper: tuple, lower: tuple) -> bool:
    return all(upper[i] >= lower[i] >= upper[i + 1] for i in range(len(lower)))


@dataclass
class GTBasis:
    """Enumerated pattern list for one irrep label (compact or windowed)."""

    label: tuple
    compact: bool
    window: int
    patterns: tuple
    index: dict
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def m(self) -> int:
        return len(self.label)

    @property
    def dim(self) -> int:
        return len(self.patterns)


def weyl_dimension(label) -> int:
    """Independent dimension count for a compact u(m) irrep."""
    lab = list(label)
    m = len(lab)
    num, den = 1, 1
    for i, j in combinations(range(m), 2):
        num *= lab[i] - lab[j] + j - i
        den *= j - i
    return num // den


def enumerate_patterns(label, compact: bool = True, window: int | None = None) -> GTBasis:
    """All patterns below a top row; windowed ladder when not compact."""
    label = tuple(int(x) for x in label)
    if any(label[i] < label[i + 1] for i in range(len(label) - 1)):
        raise ValueError("irrep label must be non-increasing")
    if not compact and window is None:
        raise ValueError("a window bound is required for the noncompact basis")
    m = len(label)

    def lower_rows(upper):
        k = len(upper) - 1
        if k == 0:
            yield ()
            return
        choices = []
        for i in range(k):
            choices.append(range(upper[i + 1], upper[i] + 1))

        def rec(i, acc):
            if i == k:
                lower = tuple(acc)
                for rest in lower_rows(lower):
                    yield (lower,) + rest
                return
            for v in choices[i]:
                if i == 0 or acc[-1] >= v:
                    yield from rec(i + 1, acc + [v])

        yield from rec(0, [])

    patterns = []
    if compact:
        for rest in lower_rows(label):
            patterns.append(GTPattern(tuple(reversed((label,) + rest))))
    else:
        # the first entry of row m-1 may run above the top row, up to +window
        for first in range(label[1] if m >= 2 else label[0], label[0] + window + 1):
            if m == 1:
                break
            row = [first]
            choices = [range(label[i + 1], label[i] + 1) for i in range(1, m - 1)]

            def rec(i, acc):
                if i == len(choices):
                    second = tuple(acc)
                    for rest in lower_rows(second):
                        patterns.append(GTPattern(tuple(reversed((label, second) + rest))))
                    return
                for v in choices[i]:
                    if acc[-1] >= v:
                        rec(i + 1, acc + [v])

            rec(0, row)
        if m == 1:
            patterns.append(GTPattern((label,)))
    patterns.sort(key=lambda p: p.flatten_top_first())
    index = {p: i for i, p in enumerate(patterns)}
    return GTBasis(label, compact, 0 if compact else int(window), tuple(patterns), index)


def _pattern_valid(basis: GTBasis, p: GTPattern) -> bool:
    return p in basis.index


def _shifted(row: tuple) -> list:
    return [row[i] - (i + 1) for i in range(len(row))]


def _step_radicand(p: GTPattern, k: int, j: int) -> Fraction:
    """Signed radicand of the amplitude for m_{k,j} -> m_{k,j} + 1.

    Nonnegative on compact patterns; may go negative in the noncompact
    window, where the principal square root keeps the telescoping
    identities of the commutation relations intact.
    """
    lk = _shifted(p.row(k))
    up = _shifted(p.row(k + 1))
    num = Fraction(1)
    for v in up:
        num *= v - lk[j - 1]
    if k >= 2:
        for v in _shifted(p.row(k - 1)):
            num *= v - lk[j - 1] - 1
    den = Fraction(1)
    for i, v in enumerate(lk):
        if i != j - 1:
            den *= (v - lk[j - 1]) * (v - lk[j - 1] - 1)
    return -num / den


def _amp(radicand: Fraction) -> complex:
    x = float(radicand)
    return complex(math.sqrt(x)) if x >= 0 else 1j * math.sqrt(-x)


def _row_op(basis: GTBasis, p: int, q: int) -> SparseOperator:
    """gl-type generator on Gel'fand rows: E_pq, built once per basis."""
    key = (p, q)
    if key in basis._ops:
        return basis._ops[key]
    dim = basis.dim
    if p == q:
        trip = [(i, i, float(pat.row_sum(p) - pat.row_sum(p - 1)))
                for i, pat in enumerate(basis.patterns)]
        op = SparseOperator.from_triplets(dim, trip)
    elif q == p + 1:
        # raising E_{k,k+1}: bumps row k entries up
        trip = []
        for col, pat in enumerate(basis.patterns):
            for j in range(1, p + 1):
                target = pat.bump(p, j, +1)
                if not _pattern_valid(basis, target):
                    continue
                trip.append((basis.index[target], col, _amp(_step_radicand(pat, p, j))))
        op = SparseOperator.from_triplets(dim, trip)
    elif q == p - 1:
        trip = []
        for col, pat in enumerate(basis.patterns):
            for j in range(1, q + 1):
                target = pat.bump(q, j, -1)
                if not _pattern_valid(basis, target):
                    continue
                trip.append((basis.index[target], col, _amp(_step_radicand(target, q, j))))
        op = SparseOperator.from_triplets(dim, trip)
    elif q > p:
        op = commutator(_row_op(basis, p, q - 1), _row_op(basis, q - 1, q))
    else:
        op = commutator(_row_op(basis, p, q + 1), _row_op(basis, q + 1, q))
    basis._ops[key] = op
    return op


def _row_of(basis: GTBasis, a: int) -> int:
    """Algebra index -> Gel'fand row; 0 is the time direction, row m."""
    if basis.compact:
        if not (1 <= a <= basis.m):
            raise IndexError(f"index {a} outside 1..{basis.m} for a compact basis")
        return a
    if not (0 <= a <= basis.m - 1):
        raise IndexError(f"index {a} outside 0..{basis.m - 1}")
    return basis.m if a == 0 else a


def _epsilon(basis: GTBasis, a: int, b: int) -> complex:
    if basis.compact:
        return 1.0
    t = (a == 0) + (b == 0)
    if t == 0:
        return 1.0
    if t == 2:
        return -1.0
    return 1j


def sigma_general(a: int, b: int, basis: GTBasis) -> SparseOperator:
    """sigma'(Z_ab) in algebra indices, with the noncompact epsilon dressing."""
    return _row_op(basis, _row_of(basis, a), _row_of(basis, b)).scale(_epsilon(basis, a, b))


def sigma_diagonal(k: int, basis: GTBasis) -> SparseOperator:
    """Diagonal generator for Gel'fand row k (row-sum differences, signed)."""
    if not (1 <= k <= basis.m):
        raise IndexError(f"k outside 1..{basis.m}")
    eps = -1.0 if (not basis.compact and k == basis.m) else 1.0
    return _row_op(basis, k, k).scale(eps)


def sigma_step(k: int, direction: str, basis: GTBasis) -> SparseOperator:
    """Adjacent step operator between rows k and k+1 (raise | lower)."""
    if not (1 <= k <= basis.m - 1):
        raise IndexError(f"k outside 1..{basis.m - 1}")
    eps = 1j if (not basis.compact and k == basis.m - 1) else 1.0
    if direction == "raise":
        return _row_op(basis, k, k + 1).scale(eps)
    if direction == "lower":
        return _row_op(basis, k + 1, k).scale(eps)
    raise ValueError("direction must be 'raise' or 'lower'")


def window_interior_indices(basis: GTBasis, margin: int = 1) -> list:
    """Patterns whose ladder entry keeps >= margin away from the window cap."""
    if basis.compact:
        return list(range(basis.dim))
    cap = basis.label[0] + basis.window
    out = []
    for i, p in enumerate(basis.patterns):
        if basis.m == 1 or p.row(basis.m - 1)[0] <= cap - margin:
            out.append(i)
    return out


def _eta_indices(basis: GTBasis):
    """(index list, eta weight) pairs for the basis' index convention."""
    if basis.compact:
        return [(i, 1) for i in range(1, basis.m + 1)]
    return [(0, -1)] + [(i, 1) for i in range(1, basis.m)]


def d_eigenvalues(label, basis: GTBasis | None = None) -> tuple:
    """(d_1, d_2): d_1 from the top row, d_2 from the represented quadratic Casimir.

    For a u(1,n) label, d_1 = m_1 + ... + m_n - m_{n+1}.  For a compact
    label d_1 is the total weight.  d_2 requires a basis (None is allowed
    and yields None).
    """
    label = tuple(label)
    if basis is not None and not basis.compact:
        d1 = sum(label[:-1]) - label[-1]
    elif basis is not None and basis.compact:
        d1 = sum(label)
    else:
        d1 = sum(label[:-1]) - label[-1]
    d2 = None
    if basis is not None and basis.compact:
        d2, _ = casimir_scalar_check(2, basis)
    return (d1, d2)


def casimir_scalar_check(beta: int, basis: GTBasis) -> tuple:
    """(scalar, max deviation from scalar * Id) of the represented D_beta."""
    pairs = _eta_indices(basis)
    total = SparseOperator.zeros(basis.dim)

    def chains(depth, chain):
        if depth == 0:
            yield chain
            return
        for pair in pairs:
            yield from chains(depth - 1, chain + (pair,))

    for chain in chains(beta, ()):
        weight = 1.0
        for _, e in chain:
            weight *= e
        op = SparseOperator.identity(basis.dim, weight)
        for i in range(beta):
            a = chain[i][0]
            b = chain[(i + 1) % beta][0]
            op = op @ sigma_general(a, b, basis)
        total = total + op
    dense = total.to_dense()
    scalar = complex(np.trace(dense)) / basis.dim
    dev = float(np.max(np.abs(dense - scalar * np.eye(basis.dim))))
    return (scalar.real if abs(scalar.imag) < 1e-9 else scalar, dev)


def relations_defect(basis: GTBasis, margin: int = 2) -> float:
    """Commutation oracle: max deviation of [Z_ab, Z_cd] from its target.

    Targets are eta_bc Z_ad - eta_ad Z_cb; for a windowed basis the check
    is restricted to window-interior columns.
    """
    pairs = _eta_indices(basis)
    idx = [i for i, _ in pairs]
    eta = {a: e for a, e in pairs}
    ops = {(a, b): sigma_general(a, b, basis) for a in idx for b in idx}
    cols = window_interior_indices(basis, margin)
    if not cols:
        return 0.0
    worst = 0.0
    for a, b in ((a, b) for a in idx for b in idx):
        for c, d in ((c, d) for c in idx for d in idx):
            target = SparseOperator.zeros(basis.dim)
            if b == c:
                target = target + ops[(a, d)].scale(eta[b])
            if a == d:
                target = target - ops[(c, b)].scale(eta[a])
            defect = (commutator(ops[(a, b)], ops[(c, d)]) - target).deviation_on(cols)
            worst = max(worst, defect)
    return worst


def pattern_lines(basis: GTBasis) -> list:
    """Structured-text dump, one pattern per line, top row first."""
    out = [f"label = {','.join(str(x) for x in basis.label)}",
           f"compact = {basis.compact}",
           f"window = {basis.window}",
           f"count = {basis.dim}"]
    for i, p in enumerate(basis.patterns):
        out.append(f"{i} {p}")
    return out
