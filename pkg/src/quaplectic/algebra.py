"""Abstract quaplectic Lie algebra over exact coefficients.

The primitive basis is {L(a,b), M(a,b), X(a), Y(a), I} with L antisymmetric
and M symmetric in (a,b).  Everything else (Z, Zhat, U, A+, A-, and the
physical names T, E, Q, P, J, K, N, R) is an alias that resolves to a fixed
combination of primitives.  Coefficients live in Q(i, sqrt2): Gaussian
rationals with a symbolic sqrt(2) whose square is 2, so brackets and normal
ordering are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

__all__ = [
    "Scalar",
    "GeneratorId",
    "AlgebraElement",
    "MetricTensor",
    "EnvelopingPoly",
    "eta",
    "gen",
    "resolve_alias",
    "to_primitive",
    "to_complex_basis",
    "bracket",
    "generators",
    "structure_constant_table",
    "structure_table_lines",
    "jacobi_violations",
    "casimir_element",
    "unitary_casimir_element",
    "poincare_subalgebra",
    "poincare_closure_defect",
]


# ---------------------------------------------------------------------------
# exact scalars: (re + i*im) + sqrt(2)*(re2 + i*im2)
# ---------------------------------------------------------------------------

def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class Scalar:
    """Element of Q(i, sqrt 2), closed under + and * since (sqrt 2)^2 = 2."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)
    re2: Fraction = Fraction(0)
    im2: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(_frac(x))

    @staticmethod
    def i(x=1) -> "Scalar":
        return Scalar(Fraction(0), _frac(x))

    @staticmethod
    def sqrt2(x=1) -> "Scalar":
        return Scalar(Fraction(0), Fraction(0), _frac(x))

    @staticmethod
    def inv_sqrt2() -> "Scalar":
        # 1/sqrt2 = sqrt2/2
        return Scalar.sqrt2(Fraction(1, 2))

    def __add__(self, o: "Scalar") -> "Scalar":
        return Scalar(self.re + o.re, self.im + o.im, self.re2 + o.re2, self.im2 + o.im2)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im, -self.re2, -self.im2)

    def __sub__(self, o: "Scalar") -> "Scalar":
        return self + (-o)

    def __mul__(self, o: "Scalar") -> "Scalar":
        # (g1 + s2*h1)(g2 + s2*h2) = g1 g2 + 2 h1 h2 + s2 (g1 h2 + h1 g2)
        a, b, c, d = self.re, self.im, self.re2, self.im2
        e, f, g, h = o.re, o.im, o.re2, o.im2
        # gaussian products
        g1g2 = (a * e - b * f, a * f + b * e)
        h1h2 = (c * g - d * h, c * h + d * g)
        g1h2 = (a * g - b * h, a * h + b * g)
        h1g2 = (c * e - d * f, c * f + d * e)
        return Scalar(
            g1g2[0] + 2 * h1h2[0],
            g1g2[1] + 2 * h1h2[1],
            g1h2[0] + h1g2[0],
            g1h2[1] + h1g2[1],
        )

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.re2, -self.im2)

    def inverse(self) -> "Scalar":
        # divide by the sqrt2-conjugate, then by the gaussian conjugate
        conj2 = Scalar(self.re, self.im, -self.re2, -self.im2)
        den = self * conj2  # gaussian rational: re2 = im2 = 0
        assert den.re2 == 0 and den.im2 == 0
        norm = den.re * den.re + den.im * den.im
        if norm == 0:
            raise ZeroDivisionError("scalar is zero")
        num = conj2 * Scalar(den.re, -den.im)
        return Scalar(num.re / norm, num.im / norm, num.re2 / norm, num.im2 / norm)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0 and self.re2 == 0 and self.im2 == 0

    def is_gaussian_rational(self) -> bool:
        return self.re2 == 0 and self.im2 == 0

    def to_complex(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.re) + r2 * float(self.re2),
                       float(self.im) + r2 * float(self.im2))

    def __str__(self) -> str:
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            parts.append(f"{self.im}*i")
        if self.re2:
            parts.append(f"{self.re2}*sqrt2")
        if self.im2:
            parts.append(f"{self.im2}*i*sqrt2")
        return "+".join(parts).replace("+-", "-") if parts else "0"


ZERO = Scalar()
ONE = Scalar.of(1)
HALF = Scalar.of(Fraction(1, 2))
I_UNIT = Scalar.i()


def eta(a: int, b: int) -> int:
    """Diagonal metric (-1, 1, ..., 1); doubles as its own inverse."""
    if a != b:
        return 0
    return -1 if a == 0 else 1


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

PRIMITIVE_KINDS = ("I", "L", "M", "X", "Y")
COMPLEX_KINDS = ("I", "U", "Z", "Ap", "Am")
ALIAS_KINDS = ("Z", "Zhat", "U", "Ap", "Am", "T", "E", "Q", "P", "J", "K", "N", "R")

_KIND_RANK = {k: r for r, k in enumerate(
    ("I", "U", "L", "M", "Z", "Zhat", "X", "Y", "Ap", "Am",
     "T", "E", "Q", "P", "J", "K", "N", "R"))}


@dataclass(frozen=True, order=False)
class GeneratorId:
    kind: str
    a: Optional[int] = None
    b: Optional[int] = None

    def rank(self):
        return (_KIND_RANK[self.kind],
                -1 if self.a is None else self.a,
                -1 if self.b is None else self.b)

    def __lt__(self, other: "GeneratorId") -> bool:
        return self.rank() < other.rank()

    def __str__(self) -> str:
        if self.a is None:
            return self.kind
        if self.b is None:
            return f"{self.kind}({self.a})"
        return f"{self.kind}({self.a},{self.b})"


def gen(kind: str, a: Optional[int] = None, b: Optional[int] = None) -> GeneratorId:
    return GeneratorId(kind, a, b)


def _check_index(idx: int, n: int, lo: int = 0) -> None:
    if not (lo <= idx <= n):
        raise IndexError(f"generator index {idx} outside {lo}..{n}")


@dataclass
class AlgebraElement:
    """Linear combination of generators with exact coefficients."""

    n: int
    terms: dict

    @staticmethod
    def zero(n: int) -> "AlgebraElement":
        return AlgebraElement(n, {})

    @staticmethod
    def single(n: int, gid: GeneratorId, coeff=ONE) -> "AlgebraElement":
        c = Scalar.of(coeff)
        return AlgebraElement(n, {} if c.is_zero() else {gid: c})

    def add_term(self, gid: GeneratorId, coeff: Scalar) -> None:
        cur = self.terms.get(gid, ZERO) + coeff
        if cur.is_zero():
            self.terms.pop(gid, None)
        else:
            self.terms[gid] = cur

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = AlgebraElement(self.n, dict(self.terms))
        for g, c in other.terms.items():
            out.add_term(g, c)
        return out

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(Scalar.of(-1))

    def scale(self, coeff) -> "AlgebraElement":
        c = Scalar.of(coeff)
        out = AlgebraElement(self.n, {})
        for g, v in self.terms.items():
            out.add_term(g, v * c)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = [f"({c})*{g}" for g, c in sorted(self.terms.items(), key=lambda kv: kv[0].rank())]
        return " + ".join(bits)


@dataclass(frozen=True)
class MetricTensor:
    """eta and the two symplectic forms on the 2(n+1)-dim phase space."""

    n: int

    def eta_diag(self):
        return [eta(a, a) for a in range(self.n + 1)]

    def zeta_canonical(self):
        import numpy as np
        m = self.n + 1
        z = np.zeros((2 * m, 2 * m), dtype=int)
        z[:m, m:] = np.eye(m, dtype=int)
        z[m:, :m] = -np.eye(m, dtype=int)
        return z

    def zeta_hat(self):
        import numpy as np
        m = self.n + 1
        e = np.diag(self.eta_diag())
        z = np.zeros((2 * m, 2 * m), dtype=int)
        z[:m, m:] = e
        z[m:, :m] = -e
        return z


# ---------------------------------------------------------------------------
# canonical term builders (L antisymmetric, M symmetric)
# ---------------------------------------------------------------------------

def _add_L(acc: AlgebraElement, coeff: Scalar, a: int, b: int) -> None:
    if coeff.is_zero() or a == b:
        return
    if a > b:
        a, b, coeff = b, a, -coeff
    acc.add_term(gen("L", a, b), coeff)


def _add_M(acc: AlgebraElement, coeff: Scalar, a: int, b: int) -> None:
    if coeff.is_zero():
        return
    if a > b:
        a, b = b, a
    acc.add_term(gen("M", a, b), coeff)


def _add(acc: AlgebraElement, coeff: Scalar, gid: GeneratorId) -> None:
    if not coeff.is_zero():
        acc.add_term(gid, coeff)


# ---------------------------------------------------------------------------
# primitive structure constants
# ---------------------------------------------------------------------------

def _bracket_primitive(g1: GeneratorId, g2: GeneratorId, n: int) -> AlgebraElement:
    out = AlgebraElement.zero(n)
    k1, k2 = g1.kind, g2.kind
    if k1 == "I" or k2 == "I":
        return out
    if _KIND_RANK[k1] > _KIND_RANK[k2]:
        return _bracket_primitive(g2, g1, n).scale(-1)

    a, b = g1.a, g1.b
    c, d = g2.a, g2.b

    if k1 == "L" and k2 == "L":
        _add_L(out, Scalar.of(-eta(a, c)), b, d)
        _add_L(out, Scalar.of(eta(a, d)), b, c)
        _add_L(out, Scalar.of(eta(b, c)), a, d)
        _add_L(out, Scalar.of(-eta(b, d)), a, c)
    elif k1 == "L" and k2 == "M":
        _add_M(out, Scalar.of(-eta(a, c)), b, d)
        _add_M(out, Scalar.of(-eta(a, d)), b, c)
        _add_M(out, Scalar.of(eta(b, c)), a, d)
        _add_M(out, Scalar.of(eta(b, d)), a, c)
    elif k1 == "M" and k2 == "M":
        _add_L(out, Scalar.of(-eta(a, c)), b, d)
        _add_L(out, Scalar.of(-eta(a, d)), b, c)
        _add_L(out, Scalar.of(-eta(b, c)), a, d)
        _add_L(out, Scalar.of(-eta(b, d)), a, c)
    elif k1 == "L" and k2 == "X":
        _add(out, Scalar.of(-eta(a, c)), gen("X", b))
        _add(out, Scalar.of(eta(b, c)), gen("X", a))
    elif k1 == "L" and k2 == "Y":
        _add(out, Scalar.of(-eta(a, c)), gen("Y", b))
        _add(out, Scalar.of(eta(b, c)), gen("Y", a))
    elif k1 == "M" and k2 == "X":
        _add(out, Scalar.of(-eta(a, c)), gen("Y", b))
        _add(out, Scalar.of(-eta(b, c)), gen("Y", a))
    elif k1 == "M" and k2 == "Y":
        _add(out, Scalar.of(eta(a, c)), gen("X", b))
        _add(out, Scalar.of(eta(b, c)), gen("X", a))
    elif k1 == "X" and k2 == "Y":
        _add(out, Scalar.of(eta(a, c)), gen("I"))
    # [X,X] = [Y,Y] = 0
    return out


# ---------------------------------------------------------------------------
# aliases
# ---------------------------------------------------------------------------

def resolve_alias(gid: GeneratorId, n: int) -> AlgebraElement:
    """Resolve any generator name to primitives {L, M, X, Y, I}."""
    k = gid.kind
    out = AlgebraElement.zero(n)
    if k in PRIMITIVE_KINDS:
        if k in ("L", "M"):
            _check_index(gid.a, n)
            _check_index(gid.b, n)
            if k == "L":
                _add_L(out, ONE, gid.a, gid.b)
            else:
                _add_M(out, ONE, gid.a, gid.b)
        elif k in ("X", "Y"):
            _check_index(gid.a, n)
            out.add_term(gid, ONE)
        else:
            out.add_term(gid, ONE)
        return out

    if k == "Z":
        _check_index(gid.a, n)
        _check_index(gid.b, n)
        _add_M(out, HALF, gid.a, gid.b)
        _add_L(out, Scalar.i(Fraction(-1, 2)), gid.a, gid.b)
        return out
    if k == "U":
        for a in range(n + 1):
            _add_M(out, Scalar.of(Fraction(eta(a, a), 2)), a, a)
        return out
    if k == "Zhat":
        z = resolve_alias(gen("Z", gid.a, gid.b), n)
        u = resolve_alias(gen("U"), n).scale(Fraction(-eta(gid.a, gid.b), n + 1))
        return z + u
    if k == "Ap":
        _check_index(gid.a, n)
        _add(out, Scalar.inv_sqrt2(), gen("X", gid.a))
        _add(out, Scalar(Fraction(0), Fraction(0), Fraction(0), Fraction(-1, 2)), gen("Y", gid.a))
        return out
    if k == "Am":
        _check_index(gid.a, n)
        _add(out, Scalar.inv_sqrt2(), gen("X", gid.a))
        _add(out, Scalar(Fraction(0), Fraction(0), Fraction(0), Fraction(1, 2)), gen("Y", gid.a))
        return out
    if k == "T":
        _add(out, ONE, gen("X", 0))
        return out
    if k == "E":
        _add(out, ONE, gen("Y", 0))
        return out
    if k == "Q":
        _check_index(gid.a, n, lo=1)
        _add(out, ONE, gen("X", gid.a))
        return out
    if k == "P":
        # sign fixed by [P_i, Q_j] = delta_ij I together with [T, E] = -I
        _check_index(gid.a, n, lo=1)
        _add(out, Scalar.of(-1), gen("Y", gid.a))
        return out
    if k == "K":
        _check_index(gid.a, n, lo=1)
        _add_L(out, ONE, 0, gid.a)
        return out
    if k == "N":
        _check_index(gid.a, n, lo=1)
        _add_M(out, ONE, 0, gid.a)
        return out
    if k == "R":
        _add_M(out, ONE, 0, 0)
        return out
    if k == "J":
        if n != 3:
            raise ValueError("J(i) is defined for n = 3")
        _check_index(gid.a, n, lo=1)
        i = gid.a
        j, kk = [x for x in (1, 2, 3) if x != i]
        sign = 1 if (i, j, kk) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1
        _add_L(out, Scalar.of(sign), j, kk)
        return out
    raise ValueError(f"unknown generator kind {k!r}")


def to_primitive(elem: AlgebraElement) -> AlgebraElement:
    out = AlgebraElement.zero(elem.n)
    for gid, c in elem.terms.items():
        for pg, pc in resolve_alias(gid, elem.n).terms.items():
            out.add_term(pg, pc * c)
    return out


def to_complex_basis(elem: AlgebraElement) -> AlgebraElement:
    """Rewrite a primitive-basis element over {Z(a,b), A+, A-, I}."""
    prim = to_primitive(elem)
    out = AlgebraElement.zero(elem.n)
    for gid, c in prim.terms.items():
        k = gid.kind
        if k == "I":
            out.add_term(gid, c)
        elif k == "M":
            # M_ab = Z_ab + Z_ba
            out.add_term(gen("Z", gid.a, gid.b), c)
            out.add_term(gen("Z", gid.b, gid.a), c)
        elif k == "L":
            # L_ab = i (Z_ab - Z_ba)
            out.add_term(gen("Z", gid.a, gid.b), c * I_UNIT)
            out.add_term(gen("Z", gid.b, gid.a), -(c * I_UNIT))
        elif k == "X":
            # X_a = (A+ + A-)/sqrt2
            out.add_term(gen("Ap", gid.a), c * Scalar.inv_sqrt2())
            out.add_term(gen("Am", gid.a), c * Scalar.inv_sqrt2())
        elif k == "Y":
            # Y_a = i (A+ - A-)/sqrt2
            s = c * I_UNIT * Scalar.inv_sqrt2()
            out.add_term(gen("Ap", gid.a), s)
            out.add_term(gen("Am", gid.a), -s)
        else:
            raise AssertionError(k)
    return out


# ---------------------------------------------------------------------------
# bracket and tables
# ---------------------------------------------------------------------------

def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket, bilinear over the exact scalars.

    The result is returned over the primitive basis; use to_complex_basis to
    re-collect it over {Z, A+, A-, I}.
    """
    if x.n != y.n:
        raise ValueError("dimension mismatch")
    xp, yp = to_primitive(x), to_primitive(y)
    out = AlgebraElement.zero(x.n)
    for g1, c1 in xp.terms.items():
        for g2, c2 in yp.terms.items():
            br = _bracket_primitive(g1, g2, x.n)
            for g, c in br.terms.items():
                out.add_term(g, c * c1 * c2)
    return out


def generators(n: int, basis: str) -> list:
    """Ordered generator list for the real or complex basis."""
    gens = [gen("I")]
    if basis == "real":
        gens += [gen("L", a, b) for a, b in combinations(range(n + 1), 2)]
        gens += [gen("M", a, b) for a in range(n + 1) for b in range(a, n + 1)]
        gens += [gen("X", a) for a in range(n + 1)]
        gens += [gen("Y", a) for a in range(n + 1)]
    elif basis == "complex":
        gens += [gen("Z", a, b) for a in range(n + 1) for b in range(n + 1)]
        gens += [gen("Ap", a) for a in range(n + 1)]
        gens += [gen("Am", a) for a in range(n + 1)]
    else:
        raise ValueError("basis must be 'real' or 'complex'")
    return gens


def structure_constant_table(n: int, basis: str) -> dict:
    """Complete antisymmetric table {(g1, g2): [g1, g2]} over one basis.

    Complex-basis entries are obtained by change of basis from the real
    table, never transcribed, so the derived table is the arbiter whenever
    two transcriptions of a relation disagree.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = generators(n, basis)
    collect = to_complex_basis if basis == "complex" else to_primitive
    table = {}
    for i, g1 in enumerate(gens):
        for g2 in gens[i + 1:]:
            br = bracket(AlgebraElement.single(n, g1), AlgebraElement.single(n, g2))
            table[(g1, g2)] = collect(br)
    return table


def table_lookup(table: dict, g1: GeneratorId, g2: GeneratorId, n: int) -> AlgebraElement:
    if (g1, g2) in table:
        return table[(g1, g2)]
    if (g2, g1) in table:
        return table[(g2, g1)].scale(-1)
    return AlgebraElement.zero(n)


def structure_table_lines(n: int, basis: str) -> list:
    """One line per nonzero bracket term: gen, gen, coefficient, gen."""
    table = structure_constant_table(n, basis)
    lines = []
    for (g1, g2), elem in sorted(table.items(), key=lambda kv: (kv[0][0].rank(), kv[0][1].rank())):
        for g, c in sorted(elem.terms.items(), key=lambda kv: kv[0].rank()):
            lines.append(f"{g1} {g2} {c} {g}")
    return lines


def jacobi_violations(n: int, basis: str) -> list:
    """Triples where the Jacobi identity fails (expected: none)."""
    gens = generators(n, basis)
    bad = []
    for g1, g2, g3 in combinations(gens, 3):
        e1 = AlgebraElement.single(n, g1)
        e2 = AlgebraElement.single(n, g2)
        e3 = AlgebraElement.single(n, g3)
        total = (bracket(bracket(e1, e2), e3)
                 + bracket(bracket(e2, e3), e1)
                 + bracket(bracket(e3, e1), e2))
        if not total.is_zero():
            bad.append((g1, g2, g3, str(total)))
    return bad


# ---------------------------------------------------------------------------
# enveloping algebra
# ---------------------------------------------------------------------------

@dataclass
class EnvelopingPoly:
    """Sum of coefficient * ordered word over the complex-basis generators."""

    n: int
    words: dict  # tuple[GeneratorId, ...] -> Scalar

    @staticmethod
    def zero(n: int) -> "EnvelopingPoly":
        return EnvelopingPoly(n, {})

    @staticmethod
    def from_word(n: int, word: Iterable[GeneratorId], coeff=ONE) -> "EnvelopingPoly":
        c = Scalar.of(coeff)
        return EnvelopingPoly(n, {} if c.is_zero() else {tuple(word): c})

    def add_word(self, word: tuple, coeff: Scalar) -> None:
        cur = self.words.get(word, ZERO) + coeff
        if cur.is_zero():
            self.words.pop(word, None)
        else:
            self.words[word] = cur

    def __add__(self, other: "EnvelopingPoly") -> "EnvelopingPoly":
        out = EnvelopingPoly(self.n, dict(self.words))
        for w, c in other.words.items():
            out.add_word(w, c)
        return out

    def __sub__(self, other: "EnvelopingPoly") -> "EnvelopingPoly":
        return self + other.scale(Scalar.of(-1))

    def scale(self, coeff) -> "EnvelopingPoly":
        c = Scalar.of(coeff)
        out = EnvelopingPoly.zero(self.n)
        for w, v in self.words.items():
            out.add_word(w, v * c)
        return out

    def __mul__(self, other: "EnvelopingPoly") -> "EnvelopingPoly":
        out = EnvelopingPoly.zero(self.n)
        for w1, c1 in self.words.items():
            for w2, c2 in other.words.items():
                out.add_word(w1 + w2, c1 * c2)
        return out

    def commutator(self, other: "EnvelopingPoly") -> "EnvelopingPoly":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.words

    def substitute_central(self, value) -> "EnvelopingPoly":
        """Replace the central generator I by a scalar."""
        v = Scalar.of(value)
        out = EnvelopingPoly.zero(self.n)
        for w, c in self.words.items():
            kept = tuple(g for g in w if g.kind != "I")
            mult = c
            for g in w:
                if g.kind == "I":
                    mult = mult * v
            out.add_word(kept, mult)
        return out

    def normal_order(self, table: Optional[dict] = None) -> "EnvelopingPoly":
        """Canonical PBW form: letters non-decreasing by rank.

        Adjacent out-of-order letters are swapped, spawning the bracket
        word; the rewriting terminates because spawned words are shorter.
        """
        if table is None:
            table = structure_constant_table(self.n, "complex")
        pending = dict(self.words)
        done = EnvelopingPoly.zero(self.n)
        while pending:
            word, coeff = pending.popitem()
            pos = None
            for idx in range(len(word) - 1):
                if word[idx].rank() > word[idx + 1].rank():
                    pos = idx
                    break
            if pos is None:
                done.add_word(word, coeff)
                continue
            g1, g2 = word[pos], word[pos + 1]
            swapped = word[:pos] + (g2, g1) + word[pos + 2:]
            _accumulate(pending, swapped, coeff)
            br = table_lookup(table, g1, g2, self.n)
            for g, c in br.terms.items():
                _accumulate(pending, word[:pos] + (g,) + word[pos + 2:], coeff * c)
        return done

    def __str__(self) -> str:
        if not self.words:
            return "0"
        bits = []
        for w, c in sorted(self.words.items(), key=lambda kv: tuple(g.rank() for g in kv[0])):
            sym = "*".join(str(g) for g in w) if w else "1"
            bits.append(f"({c})*{sym}")
        return " + ".join(bits)


def _accumulate(words: dict, word: tuple, coeff: Scalar) -> None:
    cur = words.get(word, ZERO) + coeff
    if cur.is_zero():
        words.pop(word, None)
    else:
        words[word] = cur


# ---------------------------------------------------------------------------
# Casimir elements
# ---------------------------------------------------------------------------

def _w_word(n: int, a: int, b: int) -> EnvelopingPoly:
    """W_ab = A+_a A-_b - I Z_ab, the translation-invariant combination."""
    out = EnvelopingPoly.from_word(n, (gen("Ap", a), gen("Am", b)))
    out.add_word((gen("I"), gen("Z", a, b)), Scalar.of(-1))
    return out


def casimir_element(beta: int, n: int, params=None) -> EnvelopingPoly:
    """Quaplectic Casimir C_{2 beta}: eta-contracted trace of W words.

    With ``params`` given, the central generator is replaced by the scalar
    params.c so the word alphabet is {Z, A+, A-} only.
    """
    if not (1 <= beta <= n + 1):
        raise ValueError("beta out of range 1..n+1")
    out = EnvelopingPoly.zero(n)
    idx = range(n + 1)

    def chains(depth, chain):
        if depth == 0:
            yield chain
            return
        for a in idx:
            yield from chains(depth - 1, chain + (a,))

    for chain in chains(beta, ()):
        coeff = Fraction(1)
        for a in chain:
            coeff *= eta(a, a)
        word = EnvelopingPoly.from_word(n, (), Scalar.of(coeff))
        for i, a in enumerate(chain):
            b = chain[(i + 1) % beta]
            word = word * _w_word(n, a, b)
        out = out + word
    if params is not None:
        out = out.substitute_central(Fraction(params.c).limit_denominator(10 ** 9)
                                     if not isinstance(params.c, (int, Fraction)) else params.c)
    return out


def unitary_casimir_element(beta: int, n: int) -> EnvelopingPoly:
    """Little-group Casimir D_beta: eta-contracted trace of Z words; D_1 = U."""
    if not (1 <= beta <= n + 1):
        raise ValueError("beta out of range 1..n+1")
    out = EnvelopingPoly.zero(n)
    idx = range(n + 1)

    def chains(depth, chain):
        if depth == 0:
            yield chain
            return
        for a in idx:
            yield from chains(depth - 1, chain + (a,))

    for chain in chains(beta, ()):
        coeff = Fraction(1)
        for a in chain:
            coeff *= eta(a, a)
        word = tuple(gen("Z", chain[i], chain[(i + 1) % beta]) for i in range(beta))
        out.add_word(word, Scalar.of(coeff))
    return out


# ---------------------------------------------------------------------------
# Poincare subalgebras
# ---------------------------------------------------------------------------

_QUADS = {
    "velocity-EP": lambda i: [gen("J", i), gen("K", i), gen("P", i)],
    "velocity-TQ": lambda i: [gen("J", i), gen("K", i), gen("Q", i)],
    "force-EQ": lambda i: [gen("J", i), gen("N", i), gen("Q", i)],
    "force-TP": lambda i: [gen("J", i), gen("N", i), gen("P", i)],
}
_QUAD_SCALAR = {
    "velocity-EP": gen("E"),
    "velocity-TQ": gen("T"),
    "force-EQ": gen("E"),
    "force-TP": gen("T"),
}


def poincare_subalgebra(selector: str, n: int = 3) -> list:
    """Generator set of one of the four Poincare subalgebras (n = 3)."""
    if selector not in _QUADS:
        raise ValueError(f"unknown selector {selector!r}")
    if n != 3:
        raise ValueError("the quad listing is for n = 3")
    gens = []
    for i in (1, 2, 3):
        gens.extend(_QUADS[selector](i))
    gens.append(_QUAD_SCALAR[selector])
    # deduplicate, preserve order
    seen, out = set(), []
    for g in gens:
        if g not in seen:
            seen.add(g)
            out.append(g)
    return out


def _rref_solve(basis_vectors: list, target: dict, n: int) -> bool:
    """Whether target (primitive-coeff dict) lies in the span of basis_vectors."""
    keys = sorted({k for v in basis_vectors for k in v} | set(target), key=lambda g: g.rank())
    rows = [[v.get(k, ZERO) for k in keys] for v in basis_vectors]
    tgt = [target.get(k, ZERO) for k in keys]
    # gaussian elimination over the exact scalar field
    pivots = []
    r = 0
    for col in range(len(keys)):
        pivot = None
        for rr in range(r, len(rows)):
            if not rows[rr][col].is_zero():
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and not rows[rr][col].is_zero():
                f = rows[rr][col]
                rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    # reduce target
    for rr, col in enumerate(pivots):
        if not tgt[col].is_zero():
            f = tgt[col]
            tgt = [x - f * y for x, y in zip(tgt, rows[rr])]
    return all(x.is_zero() for x in tgt)


def poincare_closure_defect(selector: str, n: int = 3) -> list:
    """Pairs whose bracket escapes span(set + I); empty means closed."""
    gens = poincare_subalgebra(selector, n)
    span = [to_primitive(AlgebraElement.single(n, g)).terms for g in gens]
    span.append({gen("I"): ONE})
    bad = []
    for g1, g2 in combinations(gens, 2):
        br = bracket(AlgebraElement.single(n, g1), AlgebraElement.single(n, g2))
        if not _rref_solve(span, br.terms, n):
            bad.append((g1, g2, str(br)))
    return bad
