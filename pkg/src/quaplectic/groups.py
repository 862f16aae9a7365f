"""Heisenberg group, its linear automorphisms, and the quaplectic group in complex form.

Group arithmetic is plain double precision; elements typically come from
exponentials, so exact-law checks are asserted to 1e-12 rather than exactly.

Conventions worth knowing:

* The hatted symplectic form zeta_hat = [[0, eta], [-eta, 0]] is the default;
  the canonical form [[0, I], [-I, 0]] exists for the basis-change
  automorphism only.
* The quaplectic composition transports the right factor's translation
  through the left factor (z -> z~ + Upsilon~ z) and evaluates the central
  cocycle on the transported pair, which is what makes the stated inverse
  (Upsilon^-1, -Upsilon^-1 z, -iota) exact on both sides.
* The (n+3) x (n+3) complex realization stores the translation column in
  right-action coordinates; products of realizations then reproduce the
  composition law in the Upsilon and translation blocks, while the bottom
  rows carry a different central parametrization and are not compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HeisenbergElement",
    "AutomorphismElement",
    "QuaplecticElement",
    "eta_matrix",
    "zeta_canonical",
    "zeta_hat",
    "h_compose",
    "h_inverse",
    "h_conjugate",
    "aut_act",
    "aut_compose",
    "aut_inverse",
    "q_compose",
    "q_inverse",
    "q_to_matrix",
    "q_identity",
    "check_membership",
    "realify",
    "random_heisenberg",
    "random_automorphism",
    "random_symplectic",
    "random_pseudo_unitary",
    "random_quaplectic",
    "element_to_text",
    "element_from_text",
]


def eta_matrix(n: int) -> np.ndarray:
    e = np.eye(n + 1)
    e[0, 0] = -1.0
    return e


def zeta_canonical(n: int) -> np.ndarray:
    m = n + 1
    z = np.zeros((2 * m, 2 * m))
    z[:m, m:] = np.eye(m)
    z[m:, :m] = -np.eye(m)
    return z


def zeta_hat(n: int) -> np.ndarray:
    m = n + 1
    e = eta_matrix(n)
    z = np.zeros((2 * m, 2 * m))
    z[:m, m:] = e
    z[m:, :m] = -e
    return z


def _zeta(n: int, form: str) -> np.ndarray:
    if form == "hatted":
        return zeta_hat(n)
    if form == "canonical":
        return zeta_canonical(n)
    raise ValueError("metric_form must be 'hatted' or 'canonical'")


# ---------------------------------------------------------------------------
# Heisenberg group
# ---------------------------------------------------------------------------

@dataclass
class HeisenbergElement:
    """h(w, iota) with w in R^{2(n+1)}; composition law fixed by metric_form."""

    w: np.ndarray
    iota: float
    metric_form: str = "hatted"

    def __post_init__(self):
        self.w = np.asarray(self.w, dtype=float)
        if self.w.ndim != 1 or self.w.size % 2:
            raise ValueError("w must be a vector of even length")

    @property
    def n(self) -> int:
        return self.w.size // 2 - 1

    @staticmethod
    def identity(n: int, metric_form: str = "hatted") -> "HeisenbergElement":
        return HeisenbergElement(np.zeros(2 * (n + 1)), 0.0, metric_form)


def h_compose(h1: HeisenbergElement, h2: HeisenbergElement) -> HeisenbergElement:
    """h1 . h2 with central part iota1 + iota2 + w1.zeta.w2 (left factor first)."""
    if h1.n != h2.n:
        raise ValueError("dimension mismatch")
    if h1.metric_form != h2.metric_form:
        raise ValueError("cannot mix symplectic forms")
    z = _zeta(h1.n, h1.metric_form)
    iota = h1.iota + h2.iota + h1.w @ z @ h2.w
    return HeisenbergElement(h1.w + h2.w, iota, h1.metric_form)


def h_inverse(h: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(-h.w, -h.iota, h.metric_form)


def h_conjugate(outer: HeisenbergElement, inner: HeisenbergElement) -> HeisenbergElement:
    """Inner automorphism: shifts only the central coordinate, by 2 w_out.zeta.w_in."""
    return h_compose(h_compose(outer, inner), h_inverse(outer))


# ---------------------------------------------------------------------------
# automorphism group HSp(n+1) (continuous component, plus sign)
# ---------------------------------------------------------------------------

@dataclass
class AutomorphismElement:
    """a(eps, A, w, iota): A symplectic, eps nonzero real."""

    A: np.ndarray
    w: np.ndarray
    iota: float
    epsilon: float = 1.0
    metric_form: str = "hatted"

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.w = np.asarray(self.w, dtype=float)
        if self.epsilon == 0.0:
            raise ValueError("epsilon must be nonzero")

    @property
    def n(self) -> int:
        return self.w.size // 2 - 1

    @staticmethod
    def identity(n: int, metric_form: str = "hatted") -> "AutomorphismElement":
        m = 2 * (n + 1)
        return AutomorphismElement(np.eye(m), np.zeros(m), 0.0, 1.0, metric_form)

    def symplectic_defect(self) -> float:
        z = _zeta(self.n, self.metric_form)
        return float(np.max(np.abs(self.A.T @ z @ self.A - z)))


def aut_act(a: AutomorphismElement, h: HeisenbergElement) -> HeisenbergElement:
    """h -> h(eps A w, eps^2 (iota + 2 w.zeta.w_a))."""
    if a.n != h.n:
        raise ValueError("dimension mismatch")
    if a.metric_form != h.metric_form:
        raise ValueError("cannot mix symplectic forms")
    if a.epsilon == 0.0:
        raise ValueError("epsilon must be nonzero")
    z = _zeta(h.n, h.metric_form)
    w_new = a.epsilon * (a.A @ h.w)
    iota_new = a.epsilon ** 2 * (h.iota + 2.0 * (h.w @ z @ a.w))
    return HeisenbergElement(w_new, iota_new, h.metric_form)


def aut_compose(a1: AutomorphismElement, a2: AutomorphismElement) -> AutomorphismElement:
    """a1 . a2: (eps1 eps2, A1 A2, w2 + A2^-1 w1/eps2, iota2 + iota1/eps2^2 + w1.zeta.A2.w2/eps2)."""
    if a1.n != a2.n or a1.metric_form != a2.metric_form:
        raise ValueError("incompatible automorphisms")
    z = _zeta(a1.n, a1.metric_form)
    inv_eps = 1.0 / a2.epsilon
    A2inv = np.linalg.solve(a2.A, np.eye(a2.A.shape[0]))
    w = a2.w + inv_eps * (A2inv @ a1.w)
    iota = a2.iota + inv_eps ** 2 * a1.iota + inv_eps * (a1.w @ z @ a2.A @ a2.w)
    return AutomorphismElement(a1.A @ a2.A, w, iota, a1.epsilon * a2.epsilon, a1.metric_form)


def aut_inverse(a: AutomorphismElement) -> AutomorphismElement:
    Ainv = np.linalg.solve(a.A, np.eye(a.A.shape[0]))
    return AutomorphismElement(Ainv, -a.epsilon * (a.A @ a.w),
                               -a.epsilon ** 2 * a.iota, 1.0 / a.epsilon, a.metric_form)


# ---------------------------------------------------------------------------
# quaplectic group
# ---------------------------------------------------------------------------

@dataclass
class QuaplecticElement:
    """g(Upsilon, z, iota) with Upsilon pseudo-unitary to working precision."""

    Upsilon: np.ndarray
    z: np.ndarray
    iota: float

    def __post_init__(self):
        self.Upsilon = np.asarray(self.Upsilon, dtype=complex)
        self.z = np.asarray(self.z, dtype=complex)

    @property
    def n(self) -> int:
        return self.z.size - 1

    def pseudo_unitarity_defect(self) -> float:
        e = eta_matrix(self.n)
        return float(np.max(np.abs(self.Upsilon.conj().T @ e @ self.Upsilon - e)))


def q_identity(n: int) -> QuaplecticElement:
    return QuaplecticElement(np.eye(n + 1, dtype=complex), np.zeros(n + 1, dtype=complex), 0.0)


def q_compose(g1: QuaplecticElement, g2: QuaplecticElement) -> QuaplecticElement:
    """g1 . g2 = (U1 U2, z1 + U1 z2, iota cocycle on the transported pair)."""
    if g1.n != g2.n:
        raise ValueError("dimension mismatch")
    e = eta_matrix(g1.n)
    w = g1.Upsilon @ g2.z
    cocycle = 0.5j * (np.conj(w) @ e @ g1.z - np.conj(g1.z) @ e @ w)
    iota = g1.iota + g2.iota + cocycle.real
    return QuaplecticElement(g1.Upsilon @ g2.Upsilon, g1.z + w, iota)


def q_inverse(g: QuaplecticElement) -> QuaplecticElement:
    Uinv = np.linalg.solve(g.Upsilon, np.eye(g.n + 1, dtype=complex))
    return QuaplecticElement(Uinv, -(Uinv @ g.z), -g.iota)


def q_to_matrix(g: QuaplecticElement) -> np.ndarray:
    """(n+3) x (n+3) complex realization [[U, 0, U z_r], [conj(z_r), 1, iota], [0, 0, 1]].

    The translation column holds the right-action coordinate z_r =
    Upsilon^-1 z, i.e. the column equals z itself; products of realizations
    then agree with q_compose on the Upsilon block and translation column.
    """
    m = g.n + 1
    out = np.zeros((m + 2, m + 2), dtype=complex)
    out[:m, :m] = g.Upsilon
    out[:m, m + 1] = g.z
    z_right = np.linalg.solve(g.Upsilon, g.z)
    out[m, :m] = np.conj(z_right)
    out[m, m] = 1.0
    out[m, m + 1] = g.iota
    out[m + 1, m + 1] = 1.0
    return out


def realify(Upsilon: np.ndarray) -> np.ndarray:
    """Upsilon = Lambda + i M into the 2(n+1) block form [[L, M], [-M, L]]."""
    L, M = Upsilon.real, Upsilon.imag
    return np.block([[L, M], [-M, L]])


def check_membership(Upsilon: np.ndarray, tol: float = 1e-10) -> dict:
    """Pseudo-unitary / symplectic / orthogonal membership report.

    U(1,n) = O(2,2n) intersect Sp(2n+2): the realified matrix must satisfy
    both the zeta_hat symplectic condition and the (eta + eta)-orthogonal
    condition whenever Upsilon is pseudo-unitary.
    """
    Upsilon = np.asarray(Upsilon, dtype=complex)
    if Upsilon.ndim != 2 or Upsilon.shape[0] != Upsilon.shape[1]:
        raise ValueError("Upsilon must be square")
    n = Upsilon.shape[0] - 1
    e = eta_matrix(n)
    A = realify(Upsilon)
    zh = zeta_hat(n)
    G = np.block([[e, np.zeros_like(e)], [np.zeros_like(e), e]])
    pu = float(np.max(np.abs(Upsilon.conj().T @ e @ Upsilon - e)))
    sy = float(np.max(np.abs(A.T @ zh @ A - zh)))
    orth = float(np.max(np.abs(A.T @ G @ A - G)))
    return {
        "pseudo_unitary": pu <= tol,
        "symplectic": sy <= tol,
        "orthogonal": orth <= tol,
        "pseudo_unitary_defect": pu,
        "symplectic_defect": sy,
        "orthogonal_defect": orth,
    }


# ---------------------------------------------------------------------------
# random elements (seeded) for the law suites
# ---------------------------------------------------------------------------

def random_heisenberg(n: int, rng, metric_form: str = "hatted") -> HeisenbergElement:
    return HeisenbergElement(rng.normal(size=2 * (n + 1)), float(rng.normal()), metric_form)


def random_symplectic(n: int, rng, scale: float = 0.4) -> np.ndarray:
    m = 2 * (n + 1)
    z = zeta_hat(n)
    S = rng.normal(size=(m, m), scale=scale)
    S = 0.5 * (S + S.T)
    import scipy.linalg
    return scipy.linalg.expm(z @ S)


def random_automorphism(n: int, rng, metric_form: str = "hatted") -> AutomorphismElement:
    A = random_symplectic(n, rng)
    eps = float(np.exp(rng.normal(scale=0.3)))
    return AutomorphismElement(A, rng.normal(size=2 * (n + 1)), float(rng.normal()), eps,
                               metric_form)


def random_pseudo_unitary(n: int, rng, scale: float = 0.5) -> np.ndarray:
    m = n + 1
    H = rng.normal(size=(m, m), scale=scale) + 1j * rng.normal(size=(m, m), scale=scale)
    H = 0.5 * (H + H.conj().T)
    import scipy.linalg
    return scipy.linalg.expm(1j * eta_matrix(n) @ H)


def random_quaplectic(n: int, rng) -> QuaplecticElement:
    U = random_pseudo_unitary(n, rng)
    z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    return QuaplecticElement(U, z, float(rng.normal()))


# ---------------------------------------------------------------------------
# structured-text serialization
# ---------------------------------------------------------------------------

def element_to_text(g: QuaplecticElement) -> str:
    lines = [f"n = {g.n}"]
    m = g.n + 1
    for r in range(m):
        re = " ".join(f"{v:.17g}" for v in g.Upsilon[r].real)
        im = " ".join(f"{v:.17g}" for v in g.Upsilon[r].imag)
        lines.append(f"Upsilon_re[{r}] = {re}")
        lines.append(f"Upsilon_im[{r}] = {im}")
    lines.append("z_re = " + " ".join(f"{v:.17g}" for v in g.z.real))
    lines.append("z_im = " + " ".join(f"{v:.17g}" for v in g.z.imag))
    lines.append(f"iota = {g.iota:.17g}")
    return "\n".join(lines) + "\n"


def element_from_text(text: str) -> QuaplecticElement:
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or "=" not in line:
            continue
        key, val = line.split("=", 1)
        fields[key.strip()] = val.strip()
    n = int(fields["n"])
    m = n + 1
    U = np.zeros((m, m), dtype=complex)
    for r in range(m):
        re = np.fromstring(fields[f"Upsilon_re[{r}]"], sep=" ")
        im = np.fromstring(fields[f"Upsilon_im[{r}]"], sep=" ")
        U[r] = re + 1j * im
    z = np.fromstring(fields["z_re"], sep=" ") + 1j * np.fromstring(fields["z_im"], sep=" ")
    return QuaplecticElement(U, z, float(fields["iota"]))
