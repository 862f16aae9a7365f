"""Aggregated invariant suites for every module, driven by a fixed manifest.

Each manifest entry runs one module invariant at its pinned tolerance and
reports the measured deviation; the `verify` front end fails if any entry
fails or if an entry is silently skipped (the runner walks the manifest).
"""

from __future__ import annotations

import math
from itertools import combinations_with_replacement

import numpy as np
import scipy.linalg

from . import algebra, fieldeq, fock, gelfand, groups, kinematics
from .algebra import AlgebraElement, eta, gen
from .operators import commutator

__all__ = ["MANIFEST", "run_suite", "run_all"]


def _result(name, desc, deviation, tol, detail=""):
    return {
        "name": name,
        "description": desc,
        "deviation": float(deviation),
        "tolerance": float(tol),
        "passed": bool(deviation <= tol),
        "detail": detail,
    }


# ---------------------------------------------------------------------------
# lie-core
# ---------------------------------------------------------------------------

def check_lie_jacobi(cfg):
    ns = [n for n in (1, 2, 3) if n <= cfg["n_alg"]]
    bad = 0
    for n in ns:
        for basis in ("real", "complex"):
            bad += len(algebra.jacobi_violations(n, basis))
    return _result("lie.jacobi", "antisymmetry and Jacobi exact, both bases",
                   bad, 0, f"n in {ns}")


def check_lie_complex_table(cfg):
    """Change-of-basis table: Gaussian-rational entries with the [Z,A] index
    placement that survives the Jacobi identity."""
    n = min(cfg["n_alg"], 2)
    table = algebra.structure_constant_table(n, "complex")
    bad = 0
    for (g1, g2), elem in table.items():
        for g, c in elem.terms.items():
            if not c.is_gaussian_rational():
                bad += 1
    # spot targets
    def expect(g1, g2, want):
        got = algebra.table_lookup(table, g1, g2, n)
        diff = got - want
        return 0 if diff.is_zero() else 1

    i = algebra.Scalar.i
    bad += expect(gen("Ap", 0), gen("Am", 0),
                  AlgebraElement.single(n, gen("I"), i(-1)))
    bad += expect(gen("Ap", 1), gen("Am", 1),
                  AlgebraElement.single(n, gen("I"), i(1)))
    bad += expect(gen("Z", 0, 1), gen("Ap", 1),
                  AlgebraElement.single(n, gen("Ap", 0), i(-1)))
    bad += expect(gen("Z", 0, 1), gen("Am", 0),
                  AlgebraElement.single(n, gen("Am", 1), i(-1)))
    want = AlgebraElement.single(n, gen("Z", 0, 0), i(-1)) + \
        AlgebraElement.single(n, gen("Z", 1, 1), i(-1))
    bad += expect(gen("Z", 0, 1), gen("Z", 1, 0), want)
    return _result("lie.complex_table", "complex table Gaussian-rational + spot brackets",
                   bad, 0)


def check_lie_zhat_trace(cfg):
    n = cfg["n_alg"]
    acc = AlgebraElement.zero(n)
    for a in range(n + 1):
        acc = acc + AlgebraElement.single(n, gen("Zhat", a, a), eta(a, a))
    return _result("lie.zhat_traceless", "eta contraction of Zhat vanishes",
                   0 if algebra.to_primitive(acc).is_zero() else 1, 0)


def check_lie_casimir_commutes(cfg):
    n = min(cfg["n_alg"], 2)
    table = algebra.structure_constant_table(n, "complex")
    bad = 0
    for beta in (1, 2):
        d = algebra.unitary_casimir_element(beta, n)
        if not d.commutator(algebra.EnvelopingPoly.from_word(n, (gen("I"),))).normal_order(table).is_zero():
            bad += 1
        for alpha in (1, 2):
            c = algebra.casimir_element(alpha, n)
            if not d.commutator(c).normal_order(table).is_zero():
                bad += 1
    return _result("lie.d_central", "[D_beta, C_2alpha] and [D_beta, I] normal-order to 0",
                   bad, 0, f"n={n}, beta,alpha <= 2")


def check_lie_quads(cfg):
    bad = 0
    for sel in ("velocity-EP", "velocity-TQ", "force-EQ", "force-TP"):
        bad += len(algebra.poincare_closure_defect(sel))
    return _result("lie.quad_closure", "all four Poincare subalgebras close", bad, 0)


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def check_group_axioms(cfg):
    rng = np.random.default_rng(cfg["seed"])
    n, trials = 2, cfg["group_trials"]
    worst = 0.0
    for _ in range(trials):
        h1, h2, h3 = (groups.random_heisenberg(n, rng) for _ in range(3))
        a = groups.h_compose(groups.h_compose(h1, h2), h3)
        b = groups.h_compose(h1, groups.h_compose(h2, h3))
        worst = max(worst, np.max(np.abs(a.w - b.w)), abs(a.iota - b.iota))
        for left in (groups.h_compose(h1, groups.h_inverse(h1)),
                     groups.h_compose(groups.h_inverse(h1), h1)):
            worst = max(worst, np.max(np.abs(left.w)), abs(left.iota))
        a1, a2, a3 = (groups.random_automorphism(n, rng) for _ in range(3))
        x = groups.aut_compose(groups.aut_compose(a1, a2), a3)
        y = groups.aut_compose(a1, groups.aut_compose(a2, a3))
        worst = max(worst, np.max(np.abs(x.A - y.A)), np.max(np.abs(x.w - y.w)),
                    abs(x.iota - y.iota), abs(x.epsilon - y.epsilon))
        ii = groups.aut_compose(a1, groups.aut_inverse(a1))
        worst = max(worst, np.max(np.abs(ii.A - np.eye(2 * (n + 1)))),
                    np.max(np.abs(ii.w)), abs(ii.iota), abs(ii.epsilon - 1))
        g1, g2, g3 = (groups.random_quaplectic(n, rng) for _ in range(3))
        p = groups.q_compose(groups.q_compose(g1, g2), g3)
        q = groups.q_compose(g1, groups.q_compose(g2, g3))
        worst = max(worst, np.max(np.abs(p.Upsilon - q.Upsilon)),
                    np.max(np.abs(p.z - q.z)), abs(p.iota - q.iota))
        e = groups.q_compose(g1, groups.q_inverse(g1))
        worst = max(worst, np.max(np.abs(e.Upsilon - np.eye(n + 1))),
                    np.max(np.abs(e.z)), abs(e.iota))
    return _result("groups.axioms", "associativity/identity/inverse, all three groups",
                   worst, 1e-12, f"{trials} seeded trials, n=2")


def check_group_intersection(cfg):
    rng = np.random.default_rng(cfg["seed"] + 1)
    n = 2
    worst = 0.0
    for _ in range(cfg["group_trials"]):
        U = groups.random_pseudo_unitary(n, rng)
        rep = groups.check_membership(U)
        worst = max(worst, rep["symplectic_defect"], rep["orthogonal_defect"],
                    rep["pseudo_unitary_defect"])
    return _result("groups.intersection", "pseudo-unitary implies symplectic + orthogonal",
                   worst, 1e-10)


def check_group_aut_hom(cfg):
    rng = np.random.default_rng(cfg["seed"] + 2)
    n = 2
    worst = 0.0
    for _ in range(cfg["group_trials"]):
        a = groups.random_automorphism(n, rng)
        h1, h2 = groups.random_heisenberg(n, rng), groups.random_heisenberg(n, rng)
        lhs = groups.aut_act(a, groups.h_compose(h1, h2))
        rhs = groups.h_compose(groups.aut_act(a, h1), groups.aut_act(a, h2))
        worst = max(worst, np.max(np.abs(lhs.w - rhs.w)), abs(lhs.iota - rhs.iota))
    return _result("groups.aut_homomorphism", "action of a product = composition of actions",
                   worst, 1e-10)


def check_group_inner(cfg):
    rng = np.random.default_rng(cfg["seed"] + 3)
    n = 2
    z = groups.zeta_hat(n)
    worst = 0.0
    for _ in range(cfg["group_trials"]):
        outer, inner = groups.random_heisenberg(n, rng), groups.random_heisenberg(n, rng)
        conj = groups.h_conjugate(outer, inner)
        worst = max(worst, np.max(np.abs(conj.w - inner.w)),
                    abs(conj.iota - inner.iota - 2.0 * (outer.w @ z @ inner.w)))
    return _result("groups.inner_shift", "conjugation shifts only the center, by 2 w.zeta.w",
                   worst, 1e-12)


# ---------------------------------------------------------------------------
# kinematics
# ---------------------------------------------------------------------------

def check_kin_exp(cfg):
    rng = np.random.default_rng(cfg["seed"] + 4)
    k = kinematics.PhysicalConstants(c=1.3, b=0.7, hbar=1.1)
    worst = 0.0
    for _ in range(cfg["group_trials"]):
        beta = rng.normal(size=3, scale=0.7)
        gamma = rng.normal(size=3, scale=0.7)
        if math.sqrt(float(np.sum(beta ** 2 + gamma ** 2))) > 3:
            continue
        M = kinematics.infinitesimal_transform(
            kinematics.BoostParams(beta=tuple(beta), gamma=tuple(gamma)), k)
        worst = max(worst, float(np.max(np.abs(
            kinematics.pure_boost(beta, gamma, k) - scipy.linalg.expm(M)))))
    return _result("kinematics.exp", "pure boost = matrix exponential, omega <= 3",
                   worst, 1e-8)


def check_kin_limits(cfg):
    k = kinematics.PhysicalConstants(c=1.3, b=0.7)
    beta, gamma = (0.3, -0.2, 0.5), (0.1, 0.4, -0.3)
    d1 = np.max(np.abs(kinematics.pure_boost(beta, (0, 0, 0), k)
                       - kinematics.velocity_boost(beta, k)))
    d2 = np.max(np.abs(kinematics.pure_boost((0, 0, 0), gamma, k)
                       - kinematics.force_boost(gamma, k)))
    return _result("kinematics.limits", "gamma=0 and beta=0 limits match the reference boosts",
                   max(d1, d2), 1e-14)


def check_kin_born(cfg):
    rng = np.random.default_rng(cfg["seed"] + 5)
    k = kinematics.PhysicalConstants(c=1.3, b=0.7)
    worst = 0.0
    for _ in range(cfg["group_trials"]):
        B = kinematics.pure_boost(rng.normal(size=3, scale=0.6),
                                  rng.normal(size=3, scale=0.6), k)
        v = rng.normal(size=8, scale=2.0)
        worst = max(worst, abs(kinematics.born_form(B @ v, k) - kinematics.born_form(v, k)))
    return _result("kinematics.born", "phase-space quadratic form invariant under boosts",
                   worst, 1e-10)


def check_kin_units(cfg):
    k = kinematics.PhysicalConstants(c=2.1, b=0.4, hbar=1.7)
    beta, gamma = (0.3, 0.1, -0.2), (0.2, -0.4, 0.1)
    D = kinematics.phase_scale_matrix(k)
    B = kinematics.pure_boost(beta, gamma, k)
    Bn = kinematics.pure_boost(beta, gamma, kinematics.PhysicalConstants())
    dev = float(np.max(np.abs(np.linalg.solve(D, B @ D) - Bn)))
    lt, lq, lp, le = kinematics.planck_scales(k)
    dev = max(dev, abs(lq * lp - k.hbar), abs(lt * le - k.hbar),
              abs(lq / lt - k.c), abs(lp / lt - k.b))
    return _result("kinematics.units", "Planck-scale rescaling covariance + scale identities",
                   dev, 1e-12)


# ---------------------------------------------------------------------------
# fock
# ---------------------------------------------------------------------------

def check_fock_commutators(cfg):
    res = fock.commutator_suite(cfg["n"], cfg["nmax"], s=cfg["s"])
    return _result("fock.commutators", "represented pairwise commutators incl. 1/s factors",
                   res["max_deviation"], 1e-10, f"n={cfg['n']} nmax={cfg['nmax']} s={cfg['s']}")


def check_fock_oracle(cfg):
    basis = fock.build_basis(min(cfg["n"], 2), max(cfg["nmax"], 12))
    worst, exact = 0.0, True
    for a in range(basis.n + 1):
        for sign in "+-":
            lop = fock.ladder_op(a, sign, basis)
            hop = fock.hermite_oracle_op(a, sign, basis)
            worst = max(worst, (lop - hop).max_abs())
            exact = exact and (lop.radicands == hop.radicands)
    return _result("fock.oracle", "ladder vs Hermite-recurrence oracle, entrywise + exact radicands",
                   worst if exact else 1.0, 1e-12)


def check_fock_grading(cfg):
    params = fock.RepresentationParams(c=1.0, s=cfg["s"])
    basis = fock.build_basis(cfg["n"], cfg["nmax"])
    cols = fock.interior_indices(basis, 2)
    kdiag = fock.k_grading_diagonal(basis)
    worst = 0.0
    for a in range(basis.n + 1):
        for b in range(basis.n + 1):
            rz = fock.rho_Z_op(a, b, params, basis)
            worst = max(worst, commutator(rz, kdiag).deviation_on(cols))
    return _result("fock.grading", "every rho'(Z) commutes with the k-grading diagonal",
                   worst, 1e-10)


def check_fock_hermiticity(cfg):
    basis = fock.build_basis(cfg["n"], cfg["nmax"])
    worst = 0.0
    for a in range(basis.n + 1):
        worst = max(worst, (fock.ladder_op(a, "+", basis).dagger()
                            - fock.ladder_op(a, "-", basis)).max_abs())
    return _result("fock.hermiticity", "ladder(a,+) is the adjoint of ladder(a,-)",
                   worst, 1e-12)


# ---------------------------------------------------------------------------
# gelfand
# ---------------------------------------------------------------------------

def _labels(m, lo=-2, hi=3):
    vals = range(hi, lo - 1, -1)
    return [lab for lab in combinations_with_replacement(vals, m)]


def check_gt_compact(cfg):
    worst = 0.0
    for m in (2, 3):
        for lab in _labels(m) if cfg["gt_full"] else [(1, 0), (2, 1, 0)][m - 2:m - 1]:
            basis = gelfand.enumerate_patterns(lab)
            worst = max(worst, gelfand.relations_defect(basis))
    return _result("gelfand.compact_relations", "compact u(2)/u(3) commutation oracle",
                   worst, 1e-10)


def check_gt_counts(cfg):
    bad = 0
    for m in (2, 3):
        for lab in _labels(m):
            if gelfand.enumerate_patterns(lab).dim != gelfand.weyl_dimension(lab):
                bad += 1
    return _result("gelfand.counts", "pattern counts equal the Weyl dimension oracle", bad, 0)


def check_gt_schur(cfg):
    worst = 0.0
    for lab in ((1, 0), (2, 1, 0), (2, 1, -1)):
        basis = gelfand.enumerate_patterns(lab)
        _, dev = gelfand.casimir_scalar_check(2, basis)
        worst = max(worst, dev)
    return _result("gelfand.schur", "represented D_2 is scalar on compact irreps",
                   worst, 1e-10)


def check_gt_noncompact(cfg):
    worst = 0.0
    for lab, w in (((1, 0), 5), ((1, 0, 0), 4)):
        basis = gelfand.enumerate_patterns(lab, compact=False, window=w)
        worst = max(worst, gelfand.relations_defect(basis, margin=2))
    return _result("gelfand.noncompact_relations", "windowed u(1,n) oracle on interiors",
                   worst, 1e-10)


# ---------------------------------------------------------------------------
# field-eq
# ---------------------------------------------------------------------------

def _product_interior(sigma_dim, basis, margin):
    cols = fock.interior_indices(basis, margin)
    return [s * basis.dim + c for s in range(sigma_dim) for c in cols]


def check_fe_translation(cfg):
    n = min(cfg["n"], 2)
    params = fock.RepresentationParams(c=cfg["s"], s=cfg["s"])  # c = s surface
    basis = fock.build_basis(n, cfg["nmax"])
    sigma = gelfand.enumerate_patterns((1,) + (0,) * n, compact=False, window=3)
    cols = _product_interior(sigma.dim, basis, 3)
    worst_full, worst_neg = 0.0, np.inf
    for a in range(n + 1):
        for b in range(n + 1):
            t_aa, t_iz = fieldeq.w_op_parts(a, b, sigma, basis, params)
            full = t_aa - t_iz
            neg_a = neg_z = 0.0
            for cdx in range(n + 1):
                for kind in ("Ap", "Am"):
                    lad = fieldeq.represented_on_product(gen(kind, cdx), sigma, basis, params)
                    worst_full = max(worst_full, commutator(full, lad).deviation_on(cols))
                    neg_a = max(neg_a, commutator(t_aa, lad).deviation_on(cols))
                    neg_z = max(neg_z, commutator(t_iz, lad).deviation_on(cols))
            worst_neg = min(worst_neg, max(neg_a, neg_z))
    passed_neg = worst_neg > 0.1
    dev = worst_full if passed_neg else 1.0
    return _result("fieldeq.translation", "W invariance at c=s; either summand alone breaks it",
                   dev, 1e-10, f"negative control min {worst_neg:.3f}")


def check_fe_centrality(cfg):
    n = min(cfg["n"], 2)
    params = fock.RepresentationParams(c=cfg["s"], s=cfg["s"])
    basis = fock.build_basis(n, cfg["nmax"])
    worst = 0.0
    for sigma in (fieldeq.trivial_sigma_basis(n),
                  gelfand.enumerate_patterns((1,) + (0,) * n, compact=False, window=3)):
        op = fieldeq.rho_casimir_op(1, sigma, basis, params)
        cols = _product_interior(getattr(sigma, "dim", 1), basis, 4)
        gens = [gen("Ap", a) for a in range(n + 1)] + [gen("Am", a) for a in range(n + 1)]
        gens += [gen("Z", a, b) for a in range(n + 1) for b in range(n + 1)]
        for g in gens:
            X = fieldeq.represented_on_product(g, sigma, basis, params)
            worst = max(worst, commutator(op.matrix, X).deviation_on(cols))
    return _result("fieldeq.centrality", "C_2 commutes with every represented generator",
                   worst, 1e-10)


def check_fe_reduction(cfg):
    rep = fieldeq.reduction_cross_check(min(cfg["n"], 2), cfg["nmax"], s=2.0, c=1.0)
    worst = max((row["defect"] for row in rep["rows"]), default=0.0)
    # report-only layer: the identity wiring must close, the reading itself
    # is not asserted beyond it
    return _result("fieldeq.reduction_crosscheck", "beta=1 reduction wiring on joint eigenstates",
                   worst, 1e-10, "informational cross-check")


def check_fe_oscillator(cfg):
    worst = 0.0
    for n in (1, 2, 3):
        res = fieldeq.oscillator_spectrum(n, 8)
        worst = max(worst, res.metadata["grading_check"])
    a, c = fieldeq.quantization(2.0)
    worst = max(worst, abs(a - 1.0), abs(c - 2.0))
    return _result("fieldeq.oscillator", "spectrum exactly 2k + n - 1; quantization map",
                   worst, 1e-12)


def check_fe_compact(cfg):
    sigma = gelfand.enumerate_patterns((1, 0))
    worst = 0.0
    ok = True
    for k in (1, 2, 3):
        block = fieldeq.compact_block(2, k)
        O = fieldeq.field_operator_compact(2, sigma, block)
        worst = max(worst, O.hermiticity_defect())
        res = fieldeq.solve_spectrum(O, hermiticity_tol=1e-12)
        for p in range(1, 3):
            for q in range(1, 3):
                T = fieldeq.compact_total_action(sigma, block, p, q)
                worst = max(worst, commutator(O, T).max_abs())
        mults = sorted(m for _, m in res.clusters(1e-8))
        ok = ok and all(m in (k, k + 2, 2 * k + 2) for m in mults)
    return _result("fieldeq.compact", "compact field operator: Hermitian, invariant, u(n) multiplicities",
                   worst if ok else 1.0, 1e-10)


def check_weyl(cfg):
    basis = fock.build_basis(0, 40)
    params = fock.RepresentationParams(c=1.0, s=1.0)
    h1 = groups.HeisenbergElement(np.array([0.7, 0.0]), 0.0)
    h2 = groups.HeisenbergElement(np.array([0.0, 0.8]), 0.0)
    U1 = fock.rep_group_element(h1, params, basis)
    U2 = fock.rep_group_element(h2, params, basis)
    U1i = fock.rep_group_element(groups.h_inverse(h1), params, basis)
    U2i = fock.rep_group_element(groups.h_inverse(h2), params, basis)
    Uc = U1 @ U2 @ U1i @ U2i
    z = groups.zeta_hat(0)
    phase = 2.0 * params.c * float(h1.w @ z @ h2.w)
    inner = [i for i, K in enumerate(basis.states) if K[0] <= 12]
    block = Uc[np.ix_(inner, inner)]
    dev = float(np.max(np.abs(block - np.exp(1j * phase) * np.eye(len(inner)))))
    u12 = fock.rep_group_element(groups.h_compose(h1, h2), params, basis)
    dev = max(dev, float(np.max(np.abs((U1 @ U2 - u12)[np.ix_(inner, inner)]))))
    col = np.linalg.norm(U1[:, inner], axis=0)
    dev_unitary = float(np.max(np.abs(col - 1.0)))
    return _result("fock.weyl", "Weyl phase matches the group cocycle; unitary on interior",
                   max(dev, dev_unitary if dev_unitary > 1e-8 else 0.0), 1e-6)


MANIFEST = [
    ("lie.jacobi", check_lie_jacobi),
    ("lie.complex_table", check_lie_complex_table),
    ("lie.zhat_traceless", check_lie_zhat_trace),
    ("lie.d_central", check_lie_casimir_commutes),
    ("lie.quad_closure", check_lie_quads),
    ("groups.axioms", check_group_axioms),
    ("groups.intersection", check_group_intersection),
    ("groups.aut_homomorphism", check_group_aut_hom),
    ("groups.inner_shift", check_group_inner),
    ("kinematics.exp", check_kin_exp),
    ("kinematics.limits", check_kin_limits),
    ("kinematics.born", check_kin_born),
    ("kinematics.units", check_kin_units),
    ("fock.commutators", check_fock_commutators),
    ("fock.oracle", check_fock_oracle),
    ("fock.grading", check_fock_grading),
    ("fock.hermiticity", check_fock_hermiticity),
    ("fock.weyl", check_weyl),
    ("gelfand.compact_relations", check_gt_compact),
    ("gelfand.counts", check_gt_counts),
    ("gelfand.schur", check_gt_schur),
    ("gelfand.noncompact_relations", check_gt_noncompact),
    ("fieldeq.translation", check_fe_translation),
    ("fieldeq.centrality", check_fe_centrality),
    ("fieldeq.reduction_crosscheck", check_fe_reduction),
    ("fieldeq.oscillator", check_fe_oscillator),
    ("fieldeq.compact", check_fe_compact),
]


def default_config(**overrides) -> dict:
    cfg = {
        "n": 1,
        "nmax": 8,
        "s": 2.0,
        "seed": 0,
        "n_alg": 2,
        "group_trials": 50,
        "gt_full": False,
    }
    cfg.update(overrides)
    return cfg


def run_suite(name: str, cfg: dict) -> dict:
    for key, fn in MANIFEST:
        if key == name:
            return fn(cfg)
    raise KeyError(name)


def run_all(cfg: dict | None = None) -> list:
    cfg = cfg or default_config()
    results = []
    ran = set()
    for name, fn in MANIFEST:
        results.append(fn(cfg))
        ran.add(name)
    missing = {name for name, _ in MANIFEST} - ran
    if missing:
        raise RuntimeError(f"manifest entries not executed: {missing}")
    return results
