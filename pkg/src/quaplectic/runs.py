"""Run handlers shared by the HTTP service and the CLI.

Every handler takes a validated config model and returns (report,
artifacts): a JSON-able report dict plus {filename: text} artifacts that
the caller may write to disk.  Handlers are pure given the config (all
randomness is seeded from it), so identical configs produce byte-identical
artifacts.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from . import algebra, fieldeq, fock, gelfand, kinematics, verify
from .exports import basis_lines, fmt, matrix_market_text, report_text, spectrum_csv
from .operators import SparseOperator

__all__ = [
    "VerifyRequest", "SpectrumRequest", "BoostRequest", "GTRequest", "ExportRequest",
    "RunReport",
    "verify_run", "spectrum_run", "boost_run", "gt_run", "export_run",
]


class _Config(BaseModel):
    n: int = Field(default=1, ge=1)
    nmax: int = Field(default=8, ge=2)
    s: float = 2.0
    c: float = 2.0
    tol: float = Field(default=1e-10, gt=0)
    seed: int = 0

    @field_validator("s")
    @classmethod
    def _s_nonzero(cls, v):
        if v == 0:
            raise ValueError("s must be nonzero")
        return v

    @field_validator("c")
    @classmethod
    def _c_nonzero(cls, v):
        if v == 0:
            raise ValueError("c must be nonzero")
        return v


class VerifyRequest(_Config):
    gt_full: bool = False
    group_trials: int = Field(default=50, ge=1)
    n_alg: int = Field(default=2, ge=1, le=3)


class SpectrumRequest(_Config):
    mode: Literal["oscillator", "compact", "casimir"] = "oscillator"
    sigma_label: tuple[int, ...] = (1, 0)
    beta_order: int = Field(default=2, ge=1)
    k_block: int = Field(default=2, ge=0)
    window: int = Field(default=3, ge=1)
    fmt: Literal["csv", "text"] = "csv"


class BoostRequest(BaseModel):
    beta: tuple[float, float, float] = (0.0, 0.0, 0.0)
    gamma: tuple[float, float, float] = (0.0, 0.0, 0.0)
    c_light: float = Field(default=1.0, gt=0)
    b: float = Field(default=1.0, gt=0)
    hbar: float = Field(default=1.0, gt=0)
    seed: int = 0
    trials: int = Field(default=25, ge=1)
    fmt: Literal["csv", "text"] = "text"


class GTRequest(BaseModel):
    sigma_label: tuple[int, ...] = (1, 0)
    compact: bool = True
    window: Optional[int] = None
    ops: bool = True
    fmt: Literal["mm", "text"] = "text"

    @field_validator("sigma_label")
    @classmethod
    def _non_increasing(cls, v):
        if any(v[i] < v[i + 1] for i in range(len(v) - 1)):
            raise ValueError("sigma label must be non-increasing")
        return v


class ExportRequest(_Config):
    what: Literal["sc-table", "ladder", "rho-z", "u-number", "basis", "gt-sigma"] = "sc-table"
    basis: Literal["real", "complex"] = "real"
    mode_index: int = 0
    sign: Literal["+", "-"] = "+"
    a: int = 0
    b: int = 0
    sigma_label: tuple[int, ...] = (1, 0)
    window: int = 3
    compact: bool = True
    fmt: Literal["mm", "text"] = "mm"


class RunReport(BaseModel):
    ok: bool
    command: str
    report: dict
    artifacts: dict[str, str] = {}


def _label_tag(label) -> str:
    return ",".join(str(x) for x in label)


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def verify_run(req: VerifyRequest) -> RunReport:
    cfg = verify.default_config(n=req.n, nmax=req.nmax, s=req.s, seed=req.seed,
                                group_trials=req.group_trials, gt_full=req.gt_full,
                                n_alg=req.n_alg)
    results = verify.run_all(cfg)
    ok = all(r["passed"] for r in results)
    lines = [("config.n", req.n), ("config.nmax", req.nmax), ("config.s", req.s),
             ("config.seed", req.seed)]
    for r in results:
        status = "pass" if r["passed"] else "FAIL"
        lines.append((r["name"], f"{status} deviation={fmt(r['deviation'])} "
                                 f"tolerance={fmt(r['tolerance'])}"))
    lines.append(("result", "pass" if ok else "FAIL"))
    report = {"passed": ok,
              "failures": [r["name"] for r in results if not r["passed"]],
              "checks": results}
    return RunReport(ok=ok, command="verify", report=report,
                     artifacts={"verify_report.txt": report_text(lines)})


def spectrum_run(req: SpectrumRequest) -> RunReport:
    artifacts = {}
    if req.mode == "oscillator":
        result = fieldeq.oscillator_spectrum(req.n, req.nmax)
        ok = result.metadata["grading_check"] <= req.tol
        manifest = [("mode", "oscillator"), ("n", req.n), ("nmax", req.nmax),
                    ("dimension", result.metadata["dimension"]),
                    ("grading_check", result.metadata["grading_check"])]
    elif req.mode == "compact":
        sigma = gelfand.enumerate_patterns(req.sigma_label)
        block = fieldeq.compact_block(req.n, req.k_block)
        op = fieldeq.field_operator_compact(req.beta_order, sigma, block)
        result = fieldeq.solve_spectrum(op, hermiticity_tol=1e-12,
                                        metadata={"mode": "compact"})
        ok = result.metadata["hermiticity_defect"] <= req.tol
        manifest = [("mode", "compact"), ("n", req.n), ("k_block", req.k_block),
                    ("beta", req.beta_order), ("sigma_label", _label_tag(req.sigma_label)),
                    ("dimension", result.metadata["dimension"]),
                    ("hermiticity_defect", result.metadata["hermiticity_defect"])]
    else:
        sigma = gelfand.enumerate_patterns(req.sigma_label, compact=False, window=req.window)
        fb = fock.build_basis(req.n, req.nmax)
        params = fock.RepresentationParams(c=req.c, s=req.s)
        op = fieldeq.rho_casimir_op(req.beta_order, sigma, fb, params)
        result = fieldeq.solve_spectrum(op, interior_only=True, margin=2 * req.beta_order,
                                        hermiticity_tol=max(req.tol, 1e-10),
                                        metadata={"mode": "casimir"})
        ok = True
        manifest = [("mode", "casimir"), ("n", req.n), ("nmax", req.nmax),
                    ("s", req.s), ("c", req.c), ("beta", req.beta_order),
                    ("sigma_label", _label_tag(req.sigma_label)),
                    ("dimension", result.metadata["dimension"])]
    manifest.append(("distinct_eigenvalues", len(result.clusters())))
    artifacts["spectrum.csv"] = spectrum_csv(result)
    artifacts["run_manifest.txt"] = report_text(manifest)
    report = {"mode": req.mode,
              "distinct": [[lv, m] for lv, m in result.clusters()],
              "metadata": {k: (fmt(v) if isinstance(v, float) else v)
                           for k, v in result.metadata.items()}}
    return RunReport(ok=ok, command="spectrum", report=report, artifacts=artifacts)


def boost_run(req: BoostRequest) -> RunReport:
    k = kinematics.PhysicalConstants(c=req.c_light, b=req.b, hbar=req.hbar)
    B = kinematics.pure_boost(req.beta, req.gamma, k)
    rng = np.random.default_rng(req.seed)
    worst = 0.0
    for _ in range(req.trials):
        v = rng.normal(size=8, scale=2.0)
        worst = max(worst, abs(kinematics.born_form(B @ v, k) - kinematics.born_form(v, k)))
    ok = worst <= 1e-10
    rows = []
    labels = ["T", "E", "Q1", "Q2", "Q3", "P1", "P2", "P3"]
    if req.fmt == "csv":
        lines = ["," + ",".join(labels)]
        for i, lab in enumerate(labels):
            lines.append(lab + "," + ",".join(fmt(float(x)) for x in B[i]))
        artifacts = {"boost_matrix.csv": "\n".join(lines) + "\n"}
    else:
        lines = []
        for i, lab in enumerate(labels):
            lines.append((f"row.{lab}", " ".join(fmt(float(x)) for x in B[i])))
        artifacts = {"boost_matrix.txt": report_text(lines)}
    artifacts["boost_invariance.txt"] = report_text([
        ("beta", " ".join(fmt(x) for x in req.beta)),
        ("gamma", " ".join(fmt(x) for x in req.gamma)),
        ("c", req.c_light), ("b", req.b), ("hbar", req.hbar),
        ("trials", req.trials), ("max_born_defect", worst),
        ("result", "pass" if ok else "FAIL"),
    ])
    report = {"matrix": [[float(x) for x in row] for row in B],
              "max_born_defect": worst, "passed": ok}
    return RunReport(ok=ok, command="boost", report=report, artifacts=artifacts)


def gt_run(req: GTRequest) -> RunReport:
    basis = gelfand.enumerate_patterns(req.sigma_label, compact=req.compact,
                                       window=req.window)
    tag = _label_tag(req.sigma_label)
    artifacts = {f"gt_patterns_{tag}.txt": "\n".join(gelfand.pattern_lines(basis)) + "\n"}
    defect = gelfand.relations_defect(basis, margin=1 if req.compact else 2)
    d1, d2 = gelfand.d_eigenvalues(req.sigma_label, basis)
    report = {"label": list(req.sigma_label), "compact": req.compact,
              "dim": basis.dim, "relations_defect": defect,
              "d1": d1, "d2": None if d2 is None else float(np.real(d2))}
    if req.compact:
        report["weyl_dimension"] = gelfand.weyl_dimension(req.sigma_label)
    if req.ops:
        m = basis.m
        idx = range(1, m + 1) if req.compact else range(0, m)
        for a in idx:
            for b in idx:
                op = gelfand.sigma_general(a, b, basis)
                name = f"gt_sigma_{tag}_{a}_{b}"
                if req.fmt == "mm":
                    artifacts[name + ".mtx"] = matrix_market_text(op, f" sigma(Z_{a}{b}) label {tag}")
                else:
                    dense = op.to_dense()
                    lines = [(f"entry.{i}.{j}", dense[i, j]) for i in range(basis.dim)
                             for j in range(basis.dim) if dense[i, j] != 0]
                    artifacts[name + ".txt"] = report_text([("label", tag), ("a", a), ("b", b)] + lines)
    ok = defect <= 1e-10
    return RunReport(ok=ok, command="gt", report=report, artifacts=artifacts)


def export_run(req: ExportRequest) -> RunReport:
    artifacts = {}
    report = {"what": req.what}
    if req.what == "sc-table":
        lines = algebra.structure_table_lines(req.n, req.basis)
        artifacts[f"structure_constants_{req.basis}_n{req.n}.txt"] = "\n".join(lines) + "\n"
        report["entries"] = len(lines)
        return RunReport(ok=True, command="export", report=report, artifacts=artifacts)

    fb = fock.build_basis(req.n, req.nmax)
    params = fock.RepresentationParams(c=req.c, s=req.s)
    if req.what == "basis":
        artifacts[f"fock_basis_n{req.n}_N{req.nmax}.txt"] = basis_lines(fb)
        report["dim"] = fb.dim
        return RunReport(ok=True, command="export", report=report, artifacts=artifacts)
    if req.what == "ladder":
        op = fock.ladder_op(req.mode_index, req.sign, fb)
        name = f"ladder_{'p' if req.sign == '+' else 'm'}{req.mode_index}_n{req.n}_N{req.nmax}"
    elif req.what == "rho-z":
        op = fock.rho_Z_op(req.a, req.b, params, fb)
        name = f"rho_z_{req.a}_{req.b}_n{req.n}_N{req.nmax}"
    elif req.what == "u-number":
        op = fock.u_number_op(params, fb)
        name = f"u_number_n{req.n}_N{req.nmax}"
    elif req.what == "gt-sigma":
        basis = gelfand.enumerate_patterns(req.sigma_label, compact=req.compact,
                                           window=None if req.compact else req.window)
        op = gelfand.sigma_general(req.a, req.b, basis)
        name = f"gt_sigma_{_label_tag(req.sigma_label)}_{req.a}_{req.b}"
    else:  # pragma: no cover
        raise ValueError(req.what)
    report["nnz"] = int(op.mat.nnz)
    report["dim"] = op.dim
    if req.fmt == "mm":
        artifacts[name + ".mtx"] = matrix_market_text(op, f" {name}")
    else:
        dense = op.to_dense()
        lines = [(f"entry.{i}.{j}", dense[i, j]) for i in range(op.dim)
                 for j in range(op.dim) if dense[i, j] != 0]
        artifacts[name + ".txt"] = report_text([("name", name)] + lines)
    return RunReport(ok=True, command="export", report=report, artifacts=artifacts)
