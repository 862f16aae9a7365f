"""Deterministic text writers: CSV spectra, structured text, Matrix Market.

Identical inputs must produce byte-identical files, so floats are always
rendered with repr-faithful 17 significant digits and rows are emitted in
a fixed order.
"""

from __future__ import annotations

import os
import tempfile

from .operators import SparseOperator, matrix_market_text

__all__ = [
    "fmt",
    "spectrum_csv",
    "report_text",
    "basis_lines",
    "write_artifacts",
    "matrix_market_text",
]


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _csv_quote(s: str) -> str:
    if any(ch in s for ch in ",\"\n"):
        return '"' + s.replace('"', '""') + '"'
    return s


def spectrum_csv(result) -> str:
    """eigenvalue, multiplicity, residual rows (one per cluster)."""
    lines = ["eigenvalue,multiplicity,residual"]
    clusters = result.clusters()
    pos = 0
    for value, mult in clusters:
        res = max(float(r) for r in result.residuals[pos:pos + mult]) if len(result.residuals) else 0.0
        lines.append(f"{fmt(value)},{mult},{fmt(res)}")
        pos += mult
    return "\n".join(lines) + "\n"


def report_text(pairs) -> str:
    """key = value lines; accepts a dict or an (ordered) pair iterable."""
    items = pairs.items() if isinstance(pairs, dict) else pairs
    return "".join(f"{k} = {fmt(v)}\n" for k, v in items)


def basis_lines(basis) -> str:
    out = [f"n = {basis.n}", f"nmax = {basis.nmax}", f"dim = {basis.dim}"]
    for i, K in enumerate(basis.states):
        out.append(f"{i} " + " ".join(str(k) for k in K))
    return "\n".join(out) + "\n"


def write_artifacts(outdir: str, artifacts: dict) -> list:
    """Atomically write {filename: text}; returns the paths written."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name, content in sorted(artifacts.items()):
        final = os.path.join(outdir, name)
        fd, tmp = tempfile.mkstemp(dir=outdir, prefix=f".{name}.")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(content)
            os.replace(tmp, final)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
        paths.append(final)
    return paths
