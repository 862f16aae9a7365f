"""Command-line front end: a thin client over the run handlers.

Subcommands: verify, spectrum, boost, gt, export, serve.  Config precedence
is flags > config file (flat key=value lines) > defaults.  With --server
the request is POSTed to a running service instead of executing in
process; either way artifacts are written under --out and the exit status
is 0 iff every assertion passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .exports import write_artifacts
from .runs import (BoostRequest, ExportRequest, GTRequest, RunReport,
                   SpectrumRequest, VerifyRequest, boost_run, export_run,
                   gt_run, spectrum_run, verify_run)

_HANDLERS = {
    "verify": (VerifyRequest, verify_run),
    "spectrum": (SpectrumRequest, spectrum_run),
    "boost": (BoostRequest, boost_run),
    "gt": (GTRequest, gt_run),
    "export": (ExportRequest, export_run),
}


def _parse_vector(text: str, length: int | None = None):
    vals = tuple(float(x) for x in text.replace(" ", "").split(",") if x != "")
    if length is not None:
        if len(vals) == 1:
            vals = vals + (0.0,) * (length - 1)
        if len(vals) != length:
            raise argparse.ArgumentTypeError(f"expected {length} components")
    return vals


def _parse_label(text: str):
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quaplectic",
                                description="quaplectic group computations")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", default="out", help="output directory for artifacts")
    p.add_argument("--server", help="base URL of a running service; POST instead of local run")
    p.add_argument("--json", action="store_true", help="print the full report as JSON")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--s", type=float)
    common.add_argument("--c", type=float)
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int)

    sp = sub.add_parser("verify", parents=[common], help="run every module invariant suite")
    sp.add_argument("--gt-full", action="store_true", dest="gt_full")
    sp.add_argument("--group-trials", type=int, dest="group_trials")

    sp = sub.add_parser("spectrum", parents=[common], help="field-operator spectra")
    sp.add_argument("--mode", choices=("oscillator", "compact", "casimir"))
    sp.add_argument("--sigma-label", type=_parse_label, dest="sigma_label")
    sp.add_argument("--beta-order", type=int, dest="beta_order")
    sp.add_argument("--k-block", type=int, dest="k_block")
    sp.add_argument("--window", type=int)
    sp.add_argument("--format", choices=("csv", "text"), dest="fmt")

    sp = sub.add_parser("boost", help="finite boost matrix and invariance report")
    sp.add_argument("--beta", type=lambda t: _parse_vector(t, 3))
    sp.add_argument("--gamma", type=lambda t: _parse_vector(t, 3))
    sp.add_argument("--c-light", type=float, dest="c_light")
    sp.add_argument("--b", type=float)
    sp.add_argument("--hbar", type=float)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trials", type=int)
    sp.add_argument("--format", choices=("csv", "text"), dest="fmt")

    sp = sub.add_parser("gt", help="pattern enumeration and operator dump")
    sp.add_argument("--sigma-label", type=_parse_label, dest="sigma_label")
    sp.add_argument("--noncompact", action="store_true")
    sp.add_argument("--window", type=int)
    sp.add_argument("--no-ops", action="store_true")
    sp.add_argument("--format", choices=("mm", "text"), dest="fmt")

    sp = sub.add_parser("export", parents=[common], help="operator and table export")
    sp.add_argument("--what", choices=("sc-table", "ladder", "rho-z", "u-number",
                                       "basis", "gt-sigma"))
    sp.add_argument("--basis", choices=("real", "complex"))
    sp.add_argument("--mode-index", type=int, dest="mode_index")
    sp.add_argument("--sign", choices=("+", "-"))
    sp.add_argument("--a", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--sigma-label", type=_parse_label, dest="sigma_label")
    sp.add_argument("--window", type=int)
    sp.add_argument("--format", choices=("mm", "text"), dest="fmt")

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def _read_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, val = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = val
    return out


def _coerce(model_cls, raw: dict):
    fields = model_cls.model_fields
    kwargs = {}
    for key, val in raw.items():
        if key not in fields or val is None:
            continue
        if isinstance(val, str):
            ann = str(fields[key].annotation)
            if "tuple" in ann and "float" in ann:
                val = _parse_vector(val)
            elif "tuple" in ann:
                val = _parse_label(val)
            elif "bool" in ann:
                val = val.lower() in ("1", "true", "yes")
        kwargs[key] = val
    return model_cls(**kwargs)


def _build_request(args) -> tuple:
    model_cls, handler = _HANDLERS[args.command]
    raw = _read_config_file(args.config) if args.config else {}
    cli_fields = {k: v for k, v in vars(args).items()
                  if k not in ("command", "config", "out", "server", "json")
                  and v is not None and v is not False}
    if args.command == "gt":
        if cli_fields.pop("noncompact", None):
            cli_fields["compact"] = False
        if cli_fields.pop("no_ops", None):
            cli_fields["ops"] = False
    raw.update(cli_fields)
    return _coerce(model_cls, raw), handler


def _remote(server: str, command: str, request) -> RunReport:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/{command}",
                      json=json.loads(request.model_dump_json()), timeout=600.0)
    resp.raise_for_status()
    return RunReport(**resp.json())


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app
        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    try:
        request, handler = _build_request(args)
    except Exception as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 2
    try:
        result = _remote(args.server, args.command, request) if args.server \
            else handler(request)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    paths = write_artifacts(args.out, result.artifacts)
    if args.json:
        print(json.dumps({"ok": result.ok, "report": result.report,
                          "artifacts": paths}, indent=2, default=str))
    else:
        _print_summary(result, paths)
    return 0 if result.ok else 1


def _print_summary(result: RunReport, paths) -> None:
    if result.command == "verify":
        for check in result.report["checks"]:
            status = "PASS" if check["passed"] else "FAIL"
            print(f"{status} {check['name']:34s} deviation={check['deviation']:.3e} "
                  f"tolerance={check['tolerance']:.1e}")
        print("result:", "PASS" if result.ok else "FAIL")
    else:
        for key, val in result.report.items():
            if key in ("matrix", "checks"):
                continue
            print(f"{key}: {val}")
    for path in paths:
        print("wrote", path)


if __name__ == "__main__":
    sys.exit(main())
