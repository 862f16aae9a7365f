from quaplectic.cli import main
from quaplectic.verify import MANIFEST, default_config, run_all, run_suite


def test_manifest_names_unique():
    names = [name for name, _ in MANIFEST]
    assert len(names) == len(set(names))


def test_every_module_covered():
    prefixes = {name.split(".")[0] for name, _ in MANIFEST}
    assert prefixes == {"lie", "groups", "kinematics", "fock", "gelfand", "fieldeq"}


def test_run_all_executes_full_manifest():
    cfg = default_config(n=1, nmax=6, group_trials=3, n_alg=1)
    results = run_all(cfg)
    assert [r["name"] for r in results] == [name for name, _ in MANIFEST]
    assert all(r["passed"] for r in results), \
        [r["name"] for r in results if not r["passed"]]


def test_single_suite_lookup():
    cfg = default_config(n=1, nmax=6, group_trials=2, n_alg=1)
    res = run_suite("kinematics.limits", cfg)
    assert res["passed"]


def test_cli_verify_exit_zero(tmp_path, capsys):
    rc = main(["--out", str(tmp_path), "verify", "--n", "1", "--nmax", "8",
               "--group-trials", "5"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "result: PASS" in out
    assert (tmp_path / "verify_report.txt").exists()
    text = (tmp_path / "verify_report.txt").read_text()
    for name, _ in MANIFEST:
        assert name in text
