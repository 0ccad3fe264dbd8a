import json

import pytest

from noetherpg import cli
from noetherpg.certpipe import (
    FAIL, GATED, PASS, SCHEMA_VERSION, RunConfig, RunConfigError, coverage, gate_t2_7, run_all, run_case,
)
from noetherpg.certpipe import odd
from noetherpg.certpipe.certificate import STATUSES
from noetherpg.fpgroups import FamilySpec, Presentation, build_presentation, family_indices, realize
from noetherpg.fpgroups.families import ODD, TWO


def group(theorem, idx, p, n):
    return realize(build_presentation(FamilySpec(theorem, idx, p, n)))


def names(cert):
    return [s.name.split(":", 1)[1] for s in cert.steps]


def test_family1_certificate():
    cert = run_case(FamilySpec(ODD, 1, 3, 3))
    assert cert.verdict == PASS
    got = names(cert)
    for step in ("realize", "claims", "eigenvectors", "faithful", "quotient-table", "t-linearization",
                 "sigma-invariants", "s-basis"):
        assert step in got
    assert all(s.status != FAIL for s in cert.steps)


def test_metacyclic_certificate():
    cert = run_case(FamilySpec(ODD, 2, 3, 4))
    assert names(cert) == ["realize", "claims", "no-index-p-cyclic", "metacyclic"]
    assert cert.step("odd-2:metacyclic").status == GATED


def test_order_exponent_certificate():
    cert = run_case(FamilySpec(ODD, 11, 3, 4))
    st = cert.step("odd-9:order-exponent")
    assert st.status == GATED and st.witness["exponent"] == 9 and st.witness["order"] == 81


def test_certificate_schema():
    d = json.loads(run_case(FamilySpec(TWO, 1, 2, 4)).to_json())
    assert set(d) >= {"schema_version", "family", "steps", "verdict", "notes"}
    assert d["schema_version"] == SCHEMA_VERSION
    assert d["family"] == {"theorem": "3.2", "index": 1, "p": 2, "n": 4}
    for s in d["steps"]:
        assert set(s) >= {"name", "status", "paper_anchor", "witness"} and s["status"] in STATUSES
    d = json.loads(run_case(FamilySpec(ODD, 6, 3, 4)).to_json())
    assert d["family"]["a"] == 2


def test_gate_t2_7_examples():
    G = group(TWO, 4, 2, 5)
    ok, wit = gate_t2_7(G, [G["sigma"], G["tau"]])
    assert ok and wit["quotient_order"] == 2
    A = realize(Presentation.from_text("a^4\nb^2\na^1 b^1 a^-1 b^-1\n"))
    ok, wit = gate_t2_7(A, [A["a"], A["b"]])
    assert ok and wit["quotient_order"] == 1
    G = group(ODD, 1, 3, 3)
    ok, wit = gate_t2_7(G, [G["tau"]])
    assert not ok and not wit["normal"]


def test_coverage_invariant():
    cov = coverage()
    for theorem in (ODD, TWO):
        mapped = set(cov["mapped"][theorem])
        unmapped = {u["family"] for u in cov["unmapped"] if u["theorem"] == theorem}
        assert not mapped & unmapped
        assert mapped | unmapped == {f"G{i}" for i in family_indices(theorem)}
    assert cov["unmapped"], "the unmapped list is never silently empty"
    assert cov["named_but_not_classified"][0]["named_family"] == "G26"


def test_p2_n4_instances():
    cfg = RunConfig(primes=(2,), n_values=(4,))
    assert [s.family_index for s in cfg.instances()] == [1, 2, 3, 4, 5]


def test_default_grid_size():
    specs = RunConfig().instances()
    assert len(specs) == 75
    assert sum(s.theorem == ODD for s in specs) == 27
    assert len({(s.theorem, s.family_index) for s in specs}) == 36


@pytest.mark.parametrize("kwargs", [dict(primes=(7,)), dict(primes=(2,), n_values=(13,)),
                                    dict(report_format="xml"), dict(jobs=0), dict(theorem="4.1")])
def test_config_errors(kwargs):
    with pytest.raises(RunConfigError):
        RunConfig(**kwargs)


def test_report_determinism_across_jobs():
    a = run_all(RunConfig(primes=(3,), n_values=(3, 4), jobs=1)).to_json()
    b = run_all(RunConfig(primes=(3,), n_values=(3, 4), jobs=4)).to_json()
    assert a == b
    assert a == run_all(RunConfig(primes=(3,), n_values=(3, 4), jobs=1)).to_json()


def test_markdown_report():
    rep = run_all(RunConfig(primes=(2,), n_values=(4,), report_format="md"))
    text = rep.render()
    assert text.startswith("# Certificate report") and "## Unmapped families" in text and "G25" in text


def test_cli_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = cli.main(["--p", "2", "--n", "4", "--out", str(out)])
    assert code == 0
    d = json.loads(out.read_text())
    assert d["summary"]["certificates"] == 5 and d["summary"]["fail"] == 0
    assert "5 certificates" in capsys.readouterr().err


def test_cli_empty_filter(capsys):
    assert cli.main(["--family", "99"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["certificates"] == [] and d["unmapped"]


def test_cli_bad_prime():
    with pytest.raises(SystemExit) as e:
        cli.main(["--p", "7"])
    assert e.value.code == 2


def test_cli_exit_code_on_failure(monkeypatch, capsys):
    def broken(run, spec, G, depth):
        run.check("forced", "odd-2", False, {})

    monkeypatch.setitem(odd.CASES, 2, ("odd-2", broken))
    assert cli.main(["--p", "3", "--n", "4", "--family", "2"]) == 1
    d = json.loads(capsys.readouterr().out)
    assert d["certificates"][0]["verdict"] == FAIL


def test_exception_becomes_failed_step(monkeypatch):
    def boom(run, spec, G, depth):
        raise RuntimeError("boom")

    monkeypatch.setitem(odd.CASES, 2, ("odd-2", boom))
    cert = run_case(FamilySpec(ODD, 2, 3, 4))
    assert cert.verdict == FAIL and cert.step("odd-2:error").status == FAIL


def test_theorem_filter():
    args = cli.build_parser().parse_args(["--theorem", "3.2", "--n", "4"])
    cfg = cli.config_from_args(args)
    assert cfg.primes == (2,) and len(cfg.instances()) == 5
