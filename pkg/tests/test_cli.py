import json

import pytest

from modinv import cli, cpaction


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_decompose_json_worked_example(capsys):
    code, out, _ = run_cli(
        capsys, "decompose", "--p", "7", "--multidegree", "1,1,1,2", "--format", "json"
    )
    assert code == 0
    assert out == '{"p":7,"multidegree":[1,1,1,2],"summands":{"2":3,"4":3,"6":1}}\n'


def test_counts_table_contains_mu_value(capsys):
    code, out, _ = run_cli(capsys, "counts", "--p", "3", "--dmax", "4")
    assert code == 0
    assert "5" in out.split("\n")[-2]


def test_sl2_table(capsys):
    code, out, _ = run_cli(capsys, "sl2", "--p", "3", "--m", "3", "--dmax", "9")
    assert code == 0
    assert "total 28" in out
    assert "Noether number 8" in out


def test_usage_error_exit_code(capsys):
    code, _, _ = run_cli(capsys, "bogus")
    assert code == 1
    code, _, _ = run_cli(capsys, "decompose", "--p", "7")
    assert code == 1
    code, _, err = run_cli(capsys, "decompose", "--p", "7", "--multidegree", "a,b")
    assert code == 1


def test_composite_p_exit_code(capsys):
    code, _, err = run_cli(capsys, "counts", "--p", "9", "--dmax", "2")
    assert code == 1
    assert "prime" in err


def test_budget_exit_code(capsys):
    code, _, err = run_cli(
        capsys, "sl2", "--p", "5", "--m", "3", "--dmax", "24", "--budget", "0.001"
    )
    assert code == 1
    assert "budget" in err


def test_selftest_quick_passes(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--level", "quick")
    assert code == 0
    assert "0 failed" in out


def test_selftest_names_injected_fault(capsys, monkeypatch):
    original = cpaction.transfer

    def sign_flipped(f):
        return -original(f)

    monkeypatch.setattr(cpaction, "transfer", sign_flipped)
    code, out, _ = run_cli(capsys, "selftest", "--level", "quick")
    assert code == 2
    assert "FAIL transfer_oracles" in out


def test_sagbi_verification_failure_exit_code(capsys, monkeypatch):
    # a corrupted norm changes the lead monomial table and must surface as exit 2
    from modinv import sagbi as sagbi_mod

    def broken_trace_lead(E, p):
        mono = list(sagbi_mod.Generator("x", (1,), (0, 1), len(E), p).lead)
        return tuple(mono) + (0,) * (2 * len(E) - 2)

    monkeypatch.setattr(sagbi_mod, "trace_lead", broken_trace_lead)
    sagbi_mod.build_generators.cache_clear()
    code, out, _ = run_cli(
        capsys, "sagbi", "--p", "3", "--m", "3", "--max-degree", "6", "--format", "json"
    )
    sagbi_mod.build_generators.cache_clear()
    assert code == 2
    assert json.loads(out)["ok"] is False


DETERMINISM_CASES = [
    ("counts", "--p", "5", "--dmax", "8"),
    ("paths", "--p", "3", "--d", "5"),
    ("tensor", "--p", "7", "--d", "6"),
    ("decompose", "--p", "5", "--multidegree", "6,1,1,7"),
    ("sagbi", "--p", "3", "--m", "2", "--max-degree", "5"),
    ("sl2", "--p", "3", "--m", "2", "--dmax", "6"),
]


@pytest.mark.parametrize("fmt", ["json", "table"])
def test_reports_identical_across_runs(capsys, fmt):
    for case in DETERMINISM_CASES:
        outputs = set()
        for _ in range(2):
            code, out, _ = run_cli(capsys, *case, "--format", fmt)
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1, case


def test_reports_identical_across_worker_pools(capsys):
    baseline = None
    for jobs in ["1", "2", "3"]:
        code, out, _ = run_cli(
            capsys,
            "sagbi", "--p", "3", "--m", "3", "--max-degree", "5",
            "--jobs", jobs, "--format", "json",
        )
        assert code == 0
        if baseline is None:
            baseline = out
        assert out == baseline

    baseline = None
    for jobs in ["1", "2"]:
        code, out, _ = run_cli(
            capsys, "selftest", "--level", "quick", "--jobs", jobs, "--format", "json"
        )
        assert code == 0
        if baseline is None:
            baseline = out
        assert out == baseline
