import json
import os

import pytest

from recplane.cli import main

E1_SPEC = {
    "field": {"type": "prime", "p": 2},
    "n": 4,
    "hyperplanes": [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]],
}
E2_SPEC = {
    "field": {"type": "rational"},
    "n": 2,
    "hyperplanes": [[1, 0], [0, 1], [-1, -1]],
}
E3_SPEC = {
    "field": {"type": "prime", "p": 2},
    "n": 2,
    "hyperplanes": [[1, 0], [0, 1], [1, 1]],
}


@pytest.fixture
def specs(tmp_path):
    paths = {}
    for name, spec in (("E1", E1_SPEC), ("E2", E2_SPEC), ("E3", E3_SPEC)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(spec))
        paths[name] = str(p)
    return paths


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_presentation_golden_text(specs, capsys):
    code, out, _ = run_cli(capsys, "presentation", specs["E1"])
    assert code == 0
    assert "t2*t3*t4 + t1*t3*t4 + t1*t2*t4 + t1*t2*t3" in out


def test_presentation_super_contains_worked_relations(specs, capsys):
    code, out, _ = run_cli(capsys, "presentation", "--super", specs["E2"])
    assert code == 0
    assert "u1*u2" in out and "u2*u3" in out


def test_circuits_output(specs, capsys):
    code, out, _ = run_cli(capsys, "circuits", specs["E1"])
    assert code == 0
    assert "[1, 2, 3, 4]" in out


def test_flats_output(specs, capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "flats", specs["E3"])
    assert code == 0
    data = json.loads(out)
    assert [f["indices"] for f in data["flats"]] == [
        [], [1], [2], [3], [1, 2, 3]
    ]


def test_verify_stratification(specs, capsys):
    code, out, _ = run_cli(capsys, "verify", "--check", "stratification", specs["E3"])
    assert code == 0
    assert "lhs=4 rhs=4" in out


def test_verify_all_checks_pass_on_examples(specs, capsys):
    for check in ("theorem1", "theorem2", "minimal", "lemma7", "groebner-lemma"):
        code, out, _ = run_cli(capsys, "verify", "--check", check, specs["E3"])
        assert code == 0, (check, out)


def test_points_and_hilbert(specs, capsys):
    code, out, _ = run_cli(capsys, "points", specs["E3"])
    assert code == 0
    code, out, _ = run_cli(
        capsys, "hilbert", "--max-degree", "6", "--super", specs["E3"]
    )
    assert code == 0
    assert "agree: True" in out


def test_charts_subcommand(specs, capsys):
    code, out, _ = run_cli(capsys, "charts", "--flat", "1", specs["E3"])
    assert code == 0
    assert "t2*t3*z1 + t3 + t2" in out
    code, out, _ = run_cli(
        capsys, "charts", "--flat", "1,2", "--super", specs["E3"]
    )
    assert code == 0
    assert "dz1" in out


def test_malformed_json_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": ')
    code, _, err = run_cli(capsys, "circuits", str(bad))
    assert code == 2
    assert "line" in err and "column" in err


def test_zero_form_exit_code(tmp_path, capsys):
    spec = tmp_path / "zero.json"
    spec.write_text(json.dumps({
        "field": {"type": "prime", "p": 2}, "n": 2,
        "hyperplanes": [[2, 0], [0, 1]],
    }))
    code, _, err = run_cli(capsys, "circuits", str(spec))
    assert code == 2
    assert "zero" in err


def test_cap_exceeded_exit_code(specs, capsys):
    code, _, err = run_cli(
        capsys, "--cap-points", "8", "verify", "--check", "stratification",
        specs["E1"],
    )
    assert code == 3
    assert "cap exceeded" in err


def test_cap_env_override(specs, capsys, monkeypatch):
    monkeypatch.setenv("RECPLANE_CAP_POINTS", "8")
    code, _, err = run_cli(capsys, "points", specs["E1"])
    assert code == 3
    monkeypatch.delenv("RECPLANE_CAP_POINTS")


def test_json_output_deterministic(specs, capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(
            capsys, "--format", "json", "verify", "--check", "theorem2",
            specs["E3"],
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_corpus_generation(tmp_path, capsys):
    out_dir = str(tmp_path / "corpus")
    code, out, _ = run_cli(
        capsys, "corpus", "--p", "2", "--max-n", "2", "--max-m", "3",
        "--out", out_dir,
    )
    assert code == 0
    files = sorted(os.listdir(out_dir))
    assert files and all(f.endswith(".json") for f in files)
    # every emitted spec loads back
    from recplane.arrangement import Arrangement

    for f in files:
        with open(os.path.join(out_dir, f)) as fh:
            Arrangement.from_json(json.load(fh))


def test_corpus_listing_deterministic(capsys):
    code, out1, _ = run_cli(capsys, "corpus", "--p", "3", "--max-n", "2",
                            "--max-m", "2")
    code, out2, _ = run_cli(capsys, "corpus", "--p", "3", "--max-n", "2",
                            "--max-m", "2")
    assert out1 == out2


def test_rational_corpus_seeded(capsys):
    code, out1, _ = run_cli(capsys, "corpus", "--rational", "--count", "5",
                            "--seed", "3")
    code, out2, _ = run_cli(capsys, "corpus", "--rational", "--count", "5",
                            "--seed", "3")
    assert out1 == out2


def test_verification_failure_exit_code(specs, capsys, monkeypatch):
    """A failing report must surface as exit code 1."""
    from recplane.oracle import Report
    import recplane.cli as cli

    monkeypatch.setattr(
        cli, "verify_theorem1",
        lambda arr, caps=None: Report("theorem1", "x", "fail", ["w"], {}),
    )
    code, out, _ = run_cli(capsys, "verify", "--check", "theorem1", specs["E3"])
    assert code == 1
    assert "fail" in out
