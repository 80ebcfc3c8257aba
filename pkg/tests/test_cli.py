"""End-to-end runs of the command line, frozen output and exit codes."""

import json

import pytest

from anick.algebra import Presentation, RewriteRule, presentation_to_json
from anick.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def weakened_file(tmp_path):
    """The system without the derived two-letter rule; not confluent."""
    pres = Presentation(
        ("a", "b", "c"),
        (
            RewriteRule.make("aa", ""),
            RewriteRule.make("bb", ""),
            RewriteRule.make("cc", ""),
            RewriteRule.make("bca", "acb"),
        ),
    )
    path = tmp_path / "weak.json"
    path.write_text(json.dumps(presentation_to_json(pres)))
    return str(path)


def test_chains_text(capsys):
    code, out, err = run(capsys, "chains", "--n", "1")
    assert code == 0 and err == ""
    assert out.splitlines() == [
        "a^2 = a|a",
        "b^2 = b|b",
        "ba = b|a",
        "bca = b|ca",
        "c^2 = c|c",
    ]


def test_chains_degree_zero(capsys):
    code, out, _ = run(capsys, "chains", "--n", "0")
    assert code == 0
    assert out.splitlines() == ["a = a", "b = b", "c = c"]


def test_chains_json(capsys):
    code, out, _ = run(capsys, "chains", "--n", "2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 2
    assert obj["chains"][0] == {"word": "a^3", "factors": ["a", "a", "a"]}
    assert [c["word"] for c in obj["chains"]] == [
        "a^3", "b^2a", "b^2ca", "b^3", "ba^2", "bca^2", "c^3",
    ]


def test_chains_negative_degree(capsys):
    code, out, err = run(capsys, "chains", "--n", "-1")
    assert code == 1
    assert "usage error" in err


def test_diff_text(capsys):
    code, out, _ = run(capsys, "diff", "--chain", "bca")
    assert code == 0
    assert out.strip() == "d[bca] = -[a]cb + bc[a] + [b]ca - ac[b] - a[c]b + b[c]a"


def test_diff_sources_agree(capsys):
    _, morse_out, _ = run(capsys, "diff", "--chain", "b^2ca^3")
    _, closed_out, _ = run(capsys, "diff", "--chain", "b^2ca^3", "--source", "closed")
    assert morse_out == closed_out


def test_diff_json(capsys):
    code, out, _ = run(capsys, "diff", "--chain", "bca^2", "--json", "--source", "closed")
    assert code == 0
    obj = json.loads(out)
    assert obj["chain"] == "bca^2"
    assert obj["degree"] == 2
    assert obj["terms"] == [
        {"target": "a^2", "left": "", "right": "bc", "coef": "-1"},
        {"target": "a^2", "left": "bc", "right": "", "coef": "1"},
        {"target": "ba", "left": "ac", "right": "", "coef": "-1"},
        {"target": "bca", "left": "", "right": "a", "coef": "-1"},
        {"target": "c^2", "left": "a", "right": "abc", "coef": "-1"},
    ]


def test_diff_degree_check(capsys):
    code, _, err = run(capsys, "diff", "--chain", "bca", "--n", "3")
    assert code == 1 and "degree" in err
    code, _, _ = run(capsys, "diff", "--chain", "bca", "--n", "1")
    assert code == 0


def test_diff_rejects_non_chains_and_bad_words(capsys):
    code, _, err = run(capsys, "diff", "--chain", "acb")
    assert code == 3
    code, _, err = run(capsys, "diff", "--chain", "xz")
    assert code == 1 and "usage error" in err
    code, _, err = run(capsys, "diff", "--chain", "acb", "--source", "closed")
    assert code == 1


def test_diff_dot(tmp_path, capsys):
    target = tmp_path / "graph.dot"
    code, _, _ = run(capsys, "diff", "--chain", "bca^2", "--dot", str(target))
    assert code == 0
    text = target.read_text()
    assert text.startswith("digraph")
    assert 'label="[b|ca|a]", shape=box' in text
    code, _, err = run(
        capsys, "diff", "--chain", "bca", "--dot", str(target), "--source", "closed"
    )
    assert code == 1


def test_confluence_ok(capsys):
    code, out, _ = run(capsys, "confluence")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "confluent: yes (7 overlaps)"
    assert sum(l.endswith("resolves") for l in lines) == 7


def test_confluence_failure(tmp_path, capsys):
    path = weakened_file(tmp_path)
    code, out, _ = run(capsys, "confluence", "--presentation", path)
    assert code == 2
    assert "confluent: no (5 overlaps)" in out
    assert "FAILS" in out
    assert "first branch" in out


def test_broken_presentation_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "confluence", "--presentation", str(path))
    assert code == 3 and "cannot load presentation" in err


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "verify: PASS"
    for needle in (
        "confluence: pass",
        "chains n=0: pass",
        "chains n=2: pass",
        "diff n=1: pass",
        "compose n=2: pass",
        "matrices W1: pass",
        "matrices W8: pass",
    ):
        assert needle in lines, needle


def test_verify_rejects_zero(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "0")
    assert code == 1


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", "--bimodule", "W5", "--max-n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "bimodule W5 (++-/++-), source morse"
    assert lines[1].split() == ["n", "chains", "rank_in", "rank_out", "dim"]
    assert lines[3].split() == ["1", "3", "0", "3", "0"]
    assert lines[4].split() == ["2", "5", "3", "1", "1"]


def test_cohomology_csv(capsys):
    code, out, _ = run(
        capsys, "cohomology", "--bimodule", "W1", "--max-n", "2", "--csv"
    )
    assert code == 0
    assert out.splitlines() == [
        "n,chains,rank_in,rank_out,dim",
        "0,1,0,0,1",
        "1,3,0,3,0",
        "2,5,3,1,1",
    ]


def test_cohomology_json_and_both_sources(capsys):
    code, out, _ = run(
        capsys, "cohomology", "--bimodule", "W2", "--max-n", "2", "--json",
        "--source", "both",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["source"] == "both"
    assert [r["dim"] for r in obj["rows"]] == [0, 2, 0]


def test_cohomology_custom_signs(capsys):
    code, out, _ = run(
        capsys, "cohomology", "--bimodule", "++-/+-+", "--max-n", "1", "--csv"
    )
    assert code == 0
    assert out.splitlines()[1:] == ["0,1,0,1,0", "1,3,1,2,0"]


def test_cohomology_usage_errors(tmp_path, capsys):
    assert run(capsys, "cohomology", "--bimodule", "W9")[0] == 1
    assert run(capsys, "cohomology", "--bimodule", "W1", "--max-n", "-1")[0] == 1
    assert run(
        capsys, "cohomology", "--bimodule", "W1", "--json", "--csv"
    )[0] == 1
    path = weakened_file(tmp_path)
    assert run(
        capsys, "cohomology", "--bimodule", "W1", "--source", "closed",
        "--presentation", path,
    )[0] == 1


def test_cohomology_figure(tmp_path, capsys):
    target = tmp_path / "dims.png"
    code, _, _ = run(
        capsys, "cohomology", "--bimodule", "W5", "--max-n", "2",
        "--figure", str(target),
    )
    assert code == 0
    assert target.read_bytes()[:4] == b"\x89PNG"


def test_presets(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8
    assert lines[0] == "W1  +++/+++"
    assert lines[-1] == "W8  ++-/+-+"


def test_step_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("ANICK_STEP_BUDGET", "1")
    code, _, err = run(capsys, "diff", "--chain", "bca^2")
    assert code == 3 and "error" in err
    # An explicit flag wins over the environment.
    code, _, _ = run(capsys, "diff", "--chain", "bca^2", "--step-budget", "10000")
    assert code == 0
    monkeypatch.setenv("ANICK_STEP_BUDGET", "many")
    assert run(capsys, "diff", "--chain", "bca")[0] == 1


def test_depth_budget_env(monkeypatch, capsys):
    monkeypatch.setenv("ANICK_DEPTH_BUDGET", "0")
    code, _, err = run(capsys, "diff", "--chain", "bca^2")
    assert code == 3
    code, _, _ = run(capsys, "diff", "--chain", "bca^2", "--depth-budget", "50")
    assert code == 0


def test_no_arguments_is_usage(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "nonsense")[0] == 1
