import pytest

from planeforge import parse_plane, read_plane
from planeforge.cli import main

from .conftest import DATA

ND10 = str(DATA / "nd10.plane")
FIG2 = str(DATA / "fig2.plane")
FANO = str(DATA / "fano.plane")
EMPTY = str(DATA / "empty.plane")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", ND10)
    assert code == 0
    assert "valid: true" in out
    assert "name: nd10" in out
    assert "points: 10" in out
    assert "lines: 9" in out


def test_validate_empty_plane_is_fine(capsys):
    code, out, _ = run(capsys, "validate", EMPTY)
    assert code == 0
    assert "points: 0" in out


def test_validate_rejects_broken_file(tmp_path, capsys):
    bad = tmp_path / "bad.plane"
    bad.write_text("plane bad\npoints a b c d\nline a b c\nline a b d\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert "valid: false" in out
    assert "reason: " in out


def test_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.plane"
    bad.write_text("plane bad\npoints a a\n")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert out == ""
    assert err.startswith("parse error: line 2:")
    assert err.count("line 2") == 1


def test_missing_file_exit_two(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent/x.plane")
    assert code == 2
    assert "parse error" in err


def test_delta_whole_plane(capsys):
    code, out, _ = run(capsys, "delta", ND10)
    assert code == 0
    assert out == "delta: 1\n"


def test_delta_subset(capsys):
    code, out, _ = run(capsys, "delta", FANO, "--subset", "1 2 3")
    assert code == 0
    assert out == "delta: 2\n"


def test_delta_unknown_point(capsys):
    code, _, err = run(capsys, "delta", FANO, "--subset", "1 zz")
    assert code == 2
    assert "precondition error" in err
    assert "zz" in err


def test_alpha(capsys):
    code, out, _ = run(capsys, "alpha", ND10)
    assert code == 0
    assert out == "alpha: -2\n"


def test_icl_frontier(capsys):
    code, out, _ = run(capsys, "icl", FANO, "--subset", "1")
    assert code == 0
    assert "icl: 1 2 3 4 5 6 7" in out
    assert "size: 7" in out
    assert "frontier: true" in out


def test_icl_self_closed(capsys):
    code, out, _ = run(capsys, "icl", FIG2, "--subset", "a")
    assert code == 0
    assert "icl: a\n" in out
    assert "frontier: false" in out


def test_icl_within(capsys):
    code, out, _ = run(capsys, "icl", FANO, "--subset", "1", "--within", "1 2 4")
    assert code == 0
    assert "icl: 1" in out
    assert "frontier: false" in out


def test_strong_true(capsys):
    code, out, _ = run(capsys, "strong", FIG2, "--subset", "a b c")
    assert code == 0
    assert out == "strong: true\n"


def test_strong_false_exit_one(capsys):
    code, out, _ = run(capsys, "strong", FANO, "--subset", "1")
    assert code == 1
    assert out == "strong: false\n"


def test_strong_with_k(capsys):
    code, out, _ = run(capsys, "strong", FANO, "--subset", "1", "-k", "3")
    assert code == 0
    assert "k: 3" in out
    assert "strong: true" in out
    code, out, _ = run(capsys, "strong", FANO, "--subset", "1", "--k", "6")
    assert code == 1
    assert "strong: false" in out


def test_report(capsys):
    code, out, _ = run(capsys, "report", ND10)
    assert code == 0
    assert "delta: 1" in out
    assert "alpha: -2" in out
    assert "in_K0: true" in out
    assert "violating_subset: -" in out


def test_report_flags_violations(tmp_path, capsys):
    ag = tmp_path / "ag23.plane"
    lines = ["123", "456", "789", "147", "258", "369", "159", "267", "348", "357", "168", "249"]
    ag.write_text(
        "plane ag23\npoints 1 2 3 4 5 6 7 8 9\n"
        + "".join("line " + " ".join(l) + "\n" for l in lines)
    )
    code, out, _ = run(capsys, "report", str(ag))
    assert code == 1
    assert "in_K0: false" in out
    assert "violating_subset: 1 2 3 4 5 6 7 8 9" in out


def test_amalgamate_free(tmp_path, capsys):
    a = tmp_path / "a.plane"
    b = tmp_path / "b.plane"
    a.write_text("plane a\npoints p a b\nline p a b\n")
    b.write_text("plane b\npoints p c d\nline p c d\n")
    code, out, _ = run(capsys, "amalgamate", str(a), str(b))
    assert code == 0
    assert "amalgam: free" in out
    assert "points: 5" in out
    assert "lines: 2" in out
    assert "delta: 3" in out
    assert "identified: -" in out


def test_amalgamate_exchange_violation(tmp_path, capsys):
    a = tmp_path / "a.plane"
    b = tmp_path / "b.plane"
    a.write_text("plane a\npoints p q x\nline p q x\n")
    b.write_text("plane b\npoints p q y\nline p q y\n")
    code, out, _ = run(capsys, "amalgamate", str(a), str(b))
    assert code == 1
    assert "amalgam: failed" in out
    assert "exchange_violation" in out


def test_amalgamate_canonical_glues(tmp_path, capsys):
    a = tmp_path / "a.plane"
    b = tmp_path / "b.plane"
    a.write_text("plane a\npoints p q x\nline p q x\n")
    b.write_text("plane b\npoints p q y\nline p q y\n")
    out_file = tmp_path / "glued.plane"
    code, out, _ = run(
        capsys, "amalgamate", str(a), str(b), "--mode", "canonical",
        "--output", str(out_file),
    )
    assert code == 0
    assert "identified: p q x == p q y" in out
    name, merged = read_plane(out_file)
    assert name == "a-canonical-b"
    assert merged.lines == frozenset({frozenset("pqxy")})
    text = out_file.read_text()
    assert "# identified: p q x == p q y" in text


def test_amalgamate_explicit_over(tmp_path, capsys):
    a = tmp_path / "a.plane"
    b = tmp_path / "b.plane"
    a.write_text("plane a\npoints p a b\n")
    b.write_text("plane b\npoints p c\n")
    code, _, err = run(capsys, "amalgamate", str(a), str(b), "--over", "p c")
    assert code == 2  # declared C is not the intersection
    assert "precondition error" in err


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", FIG2, "--lower", "a b c")
    assert code == 0
    assert "length: 1" in out
    assert "chain: a b c | a b c d e f" in out
    assert "step_0: + d e f" in out


def test_decompose_not_strong(capsys):
    code, _, err = run(capsys, "decompose", FANO, "--lower", "1")
    assert code == 2
    assert "error" in err


def test_embed_found(tmp_path, capsys):
    tri = tmp_path / "tri.plane"
    tri.write_text("plane tri\npoints x y z\nline x y z\n")
    code, out, _ = run(capsys, "embed", str(tri), FANO)
    assert code == 0
    assert out.startswith("embedding: ")
    pairs = dict(kv.split("=") for kv in out.split()[1:])
    assert set(pairs) == {"x", "y", "z"}


def test_embed_none(tmp_path, capsys):
    code, out, _ = run(capsys, "embed", FANO, FIG2)
    assert code == 1
    assert out == "embedding: none\n"


def test_census_listing(tmp_path, capsys):
    out_dir = tmp_path / "census"
    code, out, _ = run(capsys, "census", "4", "--output", str(out_dir))
    assert code == 0
    assert "count: 8" in out
    assert "plane_0: 0p" in out
    files = sorted(out_dir.glob("census_*.plane"))
    assert len(files) == 8
    for f in files:
        read_plane(f)  # all emitted files re-parse


def test_census_guard(capsys):
    code, _, err = run(capsys, "census", "9")
    assert code == 2
    assert "precondition error" in err


def test_build_and_log(tmp_path, capsys):
    out_dir = tmp_path / "chain"
    code, out, _ = run(
        capsys, "build", "--steps", "4", "--ext-bound", "2",
        "--output", str(out_dir),
    )
    assert code == 0
    assert "steps: 4" in out
    stages = sorted(out_dir.glob("stage_*.plane"))
    assert len(stages) == 5
    for f in stages:
        read_plane(f)
    log = (out_dir / "chain.log").read_text().splitlines()
    assert len(log) == 4
    for i, line in enumerate(log):
        fields = line.split("\t")
        assert fields[0] == str(i)
        assert fields[1].startswith("A=")
        assert fields[2].startswith("B=")
        assert fields[3].startswith("added=")
        assert fields[4].startswith("identified=")


def test_build_seeded(capsys):
    code, out, _ = run(capsys, "build", "--steps", "1", "--ext-bound", "2", "--seed-fixtures")
    assert code == 0
    assert "points: 10" in out
    assert "lines: 9" in out
    assert "delta: 1" in out


def test_audit_fano_fails(capsys):
    code, out, _ = run(capsys, "audit", FANO, "--radius", "1")
    assert code == 1
    assert "types_unrealized: 2" in out
    assert "unrealized: 0p -> 1p" in out


def test_audit_empty_fails(capsys):
    code, out, _ = run(capsys, "audit", EMPTY, "--radius", "1")
    assert code == 1
    assert "realization_rate: 0.000" in out


def test_audit_per_subset(capsys):
    code, out, _ = run(capsys, "audit", FIG2, "--radius", "1", "--per-subset")
    assert code == 0
    assert "subset_pairs_checked: 7" in out
    assert "subset_pairs_realized: 7" in out


def test_witness_figure2(capsys):
    code, out, _ = run(capsys, "witness", "figure2")
    assert code == 0
    assert "witness: figure2" in out
    assert "FAIL" not in out


def test_witness_morley(capsys):
    code, out, _ = run(capsys, "witness", "morley-chain:3")
    assert code == 0
    assert "witness: morley-chain:3" in out
    assert "lengths: 1 2 3 4" in out


def test_witness_output_file(tmp_path, capsys):
    out_file = tmp_path / "nd.plane"
    code, out, _ = run(capsys, "witness", "non-desarguesian", "--output", str(out_file))
    assert code == 0
    name, plane = read_plane(out_file)
    assert name == "non-desarguesian"
    assert plane.n_points == 10
    assert "# PASS" in out_file.read_text()


def test_witness_unknown(capsys):
    code, _, err = run(capsys, "witness", "nope")
    assert code == 2
    assert "unknown witness" in err
    assert "morley-chain:<k>" in err


def test_witness_bad_morley_index(capsys):
    code, _, err = run(capsys, "witness", "morley-chain:xx")
    assert code == 2
    assert "bad morley-chain index" in err


def test_witness_morley_budget(capsys):
    code, _, err = run(capsys, "witness", "morley-chain:99")
    assert code == 2
    assert "capped" in err


def test_invalid_plane_in_non_validate_verb(tmp_path, capsys):
    bad = tmp_path / "bad.plane"
    bad.write_text("plane bad\npoints a b c d\nline a b c\nline a b d\n")
    code, _, err = run(capsys, "delta", str(bad))
    assert code == 2
    assert "invalid plane" in err


def test_emitted_files_reparse_to_same_plane(tmp_path, capsys):
    out_file = tmp_path / "copy.plane"
    run(capsys, "witness", "figure2", "--output", str(out_file))
    _, plane = read_plane(out_file)
    _, original = read_plane(FIG2)
    assert plane == original
