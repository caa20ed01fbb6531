"""End-to-end drives of the command line through main(argv).

Every test invokes the real handlers (no subprocess) and inspects exit
codes plus captured stdout/stderr.  Generated files live in a session
tmp dir so the generate step runs once per family.
"""

import json
import re

import pytest

from curvcx import fileio
from curvcx.cli import main
from curvcx.core import build_complex
from curvcx.metric import enumerate_bigons, face_metric


@pytest.fixture(scope="session")
def clidir(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    jobs = {
        "hyp73.cx": ["--family", "regular_pq", "--p", "7", "--q", "3", "--radius", "3"],
        "flat44.cx": ["--family", "regular_pq", "--p", "4", "--q", "4", "--radius", "4"],
        "sig4.cx": ["--family", "bipartite_squares", "--n", "4", "--radius", "6"],
        "book3.cx": ["--family", "book", "--pages", "3", "--radius", "4"],
        "cube.cx": ["--family", "spherical", "--kind", "cube"],
    }
    for name, argv in jobs.items():
        rc = main(["generate", *argv, "--out", str(d / name)])
        assert rc == 0, name
    return d


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def test_generate_prints_summary(tmp_path, capsys):
    out = tmp_path / "t.cx"
    rc = main(["generate", "--family", "spherical", "--kind", "tetrahedron", "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == 0
    assert out.exists()
    assert "4 faces" in text and "6 edges" in text and "4 vertices" in text


@pytest.mark.parametrize(
    "argv,family",
    [
        (["--family", "regular_pq", "--p", "4", "--q", "4", "--radius", "2"], "regular_pq"),
        (["--family", "coxeter_triangle", "--marks", "2,4,4", "--radius", "1"], "coxeter_triangle"),
        (["--family", "product_trees", "--degrees", "3,3", "--radius", "2"], "product_trees"),
        (["--family", "book", "--pages", "2", "--radius", "2"], "book"),
        (["--family", "bipartite_squares", "--n", "3", "--radius", "3"], "bipartite_squares"),
        (["--family", "spherical", "--kind", "prism", "--n", "6"], "spherical"),
    ],
)
def test_generate_every_family(tmp_path, argv, family):
    out = tmp_path / "f.cx"
    assert main(["generate", *argv, "--out", str(out)]) == 0
    X = fileio.load(str(out))
    assert X.meta["family"] == family


def test_generate_is_byte_deterministic(tmp_path):
    a, b = tmp_path / "a.cx", tmp_path / "b.cx"
    argv = ["generate", "--family", "regular_pq", "--p", "5", "--q", "4", "--radius", "2"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize(
    "argv,needs_out",
    [
        (["--family", "regular_pq", "--q", "3"], True),  # missing --p
        (["--family", "coxeter_triangle", "--marks", "3,3"], True),
        (["--family", "spherical"], True),  # missing --kind
        (["--family", "product_trees", "--degrees", "x,y"], True),
        (["--family", "no_such_family"], True),  # argparse choices
        (["--family", "book", "--pages", "2"], False),  # missing --out
    ],
)
def test_generate_usage_errors_exit_2(tmp_path, argv, needs_out, capsys):
    full = ["generate", *argv]
    if needs_out:
        full += ["--out", str(tmp_path / "x.cx")]
    rc = main(full)
    capsys.readouterr()
    assert rc == 2


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------


def test_validate_generated_files_pass(clidir, capsys):
    for name in ("hyp73.cx", "flat44.cx", "sig4.cx", "book3.cx", "cube.cx"):
        rc = main(["validate", "--in", str(clidir / name)])
        text = capsys.readouterr().out
        assert rc == 0, name
        assert "RESULT: pass" in text


def test_validate_skips_ambient_axioms_for_multi_apartment_files(clidir, capsys):
    # a 3-page book is planar only page-pair-wise; the ambient tessellation
    # block must not run (its spine edges have three faces)
    rc = main(["validate", "--in", str(clidir / "book3.cx")])
    text = capsys.readouterr().out
    assert rc == 0
    assert "tessellation/" not in text
    assert "planar-substructures/PCPS3-apartments-planar: pass" in text


def test_validate_flags_nonplanar_complex(tmp_path, capsys):
    # three squares around one edge, no apartments: ambient axioms apply and fail
    X = build_complex(8, [[0, 1, 2, 3], [1, 0, 4, 5], [0, 1, 6, 7]])
    p = tmp_path / "fan.cx"
    fileio.save(X, str(p))
    rc = main(["validate", "--in", str(p)])
    text = capsys.readouterr().out
    assert rc == 1
    assert "RESULT: fail" in text
    assert "T1-edge-degree: fail" in text


def test_validate_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.cx"
    bad.write_text("this is not a complex\n")
    rc = main(["validate", "--in", str(bad)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "usage error" in err and "cannot parse" in err


def test_validate_wrong_version_exits_2(tmp_path, capsys):
    bad = tmp_path / "v9.cx"
    bad.write_text('{"edges":[],"faces":[],"version":9,"vertices":0}\n')
    rc = main(["validate", "--in", str(bad)])
    capsys.readouterr()
    assert rc == 2


def test_validate_missing_file_exits_2(tmp_path, capsys):
    rc = main(["validate", "--in", str(tmp_path / "nope.cx")])
    err = capsys.readouterr().err
    assert rc == 2
    assert "no such file" in err


def test_threads_flag_is_accepted(clidir, capsys):
    rc = main(["validate", "--in", str(clidir / "cube.cx"), "--threads", "4"])
    capsys.readouterr()
    assert rc == 0


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def test_curvature_constant_table(clidir, capsys):
    rc = main(["curvature", "--in", str(clidir / "hyp73.cx")])
    text = capsys.readouterr().out
    assert rc == 0
    assert "minimum corner: -1/42" in text
    assert "maximum corner: -1/42" in text
    assert "sign: all-negative" in text


def test_curvature_csv(clidir, tmp_path, capsys):
    out = tmp_path / "k.csv"
    rc = main(["curvature", "--in", str(clidir / "hyp73.cx"), "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == 0
    assert f"wrote {out}" in text
    lines = out.read_text().splitlines()
    assert lines[0] == "apartment,vertex,face,corner_curvature"
    assert len(lines) > 1
    assert all(line.endswith(",-1/42") for line in lines[1:])


# ---------------------------------------------------------------------------
# geodesics
# ---------------------------------------------------------------------------


def test_geodesics_unique(clidir, capsys):
    X = fileio.load(str(clidir / "flat44.cx"))
    c = X.meta["center"]
    nbr = X.face_neighbors(c)[0]
    rc = main(["geodesics", "--in", str(clidir / "flat44.cx"),
               "--from", str(c), "--to", str(nbr), "--enumerate"])
    text = capsys.readouterr().out
    assert rc == 0
    assert "distance: 1" in text
    assert "geodesics: 1" in text
    assert "delta_bigon: 0" in text


def test_geodesics_corner_pair(clidir, capsys):
    X = fileio.load(str(clidir / "flat44.cx"))
    c = X.meta["center"]
    m = face_metric(X)
    target = next(
        f for f, d in sorted(m.distances_from(c, limit=2).items())
        if d == 2 and enumerate_bigons(X, c, f).count == 2
    )
    rc = main(["geodesics", "--in", str(clidir / "flat44.cx"),
               "--from", str(c), "--to", str(target), "--enumerate"])
    text = capsys.readouterr().out
    assert rc == 0
    assert "distance: 2" in text
    assert "interval layer sizes: 1,2,1" in text
    assert "geodesics: 2" in text
    assert "delta_bigon: 1" in text
    assert "max index spread: 2" in text


# ---------------------------------------------------------------------------
# hyperbolicity
# ---------------------------------------------------------------------------


def test_hyperbolicity_csv(clidir, tmp_path):
    out = tmp_path / "h.csv"
    rc = main(["hyperbolicity", "--in", str(clidir / "flat44.cx"),
               "--max-radius", "3", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "radius,sample_faces,four_point_delta"
    assert lines[2] == "2,13,2"
    assert lines[3] == "3,25,2"


def test_hyperbolicity_budget_row(clidir, tmp_path):
    out = tmp_path / "h.csv"
    rc = main(["hyperbolicity", "--in", str(clidir / "flat44.cx"),
               "--max-radius", "3", "--cap", "10", "--out", str(out)])
    assert rc == 0
    assert any(line.endswith("skipped-budget") for line in out.read_text().splitlines())


# ---------------------------------------------------------------------------
# cheeger
# ---------------------------------------------------------------------------


def test_cheeger_bounds_heptagonal(clidir, capsys):
    rc = main(["cheeger", "--in", str(clidir / "hyp73.cx")])
    text = capsys.readouterr().out
    assert rc == 0
    assert "bound1 (edge-weight x boundary-length): 1/7" in text
    assert "best valid lower bound: 1/7" in text
    profile = text.splitlines()[-1].split(":")[-1].strip()
    assert set(profile.split(",")) == {"1/7"}


def test_cheeger_exact_on_sphere(clidir, capsys):
    rc = main(["cheeger", "--in", str(clidir / "cube.cx"), "--exact"])
    text = capsys.readouterr().out
    assert rc == 0
    assert "exact minimum (half-volume side): 1/2" in text
    m = re.search(r"witness faces: (.+)", text)
    assert m and len(m.group(1).split(",")) == 3


def test_cheeger_exact_over_ball(clidir, capsys):
    rc = main(["cheeger", "--in", str(clidir / "hyp73.cx"),
               "--exact", "--region-radius", "2"])
    text = capsys.readouterr().out
    assert rc == 0
    assert "exact minimum over ball region" in text


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def test_spectrum_cube(clidir, tmp_path, capsys):
    out = tmp_path / "s.csv"
    rc = main(["spectrum", "--in", str(clidir / "cube.cx"),
               "--radius", "2", "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == 0
    lam = float(re.search(r"lambda0: (\S+)", text).group(1))
    res = float(re.search(r"max residual: (\S+)", text).group(1))
    assert abs(lam) <= 1e-9
    assert res <= 1e-10
    lines = out.read_text().splitlines()
    assert lines[0] == "index,eigenvalue,degree_eigenvalue,ratio"
    got = [round(float(line.split(",")[1]), 6) for line in lines[1:]]
    assert got == [0.0, 4.0, 4.0, 4.0, 6.0, 6.0]


def test_spectrum_head_limits_stdout_rows(clidir, capsys):
    rc = main(["spectrum", "--in", str(clidir / "flat44.cx"),
               "--radius", "3", "--head", "3"])
    text = capsys.readouterr().out
    assert rc == 0
    rows = [line for line in text.splitlines() if re.match(r"^\d+,", line)]
    assert len(rows) == 3


def test_spectrum_budget_exit_1(clidir, capsys):
    rc = main(["spectrum", "--in", str(clidir / "flat44.cx"),
               "--radius", "4", "--cap", "10"])
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# eigenfunctions
# ---------------------------------------------------------------------------


def test_eigenfunctions_empty_on_flat(clidir, capsys):
    rc = main(["eigenfunctions", "--in", str(clidir / "flat44.cx"), "--radius", "2"])
    text = capsys.readouterr().out
    assert rc == 0
    assert "no finitely supported eigenfunctions at this scale" in text


def test_eigenfunctions_wheel_certificate(clidir, capsys):
    rc = main(["eigenfunctions", "--in", str(clidir / "sig4.cx"), "--radius", "4"])
    text = capsys.readouterr().out
    assert rc == 0
    assert re.search(r"\[0\] eigenvalue 6 \(exact\), support 8 faces", text)


# ---------------------------------------------------------------------------
# dirichlet
# ---------------------------------------------------------------------------


def boundary_split(X, o, R):
    dist = face_metric(X).distances_from(o, limit=R)
    in_ball = set(dist)
    interior, boundary = [], []
    for f in sorted(in_ball):
        if X.face_complete(f) and all(g in in_ball for g in X.face_neighbors(f)):
            interior.append(f)
        else:
            boundary.append(f)
    return interior, boundary


def test_dirichlet_roundtrip(clidir, tmp_path, capsys):
    X = fileio.load(str(clidir / "flat44.cx"))
    c = X.meta["center"]
    interior, boundary = boundary_split(X, c, 2)
    bv = tmp_path / "bv.json"
    bv.write_text(json.dumps({str(f): float(i % 2) for i, f in enumerate(boundary)}))
    out = tmp_path / "d.csv"
    rc = main(["dirichlet", "--in", str(clidir / "flat44.cx"),
               "--radius", "2", "--boundary", str(bv), "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == 0
    assert f"interior faces: {len(interior)}" in text
    assert "max principle: holds" in text
    assert float(re.search(r"residual: (\S+)", text).group(1)) <= 1e-10
    lines = out.read_text().splitlines()
    assert lines[0] == "face,role,value"
    assert len(lines) == 1 + len(interior) + len(boundary)


def test_dirichlet_interior_key_exits_1(clidir, tmp_path, capsys):
    X = fileio.load(str(clidir / "flat44.cx"))
    c = X.meta["center"]
    _, boundary = boundary_split(X, c, 2)
    data = {str(f): 0.0 for f in boundary}
    data[str(c)] = 1.0  # center is interior: must be rejected
    bv = tmp_path / "bv.json"
    bv.write_text(json.dumps(data))
    rc = main(["dirichlet", "--in", str(clidir / "flat44.cx"),
               "--radius", "2", "--boundary", str(bv)])
    err = capsys.readouterr().err
    assert rc == 1
    assert err.startswith("error:")


def test_dirichlet_bad_boundary_json_exits_2(clidir, tmp_path, capsys):
    bv = tmp_path / "bv.json"
    bv.write_text("[1, 2, 3]")
    rc = main(["dirichlet", "--in", str(clidir / "flat44.cx"),
               "--radius", "2", "--boundary", str(bv)])
    assert rc == 2
    capsys.readouterr()
    rc = main(["dirichlet", "--in", str(clidir / "flat44.cx"),
               "--radius", "2", "--boundary", str(tmp_path / "absent.json")])
    capsys.readouterr()
    assert rc == 2


# ---------------------------------------------------------------------------
# report dashboard
# ---------------------------------------------------------------------------

ROWS = (
    "positive-curvature-finiteness",
    "nonpositive-cut-locus-empty",
    "backward-neighbors-bounded",
    "bigons-thin",
    "cheeger-bound-positive",
    "no-finite-support-eigenfunctions",
)


def _row_status(text, row):
    line = next(l for l in text.splitlines() if l.startswith(row))
    m = re.search(r"verified-at-scale|hypothesis-not-met|skipped-budget|violated", line)
    assert m, line
    return m.group(0)


def test_report_heptagonal_all_verified(clidir, capsys):
    rc = main(["report", "--in", str(clidir / "hyp73.cx")])
    text = capsys.readouterr().out
    assert rc == 0
    assert _row_status(text, "positive-curvature-finiteness") == "hypothesis-not-met"
    for row in ROWS[1:]:
        assert _row_status(text, row) == "verified-at-scale", row


def test_report_cube_positive_finiteness(clidir, capsys):
    rc = main(["report", "--in", str(clidir / "cube.cx")])
    text = capsys.readouterr().out
    assert rc == 0
    assert _row_status(text, "positive-curvature-finiteness") == "verified-at-scale"
    for row in ROWS[1:]:
        assert _row_status(text, row) == "hypothesis-not-met", row


def test_report_bipartite_exhibits_eigenfunction(clidir, capsys):
    rc = main(["report", "--in", str(clidir / "sig4.cx")])
    text = capsys.readouterr().out
    assert rc == 0  # mixed signs: hypotheses unmet, nothing violated
    assert _row_status(text, "no-finite-support-eigenfunctions") == "hypothesis-not-met"
    assert "eigenfunction exhibited: eigenvalue 6, support 8 faces" in text


def test_report_is_deterministic(clidir, capsys):
    argv = ["report", "--in", str(clidir / "hyp73.cx"), "--radius", "3"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
