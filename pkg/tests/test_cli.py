import json

import pytest

from plman import corpus
from plman.cli import EXIT_ERROR, EXIT_NO, EXIT_OK, main
from plman.complex import read_facets


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path, capsys):
    count = iter(range(1000))

    def gen(name, *params):
        path = tmp_path / f"{name}{next(count)}.txt"
        assert run(capsys, "gen", name, *params, "-o", str(path))[0] == EXIT_OK
        return str(path)
    return gen


def test_gen_writes_parseable_facet_files(capsys):
    code, out, _ = run(capsys, "gen", "sphere", "2")
    assert code == EXIT_OK
    assert out.startswith("# plman gen sphere 2\n# f-vector (4, 6, 4)\n")
    assert len([ln for ln in out.splitlines() if not ln.startswith("#")]) == 4


@pytest.mark.parametrize("name", ["rp2", "torus", "poincare", "sigma3rp2"])
def test_gen_corpus_round_trip(files, name):
    K = read_facets(files(name))
    assert K.facet_list() == corpus.named(name).facet_list()


def test_gen_derived_complexes(files, tmp_path, capsys):
    s2 = files("sphere", "2")
    K = read_facets(files("susp", s2, "2"))
    assert K.f_vector()[0] == 8 and K.dim == 4
    other = tmp_path / "circle.txt"
    other.write_text("a b\nb c\nc a\n")
    J = read_facets(files("join", s2, str(other)))
    assert J.dim == 4 and J.f_vector()[0] == 7
    code, _, err = run(capsys, "gen", "join", s2, s2)
    assert code == EXIT_ERROR and "plman: error" in err
    C = read_facets(files("cone", files("torus")))
    assert C.f_vector()[0] == 8


def test_check_exit_codes(files, capsys):
    code, out, _ = run(capsys, "check", files("sphere", "5"))
    data = json.loads(out)
    assert code == EXIT_OK and data["closed"] and data["singular_vertices"]["singular"] == []
    code, out, _ = run(capsys, "check", files("cone", files("torus")), "--format", "text")
    assert code == EXIT_NO
    assert "bad simplices: {^c0}" in out


def test_check_accepts_corpus_names(capsys):
    code, out, _ = run(capsys, "check", "rp2", "--format", "text")
    assert code == EXIT_OK and "closed: yes" in out


def test_homology_text_and_twisted(files, capsys):
    rp2 = files("rp2")
    code, out, _ = run(capsys, "homology", rp2, "--format", "text")
    assert out.splitlines() == ["H_0(Z) = Z", "H_1(Z) = Z/2", "H_2(Z) = 0"]
    code, out, _ = run(capsys, "homology", rp2, "--coeff", "z-")
    groups = json.loads(out)["groups"]
    assert groups["0"] == {"free_rank": 0, "torsion": [2]} and groups["2"]["free_rank"] == 1
    code, out, _ = run(capsys, "homology", rp2, "2", "--cohomology", "--coeff", "z2")
    assert json.loads(out)["groups"] == {"2": {"free_rank": 0, "torsion": [2]}}


def test_homology_model_coefficients(tmp_path, files, capsys):
    model = tmp_path / "m.json"
    model.write_text(json.dumps({"generators": [{"name": "g", "rok": 1}], "relations": [[2]]}))
    code, out, _ = run(capsys, "homology", files("rp2"), "--coeff", f"model:{model}", "--format", "text")
    assert code == EXIT_OK and out.splitlines()[2] == "H_2(Theta) = Z/2"


def test_css_and_determinism_across_jobs(files, capsys):
    sp = files("susp", files("poincare"))
    outs = []
    for jobs in ("1", "2"):
        code, out, _ = run(capsys, "css", sp, "--jobs", jobs)
        assert code == EXIT_OK
        outs.append(out)
    assert outs[0] == outs[1]
    data = json.loads(outs[0])
    assert data["support"] == [["^n0"], ["^s0"]] and data["duality_match"] is True
    assert data["ksm_support"] == [["^n0"], ["^s0"]]


def test_check_determinism_across_jobs(files, capsys):
    sp = files("susp", files("poincare"))
    a = run(capsys, "check", sp, "--jobs", "1")[1]
    b = run(capsys, "check", sp, "--jobs", "2")[1]
    assert a == b and json.loads(a)["singular_vertices"]["singular"][0]["vertex"] == "^n0"


def test_obstruct(tmp_path, files, capsys):
    path = files("sigma3rp2")
    integral = tmp_path / "z.json"
    integral.write_text(json.dumps({"generators": [{"name": "g", "rok": 1}], "relations": []}))
    order2 = tmp_path / "z2.json"
    order2.write_text(json.dumps({"generators": [{"name": "g", "rok": 1}], "relations": [[2]]}))
    code, out, _ = run(capsys, "obstruct", path, "--theta", str(integral))
    data = json.loads(out)
    assert code == EXIT_OK and data["obstructed"] and not data["ksm_lifts"]
    code, out, _ = run(capsys, "obstruct", path, "--theta", str(order2), "--format", "text")
    assert "zero" in out and "ksm lifts to the model: yes" in out
    support = tmp_path / "c.json"
    support.write_text(json.dumps({"support": [data["ksm_support"][0]]}))
    code, _, err = run(capsys, "obstruct", path, "--cocycle", str(support), "--theta", str(integral))
    assert code == EXIT_ERROR and "plman: error" in err


def test_css_with_boundary(files, capsys):
    code, out, _ = run(capsys, "css", files("simplex", "5"))
    assert code == EXIT_OK and json.loads(out)["boundary_naturality"]["naturality_holds"]


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent/file.txt"],
    ["gen", "klein"],
    ["gen", "sphere", "x"],
    ["homology", "rp2", "--coeff", "q"],
    ["check", "rp2", "--tietze-budget", "0"],
    ["css", "rp2"],
])
def test_errors_exit_one(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_ERROR and err.startswith("plman: error:") and out == ""


def test_malformed_file_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("a b c\na a b\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == EXIT_ERROR and f"{bad}:2:" in err
