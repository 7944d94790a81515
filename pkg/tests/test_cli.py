import json

import pytest

from jordanpert import cli
from jordanpert.bounds import check_main_bounds
from jordanpert.exactmat import GF, QQ, Matrix, direct_sum, dump_matrix, load_matrix, unit_vector
from jordanpert.perturb import cyclic_shift, random_operator, random_perturbation, upper_shift


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def sharp_files(tmp_path, capsys):
    code, _, _ = run(capsys, "examples", "sharp", "--m", 5, "--k", 1, "--out-dir", tmp_path)
    assert code == 0
    return tmp_path / "A.json", tmp_path / "B.json"


def test_examples_sharp_files(sharp_files):
    A, B = (load_matrix(p) for p in sharp_files)
    assert A == upper_shift(QQ, 5) and B == cyclic_shift(QQ, 5)


def test_examples_small_and_shift(tmp_path, capsys):
    code, out, _ = run(capsys, "examples", "sharp", "--m", 2, "--out-dir", tmp_path)
    assert code == 0 and load_matrix(tmp_path / "A.json").shape == (2, 2)
    code, out, _ = run(capsys, "examples", "shift", "--N", 10, "--out-dir", tmp_path)
    assert code == 0 and "rank(S - T) = 1" in out
    assert load_matrix(tmp_path / "S.json").shape == (20, 20)


def test_examples_bad_parameters(tmp_path, capsys):
    assert run(capsys, "examples", "sharp", "--m", 1, "--out-dir", tmp_path)[0] == 2
    assert run(capsys, "examples", "shift", "--N", 1, "--out-dir", tmp_path)[0] == 2
    assert run(capsys, "examples", "circle")[0] == 2


def test_analyze_sharp(sharp_files, capsys):
    code, out, _ = run(capsys, "analyze", sharp_files[0], "--lam", "0")
    assert code == 0
    assert "Weyr  (1, 2, 3, 4, 5)" in out and "Segre (5)" in out
    code, out, _ = run(capsys, "analyze", sharp_files[0], "--json")
    doc = json.loads(out)
    assert doc["analyses"][0]["weyr"] == [1, 2, 3, 4, 5]
    assert doc["analyses"][0]["segre"] == [5]


def test_analyze_identity_at_zero(tmp_path, capsys):
    dump_matrix(Matrix.identity(QQ, 3), tmp_path / "I.json")
    code, out, _ = run(capsys, "analyze", tmp_path / "I.json", "--lam", "0", "--json")
    a = json.loads(out)["analyses"][0]
    assert code == 0 and a["weyr"] == [] and a["segre"] == [] and a["chains"] == []


def test_analyze_matches_library(tmp_path, capsys):
    A = random_operator(6, 17, family="jordan")
    dump_matrix(A, tmp_path / "A.json")
    code, out, _ = run(capsys, "analyze", tmp_path / "A.json", "--json")
    assert code == 0
    assert json.loads(out) == cli.analyze_matrix(A)


def test_analyze_unsupported_eigenvalues(tmp_path, capsys):
    dump_matrix(cyclic_shift(QQ, 3), tmp_path / "B.json")
    code, out, _ = run(capsys, "analyze", tmp_path / "B.json")
    assert code == 0 and "degree 2" in out


def test_parse_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": "Q", "rows": 1, "cols": 1, "entries": [["0.5"]]}', encoding="utf-8")
    assert run(capsys, "analyze", bad)[0] == 2
    assert run(capsys, "analyze", tmp_path / "missing.json")[0] == 2
    dump_matrix(Matrix.identity(QQ, 2), tmp_path / "I.json")
    assert run(capsys, "analyze", tmp_path / "I.json", "--lam", "1.5")[0] == 2
    assert run(capsys, "analyze", tmp_path / "I.json", "--n-max", 0)[0] == 2
    assert run(capsys, "analyze", tmp_path / "I.json", "--field", "GF")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_field_mismatch(tmp_path, capsys, sharp_files):
    assert run(capsys, "analyze", sharp_files[0], "--field", "GF", "--p", 5)[0] == 3
    dump_matrix(cyclic_shift(GF(5), 5), tmp_path / "B5.json")
    assert run(capsys, "bounds", sharp_files[0], tmp_path / "B5.json")[0] == 3


def test_shape_mismatch(tmp_path, capsys, sharp_files):
    dump_matrix(Matrix.identity(QQ, 3), tmp_path / "I3.json")
    assert run(capsys, "bounds", sharp_files[0], tmp_path / "I3.json")[0] == 4
    dump_matrix(Matrix(QQ, [[1, 2, 3]]), tmp_path / "R.json")
    assert run(capsys, "analyze", tmp_path / "R.json")[0] == 4


def test_bounds_sharp(sharp_files, capsys):
    code, out, _ = run(capsys, "bounds", *sharp_files)
    assert code == 0
    assert "Theorem (i)" in out and "Theorem (ii)" in out and "Savchenko bound" in out
    assert "sharp (ii) at n = (0, 1, 2, 3, 4)" in out and "(equality)" in out


def test_bounds_same_operator(sharp_files, capsys):
    code, out, _ = run(capsys, "bounds", sharp_files[0], sharp_files[0], "--json")
    doc = json.loads(out)
    assert code == 0 and doc["k_effective"] == 0
    for e in doc["lambdas"]:
        assert all(r["gap_i"] == r["gap_ii"] == 0 for r in e["theorem"]["records"])


def test_bounds_matches_library(tmp_path, capsys):
    S = random_operator(5, 4)
    T = random_perturbation(5, 2, seed=4).apply(S)
    dump_matrix(S, tmp_path / "S.json")
    dump_matrix(T, tmp_path / "T.json")
    code, out, _ = run(capsys, "bounds", tmp_path / "S.json", tmp_path / "T.json", "--lam", "0", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["lambdas"][0]["theorem"] == check_main_bounds(S, T, 0).to_dict()


def test_bounds_violation_exit_code(sharp_files, capsys, monkeypatch):
    real = cli.check_main_bounds

    def broken(S, T, lam, n_max=None, **kw):
        kw["k"] = 0
        return real(S, T, lam, n_max, **kw)

    monkeypatch.setattr(cli, "check_main_bounds", broken)
    code, out, _ = run(capsys, "bounds", *sharp_files, "--json")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"] and "S" in doc


def test_fuzz_empty_and_invalid(capsys):
    code, out, _ = run(capsys, "fuzz", "--trials", 0)
    assert code == 0 and "0 trials" in out
    assert run(capsys, "fuzz", "--m-min", 5, "--m-max", 2)[0] == 2
    assert run(capsys, "fuzz", "--field", "GF", "--p", 6)[0] == 2
    assert run(capsys, "fuzz", "--trials", "many")[0] == 2


def test_fuzz_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("a.json", "b.json"):
        code, out, _ = run(capsys, "fuzz", "--trials", 30, "--seed", 7, "--out", tmp_path / name)
        assert code == 0
        outs.append(out.replace(name, ""))
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert outs[0] == outs[1]


def test_fuzz_csv_and_preset(tmp_path, capsys):
    code, _, _ = run(capsys, "fuzz", "--trials", 10, "--field", "GF", "--p", 5, "--format", "csv", "--out", tmp_path / "g.csv")
    assert code == 0 and (tmp_path / "g.csv").read_text().startswith("k,n,")
    code, out, _ = run(capsys, "fuzz", "--preset", "sharp-sweep")
    assert code == 0 and out.count("True        True") == 15


@pytest.fixture
def construct_files(tmp_path):
    A1, B1 = upper_shift(QQ, 3), cyclic_shift(QQ, 3)
    dump_matrix(direct_sum(B1, A1), tmp_path / "S.json")
    dump_matrix(direct_sum(A1, A1), tmp_path / "T.json")
    dump_matrix(Matrix.from_rows(QQ, [unit_vector(QQ, 6, 1), unit_vector(QQ, 6, 4)], 6), tmp_path / "tops.json")
    dump_matrix(Matrix.from_rows(QQ, [unit_vector(QQ, 6, 1), unit_vector(QQ, 6, 1)], 6), tmp_path / "dup.json")
    return tmp_path


def test_construct_certificate(construct_files, capsys):
    d = construct_files
    code, out, _ = run(capsys, "construct", d / "S.json", d / "T.json", "--n", 1, "--tops", d / "tops.json",
                       "--out", d / "cert.json")
    assert code == 0 and "verified" in out
    doc = json.loads((d / "cert.json").read_text())
    assert doc["certificate"]["verified"] and len(doc["z"]) == 1


def test_construct_mchain(tmp_path, capsys):
    T = direct_sum(upper_shift(QQ, 2), upper_shift(QQ, 2), Matrix.zeros(QQ, 1))
    S = T + Matrix(QQ, [[1 if (i, j) == (4, 4) else 0 for j in range(5)] for i in range(5)])
    dump_matrix(S, tmp_path / "S.json")
    dump_matrix(T, tmp_path / "T.json")
    tops = [unit_vector(QQ, 5, 1), unit_vector(QQ, 5, 3)]
    dump_matrix(Matrix.from_rows(QQ, tops, 5), tmp_path / "tops.json")
    code, out, _ = run(capsys, "construct", tmp_path / "S.json", tmp_path / "T.json", "--n", 1,
                       "--tops", tmp_path / "tops.json")
    doc = json.loads(out)
    assert code == 0 and doc["certificate"]["case"] == "Mchain"
    assert doc["z"] == [["0", "1", "0", "0", "0"], ["0", "0", "0", "1", "0"]]


def test_construct_errors(construct_files, capsys):
    d = construct_files
    assert run(capsys, "construct", d / "T.json", d / "T.json", "--n", 1, "--tops", d / "tops.json")[0] == 5
    assert run(capsys, "construct", d / "S.json", d / "T.json", "--n", 1, "--tops", d / "dup.json")[0] == 6
    assert run(capsys, "construct", d / "S.json", d / "T.json", "--n", -1, "--tops", d / "tops.json")[0] == 2
    assert run(capsys, "construct", d / "S.json", d / "T.json", "--tops", d / "tops.json")[0] == 2
    dump_matrix(Matrix.identity(QQ, 2), d / "short.json")
    assert run(capsys, "construct", d / "S.json", d / "T.json", "--n", 1, "--tops", d / "short.json")[0] == 4


def test_outputs_repeatable(sharp_files, capsys):
    first = run(capsys, "bounds", *sharp_files, "--json")[1]
    second = run(capsys, "bounds", *sharp_files, "--json")[1]
    assert first == second
