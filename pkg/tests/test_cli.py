import json

from chainpi1.cli import main
from chainpi1.pi1 import cyclic_group
from chainpi1.simpset import builtin, to_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chains(capsys):
    code, out, _ = run(capsys, "chains", "--example", "rp2")
    assert code == 0 and "H_1 = Z/2" in out and "∂t = +2·a" in out
    code, out, _ = run(capsys, "chains", "--example", "rp2", "--ring", "Fp:2")
    assert code == 0 and "H_2 = F2" in out


def test_chains_json(capsys):
    code, out, _ = run(capsys, "chains", "--example", "torus", "--json")
    assert code == 0
    data = json.loads(out)
    assert data and isinstance(data, dict)


def test_input_file(capsys, tmp_path):
    p = tmp_path / "rp2.json"
    p.write_text(json.dumps(to_json(builtin("rp2"))))
    code, out, _ = run(capsys, "chains", "--input", str(p))
    assert code == 0 and "Z/2" in out


def test_invalid_inputs_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "chains", "--input", str(bad))[0] == 2
    assert run(capsys, "chains", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "chains", "--example", "nosuch")[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"simplices": {"0": [{"id": "v"}], "1": [{"id": "a", "faces": ["v"]}]}}))
    code, _, err = run(capsys, "chains", "--input", str(wrong))
    assert code == 2 and "simplices[1][0]" in err
    assert run(capsys, "loop-homology", "--example", "torus")[0] == 2
    assert run(capsys, "pi1", "--example", "delta(2)")[0] == 2
    assert run(capsys, "nosuch-command")[0] == 2


def test_cobar_and_nabla(capsys):
    code, out, _ = run(capsys, "cobar", "--example", "rp2", "--max-degree", "1")
    assert code == 0 and "D[t] = -2·[a] -1·[a|a]" in out and "[PASS]" in out
    code, out, _ = run(capsys, "nabla", "--example", "rp2", "--word", "t")
    assert code == 0 and out.strip() == "∇[t] = +1·[t]⊗1 +1·1⊗[t] +2·[t]⊗[a] +1·[t]⊗[a|a]"
    code, out, _ = run(capsys, "nabla", "--example", "torus", "--word", "t1", "--e1q", "2")
    assert code == 0 and "E^(1,2)[t1] = +1·[t1]⊗[a|b]" in out and "E^(1,2)[a] = 0" in out


def test_bialgebra_check(capsys):
    code, out, _ = run(capsys, "bialgebra-check", "--example", "rp2", "--max-degree", "2", "--with-cubes")
    assert code == 0 and "FAIL" not in out


def test_pi1(capsys):
    code, out, _ = run(capsys, "pi1", "--example", "klein", "--tietze", "--abelianization")
    assert code == 0 and "Tietze: <a, b | baba^-1>" in out and "abelianization: Z + Z/2" in out
    code, out, _ = run(capsys, "pi1", "--example", "rp2", "--todd-coxeter", "100")
    assert "order 2" in out
    code, out, _ = run(capsys, "pi1", "--example", "torus", "--todd-coxeter", "200")
    assert code == 0 and "inconclusive" in out
    code, out, _ = run(capsys, "pi1", "--example", "circle", "--grouplike-demo", "S3")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "pi1", "--example", "torus", "--shift-check")
    assert code == 0 and "1+[e]" in out
    code, out, _ = run(capsys, "pi1", "--example", "torus", "--json")
    assert json.loads(out)["presentation"]["relators"] == ["abc^-1", "bac^-1"]


def test_loop_homology(capsys):
    code, out, _ = run(capsys, "loop-homology", "--example", "sphere(3)", "--max-degree", "4")
    assert code == 0
    assert [l.split("=")[1].strip() for l in out.splitlines() if l.startswith("  H_")] == \
        ["Z", "0", "Z", "0", "Z"]


def test_cover_homology(capsys, tmp_path):
    code, out, _ = run(capsys, "cover-homology", "--example", "rp2", "--group", "Z/2", "--edge", "a=t")
    assert code == 0 and "H_2 = Z" in out and "H_1 = 0" in out
    table = tmp_path / "z2.json"
    table.write_text(json.dumps(cyclic_group(2).to_json()))
    edges = tmp_path / "edges.json"
    edges.write_text(json.dumps({"a": "t"}))
    code, out2, _ = run(capsys, "cover-homology", "--example", "rp2", "--group-table", str(table),
                        "--edge-map", str(edges))
    assert code == 0 and out2.split("homology")[1] == out.split("homology")[1]
    code, out, _ = run(capsys, "cover-homology", "--example", "rp2", "--universal")
    assert code == 0 and "H_2 = Z" in out
    # a map that violates the relation of t fails the realization check
    code, out, _ = run(capsys, "cover-homology", "--example", "rp2", "--group", "Z/3", "--edge", "a=t")
    assert code == 1 and "witness: t" in out


def test_rigidify(capsys):
    code, out, _ = run(capsys, "rigidify", "--example", "delta(2)", "--nondegenerate", "--list")
    assert code == 0 and "02\n" in out and "01 ∨ 12" in out and "[2, 1, 0]" in out


def test_examples(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0 and "torus" in out


def test_selftest_filter_and_faults(capsys):
    code, out, _ = run(capsys, "selftest", "--filter", "pi1")
    assert code == 0 and out.count("[PASS]") == 3 and out.rstrip().endswith("3/3 criteria passed")
    code, out, _ = run(capsys, "selftest", "--filter", "coalgebra", "--inject-fault", "aw-sign")
    assert code == 1 and "[FAIL]" in out
    code, out, _ = run(capsys, "selftest", "--filter", "rigid,cubes", "--inject-fault", "ez-sign")
    assert code == 1 and "[t|t]" in out
    code, out, _ = run(capsys, "selftest", "--filter", "9", "--json")
    assert code == 0 and json.loads(out)["passed"]
    assert run(capsys, "selftest", "--filter", "nothing-matches")[0] == 2
