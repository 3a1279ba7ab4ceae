import io
import json

import pytest

from tlat.cli import main

F = None


@pytest.fixture(autouse=True)
def _fixtures(fixtures):
    global F
    F = fixtures


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--format", "json")
    return code, json.loads(out)


def test_chains_count():
    assert run("chains", "gen", "-n", 2, "-m", 2, "--count") == (0, "20\n", "")


def test_term_eq_absorption():
    code, out, _ = run("term", "eq", "a*(a+b)", "a")
    assert code == 0 and out == "equal\n"


def test_term_eq_reports_separating_valuation():
    code, obj = run_json("term", "eq", "a+b", "a")
    assert code == 1 and obj["status"] == "violation"
    assert obj["witness"]["valuation_true_on"] == ["b"]


def test_term_nf_golden():
    assert run("term", "nf", "(a+b)*(a+c)") == (0, "a+b*c\n", "")


def test_term_nf_over_poset_file():
    code, out, _ = run("term", "nf", "a*c", "-f", F / "n5.dsl")
    assert out == "a\n"


def test_lattice_laws_n5():
    code, obj = run_json("lattice", "laws", "-f", F / "n5.dsl")
    assert code == 1
    assert obj["schema"] == 1 and obj["command"] == "lattice laws"
    assert obj["witness"]["triple"] == ["a", "b", "c"]
    assert obj["laws"]["n5"] == ["a", "b", "c"]


def test_lattice_laws_square_passes():
    code, obj = run_json("lattice", "laws", "-f", F / "square.dsl")
    assert code == 0 and obj["status"] == "ok" and obj["laws"]["distributive"]


def test_lattice_laws_on_non_lattice():
    code, obj = run_json("lattice", "laws", "-f", F / "free2.dsl")
    assert code == 1 and obj["witness"]["missing"] == "meet"


def test_cong_quotient_golden():
    code, out, _ = run("cong", "quotient", "-f", F / "chain4.dsl", "--pair", "a", "b")
    assert code == 0
    assert out == ("pairs: (a, b)\nclasses: 3\n  {0}\n  {a, b}\n  {1}\n"
                   "postulates: pass\norder lifting: pass\n")


def test_cong_quotient_random_is_seeded():
    a = run("cong", "quotient", "-f", F / "m3.dsl", "--random", 2, "--seed", 5)
    b = run("cong", "quotient", "-f", F / "m3.dsl", "--random", 2, "--seed", 5)
    assert a == b and a[0] == 0


def test_decomposables_with_identification():
    code, obj = run_json("chains", "decomposables", "-n", 2, "-m", 2, "--identify", "u12=u22+u11")
    assert code == 0
    dec = {d["u"]: d["decomposable"] for d in obj["decomposables"]}
    assert dec == {"u11": False, "u12": True, "u21": False, "u22": False}


def test_chains_gen_decomposables_in_grid():
    code, obj = run_json("chains", "gen", "-n", 2, "-m", 3, "--decomposables")
    assert not any(d["decomposable"] for d in obj["decomposables"])


def test_chains_gen_listing_and_dot():
    code, out, _ = run("chains", "gen", "-n", 1, "-m", 1)
    assert out.splitlines()[0] == "n=1 m=1 elements=6"
    assert "2,1  u01 + u12" in out
    code, out, _ = run("chains", "gen", "-n", 1, "-m", 1, "--format", "dot")
    assert out.startswith("digraph grid {")


def test_chains_identity():
    code, obj = run_json("chains", "identity", "-n", 3, "-m", 3, "-k", 3)
    assert code == 0 and obj["checked"] == 9 + 36 + 100


def test_universal_build_chains(tmp_path):
    report = tmp_path / "u.json"
    code, obj = run_json("universal", "build", "-f", F / "chains22.dsl", "--report", report)
    assert code == 0 and obj["size"] == 20 and obj["stabilized"]
    assert obj["psi"] == {"homomorphism": True, "surjective": True, "injective": True,
                          "target_size": 20}
    saved = json.loads(report.read_text())
    assert saved["schema"] == 1 and saved["size"] == 20


def test_universal_depth_guard():
    code, out, err = run("universal", "build", "-f", F / "chains22.dsl", "--depth", 1)
    assert code == 3 and "depth" in err


def test_size_guard():
    code, out, err = run("chains", "gen", "-n", 5, "-m", 5, "--max-size", 100)
    assert code == 3 and "guard" in err


def test_cons_check_n5():
    code, obj = run_json("cons", "check", "-f", F / "n5cons.dsl")
    assert code == 1
    assert obj["witness"] == {"axiom": "SC4", "triple": ["a", "b", "c"], "failed": ["SC4"]}


def test_cons_check_raw_and_saturated():
    code, _ = run_json("cons", "check", "-f", F / "triangle.dsl", "--raw")
    assert code == 1
    code, obj = run_json("cons", "check", "-f", F / "triangle.dsl")
    assert code == 0 and all(v["pass"] for v in obj["axioms"].values())


def test_cons_saturate_lists_derivations():
    code, obj = run_json("cons", "saturate", "-f", F / "triangle.dsl")
    assert code == 0 and len(obj["derivations"]) == 29
    assert obj["derivations"][-1]["rule"] == "SC2'"


def test_euler_demo():
    code, obj = run_json("euler", "demo", "-w", 3)
    assert code == 0 and obj["report"]["forced_w_prime"] == 1
    assert obj["balanced_identity_0_100"]
    code, out, _ = run("euler", "demo", "-w", 0)
    assert "vacuous" in out


def test_dot_commands():
    code, out, _ = run("dot", "-f", F / "square.dsl")
    assert code == 0 and '"0" -> "x" [style=solid];' in out
    code, out, _ = run("dot", "-f", F / "triangle.dsl", "--what", "consistency", "--saturate")
    assert "style=dashed" in out


def test_parse_error_exit_and_position():
    code, out, err = run("poset", "check", "-f", F / "undeclared.dsl")
    assert code == 2 and "line 2, column 6" in err
    code, obj = run_json("poset", "check", "-f", F / "undeclared.dsl")
    assert obj["witness"] == {"line": 2, "column": 6}


def test_cycle_exit():
    code, obj = run_json("poset", "check", "-f", F / "cycle.dsl")
    assert code == 1 and sorted(obj["witness"]["cycle"]) == ["a", "b"]


def test_usage_errors():
    assert run("poset", "check")[0] == 2
    assert run("chains", "gen")[0] == 2
    assert run("poset", "check", "-f", F / "missing.dsl")[0] == 2
    assert run("term", "nf", "a+")[0] == 2
    assert run("bogus")[0] == 2
    assert run("euler", "demo", "--format", "dot")[0] == 2


def test_poset_check_golden():
    code, out, _ = run("poset", "check", "-f", F / "n5.dsl")
    assert out == ("elements: 5\nbottom: 0\ntop: 1\nlattice: yes\nhasse edges: 5\n"
                   "  0 < a\n  0 < b\n  a < c\n  b < 1\n  c < 1\n")
