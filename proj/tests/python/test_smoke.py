import json

import pytest

import ramsey_trees as rt


def test_counts():
    assert [len(rt.enum_trees(n)) for n in range(1, 7)] == [rt.catalan(n - 1) for n in range(1, 7)]
    assert rt.enum_trees(3) == [[None, 0, 0], [None, 0, 1]]
    chain = lambda n: [None] + list(range(n - 1))
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert rt.count_rigid_surjections(chain(n), chain(k)) == rt.stirling2(n, k)
    assert rt.count_embeddings([None, 0], [None, 0, 0]) == 2


def test_bad_tree_raises():
    with pytest.raises(rt.RamseyError):
        rt.count_embeddings([None, 0, 0, 1], [None])


def test_run_witness_check():
    c2 = [None, 0]
    c3 = [None, 0, 1]
    code, rep = rt.run("witness check", mode="mn", b=2, s=c2, t=c3, u=c3)
    assert code == 1
    assert rep["verdict"] == "fails"
    assert rep["schema_version"] == rt.schema_versions()["report"]
    code, rep = rt.run("witness check", mode="mn", b=2, s=c2, t=c2, u=c2)
    assert (code, rep["verdict"]) == (0, "holds")


def test_cli_matches_run():
    code, out, err = rt.cli("--json", "witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3",
                            "--max-vertices", "8")
    assert code == 0, err
    rep = json.loads(out)
    assert rep["witness"]["parent"] == [None, 0, 1, 2, 3, 4]
    again = rt.cli("--jobs", "2", "--json", "witness", "search", "--mode", "chain", "--s", "chain:2", "--t",
                   "chain:3", "--max-vertices", "8")
    assert again[1] == out


def test_cli_errors_and_caps():
    assert rt.cli("trees", "info", "{oops")[0] == 2
    assert rt.cli("witness", "search", "--mode", "chain", "--s", "chain:2", "--t", "chain:3", "--max-nodes", "1")[0] == 3
    assert "witness check" in rt.commands()
