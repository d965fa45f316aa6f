import json
import os
import subprocess
import sys

import pytest

from clihelp import invoke
from queuelay import io
from queuelay.graph import complete_graph, fig3_witness
from queuelay.game import wintree_from_json


@pytest.fixture
def inputs(tmp_path):
    k4 = tmp_path / "k4.txt"
    k4.write_text(io.emit_graph(complete_graph(4)))
    f3 = tmp_path / "fig3.json"
    f3.write_text(io.dumps(io.sequence_to_json(fig3_witness())))
    bad = tmp_path / "bad.json"
    # vertices 0..3 in order; 0-3 and 1-2 share queue 0
    bad.write_text(io.dumps({"schema": "queuelay/1", "order": [0, 1, 2, 3],
                             "queues": {"0-1": 1, "0-2": 2, "0-3": 0, "1-2": 0, "1-3": 3, "2-3": 4}}))
    return {"k4": str(k4), "fig3": str(f3), "bad": str(bad), "dir": str(tmp_path)}


def test_solve_k4(inputs):
    code, out, _ = invoke(["solve", inputs["k4"], "--mode", "lqn"], inputs["dir"])
    assert code == 0 and json.loads(out)["value"] == 2


def test_solve_decision_unsat(inputs):
    code, out, _ = invoke(["solve", inputs["k4"], "--local", "1"], inputs["dir"])
    assert code == 1 and json.loads(out)["sat"] is False


def test_check_reports_rainbow(inputs):
    code, out, _ = invoke(["check", inputs["k4"], inputs["bad"], "--local", "2"], inputs["dir"])
    doc = json.loads(out)
    assert code == 1 and doc["violation"]["type"] == "rainbow"
    assert sorted(map(tuple, doc["violation"]["edges"])) == [(0, 3), (1, 2)]


def test_game_fig3(inputs):
    code, _, files = invoke(["game", "--level", "v", "--k", "2", "--l", "2", "--strategy", "fig3",
                             "-o", "{out}/tree.json"], inputs["dir"])
    assert code == 0
    tree = wintree_from_json(json.loads(files["tree.json"]))
    assert all(n.certificate.verify(n.state, n.move, tree.config) for n in tree.leaves())


def test_game_counter_layout_exit_code(inputs):
    code, out, _ = invoke(["game", "--level", "i", "--strategy", "one-child"], inputs["dir"])
    assert code == 1 and json.loads(out)["kind"] == "counter-layout"


def test_game_budget_exit_code(inputs):
    code, out, _ = invoke(["game", "--strategy", "fig3", "--budget", "5"], inputs["dir"])
    assert code == 3 and json.loads(out)["kind"] == "budget-exceeded"


def test_game_random_play_is_seeded(inputs):
    code, out, _ = invoke(["game", "--strategy", "lifted:fig3>iv>iii", "--play", "random", "--runs", "3",
                           "--seed", "7"], inputs["dir"])
    doc = json.loads(out)
    assert code == 0 and doc["level"] == 3 and sum(doc["outcomes"].values()) == 3


def test_gen_layout_check_render_pipeline(inputs):
    d = inputs["dir"]
    assert invoke(["gen", "ktree", "--k", "3", "--n", "15", "--seed", "4", "-o", "{out}/t.json"], d)[0] == 0
    code, _, files = invoke(["gen", "ktree", "--k", "3", "--n", "15", "--seed", "4", "-o", "{out}/t.json"], d)
    path = os.path.join(d, "t.json")
    with open(path, "wb") as fh:
        fh.write(files["t.json"])
    code, lay, _ = invoke(["layout", path], d)
    lpath = os.path.join(d, "lay.json")
    with open(lpath, "wb") as fh:
        fh.write(lay)
    code, out, _ = invoke(["check", path, lpath, "--local", "4"], d)
    assert code == 0 and json.loads(out)["locality"] <= 4
    code, svg, _ = invoke(["render", path, lpath, "--highlight", "auto"], d)
    assert code == 0 and svg.startswith(b"<?xml")


def test_bounds_fig3(inputs):
    code, out, _ = invoke(["bounds", inputs["fig3"]], inputs["dir"])
    doc = json.loads(out)
    assert doc["mad"] == {"num": 22, "den": 7}


def test_gen_families(inputs):
    for argv in (["gen", "mary", "--m", "2", "--t", "2"], ["gen", "halfclique", "--k", "3", "--s", "2"],
                 ["gen", "tree", "--n", "9", "--seed", "2"], ["gen", "gnp", "--n", "8", "--seed", "2"],
                 ["gen", "lower-bound", "--kprime", "2", "--k", "3", "--l", "1", "--s", "1"]):
        assert invoke(argv, inputs["dir"])[0] == 0


def test_usage_errors(inputs):
    assert invoke(["solve", "--bogus", inputs["k4"]], inputs["dir"])[0] == 2
    assert invoke(["game", "--strategy", "nope"], inputs["dir"])[0] == 2
    assert invoke(["layout", inputs["k4"]], inputs["dir"])[0] == 2  # star needs a sequence
    assert invoke(["gen", "lower-bound", "--strategy", "lifted:fig3>iv>iii>ii", "--s", "2"], inputs["dir"])[0] == 3


def test_entry_point_runs(inputs):
    res = subprocess.run([sys.executable, "-m", "queuelay.cli", "solve", inputs["k4"], "--mode", "qn"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["value"] == 2
