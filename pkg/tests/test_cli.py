import json
import math

import pytest

import qlgame as ql
import helpers
from qlgame.cli import main

VIOLATING = "0,2.0943951023931953,1.0471975511965976"


@pytest.fixture
def d1_file(tmp_path):
    path = tmp_path / "d1.json"
    path.write_text(json.dumps(helpers.D1_RAW))
    return path


@pytest.fixture
def game_file(tmp_path):
    path = tmp_path / "game.json"
    path.write_text(json.dumps(ql.game_to_json(helpers.zero_sum_spec())))
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_d1(capsys, d1_file):
    code, out, _ = run(capsys, "validate", "--input", d1_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["valid"] and payload["r1_symmetric"] and payload["r2_positive"]
    assert payload["reversibility"]["max_discrepancy"] == pytest.approx(0.125)


def test_validate_rejects_bad_data(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    raw = dict(helpers.D1_RAW)
    raw["trans_b_given_a"] = [[0.7, 0.4], [0.25, 0.75]]
    bad.write_text(json.dumps(raw))
    code, out, err = run(capsys, "validate", "--input", bad)
    assert code == 1
    assert out == ""
    assert "trans_b_given_a" in err and "1.1" in err


def test_qlra_d1_values(capsys, d1_file):
    code, out, _ = run(capsys, "qlra", "--input", d1_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["classification"] == "trigonometric"
    assert payload["lambda"][0] == pytest.approx(0.204124145232, abs=1e-9)
    assert payload["lambda"][1] == pytest.approx(-0.204124145232, abs=1e-9)


def test_qlra_hyperbolic_exits_1_writes_nothing(capsys, tmp_path):
    src = tmp_path / "hyp.json"
    src.write_text(json.dumps(helpers.HYPERBOLIC_RAW))
    out_path = tmp_path / "out.json"
    code, out, err = run(capsys, "qlra", "--input", src, "--output", out_path)
    assert code == 1
    assert "hyperbolic context" in err
    assert not out_path.exists()


def test_validate_qlra_validate_round_trip(capsys, d1_file, tmp_path):
    code, out, _ = run(capsys, "qlra", "--input", d1_file)
    payload = json.loads(out)
    back = tmp_path / "reconstructed.json"
    back.write_text(json.dumps(payload["reconstructed"]))
    code, out, _ = run(capsys, "validate", "--input", back)
    assert code == 0
    assert json.loads(out)["valid"]


def test_round_trip_more_fixtures(capsys, tmp_path):
    fixtures = [
        {
            "marginal_a": [0.3, 0.7],
            "marginal_b": [0.45, 0.55],
            "trans_b_given_a": [[0.6, 0.4], [0.4, 0.6]],
            "trans_a_given_b": [[0.6, 0.4], [0.4, 0.6]],
        },
        {
            "marginal_a": [0.5, 0.5],
            "marginal_b": [0.5, 0.5],
            "trans_b_given_a": [[0.5, 0.5], [0.5, 0.5]],
            "trans_a_given_b": [[0.5, 0.5], [0.5, 0.5]],
        },
    ]
    for k, raw in enumerate(fixtures):
        src = tmp_path / f"ctx{k}.json"
        src.write_text(json.dumps(raw))
        code, out, _ = run(capsys, "qlra", "--input", src)
        assert code == 0
        back = tmp_path / f"back{k}.json"
        back.write_text(json.dumps(json.loads(out)["reconstructed"]))
        code, _, _ = run(capsys, "validate", "--input", back)
        assert code == 0


def test_average_with_ql(capsys, d1_file, game_file):
    code, out, _ = run(
        capsys, "average", "--game", game_file, "--context", d1_file, "--ql"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["totals"]["bob"] == pytest.approx(0.0, abs=1e-10)
    assert payload["ql_totals"]["bob"] == pytest.approx(0.0, abs=1e-10)
    assert payload["parts"][0]["bob"] == pytest.approx(0.5)


def test_bell_single_triple(capsys):
    code, out, _ = run(capsys, "bell", "--thetas", VIOLATING)
    assert code == 0
    header, row = out.strip().splitlines()
    assert header.startswith("theta1,theta2,theta3,cov_ab")
    cells = row.split(",")
    assert float(cells[6]) == pytest.approx(1.0)  # lhs
    assert float(cells[7]) == pytest.approx(0.5)  # rhs
    assert cells[8] == "true" and cells[9] == "false"


def test_bell_grid(capsys):
    code, out, _ = run(capsys, "bell", "--grid", str(math.pi / 2.0))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 64


def test_bell_grid_default_step(capsys):
    code, out, _ = run(capsys, "bell", "--grid")
    assert code == 0
    assert len(out.strip().splitlines()) == 1 + 24**3


def test_bell_requires_exactly_one_mode(capsys):
    code, _, err = run(capsys, "bell")
    assert code == 1
    assert "exactly one" in err
    code, _, _ = run(capsys, "bell", "--thetas", "0,0,0", "--grid", "0.5")
    assert code == 1


def test_feasibility_thetas(capsys):
    code, out, _ = run(capsys, "feasibility", "--thetas", "0,0,0")
    assert code == 0
    payload = json.loads(out)
    assert payload["feasible"]
    assert payload["witness"]["FFF"] == pytest.approx(0.5, abs=1e-9)
    assert payload["witness"]["III"] == pytest.approx(0.5, abs=1e-9)

    code, out, _ = run(capsys, "feasibility", "--thetas", VIOLATING)
    payload = json.loads(out)
    assert code == 0 and not payload["feasible"] and payload["witness"] is None


def test_feasibility_from_json(capsys, tmp_path):
    system = {
        "marginal_a": [0.5, 0.5],
        "marginal_b": [0.5, 0.5],
        "marginal_c": [0.5, 0.5],
        "joint_ab": [[0.25, 0.25], [0.25, 0.25]],
        "joint_bc": [[0.25, 0.25], [0.25, 0.25]],
        "joint_ca": [[0.25, 0.25], [0.25, 0.25]],
    }
    path = tmp_path / "system.json"
    path.write_text(json.dumps(system))
    code, out, _ = run(capsys, "feasibility", "--input", path)
    assert code == 0
    assert json.loads(out)["feasible"]


def test_simulate_deterministic(capsys, d1_file, game_file):
    args = (
        "simulate", "--game", game_file, "--context", d1_file,
        "--trials", "5000", "--seed", "42",
    )
    code, first, _ = run(capsys, *args)
    assert code == 0
    code, second, _ = run(capsys, *args)
    assert first == second
    payload = json.loads(first)
    assert payload["trials"] == 5000
    assert payload["max_deviation"] < 0.1


def test_simulate_three_player_pairs(capsys, tmp_path):
    thetas = (0.0, 2.0 * math.pi / 3.0, math.pi / 3.0)
    names = ("alice", "bob", "cecilia")
    contexts = helpers.spin_pair_contexts(*thetas, names=names)
    pairs_payload = {
        "pairs": [
            {
                "chooser": chooser,
                "tester": tester,
                "context": ql.context_to_json(ctx),
            }
            for (chooser, tester), ctx in contexts.items()
        ]
    }
    ctx_path = tmp_path / "pairs.json"
    ctx_path.write_text(json.dumps(pairs_payload))
    game_path = tmp_path / "game3.json"
    game_path.write_text(json.dumps(ql.game_to_json(helpers.three_player_spin_spec())))
    code, out, _ = run(
        capsys, "simulate", "--game", game_path, "--context", ctx_path,
        "--trials", "20000", "--seed", "5",
    )
    assert code == 0
    payload = json.loads(out)
    assert len(payload["parts"]) == 3
    assert payload["analytic_parts"][0]["bob"] == pytest.approx(-0.5, abs=1e-9)


def test_estimate(capsys, tmp_path):
    path = tmp_path / "seq.txt"
    path.write_text("F\nF\nI\nF\n")
    code, out, _ = run(capsys, "estimate", "--input", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["frequencies"]["F"] == 0.75
    assert payload["stabilization"] is None  # too short for the default window


def test_estimate_with_stabilization(capsys, tmp_path):
    path = tmp_path / "seq.txt"
    path.write_text("F\n" * 500)
    code, out, _ = run(capsys, "estimate", "--input", path, "--window", "0.2")
    payload = json.loads(out)
    assert payload["stabilization"]["stabilized"] is True
    assert payload["stabilization"]["max_tail_oscillation"] == 0.0


def test_output_file_written_on_success(capsys, d1_file, tmp_path):
    out_path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "qlra", "--input", d1_file, "--output", out_path)
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["classification"] == "trigonometric"


def test_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "qlra", "--input", "/does/not/exist.json")
    assert code == 2
    assert "error" in err


def test_unknown_subcommand_exits_2(capsys):
    assert main(["bogus"]) == 2


def test_malformed_json_exits_2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", "--input", path)
    assert code == 2
