import json

import pytest

from socialvote.cli import main, parse_story
from socialvote.io import read_streams, read_trajectory


def run(capsys, *argv):
    assert main(list(argv)) == 0
    return capsys.readouterr().out


def test_parse_story():
    s = parse_story("r=0.2, S=100")
    assert (s.r, s.submitter_fans) == (0.2, 100)
    assert parse_story("r=0.5").submitter_fans == 0


def test_simulate_zero_interest(capsys, tmp_path):
    out = tmp_path / "traj.csv"
    run(capsys, "simulate", "--story", "r=0,S=50", "--out", str(out))
    tr = read_trajectory(out)
    assert set(tr.votes) == {1.0} and tr.times[-1] == 2880


def test_simulate_json(capsys):
    doc = json.loads(run(capsys, "simulate", "--story", "r=0.3,S=10", "--format", "json"))
    assert doc["promoted_at"] is not None and doc["final_votes"] > 40
    assert doc["trajectory"][0] == [0.0, 1.0]


def test_mc_streams(capsys, tmp_path):
    path = tmp_path / "mc.jsonl"
    run(capsys, "mc", "--story", "r=0.2,S=20", "--runs", "3", "--seed", "5", "--out", str(path))
    streams = read_streams(path)
    assert len(streams) == 3 and len({s.seed for s in streams}) == 3
    again = tmp_path / "mc2.jsonl"
    run(capsys, "mc", "--story", "r=0.2,S=20", "--runs", "3", "--seed", "5", "--out", str(again))
    assert path.read_bytes() == again.read_bytes()


def test_mc_mean(capsys):
    out = run(capsys, "mc", "--story", "r=0.2,S=20", "--runs", "20", "--mean", "--horizon", "200")
    assert out.splitlines()[0] == "t_min,votes"


def test_fit_and_predict(capsys, tmp_path):
    traj = tmp_path / "t.csv"
    run(capsys, "simulate", "--story", "r=0.25,S=30", "--out", str(traj))
    fit = json.loads(run(capsys, "fit", "--obs", str(traj), "--fans", "30"))
    assert fit["r_hat"] == pytest.approx(0.25, rel=0.01)

    ev = tmp_path / "e.jsonl"
    run(capsys, "mc", "--story", "r=0.25,S=30", "--seed", "1", "--out", str(ev))
    fit = json.loads(run(capsys, "fit", "--obs", str(ev), "--first-k", "20"))
    assert 0 < fit["r_hat"] <= 1
    pred = json.loads(run(capsys, "predict", "--events", str(ev)))
    assert pred["predicted_final_votes"] >= 20


def test_fit_requires_fans(capsys, tmp_path):
    traj = tmp_path / "t.csv"
    run(capsys, "simulate", "--story", "r=0.25,S=30", "--out", str(traj))
    with pytest.raises(SystemExit) as exc:
        main(["fit", "--obs", str(traj)])
    assert exc.value.code == 1
    assert "fans" in json.loads(capsys.readouterr().err)["message"]


def test_boundary_nonincreasing(capsys):
    rows = run(capsys, "boundary", "--fans-grid", "0,10,100,1000").splitlines()
    assert rows[0] == "S,r_min"
    vals = [float(r.split(",")[1]) for r in rows[1:]]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_generate_evaluate_rdist(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n_stories": 12, "seed": 3}))
    summary = json.loads(run(capsys, "generate", "--spec", str(spec), "--out", str(tmp_path / "ds")))
    assert summary["n_stories"] == 12
    rep = json.loads(run(capsys, "evaluate", "--dataset", str(tmp_path / "ds"),
                         "--method", "extrapolate"))
    assert rep["notes"]["method"] == "extrapolate"
    rd = json.loads(run(capsys, "rdist", "--dataset", str(tmp_path / "ds"), "--all"))
    assert len(rd["stories"]) >= 2 and rd["lognormal"]["n"] == len(rd["stories"])


def test_usage_error_is_json(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--story", "r=0.1", "--bogus"])
    assert exc.value.code == 2
    assert json.loads(capsys.readouterr().err)["error"] == "UsageError"


def test_domain_error_is_json(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--story", "r=1.5"])
    assert exc.value.code == 1
    assert "message" in json.loads(capsys.readouterr().err)


def test_step_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--story", "r=0.1", "--step", "2"])
    assert json.loads(capsys.readouterr().err)["error"] == "StepSizeError"
