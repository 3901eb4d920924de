"""Command line behaviour: output shape, determinism, exit codes."""

import json

import pytest

from onedpp.cli import main
from onedpp.groupcarries import q8_setup, setup_to_json


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_prob_text_output(capsys):
    code, out = run(capsys, ["prob", "--model", "carries:b=2", "--n", "8",
                             "--ones", "1,5"])
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "# onedpp 0.1.0"
    assert lines[1].startswith("# config: ")
    assert lines[-1] == "9/256"


def test_prob_json_output(capsys):
    code, out = run(capsys, ["prob", "--model", "carries:b=10", "--n", "8",
                             "--zeros", "1,2,3,4,5,6,7", "--format", "json"])
    doc = json.loads(out)
    assert code == 0
    assert doc["probability"] == "2431/10000000"
    assert doc["pattern"] == "0000000"
    assert doc["config"]["model"] == "carries:b=10"


def test_prob_requires_exactly_one_selector(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["prob", "--model", "carries:b=2", "--n", "4",
              "--ones", "1", "--zeros", "2"])
    assert exc.value.code == 2


def test_prob_pattern_length_must_match(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["prob", "--model", "carries:b=2", "--n", "5", "--pattern", "10"])
    assert exc.value.code == 2


def test_corr_output(capsys):
    code, out = run(capsys, ["corr", "--model", "descents:uniform", "--n", "9",
                             "--sites", "2,3,4"])
    assert code == 0
    assert out.splitlines()[-1] == "1/24"


def test_kernel_range_output(capsys):
    code, out = run(capsys, ["kernel", "--model", "carries:b=3",
                             "--range", "-1..5"])
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "m,value"
    assert lines[3] == "-1,1/3"
    assert lines[4] == "0,1/3"
    assert lines[5] == "1,2/9"
    assert lines[8] == "4,0"


def test_kernel_needs_one_mode(capsys):
    with pytest.raises(SystemExit):
        main(["kernel", "--model", "carries:b=2"])
    with pytest.raises(SystemExit):
        main(["kernel", "--model", "carries:b=2", "--n", "5",
              "--range", "-1..3"])


def test_kernel_dense_type_b(capsys):
    code, out = run(capsys, ["kernel", "--model", "descents:typeB:n=2",
                             "--n", "3"])
    assert code == 0
    rows = dict()
    for line in out.splitlines()[3:]:
        x, y, v = line.split(",")
        rows[(int(x), int(y))] = v
    assert rows[(1, 1)] == "1/2"


def test_counts_csv(capsys):
    code, out = run(capsys, ["counts", "--model", "descents:uniform",
                             "--n", "4"])
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "count,probability"
    assert lines[3] == "0,1/24"
    assert lines[4] == "1,11/24"


def test_stats_json(capsys):
    code, out = run(capsys, ["stats", "--model", "carries:b=2", "--n", "10"])
    doc = json.loads(out)
    assert code == 0
    assert doc["mean"] == "9/4"
    assert doc["within_bound"] is True


def test_simulate_requires_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--model", "carries:b=2", "--n", "4", "--reps", "10"])
    assert exc.value.code == 2


def test_simulate_is_byte_stable(capsys):
    argv = ["simulate", "--model", "descents:uniform", "--n", "5",
            "--reps", "200", "--seed", "9"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second
    total = sum(int(line.split(",")[1]) for line in first.splitlines()[3:])
    assert total == 200


def test_oracle_distribution_output(capsys):
    code, out = run(capsys, ["oracle", "--model", "carries:b=2", "--n", "4"])
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "pattern,probability"
    probs = dict(line.split(",") for line in lines[3:])
    assert probs["000"] == "5/16"
    assert probs["101"] == "1/16"


def test_oracle_check_passes_for_catalog_models(capsys):
    for model, n in (("carries:b=2", 5), ("descents:mallows:q=1/2", 5),
                     ("descents:typeB:n=3", 4), ("genericpoints:n=3", 5)):
        code, out = run(capsys, ["oracle-check", "--model", model, "--n", str(n)])
        assert code == 0, out
        assert "mismatches: 0" in out


def test_group_flow(tmp_path, capsys):
    path = tmp_path / "q8.json"
    path.write_text(json.dumps(setup_to_json(q8_setup())))
    code, out = run(capsys, ["group", "--file", str(path), "--n", "4",
                             "--check"])
    assert code == 0
    assert "sigma,tau,carry" in out
    assert "mismatches: 0" in out


def test_group_rejects_bad_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"order\": 3}")
    with pytest.raises(SystemExit) as exc:
        main(["group", "--file", str(path)])
    assert exc.value.code == 2


def test_connectivity_kernel_and_simulation(tmp_path, capsys):
    code, out = run(capsys, ["connectivity", "--n", "4"])
    assert code == 0
    assert out.splitlines()[2] == "x,y,value"
    with pytest.raises(SystemExit):
        main(["connectivity", "--n", "4", "--simulate"])
    code, out = run(capsys, ["connectivity", "--n", "4", "--simulate",
                             "--seed", "3", "--reps", "25"])
    assert code == 0
    total = sum(int(line.split(",")[1]) for line in out.splitlines()[3:])
    assert total == 25


def test_validate_model(capsys):
    code, out = run(capsys, ["validate", "--model", "carries:b=3", "--n", "5",
                             "--max-n", "5"])
    doc = json.loads(out)
    assert code == 0
    assert doc["ok"] is True
    assert doc["failures"] == []
    assert doc["spec"]["variant"] == "stationary_e"


def test_validate_spec_file_reports_failures(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "variant": "stationary_a", "horizon": 4, "exact_tail": True,
        "a": ["1", "0", "1"]}))
    code, out = run(capsys, ["validate", "--spec-file", str(path),
                             "--max-n", "4"])
    doc = json.loads(out)
    assert code == 0
    assert doc["ok"] is False
    assert [3, "10", "-1"] in doc["failures"]


def test_validate_round_trips_through_emitted_spec(tmp_path, capsys):
    code, out = run(capsys, ["validate", "--model", "descents:uniform",
                             "--n", "4", "--max-n", "4"])
    doc = json.loads(out)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc["spec"]))
    code2, out2 = run(capsys, ["validate", "--spec-file", str(path),
                               "--max-n", "4"])
    doc2 = json.loads(out2)
    assert code2 == 0
    assert doc2["ok"] is True
    assert doc2["checked"] == doc["checked"]


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "kernel.csv"
    code = main(["kernel", "--model", "carries:b=2", "--range", "-1..3",
                 "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    content = target.read_text()
    assert content.splitlines()[3] == "-1,1/2"


def test_unknown_model_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["prob", "--model", "weather:x=1", "--n", "4", "--ones", "1"])
    assert exc.value.code == 2
