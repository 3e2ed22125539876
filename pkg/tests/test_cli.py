"""CLI surface: each subcommand drives the documented interface."""

import json

import pytest

from twirlkit.cli import main


def test_groups_enumerate_to_file(tmp_path, capsys):
    out = tmp_path / "groups.txt"
    assert main(["groups", "--n", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6
    assert lines[0] == "order=1; elems=012"
    assert "wrote 6 subgroups" in capsys.readouterr().out


def test_groups_sample_stdout(capsys):
    assert main(["groups", "--n", "4", "--sample", "--max-per-order", "2",
                 "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("order=1; elems=0123")


def test_catalog_prints_gate_list(capsys):
    assert main(["catalog", "--id", "3", "--n", "4", "--depth", "1"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "ANSATZ 3"
    assert "GATE CRZ q=3,2 param=x8" in out


def test_twirl_dump(capsys):
    assert main(["twirl", "--ansatz", "3", "--n", "4", "--depth", "1",
                 "--subgroup", "full", "--dump"]) == 0
    out = capsys.readouterr().out
    assert "RX q=0 theta=x0 (commuting)" in out
    assert "0.125*IIIX + 0.125*IIXI + 0.125*IXII + 0.125*XIII" in out


def test_synth_metrics_json(capsys):
    assert main(["synth", "--ansatz", "3", "--n", "4", "--depth", "1",
                 "--subgroup", "trivial", "--metrics"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "ok"
    assert payload["growth_ratio"] == 1.0


def test_synth_dump_lists_instructions(capsys):
    assert main(["synth", "--ansatz", "1", "--n", "4", "--depth", "1",
                 "--subgroup", "trivial", "--dump"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "RX q=0 angle=1*x0"
    assert len(out) == 8


def test_metrics_record_json(capsys, tmp_path):
    assert main(["metrics", "--ansatz", "1", "--n", "4", "--depth", "1",
                 "--subgroup", "trivial", "--seed", "5", "--samples", "100",
                 "--bins", "75"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["norm_metric"] == 0.0
    assert abs(record["entangling_q"]) < 1e-12
    assert record["status"] == "ok"


def test_subgroup_from_file_and_id(tmp_path, capsys):
    groups = tmp_path / "g.txt"
    main(["groups", "--n", "4", "--out", str(groups)])
    capsys.readouterr()
    assert main(["twirl", "--ansatz", "1", "--n", "4", "--depth", "1",
                 "--subgroup", f"{groups}:3"]) == 0
    capsys.readouterr()
    assert main(["twirl", "--ansatz", "1", "--n", "4", "--depth", "1",
                 "--subgroup", "0123;1032"]) == 0


def test_sweep_command(tmp_path, capsys):
    groups = tmp_path / "g.txt"
    main(["groups", "--n", "4", "--out", str(groups)])
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "ansatzes=1\nn=4\ndepths=1\n"
        f"subgroup_source=file\nsubgroup_file={groups}\n"
        "metrics=norm,circuit\nmaster_seed=1\n"
        f"out_csv={tmp_path / 'r.csv'}\nout_json={tmp_path / 'r.json'}\n"
    )
    capsys.readouterr()
    assert main(["sweep", "--config", str(cfg), "--report"]) == 0
    out = capsys.readouterr().out
    assert "wrote 30 records" in out
    assert "sweep summary" in out
    assert (tmp_path / "r.csv").exists()


def test_unknown_subgroup_spec():
    with pytest.raises(FileNotFoundError):
        main(["twirl", "--ansatz", "1", "--n", "4", "--depth", "1",
              "--subgroup", "nonexistent.txt"])
