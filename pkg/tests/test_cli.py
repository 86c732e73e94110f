import json

from polysched.cli import main
from polysched.instances import read_instance, read_schedule


def run(*argv):
    return main(list(argv))


def test_gen_verify_pipeline(tmp_path):
    inst = tmp_path / "stars.json"
    sched = tmp_path / "rr.json"
    assert run("gen", "stars", "--d", "3", "-o", str(inst)) == 0
    assert run("run", "colorrr", str(inst), "-o", str(sched)) == 0
    assert run("verify", str(inst), str(sched)) == 0
    # manifests accompany outputs
    manifest = json.loads((tmp_path / "rr.json.manifest.json").read_text())
    assert manifest["subcommand"] == "run" and str(inst) in manifest["inputs"]


def test_verify_detects_corruption(tmp_path):
    inst = tmp_path / "i.json"
    sched = tmp_path / "s.json"
    assert run("gen", "random", "--seed", "5", "--kind", "dps", "--people", "5",
               "--edge-prob", "0.5", "-o", str(inst)) == 0
    loaded = read_instance(str(inst))
    from polysched.schedulers import color_edges, color_schedule
    from polysched.instances import write_schedule

    good = color_schedule(loaded, color_edges(loaded))
    write_schedule(str(sched), good)
    assert run("verify", str(inst), str(sched)) == 0
    doc = json.loads(sched.read_text())
    doc["days"][0] = []  # drop a day's matching
    sched.write_text(json.dumps(doc))
    assert run("verify", str(inst), str(sched)) == 1


def test_convert_roundtrip(tmp_path):
    ops = tmp_path / "ops.json"
    dps = tmp_path / "dps.json"
    back = tmp_path / "back.json"
    assert run("gen", "stars", "--d", "2", "-o", str(ops)) == 0
    assert run("convert", "--to", "dps", "--heat", "1", str(ops), str(dps)) == 0
    assert run("convert", "--to", "ops", str(dps), str(back)) == 0
    assert read_instance(str(back)).growth == read_instance(str(ops)).growth


def test_rf_run_and_outputs(tmp_path):
    inst = tmp_path / "kn.json"
    out = tmp_path / "rf.json"
    assert run("gen", "kn", "--n", "5", "-o", str(inst)) == 0
    tie = str(inst) + ".tie.json"
    assert run("run", "rf", "--x", "4", "--horizon", "120", "--tie-order", tie,
               str(inst), "-o", str(out)) == 0
    heat_doc = json.loads((tmp_path / "rf.json.heat.json").read_text())
    assert "max_heat_seen" in heat_doc and len(read_schedule(str(out)).days) == 120


def test_density_and_oracle(tmp_path, capsys):
    inst = tmp_path / "s.json"
    assert run("gen", "stars", "--d", "2", "-o", str(inst)) == 0
    capsys.readouterr()
    assert run("density", str(inst)) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["value"] == "1/1" and doc["gstar"] == "1/1"
    assert run("density", str(inst), "--bounds-only") == 0
    capsys.readouterr()
    assert run("oracle", "optimal-heat", str(inst)) == 0
    assert capsys.readouterr().out.strip() == "1/1"


def test_oracle_guard_refusal(tmp_path):
    inst = tmp_path / "big.json"
    assert run("gen", "random", "--seed", "2", "--kind", "dps", "--people", "8",
               "--edge-prob", "0.9", "--freqs", "9,12", "-o", str(inst)) == 0
    assert run("oracle", "feasible", str(inst), "--guard", "10") == 3


def test_reduce_with_witness(tmp_path):
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 2\n1 2 0\n-1 0\n")
    poly = tmp_path / "poly.json"
    assign = tmp_path / "assign.txt"
    assign.write_text("-1\n+2\n")
    wit = tmp_path / "wit.json"
    assert run("reduce", str(cnf), "-o", str(poly), "--witness", str(assign),
               "--witness-out", str(wit)) == 0
    assert run("verify", str(poly), str(wit)) == 0
    sidecar = json.loads((tmp_path / "poly.json.gadgets.json").read_text())
    assert set(sidecar) == {"sex", "gadget_of", "expected_color"}


def test_bench_csv(tmp_path):
    out = tmp_path / "bench.csv"
    assert run("bench", "--stars", "2", "--count", "2", "-o", str(out)) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("instance,")
    assert len(lines) == 1 + 2 + 2


def test_dps_instance_refused_for_ops_command(tmp_path):
    inst = tmp_path / "d.json"
    assert run("gen", "random", "--seed", "1", "--kind", "dps", "-o", str(inst)) == 0
    assert run("oracle", "optimal-heat", str(inst)) == 2
