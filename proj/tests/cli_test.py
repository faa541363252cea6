"""End-to-end checks of the diskdense CLI: exit codes, determinism, and
schema validation of every JSON record it prints."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
SCHEMA = json.loads(pathlib.Path(sys.argv[2]).read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)

FIVE_DISK = "# name: five_disk\n0,0,0,1\n1,1.5,0.9,1\n2,1.5,-0.9,1\n3,3,0,1\n4,4.8,0,1\n"

failures = []


def run(*args, code=0):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if proc.returncode != code:
        failures.append(f"{args}: exit {proc.returncode}, wanted {code}\n{proc.stderr}")
    return proc


def record(*args):
    proc = run(*args)
    try:
        rec = json.loads(proc.stdout)
    except json.JSONDecodeError:
        failures.append(f"{args}: output is not JSON: {proc.stdout[:200]!r}")
        return {}
    for err in VALIDATOR.iter_errors(rec):
        failures.append(f"{args}: schema violation: {err.message} at {list(err.path)}")
    return rec


def expect(cond, what):
    if not cond:
        failures.append(what)


with tempfile.TemporaryDirectory() as tmp:
    tmp = pathlib.Path(tmp)
    fig = tmp / "five_disk.txt"
    fig.write_text(FIVE_DISK)

    rec = record("exact", fig)
    expect(rec.get("result", {}).get("density") == "5/4", "exact five_disk density")
    expect(rec.get("result", {}).get("subset") == [0, 1, 2, 3], "exact five_disk subset")
    expect(rec.get("instance") == {"name": "five_disk", "n": 5}, "instance block")
    rec = record("peel", fig)
    expect(rec["result"]["density_value"] >= 0.625, "peel ratio")

    inst = tmp / "u.txt"
    gen = record("gen", "--kind", "uniform", "--n", 300, "--seed", 1, "--out", inst)
    expect(inst.exists(), "gen wrote the instance")
    again = run("gen", "--kind", "uniform", "--n", 300, "--seed", 1).stdout
    expect(again == inst.read_text(), "gen to stdout matches the file")
    run("gen", "--kind", "hexagon", "--n", 3, code=2)
    run("gen", "--n", 5, "--rmin", 0, code=2)

    a = run("approx2", inst, "--eps", 0.5, "--seed", 1).stdout
    b = run("approx2", inst, "--eps", 0.5, "--seed", 1).stdout
    expect(a == b, "approx2 output is byte-identical across runs")
    rec = record("approx2", inst, "--eps", 0.5, "--seed", 1)
    expect(rec["result"]["density"] is None and "estimated" in rec["result"]["flags"],
           "approx2 reports the estimate by default")
    rec = record("approx2", inst, "--eps", 0.5, "--seed", 1, "--exact-density")
    expect(rec["result"]["density"] is not None, "approx2 --exact-density")
    expect(abs(rec["parameters"]["theta"] - 0.5 / 15) < 1e-15, "theta exposed")

    a = run("approx1", inst, "--eps", 0.5, "--seed", 2).stdout
    b = run("approx1", inst, "--eps", 0.5, "--seed", 2).stdout
    expect(a == b, "approx1 output is byte-identical across runs")
    rec = record("approx1", inst, "--seed", 2, "--timings", "--c-prime", 16,
                 "--sparse-threshold", 3)
    expect("timings" in rec and "wall_seconds" in rec["result"], "timings on request")
    expect(rec["parameters"]["c_prime"] == 16 and rec["parameters"]["sparse_threshold"] == 3,
           "approx1 flags reach the library")
    expect(rec["diagnostics"]["path"] in ("sparse", "sampled"), "approx1 path recorded")
    out = tmp / "a1.json"
    run("approx1", inst, "--seed", 2, "--out", out)
    expect(out.read_text() == a, "--out writes the same record as stdout")

    lines = run("pairs", fig).stdout.split("\n")
    expect(lines[:6] == ["0 1", "0 2", "1 2", "1 3", "2 3", "3 4"], "pairs lines")
    rec = record("pairs", fig, "--format", "json")
    expect(rec["result"]["pairs"] == [[0, 1], [0, 2], [1, 2], [1, 3], [2, 3], [3, 4]],
           "pairs json")
    naive = record("pairs", inst, "--format", "json", "--naive")
    sweep = record("pairs", inst, "--format", "json")
    expect(naive["result"] == sweep["result"], "naive and sweep pairs agree")

    rec = record("estimate", fig, "--query-id", 1, "--eps", 0.25)
    expect(rec["result"]["estimate"] == 4 and rec["result"]["exact"], "estimate exact")
    rec = record("estimate", fig, "--query", "100,100,1")
    expect(rec["result"]["estimate"] == 0 and rec["result"]["sample_id"] is None,
           "estimate empty")
    run("estimate", fig, "--query", "1,2", code=2)
    run("estimate", fig, code=2)
    run("estimate", fig, "--query-id", 1, "--eps", 0.6, code=2)

    rec = record("probe", fig, "--query-id", 0, "--limit", 2)
    expect(rec["result"]["overflow"] is True, "probe overflow")
    rec = record("probe", fig, "--query-id", 0)
    expect(rec["result"]["ids"] == [0, 1, 2], "probe ids")

    clique = tmp / "k64.txt"
    run("gen", "--kind", "clique", "--n", 64, "--out", clique)
    rec = record("audit-sampler", clique, "--eps", 0.25, "--draws", 10000)
    expect(rec["result"]["pass"] is True, "clique(64) audit passes")
    pair = tmp / "pair.txt"
    pair.write_text("0,0,0,1\n1,2,0,1\n")
    rec = record("audit-sampler", pair, "--draws", 1000)
    expect(all(q["tv_distance"] == 0 for q in rec["result"]["queries"]), "tangent pair TV 0")
    apart = tmp / "apart.txt"
    apart.write_text("0,0,0,1\n1,5,0,1\n2,10,0,1\n")
    rec = record("audit-sampler", apart, "--draws", 1000)
    expect(rec["result"]["pass"] and all(q.get("empty_support") for q in rec["result"]["queries"]),
           "disjoint disks pass vacuously")
    run("audit-sampler", clique, "--draws", 10, code=2)

    rec = record("bench", "--n", "1000,2000", "--seed", 1)
    expect(len(rec["result"]["runs"]) == 2, "bench runs")
    run("bench", "--n", "1e3,abc", code=2)

    run(code=2)
    run("frobnicate", code=2)
    run("exact", fig, "--bogus", code=2)
    run("exact", tmp / "missing.txt", code=2)
    run("exact", fig, "--max-n", 3, code=2)
    run("approx1", fig, "--eps", 1.5, code=2)
    run("approx2", fig, "--eps", 0, code=2)
    bad = tmp / "bad.txt"
    bad.write_text("0,0,0,1\n1,0,0,0\n")
    proc = run("exact", bad, code=2)
    expect("line 2" in proc.stderr, "parse errors name the line")
    run("--help", code=0)

if failures:
    print("\n".join(failures))
    sys.exit(1)
print("cli checks passed")
