#!/usr/bin/env python3
"""Golden-file and contract tests for the command-line binary.

Usage: run_cli_tests.py <tpj-binary> <golden-dir> <data-dir>

Each golden file pins the `result` payload and `ok` flag of one invocation
(volatile fields like elapsed time are ignored).  Regenerate a golden file by
deleting it and re-running with REGEN=1 in the environment.
"""

import json
import os
import subprocess
import sys

BIN, GOLDEN, DATA = sys.argv[1], sys.argv[2], sys.argv[3]
REGEN = os.environ.get("REGEN") == "1"

failures = []


def run(args, expect_code=0):
    proc = subprocess.run([BIN] + args, capture_output=True, text=True, timeout=600)
    if proc.returncode != expect_code:
        failures.append(
            f"{' '.join(args)}: exit {proc.returncode}, expected {expect_code}\n"
            f"  stdout: {proc.stdout[:400]}\n  stderr: {proc.stderr[:400]}"
        )
        return None
    return proc


def run_json(args, expect_code=0):
    proc = run(args + ["--json"], expect_code)
    if proc is None:
        return None
    try:
        return json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        failures.append(f"{' '.join(args)}: output is not valid JSON ({e})")
        return None


def golden(name, args, expect_code=0):
    report = run_json(args, expect_code)
    if report is None:
        return
    snap = {"ok": report.get("ok"), "result": report.get("result")}
    path = os.path.join(GOLDEN, name + ".json")
    if not os.path.exists(path):
        if REGEN:
            with open(path, "w") as f:
                json.dump(snap, f, indent=2, sort_keys=True)
                f.write("\n")
            print(f"regenerated {name}")
            return
        failures.append(f"{name}: golden file missing (run with REGEN=1 to create)")
        return
    with open(path) as f:
        want = json.load(f)
    if snap != want:
        failures.append(
            f"{name}: output diverged from golden file\n"
            f"  got:  {json.dumps(snap, sort_keys=True)[:600]}\n"
            f"  want: {json.dumps(want, sort_keys=True)[:600]}"
        )


star = os.path.join(DATA, "star.json")
tri = os.path.join(DATA, "triangle.json")

# ---- golden outputs on the two pinned instances -----------------------------

golden("star-enumerate-edge", ["enumerate", "--input", star, "--mode", "edge"])
golden("star-check-jump", ["check-jump", "--input", star, "--mode", "edge"])
golden("star-max-packing", ["max-packing", "--input", star, "--mode", "edge"])
golden("star-member-111", ["member", "--input", star, "--mode", "edge",
                           "--demand", '{"a":1,"b":1,"c":1}', "--via", "both"])
golden("star-polytope-rows", ["polytope", "rows", "--input", star])
golden("star-polytope-vertices", ["polytope", "vertices", "--input", star])
golden("star-polytope-member-111", ["polytope", "member", "--input", star,
                                    "--point", '{"a":1,"b":1,"c":1}'])
golden("star-polytope-relaxed-111", ["polytope", "relaxed", "--input", star,
                                     "--point", '{"a":1,"b":1,"c":1}'])
golden("star-polytope-bisubmodular", ["polytope", "bisubmodular", "--input", star])
golden("star-parity", ["parity-check", "--input", star])
golden("star-exchange-constructive", ["exchange", "--input", star,
                                      "--m1", '{"a":1,"b":1,"c":0}',
                                      "--m2", '{"a":0,"b":1,"c":1}',
                                      "--step", "-a", "--constructive"])
golden("star-greedy", ["greedy", "--input", star, "--mode", "edge",
                       "--weights", '{"a":3,"b":-2,"c":1}'])

golden("triangle-enumerate-edge", ["enumerate", "--input", tri, "--mode", "edge"])
golden("triangle-check-jump", ["check-jump", "--input", tri, "--mode", "edge"])
golden("triangle-member-220-both", ["member", "--input", tri, "--mode", "edge",
                                    "--demand", '{"a":2,"b":2,"c":0}', "--via", "both"])
golden("triangle-polytope-vertices", ["polytope", "vertices", "--input", tri])
golden("triangle-parity", ["parity-check", "--input", tri])
golden("triangle-intersect", ["intersect", "--input", tri,
                              "--t1", "singletons", "--t2", "split"])
golden("triangle-exchange-generic", ["exchange", "--input", tri,
                                     "--m1", '{"a":2,"b":2,"c":2}',
                                     "--m2", '{"a":0,"b":1,"c":1}',
                                     "--step", "-a"])

# ---- exit-code and format contracts -----------------------------------------

# infeasible memberships still exit 0: the query succeeded, the answer is no
r = run_json(["member", "--input", star, "--mode", "edge", "--demand",
              '{"a":1,"b":0,"c":0}'])
if r is not None and r["result"]["member"] is not False:
    failures.append("member: odd-sum demand should be infeasible")

# usage errors exit 2
run(["member", "--input", star, "--mode", "edge", "--demand", "{bad"], expect_code=2)
run(["member", "--input", star, "--mode", "edge", "--demand", '{"a":1}'], expect_code=2)
run(["enumerate", "--input", os.path.join(DATA, "no-such-file.json"),
     "--mode", "edge"], expect_code=2)
run(["enumerate", "--input", star, "--mode", "sideways"], expect_code=2)
run(["exchange", "--input", star, "--m1", '{"a":1,"b":1,"c":0}',
     "--m2", '{"a":0,"b":1,"c":1}', "--step", "+a"], expect_code=2)
run(["nonsense"], expect_code=2)

# every --json output parses, including for vertex mode and partitions
for extra in (["--mode", "vertex"], ["--mode", "edge", "--partition", "split"]):
    if run_json(["enumerate", "--input", star] + extra) is None:
        failures.append(f"enumerate {extra}: JSON run failed")

# the suite subcommand aggregates: a single cheap family passes with exit 0
r = run_json(["suite", "--family", "gap"])
if r is not None and (r["result"]["failures"] != 0 or r["ok"] is not True):
    failures.append("suite --family gap should pass cleanly")

if failures:
    print("CLI TEST FAILURES:")
    for f in failures:
        print(" -", f)
    sys.exit(1)
print("cli golden and contract tests passed")
