#!/usr/bin/env python3
"""Black-box checks of the command-line runner: exit codes, output files,
and seed/thread reproducibility."""

import json
import pathlib
import subprocess
import sys
import tempfile

FAILURES = []


def run(binary, *args):
    return subprocess.run([binary, *args], capture_output=True, text=True)


def expect(name, cond, extra=""):
    tag = "ok" if cond else "FAIL"
    print(f"{tag:4s} {name} {extra}")
    if not cond:
        FAILURES.append(name)


def main():
    binary = sys.argv[1]
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="csl_cli_"))

    cfg = tmp / "ok.json"
    cfg.write_text(json.dumps({"experiment": "hermite_check"}))
    r = run(binary, "--config", str(cfg), "--out", str(tmp / "out"))
    expect("valid config exits 0", r.returncode == 0, f"rc={r.returncode}")
    report = json.loads(r.stdout)
    expect("report names the experiment", report["experiment"] == "hermite_check")
    csv = (tmp / "out" / "hermite_check_1.csv").read_bytes()
    expect("csv written with schema header",
           csv.startswith(b"t,value,oracle,rel_err\n"))
    expect("csv uses bare newlines", b"\r" not in csv)

    r = run(binary, "--config", str(tmp / "missing.json"))
    expect("unreadable config exits 1", r.returncode == 1)

    bad = tmp / "bad.json"
    bad.write_text('{"experiment":"nope"}')
    r = run(binary, "--config", str(bad))
    expect("unknown experiment exits 1", r.returncode == 1)
    expect("error message names the experiment", "nope" in r.stderr)

    bad.write_text('{"experiment":"born_rule","params":{"frequency":2}}')
    r = run(binary, "--config", str(bad))
    expect("unknown parameter exits 1", r.returncode == 1)
    expect("error message names the key", "frequency" in r.stderr)

    bad.write_text("{not json")
    r = run(binary, "--config", str(bad))
    expect("malformed json exits 1", r.returncode == 1)

    r = run(binary, "--config", str(cfg), "--out", "/dev/null/nope")
    expect("unwritable output exits 2", r.returncode == 2, f"rc={r.returncode}")

    r = run(binary, "--config", str(cfg), "--out", str(tmp / "chk"), "--check")
    expect("passing checks exit 0", r.returncode == 0)
    expect("check results in report", '"checks"' in r.stdout)

    fast = tmp / "fast.json"
    fast.write_text(json.dumps(
        {"experiment": "born_rule", "n_traj": 300, "params": {"T": 5}}))
    r = run(binary, "--config", str(fast), "--out", str(tmp / "a"),
            "--seed", "9", "--threads", "1")
    expect("seed override run exits 0", r.returncode == 0)
    r = run(binary, "--config", str(fast), "--out", str(tmp / "b"),
            "--seed", "9", "--threads", "8")
    expect("threaded rerun exits 0", r.returncode == 0)
    a = (tmp / "a" / "born_rule_9.csv").read_bytes()
    b = (tmp / "b" / "born_rule_9.csv").read_bytes()
    expect("seeded reruns are byte-identical", a == b)

    grw = tmp / "grw.json"
    grw.write_text(json.dumps({"experiment": "mach_zehnder"}))
    r = run(binary, "--config", str(grw), "--out", str(tmp / "g"),
            "--preset", "grw")
    expect("preset run exits 0", r.returncode == 0, r.stderr.strip())
    rep = json.loads(r.stdout)
    expect("preset overrides lambda", rep["config"]["params"]["lambda"] == 1e-16)

    r = run(binary, "--config", str(cfg), "--preset", "warp")
    expect("unknown preset rejected", r.returncode != 0)

    if FAILURES:
        print("failed:", ", ".join(FAILURES))
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
