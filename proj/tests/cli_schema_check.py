#!/usr/bin/env python3
"""End-to-end CLI check: simulate a society, run tests from the shipped
configs, validate every results.json against the schema and check exit codes.

usage: cli_schema_check.py <refnet binary> <source dir> <work dir>
"""
import json
import re
import shutil
import subprocess
import sys
from pathlib import Path

import jsonschema


def run(cmd, expect=0):
    proc = subprocess.run([str(c) for c in cmd], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.exit(f"{' '.join(map(str, cmd))}: exit {proc.returncode}, wanted {expect}\n{proc.stdout}{proc.stderr}")
    return proc.stdout


def tree_bytes(root):
    return {p.relative_to(root): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def main():
    cli, src, work = Path(sys.argv[1]), Path(sys.argv[2]), Path(sys.argv[3])
    shutil.rmtree(work, ignore_errors=True)
    (work / "configs").mkdir(parents=True)
    for cfg in (src / "configs").glob("*.json"):
        shutil.copy(cfg, work / "configs" / cfg.name)
    schema = json.loads((src / "schemas" / "results.schema.json").read_text())

    society_cfg = work / "configs" / "society_default.json"
    run([cli, "simulate", "--config", society_cfg, "--out", work / "society", "--seed", 11])
    run([cli, "simulate", "--config", society_cfg, "--out", work / "society_again", "--seed", 11])
    first, again = tree_bytes(work / "society"), tree_bytes(work / "society_again")
    if first != again:
        sys.exit("simulate is not byte-reproducible")
    gbi_files = [p for p in first if p.name.startswith("gbi_")]
    if len(gbi_files) != 16:
        sys.exit(f"expected 16 gbi files, found {len(gbi_files)}")

    tests = sorted(p for p in (work / "configs").glob("*.json") if not p.name.startswith("society"))
    for cfg in tests:
        out = work / f"{cfg.stem}.json"
        args = [cli, "test", "--config", cfg, "--seed", 5, "--replicates", 199, "--out", out]
        summary = run(args)
        if not re.search(r"^p_paper\s+\d\.\d{6}$", summary, re.M):
            sys.exit(f"{cfg.name}: summary lacks a 6-decimal p\n{summary}")
        doc = json.loads(out.read_text())
        jsonschema.validate(doc, schema)
        if sum(doc["histogram"]["counts"]) != doc["pool_size"]:
            sys.exit(f"{cfg.name}: histogram counts do not sum to the pool size")
        if len(doc["references"]) + 1 != doc["pool_size"] or doc["config"]["seed"] != 5:
            sys.exit(f"{cfg.name}: pool size or seed mismatch")
        text = out.read_bytes()
        run(args)
        if out.read_bytes() != text:
            sys.exit(f"{cfg.name}: results.json differs between identical runs")
        print(f"ok {cfg.name}: p_paper {doc['p_paper']:.6f}, {doc['verdict']}")

    base = work / "configs" / "assort_node_label.json"
    run([cli, "test", "--config", base], expect=2)  # no seed
    run([cli, "test", "--config", base, "--seed", 1, "--model", "ergm"], expect=2)
    run([cli, "test", "--config", base, "--seed", 1, "--constraint", "same_day"], expect=2)
    missing = work / "missing.json"
    missing.write_text(json.dumps({"gbi": "nowhere.csv", "statistic": {"kind": "cv_offdiag"}}))
    run([cli, "test", "--config", missing, "--seed", 1], expect=3)
    run([cli, "test", "--config", base, "--seed", 1, "--model", "endpoint_rewire"], expect=4)
    bad_society = work / "bad_society.json"
    bad_society.write_text(json.dumps({"dayz": 3}))
    run([cli, "simulate", "--config", bad_society, "--out", work / "bad", "--seed", 1], expect=2)
    print("ok exit codes")


if __name__ == "__main__":
    main()
