#!/usr/bin/env python3
"""Smoke test for the polymedial Python bindings.

Builds the extension module if needed, loads it straight from the cargo
target directory, and drives one check from each subsystem.

Run from the repository root:  python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "libpolymedial.so",
        ROOT / "target" / "debug" / "libpolymedial.so",
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        subprocess.run(
            ["cargo", "build", "-p", "polymedial-py"], cwd=ROOT, check=True
        )
        lib = candidates[1]
    stage = Path(tempfile.mkdtemp(prefix="polymedial-"))
    shutil.copy(lib, stage / "polymedial.so")
    sys.path.insert(0, str(stage))
    import polymedial

    return polymedial


def expect(condition, message):
    if not condition:
        raise AssertionError(message)
    print(f"ok - {message}")


def main():
    pm = load_module()

    # mediality counterexample on S3 with the canonical labeling
    s3 = pm.NaryOp.s3()
    report = json.loads(s3.check_mediality())
    expect(report["status"] == "fail", "S3 fails mediality")
    expect(
        report["witness"]["input"] == ["0", "1", "2", "0"],
        "witness is (e,(12),(13),e)",
    )

    # a linear quasigroup over Z5 is medial and decomposes
    lin = pm.NaryOp.linear_mod(5, [2, 3], 1)
    expect(
        json.loads(lin.check_mediality())["status"] == "pass",
        "2a+3b+1 mod 5 is medial",
    )
    pres = json.loads(lin.decompose())
    rebuilt = pm.NaryOp.from_json(json.dumps(pres["certificate"]))
    expect(
        all(
            rebuilt.eval([a, b]) == lin.eval([a, b])
            for a in range(5)
            for b in range(5)
        ),
        "decomposition certificate reproduces the table",
    )

    # querelements of the ternary group a+b+c mod 4
    tern = pm.NaryOp.linear_mod(4, [1, 1, 1], 0)
    expect(tern.querelement(1) == 3, "querelement of 1 is -1 mod 4")
    expect(tern.units() == [0, 2], "a+b+c mod 4 has two units")

    # factor laws for the grading sign
    eps = pm.FactorMap.super_sign(3)
    reports = json.loads(eps.check_commutation())
    expect(
        all(r["status"] == "pass" for r in reports),
        "super sign passes the commutation factor laws",
    )
    expect(
        json.loads(eps.check_cocycle())["status"] == "pass",
        "super sign is a 2-cocycle",
    )

    # Grassmann-type algebra: graded, associative, eps-commutative
    alg = pm.GradedAlgebra.grassmann_f3()
    expect(
        json.loads(alg.check_graded())["status"] == "pass",
        "grassmann algebra is graded",
    )
    expect(
        json.loads(alg.check_almost_commutative(eps))["status"] == "pass",
        "grassmann algebra is eps-commutative",
    )
    rho = pm.FactorMap.bridge(eps)
    expect(
        json.loads(alg.check_almost_medial(rho))["status"] == "pass",
        "bridge factor makes it almost medial",
    )

    # coherence: pentagon, decagon, braid relations, medialing
    expect(
        json.loads(pm.check_polygon(2))["status"] == "pass",
        "pentagon closes on 5 bracketings",
    )
    expect(
        json.loads(pm.check_polygon(3))["status"] == "pass",
        "decagon closes on 12 bracketings",
    )
    expect(
        json.loads(pm.check_braid_relation(3, [2, 1, 0]))["status"] == "pass",
        "ternary braid relation holds for the reversal",
    )
    medial = json.loads(pm.check_medial_coherence())
    expect(
        all(r["status"] == "pass" for r in medial),
        "binary medial coherence holds",
    )
    mutated = json.loads(pm.check_medial_coherence(mutated=True))
    expect(
        any(r["status"] == "fail" for r in mutated),
        "mutated medialing is rejected",
    )

    # groupal model and enumeration
    groupal = json.loads(pm.check_groupal_model(tern))
    expect(
        all(r["status"] in ("pass", "skipped") for r in groupal),
        "groupal diagrams hold for a+b+c mod 4",
    )
    expect(pm.count_quasigroups(3, 2, "medial") == 12, "12 medial quasigroups of order 3")

    print("smoke test passed")


if __name__ == "__main__":
    main()
