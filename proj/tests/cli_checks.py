#!/usr/bin/env python3
"""Integration checks for the membrane-bounds CLI: exit codes, JSON shape,
and byte-level determinism."""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
FAILURES = []


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True)


def check(label, cond, extra=""):
    status = "ok" if cond else "FAIL"
    print(f"[{status}] {label} {extra}")
    if not cond:
        FAILURES.append(label)


def main():
    # convert: matrix -> dilatation
    r = run("convert", "--matrix", "3,0,0.3333333333333333")
    check("convert matrix exit 0", r.returncode == 0, r.stderr)
    out = json.loads(r.stdout)
    check("convert mu = -1/2", abs(out["mu"]["re"] + 0.5) < 1e-12)
    check("convert K = 3", abs(out["distortion"]["K"] - 3.0) < 1e-12)
    check("convert Q = 3", abs(out["distortion"]["Q"] - 3.0) < 1e-12)

    r = run("convert", "--mu", "0,0")
    out = json.loads(r.stdout)
    check("convert identity", out["matrix"]["a11"] == 1.0 and out["distortion"]["K"] == 1.0)

    r = run("convert", "--matrix", "1,0,2")
    check("convert det!=1 exits 2", r.returncode == 2, f"rc={r.returncode}")

    r = run("convert")
    check("convert without args exits 2", r.returncode == 2)

    # bound: reference entries
    r = run("bound", "--entry", "triangle_affine", "--param", "a=2", "--param", "b=1")
    check("bound triangle exit 0", r.returncode == 0, r.stderr)
    out = json.loads(r.stdout)
    infty = [b for b in out["bounds"] if b["theorem"] == "infty_regular"]
    check("bound triangle has infty bound", len(infty) == 1)
    check(
        "bound triangle value 5pi^2/3",
        abs(infty[0]["value"] - 5 * math.pi**2 / 3) < 1e-12,
    )

    r = run("bound", "--entry", "cardioid_power")
    out = json.loads(r.stdout)
    infty = [b for b in out["bounds"] if b["theorem"] == "infty_regular"]
    check(
        "bound cardioid value j01^2/2",
        abs(infty[0]["value"] - 2.4048255576957728**2 / 2) < 1e-12,
    )

    r = run("bound", "--entry", "square_diag_stretch", "--param", "a=2")
    out = json.loads(r.stdout)
    rfk = [b for b in out["bounds"] if b["theorem"] == "measure_preserving_RFK"]
    check("bound diag stretch has MP-RFK", len(rfk) == 1)
    check(
        "bound MP-RFK value pi*j01^2",
        abs(rfk[0]["value"] - math.pi * 2.4048255576957728**2) < 1e-12,
    )

    r = run("bound", "--entry", "triangle_affine", "--beta", "2")
    out = json.loads(r.stdout)
    beta = [b for b in out["bounds"] if b["theorem"] == "beta_regular"]
    check("bound --beta adds beta bound", len(beta) == 1)

    r = run("bound", "--entry", "nope")
    check("bound unknown entry exits 2", r.returncode == 2)

    r = run("bound", "--entry", "triangle_affine", "--param", "a=1", "--param", "b=2")
    check("bound bad params exits 2", r.returncode == 2)

    # determinism: byte-identical output for identical args
    r1 = run("bound", "--entry", "cardioid_power")
    r2 = run("bound", "--entry", "cardioid_power")
    check("bound output deterministic", r1.stdout == r2.stdout)

    # catalog
    r = run("catalog")
    out = json.loads(r.stdout)
    check("catalog lists 6 entries", out["count"] == 6, f"count={out['count']}")

    r = run("catalog", "--verify")
    check("catalog --verify exit 0", r.returncode == 0, r.stderr)
    out = json.loads(r.stdout)
    residuals = [
        c["max_residual"]
        for e in out["entries"]
        for c in e["verification"]["checks"]
    ]
    check("catalog residuals <= 1e-6", max(residuals) <= 1e-6, f"max={max(residuals):.3g}")

    r = run("catalog", "--verify", "--test-inject-fault")
    check("catalog fault injection exits 4", r.returncode == 4, f"rc={r.returncode}")
    check("catalog failure names the check", "beltrami_residual" in r.stderr, r.stderr)

    # validate (kept small: 2 levels, coarse mesh)
    with tempfile.TemporaryDirectory() as tmp:
        mesh_path = Path(tmp) / "mesh.txt"
        out_path = Path(tmp) / "out.json"
        r = run(
            "validate", "--entry", "triangle_affine",
            "--param", "a=2", "--param", "b=1",
            "--levels", "2", "--target-h", "0.2",
            "--dump-mesh", str(mesh_path),
            "--output", str(out_path),  # parent option after the subcommand
        )
        check("validate exit 0", r.returncode == 0, r.stderr)
        out = json.loads(out_path.read_text())
        check("validate pass flag", out["pass"] is True)
        check(
            "validate fem above bound",
            out["fem_lambda1"] >= 5 * math.pi**2 / 3 * 0.995,
            f"fem={out['fem_lambda1']:.4f}",
        )
        lines = mesh_path.read_text().splitlines()
        check(
            "dumped mesh format",
            lines and lines[0].startswith("v ") and any(l.startswith("t ") for l in lines),
        )

        r = run(
            "validate", "--entry", "square_diag_stretch", "--param", "a=2",
            "--levels", "2", "--target-h", "0.2", "--format", "csv",
        )
        check("validate csv exit 0", r.returncode == 0, r.stderr)
        check("validate csv header", r.stdout.splitlines()[0] == "h_max,lambda1")

    r = run("validate", "--entry", "triangle_affine", "--levels", "1")
    check("validate levels<2 exits 2", r.returncode == 2, f"rc={r.returncode}")

    print(f"\n{len(FAILURES)} failures")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
