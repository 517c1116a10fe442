#!/usr/bin/env python3
"""Pick the committed 40-bit semiprime ECM fixture.

Chooses the deterministic semiprime n = nextprime(700000) * nextprime(800000)
(40 bits) and searches seeds until one stage-1 run factors n with BOTH engines
at the committed B1/curve budget, by invoking the built CLI:

    python3 scripts/find_ecm_fixture.py [path-to-ecfuse-binary]

Writes fixtures/ecm_semiprime40.json.
"""

import json
import pathlib
import subprocess
import sys

from sympy import nextprime

B1 = 2000
CURVES = 8


def run(binary, n, engine, seed):
    r = subprocess.run(
        [binary, "ecm", "--n", hex(n), "--b1", str(B1), "--curves", str(CURVES),
         "--engine", engine, "--seed", str(seed), "--json"],
        capture_output=True, text=True)
    if r.returncode not in (0, 4):
        raise SystemExit(f"ecm run failed: {r.stderr}")
    return json.loads(r.stdout).get("factor")


def main():
    binary = sys.argv[1] if len(sys.argv) > 1 else "build/tools/ecfuse"
    p = nextprime(700000)
    q = nextprime(800000)
    n = p * q
    assert n.bit_length() == 40, n.bit_length()
    for seed in range(1, 200):
        fm = run(binary, n, "montgomery", seed)
        if fm is None:
            continue
        ff = run(binary, n, "fused", seed)
        if ff is None:
            continue
        fixture = {
            "n": hex(n), "p": hex(p), "q": hex(q),
            "b1": B1, "curves": CURVES, "seed": seed,
            "factors_found": {"montgomery": fm, "fused": ff},
        }
        out = (pathlib.Path(__file__).resolve().parent.parent /
               "fixtures" / "ecm_semiprime40.json")
        out.write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"n = {n} = {p} * {q}, seed = {seed}, "
              f"montgomery -> {fm}, fused -> {ff}")
        print(f"wrote {out}")
        return
    raise SystemExit("no working seed in range")


if __name__ == "__main__":
    main()
