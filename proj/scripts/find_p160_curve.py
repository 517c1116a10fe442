#!/usr/bin/env python3
"""Pick the 160-bit short-form test curve.

Deterministic search: p is the first prime below 2^160, a = -3, and b is the
smallest positive value giving a nonsingular curve with a point at x = 1.
Writes fixtures/curve_p160.json.
"""

import json
import pathlib

from sympy import isprime


def legendre(a, p):
    return pow(a, (p - 1) // 2, p)


def sqrt_mod(a, p):
    # p = 3 mod 4 shortcut is enough if it applies; otherwise Tonelli-Shanks.
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        tt, i = t, 0
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def main():
    p = 2**160 - 1
    while not isprime(p):
        p -= 2
    a = p - 3
    for b in range(1, 1000):
        if (4 * a**3 + 27 * b * b) % p == 0:
            continue
        rhs = (1 + a + b) % p  # x = 1
        y = sqrt_mod(rhs, p)
        if y is None:
            continue
        fixture = {
            "curve": {"a1": "0x0", "a2": "0x0", "a3": "0x0",
                      "a4": hex(a), "a6": hex(b), "n": hex(p)},
            "base_point": {"x": hex(1), "y": hex(y)},
        }
        out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "curve_p160.json"
        out.write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"p = {p}\nb = {b}\ny = {y}\nwrote {out}")
        return
    raise SystemExit("no curve found")


if __name__ == "__main__":
    main()
