#!/usr/bin/env python3
"""Find an embedding-degree-1 pairing fixture.

Searches small primes p = 1 (mod m) and short curves y^2 = x^3 + ax + b until
the full m-torsion is rational (exactly m^2 points T with mT = O), then picks
independent order-m points P and Q.  Writes fixtures/pairing_ed1.json.
"""

import json
import pathlib

from sympy import isprime

M = 7


def curve_points(p, a, b):
    ys = {}
    for y in range(p):
        ys.setdefault(y * y % p, []).append(y)
    pts = [None]  # None is the point at infinity
    for x in range(p):
        for y in ys.get((x * x * x + a * x + b) % p, []):
            pts.append((x, y))
    return pts


def add(p, a, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    if P[0] == Q[0] and (P[1] + Q[1]) % p == 0:
        return None
    if P == Q:
        lam = (3 * P[0] * P[0] + a) * pow(2 * P[1], p - 2, p) % p
    else:
        lam = (Q[1] - P[1]) * pow(Q[0] - P[0], p - 2, p) % p
    x = (lam * lam - P[0] - Q[0]) % p
    return (x, (lam * (P[0] - x) - P[1]) % p)


def smul(p, a, k, P):
    T = None
    while k:
        if k & 1:
            T = add(p, a, T, P)
        P = add(p, a, P, P)
        k >>= 1
    return T


def main():
    p = M + 1
    while True:
        p += 1
        if not isprime(p) or p % M != 1 or p < 2 * M * M:
            continue
        for a in range(p):
            for b in range(p):
                if (4 * a**3 + 27 * b * b) % p == 0:
                    continue
                pts = curve_points(p, a, b)
                if len(pts) % (M * M) != 0:
                    continue
                tors = [P for P in pts if smul(p, a, M, P) is None]
                if len(tors) != M * M:
                    continue
                order_m = [P for P in tors if P is not None and
                           all(smul(p, a, k, P) is not None for k in range(1, M))]
                P = order_m[0]
                span = {smul(p, a, k, P) for k in range(M)}
                Q = next(T for T in order_m if T not in span)
                fixture = {
                    "m": hex(M),
                    "curve": {"a1": "0x0", "a2": "0x0", "a3": "0x0",
                              "a4": hex(a), "a6": hex(b), "n": hex(p)},
                    "p_point": {"x": hex(P[0]), "y": hex(P[1])},
                    "q_point": {"x": hex(Q[0]), "y": hex(Q[1])},
                    "group_order": hex(len(pts)),
                }
                out = (pathlib.Path(__file__).resolve().parent.parent /
                       "fixtures" / "pairing_ed1.json")
                out.write_text(json.dumps(fixture, indent=2) + "\n")
                print(f"p={p} a={a} b={b} #E={len(pts)} P={P} Q={Q}")
                print(f"wrote {out}")
                return


if __name__ == "__main__":
    main()
