"""Regenerate data/sz8.gens.json: Sz(8) acting on the 65 points of its ovoid.

Sz(8) is generated inside Sp(4,8) by lower unitriangular matrices S(a,b),
diagonal matrices D(l) and the antidiagonal involution T. The ovoid is the
orbit of the projective point <e4>; generators are written as permutations
of that orbit (0-based images).
"""
import json
import sys

POLY = 0b1011  # x^3 + x + 1


def gmul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 0b1000:
            a ^= POLY
    return r


def gpow(a, e):
    r = 1
    for _ in range(e):
        r = gmul(r, a)
    return r


def ginv(a):
    return gpow(a, 6)


R = 4  # sigma: x -> x^4, sigma^2 = Frobenius on GF(8)


def S(a, b):
    return [
        [1, 0, 0, 0],
        [a, 1, 0, 0],
        [b, gpow(a, R), 1, 0],
        [gpow(a, 2 + R) ^ gmul(a, b) ^ gpow(b, R), gpow(a, 1 + R) ^ b, a, 1],
    ]


def D(l):
    li = ginv(l)
    return [
        [gpow(l, 3), 0, 0, 0],
        [0, gpow(l, 2), 0, 0],
        [0, 0, gpow(li, 2), 0],
        [0, 0, 0, gpow(li, 3)],
    ]


T = [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


def act(m, v):
    # row vector times matrix
    out = []
    for j in range(4):
        s = 0
        for i in range(4):
            s ^= gmul(v[i], m[i][j])
        out.append(s)
    return normalize(out)


def normalize(v):
    for x in v:
        if x:
            inv = ginv(x)
            return tuple(gmul(inv, y) for y in v)
    raise ValueError("zero vector")


def main():
    mats = [S(1, 0), S(0, 1), D(2), T]
    start = normalize([0, 0, 0, 1])
    pts = [start]
    seen = {start: 0}
    i = 0
    while i < len(pts):
        for m in mats:
            w = act(m, pts[i])
            if w not in seen:
                seen[w] = len(pts)
                pts.append(w)
        i += 1
    gens = [[seen[act(m, p)] for p in pts] for m in mats]
    # two generators suffice; keep the product of S(1,0)·D(2) and T
    a = [gens[2][gens[0][x]] for x in range(len(pts))]
    b = gens[3]
    out = {"name": "Sz(8)", "degree": len(pts), "order": 29120, "generators": [a, b]}
    json.dump(out, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
