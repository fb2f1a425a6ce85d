"""Pure-Python twin of the compiled pushout kernel (same algorithm, same output)."""
from __future__ import annotations

from math import gcd, prod

import numpy as np


def _diag_mod(a: list[list[int]], m: int) -> list[int]:
    """Cyclic factors of ℤ^nc / rowspan(a), with entries kept modulo m."""
    nr = len(a)
    nc = len(a[0]) if a else 0
    out = [m] * nc
    for t in range(nc):
        while True:
            best, bi, bj = 0, -1, -1
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i][j]
                    if x and (best == 0 or x < best):
                        best, bi, bj = x, i, j
            if bi < 0:
                return out
            a[t], a[bi] = a[bi], a[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for j in range(t, nc):
                        ri[j] = (ri[j] - q * rt[j]) % m
                if a[i][t]:
                    clean = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for i in range(t, nr):
                        a[i][j] = (a[i][j] - q * a[i][t]) % m
                if a[t][j]:
                    clean = False
            if clean:
                out[t] = gcd(p, m)
                break
    return out


def _torsion(fs, d: int) -> int:
    return prod(gcd(d, x) for x in fs)


def pushout_verdicts(m, uf, xf, yf, umat, F, want_iso=False):
    uf, xf, yf = [int(x) for x in uf], [int(x) for x in xf], [int(x) for x in yf]
    nU, nX, nY = len(uf), len(xf), len(yf)
    umat = np.asarray(umat, dtype=np.int64).reshape(nU, nX).tolist()
    F = np.asarray(F, dtype=np.int64)
    F = F.reshape(F.shape[0], nU, nY)
    N = F.shape[0]
    part = np.zeros(N, dtype=np.uint8)
    iso = np.zeros(N, dtype=np.uint8)
    divs = [d for d in range(2, m + 1) if m % d == 0]

    rel = [[x % m for x in row] for row in umat]
    rel += [[x if i == j else 0 for j in range(nX)] for i, x in enumerate(xf)]
    cf = _diag_mod(rel, m)
    base = [_torsion(yf, d) * _torsion(cf, d) for d in divs]
    xbase = [_torsion(xf, d) for d in divs]
    order_u, order_y = prod(uf), prod(yf)

    for n in range(N):
        fr = F[n].tolist()
        a = [[x % m for x in fr[i]] + [(-x) % m for x in umat[i]] for i in range(nU)]
        a += [[x if i == j else 0 for j in range(nY + nX)] for i, x in enumerate(yf + xf)]
        pf = _diag_mod(a, m)
        ok = all(_torsion(pf, d) == b for d, b in zip(divs, base))
        part[n] = ok
        if not (ok and want_iso):
            continue
        rel = [[x % m for x in row] for row in fr]
        rel += [[x if i == j else 0 for j in range(nY)] for i, x in enumerate(yf)]
        kf = _diag_mod(rel, m)
        if order_u * prod(kf) != order_y:
            continue
        iso[n] = all(_torsion(pf, d) == b * _torsion(kf, d) for d, b in zip(divs, xbase))
    return part, iso
