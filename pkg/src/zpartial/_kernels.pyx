# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch verdicts for pure pushouts over ℤ/m.

For a fixed inclusion u: U → X and codomain Y, every f: U → Y in a batch
gets the invariant factors of its pushout P = (Y ⊕ X) / ⟨(f(k), -u(k))⟩
computed by diagonalising the relation matrix modulo m.  A conflation
0 → A → B → C → 0 is pure exactly when |B[d]| = |A[d]|·|C[d]| for every
d | m, so the verdicts reduce to torsion counts.
"""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline i64 _mod(i64 a, i64 m) noexcept nogil:
    a = a % m
    return a + m if a < 0 else a


cdef void _diag_mod(i64* a, int nr, int nc, i64 m, i64* out) noexcept nogil:
    """Diagonalise the nr × nc row-major block in place (entries mod m) and
    write the nc cyclic factors of ℤ^nc / rowspan into ``out``."""
    cdef int t, i, j, bi, bj
    cdef i64 best, q, x, p
    cdef bint clean
    for t in range(nc):
        while True:
            best = 0
            bi = -1
            bj = -1
            for i in range(t, nr):
                for j in range(t, nc):
                    x = a[i * nc + j]
                    if x and (best == 0 or x < best):
                        best = x
                        bi = i
                        bj = j
            if bi < 0:
                for j in range(t, nc):
                    out[j] = m
                return
            if bi != t:
                for j in range(nc):
                    x = a[t * nc + j]
                    a[t * nc + j] = a[bi * nc + j]
                    a[bi * nc + j] = x
            if bj != t:
                for i in range(nr):
                    x = a[i * nc + t]
                    a[i * nc + t] = a[i * nc + bj]
                    a[i * nc + bj] = x
            p = a[t * nc + t]
            clean = True
            for i in range(t + 1, nr):
                q = a[i * nc + t] // p
                if q:
                    for j in range(t, nc):
                        a[i * nc + j] = _mod(a[i * nc + j] - q * a[t * nc + j], m)
                if a[i * nc + t]:
                    clean = False
            for j in range(t + 1, nc):
                q = a[t * nc + j] // p
                if q:
                    for i in range(t, nr):
                        a[i * nc + j] = _mod(a[i * nc + j] - q * a[i * nc + t], m)
                if a[t * nc + j]:
                    clean = False
            if clean:
                out[t] = _gcd(p, m)
                break


cdef inline i64 _torsion(i64* fs, int n, i64 d) noexcept nogil:
    cdef i64 r = 1
    cdef int i
    for i in range(n):
        r *= _gcd(d, fs[i])
    return r


def pushout_verdicts(long m, uf, xf, yf, umat, F, bint want_iso=False):
    """Pure-partial (and partial-iso) verdicts for a batch of maps.

    ``umat`` is the (nU, nX) matrix of u, ``F`` an (N, nU, nY) stack of
    matrices of f.  Returns two uint8 arrays of length N.
    """
    cdef cnp.ndarray[i64, ndim=1] cuf = np.ascontiguousarray(uf, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] cxf = np.ascontiguousarray(xf, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] cyf = np.ascontiguousarray(yf, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] cu = np.ascontiguousarray(umat, dtype=np.int64).reshape(len(uf), len(xf))
    F = np.asarray(F, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=3] cF = np.ascontiguousarray(F.reshape(F.shape[0], len(uf), len(yf)))
    cdef int nU = cuf.shape[0], nX = cxf.shape[0], nY = cyf.shape[0]
    cdef Py_ssize_t N = cF.shape[0], n
    cdef int nc = nY + nX, nr = nU + nY + nX
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] part = np.zeros(N, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] iso = np.zeros(N, dtype=np.uint8)

    divs = [d for d in range(2, m + 1) if m % d == 0]
    cdef int nd = len(divs), k, i, j
    cdef i64* dv = <i64*> malloc(max(nd, 1) * sizeof(i64))
    cdef i64* a = <i64*> malloc(max(nr * nc, 1) * sizeof(i64))
    cdef i64* pf = <i64*> malloc(max(nc, 1) * sizeof(i64))
    cdef i64* cf = <i64*> malloc(max(nX + nU, 1) * sizeof(i64))
    cdef i64* kf = <i64*> malloc(max(nY + nU, 1) * sizeof(i64))
    cdef i64* base = <i64*> malloc(max(nd, 1) * sizeof(i64))
    cdef i64* xbase = <i64*> malloc(max(nd, 1) * sizeof(i64))
    cdef i64 order_u = 1, order_y = 1, order_c, lhs
    cdef bint ok
    try:
        for k in range(nd):
            dv[k] = divs[k]
        for i in range(nU):
            order_u *= cuf[i]
        for j in range(nY):
            order_y *= cyf[j]

        # coker u, shared by the whole batch
        for i in range(nU + nX):
            for j in range(nX):
                if i < nU:
                    a[i * nX + j] = _mod(cu[i, j], m)
                else:
                    a[i * nX + j] = cxf[j] if i - nU == j else 0
        _diag_mod(a, nU + nX, nX, m, cf)
        for k in range(nd):
            base[k] = _torsion(&cyf[0] if nY else NULL, nY, dv[k]) * _torsion(cf, nX, dv[k])
            xbase[k] = _torsion(&cxf[0] if nX else NULL, nX, dv[k])

        with nogil:
            for n in range(N):
                for i in range(nr * nc):
                    a[i] = 0
                for i in range(nU):
                    for j in range(nY):
                        a[i * nc + j] = _mod(cF[n, i, j], m)
                    for j in range(nX):
                        a[i * nc + nY + j] = _mod(-cu[i, j], m)
                for j in range(nY):
                    a[(nU + j) * nc + j] = cyf[j]
                for j in range(nX):
                    a[(nU + nY + j) * nc + nY + j] = cxf[j]
                _diag_mod(a, nr, nc, m, pf)
                ok = True
                for k in range(nd):
                    if _torsion(pf, nc, dv[k]) != base[k]:
                        ok = False
                        break
                part[n] = ok
                if not (ok and want_iso):
                    continue
                # f̄ is mono iff f is; then its cokernel is coker f
                for i in range(nU + nY):
                    for j in range(nY):
                        if i < nU:
                            a[i * nY + j] = _mod(cF[n, i, j], m)
                        else:
                            a[i * nY + j] = cyf[j] if i - nU == j else 0
                _diag_mod(a, nU + nY, nY, m, kf)
                order_c = 1
                for j in range(nY):
                    order_c *= kf[j]
                if order_u * order_c != order_y:
                    continue
                for k in range(nd):
                    lhs = _torsion(pf, nc, dv[k])
                    if lhs != xbase[k] * _torsion(kf, nY, dv[k]):
                        ok = False
                        break
                iso[n] = ok
    finally:
        free(dv)
        free(a)
        free(pf)
        free(cf)
        free(kf)
        free(base)
        free(xbase)
    return part, iso
