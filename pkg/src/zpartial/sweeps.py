"""Exhaustive batched sweeps over (X, U ≤ X, Y, f: U → Y).

Three independent routes are computed per instance:

* the pushout verdict (compiled kernel, torsion counts of the pushout),
* the single-equation oracle, run element by element on U,
* extendability of f along u, from a Smith form of the generator system.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .corpus import modules_up_to
from .linalg import _snf_lists, divisors
from .modules import FpModule, Morphism, enumerate_subobjects, hom_count

CHUNK = 1 << 15


def _choices(a: FpModule, b: FpModule) -> list[np.ndarray]:
    return [np.arange(0, y, y // gcd(x, y), dtype=np.int64)
            for x in a.invariant_factors for y in b.invariant_factors]


def hom_chunks(a: FpModule, b: FpModule, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """Hom(a, b) as (n, na, nb) arrays of at most ``chunk`` maps, in
    enumerate_hom order."""
    na, nb = a.ngens, b.ngens
    total = hom_count(a, b)
    if na == 0 or nb == 0:
        yield np.zeros((1, na, nb), dtype=np.int64)
        return
    choices = _choices(a, b)
    shape = tuple(len(c) for c in choices)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        digits = np.unravel_index(idx, shape)
        cols = [c[dg] for c, dg in zip(choices, digits)]
        yield np.stack(cols, axis=1).reshape(-1, na, nb)


def all_elements(mod: FpModule) -> np.ndarray:
    if mod.ngens == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(d, dtype=np.int64) for d in mod.invariant_factors],
                        indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


class EquationBatch:
    """Single-equation oracle for a fixed u: U → X and codomain Y.

    f passes iff for every d | m and every k ∈ U with u(k) ∈ dX, f(k) ∈ dY.
    Coordinates c of ⊕ℤ/y lie in dY iff gcd(d, y) divides every c.
    """

    def __init__(self, u: Morphism, Y: FpModule):
        U, X = u.source, u.target
        self.Y = Y
        K = all_elements(U)
        xf = np.array(X.invariant_factors, dtype=np.int64)
        uk = (K @ np.array(u.matrix, dtype=np.int64).reshape(U.ngens, X.ngens)) % xf \
            if X.ngens else np.zeros((K.shape[0], 0), dtype=np.int64)
        self.yf = np.array(Y.invariant_factors, dtype=np.int64)
        self.tests = []
        for d in divisors(U.modulus):
            if d == 1:
                continue
            adm = (uk % np.gcd(d, xf) == 0).all(axis=1) if X.ngens else np.ones(len(K), bool)
            ks = K[adm]
            ks = ks[ks.any(axis=1)] if ks.shape[1] else ks[:0]
            if len(ks):
                self.tests.append((np.gcd(d, self.yf), ks))

    def __call__(self, F: np.ndarray) -> np.ndarray:
        ok = np.ones(F.shape[0], dtype=bool)
        if not self.Y.ngens:
            return ok
        for g, ks in self.tests:
            fk = np.einsum("ka,nab->nkb", ks, F) % self.yf
            ok &= (fk % g == 0).all(axis=(1, 2))
        return ok


class ExtensionBatch:
    """Decides, for many f at once, whether some g: X → Y has g∘u = f.

    Column j of g solves Σ_k u[a][k]·σ_k·y_k ≡ f[a][j] (mod t_j) with σ_k =
    t_j / gcd(x_k, t_j).  One Smith form S·A·V = D per column of Y gives the
    criterion: (b·V)_i ≡ 0 mod D_ii for every i.
    """

    def __init__(self, u: Morphism, Y: FpModule):
        U, X = u.source, u.target
        self.cols = []
        nU, nX = U.ngens, X.ngens
        for t in Y.invariant_factors:
            sig = [t // gcd(s, t) for s in X.invariant_factors]
            A = [[u.matrix[a][k] * sig[k] for a in range(nU)] for k in range(nX)]
            A += [[t if a == b else 0 for a in range(nU)] for b in range(nU)]
            if nU == 0:
                self.cols.append(None)
                continue
            d, _, v, _, _ = _snf_lists(A, len(A), nU)
            diag = [abs(d[i][i]) if i < len(d) else 0 for i in range(nU)]
            self.cols.append((np.array(v, dtype=np.int64), np.array(diag, dtype=np.int64)))

    def __call__(self, F: np.ndarray) -> np.ndarray:
        ok = np.ones(F.shape[0], dtype=bool)
        for j, col in enumerate(self.cols):
            if col is None:
                continue
            V, diag = col
            bv = F[:, :, j] @ V
            nz = diag != 0
            ok &= (bv[:, nz] % diag[nz] == 0).all(axis=1)
            ok &= (bv[:, ~nz] == 0).all(axis=1)
        return ok


@dataclass
class SweepReport:
    modulus: int
    max_ambient: int
    max_codomain: int
    ambients: int = 0
    subobjects: int = 0
    instances: int = 0
    partial: int = 0
    oracle_disagreements: int = 0
    extension_disagreements: int = 0
    first_disagreement: Optional[dict] = None
    backend: str = field(default_factory=lambda: kernels.BACKEND)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def theorem_sweep(modulus: int, max_ambient: int = 32, max_codomain: int = 16,
                  oracle: bool = True, extension: bool = True,
                  chunk: int = CHUNK) -> SweepReport:
    """Pushout verdict vs equation oracle vs extendability, exhaustively."""
    rep = SweepReport(modulus, max_ambient, max_codomain)
    Ys = modules_up_to(modulus, max_codomain)
    for X in modules_up_to(modulus, max_ambient):
        rep.ambients += 1
        for u in enumerate_subobjects(X):
            rep.subobjects += 1
            U = u.source
            umat = np.array(u.matrix, dtype=np.int64).reshape(U.ngens, X.ngens)
            for Y in Ys:
                eq = EquationBatch(u, Y) if oracle else None
                ext = ExtensionBatch(u, Y) if extension else None
                for F in hom_chunks(U, Y, chunk):
                    part, _ = kernels.pushout_verdicts(
                        modulus, U.invariant_factors, X.invariant_factors,
                        Y.invariant_factors, umat, F)
                    part = part.astype(bool)
                    rep.instances += len(part)
                    rep.partial += int(part.sum())
                    for name, fn in (("oracle", eq), ("extension", ext)):
                        if fn is None:
                            continue
                        other = fn(F)
                        bad = np.flatnonzero(other != part)
                        setattr(rep, f"{name}_disagreements",
                                getattr(rep, f"{name}_disagreements") + len(bad))
                        if len(bad) and rep.first_disagreement is None:
                            rep.first_disagreement = {
                                "route": name, "X": list(X.invariant_factors),
                                "u": [list(r) for r in u.matrix],
                                "Y": list(Y.invariant_factors),
                                "f": F[bad[0]].tolist(), "pushout": bool(part[bad[0]])}
    return rep


def instance_count(modulus: int, max_ambient: int, max_codomain: int) -> int:
    Ys = modules_up_to(modulus, max_codomain)
    return sum(hom_count(u.source, Y)
               for X in modules_up_to(modulus, max_ambient)
               for u in enumerate_subobjects(X) for Y in Ys)
