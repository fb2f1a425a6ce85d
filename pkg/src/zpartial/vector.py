"""numpy helpers for sweeping whole Hom-sets at once."""
from __future__ import annotations

from itertools import product
from math import gcd
from typing import Optional

import numpy as np

from . import config
from .errors import CapExceeded
from .linalg import divisors
from .modules import FpModule, hom_count


def primes_of(n: int) -> list[int]:
    return [p for p in divisors(n) if p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))]


def socle_lines(mod: FpModule) -> list[tuple[int, ...]]:
    """One nonzero element of prime order per cyclic subgroup of prime order."""
    fs = mod.invariant_factors
    out = []
    for p in primes_of(mod.modulus):
        idx = [i for i, d in enumerate(fs) if d % p == 0]
        for coeffs in product(range(p), repeat=len(idx)):
            nz = [c for c in coeffs if c]
            if not nz or nz[0] != 1:
                continue
            v = [0] * len(fs)
            for i, c in zip(idx, coeffs):
                v[i] = c * (fs[i] // p)
            out.append(tuple(v))
    return out


def hom_array(a: FpModule, b: FpModule, cap: Optional[int] = None) -> np.ndarray:
    """Every morphism a → b as an (N, na, nb) array, in enumerate_hom order."""
    cap = config.CAP_BATTERY if cap is None else cap
    n = hom_count(a, b)
    if n > cap:
        raise CapExceeded("Hom sweep", n, cap)
    na, nb = a.ngens, b.ngens
    if na == 0 or nb == 0:
        return np.zeros((1, na, nb), dtype=np.int64)
    choices = [np.arange(0, y, y // gcd(x, y), dtype=np.int64)
               for x in a.invariant_factors for y in b.invariant_factors]
    grids = np.meshgrid(*choices, indexing="ij")
    flat = np.stack([g.ravel() for g in grids], axis=1)
    return flat.reshape(n, na, nb)


def mono_mask(F: np.ndarray, source: FpModule, target: FpModule,
              lines: Optional[list] = None) -> np.ndarray:
    """Which matrices in F (N, ns, nt) are injective on ``source``.

    A map is mono iff it kills no element of prime order."""
    lines = socle_lines(source) if lines is None else lines
    if not lines:
        return np.ones(F.shape[0], dtype=bool)
    if target.ngens == 0:
        return np.zeros(F.shape[0], dtype=bool)
    S = np.array(lines, dtype=np.int64)
    mods = np.array(target.invariant_factors, dtype=np.int64)
    vals = np.matmul(S, F) % mods
    return vals.any(axis=2).all(axis=1)


def span(gens: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    """All elements of the subgroup of ⊕ℤ/moduli spanned by the rows of gens."""
    moduli = np.asarray(moduli, dtype=np.int64)
    radix = np.cumprod(np.concatenate([[1], moduli[:-1]])).astype(np.int64)
    total = int(np.prod(moduli.astype(object)))
    if total >= 1 << 62:
        return _span_rows(gens, moduli)
    elems = np.zeros((1, moduli.size), dtype=np.int64)
    for g in gens:
        g = g % moduli
        if not g.any():
            continue
        orders = moduli // np.gcd(g, moduli)
        order = int(np.lcm.reduce(orders))
        mult = (np.arange(order, dtype=np.int64)[:, None] * g[None, :]) % moduli
        elems = (elems[:, None, :] + mult[None, :, :]).reshape(-1, moduli.size) % moduli
        _, keep = np.unique(elems @ radix, return_index=True)
        elems = elems[np.sort(keep)]
    return elems


def _span_rows(gens: np.ndarray, moduli: np.ndarray) -> np.ndarray:
    elems = np.zeros((1, moduli.size), dtype=np.int64)
    for g in gens:
        g = g % moduli
        if not g.any():
            continue
        order = int(np.lcm.reduce(moduli // np.gcd(g, moduli)))
        mult = (np.arange(order, dtype=np.int64)[:, None] * g[None, :]) % moduli
        elems = (elems[:, None, :] + mult[None, :, :]).reshape(-1, moduli.size) % moduli
        elems = np.unique(elems, axis=0)
    return elems
