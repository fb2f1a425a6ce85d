"""Deterministic corpora of small modules and morphisms."""
from __future__ import annotations

import random
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import CapExceeded
from .linalg import divisors
from .modules import FpModule, Morphism

MAX_CORPUS_ORDER = 4096


@lru_cache(maxsize=None)
def divisibility_chains(modulus: int, max_order: int) -> tuple[tuple[int, ...], ...]:
    """All chains d1 | d2 | ... with 2 <= d_i | m and product <= max_order,
    sorted by length, then lexicographically."""
    if max_order > MAX_CORPUS_ORDER:
        raise CapExceeded("corpus order", max_order, MAX_CORPUS_ORDER)
    ds = [d for d in divisors(modulus) if d > 1]
    out = [()]

    def rec(chain, order):
        last = chain[-1] if chain else 1
        for d in ds:
            if d % last == 0 and order * d <= max_order:
                nxt = chain + (d,)
                out.append(nxt)
                rec(nxt, order * d)

    rec((), 1)
    return tuple(sorted(out, key=lambda c: (len(c), c)))


def modules_up_to(modulus: int, max_order: int) -> list[FpModule]:
    return [FpModule.of(modulus, c) for c in divisibility_chains(modulus, max_order)]


def random_morphism(a: FpModule, b: FpModule, rng: random.Random) -> Morphism:
    rows = []
    for x in a.invariant_factors:
        row = []
        for y in b.invariant_factors:
            step = y // gcd(x, y)
            row.append(step * rng.randrange(gcd(x, y)))
        rows.append(tuple(row))
    return Morphism(a, b, tuple(rows))


def sample_morphisms(modules: list[FpModule], count: int, seed: int,
                     rng: Optional[random.Random] = None) -> list[tuple[int, int, Morphism]]:
    """``count`` random morphisms between corpus members, as (source index,
    target index, morphism); reproducible from the seed."""
    rng = rng or random.Random(seed)
    out = []
    n = len(modules)
    for _ in range(count):
        i, j = rng.randrange(n), rng.randrange(n)
        out.append((i, j, random_morphism(modules[i], modules[j], rng)))
    return out
