"""Finitely presented ℤ/m-modules and their morphisms.

Every module is kept in invariant-factor form ⊕ ℤ/d_i with d_1 | d_2 | ...,
and a morphism A → B is the integer matrix sending the i-th generator of
A to row i (in B's coordinates).  Elements are row vectors, so a
morphism acts by ``x @ M`` and ``g ∘ f`` has matrix ``M_f @ M_g``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterator, NamedTuple, Optional, Sequence

from . import config
from .errors import CapExceeded
from .linalg import (
    IntMatrix,
    RingSpec,
    _snf_lists,
    divisors,
    row_span_kernel,
    solve_congruences,
)

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FpModule:
    ring: RingSpec
    invariant_factors: tuple[int, ...]
    original_presentation: Optional[IntMatrix] = field(default=None, compare=False, repr=False)
    # (presentation generators -> canonical coords, canonical generators -> presentation)
    basis_change: Optional[tuple[IntMatrix, IntMatrix]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.ring, RingSpec):
            object.__setattr__(self, "ring", RingSpec(int(self.ring)))
        m = self.ring.require_finite()
        fs = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for i, d in enumerate(fs):
            if d < 2 or m % d:
                raise ValueError(f"invariant factor {d} must be >= 2 and divide {m}")
            if i and d % fs[i - 1]:
                raise ValueError(f"invariant factors {list(fs)} are not a divisibility chain")

    @classmethod
    def of(cls, modulus: int, factors: Sequence[int] = ()) -> "FpModule":
        """⊕ ℤ/f for arbitrary factors dividing ``modulus``, normalized."""
        factors = [int(f) for f in factors]
        ring = RingSpec(modulus)
        n = len(factors)
        rel = IntMatrix.diagonal(factors, n, n) if n else IntMatrix.zeros(0, 0)
        return module_from_presentation(ring, rel)

    @classmethod
    def zero(cls, modulus: int) -> "FpModule":
        return cls(RingSpec(modulus), ())

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    @property
    def factors(self) -> tuple[int, ...]:
        return self.invariant_factors

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_zero(self) -> bool:
        return not self.invariant_factors

    def zero_element(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(coords, self.invariant_factors))

    def is_in_multiple(self, coords: Sequence[int], d: int) -> bool:
        """Whether the element lies in ``d·M`` (exact coordinate test)."""
        return all(x % gcd(d, f) == 0 for x, f in zip(coords, self.invariant_factors))

    def __repr__(self):
        return f"FpModule(Z/{self.modulus}; {list(self.invariant_factors)})"

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " ⊕ ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class ModElement:
    parent: FpModule
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.parent.ngens:
            raise ValueError("coordinate vector has the wrong length")
        object.__setattr__(self, "coords", self.parent.reduce(self.coords))


def _mat_mod(rows, mods) -> Rows:
    return tuple(tuple(x % d for x, d in zip(r, mods)) for r in rows)


def _mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], mods: Sequence[int]) -> Rows:
    out = []
    for r in a:
        acc = [0] * len(mods)
        for k, x in enumerate(r):
            if x:
                bk = b[k]
                for j in range(len(mods)):
                    acc[j] += x * bk[j]
        out.append(tuple(v % d for v, d in zip(acc, mods)))
    return tuple(out)


@dataclass(frozen=True)
class Morphism:
    source: FpModule
    target: FpModule
    matrix: Rows

    def __post_init__(self):
        if self.source.modulus != self.target.modulus:
            raise ValueError("source and target live over different rings")
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        if len(rows) != self.source.ngens or any(len(r) != self.target.ngens for r in rows):
            raise ValueError(
                f"matrix shape does not match {self.source.ngens}x{self.target.ngens}"
            )
        bf = self.target.invariant_factors
        rows = _mat_mod(rows, bf)
        for a, r in zip(self.source.invariant_factors, rows):
            for x, b in zip(r, bf):
                if (a * x) % b:
                    raise ValueError("matrix does not define a well-defined homomorphism")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def identity(cls, m: FpModule) -> "Morphism":
        n = m.ngens
        return cls(m, m, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, a: FpModule, b: FpModule) -> "Morphism":
        return cls(a, b, tuple((0,) * b.ngens for _ in range(a.ngens)))

    @property
    def int_matrix(self) -> IntMatrix:
        return IntMatrix(self.source.ngens, self.target.ngens,
                         tuple(x for r in self.matrix for x in r))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        if isinstance(x, ModElement):
            x = x.coords
        acc = [0] * self.target.ngens
        for xi, r in zip(x, self.matrix):
            if xi:
                for j, v in enumerate(r):
                    acc[j] += xi * v
        return self.target.reduce(acc)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self @ other`` is the composite self ∘ other."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return Morphism(other.source, self.target,
                        _mat_mul(other.matrix, self.matrix, self.target.invariant_factors))

    def _check_parallel(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("morphisms are not parallel")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._check_parallel(other)
        return Morphism(self.source, self.target,
                        tuple(tuple(x + y for x, y in zip(r, s))
                              for r, s in zip(self.matrix, other.matrix)))

    def __neg__(self) -> "Morphism":
        return Morphism(self.source, self.target, tuple(tuple(-x for x in r) for r in self.matrix))

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + (-other)

    def scale(self, k: int) -> "Morphism":
        return Morphism(self.source, self.target, tuple(tuple(k * x for x in r) for r in self.matrix))

    @property
    def is_zero(self) -> bool:
        return not any(any(r) for r in self.matrix)

    def __repr__(self):
        return f"Morphism({self.source} -> {self.target}, {[list(r) for r in self.matrix]})"


class DirectSum(NamedTuple):
    module: FpModule
    inj_a: Morphism
    inj_b: Morphism
    proj_a: Morphism
    proj_b: Morphism


# ---------------------------------------------------------------------------
# presentations


@lru_cache(maxsize=1 << 16)
def _present(m: int, rel: Rows, n: int):
    """Canonical form of ℤ^n / (rows(rel) + mℤ^n).

    Returns ``(factors, to_canon, from_canon)``: row j of ``to_canon``
    holds the canonical coordinates of presentation generator j, and row
    i of ``from_canon`` a presentation vector for canonical generator i.
    """
    rows = [list(r) for r in rel]
    for j in range(n):
        e = [0] * n
        e[j] = m
        rows.append(e)
    d, _, v, vi, _ = _snf_lists(rows, len(rows), n)
    diag = [d[i][i] for i in range(n)]
    keep = [i for i in range(n) if diag[i] != 1]
    factors = tuple(diag[i] for i in keep)
    to_canon = tuple(tuple(v[r][c] % diag[c] for c in keep) for r in range(n))
    from_canon = tuple(tuple(x % m for x in vi[c]) for c in keep)
    return factors, to_canon, from_canon


def _clean_rel(m: int, rows) -> Rows:
    out = []
    seen = set()
    for r in rows:
        t = tuple(x % m for x in r)
        if any(t) and t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(out)


def _quotient(ring: RingSpec, n: int, rel_rows):
    m = ring.modulus
    factors, to_c, from_c = _present(m, _clean_rel(m, rel_rows), n)
    return FpModule(ring, factors), to_c, from_c


def module_from_presentation(ring: RingSpec, rel: IntMatrix) -> FpModule:
    """Cokernel of ``rel`` (relations as rows) over ℤ/m, in canonical form."""
    m = ring.require_finite()
    n = rel.cols
    factors, to_c, from_c = _present(m, _clean_rel(m, rel.to_rows()), n)
    k = len(factors)
    bc = (
        IntMatrix(n, k, tuple(x for r in to_c for x in r)),
        IntMatrix(k, n, tuple(x for r in from_c for x in r)),
    )
    return FpModule(ring, factors, original_presentation=rel, basis_change=bc)


def submodule(mod: FpModule, gens: Sequence[Sequence[int]]):
    """Submodule generated by ``gens``: returns ``(S, inclusion, coords)``.

    ``coords[r]`` are the canonical coordinates in S of the r-th generator.
    """
    fs = mod.invariant_factors
    gens = [mod.reduce(g) for g in gens]
    gens = [g for g in gens if any(g)]
    rel = row_span_kernel([list(g) for g in gens], fs) if gens else []
    S, to_c, from_c = _quotient(mod.ring, len(gens), rel)
    incl = _mat_mul(from_c, gens, fs) if gens else tuple(() for _ in from_c)
    incl = tuple(tuple(x % f for x, f in zip(r, fs)) for r in incl)
    return S, Morphism(S, mod, incl), to_c


# ---------------------------------------------------------------------------
# universal constructions


@lru_cache(maxsize=1 << 14)
def direct_sum(a: FpModule, b: FpModule) -> DirectSum:
    if a.ring != b.ring:
        raise ValueError("direct sum of modules over different rings")
    na, nb = a.ngens, b.ngens
    n = na + nb
    diag = list(a.invariant_factors) + list(b.invariant_factors)
    rel = [[diag[i] if j == i else 0 for j in range(n)] for i in range(n)]
    S, to_c, from_c = _quotient(a.ring, n, rel)
    inj_a = Morphism(a, S, to_c[:na])
    inj_b = Morphism(b, S, to_c[na:])
    proj_a = Morphism(S, a, tuple(r[:na] for r in from_c))
    proj_b = Morphism(S, b, tuple(r[na:] for r in from_c))
    return DirectSum(S, inj_a, inj_b, proj_a, proj_b)


@lru_cache(maxsize=1 << 15)
def kernel(f: Morphism) -> tuple[FpModule, Morphism]:
    gens = row_span_kernel([list(r) for r in f.matrix], f.target.invariant_factors) \
        if f.source.ngens else []
    S, incl, _ = submodule(f.source, gens)
    return S, incl


@lru_cache(maxsize=1 << 15)
def image_factorization(f: Morphism) -> tuple[FpModule, Morphism, Morphism]:
    """``f = mono ∘ epi`` through the image: returns ``(Im f, epi, mono)``."""
    fs = f.target.invariant_factors
    rows = [r for r in f.matrix]
    nz = [i for i, r in enumerate(rows) if any(r)]
    S, incl, coords = submodule(f.target, [rows[i] for i in nz])
    epi_rows = [tuple(0 for _ in S.invariant_factors)] * f.source.ngens
    for pos, i in enumerate(nz):
        epi_rows[i] = coords[pos]
    return S, Morphism(f.source, S, tuple(epi_rows)), incl


def image(f: Morphism) -> tuple[FpModule, Morphism]:
    S, _, incl = image_factorization(f)
    return S, incl


@lru_cache(maxsize=1 << 15)
def cokernel(f: Morphism) -> tuple[FpModule, Morphism]:
    B = f.target
    n = B.ngens
    rel = [list(r) for r in f.matrix]
    for j, d in enumerate(B.invariant_factors):
        e = [0] * n
        e[j] = d
        rel.append(e)
    C, to_c, _ = _quotient(B.ring, n, rel)
    return C, Morphism(B, C, to_c)


def span_order(rows: Sequence[Sequence[int]], moduli: Sequence[int]) -> int:
    """Order of the subgroup of ⊕ℤ/moduli spanned by ``rows``."""
    cols = [j for j, q in enumerate(moduli) if q > 1]
    n = len(cols)
    rows = [[r[j] for j in cols] for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows or n == 0:
        return 1
    for pos, j in enumerate(cols):
        e = [0] * n
        e[pos] = moduli[j]
        rows.append(e)
    d, _, _, _, rank = _snf_lists(rows, len(rows), n, track=False)
    return prod(moduli[j] for j in cols) // prod(d[i][i] for i in range(rank))


def image_order(f: Morphism) -> int:
    """|Img f| via one Smith diagonal, no transforms."""
    return span_order(f.matrix, f.target.invariant_factors)


def is_mono(f: Morphism) -> bool:
    return kernel(f)[0].is_zero


def is_epi(f: Morphism) -> bool:
    return cokernel(f)[0].is_zero


def is_iso(f: Morphism) -> bool:
    return is_mono(f) and is_epi(f)


# ---------------------------------------------------------------------------
# linear solving for morphisms


def _solve_right(source: FpModule, target: FpModule, L, rhs) -> Optional[Morphism]:
    """θ: source → target with ``L @ θ ≡ rhs``, or None."""
    sf, tf = source.invariant_factors, target.invariant_factors
    p = len(L)
    theta = [[0] * len(tf) for _ in sf]
    if p == 0:
        return Morphism(source, target, tuple(tuple(r) for r in theta))
    for j, t in enumerate(tf):
        sig = [t // gcd(s, t) for s in sf]
        A = [[L[a][k] * sig[k] for a in range(p)] for k in range(len(sf))]
        y = solve_congruences(A, [rhs[a][j] for a in range(p)], [t] * p)
        if y is None:
            return None
        for k in range(len(sf)):
            theta[k][j] = (y[k] * sig[k]) % t
    return Morphism(source, target, tuple(tuple(r) for r in theta))


def _solve_left(source: FpModule, target: FpModule, R, rhs, moduli) -> Optional[Morphism]:
    """θ: source → target with ``θ @ R ≡ rhs`` (column b modulo moduli[b])."""
    sf, tf = source.invariant_factors, target.invariant_factors
    q = len(moduli)
    theta = []
    for k, s in enumerate(sf):
        sig = [t // gcd(s, t) for t in tf]
        if q == 0:
            theta.append([0] * len(tf))
            continue
        A = [[sig[j] * R[j][b] for b in range(q)] for j in range(len(tf))]
        y = solve_congruences(A, list(rhs[k]), moduli)
        if y is None:
            return None
        theta.append([(y[j] * sig[j]) % t for j, t in enumerate(tf)])
    return Morphism(source, target, tuple(tuple(r) for r in theta))


def solve_hom(source: FpModule, target: FpModule, right=(), left=()) -> Optional[Morphism]:
    """Find θ: source → target satisfying every linear constraint.

    ``right`` holds pairs ``(L, rhs)`` meaning ``θ ∘ l = rhs`` for the
    morphism with matrix L (i.e. ``L @ θ ≡ rhs`` in target moduli);
    ``left`` holds triples ``(R, rhs, moduli)`` meaning ``r ∘ θ = rhs``.
    """
    right, left = list(right), list(left)
    if not left:
        L = [row for l, _ in right for row in l]
        rhs = [row for _, r in right for row in r]
        return _solve_right(source, target, L, rhs)
    if not right:
        R = [[] for _ in target.invariant_factors]
        rhs = [[] for _ in source.invariant_factors]
        moduli = []
        for r, h, mods in left:
            for j in range(len(R)):
                R[j].extend(r[j])
            for k in range(len(rhs)):
                rhs[k].extend(h[k])
            moduli.extend(mods)
        return _solve_left(source, target, R, rhs, moduli)
    sf, tf = source.invariant_factors, target.invariant_factors
    ns, nt = len(sf), len(tf)
    sig = [[t // gcd(s, t) for t in tf] for s in sf]
    cols, b, moduli = [], [], []
    for L, rhs in right:
        for a in range(len(L)):
            for j in range(nt):
                col = [0] * (ns * nt)
                for k in range(ns):
                    col[k * nt + j] = L[a][k] * sig[k][j]
                cols.append(col)
                b.append(rhs[a][j])
                moduli.append(tf[j])
    for R, rhs, mods in left:
        for k in range(ns):
            for bb, mod in enumerate(mods):
                col = [0] * (ns * nt)
                for j in range(nt):
                    col[k * nt + j] = R[j][bb] * sig[k][j]
                cols.append(col)
                b.append(rhs[k][bb])
                moduli.append(mod)
    A = [[c[v] for c in cols] for v in range(ns * nt)]
    y = solve_congruences(A, b, moduli)
    if y is None:
        return None
    theta = tuple(tuple((y[k * nt + j] * sig[k][j]) % tf[j] for j in range(nt)) for k in range(ns))
    return Morphism(source, target, theta)


def extend_along(h: Morphism, i: Morphism) -> Optional[Morphism]:
    """Some g with ``g ∘ i = h``, or None."""
    if h.source != i.source:
        raise ValueError("extend_along needs morphisms with a common source")
    return _solve_right(i.target, h.target, i.matrix, h.matrix)


def lift_along(h: Morphism, p: Morphism) -> Optional[Morphism]:
    """Some g with ``p ∘ g = h``, or None."""
    if h.target != p.target:
        raise ValueError("lift_along needs morphisms with a common target")
    return _solve_left(h.source, p.source, p.matrix, h.matrix, p.target.invariant_factors)


def is_split_mono(f: Morphism) -> bool:
    return extend_along(Morphism.identity(f.source), f) is not None


def is_split_epi(f: Morphism) -> bool:
    return lift_along(Morphism.identity(f.target), f) is not None


def subobject_leq(u: Morphism, v: Morphism) -> Optional[Morphism]:
    """Witness w with ``v ∘ w = u`` when U ⊆ V as subobjects, else None."""
    if u.target != v.target:
        raise ValueError("subobjects of different objects")
    if not is_mono(u) or not is_mono(v):
        raise ValueError("subobject_leq needs monomorphisms")
    return lift_along(u, v)


# ---------------------------------------------------------------------------
# enumeration


def hom_count(a: FpModule, b: FpModule) -> int:
    return prod(gcd(x, y) for x in a.invariant_factors for y in b.invariant_factors)


def enumerate_elements(mod: FpModule, cap: Optional[int] = None) -> Iterator[ModElement]:
    cap = config.CAP_HOM if cap is None else cap
    if mod.order > cap:
        raise CapExceeded("element enumeration", mod.order, cap)
    for c in product(*(range(d) for d in mod.invariant_factors)):
        yield ModElement(mod, c)


def iter_coords(mod: FpModule) -> Iterator[tuple[int, ...]]:
    """Bare coordinate tuples in lexicographic order (no cap)."""
    return product(*(range(d) for d in mod.invariant_factors))


def enumerate_hom(a: FpModule, b: FpModule, cap: Optional[int] = None) -> Iterator[Morphism]:
    """All morphisms a → b, lexicographic in the row-major matrix entries."""
    if a.ring != b.ring:
        raise ValueError("Hom between modules over different rings")
    cap = config.CAP_HOM if cap is None else cap
    n = hom_count(a, b)
    if n > cap:
        raise CapExceeded("Hom enumeration", n, cap)
    choices = []
    for x in a.invariant_factors:
        for y in b.invariant_factors:
            step = y // gcd(x, y)
            choices.append(range(0, y, step))
    nb = b.ngens
    for flat in product(*choices):
        yield Morphism(a, b, tuple(tuple(flat[i * nb:(i + 1) * nb]) for i in range(a.ngens)))


def hom_generators(a: FpModule, b: FpModule) -> list[Morphism]:
    """A generating set of the group Hom(a, b), one map per cyclic pair."""
    gens = []
    na, nb = a.ngens, b.ngens
    for i, x in enumerate(a.invariant_factors):
        for j, y in enumerate(b.invariant_factors):
            g = gcd(x, y)
            if g > 1:
                rows = [[0] * nb for _ in range(na)]
                rows[i][j] = y // g
                gens.append(Morphism(a, b, tuple(tuple(r) for r in rows)))
    return gens


def _hnf_member(vec: list[int], rows: list[list[int]], upto: int) -> bool:
    v = list(vec)
    for i in reversed(range(upto)):
        h = rows[i][i]
        if v[i] % h:
            return False
        q = v[i] // h
        if q:
            r = rows[i]
            for j in range(i + 1):
                v[j] -= q * r[j]
    return True


def subgroup_generators(mod: FpModule, cap: Optional[int] = None) -> Iterator[tuple[int, list[tuple[int, ...]]]]:
    """Every subgroup exactly once, as ``(order, generators)``.

    Subgroups of ⊕ℤ/d_i are the lattices between diag(d)ℤ^k and ℤ^k; each
    has a unique lower-triangular Hermite basis, which is what we walk.
    """
    cap = config.CAP_SUBGROUPS if cap is None else cap
    if mod.order > cap:
        raise CapExceeded("subgroup lattice", mod.order, cap)
    d = mod.invariant_factors
    k = len(d)
    total = mod.order

    def rec(i, rows):
        if i == k:
            idx = prod(r[j] for j, r in enumerate(rows))
            gens = [mod.reduce(r) for r in rows]
            yield total // idx, [g for g in gens if any(g)]
            return
        for h in divisors(d[i]):
            q = d[i] // h
            for offs in product(*(range(rows[j][j]) for j in range(i))):
                if _hnf_member([q * x for x in offs], rows, i):
                    row = list(offs) + [h] + [0] * (k - i - 1)
                    yield from rec(i + 1, rows + [row])

    yield from rec(0, [])


def enumerate_subobjects(mod: FpModule, cap: Optional[int] = None) -> list[Morphism]:
    """One mono representative per subobject, sorted by order (stable)."""
    subs = sorted(subgroup_generators(mod, cap), key=lambda t: t[0])
    return [submodule(mod, gens)[1] for _, gens in subs]


def element_orders_divide(mod: FpModule, coords: Sequence[int], d: int) -> bool:
    return all((d * x) % f == 0 for x, f in zip(coords, mod.invariant_factors))
