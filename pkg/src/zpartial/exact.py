"""Conflations, exact substructures and purity.

A selector names an exact structure on the category of finite
ℤ/m-modules: the abelian one (all short exact sequences), the pure one,
and the two structures cut out by a class X of modules, ``HomFrom(X)``
(sequences that stay exact under Hom(X, -)) and ``HomInto(X)`` (exact
under Hom(-, X)).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import NamedTuple, Optional, Sequence

from . import config
from .errors import InvariantViolation
from .linalg import IntMatrix, divisors, row_span_kernel, solve_linear
from .modules import (
    FpModule,
    Morphism,
    cokernel,
    direct_sum,
    enumerate_hom,
    extend_along,
    hom_count,
    hom_generators,
    is_epi,
    is_iso,
    is_mono,
    iter_coords,
    kernel,
    lift_along,
    solve_hom,
    span_order,
)


@dataclass(frozen=True)
class Conflation:
    i: Morphism
    p: Morphism

    def __post_init__(self):
        i, p = self.i, self.p
        if i.target != p.source:
            raise ValueError("conflation legs are not composable")
        if not is_mono(i):
            raise ValueError("left leg of a conflation must be mono")
        if not is_epi(p):
            raise ValueError("right leg of a conflation must be epi")
        if not (p @ i).is_zero or i.source.order * p.target.order != i.target.order:
            raise ValueError("image of the left leg is not the kernel of the right leg")

    @property
    def left(self) -> FpModule:
        return self.i.source

    @property
    def middle(self) -> FpModule:
        return self.i.target

    @property
    def right(self) -> FpModule:
        return self.p.target


@dataclass(frozen=True)
class Selector:
    kind: str  # "abelian", "pure", "hom_into", "hom_from"
    members: tuple[FpModule, ...] = ()

    def __post_init__(self):
        if self.kind not in ("abelian", "pure", "hom_into", "hom_from"):
            raise ValueError(f"unknown exact structure {self.kind!r}")
        object.__setattr__(self, "members", tuple(self.members))

    def describe(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("hom_into", "hom_from"):
            out["class"] = [list(x.invariant_factors) for x in self.members]
        return out

    def __str__(self):
        if self.kind in ("abelian", "pure"):
            return self.kind
        return f"{self.kind}({', '.join(str(x) for x in self.members)})"


ABELIAN = Selector("abelian")
PURE = Selector("pure")


def HomInto(members: Sequence[FpModule]) -> Selector:
    return Selector("hom_into", tuple(members))


def HomFrom(members: Sequence[FpModule]) -> Selector:
    return Selector("hom_from", tuple(members))


@lru_cache(maxsize=None)
def cyclics(modulus: int) -> tuple[FpModule, ...]:
    """ℤ/d for every divisor d > 1 of the modulus."""
    return tuple(FpModule.of(modulus, [d]) for d in divisors(modulus) if d > 1)


class PurityWitness(NamedTuple):
    d: int
    k: tuple[int, ...]          # element of the subobject, its own coordinates
    k_ambient: tuple[int, ...]  # the same element inside the ambient module


class PurityCertificate(NamedTuple):
    verdict: bool
    witness: Optional[PurityWitness] = None

    def to_json(self) -> dict:
        out = {"pure": self.verdict, "witness": None}
        if self.witness is not None:
            w = self.witness
            out["witness"] = {"d": w.d, "k": list(w.k), "k_ambient": list(w.k_ambient)}
        return out


class Pushout(NamedTuple):
    module: FpModule
    i1: Morphism
    i2: Morphism


class Pullback(NamedTuple):
    module: FpModule
    p1: Morphism
    p2: Morphism


# ---------------------------------------------------------------------------
# pushouts and pullbacks


def pushout(f: Morphism, g: Morphism) -> Pushout:
    """Pushout of ``M <-f- K -g-> N``: P = (N ⊕ M) / {(g k, -f k)}."""
    if f.source != g.source:
        raise ValueError("pushout needs morphisms with a common source")
    ds = direct_sum(g.target, f.target)
    h = ds.inj_a @ g - ds.inj_b @ f
    P, c = cokernel(h)
    return Pushout(P, c @ ds.inj_b, c @ ds.inj_a)


def pullback(f: Morphism, g: Morphism) -> Pullback:
    """Pullback of ``M -f-> C <-g- N`` as the kernel of (f, -g)."""
    if f.target != g.target:
        raise ValueError("pullback needs morphisms with a common target")
    ds = direct_sum(f.source, g.source)
    h = f @ ds.proj_a - g @ ds.proj_b
    Q, k = kernel(h)
    return Pullback(Q, ds.proj_a @ k, ds.proj_b @ k)


def conflation_of_mono(i: Morphism) -> Conflation:
    if not is_mono(i):
        raise ValueError("conflation_of_mono needs a monomorphism")
    _, p = cokernel(i)
    return Conflation(i, p)


# ---------------------------------------------------------------------------
# purity


def _lifts_all(p: Morphism, members) -> bool:
    """Every map from a member into target(p) lifts along p."""
    for X in members:
        for h in hom_generators(X, p.target):
            if lift_along(h, p) is None:
                return False
    return True


def _extends_all(i: Morphism, members) -> bool:
    """Every map from source(i) into a member extends along i."""
    for X in members:
        for h in hom_generators(i.source, X):
            if extend_along(h, i) is None:
                return False
    return True


def _pure_by_orders(i: Morphism) -> tuple[bool, Optional[int]]:
    """d·B ∩ Img i = d·Img i for every d, compared by orders."""
    A, B = i.source, i.target
    for d in divisors(i.source.modulus):
        if d == 1:
            continue
        red = [gcd(d, b) for b in B.invariant_factors]
        # |{a : i(a) ∈ dB}| against |dA|
        pre = A.order // span_order(i.matrix, red)
        dA = prod(a // gcd(a, d) for a in A.invariant_factors)
        if pre != dA:
            return False, d
    return True, None


def _witness(i: Morphism) -> Optional[PurityWitness]:
    A, B = i.source, i.target
    for d in divisors(A.modulus):
        if d == 1:
            continue
        red = [gcd(d, b) for b in B.invariant_factors]
        for g in row_span_kernel([list(r) for r in i.matrix], red):
            k = A.reduce(g)
            if not A.is_in_multiple(k, d):
                return PurityWitness(d, k, i(k))
    return None


def _witness_by_search(i: Morphism) -> Optional[PurityWitness]:
    A, B = i.source, i.target
    for d in divisors(A.modulus):
        if d == 1:
            continue
        for k in iter_coords(A):
            ik = i(k)
            if B.is_in_multiple(ik, d) and not A.is_in_multiple(k, d):
                return PurityWitness(d, k, ik)
    return None


def verify_purity_witness(i: Morphism, w: PurityWitness) -> bool:
    """Re-check a witness with the linear solver: x·d = k solves in the
    ambient module and has no solution inside the subobject."""
    A, B = i.source, i.target
    if tuple(i(w.k)) != tuple(w.k_ambient):
        return False
    ring = A.ring
    nb, na = B.ngens, A.ngens
    in_b = solve_linear(IntMatrix.diagonal([w.d] * nb, nb, nb) if nb else IntMatrix.zeros(0, 0),
                        list(w.k_ambient), ring, col_moduli=list(B.invariant_factors))
    in_a = solve_linear(IntMatrix.diagonal([w.d] * na, na, na) if na else IntMatrix.zeros(0, 0),
                        list(w.k), ring, col_moduli=list(A.invariant_factors))
    return in_b is not None and in_a is None


def is_pure_mono(i: Morphism, check: Optional[bool] = None) -> PurityCertificate:
    """Purity of a mono, decided by Hom(ℤ/d, -)-exactness of its conflation.

    With ``check`` (default: the global cross-check switch) the order
    criterion and the element search are run as well and must agree.
    """
    if not is_mono(i):
        raise ValueError("is_pure_mono needs a monomorphism")
    check = config.CROSS_CHECK if check is None else check
    _, p = cokernel(i)
    verdict = _lifts_all(p, cyclics(i.source.modulus))
    witness = None if verdict else _witness(i)
    if check:
        by_orders, _ = _pure_by_orders(i)
        if by_orders != verdict:
            raise InvariantViolation(f"purity: Hom-exactness says {verdict}, orders say {by_orders}")
        if i.source.order <= config.CAP_HOM:
            found = _witness_by_search(i)
            if (found is None) != verdict:
                raise InvariantViolation(f"purity: element search disagrees for {i}")
        if witness is not None and not verify_purity_witness(i, witness):
            raise InvariantViolation("purity witness does not re-verify")
    if not verdict and witness is None:
        raise InvariantViolation("non-pure mono without a one-equation witness")
    return PurityCertificate(verdict, witness)


def pure_tri_check(i: Morphism) -> tuple[bool, bool, bool]:
    """The three purity verdicts side by side (Hom-exactness, orders, search)."""
    _, p = cokernel(i)
    a = _lifts_all(p, cyclics(i.source.modulus))
    b = _pure_by_orders(i)[0]
    c = _witness_by_search(i) is None
    return a, b, c


# ---------------------------------------------------------------------------
# substructure membership


def is_inflation(i: Morphism, sel: Selector) -> bool:
    """Whether a mono is an inflation of the structure ``sel``."""
    if not is_mono(i):
        return False
    if sel.kind == "abelian":
        return True
    if sel.kind == "pure":
        return is_pure_mono(i).verdict
    if sel.kind == "hom_from":
        return _lifts_all(cokernel(i)[1], sel.members)
    return _extends_all(i, sel.members)


def in_substructure(eta: Conflation, sel: Selector) -> bool:
    if sel.kind == "abelian":
        return True
    if sel.kind == "pure":
        return is_pure_mono(eta.i).verdict
    if sel.kind == "hom_from":
        return _lifts_all(eta.p, sel.members)
    return _extends_all(eta.i, sel.members)


# ---------------------------------------------------------------------------
# Ext actions


def _zero_rows(a: FpModule, b: FpModule):
    return tuple((0,) * b.ngens for _ in range(a.ngens))


def ext_pushout(eta: Conflation, g: Morphism) -> Conflation:
    """Push ``eta`` out along ``g`` out of its left end."""
    if g.source != eta.left:
        raise ValueError("ext_pushout: g must start at the left end")
    P, i1, i2 = pushout(eta.i, g)
    # the unique c with c∘i1 = p and c∘i2 = 0
    c = solve_hom(P, eta.right, right=[(i1.matrix, eta.p.matrix),
                                       (i2.matrix, _zero_rows(g.target, eta.right))])
    if c is None:
        raise InvariantViolation("pushout conflation has no induced cokernel map")
    return Conflation(i2, c)


def ext_pullback(eta: Conflation, f: Morphism) -> Conflation:
    """Pull ``eta`` back along ``f`` into its right end."""
    if f.target != eta.right:
        raise ValueError("ext_pullback: f must end at the right end")
    Q, q1, q2 = pullback(eta.p, f)
    j = solve_hom(eta.left, Q, left=[
        (q1.matrix, eta.i.matrix, eta.middle.invariant_factors),
        (q2.matrix, _zero_rows(eta.left, f.source), f.source.invariant_factors),
    ])
    if j is None:
        raise InvariantViolation("pullback conflation has no induced kernel map")
    return Conflation(j, q2)


def split_conflation(a: FpModule, c: FpModule) -> Conflation:
    ds = direct_sum(a, c)
    return Conflation(ds.inj_a, ds.proj_b)


def baer_sum(eta1: Conflation, eta2: Conflation) -> Conflation:
    """Pull the sum of the two sequences back along the diagonal of the
    right end, then push it out along the codiagonal of the left end."""
    if eta1.left != eta2.left or eta1.right != eta2.right:
        raise ValueError("Baer sum needs conflations with the same ends")
    A, C = eta1.left, eta1.right
    Q, q1, q2 = pullback(eta1.p, eta2.p)
    b1, b2 = eta1.middle.invariant_factors, eta2.middle.invariant_factors
    zero2 = _zero_rows(A, eta2.middle)
    anti = solve_hom(A, Q, left=[(q1.matrix, eta1.i.matrix, b1), (q2.matrix, (-eta2.i).matrix, b2)])
    first = solve_hom(A, Q, left=[(q1.matrix, eta1.i.matrix, b1), (q2.matrix, zero2, b2)])
    if anti is None or first is None:
        raise InvariantViolation("Baer sum: left end does not map into the pullback")
    M, c = cokernel(anti)
    i = c @ first
    p = extend_along(eta1.p @ q1, c)
    if p is None:
        raise InvariantViolation("Baer sum: no induced map to the right end")
    return Conflation(i, p)


def conflations_equivalent(eta1: Conflation, eta2: Conflation,
                           check: Optional[bool] = None) -> Optional[Morphism]:
    """A middle map θ with θ∘i1 = i2 and p2∘θ = p1 (an iso by the five
    lemma), or None.  Solved as one linear system on θ's entries."""
    if eta1.left != eta2.left or eta1.right != eta2.right:
        raise ValueError("equivalence needs conflations with the same ends")
    B1, B2 = eta1.middle, eta2.middle
    if B1 != B2:
        return None
    theta = solve_hom(B1, B2, right=[(eta1.i.matrix, eta2.i.matrix)],
                      left=[(eta2.p.matrix, eta1.p.matrix, eta1.right.invariant_factors)])
    check = config.CROSS_CHECK if check is None else check
    if theta is not None and not is_iso(theta):
        raise InvariantViolation("equivalence of conflations is not an isomorphism")
    if check and hom_count(B1, B2) <= config.CAP_HOM:
        found = any(t @ eta1.i == eta2.i and eta2.p @ t == eta1.p and is_iso(t)
                    for t in enumerate_hom(B1, B2))
        if found != (theta is not None):
            raise InvariantViolation("conflation equivalence: search and solver disagree")
    return theta


# ---------------------------------------------------------------------------
# the ladder lemma


class FactorCheck(NamedTuple):
    alpha: Optional[Morphism]
    beta: Optional[Morphism]

    @property
    def verdict(self) -> bool:
        return self.alpha is not None


def factor_check(i: Morphism, p: Morphism, i2: Morphism, p2: Morphism,
                 phi1: Morphism, phi2: Morphism, phi3: Morphism) -> FactorCheck:
    """For a commutative ladder (i, p) over (i2, p2) with vertical maps
    phi1, phi2, phi3: α with p2∘α = phi3 exists iff β with β∘i = phi1 does."""
    if phi2 @ i != i2 @ phi1 or phi3 @ p != p2 @ phi2:
        raise ValueError("ladder does not commute")
    alpha = lift_along(phi3, p2)
    beta = extend_along(phi1, i)
    if (alpha is None) != (beta is None):
        raise InvariantViolation("ladder lemma: α and β verdicts differ")
    return FactorCheck(alpha, beta)
