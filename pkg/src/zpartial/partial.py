"""Partial morphisms relative to an exact structure.

A partial morphism from X to Y is a pair (u, f) with u: U ↪ X a mono and
f: U → Y.  It is F-partial when, in the pushout

        U --u--> X
        |f       |f̄
        Y --ū--> P

the leg ū is an F-inflation, and an F-partial isomorphism when f̄ is one
as well.  For the pure structure this matches the classical definition
through systems of equations; over ℤ/m it is enough to look at single
equations x·d = k, which :func:`equation_oracle` does.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional, Sequence

from . import config
from .errors import InvariantViolation
from .exact import (
    PURE,
    PurityCertificate,
    Selector,
    is_inflation,
    is_pure_mono,
    pushout,
)
from .linalg import divisors, row_span_kernel
from .modules import (
    FpModule,
    Morphism,
    enumerate_hom,
    extend_along,
    hom_generators,
    is_mono,
    iter_coords,
    kernel,
    lift_along,
)


@dataclass(frozen=True)
class PartialMorphism:
    inclusion: Morphism  # u: U -> X
    map: Morphism        # f: U -> Y

    def __post_init__(self):
        if self.inclusion.source != self.map.source:
            raise ValueError("inclusion and map must share their source")
        if not is_mono(self.inclusion):
            raise ValueError("the inclusion of a partial morphism must be mono")

    @property
    def ambient(self) -> FpModule:
        return self.inclusion.target

    @property
    def domain(self) -> FpModule:
        return self.inclusion.source

    @property
    def codomain(self) -> FpModule:
        return self.map.target

    u = property(lambda self: self.inclusion)
    f = property(lambda self: self.map)


class SystemWitness(NamedTuple):
    """x·d = u(k) solves in X while x·d = f(k) has no solution in Y."""
    d: int
    k: tuple[int, ...]
    k_ambient: tuple[int, ...]
    image: tuple[int, ...]

    def to_json(self) -> dict:
        return {"d": self.d, "k": list(self.k), "k_ambient": list(self.k_ambient),
                "f_k": list(self.image)}


class PartialVerdict(NamedTuple):
    is_partial: bool
    is_partial_iso: bool
    pushout: tuple  # (P, ū: Y -> P, f̄: X -> P)
    purity_certificates: Optional[tuple[PurityCertificate, Optional[PurityCertificate]]] = None
    system_witness: Optional[SystemWitness] = None
    selector: Selector = PURE


def equation_oracle(pm: PartialMorphism) -> Optional[SystemWitness]:
    """First single-equation failure, or None if every x·d = k solvable in
    X has its image x·d = f(k) solvable in Y.

    For a fixed d the admissible k form the subgroup {k : u(k) ∈ dX}; its
    generators suffice because dY is a subgroup.
    """
    u, f = pm.inclusion, pm.map
    U, X, Y = u.source, u.target, f.target
    for d in divisors(U.modulus):
        if d == 1:
            continue
        red = [gcd(d, x) for x in X.invariant_factors]
        for g in row_span_kernel([list(r) for r in u.matrix], red):
            k = U.reduce(g)
            fk = f(k)
            if not Y.is_in_multiple(fk, d):
                return SystemWitness(d, k, u(k), fk)
    return None


def equation_oracle_by_elements(pm: PartialMorphism) -> Optional[SystemWitness]:
    """The same test run over every element of U (no linear algebra)."""
    u, f = pm.inclusion, pm.map
    X, Y = u.target, f.target
    for d in divisors(pm.domain.modulus):
        if d == 1:
            continue
        for k in iter_coords(pm.domain):
            uk = u(k)
            if X.is_in_multiple(uk, d):
                fk = f(k)
                if not Y.is_in_multiple(fk, d):
                    return SystemWitness(d, k, uk, fk)
    return None


def check_partial(pm: PartialMorphism, sel: Selector = PURE,
                  check: Optional[bool] = None) -> PartialVerdict:
    """Decide F-partiality from the pushout of f along u."""
    u, f = pm.inclusion, pm.map
    P, ubar, fbar = pushout(f, u)
    partial = is_inflation(ubar, sel)
    iso = partial and is_inflation(fbar, sel)
    certs = None
    witness = None
    if sel.kind == "pure":
        cu = is_pure_mono(ubar)
        cf = is_pure_mono(fbar) if is_mono(fbar) else None
        certs = (cu, cf)
        witness = equation_oracle(pm)
        if (witness is None) != partial:
            raise InvariantViolation(
                f"pushout verdict {partial} disagrees with the equation oracle for {pm}")
    check = config.CROSS_CHECK if check is None else check
    if check and sel.kind == "pure" and pm.domain.order <= config.CAP_HOM:
        if (equation_oracle_by_elements(pm) is None) != partial:
            raise InvariantViolation("element-wise equation oracle disagrees")
    return PartialVerdict(partial, iso, (P, ubar, fbar), certs, witness, sel)


def find_extension(pm: PartialMorphism) -> Optional[Morphism]:
    """Some g: X → Y with g∘u = f, or None (certified by the solver)."""
    return extend_along(pm.map, pm.inclusion)


def abelian_injective(E: FpModule) -> bool:
    """Injective ℤ/m-modules are the sums of ℤ/p^{v_p(m)}: each invariant
    factor d must be coprime to m/d."""
    m = E.modulus
    return all(gcd(d, m // d) == 1 for d in E.invariant_factors)


def check_partial_iso_via_retraction(pm: PartialMorphism, sel: Selector = PURE,
                                     ambient_injective: Optional[bool] = None) -> bool:
    """Look for h: Y → X with h∘f = u and compare with the pushout verdict.

    A retraction forces a partial isomorphism; when X is injective for the
    structure the converse holds and is asserted too.
    """
    v = check_partial(pm, sel)
    if not v.is_partial:
        raise ValueError("check_partial_iso_via_retraction needs a partial morphism")
    h = extend_along(pm.inclusion, pm.map)
    if h is not None and not v.is_partial_iso:
        raise InvariantViolation("retraction exists but the pushout says not a partial iso")
    if ambient_injective is None:
        if sel.kind == "pure":
            ambient_injective = True  # finite modules are pure-injective
        elif sel.kind == "abelian":
            ambient_injective = abelian_injective(pm.ambient)
        else:
            ambient_injective = False
    if ambient_injective and v.is_partial_iso and h is None:
        raise InvariantViolation("partial iso into an injective ambient without a retraction")
    return h is not None


def check_sum_closure(pm1: PartialMorphism, pm2: PartialMorphism, sel: Selector = PURE) -> bool:
    if pm1.inclusion != pm2.inclusion or pm1.codomain != pm2.codomain:
        raise ValueError("sum of partial morphisms needs the same inclusion and codomain")
    return check_partial(PartialMorphism(pm1.inclusion, pm1.map + pm2.map), sel).is_partial


def compose_partial(pm: PartialMorphism, g: Morphism, sel: Selector = PURE) -> PartialVerdict:
    if g.source != pm.codomain:
        raise ValueError("g must start at the codomain of the partial morphism")
    return check_partial(PartialMorphism(pm.inclusion, g @ pm.map), sel)


def enlarge_ambient(pm: PartialMorphism, v: Morphism, sel: Selector = PURE) -> PartialVerdict:
    if v.source != pm.ambient:
        raise ValueError("v must start at the ambient module")
    if not is_inflation(v, sel):
        raise ValueError(f"v is not an inflation for {sel}")
    return check_partial(PartialMorphism(v @ pm.inclusion, pm.map), sel)


def is_cophantom(f: Morphism, sel: Selector, battery: Sequence[Morphism]):
    """``(verdict, first failing embedding)`` relative to a battery of monos out of B."""
    for u in battery:
        if u.source != f.source:
            raise ValueError("battery member does not start at the source of f")
        if not check_partial(PartialMorphism(u, f), sel).is_partial:
            return False, u
    return True, None


class InjectivityReport(NamedTuple):
    verdict: bool
    witness: Optional[tuple[Morphism, Morphism]]  # (inflation u, map f) with no extension


def baer_battery(modulus: int) -> list[Morphism]:
    """The inclusions dℤ/m ↪ ℤ/m."""
    R = FpModule.of(modulus, [modulus])
    out = []
    for d in divisors(modulus):
        S, incl = kernel(Morphism(R, R, ((modulus // d,),)))
        out.append(incl)
    return out


def _injective_against(E: FpModule, battery) -> Optional[tuple[Morphism, Morphism]]:
    for u in battery:
        for f in hom_generators(u.source, E):
            if extend_along(f, u) is None:
                return u, f
    return None


def is_f_injective(E: FpModule, sel: Selector, battery: Sequence[Morphism],
                   check: Optional[bool] = None) -> InjectivityReport:
    """Every map from a battery inflation's source into E extends along it.

    Maps that extend form a subgroup, so testing Hom-generators is enough.
    """
    bad = _injective_against(E, battery)
    check = config.CROSS_CHECK if check is None else check
    if check and sel.kind == "abelian":
        closed = abelian_injective(E)
        baer = _injective_against(E, baer_battery(E.modulus)) is None
        if closed != baer:
            raise InvariantViolation("closed-form injectivity disagrees with the Baer battery")
        if closed and bad is not None:
            raise InvariantViolation("injective module fails a battery extension")
    return InjectivityReport(bad is None, bad)


def check_e_upper_characterization(pm: PartialMorphism, class_x: Sequence[FpModule],
                                   cap: Optional[int] = None) -> bool:
    """For every g: Y → Z with Z in the class, g∘f extends along u."""
    for Z in class_x:
        for g in enumerate_hom(pm.codomain, Z, cap):
            if extend_along(g @ pm.map, pm.inclusion) is None:
                return False
    return True


def free_presentation(Z: FpModule) -> tuple[Morphism, Morphism]:
    """K ↪ (ℤ/m)^k ↠ Z with the standard projection."""
    m = Z.modulus
    k = Z.ngens
    Q = FpModule.of(m, [m] * k)
    p = Morphism(Q, Z, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))
    K, i = kernel(p)
    return i, p


def check_e_lower_characterization(pm: PartialMorphism, class_x: Sequence[FpModule],
                                   cap: Optional[int] = None) -> bool:
    """Squares (i: M → N, φ1: M → U, φ2: N → A) with Coker i in the class must
    admit g: N → B with g∘i = f∘φ1.

    The squares enumerated are those over a free presentation of each class
    member with every φ2 ∈ Hom(N, A) whose restriction lands in U; these
    already decide the condition.
    """
    u, f = pm.inclusion, pm.map
    for Z in class_x:
        i, _ = free_presentation(Z)
        for phi2 in enumerate_hom(i.target, pm.ambient, cap):
            phi1 = lift_along(phi2 @ i, u)
            if phi1 is None:
                continue
            if extend_along(f @ phi1, i) is None:
                return False
    return True

