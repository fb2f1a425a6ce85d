"""Named property suites: exhaustive or seeded sweeps with pass/fail counts."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import config
from .certify import _check_purity, purity_certificate
from .corpus import modules_up_to, random_morphism
from .errors import CapExceeded, InvariantViolation
from .exact import (
    ABELIAN,
    PURE,
    Conflation,
    HomFrom,
    HomInto,
    Selector,
    baer_sum,
    conflation_of_mono,
    conflations_equivalent,
    cyclics,
    ext_pushout,
    in_substructure,
    is_inflation,
    is_pure_mono,
    pure_tri_check,
    split_conflation,
    verify_purity_witness,
)
from .hulls import (
    Battery,
    InflationSet,
    essential_all_subobjects,
    essential_battery,
    essential_cyclic,
    is_essential,
    is_injective_hull,
    iso_over,
    iterative_preenvelope,
    minimize_envelope,
    structural_injective_hull,
)
from .modules import (
    FpModule,
    Morphism,
    direct_sum,
    enumerate_hom,
    enumerate_subobjects,
    hom_generators,
    is_iso,
    is_mono,
    is_split_mono,
)
from .partial import (
    PartialMorphism,
    check_e_lower_characterization,
    check_e_upper_characterization,
    check_partial,
    check_partial_iso_via_retraction,
    check_sum_closure,
    compose_partial,
    enlarge_ambient,
    is_f_injective,
)
from .sweeps import theorem_sweep


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: int = 0
    first_failure: Optional[str] = None

    def record(self, ok: bool, detail: Callable[[], str] = lambda: ""):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = detail()

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "failures": self.failures,
                "first_failure": self.first_failure, "passed": self.failures == 0}


@dataclass
class SuiteReport:
    suite: str
    ring: int
    params: dict
    properties: list[PropertyResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def prop(self, name: str) -> PropertyResult:
        for p in self.properties:
            if p.name == name:
                return p
        p = PropertyResult(name)
        self.properties.append(p)
        return p

    @property
    def passed(self) -> bool:
        return all(p.failures == 0 for p in self.properties)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ring": str(self.ring), "params": self.params,
                "passed": self.passed, "properties": [p.to_json() for p in self.properties],
                **({"details": self.extra} if self.extra else {})}


@dataclass(frozen=True)
class SuiteParams:
    max_order: Optional[int] = None
    seed: int = 0
    count: int = 10_000
    max_steps: int = 8
    battery_order: int = config.DEFAULT_BATTERY_ORDER

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


_subobjects: dict = {}


def subobjects(X: FpModule) -> list[Morphism]:
    if X not in _subobjects:
        _subobjects[X] = enumerate_subobjects(X)
    return _subobjects[X]


def _guard(fn) -> tuple[bool, str]:
    """Run a check; a broken internal invariant counts as a failure."""
    try:
        return bool(fn()), ""
    except InvariantViolation as e:
        return False, str(e)


# ---------------------------------------------------------------------------
# exhaustive equivalence sweeps


def suite_thm_2_2(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 32
    rep = SuiteReport("thm-2-2", m, {"max_ambient": amb, "max_codomain": min(amb, 16)})
    sw = theorem_sweep(m, amb, min(amb, 16), oracle=True, extension=False)
    p = rep.prop("pushout verdict = single-equation oracle")
    p.checked, p.failures = sw.instances, sw.oracle_disagreements
    if sw.first_disagreement:
        p.first_failure = repr(sw.first_disagreement)
    rep.extra = {"instances": sw.instances, "partial": sw.partial, "subobjects": sw.subobjects}
    return rep


def suite_partial_extend(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 32
    rep = SuiteReport("partial-extend", m, {"max_ambient": amb, "max_codomain": min(amb, 16)})
    sw = theorem_sweep(m, amb, min(amb, 16), oracle=False, extension=True)
    p = rep.prop("pure partial = extendable")
    p.checked, p.failures = sw.instances, sw.extension_disagreements
    if sw.first_disagreement:
        p.first_failure = repr(sw.first_disagreement)
    rep.extra = {"instances": sw.instances, "partial": sw.partial}
    return rep


# ---------------------------------------------------------------------------
# closure properties of partial morphisms


class _Sampler:
    def __init__(self, m: int, seed: int, item: str, max_order: int):
        self.m = m
        self.rng = random.Random(f"{seed}:{m}:{item}")
        self.Xs = modules_up_to(m, max_order)
        self.Ys = modules_up_to(m, 16)
        self.small = [M for M in modules_up_to(m, 8) if M.ngens]
        self._infl: dict = {}

    def selector(self, n: int) -> Selector:
        kind = n % 4
        if kind == 0:
            return ABELIAN
        if kind == 1:
            return PURE
        members = self.rng.sample(self.small, min(len(self.small), self.rng.randint(1, 2)))
        return HomInto(members) if kind == 2 else HomFrom(members)

    def module(self, pool=None) -> FpModule:
        return self.rng.choice(pool or self.Xs)

    def subobject(self, X: FpModule) -> Morphism:
        return self.rng.choice(subobjects(X))

    def inflation_into(self, X: FpModule, sel: Selector) -> Morphism:
        key = (X, sel)
        if key not in self._infl:
            self._infl[key] = [s for s in subobjects(X) if is_inflation(s, sel)]
        return self.rng.choice(self._infl[key])

    def map(self, a: FpModule, b: FpModule) -> Morphism:
        return random_morphism(a, b, self.rng)

    def twisted_split(self, Y: FpModule) -> Morphism:
        """Y → Y ⊕ W, (id, ψ): a split mono, hence an inflation everywhere."""
        W = self.rng.choice(self.small)
        ds = direct_sum(Y, W)
        return ds.inj_a + ds.inj_b @ self.map(Y, W)

    def partial(self, sel: Selector, tries: int = 64) -> PartialMorphism:
        for _ in range(tries):
            X = self.module()
            u = self.subobject(X)
            pm = PartialMorphism(u, self.map(u.source, self.module(self.Ys)))
            if check_partial(pm, sel, check=False).is_partial:
                return pm
        # always partial: f extends along u
        g = self.map(X, self.module(self.Ys))
        return PartialMorphism(u, g @ u)


def _desc(*objs) -> Callable[[], str]:
    return lambda: " | ".join(repr(o) for o in objs)


def suite_prop_2_5(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 16
    n = prm.count
    rep = SuiteReport("prop-2-5", m, {"max_ambient": amb, "count": n, "seed": prm.seed})

    s = _Sampler(m, prm.seed, "1", amb)
    p = rep.prop("(1) u an inflation: every f partial, partial iso iff f an inflation")
    for k in range(n):
        sel = s.selector(k)
        X = s.module()
        u = s.inflation_into(X, sel)
        f = s.map(u.source, s.module(s.Ys))
        def chk():
            v = check_partial(PartialMorphism(u, f), sel)
            return v.is_partial and v.is_partial_iso == is_inflation(f, sel)
        ok, why = _guard(chk)
        p.record(ok, _desc(sel, u, f, why))

    s = _Sampler(m, prm.seed, "2", amb)
    p = rep.prop("(2) extendable maps are partial")
    for k in range(n):
        sel = s.selector(k)
        X = s.module()
        u = s.subobject(X)
        g = s.map(X, s.module(s.Ys))
        ok, why = _guard(lambda: check_partial(PartialMorphism(u, g @ u), sel).is_partial)
        p.record(ok, _desc(sel, u, g, why))

    s = _Sampler(m, prm.seed, "4a", amb)
    p = rep.prop("(4a) h∘f = u forces a partial isomorphism")
    k = 0
    while p.checked < n:
        sel = s.selector(k)
        k += 1
        X = s.module(s.Ys)
        u = s.subobject(X)
        Z = s.rng.choice(s.small)
        ds = direct_sum(X, Z)
        phi = s.map(X, Z) @ u if s.rng.random() < 0.5 else s.map(u.source, Z)
        f = ds.inj_a @ u + ds.inj_b @ phi
        pm = PartialMorphism(u, f)
        if not check_partial(pm, sel, check=False).is_partial:
            continue
        h = ds.proj_a
        def chk():
            if h @ f != u:
                return False
            return check_partial(pm, sel).is_partial_iso and check_partial_iso_via_retraction(pm, sel)
        ok, why = _guard(chk)
        p.record(ok, _desc(sel, u, f, why))

    s = _Sampler(m, prm.seed, "5", amb)
    p = rep.prop("(5) partial iff the pushed-out conflation lies in F")
    for k in range(n):
        sel = s.selector(k)
        X = s.module()
        u = s.subobject(X)
        f = s.map(u.source, s.module(s.Ys))
        def chk():
            a = check_partial(PartialMorphism(u, f), sel).is_partial
            b = in_substructure(ext_pushout(conflation_of_mono(u), f), sel)
            return a == b
        ok, why = _guard(chk)
        p.record(ok, _desc(sel, u, f, why))

    s = _Sampler(m, prm.seed, "6", amb)
    p = rep.prop("(6) composition keeps partial morphisms and partial isos")
    for k in range(n):
        sel = s.selector(k)
        pm = s.partial(sel)
        Y = pm.codomain
        g = s.twisted_split(Y) if s.rng.random() < 0.5 else s.map(Y, s.module(s.Ys))
        def chk():
            before = check_partial(pm, sel)
            after = compose_partial(pm, g, sel)
            if not after.is_partial:
                return False
            if before.is_partial_iso and is_inflation(g, sel):
                return after.is_partial_iso
            return True
        ok, why = _guard(chk)
        p.record(ok, _desc(sel, pm, g, why))

    s = _Sampler(m, prm.seed, "7", amb)
    p = rep.prop("(7) sums of partial morphisms are partial")
    for k in range(n):
        sel = s.selector(k)
        pm1 = s.partial(sel)
        u = pm1.inclusion
        f2 = None
        for _ in range(64):
            cand = s.map(u.source, pm1.codomain)
            if check_partial(PartialMorphism(u, cand), sel, check=False).is_partial:
                f2 = cand
                break
        if f2 is None:
            f2 = -pm1.map
        pm2 = PartialMorphism(u, f2)
        ok, why = _guard(lambda: check_sum_closure(pm1, pm2, sel))
        p.record(ok, _desc(sel, pm1, f2, why))

    s = _Sampler(m, prm.seed, "8", amb)
    p = rep.prop("(8) enlarging the ambient along an inflation keeps partiality")
    for k in range(n):
        sel = s.selector(k)
        pm = s.partial(sel)
        X = pm.ambient
        v = None
        if s.rng.random() < 0.5:
            Z = s.module(s.Ys)
            for _ in range(16):
                cand = s.map(X, Z)
                if is_inflation(cand, sel):
                    v = cand
                    break
        if v is None:
            v = s.twisted_split(X)
        def chk():
            before = check_partial(pm, sel)
            after = enlarge_ambient(pm, v, sel)
            return after.is_partial and (after.is_partial_iso or not before.is_partial_iso)
        ok, why = _guard(chk)
        p.record(ok, _desc(sel, pm, v, why))
    return rep


def suite_characterizations(m: int, prm: SuiteParams) -> SuiteReport:
    """The remaining partial-morphism invariants on a sampled corpus."""
    amb = prm.max_order or 16
    n = min(prm.count, 2000)
    rep = SuiteReport("characterizations", m, {"max_ambient": amb, "count": n, "seed": prm.seed})
    s = _Sampler(m, prm.seed, "char", amb)
    cyc = cyclics(m)
    for k in range(n):
        X = s.module()
        u = s.subobject(X)
        f = s.map(u.source, s.module(s.Ys))
        pm = PartialMorphism(u, f)
        cls = s.rng.sample(s.small, min(len(s.small), s.rng.randint(0, 2)))
        pure = check_partial(pm, PURE)
        rep.prop("HomFrom(cyclics) agrees with Pure").record(
            check_partial(pm, HomFrom(cyc)).is_partial == pure.is_partial, _desc(pm))
        rep.prop("HomInto(class) agrees with its Hom characterization").record(
            check_partial(pm, HomInto(cls)).is_partial == check_e_upper_characterization(pm, cls),
            _desc(pm, cls))
        rep.prop("HomFrom(class) agrees with its square characterization").record(
            check_partial(pm, HomFrom(cls)).is_partial == check_e_lower_characterization(pm, cls),
            _desc(pm, cls))
        sel = s.selector(k)
        if is_inflation(u, sel):
            rep.prop("u an inflation: partial iso iff f an inflation").record(
                check_partial(pm, sel).is_partial_iso == is_inflation(f, sel), _desc(sel, pm))
    return rep


# ---------------------------------------------------------------------------
# purity and Ext


def suite_purity(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 64
    rep = SuiteReport("purity", m, {"max_order": amb})
    tri = rep.prop("Hom-exactness = order criterion = witness search")
    wit = rep.prop("every non-pure verdict ships a witness that re-verifies")
    for X in modules_up_to(m, amb):
        for u in subobjects(X):
            a, b, c = pure_tri_check(u)
            tri.record(a == b == c, _desc(u, (a, b, c)))
            if not a:
                cert = is_pure_mono(u, check=False)
                ok = (cert.witness is not None and verify_purity_witness(u, cert.witness)
                      and _check_purity(purity_certificate(u, cert)) == [])
                wit.record(ok, _desc(u, cert))
    return rep


def _conflations(A: FpModule, C: FpModule, middle_order: int) -> list[Conflation]:
    out = []
    for B in modules_up_to(A.modulus, middle_order):
        if B.order != middle_order:
            continue
        for i in enumerate_hom(A, B):
            if not is_mono(i):
                continue
            for p in enumerate_hom(B, C):
                try:
                    out.append(Conflation(i, p))
                except ValueError:
                    pass
    return out


def suite_ext(m: int, prm: SuiteParams) -> SuiteReport:
    """Ext(ℤ/2, ℤ/2) over ℤ/4: enumerate every conflation with middle of
    order 4 and classify up to equivalence."""
    rep = SuiteReport("ext", m, {"ends": ["2", "2"]})
    if m % 2:
        rep.extra = {"skipped": "ring has no Z/2"}
        return rep
    A = FpModule.of(m, [2])
    etas = _conflations(A, A, 4)
    classes: list[Conflation] = []
    index = []
    for eta in etas:
        for n, rep_eta in enumerate(classes):
            if conflations_equivalent(eta, rep_eta) is not None:
                index.append(n)
                break
        else:
            index.append(len(classes))
            classes.append(eta)
    split = split_conflation(A, A)
    split_idx = next(n for n, c in enumerate(classes) if conflations_equivalent(c, split) is not None)
    expected = 2 if m % 4 == 0 else 1
    rep.prop("number of equivalence classes").record(
        len(classes) == expected, lambda: f"{len(classes)} classes")
    table = []
    for a in classes:
        row = []
        for b in classes:
            s = baer_sum(a, b)
            row.append(next((n for n, c in enumerate(classes)
                             if conflations_equivalent(s, c) is not None), -1))
        table.append(row)
    grp = rep.prop("Baer sum table is the group Z/%d" % len(classes))
    for x in range(len(classes)):
        grp.record(table[split_idx][x] == x, lambda: "split class is not neutral")
        for y in range(len(classes)):
            grp.record(table[x][y] == table[y][x] and table[x][y] >= 0, lambda: "sum not closed")
    for x in range(len(classes)):
        if x != split_idx:
            rep.prop("nonsplit + nonsplit = split").record(
                table[x][x] == split_idx, lambda: f"table {table}")
    rep.extra = {"conflations": len(etas), "classes": len(classes),
                 "middles": sorted({str(list(e.middle.invariant_factors)) for e in etas}),
                 "sum_table": table, "split_class": split_idx}
    return rep


# ---------------------------------------------------------------------------
# hulls and essential extensions


def suite_hulls(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 32
    rep = SuiteReport("hulls", m, {"max_order": amb, "battery_order": prm.battery_order})
    H = InflationSet.baer(m)
    for M in modules_up_to(m, amb):
        E, u = structural_injective_hull(M)
        battery = Battery.default(m, prm.battery_order, (M,))
        r = is_injective_hull(u, battery=battery)
        rep.prop("structural hull passes all five conditions").record(
            all(r.conditions), _desc(M, r.conditions))
        trace = iterative_preenvelope(M, H, max_steps=prm.max_steps)
        S, v = minimize_envelope(trace.final)
        rep.prop("minimized preenvelope is isomorphic over M to the hull").record(
            iso_over(v, u) is not None, _desc(M, S, v))
    return rep


def suite_pure_collapse(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 32
    rep = SuiteReport("pure-collapse", m, {"max_order": amb, "battery_order": prm.battery_order})
    Xs = modules_up_to(m, amb)
    pure_monos = []
    for X in Xs:
        for u in subobjects(X):
            if is_pure_mono(u).verdict:
                pure_monos.append(u)
                rep.prop("every pure mono splits").record(is_split_mono(u), _desc(u))
    for E in Xs:
        rep.prop("every module is pure-injective (all pure monos of the corpus)").record(
            is_f_injective(E, PURE, pure_monos).verdict, _desc(E))
    for u in pure_monos:
        battery = Battery.default(m, prm.battery_order, (u.source, u.target))
        rep.prop("pure-essential iff iso").record(
            is_essential(u, PURE, battery).verdict == is_iso(u), _desc(u))
    rep.extra = {"pure_monos": len(pure_monos)}
    return rep


def suite_essential(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 32
    rep = SuiteReport("essential", m, {"max_order": amb, "battery_order": prm.battery_order})
    battery = Battery.default(m, prm.battery_order)
    p = rep.prop("cyclic criterion = all subobjects = battery")
    for Y in modules_up_to(m, amb):
        for u in subobjects(Y):
            a = essential_cyclic(u)
            b = essential_all_subobjects(u)
            c = essential_battery(u, ABELIAN, battery).verdict
            p.record(a == b == c, _desc(u, (a, b, c)))
    return rep


def suite_fp_preenvelope(m: int, prm: SuiteParams) -> SuiteReport:
    amb = prm.max_order or 16
    rep = SuiteReport("fp-preenvelope", m, {"max_order": amb, "max_steps": prm.max_steps,
                                            "inflations": "subobjects of (Z/m)^n, n <= 2"})
    H = InflationSet.free_subobjects(m, 2)
    targets = [Z for Z in modules_up_to(m, prm.battery_order)
               if is_f_injective(Z, ABELIAN, H.members).verdict]
    steps = {}
    for M in modules_up_to(m, amb):
        try:
            trace = iterative_preenvelope(M, H, max_steps=prm.max_steps)
        except CapExceeded:
            rep.prop("terminates within max_steps").record(False, _desc(M))
            continue
        rep.prop("terminates within max_steps").record(True)
        steps[str(list(M.invariant_factors))] = trace.steps_used
        E = trace.target
        rep.prop("output is H-injective").record(
            is_f_injective(E, ABELIAN, H.members).verdict, _desc(M, E))
        rep.prop("maps into H-injective battery modules factor through it").record(
            all(trace.final is not None and _extends(h, trace.final)
                for Z in targets for h in hom_generators(M, Z)), _desc(M))
    rep.extra = {"steps": steps, "h_injective_targets": len(targets)}
    return rep


def _extends(h: Morphism, v: Morphism) -> bool:
    from .modules import extend_along
    return extend_along(h, v) is not None


SUITES = {
    "thm-2-2": suite_thm_2_2,
    "partial-extend": suite_partial_extend,
    "prop-2-5": suite_prop_2_5,
    "characterizations": suite_characterizations,
    "purity": suite_purity,
    "ext": suite_ext,
    "hulls": suite_hulls,
    "pure-collapse": suite_pure_collapse,
    "essential": suite_essential,
    "fp-preenvelope": suite_fp_preenvelope,
}


def run_suite(name: str, modulus: int, params: Optional[SuiteParams] = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](modulus, params or SuiteParams())
