import pytest

from zpartial.corpus import modules_up_to
from zpartial.exact import ABELIAN, PURE, is_pure_mono
from zpartial.hulls import (
    Battery,
    InflationSet,
    default_battery,
    essential_all_subobjects,
    essential_cyclic,
    is_essential,
    is_injective_for,
    is_injective_hull,
    is_small_over,
    iso_over,
    iterative_preenvelope,
    minimize_envelope,
    structural_injective_hull,
)
from zpartial.modules import FpModule, Morphism, enumerate_subobjects, is_mono
from zpartial.partial import abelian_injective


def mod(m, *fs):
    return FpModule.of(m, list(fs))


Z2, Z4 = mod(4, 2), mod(4, 4)
INC = Morphism(Z2, Z4, ((2,),))
V22 = mod(4, 2, 2)
FIRST = Morphism(Z2, V22, ((1, 0),))


def test_essential_examples():
    assert is_essential(INC).verdict
    assert not is_essential(FIRST).verdict
    assert essential_cyclic(INC) and essential_all_subobjects(INC)
    assert not essential_cyclic(FIRST) and not essential_all_subobjects(FIRST)


def test_small_over_examples():
    assert is_small_over(Morphism.identity(Z4), INC, ABELIAN).verdict
    v = is_small_over(Morphism.identity(V22), FIRST, ABELIAN)
    assert not v.verdict
    Y, f = v.witness
    assert not is_mono(f)
    assert f @ FIRST is not None


def test_structural_hulls():
    E, u = structural_injective_hull(Z2)
    assert E.invariant_factors == (4,) and u.matrix == ((2,),)
    E, u = structural_injective_hull(mod(12, 6))
    assert E.invariant_factors == (12,)
    assert is_mono(u)
    E, u = structural_injective_hull(mod(12, 2, 6))
    assert E.invariant_factors == (4, 12)


def test_hull_conditions():
    E, u = structural_injective_hull(Z2)
    rep = is_injective_hull(u)
    assert rep.conditions == (True,) * 5
    bad = Morphism(Z2, mod(4, 4, 4), ((2, 0),))
    rep = is_injective_hull(bad)
    assert not rep.essential_injective
    assert not rep.split_condition


def test_baer_preenvelope_then_minimize():
    trace = iterative_preenvelope(Z2, InflationSet.baer(4), ABELIAN)
    assert trace.steps_used >= 1
    assert abelian_injective(trace.target)
    E, v = minimize_envelope(trace.final)
    assert E.invariant_factors == (4,)
    H, h = structural_injective_hull(Z2)
    assert iso_over(v, h) is not None


def test_pure_preenvelope_is_immediate():
    pures = [i for X in modules_up_to(4, 8) for i in enumerate_subobjects(X) if is_pure_mono(i).verdict]
    trace = iterative_preenvelope(mod(4, 2, 4), InflationSet(tuple(pures), PURE), PURE)
    assert trace.steps_used == 0


def test_minimize_wasteful_envelope():
    E, v = minimize_envelope(Morphism(Z2, mod(4, 4, 4), ((2, 0),)))
    assert E.invariant_factors == (4,)


def test_free_subobject_inflations():
    H = InflationSet.free_subobjects(4, 2)
    for M in modules_up_to(4, 16):
        trace = iterative_preenvelope(M, H, ABELIAN, max_steps=8)
        assert trace.steps_used <= 8
        assert is_injective_for(trace.target, ABELIAN, list(H))


def test_battery_builders():
    b = default_battery(4, (Z2,))
    assert Z2 in b.targets
    assert len(Battery.default(4, 16).targets) == len(modules_up_to(4, 16))
    assert Battery.explicit([Z4]).targets == (Z4,)


@pytest.mark.parametrize("m", [4, 12])
def test_hull_is_injective_and_essential(m):
    for M in modules_up_to(m, 24):
        E, u = structural_injective_hull(M)
        assert abelian_injective(E)
        assert is_essential(u).verdict
