import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpartial.corpus import modules_up_to, random_morphism
from zpartial.exact import ABELIAN, PURE, HomFrom, HomInto, cyclics, is_pure_mono
from zpartial.linalg import divisors
from zpartial.modules import FpModule, Morphism, enumerate_hom, enumerate_subobjects, hom_count, is_mono, iter_coords
from zpartial.partial import (
    PartialMorphism,
    abelian_injective,
    baer_battery,
    check_e_lower_characterization,
    check_e_upper_characterization,
    check_partial,
    check_partial_iso_via_retraction,
    find_extension,
    is_cophantom,
    is_f_injective,
)


def mod(m, *fs):
    return FpModule.of(m, list(fs))


Z2, Z4 = mod(4, 2), mod(4, 4)
U_INC = Morphism(Z2, Z4, ((2,),))
BAD = PartialMorphism(U_INC, Morphism.identity(Z2))     # U = {0,2} -> Z/2 iso
GOOD = PartialMorphism(U_INC, U_INC)                     # U -> Z/4 inclusion


def test_running_example_not_partial():
    v = check_partial(BAD, PURE)
    assert not v.is_partial and not v.is_partial_iso
    w = v.system_witness
    assert (w.d, w.k, w.k_ambient, w.image) == (2, (1,), (2,), (1,))
    P, ubar, _ = v.pushout
    assert P.invariant_factors == (4,)
    assert not is_pure_mono(ubar).verdict
    assert find_extension(BAD) is None


def test_inclusion_is_partial_with_identity_extension():
    v = check_partial(GOOD, PURE)
    assert v.is_partial and v.system_witness is None
    g = find_extension(GOOD)
    assert g is not None and g @ U_INC == U_INC
    assert g == Morphism.identity(Z4)
    assert v.is_partial_iso
    assert check_partial_iso_via_retraction(GOOD)


def test_every_map_is_abelian_partial():
    assert check_partial(BAD, ABELIAN).is_partial


def test_cophantom_with_witness_embedding():
    ok, witness = is_cophantom(Morphism.identity(Z2), PURE, [U_INC])
    assert not ok and witness == U_INC
    ok, _ = is_cophantom(Morphism.identity(Z2), PURE, [Morphism(Z2, mod(4, 2, 2), ((1, 0),))])
    assert ok


def test_injectivity_against_baer_battery():
    assert is_f_injective(Z4, ABELIAN, baer_battery(4)).verdict
    rep = is_f_injective(Z2, ABELIAN, baer_battery(4))
    assert not rep.verdict
    u, f = rep.witness
    assert u.target == Z4 and u.source == Z2 and u.matrix == ((2,),)
    assert f.matrix == ((1,),)


def test_every_module_pure_injective():
    for m in (4, 12):
        Xs = modules_up_to(m, 16)
        pures = [i for X in Xs for i in enumerate_subobjects(X) if is_pure_mono(i).verdict]
        for E in Xs:
            assert is_f_injective(E, PURE, pures).verdict


def test_abelian_injectives_closed_form():
    found = {M.invariant_factors for M in modules_up_to(12, 48) if abelian_injective(M)}
    assert found == {(), (3,), (4,), (12,), (3, 3), (3, 12), (4, 4), (4, 12), (3, 3, 3)}
    for M in modules_up_to(12, 48):
        assert abelian_injective(M) == is_f_injective(M, ABELIAN, baer_battery(12)).verdict


def test_class_characterizations_on_running_example():
    assert not check_e_upper_characterization(BAD, [Z2])
    assert not check_e_upper_characterization(BAD, cyclics(4))
    assert not check_e_lower_characterization(BAD, cyclics(4))
    assert check_e_upper_characterization(GOOD, cyclics(4))
    assert check_e_lower_characterization(GOOD, cyclics(4))
    assert not check_partial(BAD, HomInto([Z2])).is_partial


def test_inclusion_must_be_mono():
    with pytest.raises(ValueError):
        PartialMorphism(Morphism(Z4, Z4, ((2,),)), Morphism.identity(Z4))


# ---------------------------------------------------------------------------
# brute-force oracles


def _brute_equation_partial(pm):
    u, f = pm.inclusion, pm.map
    X, Y = u.target, f.target
    m = X.modulus
    for d in divisors(m):
        dX = {X.reduce([d * c for c in x]) for x in iter_coords(X)}
        dY = {Y.reduce([d * c for c in y]) for y in iter_coords(Y)}
        for k in iter_coords(u.source):
            if u(k) in dX and f(k) not in dY:
                return False
    return True


def _random_pm(m, rng):
    Xs = [X for X in modules_up_to(m, 32) if X.ngens]
    X = rng.choice(Xs)
    u = rng.choice(enumerate_subobjects(X))
    Y = rng.choice(modules_up_to(m, 16))
    return PartialMorphism(u, random_morphism(u.source, Y, rng))


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([4, 8, 12, 6, 9]), st.integers(0, 2**32))
def test_pushout_verdict_matches_brute_force(m, seed):
    pm = _random_pm(m, random.Random(seed))
    v = check_partial(pm, PURE)
    assert v.is_partial == _brute_equation_partial(pm)
    assert v.is_partial == (find_extension(pm) is not None)
    if hom_count(pm.ambient, pm.codomain) <= 4096:
        assert v.is_partial == any(g @ pm.inclusion == pm.map
                                   for g in enumerate_hom(pm.ambient, pm.codomain))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([4, 12, 9]), st.integers(0, 2**32))
def test_class_characterizations_match_pure(m, seed):
    pm = _random_pm(m, random.Random(seed))
    pure = check_partial(pm, PURE).is_partial
    assert check_e_upper_characterization(pm, cyclics(m)) == pure
    assert check_e_lower_characterization(pm, cyclics(m)) == pure
    assert check_partial(pm, HomInto(cyclics(m))).is_partial == pure
    assert check_partial(pm, HomFrom(cyclics(m))).is_partial == pure


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([4, 8, 12]), st.integers(0, 2**32))
def test_partial_iso_and_retraction(m, seed):
    pm = _random_pm(m, random.Random(seed))
    v = check_partial(pm, PURE)
    if not v.is_partial:
        return
    has_retraction = check_partial_iso_via_retraction(pm)
    assert has_retraction == v.is_partial_iso
    if v.is_partial_iso:
        assert is_mono(pm.map)
