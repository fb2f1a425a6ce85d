from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpartial.corpus import modules_up_to
from zpartial.linalg import IntMatrix, RingSpec
from zpartial.modules import (
    FpModule,
    Morphism,
    cokernel,
    direct_sum,
    enumerate_hom,
    enumerate_subobjects,
    extend_along,
    hom_count,
    image,
    is_epi,
    is_mono,
    iter_coords,
    kernel,
    lift_along,
    module_from_presentation,
    subobject_leq,
)


def mod(m, *fs):
    return FpModule.of(m, list(fs))


def test_presentation_diag_2_4_over_z12():
    M = module_from_presentation(RingSpec(12), IntMatrix.from_rows([[2, 0], [0, 4]]))
    assert M.invariant_factors == (2, 4)


def test_chain_renormalization():
    assert mod(12, 2, 3).invariant_factors == (6,)
    assert mod(12, 12, 2, 1).invariant_factors == (2, 12)


def test_bad_factor_rejected():
    with pytest.raises(ValueError):
        FpModule(RingSpec(4), (3,))
    with pytest.raises(ValueError):
        FpModule(RingSpec(12), (4, 2))
    # as a presentation, Z/3 tensored down to Z/4 is zero
    assert mod(4, 3).is_zero


def test_kernel_of_doubling():
    Z4 = mod(4, 4)
    K, incl = kernel(Morphism(Z4, Z4, ((2,),)))
    assert K.invariant_factors == (2,)
    assert sorted(incl(x) for x in iter_coords(K)) == [(0,), (2,)]


def test_hom_z2_z4():
    homs = list(enumerate_hom(mod(4, 2), mod(4, 4)))
    assert sorted(h.matrix for h in homs) == [((0,),), ((2,),)]
    assert hom_count(mod(4, 2), mod(4, 4)) == 2


def test_mono_epi():
    Z4, Z2 = mod(4, 4), mod(4, 2)
    two = Morphism(Z4, Z4, ((2,),))
    assert not is_mono(two) and not is_epi(two)
    incl = Morphism(Z2, Z4, ((2,),))
    assert is_mono(incl) and not is_epi(incl)
    Q, _ = cokernel(incl)
    assert Q.invariant_factors == (2,)


def test_subobject_leq_order():
    Z4 = mod(4, 4)
    assert subobject_leq(Morphism.identity(Z4), Morphism(mod(4, 2), Z4, ((2,),))) is None


@pytest.mark.parametrize("M,count", [(mod(4, 2, 2), 5), (mod(4, 2, 4), 8), (mod(4, 4, 4), 15),
                                     (mod(12, 12), 6), (mod(8, 8), 4)])
def test_subgroup_counts(M, count):
    subs = enumerate_subobjects(M)
    assert len(subs) == count
    images = {frozenset(f(x) for x in iter_coords(f.source)) for f in subs}
    assert len(images) == count


def test_direct_sum_maps():
    ds = direct_sum(mod(12, 4), mod(12, 6))
    assert ds.module.invariant_factors == (2, 12)
    assert ds.proj_a @ ds.inj_a == Morphism.identity(mod(12, 4))
    assert ds.proj_b @ ds.inj_b == Morphism.identity(mod(12, 6))
    assert (ds.proj_a @ ds.inj_b).is_zero


def _corpus(m, order):
    return [M for M in modules_up_to(m, order) if M.ngens]


@st.composite
def triples(draw, order=8):
    m = draw(st.sampled_from([4, 6, 8, 12]))
    ms = _corpus(m, order)
    A, B, C = (draw(st.sampled_from(ms)) for _ in range(3))
    return A, B, C


def _pick(draw, a, b):
    homs = list(enumerate_hom(a, b))
    return homs[draw(st.integers(0, len(homs) - 1))]


@settings(max_examples=150, deadline=None)
@given(triples(), st.data())
def test_extend_and_lift_agree_with_enumeration(abc, data):
    A, B, C = abc
    i = _pick(data.draw, A, B)
    h = _pick(data.draw, A, C)
    e = extend_along(h, i)
    found = any(g @ i == h for g in enumerate_hom(B, C))
    assert (e is not None) == found
    if e is not None:
        assert e @ i == h
    p = _pick(data.draw, B, C)
    k = _pick(data.draw, A, C)
    lift = lift_along(k, p)
    found = any(p @ g == k for g in enumerate_hom(A, B))
    assert (lift is not None) == found
    if lift is not None:
        assert p @ lift == k


@settings(max_examples=150, deadline=None)
@given(triples(), st.data())
def test_kernel_image_cokernel_orders(abc, data):
    A, B, _ = abc
    f = _pick(data.draw, A, B)
    K, k = kernel(f)
    I, _ = image(f)
    Q, q = cokernel(f)
    assert K.order * I.order == A.order
    assert I.order * Q.order == B.order
    assert (f @ k).is_zero and (q @ f).is_zero
    elems = {f(x) for x in iter_coords(A)}
    assert len(elems) == I.order
    assert sum(1 for x in iter_coords(A) if not any(f(x))) == K.order


@settings(max_examples=100, deadline=None)
@given(triples(), st.data())
def test_composition_is_function_composition(abc, data):
    A, B, C = abc
    f = _pick(data.draw, A, B)
    g = _pick(data.draw, B, C)
    for x in list(iter_coords(A))[:16]:
        assert (g @ f)(x) == g(f(x))


def test_hom_count_formula():
    from math import gcd, prod
    for M in _corpus(12, 12):
        for N in _corpus(12, 12):
            expected = prod(gcd(a, b) for a, b in product(M.invariant_factors, N.invariant_factors))
            assert hom_count(M, N) == expected
