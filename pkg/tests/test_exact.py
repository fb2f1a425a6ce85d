from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zpartial.corpus import modules_up_to
from zpartial.exact import (
    ABELIAN,
    PURE,
    Conflation,
    HomFrom,
    HomInto,
    baer_sum,
    conflation_of_mono,
    conflations_equivalent,
    cyclics,
    ext_pullback,
    ext_pushout,
    factor_check,
    in_substructure,
    is_inflation,
    is_pure_mono,
    pullback,
    pure_tri_check,
    pushout,
    split_conflation,
    verify_purity_witness,
)
from zpartial.modules import FpModule, Morphism, enumerate_hom, enumerate_subobjects, iter_coords


def mod(m, *fs):
    return FpModule.of(m, list(fs))


Z2, Z4 = mod(4, 2), mod(4, 4)
INC = Morphism(Z2, Z4, ((2,),))          # 1 -> 2
NONSPLIT = conflation_of_mono(INC)


def test_pushout_of_inclusion_along_identity():
    P = pushout(INC, Morphism.identity(Z2))
    assert P.module.invariant_factors == (4,)
    assert P.i1 @ INC == P.i2 @ Morphism.identity(Z2)


def test_pullback_doubling_and_inclusion():
    Q = pullback(Morphism(Z4, Z4, ((2,),)), INC)
    # pairs (x, y) in Z/4 x Z/2 with 2x = 2y
    pairs = [(x, y) for x in range(4) for y in range(2) if (2 * x - 2 * y) % 4 == 0]
    assert Q.module.order == len(pairs) == 4
    assert Q.module.invariant_factors == (4,)


def test_cokernel_of_inclusion():
    assert NONSPLIT.right.invariant_factors == (2,)


def test_purity_witness():
    cert = is_pure_mono(INC)
    assert not cert.verdict
    assert cert.witness.d == 2 and cert.witness.k == (1,) and cert.witness.k_ambient == (2,)
    assert verify_purity_witness(INC, cert.witness)
    assert is_pure_mono(Morphism(Z2, mod(4, 2, 2), ((1, 0),))).verdict


def test_substructure_membership():
    assert not in_substructure(NONSPLIT, PURE)
    assert in_substructure(NONSPLIT, ABELIAN)
    # both maps Z/2 -> Z/4 extend along the inclusion
    assert in_substructure(NONSPLIT, HomInto([Z4]))
    assert not in_substructure(NONSPLIT, HomInto([Z2]))
    assert not in_substructure(NONSPLIT, HomFrom([Z2]))


def test_baer_sum_of_nonsplit_is_split():
    split = split_conflation(Z2, Z2)
    assert conflations_equivalent(NONSPLIT, split) is None
    assert conflations_equivalent(baer_sum(NONSPLIT, NONSPLIT), split) is not None
    assert conflations_equivalent(baer_sum(NONSPLIT, split), NONSPLIT) is not None


def test_ext_pushout_into_larger_end():
    g = Morphism(Z2, mod(4, 2, 2), ((1, 0),))
    eta = ext_pushout(NONSPLIT, g)
    assert eta.middle.order == 8
    assert eta.middle.invariant_factors == (2, 4)


def test_ext_pullback_along_identity_keeps_class():
    eta = ext_pullback(NONSPLIT, Morphism.identity(Z2))
    assert conflations_equivalent(eta, NONSPLIT) is not None


def test_conflation_rejects_non_exact():
    with pytest.raises(ValueError):
        Conflation(INC, Morphism.identity(Z4))


def test_ladder_lemma_examples():
    eta = NONSPLIT
    # identity ladder: phi1 = id extends along i? no, Z/2 -> Z/2 id does not extend
    fc = factor_check(eta.i, eta.p, eta.i, eta.p, Morphism.identity(Z2),
                      Morphism.identity(Z4), Morphism.identity(Z2))
    assert not fc.verdict
    # ladder into the split sequence through zero on the left
    s = split_conflation(Z2, Z2)
    phi2 = Morphism(Z4, s.middle, tuple(tuple(r) for r in (s.p.matrix[0],))) if False else None
    zero_left = Morphism.zero(Z2, Z2)
    for phi2 in enumerate_hom(Z4, s.middle):
        if phi2 @ eta.i != s.i @ zero_left:
            continue
        phi3 = next((h for h in enumerate_hom(Z2, Z2) if h @ eta.p == s.p @ phi2), None)
        if phi3 is None:
            continue
        assert factor_check(eta.i, eta.p, s.i, s.p, zero_left, phi2, phi3).verdict


def _brute_pushout_order(f, g):
    """|(N ⊕ M) / {(g k, -f k)}| by enumerating the relation subgroup."""
    M, N = f.target, g.target
    rel = set()
    for k in iter_coords(f.source):
        rel.add(tuple(g(k)) + tuple((-x) % d for x, d in zip(f(k), M.invariant_factors)))
    # close under addition
    mods = N.invariant_factors + M.invariant_factors
    sub = {tuple(0 for _ in mods)}
    frontier = list(sub)
    gens = list(rel)
    while frontier:
        nxt = []
        for s in frontier:
            for r in gens:
                t = tuple((a + b) % d for a, b, d in zip(s, r, mods))
                if t not in sub:
                    sub.add(t)
                    nxt.append(t)
        frontier = nxt
    return M.order * N.order // len(sub)


small = {m: [M for M in modules_up_to(m, 8)] for m in (4, 6, 8, 12)}


@st.composite
def spans(draw):
    m = draw(st.sampled_from(sorted(small)))
    K, M, N = (draw(st.sampled_from(small[m])) for _ in range(3))
    fs = list(enumerate_hom(K, M))
    gs = list(enumerate_hom(K, N))
    return draw(st.sampled_from(fs)), draw(st.sampled_from(gs))


@settings(max_examples=150, deadline=None)
@given(spans())
def test_pushout_against_brute_force(fg):
    f, g = fg
    P = pushout(f, g)
    assert P.i1 @ f == P.i2 @ g
    assert P.module.order == _brute_pushout_order(f, g)


@settings(max_examples=150, deadline=None)
@given(spans())
def test_pullback_against_brute_force(fg):
    f, g = fg
    # use the span's maps as a cospan by dualizing roles: f: K->M, build M <- K -> N, pull back f and f
    Q = pullback(f, f)
    pairs = sum(1 for x, y in product(iter_coords(f.source), repeat=2) if f(x) == f(y))
    assert Q.module.order == pairs
    assert f @ Q.p1 == f @ Q.p2


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 12, 9]), st.data())
def test_purity_routes_agree(m, data):
    Xs = [X for X in modules_up_to(m, 32) if X.ngens]
    X = data.draw(st.sampled_from(Xs))
    subs = enumerate_subobjects(X)
    i = data.draw(st.sampled_from(subs))
    a, b, c = pure_tri_check(i)
    assert a == b == c
    cert = is_pure_mono(i)
    assert cert.verdict == a
    if not cert.verdict:
        assert verify_purity_witness(i, cert.witness)
    assert is_inflation(i, PURE) == is_inflation(i, HomFrom(cyclics(m)))
