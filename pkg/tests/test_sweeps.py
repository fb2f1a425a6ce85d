import random

import numpy as np
import pytest

from zpartial.corpus import modules_up_to
from zpartial.exact import PURE
from zpartial.modules import Morphism, enumerate_subobjects
from zpartial.partial import PartialMorphism, check_partial, find_extension
from zpartial.sweeps import EquationBatch, ExtensionBatch, hom_chunks, instance_count, theorem_sweep


@pytest.mark.parametrize("m", [4, 6, 9, 12])
def test_small_sweep_has_no_disagreements(m):
    rep = theorem_sweep(m, max_ambient=12, max_codomain=8)
    assert rep.instances == instance_count(m, 12, 8)
    assert rep.oracle_disagreements == 0
    assert rep.extension_disagreements == 0
    assert rep.first_disagreement is None
    assert 0 < rep.partial <= rep.instances


@pytest.mark.parametrize("m", [4, 8, 12])
def test_batch_routes_match_scalar_routes(m):
    rng = random.Random(m)
    Xs = [X for X in modules_up_to(m, 32) if X.ngens]
    for _ in range(30):
        X = rng.choice(Xs)
        u = rng.choice(enumerate_subobjects(X))
        Y = rng.choice(modules_up_to(m, 16))
        U = u.source
        eq, ext = EquationBatch(u, Y), ExtensionBatch(u, Y)
        F = next(hom_chunks(U, Y, chunk=64))
        a, b = eq(F), ext(F)
        for row, x, y in zip(F, a, b):
            f = Morphism(U, Y, tuple(tuple(int(v) for v in r) for r in row))
            pm = PartialMorphism(u, f)
            assert bool(x) == check_partial(pm, PURE).is_partial
            assert bool(y) == (find_extension(pm) is not None)


def test_report_json():
    rep = theorem_sweep(4, max_ambient=4, max_codomain=4)
    doc = rep.to_json()
    assert doc["modulus"] == 4 and doc["oracle_disagreements"] == 0
    assert doc["backend"] in ("cython", "python")
