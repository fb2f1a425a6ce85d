import random
import subprocess
import sys

import numpy as np
import pytest

from zpartial import _kernels_py, kernels
from zpartial.corpus import modules_up_to, random_morphism
from zpartial.exact import PURE
from zpartial.modules import Morphism, enumerate_subobjects
from zpartial.partial import PartialMorphism, check_partial
from zpartial.sweeps import hom_chunks

try:
    from zpartial import _kernels as compiled
except ImportError:  # extension not built
    compiled = None


def _batch(m, rng):
    X = rng.choice([X for X in modules_up_to(m, 32) if X.ngens])
    u = rng.choice(enumerate_subobjects(X))
    Y = rng.choice(modules_up_to(m, 16))
    U = u.source
    F = np.array([np.array(random_morphism(U, Y, rng).matrix, dtype=np.int64).reshape(-1)
                  for _ in range(12)], dtype=np.int64).reshape(12, U.ngens * Y.ngens)
    umat = np.array(u.matrix, dtype=np.int64).reshape(U.ngens, X.ngens)
    return u, Y, umat, F


@pytest.mark.parametrize("m", [4, 6, 8, 9, 12, 36])
def test_python_kernel_matches_check_partial(m):
    rng = random.Random(m)
    for _ in range(40):
        u, Y, umat, F = _batch(m, rng)
        U, X = u.source, u.target
        part, iso = _kernels_py.pushout_verdicts(m, U.invariant_factors, X.invariant_factors,
                                                 Y.invariant_factors, umat, F, True)
        for row, p, i in zip(F, part, iso):
            f = Morphism(U, Y, tuple(tuple(int(x) for x in row[r * Y.ngens:(r + 1) * Y.ngens])
                                     for r in range(U.ngens)))
            v = check_partial(PartialMorphism(u, f), PURE)
            assert bool(p) == v.is_partial
            assert bool(i) == v.is_partial_iso


@pytest.mark.skipif(compiled is None, reason="compiled extension not built")
@pytest.mark.parametrize("m", [4, 8, 12, 36])
def test_backends_identical(m):
    rng = random.Random(100 + m)
    for _ in range(60):
        u, Y, umat, F = _batch(m, rng)
        args = (m, u.source.invariant_factors, u.target.invariant_factors, Y.invariant_factors, umat, F, True)
        a = _kernels_py.pushout_verdicts(*args)
        b = compiled.pushout_verdicts(*args)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_empty_domain():
    from zpartial.modules import FpModule
    X = FpModule.of(4, [4])
    zero = FpModule.zero(4)
    F = np.zeros((1, 0), dtype=np.int64)
    umat = np.zeros((0, 1), dtype=np.int64)
    part, iso = kernels.pushout_verdicts(4, (), X.invariant_factors, (2,), umat, F, True)
    assert part.tolist() == [1]
    assert zero.order == 1


def test_full_hom_set_through_chunks():
    from zpartial.modules import FpModule, enumerate_hom
    U, Y = FpModule.of(12, [2, 6]), FpModule.of(12, [4, 12])
    rows = np.concatenate(list(hom_chunks(U, Y, chunk=7)))
    expected = [[list(r) for r in h.matrix] for h in enumerate_hom(U, Y)]
    assert rows.tolist() == expected


def _backend_in_subprocess(env_value):
    env = {"ZPARTIAL_PURE_PYTHON": env_value} if env_value else {}
    import os
    full = dict(os.environ)
    full.pop("ZPARTIAL_PURE_PYTHON", None)
    full.update(env)
    return subprocess.run([sys.executable, "-c", "from zpartial import kernels; print(kernels.BACKEND)"],
                          capture_output=True, text=True, env=full, check=True).stdout.strip()


def test_backend_selection():
    assert _backend_in_subprocess("1") == "python"
    expected = "cython" if compiled is not None else "python"
    assert _backend_in_subprocess(None) == expected
