from math import gcd
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from zpartial.linalg import IntMatrix, RingSpec, divisors, smith_normal_form, solve_linear, xgcd


def test_snf_two_by_two():
    dec = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    assert dec.diagonal == [2, 4]
    # d1 = gcd of entries, d1*d2 = |det|
    assert dec.diagonal[0] == 2 and dec.diagonal[0] * dec.diagonal[1] == 8


def test_snf_zero_and_empty():
    assert smith_normal_form(IntMatrix.zeros(2, 3)).diagonal == [0, 0]
    dec = smith_normal_form(IntMatrix.zeros(0, 2))
    assert dec.d.to_rows() == []


def test_solve_over_z4():
    a = IntMatrix.from_rows([[2]])
    x = solve_linear(a, [2], RingSpec(4))
    assert x is not None and x[0] % 4 in (1, 3)
    # variable drawn from a copy of Z/2: only 0 and 2 are available
    assert solve_linear(a, [2], RingSpec(4), row_moduli=[2]) is None


def test_divisors_and_xgcd():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    g, s, t = xgcd(12, 18)
    assert g == 6 and 12 * s + 18 * t == 6


entries = st.integers(min_value=-30, max_value=30)


@st.composite
def matrices(draw):
    r = draw(st.integers(0, 4))
    c = draw(st.integers(0, 4))
    return IntMatrix.from_rows([[draw(entries) for _ in range(c)] for _ in range(r)], c)


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_snf_factorization(a):
    dec = smith_normal_form(a)
    assert (dec.u @ a @ dec.v).to_rows() == dec.d.to_rows()
    assert abs(dec.u.det()) == 1 and abs(dec.v.det()) == 1
    assert dec.d.is_diagonal()
    diag = dec.diagonal
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)
    if a.rows and a.cols:
        g = 0
        for i in range(a.rows):
            for j in range(a.cols):
                g = gcd(g, a[i, j])
        assert diag[0] == g


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 6, 8, 9, 12]), st.data())
def test_solve_agrees_with_enumeration(m, data):
    n = data.draw(st.integers(1, 2))
    k = data.draw(st.integers(1, 2))
    rows = [[data.draw(st.integers(0, m - 1)) for _ in range(k)] for _ in range(n)]
    b = [data.draw(st.integers(0, m - 1)) for _ in range(k)]
    x = solve_linear(IntMatrix.from_rows(rows, k), b, RingSpec(m))
    def ok(v):
        return all(sum(v[i] * rows[i][j] for i in range(n)) % m == b[j] % m for j in range(k))
    exists = any(ok(v) for v in product(range(m), repeat=n))
    assert (x is not None) == exists
    if x is not None:
        assert ok(x)
