"""Exact integer linear algebra: Smith normal form and congruence solving.

Everything here works on Python ints, so there is no overflow at any
magnitude.  Matrices act on row vectors (``x @ A``), matching the way
systems ``x_1 ... x_m · A = b`` are written for modules.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

__all__ = [
    "IntMatrix",
    "RingSpec",
    "SnfDecomposition",
    "divisors",
    "smith_normal_form",
    "snf_diagonal",
    "solve_linear",
    "xgcd",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n <= 0:
        raise ValueError("divisors() needs a positive integer")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class RingSpec:
    """The coefficient ring ℤ/m.  ``modulus == 0`` stands for ℤ itself."""

    modulus: int

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"invalid modulus {self.modulus}; need 0 (integers) or m >= 2")

    @classmethod
    def integers(cls) -> "RingSpec":
        return cls(0)

    @property
    def is_integers(self) -> bool:
        return self.modulus == 0

    def require_finite(self) -> int:
        if self.modulus < 2:
            raise ValueError("this operation needs a ring Z/m with m >= 2")
        return self.modulus

    def __str__(self):
        return "Z" if self.modulus == 0 else f"Z/{self.modulus}"


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: Optional[int] = None,
                 cols: Optional[int] = None) -> "IntMatrix":
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        e = [0] * (rows * cols)
        for i, d in enumerate(diag):
            e[i * cols + i] = int(d)
        return cls(rows, cols, tuple(e))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        b = other.to_rows()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum(r[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def diag(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(self[i, j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def det(self) -> int:
        """Bareiss fraction-free determinant (square matrices only)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


@dataclass(frozen=True)
class SnfDecomposition:
    """``u @ a @ v == d`` with ``u``, ``v`` unimodular and ``d`` in Smith form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return self.d.diag()


def _snf_lists(a: list[list[int]], nrows: int, ncols: int, track: bool = True):
    """In-place Smith reduction of ``a``; returns (d, u, v, v^-1, rank) as lists.

    Pivot = nonzero entry of least absolute value in the active block,
    ties to the lowest (row, col).  Divisibility is repaired by a final
    pass over the diagonal.
    """
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if track else None
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None
    # vi mirrors v: every column op on v is applied inversely as a row op on vi
    vi = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None
    lim = min(nrows, ncols)
    t = 0
    while t < lim:
        best = 0
        bi = bj = -1
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if best == 0 or ax < best:
                        best, bi, bj = ax, i, j
                        if ax == 1:
                            break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            a[t], a[bi] = a[bi], a[t]
            if track:
                u[t], u[bi] = u[bi], u[t]
        if bj != t:
            for row in a:
                row[t], row[bj] = row[bj], row[t]
            if track:
                for row in v:
                    row[t], row[bj] = row[bj], row[t]
                vi[t], vi[bj] = vi[bj], vi[t]
        while True:
            at = a[t]
            p = at[t]
            clean = True
            for i in range(t + 1, nrows):
                ai = a[i]
                x = ai[t]
                if x:
                    q = x // p
                    if q:
                        for j in range(t, ncols):
                            if at[j]:
                                ai[j] -= q * at[j]
                        if track:
                            ut, ui = u[t], u[i]
                            for j in range(nrows):
                                if ut[j]:
                                    ui[j] -= q * ut[j]
                    if ai[t]:
                        clean = False
            for j in range(t + 1, ncols):
                x = at[j]
                if x:
                    q = x // p
                    if q:
                        for i in range(t, nrows):
                            ai = a[i]
                            if ai[t]:
                                ai[j] -= q * ai[t]
                        if track:
                            for row in v:
                                if row[t]:
                                    row[j] -= q * row[t]
                            vt, vj = vi[t], vi[j]
                            vi[t] = [x + q * y for x, y in zip(vt, vj)]
                    if at[j]:
                        clean = False
            if clean:
                break
            # a remainder survived: re-pivot on the smallest entry of the block
            best = 0
            for i in range(t, nrows):
                row = a[i]
                for j in range(t, ncols):
                    x = row[j]
                    if x:
                        ax = x if x > 0 else -x
                        if best == 0 or ax < best:
                            best, bi, bj = ax, i, j
            if bi != t:
                a[t], a[bi] = a[bi], a[t]
                if track:
                    u[t], u[bi] = u[bi], u[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
                if track:
                    for row in v:
                        row[t], row[bj] = row[bj], row[t]
                    vi[t], vi[bj] = vi[bj], vi[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
        t += 1
    rank = t
    # gcd fixup: diag(x, y) -> diag(gcd, lcm) by a unimodular 2x2 pair
    for i in range(rank):
        for j in range(i + 1, rank):
            x, y = a[i][i], a[j][j]
            if y % x == 0:
                continue
            g, s, r = xgcd(x, y)
            xg, yg = x // g, y // g
            a[i][i], a[j][j] = g, x * yg
            if track:
                ui, uj = u[i], u[j]
                u[i] = [s * p + r * q for p, q in zip(ui, uj)]
                u[j] = [-yg * p + xg * q for p, q in zip(ui, uj)]
                for row in v:
                    ci, cj = row[i], row[j]
                    row[i] = ci + cj
                    row[j] = -r * yg * ci + s * xg * cj
                wi, wj = vi[i], vi[j]
                vi[i] = [s * xg * p + r * yg * q for p, q in zip(wi, wj)]
                vi[j] = [q - p for p, q in zip(wi, wj)]
    return a, u, v, vi, rank


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    rows = a.to_rows()
    d, u, v, _, _ = _snf_lists(rows, a.rows, a.cols)
    return SnfDecomposition(
        u=IntMatrix(a.rows, a.rows, tuple(x for r in u for x in r)),
        d=IntMatrix(a.rows, a.cols, tuple(x for r in d for x in r)),
        v=IntMatrix(a.cols, a.cols, tuple(x for r in v for x in r)),
    )


def snf_diagonal(rows: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith form only (no transforms tracked)."""
    a = [list(r) for r in rows]
    d, _, _, _, rank = _snf_lists(a, len(a), ncols, track=False)
    return [d[i][i] for i in range(rank)] + [0] * (min(len(a), ncols) - rank)


def _solve_rows(a_rows: list[list[int]], b: list[int], ncols: int) -> Optional[list[int]]:
    """Integer solution t of ``t @ A == b`` exactly over ℤ, or None."""
    n = len(a_rows)
    if n == 0:
        return [] if not any(b) else None
    d, u, v, _, rank = _snf_lists([list(r) for r in a_rows], n, ncols)
    # t A = b  <=>  (t U^-1) D = b V
    c = [sum(b[k] * v[k][j] for k in range(ncols) if b[k]) for j in range(ncols)]
    s = [0] * n
    for i in range(rank):
        q, r = divmod(c[i], d[i][i])
        if r:
            return None
        s[i] = q
    for j in range(rank, ncols):
        if c[j]:
            return None
    t = [0] * n
    for i in range(rank):
        if s[i]:
            ui = u[i]
            si = s[i]
            for k in range(n):
                if ui[k]:
                    t[k] += si * ui[k]
    return t


def solve_linear(
    a: IntMatrix,
    b: Sequence[int],
    ring: RingSpec,
    row_moduli: Optional[Sequence[int]] = None,
    col_moduli: Optional[Sequence[int]] = None,
) -> Optional[list[int]]:
    """Solve ``x @ a ≡ b``; return one solution or None if there is none.

    Equation ``j`` is read modulo ``col_moduli[j]`` (default: the ring
    modulus; 0 means an exact equation over ℤ).  ``row_moduli[i] = r``
    restricts variable ``i`` to the order-``r`` subgroup of ℤ/m, i.e. the
    multiples of ``m // r``.  Both are handled by augmenting ``a`` with
    modulus rows and solving once over ℤ through the Smith form, so a
    ``None`` is a certified non-existence.
    """
    n, k = a.rows, a.cols
    if len(b) != k:
        raise ValueError(f"right-hand side has length {len(b)}, expected {k}")
    m = ring.modulus
    if col_moduli is None:
        col_moduli = [m] * k
    elif len(col_moduli) != k:
        raise ValueError("col_moduli length does not match the number of equations")
    scale = [1] * n
    if row_moduli is not None:
        if len(row_moduli) != n:
            raise ValueError("row_moduli length does not match the number of variables")
        mm = ring.require_finite()
        for i, r in enumerate(row_moduli):
            if r <= 0 or mm % r:
                raise ValueError(f"row modulus {r} does not divide {mm}")
            scale[i] = mm // r
    rows = []
    for i in range(n):
        s = scale[i]
        rows.append([s * x for x in a.row(i)])
    for j, c in enumerate(col_moduli):
        if c:
            e = [0] * k
            e[j] = c
            rows.append(e)
    t = _solve_rows(rows, [int(x) for x in b], k)
    if t is None:
        return None
    x = [t[i] * scale[i] for i in range(n)]
    if m:
        x = [xi % m for xi in x]
    return x


def solve_congruences(rows: list[list[int]], b: list[int], moduli: Sequence[int]) -> Optional[list[int]]:
    """Raw-list variant of :func:`solve_linear` used by the module layer."""
    k = len(b)
    aug = [list(r) for r in rows]
    for j, c in enumerate(moduli):
        if c:
            e = [0] * k
            e[j] = c
            aug.append(e)
    t = _solve_rows(aug, b, k)
    if t is None:
        return None
    return t[:len(rows)]


def row_span_kernel(rows: list[list[int]], moduli: Sequence[int]) -> list[list[int]]:
    """Generators of ``{t ∈ ℤ^n : t @ A ≡ 0 (mod moduli)}`` (all-ones rows kept)."""
    n = len(rows)
    k = len(moduli)
    aug = [list(r) for r in rows]
    for j, c in enumerate(moduli):
        if c:
            e = [0] * k
            e[j] = c
            aug.append(e)
    N = len(aug)
    d, u, _, _, rank = _snf_lists(aug, N, k)
    return [u[i][:n] for i in range(rank, N)]
