"""Exact integer matrices: determinants, minors and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Sequence

DIVISOR_MAX_N = 9


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise MatrixError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise MatrixError("ragged rows")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
               for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.to_rows())


@dataclass(frozen=True)
class SnfResult:
    factors: tuple[int, ...]
    transforms: tuple[IntMatrix, IntMatrix] | None = None


@dataclass(frozen=True)
class DeterminantalDivisors:
    deltas: tuple[int, ...]

    def quotients(self) -> tuple[int, ...]:
        """Invariant factors implied by the divisors, 0 once a divisor vanishes."""
        out = []
        for prev, cur in zip(self.deltas, self.deltas[1:]):
            out.append(cur // prev if prev else 0)
        return tuple(out)


def determinant(m: IntMatrix) -> int:
    """Fraction-free Bareiss elimination."""
    if not m.is_square:
        raise MatrixError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def submatrix(m: IntMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> IntMatrix:
    for idx, bound, what in ((row_idx, m.rows, "row"), (col_idx, m.cols, "column")):
        if any(not 0 <= i < bound for i in idx):
            raise MatrixError(f"{what} index out of range")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise MatrixError(f"{what} indices must be strictly increasing")
    return IntMatrix.from_rows([[m[i, j] for j in col_idx] for i in row_idx], len(col_idx))


def determinantal_divisors(m: IntMatrix) -> DeterminantalDivisors:
    """gcd of all i-by-i minors for i = 0..n, by enumerating every minor."""
    if not m.is_square:
        raise MatrixError("determinantal divisors need a square matrix")
    n = m.rows
    if n > DIVISOR_MAX_N:
        raise MatrixError(f"minor enumeration is limited to n <= {DIVISOR_MAX_N}, got {n}")
    deltas = [1]
    for k in range(1, n + 1):
        if deltas[-1] == 0:
            deltas.append(0)
            continue
        g = 0
        subsets = list(combinations(range(n), k))
        for rs in subsets:
            for cs in subsets:
                g = gcd(g, determinant(submatrix(m, rs, cs)))
                if g == 1:
                    break
            if g == 1:
                break
        deltas.append(g)
    return DeterminantalDivisors(tuple(deltas))


class _Workspace:
    """Mutable matrix plus the accumulated row (U) and column (V) transforms."""

    def __init__(self, m: IntMatrix, track: bool):
        self.a = m.to_rows()
        self.rows, self.cols = m.rows, m.cols
        self.u = IntMatrix.identity(m.rows).to_rows() if track else None
        self.v = IntMatrix.identity(m.cols).to_rows() if track else None

    def swap_rows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            if self.u is not None:
                self.u[i], self.u[j] = self.u[j], self.u[i]

    def swap_cols(self, i, j):
        if i != j:
            for r in self.a:
                r[i], r[j] = r[j], r[i]
            if self.v is not None:
                for r in self.v:
                    r[i], r[j] = r[j], r[i]

    def add_row(self, dst, src, k):
        """row[dst] += k * row[src]"""
        for mat in (self.a, self.u):
            if mat is not None:
                d, s = mat[dst], mat[src]
                for j in range(len(d)):
                    if s[j]:
                        d[j] += k * s[j]

    def add_col(self, dst, src, k):
        for mat in (self.a, self.v):
            if mat is not None:
                for r in mat:
                    if r[src]:
                        r[dst] += k * r[src]

    def negate_row(self, i):
        for mat in (self.a, self.u):
            if mat is not None:
                mat[i] = [-x for x in mat[i]]

    def combine_cols(self, i, j, x, y, p, q):
        """Replace columns (c_i, c_j) by (x c_i + y c_j, p c_i + q c_j); unimodular when xq - yp = +-1."""
        for mat in (self.a, self.v):
            if mat is not None:
                for r in mat:
                    ci, cj = r[i], r[j]
                    r[i], r[j] = x * ci + y * cj, p * ci + q * cj


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _diagonalize(w: _Workspace, enforce_divisibility: bool) -> None:
    a = w.a
    rows, cols = w.rows, w.cols
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            return
        w.swap_rows(t, best[1])
        w.swap_cols(t, best[2])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    w.add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    w.add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if clean:
                if not enforce_divisibility:
                    break
                bad = next((i for i in range(t + 1, rows)
                            if any(a[i][j] % p for j in range(t + 1, cols))), None)
                if bad is None:
                    break
                # pivot row picks up an entry the pivot does not divide
                w.add_row(t, bad, 1)
                continue
            # move the smallest leftover in the pivot row/column onto the diagonal
            k_abs, k_i, k_j = abs(p), t, t
            for i in range(t + 1, rows):
                if a[i][t] and abs(a[i][t]) < k_abs:
                    k_abs, k_i, k_j = abs(a[i][t]), i, t
            for j in range(t + 1, cols):
                if a[t][j] and abs(a[t][j]) < k_abs:
                    k_abs, k_i, k_j = abs(a[t][j]), t, j
            w.swap_rows(t, k_i)
            w.swap_cols(t, k_j)


def _chain_pass(w: _Workspace) -> None:
    """Replace diagonal pairs (a, b) by (gcd, lcm) until each divides the next."""
    a = w.a
    k = min(w.rows, w.cols)
    for i in range(k):
        for j in range(i + 1, k):
            x, y = a[i][i], a[j][j]
            if x == 0 and y == 0:
                continue
            if x and y % x == 0:
                continue
            # rows: (x 0; 0 y) -> (x y; 0 y)
            w.add_row(i, j, 1)
            g, s, t = _ext_gcd(x, y)
            # columns: (x y) -> (g 0), row j becomes (s y, x y / g)
            w.combine_cols(i, j, s, t, -(y // g), x // g)
            w.add_row(j, i, -(a[j][i] // g))


def smith_normal_form(m: IntMatrix, want_transforms: bool = False) -> SnfResult:
    """Invariant factors of ``m`` (nonnegative, each dividing the next).

    With ``want_transforms`` also returns unimodular ``(U, V)`` such that
    ``U @ m @ V`` is the diagonal matrix of factors.
    """
    w = _Workspace(m, want_transforms)
    _diagonalize(w, enforce_divisibility=True)
    _chain_pass(w)
    k = min(w.rows, w.cols)
    for i in range(k):
        if w.a[i][i] < 0:
            w.negate_row(i)
    factors = tuple(w.a[i][i] for i in range(k))
    if not want_transforms:
        return SnfResult(factors)
    return SnfResult(factors, (IntMatrix.from_rows(w.u, w.rows), IntMatrix.from_rows(w.v, w.cols)))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    if not m.is_square:
        raise MatrixError("invariant factors need a square matrix")
    return smith_normal_form(m).factors


def unchained_diagonal(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal reached by plain elimination, without the divisibility repairs.

    Kept for fault-injection tests of the verification harness.
    """
    w = _Workspace(m, False)
    _diagonalize(w, enforce_divisibility=False)
    return tuple(abs(w.a[i][i]) for i in range(min(w.rows, w.cols)))


def is_divisibility_chain(factors: Sequence[int]) -> bool:
    for a, b in zip(factors, factors[1:]):
        if a == 0:
            if b != 0:
                return False
        elif b % a:
            return False
    return True
