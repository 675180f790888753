"""Exact dense linear algebra over k_m and normal forms over its valuation ring.

Matrices are small (desk scale, n <= ~6) so everything is plain Python on
tuples of :class:`ExtScalar`; there is no floating point anywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrix
from .scalars import INF, ExtScalar, FieldConfig, Value, ext_to_json, format_rational, valuation


class ExactMatrix:
    """Immutable rows x cols matrix with entries in k_m (row-major)."""

    __slots__ = ("rows", "cols", "entries", "config")

    def __init__(self, rows: int, cols: int, entries: Iterable, config: FieldConfig):
        entries = tuple(ExtScalar.coerce(e, config) for e in entries)
        if len(entries) != rows * cols or rows < 1 or cols < 0:
            raise DimensionMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        # coerce may have lifted to a larger m
        m = math.lcm(config.m, *(e.m for e in entries)) if entries else config.m
        if m != config.m:
            config = config.with_m(m)
            entries = tuple(e.lift(m) for e in entries)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "config", config)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], config: FieldConfig) -> "ExactMatrix":
        if not rows:
            raise DimensionMismatch("matrix needs at least one row")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), n, [x for r in rows for x in r], config)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], config: FieldConfig) -> "ExactMatrix":
        return cls.from_rows(list(zip(*cols)), config)

    @classmethod
    def identity(cls, n: int, config: FieldConfig) -> "ExactMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)], config)

    @classmethod
    def diag(cls, values: Sequence, config: FieldConfig) -> "ExactMatrix":
        n = len(values)
        zero = 0
        return cls(n, n, [values[i] if i == j else zero for i in range(n) for j in range(n)], config)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def lift(self, m: int) -> "ExactMatrix":
        if m == self.config.m:
            return self
        return ExactMatrix(self.rows, self.cols, [e.lift(m) for e in self.entries], self.config.with_m(m))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols], self.config)

    def select_columns(self, cols: Sequence[int]) -> "ExactMatrix":
        return self.submatrix(range(self.rows), cols)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.rows != self.rows:
            raise DimensionMismatch("hstack needs equal row counts")
        cols = [self.column(j) for j in range(self.cols)] + [other.column(j) for j in range(other.cols)]
        return ExactMatrix.from_columns(cols, self.config.join(other.config))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.config)

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            cfg = self.config.join(other.config)
            cols = [other.column(j) for j in range(other.cols)]
            out = [_dot(self.row(i), c, cfg) for i in range(self.rows) for c in cols]
            return ExactMatrix(self.rows, other.cols, out, cfg)
        # a vector
        vec = list(other)
        if len(vec) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(vec)}")
        return [_dot(self.row(i), vec, self.config) for i in range(self.rows)]

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [c * e for e in self.entries], self.config)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)],
                           self.config.join(other.config))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix([{body}], p={self.config.p}, m={self.config.m})"

    def is_rational(self) -> bool:
        return all(e.is_rational() for e in self.entries)

    def det(self):
        return det(self)

    def inverse(self) -> "ExactMatrix":
        return inverse(self)

    def valuations(self) -> list:
        return [[e.val() for e in self.row(i)] for i in range(self.rows)]


def _dot(a, b, cfg):
    acc = ExtScalar.rational(0, cfg)
    for x, y in zip(a, b):
        if isinstance(x, ExtScalar) and x.is_zero():
            continue
        acc = acc + x * y
    return acc


def as_matrix(rows, p: int, m: int = 1) -> ExactMatrix:
    """Convenience: ExactMatrix from nested lists of ints/Fractions/ExtScalars."""
    return ExactMatrix.from_rows(rows, FieldConfig(p, m))


def _work(M: ExactMatrix) -> list:
    return [list(M.row(i)) for i in range(M.rows)]


def det(M: ExactMatrix):
    """Determinant by fraction-free (Bareiss) elimination; exact division."""
    if not M.is_square:
        raise DimensionMismatch("det of a non-square matrix")
    n = M.rows
    a = _work(M)
    sign = 1
    prev = ExtScalar.rational(1, M.config)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ExtScalar.rational(0, M.config)
        akk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - a[i][k] * a[k][j]) / prev
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def solve(A: ExactMatrix, b: Sequence) -> list:
    """x with A x = b, by Gaussian elimination with exact field division."""
    if not A.is_square:
        raise DimensionMismatch("solve needs a square matrix")
    n = A.rows
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for n={n}")
    cfg = A.config
    a = _work(A)
    for i, bi in enumerate(b):
        a[i].append(ExtScalar.coerce(bi, cfg))
    _eliminate(a, n, cfg)
    return [a[i][n] for i in range(n)]


def inverse(A: ExactMatrix) -> ExactMatrix:
    if not A.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = A.rows
    cfg = A.config
    one, zero = ExtScalar.rational(1, cfg), ExtScalar.rational(0, cfg)
    a = _work(A)
    for i in range(n):
        a[i].extend(one if i == j else zero for j in range(n))
    _eliminate(a, n, cfg)
    return ExactMatrix(n, n, [a[i][n + j] for i in range(n) for j in range(n)], cfg)


def _eliminate(a: list, n: int, cfg: FieldConfig) -> None:
    """Gauss-Jordan on the augmented rows in place (left n x n block -> I)."""
    width = len(a[0])
    for k in range(n):
        piv = next((r for r in range(k, n) if not a[r][k].is_zero()), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inv()
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and not a[i][k].is_zero():
                f = a[i][k]
                ri, rk = a[i], a[k]
                a[i] = [ri[j] - f * rk[j] if not rk[j].is_zero() else ri[j] for j in range(width)]


def rank(M: ExactMatrix) -> int:
    a = _work(M)
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inv()
        for i in range(r + 1, M.rows):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == M.rows:
            break
    return r


def is_unimodular(M: ExactMatrix) -> bool:
    """M in GL_n of the valuation ring: integral entries and a unit determinant."""
    if not M.is_square:
        raise DimensionMismatch("is_unimodular needs a square matrix")
    if any(e.val() < 0 for e in M.entries):
        return False
    return valuation(det(M), M.config.p) == 0


# -- Smith normal form over the valuation ring ------------------------------

@dataclass(frozen=True)
class SnfResult:
    """M = U @ diag(theta^(m*a) for a in exponents) @ W with U, W unimodular."""

    U: ExactMatrix
    exponents: tuple
    W: ExactMatrix

    def diagonal(self) -> ExactMatrix:
        cfg = self.U.config
        return ExactMatrix.diag([ExtScalar.theta_power(int(a * cfg.m), cfg) for a in self.exponents], cfg)

    def reconstruct(self) -> ExactMatrix:
        return self.U @ self.diagonal() @ self.W


def snf_dvr(M: ExactMatrix) -> SnfResult:
    """Smith form over the valuation ring of k_m.

    Pivots on an entry of minimal valuation (smallest (row, col) on ties),
    clears its row and column with integral quotients and recurses on the
    minor.  Since every later entry is a combination of entries of valuation
    >= the pivot's, the exponents come out non-decreasing.
    """
    if not M.is_square:
        raise DimensionMismatch("snf_dvr needs a square matrix")
    n = M.rows
    cfg = M.config
    a = _work(M)
    U = _work(ExactMatrix.identity(n, cfg))
    W = _work(ExactMatrix.identity(n, cfg))
    exps = []
    for k in range(n):
        best, pos = INF, None
        for i in range(k, n):
            for j in range(k, n):
                v = a[i][j].val()
                if v < best:
                    best, pos = v, (i, j)
        if pos is None:
            raise SingularMatrix("matrix is singular")
        i0, j0 = pos
        if i0 != k:
            a[k], a[i0] = a[i0], a[k]
            for r in U:
                r[k], r[i0] = r[i0], r[k]
        if j0 != k:
            for r in a:
                r[k], r[j0] = r[j0], r[k]
            W[k], W[j0] = W[j0], W[k]
        piv_inv = a[k][k].inv()
        for i in range(k + 1, n):
            if a[i][k].is_zero():
                continue
            q = a[i][k] * piv_inv
            # row_i -= q row_k  ==>  U[:, k] += q U[:, i]
            a[i] = [x - q * y for x, y in zip(a[i], a[k])]
            for r in U:
                if not r[i].is_zero():
                    r[k] = r[k] + q * r[i]
        for j in range(k + 1, n):
            if a[k][j].is_zero():
                continue
            q = a[k][j] * piv_inv
            # col_j -= q col_k  ==>  W[k, :] += q W[j, :]
            for r in a[k:]:
                r[j] = r[j] - q * r[k]
            W[k] = [x + q * y for x, y in zip(W[k], W[j])]
        # pivot = theta^(m*best) * unit; push the unit into U
        t = ExtScalar.theta_power(int(best * cfg.m), cfg)
        unit = a[k][k] / t
        for r in U:
            r[k] = r[k] * unit
        exps.append(best)
    Um = ExactMatrix(n, n, [x for r in U for x in r], cfg)
    Wm = ExactMatrix(n, n, [x for r in W for x in r], cfg)
    return SnfResult(Um, tuple(exps), Wm)


# -- Hermite normal form over Z_(p) -----------------------------------------

def _reduce_mod_power(x: Fraction, p: int, a: int) -> Fraction:
    """Canonical representative of x modulo p^a Z_(p): a rational with
    p-power denominator in [0, p^a)."""
    if x == 0:
        return Fraction(0)
    d = x.denominator
    s = 0
    while d % p == 0:
        d //= p
        s += 1
    # x = N / (p^s d) with p !| d
    modulus = p ** (a + s)
    if a + s <= 0:
        return Fraction(0)
    r = (x.numerator * pow(d, -1, modulus)) % modulus
    return Fraction(r, p ** s)


def hnf_dvr(M: ExactMatrix) -> ExactMatrix:
    """Column-style Hermite form over Z_(p).

    Upper triangular, diagonal entries exact powers p^a, and each entry above
    a diagonal p^a reduced to its representative in [0, p^a) (a rational with
    p-power denominator, an integer whenever the entry is integral).  Obtained
    from M by right multiplication with a matrix in GL_n(Z_(p)).
    """
    cfg = M.config
    if cfg.m != 1 or not M.is_rational():
        raise ValueError("hnf_dvr works over the base field (m = 1)")
    if not M.is_square:
        raise DimensionMismatch("hnf_dvr needs a square matrix")
    n, p = M.rows, cfg.p
    a = [[x.coeffs[0] for x in M.row(i)] for i in range(n)]
    for r in range(n - 1, -1, -1):
        best, jb = INF, None
        for j in range(r + 1):
            v = _vpf(a[r][j], p)
            if v < best:
                best, jb = v, j
        if jb is None:
            raise SingularMatrix("matrix is singular")
        if jb != r:
            for row in a:
                row[r], row[jb] = row[jb], row[r]
        unit = a[r][r] / Fraction(p) ** int(best)
        for row in a:
            row[r] = row[r] / unit
        for j in range(r):
            if a[r][j]:
                q = a[r][j] / a[r][r]
                for row in a:
                    row[j] -= q * row[r]
    for j in range(1, n):
        for i in range(j - 1, -1, -1):
            expo = _vpf(a[i][i], p)
            rep = _reduce_mod_power(a[i][j], p, int(expo))
            q = (a[i][j] - rep) / a[i][i]
            if q:
                for row in a:
                    row[j] -= q * row[i]
    return ExactMatrix.from_rows(a, cfg)


def _vpf(x: Fraction, p: int) -> Value:
    if x == 0:
        return INF
    n, d, v = x.numerator, x.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


# -- tropical side ----------------------------------------------------------

def minplus_permanent(vals: Sequence[Sequence]) -> Value:
    """min over permutations of the sum of entries (brute force, small n)."""
    n = len(vals)
    best = INF
    for perm in itertools.permutations(range(n)):
        s = Fraction(0)
        for i, j in enumerate(perm):
            s = s + vals[i][j]
            if s is INF:
                break
        if s < best:
            best = s
    return best


def tropical_bound(M: ExactMatrix, s: int) -> Value:
    """min over s x s minors of the min-plus permanent of the valuation
    matrix; a lower bound for the sum of the s smallest Smith exponents."""
    vals = M.valuations()
    best = INF
    for rows in itertools.combinations(range(M.rows), s):
        for cols in itertools.combinations(range(M.cols), s):
            t = minplus_permanent([[vals[i][j] for j in cols] for i in rows])
            if t < best:
                best = t
    return best


def matrix_to_json(M: ExactMatrix) -> list:
    if M.config.m == 1:
        return [[format_rational(x.coeffs[0]) for x in M.row(i)] for i in range(M.rows)]
    return [[ext_to_json(x) for x in M.row(i)] for i in range(M.rows)]
