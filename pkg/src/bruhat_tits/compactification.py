"""Seminorm compactification: boundary points, strata, ray limits, boundary
stabilizers, and the multiplicative (Gauss) seminorm on polynomials.

Boundary points are :class:`BuildingPoint` instances with some weights equal
to ``INF``.  A point with kernel W lies in the building of V/W; the
complement used for quotient coordinates is always the span of the
finite-weight basis columns, in their original order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .building import BuildingPoint, act, normalize, relpos, stabilizes
from .errors import ConstantDirection, DimensionMismatch
from .linalg import ExactMatrix, det, inverse, rank
from .scalars import INF, ExtScalar, FieldConfig, Value, valuation


# -- strata -------------------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    kernel_basis: ExactMatrix    # n x k, k may be 0
    complement: ExactMatrix      # n x (n-k), lifts of the quotient basis
    quotient_point: BuildingPoint

    def __post_init__(self):
        if not self.quotient_point.is_norm:
            raise ValueError("quotient point must be a norm")
        if self.kernel_basis.cols >= self.kernel_basis.rows:
            raise ValueError("kernel must be a proper subspace")

    @property
    def kernel_dim(self) -> int:
        return self.kernel_basis.cols


def stratum_of(x: BuildingPoint) -> Stratum:
    fin, ker = x.finite_indices, x.kernel_indices
    q = BuildingPoint(ExactMatrix.identity(len(fin), x.config), [x.weights[i] for i in fin])
    return Stratum(x.basis.select_columns(ker), x.basis.select_columns(fin), q)


def quotient_embed(s: Stratum, full_basis: ExactMatrix) -> BuildingPoint:
    """Seminorm on V induced by the quotient norm; full_basis = complement
    lifts followed by the kernel basis."""
    mu = s.quotient_point.dim
    n = full_basis.rows
    if not full_basis.is_square or n != mu + s.kernel_dim:
        raise DimensionMismatch(f"basis {full_basis.shape} for a quotient of dimension {mu}")
    lifts = full_basis.select_columns(range(mu)) @ s.quotient_point.basis
    basis = lifts.hstack(full_basis.select_columns(range(mu, n)))
    return BuildingPoint(basis, tuple(s.quotient_point.weights) + (INF,) * s.kernel_dim)


def kernel_matrix(x: BuildingPoint) -> ExactMatrix:
    return x.basis.select_columns(x.kernel_indices)


def _same_span(A: ExactMatrix, B: ExactMatrix) -> bool:
    if A.cols != B.cols:
        return False
    if A.cols == 0:
        return True
    return rank(A.hstack(B)) == A.cols


def quotient_in(ref: BuildingPoint, y: BuildingPoint) -> BuildingPoint:
    """y's quotient norm written in ref's quotient coordinates (same kernel assumed)."""
    fin = ref.finite_indices
    cols = []
    for j in y.finite_indices:
        c = ref.coordinates(y.basis.column(j))
        cols.append([c[i] for i in fin])
    T = ExactMatrix.from_columns(cols, ref.config.join(y.config))
    return BuildingPoint(T, [y.weights[j] for j in y.finite_indices])


def seminorm_equal(x: BuildingPoint, y: BuildingPoint) -> bool:
    """Same homothety class of seminorms: equal kernels and equal quotient classes."""
    if x.dim != y.dim:
        raise DimensionMismatch("points of different dimensions")
    if not _same_span(kernel_matrix(x), kernel_matrix(y)):
        return False
    qx = BuildingPoint(ExactMatrix.identity(len(x.finite_indices), x.config),
                       [x.weights[i] for i in x.finite_indices])
    return relpos(qx, quotient_in(x, y)).is_constant()


# -- ray limits ---------------------------------------------------------------

def ray_limit(x: BuildingPoint, direction: Sequence) -> BuildingPoint:
    """Limit of the classes (basis, w + t dir) as t -> +inf."""
    if not x.is_norm:
        raise ValueError("ray_limit starts from a norm")
    d = [Fraction(t) for t in direction]
    if len(d) != x.dim:
        raise DimensionMismatch(f"direction of length {len(d)} in dimension {x.dim}")
    lo = min(d)
    if all(t == lo for t in d):
        raise ConstantDirection("a constant direction only moves within the homothety class")
    w = [wi if di == lo else INF for wi, di in zip(x.weights, d)]
    return normalize(BuildingPoint(x.basis, w))


@dataclass(frozen=True)
class RayRatio:
    """log_p of z_n(e_j)/z_n(e_i) along the ray, as const + slope * n."""

    i: int
    j: int
    const: Fraction
    slope: Fraction

    def limit(self):
        """Limit of the multiplicative ratio: ("positive", log_p value), ("zero",) or ("diverges",)."""
        if self.slope == 0:
            return ("positive", self.const)
        return ("zero",) if self.slope < 0 else ("diverges",)


def ray_ratios(x: BuildingPoint, direction: Sequence, i: int) -> list:
    """Ratios against e_i for the ray n -> (basis, w + n dir), r = p^-w."""
    w = x.weights
    d = [Fraction(t) for t in direction]
    return [RayRatio(i, j, -(w[j] - w[i]), -(d[j] - d[i])) for j in range(x.dim)]


def is_distinguished(x: BuildingPoint, direction: Sequence, index_set) -> bool:
    """Conditions (a)-(c) for the ray sequence with respect to index_set."""
    index_set = set(index_set)
    if not index_set:
        return False
    # (a): z_n(e_i) != 0 for i in I
    if any(x.weights[i] is INF for i in index_set):
        return False
    for i in index_set:
        for r in ray_ratios(x, direction, i):
            lim = r.limit()
            if r.j in index_set and lim[0] != "positive":
                return False
            if r.j not in index_set and lim[0] != "zero":
                return False
    return True


def distinguished_limit(x: BuildingPoint, direction: Sequence, index_set, i=None) -> BuildingPoint:
    """The limit seminorm class built from the ratio limits against e_i."""
    if not is_distinguished(x, direction, index_set):
        raise ValueError("sequence is not distinguished for this index set")
    if i is None:
        i = min(index_set)
    w = []
    for r in ray_ratios(x, direction, i):
        lim = r.limit()
        # x_inf(e_j) = p^const  <->  additive weight -const
        w.append(-lim[1] if r.j in index_set else INF)
    return normalize(BuildingPoint(x.basis, w))


# -- boundary stabilizers -----------------------------------------------------

def _in_basis(g: ExactMatrix, x: BuildingPoint) -> ExactMatrix:
    return x.basis_inverse @ g @ x.basis


def boundary_stab_check(g: ExactMatrix, x: BuildingPoint) -> bool:
    """g preserves the kernel W and fixes the induced class on V/W."""
    h = _in_basis(g, x)
    fin, ker = x.finite_indices, x.kernel_indices
    if any(not h[i, k].is_zero() for i in fin for k in ker):
        return False
    D = h.submatrix(fin, fin)
    q = BuildingPoint(ExactMatrix.identity(len(fin), x.config), [x.weights[i] for i in fin])
    return stabilizes(D, q, "class")


def value_group_hypothesis(x: BuildingPoint) -> bool:
    """All ratios r_j / r_i of nonzero weights lie in |k*|, i.e. w_j - w_i in Z."""
    ws = [x.weights[i] for i in x.finite_indices]
    return all(Fraction(a - ws[0]).denominator == 1 for a in ws)


def boundary_stab_block(g: ExactMatrix, x: BuildingPoint) -> bool:
    """Block-triangular description of the stabilizer of a boundary class.

    In x's basis g must map the kernel into itself, and its quotient block D,
    rescaled to determinant valuation 0 by a global shift t, must satisfy
    v(D_ij) >= w_j - w_i - t.  Only valid when the weight differences are
    integral.
    """
    if not value_group_hypothesis(x):
        raise ValueError("weight differences are not in the value group")
    h = _in_basis(g, x)
    fin, ker = x.finite_indices, x.kernel_indices
    if any(not h[i, k].is_zero() for i in fin for k in ker):
        return False
    D = h.submatrix(fin, fin)
    mu = len(fin)
    t = -valuation(det(D), x.p) / mu
    w = x.weights
    for a, i in enumerate(fin):
        for b, j in enumerate(fin):
            if D[a, b].val() < w[j] - w[i] - t:
                return False
    return True


# -- polynomials and the Gauss seminorm ---------------------------------------

def _clean_coef(c):
    if isinstance(c, ExtScalar):
        return c.to_fraction() if c.is_rational() else c
    return Fraction(c)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in nvars variables: sorted tuple of (exponent tuple, coefficient)."""

    nvars: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, nvars: int, d: Mapping) -> "Polynomial":
        acc = {}
        for exp, c in d.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise DimensionMismatch(f"bad exponent {exp} for {nvars} variables")
            acc[exp] = acc[exp] + c if exp in acc else c
        terms = tuple(sorted((e, _clean_coef(c)) for e, c in acc.items() if c != 0))
        return cls(nvars, terms)

    @classmethod
    def variable(cls, nvars: int, k: int) -> "Polynomial":
        return cls.from_dict(nvars, {tuple(int(i == k) for i in range(nvars)): 1})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Polynomial":
        n = len(coeffs)
        return cls.from_dict(n, {tuple(int(i == k) for i in range(n)): c for k, c in enumerate(coeffs)})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d[e] + c if e in d else c
        return Polynomial.from_dict(self.nvars, d)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial.from_dict(self.nvars, {e: c * other for e, c in self.terms})
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                d[e] = d[e] + c if e in d else c
        return Polynomial.from_dict(self.nvars, d)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out


def eval_poly(x: BuildingPoint, F: Polynomial) -> Value:
    """min over terms of v(a_I) + sum_k I_k w_k, with F in x's own coordinates."""
    if F.nvars != x.dim:
        raise DimensionMismatch(f"{F.nvars} variables in dimension {x.dim}")
    p = x.p
    w = x.weights
    best = INF
    for exp, c in F.terms:
        t = valuation(c, p)
        for k, e in enumerate(exp):
            if e:
                t = t + e * w[k]
        if t < best:
            best = t
    return best


def poly_change_basis(F: Polynomial, B: ExactMatrix) -> Polynomial:
    """Rewrite F (in standard coordinates) in the coordinates of basis B.

    A vector of V is the degree-1 element sum_k v_k x_k; substituting
    x_k -> sum_i (B^-1)_ik x_i turns it into sum_i (B^-1 v)_i x_i, its
    expression in the basis B.  Evaluation commutes with this transport.
    """
    n = F.nvars
    if B.shape != (n, n):
        raise DimensionMismatch(f"basis {B.shape} for {n} variables")
    Binv = inverse(B)
    forms = [Polynomial.from_dict(n, {tuple(int(a == i) for a in range(n)): Binv[i, k] for i in range(n)})
             for k in range(n)]
    out = Polynomial(n)
    for exp, c in F.terms:
        term = Polynomial.constant(n, c)
        for k, e in enumerate(exp):
            if e:
                term = term * forms[k] ** e
        out = out + term
    return out


def eval_poly_std(x: BuildingPoint, F: Polynomial) -> Value:
    """Evaluate a polynomial given in standard coordinates."""
    return eval_poly(x, poly_change_basis(F, x.basis))


def restrict_to_vectors(x: BuildingPoint):
    """The restriction of the polynomial seminorm to degree 1, as a function on V."""
    def tau(vec):
        return eval_poly_std(x, Polynomial.linear(list(vec)))
    return tau
