"""Exact scalars: rationals with the p-adic valuation, and the totally
ramified extensions k_m = Q[theta]/(theta^m - p).

Conventions (used throughout the package)::

    multiplicative            additive (this package)
    |x| = p^(-v(x))           v(x),  v(p) = 1,  v(0) = +inf
    ||x|| = max e^c_i |l_i|   A(x) = min (v(l_i) + w_i)
    c_i                       w_i = -c_i / log p
    r_i = e^c_i = p^(-w_i)    r_i = 0  <->  w_i = +inf

so every "<=" between absolute values in the multiplicative picture becomes a
">=" between valuations here.  theta plays the role of p^(1/m) and has
valuation 1/m.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, ParseError


class _Infinity:
    """The +inf sentinel for valuations and weights.

    Adding anything finite to it saturates; it compares greater than every
    rational and equal only to itself.
    """

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __add__(self, other):
        if other is self or isinstance(other, Rational):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ValueError("inf - inf is undefined")
        if isinstance(other, Rational):
            return self
        return NotImplemented

    def __neg__(self):
        raise ValueError("-inf is not a valuation")

    def __mul__(self, other):
        # only positive multiples occur (degrees, ray parameters)
        if isinstance(other, Rational) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("bruhat_tits.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()

Value = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldConfig:
    """The prime p and the ramification index m; values lie in (1/m)Z."""

    p: int
    m: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"ramification index must be >= 1, got {self.m!r}")

    def with_m(self, m: int) -> "FieldConfig":
        return self if m == self.m else FieldConfig(self.p, m)

    def join(self, other: "FieldConfig") -> "FieldConfig":
        if other.p != self.p:
            raise ValueError(f"mixing primes {self.p} and {other.p}")
        return self.with_m(math.lcm(self.m, other.m))


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int) -> Value:
    """p-adic valuation of a rational, +inf at zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    return Fraction(_vp_int(x.numerator, p) - _vp_int(x.denominator, p))


def val_p(x, cfg: FieldConfig) -> Value:
    if cfg.m != 1:
        raise ValueError("val_p is the base-field entry point (m = 1)")
    return vp(x, cfg.p)


def unit_part(x: Fraction, p: int) -> Fraction:
    """x / p^v(x), a p-adic unit."""
    v = vp(x, p)
    return Fraction(x) / Fraction(p) ** int(v)


# -- polynomials over Q, lowest degree first; only what inversion needs ------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list, b: list):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] -= c * bi
    return _trim(q), a


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _inverse_mod(a: list, modulus: list) -> list:
    """Inverse of a modulo an irreducible modulus via extended Euclid."""
    r0, r1 = list(modulus), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    c = r1[0]
    return [x / c for x in s1]


class ExtScalar:
    """Element sum a_i theta^i of k_m = Q[theta]/(theta^m - p).

    Instances are immutable.  Arithmetic between elements of k_m and k_m'
    (same p) happens in k_lcm(m, m'); plain ints and Fractions are coerced.
    """

    __slots__ = ("coeffs", "config", "_val")

    def __init__(self, coeffs: Iterable, config: FieldConfig):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != config.m:
            raise ValueError(f"expected {config.m} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "_val", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExtScalar is immutable")

    @classmethod
    def rational(cls, x, config: FieldConfig) -> "ExtScalar":
        return cls((x,) + (0,) * (config.m - 1), config)

    @classmethod
    def theta_power(cls, k: int, config: FieldConfig) -> "ExtScalar":
        """theta^k for any integer k (theta^m = p)."""
        q, r = divmod(k, config.m)
        c = [0] * config.m
        c[r] = Fraction(config.p) ** q
        return cls(c, config)

    @classmethod
    def coerce(cls, x, config: FieldConfig) -> "ExtScalar":
        if isinstance(x, ExtScalar):
            return x.lift(math.lcm(x.config.m, config.m)) if x.config.p == config.p else _bad_mix(x, config)
        return cls.rational(x, config)

    @property
    def m(self) -> int:
        return self.config.m

    @property
    def p(self) -> int:
        return self.config.p

    def lift(self, m: int) -> "ExtScalar":
        """Image in k_m for a multiple m of self.m (theta_self = theta_m^(m/self.m))."""
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"k_{self.m} does not embed in k_{m}")
        step = m // self.m
        c = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            c[i * step] = a
        return ExtScalar(c, self.config.with_m(m))

    def reduced(self) -> "ExtScalar":
        """The same element in the smallest k_m' containing it."""
        step = self.m
        for i, a in enumerate(self.coeffs):
            if a:
                step = math.gcd(step, i)
        if step <= 1:
            return self
        return ExtScalar(self.coeffs[::step], self.config.with_m(self.m // step))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def val(self) -> Value:
        """min_i (v_p(a_i) + i/m); the minimum is attained exactly once."""
        if self._val is None:
            m, p = self.m, self.p
            best = INF
            for i, a in enumerate(self.coeffs):
                if a:
                    v = vp(a, p) + Fraction(i, m)
                    if v < best:
                        best = v
            object.__setattr__(self, "_val", best)
        return self._val

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, ExtScalar):
            if other.config == self.config:
                return self, other
            if other.p != self.p:
                _bad_mix(other, self.config)
            m = math.lcm(self.m, other.m)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, ExtScalar.rational(other, self.config)
        return None, None

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return ExtScalar([x + y for x, y in zip(a.coeffs, b.coeffs)], a.config)

    __radd__ = __add__

    def __neg__(self):
        return ExtScalar([-x for x in self.coeffs], self.config)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return ExtScalar([x - y for x, y in zip(a.coeffs, b.coeffs)], a.config)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        m = a.m
        if m == 1:
            return ExtScalar((a.coeffs[0] * b.coeffs[0],), a.config)
        out = [Fraction(0)] * m
        p = a.p
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                k = i + j
                if k >= m:
                    out[k - m] += p * x * y
                else:
                    out[k] += x * y
        return ExtScalar(out, a.config)

    __rmul__ = __mul__

    def inv(self) -> "ExtScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in k_m")
        if self.m == 1:
            return ExtScalar((1 / self.coeffs[0],), self.config)
        modulus = [Fraction(-self.p)] + [Fraction(0)] * (self.m - 1) + [Fraction(1)]
        s = _inverse_mod(list(self.coeffs), modulus)
        s = s + [Fraction(0)] * (self.m - len(s))
        return ExtScalar(s, self.config)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ExtScalar.rational(1, self.config)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        r = self.reduced()
        if r.m == 1:
            return hash(r.coeffs[0])
        return hash((r.p, r.coeffs))

    def __repr__(self):
        if self.is_rational():
            return f"ExtScalar({self.coeffs[0]}, p={self.p}, m={self.m})"
        return f"ExtScalar({[str(c) for c in self.coeffs]}, p={self.p}, m={self.m})"

    def __str__(self):
        if self.is_rational():
            return format_rational(self.coeffs[0])
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                t = format_rational(a)
                if i:
                    t = f"{t}*t^{i}" if i > 1 else f"{t}*t"
                terms.append(t)
        return " + ".join(terms)


def _bad_mix(x, config):
    raise ValueError(f"cannot mix p={x.p} with p={config.p}")


def ext_arith(a: ExtScalar, b: ExtScalar | None, op: str) -> ExtScalar:
    """Dispatch form of the field operations: op in {"add", "mul", "inv"}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")


def ext_val(a: ExtScalar) -> Value:
    return a.val()


def valuation(x, p: int) -> Value:
    """Valuation of an ExtScalar, Fraction or int."""
    if isinstance(x, ExtScalar):
        return x.val()
    return vp(x, p)


def theta(config: FieldConfig) -> ExtScalar:
    return ExtScalar.theta_power(1, config)


# -- text forms -------------------------------------------------------------

def format_rational(x) -> str:
    """Canonical "num/den" (den > 0, lowest terms); integers print bare."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_RATIONAL = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?")


def parse_rational(s, field=None) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"expected a rational string, got {s!r}", field=field)
    if isinstance(s, int):
        return Fraction(s)
    match = _RATIONAL.fullmatch(s)
    if match is None:
        raise ParseError(f"not a rational: {s!r}", field=field)
    n = int(match.group(1))
    d = int(match.group(2)) if match.group(2) else 1
    if d == 0:
        raise ParseError(f"zero denominator in {s!r}", field=field)
    return Fraction(n, d)


def parse_value(s, field=None) -> Value:
    """A rational or the string "inf"."""
    if s == "inf":
        return INF
    return parse_rational(s, field=field)


def ext_to_json(a: ExtScalar) -> dict:
    return {"coeffs": [format_rational(c) for c in a.coeffs], "p": a.p, "m": a.m}


def ext_from_json(doc, field=None) -> ExtScalar:
    if not isinstance(doc, dict) or set(doc) != {"coeffs", "p", "m"}:
        raise ParseError("ExtScalar must be {coeffs, p, m}", field=field)
    try:
        cfg = FieldConfig(doc["p"], doc["m"])
    except ValueError as exc:
        raise ParseError(str(exc), field=field) from None
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != cfg.m:
        raise ParseError(f"coeffs must have length {cfg.m}", field=field)
    return ExtScalar([parse_rational(c, f"{field}.coeffs[{i}]") for i, c in enumerate(coeffs)], cfg)


def as_values(xs: Sequence) -> tuple:
    return tuple(x if x is INF else Fraction(x) for x in xs)
