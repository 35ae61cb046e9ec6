"""Exact arithmetic in the cyclotomic field Q(zeta_p).

A CycNum stores p-1 rational coordinates on the integral basis
{zeta^0, ..., zeta^(p-2)}, with zeta^(p-1) eliminated through
1 + zeta + ... + zeta^(p-1) = 0.  Every identity in this package is
checked by exact equality here; floating point appears only in the
optional complex-embedding diagnostic.

The square root of p* = (-1)^((p-1)/2) p is *defined* as the prime-field
Gauss sum sum_{c in GF(p)*} eta_bar(c) zeta^c, which fixes the branch
for odd half-powers of p*.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

from .errors import NonUnitError, ZeroLeadCoefficientError
from .field import ExtField, eta_bar


class CycNum:
    """Element of Q(zeta_p) in canonical reduced form."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords):
        self.p = p
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != p - 1:
            raise ValueError(f"expected {p - 1} coordinates, got {len(coords)}")
        self.coords = coords

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> CycNum:
        return cls(p, (0,) * (p - 1))

    @classmethod
    def from_rational(cls, p: int, value) -> CycNum:
        return cls(p, (Fraction(value),) + (0,) * (p - 2))

    @classmethod
    def zeta_pow(cls, p: int, k: int) -> CycNum:
        k %= p
        if k == p - 1:
            return cls(p, (-1,) * (p - 1))
        coords = [0] * (p - 1)
        coords[k] = 1
        return cls(p, coords)

    @classmethod
    def from_exponent_counts(cls, p: int, counts) -> CycNum:
        """Sum of counts[k] * zeta^k over k in [0, p)."""
        if len(counts) != p:
            raise ValueError(f"expected {p} exponent counts")
        top = Fraction(counts[p - 1])
        return cls(p, [Fraction(c) - top for c in counts[: p - 1]])

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: CycNum) -> CycNum:
        return CycNum(self.p, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: CycNum) -> CycNum:
        return CycNum(self.p, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> CycNum:
        return CycNum(self.p, [-a for a in self.coords])

    def __mul__(self, other: CycNum) -> CycNum:
        p = self.p
        acc = [Fraction(0)] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        acc[(i + j) % p] += a * b
        top = acc[p - 1]
        return CycNum(p, [c - top for c in acc[: p - 1]])

    def scale(self, c) -> CycNum:
        c = Fraction(c)
        return CycNum(self.p, [a * c for a in self.coords])

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            raise ValueError("negative powers are not defined for CycNum")
        result = CycNum.from_rational(self.p, 1)
        cur = self
        while e:
            if e & 1:
                result = result * cur
            cur = cur * cur
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNum.from_rational(self.p, other)
        return isinstance(other, CycNum) and (self.p, self.coords) == (other.p, other.coords)

    def __hash__(self):
        return hash((self.p, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def sigma(self, a: int) -> CycNum:
        """Galois automorphism determined by zeta -> zeta^a, gcd(a, p) = 1."""
        p = self.p
        if a % p == 0:
            raise NonUnitError(f"sigma index {a} is not a unit mod {p}")
        acc = [Fraction(0)] * p
        for e, c in enumerate(self.coords):
            if c:
                acc[a * e % p] += c
        top = acc[p - 1]
        return CycNum(p, [c - top for c in acc[: p - 1]])

    def complex_value(self) -> complex:
        """Numeric embedding zeta -> e^(2*pi*i/p); diagnostic only."""
        zeta = cmath.exp(2j * cmath.pi / self.p)
        return sum(float(c) * zeta**k for k, c in enumerate(self.coords))

    def to_text(self) -> str:
        parts = []
        for k, c in enumerate(self.coords):
            num = f"{c.numerator}" if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            parts.append(num if k == 0 else f"{num}*z^{k}" if k > 1 else f"{num}*z")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CycNum(p={self.p}, {self.to_text()})"


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_scale(x: CycNum, c) -> CycNum:
    return x.scale(c)


def galois_sigma(a: int, x: CycNum) -> CycNum:
    return x.sigma(a)


def pstar(p: int) -> int:
    """(-1)^((p-1)/2) * p."""
    return (-1) ** ((p - 1) // 2) * p


def pstar_fraction_power(p: int, e: int) -> Fraction:
    """(p*)^e as an exact rational, e any integer."""
    return Fraction(pstar(p)) ** e


@lru_cache(maxsize=None)
def gauss_sum_prime(p: int) -> CycNum:
    """sum over GF(p)* of eta_bar(c) * zeta^c; its square is p*."""
    counts = [0] * p
    for c in range(1, p):
        counts[c] = eta_bar(c, p)
    return CycNum.from_exponent_counts(p, counts)


def pstar_half_power(p: int, e: int) -> CycNum:
    """(p*)^(e/2): rational for even e, a Gauss-sum multiple for odd e."""
    if e % 2 == 0:
        return CycNum.from_rational(p, pstar_fraction_power(p, e // 2))
    return gauss_sum_prime(p).scale(pstar_fraction_power(p, (e - 1) // 2))


def gauss_sum_ext(p: int, m: int) -> CycNum:
    """Gauss sum of the quadratic character of GF(p^m) with the canonical
    additive character, written in Q(zeta_p): (-1)^(m-1) times the m-th
    power of the prime-field Gauss sum."""
    g = gauss_sum_prime(p) ** m
    return g if m % 2 == 1 else -g


def exp_sum(ctx: ExtField, phase) -> CycNum:
    """Exact sum of zeta^phase(x) over all x in GF(q).

    phase is a callable on element encodings or a length-q sequence of
    GF(p) values.
    """
    counts = [0] * ctx.p
    if callable(phase):
        for x in ctx.elements():
            counts[phase(x) % ctx.p] += 1
    else:
        if len(phase) != ctx.q:
            raise ValueError("phase sequence must cover the whole field")
        for v in phase:
            counts[v % ctx.p] += 1
    return CycNum.from_exponent_counts(ctx.p, counts)


def exp_sum_counts(p: int, counts) -> CycNum:
    """Exact sum of counts[t] * zeta^t; counts indexed by GF(p) value."""
    return CycNum.from_exponent_counts(p, counts)


def sigma_unit_sum(x: CycNum) -> CycNum:
    """Sum of sigma_y(x) over the units y = 1..p-1."""
    acc = CycNum.zero(x.p)
    for y in range(1, x.p):
        acc = acc + x.sigma(y)
    return acc


def verify_sigma_power_sums(p: int, r: int, z: int | None = None) -> dict:
    """Check the two closed forms for sum_y sigma_y((p*)^(-r/2) [zeta^z]).

    Without z: 0 for odd r, (p*)^(-r/2)(p-1) for even r.  With a unit z:
    eta_bar(z)(p*)^(-(r-1)/2) for odd r, -(p*)^(-r/2) for even r.
    Both sides are computed independently and compared exactly.
    """
    base = pstar_half_power(p, -r)
    if z is None:
        lhs = sigma_unit_sum(base)
        if r % 2 == 1:
            rhs = CycNum.zero(p)
        else:
            rhs = base.scale(p - 1)
    else:
        if z % p == 0:
            raise NonUnitError("z must be a unit mod p")
        lhs = sigma_unit_sum(base * CycNum.zeta_pow(p, z))
        if r % 2 == 1:
            rhs = pstar_half_power(p, -(r - 1)).scale(eta_bar(z, p))
        else:
            rhs = -base
    return {
        "p": p,
        "r": r,
        "z": z,
        "lhs": lhs.to_text(),
        "rhs": rhs.to_text(),
        "equal": lhs == rhs,
    }


def verify_quadratic_gauss(ctx: ExtField, a2: int, a1: int, a0: int) -> dict:
    """Check sum_c chi(a2 c^2 + a1 c + a0) against its closed form.

    chi is the canonical additive character.  The closed form is
    chi(a0 - a1^2/(4 a2)) eta(a2) G, where G is the field's quadratic
    Gauss sum, computed by brute summation and cross-checked against its
    expression as a signed power of the prime-field Gauss sum.
    """
    if a2 == 0:
        raise ZeroLeadCoefficientError("leading coefficient must be nonzero")
    p = ctx.p

    def phase(c: int) -> int:
        val = ctx.add(ctx.mul(a2, ctx.mul(c, c)), ctx.add(ctx.mul(a1, c), a0))
        return ctx.trace(val)

    lhs = exp_sum(ctx, phase)

    gauss_brute = exp_sum_counts(
        p,
        _eta_weighted_counts(ctx),
    )
    gauss_closed = gauss_sum_ext(p, ctx.m)
    shift = ctx.sub(a0, ctx.mul(ctx.mul(a1, a1),
                                ctx.inv(ctx.scalar_mul(4, a2))))
    rhs = gauss_brute.scale(ctx.eta(a2)) * CycNum.zeta_pow(p, ctx.trace(shift))
    return {
        "p": p,
        "m": ctx.m,
        "a2": a2,
        "a1": a1,
        "a0": a0,
        "lhs": lhs.to_text(),
        "rhs": rhs.to_text(),
        "equal": lhs == rhs,
        "gauss_brute_equals_closed": gauss_brute == gauss_closed,
    }


def _eta_weighted_counts(ctx: ExtField) -> list:
    counts = [0] * ctx.p
    for c in ctx.nonzero_elements():
        counts[ctx.trace(c)] += ctx.eta(c)
    return counts
