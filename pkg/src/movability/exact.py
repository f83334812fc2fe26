"""Exact arithmetic over Q(i): Gaussian rationals, polynomials, root finding.

The motion machinery needs the field Q(i) because the complex edge functions
(dx + i*dy) live there, and it needs every Gaussian-rational root of their
numerators and denominators (those are the candidate places where valuations
can separate edges).  Roots are found exactly: square-free reduction, then a
divisor search over Z[i] driven by Gaussian-integer factorization, with the
quadratic formula as a shortcut.  Whatever resists splitting into linear
factors over Q(i) is returned unfactored, never dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


@dataclass(frozen=True)
class GaussianRational:
    """Element re + im*i of Q(i), both parts exact fractions."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re, im=0) -> "GaussianRational":
        return GaussianRational(_as_fraction(re), _as_fraction(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        im = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if self.re == 0:
            return im
        return f"{self.re}{'+' if self.im > 0 else ''}{im}"

    def sqrt(self) -> "GaussianRational | None":
        """A w in Q(i) with w*w = self, if one exists."""
        a, b = self.re, self.im
        if b == 0:
            r = fraction_sqrt(a)
            if r is not None:
                return GaussianRational(r, Fraction(0))
            r = fraction_sqrt(-a)
            if r is not None:
                return GaussianRational(Fraction(0), r)
            return None
        s = fraction_sqrt(self.norm())
        if s is None:
            return None
        x = fraction_sqrt((a + s) / 2)
        if x is None or x == 0:
            return None
        return GaussianRational(x, b / (2 * x))


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


def gr(re, im=0) -> GaussianRational:
    return GaussianRational.of(re, im)


# -- polynomials in one variable over Q(i) ----------------------------------


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, coefficients low degree first, no trailing zeros."""

    coeffs: tuple[GaussianRational, ...]

    @staticmethod
    def of(coeffs: Iterable) -> "Poly":
        out = []
        for c in coeffs:
            if isinstance(c, GaussianRational):
                out.append(c)
            elif isinstance(c, tuple):
                out.append(GaussianRational.of(*c))
            else:
                out.append(GaussianRational.of(c))
        while out and out[-1].is_zero():
            out.pop()
        return Poly(tuple(out))

    @staticmethod
    def const(c) -> "Poly":
        return Poly.of([c])

    @staticmethod
    def variable() -> "Poly":
        return Poly.of([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> GaussianRational:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly.of(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly(())
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly.of(out)

    def scale(self, c: GaussianRational) -> "Poly":
        return Poly.of([a * c for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [GR_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree
        lead = other.leading()
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            factor = rem[-1] / lead
            quot[k] = factor
            for j, c in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * c
            while rem and rem[-1].is_zero():
                rem.pop()
        return Poly.of(quot), Poly.of(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(GR_ONE / self.leading())

    def derivative(self) -> "Poly":
        return Poly.of(
            [c * GaussianRational.of(k) for k, c in enumerate(self.coeffs)][1:]
        )

    def __call__(self, t: GaussianRational) -> GaussianRational:
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def conjugate_coeffs(self) -> "Poly":
        return Poly(tuple(c.conjugate() for c in self.coeffs))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*t")
            else:
                parts.append(f"({c})*t^{k}")
        return " + ".join(parts)


P_ZERO = Poly(())
P_ONE = Poly.of([1])
P_T = Poly.variable()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (Q(i) is a field)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def square_free_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors of f, monic."""
    if f.degree <= 0:
        return P_ONE
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def root_multiplicity(f: Poly, r: GaussianRational) -> int:
    count = 0
    lin = Poly.of([-r, 1])
    while not f.is_zero() and f(r).is_zero():
        f = f // lin
        count += 1
    return count


# -- Gaussian integers -------------------------------------------------------


def _gi_mul(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_norm(z: tuple[int, int]) -> int:
    return z[0] * z[0] + z[1] * z[1]


def _gi_divide(z: tuple[int, int], d: tuple[int, int]) -> tuple[int, int] | None:
    """Exact quotient z/d in Z[i], None when d does not divide z."""
    n = _gi_norm(d)
    if n == 0:
        raise ZeroDivisionError
    re = z[0] * d[0] + z[1] * d[1]
    im = z[1] * d[0] - z[0] * d[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _split_prime(p: int) -> tuple[int, int]:
    """Gaussian prime over a rational prime p = 1 mod 4 (or p = 2)."""
    if p == 2:
        return (1, 1)
    for a in range(1, math.isqrt(p) + 1):
        b2 = p - a * a
        b = math.isqrt(b2)
        if b * b == b2:
            return (max(a, b), min(a, b))
    raise ArithmeticError(f"prime {p} has no two-square split")


def gaussian_integer_divisors(z: tuple[int, int]) -> list[tuple[int, int]]:
    """All divisors of z in Z[i], one per associate class (unit multiples omitted)."""
    if z == (0, 0):
        raise ValueError("zero has no divisor list")
    primes: list[tuple[tuple[int, int], int]] = []
    rest = z
    for p, _ in sorted(_prime_factors(_gi_norm(z)).items()):
        if p % 4 == 3:
            count = 0
            while True:
                q = _gi_divide(rest, (p, 0))
                if q is None:
                    break
                rest = q
                count += 1
            if count:
                primes.append(((p, 0), count))
        else:
            pi = _split_prime(p)
            for prime in (pi, (pi[0], -pi[1])):
                count = 0
                while True:
                    q = _gi_divide(rest, prime)
                    if q is None:
                        break
                    rest = q
                    count += 1
                if count:
                    primes.append((prime, count))
                if p == 2:
                    break  # 1+i and 1-i are associates
    divisors: list[tuple[int, int]] = [(1, 0)]
    for prime, count in primes:
        grown = []
        for d in divisors:
            power = d
            grown.append(power)
            for _ in range(count):
                power = _gi_mul(power, prime)
                grown.append(power)
        divisors = grown
    return divisors


_UNITS = ((1, 0), (0, 1), (-1, 0), (0, -1))


def _poly_to_gaussian_ints(f: Poly) -> list[tuple[int, int]]:
    lcm = 1
    for c in f.coeffs:
        lcm = math.lcm(lcm, c.re.denominator, c.im.denominator)
    return [(int(c.re * lcm), int(c.im * lcm)) for c in f.coeffs]


def _quadratic_roots(f: Poly) -> list[GaussianRational] | None:
    c0, c1, c2 = f.coeffs
    disc = c1 * c1 - GaussianRational.of(4) * c2 * c0
    s = disc.sqrt()
    if s is None:
        return []
    two_a = GaussianRational.of(2) * c2
    roots = [(-c1 + s) / two_a, (-c1 - s) / two_a]
    return sorted(set(roots), key=lambda z: (z.re, z.im))


@dataclass(frozen=True)
class RootReport:
    """Gaussian-rational roots with multiplicities plus the unsplit residue."""

    roots: tuple[tuple[GaussianRational, int], ...]
    unresolved: Poly  # monic product of irreducible factors of degree >= 2


def gaussian_rational_roots(f: Poly) -> RootReport:
    """Every root of f in Q(i), with multiplicity, found exactly.

    Strategy: strip powers of t, pass to the square-free part, peel roots by
    the rational-root theorem over Z[i] (divisors of the trailing and leading
    coefficients, times units), with the quadratic formula finishing degree
    two.  The monic product of factors that admit no Q(i) root is reported
    as unresolved.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    roots: list[tuple[GaussianRational, int]] = []
    k = 0
    while f.coeffs[0].is_zero():
        f = Poly(f.coeffs[1:])
        k += 1
    if k:
        roots.append((GR_ZERO, k))
    if f.degree <= 0:
        return RootReport(tuple(roots), P_ONE)
    original = f
    work = square_free_part(f)
    while work.degree >= 1:
        if work.degree == 1:
            r = -work.coeffs[0] / work.coeffs[1]
            roots.append((r, root_multiplicity(original, r)))
            work = P_ONE
            break
        if work.degree == 2:
            found = _quadratic_roots(work)
            for r in found:
                roots.append((r, root_multiplicity(original, r)))
                work = work // Poly.of([-r, 1])
            break
        ints = _poly_to_gaussian_ints(work)
        trailing, leading = ints[0], ints[-1]
        hit = None
        for p in gaussian_integer_divisors(trailing):
            for q in gaussian_integer_divisors(leading):
                base = GaussianRational(Fraction(p[0], 1), Fraction(p[1], 1)) / GaussianRational(
                    Fraction(q[0], 1), Fraction(q[1], 1)
                )
                for u in _UNITS:
                    cand = base * GaussianRational.of(u[0], u[1])
                    if work(cand).is_zero():
                        hit = cand
                        break
                if hit is not None:
                    break
            if hit is not None:
                break
        if hit is None:
            break
        roots.append((hit, root_multiplicity(original, hit)))
        work = work // Poly.of([-hit, 1])
    unresolved = work.monic() if work.degree >= 1 else P_ONE
    roots.sort(key=lambda pair: (pair[0].re, pair[0].im))
    return RootReport(tuple(roots), unresolved)
