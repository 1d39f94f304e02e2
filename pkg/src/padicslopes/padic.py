"""Exact p-adic primitives.

Valuations are exact rationals (never floats); the valuation of zero is the
distinguished object :data:`INFINITY`, which compares larger than every
rational and absorbs addition.  Everything here works over plain ``int`` and
``fractions.Fraction``; all functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union


class Infinity:
    """Formal +infinity; the valuation of zero.  There is one instance."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return isinstance(other, Infinity)

    def __hash__(self):
        return hash("padicslopes.INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinity)

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinity):
            raise ArithmeticError("INFINITY - INFINITY is undefined")
        return self

    def __neg__(self):
        raise ArithmeticError("negative infinity does not occur as a valuation")


INFINITY = Infinity()

#: A p-adic valuation: an exact rational, or INFINITY (valuation of zero).
ExtendedValuation = Union[int, Fraction, Infinity]


def is_prime(n: int) -> bool:
    """Trial-division primality test; inputs here are small."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")


def valuation(n: int | Fraction, p: int) -> ExtendedValuation:
    """p-adic valuation of an integer or exact rational; INFINITY for 0."""
    _check_prime(p)
    if n == 0:
        return INFINITY
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> int:
    """Legendre's formula: v_p(n!) = sum of floor(n / p^i)."""
    _check_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


def binomial_valuation(a: int, b: int, p: int) -> int:
    """v_p(C(a, b)) as the number of base-p carries when adding b and a-b.

    Kummer's theorem; for a >= 1 the count is at most floor(log_p(a)).
    """
    _check_prime(p)
    if not 0 <= b <= a:
        raise ValueError(f"need 0 <= b <= a, got a={a}, b={b}")
    carries = 0
    carry = 0
    x, y = b, a - b
    while x or y or carry:
        carry = 1 if x % p + y % p + carry >= p else 0
        carries += carry
        x //= p
        y //= p
    return carries


def generalized_binomial(top: int | Fraction, w: int) -> Fraction:
    """C(top, w) by the falling factorial; top may be negative or rational.

    Satisfies the negation identity C(-m, w) = (-1)^w C(m+w-1, w).
    """
    if w < 0:
        raise ValueError("w must be nonnegative")
    if isinstance(top, int) and top >= 0:
        return Fraction(math.comb(top, w))
    num = 1
    den = 1
    if isinstance(top, Fraction):
        a, b = top.numerator, top.denominator
        for u in range(w):
            num *= a - u * b
            den *= b
    else:
        for u in range(w):
            num *= top - u
    return Fraction(num, den * math.factorial(w))


def integer_log(p: int, n: int) -> int:
    """floor(log_p(n)) for n >= 1: the largest e with p^e <= n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    e = 0
    q = p
    while q <= n:
        e += 1
        q *= p
    return e


def teichmuller_lift(mu: int, p: int, M: int) -> int:
    """The Teichmuller lift of mu mod p, as an integer mod p^M.

    The unique x with x = mu (mod p) and x^p = x (mod p^M), found by
    iterating x <- x^p; each step gains at least one digit, so M steps
    always reach the fixed point.
    """
    _check_prime(p)
    if M < 1:
        raise ValueError("M must be >= 1")
    q = p**M
    x = mu % p
    for _ in range(M):
        y = pow(x, p, q)
        if y == x:
            return x
        x = y
    raise AssertionError("Teichmuller iteration failed to converge")


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v_p(c_i)) with the slope multiset of roots.

    ``vertices`` lists the hull vertices with strictly increasing index;
    collinear interior points are not vertices.  ``slopes`` is the multiset
    of root valuations, as (valuation, multiplicity) pairs sorted by
    ascending valuation.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    slopes: tuple[tuple[Fraction, int], ...]

    def slope_list(self) -> list[Fraction]:
        """Root valuations expanded with multiplicity, ascending."""
        out: list[Fraction] = []
        for s, m in self.slopes:
            out.extend([s] * m)
        return out


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull of points with distinct increasing x; strict turns only."""
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop if hull[-1] is on or above the segment hull[-2] -> pt
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(coeffs: Sequence[int | Fraction], p: int) -> NewtonPolygon:
    """Newton polygon of sum(c_i x^i) with respect to p.

    ``coeffs`` is lowest degree first and the leading coefficient must be
    nonzero.  The slope multiset equals the multiset of valuations of the
    nonzero roots in an algebraic closure; root 0 (from a vanishing tail)
    carries no slope.
    """
    if not coeffs or coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    points = [(i, Fraction(valuation(c, p))) for i, c in enumerate(coeffs) if c != 0]
    hull = lower_hull(points)
    slopes: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    slopes.sort(key=lambda sm: sm[0])
    merged: list[tuple[Fraction, int]] = []
    for s, m in slopes:
        if merged and merged[-1][0] == s:
            merged[-1] = (s, merged[-1][1] + m)
        else:
            merged.append((s, m))
    return NewtonPolygon(tuple(hull), tuple(merged))


@dataclass(frozen=True)
class Params:
    """Derived parameters of a (p, k) cell.

    r = k - 2, rho = floor((k-1)/(p+1)), eps_cal = floor(log_p(k-1)).
    ``nu`` is floor(slope) + 1 when a slope is supplied, else None.
    """

    p: int
    k: int
    r: int = field(init=False)
    rho: int = field(init=False)
    eps_cal: int = field(init=False)
    nu: int | None = None

    def __post_init__(self):
        _check_prime(self.p)
        if self.k < 2:
            raise ValueError("k must be >= 2")
        object.__setattr__(self, "r", self.k - 2)
        object.__setattr__(self, "rho", (self.k - 1) // (self.p + 1))
        object.__setattr__(self, "eps_cal", integer_log(self.p, self.k - 1))

    @classmethod
    def from_r(cls, p: int, r: int, nu: int | None = None) -> "Params":
        return cls(p=p, k=r + 2, nu=nu)

    @classmethod
    def with_slope(cls, p: int, k: int, slope: int | Fraction) -> "Params":
        nu = math.floor(slope) + 1
        return cls(p=p, k=k, nu=nu)


def format_rational(x: int | Fraction | Infinity) -> str:
    """Exact rendering: integers bare, otherwise num/den; INFINITY as 'inf'."""
    if isinstance(x, Infinity):
        return "inf"
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
