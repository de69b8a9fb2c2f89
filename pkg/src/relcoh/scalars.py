"""Exact arithmetic for the coefficient rings QQ and QQ[t].

A Scalar is a univariate polynomial in the parameter t with Fraction
coefficients, stored as a coefficient tuple with no trailing zeros; plain
rationals are the constant case.  Which base ring is actually in play
(QQ versus QQ[t]) is recorded on the polynomial ring descriptor, not here:
over the plain rational base every scalar that ever shows up is constant.

QQ[t] is a Euclidean domain (the coefficients form a field), so division
with remainder, gcd and lcm are available; that is all the Smith normal
form machinery in linalg needs.
"""

from __future__ import annotations

from fractions import Fraction


class Scalar:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def rational(cls, value) -> "Scalar":
        return cls((Fraction(value),))

    @classmethod
    def t_power(cls, e: int, coeff=1) -> "Scalar":
        return cls((0,) * e + (Fraction(coeff),))

    @property
    def degree(self) -> int:
        """Degree in t; -1 for the zero scalar."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def as_fraction(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError("scalar %s is not constant" % self)
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero scalar has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "Scalar":
        return Scalar(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Scalar") -> "Scalar":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Scalar(out)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Scalar(out)

    def scale(self, q) -> "Scalar":
        q = Fraction(q)
        return Scalar(tuple(c * q for c in self.coeffs))

    def __divmod__(self, other: "Scalar"):
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        dd = len(div) - 1
        lead = div[-1]
        quot = [Fraction(0)] * max(0, len(rem) - dd)
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            shift = len(rem) - 1 - dd
            q = rem[-1] / lead
            quot[shift] = q
            for i, c in enumerate(div):
                rem[shift + i] -= q * c
            rem.pop()
        return Scalar(quot), Scalar(rem)

    def __floordiv__(self, other: "Scalar") -> "Scalar":
        return divmod(self, other)[0]

    def __mod__(self, other: "Scalar") -> "Scalar":
        return divmod(self, other)[1]

    def divides(self, other: "Scalar") -> bool:
        if self.is_zero():
            return other.is_zero()
        return divmod(other, self)[1].is_zero()

    def exact_div(self, other: "Scalar") -> "Scalar":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("%s does not divide %s" % (other, self))
        return q

    def monic(self) -> "Scalar":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Scalar(tuple(c / lead for c in self.coeffs))

    def evaluate(self, c) -> Fraction:
        """Evaluate at t = c (a ring homomorphism QQ[t] -> QQ)."""
        c = Fraction(c)
        acc = Fraction(0)
        for coeff in reversed(self.coeffs):
            acc = acc * c + coeff
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                body = str(abs(c))
            else:
                tpow = "t" if e == 1 else "t^%d" % e
                body = tpow if abs(c) == 1 else "%s*%s" % (abs(c), tpow)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return "Scalar(%s)" % (self,)


ZERO = Scalar()
ONE = Scalar((1,))
T = Scalar((0, 1))


def scalar_gcd(a: Scalar, b: Scalar) -> Scalar:
    """Monic gcd in QQ[t] (any nonzero constant gcd normalizes to 1)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def scalar_lcm(a: Scalar, b: Scalar) -> Scalar:
    if a.is_zero() or b.is_zero():
        return ZERO
    g = scalar_gcd(a, b)
    return (a * b).exact_div(g).monic()


def lcm_of(factors) -> Scalar:
    out = ONE
    for f in factors:
        out = scalar_lcm(out, f)
    return out


def divides_power_of(f: Scalar, g: Scalar) -> bool:
    """True when f divides some power of g, i.e. rad(f) | rad(g)."""
    if f.is_zero():
        return False
    f = f.monic()
    while f.degree > 0:
        h = scalar_gcd(f, g)
        if h.degree == 0:
            return False
        f = f.exact_div(h)
    return True
