"""The top local cohomology module E = H^n_I(R) of the ambient ring.

E is the free A-module on the monomials x^alpha with every exponent at
most -1.  The ring acts by exponent shifts: x^beta . x^alpha = x^(alpha +
beta) when every component stays at most -1, and 0 as soon as any
component would reach 0 (such classes die in the cokernel of the last
localization map of the stable Koszul complex).  The degree-e piece is
free of rank binomial(-e-1, n-1).

The pairing of E against R implemented here sends (alpha, beta) to the
class of x^(alpha+beta+1) modulo (x_1..x_n): it is 1 exactly on the dual
pairs beta = -alpha-1 and realizes E as the continuous A-linear
functionals on R (a functional killed by a power of the ideal).
"""

from __future__ import annotations

from math import comb

from .elements import Element
from .rings import KernelError, Ring, _compositions
from .scalars import ONE, ZERO, Scalar


class InverseElement:
    """Finite A-combination of inverse monomials, keyed by exponent tuple."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms):
        self.ring = ring
        clean = {}
        for alpha, coeff in terms.items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar((coeff,))
            if coeff.is_zero():
                continue
            if len(alpha) != ring.n or any(a > -1 for a in alpha):
                raise KernelError("inverse monomial needs all exponents <= -1")
            clean[tuple(alpha)] = coeff
        self.terms = clean

    @classmethod
    def monomial(cls, ring: Ring, alpha, coeff=ONE) -> "InverseElement":
        return cls(ring, {tuple(alpha): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, InverseElement)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __add__(self, other: "InverseElement") -> "InverseElement":
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            acc = out.get(alpha, ZERO) + c
            if acc.is_zero():
                out.pop(alpha, None)
            else:
                out[alpha] = acc
        return InverseElement(self.ring, out)

    def scale(self, s: Scalar) -> "InverseElement":
        return InverseElement(self.ring, {a: s * c for a, c in self.terms.items()})

    def degree(self):
        degs = {sum(a) for a in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise KernelError("inverse element is not homogeneous")
        return degs.pop()

    def __repr__(self):
        if not self.terms:
            return "InverseElement<0>"
        bits = []
        for alpha in sorted(self.terms, reverse=True):
            c = self.terms[alpha]
            mono = "*".join(
                "%s^%d" % (v, e) for v, e in zip(self.ring.xvars, alpha)
            )
            bits.append("(%s)*%s" % (c, mono))
        return "InverseElement<%s>" % " + ".join(bits)


def e_act(p: Element, e: InverseElement) -> InverseElement:
    """Action of a ring polynomial on E (exponent shift, zero past -1)."""
    ring = e.ring
    if p.ring != ring:
        raise KernelError("polynomial and inverse element over different rings")
    if p.rank != 1:
        raise KernelError("need a rank-1 polynomial")
    n = ring.n
    out = {}
    for (_, mono), frac in p.terms.items():
        shift = mono[:n]
        weight = Scalar.t_power(mono[n], frac) if ring.has_t else Scalar((frac,))
        for alpha, coeff in e.terms.items():
            beta = tuple(a + s for a, s in zip(alpha, shift))
            if any(b > -1 for b in beta):
                continue
            acc = out.get(beta, ZERO) + weight * coeff
            if acc.is_zero():
                out.pop(beta, None)
            else:
                out[beta] = acc
    return InverseElement(ring, out)


def phi_pairing(ring: Ring, alpha, beta) -> Scalar:
    """Pair x^alpha in E with x^beta in R: the class of x^(alpha+beta+1) mod I."""
    if len(alpha) != ring.n or len(beta) != ring.n:
        raise KernelError("exponent vectors must have length n")
    if any(a > -1 for a in alpha) or any(b < 0 for b in beta):
        raise KernelError("alpha must be negative, beta nonnegative")
    gamma = [a + b + 1 for a, b in zip(alpha, beta)]
    if any(g < 0 for g in gamma):
        return ZERO
    return ONE if all(g == 0 for g in gamma) else ZERO


def pair_element(e: InverseElement, beta) -> Scalar:
    """A-linear extension of the pairing to an inverse element."""
    acc = ZERO
    for alpha, coeff in e.terms.items():
        acc = acc + coeff * phi_pairing(e.ring, alpha, beta)
    return acc


def inverse_monomials(n: int, degree: int):
    """All alpha with alpha_i <= -1 and sum(alpha) == degree, deterministic order."""
    if degree > -n:
        return []
    out = [
        tuple(-1 - c for c in comp) for comp in _compositions(-degree - n, n)
    ]
    out.sort(reverse=True)
    return out


def e_piece_rank(n: int, degree: int) -> int:
    """rank of E in the given degree: binomial(-degree-1, n-1)."""
    if degree > -n:
        return 0
    return comb(-degree - 1, n - 1)
