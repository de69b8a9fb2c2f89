"""Elements of free modules R^rank over the working polynomial ring.

A ring polynomial is the rank-1 case.  Terms are stored flat as a map
(component, monomial) -> Fraction, with the t exponent folded into the
monomial when the base ring is QQ[t] (see rings).  Values are immutable
after construction; all arithmetic returns fresh elements.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import KernelError, Ring, mono_mul
from .scalars import Scalar


class Element:
    __slots__ = ("ring", "rank", "terms", "_lead")

    def __init__(self, ring: Ring, rank: int, terms):
        self.ring = ring
        self.rank = rank
        clean = {}
        for key, value in terms.items():
            if value:
                comp, mono = key
                if not (0 <= comp < rank):
                    raise KernelError("component %d outside rank %d" % (comp, rank))
                if len(mono) != ring.nvars:
                    raise KernelError("monomial arity mismatch")
                clean[key] = value if isinstance(value, Fraction) else Fraction(value)
        self.terms = clean
        self._lead = None

    @classmethod
    def zero(cls, ring: Ring, rank: int = 1) -> "Element":
        return cls(ring, rank, {})

    @classmethod
    def poly(cls, ring: Ring, mono_coeffs) -> "Element":
        return cls(ring, 1, {(0, m): c for m, c in mono_coeffs.items()})

    @classmethod
    def variable(cls, ring: Ring, name: str) -> "Element":
        if name == "t":
            if not ring.has_t:
                raise KernelError("t is not a variable of %r" % ring)
            idx = ring.nvars - 1
        else:
            idx = ring.xvars.index(name)
        mono = tuple(1 if i == idx else 0 for i in range(ring.nvars))
        return cls.poly(ring, {mono: 1})

    @classmethod
    def unit(cls, ring: Ring, comp: int, rank: int) -> "Element":
        return cls(ring, rank, {(comp, ring.zero_mono()): Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.ring == other.ring
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.rank, frozenset(self.terms.items())))

    def _check_compatible(self, other: "Element"):
        if self.ring != other.ring:
            raise KernelError("elements over different rings")
        if self.rank != other.rank:
            raise KernelError("rank mismatch: %d vs %d" % (self.rank, other.rank))

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            acc = out.get(key, 0) + value
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return Element(self.ring, self.rank, out)

    def __sub__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        out = dict(self.terms)
        for key, value in other.terms.items():
            acc = out.get(key, 0) - value
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return Element(self.ring, self.rank, out)

    def __neg__(self) -> "Element":
        return Element(self.ring, self.rank, {k: -v for k, v in self.terms.items()})

    def scale(self, q) -> "Element":
        q = Fraction(q)
        if not q:
            return Element.zero(self.ring, self.rank)
        return Element(self.ring, self.rank, {k: v * q for k, v in self.terms.items()})

    def mul_term(self, coeff, mono) -> "Element":
        """Multiply by coeff * x^mono (a single ring term)."""
        coeff = Fraction(coeff)
        if not coeff:
            return Element.zero(self.ring, self.rank)
        out = {}
        for (comp, m), v in self.terms.items():
            out[(comp, mono_mul(m, mono))] = v * coeff
        return Element(self.ring, self.rank, out)

    def lead_term(self):
        """((component, monomial), coefficient) of the largest term."""
        if not self.terms:
            return None
        if self._lead is None:
            key = max(self.terms, key=self.ring.term_key)
            self._lead = (key, self.terms[key])
        return self._lead

    def monic(self) -> "Element":
        lt = self.lead_term()
        if lt is None or lt[1] == 1:
            return self
        return self.scale(Fraction(1) / lt[1])

    def component(self, comp: int) -> "Element":
        """The component as a rank-1 polynomial."""
        return Element(
            self.ring, 1,
            {(0, m): v for (c, m), v in self.terms.items() if c == comp},
        )

    def embed(self, comp_shift: int, rank: int) -> "Element":
        return Element(
            self.ring, rank,
            {(c + comp_shift, m): v for (c, m), v in self.terms.items()},
        )

    def xdegree(self, twists=None):
        """Common x-degree of all terms (twists[comp] added); None when zero.

        Raises when the element is not homogeneous.
        """
        deg = None
        ring = self.ring
        for (comp, mono) in self.terms:
            d = ring.xdeg(mono) + (twists[comp] if twists else 0)
            if deg is None:
                deg = d
            elif deg != d:
                raise KernelError("element is not homogeneous")
        return deg

    def is_homogeneous(self, twists=None) -> bool:
        try:
            self.xdegree(twists)
            return True
        except KernelError:
            return False

    def scalar_coeffs(self):
        """Group the t exponent: map (component, x-monomial) -> Scalar.

        The x-monomial keeps the full arity with the t slot zeroed, so keys
        stay comparable with ring.x_monomials output.
        """
        ring = self.ring
        n = ring.n
        grouped = {}
        if ring.has_t:
            for (comp, mono), v in self.terms.items():
                xm = mono[:n] + (0,)
                grouped.setdefault((comp, xm), {})[mono[n]] = v
            return {
                key: Scalar([parts.get(e, 0) for e in range(max(parts) + 1)])
                for key, parts in grouped.items()
            }
        return {key: Scalar((v,)) for key, v in self.terms.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.ring.term_key(kv[0]), reverse=True)

    def poly_str(self) -> str:
        """Render a rank-1 element in the session syntax."""
        if self.rank != 1:
            raise KernelError("poly_str needs a rank-1 element")
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for (comp, mono), coeff in self.sorted_terms():
            body = ring.mono_str(mono)
            mag = abs(coeff)
            if body == "1":
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = "%s*%s" % (mag, body)
            if not parts:
                parts.append(piece if coeff > 0 else "-" + piece)
            else:
                parts.append((" + " if coeff > 0 else " - ") + piece)
        return "".join(parts)

    def __str__(self) -> str:
        if self.rank == 1:
            return self.poly_str()
        return "(" + ", ".join(self.component(c).poly_str() for c in range(self.rank)) + ")"

    def __repr__(self) -> str:
        return "Element<%s>" % (self,)


def poly_mul(p: Element, q: Element) -> Element:
    """Product of two ring polynomials; exact, degrees add."""
    if p.ring != q.ring:
        raise KernelError("polynomials over different rings")
    if p.rank != 1 or q.rank != 1:
        raise KernelError("poly_mul needs rank-1 elements")
    out = {}
    for (_, m1), c1 in p.terms.items():
        for (_, m2), c2 in q.terms.items():
            key = (0, mono_mul(m1, m2))
            acc = out.get(key, 0) + c1 * c2
            if acc:
                out[key] = acc
            else:
                del out[key]
    return Element(p.ring, 1, out)


def poly_apply(p: Element, v: Element) -> Element:
    """p * v for a ring polynomial p and a free-module element v."""
    if p.rank != 1:
        raise KernelError("need a rank-1 multiplier")
    out = Element.zero(v.ring, v.rank)
    for (_, m), c in p.terms.items():
        out = out + v.mul_term(c, m)
    return out


def apply_columns(cols, v: Element, target_rank: int, ring: Ring) -> Element:
    """Substitute generator i of v's ambient by cols[i] (a map of free modules)."""
    out = Element.zero(ring, target_rank)
    for (comp, mono), coeff in v.terms.items():
        out = out + cols[comp].mul_term(coeff, mono)
    return out
