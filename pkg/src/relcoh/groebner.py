"""Buchberger Groebner bases for submodules of free modules, with syzygies.

The term order is fixed: position-over-term on components (lower index
wins) with the block order of rings.Ring on monomials.  Over QQ[t] the t
exponent rides along inside the monomial, so reduction arithmetic stays
over the field QQ throughout.

Syzygies, membership tests and expressions of elements in terms of a
generating set all run through one construction: augment each generator
g_i of a submodule of F = R^r with a unit vector in a second block F' =
R^s, compute a Groebner basis of the span of the (g_i, e_i) under the
order that makes every F term larger than every F' term, and read off

  * basis elements supported entirely on F': generators of the full
    syzygy module of the g_i;
  * the normal form of (v, 0): its F part vanishes exactly when v lies in
    the span, and then the F' part is minus one expression of v in the g_i.

Selection strategy: S-pairs by smallest lcm total degree, ties by pair
index, so runs are deterministic and reduced bases are canonical.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

from .elements import Element
from .rings import KernelError, Ring, mono_divides, mono_lcm, mono_mul, mono_sub


class TermOrder:
    """Descriptor for the (single) order in use; kept for surface clarity."""

    kind = "position-over-term, graded reverse lex on x, t below the x block"
    position_rule = "lower index wins"

    def __init__(self, ring: Ring):
        self.ring = ring

    def term_key(self, term):
        return self.ring.term_key(term)


def division(f: Element, basis, want_quotients: bool = False):
    """Divide f by basis, returning (quotients, remainder).

    No remainder term is divisible by any basis lead term, and
    f == sum(quotients[i] * basis[i]) + remainder holds exactly.
    """
    ring = f.ring
    leads = [g.lead_term() for g in basis]
    work = dict(f.terms)
    rem = {}
    quots = [{} for _ in basis] if want_quotients else None
    term_key = ring.term_key
    while work:
        lt = max(work, key=term_key)
        lc = work[lt]
        comp, mono = lt
        hit = -1
        for idx, lead in enumerate(leads):
            if lead is None:
                continue
            (gc, gm), _ = lead
            if gc == comp and mono_divides(gm, mono):
                hit = idx
                break
        if hit < 0:
            rem[lt] = lc
            del work[lt]
            continue
        g = basis[hit]
        (_, gm), ga = leads[hit]
        qmono = mono_sub(mono, gm)
        qc = lc / ga
        for (tc, tm), tv in g.terms.items():
            key = (tc, mono_mul(tm, qmono))
            acc = work.get(key, 0) - qc * tv
            if acc:
                work[key] = acc
            else:
                work.pop(key, None)
        if want_quotients:
            acc = quots[hit].get(qmono, 0) + qc
            if acc:
                quots[hit][qmono] = acc
            else:
                quots[hit].pop(qmono, None)
    remainder = Element(ring, f.rank, rem)
    if want_quotients:
        return [Element.poly(ring, q) for q in quots], remainder
    return None, remainder


def normal_form(f: Element, basis) -> Element:
    """Remainder of f on division by basis (zero iff f in span for a GB)."""
    return division(f, basis)[1]


def s_poly(f: Element, g: Element) -> Element:
    (fc, fm), fa = f.lead_term()
    (gc, gm), ga = g.lead_term()
    if fc != gc:
        raise KernelError("S-pair needs matching lead components")
    lcm = mono_lcm(fm, gm)
    return f.mul_term(Fraction(1) / fa, mono_sub(lcm, fm)) - g.mul_term(
        Fraction(1) / ga, mono_sub(lcm, gm)
    )


def _pair_key(gi: Element, gj: Element) -> int:
    (_, mi), _ = gi.lead_term()
    (_, mj), _ = gj.lead_term()
    return sum(mono_lcm(mi, mj))


def buchberger(gens, order: TermOrder | None = None):
    """Reduced Groebner basis of the span of gens (canonical for the order)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    basis = []
    for g in gens:
        r = normal_form(g, basis)
        if r:
            basis.append(r.monic())
    pairs = []
    for j in range(len(basis)):
        for i in range(j):
            if basis[i].lead_term()[0][0] == basis[j].lead_term()[0][0]:
                heapq.heappush(pairs, (_pair_key(basis[i], basis[j]), i, j))
    while pairs:
        _, i, j = heapq.heappop(pairs)
        r = normal_form(s_poly(basis[i], basis[j]), basis)
        if r:
            r = r.monic()
            basis.append(r)
            k = len(basis) - 1
            comp = r.lead_term()[0][0]
            for i2 in range(k):
                if basis[i2].lead_term()[0][0] == comp:
                    heapq.heappush(pairs, (_pair_key(basis[i2], r), i2, k))
    reduced = reduce_basis(basis)
    if __debug__:
        assert is_groebner(reduced), "S-pair failed to reduce to zero"
    return reduced


def reduce_basis(basis):
    """Inter-reduce to the unique reduced basis, sorted by lead term, descending."""
    if not basis:
        return []
    ring = basis[0].ring
    ordered = sorted(basis, key=lambda g: ring.term_key(g.lead_term()[0]))
    minimal = []
    kept_leads = []
    for g in ordered:
        comp, mono = g.lead_term()[0]
        if not any(kc == comp and mono_divides(km, mono) for kc, km in kept_leads):
            minimal.append(g)
            kept_leads.append((comp, mono))
    while True:
        changed = False
        for i in range(len(minimal)):
            others = minimal[:i] + minimal[i + 1:]
            r = normal_form(minimal[i], others).monic()
            if r != minimal[i]:
                minimal[i] = r
                changed = True
        if not changed:
            break
    minimal.sort(key=lambda g: ring.term_key(g.lead_term()[0]), reverse=True)
    return minimal


def is_groebner(basis) -> bool:
    """Every S-pair reduces to zero against the basis."""
    for j in range(len(basis)):
        for i in range(j):
            if basis[i].lead_term()[0][0] != basis[j].lead_term()[0][0]:
                continue
            if normal_form(s_poly(basis[i], basis[j]), basis):
                return False
    return True


class SubmoduleOps:
    """Membership, expressions and syzygies for a fixed generating set."""

    __slots__ = ("ring", "ambient_rank", "count", "gens", "graph_basis")

    def __init__(self, gens, ring: Ring, ambient_rank: int):
        self.ring = ring
        self.ambient_rank = ambient_rank
        self.gens = list(gens)
        self.count = len(self.gens)
        total = ambient_rank + self.count
        augmented = []
        for i, g in enumerate(self.gens):
            if g.rank != ambient_rank:
                raise KernelError("generator rank mismatch")
            terms = dict(g.terms)
            terms[(ambient_rank + i, ring.zero_mono())] = Fraction(1)
            augmented.append(Element(ring, total, terms))
        self.graph_basis = buchberger(augmented)

    def syzygies(self):
        """Generators of {(q_1..q_s) : sum q_i gens[i] == 0}."""
        r = self.ambient_rank
        out = []
        for b in self.graph_basis:
            if all(comp >= r for comp, _ in b.terms):
                out.append(
                    Element(
                        self.ring, self.count,
                        {(comp - r, m): v for (comp, m), v in b.terms.items()},
                    )
                )
        return out

    def express(self, v: Element):
        """Coefficients q with v == sum q_i gens[i], or None if v not in span."""
        r = self.ambient_rank
        if v.rank != r:
            raise KernelError("element rank mismatch")
        nf = normal_form(v.embed(0, r + self.count), self.graph_basis)
        if any(comp < r for comp, _ in nf.terms):
            return None
        return Element(
            self.ring, max(self.count, 1),
            {(comp - r, m): -val for (comp, m), val in nf.terms.items()},
        )

    def contains(self, v: Element) -> bool:
        return self.express(v) is not None


def syzygy_basis(gens, ring: Ring, ambient_rank: int):
    return SubmoduleOps(gens, ring, ambient_rank).syzygies()
