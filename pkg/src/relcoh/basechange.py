"""Specialization t -> c, generic freeness witnesses, base change checks.

For x-homogeneous modules over QQ[t][x] the associated graded module along
the ideal of the x variables is the module itself with its x-grading, so a
witness of simultaneous generic freeness can be assembled from invariant
factors of graded pieces; torsion of the cohomology pieces joins it so
that inverting the witness also frees every H^i slice on the window.  The
witness is a candidate certified by sampling: at every specialization
point where it does not vanish, the specialized cohomology must match the
generic free ranks degree by degree.
"""

from __future__ import annotations

from fractions import Fraction

from .elements import Element
from .homology import piece_invariants, window_range
from .localcoh import DEFAULT_WINDOW, local_cohomology
from .modules import ModulePresentation
from .rings import QQ, QQT, KernelError, Ring
from .scalars import ONE, Scalar, lcm_of


def specialize_scalar(s: Scalar, c) -> Fraction:
    """Evaluate at t = c (identity on constants)."""
    return s.evaluate(c)


def specialize_module(M: ModulePresentation, c) -> ModulePresentation:
    """Evaluate every coefficient at t = c; twists preserved.

    Over QQ this is the identity.  Relation columns that evaluate to zero
    are kept as zero columns so shapes line up with the generic picture.
    """
    if M.ring.base == QQ:
        return M
    c = Fraction(c)
    key = ("specialized", c)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    ring_q = Ring(QQ, M.ring.xvars)
    n = ring_q.n
    new_rels = []
    for col in M.relations:
        terms = {}
        for (comp, mono), frac in col.terms.items():
            value = frac * c ** mono[n]
            if not value:
                continue
            key2 = (comp, mono[:n])
            acc = terms.get(key2, 0) + value
            if acc:
                terms[key2] = acc
            else:
                del terms[key2]
        new_rels.append(Element(ring_q, M.rank, terms))
    out = ModulePresentation(ring_q, M.rank, M.twists, new_rels,
                             relation_degrees=M.relation_degrees())
    M._cache[key] = out
    return out


class Witness:
    """A candidate g in A: the lcm of every torsion factor seen on the window."""

    __slots__ = ("g", "provenance")

    def __init__(self, g: Scalar, provenance):
        self.g = g
        self.provenance = list(provenance)

    def value_at(self, c) -> Fraction:
        return self.g.evaluate(c)

    def to_json(self, target=None):
        return {
            "command": "witness",
            "target": target,
            "status": "ok",
            "g": str(self.g),
            "provenance": [
                {"source": src, "where": where, "factor": str(f)}
                for src, where, f in self.provenance
            ],
        }

    def __repr__(self):
        return "Witness(g=%s)" % self.g


def find_witness(M: ModulePresentation, window=DEFAULT_WINDOW,
                 i_range=None, maxlen=None) -> Witness:
    """lcm of graded-piece torsion and cohomology torsion over the window."""
    if M.ring.base == QQ:
        return Witness(ONE, [])
    n = M.ring.n
    if i_range is None:
        i_range = range(0, n + 1)
    provenance = []
    factors = []
    for d in window_range(window):
        for f in piece_invariants(M, d)[1]:
            provenance.append(("graded-piece", {"d": d}, f))
            factors.append(f)
    for i in i_range:
        data = local_cohomology(M, i, window, maxlen)
        for d in data.degrees():
            for f in data.torsion(d):
                provenance.append(("cohomology-torsion", {"i": i, "d": d}, f))
                factors.append(f)
    return Witness(lcm_of(factors), provenance)


class BaseChangeReport:
    __slots__ = ("i", "c", "window", "witness", "g_value", "per_degree",
                 "mismatches")

    def __init__(self, i, c, window, witness, g_value, per_degree, mismatches):
        self.i = i
        self.c = c
        self.window = window
        self.witness = witness
        self.g_value = g_value
        self.per_degree = per_degree      # {d: (lhs_rank, rhs_rank)}
        self.mismatches = mismatches

    @property
    def expected_possible(self) -> bool:
        return self.g_value == 0

    @property
    def violation(self) -> bool:
        """A mismatch where the witness does not vanish contradicts base change."""
        return bool(self.mismatches) and self.g_value != 0

    def to_json(self, target=None):
        return {
            "command": "basechange",
            "target": target,
            "status": "ok",
            "params": {"i": self.i, "c": str(self.c),
                       "window": list(self.window)},
            "witness": str(self.witness.g),
            "g_at_c": str(self.g_value),
            "pieces": [
                {"d": d, "generic_rank": a, "special_rank": b,
                 "match": a == b}
                for d, (a, b) in sorted(self.per_degree.items())
            ],
            "mismatches": [
                {"d": d, "generic_rank": a, "special_rank": b,
                 "flag": "expected possible" if self.g_value == 0
                         else "violates base change"}
                for d, (a, b) in sorted(self.per_degree.items()) if a != b
            ],
        }


def base_change_check(M: ModulePresentation, i: int, c, window=DEFAULT_WINDOW,
                      witness: Witness | None = None,
                      maxlen=None) -> BaseChangeReport:
    """Generic free ranks of H^i vs dimensions after specializing t -> c."""
    if M.ring.base != QQT:
        raise KernelError("base change check needs a QQ[t] module")
    c = Fraction(c)
    if witness is None:
        witness = find_witness(M, window, maxlen=maxlen)
    generic = local_cohomology(M, i, window, maxlen)
    special = local_cohomology(specialize_module(M, c), i, window, maxlen)
    per_degree = {}
    mismatches = []
    for d in window_range(window):
        lhs = generic.rank(d)
        rhs = special.rank(d)
        per_degree[d] = (lhs, rhs)
        if lhs != rhs:
            mismatches.append(d)
    return BaseChangeReport(i, c, window, witness, witness.value_at(c),
                            per_degree, mismatches)
