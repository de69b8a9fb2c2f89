"""Graded module presentations, free resolutions and chain complexes.

A module is the cokernel of a homogeneous relation matrix inside a twisted
free module: generator b lives in degree twists[b], so the degree-d slice
of the ambient is spanned by pairs (b, monomial of x-degree d - twists[b]).

Complexes are stored with maps running up the slot list: maps[i] sends
slots[i] to slots[i+1], columns of maps[i] are elements of the slots[i+1]
ambient, and labels[i] names the (co)homological position of slots[i].  A
free resolution lists F_maxlen .. F_1, F_0 (labels descending); dualizing
reverses the list, negates twists and transposes the differentials.
"""

from __future__ import annotations

from .elements import Element, apply_columns
from .groebner import SubmoduleOps
from .rings import KernelError, Ring


class ModulePresentation:
    __slots__ = ("ring", "rank", "twists", "relations", "_rel_degrees",
                 "_cache")

    def __init__(self, ring: Ring, rank: int, twists, relations,
                 relation_degrees=None):
        """relation_degrees pins a nominal degree per column; needed only so
        that columns which happen to be zero (e.g. after specializing t)
        keep their place in graded piece matrices."""
        self.ring = ring
        self.rank = rank
        self.twists = tuple(twists)
        if len(self.twists) != rank:
            raise KernelError("twist vector length must equal the rank")
        rels = []
        degrees = []
        for idx, col in enumerate(relations):
            if col.ring != ring or col.rank != rank:
                raise KernelError("relation column does not live in the ambient")
            deg = col.xdegree(self.twists)  # raises when inhomogeneous
            if relation_degrees is not None:
                pinned = relation_degrees[idx]
                if deg is not None and deg != pinned:
                    raise KernelError("pinned relation degree disagrees")
                deg = pinned
            rels.append(col)
            degrees.append(deg)
        self.relations = tuple(rels)
        self._rel_degrees = tuple(degrees)
        self._cache = {}

    @classmethod
    def free(cls, ring: Ring, rank: int = 1, twists=None) -> "ModulePresentation":
        return cls(ring, rank, twists or (0,) * rank, ())

    @classmethod
    def zero(cls, ring: Ring) -> "ModulePresentation":
        return cls(ring, 0, (), ())

    def relation_degrees(self):
        return self._rel_degrees

    def span_ops(self) -> SubmoduleOps:
        ops = self._cache.get("span_ops")
        if ops is None:
            ops = SubmoduleOps(list(self.relations), self.ring, self.rank)
            self._cache["span_ops"] = ops
        return ops

    def __repr__(self):
        return "ModulePresentation(rank=%d, twists=%s, %d relations)" % (
            self.rank, self.twists, len(self.relations),
        )


class ChainComplex:
    """Free slots with maps ascending along the slot list."""

    __slots__ = ("ring", "slots", "labels", "maps")

    def __init__(self, ring: Ring, slots, labels, maps, check: bool = True):
        self.ring = ring
        self.slots = [(rank, tuple(tw)) for rank, tw in slots]
        self.labels = list(labels)
        self.maps = [list(cols) for cols in maps]
        if len(self.labels) != len(self.slots):
            raise KernelError("labels and slots disagree")
        if len(self.maps) != max(0, len(self.slots) - 1):
            raise KernelError("need one map per consecutive slot pair")
        for i, cols in enumerate(self.maps):
            src_rank, src_tw = self.slots[i]
            tgt_rank, tgt_tw = self.slots[i + 1]
            if len(cols) != src_rank:
                raise KernelError("map %d has %d columns, slot has rank %d"
                                  % (i, len(cols), src_rank))
            for j, col in enumerate(cols):
                if col.rank != tgt_rank:
                    raise KernelError("map column in the wrong ambient")
                deg = col.xdegree(tgt_tw)
                if deg is not None and deg != src_tw[j]:
                    raise KernelError("map column degree clashes with source twist")
        if check:
            self.assert_composes_to_zero()

    def assert_composes_to_zero(self):
        for i in range(len(self.maps) - 1):
            tgt_rank = self.slots[i + 2][0]
            for col in self.maps[i]:
                image = apply_columns(self.maps[i + 1], col, tgt_rank, self.ring)
                if image:
                    raise KernelError("differentials do not compose to zero")

    def index_of_label(self, label: int):
        try:
            return self.labels.index(label)
        except ValueError:
            return None

    def slot(self, label: int):
        idx = self.index_of_label(label)
        return self.slots[idx] if idx is not None else (0, ())

    def map_from(self, label: int):
        """Columns of the map whose source slot has this label, or None."""
        idx = self.index_of_label(label)
        if idx is None or idx + 1 >= len(self.slots):
            return None
        return self.maps[idx]

    def map_into(self, label: int):
        idx = self.index_of_label(label)
        if idx is None or idx == 0:
            return None
        return self.maps[idx - 1]

    def __repr__(self):
        return "ChainComplex(%s)" % " -> ".join(
            "F[%d]:R^%d%s" % (lab, rank, list(tw))
            for lab, (rank, tw) in zip(self.labels, self.slots)
        )


def free_resolution(M: ModulePresentation, maxlen: int | None = None) -> ChainComplex:
    """Resolve M by free modules: F_maxlen -> ... -> F_1 -> F_0 -> M -> 0.

    Each differential's columns generate the full kernel of the previous
    one (syzygies of the current generating set), so the complex is exact
    at every interior slot; coker(F_1 -> F_0) is M itself because the first
    map's columns are exactly the presentation's relations.  Slots beyond
    the length where syzygies run out are zero.  Default maxlen is n + 2.
    """
    ring = M.ring
    if maxlen is None:
        maxlen = ring.n + 2
    if maxlen < 1:
        raise KernelError("maxlen must be at least 1")
    key = ("resolution", maxlen)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    rev_slots = [(M.rank, M.twists)]
    rev_maps = []
    gens = [col for col in M.relations]
    ambient_rank, ambient_twists = M.rank, M.twists
    for _ in range(maxlen):
        nonzero = [g for g in gens if g]
        if not nonzero:
            break
        degrees = tuple(g.xdegree(ambient_twists) for g in nonzero)
        rev_maps.append(nonzero)
        rev_slots.append((len(nonzero), degrees))
        gens = SubmoduleOps(nonzero, ring, ambient_rank).syzygies()
        ambient_rank, ambient_twists = len(nonzero), degrees
    while len(rev_slots) < maxlen + 1:
        rev_slots.append((0, ()))
        rev_maps.append([])
    slots = list(reversed(rev_slots))
    maps = list(reversed(rev_maps))
    labels = list(range(len(slots) - 1, -1, -1))
    complex_ = ChainComplex(ring, slots, labels, maps)
    M._cache[key] = complex_
    return complex_


def transpose_columns(cols, src_rank: int, tgt_rank: int, ring: Ring):
    """Columns of the transposed matrix: entry (a, j) becomes entry (j, a)."""
    out = [dict() for _ in range(tgt_rank)]
    for j, col in enumerate(cols):
        for (a, mono), coeff in col.terms.items():
            out[a][(j, mono)] = coeff
    return [Element(ring, src_rank, terms) for terms in out]


def dualize_complex(C: ChainComplex) -> ChainComplex:
    """Apply Hom(-, R): reverse slots, negate twists, transpose maps."""
    ring = C.ring
    slots = [(rank, tuple(-t for t in tw)) for rank, tw in reversed(C.slots)]
    labels = list(reversed(C.labels))
    maps = []
    rev = list(reversed(list(enumerate(C.maps))))
    for i, cols in rev:
        src_rank = C.slots[i][0]
        tgt_rank = C.slots[i + 1][0]
        maps.append(transpose_columns(cols, src_rank, tgt_rank, ring))
    return ChainComplex(ring, slots, labels, maps)


def subquotient_presentation(ker_gens, im_gens, ring: Ring, ambient_rank: int,
                             ambient_twists) -> ModulePresentation:
    """Present span(ker_gens)/span(im_gens) inside a twisted free ambient.

    Generators are the ker_gens (twists are their degrees); relations are
    the full syzygy module of the ker_gens together with one expression of
    each im_gen in terms of them.  Raises when some im_gen falls outside
    span(ker_gens), which signals a broken complex upstream.
    """
    ambient_twists = tuple(ambient_twists)
    kept = [g for g in ker_gens if g]
    twists = tuple(g.xdegree(ambient_twists) for g in kept)
    if not kept:
        for h in im_gens:
            if h:
                raise KernelError("image not contained in kernel")
        return ModulePresentation.zero(ring)
    ops = SubmoduleOps(kept, ring, ambient_rank)
    relations = ops.syzygies()
    for h in im_gens:
        expr = ops.express(h)
        if expr is None:
            raise KernelError("image not contained in kernel")
        if expr:
            relations.append(expr)
    return ModulePresentation(ring, len(kept), twists, relations)
