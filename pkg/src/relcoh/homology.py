"""Degreewise A-linear algebra on complexes and Ext modules.

Everything a graded question ever reduces to here is the cokernel of an
A-matrix: the degree-d slice of a twisted free module R^r(twists) has the
monomial basis {(b, m) : xdeg(m) = d - twists[b]}, a map of free modules
restricts to a matrix on those bases, and a module presentation restricts
to a presentation of the slice.  Windows are explicit everywhere; a degree
outside the computed window is unknown, never silently zero.
"""

from __future__ import annotations

from .elements import Element
from .linalg import (PieceMatrix, ScalarMatrix, cokernel_invariants,
                     frac_cols_rank, kernel_basis, solve_in_span)
from .modules import (ChainComplex, ModulePresentation, dualize_complex,
                      free_resolution, subquotient_presentation)
from .rings import QQ, KernelError, Ring
from .scalars import Scalar, ZERO


class GradedAModuleData:
    """Per-degree free rank and torsion of a graded A-module on a window."""

    __slots__ = ("window", "pieces", "stable", "killed")

    def __init__(self, window, pieces, stable=None, killed=None):
        self.window = (window[0], window[1])
        self.pieces = dict(pieces)
        self.stable = stable
        self.killed = dict(killed) if killed else {}

    def degrees(self):
        return sorted(self.pieces)

    def _get(self, d):
        if d not in self.pieces:
            raise KernelError("degree %d outside computed window %s" % (d, (self.window,)))
        return self.pieces[d]

    def rank(self, d) -> int:
        return self._get(d)[0]

    def torsion(self, d):
        return self._get(d)[1]

    def is_zero(self) -> bool:
        return all(r == 0 and not t for r, t in self.pieces.values())

    def all_torsion_factors(self):
        out = []
        for d in self.degrees():
            out.extend(self.pieces[d][1])
        return out

    def same_pieces(self, other: "GradedAModuleData") -> bool:
        return self.window == other.window and self.pieces == other.pieces

    def to_json(self, i=None):
        out = []
        for d in self.degrees():
            rank, torsion = self.pieces[d]
            entry = {"d": d}
            if i is not None:
                entry["i"] = i
            entry["rank"] = rank
            entry["torsion"] = [str(f) for f in torsion]
            out.append(entry)
        return out

    def __repr__(self):
        body = ", ".join(
            "%d: (%d%s)" % (d, r, ", " + "*".join(str(f) for f in t) if t else "")
            for d, (r, t) in sorted(self.pieces.items())
        )
        return "GradedAModuleData{%s}" % body


def window_range(window):
    lo, hi = window
    return range(lo, hi + 1)


def free_piece_basis(ring: Ring, slot, d: int):
    """Monomial basis of the degree-d slice of R^rank(twists)."""
    rank, twists = slot
    basis = []
    for b in range(rank):
        for m in ring.x_monomials(d - twists[b]):
            basis.append((b, m))
    return basis


def free_map_piece(ring: Ring, cols, src_slot, tgt_slot, d: int) -> PieceMatrix:
    """Matrix of a map of free modules on the degree-d monomial bases.

    cols[j] is the image of generator j in the target ambient.  Columns of
    the result are indexed by the source basis (j, m'), rows by the target
    basis; entries are Fractions over QQ and Scalars over QQ[t].
    """
    tgt_basis = free_piece_basis(ring, tgt_slot, d)
    row_index = {key: i for i, key in enumerate(tgt_basis)}
    n = ring.n
    rational = ring.base == QQ
    src_rank, src_twists = src_slot
    out_cols = []
    for j in range(src_rank):
        col_el = cols[j]
        for mult in ring.x_monomials(d - src_twists[j]):
            col = {}
            if rational:
                for (comp, mono), coeff in col_el.terms.items():
                    key = (comp, tuple(a + b for a, b in zip(mono, mult)))
                    idx = row_index[key]
                    col[idx] = col.get(idx, 0) + coeff
                out_cols.append({k: v for k, v in col.items() if v})
            else:
                grouped = {}
                for (comp, mono), coeff in col_el.terms.items():
                    xm = tuple(a + b for a, b in zip(mono[:n], mult[:n])) + (0,)
                    grouped.setdefault(row_index[(comp, xm)], {})[mono[n]] = coeff
                for idx, parts in grouped.items():
                    col[idx] = Scalar([parts.get(e, 0) for e in range(max(parts) + 1)])
                out_cols.append({k: v for k, v in col.items() if v})
    return PieceMatrix(len(tgt_basis), out_cols, ring.base)


def presentation_piece(M: ModulePresentation, d: int) -> PieceMatrix:
    key = ("piece", d)
    cached = M._cache.get(key)
    if cached is None:
        rels = []
        degrees = []
        for col, deg in zip(M.relations, M.relation_degrees()):
            if deg is not None:
                rels.append(col)
                degrees.append(deg)
        cached = free_map_piece(M.ring, rels, (len(rels), tuple(degrees)),
                                (M.rank, M.twists), d)
        M._cache[key] = cached
    return cached


def graded_piece(M: ModulePresentation, d: int) -> ScalarMatrix:
    """Presentation matrix over A of the degree-d piece (cokernel is M_d)."""
    return presentation_piece(M, d).to_scalar_matrix()


def piece_invariants(M: ModulePresentation, d: int):
    """(free rank, torsion factors) of M_d as an A-module."""
    key = ("piece_inv", d)
    cached = M._cache.get(key)
    if cached is None:
        cached = presentation_piece(M, d).cokernel()
        M._cache[key] = cached
    return cached


def module_data(M: ModulePresentation, window) -> GradedAModuleData:
    return GradedAModuleData(
        window, {d: piece_invariants(M, d) for d in window_range(window)}
    )


def _scalar_columns(pm: PieceMatrix):
    """Dense Scalar column vectors of a PieceMatrix."""
    out = []
    for col in pm.cols:
        vec = [ZERO] * pm.nrows
        for i, v in col.items():
            vec[i] = v if isinstance(v, Scalar) else Scalar((v,))
        out.append(vec)
    return out


def cohomology_invariants(in_cols: PieceMatrix | None,
                          mid_rel: PieceMatrix | None,
                          out_map: PieceMatrix | None,
                          out_rel: PieceMatrix | None,
                          base: str, ngens: int):
    """(rank, torsion) of ker/im at the middle slot of presented A-modules.

    The middle module is A^ngens modulo mid_rel; out_map sends it to the
    next module (presented by out_rel); in_cols are generator-level images
    of the previous slot.  ker is taken after passing to cokernels, im is
    span(in_cols) + span(mid_rel).
    """
    if base == QQ:
        if out_map is None or not out_map.cols:
            dim_z = ngens
        else:
            combined = list(out_map.cols)
            out_rel_rank = 0
            if out_rel is not None and out_rel.cols:
                combined = combined + list(out_rel.cols)
                out_rel_rank = frac_cols_rank(out_rel.cols)
            dim_z = ngens - (frac_cols_rank(combined) - out_rel_rank)
        rel_cols = []
        if mid_rel is not None:
            rel_cols.extend(mid_rel.cols)
        if in_cols is not None:
            rel_cols.extend(in_cols.cols)
        return dim_z - frac_cols_rank(rel_cols), ()

    rel_targets = []
    if mid_rel is not None:
        rel_targets.extend(_scalar_columns(mid_rel))
    if in_cols is not None:
        rel_targets.extend(_scalar_columns(in_cols))
    if out_map is None or not any(out_map.cols):
        if not rel_targets:
            return ngens, ()
        pres = ScalarMatrix.from_columns(ngens, rel_targets)
        return cokernel_invariants(pres, base)
    stack_cols = _scalar_columns(out_map)
    if out_rel is not None and out_rel.cols:
        stack_cols = stack_cols + _scalar_columns(out_rel)
    stacked = ScalarMatrix.from_columns(out_map.nrows, stack_cols)
    zgens = []
    for vec in kernel_basis(stacked):
        z = vec[:ngens]
        if any(not e.is_zero() for e in z):
            zgens.append(z)
    if not zgens:
        return 0, ()
    zmat = ScalarMatrix.from_columns(ngens, zgens)
    relation_cols = [list(c) for c in kernel_basis(zmat)]
    if rel_targets:
        solved = solve_in_span(zmat, rel_targets)
        for sol in solved:
            if sol is None:
                raise KernelError("relations fall outside the kernel span")
            relation_cols.append(sol)
    pres = ScalarMatrix.from_columns(len(zgens), relation_cols)
    return cokernel_invariants(pres, base)


def complex_cohomology_degreewise(slots, maps, spot: int, base: str):
    """(rank, factors) of ker/im at slots[spot] for presented A-modules.

    slots are presentation matrices (rows = generators), maps[i] is the
    generator-level matrix of slots[i] -> slots[i+1].  Raises "not a
    complex" when consecutive maps fail to compose to zero modulo the
    target presentation.
    """
    if not 0 <= spot < len(slots):
        raise KernelError("spot outside the complex")
    if len(maps) != max(0, len(slots) - 1):
        raise KernelError("need one map per consecutive slot pair")
    for i in range(len(maps) - 1):
        composite = maps[i + 1].mul(maps[i])
        target_rel = slots[i + 2]
        if not _columns_in_span(composite, target_rel, base):
            raise KernelError("not a complex")
    ngens = slots[spot].nrows
    in_cols = _to_piece(maps[spot - 1], base) if spot > 0 else None
    mid_rel = _to_piece(slots[spot], base)
    out_map = _to_piece(maps[spot], base) if spot < len(maps) else None
    out_rel = _to_piece(slots[spot + 1], base) if spot + 1 < len(slots) else None
    rank, torsion = cohomology_invariants(in_cols, mid_rel, out_map, out_rel,
                                          base, ngens)
    return rank, list(torsion)


def _to_piece(mat: ScalarMatrix | None, base: str) -> PieceMatrix | None:
    if mat is None:
        return None
    cols = []
    for j in range(mat.ncols):
        col = {}
        for i in range(mat.nrows):
            e = mat.rows[i][j]
            if not e.is_zero():
                col[i] = e.as_fraction() if base == QQ else e
        cols.append(col)
    return PieceMatrix(mat.nrows, cols, base)


def _columns_in_span(mat: ScalarMatrix, span: ScalarMatrix, base: str) -> bool:
    if mat.is_zero():
        return True
    sols = solve_in_span(span, mat.columns())
    return all(sol is not None for sol in sols)


def ext_module(M: ModulePresentation, j: int, maxlen: int | None = None) -> ModulePresentation:
    """Ext^j_R(M, R) presented as a module: cohomology of the dualized resolution."""
    ring = M.ring
    if maxlen is None:
        maxlen = ring.n + 2
    if not 0 <= j <= maxlen - 1:
        raise KernelError("ext index %d outside 0..%d" % (j, maxlen - 1))
    key = ("ext", j, maxlen)
    cached = M._cache.get(key)
    if cached is not None:
        return cached
    dual = _dual_resolution(M, maxlen)
    rank, twists = dual.slot(j)
    if rank == 0:
        result = ModulePresentation.zero(ring)
    else:
        out_cols = dual.map_from(j)
        if out_cols is None:
            ker_gens = [Element.unit(ring, c, rank) for c in range(rank)]
        else:
            from .groebner import SubmoduleOps
            next_rank, next_twists = dual.slot(j + 1)
            if next_rank == 0 or all(not c for c in out_cols):
                ker_gens = [Element.unit(ring, c, rank) for c in range(rank)]
            else:
                ker_gens = SubmoduleOps(out_cols, ring, next_rank).syzygies()
        im_cols = dual.map_into(j) or []
        result = subquotient_presentation(ker_gens, im_cols, ring, rank, twists)
    M._cache[key] = result
    return result


def _dual_resolution(M: ModulePresentation, maxlen: int) -> ChainComplex:
    key = ("dual_resolution", maxlen)
    cached = M._cache.get(key)
    if cached is None:
        cached = dualize_complex(free_resolution(M, maxlen))
        M._cache[key] = cached
    return cached


def ext_data(M: ModulePresentation, j: int, window, maxlen=None) -> GradedAModuleData:
    return module_data(ext_module(M, j, maxlen), window)
