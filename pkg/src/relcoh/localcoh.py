"""Local cohomology at the ideal of the x variables, two independent routes.

Primary route: H^i_I(M) is the homology of F . tensor E at slot n - i,
where F is a free resolution of M and E the inverse-monomial module (the
stable Koszul complex of the x variables is a flat resolution of E, which
turns the usual Cech computation into Tor against E).  The degree-d slice
of R(-a) tensor E is spanned by inverse monomials of degree d - a, so
every slice is a finite A-module and the whole computation is exact
degreewise linear algebra.

Oracle route: Ext^i_R(R/I^s, M) for s = 1..t_max; the direct system of
these Ext modules has H^i_I(M) as its colimit, and on a fixed degree
window the per-degree data stabilizes for s large.  The oracle reports the
data at the largest s together with a stability flag (the last `streak`
values of s agreeing on the window); the two routes are compared wherever
the oracle reports stable.
"""

from __future__ import annotations

from .elements import Element
from .homology import (GradedAModuleData, cohomology_invariants,
                       free_map_piece, free_piece_basis, presentation_piece,
                       window_range)
from .inversemod import inverse_monomials
from .linalg import PieceMatrix
from .modules import ModulePresentation, free_resolution
from .rings import QQ, KernelError, Ring
from .scalars import Scalar

DEFAULT_WINDOW = (-12, 4)
DEFAULT_TMAX = 6
DEFAULT_STREAK = 2


def tensor_piece_basis(ring: Ring, slot, d: int):
    """Basis of the degree-d slice of (free slot) tensor E."""
    rank, twists = slot
    basis = []
    for b in range(rank):
        for alpha in inverse_monomials(ring.n, d - twists[b]):
            basis.append((b, alpha))
    return basis


def tensor_map_piece(ring: Ring, cols, src_slot, tgt_slot, d: int) -> PieceMatrix:
    """Matrix of (map tensor E) on the degree-d slices."""
    tgt_basis = tensor_piece_basis(ring, tgt_slot, d)
    row_index = {key: i for i, key in enumerate(tgt_basis)}
    n = ring.n
    rational = ring.base == QQ
    src_rank, src_twists = src_slot
    out_cols = []
    for j in range(src_rank):
        col_el = cols[j]
        terms = list(col_el.terms.items())
        for alpha in inverse_monomials(n, d - src_twists[j]):
            col = {}
            for (comp, mono), frac in terms:
                beta = tuple(a + s for a, s in zip(alpha, mono[:n]))
                if any(bb > -1 for bb in beta):
                    continue
                idx = row_index[(comp, beta)]
                if rational:
                    acc = col.get(idx, 0) + frac
                    if acc:
                        col[idx] = acc
                    else:
                        col.pop(idx, None)
                else:
                    add = Scalar.t_power(mono[n], frac)
                    acc = col.get(idx)
                    acc = add if acc is None else acc + add
                    if acc.is_zero():
                        col.pop(idx, None)
                    else:
                        col[idx] = acc
            out_cols.append(col)
    return PieceMatrix(len(tgt_basis), out_cols, ring.base)


def _tensor_rank(M: ModulePresentation, res, k: int, d: int):
    """Rank of (d_k tensor E) in degree d, memoized (QQ fast path)."""
    key = ("lc_rank", k, d)
    cached = M._cache.get(key)
    if cached is None:
        cols = res.map_from(k)
        if cols is None or not cols:
            cached = 0
        else:
            pm = tensor_map_piece(M.ring, cols, res.slot(k), res.slot(k - 1), d)
            cached = pm.rank()
        M._cache[key] = cached
    return cached


def local_cohomology(M: ModulePresentation, i: int, window=DEFAULT_WINDOW,
                     maxlen=None) -> GradedAModuleData:
    """H^i_I(M) per degree on the window, via the resolution tensor E."""
    ring = M.ring
    n = ring.n
    if not 0 <= i <= n:
        raise KernelError("cohomological index %d outside 0..%d" % (i, n))
    if maxlen is None:
        maxlen = n + 2
    res = free_resolution(M, maxlen)
    k = n - i
    pieces = {}
    for d in window_range(window):
        key = ("lc", i, d)
        cached = M._cache.get(key)
        if cached is None:
            dim_mid = len(tensor_piece_basis(ring, res.slot(k), d))
            if dim_mid == 0:
                cached = (0, ())
            elif ring.base == QQ:
                rank_out = _tensor_rank(M, res, k, d) if k >= 1 else 0
                rank_in = _tensor_rank(M, res, k + 1, d)
                cached = (dim_mid - rank_out - rank_in, ())
            else:
                out_cols = res.map_from(k) if k >= 1 else None
                out_pm = None
                if out_cols:
                    out_pm = tensor_map_piece(ring, out_cols, res.slot(k),
                                              res.slot(k - 1), d)
                in_cols = res.map_from(k + 1)
                in_pm = None
                if in_cols:
                    in_pm = tensor_map_piece(ring, in_cols, res.slot(k + 1),
                                             res.slot(k), d)
                cached = cohomology_invariants(in_pm, None, out_pm, None,
                                               ring.base, dim_mid)
            M._cache[key] = cached
        pieces[d] = cached
    return GradedAModuleData(window, pieces)


def local_cohomology_data(M, window=DEFAULT_WINDOW, i_range=None, maxlen=None):
    """Convenience: {i: GradedAModuleData} over a range of indices."""
    n = M.ring.n
    if i_range is None:
        i_range = range(0, n + 1)
    return {i: local_cohomology(M, i, window, maxlen) for i in i_range}


_POWER_CACHE = {}


def power_ideal_module(ring: Ring, s: int) -> ModulePresentation:
    """R/I^s presented by the degree-s monomial generators of I^s."""
    key = (ring.base, ring.xvars, s)
    cached = _POWER_CACHE.get(key)
    if cached is None:
        gens = [Element.poly(ring, {m: 1}) for m in ring.x_monomials(s)]
        cached = ModulePresentation(ring, 1, (0,), gens)
        _POWER_CACHE[key] = cached
    return cached


def _hom_fake_slot(M: ModulePresentation, g_slot):
    """Hom(G_k, M) generator bookkeeping as a fake twisted free module.

    Generator (b, r) stands for (the image in M of) generator r of M's
    ambient placed in the b-th Hom coordinate; its degree is
    M.twists[r] - v_b, so the degree-d slice matches sum_b M_(d + v_b).
    """
    g_rank, g_twists = g_slot
    twists = []
    for b in range(g_rank):
        for r in range(M.rank):
            twists.append(M.twists[r] - g_twists[b])
    return (g_rank * M.rank, tuple(twists))


def _hom_map_columns(M: ModulePresentation, diff_cols, src_g_slot, tgt_g_slot):
    """Generator-level columns of Hom(G_src, M) -> Hom(G_tgt, M).

    diff_cols is the resolution differential G_tgt -> G_src (columns over
    G_tgt generators, entries in the G_src ambient); precomposition sends
    Hom coordinate a to sum_b N[a][b] e_(b, r) across target coordinates b.
    """
    ring = M.ring
    src_rank = src_g_slot[0]
    tgt_rank = tgt_g_slot[0]
    mrank = M.rank
    fake_tgt_rank = tgt_rank * mrank
    cols = []
    for a in range(src_rank):
        entry_polys = [col.component(a) for col in diff_cols]
        for r in range(mrank):
            terms = {}
            for b in range(tgt_rank):
                for (_, mono), frac in entry_polys[b].terms.items():
                    key = (b * mrank + r, mono)
                    acc = terms.get(key, 0) + frac
                    if acc:
                        terms[key] = acc
                    else:
                        terms.pop(key, None)
            cols.append(Element(ring, fake_tgt_rank, terms))
    return cols


def _hom_block_relations(M: ModulePresentation, g_slot, d: int) -> PieceMatrix:
    """Block-diagonal relations of sum_b M_(d + v_b) in fake-slot row order."""
    ring = M.ring
    g_rank, g_twists = g_slot
    cols = []
    offset = 0
    total_rows = 0
    blocks = []
    for b in range(g_rank):
        pm = presentation_piece(M, d + g_twists[b])
        blocks.append((offset, pm))
        offset += pm.nrows
        total_rows += pm.nrows
    for off, pm in blocks:
        for col in pm.cols:
            cols.append({off + idx: v for idx, v in col.items()})
    return PieceMatrix(total_rows, cols, ring.base)


def ext_against_power(M: ModulePresentation, i: int, s: int, window):
    """Per-degree data of Ext^i_R(R/I^s, M) on the window."""
    ring = M.ring
    n = ring.n
    res = free_resolution(power_ideal_module(ring, s), n + 2)
    if res.index_of_label(i) is None or res.slot(i)[0] == 0:
        return {d: (0, ()) for d in window_range(window)}
    slot_i = res.slot(i)
    fake_mid = _hom_fake_slot(M, slot_i)
    in_cols = out_cols = None
    fake_prev = fake_next = None
    if i >= 1 and res.slot(i - 1)[0] > 0:
        fake_prev = _hom_fake_slot(M, res.slot(i - 1))
        in_cols = _hom_map_columns(M, res.map_from(i), res.slot(i - 1), slot_i)
    next_cols = res.map_from(i + 1)
    has_next = next_cols is not None and res.slot(i + 1)[0] > 0
    if has_next:
        fake_next = _hom_fake_slot(M, res.slot(i + 1))
        out_cols = _hom_map_columns(M, next_cols, slot_i, res.slot(i + 1))
    out = {}
    for d in window_range(window):
        ngens = len(free_piece_basis(ring, fake_mid, d))
        if ngens == 0:
            out[d] = (0, ())
            continue
        mid_rel = _hom_block_relations(M, slot_i, d)
        in_pm = None
        if in_cols is not None:
            in_pm = free_map_piece(ring, in_cols, fake_prev, fake_mid, d)
        out_pm = out_rel = None
        if out_cols is not None:
            out_pm = free_map_piece(ring, out_cols, fake_mid, fake_next, d)
            out_rel = _hom_block_relations(M, res.slot(i + 1), d)
        out[d] = cohomology_invariants(in_pm, mid_rel, out_pm, out_rel,
                                       ring.base, ngens)
    return out


def local_cohomology_extlim(M: ModulePresentation, i: int, window=DEFAULT_WINDOW,
                            t_max: int = DEFAULT_TMAX,
                            streak: int = DEFAULT_STREAK) -> GradedAModuleData:
    """Oracle route: colimit of Ext^i(R/I^s, M), with a stability flag."""
    if t_max < 2:
        raise KernelError("t_max must be at least 2")
    n = M.ring.n
    if not 0 <= i <= n:
        raise KernelError("cohomological index %d outside 0..%d" % (i, n))
    history = [ext_against_power(M, i, s, window) for s in range(1, t_max + 1)]
    last = history[-1]
    streak = max(2, streak)
    tail = history[-streak:]
    stable = all(h == last for h in tail)
    return GradedAModuleData(window, last, stable=stable)
