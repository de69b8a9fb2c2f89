"""Continuous A-linear duals of graded pieces and the duality verifier.

The dual functor used throughout sends a finitely generated graded module
N to colim_t Hom_A(N / I^t N, A).  On a fixed degree window the colimit is
attained exactly: the degree e slice of N / I^t N equals the slice of N
once t exceeds e minus the minimal generator degree, so the degree-d piece
of the dual is Hom_A(N_(-d), A).  Torsion of N_(-d) contributes nothing to
a Hom into a domain and is reported separately as dual-killed torsion.

The verifier compares, per index i and degree d, the free rank of
H^i_I(M)_d against the dual of Ext^(n-i)_R(M, R) at degree d + n.  The
shift by n is the graded footprint of the isomorphism E = Hom-cts(R, A):
the pairing matches a degree-d inverse monomial with a functional dual to
a monomial of degree -d - n.  Ranks must agree on the nose; torsion may
appear on either side over QQ[t] and is collected into a candidate
obstruction (its non-vanishing locus is where the comparison can fail).
"""

from __future__ import annotations

from .elements import apply_columns
from .homology import (GradedAModuleData, cohomology_invariants, ext_module,
                       free_map_piece, graded_piece, piece_invariants,
                       presentation_piece, window_range)
from .linalg import PieceMatrix, ScalarMatrix, kernel_basis, solve_in_span
from .localcoh import DEFAULT_WINDOW, local_cohomology
from .modules import ModulePresentation
from .rings import QQ, KernelError
from .scalars import lcm_of


def relative_dual(N: ModulePresentation, window=DEFAULT_WINDOW) -> GradedAModuleData:
    """Degreewise dual data: rank of N_(-d), with dual-killed torsion recorded."""
    pieces = {}
    killed = {}
    for d in window_range(window):
        rank, torsion = piece_invariants(N, -d)
        pieces[d] = (rank, ())
        if torsion:
            killed[d] = tuple(torsion)
    return GradedAModuleData(window, pieces, killed=killed)


class DualityReport:
    __slots__ = ("window", "n", "base", "lhs", "rhs", "mismatches",
                 "torsion_factors", "obstruction")

    def __init__(self, window, n, base, lhs, rhs, mismatches, torsion_factors):
        self.window = window
        self.n = n
        self.base = base
        self.lhs = lhs            # {i: GradedAModuleData}
        self.rhs = rhs            # {i: {d: rank}}
        self.mismatches = mismatches
        self.torsion_factors = torsion_factors  # list of (side, i, d, Scalar)
        self.obstruction = lcm_of(f for _, _, _, f in torsion_factors)

    @property
    def holds_generically(self) -> bool:
        return not self.mismatches

    def to_json(self, target=None):
        pieces = []
        for i in sorted(self.lhs):
            for entry in self.lhs[i].to_json(i=i):
                entry["rhs_rank"] = self.rhs[i][entry["d"]]
                pieces.append(entry)
        return {
            "command": "duality",
            "target": target,
            "status": "ok",
            "params": {"window": list(self.window)},
            "pieces": pieces,
            "mismatches": [
                {"i": i, "d": d, "lhs_rank": a, "rhs_rank": b}
                for i, d, a, b in self.mismatches
            ],
            "torsion": [
                {"side": side, "i": i, "d": d, "factor": str(f)}
                for side, i, d, f in self.torsion_factors
            ],
            "obstruction": str(self.obstruction),
            "verdict": "duality holds generically" if self.holds_generically
                       else "rank mismatch",
        }


def duality_check(M: ModulePresentation, window=DEFAULT_WINDOW,
                  maxlen=None) -> DualityReport:
    """Compare H^i_I(M)_d with the dual of Ext^(n-i)_R(M, R) at d + n."""
    ring = M.ring
    n = ring.n
    lhs = {}
    rhs = {}
    mismatches = []
    torsion_factors = []
    for i in range(n + 1):
        lhs[i] = local_cohomology(M, i, window, maxlen)
        ext = ext_module(M, n - i, maxlen)
        rhs_i = {}
        for d in window_range(window):
            rank, killed = piece_invariants(ext, -(d + n))
            rhs_i[d] = rank
            lhs_rank = lhs[i].rank(d)
            if lhs_rank != rank:
                mismatches.append((i, d, lhs_rank, rank))
            for f in lhs[i].torsion(d):
                torsion_factors.append(("cohomology", i, d, f))
            for f in killed:
                torsion_factors.append(("dual", i, d, f))
        rhs[i] = rhs_i
    return DualityReport(window, n, ring.base, lhs, rhs, mismatches,
                         torsion_factors)


class ShortExactSequence:
    """M1 -> M2 -> M3 with maps given on generators (columns in ambients)."""

    __slots__ = ("M1", "M2", "M3", "f_cols", "g_cols")

    def __init__(self, M1, M2, M3, f_cols, g_cols):
        if not (M1.ring == M2.ring == M3.ring):
            raise KernelError("modules over different rings")
        if len(f_cols) != M1.rank or len(g_cols) != M2.rank:
            raise KernelError("map column counts must match source ranks")
        for j, col in enumerate(f_cols):
            if col.rank != M2.rank:
                raise KernelError("f column in the wrong ambient")
            deg = col.xdegree(M2.twists)
            if deg is not None and deg != M1.twists[j]:
                raise KernelError("f is not degree preserving")
        for j, col in enumerate(g_cols):
            if col.rank != M3.rank:
                raise KernelError("g column in the wrong ambient")
            deg = col.xdegree(M3.twists)
            if deg is not None and deg != M2.twists[j]:
                raise KernelError("g is not degree preserving")
        self.M1, self.M2, self.M3 = M1, M2, M3
        self.f_cols = list(f_cols)
        self.g_cols = list(g_cols)


def _check_exact_sequence(seq: ShortExactSequence, window):
    ring = seq.M1.ring
    base = ring.base
    m1, m2, m3 = seq.M1, seq.M2, seq.M3
    span3 = m3.span_ops()
    for col in seq.f_cols:
        composite = apply_columns(seq.g_cols, col, m3.rank, ring)
        if composite and not span3.contains(composite):
            raise KernelError("not a short exact sequence")
    for d in window_range(window):
        p1 = presentation_piece(m1, d)
        p2 = presentation_piece(m2, d)
        p3 = presentation_piece(m3, d)
        f_pm = free_map_piece(ring, seq.f_cols, (m1.rank, m1.twists),
                              (m2.rank, m2.twists), d)
        g_pm = free_map_piece(ring, seq.g_cols, (m2.rank, m2.twists),
                              (m3.rank, m3.twists), d)
        left = cohomology_invariants(None, p1, f_pm, p2, base, p1.nrows)
        mid = cohomology_invariants(f_pm, p2, g_pm, p3, base, p2.nrows)
        right = cohomology_invariants(g_pm, p3, None, None, base, p3.nrows)
        if any(r != 0 or t for r, t in (left, mid, right)):
            raise KernelError("not a short exact sequence")


def dual_exactness_check(seq: ShortExactSequence, window=DEFAULT_WINDOW):
    """Dualize a short exact sequence degreewise and test exactness.

    The input is verified to be degreewise exact on the window first.  The
    output records, per degree, whether the freeness hypothesis on the
    third term held and whether the dualized sequence was exact; a failed
    hypothesis with lost surjectivity is a finding, not an error.
    """
    _check_exact_sequence(seq, window)
    ring = seq.M1.ring
    base = ring.base
    per_degree = {}
    for d in window_range(window):
        e = -d
        hyp = not piece_invariants(seq.M3, e)[1]
        k1 = _kernel_matrix(seq.M1, e)
        k2 = _kernel_matrix(seq.M2, e)
        k3 = _kernel_matrix(seq.M3, e)
        b2 = _dual_map_matrix(seq.M2, seq.M3, seq.g_cols, e, k3, k2)
        b1 = _dual_map_matrix(seq.M1, seq.M2, seq.f_cols, e, k2, k1)
        left_ok = len(kernel_basis(b2)) == 0 if b2.ncols else True
        mid_rank, mid_tors = cohomology_invariants(
            _pm(b2, base), None, _pm(b1, base), None, base, b1.ncols)
        middle_ok = mid_rank == 0 and not mid_tors
        right_rank, right_tors = cohomology_invariants(
            _pm(b1, base), None, None, None, base, b1.nrows)
        right_ok = right_rank == 0 and not right_tors
        per_degree[d] = {
            "hypothesis_free": hyp,
            "left_exact": left_ok,
            "middle_exact": middle_ok,
            "right_exact": right_ok,
        }
    return DualExactReport(window, per_degree)


def _kernel_matrix(M: ModulePresentation, e: int) -> ScalarMatrix:
    """Columns: an A-basis of Hom_A(M_e, A) inside the ambient dual slice."""
    key = ("dual_basis", e)
    cached = M._cache.get(key)
    if cached is None:
        pres = graded_piece(M, e)
        if pres.nrows == 0:
            cached = ScalarMatrix(0, 0)
        elif pres.ncols == 0:
            cached = ScalarMatrix.identity(pres.nrows)
        else:
            cached = ScalarMatrix.from_columns(pres.nrows,
                                               kernel_basis(pres.transpose()))
        M._cache[key] = cached
    return cached


def _dual_map_matrix(Msrc, Mtgt, cols, e, k_tgt, k_src) -> ScalarMatrix:
    """Matrix of the dual of (Msrc_e -> Mtgt_e) from basis k_tgt to k_src.

    The original piece map u acts on ambient generator coordinates; its
    dual is precomposition, i.e. u^T on functional coordinates, solved
    into the kernel basis of the source's transposed presentation.
    """
    ring = Msrc.ring
    if k_tgt.ncols == 0 or k_src.nrows == 0:
        return ScalarMatrix(k_src.ncols, k_tgt.ncols)
    u = free_map_piece(ring, cols, (Msrc.rank, Msrc.twists),
                       (Mtgt.rank, Mtgt.twists), e).to_scalar_matrix()
    targets = u.transpose().mul(k_tgt).columns()
    sols = solve_in_span(k_src, targets)
    out = []
    for sol in sols:
        if sol is None:
            raise KernelError("dual functional escaped the kernel basis")
        out.append(sol)
    return ScalarMatrix.from_columns(k_src.ncols, out)


def _pm(mat: ScalarMatrix, base: str) -> PieceMatrix:
    cols = []
    for j in range(mat.ncols):
        col = {}
        for i in range(mat.nrows):
            v = mat.rows[i][j]
            if not v.is_zero():
                col[i] = v.as_fraction() if base == QQ else v
        cols.append(col)
    return PieceMatrix(mat.nrows, cols, base)


class DualExactReport:
    __slots__ = ("window", "per_degree")

    def __init__(self, window, per_degree):
        self.window = window
        self.per_degree = per_degree

    @property
    def hypothesis_held(self) -> bool:
        return all(v["hypothesis_free"] for v in self.per_degree.values())

    @property
    def dual_exact(self) -> bool:
        return all(
            v["left_exact"] and v["middle_exact"] and v["right_exact"]
            for v in self.per_degree.values()
        )

    def to_json(self, targets=None):
        return {
            "command": "dualexact",
            "target": targets,
            "status": "ok",
            "params": {"window": list(self.window)},
            "degrees": [
                {"d": d, **{k: bool(v) for k, v in flags.items()}}
                for d, flags in sorted(self.per_degree.items())
            ],
            "hypothesis_held": self.hypothesis_held,
            "dual_exact": self.dual_exact,
        }
