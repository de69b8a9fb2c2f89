"""Execute parsed sessions: dispatch commands, emit one report per command.

Reports are plain dicts (one JSON object per line on stdout); a short
human-readable summary line per command goes to stderr.  Exit codes:
0 success, 1 usage/parse error (raised before running), 2 kernel error,
3 theorem-contradicting result under strict mode.

A violation is a result that contradicts one of the verified statements:
a duality rank mismatch, a base-change mismatch at a point where the
witness does not vanish, disagreement of the two local cohomology routes
on a stable instance, or a dualized sequence losing exactness although the
freeness hypothesis held.  Violations are report content by default and
hard failures only under strict mode.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .basechange import base_change_check, find_witness
from .duality import ShortExactSequence, dual_exactness_check, duality_check
from .elements import Element
from .homology import ext_data, ext_module
from .localcoh import (DEFAULT_STREAK, DEFAULT_TMAX, DEFAULT_WINDOW,
                       local_cohomology, local_cohomology_extlim)
from .modules import ModulePresentation
from .rings import KernelError
from .session import (BasechangeCmd, BaseRingDecl, DualexactCmd, DualityCmd,
                      ExtCmd, LocalcohCmd, ModuleDecl, PolyRingDecl, Session,
                      WitnessCmd)


class RunOptions:
    __slots__ = ("window", "t_max", "streak", "strict", "threads")

    def __init__(self, window=DEFAULT_WINDOW, t_max=DEFAULT_TMAX,
                 streak=DEFAULT_STREAK, strict=False, threads=1):
        self.window = tuple(window)
        self.t_max = t_max
        self.streak = streak
        self.strict = strict
        self.threads = max(1, threads)


class RunResult:
    __slots__ = ("reports", "summary", "exit_code")

    def __init__(self, reports, summary, exit_code):
        self.reports = reports
        self.summary = summary
        self.exit_code = exit_code


def columns_from_rows(ring, rows, rank):
    """Relation/map columns from a row-major matrix literal."""
    if not rows:
        return []
    ncols = len(rows[0])
    cols = []
    for j in range(ncols):
        terms = {}
        for i in range(rank):
            entry = rows[i][j]
            for (_, mono), coeff in entry.terms.items():
                key = (i, mono)
                acc = terms.get(key, 0) + coeff
                if acc:
                    terms[key] = acc
                else:
                    del terms[key]
        cols.append(Element(ring, rank, terms))
    return cols


def build_modules(session: Session):
    modules = {}
    for name, (rows, twists) in session.modules.items():
        rank = len(rows)
        cols = columns_from_rows(session.ring, rows, rank)
        modules[name] = ModulePresentation(session.ring, rank, twists, cols)
    return modules


def run_session(session: Session, options: RunOptions | None = None) -> RunResult:
    options = options or RunOptions()
    modules = build_modules(session)
    commands = [
        s for s in session.statements
        if not isinstance(s, (BaseRingDecl, PolyRingDecl, ModuleDecl))
    ]
    if options.threads > 1:
        with ThreadPoolExecutor(max_workers=options.threads) as pool:
            reports = list(pool.map(
                lambda cmd: _run_command(cmd, modules, options), commands))
    else:
        reports = [_run_command(cmd, modules, options) for cmd in commands]
    summary = []
    errors = 0
    violations = 0
    for report in reports:
        if report["status"] == "error":
            errors += 1
            summary.append("error %-10s %s: %s" % (
                report["command"], report.get("target"), report["error"]))
        else:
            flag = " VIOLATION" if report.get("violation") else ""
            summary.append("ok    %-10s %s%s" % (
                report["command"], report.get("target"), flag))
            if report.get("violation"):
                violations += 1
    summary.append("%d command(s), %d error(s), %d violation(s)"
                   % (len(reports), errors, violations))
    if errors:
        exit_code = 2
    elif violations and options.strict:
        exit_code = 3
    else:
        exit_code = 0
    return RunResult(reports, summary, exit_code)


def _run_command(cmd, modules, options: RunOptions):
    try:
        return _dispatch(cmd, modules, options)
    except KernelError as exc:
        return {
            "command": _command_name(cmd),
            "target": getattr(cmd, "target", None),
            "status": "error",
            "error": str(exc),
        }


def _command_name(cmd) -> str:
    return {
        LocalcohCmd: "localcoh",
        ExtCmd: "ext",
        DualityCmd: "duality",
        BasechangeCmd: "basechange",
        DualexactCmd: "dualexact",
        WitnessCmd: "witness",
    }[type(cmd)]


def _dispatch(cmd, modules, options: RunOptions):
    if isinstance(cmd, LocalcohCmd):
        return _run_localcoh(cmd, modules, options)
    if isinstance(cmd, ExtCmd):
        return _run_ext(cmd, modules, options)
    if isinstance(cmd, DualityCmd):
        return _run_duality(cmd, modules, options)
    if isinstance(cmd, BasechangeCmd):
        return _run_basechange(cmd, modules, options)
    if isinstance(cmd, DualexactCmd):
        return _run_dualexact(cmd, modules, options)
    if isinstance(cmd, WitnessCmd):
        return _run_witness(cmd, modules, options)
    raise KernelError("unhandled command")


def _run_localcoh(cmd: LocalcohCmd, modules, options):
    M = modules[cmd.target]
    window = cmd.window or options.window
    lo, hi = cmd.i_range
    pieces = []
    oracle_info = None
    violation = False
    for i in range(lo, hi + 1):
        data = local_cohomology(M, i, window)
        pieces.extend(data.to_json(i=i))
        if cmd.oracle:
            oracle = local_cohomology_extlim(M, i, window,
                                             options.t_max, options.streak)
            agrees = oracle.same_pieces(data)
            entry = {
                "i": i,
                "stability": "stable" if oracle.stable else "unstable",
                "agrees": agrees,
                "pieces": oracle.to_json(i=i),
            }
            if oracle.stable and not agrees:
                violation = True
            oracle_info = (oracle_info or []) + [entry]
    report = {
        "command": "localcoh",
        "target": cmd.target,
        "status": "ok",
        "params": {"i": list(cmd.i_range), "window": list(window),
                   "oracle": cmd.oracle},
        "pieces": pieces,
        "violation": violation,
    }
    if oracle_info is not None:
        report["oracle"] = oracle_info
        report["stability"] = (
            "stable" if all(e["stability"] == "stable" for e in oracle_info)
            else "unstable")
    return report


def _run_ext(cmd: ExtCmd, modules, options):
    M = modules[cmd.target]
    window = cmd.window or options.window
    n = M.ring.n
    if not 0 <= cmd.j <= n + 1:
        raise KernelError("ext index %d outside 0..%d" % (cmd.j, n + 1))
    data = ext_data(M, cmd.j, window)
    ext = ext_module(M, cmd.j)
    return {
        "command": "ext",
        "target": cmd.target,
        "status": "ok",
        "params": {"j": cmd.j, "window": list(window)},
        "generators": list(ext.twists),
        "pieces": data.to_json(),
        "violation": False,
    }


def _run_duality(cmd: DualityCmd, modules, options):
    M = modules[cmd.target]
    window = cmd.window or options.window
    report = duality_check(M, window)
    out = report.to_json(target=cmd.target)
    out["violation"] = not report.holds_generically
    return out


def _run_basechange(cmd: BasechangeCmd, modules, options):
    M = modules[cmd.target]
    window = cmd.window or options.window
    n = M.ring.n
    i_range = cmd.i_range or (0, n)
    witness = find_witness(M, window)
    checks = []
    mismatches = []
    violation = False
    for c in cmd.points:
        for i in range(i_range[0], i_range[1] + 1):
            rep = base_change_check(M, i, c, window, witness)
            entry = rep.to_json(target=cmd.target)
            entry.pop("command")
            entry.pop("target")
            entry.pop("status")
            checks.append(entry)
            if rep.mismatches:
                for d in rep.mismatches:
                    mismatches.append({
                        "c": str(c), "i": i, "d": d,
                        "flag": ("expected possible" if rep.expected_possible
                                 else "violates base change"),
                    })
                if rep.violation:
                    violation = True
    return {
        "command": "basechange",
        "target": cmd.target,
        "status": "ok",
        "params": {"at": [str(c) for c in cmd.points],
                   "i": list(i_range), "window": list(window)},
        "witness": str(witness.g),
        "checks": checks,
        "mismatches": mismatches,
        "violation": violation,
    }


def _run_dualexact(cmd: DualexactCmd, modules, options):
    M1, M2, M3 = modules[cmd.first], modules[cmd.second], modules[cmd.third]
    window = cmd.window or options.window
    ring = M1.ring
    if len(cmd.f_rows) != M2.rank or (cmd.f_rows and len(cmd.f_rows[0]) != M1.rank):
        raise KernelError("f must be a %d x %d matrix" % (M2.rank, M1.rank))
    if len(cmd.g_rows) != M3.rank or (cmd.g_rows and len(cmd.g_rows[0]) != M2.rank):
        raise KernelError("g must be a %d x %d matrix" % (M3.rank, M2.rank))
    f_cols = columns_from_rows(ring, cmd.f_rows, M2.rank)
    g_cols = columns_from_rows(ring, cmd.g_rows, M3.rank)
    seq = ShortExactSequence(M1, M2, M3, f_cols, g_cols)
    report = dual_exactness_check(seq, window)
    out = report.to_json(targets=[cmd.first, cmd.second, cmd.third])
    out["target"] = "%s,%s,%s" % (cmd.first, cmd.second, cmd.third)
    out["violation"] = report.hypothesis_held and not report.dual_exact
    return out


def _run_witness(cmd: WitnessCmd, modules, options):
    M = modules[cmd.target]
    window = cmd.window or options.window
    witness = find_witness(M, window)
    out = witness.to_json(target=cmd.target)
    out["params"] = {"window": list(window)}
    out["violation"] = False
    return out
