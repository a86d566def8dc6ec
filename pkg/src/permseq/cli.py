"""``permseq`` command line.

Exit codes: 0 success (or a cycle for ``run``), 1 failed check or
validation, 2 escaped, 3 step limit, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from decimal import Decimal, InvalidOperation
from pathlib import Path

import mpmath

from . import _reference as ref
from . import bounds
from .census import CensusSettings, cycle_census, sweep_generalizations
from .dynamics import DEFAULT_ESCAPE, DEFAULT_STEP_LIMIT, Cycle, Escaped, default_m_floor, run_trajectory
from .numerics import max_partial_quotient
from .perm import (
    ParameterError,
    PermSpec,
    count_generalizations,
    generalization_order,
    generalize,
    iter_generalizations,
    make_fafc,
    make_pabcd,
    verify_bijection,
)
from .primes import PrimeCompositePerm

EXIT_OK, EXIT_FAIL, EXIT_ESCAPED, EXIT_STEP_LIMIT, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class SelectorError(UsageError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}:\n  {text}\n  {' ' * pos}^")
        self.pos = pos


# --------------------------------------------------------------------------
# argument parsing helpers


def parse_int(text: str) -> int:
    """Integer that may be written in scientific notation (``1e8``)."""
    try:
        val = Decimal(text.strip().replace("_", ""))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if val != val.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(val)


def parse_int_list(text: str, geometric: bool = False) -> list[int]:
    """``1..5,10,20`` style lists; with ``geometric`` a range steps by factors of 10."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = (parse_int(p) for p in part.split("..", 1))
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            if geometric:
                if lo < 1:
                    raise argparse.ArgumentTypeError("geometric ranges start at 1 or more")
                x = lo
                while x <= hi:
                    out.append(x)
                    x *= 10
            else:
                out.extend(range(lo, hi + 1))
        else:
            out.append(parse_int(part))
    return out


def parse_m_floor(text: str):
    """An integer, ``none`` (no maxima requirement) or ``auto`` (per-permutation default)."""
    low = text.lower()
    if low == "auto":
        return "auto"
    return None if low in ("none", "off", "-1") else parse_int(text)


def _ints(text: str, start: int, count: int, end=None) -> list[int]:
    vals, pos = [], start
    for tok in text[start:end].split(","):
        try:
            vals.append(int(tok))
        except ValueError:
            raise SelectorError(text, pos, f"expected an integer, got {tok!r}") from None
        pos += len(tok) + 1
    if len(vals) != count:
        raise SelectorError(text, start, f"expected {count} comma-separated integers, got {len(vals)}")
    return vals


def parse_selector(text: str):
    """Turn a ``--perm`` value into a permutation object."""
    kind, sep, rest = text.partition(":")
    if kind == "primecomp" and not sep:
        return PrimeCompositePerm()
    if not sep:
        raise SelectorError(text, len(kind), "expected ':' after the selector kind")
    start = len(kind) + 1
    if kind == "file":
        try:
            return PermSpec.from_json(Path(rest).read_text())
        except OSError as exc:
            raise SelectorError(text, start, f"cannot read file ({exc.strerror})") from None
        except (ValueError, KeyError, TypeError) as exc:
            raise SelectorError(text, start, f"bad permutation file ({exc})") from None
    if kind == "fafc":
        try:
            return make_fafc(*_ints(text, start, 6))
        except ParameterError as exc:
            raise SelectorError(text, start, str(exc)) from None
    if kind != "pabcd":
        raise SelectorError(text, 0, f"unknown selector kind {kind!r}")
    body, slash, gen = rest.partition("/")
    try:
        spec = make_pabcd(*_ints(text, start, 4, start + len(body)))
    except ParameterError as exc:
        raise SelectorError(text, start, str(exc)) from None
    if not slash:
        return spec
    gpos = start + len(body) + 1
    mode, colon, rank_txt = gen.partition(":")
    modes = {"simple": "simple", "ext": "extended", "extended": "extended"}
    if mode not in modes or not colon:
        raise SelectorError(text, gpos, "expected 'simple:RANK' or 'ext:RANK'")
    try:
        rank = int(rank_txt)
    except ValueError:
        raise SelectorError(text, gpos + len(mode) + 1, f"bad rank {rank_txt!r}") from None
    mode = modes[mode]
    n = len(spec.rules) - 1
    lo = 1 if mode == "simple" else 0
    hi = count_generalizations(n, mode) - (0 if mode == "simple" else 1)
    if not lo <= rank <= hi:
        raise SelectorError(text, gpos + len(gen.partition(":")[0]) + 1, f"rank must lie in {lo}..{hi}")
    return generalize(spec, generalization_order(n, mode, rank), mode)


def _perm(args):
    p = parse_selector(args.perm)
    return p.inverse() if getattr(args, "inverse", False) else p


def _escape(args, perm) -> int:
    if args.escape is not None:
        return args.escape
    return getattr(perm, "default_escape", DEFAULT_ESCAPE)


def _m_floor(args, perm):
    return default_m_floor(perm) if args.m_floor == "auto" else args.m_floor


# --------------------------------------------------------------------------
# output helpers


def emit(rows: list[dict], fmt: str, out, title: str = ""):
    if fmt == "json":
        json.dump({"title": title, "rows": rows} if title else rows, out, indent=2, default=str)
        out.write("\n")
        return
    if not rows:
        out.write("(no rows)\n")
        return
    cols = list(rows[0])
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([r[c] for c in cols])
        return
    if title:
        out.write(f"# {title}\n")
    cells = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out.write("  ".join(c.rjust(w) for c, w in zip(cols, widths)) + "\n")
    for row in cells:
        out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)) + "\n")


def fmt_real(x, digits: int = 8) -> str:
    return mpmath.nstr(x, digits, min_fixed=-4, max_fixed=9)


# --------------------------------------------------------------------------
# run / census / sweep / perm


def cmd_run(args) -> int:
    perm = _perm(args)
    out = run_trajectory(perm, args.x0, _escape(args, perm), _m_floor(args, perm), args.step_limit)
    if isinstance(out, Cycle):
        rec = out.record
        doc = {"outcome": "cycle", **rec.to_dict(with_elements=args.elements)}
        code = EXIT_OK
        text = f"cycle min={rec.min} max={rec.max} length={rec.length} K={rec.K} L={rec.L} m={rec.m}"
        if args.elements:
            text += "\n" + " ".join(map(str, rec.elements))
    elif isinstance(out, Escaped):
        doc = {"outcome": "escaped", "last": out.threshold_crossed, "steps": out.steps_taken,
               "maxima": out.maxima_seen}
        code = EXIT_ESCAPED
        text = f"escaped after {out.steps_taken} steps ({out.maxima_seen} local maxima), reached {out.threshold_crossed}"
    else:
        doc = {"outcome": "step_limit", "steps": out.steps}
        code = EXIT_STEP_LIMIT
        text = f"step limit reached after {out.steps} steps"
    print(json.dumps(doc) if args.json else text)
    return code


def _settings(args, perm) -> CensusSettings:
    return CensusSettings(_escape(args, perm), _m_floor(args, perm), args.step_limit)


def cmd_census(args) -> int:
    perm = _perm(args)
    rep = cycle_census(perm, args.x0, _settings(args, perm), backend=args.backend)
    if args.format == "json":
        text = rep.to_json()
    elif args.format == "csv":
        text = rep.to_csv(skip_trivial=not args.all)
    else:
        buf = io.StringIO()
        rows = [dict(nr=i, x_min=c.min, x_max=c.max, length=c.length, K=c.K, L=c.L, m=c.m)
                for i, c in enumerate(rep.cycles if args.all else rep.nontrivial_cycles(), 1)]
        s = rep.settings
        emit(rows, "text", buf, f"{rep.label}: seeds below {rep.x0}; escape > {s.escape} "
                                f"with m > {s.m_floor}; step limit {s.step_limit}")
        buf.write(f"divergent trajectories (distinct minima): {rep.divergent_min_count}\n")
        buf.write(f"seeds on cycles / divergent / step-limited: {rep.cycle_seed_count} / "
                  f"{rep.divergent_seed_count} / {rep.step_limited_seed_count}\n")
        text = buf.getvalue()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return EXIT_OK


def cmd_sweep(args) -> int:
    base = tuple(parse_int_list(args.base))
    if len(base) != 4:
        raise UsageError("--base takes a,b,c,d")
    spec = make_pabcd(*base)
    settings = CensusSettings(_escape(args, spec), args.m_floor, args.step_limit)
    res = sweep_generalizations(base, args.mode, args.first, args.x0, settings, args.jobs, args.inverse)
    emit([vars(r) for r in res], args.format, sys.stdout,
         f"{args.mode} generalizations of {spec.label}, seeds below {args.x0}")
    return EXIT_OK


def cmd_perm(args) -> int:
    perm = _perm(args)
    if not isinstance(perm, PermSpec):
        raise UsageError("perm subcommands need a residue-class permutation")
    if args.action == "show":
        print(perm)
    elif args.action == "export":
        text = perm.to_json()
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    else:
        rep = verify_bijection(perm)
        for name, cc in (("source", rep.source), ("destination", rep.destination)):
            status = "ok" if cc.valid else f"{cc.problem} at {cc.witness}"
            print(f"{name} classes: density {cc.total}, {status}")
        if not rep.valid:
            return EXIT_FAIL
    return EXIT_OK


# --------------------------------------------------------------------------
# bounds


def _bound_ctx(args) -> bounds.BoundContext:
    perm = _perm(args)
    params = getattr(perm, "params", None)
    if not isinstance(perm, PermSpec) or not params or len(params) != 4 or "/" in perm.label:
        raise UsageError("bounds need a plain pabcd selector")
    a, b, c, d = params
    if b < d:
        print(f"note: analysing P({c},{d},{a},{b}), which has the same trajectories", file=sys.stderr)
        a, b, c, d = c, d, a, b
    return bounds.BoundContext(a, b, c, d, args.x0, args.precision)


def _crossover_rows(ctx, rp, ms):
    rows = []
    for m in ms:
        r = bounds.crossover_tables(ctx, rp, m)
        rows.append(dict(m=m, x3=fmt_real(r.x3), L_le=r.L_max, x1=fmt_real(r.x1), x2=fmt_real(r.x2),
                         L1_ceil=r.L1, L2_floor=r.L2, reduction=r.reduction_constant))
    return rows


def cmd_bounds(args) -> int:
    ctx = None if args.action == "floor" else _bound_ctx(args)
    out = sys.stdout
    if args.action == "table":
        rp = bounds.rhin_params(ctx, args.rhin)
        const, amax = bounds.reduction_constant(ctx, rp, max(20, *args.m))
        if amax != ref.MAX_PARTIAL_QUOTIENT:
            print(f"note: largest partial quotient up to x3 is {amax}, reduction constant {const}", file=sys.stderr)
        emit(_crossover_rows(ctx, rp, args.m), args.format, out,
             f"{_plabel(ctx.params)} X0={ctx.X0} Rhin c_add={rp.c_add:.5f} ({args.rhin}); "
             "x3: Rhin meets m-cycle bound, x1: bound meets alpha/2x, x2: bound meets alpha/((a+2)x)")
    elif args.action == "convergents":
        rows = [dict(n=c.index, a=c.a, K=c.p, L=c.q) for c in ctx.convergents(args.qmax)]
        emit(rows, args.format, out, f"convergents K/L of beta/alpha for {_plabel(ctx.params)}, L <= {args.qmax}")
        print(f"# max partial quotient for L <= {args.qmax}: {max_partial_quotient(ctx.rho, args.qmax)}",
              file=sys.stderr)
    elif args.action == "candidates":
        pairs = bounds.laubl_candidates(ctx, args.lmax)
        rows = [dict(K=k, L=l, lam=fmt_real(bounds.lambda_form(ctx, k, l).value, 6)) for k, l in pairs]
        emit(rows, args.format, out, f"(K,L) passing the L-form bound, X0={ctx.X0}, L <= {args.lmax}")
    elif args.action == "floor":
        perms = [args.perm] if args.perm else ["pabcd:1,3,2,2", "pabcd:2,4,3,3"]
        rows = []
        x0s = args.x0_list or [10 ** k for k in range(3, 11)]
        for x0 in x0s:
            row = {"X0": x0}
            for sel in perms:
                args.perm, args.x0 = sel, x0
                ctx = _bound_ctx(args)
                row[f"L_gt_{_plabel(ctx.params)}"] = bounds.min_cycle_length_lower_bound(ctx)
            rows.append(row)
        emit(rows, args.format, out, "largest convergent denominator q_n certified below L")
    else:
        rp = bounds.rhin_params(ctx, args.rhin)
        cycles = []
        if args.census_x0:
            spec = make_pabcd(*ctx.params)
            settings = CensusSettings(DEFAULT_ESCAPE, default_m_floor(spec), DEFAULT_STEP_LIMIT)
            cycles = cycle_census(spec, args.census_x0, settings).cycles
        for m in args.m:
            rep = bounds.mcycle_exclusion_report(ctx, rp, m, cycles)
            print(rep.conclusion())
    return EXIT_OK


# --------------------------------------------------------------------------
# reference tables


def _plabel(P) -> str:
    return "P(" + ",".join(map(str, P)) + ")"


class _Checker:
    def __init__(self):
        self.failures = []
        self.notes = []

    def expect(self, ok: bool, message: str):
        if not ok:
            self.failures.append(message)

    def erratum(self, key):
        if key in ref.ERRATA:
            value, why = ref.ERRATA[key]
            self.notes.append(f"erratum {key}: {why}")
            return value, True
        return None, False


def _table_floor(args, chk):
    perms = [parse_selector(args.perm).params] if args.perm else [ref.C1322, ref.C2433]
    rows = []
    for k in range(3, 11):
        row = {"log10_X0": k}
        for P in perms:
            v = bounds.min_cycle_length_lower_bound(bounds.BoundContext(*P, 10**k))
            row[f"L_gt_{_plabel(P)}"] = v
            exp = ref.FLOOR.get(P, {}).get(k)
            if exp is not None:
                fixed, is_err = chk.erratum(("floor", P, k))
                want = fixed if is_err else exp
                chk.expect(v == want, f"floor {_plabel(P)} 1e{k}: got {v}, expected {want}")
        rows.append(row)
    return rows, "L > value for every cycle with all elements >= X0"


def _ctx_for(args):
    P = parse_selector(args.perm or "pabcd:1,3,2,2").params
    if P[1] < P[3]:
        P = (P[2], P[3], P[0], P[1])
    ctx = bounds.BoundContext(*P, args.x0 or 10**6)
    return P, ctx, bounds.rhin_params(ctx)


def _table_x3(args, chk):
    P, ctx, rp = _ctx_for(args)
    ms = args.m or list(ref.X3.get(P, {1: 0}))
    rows = []
    for m in ms:
        row = bounds.crossover_tables(ctx, rp, m)
        rows.append(dict(m=m, x3=fmt_real(row.x3), L_le_ceil=row.L_max))
        exp = ref.X3.get(P, {}).get(m)
        if exp is not None and ctx.X0 == 10**6:
            chk.expect(ref.agrees(row.x3, exp, m), f"x3 {_plabel(P)} m={m}: got {fmt_real(row.x3)}, expected {exp}")
    return rows, f"{_plabel(P)} X0={ctx.X0}: L <= x3(m); Rhin c_add={rp.c_add:.5f}"


def _table_l1l2(args, chk):
    P, ctx, rp = _ctx_for(args)
    ms = args.m or list(ref.L1L2.get(P, {1: 0}))
    rows = []
    for m in ms:
        row = bounds.crossover_tables(ctx, rp, m)
        rows.append(dict(m=m, x1=fmt_real(row.x1), x2=fmt_real(row.x2), L1_ceil=row.L1, L2_floor=row.L2))
        exp = ref.L1L2.get(P, {}).get(m)
        if exp is not None and ctx.X0 == 10**6:
            fixed, is_err = chk.erratum(("l1l2", P, m))
            e1, e2 = fixed if is_err else exp
            ok = ref.agrees(row.x1, e1, m) and ref.agrees(row.x2, e2, m)
            chk.expect(ok, f"L1/L2 {_plabel(P)} m={m}: got ({fmt_real(row.x1)}, {fmt_real(row.x2)}), expected ({e1}, {e2})")
    return rows, f"{_plabel(P)} X0={ctx.X0}: convergent K/L needed for L >= L1; none fits beyond L2"


def _cycle_rows(cycles):
    return [dict(nr=i, x_min=c.min, x_max=c.max, length=c.length, m=c.m) for i, c in enumerate(cycles, 1)]


def _check_cycles(chk, name, got, expected, m_key=None):
    keys = [c.key() for c in got]
    want = [e[:3] for e in expected]
    chk.expect(keys == want, f"{name}: cycles {keys} differ from {want}")
    if keys == want:
        for c, e in zip(got, expected):
            if c.m != e[3]:
                fixed, is_err = chk.erratum((m_key or name, e[:3], "m"))
                chk.expect(is_err and c.m == fixed, f"{name}: m of {e[:3]} is {c.m}, expected {e[3]}")


def _table_cycles_2433(args, chk):
    spec = make_pabcd(*ref.C2433)
    rep = cycle_census(spec, args.x0 or 10**6, CensusSettings(DEFAULT_ESCAPE, 20))
    cyc = rep.nontrivial_cycles()
    _check_cycles(chk, "cycles-2433", cyc, ref.CYCLES_2433)
    return _cycle_rows(cyc), f"cycles of P(2,4,3,3) with x_min < {rep.x0} (escape > 1e8 with m > 20)"


def _collatz():
    return make_pabcd(1, 3, 2, 2).inverse()


def _table_cycles_simple(args, chk):
    spec = next(iter_generalizations(make_pabcd(2, 2, 1, 3), "simple", 1))[1]
    rep = cycle_census(spec, args.x0 or 10**6, CensusSettings(DEFAULT_ESCAPE, 20))
    cyc = rep.nontrivial_cycles()
    _check_cycles(chk, "cycles-collatz-simple", cyc, ref.CYCLES_COLLATZ_SIMPLE)
    return _cycle_rows(cyc), f"cycles of {spec.label} with x_min < {rep.x0} (escape > 1e8 with m > 20)"


def _fmt_cycles(cycles):
    return " ".join(f"({c.min},{c.max},{c.length},{c.m})" for c in cycles)


def _table_cycles_ext(args, chk):
    x0 = args.x0 or 10**6
    base = make_pabcd(2, 2, 1, 3)
    settings = CensusSettings(DEFAULT_ESCAPE, None)
    rows = []
    col = cycle_census(_collatz(), x0, CensusSettings(DEFAULT_ESCAPE, 10)).nontrivial_cycles()
    _check_cycles(chk, "cycles-collatz", col, ref.CYCLES_COLLATZ)
    rows.append(dict(f=base.label, n_cycles=len(col), cycles=_fmt_cycles(col)))
    simple = next(iter_generalizations(base, "simple", 1))[1]
    sc = cycle_census(simple, x0, CensusSettings(DEFAULT_ESCAPE, 20)).nontrivial_cycles()
    rows.append(dict(f=simple.label, n_cycles=len(sc), cycles=_fmt_cycles(sc)))
    unmatched = list(range(len(ref.CYCLES_COLLATZ_EXT)))
    for rank, g in iter_generalizations(base, "extended"):
        cyc = cycle_census(g, x0, settings).nontrivial_cycles()
        rows.append(dict(f=g.label, n_cycles=len(cyc), cycles=_fmt_cycles(cyc)))
        got = Counter(c.key() for c in cyc)
        for i in unmatched:
            want = Counter()
            for e in ref.CYCLES_COLLATZ_EXT[i]:
                fixed, is_err = chk.erratum(("cycles-collatz-ext", i, e[:3]))
                want[fixed if is_err else e[:3]] += 1
            if want == got:
                unmatched.remove(i)
                break
        else:
            chk.expect(False, f"{g.label}: cycle set {sorted(got)} matches no reference row")
    chk.notes = list(dict.fromkeys(chk.notes))
    return rows, f"extended generalizations of {base.label}, seeds below {x0}; (x_min,x_max,length,m)"


TABLES = {
    "floor": _table_floor,
    "x3": _table_x3,
    "l1l2": _table_l1l2,
    "cycles-2433": _table_cycles_2433,
    "cycles-collatz-simple": _table_cycles_simple,
    "cycles-collatz-ext": _table_cycles_ext,
}


def cmd_table(args) -> int:
    if args.table_id not in TABLES:
        raise UsageError(f"unknown table {args.table_id!r}; choose from {', '.join(TABLES)}")
    chk = _Checker()
    rows, title = TABLES[args.table_id](args, chk)
    emit(rows, args.format, sys.stdout, title)
    if args.check:
        for n in chk.notes:
            print(n, file=sys.stderr)
        for f in chk.failures:
            print(f"MISMATCH {f}", file=sys.stderr)
        print(f"check {args.table_id}: {'FAIL' if chk.failures else 'ok'}", file=sys.stderr)
        return EXIT_FAIL if chk.failures else EXIT_OK
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _walk_flags(p, default_floor="auto"):
    p.add_argument("--escape", type=parse_int, default=None, help="escape threshold (default 1e8)")
    p.add_argument("--m-floor", type=parse_m_floor, default=default_floor,
                   help="local maxima required before escaping; 'none' disables")
    p.add_argument("--step-limit", type=parse_int, default=DEFAULT_STEP_LIMIT)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="permseq", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="follow one trajectory")
    p.add_argument("--perm", required=True)
    p.add_argument("--x0", type=parse_int, required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--elements", action="store_true", help="print the cycle elements")
    _walk_flags(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("census", help="classify every seed below X0")
    p.add_argument("--perm", required=True)
    p.add_argument("--x0", type=parse_int, required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    p.add_argument("--all", action="store_true", help="include the fixed point 0")
    p.add_argument("--backend", choices=["cython", "python"], default=None)
    _walk_flags(p)
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("sweep", help="census summaries over generalizations")
    p.add_argument("--base", required=True, help="a,b,c,d")
    p.add_argument("--mode", choices=["simple", "extended"], default="simple")
    p.add_argument("--first", type=parse_int, default=10)
    p.add_argument("--x0", type=parse_int, default=10**5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    _walk_flags(p, default_floor=None)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("perm", help="inspect a permutation")
    p.add_argument("action", choices=["show", "export", "validate"])
    p.add_argument("--perm", required=True)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_perm)

    p = sub.add_parser("bounds", help="diophantine bounds on m-cycles")
    p.add_argument("action", choices=["table", "convergents", "candidates", "floor", "report"])
    p.add_argument("--perm", default=None)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--x0", default="1e6")
    p.add_argument("--m", type=parse_int_list, default=[1, 2, 3, 4, 5])
    p.add_argument("--qmax", type=parse_int, default=10**5)
    p.add_argument("--lmax", type=parse_int, default=31240)
    p.add_argument("--rhin", choices=["derived", "stated"], default="derived")
    p.add_argument("--precision", type=int, default=256)
    p.add_argument("--census-x0", type=parse_int, default=None,
                   help="run a census below this bound and list its m-cycles in reports")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("table", help="regenerate a reference table")
    p.add_argument("table_id", help=", ".join(TABLES))
    p.add_argument("--perm", default=None)
    p.add_argument("--x0", type=parse_int, default=None)
    p.add_argument("--m", type=parse_int_list, default=None)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.add_argument("--check", action="store_true", help="compare with the embedded reference values")
    p.set_defaults(fn=cmd_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.cmd == "bounds":
            xs = parse_int_list(args.x0, geometric=True)
            args.x0_list = xs if args.action == "floor" and ("," in args.x0 or ".." in args.x0) else None
            if args.perm is None and args.action != "floor":
                args.perm = "pabcd:1,3,2,2"
            args.x0 = xs[0]
        return args.fn(args)
    except (UsageError, argparse.ArgumentTypeError) as exc:
        print(f"permseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"permseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except bounds.BakerRegimeError as exc:
        print(f"permseq: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
