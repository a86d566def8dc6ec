"""Diophantine bounds on the length of m-cycles of ``P(a,b,c,d)``.

For a cycle with ``K`` elements off the multiples of ``b`` and ``L`` on them,
the linear form ``Lambda = K log(cd/ab) - L log(b/d)`` must be tiny once all
elements exceed a numerical floor ``X0``.  Upper bounds on ``|Lambda|`` come
from the cycle structure; lower bounds from continued fractions and from
Rhin's estimate for forms in ``log 2`` and ``log 3``.  Intersecting them
confines ``L`` to short windows that are scanned explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import mpmath

from .dynamics import CycleRecord
from .numerics import DEFAULT_PRECISION, Convergent, PrecisionError, PrecReal, cf_expand, hp_log, solve_crossover
from .perm import ParameterError

RHIN_EXPONENT = 13.3
# Additive constants as printed with the two Rhin estimates; the tables
# are reproduced by the constants derived from the height bound instead.
STATED_RHIN_CONSTANTS = {(1, 3, 2, 2): 1.34, (2, 4, 3, 3): 1.77}
MAX_PRECISION = 4096
# cross-overs are rounded to integers, so solve them well past unit resolution
CROSSOVER_TOL = mpmath.mpf(2) ** -100


class BakerRegimeError(ValueError):
    """Lambda is not a form in log 2 and log 3, so Rhin's bound does not apply."""


@dataclass(frozen=True)
class BoundContext:
    a: int
    b: int
    c: int
    d: int
    X0: int
    precision: int = DEFAULT_PRECISION
    eps: PrecReal = field(init=False, compare=False, repr=False)
    alpha: PrecReal = field(init=False, compare=False, repr=False)
    beta: PrecReal = field(init=False, compare=False, repr=False)
    rho: PrecReal = field(init=False, compare=False, repr=False)
    delta1: PrecReal = field(init=False, compare=False, repr=False)
    alpha1: PrecReal = field(init=False, compare=False, repr=False)
    gamma1: PrecReal = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if min(a, b, c, d) < 1 or b <= 1 or d <= 1 or a * (b - 1) != c * (d - 1):
            raise ParameterError(f"({a},{b},{c},{d}) does not define P(a,b,c,d)")
        if b <= d:
            raise ParameterError("bounds need b > d; analyse the inverse permutation P(c,d,a,b)")
        ab, cd, p = a * b, c * d, self.precision
        if self.X0 <= ab - a - 1:
            raise ParameterError(f"X0 must exceed ab-a-1 = {ab - a - 1}")
        alpha = hp_log(Fraction(cd, ab), p)
        beta = hp_log(Fraction(b, d), p)
        eps = PrecReal.of(Fraction(ab - a - 1, self.X0 - ab + a + 1), p)
        if not eps < alpha:
            raise ParameterError("X0 too small: need eps < alpha")
        delta1 = hp_log(b, p) / hp_log(d, p) + 1
        alpha1 = PrecReal.of(Fraction(-ab, cd) + ab - a - 1, p)
        with mpmath.workprec(p):
            gamma1 = PrecReal(mpmath.mpf(ab) / cd + alpha1.value / mpmath.power(self.X0, delta1.value + 1), p)
        for name, val in [("eps", eps), ("alpha", alpha), ("beta", beta), ("rho", beta / alpha),
                          ("delta1", delta1), ("alpha1", alpha1), ("gamma1", gamma1)]:
            object.__setattr__(self, name, val)

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def excess(self) -> int:
        """``ab - a - 1``: the largest residue gap on an increasing step."""
        return self.a * self.b - self.a - 1

    def with_x0(self, X0: int) -> "BoundContext":
        return BoundContext(self.a, self.b, self.c, self.d, X0, self.precision)

    def beta1(self, m: int) -> PrecReal:
        with mpmath.workprec(self.precision):
            e = mpmath.power(self.delta1.value + 1, m - 1)
            return PrecReal(mpmath.power(self.gamma1.value, (e - 1) / self.delta1.value), self.precision)

    def convergents(self, q_limit: int) -> list[Convergent]:
        """Convergents of ``rho``, recomputing it at higher precision if needed."""
        return _convergents(self.params, self.precision, int(q_limit))


@lru_cache(maxsize=64)
def _convergents(params, precision, q_limit):
    a, b, c, d = params
    prec = precision
    while True:
        rho = hp_log(Fraction(b, d), prec) / hp_log(Fraction(c * d, a * b), prec)
        try:
            return cf_expand(rho, q_limit)
        except PrecisionError:
            if prec >= MAX_PRECISION:
                raise
            prec *= 2


# --------------------------------------------------------------------------
# the linear form and its upper bounds


def lambda_form(ctx: BoundContext, K: int, L: int) -> PrecReal:
    return ctx.alpha * K - ctx.beta * L


def laubk_check(ctx: BoundContext, K: int, L: int) -> bool:
    """``0 < |Lambda| < eps K``."""
    lam = lambda_form(ctx, K, L)
    return 0 < abs(lam).value < (ctx.eps * K).value


def laubl_check(ctx: BoundContext, K: int, L: int) -> bool:
    """The L-form of the same bound, one-sided for each sign of Lambda."""
    lam = lambda_form(ctx, K, L).value
    e, a, b = ctx.eps.value, ctx.alpha.value, ctx.beta.value
    with mpmath.workprec(ctx.precision):
        if lam > 0:
            return lam < e * b / (a - e) * L
        if lam < 0:
            return -lam < e * b / a * L
    return False


def _log_ublm(ctx: BoundContext, L, m: int):
    a, b, e = ctx.alpha.value, ctx.beta.value, ctx.eps.value
    d1 = ctx.delta1.value
    expo = mpmath.power(d1 + 1, m - 1)
    log_beta1 = (expo - 1) / d1 * mpmath.log(ctx.gamma1.value)
    return (mpmath.log(b / (a - e)) + mpmath.log(L) + mpmath.log1p(e) + mpmath.log(ctx.excess)
            - (L / m * mpmath.log(ctx.d) - log_beta1) / expo)


def ublm_bound(ctx: BoundContext, L, m: int) -> PrecReal:
    """Upper bound on ``|Lambda|`` for an m-cycle with ``L`` multiples of ``b``."""
    if m < 1:
        raise ValueError("m must be positive")
    with mpmath.workprec(ctx.precision):
        L = mpmath.mpf(L)
        if L <= 0 or ctx.excess == 0:
            return PrecReal(mpmath.mpf(0), ctx.precision)
        return PrecReal(mpmath.exp(_log_ublm(ctx, L, m)), ctx.precision)


# --------------------------------------------------------------------------
# Rhin's lower bound


@dataclass(frozen=True)
class RhinParams:
    c_add: float
    h_coeff: tuple[tuple[int, int], ...] = ()
    c_mult: float = RHIN_EXPONENT


def _valuation(n: int, p: int) -> tuple[int, int]:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def log_coefficients(a: int, b: int, c: int, d: int) -> tuple[tuple[int, int], ...]:
    """``(K, L)`` coefficients of ``log 2`` and ``log 3`` in Lambda."""
    rows = []
    rest = []
    for p in (2, 3):
        vals = {}
        for name, n in (("ab", a * b), ("cd", c * d), ("b", b), ("d", d)):
            vals[name], _ = _valuation(n, p)
        rows.append((vals["cd"] - vals["ab"], vals["d"] - vals["b"]))
    for n in (a * b, c * d, b, d):
        for p in (2, 3):
            _, n = _valuation(n, p)
        rest.append(n)
    if any(r != 1 for r in rest):
        raise BakerRegimeError(
            f"P({a},{b},{c},{d}): Lambda involves primes other than 2 and 3; "
            "upper bound not reducible with Rhin's estimate"
        )
    return tuple(rows)


def rhin_params(ctx: BoundContext, mode: str = "derived") -> RhinParams:
    """Rhin parameters for ``ctx``.

    ``derived`` bounds the height ``max |u_i|`` using ``K < beta/(alpha-eps) L``;
    ``stated`` uses the two printed constants where they exist.
    """
    coeffs = log_coefficients(*ctx.params)
    if mode == "stated" and ctx.params in STATED_RHIN_CONSTANTS:
        return RhinParams(STATED_RHIN_CONSTANTS[ctx.params], coeffs)
    if mode not in ("derived", "stated"):
        raise ValueError(f"unknown Rhin mode {mode!r}")
    with mpmath.workprec(ctx.precision):
        ratio = ctx.beta.value / (ctx.alpha.value - ctx.eps.value)
        height = max(abs(k) * ratio + abs(l) for k, l in coeffs)
        return RhinParams(float(mpmath.log(height)), coeffs)


def rhin_lower_bound(params: RhinParams, L, precision: int = DEFAULT_PRECISION) -> PrecReal:
    with mpmath.workprec(precision):
        return PrecReal(mpmath.exp(-params.c_mult * (params.c_add + mpmath.log(L))), precision)


# --------------------------------------------------------------------------
# continued-fraction floor and cross-over points


def min_cycle_length_lower_bound(ctx: BoundContext) -> int:
    """Largest convergent denominator ``q_n`` certified to satisfy ``L > q_n``."""
    with mpmath.workprec(ctx.precision):
        a, b, e = ctx.alpha.value, ctx.beta.value, ctx.eps.value
        budget = a * (a - e) / b / e
    convs = ctx.convergents(int(mpmath.sqrt(budget)) + 2)
    best = 0
    for cur, nxt in zip(convs, convs[1:]):
        if (cur.q + nxt.q) * cur.q <= budget:
            best = cur.q
        else:
            break
    return best


@dataclass(frozen=True)
class CrossoverRow:
    m: int
    x3: mpmath.mpf
    x1: mpmath.mpf
    x2: mpmath.mpf
    reduction_constant: int

    @property
    def L_max(self) -> int:
        return int(mpmath.ceil(self.x3))

    @property
    def L1(self) -> int:
        return int(mpmath.ceil(self.x1))

    @property
    def L2(self) -> int:
        return int(mpmath.floor(self.x2))


def _x3(ctx, params, m):
    p = ctx.precision
    return solve_crossover(lambda x: rhin_lower_bound(params, x, p).value,
                           lambda x: ublm_bound(ctx, x, m).value, precision=p,
                           rel_tol=CROSSOVER_TOL, max_bisections=1000)


@lru_cache(maxsize=64)
def reduction_constant(ctx: BoundContext, params: RhinParams, m_max: int = 20) -> tuple[int, int]:
    """``(a_max + 2, a_max)`` with ``a_max`` the largest partial quotient for ``q <= x3(m_max)``."""
    limit = int(_x3(ctx, params, m_max))
    a_max = max(cv.a for cv in ctx.convergents(limit) if cv.q <= limit)
    return a_max + 2, a_max


def crossover_tables(ctx: BoundContext, params: RhinParams, m: int) -> CrossoverRow:
    """Cross-over points for one ``m``.

    ``x3``: Rhin bound meets the m-cycle upper bound (absolute cap on L).
    ``x1``: upper bound meets ``alpha/(2x)``; beyond it ``K/L`` is a convergent.
    ``x2``: upper bound meets ``alpha/((a_max+2)x)``; no convergent fits beyond it.
    """
    p = ctx.precision
    const, _ = reduction_constant(ctx, params, max(20, m))
    alpha = ctx.alpha.value

    def ub(x):
        return ublm_bound(ctx, x, m).value

    x3 = _x3(ctx, params, m)
    kw = dict(precision=p, rel_tol=CROSSOVER_TOL)
    x1 = solve_crossover(ub, lambda x: alpha / (2 * x), **kw)
    x2 = solve_crossover(ub, lambda x: alpha / (const * x), **kw)
    return CrossoverRow(m, x3, x1, x2, const)


# --------------------------------------------------------------------------
# candidate scans and exclusion reports


def laubl_candidates(ctx: BoundContext, L_max: int, L_min: int = 1) -> list[tuple[int, int]]:
    """All ``(K, L)`` with ``L_min <= L <= L_max`` that pass :func:`laubl_check`.

    Only ``K`` within one of ``rho*L`` is tried: passing forces
    ``|K - rho L|`` far below one.
    """
    out = []
    rho = ctx.rho.value
    with mpmath.workprec(ctx.precision):
        for L in range(max(1, L_min), L_max + 1):
            k0 = int(mpmath.nint(rho * L))
            for K in (k0 - 1, k0, k0 + 1):
                if K >= 1 and laubl_check(ctx, K, L):
                    out.append((K, L))
    return out


@dataclass
class ExclusionReport:
    m: int
    X0: int
    floor: int
    row: CrossoverRow
    convergents: list[tuple[int, int]]
    laubl_pairs: list[tuple[int, int]]
    census_cycles: list[CycleRecord]
    window_scanned: bool = True

    @property
    def open_window(self) -> bool:
        """``floor < L < L1`` is non-empty and was not scanned pair by pair."""
        return not self.window_scanned and self.row.L1 > self.floor + 1

    @property
    def excluded(self) -> bool:
        """No m-cycle can have all its elements at or above ``X0``."""
        return not self.convergents and not self.laubl_pairs and not self.open_window

    def conclusion(self, max_pairs: int = 8) -> str:
        found = ", ".join(f"({c.min},{c.max},{c.length})" for c in self.census_cycles)
        below = f" {self.m}-cycles from the census: {found or 'none'}."
        head = f"m={self.m}: "
        if self.floor >= self.row.L2:
            return head + f"L > {self.floor} exceeds L2 = {self.row.L2}; no {self.m}-cycles above X0." + below
        parts = []
        if self.laubl_pairs:
            shown = ", ".join(f"({k},{l})" for k, l in self.laubl_pairs[:max_pairs])
            more = len(self.laubl_pairs) - max_pairs
            parts.append(f"(K,L) in {shown}" + (f" and {more} more" if more > 0 else ""))
        if self.open_window:
            parts.append(f"{self.floor} < L < {self.row.L1}")
        if self.convergents:
            parts.append("convergent " + ", ".join(f"(K={k},L={l})" for k, l in self.convergents))
        if not parts:
            return (head + f"no convergents in ({self.row.L1},{self.row.L2}) and no pairs below L1;"
                    f" no {self.m}-cycles above X0." + below)
        return head + "cycles with all x >= X0 need " + "; or ".join(parts) + "." + below


def mcycle_exclusion_report(ctx: BoundContext, params: RhinParams, m: int,
                            census_cycles: Iterable[CycleRecord] = (),
                            enumerate_pairs: bool = True) -> ExclusionReport:
    row = crossover_tables(ctx, params, m)
    floor = min_cycle_length_lower_bound(ctx)
    convs = [
        (c.p, c.q) for c in ctx.convergents(row.L2)
        if row.L1 <= c.q <= row.L2 and c.q > floor
    ]
    pairs = laubl_candidates(ctx, row.L1 - 1, floor + 1) if enumerate_pairs and row.L1 - 1 > floor else []
    mine = [c for c in census_cycles if c.m == m and not c.trivial]
    return ExclusionReport(m, ctx.X0, floor, row, convs, pairs, mine, enumerate_pairs)


# --------------------------------------------------------------------------
# consistency checks against actual cycles


def local_minima(elements: Sequence[int]) -> list[int]:
    n = len(elements)
    return [elements[i] for i in range(n) if elements[i - 1] > elements[i] < elements[(i + 1) % n]]


@dataclass(frozen=True)
class CycleBoundCheck:
    laubk: bool
    laubl: bool
    chain: bool


def check_cycle_bounds(record: CycleRecord, a: int, b: int, c: int, d: int,
                       precision: int = DEFAULT_PRECISION) -> Optional[CycleBoundCheck]:
    """Evaluate the necessary conditions on a real cycle with ``X0 = min - 1``.

    Returns None when the cycle is too small for the bounds to be defined.
    """
    if record.elements is None or record.length < 2:
        return None
    try:
        ctx = BoundContext(a, b, c, d, record.min - 1, precision)
    except ParameterError:
        return None
    K, L = record.K, record.L
    mins = local_minima(list(record.elements))
    m = len(mins)
    with mpmath.workprec(precision):
        expo = mpmath.power(ctx.delta1.value + 1, m - 1)
        chain = max(mins) <= ctx.beta1(m).value * mpmath.power(min(mins), expo)
    return CycleBoundCheck(laubk_check(ctx, K, L), laubl_check(ctx, K, L), bool(chain))
