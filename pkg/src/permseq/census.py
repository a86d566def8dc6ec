"""Sweeps over all starting values below a bound.

Every seed ``x < X0`` ends up in exactly one bucket: a listed cycle, an
apparent divergent trajectory, or a step-limited walk.  Divergent
trajectories are explored in both directions and every explored element
below ``X0`` is labelled with the trajectory's class, so later seeds on the
same trajectory are skipped.  Classes whose explored segments meet are
merged, and each class is keyed by the least element seen.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernel
from .dynamics import DEFAULT_ESCAPE, DEFAULT_STEP_LIMIT, CycleRecord, classify_cycle
from .perm import IntegrityError, PermSpec, count_generalizations, iter_generalizations, make_pabcd

_CYCLE_LABEL = -1


@dataclass(frozen=True)
class CensusSettings:
    escape: int = DEFAULT_ESCAPE
    m_floor: Optional[int] = None
    step_limit: int = DEFAULT_STEP_LIMIT


@dataclass
class CensusReport:
    label: str
    params: Optional[tuple]
    x0: int
    settings: CensusSettings
    cycles: list[CycleRecord]
    divergent_min_count: int
    divergent_seed_count: int
    cycle_seed_count: int
    step_limited_seed_count: int
    divergent_minima: list[int] = field(default_factory=list)
    one_sided: list[int] = field(default_factory=list)

    def nontrivial_cycles(self) -> list[CycleRecord]:
        return [c for c in self.cycles if not c.trivial]

    def cycle_keys(self, include_trivial: bool = False) -> list[tuple[int, int, int]]:
        return [c.key() for c in self.cycles if include_trivial or not c.trivial]

    def to_dict(self, minima_limit: Optional[int] = 100) -> dict:
        minima = self.divergent_minima if minima_limit is None else self.divergent_minima[:minima_limit]
        return {
            "label": self.label,
            "params": list(self.params) if self.params else None,
            "x0": self.x0,
            "settings": asdict(self.settings),
            "cycles": [dict(c.to_dict(), trivial=c.trivial) for c in self.cycles],
            "divergent_min_count": self.divergent_min_count,
            "divergent_seed_count": self.divergent_seed_count,
            "cycle_seed_count": self.cycle_seed_count,
            "step_limited_seed_count": self.step_limited_seed_count,
            "divergent_minima": minima,
            "one_sided": self.one_sided,
        }

    def to_json(self, **kw) -> str:
        kw.setdefault("indent", 2)
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self, skip_trivial: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nr", "x_min", "x_max", "length", "m"])
        rows = self.nontrivial_cycles() if skip_trivial else self.cycles
        for i, c in enumerate(rows, 1):
            w.writerow([i, c.min, c.max, c.length, c.m])
        return buf.getvalue()


class _Classes:
    """Union-find over divergent-trajectory class labels."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.low: dict[int, int] = {}
        self.escaped: dict[int, bool] = {}

    def add(self, cid, low, escaped):
        self.parent[cid] = cid
        self.low[cid] = low
        self.escaped[cid] = escaped

    def find(self, c):
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        # keep the older label as root so merges do not depend on arrival order
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.low[ra] = min(self.low[ra], self.low[rb])
        self.escaped[ra] = self.escaped[ra] or self.escaped[rb]

    def roots(self):
        return [c for c in self.parent if self.parent[c] == c]


def cycle_census(perm, x0_bound: int, settings: CensusSettings = CensusSettings(), backend=None) -> CensusReport:
    if x0_bound < 1:
        raise ValueError("X0 must be at least 1")
    start = getattr(perm, "domain_start", 0)
    owner = kernel.new_owner(x0_bound)
    classes = _Classes()
    cycles: list[CycleRecord] = []
    one_sided: list[int] = []
    esc, floor, limit = settings.escape, settings.m_floor, settings.step_limit
    next_id = 1
    for x in range(start, x0_bound):
        if owner[x]:
            continue
        cid = next_id
        next_id += 1
        owner[x] = cid
        fw = kernel.walk(perm, x, esc, floor, limit, owner, cid, backend=backend)
        if fw.status == kernel.CYCLE:
            if fw.hits:
                raise IntegrityError(f"cycle through {x} meets another orbit")
            els = kernel.orbit(perm, x, fw.steps)
            for e in els:
                if e < x0_bound:
                    owner[e] = _CYCLE_LABEL
            cycles.append(classify_cycle(els, perm.split_modulus))
            continue
        hits = list(fw.hits)
        low = fw.min_seen
        escaped = fw.status == kernel.ESCAPED
        if escaped:
            bw = kernel.walk(perm, x, esc, floor, limit, owner, cid, inverse=True, backend=backend)
            if bw.status == kernel.CYCLE:
                raise IntegrityError(f"{x} closes backwards but escapes forwards")
            if bw.status != kernel.ESCAPED:
                one_sided.append(x)
            hits += bw.hits
            low = min(low, bw.min_seen)
        classes.add(cid, low, escaped)
        for h in hits:
            classes.union(cid, h)

    cycles.sort(key=lambda c: c.min)
    roots = classes.roots()
    div_roots = [r for r in roots if classes.escaped[r]]
    labels = np.frombuffer(owner, dtype=np.int32)[start:]
    cycle_seeds = int(np.count_nonzero(labels == _CYCLE_LABEL))
    div_seeds = 0
    if classes.parent:
        esc_flag = np.zeros(next_id, dtype=bool)
        for c in classes.parent:
            esc_flag[c] = classes.escaped[classes.find(c)]
        div_seeds = int(np.count_nonzero(esc_flag[labels[labels > 0]]))
    return CensusReport(
        label=getattr(perm, "label", ""),
        params=getattr(perm, "params", None),
        x0=x0_bound,
        settings=settings,
        cycles=cycles,
        divergent_min_count=len(div_roots),
        divergent_seed_count=div_seeds,
        cycle_seed_count=cycle_seeds,
        step_limited_seed_count=(x0_bound - start) - cycle_seeds - div_seeds,
        divergent_minima=sorted(classes.low[r] for r in div_roots),
        one_sided=one_sided,
    )


def divergence_ratio(perm, x0_bound: int, settings: CensusSettings = CensusSettings()) -> Fraction:
    """Distinct apparent divergent trajectories met below ``X0``, per seed."""
    return Fraction(cycle_census(perm, x0_bound, settings).divergent_min_count, x0_bound)


@dataclass(frozen=True)
class GeneralizationSummary:
    rank: int
    label: str
    n_cycles: int
    max_length: int
    max_element: int
    divergent_count: int


def _summarize(args) -> GeneralizationSummary:
    rank, spec, x0_bound, settings = args
    rep = cycle_census(spec, x0_bound, settings)
    cyc = rep.nontrivial_cycles()
    return GeneralizationSummary(
        rank,
        spec.label,
        len(cyc),
        max((c.length for c in cyc), default=0),
        max((c.max for c in cyc), default=0),
        rep.divergent_min_count,
    )


def sweep_generalizations(base: tuple[int, int, int, int], mode: str, first_n: int, x0_bound: int,
                          settings: CensusSettings = CensusSettings(), jobs: int = 1,
                          inverse: bool = False) -> list[GeneralizationSummary]:
    """Census summaries of the first ``first_n`` proper generalizations in rank order."""
    spec = make_pabcd(*base)
    total = count_generalizations(len(spec.rules) - 1, mode)
    if first_n > total:
        raise ValueError(f"only {total} {mode} generalizations exist")
    work = []
    for rank, g in iter_generalizations(spec, mode, first_n):
        work.append((rank, g.inverse() if inverse else g, x0_bound, settings))
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_summarize, work))
    return [_summarize(w) for w in work]
