"""Orbits of a permutation: cycles, apparent divergence, branch statistics."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import kernel
from .perm import IntegrityError

DEFAULT_ESCAPE = 10**8
DEFAULT_STEP_LIMIT = 10**7

# Local-maxima floors for the two reference permutations; both orientations
# share trajectories.
_REFERENCE_M_FLOORS = {(1, 3, 2, 2): 10, (2, 2, 1, 3): 10, (2, 4, 3, 3): 20, (3, 3, 2, 4): 20}


def default_m_floor(perm) -> Optional[int]:
    params = getattr(perm, "params", None)
    if params and "/" not in getattr(perm, "label", ""):
        return _REFERENCE_M_FLOORS.get(tuple(params))
    return None


@dataclass(frozen=True)
class CycleRecord:
    min: int
    max: int
    length: int
    K: int
    L: int
    m: int
    elements: Optional[tuple[int, ...]] = None

    @property
    def trivial(self) -> bool:
        """The fixed point 0 shared by every ``bn -> dn`` rule."""
        return self.length == 1 and self.min == 0

    def key(self) -> tuple[int, int, int]:
        return (self.min, self.max, self.length)

    def to_dict(self, with_elements: bool = True) -> dict:
        d = {"min": self.min, "max": self.max, "length": self.length, "K": self.K, "L": self.L, "m": self.m}
        if with_elements and self.elements is not None:
            d["elements"] = list(self.elements)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CycleRecord":
        el = d.get("elements")
        return cls(d["min"], d["max"], d["length"], d["K"], d["L"], d["m"], tuple(el) if el else None)


def count_local_maxima(elements: Sequence[int]) -> int:
    n = len(elements)
    return sum(1 for i in range(n) if elements[i - 1] < elements[i] > elements[(i + 1) % n])


def classify_cycle(elements: Sequence[int], b: int) -> CycleRecord:
    """Canonical record of one period of a cycle, rotated to start at its minimum."""
    elements = [int(x) for x in elements]
    if not elements:
        raise ValueError("empty cycle")
    if len(set(elements)) != len(elements):
        raise IntegrityError("repeated element within one period")
    i = elements.index(min(elements))
    rot = tuple(elements[i:] + elements[:i])
    L = sum(1 for x in rot if x % b == 0)
    return CycleRecord(rot[0], max(rot), len(rot), len(rot) - L, L, count_local_maxima(rot), rot)


@dataclass(frozen=True)
class Cycle:
    record: CycleRecord
    entry_steps: int = 0


@dataclass(frozen=True)
class Escaped:
    threshold_crossed: int
    steps_taken: int
    maxima_seen: int


@dataclass(frozen=True)
class StepLimit:
    steps: int


TrajectoryOutcome = Union[Cycle, Escaped, StepLimit]


def run_trajectory(perm, x0: int, escape_threshold: int = DEFAULT_ESCAPE, m_floor: Optional[int] = None,
                   step_limit: int = DEFAULT_STEP_LIMIT, inverse: bool = False) -> TrajectoryOutcome:
    """Follow ``x0, f(x0), f(f(x0)), ...`` until it closes, escapes or times out.

    For a bijection the first repeated element is ``x0`` itself, so the
    whole orbit is the periodic part and ``entry_steps`` is always 0.
    """
    if escape_threshold <= 0 or step_limit <= 0:
        raise ValueError("thresholds must be positive")
    w = kernel.walk(perm, x0, escape_threshold, m_floor, step_limit, inverse=inverse)
    if w.status == kernel.CYCLE:
        els = kernel.orbit(perm, x0, w.steps, inverse=inverse)
        return Cycle(classify_cycle(els, perm.split_modulus))
    if w.status == kernel.ESCAPED:
        return Escaped(w.last, w.steps, w.maxima)
    return StepLimit(w.steps)


def escapes_backward(perm, x0: int, escape_threshold: int = DEFAULT_ESCAPE, m_floor: Optional[int] = None,
                     step_limit: int = DEFAULT_STEP_LIMIT) -> bool:
    return isinstance(run_trajectory(perm, x0, escape_threshold, m_floor, step_limit, inverse=True), Escaped)


def multiplication_factors(frac_b, frac_d, a: int, b: int, c: int, d: int) -> tuple[float, float]:
    """Average step factors of a branch of ``P(a,b,c,d)``.

    ``frac_b`` is the share of elements divisible by ``b`` (left to right),
    ``frac_d`` the share divisible by ``d`` (right to left).
    """
    fb, fd = float(frac_b), float(frac_d)
    f1 = (d / b) ** fb * (c * d / (a * b)) ** (1 - fb)
    f2 = (b / d) ** fd * (a * b / (c * d)) ** (1 - fd)
    return f1, f2


@dataclass(frozen=True)
class BranchStats:
    frac_0_mod_b: Fraction
    frac_0_mod_d: Fraction
    factor_left_right: float
    factor_right_left: float

    @property
    def product(self) -> float:
        return self.factor_left_right * self.factor_right_left


def branch_stats(elements: Sequence[int], a: int, b: int, c: int, d: int) -> BranchStats:
    if not elements:
        raise ValueError("empty branch")
    n = len(elements)
    fb = Fraction(sum(1 for x in elements if x % b == 0), n)
    fd = Fraction(sum(1 for x in elements if x % d == 0), n)
    return BranchStats(fb, fd, *multiplication_factors(fb, fd, a, b, c, d))


def trajectory(perm, x0: int, steps: int, inverse: bool = False) -> list[int]:
    """The first ``steps + 1`` elements of the orbit (no cycle detection)."""
    return kernel.orbit(perm, x0, steps + 1, inverse=inverse)
