"""Residue-class permutations of the non-negative integers.

A permutation is a finite list of affine rules ``src_mod*n + src_res ->
dst_mod*n + dst_res``.  It is a bijection exactly when both the source and
the destination classes form a complete coverage set (every integer lies in
exactly one class).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

LCM_CEILING = 10**12
# Largest lcm for which apply() uses a dense residue table.
TABLE_CEILING = 1 << 22
INT64_MAX = (1 << 63) - 1


class ParameterError(ValueError):
    pass


class IntegrityError(RuntimeError):
    """The rule list does not define a map at some point."""


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class ResidueRule:
    src_mod: int
    src_res: int
    dst_mod: int
    dst_res: int

    def __post_init__(self):
        if self.src_mod < 1 or self.dst_mod < 1:
            raise ParameterError(f"moduli must be positive: {self}")
        if not (0 <= self.src_res < self.src_mod and 0 <= self.dst_res < self.dst_mod):
            raise ParameterError(f"residues must be reduced: {self}")

    def matches(self, x: int) -> bool:
        return x % self.src_mod == self.src_res

    def __call__(self, x: int) -> int:
        return self.dst_mod * ((x - self.src_res) // self.src_mod) + self.dst_res

    def inverted(self) -> "ResidueRule":
        return ResidueRule(self.dst_mod, self.dst_res, self.src_mod, self.src_res)

    def __str__(self):
        return f"{_affine(self.src_mod, self.src_res)} -> {_affine(self.dst_mod, self.dst_res)}"


def _affine(mod, res):
    head = f"{mod}n" if mod != 1 else "n"
    return f"{head}+{res}" if res else head


# --------------------------------------------------------------------------
# complete coverage sets


@dataclass(frozen=True)
class CCReport:
    valid: bool
    total: Fraction
    witness: Optional[int] = None
    problem: Optional[str] = None  # "uncovered" | "overlap" | "empty"


def _crt_pair(a1, b1, a2, b2):
    """Smallest x >= 0 with x = b1 (mod a1) and x = b2 (mod a2), or None."""
    g = math.gcd(a1, a2)
    if (b2 - b1) % g:
        return None
    l = a1 // g * a2
    # solve a1*t = b2 - b1 (mod a2)
    t = ((b2 - b1) // g) * pow(a1 // g, -1, a2 // g) % (a2 // g) if a2 // g > 1 else 0
    return (b1 + a1 * t) % l


def ccset_validate(pairs: Iterable[tuple[int, int]], lcm_ceiling: int = LCM_CEILING) -> CCReport:
    """Check that residue classes ``(modulus, residue)`` cover N0 exactly once.

    Pairwise disjointness is decided by CRT; disjoint classes of total
    density one then cover everything.  The witness is the least residue,
    modulo the lcm of the moduli, that is double-covered or uncovered.
    """
    pairs = [(int(a), int(b)) for a, b in pairs]
    if not pairs:
        return CCReport(False, Fraction(0), 0, "empty")
    for a, b in pairs:
        if a < 1 or not 0 <= b < a:
            raise ParameterError(f"bad residue class ({a},{b})")
    total = sum((Fraction(1, a) for a, _ in pairs), Fraction(0))
    big = reduce(math.lcm, (a for a, _ in pairs))
    if big > lcm_ceiling:
        raise ResourceError(f"lcm {big} exceeds ceiling {lcm_ceiling}")

    overlap = None
    for i in range(len(pairs)):
        a1, b1 = pairs[i]
        for j in range(i + 1, len(pairs)):
            a2, b2 = pairs[j]
            x = _crt_pair(a1, b1, a2, b2)
            if x is not None and (overlap is None or x < overlap):
                overlap = x
    if overlap is None and total == 1:
        return CCReport(True, total)

    limit = big if overlap is None else overlap
    for x in range(limit):
        if not any(x % a == b for a, b in pairs):
            return CCReport(False, total, x, "uncovered")
    return CCReport(False, total, overlap, "overlap")


# --------------------------------------------------------------------------
# permutation specs


def _lookup_table(rules: Sequence[ResidueRule]):
    m = reduce(math.lcm, (r.src_mod for r in rules))
    if m > TABLE_CEILING:
        raise ResourceError(f"rule lcm {m} too large for a residue table")
    mult: list[Optional[int]] = [None] * m
    offs: list[Optional[int]] = [None] * m
    for rule in rules:
        step = m // rule.src_mod
        for res in range(rule.src_res, m, rule.src_mod):
            if mult[res] is not None:
                raise IntegrityError(f"residue {res} (mod {m}) matched by two rules")
            # x = m*k + res  ->  dst_mod*(step*k + (res-src_res)/src_mod) + dst_res
            mult[res] = rule.dst_mod * step
            offs[res] = rule.dst_mod * ((res - rule.src_res) // rule.src_mod) + rule.dst_res
    return m, mult, offs


@dataclass(frozen=True)
class PermSpec:
    rules: tuple[ResidueRule, ...]
    label: str = ""
    params: Optional[tuple[int, ...]] = None

    domain_start = 0

    def __post_init__(self):
        if not self.rules:
            raise ParameterError("a permutation needs at least one rule")
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.params is not None:
            object.__setattr__(self, "params", tuple(self.params))

    @cached_property
    def _fwd(self):
        return _lookup_table(self.rules)

    @cached_property
    def _bwd(self):
        return _lookup_table([r.inverted() for r in self.rules])

    @staticmethod
    def _eval(table, x):
        m, mult, offs = table
        q, r = divmod(x, m)
        a = mult[r]
        if a is None:
            raise IntegrityError(f"no rule matches {x}")
        return a * q + offs[r]

    def apply(self, x: int) -> int:
        if x < 0:
            raise ValueError("permutations act on non-negative integers")
        return self._eval(self._fwd, x)

    def apply_inv(self, x: int) -> int:
        if x < 0:
            raise ValueError("permutations act on non-negative integers")
        return self._eval(self._bwd, x)

    __call__ = apply

    @property
    def split_modulus(self) -> int:
        """Modulus ``b`` that separates K-elements from L-elements."""
        if self.params:
            return self.params[1]
        return min(r.src_mod for r in self.rules)

    def inverse(self) -> "PermSpec":
        params = None
        if self.params and len(self.params) == 4:
            a, b, c, d = self.params
            params = (c, d, a, b)
        elif self.params and len(self.params) == 6:
            a, b, fa, c, d, fc = self.params
            params = (c, d, fc, a, b, fa)
        label = self.label[:-3] if self.label.endswith("^-1") else f"{self.label}^-1"
        return PermSpec(tuple(r.inverted() for r in self.rules), label, params)

    def kernel_tables(self, inverse: bool = False):
        """``(M, mult, offs, qmax)`` int64 arrays for the compiled walker.

        ``qmax[r]`` is the largest quotient for which ``mult[r]*q + offs[r]``
        stays inside int64.
        """
        m, mult, offs = self._bwd if inverse else self._fwd
        if any(a is None for a in mult):
            raise IntegrityError("rule list does not cover every residue")
        if max(mult) > INT64_MAX or max(offs) > INT64_MAX:
            return None
        a = np.array(mult, dtype=np.int64)
        b = np.array(offs, dtype=np.int64)
        qmax = np.array([(INT64_MAX - o) // k for k, o in zip(mult, offs)], dtype=np.int64)
        return m, a, b, qmax

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "params": list(self.params) if self.params else None,
            "rules": [
                {"src_mod": r.src_mod, "src_res": r.src_res, "dst_mod": r.dst_mod, "dst_res": r.dst_res}
                for r in self.rules
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PermSpec":
        rules = tuple(
            ResidueRule(int(r["src_mod"]), int(r["src_res"]), int(r["dst_mod"]), int(r["dst_res"]))
            for r in doc["rules"]
        )
        params = doc.get("params")
        return cls(rules, doc.get("label", ""), tuple(params) if params else None)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_json(cls, text: str) -> "PermSpec":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        return "\n".join([self.label] + [f"  {r}" for r in self.rules])


def apply(spec, x: int) -> int:
    return spec.apply(x)


def apply_inv(spec, x: int) -> int:
    return spec.apply_inv(x)


@dataclass(frozen=True)
class BijectionReport:
    valid: bool
    source: CCReport
    destination: CCReport


def verify_bijection(spec: PermSpec) -> BijectionReport:
    src = ccset_validate((r.src_mod, r.src_res) for r in spec.rules)
    dst = ccset_validate((r.dst_mod, r.dst_res) for r in spec.rules)
    return BijectionReport(src.valid and dst.valid, src, dst)


# --------------------------------------------------------------------------
# constructors


def make_pabcd(a: int, b: int, c: int, d: int) -> PermSpec:
    """``P(a,b,c,d)``: ``bn -> dn`` and ascending non-multiple residues paired."""
    if min(a, b, c, d) < 1:
        raise ParameterError("a, b, c, d must be positive")
    if b <= 1 or d <= 1:
        raise ParameterError("need b > 1 and d > 1")
    if a * (b - 1) != c * (d - 1):
        raise ParameterError(f"a(b-1) = {a * (b - 1)} differs from c(d-1) = {c * (d - 1)}")
    src = [r for r in range(a * b) if r % b]
    dst = [s for s in range(c * d) if s % d]
    rules = [ResidueRule(b, 0, d, 0)]
    rules += [ResidueRule(a * b, r, c * d, s) for r, s in zip(src, dst)]
    return PermSpec(tuple(rules), f"P({a},{b},{c},{d})", (a, b, c, d))


def make_fafc(a: int, b: int, f_a: int, c: int, d: int, f_c: int) -> PermSpec:
    """Permutation with ``f_a`` classes ``f_a*b*n + j*b`` on the source side.

    Source and destination classes are each listed by least element and
    paired in that order; with ``f_a = f_c = 1`` this is ``P(a,b,c,d)`` and
    with ``f_a = a, f_c = c, ab = cd`` it is the identity.
    """
    if min(a, b, c, d, f_a, f_c) < 1 or b <= 1 or d <= 1:
        raise ParameterError("need positive parameters with b > 1 and d > 1")
    if a % f_a or c % f_c:
        raise ParameterError("f_a must divide a and f_c must divide c")
    if math.gcd(a, c) != 1 or math.gcd(b, d) != 1:
        raise ParameterError("need gcd(a,c) = gcd(b,d) = 1")
    if a * (b - 1) + f_a != c * (d - 1) + f_c:
        raise ParameterError(
            f"a(b-1)+f_a = {a * (b - 1) + f_a} differs from c(d-1)+f_c = {c * (d - 1) + f_c}"
        )
    src = [(f_a * b, j * b) for j in range(f_a)] + [(a * b, r) for r in range(a * b) if r % b]
    dst = [(f_c * d, j * d) for j in range(f_c)] + [(c * d, s) for s in range(c * d) if s % d]
    src.sort(key=lambda p: p[1])
    dst.sort(key=lambda p: p[1])
    rules = tuple(ResidueRule(sm, sr, dm, dr) for (sm, sr), (dm, dr) in zip(src, dst))
    return PermSpec(rules, f"F({a},{b},{f_a},{c},{d},{f_c})", (a, b, f_a, c, d, f_c))


# --------------------------------------------------------------------------
# generalizations


def _unrank(n: int, rank: int) -> tuple[int, ...]:
    """Lexicographic permutation of ``range(n)`` with the given rank."""
    if not 0 <= rank < math.factorial(n):
        raise ParameterError(f"rank {rank} out of range for {n} elements")
    pool = list(range(n))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        k, rank = divmod(rank, f)
        out.append(pool.pop(k))
    return tuple(out)


def _rank(order: Sequence[int]) -> int:
    pool = sorted(order)
    rank = 0
    for i, v in enumerate(order):
        k = pool.index(v)
        rank += k * math.factorial(len(order) - 1 - i)
        pool.pop(k)
    return rank


def count_generalizations(n_classes: int, mode: str, proper: bool = True) -> int:
    """Number of generalization orders for ``n_classes = a(b-1)`` residues."""
    if mode == "simple":
        return math.factorial(n_classes) - (1 if proper else 0)
    if mode == "extended":
        return math.factorial(n_classes + 1) - math.factorial(n_classes)
    raise ParameterError(f"unknown mode {mode!r}")


def generalization_order(n_classes: int, mode: str, rank: int) -> tuple[int, ...]:
    """Order with the given rank.

    Simple orders are ranked lexicographically over all ``N!`` orders (rank 0
    is the identity).  Extended orders are those of the ``N+1`` classes that
    move the class of multiples, ranked lexicographically from 0.
    """
    if mode == "simple":
        return _unrank(n_classes, rank)
    if mode == "extended":
        if not 0 <= rank < count_generalizations(n_classes, "extended"):
            raise ParameterError(f"extended rank {rank} out of range")
        return _unrank(n_classes + 1, rank + math.factorial(n_classes))
    raise ParameterError(f"unknown mode {mode!r}")


def generalization_rank(order: Sequence[int], mode: str) -> int:
    if mode == "simple":
        return _rank(order)
    return _rank(order) - math.factorial(len(order) - 1)


def generalize(spec: PermSpec, order: Sequence[int], mode: str = "simple", proper: bool = False) -> PermSpec:
    """Reassign the destination classes of a ``P(a,b,c,d)`` spec.

    In simple mode ``order`` permutes the ``N`` non-multiple destination
    classes (rule ``i+1`` receives destination ``order[i]+1``); in extended
    mode it permutes all ``N+1`` classes including ``dn``.
    """
    order = tuple(int(i) for i in order)
    n = len(spec.rules) - 1
    dst = [(r.dst_mod, r.dst_res) for r in spec.rules]
    if mode == "simple":
        if sorted(order) != list(range(n)):
            raise ParameterError(f"simple order must permute range({n})")
        if proper and order == tuple(range(n)):
            raise ParameterError("identity is not a proper generalization")
        full = (0,) + tuple(i + 1 for i in order)
        tag = f"simple:{_rank(order)}"
    elif mode == "extended":
        if sorted(order) != list(range(n + 1)):
            raise ParameterError(f"extended order must permute range({n + 1})")
        if proper and order[0] == 0:
            raise ParameterError("extended generalization must move the class of multiples")
        full = order
        tag = f"ext:{generalization_rank(order, 'extended')}" if order[0] else f"simple:{_rank(order[1:])}"
    else:
        raise ParameterError(f"unknown mode {mode!r}")
    rules = tuple(
        ResidueRule(r.src_mod, r.src_res, *dst[full[i]]) for i, r in enumerate(spec.rules)
    )
    return PermSpec(rules, f"{spec.label}/{tag}", spec.params)


def iter_generalizations(base: PermSpec, mode: str, first_n: Optional[int] = None) -> Iterator[tuple[int, PermSpec]]:
    """Proper generalizations of ``base`` in rank order as ``(rank, spec)``."""
    n = len(base.rules) - 1
    total = count_generalizations(n, mode)
    ranks = range(1, total + 1) if mode == "simple" else range(total)
    for i, rank in enumerate(ranks):
        if first_n is not None and i >= first_n:
            return
        yield rank, generalize(base, generalization_order(n, mode, rank), mode)
