"""The prime/composite permutation ``1<->1, 2n<->P(n), 2n+1<->C(n)``.

``P(n)`` is the n-th prime and ``C(n)`` the n-th composite, counting from
``C(1) = 4``.  The map acts on the positive integers.  It is backed by a
sieve that grows geometrically whenever an evaluation runs past its end.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .perm import ResourceError


@dataclass(frozen=True)
class _Sieve:
    limit: int
    is_prime: np.ndarray
    primes: np.ndarray
    composites: np.ndarray
    pi: np.ndarray  # pi[x] = number of primes <= x

    @classmethod
    def build(cls, limit: int) -> "_Sieve":
        limit = max(int(limit), 16)
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, int(limit**0.5) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        composite = ~flags
        composite[:2] = False
        return cls(
            limit,
            flags,
            np.flatnonzero(flags),
            np.flatnonzero(composite),
            np.cumsum(flags, dtype=np.int64),
        )


class PrimeCompositePerm:
    """Bijection of the positive integers interleaving primes and composites."""

    label = "primecomp"
    params = None
    split_modulus = 2
    domain_start = 1
    # prime lookups need a sieve past every visited element
    default_escape = 10**6

    def __init__(self, limit: int = 1 << 12, grow: bool = True):
        self._sieve = _Sieve.build(limit)
        self._grow = grow
        self._lock = threading.Lock()

    @property
    def limit(self) -> int:
        return self._sieve.limit

    def enlarge(self, at_least: int) -> None:
        with self._lock:
            if self._sieve.limit >= at_least:
                return
            new = self._sieve.limit
            while new < at_least:
                new *= 2
            # readers keep the old snapshot until this assignment
            self._sieve = _Sieve.build(new)

    def _retry(self, fn, x):
        while True:
            s = self._sieve
            try:
                return fn(s, x)
            except ResourceError:
                if not self._grow:
                    raise
                self.enlarge(2 * s.limit)

    @staticmethod
    def _forward(s: _Sieve, x: int) -> int:
        if x < 1:
            raise ValueError("the prime/composite permutation acts on positive integers")
        if x == 1:
            return 1
        n, odd = divmod(x, 2)
        table = s.composites if odd else s.primes
        if n > len(table):
            raise ResourceError(f"sieve limit {s.limit} too small for index {n}")
        return int(table[n - 1])

    @staticmethod
    def _backward(s: _Sieve, y: int) -> int:
        if y < 1:
            raise ValueError("the prime/composite permutation acts on positive integers")
        if y == 1:
            return 1
        if y > s.limit:
            raise ResourceError(f"sieve limit {s.limit} too small for {y}")
        k = int(s.pi[y])
        if s.is_prime[y]:
            return 2 * k
        return 2 * (y - k - 1) + 1

    def nth_prime(self, n: int) -> int:
        return self.apply(2 * n)

    def nth_composite(self, n: int) -> int:
        return self.apply(2 * n + 1)

    def apply(self, x: int) -> int:
        return self._retry(self._forward, x)

    def apply_inv(self, y: int) -> int:
        return self._retry(self._backward, y)

    __call__ = apply

    def kernel_tables(self, inverse: bool = False):
        return None


def prime_composite_perm(limit: int = 1 << 12) -> PrimeCompositePerm:
    return PrimeCompositePerm(limit)
