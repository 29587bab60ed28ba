"""Littlewood-Richardson coefficients.

The coefficient c^λ_{μ,ν} is computed by counting LR skew tableaux of shape
λ/μ and content ν, filled row by row. A row is described by how many times
each letter occurs in it, which is enough to state both the column-strict
condition and the lattice-word condition.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .combinatorics import IndexSet, Partition, mu as mu_of

__all__ = [
    "LRCache",
    "default_cache",
    "lr_coefficient",
    "lr_nonzero",
    "lr_subset",
    "count_lr_tableaux",
]


def _pad(p: Sequence[int], length: int) -> list[int]:
    return list(p) + [0] * (length - len(p))


def count_lr_tableaux(lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Uncached count of LR tableaux of shape lam/mu and content nu."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size:
        return 0
    if len(mu) > len(lam) or len(nu) > len(lam):
        return 0
    if not lam.contains(mu) or not lam.contains(nu):
        return 0
    if not nu:
        return 1
    rows = len(lam)
    lam_l = list(lam)
    mu_l = _pad(mu, rows)
    nu_l = list(nu)
    letters = len(nu_l)

    def place_row(i, prev_cum, used):
        # prev_cum[k]: mu_{i-1} + number of letters <= k in row i-1, k = 0..letters
        if i == rows:
            return 1 if used == nu_l else 0
        width = lam_l[i] - mu_l[i]
        top = min(i + 1, letters)
        total = 0
        counts = [0] * letters

        def choose(k, filled):
            # pick how many copies of letter k+1 go into row i
            nonlocal total
            if k == top:
                if filled != width:
                    return
                cum = [mu_l[i]]
                for c in counts:
                    cum.append(cum[-1] + c)
                new_used = [u + c for u, c in zip(used, counts)]
                total += place_row(i + 1, cum, new_used)
                return
            cap = min(width - filled, nu_l[k] - used[k])
            if k > 0:
                cap = min(cap, used[k - 1] - used[k])
            if prev_cum is not None:
                cap = min(cap, prev_cum[k] - mu_l[i] - filled)
            if k == top - 1:
                if cap < width - filled:
                    return
                lo = width - filled
            else:
                lo = 0
            for a in range(lo, cap + 1):
                counts[k] = a
                choose(k + 1, filled + a)
            counts[k] = 0

        choose(0, 0)
        return total

    return place_row(0, None, [0] * letters)


class LRCache:
    """Thread-safe memo table keyed by (λ, sorted(μ, ν))."""

    def __init__(self, maxsize: int | None = None):
        self.maxsize = maxsize
        self._data: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(lam, mu, nu):
        lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
        a, b = (mu, nu) if tuple(mu) <= tuple(nu) else (nu, mu)
        return (tuple(lam), tuple(a), tuple(b))

    def get(self, lam, mu, nu) -> int:
        key = self.key(lam, mu, nu)
        with self._lock:
            if key in self._data:
                self.hits += 1
                return self._data[key]
        value = count_lr_tableaux(*key)
        with self._lock:
            self.misses += 1
            if self.maxsize is not None and len(self._data) >= self.maxsize:
                self._data.pop(next(iter(self._data)))
            self._data[key] = value
        return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._data)


default_cache = LRCache()


def lr_coefficient(lam, mu, nu, cache: LRCache | None = None) -> int:
    """c^λ_{μ,ν}."""
    cache = default_cache if cache is None else cache
    return cache.get(lam, mu, nu)


def lr_nonzero(lam, mu, nu, cache: LRCache | None = None) -> bool:
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size:
        return False
    if not lam.contains(mu) or not lam.contains(nu):
        return False
    return lr_coefficient(lam, mu, nu, cache) > 0


def lr_subset(I: IndexSet, J: IndexSet, L: IndexSet, cache: LRCache | None = None) -> int:
    """cc^L_{I,J} = c^{μ(L)}_{μ(I),μ(J)}, zero on a degree mismatch."""
    a, b, c = mu_of(I), mu_of(J), mu_of(L)
    if a.size + b.size != c.size:
        return 0
    return lr_coefficient(c, a, b, cache)
