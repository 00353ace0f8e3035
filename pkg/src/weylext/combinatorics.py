"""Hooks, compositions and the index sets of the hook resolution.

Compositions are plain tuples of positive integers.  The order used for
Hom-complex bases puts lexicographically *larger* weights first, after
padding with zeros.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

Composition = tuple


@dataclass(frozen=True, order=True)
class Hook:
    """The hook partition (a, 1^b)."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError(f"invalid hook ({self.a}, 1^{self.b})")

    @property
    def degree(self) -> int:
        return self.a + self.b

    def shift(self, k: int) -> "Hook":
        """h(k) = (a + k, 1^(b - k))."""
        if not 0 <= k <= self.b:
            raise ValueError(f"shift {k} outside 0..{self.b}")
        return Hook(self.a + k, self.b - k)

    def __str__(self):
        return f"({self.a},1^{self.b})"


@dataclass(frozen=True)
class GlobalConfig:
    """Rank of the free module F; every query needs n >= b + 1."""

    n: int

    def check(self, b: int) -> None:
        if self.n < b + 1:
            raise ValueError(f"n = {self.n} is too small for b = {b} (need n >= b + 1)")


def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def compositions(total: int, length: int) -> Iterator[tuple]:
    """All compositions of ``total`` into ``length`` positive parts."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if total < length:
        return
    for cuts in combinations(range(1, total), length - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[t + 1] - bounds[t] for t in range(length))


def check_composition(mu: Sequence[int]) -> tuple:
    mu = tuple(int(x) for x in mu)
    if any(x < 1 for x in mu):
        raise ValueError(f"composition {mu} has a non-positive part")
    return mu


def padded(mu: Sequence[int], n: int) -> tuple:
    if len(mu) > n:
        raise ValueError(f"{tuple(mu)} has more than {n} parts")
    return tuple(mu) + (0,) * (n - len(mu))


def weight_less(mu: Sequence[int], nu: Sequence[int], n: int | None = None) -> bool:
    """True when every basis vector of weight ``mu`` precedes those of ``nu``.

    That happens when ``mu`` is lexicographically greater than ``nu`` after
    zero padding.
    """
    if n is None:
        n = max(len(mu), len(nu))
    return padded(mu, n) > padded(nu, n)


def sort_weights(weights, n: int | None = None) -> list:
    weights = list(weights)
    if n is None:
        n = max((len(w) for w in weights), default=0)
    return sorted(weights, key=lambda w: padded(w, n), reverse=True)


def resolution_compositions(a: int, b: int, i: int) -> list:
    """Index set of the summands D(a_1, ..., a_{b+1-i}) of P_i(a, b)."""
    if i < 0 or i > b:
        return []
    comps = [mu for mu in compositions(a + b, b + 1 - i) if a <= mu[0] <= a + i]
    return sort_weights(comps, b + 1)


def merge(mu: Sequence[int], s: int) -> tuple:
    """Add part s+1 into part s (1-based)."""
    if not 1 <= s < len(mu):
        raise ValueError(f"cannot merge position {s} of {tuple(mu)}")
    return tuple(mu[: s - 1]) + (mu[s - 1] + mu[s],) + tuple(mu[s + 1:])
