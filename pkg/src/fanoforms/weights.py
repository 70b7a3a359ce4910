"""Integer weights, partitions, Littlewood-Richardson coefficients and Weyl dimensions."""

from __future__ import annotations

import json
from functools import lru_cache
from math import prod
from typing import Iterable, Sequence


class WeightError(ValueError):
    pass


def as_weight(entries: Iterable[int]) -> tuple[int, ...]:
    """Validate a GL weight: a non-empty, non-increasing tuple of integers."""
    w = tuple(int(e) for e in entries)
    if not w:
        raise WeightError("a weight needs at least one entry")
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        raise WeightError(f"weight {w} is not non-increasing")
    return w


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate a partition and trim trailing zeros. The empty partition is ``()``."""
    p = tuple(int(e) for e in parts)
    if any(e < 0 for e in p):
        raise WeightError(f"partition {p} has a negative part")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise WeightError(f"partition {p} is not non-increasing")
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def pad(w: Sequence[int], n: int) -> tuple[int, ...]:
    if len(w) > n:
        raise WeightError(f"{tuple(w)} has more than {n} entries")
    return tuple(w) + (0,) * (n - len(w))


def transpose(p: Sequence[int]) -> tuple[int, ...]:
    p = as_partition(p)
    if not p:
        return ()
    return tuple(sum(1 for part in p if part > j) for j in range(p[0]))


def partitions(n: int, max_part: int | None = None, max_len: int | None = None):
    """Yield the partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        rest_len = None if max_len is None else max_len - 1
        for rest in partitions(n - first, first, rest_len):
            yield (first,) + rest


def _horizontal_strips(shape, prev_counts, k):
    """Ways to add a horizontal strip of ``k`` boxes labelled i to ``shape``.

    ``prev_counts[r]`` is the number of (i-1)-labelled boxes in row r; the
    lattice-word condition bounds the running total of new boxes through row r
    by the running total of (i-1)'s strictly above r.
    """
    rows = len(shape) + 1
    shape = list(shape) + [0]
    out = []

    def rec(r, left, added, budget):
        if r == rows:
            if left == 0:
                out.append(tuple(added))
            return
        cap = left if r == 0 else min(left, shape[r - 1] - shape[r])
        if budget is not None:
            cap = min(cap, budget)
        for take in range(cap, -1, -1):
            added.append(take)
            nxt = None
            if budget is not None:
                above = prev_counts[r] if r < len(prev_counts) else 0
                nxt = budget - take + above
            rec(r + 1, left - take, added, nxt)
            added.pop()

    # budget: (i-1)'s strictly above the current row minus i's placed so far
    rec(0, k, [], None if prev_counts is None else 0)
    return out, shape


@lru_cache(maxsize=None)
def _lr(mu: tuple[int, ...], nu: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    # states: (shape, counts of the last letter per row) -> multiplicity
    states: dict[tuple, int] = {(mu, ()): 1}
    for i, k in enumerate(nu):
        new_states: dict[tuple, int] = {}
        for (shape, prev), mult in states.items():
            strips, padded = _horizontal_strips(shape, prev if i > 0 else None, k)
            for added in strips:
                new = tuple(a + b for a, b in zip(padded, added))
                while new and new[-1] == 0:
                    new = new[:-1]
                key = (new, added)
                new_states[key] = new_states.get(key, 0) + mult
        states = new_states
    result: dict[tuple[int, ...], int] = {}
    for (shape, _), mult in states.items():
        result[shape] = result.get(shape, 0) + mult
    return tuple(sorted(result.items(), reverse=True))


def lr_coefficients(mu: Sequence[int], nu: Sequence[int]) -> dict[tuple[int, ...], int]:
    """Littlewood-Richardson coefficients ``c^lambda_{mu,nu}`` as ``{lambda: c}``.

    Computed by enumerating LR skew tableaux of shape lambda/mu and content nu,
    one horizontal strip per letter, pruning on the lattice-word condition.
    """
    mu, nu = as_partition(mu), as_partition(nu)
    return dict(_lr(mu, nu))


def weyl_dim(lam: Sequence[int], n: int) -> int:
    """Dimension of the irreducible GL(n) representation of highest weight ``lam``."""
    if n < 1:
        raise WeightError("n must be positive")
    lam = tuple(lam)
    if len(lam) != n:
        raise WeightError(f"weight {lam} has length {len(lam)}, expected {n}")
    as_weight(lam)
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def tensor_weights(lam: Sequence[int], mu: Sequence[int], n: int) -> dict[tuple[int, ...], int]:
    """Decompose Sigma^lam (x) Sigma^mu for GL(n), weights allowed to be negative.

    Both weights are shifted to partitions, multiplied with LR, truncated to at
    most ``n`` rows, and shifted back.
    """
    lam, mu = as_weight(pad(lam, n)), as_weight(pad(mu, n))
    s, t = min(lam[-1], 0), min(mu[-1], 0)
    p = tuple(e - s for e in lam)
    q = tuple(e - t for e in mu)
    out = {}
    for nu, c in lr_coefficients(p, q).items():
        if len(nu) > n:
            continue
        out[tuple(e + s + t for e in pad(nu, n))] = c
    return out


def dump_weight(w: Sequence[int]) -> str:
    return json.dumps([int(e) for e in w])


def load_weight(text: str) -> tuple[int, ...]:
    return as_weight(json.loads(text))


def load_partition(text: str) -> tuple[int, ...]:
    return as_partition(json.loads(text))
