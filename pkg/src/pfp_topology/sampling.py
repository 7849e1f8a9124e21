"""Dynamic weighted sampling over node ids.

A Fenwick (binary indexed) tree gives O(log N) point updates and O(log N)
inverse-CDF draws, which is what the growth loop needs: every link changes two
weights and every step makes three or four draws.
"""

from __future__ import annotations

import random
from typing import Callable, Container


class SamplingError(RuntimeError):
    """No node satisfies the sampling constraints."""


class WeightTree:
    def __init__(self, capacity: int):
        self._size = max(1, capacity)
        self._tree = [0.0] * (self._size + 1)
        self._weight = [0.0] * self._size
        self._top = 1 << (self._size.bit_length() - 1)
        self.total = 0.0

    def __len__(self) -> int:
        return self._size

    def weight(self, i: int) -> float:
        return self._weight[i]

    def grow(self, capacity: int) -> None:
        if capacity <= self._size:
            return
        weights = self._weight + [0.0] * (capacity - self._size)
        self.__init__(capacity)
        for i, w in enumerate(weights):
            if w:
                self.set(i, w)

    def set(self, i: int, w: float) -> None:
        delta = w - self._weight[i]
        if delta == 0.0:
            return
        self._weight[i] = w
        self.total += delta
        tree = self._tree
        j = i + 1
        n = self._size
        while j <= n:
            tree[j] += delta
            j += j & -j

    def find(self, u: float) -> int:
        """Smallest index whose inclusive prefix sum exceeds ``u``."""
        tree = self._tree
        pos = 0
        step = self._top
        n = self._size
        while step:
            nxt = pos + step
            if nxt <= n and tree[nxt] <= u:
                pos = nxt
                u -= tree[nxt]
            step >>= 1
        return pos

    def draw(self, rng: random.Random) -> int:
        """Index drawn with probability proportional to its weight."""
        if self.total <= 0.0:
            raise SamplingError("cannot draw from an all-zero weight tree")
        while True:
            i = self.find(rng.random() * self.total)
            # accumulated rounding can push the draw onto a zero-weight slot
            if i < self._size and self._weight[i] > 0.0:
                return i


def draw_excluding(
    tree: WeightTree,
    rng: random.Random,
    exclude: Container[int],
    reject: Callable[[int], bool] | None = None,
    max_tries: int = 256,
) -> int:
    """Draw from ``tree`` conditioned on avoiding ``exclude`` and ``reject``.

    Rejection sampling first; after ``max_tries`` misses the eligible set is
    enumerated and sampled exactly, which is still the same conditional law.
    """
    for _ in range(max_tries):
        v = tree.draw(rng)
        if v not in exclude and (reject is None or not reject(v)):
            return v
    eligible = [
        v
        for v in range(len(tree))
        if tree.weight(v) > 0.0 and v not in exclude and (reject is None or not reject(v))
    ]
    if not eligible:
        raise SamplingError("no eligible node left to sample")
    total = sum(tree.weight(v) for v in eligible)
    u = rng.random() * total
    acc = 0.0
    for v in eligible:
        acc += tree.weight(v)
        if u < acc:
            return v
    return eligible[-1]
