"""Permutations of [n] in one-line notation, reduced words, weak order.

Products compose right to left: ``(u * v)(k) = u(v(k))``, so right
multiplication by s_i swaps the entries in positions i and i+1.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

Perm = tuple  # one-line notation, values 1..n
Word = tuple  # generator indices i_1..i_r, each in 1..n-1


class PermError(ValueError):
    pass


class IndexOutOfRange(PermError):
    pass


class SizeMismatch(PermError):
    pass


class NotAPermutation(PermError):
    pass


def check_perm(w: Sequence[int]) -> Perm:
    w = tuple(int(v) for v in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise NotAPermutation(f"{w} is not a permutation of [{len(w)}]")
    return w


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(u: Perm, v: Perm) -> Perm:
    """u * v, i.e. apply v first."""
    if len(u) != len(v):
        raise SizeMismatch(f"sizes {len(u)} and {len(v)}")
    return tuple(u[k - 1] for k in v)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for pos, val in enumerate(w, start=1):
        out[val - 1] = pos
    return tuple(out)


def times_s(w: Perm, i: int) -> Perm:
    """w * s_i: swap positions i and i+1."""
    if not 1 <= i < len(w):
        raise IndexOutOfRange(f"s_{i} with n={len(w)}")
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def word_to_perm(word: Sequence[int], n: int) -> Perm:
    """The product s_{i_1} s_{i_2} ... s_{i_r} in one-line notation."""
    w = identity(n)
    for i in word:
        if not 1 <= i < n:
            raise IndexOutOfRange(f"generator index {i} outside [1, {n - 1}]")
        w = times_s(w, i)
    return w


def inv_set(w: Perm) -> frozenset[tuple[int, int]]:
    """{(w(j), w(i)) : i < j, w(i) > w(j)}: the inverted value pairs, smaller first."""
    return frozenset((w[j], w[i]) for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def _pair_bit(a: int, b: int, n: int) -> int:
    return 1 << ((a - 1) * n + (b - 1))


def inv_mask(w: Perm) -> int:
    n = len(w)
    m = 0
    for a, b in inv_set(w):
        m |= _pair_bit(a, b, n)
    return m


def length(w: Perm) -> int:
    return sum(1 for i, j in combinations(range(len(w)), 2) if w[i] > w[j])


def descents(w: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(1, len(w)) if w[i - 1] > w[i])


def leq_weak(v: Perm, w: Perm) -> bool:
    """Right weak order: INV(v) contained in INV(w)."""
    if len(v) != len(w):
        raise SizeMismatch(f"sizes {len(v)} and {len(w)}")
    mv, mw = inv_mask(v), inv_mask(w)
    return mv & ~mw == 0


def is_reduced(word: Sequence[int], n: int) -> bool:
    return len(word) == length(word_to_perm(word, n))


def weak_order_ideal(w: Perm) -> set[Perm]:
    """All v with v <=_R w, found by walking down through descents."""
    seen = {w}
    stack = [w]
    while stack:
        u = stack.pop()
        for i in descents(u):
            v = times_s(u, i)
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen
