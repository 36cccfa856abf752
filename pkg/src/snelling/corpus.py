"""Enumeration of small graded bounded posets, up to isomorphism.

A graded bounded poset is a stack of rank levels between a bottom and a top,
with covers only between consecutive levels, every element covering something
in the level below and covered by something in the level above.  A level is
generated as a multiset of down-masks into the level below; a brute-force
canonical form over within-level orderings removes the remaining duplicates.
"""
from __future__ import annotations

from itertools import combinations_with_replacement, permutations, product
from typing import Iterator

from .poset import Poset, is_lattice

Downs = tuple  # downs[k][j]: bitmask of the elements of level k-1 covered by element j of level k


def compositions(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def _level_choices(below: int, size: int):
    """Multisets of ``size`` non-empty masks into ``below`` elements whose union is everything."""
    full = (1 << below) - 1
    for combo in combinations_with_replacement(range(1, full + 1), size):
        union = 0
        for m in combo:
            union |= m
        if union == full:
            yield combo


def _relabel(mask: int, position: dict[int, int]) -> int:
    out = 0
    for old, new in position.items():
        if (mask >> old) & 1:
            out |= 1 << new
    return out


def canonical_form(sizes: tuple[int, ...], downs: Downs) -> tuple:
    """Least relabelling over orderings of every level; the last level is simply sorted."""
    best = None
    for orders in product(*(permutations(range(s)) for s in sizes[:-1])):
        form = []
        for k in range(1, len(sizes)):
            position = {old: new for new, old in enumerate(orders[k - 1])}
            masks = [_relabel(m, position) for m in downs[k]]
            if k < len(sizes) - 1:
                form.append(tuple(masks[old] for old in orders[k]))
            else:
                form.append(tuple(sorted(masks)))
        form = tuple(form)
        if best is None or form < best:
            best = form
    return (sizes, best)


def to_poset(sizes: tuple[int, ...], downs: Downs) -> Poset:
    """Bottom is "0", inner elements "1".. in level order, top last."""
    names = ["0"]
    level_names = []
    for s in sizes:
        level_names.append([str(len(names) + j) for j in range(s)])
        names.extend(level_names[-1])
    top = str(len(names))
    names.append(top)
    covers = []
    if not sizes:
        covers.append(("0", top))
    else:
        covers += [("0", x) for x in level_names[0]]
        covers += [(x, top) for x in level_names[-1]]
        for k in range(1, len(sizes)):
            for j, mask in enumerate(downs[k]):
                for i in range(sizes[k - 1]):
                    if (mask >> i) & 1:
                        covers.append((level_names[k - 1][i], level_names[k][j]))
    return Poset(names, covers)


def graded_bounded_posets(max_elements: int) -> list[Poset]:
    """All graded bounded posets with at most ``max_elements`` elements, one per isomorphism class.

    Ordered by element count, then rank, then canonical form.
    """
    found = []
    if max_elements >= 1:
        found.append(((1, 0, ()), Poset(["0"])))
    for inner in range(0, max_elements - 1):
        for sizes in compositions(inner):
            seen = {}
            per_level = [[()]] + [list(_level_choices(sizes[k - 1], sizes[k])) for k in range(1, len(sizes))]
            for choice in product(*per_level):
                key = canonical_form(sizes, choice)
                if key not in seen:
                    seen[key] = choice
            for key in sorted(seen):
                found.append(((inner + 2, len(sizes) + 1, key), to_poset(sizes, seen[key])))
    found.sort(key=lambda item: item[0])
    return [P for _, P in found]


def graded_bounded_lattices(max_elements: int) -> list[Poset]:
    return [P for P in graded_bounded_posets(max_elements) if is_lattice(P)]
