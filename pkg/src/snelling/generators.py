"""Labelled fixture families: Boolean lattices, order-ideal lattices, partition
and noncrossing partition lattices, plus a few sporadic posets."""
from __future__ import annotations

import random
from itertools import combinations
from typing import Mapping, Sequence

from .hecke import ChainAction
from .labeling import EdgeLabeling
from .poset import Poset, maximal_chains, order_ideals
from .supersolvable import poset_p_omega

Labeled = tuple  # (Poset, EdgeLabeling)


class NotALinearExtension(ValueError):
    pass


def subset_name(S: Sequence) -> str:
    return "{" + ",".join(str(x) for x in S) + "}"


def gen_boolean(n: int) -> Labeled:
    """B_n with lambda(x, y) = the element of y - x."""
    subsets = [S for k in range(n + 1) for S in combinations(range(1, n + 1), k)]
    names = [subset_name(S) for S in subsets]
    covers, labels = [], {}
    for S in subsets:
        for i in range(1, n + 1):
            if i not in S:
                T = tuple(sorted(S + (i,)))
                covers.append((subset_name(S), subset_name(T)))
                labels[covers[-1]] = i
    P = Poset(names, covers)
    return P, {(P.idx(a), P.idx(b)): v for (a, b), v in labels.items()}


def antichain(n: int) -> Poset:
    return Poset([str(i) for i in range(1, n + 1)])


def chain_poset(k: int) -> Poset:
    """The chain 1 < 2 < ... < k."""
    names = [str(i) for i in range(1, k + 1)]
    return Poset(names, list(zip(names, names[1:])))


def gen_chain(n: int) -> Labeled:
    """A chain of rank n labelled 1, 2, ..., n."""
    P = chain_poset(n + 1)
    return P, {(i, i + 1): i + 1 for i in range(n)}


def gen_j_of_poset(Q: Poset, linear_extension: Mapping[str, int] | None = None) -> Labeled:
    """J(Q) with each cover labelled by the linear-extension value of the added element.

    ``linear_extension`` maps element names of Q to 1..|Q|; it defaults to
    integer names when Q's elements are "1".."n", else to index order.
    """
    if linear_extension is None:
        try:
            linear_extension = {x: int(x) for x in Q.names}
        except ValueError:
            linear_extension = {x: i + 1 for i, x in enumerate(Q.names)}
    values = [linear_extension.get(x) for x in Q.names]
    if sorted(v for v in values if v is not None) != list(range(1, len(Q) + 1)) or None in values:
        raise NotALinearExtension(f"{dict(linear_extension)} is not a bijection onto [{len(Q)}]")
    for a, b in Q.covers:
        if values[a] >= values[b]:
            raise NotALinearExtension(f"{Q.name(a)} < {Q.name(b)} but labels {values[a]} >= {values[b]}")

    ideals = order_ideals(Q)
    present = set(ideals)

    def name(m: int) -> str:
        return subset_name([Q.names[i] for i in range(len(Q)) if (m >> i) & 1])

    covers, labels = [], {}
    for m in ideals:
        for x in range(len(Q)):
            bigger = m | (1 << x)
            if bigger != m and bigger in present:
                covers.append((name(m), name(bigger)))
                labels[covers[-1]] = values[x]
    P = Poset([name(m) for m in ideals], covers)
    return P, {(P.idx(a), P.idx(b)): v for (a, b), v in labels.items()}


def gen_j_of_perm(perm: Sequence[int]) -> Labeled:
    """J(P_perm) with the natural labelling (its elements 1..n are a linear extension)."""
    return gen_j_of_poset(poset_p_omega(perm))


def random_natural_poset(k: int, density: float, rng: random.Random) -> Poset:
    """A random poset on "1".."k" in which i < j only if i < j as integers."""
    names = [str(i) for i in range(1, k + 1)]
    pairs = [(str(i), str(j)) for i, j in combinations(range(1, k + 1), 2) if rng.random() < density]
    return Poset(names, pairs, quiet=True)


def random_j_of_poset(rng: random.Random, max_elements: int = 12, max_k: int = 6) -> Labeled:
    """J(Q) of a random naturally labelled Q, redrawn until J(Q) has at most ``max_elements`` elements."""
    while True:
        k = rng.randint(1, max_k)
        Q = random_natural_poset(k, rng.random(), rng)
        if len(order_ideals(Q)) <= max_elements:
            return gen_j_of_poset(Q)


# set partitions

def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions of [n], each a tuple of sorted blocks sorted by minimum."""
    out = []

    def grow(k: int, blocks: list[list[int]]) -> None:
        if k > n:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(k)
            grow(k + 1, blocks)
            b.pop()
        blocks.append([k])
        grow(k + 1, blocks)
        blocks.pop()

    grow(1, [])
    return out


def partition_name(blocks) -> str:
    """Blocks by decreasing size then lexicographically, joined by '-' (e.g. 24-1-3)."""
    sep = "" if max((max(b) for b in blocks), default=0) < 10 else ","
    ordered = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: (-len(b), b))
    return "-".join(sep.join(str(i) for i in b) for b in ordered)


def is_noncrossing(blocks) -> bool:
    where = {i: k for k, b in enumerate(blocks) for i in b}
    for b in blocks:
        for i, k in combinations(sorted(b), 2):
            for j in range(i + 1, k):
                for l in range(k + 1, len(where) + 1):
                    if where[j] == where[l] and where[j] != where[i]:
                        return False
    return True


def _partition_covers(parts):
    present = set(parts)
    for p in parts:
        for a, b in combinations(range(len(p)), 2):
            merged = sorted(p[a] + p[b])
            rest = [blk for k, blk in enumerate(p) if k not in (a, b)]
            q = tuple(sorted(rest + [tuple(merged)], key=lambda blk: blk[0]))
            if q in present:
                yield p, q, max(p[a][0], p[b][0]) - 1


def _partition_lattice(parts) -> Labeled:
    names = [partition_name(p) for p in parts]
    covers, labels = [], {}
    for p, q, v in _partition_covers(parts):
        covers.append((partition_name(p), partition_name(q)))
        labels[covers[-1]] = v
    P = Poset(names, covers)
    return P, {(P.idx(a), P.idx(b)): v for (a, b), v in labels.items()}


def _by_rank(parts):
    return sorted(parts, key=lambda p: (-len(p), partition_name(p)))


def gen_partition_lattice(n: int) -> Labeled:
    """Pi_n under refinement; merging blocks B, B' is labelled max(min B, min B') - 1.

    The rank is n - 1 and labels lie in [n - 1].
    """
    return _partition_lattice(_by_rank(set_partitions(n)))


def gen_noncrossing(n: int) -> Labeled:
    """NC_n as the subposet of Pi_n on noncrossing partitions, labels restricted."""
    return _partition_lattice(_by_rank([p for p in set_partitions(n) if is_noncrossing(p)]))


def partition_m_chain(n: int) -> list[str]:
    """Bottom, then the partitions whose only non-singleton block is [i], i = 2..n."""
    chain = [partition_name([(i,) for i in range(1, n + 1)])]
    for i in range(2, n + 1):
        chain.append(partition_name([tuple(range(1, i + 1))] + [(j,) for j in range(i + 1, n + 1)]))
    return chain


# sporadic fixtures

BOWTIE_ELEMENTS = ["a", "b", "c", "d", "e", "f"]
BOWTIE_COVERS = [("a", "b"), ("a", "c"), ("b", "d"), ("b", "e"), ("c", "d"), ("c", "e"), ("d", "f"), ("e", "f")]
# rows: U_1, U_2; columns: m_1 = abdf, m_2 = abef, m_3 = acdf, m_4 = acef
BOWTIE_TABLE = ((2, 3, 2, 3), (1, 1, 3, 3))


def fixture_bowtie_good_action() -> tuple[Poset, ChainAction]:
    """Rank 3, two atoms and two coatoms with all four middle covers, and a
    good non-snelling 0-Hecke action on its four maximal chains."""
    P = Poset(BOWTIE_ELEMENTS, BOWTIE_COVERS)
    chains = tuple(maximal_chains(P))
    return P, ChainAction(P, chains, BOWTIE_TABLE)


def fixture_b4_minus_edge() -> Labeled:
    """B_4 with the cover {3,4} < {2,3,4} deleted; remaining labels inherited."""
    B, lab = gen_boolean(4)
    cut = (B.idx("{3,4}"), B.idx("{2,3,4}"))
    covers = [(B.name(a), B.name(b)) for a, b in B.covers if (a, b) != cut]
    P = Poset(B.names, covers)
    return P, {e: v for e, v in lab.items() if e != cut}


# First hit of scripts/search_bowtie_snellable.py over graded bounded posets
# with at most 9 elements.  Rank 3, three atoms 1, 2, 3 and four coatoms; the
# coatoms 4 and 5 both cover the atoms 1 and 2, forming a bowtie.  Not a lattice.
SNELLABLE_BOWTIE_ELEMENTS = [str(i) for i in range(9)]
SNELLABLE_BOWTIE_COVERS = [
    ("0", "1"), ("0", "2"), ("0", "3"),
    ("1", "4"), ("1", "5"), ("1", "6"),
    ("2", "4"), ("2", "5"), ("2", "7"),
    ("3", "6"), ("3", "7"),
    ("4", "8"), ("5", "8"), ("6", "8"), ("7", "8"),
]


def fixture_snellable_bowtie() -> Poset:
    return Poset(SNELLABLE_BOWTIE_ELEMENTS, SNELLABLE_BOWTIE_COVERS)
