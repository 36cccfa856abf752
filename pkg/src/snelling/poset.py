"""Finite posets given by cover relations.

Elements are stored by dense index; string identifiers only appear at the
boundary.  The order relation is materialised as one reachability bitmask per
element, so ``leq`` is a shift and a mask.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .verdict import Verdict

logger = logging.getLogger(__name__)

Element = Union[int, str]
Chain = tuple  # tuple of element indices, increasing in the poset order


class PosetError(ValueError):
    pass


class DuplicateElement(PosetError):
    pass


class UnknownElement(PosetError):
    pass


class CycleDetected(PosetError):
    pass


class NotBounded(PosetError):
    pass


class NotGraded(PosetError):
    def __init__(self, msg: str, witness: tuple = ()):
        super().__init__(msg)
        self.witness = witness


class InvalidInterval(PosetError):
    pass


class NotALattice(PosetError):
    def __init__(self, msg: str, pair: tuple = (), kind: str = "", bounds: tuple = ()):
        super().__init__(msg)
        self.pair = pair
        self.kind = kind
        self.bounds = bounds


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    ``covers`` may contain transitively implied pairs; those are dropped and
    recorded in ``dropped_covers`` (a warning is logged for each).
    """

    def __init__(self, elements: Sequence[str], covers: Iterable[tuple[str, str]] = (), *, quiet: bool = False):
        names = tuple(str(e) for e in elements)
        index: dict[str, int] = {}
        for i, name in enumerate(names):
            if name in index:
                raise DuplicateElement(f"duplicate element {name!r}")
            index[name] = i
        pairs = set()
        for a, b in covers:
            a, b = str(a), str(b)
            for e in (a, b):
                if e not in index:
                    raise UnknownElement(f"unknown element {e!r}")
            if a == b:
                raise CycleDetected(f"self-loop at {a!r}")
            pairs.add((index[a], index[b]))

        size = len(names)
        succ = [[] for _ in range(size)]
        indeg = [0] * size
        for a, b in pairs:
            succ[a].append(b)
            indeg[b] += 1
        queue = deque(i for i in range(size) if indeg[i] == 0)
        topo = []
        while queue:
            a = queue.popleft()
            topo.append(a)
            for b in succ[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    queue.append(b)
        if len(topo) != size:
            stuck = sorted(names[i] for i in range(size) if indeg[i] > 0)
            raise CycleDetected(f"cycle through {stuck}")

        pred = [[] for _ in range(size)]
        for a, b in pairs:
            pred[b].append(a)
        below = [0] * size
        for b in topo:
            m = 1 << b
            for a in pred[b]:
                m |= below[a]
            below[b] = m
        above = [0] * size
        for a in reversed(topo):
            m = 1 << a
            for b in succ[a]:
                m |= above[b]
            above[a] = m

        kept, dropped = [], []
        for a, b in sorted(pairs):
            between = above[a] & below[b] & ~((1 << a) | (1 << b))
            (dropped if between else kept).append((a, b))
        for a, b in dropped:
            if not quiet:
                logger.warning("dropping transitively implied cover %s < %s", names[a], names[b])

        self.names = names
        self.index = index
        self.covers = tuple(kept)
        self.dropped_covers = tuple((names[a], names[b]) for a, b in dropped)
        self._below = below
        self._above = above
        self._topo = tuple(topo)
        up = [[] for _ in range(size)]
        down = [[] for _ in range(size)]
        for a, b in kept:
            up[a].append(b)
            down[b].append(a)
        self.up = tuple(tuple(sorted(u)) for u in up)
        self.down = tuple(tuple(sorted(d)) for d in down)
        self._cache: dict = {}

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "Poset":
        """Build from any generating relation; the Hasse diagram is computed silently."""
        return cls(elements, pairs, quiet=True)

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return set(self.names) == set(other.names) and self.named_covers() == other.named_covers()

    def __hash__(self) -> int:
        return hash((frozenset(self.names), frozenset(self.named_covers())))

    def idx(self, x: Element) -> int:
        if isinstance(x, str):
            try:
                return self.index[x]
            except KeyError:
                raise UnknownElement(f"unknown element {x!r}") from None
        x = int(x)
        if not 0 <= x < len(self.names):
            raise UnknownElement(f"element index {x} out of range")
        return x

    def name(self, i: int) -> str:
        return self.names[i]

    def named_covers(self) -> set[tuple[str, str]]:
        return {(self.names[a], self.names[b]) for a, b in self.covers}

    def chain_names(self, chain: Sequence[int]) -> list[str]:
        return [self.names[i] for i in chain]

    def leq(self, x: Element, y: Element) -> bool:
        return bool((self._below[self.idx(y)] >> self.idx(x)) & 1)

    def lt(self, x: Element, y: Element) -> bool:
        x, y = self.idx(x), self.idx(y)
        return x != y and bool((self._below[y] >> x) & 1)

    def covers_pair(self, x: Element, y: Element) -> bool:
        return self.idx(y) in self.up[self.idx(x)]

    def down_mask(self, x: Element) -> int:
        """Bitmask of all elements <= x."""
        return self._below[self.idx(x)]

    def up_mask(self, x: Element) -> int:
        return self._above[self.idx(x)]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.down[i]]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not self.up[i]]

    def topological_order(self) -> tuple[int, ...]:
        return self._topo

    def induced(self, indices: Iterable[Element]) -> "Poset":
        """Induced subposet, element names and relative index order preserved."""
        keep = sorted({self.idx(i) for i in indices})
        pairs = [
            (self.names[a], self.names[b])
            for a in keep
            for b in keep
            if a != b and (self._below[b] >> a) & 1
        ]
        return Poset.from_relation([self.names[i] for i in keep], pairs)


def poset_from_covers(elements: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> Poset:
    return Poset(elements, cover_pairs)


@dataclass(frozen=True)
class GradingCertificate:
    rank: tuple[int, ...]
    bottom: int
    top: int
    n: int


def _path_up(P: Poset, x: int) -> list[int]:
    path = [x]
    while P.up[path[-1]]:
        path.append(P.up[path[-1]][0])
    return path


def grade(P: Poset) -> GradingCertificate:
    """Rank function of a bounded poset whose maximal chains all have equal length."""
    if "grade" in P._cache:
        return P._cache["grade"]
    if len(P) == 0:
        raise NotBounded("empty poset")
    mins, maxs = P.minimal(), P.maximal()
    if len(mins) != 1 or len(maxs) != 1:
        raise NotBounded(
            f"minimal elements {P.chain_names(mins)}, maximal elements {P.chain_names(maxs)}"
        )
    bottom, top = mins[0], maxs[0]
    short = [0] * len(P)
    long_ = [0] * len(P)
    s_pred = [-1] * len(P)
    l_pred = [-1] * len(P)
    for y in P.topological_order():
        if y == bottom:
            continue
        cand = P.down[y]
        s = min(cand, key=lambda x: short[x])
        l = max(cand, key=lambda x: long_[x])
        short[y], s_pred[y] = short[s] + 1, s
        long_[y], l_pred[y] = long_[l] + 1, l
    for x in P.topological_order():
        if short[x] != long_[x]:
            tail = _path_up(P, x)[1:]
            witness = []
            for pred in (l_pred, s_pred):
                head = [x]
                while pred[head[-1]] != -1:
                    head.append(pred[head[-1]])
                witness.append(tuple(P.chain_names(head[::-1] + tail)))
            raise NotGraded(
                f"maximal chains of lengths {len(witness[0]) - 1} and {len(witness[1]) - 1}",
                tuple(witness),
            )
    cert = GradingCertificate(tuple(short), bottom, top, short[top])
    P._cache["grade"] = cert
    return cert


def maximal_chains(P: Poset, interval: tuple[Element, Element] | None = None) -> list[Chain]:
    """All saturated chains of [lower, upper], lexicographic by element index."""
    if interval is None:
        mins, maxs = P.minimal(), P.maximal()
        if len(mins) != 1 or len(maxs) != 1:
            raise NotBounded("full interval needs a unique bottom and top")
        lo, hi = mins[0], maxs[0]
    else:
        lo, hi = P.idx(interval[0]), P.idx(interval[1])
        if not P.leq(lo, hi):
            raise InvalidInterval(f"{P.name(lo)} is not <= {P.name(hi)}")
    key = (lo, hi)
    cached = P._cache.setdefault("chains", {})
    if key in cached:
        return cached[key]
    window = P.up_mask(lo) & P.down_mask(hi)
    out: list[Chain] = []
    stack = [lo]

    def walk(x: int) -> None:
        if x == hi:
            out.append(tuple(stack))
            return
        for y in P.up[x]:
            if (window >> y) & 1:
                stack.append(y)
                walk(y)
                stack.pop()

    walk(lo)
    cached[key] = out
    return out


@dataclass(frozen=True)
class LatticeTable:
    poset: Poset
    meet_table: np.ndarray
    join_table: np.ndarray

    def meet(self, x: Element, y: Element) -> int:
        return int(self.meet_table[self.poset.idx(x), self.poset.idx(y)])

    def join(self, x: Element, y: Element) -> int:
        return int(self.join_table[self.poset.idx(x), self.poset.idx(y)])


def maximal_lower_bounds(P: Poset, x: Element, y: Element) -> list[int]:
    common = P.down_mask(x) & P.down_mask(y)
    return [z for z in _bits(common) if common & P.up_mask(z) == 1 << z]


def minimal_upper_bounds(P: Poset, x: Element, y: Element) -> list[int]:
    common = P.up_mask(x) & P.up_mask(y)
    return [z for z in _bits(common) if common & P.down_mask(z) == 1 << z]


def lattice_ops(P: Poset | LatticeTable) -> LatticeTable:
    """Meet and join tables, or NotALattice carrying a witness pair."""
    if isinstance(P, LatticeTable):
        return P
    if "lattice" in P._cache:
        return P._cache["lattice"]
    size = len(P)
    meet = np.zeros((size, size), dtype=np.int64)
    join = np.zeros((size, size), dtype=np.int64)
    for x in range(size):
        for y in range(x, size):
            for kind, fn, table in (
                ("meet", maximal_lower_bounds, meet),
                ("join", minimal_upper_bounds, join),
            ):
                bounds = fn(P, x, y)
                if len(bounds) != 1:
                    names = tuple(P.chain_names(bounds))
                    raise NotALattice(
                        f"{P.name(x)}, {P.name(y)} have {kind} candidates {list(names)}",
                        (P.name(x), P.name(y)),
                        kind,
                        names,
                    )
                table[x, y] = table[y, x] = bounds[0]
    result = LatticeTable(P, meet, join)
    P._cache["lattice"] = result
    return result


def is_lattice(P: Poset) -> bool:
    try:
        lattice_ops(P)
    except NotALattice:
        return False
    return True


def is_bowtie_free(P: Poset) -> Verdict:
    """No distinct a, b both covering distinct c, d."""
    down = [set(d) for d in P.down]
    for a in range(len(P)):
        for b in range(a + 1, len(P)):
            common = sorted(down[a] & down[b])
            if len(common) >= 2:
                c, d = common[0], common[1]
                w = tuple(P.chain_names((a, b, c, d)))
                return Verdict(False, "bowtie-free", f"bowtie {w}", w)
    return Verdict(True, "bowtie-free")


def is_distributive(L: Poset | LatticeTable) -> Verdict:
    """Exhaustive check of x ^ (y v z) == (x ^ y) v (x ^ z)."""
    table = lattice_ops(L)
    meet, join = table.meet_table, table.join_table
    for x in range(len(table.poset)):
        lhs = meet[x][join]
        mx = meet[x]
        rhs = join[mx[:, None], mx[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = (int(v) for v in bad[0])
            w = tuple(table.poset.chain_names((x, y, z)))
            return Verdict(False, "distributive lattice", f"distributivity fails at {w}", w)
    return Verdict(True, "distributive lattice")


def closure_indices(L: Poset | LatticeTable, subset: Iterable[Element]) -> list[int]:
    table = lattice_ops(L)
    P = table.poset
    have = {P.idx(x) for x in subset}
    frontier = list(have)
    while frontier:
        new = []
        current = list(have)
        for x in frontier:
            for y in current:
                for z in (int(table.meet_table[x, y]), int(table.join_table[x, y])):
                    if z not in have:
                        have.add(z)
                        new.append(z)
        frontier = new
    return sorted(have)


def sublattice_closure(L: Poset | LatticeTable, subset: Iterable[Element]) -> Poset:
    """Smallest meet- and join-closed subset containing ``subset``, as an induced subposet."""
    table = lattice_ops(L)
    return table.poset.induced(closure_indices(table, subset))


def order_ideals(Q: Poset) -> list[int]:
    """Down-closed subsets of Q as bitmasks, sorted by size then element indices."""
    strict_down = [Q.down_mask(x) & ~(1 << x) for x in range(len(Q))]
    ideals = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for x in range(len(Q)):
                if not (ideal >> x) & 1 and strict_down[x] & ~ideal == 0:
                    bigger = ideal | (1 << x)
                    if bigger not in ideals:
                        ideals.add(bigger)
                        nxt.append(bigger)
        frontier = nxt
    return sorted(ideals, key=lambda m: (bin(m).count("1"), list(_bits(m))))


def ideal_name(Q: Poset, ideal: int) -> str:
    return "{" + ",".join(Q.names[i] for i in _bits(ideal)) + "}"


def order_ideal_lattice(Q: Poset) -> Poset:
    """J(Q): order ideals under inclusion; a cover adds one element."""
    ideals = order_ideals(Q)
    names = [ideal_name(Q, m) for m in ideals]
    present = set(ideals)
    covers = []
    for m, name in zip(ideals, names):
        for x in range(len(Q)):
            bigger = m | (1 << x)
            if bigger != m and bigger in present:
                covers.append((name, ideal_name(Q, bigger)))
    return Poset(names, covers)
