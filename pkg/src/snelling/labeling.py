"""Edge labelings of graded posets: EL and S_n EL verification, snelling search."""
from __future__ import annotations

from collections import defaultdict
from typing import Mapping, Sequence

from . import perms
from .poset import Chain, NotBounded, NotGraded, Poset, grade, maximal_chains
from .verdict import Verdict

EdgeLabeling = dict  # (lower index, upper index) -> int

EL_TAG = "EL-labeling"
SNELLING_TAG = "S_n EL-labeling"


class UnlabeledEdge(KeyError):
    pass


class LabelOnNonCover(ValueError):
    pass


def labeling_from_names(P: Poset, labels: Mapping[tuple[str, str], int]) -> EdgeLabeling:
    out = {}
    for (a, b), v in labels.items():
        a, b = P.idx(a), P.idx(b)
        if b not in P.up[a]:
            raise LabelOnNonCover(f"{P.name(a)}|{P.name(b)} is not a cover")
        out[(a, b)] = int(v)
    return out


def labeling_to_names(P: Poset, labeling: EdgeLabeling) -> dict[tuple[str, str], int]:
    return {(P.name(a), P.name(b)): v for (a, b), v in labeling.items()}


def chain_word(labeling: EdgeLabeling, chain: Sequence[int]) -> tuple[int, ...]:
    word = []
    for a, b in zip(chain, chain[1:]):
        try:
            word.append(labeling[(a, b)])
        except KeyError:
            raise UnlabeledEdge((a, b)) from None
    return tuple(word)


def is_increasing(word: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


def format_word(word: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in word) + ")"


def _chains_from(P: Poset, labeling: EdgeLabeling, s: int) -> dict[int, list[tuple[Chain, tuple]]]:
    out: dict[int, list] = defaultdict(list)

    def walk(chain: tuple, word: tuple) -> None:
        x = chain[-1]
        out[x].append((chain, word))
        for y in P.up[x]:
            walk(chain + (y,), word + (labeling[(x, y)],))

    walk((s,), ())
    return out


def _missing_edge(P: Poset, labeling: EdgeLabeling):
    for e in P.covers:
        if e not in labeling:
            return e
    return None


def _interval_failure(P, tag, s, t, chains, reason) -> Verdict:
    words = ", ".join(format_word(w) for _, w in chains)
    msg = f"interval {P.name(s)}..{P.name(t)}: chains {words}"
    witness = {
        "interval": (P.name(s), P.name(t)),
        "chains": [P.chain_names(c) for c, _ in chains],
        "words": [list(w) for _, w in chains],
    }
    return Verdict(False, tag, f"{reason}; {msg}", witness)


def _check_intervals(P: Poset, labeling: EdgeLabeling, tag: str, lex: bool) -> Verdict | None:
    for s in range(len(P)):
        by_top = _chains_from(P, labeling, s)
        for t, chains in sorted(by_top.items()):
            if t == s:
                continue
            inc = [c for c in chains if is_increasing(c[1])]
            if len(inc) != 1:
                shown = inc if inc else chains[:2]
                return _interval_failure(
                    P, tag, s, t, shown, f"{len(inc)} increasing maximal chains"
                )
            if lex:
                best = inc[0][1]
                for c in chains:
                    if c is not inc[0] and not c[1] > best:
                        return _interval_failure(
                            P, tag, s, t, [inc[0], c], "increasing chain is not lexicographically first"
                        )
    return None


def verify_el(P: Poset, labeling: EdgeLabeling) -> Verdict:
    """Both EL conditions over every interval [s, t]."""
    try:
        grade(P)
    except (NotBounded, NotGraded) as exc:
        return Verdict(False, EL_TAG, str(exc))
    missing = _missing_edge(P, labeling)
    if missing:
        return Verdict(False, EL_TAG, f"unlabeled edge {P.chain_names(missing)}", tuple(P.chain_names(missing)))
    failure = _check_intervals(P, labeling, EL_TAG, lex=True)
    return failure if failure is not None else Verdict(True, EL_TAG)


def verify_snelling(P: Poset, labeling: EdgeLabeling) -> Verdict:
    """Every maximal chain reads a permutation of [n]; every interval has one increasing chain."""
    try:
        cert = grade(P)
    except (NotBounded, NotGraded) as exc:
        return Verdict(False, SNELLING_TAG, str(exc))
    missing = _missing_edge(P, labeling)
    if missing:
        return Verdict(False, SNELLING_TAG, f"unlabeled edge {P.chain_names(missing)}", tuple(P.chain_names(missing)))
    target = list(range(1, cert.n + 1))
    for chain in maximal_chains(P):
        word = chain_word(labeling, chain)
        if sorted(word) != target:
            return Verdict(
                False,
                SNELLING_TAG,
                f"chain {P.chain_names(chain)} reads {format_word(word)}, not a permutation of [{cert.n}]",
                {"chains": [P.chain_names(chain)], "words": [list(word)]},
            )
    failure = _check_intervals(P, labeling, SNELLING_TAG, lex=False)
    if failure is not None:
        return failure
    # the lex condition is implied by the two above; a failure here is a bug
    lex = _check_intervals(P, labeling, EL_TAG, lex=True)
    if lex is not None:
        raise RuntimeError(f"lexicographic condition failed on a snelling: {lex.reason}")
    return Verdict(True, SNELLING_TAG)


def find_snelling(P: Poset) -> EdgeLabeling | None:
    """A snelling of P, or None if P has none.

    Every maximal chain in turn is tried as the chain labelled 1, 2, ..., n;
    the remaining edges are assigned in order of (lower rank, lower, upper)
    with labels tried in increasing order, so the result is deterministic.

    Pruning uses two exact consequences of the definition: all saturated
    chains from the bottom to x carry the same label set, and once every edge
    into y is labelled each interval [s, y] has exactly one increasing chain.
    """
    cert = grade(P)
    n = cert.n
    if n == 0:
        return {}
    rank = cert.rank
    edges = sorted(P.covers, key=lambda e: (rank[e[0]], e[0], e[1]))
    last_into = {}
    for pos, (x, y) in enumerate(edges):
        last_into[y] = pos
    below = [[s for s in range(len(P)) if P.leq(s, y)] for y in range(len(P))]

    for m0 in maximal_chains(P):
        forced = {(m0[k], m0[k + 1]): k + 1 for k in range(n)}
        found = _search(P, n, edges, last_into, below, forced, cert.bottom)
        if found is not None:
            return found
    return None


def _search(P, n, edges, last_into, below, forced, bottom):
    lam: list[int | None] = [None] * len(P)
    lam[bottom] = 0
    # inc_last[(s, x)]: last label of the unique increasing chain of [s, x]
    inc_last: dict[tuple[int, int], int] = {(x, x): 0 for x in range(len(P))}
    labels: dict[tuple[int, int], int] = {}

    def close_interval(y: int) -> list | None:
        added = []
        for s in below[y]:
            if s == y:
                continue
            hit = None
            count = 0
            for x in P.down[y]:
                if (s, x) in inc_last and inc_last[(s, x)] < labels[(x, y)]:
                    count += 1
                    hit = labels[(x, y)]
            if count != 1:
                for key in added:
                    del inc_last[key]
                return None
            inc_last[(s, y)] = hit
            added.append((s, y))
        return added

    def dfs(pos: int) -> bool:
        if pos == len(edges):
            return True
        x, y = edges[pos]
        lx = lam[x]
        if (x, y) in forced:
            candidates = [forced[(x, y)]]
        elif lam[y] is not None:
            diff = lam[y] & ~lx
            if lam[y] & lx != lx or diff & (diff - 1):
                return False
            candidates = [diff.bit_length()]
        else:
            candidates = range(1, n + 1)
        for v in candidates:
            bit = 1 << (v - 1)
            if lx & bit:
                continue
            new = lx | bit
            fresh = lam[y] is None
            if not fresh and lam[y] != new:
                continue
            lam[y] = new
            labels[(x, y)] = v
            added = []
            ok = True
            if last_into[y] == pos:
                added = close_interval(y)
                ok = added is not None
            if ok and dfs(pos + 1):
                return True
            if ok:
                for key in added:
                    del inc_last[key]
            del labels[(x, y)]
            if fresh:
                lam[y] = None
        return False

    if dfs(0):
        return dict(labels)
    return None


def descent_set_of_word(word: Sequence[int]) -> frozenset[int]:
    perms.check_perm(word)
    return perms.descents(word)


def inversions_of_word(word: Sequence[int]) -> int:
    return perms.length(perms.check_perm(word))


def relabel(labeling: EdgeLabeling, mapping) -> EdgeLabeling:
    """Apply a value map to every label."""
    return {e: mapping(v) for e, v in labeling.items()}

