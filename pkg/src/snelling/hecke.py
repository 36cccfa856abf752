"""Local 0-Hecke actions on maximal chains.

The operators U_1..U_{n-1} act on the maximal chains of a graded bounded
poset.  U_i is idempotent (T_i = -U_i satisfies T_i^2 = -T_i); everything
here is phrased in terms of U_i.

A ``UWord`` (i_1, ..., i_r) denotes U_{i_1} U_{i_2} ... U_{i_r}, so U_{i_r}
is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from . import perms
from .labeling import EdgeLabeling, chain_word, verify_snelling
from .poset import Element, Poset, grade, maximal_chains
from .qsym import flag_f, format_set, mask_to_set, set_to_mask
from .verdict import Verdict

HECKE_TAG = "0-Hecke relations"
GOOD_TAG = "good action: alpha_P(S) = #{m : Des(m) in S}"
RECONSTRUCT_TAG = "good action on bowtie-free poset gives a snelling"


class ActionError(ValueError):
    pass


class SnellingInvalid(ActionError):
    pass


class AmbiguousSibling(ActionError):
    pass


class UnknownChain(ActionError):
    pass


class NoSink(ActionError):
    pass


class MultipleSinks(ActionError):
    pass


class NonTerminating(ActionError):
    pass


class HeckeRelationFailure(ActionError):
    pass


class NotGood(ActionError):
    pass


class EdgeConflict(ActionError):
    def __init__(self, msg: str, edge=None, labels=()):
        super().__init__(msg)
        self.edge = edge
        self.labels = labels


class AmbiguousPermutation(ActionError):
    def __init__(self, msg: str, chain=None, words=(), perms_=()):
        super().__init__(msg)
        self.chain = chain
        self.words = words
        self.perms = perms_


@dataclass(frozen=True)
class ChainAction:
    """U_i as a dense table: ``table[i - 1][c]`` is the index of U_i(chains[c])."""

    poset: Poset
    chains: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.table) + 1 if self.chains else 0

    def __post_init__(self):
        for row in self.table:
            if len(row) != len(self.chains):
                raise ActionError("action table is not total")
            for c in row:
                if not 0 <= c < len(self.chains):
                    raise ActionError(f"chain index {c} out of range")

    def chain_index(self, m) -> int:
        if isinstance(m, int):
            if not 0 <= m < len(self.chains):
                raise UnknownChain(f"chain index {m} out of range")
            return m
        key = tuple(self.poset.idx(x) for x in m)
        try:
            return self.chains.index(key)
        except ValueError:
            raise UnknownChain(f"{list(m)} is not a chain of this action") from None

    def apply(self, i: int, m) -> int:
        if not 1 <= i <= len(self.table):
            raise perms.IndexOutOfRange(f"U_{i} with n={self.n}")
        return self.table[i - 1][self.chain_index(m)]

    def apply_word(self, word: Sequence[int], m) -> int:
        c = self.chain_index(m)
        for i in reversed(word):
            c = self.apply(i, c)
        return c

    def descent_set(self, m) -> frozenset[int]:
        c = self.chain_index(m)
        return frozenset(i for i in range(1, len(self.table) + 1) if self.table[i - 1][c] != c)

    def descent_mask(self, m) -> int:
        return set_to_mask(self.descent_set(m))

    def with_entry(self, i: int, m, target) -> "ChainAction":
        """Copy with U_i(m) redirected to ``target`` (for mutation tests)."""
        c, t = self.chain_index(m), self.chain_index(target)
        rows = [list(r) for r in self.table]
        rows[i - 1][c] = t
        return replace(self, table=tuple(tuple(r) for r in rows))

    def chain_names(self, m) -> list[str]:
        return self.poset.chain_names(self.chains[self.chain_index(m)])


def action_from_snelling(P: Poset, labeling: EdgeLabeling, check: bool = True) -> ChainAction:
    """U_i(m) = the chain agreeing with m off rank i with no descent at i."""
    verdict = verify_snelling(P, labeling)
    if not verdict:
        raise SnellingInvalid(verdict.reason)
    n = grade(P).n
    chains = tuple(maximal_chains(P))
    words = [chain_word(labeling, m) for m in chains]
    table = []
    for i in range(1, n):
        siblings: dict[tuple, list[int]] = {}
        for c, m in enumerate(chains):
            siblings.setdefault(m[:i] + m[i + 1:], []).append(c)
        row = []
        for c, m in enumerate(chains):
            w = words[c]
            if w[i - 1] < w[i]:
                row.append(c)
                continue
            good = [d for d in siblings[m[:i] + m[i + 1:]] if words[d][i - 1] < words[d][i]]
            if len(good) != 1:
                raise AmbiguousSibling(
                    f"chain {P.chain_names(m)} has {len(good)} no-descent siblings at rank {i}"
                )
            row.append(good[0])
        table.append(tuple(row))
    action = ChainAction(P, chains, tuple(table))
    if check:
        verdict = verify_hecke(action)
        if not verdict:
            raise HeckeRelationFailure(verdict.reason)
    return action


def verify_hecke(action: ChainAction) -> Verdict:
    """Locality, idempotency, far commutation and braid relations, exhaustively."""
    chains, k = action.chains, len(action.table)
    U = action.table

    def fail(relation, c, idx, detail):
        w = {"relation": relation, "chain": action.chain_names(c), "indices": idx}
        return Verdict(False, HECKE_TAG, f"{relation} fails at chain {w['chain']}, U{idx}: {detail}", w)

    for i in range(1, k + 1):
        for c, m in enumerate(chains):
            t = chains[U[i - 1][c]]
            if t[:i] != m[:i] or t[i + 1:] != m[i + 1:]:
                return fail("locality", c, (i,), f"image {action.poset.chain_names(t)}")
    for i in range(1, k + 1):
        for c in range(len(chains)):
            once = U[i - 1][c]
            if U[i - 1][once] != once:
                return fail("idempotency", c, (i,), "U_i U_i != U_i")
    for i in range(1, k + 1):
        for j in range(i + 2, k + 1):
            for c in range(len(chains)):
                if U[i - 1][U[j - 1][c]] != U[j - 1][U[i - 1][c]]:
                    return fail("far commutation", c, (i, j), "U_i U_j != U_j U_i")
    for i in range(1, k):
        for c in range(len(chains)):
            a = U[i - 1][U[i][U[i - 1][c]]]
            b = U[i][U[i - 1][U[i][c]]]
            if a != b:
                return fail("braid", c, (i, i + 1), "U_i U_{i+1} U_i != U_{i+1} U_i U_{i+1}")
    return Verdict(True, HECKE_TAG)


def descent_set_of_chain(action: ChainAction, m) -> frozenset[int]:
    return action.descent_set(m)


def find_sink_chain(action: ChainAction) -> int:
    """Index of the unique chain fixed by every U_i."""
    sinks = [c for c in range(len(action.chains)) if not action.descent_set(c)]
    if not sinks:
        raise NoSink("no maximal chain has empty descent set")
    if len(sinks) > 1:
        raise MultipleSinks(f"{len(sinks)} chains have empty descent set: {sinks}")
    return sinks[0]


def _walk_to_sink(action: ChainAction, start: int, first: int | None, pick) -> tuple[int, ...]:
    limit = len(action.chains) * max(action.n, 1)
    applied = []
    seen = {start}
    c = start
    if first is not None:
        nxt = action.apply(first, c)
        if nxt == c:
            raise ValueError(f"U_{first} fixes the chain; not a restless step")
        applied.append(first)
        c = nxt
        seen.add(c)
    while True:
        des = action.descent_set(c)
        if not des:
            break
        i = pick(des)
        c = action.apply(i, c)
        applied.append(i)
        if c in seen or len(applied) > limit:
            raise NonTerminating(
                f"restless walk from chain {start} revisits chain {c}; the action is not good"
            )
        seen.add(c)
    return tuple(reversed(applied))


def restless_word(action: ChainAction, m, policy: str = "min") -> tuple[int, ...]:
    """A restless word carrying m to the sink, written left to right.

    Greedy: repeatedly apply the smallest (``policy="min"``) or largest
    (``"max"``) index in the current descent set.
    """
    find_sink_chain(action)
    pick = min if policy == "min" else max
    return _walk_to_sink(action, action.chain_index(m), None, pick)


def omega_of_chain(action: ChainAction, m) -> tuple[int, ...]:
    """The permutation s_{i_1} ... s_{i_r} of a restless word to the sink.

    Audited against the largest-first policy and against every possible first
    move; disagreement raises AmbiguousPermutation.
    """
    find_sink_chain(action)
    c = action.chain_index(m)
    n = action.n
    words = [_walk_to_sink(action, c, None, min), _walk_to_sink(action, c, None, max)]
    for i in sorted(action.descent_set(c)):
        words.append(_walk_to_sink(action, c, i, min))
    results = {}
    for w in words:
        results.setdefault(perms.word_to_perm(w, n), w)
    if len(results) > 1:
        (p1, w1), (p2, w2) = list(results.items())[:2]
        raise AmbiguousPermutation(
            f"chain {action.chain_names(c)}: restless words {list(w1)} and {list(w2)} "
            f"give {list(p1)} != {list(p2)}",
            action.chain_names(c),
            (w1, w2),
            (p1, p2),
        )
    return next(iter(results))


def descent_counts(action: ChainAction) -> list[int]:
    """Number of chains with each exact descent set, indexed by mask."""
    size = 1 << max(action.n - 1, 0)
    out = [0] * size
    for c in range(len(action.chains)):
        out[action.descent_mask(c)] += 1
    return out


def verify_good(P: Poset, action: ChainAction) -> Verdict:
    """alpha_P(S) against the number of chains with descent set inside S, for every S."""
    alpha = flag_f(P)
    exact = descent_counts(action)
    failures = []
    for S in range(len(alpha)):
        below = sum(exact[T] for T in range(len(exact)) if T & ~S == 0)
        if below != alpha[S]:
            failures.append((sorted(mask_to_set(S)), alpha[S], below))
    if failures:
        S, a, b = failures[0]
        return Verdict(
            False,
            GOOD_TAG,
            f"S={format_set(S)}: alpha={a} but {b} chains have descents in S",
            failures,
        )
    return Verdict(True, GOOD_TAG)


def character_value(action: ChainAction, u_word: Sequence[int]) -> int:
    """Trace of U_{i_1} ... U_{i_k} on the span of the maximal chains."""
    return sum(1 for c in range(len(action.chains)) if action.apply_word(u_word, c) == c)


def irreducible_character(S: Iterable[int], u_word: Sequence[int]) -> int:
    S = set(S)
    return int(all(i in S for i in u_word))


def reconstruct_labeling(P: Poset, action: ChainAction) -> EdgeLabeling:
    """Rebuild a snelling from a good action: label chain m by omega_m(1), ..., omega_m(n)."""
    verdict = verify_hecke(action)
    if not verdict:
        raise HeckeRelationFailure(verdict.reason)
    verdict = verify_good(P, action)
    if not verdict:
        raise NotGood(verdict.reason)
    labels: EdgeLabeling = {}
    owner: dict[tuple[int, int], int] = {}
    for c, m in enumerate(action.chains):
        omega = omega_of_chain(action, c)
        for k, (a, b) in enumerate(zip(m, m[1:])):
            v = omega[k]
            if (a, b) in labels and labels[(a, b)] != v:
                edge = tuple(P.chain_names((a, b)))
                raise EdgeConflict(
                    f"edge {edge} gets {labels[(a, b)]} from chain {owner[(a, b)]} and {v} from chain {c}",
                    edge,
                    (labels[(a, b)], v),
                )
            labels[(a, b)] = v
            owner[(a, b)] = c
    verdict = verify_snelling(P, labels)
    if not verdict:
        raise SnellingInvalid(f"reconstructed labeling is not a snelling: {verdict.reason}")
    return labels


def chains_with_rank_set(P: Poset, ranks: Iterable[int]) -> list[tuple[int, ...]]:
    """Chains 0 < t_1 < ... < 1 whose interior elements have exactly the given ranks."""
    cert = grade(P)
    layers = [[x for x in range(len(P)) if cert.rank[x] == r] for r in sorted(ranks)]
    out = []

    def extend(prefix):
        if len(prefix) == len(layers):
            out.append(tuple(prefix))
            return
        for x in layers[len(prefix)]:
            if not prefix or P.lt(prefix[-1], x):
                extend(prefix + [x])

    extend([])
    return out


def restricts_to(chain: Sequence[int], partial: Sequence[int], rank_of) -> bool:
    return all(chain[rank_of[x]] == x for x in partial)


def extensions_with_descents_in(action: ChainAction, partial: Sequence[Element], S: Iterable[int]) -> list[int]:
    """Maximal chains through ``partial`` whose descent set lies in S."""
    P = action.poset
    rank = grade(P).rank
    part = [P.idx(x) for x in partial]
    S = set(S)
    return [
        c
        for c, m in enumerate(action.chains)
        if restricts_to(m, part, rank) and action.descent_set(c) <= S
    ]
