"""Supersolvability: direct M-chain search, and the chain-closure construction
relating a snelled lattice to distributive lattices of order ideals."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from . import perms
from .hecke import ChainAction, find_sink_chain
from .labeling import EdgeLabeling, chain_word, find_snelling
from .poset import Element, LatticeTable, Poset, closure_indices, grade, lattice_ops, maximal_chains, order_ideals
from .verdict import Verdict

SS_TAG = "supersolvable iff snellable"
QM_TAG = "chain closure Q_m is isomorphic to J(P_omega_m)"
LM_TAG = "chain closure Q_m equals the sublattice generated by m and m_0"


@dataclass(frozen=True)
class MChainCertificate:
    """Result of the direct search.  ``m_chain`` is None when no M-chain exists;
    ``witness`` then holds the failure recorded for the last candidate."""

    m_chain: tuple[str, ...] | None
    checked_chains: int
    witness: tuple | None = None

    @property
    def supersolvable(self) -> bool:
        return self.m_chain is not None


def _distributivity_failure(table: LatticeTable, elems: Sequence[int]):
    C = np.asarray(sorted(elems))
    meet, join = table.meet_table, table.join_table
    jsub = join[np.ix_(C, C)]
    for x in C:
        mx = meet[x]
        lhs = mx[jsub]
        mc = mx[C]
        rhs = join[mc[:, None], mc[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = C[bad[0][0]], C[bad[0][1]]
            return (int(x), int(y), int(z))
    return None


def is_supersolvable_direct(L: Poset | LatticeTable, labeling: EdgeLabeling | None = None) -> MChainCertificate:
    """Search for a maximal chain that generates a distributive sublattice with every maximal chain.

    Candidates are tried in order of their label word under ``labeling`` when
    one is given, otherwise in chain enumeration order.
    """
    table = lattice_ops(L)
    P = table.poset
    grade(P)
    chains = maximal_chains(P)
    order = list(range(len(chains)))
    if labeling is not None:
        order.sort(key=lambda c: (chain_word(labeling, chains[c]), c))
    verdicts: dict[frozenset, tuple | None] = {}
    witness = None
    for checked, c in enumerate(order, start=1):
        m = chains[c]
        bad = None
        for other in chains:
            key = frozenset(m) | frozenset(other)
            if key not in verdicts:
                verdicts[key] = _distributivity_failure(table, closure_indices(table, key))
            if verdicts[key] is not None:
                bad = (tuple(P.chain_names(other)), tuple(P.chain_names(verdicts[key])))
                break
        if bad is None:
            return MChainCertificate(tuple(P.chain_names(m)), checked, None)
        witness = (tuple(P.chain_names(m)),) + bad
    return MChainCertificate(None, len(order), witness)


def is_supersolvable_via_snelling(L: Poset | LatticeTable) -> Verdict:
    table = lattice_ops(L)
    labeling = find_snelling(table.poset)
    if labeling is None:
        return Verdict(False, SS_TAG, "no snelling exists")
    return Verdict(True, SS_TAG, "snelling found", labeling)


@dataclass(frozen=True)
class ClosureData:
    chains: tuple[int, ...]  # M_m, as indices into the action's chain list
    elements: tuple[int, ...]  # Q_m, as element indices of the ambient poset
    lambda_sets: dict = field(compare=False)  # element index -> frozenset of labels
    poset: Poset = field(compare=False)  # Q_m as an induced subposet
    ambient: Poset = field(compare=False)


def label_set_below(P: Poset, labeling: EdgeLabeling, u: Element) -> frozenset[int]:
    """Labels on any maximal chain of [0, u]."""
    cert = grade(P)
    first = maximal_chains(P, (cert.bottom, P.idx(u)))[0]
    return frozenset(chain_word(labeling, first))


def closure_Q_m(action: ChainAction, m, labeling: EdgeLabeling) -> ClosureData:
    """M_m (closure of m under every U_i) and Q_m (the elements it touches)."""
    start = action.chain_index(m)
    seen = {start}
    stack = [start]
    while stack:
        c = stack.pop()
        for i in range(1, action.n):
            d = action.apply(i, c)
            if d not in seen:
                seen.add(d)
                stack.append(d)
    elems = sorted({x for c in seen for x in action.chains[c]})
    P = action.poset
    lam = {u: label_set_below(P, labeling, u) for u in elems}
    return ClosureData(tuple(sorted(seen)), tuple(elems), lam, P.induced(elems), P)


def poset_p_omega(perm: Sequence[int]) -> Poset:
    """The poset on [n] with i < j iff i < j as integers and (i, j) is not an inversion."""
    w = perms.check_perm(perm)
    n = len(w)
    inv = perms.inv_set(w)
    rel = {(i, j) for i, j in combinations(range(1, n + 1), 2) if (i, j) not in inv}
    for (i, j), (k, l) in [(a, b) for a in rel for b in rel]:
        if j == k and (i, l) not in rel:
            raise AssertionError(f"relation of {w} is not transitive at {i}<{j}<{l}")
    return Poset.from_relation([str(i) for i in range(1, n + 1)], [(str(i), str(j)) for i, j in rel])


def ideal_sets(Q: Poset) -> set[frozenset[int]]:
    """Order ideals of a poset on "1".."n" as sets of integers."""
    return {frozenset(int(Q.names[i]) for i in range(len(Q)) if (m >> i) & 1) for m in order_ideals(Q)}


def verify_qm_isomorphism(closure: ClosureData, perm: Sequence[int]) -> Verdict:
    """phi(u) = Lambda_u is a bijection onto J(P_perm) with u <= v iff Lambda_u within Lambda_v."""
    target = ideal_sets(poset_p_omega(perm))
    images = [closure.lambda_sets[u] for u in closure.elements]
    if len(set(images)) != len(images):
        dup = next(s for s in images if images.count(s) > 1)
        return Verdict(False, QM_TAG, f"Lambda not injective: {sorted(dup)} repeats", ("injective", sorted(dup)))
    missing = target - set(images)
    extra = set(images) - target
    if missing or extra:
        return Verdict(
            False,
            QM_TAG,
            f"image differs from J(P): missing {sorted(map(sorted, missing))}, extra {sorted(map(sorted, extra))}",
            ("bijection", sorted(map(sorted, missing)), sorted(map(sorted, extra))),
        )
    P = closure.ambient
    for u in closure.elements:
        for v in closure.elements:
            if P.leq(u, v) != (closure.lambda_sets[u] <= closure.lambda_sets[v]):
                names = (P.name(u), P.name(v))
                return Verdict(False, QM_TAG, f"order not preserved at {names}", ("order",) + names)
    return Verdict(True, QM_TAG)


def verify_sublattice_equality(L: Poset | LatticeTable, action: ChainAction, m, labeling: EdgeLabeling) -> Verdict:
    """Q_m equals the sublattice generated by m and the sink chain, and is meet/join closed."""
    table = lattice_ops(L)
    closure = closure_Q_m(action, m, labeling)
    m0 = action.chains[find_sink_chain(action)]
    mc = action.chains[action.chain_index(m)]
    generated = closure_indices(table, set(mc) | set(m0))
    P = table.poset
    if set(generated) != set(closure.elements):
        diff = sorted(P.chain_names(sorted(set(generated) ^ set(closure.elements))))
        return Verdict(False, LM_TAG, f"Q_m and L_m differ on {diff}", diff)
    qs = set(closure.elements)
    for x in qs:
        for y in qs:
            for z in (table.meet(x, y), table.join(x, y)):
                if z not in qs:
                    names = tuple(P.chain_names((x, y, z)))
                    return Verdict(False, LM_TAG, f"Q_m not closed: {names}", names)
    return Verdict(True, LM_TAG, witness=tuple(P.chain_names(closure.elements)))
