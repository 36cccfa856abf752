"""End-to-end acceptance checks.

Each criterion prints one PASS/FAIL line.  Run ``pytest tests/test_acceptance.py -s``
to see the lines, or ``python tests/test_acceptance.py`` for a plain report.
"""
import random
import sys
from itertools import permutations

import pytest

from snelling import generators as g
from snelling import hecke as h
from snelling import perms
from snelling.corpus import graded_bounded_lattices
from snelling.labeling import chain_word, find_snelling, verify_snelling
from snelling.poset import NotALattice, grade, is_bowtie_free, lattice_ops, maximal_chains, sublattice_closure
from snelling.qsym import (
    QSymL,
    ch_of_action,
    evaluate,
    f_p,
    f_p_multichain,
    flag_f,
    omega_involution,
)
from snelling.supersolvable import (
    closure_Q_m,
    is_supersolvable_direct,
    verify_qm_isomorphism,
    verify_sublattice_equality,
)


def report(number, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return ok


def snelled_fixtures():
    fixtures = {f"B{n}": g.gen_boolean(n) for n in (2, 3, 4)}
    fixtures["Pi4"] = g.gen_partition_lattice(4)
    fixtures["NC4"] = g.gen_noncrossing(4)
    fixtures["J(P_2413)"] = g.gen_j_of_perm((2, 4, 1, 3))
    fixtures["B4-minus-edge"] = g.fixture_b4_minus_edge()
    return fixtures


def criterion_1():
    lattices = graded_bounded_lattices(9)
    disagreements = [
        P for P in lattices if is_supersolvable_direct(P).supersolvable != (find_snelling(P) is not None)
    ]
    return report(1, not disagreements, f"{len(lattices)} lattices, {len(disagreements)} disagreements")


def criterion_2():
    bad = []
    for name, (P, lab) in snelled_fixtures().items():
        A = h.action_from_snelling(P, lab)
        if omega_involution(f_p(P)) != ch_of_action(A):
            bad.append((name, "omega F_P != ch"))
        alpha = flag_f(P)
        masks = [A.descent_mask(c) for c in range(len(A.chains))]
        for S in range(len(alpha)):
            if alpha[S] != sum(1 for d in masks if d & ~S == 0):
                bad.append((name, S))
    return report(2, not bad, f"7 fixtures, failures {bad}")


def criterion_3():
    P, A = g.fixture_bowtie_good_action()
    checks = {
        "hecke": bool(h.verify_hecke(A)),
        "good": bool(h.verify_good(P, A)),
        "ch": ch_of_action(A) == QSymL.from_sets(3, {(): 1, (1,): 1, (2,): 1, (1, 2): 1}),
        "not snellable": find_snelling(P) is None,
    }
    try:
        h.reconstruct_labeling(P, A)
        checks["ambiguous"] = False
    except h.AmbiguousPermutation as exc:
        checks["ambiguous"] = (
            set(exc.words) == {(1, 2), (2, 1)}
            and perms.word_to_perm((1, 2), 3) != perms.word_to_perm((2, 1), 3)
        )
    failed = [k for k, v in checks.items() if not v]
    return report(3, not failed, f"checked {sorted(checks)}, failed {failed}")


def criterion_4():
    fixtures = dict(snelled_fixtures())
    fixtures["chain3"] = g.gen_chain(3)
    fixtures["Pi3"] = g.gen_partition_lattice(3)
    bowtie = g.fixture_snellable_bowtie()
    fixtures["snellable bowtie"] = (bowtie, find_snelling(bowtie))
    bad = [n for n, (P, lab) in fixtures.items() if h.reconstruct_labeling(P, h.action_from_snelling(P, lab)) != lab]
    return report(4, not bad, f"{len(fixtures)} snelled fixtures, mismatches {bad}")


MUTATIONS = [
    (3, 1, (1, 2, 3), (1, 3, 2), "locality"),
    (3, 1, (1, 2, 3), (2, 1, 3), "idempotency"),
    (4, 1, (2, 1, 3, 4), (2, 1, 3, 4), "far commutation"),
    (3, 1, (2, 1, 3), (2, 1, 3), "braid"),
]


def criterion_5():
    failures = []
    for name, (P, lab) in snelled_fixtures().items():
        if not h.verify_hecke(h.action_from_snelling(P, lab)):
            failures.append(name)
    rng = random.Random(20261015)
    sizes = []
    for trial in range(200):
        P, lab = g.random_j_of_poset(rng, max_elements=12)
        sizes.append(len(P))
        if not (verify_snelling(P, lab) and h.verify_hecke(h.action_from_snelling(P, lab))):
            failures.append(f"random #{trial}")
    broken = set()
    for n, i, source, target, relation in MUTATIONS:
        P, lab = g.gen_boolean(n)
        A = h.action_from_snelling(P, lab)
        index = {chain_word(lab, m): c for c, m in enumerate(A.chains)}
        verdict = h.verify_hecke(A.with_entry(i, index[source], index[target]))
        if not verdict and verdict.witness["relation"] == relation:
            broken.add(relation)
    ok = not failures and max(sizes) <= 12 and len(broken) == 4
    return report(5, ok, f"200 random J(Q) (max |P| {max(sizes)}), failures {failures}, mutations broke {sorted(broken)}")


def criterion_6():
    P, lab = g.gen_noncrossing(4)
    A = h.action_from_snelling(P, lab)
    m = ["1-2-3-4", "24-1-3", "234-1", "1234"]
    cl = closure_Q_m(A, m, lab)
    omega = chain_word(lab, [P.idx(x) for x in m])
    m0 = A.chains[h.find_sink_chain(A)]
    generated = sublattice_closure(P, m + P.chain_names(m0))
    checks = {
        "|Q_m| = 8": len(cl.elements) == 8,
        "Q_m = L_m": set(P.chain_names(cl.elements)) == set(generated.names),
        "sublattice verdict": bool(verify_sublattice_equality(P, A, m, lab)),
        "omega_m = 321": omega == (3, 2, 1),
        "Q_m iso B_3": bool(verify_qm_isomorphism(cl, (3, 2, 1))),
    }
    failed = [k for k, v in checks.items() if not v]
    return report(6, not failed, f"NC_4 chain {'<'.join(m)}, failed {failed}")


def criterion_7():
    bad = []
    fixtures = dict(snelled_fixtures())
    fixtures["bowtie action poset"] = (g.fixture_bowtie_good_action()[0], None)
    for name, (P, _) in fixtures.items():
        if grade(P).n > 4:
            continue
        for m in (1, 2, 3):
            if evaluate(f_p(P), m) != f_p_multichain(P, m):
                bad.append((name, m))
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        q = QSymL(n, tuple(rng.randint(-9, 9) for _ in range(1 << (n - 1))))
        if omega_involution(omega_involution(q)) != q:
            bad.append(("omega", q))
    b2 = evaluate(f_p(g.gen_boolean(2)[0]), 2)
    if b2 != {(2, 0): 1, (1, 1): 2, (0, 2): 1}:
        bad.append(("B2", b2))
    return report(7, not bad, f"multichain oracle, 100 omega round trips, B_2 expansion; failures {bad}")


def criterion_8():
    P, lab = g.fixture_b4_minus_edge()
    checks = {"graded": grade(P).n == 4, "bowtie-free": bool(is_bowtie_free(P))}
    try:
        lattice_ops(P)
        checks["not a lattice"] = False
        witness = None
    except NotALattice as exc:
        witness = exc
        checks["not a lattice"] = len(exc.bounds) >= 2
    checks["snellable"] = bool(verify_snelling(P, lab))
    failed = [k for k, v in checks.items() if not v]
    return report(8, not failed, f"failed {failed}; lattice witness: {witness}")


def reduced_words(w):
    """Every reduced word of w, peeling right descents off the end."""
    if perms.length(w) == 0:
        return [()]
    return [word + (i,) for i in perms.descents(w) for word in reduced_words(perms.times_s(w, i))]


def generative_leq(v, w):
    """v <=_R w iff some reduced word for w starts with a reduced word for v."""
    n = len(w)
    return any(perms.word_to_perm(word[:k], n) == v for word in reduced_words(w) for k in range(len(word) + 1))


def criterion_9():
    group = list(permutations(range(1, 5)))
    bad = [(v, w) for v in group for w in group if perms.leq_weak(v, w) != generative_leq(v, w)]
    return report(9, not bad, f"{len(group) ** 2} pairs of S_4, {len(bad)} disagreements")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 10)])
def test_acceptance(check):
    assert check()


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    sys.exit(0 if all(results) else 1)
