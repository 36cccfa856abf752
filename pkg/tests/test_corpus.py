from collections import Counter
from itertools import combinations, permutations

import pytest

from snelling.corpus import canonical_form, compositions, graded_bounded_lattices, graded_bounded_posets
from snelling.poset import grade, is_lattice, maximal_chains


def brute_force_counts(max_elements):
    """Graded bounded posets by size, from closed relations on naturally labelled inner elements.

    Every finite poset has a natural labelling, so enumerating transitively closed
    relations with i < j only when i < j as integers reaches every class;
    duplicates are removed by trying every relabelling.
    """
    counts = Counter({1: 1})
    for total in range(2, max_elements + 1):
        k = total - 2
        pairs = list(combinations(range(k), 2))
        classes = set()
        for bits in range(1 << len(pairs)):
            rel = {pairs[t] for t in range(len(pairs)) if (bits >> t) & 1}
            if any((a, c) not in rel for a, b in rel for b2, c in rel if b == b2):
                continue
            if not graded_with_bounds(k, rel):
                continue
            classes.add(min(tuple(sorted((p[a], p[b]) for a, b in rel)) for p in permutations(range(k))))
        counts[total] = len(classes)
    return counts


def graded_with_bounds(k, rel):
    """Adjoin a bottom and a top, then compare every maximal chain length."""
    covers = [(a, b) for a, b in rel if not any((a, c) in rel and (c, b) in rel for c in range(k))]
    up = {x: [b for a, b in covers if a == x] for x in range(k)}
    lengths = set()

    def walk(x, depth):
        if not up[x]:
            lengths.add(depth)
        for y in up[x]:
            walk(y, depth + 1)

    minimal = [x for x in range(k) if not any(b == x for _, b in rel)]
    for x in minimal:
        walk(x, 0)
    return len(lengths) <= 1


def test_counts_match_brute_force_up_to_seven():
    by_size = Counter(len(P) for P in graded_bounded_posets(7))
    assert by_size == brute_force_counts(7)


def test_golden_poset_counts():
    by_size = Counter(len(P) for P in graded_bounded_posets(9))
    assert by_size == {1: 1, 2: 1, 3: 1, 4: 2, 5: 4, 6: 10, 7: 28, 8: 93, 9: 354}
    assert len(graded_bounded_posets(8)) == 140


def test_golden_lattice_counts():
    by_size = Counter(len(P) for P in graded_bounded_lattices(9))
    assert by_size == {1: 1, 2: 1, 3: 1, 4: 2, 5: 4, 6: 9, 7: 22, 8: 60, 9: 176}


def test_corpus_members_are_graded_and_distinct():
    corpus = graded_bounded_posets(7)
    for P in corpus:
        grade(P)
    # cheap invariants first, then a full isomorphism check inside each bucket
    buckets = {}
    for P in corpus:
        key = (len(P), len(P.covers), len(maximal_chains(P)), grade(P).n)
        buckets.setdefault(key, []).append(P)
    for group in buckets.values():
        for P, Q in combinations(group, 2):
            assert not isomorphic(P, Q)


def isomorphic(P, Q):
    if len(P) != len(Q):
        return False
    target = set(Q.covers)
    return any({(p[a], p[b]) for a, b in P.covers} == target for p in permutations(range(len(Q))))


def test_lattice_filter():
    for P in graded_bounded_lattices(8):
        assert is_lattice(P)


def test_compositions():
    assert list(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert list(compositions(0)) == [()]


def test_canonical_form_ignores_level_order():
    assert canonical_form((2, 2), ((), (0b01, 0b11))) == canonical_form((2, 2), ((), (0b11, 0b10)))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_lattice_counts_are_prefix_stable(n):
    assert Counter(len(P) for P in graded_bounded_lattices(n)) == Counter(
        len(P) for P in graded_bounded_lattices(9) if len(P) <= n
    )
