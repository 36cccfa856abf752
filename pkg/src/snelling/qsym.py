"""Flag vectors and quasisymmetric functions in the fundamental basis.

A subset S of [n-1] is a bitmask with bit i-1 standing for i.  A degree-n
quasisymmetric function is a dense list of 2^(n-1) coefficients on L_{S,n}.
Polynomials are dicts from exponent tuples to integer coefficients.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poset import Poset, grade


def set_to_mask(S: Iterable[int]) -> int:
    m = 0
    for i in S:
        m |= 1 << (i - 1)
    return m


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def format_set(S: Iterable[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def _size(n: int) -> int:
    return 1 << max(n - 1, 0)


def flag_f(P: Poset) -> list[int]:
    """alpha_P(S): chains 0 < t_1 < ... < 1 with interior rank set S."""
    cert = grade(P)
    n = cert.n
    by_rank: dict[int, list[int]] = {}
    for x, r in enumerate(cert.rank):
        by_rank.setdefault(r, []).append(x)
    alpha = []
    for S in range(_size(n)):
        counts = {cert.bottom: 1}
        for r in sorted(mask_to_set(S)):
            counts = {
                y: sum(c for x, c in counts.items() if P.lt(x, y))
                for y in by_rank[r]
            }
        alpha.append(sum(c for x, c in counts.items() if P.leq(x, cert.top)))
    return alpha


def flag_h(alpha: Sequence[int]) -> list[int]:
    """beta(S) = sum over T in S of (-1)^|S - T| alpha(T)."""
    out = []
    for S in range(len(alpha)):
        total = 0
        T = S
        while True:
            sign = -1 if bin(S & ~T).count("1") % 2 else 1
            total += sign * alpha[T]
            if T == 0:
                break
            T = (T - 1) & S
        out.append(total)
    return out


def flag_f_from_h(beta: Sequence[int]) -> list[int]:
    """Inverse of flag_h: alpha(S) = sum over T in S of beta(T)."""
    out = []
    for S in range(len(beta)):
        total = 0
        T = S
        while True:
            total += beta[T]
            if T == 0:
                break
            T = (T - 1) & S
        out.append(total)
    return out


@dataclass(frozen=True)
class FlagVectors:
    n: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]


def flag_vectors(P: Poset) -> FlagVectors:
    alpha = flag_f(P)
    return FlagVectors(grade(P).n, tuple(alpha), tuple(flag_h(alpha)))


@dataclass(frozen=True)
class QSymL:
    """Sum of coeffs[S] * L_{S,n}."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != _size(self.n):
            raise ValueError(f"need {_size(self.n)} coefficients for degree {self.n}")

    @classmethod
    def from_sets(cls, n: int, terms: dict) -> "QSymL":
        coeffs = [0] * _size(n)
        for S, c in terms.items():
            coeffs[set_to_mask(S)] += c
        return cls(n, tuple(coeffs))

    def __getitem__(self, S) -> int:
        return self.coeffs[S if isinstance(S, int) else set_to_mask(S)]

    def terms(self) -> list[tuple[frozenset[int], int]]:
        return [(mask_to_set(S), c) for S, c in enumerate(self.coeffs) if c]

    def lines(self) -> list[str]:
        return [f"S={format_set(mask_to_set(S))}: {c}" for S, c in enumerate(self.coeffs) if c]


def f_p(P: Poset) -> QSymL:
    """The flag quasisymmetric function F_P in the fundamental basis; the coefficients are the flag h-vector."""
    fv = flag_vectors(P)
    return QSymL(fv.n, fv.beta)


def omega_involution(q: QSymL) -> QSymL:
    full = _size(q.n) - 1
    return QSymL(q.n, tuple(q.coeffs[full & ~S] for S in range(len(q.coeffs))))


def fundamental(S: Iterable[int], n: int, m: int) -> Counter:
    """L_{S,n}(x_1, ..., x_m): weakly increasing indices, strict after positions in S."""
    strict = set(S)
    poly: Counter = Counter()

    def walk(j: int, last: int, exps: list[int]) -> None:
        if j > n:
            poly[tuple(exps)] += 1
            return
        lo = last
        if j > 1 and (j - 1) in strict:
            lo = last + 1
        for i in range(max(lo, 1), m + 1):
            exps[i - 1] += 1
            walk(j + 1, i, exps)
            exps[i - 1] -= 1

    walk(1, 1, [0] * m)
    return poly


def evaluate(q: QSymL, m: int) -> dict[tuple[int, ...], int]:
    """Expand q in x_1..x_m (remaining variables set to zero)."""
    total: Counter = Counter()
    for S, c in enumerate(q.coeffs):
        if c:
            for mono, k in fundamental(mask_to_set(S), q.n, m).items():
                total[mono] += c * k
    return {mono: c for mono, c in total.items() if c}


def f_p_multichain(P: Poset, m: int) -> dict[tuple[int, ...], int]:
    """F_P(x_1..x_m) summed directly over multichains 0 = t_0 <= ... <= t_{k-1} < t_k = 1, k <= m."""
    cert = grade(P)
    rank, top = cert.rank, cert.top
    total: Counter = Counter()

    def walk(t: int, k: int, exps: list[int]) -> None:
        # close the multichain with t_{k+1} = top
        if t != top and k + 1 <= m:
            exps[k] += rank[top] - rank[t]
            total[tuple(exps)] += 1
            exps[k] -= rank[top] - rank[t]
        if k + 1 >= m:
            return
        for u in range(len(P)):
            if u != top and P.leq(t, u):
                exps[k] += rank[u] - rank[t]
                walk(u, k + 1, exps)
                exps[k] -= rank[u] - rank[t]

    if cert.n == 0:
        return {}
    walk(cert.bottom, 0, [0] * m)
    return {mono: c for mono, c in total.items() if c}


def format_poly(poly: dict[tuple[int, ...], int]) -> list[str]:
    lines = []
    for mono in sorted(poly, reverse=True):
        parts = [f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(mono) if e]
        lines.append(f"{' '.join(parts) or '1'}: {poly[mono]}")
    return lines


def ch_of_action(action) -> QSymL:
    """Characteristic of the chain representation, sum of c_S L_{S,n}.

    The trace of U_J (the product of U_j, j in J, in increasing order) equals
    the sum of c_S over S containing J, because the irreducible character
    chi_S sends U_J to 1 exactly when J lies in S.  Moebius inversion over the
    traces recovers the multiplicities c_S.
    """
    size = _size(action.n)
    chains = range(len(action.chains))
    trace = []
    for J in range(size):
        word = sorted(mask_to_set(J))
        trace.append(sum(1 for c in chains if action.apply_word(word, c) == c))
    full = size - 1
    coeffs = []
    for S in range(size):
        total = 0
        rest = full & ~S
        T = rest
        while True:
            total += (-1 if bin(T).count("1") % 2 else 1) * trace[S | T]
            if T == 0:
                break
            T = (T - 1) & rest
        coeffs.append(total)
    return QSymL(action.n, tuple(coeffs))


def is_symmetric(q: QSymL, m: int) -> bool:
    """Whether q(x_1..x_m) is invariant under permuting the variables."""
    if m < q.n:
        raise ValueError("need at least as many variables as the degree")
    poly = evaluate(q, m)
    by_shape: dict[tuple[int, ...], set[int]] = {}
    for mono in _all_monomials(q.n, m):
        by_shape.setdefault(tuple(sorted(mono)), set()).add(poly.get(mono, 0))
    return all(len(v) == 1 for v in by_shape.values())


def _all_monomials(n: int, m: int):
    def walk(i: int, left: int, exps: list[int]):
        if i == m - 1:
            yield tuple(exps + [left])
            return
        for e in range(left + 1):
            yield from walk(i + 1, left - e, exps + [e])

    if m == 0:
        return
    yield from walk(0, n, [])

