"""Permutations on labels ``1..n``, the ring-shuffle generator, and coverage.

The central object is a single permutation ``sigma(n)`` whose powers reorder a
ring of ``n`` seats so that, walking through the powers, every unordered pair
of labels becomes ring-adjacent after ``⌊n/2⌋`` arrangements and every ordered
pair appears once the whole cyclic group has been used.  The coverage report
makes those claims checkable on concrete arrangements.

Permutations act on 1-based labels: ``p(i)`` is the label written in seat
``i``'s place.  Composition is right-to-left, ``compose(p, q)(i) == p(q(i))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Permutation",
    "PermutationGroup",
    "Arrangement",
    "CoverageReport",
    "sigma",
    "sigma_group_order",
    "compose",
    "order",
    "act",
    "generate_group",
    "arrangements",
    "coverage_report",
]


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{1, .., n}`` stored as the image tuple.

    ``image[i - 1]`` is where label ``i`` is sent.  The identity on 3 labels
    is ``Permutation((1, 2, 3))``.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.image}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        if not (1 <= i <= self.degree):
            raise ValueError(f"label {i} outside 1..{self.degree}")
        return self.image[i - 1]

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.image))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, fixed points included, each cycle
        starting at its smallest label."""
        seen = [False] * (self.degree + 1)
        out = []
        for start in range(1, self.degree + 1):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self(nxt)
            out.append(tuple(cyc))
        return out


@dataclass(frozen=True)
class PermutationGroup:
    """The cyclic group generated by one permutation, elements in power order:
    ``elements[k]`` is the k-th power of the generator (``elements[0]`` is the
    identity)."""

    generator: Permutation
    elements: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class Arrangement:
    """One seating of labels ``1..n`` around a closed ring."""

    ring: tuple[int, ...]

    def ordered_pairs(self) -> list[tuple[int, int]]:
        """The ``n`` ordered neighbour pairs read clockwise, ring closed.

        A ring with a single seat has no pairs.  A two-seat ring contributes
        both directions of its single unordered pair.
        """
        n = len(self.ring)
        if n < 2:
            return []
        return [(self.ring[t], self.ring[(t + 1) % n]) for t in range(n)]


# ---------------------------------------------------------------------------
# the ring-shuffle generator
# ---------------------------------------------------------------------------


def sigma(n: int) -> Permutation:
    """The designated ring shuffle on labels ``1..n``.

    It is a single cycle through the even labels ascending then the odd labels
    descending — for even ``n`` the cycle ``(1 3 5 .. n-1 n n-2 .. 4 2)``
    covering everything, for odd ``n`` the label 1 stays put and the cycle is
    ``(2 4 .. n-1 n n-2 .. 5 3)``.  Small degrees degenerate gracefully:
    ``n=1`` is the identity, ``n=2`` the swap, ``n=3`` the swap of 2 and 3.

    >>> sigma(4).image
    (3, 1, 4, 2)
    >>> sigma(5).image
    (1, 4, 2, 5, 3)
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    image = list(range(1, n + 1))
    if n >= 2:
        if n % 2 == 0:
            cycle = list(range(1, n, 2)) + [n] + list(range(n - 2, 1, -2))
        else:
            cycle = list(range(2, n, 2)) + [n] + list(range(n - 2, 2, -2))
        for here, there in zip(cycle, cycle[1:]):
            image[here - 1] = there
        image[cycle[-1] - 1] = cycle[0]
    return Permutation(tuple(image))


def sigma_group_order(n: int) -> int:
    """Closed-form order of the group generated by :func:`sigma`:
    ``1`` for ``n=1``, ``n`` for even ``n``, ``n-1`` for odd ``n >= 3``."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return 1
    return n if n % 2 == 0 else n - 1


# ---------------------------------------------------------------------------
# group operations
# ---------------------------------------------------------------------------


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Composition ``p ∘ q`` (apply ``q`` first): ``compose(p, q)(i) == p(q(i))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(p.image[v - 1] for v in q.image))


def act(p: Permutation, i: int) -> int:
    """Apply ``p`` to the label ``i``."""
    return p(i)


def order(p: Permutation) -> int:
    """Multiplicative order, the lcm of the cycle lengths."""
    return math.lcm(*(len(c) for c in p.cycles()))


def generate_group(g: Permutation) -> PermutationGroup:
    """All distinct powers of ``g`` in power order, identity first."""
    elements = [Permutation.identity(g.degree)]
    current = g
    while not current.is_identity():
        elements.append(current)
        current = compose(g, current)
    return PermutationGroup(generator=g, elements=tuple(elements))


# ---------------------------------------------------------------------------
# arrangements and coverage
# ---------------------------------------------------------------------------


def arrangements(group: PermutationGroup) -> list[Arrangement]:
    """One ring per group element, in power order.

    Seat ``t`` of the arrangement for element ``g`` holds the label ``g(t)``;
    the identity arrangement is the initial ring ``1, 2, .., n``.
    """
    return [Arrangement(ring=g.image) for g in group]


@dataclass(frozen=True)
class CoverageReport:
    """What a list of ring arrangements covers.

    ``unordered_pairs_covered_after[b]`` counts distinct unordered label pairs
    seated adjacently somewhere in the first ``b`` arrangements.
    ``first_block_disjoint`` says whether the first ``⌊(n-1)/2⌋`` arrangements
    use pairwise disjoint unordered pair sets.  For even ``n`` the pair that
    closes the ring is left out of that verdict: an even ring is an open chain
    threaded through a virtual centre seat, so its closing hop is not one of
    the chain's own adjacencies (it is why, over the whole group, exactly
    ``n`` ordered pairs show up twice while everything else appears once).
    Coverage counts and ``ordered_pair_multiplicity`` always use the closed
    ring, wrap pair included, because the aggregation walk really does step
    from the last seat back to the first.
    """

    n: int
    unordered_pairs_covered_after: dict[int, int]
    first_block_disjoint: bool
    ordered_pair_multiplicity: dict[tuple[int, int], int]

    @property
    def total_unordered_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    def all_pairs_covered_after(self) -> int | None:
        """Smallest prefix length covering every unordered pair, if any."""
        target = self.total_unordered_pairs
        for b in sorted(self.unordered_pairs_covered_after):
            if self.unordered_pairs_covered_after[b] >= target:
                return b
        return None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "unordered_pairs_covered_after": {
                str(b): c for b, c in sorted(self.unordered_pairs_covered_after.items())
            },
            "first_block_disjoint": self.first_block_disjoint,
            "ordered_pair_multiplicity": {
                f"{a}-{b}": c
                for (a, b), c in sorted(self.ordered_pair_multiplicity.items())
            },
        }


def coverage_report(arrs: Sequence[Arrangement], n: int) -> CoverageReport:
    """Tally pair coverage over a list of arrangements of ``1..n``.

    Rings of one seat contribute nothing.  A pair seated adjacently twice
    inside one ring (only possible when ``n == 2``, where the ring closes back
    over the same pair) is still a single occurrence of that ring for the
    disjointness check, which compares distinct arrangements only.
    """
    for a in arrs:
        if len(a.ring) != n:
            raise ValueError(f"arrangement {a.ring} is not on {n} labels")

    mult = np.zeros((n + 1, n + 1), dtype=np.int64)
    covered = np.zeros((n + 1, n + 1), dtype=bool)  # unordered, indexed lo/hi
    covered_after: dict[int, int] = {}
    running = 0

    block = max((n - 1) // 2, 0)
    block_pair_sets: list[set[tuple[int, int]]] = []

    for idx, arr in enumerate(arrs, start=1):
        pairs = arr.ordered_pairs()
        if pairs:
            a = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
            b = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
            np.add.at(mult, (a, b), 1)
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            fresh = ~covered[lo, hi]
            running += len(set(zip(lo[fresh].tolist(), hi[fresh].tolist())))
            covered[lo, hi] = True
        covered_after[idx] = running
        if idx <= block:
            chain = pairs[:-1] if n % 2 == 0 else pairs
            block_pair_sets.append({(min(p), max(p)) for p in chain})

    disjoint = True
    seen: set[tuple[int, int]] = set()
    for s in block_pair_sets:
        if seen & s:
            disjoint = False
            break
        seen |= s

    rows, cols = np.nonzero(mult)
    multiplicity = {
        (int(i), int(j)): int(mult[i, j]) for i, j in zip(rows, cols)
    }
    return CoverageReport(
        n=n,
        unordered_pairs_covered_after=covered_after,
        first_block_disjoint=disjoint,
        ordered_pair_multiplicity=multiplicity,
    )
