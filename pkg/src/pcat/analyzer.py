"""Color statistics of two-colored partitions.

The normalized color of a point is its native color on the lower row and
the inverted color on the upper row.  Summing normalized colors (+1 per
white, -1 per black) gives the color sum of a point set; the sum over all
points is the total color sum of the partition.

The color distance from point a to point b sums normalized colors over a
cyclic stretch between them: the open interval when the two points have
different normalized colors, the half-open interval including b when they
have the same one, and the total color sum when a equals b.  Modulo the
total color sum it behaves like a distance: it vanishes on the diagonal,
flips sign under argument swap and is additive along triples.

Six aggregated statistics form the profile of a set of partitions: block
sizes, block color sums, total color sums, the distances between
cyclically subsequent legs of one block split by whether the pair is
neutral, and the distances between legs of crossing blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .partition import (
    Point,
    TwoColoredPartition,
    crossing_block_pairs,
)

PartitionOrSet = Union[TwoColoredPartition, Iterable[TwoColoredPartition]]


def normalized_color(p: TwoColoredPartition, a: Point) -> int:
    """+1 for normalized white, -1 for normalized black."""
    p._check(a)
    return p._norm_values[p._position[a]]


def sigma(p: TwoColoredPartition, points: Iterable[Point]) -> int:
    """Color sum of a point set: sum of normalized colors."""
    total = 0
    for point in points:
        total += normalized_color(p, point)
    return total


def total_color_sum(p: TwoColoredPartition) -> int:
    """Color sum of all points."""
    return p._prefix_sums[-1]


def _arc_sum(p: TwoColoredPartition, i: int, j: int) -> int:
    """Sum of normalized colors over cyclic positions in ]i, j]."""
    pre = p._prefix_sums
    n = len(p._norm_values)
    if i < j:
        return pre[j + 1] - pre[i + 1]
    return (pre[n] - pre[i + 1]) + pre[j + 1]


def delta(p: TwoColoredPartition, a: Point, b: Point) -> int:
    """Color distance from ``a`` to ``b``.

    Equal points give the total color sum; otherwise the color sum of the
    open interval between them when their normalized colors differ and of
    the half-open interval including ``b`` when they agree.
    """
    p._check(a)
    p._check(b)
    if a == b:
        return total_color_sum(p)
    ia, ib = p._position[a], p._position[b]
    values = p._norm_values
    if values[ia] == values[ib]:
        return _arc_sum(p, ia, ib)
    return _arc_sum(p, ia, ib) - values[ib]


@dataclass(frozen=True)
class ZProfile:
    """The six aggregated statistics of a set of partitions.

    Components, in the fixed order used everywhere: block sizes (F), block
    color sums (V), total color sums (S), subsequent same-block leg
    distances for non-neutral pairs (L) and for neutral pairs (K), and
    crossing-block leg distances (X).
    """

    block_sizes: frozenset[int]
    block_sums: frozenset[int]
    total_sums: frozenset[int]
    same_color_gaps: frozenset[int]
    mixed_color_gaps: frozenset[int]
    crossing_gaps: frozenset[int]

    COMPONENT_LABELS = ("F", "V", "S", "L", "K", "X")

    def components(self) -> tuple[frozenset[int], ...]:
        return (
            self.block_sizes,
            self.block_sums,
            self.total_sums,
            self.same_color_gaps,
            self.mixed_color_gaps,
            self.crossing_gaps,
        )

    def union(self, other: "ZProfile") -> "ZProfile":
        return ZProfile(
            *(a | b for a, b in zip(self.components(), other.components()))
        )

    def negated(self) -> "ZProfile":
        """Flip the sign of every component except the block sizes."""
        flipped = tuple(
            frozenset(-x for x in comp) for comp in self.components()[1:]
        )
        return ZProfile(self.block_sizes, *flipped)

    def __str__(self) -> str:
        parts = []
        for label, comp in zip(self.COMPONENT_LABELS, self.components()):
            inner = ",".join(str(x) for x in sorted(comp))
            parts.append(f"{label}={{{inner}}}")
        return " ".join(parts)


EMPTY_PROFILE = ZProfile(*(frozenset() for _ in range(6)))


def _subsequent_leg_pairs(
    p: TwoColoredPartition, block: frozenset[Point]
) -> list[tuple[Point, Point]]:
    """Ordered leg pairs (a, b) of a block with no block leg inside ]a, b[.

    Sorting the legs along the cyclic order, these are the cyclically
    consecutive pairs; a two-leg block yields both orders, larger blocks
    one pair per forward step, singletons none.
    """
    if len(block) < 2:
        return []
    legs = sorted(block, key=p._position.get)
    return [(legs[i], legs[(i + 1) % len(legs)]) for i in range(len(legs))]


def _profile_of(p: TwoColoredPartition) -> ZProfile:
    sizes = set()
    sums = set()
    same_gaps = set()
    mixed_gaps = set()
    values = p._norm_values
    pos = p._position
    for block in p.blocks:
        sizes.add(len(block))
        sums.add(sum(values[pos[pt]] for pt in block))
        for a, b in _subsequent_leg_pairs(p, block):
            gap = delta(p, a, b)
            if values[pos[a]] + values[pos[b]] != 0:
                same_gaps.add(gap)
            else:
                mixed_gaps.add(gap)
    cross_gaps = set()
    for pair in crossing_block_pairs(p):
        first, second = tuple(pair)
        for a in first:
            for b in second:
                cross_gaps.add(delta(p, a, b))
                cross_gaps.add(delta(p, b, a))
    return ZProfile(
        frozenset(sizes),
        frozenset(sums),
        frozenset({total_color_sum(p)}) if not p.is_empty else frozenset(),
        frozenset(same_gaps),
        frozenset(mixed_gaps),
        frozenset(cross_gaps),
    )


def z_profile(partitions: PartitionOrSet) -> ZProfile:
    """Profile of a single partition or of a set of partitions."""
    if isinstance(partitions, TwoColoredPartition):
        partitions = (partitions,)
    profile = EMPTY_PROFILE
    for p in partitions:
        profile = profile.union(_profile_of(p))
    return profile


def delta_same_block_all_pairs(p: TwoColoredPartition, m: int) -> bool:
    """Whether every ordered pair of legs of one block, equal pairs
    included, has color distance divisible by ``m`` (equal to 0 for m=0)."""
    if m < 0:
        raise ValueError("modulus must be nonnegative")
    for block in p.blocks:
        legs = tuple(block)
        for a in legs:
            for b in legs:
                gap = delta(p, a, b)
                if (m == 0 and gap != 0) or (m > 0 and gap % m != 0):
                    return False
    return True


def congruent(x: int, y: int, modulus: int) -> bool:
    """Congruence mod an arbitrary integer; modulus 0 means equality."""
    if modulus == 0:
        return x == y
    return (x - y) % abs(modulus) == 0
