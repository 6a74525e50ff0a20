"""Two-colored partitions of a pair of point rows.

A value of this module is given by three data: an upper and a lower row of
points, each point colored white (``w``) or black (``b``), and a set
partition of all points into blocks.  Points are addressed by their row and
their rank in the native left-to-right order of that row, e.g. ``U2`` is the
second upper point, ``L1`` the first lower point.

Besides the two native row orders there is a single cyclic order on all
points, running counter-clockwise through the picture: lower row left to
right, then upper row right to left, and back to the start.  Intervals,
ordered tuples and block crossings all refer to this cyclic order.

The canonical text form is ``up=<colors>; lo=<colors>; blocks=(..)(..)``
where colors are words over ``{w, b}`` and each parenthesized group lists the
points of one block, e.g. ``up=w; lo=w; blocks=(U1 L1)``.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, NamedTuple, Sequence

Color = Literal["w", "b"]
RowName = Literal["U", "L"]

WHITE: Color = "w"
BLACK: Color = "b"
UPPER: RowName = "U"
LOWER: RowName = "L"

_COLORS = ("w", "b")
_INVERT = {"w": "b", "b": "w"}


def invert_color(color: Color) -> Color:
    """The opposite color; an involution on {w, b}."""
    return _INVERT[color]


class Point(NamedTuple):
    """Address of a single point: row tag plus 1-based rank in that row."""

    row: RowName
    index: int

    def __str__(self) -> str:
        return f"{self.row}{self.index}"


def U(index: int) -> Point:
    return Point(UPPER, index)


def L(index: int) -> Point:
    return Point(LOWER, index)


class PartitionError(ValueError):
    """Base class for all partition-related errors."""


class InvalidPartition(PartitionError):
    """Block structure violates the partition axioms."""


class InconsistentBlocks(PartitionError):
    """Parsed block list misses, repeats or overshoots points."""


class ParseError(PartitionError):
    """Malformed partition text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PointOutOfRange(PartitionError):
    """A point address does not exist in the partition."""


class EmptyPartition(PartitionError):
    """Operation needs at least one point."""


class EqualLimits(PartitionError):
    """Intervals are only defined for distinct limits."""


class DuplicatePoints(PartitionError):
    """Tuple arguments must be pairwise distinct."""


class CanonicalEncoding(NamedTuple):
    """Injective, hashable fingerprint of a partition.

    Points are enumerated in reading order (upper row left to right, then
    lower row left to right) and blocks are labelled 0, 1, 2, ... by first
    occurrence, which makes ``block_labels`` a restricted-growth word.
    """

    n_upper: int
    n_lower: int
    upper_word: str
    lower_word: str
    block_labels: tuple[int, ...]


@dataclass(frozen=True)
class TwoColoredPartition:
    """Immutable two-colored partition value.

    ``upper`` and ``lower`` hold the native colors of the two rows;
    ``blocks`` is a set of disjoint, nonempty point sets covering every
    point.  The empty partition (both rows empty, no blocks) is valid.
    """

    upper: tuple[Color, ...]
    lower: tuple[Color, ...]
    blocks: frozenset[frozenset[Point]]

    def __post_init__(self) -> None:
        for color in self.upper + self.lower:
            if color not in _COLORS:
                raise InvalidPartition(f"invalid color {color!r}")
        expected = set(self.points)
        seen: set[Point] = set()
        for block in self.blocks:
            if not block:
                raise InvalidPartition("empty block")
            for point in block:
                if point not in expected:
                    raise InvalidPartition(f"point {point} out of range")
                if point in seen:
                    raise InvalidPartition(f"point {point} in two blocks")
                seen.add(point)
        if seen != expected:
            missing = sorted(expected - seen)
            raise InvalidPartition(f"points missing from blocks: {missing}")

    # -- basic geometry -------------------------------------------------

    @property
    def n_upper(self) -> int:
        return len(self.upper)

    @property
    def n_lower(self) -> int:
        return len(self.lower)

    @property
    def n_points(self) -> int:
        return len(self.upper) + len(self.lower)

    @property
    def is_empty(self) -> bool:
        return not self.upper and not self.lower

    @cached_property
    def points(self) -> tuple[Point, ...]:
        """All points in reading order: upper left-right, lower left-right."""
        ups = tuple(U(i + 1) for i in range(len(self.upper)))
        los = tuple(L(i + 1) for i in range(len(self.lower)))
        return ups + los

    def has_point(self, point: Point) -> bool:
        if point.row == UPPER:
            return 1 <= point.index <= len(self.upper)
        if point.row == LOWER:
            return 1 <= point.index <= len(self.lower)
        return False

    def color_of(self, point: Point) -> Color:
        self._check(point)
        row = self.upper if point.row == UPPER else self.lower
        return row[point.index - 1]

    def _check(self, point: Point) -> None:
        if not self.has_point(point):
            raise PointOutOfRange(f"no point {point} in this partition")

    # -- cyclic order machinery -----------------------------------------

    @cached_property
    def cyclic_order(self) -> tuple[Point, ...]:
        """All points along the counter-clockwise orientation."""
        los = tuple(L(i + 1) for i in range(len(self.lower)))
        ups = tuple(U(i + 1) for i in reversed(range(len(self.upper))))
        return los + ups

    @cached_property
    def _position(self) -> dict[Point, int]:
        return {pt: i for i, pt in enumerate(self.cyclic_order)}

    @cached_property
    def _norm_values(self) -> tuple[int, ...]:
        """Normalized color sign per cyclic position (+1 white, -1 black)."""
        values = []
        for pt in self.cyclic_order:
            color = self.color_of(pt)
            sign = 1 if color == WHITE else -1
            if pt.row == UPPER:
                sign = -sign
            values.append(sign)
        return tuple(values)

    @cached_property
    def _prefix_sums(self) -> tuple[int, ...]:
        sums = [0]
        for value in self._norm_values:
            sums.append(sums[-1] + value)
        return tuple(sums)

    @cached_property
    def block_of(self) -> dict[Point, frozenset[Point]]:
        mapping: dict[Point, frozenset[Point]] = {}
        for block in self.blocks:
            for point in block:
                mapping[point] = block
        return mapping

    # -- canonical form ---------------------------------------------------

    @cached_property
    def canonical(self) -> CanonicalEncoding:
        labels: dict[frozenset[Point], int] = {}
        word = []
        for point in self.points:
            block = self.block_of[point]
            if block not in labels:
                labels[block] = len(labels)
            word.append(labels[block])
        return CanonicalEncoding(
            len(self.upper),
            len(self.lower),
            "".join(self.upper),
            "".join(self.lower),
            tuple(word),
        )

    def __str__(self) -> str:
        return format_partition(self)


def make(
    upper: str | Sequence[Color],
    lower: str | Sequence[Color],
    blocks: Iterable[Iterable[Point | str]],
) -> TwoColoredPartition:
    """Build a partition from color words and block point lists.

    Points may be given as ``Point`` values or as text like ``"U2"``.
    """
    frozen = frozenset(
        frozenset(_as_point(p) for p in block) for block in blocks
    )
    return TwoColoredPartition(tuple(upper), tuple(lower), frozen)


def _as_point(value: Point | str) -> Point:
    if isinstance(value, Point):
        return value
    row, digits = value[0], value[1:]
    if row not in ("U", "L") or not digits.isdigit():
        raise PartitionError(f"bad point name {value!r}")
    return Point(row, int(digits))


EMPTY = make("", "", ())


def canonicalize(p: TwoColoredPartition) -> CanonicalEncoding:
    """Canonical encoding; equal partitions yield identical encodings."""
    return p.canonical


def from_canonical(encoding: CanonicalEncoding) -> TwoColoredPartition:
    """Rebuild the partition a canonical encoding came from."""
    n_upper, n_lower, upper_word, lower_word, labels = encoding
    points = tuple(U(i + 1) for i in range(n_upper)) + tuple(
        L(i + 1) for i in range(n_lower)
    )
    groups: dict[int, list[Point]] = {}
    for point, label in zip(points, labels):
        groups.setdefault(label, []).append(point)
    return make(upper_word, lower_word, groups.values())


def cyclic_successor(p: TwoColoredPartition, a: Point) -> Point:
    """The next point counter-clockwise; identity on a one-point partition."""
    if p.is_empty:
        raise EmptyPartition("empty partition has no cyclic order")
    p._check(a)
    order = p.cyclic_order
    return order[(p._position[a] + 1) % len(order)]


_INTERVAL_KINDS = ("open", "left_open", "right_open", "closed")


def interval(
    p: TwoColoredPartition,
    a: Point,
    b: Point,
    kind: str = "open",
) -> tuple[Point, ...]:
    """Points from ``a`` to ``b`` along the cyclic order.

    ``open`` excludes both limits, ``left_open`` includes only ``b``,
    ``right_open`` only ``a``, ``closed`` both.  Limits must differ.
    """
    if kind not in _INTERVAL_KINDS:
        raise ValueError(f"unknown interval kind {kind!r}")
    p._check(a)
    p._check(b)
    if a == b:
        raise EqualLimits("intervals need distinct limits")
    order = p.cyclic_order
    n = len(order)
    ia, ib = p._position[a], p._position[b]
    inner = []
    i = (ia + 1) % n
    while i != ib:
        inner.append(order[i])
        i = (i + 1) % n
    points = tuple(inner)
    if kind == "left_open":
        points = points + (b,)
    elif kind == "right_open":
        points = (a,) + points
    elif kind == "closed":
        points = (a,) + points + (b,)
    return points


def is_ordered(p: TwoColoredPartition, points: Sequence[Point]) -> bool:
    """Whether the tuple follows the cyclic order.

    A tuple (a_1, ..., a_n) of distinct points is ordered when, for every
    i < j, the open interval from a_i to a_j contains a_k exactly for the
    indices i < k < j.  Ordered tuples stay ordered under rotation.
    """
    if len(points) < 3:
        raise ValueError("ordered tuples need at least three points")
    for point in points:
        p._check(point)
    if len(set(points)) != len(points):
        raise DuplicatePoints("points must be pairwise distinct")
    n = p.n_points
    base = p._position[points[0]]
    rel = [(p._position[pt] - base) % n for pt in points]
    return all(rel[i] < rel[i + 1] for i in range(len(rel) - 1))


def crossing_block_pairs(
    p: TwoColoredPartition,
) -> frozenset[frozenset[frozenset[Point]]]:
    """All unordered pairs of blocks that cross.

    Two blocks cross when they interleave along the cyclic order, i.e. some
    tuple (a, a', b, b') with a, b in one block and a', b' in the other is
    ordered.  Equivalently, the legs of one block meet at least two of the
    arcs the other block's legs cut the cycle into.
    """
    blocks = [b for b in p.blocks if len(b) >= 2]
    positions = {
        block: sorted(p._position[pt] for pt in block) for block in blocks
    }
    out = []
    for i, first in enumerate(blocks):
        pos_first = positions[first]
        for second in blocks[i + 1 :]:
            arcs = {
                bisect_right(pos_first, q) % len(pos_first)
                for q in positions[second]
            }
            if len(arcs) >= 2:
                out.append(frozenset((first, second)))
    return frozenset(out)


def is_noncrossing(p: TwoColoredPartition) -> bool:
    return not crossing_block_pairs(p)


def is_consecutive(p: TwoColoredPartition, points: Iterable[Point]) -> bool:
    """Whether the point set is empty, a singleton, an interval, or the
    complement of a singleton."""
    subset = set(points)
    for point in subset:
        p._check(point)
    n = p.n_points
    if len(subset) <= 1 or len(subset) >= n - 1:
        return True
    marks = [p.cyclic_order[i] in subset for i in range(n)]
    breaks = sum(
        1 for i in range(n) if marks[i] and not marks[(i + 1) % n]
    )
    return breaks == 1


# -- text form ----------------------------------------------------------


def format_partition(p: TwoColoredPartition) -> str:
    """Canonical text: blocks by first occurrence, points in reading order."""
    order = {pt: i for i, pt in enumerate(p.points)}
    seen: list[frozenset[Point]] = []
    for point in p.points:
        block = p.block_of[point]
        if block not in seen:
            seen.append(block)
    groups = "".join(
        "(" + " ".join(str(pt) for pt in sorted(block, key=order.get)) + ")"
        for block in seen
    )
    return (
        f"up={''.join(p.upper)}; lo={''.join(p.lower)}; blocks={groups}"
    )


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str) -> None:
        if not self.text.startswith(token, self.pos):
            raise ParseError(f"expected {token!r}", self.pos)
        self.pos += len(token)

    def read_colorword(self) -> str:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in _COLORS:
            self.pos += 1
        return self.text[start : self.pos]

    def read_point(self) -> Point:
        start = self.pos
        row = self.text[self.pos : self.pos + 1]
        if row not in ("U", "L"):
            raise ParseError("expected point like U1 or L2", start)
        self.pos += 1
        digit_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digit_start:
            raise ParseError("expected point rank digits", self.pos)
        return Point(row, int(self.text[digit_start : self.pos]))

    @property
    def done(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos : self.pos + 1]


def parse(text: str) -> TwoColoredPartition:
    """Parse the canonical text grammar; inverse of :func:`format_partition`.

    Raises :class:`ParseError` on malformed syntax and
    :class:`InconsistentBlocks` when the block list does not partition the
    declared points.
    """
    sc = _Scanner(text)
    sc.skip_ws()
    sc.expect("up=")
    upper = sc.read_colorword()
    sc.expect(";")
    sc.skip_ws()
    sc.expect("lo=")
    lower = sc.read_colorword()
    sc.expect(";")
    sc.skip_ws()
    sc.expect("blocks=")
    groups: list[list[Point]] = []
    while True:
        sc.skip_ws()
        if sc.done:
            break
        sc.expect("(")
        group: list[Point] = []
        while True:
            sc.skip_ws()
            if sc.peek() == ")":
                sc.pos += 1
                break
            if sc.done:
                raise ParseError("unbalanced '('", sc.pos)
            group.append(sc.read_point())
        groups.append(group)
    expected = set(
        [U(i + 1) for i in range(len(upper))]
        + [L(i + 1) for i in range(len(lower))]
    )
    listed: list[Point] = [pt for group in groups for pt in group]
    seen: set[Point] = set()
    for pt in listed:
        if pt not in expected:
            raise InconsistentBlocks(f"point {pt} outside declared rows")
        if pt in seen:
            raise InconsistentBlocks(f"point {pt} listed twice")
        seen.add(pt)
    if seen != expected:
        missing = ", ".join(str(pt) for pt in sorted(expected - seen))
        raise InconsistentBlocks(f"points missing from blocks: {missing}")
    if any(not group for group in groups):
        raise InconsistentBlocks("empty block group")
    return make(upper, lower, groups)
