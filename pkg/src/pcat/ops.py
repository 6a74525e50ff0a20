"""Operations on two-colored partitions.

Tensor product, involution and composition are the three structural
operations; a set of partitions containing the five base partitions
(:data:`BASE_PARTITIONS`) and closed under all three is called a category.
The composite operations (rotations, reflection, color inversion, verticolor
reflection, turn erasure) are derived from these and give an equivalent
closure description: a set is a category exactly when it contains the white
identity pair and is closed under tensor products, the four basic rotations,
verticolor reflection and erasing turns.
"""

from __future__ import annotations

from typing import Iterable, Literal

from .partition import (
    L,
    LOWER,
    PartitionError,
    Point,
    TwoColoredPartition,
    U,
    UPPER,
    invert_color,
    make,
    parse,
)

RotationKind = Literal[
    "down_left",
    "down_right",
    "up_left",
    "up_right",
    "cyclic_clockwise",
    "cyclic_counterclockwise",
]

BASIC_ROTATIONS: tuple[RotationKind, ...] = (
    "down_left",
    "down_right",
    "up_left",
    "up_right",
)
CYCLIC_ROTATIONS: tuple[RotationKind, ...] = (
    "cyclic_clockwise",
    "cyclic_counterclockwise",
)
ALL_ROTATIONS: tuple[RotationKind, ...] = BASIC_ROTATIONS + CYCLIC_ROTATIONS


class NotComposable(PartitionError):
    """Rows disagree; carries the first mismatching position (1-based)."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class EmptySourceRow(PartitionError):
    """The row a rotation takes its point from is empty."""


def tensor(p: TwoColoredPartition, q: TwoColoredPartition) -> TwoColoredPartition:
    """Append the rows of ``q`` to the right of the rows of ``p``."""
    k, l = p.n_upper, p.n_lower
    shifted = (
        frozenset(Point(pt.row, pt.index + (k if pt.row == UPPER else l)) for pt in block)
        for block in q.blocks
    )
    return TwoColoredPartition(
        p.upper + q.upper,
        p.lower + q.lower,
        p.blocks | frozenset(shifted),
    )


def tensor_power(p: TwoColoredPartition, n: int) -> TwoColoredPartition:
    """n-fold tensor product; the zeroth power is the empty partition."""
    if n < 0:
        raise ValueError("tensor power needs n >= 0")
    result = EMPTY
    for _ in range(n):
        result = tensor(result, p)
    return result


def involute(p: TwoColoredPartition) -> TwoColoredPartition:
    """Swap the roles of the upper and the lower row."""
    flipped = (
        frozenset(Point(LOWER if pt.row == UPPER else UPPER, pt.index) for pt in block)
        for block in p.blocks
    )
    return TwoColoredPartition(p.lower, p.upper, frozenset(flipped))


def composable(p: TwoColoredPartition, q: TwoColoredPartition) -> bool:
    """Whether the upper row of ``p`` matches the lower row of ``q``."""
    return p.upper == q.lower


def _first_mismatch(p: TwoColoredPartition, q: TwoColoredPartition) -> int:
    for i, (a, b) in enumerate(zip(p.upper, q.lower)):
        if a != b:
            return i + 1
    return min(p.n_upper, q.n_lower) + 1


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        self.parent[self.find(i)] = self.find(j)


def compose(p: TwoColoredPartition, q: TwoColoredPartition) -> TwoColoredPartition:
    """Stack ``q`` on top of ``p`` and contract the shared middle row.

    The result keeps the lower row of ``p`` and the upper row of ``q``.  The
    middle row (upper row of ``p`` identified with lower row of ``q``) is
    contracted: the join of the two induced partitions is formed and each
    join class pulls the outer legs of every block it touches into one
    block.  Join classes touching no outer point vanish.
    """
    if not composable(p, q):
        raise NotComposable(
            "upper row of first operand must equal lower row of second",
            _first_mismatch(p, q),
        )
    middle = p.n_upper
    uf = _UnionFind(middle)
    for block in p.blocks:
        anchor = None
        for pt in block:
            if pt.row == UPPER:
                if anchor is not None:
                    uf.union(anchor, pt.index - 1)
                anchor = pt.index - 1
    for block in q.blocks:
        anchor = None
        for pt in block:
            if pt.row != UPPER:
                if anchor is not None:
                    uf.union(anchor, pt.index - 1)
                anchor = pt.index - 1

    new_blocks: set[frozenset[Point]] = set()
    for block in p.blocks:
        if all(pt.row != UPPER for pt in block):
            new_blocks.add(block)
    for block in q.blocks:
        if all(pt.row == UPPER for pt in block):
            new_blocks.add(block)

    classes: dict[int, set[Point]] = {}
    for i in range(middle):
        outer = classes.setdefault(uf.find(i), set())
        outer.update(pt for pt in p.block_of[U(i + 1)] if pt.row != UPPER)
        outer.update(pt for pt in q.block_of[L(i + 1)] if pt.row == UPPER)
    for outer in classes.values():
        if outer:
            new_blocks.add(frozenset(outer))

    return TwoColoredPartition(q.upper, p.lower, frozenset(new_blocks))


# -- rotations and reflections ------------------------------------------


def _relabel(
    p: TwoColoredPartition,
    upper: tuple,
    lower: tuple,
    mapping: dict[Point, Point],
) -> TwoColoredPartition:
    blocks = frozenset(
        frozenset(mapping[pt] for pt in block) for block in p.blocks
    )
    return TwoColoredPartition(upper, lower, blocks)


def _rotate_down_left(p: TwoColoredPartition) -> TwoColoredPartition:
    if not p.upper:
        raise EmptySourceRow("no upper point to rotate down at the left")
    mapping = {U(1): L(1)}
    mapping.update({U(i): U(i - 1) for i in range(2, p.n_upper + 1)})
    mapping.update({L(i): L(i + 1) for i in range(1, p.n_lower + 1)})
    return _relabel(
        p, p.upper[1:], (invert_color(p.upper[0]),) + p.lower, mapping
    )


def _rotate_down_right(p: TwoColoredPartition) -> TwoColoredPartition:
    if not p.upper:
        raise EmptySourceRow("no upper point to rotate down at the right")
    k, l = p.n_upper, p.n_lower
    mapping = {U(k): L(l + 1)}
    mapping.update({U(i): U(i) for i in range(1, k)})
    mapping.update({L(i): L(i) for i in range(1, l + 1)})
    return _relabel(
        p, p.upper[:-1], p.lower + (invert_color(p.upper[-1]),), mapping
    )


def _rotate_up_left(p: TwoColoredPartition) -> TwoColoredPartition:
    if not p.lower:
        raise EmptySourceRow("no lower point to rotate up at the left")
    mapping = {L(1): U(1)}
    mapping.update({L(i): L(i - 1) for i in range(2, p.n_lower + 1)})
    mapping.update({U(i): U(i + 1) for i in range(1, p.n_upper + 1)})
    return _relabel(
        p, (invert_color(p.lower[0]),) + p.upper, p.lower[1:], mapping
    )


def _rotate_up_right(p: TwoColoredPartition) -> TwoColoredPartition:
    if not p.lower:
        raise EmptySourceRow("no lower point to rotate up at the right")
    k, l = p.n_upper, p.n_lower
    mapping = {L(l): U(k + 1)}
    mapping.update({L(i): L(i) for i in range(1, l)})
    mapping.update({U(i): U(i) for i in range(1, k + 1)})
    return _relabel(
        p, p.upper + (invert_color(p.lower[-1]),), p.lower[:-1], mapping
    )


def rotate(p: TwoColoredPartition, kind: RotationKind) -> TwoColoredPartition:
    """Move one boundary point to the other row at the same side.

    The moved point keeps its block and inverts its color.  The cyclic
    rotations shift the whole row boundary: clockwise is up-left followed by
    down-right, counter-clockwise is down-left followed by up-right.
    """
    if kind == "down_left":
        return _rotate_down_left(p)
    if kind == "down_right":
        return _rotate_down_right(p)
    if kind == "up_left":
        return _rotate_up_left(p)
    if kind == "up_right":
        return _rotate_up_right(p)
    if kind == "cyclic_clockwise":
        return _rotate_down_right(_rotate_up_left(p))
    if kind == "cyclic_counterclockwise":
        return _rotate_up_right(_rotate_down_left(p))
    raise ValueError(f"unknown rotation kind {kind!r}")


def defined_rotations(p: TwoColoredPartition) -> tuple[RotationKind, ...]:
    """The rotation kinds whose source row is nonempty for ``p``."""
    kinds = []
    if p.upper:
        kinds += ["down_left", "down_right", "cyclic_counterclockwise"]
    if p.lower:
        kinds += ["up_left", "up_right", "cyclic_clockwise"]
    return tuple(kinds)


def reflect(p: TwoColoredPartition) -> TwoColoredPartition:
    """Reverse the native left-to-right order of both rows."""
    k, l = p.n_upper, p.n_lower
    mapping = {U(i): U(k + 1 - i) for i in range(1, k + 1)}
    mapping.update({L(i): L(l + 1 - i) for i in range(1, l + 1)})
    return _relabel(p, p.upper[::-1], p.lower[::-1], mapping)


def color_invert(p: TwoColoredPartition) -> TwoColoredPartition:
    """Invert the native color of every point."""
    return TwoColoredPartition(
        tuple(invert_color(c) for c in p.upper),
        tuple(invert_color(c) for c in p.lower),
        p.blocks,
    )


def verticolor_reflect(p: TwoColoredPartition) -> TwoColoredPartition:
    """Color inversion of the reflection; categories are closed under it."""
    return color_invert(reflect(p))


# -- turns and erasing ----------------------------------------------------


def turns(p: TwoColoredPartition) -> frozenset[frozenset[Point]]:
    """All neutral cyclically-adjacent point pairs.

    A pair of cyclic neighbours is a turn when their normalized colors are
    opposite, i.e. their combined color sum vanishes.
    """
    found = set()
    values = p._norm_values
    order = p.cyclic_order
    n = len(order)
    for i in range(n):
        j = (i + 1) % n
        if i != j and values[i] + values[j] == 0:
            found.add(frozenset((order[i], order[j])))
    return frozenset(found)


def erase(p: TwoColoredPartition, points: Iterable[Point]) -> TwoColoredPartition:
    """Remove the given points and fuse every block they touched.

    All blocks with a leg in the removed set merge into a single block,
    restricted to the surviving points; if nothing of it survives, it
    vanishes.  Survivors keep their relative native order.
    """
    removed = set(points)
    for point in removed:
        p._check(point)
    new_upper = tuple(
        c for i, c in enumerate(p.upper) if U(i + 1) not in removed
    )
    new_lower = tuple(
        c for i, c in enumerate(p.lower) if L(i + 1) not in removed
    )
    mapping: dict[Point, Point] = {}
    for row, length in ((UPPER, p.n_upper), (LOWER, p.n_lower)):
        rank = 0
        for i in range(1, length + 1):
            old = Point(row, i)
            if old not in removed:
                rank += 1
                mapping[old] = Point(row, rank)
    new_blocks: set[frozenset[Point]] = set()
    fused: set[Point] = set()
    for block in p.blocks:
        if block & removed:
            fused.update(block - removed)
        else:
            new_blocks.add(frozenset(mapping[pt] for pt in block))
    if fused:
        new_blocks.add(frozenset(mapping[pt] for pt in fused))
    return TwoColoredPartition(new_upper, new_lower, frozenset(new_blocks))


def erase_turn(p: TwoColoredPartition, turn: Iterable[Point]) -> TwoColoredPartition:
    """Erase a turn (callers should pass a member of :func:`turns`)."""
    return erase(p, turn)


# -- distinguished partitions ---------------------------------------------

EMPTY = make("", "", ())
IDENTITY_WHITE = parse("up=w; lo=w; blocks=(U1 L1)")
IDENTITY_BLACK = parse("up=b; lo=b; blocks=(U1 L1)")
LOWER_PAIR_WB = parse("up=; lo=wb; blocks=(L1 L2)")
LOWER_PAIR_BW = parse("up=; lo=bw; blocks=(L1 L2)")

BASE_PARTITIONS: tuple[TwoColoredPartition, ...] = (
    EMPTY,
    IDENTITY_WHITE,
    IDENTITY_BLACK,
    LOWER_PAIR_WB,
    LOWER_PAIR_BW,
)

CROSSING_WW = parse("up=ww; lo=ww; blocks=(U1 L2)(U2 L1)")
