"""Bounded closure computation, sampling and closure verification.

The closure engine saturates a generator set under one of two operation
sets, discarding anything above a point cap:

* ``category``: the five base partitions plus tensor products, involution
  and composition of composable pairs;
* ``alternative``: the white identity pair plus tensor products, the four
  basic rotations, verticolor reflection and turn erasure.

Both describe the same unbounded closures; the bounded runs are
under-approximations of the capped slice (detours through larger
partitions may be missed), so equality checks between the two op sets are
done as two-sided containment with a little cap slack.

The module also provides exact-uniform random partition sampling via
restricted-growth words, exhaustive enumeration at small sizes, rejection
sampling of parameter-set members, and the operation-stability report used
to verify that a parameter tuple cuts out a closed set.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Iterator, Literal, Optional

from . import ops
from .analyzer import z_profile
from .paramsets import ParameterTuple, in_R
from .partition import (
    CanonicalEncoding,
    TwoColoredPartition,
    canonicalize,
    make,
)

OpSetName = Literal["category", "alternative"]


@dataclass(frozen=True)
class ClosureConfig:
    max_points: int = 4
    op_set: OpSetName = "category"
    max_elements: int = 200_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.max_points < 2:
            raise ValueError("max_points must be >= 2")
        if self.max_elements < 1:
            raise ValueError("max_elements must be >= 1")
        if self.op_set not in ("category", "alternative"):
            raise ValueError(f"unknown op set {self.op_set!r}")


@dataclass
class ClosureResult:
    partitions: tuple[TwoColoredPartition, ...]
    capped: bool
    stats: Counter
    config: ClosureConfig

    @property
    def encodings(self) -> frozenset[CanonicalEncoding]:
        return frozenset(p.canonical for p in self.partitions)

    def census(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self.partitions:
            counts[p.n_points] = counts.get(p.n_points, 0) + 1
        return dict(sorted(counts.items()))


def _unary_results(
    p: TwoColoredPartition, op_set: OpSetName
) -> list[tuple[str, TwoColoredPartition]]:
    out: list[tuple[str, TwoColoredPartition]] = []
    if op_set == "category":
        out.append(("involute", ops.involute(p)))
        return out
    for kind in ops.BASIC_ROTATIONS:
        if (kind in ("down_left", "down_right") and p.upper) or (
            kind in ("up_left", "up_right") and p.lower
        ):
            out.append((f"rotate:{kind}", ops.rotate(p, kind)))
    out.append(("verticolor_reflect", ops.verticolor_reflect(p)))
    for turn in sorted(ops.turns(p), key=sorted):
        out.append(("erase_turn", ops.erase(p, turn)))
    return out


def bounded_closure(
    generators: Iterable[TwoColoredPartition], config: ClosureConfig
) -> ClosureResult:
    """Saturate the generators under the configured operations.

    Results larger than the point cap are discarded on the spot.  The run
    is deterministic; multiple workers only parallelize the per-frontier
    candidate computation and cannot change the resulting set.
    """
    if config.op_set == "category":
        start = list(ops.BASE_PARTITIONS)
    else:
        start = [ops.IDENTITY_WHITE]
    start.extend(generators)

    cap = config.max_points
    found: dict[CanonicalEncoding, TwoColoredPartition] = {}
    order: list[TwoColoredPartition] = []
    stats: Counter = Counter()
    frontier: deque[TwoColoredPartition] = deque()
    capped = False

    by_upper: dict[tuple, list[TwoColoredPartition]] = {}
    by_lower: dict[tuple, list[TwoColoredPartition]] = {}

    def admit(name: str, candidate: TwoColoredPartition) -> None:
        nonlocal capped
        stats[name] += 1
        if candidate.n_points > cap:
            stats["discarded_over_cap"] += 1
            return
        enc = candidate.canonical
        if enc in found:
            return
        if len(found) >= config.max_elements:
            capped = True
            return
        found[enc] = candidate
        order.append(candidate)
        frontier.append(candidate)
        by_upper.setdefault(candidate.upper, []).append(candidate)
        by_lower.setdefault(candidate.lower, []).append(candidate)

    for g in start:
        if g.n_points > cap:
            raise ValueError("generator exceeds max_points")
        admit("generator", g)

    pool = (
        ThreadPoolExecutor(max_workers=config.workers)
        if config.workers > 1
        else None
    )
    try:
        while frontier and not capped:
            batch = list(frontier)
            frontier.clear()
            if pool is not None:
                unary_lists = list(
                    pool.map(lambda p: _unary_results(p, config.op_set), batch)
                )
            else:
                unary_lists = [_unary_results(p, config.op_set) for p in batch]
            for results in unary_lists:
                for name, candidate in results:
                    admit(name, candidate)
                    if capped:
                        break
                if capped:
                    break
            if capped:
                break
            for p in batch:
                snapshot = list(order)
                for q in snapshot:
                    if p.n_points + q.n_points <= cap:
                        admit("tensor", ops.tensor(p, q))
                        if p is not q:
                            admit("tensor", ops.tensor(q, p))
                    if capped:
                        break
                if capped:
                    break
                if config.op_set == "category":
                    for q in by_lower.get(p.upper, []):
                        admit("compose", ops.compose(p, q))
                        if capped:
                            break
                    for q in by_upper.get(p.lower, []):
                        if q is not p:
                            admit("compose", ops.compose(q, p))
                        if capped:
                            break
                if capped:
                    break
    finally:
        if pool is not None:
            pool.shutdown()

    return ClosureResult(tuple(order), capped, stats, config)


# -- enumeration -------------------------------------------------------------


def _iter_rgs(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth words of length n (set partitions of n items)."""
    if n == 0:
        yield ()
        return
    word = [0] * n
    maxima = [0] * n
    while True:
        yield tuple(word)
        i = n - 1
        while i > 0 and word[i] == maxima[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        word[i] += 1
        maxima[i] = max(maxima[i - 1], word[i])
        for j in range(i + 1, n):
            word[j] = 0
            maxima[j] = maxima[i]


def _partition_from_rgs(
    n_upper: int, colors: tuple[str, ...], rgs: tuple[int, ...]
) -> TwoColoredPartition:
    groups: dict[int, list] = {}
    points = [
        ("U", i + 1) if i < n_upper else ("L", i - n_upper + 1)
        for i in range(len(rgs))
    ]
    from .partition import Point

    for (row, index), label in zip(points, rgs):
        groups.setdefault(label, []).append(Point(row, index))
    return make(colors[:n_upper], colors[n_upper:], groups.values())


def iter_partitions(n_points: int) -> Iterator[TwoColoredPartition]:
    """Every partition with exactly the given number of points.

    Runs over all row splits, all colorings and all set partitions; the
    count is (n+1) * 2^n * Bell(n).
    """
    for rgs in _iter_rgs(n_points):
        for colors in product("wb", repeat=n_points):
            for n_upper in range(n_points + 1):
                yield _partition_from_rgs(n_upper, colors, rgs)


def iter_partitions_up_to(max_points: int) -> Iterator[TwoColoredPartition]:
    for n in range(max_points + 1):
        yield from iter_partitions(n)


# -- random sampling ----------------------------------------------------------


def _rgs_tail_counts(n: int) -> list[list[int]]:
    """tails[i][m]: completions of an RGS prefix of length i with max m-1."""
    tails = [[0] * (n + 2) for _ in range(n + 1)]
    for m in range(n + 2):
        tails[n][m] = 1
    for i in range(n - 1, -1, -1):
        for m in range(i + 1):
            tails[i][m] = m * tails[i + 1][m] + tails[i + 1][m + 1]
    return tails


def _random_rgs(n: int, rng: random.Random) -> tuple[int, ...]:
    """Exact-uniform random restricted-growth word of length n."""
    if n == 0:
        return ()
    tails = _rgs_tail_counts(n)
    word = []
    used = 0
    for i in range(n):
        total = tails[i][used]
        pick = rng.randrange(total)
        if pick < used * tails[i + 1][used]:
            word.append(pick // tails[i + 1][used])
        else:
            word.append(used)
            used += 1
    return tuple(word)


def sample_partitions(
    n_points: int, count: int, seed: int
) -> list[TwoColoredPartition]:
    """Uniform random partitions: uniform row split, uniform coloring,
    uniform set partition.  Deterministic for a fixed seed."""
    if n_points < 0:
        raise ValueError("n_points must be >= 0")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        rgs = _random_rgs(n_points, rng)
        colors = tuple(rng.choice("wb") for _ in range(n_points))
        n_upper = rng.randint(0, n_points)
        out.append(_partition_from_rgs(n_upper, colors, rgs))
    return out


@dataclass
class SampleResult:
    members: list[TwoColoredPartition]
    requested: int
    attempts: int

    @property
    def acceptance_rate(self) -> float:
        return len(self.members) / self.attempts if self.attempts else 0.0


class RetryExhausted(RuntimeError):
    """Rejection sampling hit the retry cap; carries the partial result."""

    def __init__(self, partial: SampleResult):
        super().__init__(
            f"retry cap exhausted after {partial.attempts} attempts "
            f"({len(partial.members)}/{partial.requested} members found)"
        )
        self.partial = partial


def sample_in_R(
    bound: ParameterTuple,
    n_points: int,
    count: int,
    seed: int,
    retry_cap: int = 10_000,
) -> SampleResult:
    """Rejection-sample members of the set cut out by the tuple.

    Raises :class:`RetryExhausted` once a single requested member has been
    rejected ``retry_cap`` times in a row; the exception carries everything
    found so far plus the measured acceptance rate.
    """
    rng = random.Random(seed)
    members: list[TwoColoredPartition] = []
    attempts = 0
    for _ in range(count):
        rejections = 0
        while True:
            rgs = _random_rgs(n_points, rng)
            colors = tuple(rng.choice("wb") for _ in range(n_points))
            n_upper = rng.randint(0, n_points)
            candidate = _partition_from_rgs(n_upper, colors, rgs)
            attempts += 1
            if in_R(candidate, bound):
                members.append(candidate)
                break
            rejections += 1
            if rejections >= retry_cap:
                raise RetryExhausted(SampleResult(members, count, attempts))
    return SampleResult(members, count, attempts)


# -- operation-stability verification -----------------------------------------


@dataclass
class Violation:
    operation: str
    inputs: tuple[str, ...]
    result: str


@dataclass
class RespectsReport:
    violations: list[Violation]
    op_counts: Counter
    seed: int

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def total_ops(self) -> int:
        return sum(self.op_counts.values())

    def to_text(self) -> str:
        lines = []
        for name in sorted(self.op_counts):
            lines.append(f"op {name}: {self.op_counts[name]}")
        for v in self.violations[:50]:
            lines.append(
                f"VIOLATION {v.operation} on {' ; '.join(v.inputs)} -> {v.result}"
            )
        status = "ok" if self.ok else f"violations={len(self.violations)}"
        lines.append(f"RESULT {status} ops={self.total_ops} seed={self.seed}")
        return "\n".join(lines) + "\n"


def _cyclic_variants(p: TwoColoredPartition) -> list[TwoColoredPartition]:
    """All row splits of the cyclic word of p, reached by cyclic rotations."""
    variants = {p.canonical: p}
    current = p
    for _ in range(p.n_points):
        if not current.lower:
            break
        current = ops.rotate(current, "cyclic_clockwise")
        variants.setdefault(current.canonical, current)
    current = p
    for _ in range(p.n_points):
        if not current.upper:
            break
        current = ops.rotate(current, "cyclic_counterclockwise")
        variants.setdefault(current.canonical, current)
    return list(variants.values())


def closure_respects(
    bound: ParameterTuple,
    samples: Iterable[TwoColoredPartition],
    seed: int = 0,
    membership: Optional[Callable[[TwoColoredPartition], bool]] = None,
) -> RespectsReport:
    """Apply every operation to sampled members and check the results stay in.

    Pairs for tensor products and compositions are drawn by pairing each
    sample with its successor in the sample list (cyclically); composable
    pairs are found by cyclically rotating the first element of the pair
    until its upper row matches the second's lower row, skipping the pair
    when no rotation aligns.
    """
    member = membership or (lambda p: in_R(p, bound))
    items = list(samples)
    report = RespectsReport([], Counter(), seed)

    def check(op: str, inputs: tuple[TwoColoredPartition, ...], result) -> None:
        report.op_counts[op] += 1
        if not member(result):
            report.violations.append(
                Violation(op, tuple(str(i) for i in inputs), str(result))
            )

    seen: set[CanonicalEncoding] = set()
    unique: list[TwoColoredPartition] = []
    for p in items:
        if p.canonical not in seen:
            seen.add(p.canonical)
            unique.append(p)

    for p in unique:
        check("involute", (p,), ops.involute(p))
        for kind in ops.defined_rotations(p):
            check(f"rotate:{kind}", (p,), ops.rotate(p, kind))
        check("verticolor_reflect", (p,), ops.verticolor_reflect(p))
        for turn in sorted(ops.turns(p), key=sorted):
            check("erase_turn", (p,), ops.erase(p, turn))

    for p, q in zip(items, items[1:] + items[:1]):
        check("tensor", (p, q), ops.tensor(p, q))
        aligned = None
        for variant in _cyclic_variants(p):
            if ops.composable(variant, q):
                aligned = variant
                break
        if aligned is not None:
            check("compose", (aligned, q), ops.compose(aligned, q))
        else:
            report.op_counts["compose_skipped"] += 1

    return report
