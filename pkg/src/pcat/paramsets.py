"""Symbolic integer sets and the catalog of closed parameter tuples.

A parameter tuple bounds the six profile components of a partition from
above; the partitions whose profile stays below the tuple form the set it
cuts out.  The catalog lists the fourteen parameter families known to cut
out categories closed under all partition operations (plus one extra family
bounding only the block color sums).  Tuples are compared componentwise, so
meets are componentwise intersections and membership is monotone.

Integer sets are expression trees with a decidable membership test; there
is deliberately no symbolic equality procedure, since all consumers either
test membership of bounded profile values or compare sets pointwise on a
finite window.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .analyzer import ZProfile, z_profile
from .partition import TwoColoredPartition, parse


class IntegerSet:
    """Base class for symbolic subsets of the integers."""

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    def describe(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class EmptySet(IntegerSet):
    def contains(self, n: int) -> bool:
        return False

    def describe(self) -> str:
        return "{}"


@dataclass(frozen=True)
class AllIntegers(IntegerSet):
    def contains(self, n: int) -> bool:
        return True

    def describe(self) -> str:
        return "Z"


@dataclass(frozen=True)
class Singleton(IntegerSet):
    value: int

    def contains(self, n: int) -> bool:
        return n == self.value

    def describe(self) -> str:
        return f"{{{self.value}}}"


@dataclass(frozen=True)
class FiniteSet(IntegerSet):
    values: frozenset[int]

    def contains(self, n: int) -> bool:
        return n in self.values

    def describe(self) -> str:
        return "{" + ",".join(str(v) for v in sorted(self.values)) + "}"


@dataclass(frozen=True)
class Progression(IntegerSet):
    """The arithmetic progression offset + step * Z with step >= 1."""

    step: int
    offset: int = 0

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError("progression step must be >= 1")

    def contains(self, n: int) -> bool:
        return (n - self.offset) % self.step == 0

    def describe(self) -> str:
        if self.offset % self.step == 0:
            return f"{self.step}Z"
        return f"{self.offset % self.step}+{self.step}Z"


@dataclass(frozen=True)
class SymmetricHull(IntegerSet):
    """The union of a set with its negation."""

    inner: IntegerSet

    def contains(self, n: int) -> bool:
        return self.inner.contains(n) or self.inner.contains(-n)

    def describe(self) -> str:
        return f"+-{self.inner.describe()}"


@dataclass(frozen=True)
class ModShiftHull(IntegerSet):
    """The set (D u (m - D)) + mZ, optionally with 0 adjoined first.

    Closed under negation and under shifts by m, which is what lets it sit
    in the excluded-crossing-distance slot of catalog tuples.
    """

    shifts: frozenset[int]
    modulus: int
    include_zero: bool = False

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")

    def contains(self, n: int) -> bool:
        r = n % self.modulus
        if self.include_zero and r == 0:
            return True
        for d in self.shifts:
            if r == d % self.modulus or r == (self.modulus - d) % self.modulus:
                return True
        return False

    def describe(self) -> str:
        base = "{" + ",".join(str(v) for v in sorted(self.shifts)) + "}"
        zero = "u{0}" if self.include_zero else ""
        return f"(+-{base}{zero})+{self.modulus}Z"


@dataclass(frozen=True)
class SemigroupHull(IntegerSet):
    """All positive sums of the generators (a numerical semigroup, no 0)."""

    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.generators or any(g < 1 for g in self.generators):
            raise ValueError("semigroup generators must be positive")

    def contains(self, n: int) -> bool:
        if n < 1:
            return False
        reachable = bytearray(n + 1)
        reachable[0] = 1
        for i in range(1, n + 1):
            for g in self.generators:
                if g <= i and reachable[i - g]:
                    reachable[i] = 1
                    break
        return bool(reachable[n])

    def describe(self) -> str:
        return "<" + ",".join(str(g) for g in sorted(self.generators)) + ">"


@dataclass(frozen=True)
class UnionSet(IntegerSet):
    members: tuple[IntegerSet, ...]

    def contains(self, n: int) -> bool:
        return any(member.contains(n) for member in self.members)

    def describe(self) -> str:
        return " u ".join(m.describe() for m in self.members)


@dataclass(frozen=True)
class IntersectionSet(IntegerSet):
    members: tuple[IntegerSet, ...]

    def contains(self, n: int) -> bool:
        return all(member.contains(n) for member in self.members)

    def describe(self) -> str:
        return " n ".join(m.describe() for m in self.members)


@dataclass(frozen=True)
class Complement(IntegerSet):
    inner: IntegerSet

    def contains(self, n: int) -> bool:
        return not self.inner.contains(n)

    def describe(self) -> str:
        return f"Z\\{self.inner.describe()}"


ALL = AllIntegers()
NONE = EmptySet()
ZERO = Singleton(0)
NATURALS = SemigroupHull((1,))


def multiples(m: int) -> IntegerSet:
    """The set mZ; 0Z collapses to {0}."""
    if m < 0:
        raise ValueError("modulus must be nonnegative")
    return ZERO if m == 0 else Progression(m)


def odd_multiples(m: int) -> IntegerSet:
    """The set m + 2mZ of odd multiples of m >= 1."""
    return Progression(2 * m, m)


def finite(values: Iterable[int]) -> IntegerSet:
    vals = frozenset(values)
    return FiniteSet(vals) if vals else NONE


def symmetric_finite(values: Iterable[int]) -> IntegerSet:
    vals = frozenset(values)
    return SymmetricHull(FiniteSet(vals)) if vals else NONE


# -- parameter tuples -------------------------------------------------------


@dataclass(frozen=True)
class ParameterTuple:
    """Upper bounds for the six profile components, in profile order."""

    block_sizes: IntegerSet
    block_sums: IntegerSet
    total_sums: IntegerSet
    same_color_gaps: IntegerSet
    mixed_color_gaps: IntegerSet
    crossing_gaps: IntegerSet

    def components(self) -> tuple[IntegerSet, ...]:
        return (
            self.block_sizes,
            self.block_sums,
            self.total_sums,
            self.same_color_gaps,
            self.mixed_color_gaps,
            self.crossing_gaps,
        )

    def describe(self) -> str:
        labels = ZProfile.COMPONENT_LABELS
        return " ".join(
            f"{label.lower()}={comp.describe()}"
            for label, comp in zip(labels, self.components())
        )


TOP = ParameterTuple(NATURALS, ALL, ALL, ALL, ALL, ALL)


def profile_leq(profile: ZProfile, bound: ParameterTuple) -> bool:
    """Componentwise containment of profile values in the bound sets."""
    return first_failing_component(profile, bound) is None


def first_failing_component(
    profile: ZProfile, bound: ParameterTuple
) -> Optional[str]:
    """Label of the first profile component not below the bound, if any."""
    for label, values, allowed in zip(
        ZProfile.COMPONENT_LABELS, profile.components(), bound.components()
    ):
        for value in values:
            if not allowed.contains(value):
                return label
    return None


def in_R(p: TwoColoredPartition, bound: ParameterTuple) -> bool:
    """Membership of a partition in the set cut out by the tuple."""
    return profile_leq(z_profile(p), bound)


def meet(tuples: Iterable[ParameterTuple]) -> ParameterTuple:
    """Componentwise intersection; the lattice meet of parameter tuples."""
    items = list(tuples)
    if not items:
        raise ValueError("meet needs at least one tuple")
    if len(items) == 1:
        return items[0]
    return ParameterTuple(
        *(
            IntersectionSet(tuple(t.components()[i] for t in items))
            for i in range(6)
        )
    )


# -- distinguished simple tuples (building blocks of the catalog rows) ------


def pair_blocks_tuple() -> ParameterTuple:
    """All blocks are pairs (forcing even block and total sums)."""
    return ParameterTuple(
        finite([2]), symmetric_finite([0, 2]), Progression(2), ALL, ALL, ALL
    )


def small_blocks_tuple() -> ParameterTuple:
    """All blocks have size one or two."""
    return ParameterTuple(
        finite([1, 2]), symmetric_finite([0, 1, 2]), ALL, ALL, ALL, ALL
    )


def neutral_pairs_tuple() -> ParameterTuple:
    """All blocks are neutral pairs."""
    return ParameterTuple(finite([2]), ZERO, ZERO, NONE, ALL, ALL)


def neutral_small_blocks_tuple() -> ParameterTuple:
    """Blocks of size at most two whose pairs are neutral."""
    return ParameterTuple(
        finite([1, 2]), symmetric_finite([0, 1]), ALL, NONE, ALL, ALL
    )


def total_sum_tuple(m: int) -> ParameterTuple:
    """Total color sum divisible by m."""
    return ParameterTuple(NATURALS, ALL, multiples(m), ALL, ALL, ALL)


def same_block_gap_tuple(m: int) -> ParameterTuple:
    """Color distance between any two legs of one block divisible by m."""
    return ParameterTuple(
        NATURALS, ALL, multiples(m), multiples(m), multiples(m), ALL
    )


def staggered_gap_tuple(m: int) -> ParameterTuple:
    """Blocks of size at most two whose leg distances are odd multiples of
    m for equal normalized colors and even multiples for opposite ones."""
    return ParameterTuple(
        finite([1, 2]),
        symmetric_finite([0, 1, 2]),
        multiples(2 * m),
        odd_multiples(m),
        multiples(2 * m),
        ALL,
    )


def crossing_excluded_tuple(m: int, excluded: IntegerSet) -> ParameterTuple:
    """Same-block distances divisible by m, crossing distances outside the
    excluded set (which must be symmetric and shift-invariant mod m)."""
    return ParameterTuple(
        NATURALS,
        ALL,
        multiples(m),
        multiples(m),
        multiples(m),
        Complement(excluded),
    )


def block_sums_tuple(g: int) -> ParameterTuple:
    """Block color sums divisible by g; closed but possibly hyperoctahedral."""
    return ParameterTuple(NATURALS, multiples(g), ALL, ALL, ALL, ALL)


# -- the catalog -------------------------------------------------------------


class InvalidParams(ValueError):
    """Row parameters violate the row's quantifier constraints."""


@dataclass(frozen=True)
class QCatalogEntry:
    row_id: str
    params: tuple[tuple[str, object], ...]
    realized: ParameterTuple

    def describe(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"row {self.row_id} [{inner}]: {self.realized.describe()}"


@dataclass(frozen=True)
class RowSpec:
    row_id: str
    param_names: tuple[str, ...]
    formulas: tuple[str, ...]


CATALOG: tuple[RowSpec, ...] = (
    RowSpec("1", ("u", "m"), ("{2}", "+-{0,2}", "2umZ", "mZ", "mZ", "Z")),
    RowSpec("2", ("u", "m"), ("{2}", "+-{0,2}", "2umZ", "m+2mZ", "2mZ", "Z")),
    RowSpec("3", ("u", "m"), ("{2}", "+-{0,2}", "2umZ", "m+2mZ", "2mZ", "Z\\mZ")),
    RowSpec("4", ("m",), ("{2}", "{0}", "{0}", "{}", "mZ", "Z")),
    RowSpec("5", ("N",), ("{2}", "+-{0,2}", "{0}", "{0}", "{0}", "Z\\+-N")),
    RowSpec("6", ("N",), ("{2}", "{0}", "{0}", "{}", "{0}", "Z\\+-N")),
    RowSpec("7", ("N",), ("{2}", "{0}", "{0}", "{}", "{0}", "Z\\({0}u+-N)")),
    RowSpec("8", ("u", "m", "D"), ("{1,2}", "+-{0,1,2}", "umZ", "mZ", "mZ", "Z\\(+-D+mZ)")),
    RowSpec("9", ("u", "m", "D"), ("{1,2}", "+-{0,1,2}", "2umZ", "m+2mZ", "2mZ", "Z\\(+-D+mZ)")),
    RowSpec("10", ("u", "m", "D"), ("{1,2}", "+-{0,1}", "umZ", "{}", "mZ", "Z\\(+-D+mZ)")),
    RowSpec("11", ("E",), ("{1,2}", "+-{0,1,2}", "{0}", "{0}", "{0}", "Z\\+-E")),
    RowSpec("12", ("E",), ("{1,2}", "+-{0,1}", "{0}", "{}", "{0}", "Z\\+-E")),
    RowSpec("13", ("u", "m", "D"), ("N", "Z", "umZ", "mZ", "mZ", "Z\\(+-D+mZ)")),
    RowSpec("14", ("E",), ("N", "Z", "{0}", "{0}", "{0}", "Z\\+-E")),
    RowSpec("Vg", ("g",), ("N", "gZ", "Z", "Z", "Z", "Z")),
)

CATALOG_BY_ID = {spec.row_id: spec for spec in CATALOG}


def _check_u(u) -> int:
    if not isinstance(u, int) or u < 0:
        raise InvalidParams("u must be an integer >= 0")
    return u


def _check_m(m) -> int:
    if not isinstance(m, int) or m < 1:
        raise InvalidParams("m must be an integer >= 1")
    return m


def _check_D(D, m: int) -> frozenset[int]:
    values = frozenset(D if D is not None else ())
    allowed = set(range(m // 2 + 1))
    if not values <= allowed:
        raise InvalidParams(f"D must be a subset of {{0,...,{m // 2}}}")
    return values


def _check_E(E) -> frozenset[int]:
    values = frozenset(E if E is not None else ())
    if any(not isinstance(e, int) or e < 0 for e in values):
        raise InvalidParams("E must be a finite set of nonnegative integers")
    return values


def _check_N(N) -> tuple[int, ...]:
    gens = tuple(sorted(set(N if N is not None else ())))
    if not gens or any(not isinstance(g, int) or g < 1 for g in gens):
        raise InvalidParams("N needs at least one positive generator")
    return gens


def _check_g(g) -> int:
    if not isinstance(g, int) or g < 0:
        raise InvalidParams("g must be an integer >= 0")
    return g


def realize_row(
    row_id: str | int,
    u: Optional[int] = None,
    m: Optional[int] = None,
    D: Optional[Iterable[int]] = None,
    E: Optional[Iterable[int]] = None,
    N: Optional[Iterable[int]] = None,
    g: Optional[int] = None,
) -> QCatalogEntry:
    """Instantiate a catalog row; rejects parameters outside the row's range.

    Parameters not taken by the row must stay unset.
    """
    row = str(row_id)
    if row not in CATALOG_BY_ID:
        raise InvalidParams(f"unknown catalog row {row!r}")
    spec = CATALOG_BY_ID[row]
    given = {"u": u, "m": m, "D": D, "E": E, "N": N, "g": g}
    for name, value in given.items():
        if value is not None and name not in spec.param_names:
            raise InvalidParams(f"row {row} takes no parameter {name}")
    for name in spec.param_names:
        if given[name] is None:
            raise InvalidParams(f"row {row} needs parameter {name}")

    params: list[tuple[str, object]] = []

    def record(name: str, value: object) -> None:
        params.append((name, value))

    f2 = finite([2])
    f12 = finite([1, 2])
    v02 = symmetric_finite([0, 2])
    v012 = symmetric_finite([0, 1, 2])
    v01 = symmetric_finite([0, 1])

    if row in ("1", "2", "3"):
        uu, mm = _check_u(u), _check_m(m)
        record("u", uu)
        record("m", mm)
        s = multiples(2 * uu * mm)
        if row == "1":
            tup = ParameterTuple(f2, v02, s, multiples(mm), multiples(mm), ALL)
        elif row == "2":
            tup = ParameterTuple(
                f2, v02, s, odd_multiples(mm), multiples(2 * mm), ALL
            )
        else:
            tup = ParameterTuple(
                f2,
                v02,
                s,
                odd_multiples(mm),
                multiples(2 * mm),
                Complement(multiples(mm)),
            )
    elif row == "4":
        mm = _check_m(m)
        record("m", mm)
        tup = ParameterTuple(f2, ZERO, ZERO, NONE, multiples(mm), ALL)
    elif row in ("5", "6", "7"):
        gens = _check_N(N)
        record("N", gens)
        hull = SymmetricHull(SemigroupHull(gens))
        if row == "7":
            x = Complement(UnionSet((ZERO, hull)))
        else:
            x = Complement(hull)
        if row == "5":
            tup = ParameterTuple(f2, v02, ZERO, ZERO, ZERO, x)
        else:
            tup = ParameterTuple(f2, ZERO, ZERO, NONE, ZERO, x)
    elif row in ("8", "9", "10"):
        uu, mm = _check_u(u), _check_m(m)
        DD = _check_D(D, mm)
        record("u", uu)
        record("m", mm)
        record("D", tuple(sorted(DD)))
        x = Complement(ModShiftHull(DD, mm))
        if row == "8":
            tup = ParameterTuple(
                f12, v012, multiples(uu * mm), multiples(mm), multiples(mm), x
            )
        elif row == "9":
            tup = ParameterTuple(
                f12,
                v012,
                multiples(2 * uu * mm),
                odd_multiples(mm),
                multiples(2 * mm),
                x,
            )
        else:
            tup = ParameterTuple(
                f12, v01, multiples(uu * mm), NONE, multiples(mm), x
            )
    elif row in ("11", "12"):
        EE = _check_E(E)
        record("E", tuple(sorted(EE)))
        x = Complement(symmetric_finite(EE))
        if row == "11":
            tup = ParameterTuple(f12, v012, ZERO, ZERO, ZERO, x)
        else:
            tup = ParameterTuple(f12, v01, ZERO, NONE, ZERO, x)
    elif row == "13":
        uu, mm = _check_u(u), _check_m(m)
        DD = _check_D(D, mm)
        record("u", uu)
        record("m", mm)
        record("D", tuple(sorted(DD)))
        tup = ParameterTuple(
            NATURALS,
            ALL,
            multiples(uu * mm),
            multiples(mm),
            multiples(mm),
            Complement(ModShiftHull(DD, mm)),
        )
    elif row == "14":
        EE = _check_E(E)
        record("E", tuple(sorted(EE)))
        tup = ParameterTuple(
            NATURALS, ALL, ZERO, ZERO, ZERO, Complement(symmetric_finite(EE))
        )
    else:  # row Vg
        gg = _check_g(g)
        record("g", gg)
        tup = block_sums_tuple(gg)

    return QCatalogEntry(row, tuple(params), tup)


def row_meet_factors(entry: QCatalogEntry) -> list[ParameterTuple]:
    """The simple closed tuples whose meet reproduces the catalog row."""
    params = dict(entry.params)
    row = entry.row_id
    if row == "1":
        u, m = params["u"], params["m"]
        return [
            pair_blocks_tuple(),
            total_sum_tuple(2 * u * m),
            same_block_gap_tuple(m),
        ]
    if row == "2":
        u, m = params["u"], params["m"]
        return [
            pair_blocks_tuple(),
            total_sum_tuple(2 * u * m),
            staggered_gap_tuple(m),
        ]
    if row == "3":
        u, m = params["u"], params["m"]
        return [
            pair_blocks_tuple(),
            total_sum_tuple(2 * u * m),
            staggered_gap_tuple(m),
            crossing_excluded_tuple(m, multiples(m)),
        ]
    if row == "4":
        return [neutral_pairs_tuple(), same_block_gap_tuple(params["m"])]
    if row in ("5", "6", "7"):
        hull = SymmetricHull(SemigroupHull(params["N"]))
        excluded: IntegerSet = hull
        if row == "7":
            excluded = UnionSet((ZERO, hull))
        first = pair_blocks_tuple() if row == "5" else neutral_pairs_tuple()
        return [first, crossing_excluded_tuple(0, excluded)]
    if row in ("8", "9", "10", "13"):
        u, m = params["u"], params["m"]
        hull = ModShiftHull(frozenset(params["D"]), m)
        factors = {
            "8": [small_blocks_tuple(), total_sum_tuple(u * m)],
            "9": [total_sum_tuple(2 * u * m), staggered_gap_tuple(m)],
            "10": [neutral_small_blocks_tuple(), total_sum_tuple(u * m)],
            "13": [total_sum_tuple(u * m)],
        }[row]
        return factors + [crossing_excluded_tuple(m, hull)]
    if row in ("11", "12", "14"):
        excluded = symmetric_finite(params["E"])
        lead = {
            "11": [small_blocks_tuple()],
            "12": [neutral_small_blocks_tuple()],
            "14": [],
        }[row]
        return lead + [crossing_excluded_tuple(0, excluded)]
    if row == "Vg":
        return [block_sums_tuple(params["g"])]
    raise InvalidParams(f"no meet decomposition for row {row}")


# -- hyperoctahedral case analysis -------------------------------------------

SINGLETONS_PROBE = parse("up=; lo=wb; blocks=(L1)(L2)")
FOUR_BLOCK_PROBE = parse("up=; lo=wbwb; blocks=(L1 L2 L3 L4)")


def nho_case(bound: ParameterTuple) -> str:
    """Case letter O, B, S or H from the two probe memberships.

    The probes are the two-singleton partition and the one-block partition
    on four alternating lower points; a set is non-hyperoctahedral when it
    contains the former or misses the latter.
    """
    singles = in_R(SINGLETONS_PROBE, bound)
    four = in_R(FOUR_BLOCK_PROBE, bound)
    if singles:
        return "S" if four else "B"
    return "H" if four else "O"


def is_non_hyperoctahedral(bound: ParameterTuple) -> bool:
    return nho_case(bound) != "H"
