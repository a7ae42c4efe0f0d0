"""Foundational exact types: rationals, determinantal pairs, extended partitions, mld values.

All values are immutable and hashable, so they are safe to share freely.
Rational numbers are ``fractions.Fraction`` throughout (always in canonical
form: positive denominator, reduced).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Iterator, Union


class PreconditionError(ValueError):
    """An argument violates a documented precondition of the operation."""


class _Infinity:
    """Formal infinity: larger than every integer, absorbing under + and *.

    A distinct singleton rather than a sentinel integer, so that ordering
    and arithmetic against ordinary ints are total and explicit.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash(("detmld", "INF"))

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if other is self:
            return self
        if isinstance(other, int):
            if other <= 0:
                raise ArithmeticError(f"{other} * INF is undefined here")
            return self
        return NotImplemented

    __rmul__ = __mul__


INF = _Infinity()

Entry = Union[int, _Infinity]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    """Serialize a Fraction as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(x)


def _as_entry(value) -> Entry:
    if value is INF:
        return INF
    if isinstance(value, str):
        if value.strip().lower() == "inf":
            return INF
        value = int(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise PreconditionError(f"partition entries must be naturals or INF, got {value!r}")
    if value < 0:
        raise PreconditionError(f"partition entries must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class ExtendedPartition:
    """A nonincreasing tuple over the naturals extended by INF.

    Indexes an orbit of arcs: the orbit of the diagonal matrix with entries
    t**entries[0], ..., t**entries[m-1].
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple(_as_entry(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        for a, b in zip(entries, entries[1:]):
            if not a >= b:
                raise PreconditionError(f"entries must be nonincreasing: {entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def finite_entries(self) -> tuple:
        return tuple(e for e in self.entries if e is not INF)

    def to_json(self) -> list:
        return ["inf" if e is INF else e for e in self.entries]

    @classmethod
    def from_json(cls, data: Iterable) -> "ExtendedPartition":
        return cls(tuple(data))


def new_partition(entries: Iterable) -> ExtendedPartition:
    """Validating constructor; rejects any left-to-right increase."""
    return ExtendedPartition(tuple(entries))


@dataclass(frozen=True)
class DeterminantalPair:
    """The data (m, k, alphas) of a pair: the rank <= k locus of m x m matrices,
    weighted by the formal sum of its rank <= k-i subloci with coefficients alphas[i-1].

    Coefficients are exact rationals; every criterion downstream is a finite
    linear inequality in them, so rationals keep all tests exact.
    """

    m: int
    k: int
    alphas: tuple

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise PreconditionError(f"matrix size m must be a positive integer, got {self.m}")
        if not isinstance(self.k, int) or self.k < 1:
            raise PreconditionError(f"rank bound k must be >= 1, got {self.k}")
        if self.k > self.m:
            raise PreconditionError(f"rank bound k={self.k} exceeds matrix size m={self.m}")
        alphas = tuple(Fraction(a) for a in self.alphas)
        if len(alphas) != self.k:
            raise PreconditionError(
                f"need exactly k={self.k} coefficients, got {len(alphas)}"
            )
        object.__setattr__(self, "alphas", alphas)

    def alpha_prefix(self, j: int) -> Fraction:
        """Sum of the first j coefficients."""
        return sum(self.alphas[:j], Fraction(0))


def new_pair(m: int, k: int, alphas: Iterable = ()) -> DeterminantalPair:
    """Build a pair; coefficient lists shorter than k are right-padded with zeros."""
    alphas = tuple(Fraction(a) for a in alphas)
    if not isinstance(k, int) or not isinstance(m, int):
        raise PreconditionError("m and k must be integers")
    if k < 1 or k > m:
        raise PreconditionError(f"need 1 <= k <= m, got k={k}, m={m}")
    if len(alphas) > k:
        raise PreconditionError(f"at most k={k} coefficients allowed, got {len(alphas)}")
    return DeterminantalPair(m, k, alphas + (Fraction(0),) * (k - len(alphas)))


@total_ordering
class MldValue:
    """An exact rational value or negative infinity.

    NEG_INFINITY compares strictly below every finite value.
    """

    __slots__ = ("_value",)

    NEG_INFINITY: "MldValue"

    def __init__(self, value):
        if value is not None:
            value = Fraction(value)
        self._value = value

    @classmethod
    def finite(cls, value) -> "MldValue":
        if value is None:
            raise PreconditionError("finite mld value cannot be None")
        return cls(value)

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise PreconditionError("negative infinity has no finite value")
        return self._value

    def __eq__(self, other) -> bool:
        if not isinstance(other, MldValue):
            return NotImplemented
        return self._value == other._value

    def __hash__(self) -> int:
        return hash(("MldValue", self._value))

    def __lt__(self, other) -> bool:
        if not isinstance(other, MldValue):
            return NotImplemented
        if self._value is None:
            return other._value is not None
        if other._value is None:
            return False
        return self._value < other._value

    def __repr__(self) -> str:
        return f"MldValue({self})"

    def __str__(self) -> str:
        return "-inf" if self._value is None else format_rational(self._value)

    def to_json(self) -> str:
        return str(self)


MldValue.NEG_INFINITY = MldValue(None)
