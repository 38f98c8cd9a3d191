"""Bijections of the positive integers used to rewrite expansion digits.

Only declaratively serializable kinds are supported: the identity, the
odd/even pair swap (1<->2, 3<->4, ...), and a finite permutation table that
acts as the identity beyond its length.  A finite description guarantees that
bijectivity is checkable and that configs can be stored as plain text.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import NotBijective


class EventualShift(NamedTuple):
    """From `start` on, the map acts as n -> n + offsets[n % period]."""

    start: int
    period: int
    offsets: tuple[int, ...]


class DigitBijection:
    def apply(self, n: int) -> int:
        raise NotImplementedError

    def inverse(self, m: int) -> int:
        raise NotImplementedError

    def inverted(self) -> "DigitBijection":
        raise NotImplementedError

    def is_identity(self) -> bool:
        return False

    def eventual_structure(self) -> EventualShift:
        raise NotImplementedError


def _check_positive(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"digit maps act on positive integers, got {n!r}")
    return n


@dataclass(frozen=True)
class Identity(DigitBijection):
    def apply(self, n: int) -> int:
        return _check_positive(n)

    def inverse(self, m: int) -> int:
        return _check_positive(m)

    def inverted(self) -> "Identity":
        return self

    def is_identity(self) -> bool:
        return True

    def eventual_structure(self) -> EventualShift:
        return EventualShift(1, 1, (0,))


@dataclass(frozen=True)
class PairSwap(DigitBijection):
    """Swap each odd digit with its even successor: 1<->2, 3<->4, ...

    Its own inverse, and the smallest digit map that makes the rebased
    function genuinely non-monotonic.
    """

    def apply(self, n: int) -> int:
        _check_positive(n)
        return n + 1 if n % 2 == 1 else n - 1

    def inverse(self, m: int) -> int:
        return self.apply(m)

    def inverted(self) -> "PairSwap":
        return self

    def eventual_structure(self) -> EventualShift:
        return EventualShift(1, 2, (-1, 1))


@dataclass(frozen=True)
class TablePermutation(DigitBijection):
    """Explicit values for digits 1..M, identity beyond.

    Construction only checks syntax (positive integers); whether the table is
    actually a permutation of 1..M is the job of `verify_bijection`, which is
    run when the table is wired into a remap.
    """

    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if not self.table:
            raise ValueError("permutation table must not be empty")
        for v in self.table:
            _check_positive(v)

    def apply(self, n: int) -> int:
        _check_positive(n)
        return self.table[n - 1] if n <= len(self.table) else n

    @cached_property
    def _inverse_table(self) -> dict[int, int]:
        return {v: i + 1 for i, v in enumerate(self.table)}

    def inverse(self, m: int) -> int:
        _check_positive(m)
        if m in self._inverse_table:
            return self._inverse_table[m]
        if m <= len(self.table):
            raise NotBijective(f"value {m} is never produced by table {list(self.table)}")
        return m

    def inverted(self) -> "TablePermutation":
        inv = [0] * len(self.table)
        for i, v in enumerate(self.table):
            if v > len(self.table) or inv[v - 1]:
                raise NotBijective(
                    f"table {list(self.table)} is not a permutation of 1..{len(self.table)}"
                )
            inv[v - 1] = i + 1
        return TablePermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.table))

    def eventual_structure(self) -> EventualShift:
        return EventualShift(len(self.table) + 1, 1, (0,))


@dataclass(frozen=True)
class BijectionReport:
    kind: str
    checked_upper: int


def verify_bijection(phi: DigitBijection, upper: int) -> BijectionReport:
    """Confirm that the map is injective on 1..upper (and, for tables, that
    the listed values are exactly a permutation of 1..M).

    Raises NotBijective at the first collision found; otherwise returns a
    small report of what was checked.
    """
    if upper < 1:
        raise ValueError("range bound must be at least 1")
    if isinstance(phi, TablePermutation):
        m = len(phi.table)
        if sorted(phi.table) != list(range(1, m + 1)):
            seen: dict[int, int] = {}
            for i, v in enumerate(phi.table, start=1):
                if v in seen:
                    raise NotBijective(
                        f"collision at {v}: inputs {seen[v]} and {i} both map to it"
                    )
                seen[v] = i
            raise NotBijective(
                f"table image {sorted(set(phi.table))} is not a permutation of 1..{m}"
            )
    seen_at = bytearray(upper + 2)
    for n in range(1, upper + 1):
        v = phi.apply(n)
        if v >= len(seen_at):
            seen_at.extend(bytes(v + 1 - len(seen_at)))
        if seen_at[v]:
            earlier = next(i for i in range(1, n) if phi.apply(i) == v)
            raise NotBijective(
                f"collision at {v}: inputs {earlier} and {n} both map to it"
            )
        seen_at[v] = 1
    return BijectionReport(type(phi).__name__, upper)
