"""Exact digit expansions of [0,1) driven by a probability distribution on 1, 2, 3, ...

A weight family (p_1, p_2, ...) with every p_j strictly inside (0,1) and total
mass 1 turns a sequence of positive-integer digits (n_1, n_2, ...) into a
point of [0,1): the first digit selects the interval
[prefix(n_1), prefix(n_1 + 1)), the next digit subdivides that interval in the
same proportions, and so on.  The value of a digit string is

    prefix(n_1) + sum over j of prefix(n_{j+1}) * p_{n_1} * ... * p_{n_j}

and a finite string stands for itself followed by its constant tail digit
(1 by default, which contributes nothing because prefix(1) == 0).

Everything here runs on `fractions.Fraction`.  Floats are rejected at the
boundary so that round-trips, orderings and widths are identities rather than
approximations; the float fast path lives in `probdigit.numeric` and is never
consulted by the exact operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import DomainError, InvalidDistribution

Rational = int | str | Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value: Rational) -> Fraction:
    """Convert to Fraction, rejecting floats.

    Binary floats smuggle rounding error into the exact path; callers that
    really mean a decimal should pass the decimal as a string, which converts
    exactly ("0.3" -> 3/10).
    """
    if isinstance(value, float):
        raise TypeError(
            "floats are not accepted on the exact path; pass a Fraction, int or string"
        )
    return Fraction(value)


class GeometricForm(NamedTuple):
    """Closed form valid from `start` on: value form p_j = coeff * ratio**j,
    prefix form prefix(n) = 1 - coeff * ratio**n."""

    start: int
    coeff: Fraction
    ratio: Fraction


class ProbVector:
    """Base class for closed-form weight families on the positive integers.

    Subclasses provide exact per-digit mass ``p(j)``, the prefix sum
    ``prefix(n)`` (mass strictly below digit ``n``, so ``prefix(1) == 0``),
    the complementary ``tail_mass(n)``, and the eventually geometric forms
    that power exact series summation.  Instances are immutable and compare
    equal when they assign the same mass to every digit, regardless of how
    they were described.
    """

    def p(self, j: int) -> Fraction:
        raise NotImplementedError

    def prefix(self, n: int) -> Fraction:
        raise NotImplementedError

    def tail_mass(self, n: int) -> Fraction:
        """Mass carried by digits >= n, computed from the family's own closed
        form rather than as 1 - prefix(n)."""
        raise NotImplementedError

    def value_form(self) -> GeometricForm:
        raise NotImplementedError

    def prefix_form(self) -> GeometricForm:
        raise NotImplementedError

    def digit_guess(self, x: Fraction) -> int | None:
        """Optional float-assisted starting point for the digit search.

        Purely a hint: `digit_of` verifies every candidate with exact
        comparisons, so a wrong or missing guess costs time, never
        correctness.
        """
        return None

    def digit_of(self, x: Fraction) -> int:
        """The unique digit n with prefix(n) <= x < prefix(n+1)."""
        if not (ZERO <= x < ONE):
            raise DomainError(f"x must lie in [0, 1), got {x}")
        hi = self.digit_guess(x) or 1
        if hi < 1:
            hi = 1
        while self.prefix(hi + 1) <= x:
            hi *= 2
        lo = 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.prefix(mid) <= x:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def _canonical_key(self):
        start, coeff, ratio = self.value_form()
        head = [self.p(j) for j in range(1, start)]
        while head and head[-1] == coeff * ratio ** len(head):
            head.pop()
        return (tuple(head), coeff, ratio)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProbVector):
            return NotImplemented
        return self._canonical_key() == other._canonical_key()

    def __hash__(self) -> int:
        return hash(self._canonical_key())


def _check_digit(j: int) -> int:
    if not isinstance(j, int) or isinstance(j, bool) or j < 1:
        raise ValueError(f"digits are positive integers, got {j!r}")
    return j


@dataclass(frozen=True, eq=False)
class Geometric(ProbVector):
    """Weights p_j = (1 - q) * q**(j-1); one ratio controls the whole family.

    prefix(n) = 1 - q**(n-1) in closed form, so arbitrarily deep expansions
    stay exact.
    """

    q: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", as_fraction(self.q))
        if not (ZERO < self.q < ONE):
            raise InvalidDistribution(
                f"geometric ratio must lie strictly inside (0, 1), got {self.q}"
            )

    def p(self, j: int) -> Fraction:
        _check_digit(j)
        return (ONE - self.q) * self.q ** (j - 1)

    def prefix(self, n: int) -> Fraction:
        _check_digit(n)
        return ONE - self.q ** (n - 1)

    def tail_mass(self, n: int) -> Fraction:
        _check_digit(n)
        return self.q ** (n - 1)

    def value_form(self) -> GeometricForm:
        return GeometricForm(1, (ONE - self.q) / self.q, self.q)

    def prefix_form(self) -> GeometricForm:
        return GeometricForm(1, ONE / self.q, self.q)

    def digit_guess(self, x: Fraction) -> int | None:
        try:
            rem = float(ONE - x)
        except OverflowError:
            return None
        if rem <= 0.0:
            return None
        n = math.floor(math.log(rem) / math.log(float(self.q))) + 1
        return n if 1 <= n < 10**9 else None


@dataclass(frozen=True, eq=False)
class MixedHeadTail(ProbVector):
    """Explicit masses for the first digits, geometric split of the leftover.

    `head` lists p_1 .. p_m directly; the remaining mass 1 - sum(head) is
    spread over digits m+1, m+2, ... in proportions (1-tail_q), (1-tail_q)*tail_q, ...
    This is the escape hatch for user-specified tables while keeping every
    prefix sum an exact rational.
    """

    head: tuple[Fraction, ...]
    tail_q: Fraction

    def __post_init__(self) -> None:
        head = tuple(as_fraction(h) for h in self.head)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "tail_q", as_fraction(self.tail_q))
        for h in head:
            if not (ZERO < h < ONE):
                raise InvalidDistribution(
                    f"head masses must lie strictly inside (0, 1), got {h}"
                )
        if sum(head, ZERO) >= ONE:
            raise InvalidDistribution(
                f"head masses must sum below 1, got {sum(head, ZERO)}"
            )
        if not (ZERO < self.tail_q < ONE):
            raise InvalidDistribution(
                f"tail ratio must lie strictly inside (0, 1), got {self.tail_q}"
            )
        cum = [ZERO]
        for h in head:
            cum.append(cum[-1] + h)
        object.__setattr__(self, "_cum", tuple(cum))
        object.__setattr__(self, "_leftover", ONE - cum[-1])

    def p(self, j: int) -> Fraction:
        _check_digit(j)
        m = len(self.head)
        if j <= m:
            return self.head[j - 1]
        return self._leftover * (ONE - self.tail_q) * self.tail_q ** (j - m - 1)

    def prefix(self, n: int) -> Fraction:
        _check_digit(n)
        m = len(self.head)
        if n <= m + 1:
            return self._cum[n - 1]
        return ONE - self._leftover * self.tail_q ** (n - m - 1)

    def tail_mass(self, n: int) -> Fraction:
        _check_digit(n)
        m = len(self.head)
        if n <= m + 1:
            return sum(self.head[n - 1 :], ZERO) + self._leftover
        return self._leftover * self.tail_q ** (n - m - 1)

    def value_form(self) -> GeometricForm:
        m = len(self.head)
        coeff = self._leftover * (ONE - self.tail_q) / self.tail_q ** (m + 1)
        return GeometricForm(m + 1, coeff, self.tail_q)

    def prefix_form(self) -> GeometricForm:
        m = len(self.head)
        return GeometricForm(m + 1, self._leftover / self.tail_q ** (m + 1), self.tail_q)


@dataclass(frozen=True)
class DigitSeq:
    """A digit string (n_1, ..., n_K) plus the constant digit repeated ever after.

    tail=1 is the canonical truncation: the all-ones continuation adds nothing
    to the value because prefix(1) == 0, so the empty sequence denotes 0.  A
    non-one tail shows up when a digit map sends 1 elsewhere; it pins the
    sequence to an exact point of the target expansion.
    """

    digits: tuple[int, ...] = ()
    tail: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            _check_digit(d)
        _check_digit(self.tail)

    @classmethod
    def of(cls, *digits: int, tail: int = 1) -> "DigitSeq":
        return cls(tuple(digits), tail)

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __getitem__(self, i: int) -> int:
        return self.digits[i]

    def digit_at(self, i: int) -> int:
        """Digit at 0-based position i of the full infinite string."""
        return self.digits[i] if i < len(self.digits) else self.tail

    def drop(self, count: int) -> "DigitSeq":
        """Remove the first `count` digits; past the end, only the tail is left."""
        if count < 0:
            raise ValueError("count must be non-negative")
        return DigitSeq(self.digits[count:], self.tail)

    def mapped(self, fn) -> "DigitSeq":
        """Apply fn to every digit, including the constant tail digit."""
        return DigitSeq(tuple(fn(d) for d in self.digits), fn(self.tail))

    def bump_last(self) -> "DigitSeq":
        if not self.digits:
            raise ValueError("cannot bump the last digit of an empty sequence")
        return DigitSeq(self.digits[:-1] + (self.digits[-1] + 1,), self.tail)

    def canonical(self) -> "DigitSeq":
        """Strip trailing digits equal to the tail; same infinite string."""
        digits = list(self.digits)
        while digits and digits[-1] == self.tail:
            digits.pop()
        return DigitSeq(tuple(digits), self.tail)

    def compare(self, other: "DigitSeq") -> int:
        """Lexicographic order of the two infinite strings: -1, 0 or 1."""
        for i in range(max(len(self), len(other)) + 1):
            a, b = self.digit_at(i), other.digit_at(i)
            if a != b:
                return -1 if a < b else 1
        return 0


class Evaluation(NamedTuple):
    """An exact value together with the width of its prefix cylinder.

    `value` is the exact point named by the digits plus constant tail; every
    other continuation of the same prefix lands inside
    [cylinder lo, cylinder lo + error_bound), so error_bound caps the effect
    of digits beyond the prefix.
    """

    value: Fraction
    error_bound: Fraction


@dataclass(frozen=True)
class Cylinder:
    """Half-open interval of all points whose expansion starts with `prefix`."""

    prefix: DigitSeq
    lo: Fraction
    hi: Fraction
    width: Fraction

    def __post_init__(self) -> None:
        if self.hi - self.lo != self.width:
            raise ValueError("cylinder bounds disagree with the digit-mass product")

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x < self.hi


def constant_point(pv: ProbVector, digit: int) -> Fraction:
    """Exact value of the sequence repeating one digit forever.

    Summing the geometric series gives prefix(d) / (1 - p_d); digit 1 yields 0.
    """
    return pv.prefix(digit) / (ONE - pv.p(digit))


def evaluate(pv: ProbVector, seq: DigitSeq) -> Evaluation:
    """Exact value of a digit sequence, plus the width of its prefix cylinder."""
    digits = seq.digits
    if not digits:
        return Evaluation(constant_point(pv, seq.tail), ONE)
    acc = pv.prefix(digits[0])
    prod = ONE
    for j in range(1, len(digits)):
        prod *= pv.p(digits[j - 1])
        acc += pv.prefix(digits[j]) * prod
    prod *= pv.p(digits[-1])
    tail = constant_point(pv, seq.tail)
    if tail:
        acc += prod * tail
    return Evaluation(acc, prod)


def decode(pv: ProbVector, x: Rational, depth: int) -> DigitSeq:
    """First `depth` digits of x's expansion.

    Each step picks the unique digit whose prefix interval contains the
    current point (ties at the left endpoint stay with that digit, matching
    the half-open cylinders) and rescales.  Exact: decode(evaluate(d)) == d.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    x = as_fraction(x)
    if not (ZERO <= x < ONE):
        raise DomainError(f"x must lie in [0, 1), got {x}")
    digits = []
    for _ in range(depth):
        n = pv.digit_of(x)
        digits.append(n)
        x = (x - pv.prefix(n)) / pv.p(n)
    return DigitSeq(tuple(digits))


def shift_value(pv: ProbVector, x: Rational) -> Fraction:
    """Drop the leading digit of x's expansion: (x - prefix(n_1)) / p_{n_1}."""
    x = as_fraction(x)
    if not (ZERO <= x < ONE):
        raise DomainError(f"x must lie in [0, 1), got {x}")
    n = pv.digit_of(x)
    return (x - pv.prefix(n)) / pv.p(n)


def shift_digits(seq: DigitSeq, count: int) -> DigitSeq:
    """Digit-level shift: drop the first `count` digits of the sequence."""
    return seq.drop(count)


def cylinder(pv: ProbVector, prefix: DigitSeq) -> Cylinder:
    """The half-open interval spanned by all continuations of `prefix`.

    The upper endpoint is the value of the prefix with its last digit bumped
    by one; the width is the product of the prefix digit masses, and the two
    agree exactly.
    """
    if not prefix.digits:
        raise ValueError("cylinder needs a nonempty digit prefix")
    base = DigitSeq(prefix.digits)
    lo = evaluate(pv, base).value
    hi = evaluate(pv, base.bump_last()).value
    width = ONE
    for d in base.digits:
        width *= pv.p(d)
    return Cylinder(base, lo, hi, width)
