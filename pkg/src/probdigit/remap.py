"""Rebasing one digit expansion into another through a digit bijection.

A `DigitRemap` couples a source weight family, a target family and a digit
bijection.  It sends the point with source digits (n_1, n_2, ...) to the
target-expansion value of the rewritten digits (phi(n_1), phi(n_2), ...).
The map is bijective on [0,1), generally wildly non-monotonic, and satisfies
the one-step identity

    f(x) = target.prefix(phi(n_1)) + target.p(phi(n_1)) * f(shifted x)

which this module exposes as an exactly-checkable residual.  Its Lebesgue
integral over [0,1) has the closed form

    sum_j prefix_target(phi(j)) p_j   /   (1 - sum_j p_target(phi(j)) p_j)

computed here both exactly (splitting each series into a finite head plus
eventually geometric residue classes) and as rigorous finite brackets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .bijections import DigitBijection, TablePermutation, verify_bijection
from .core import (
    ONE,
    ZERO,
    DigitSeq,
    Evaluation,
    ProbVector,
    Rational,
    as_fraction,
    decode,
    evaluate,
)
from .errors import DomainError, TruncationError


@dataclass(frozen=True)
class DigitRemap:
    """source digits -> digit_map -> target digits, evaluated exactly."""

    source: ProbVector
    target: ProbVector
    digit_map: DigitBijection

    def __post_init__(self) -> None:
        if isinstance(self.digit_map, TablePermutation):
            verify_bijection(self.digit_map, len(self.digit_map.table))

    @property
    def is_identity(self) -> bool:
        return self.digit_map.is_identity() and self.source == self.target

    def image_digits(self, seq: DigitSeq) -> DigitSeq:
        """Rewrite every digit, tail included; an all-ones tail becomes the
        constant phi(1) tail on the image side."""
        return seq.mapped(self.digit_map.apply)

    def preimage_digits(self, seq: DigitSeq) -> DigitSeq:
        return seq.mapped(self.digit_map.inverse)

    def point_value(self, seq: DigitSeq) -> Fraction:
        """Exact image of the exact point named by `seq` (digits plus tail)."""
        return evaluate(self.target, self.image_digits(seq)).value

    def apply(self, x: Rational, depth: int = 32) -> Evaluation:
        """Image of x, reading `depth` source digits.

        The constant tail beyond the read digits is summed in closed form, so
        the result is exact whenever x's expansion is all ones past `depth`.
        The error bound is the width of the image cylinder, which contains
        both this value and the true image.  When the remap is the identity
        function the value is returned exactly at any depth.
        """
        x = as_fraction(x)
        if not (ZERO <= x < ONE):
            raise DomainError(f"x must lie in [0, 1), got {x}")
        if self.is_identity:
            return Evaluation(x, ZERO)
        image = self.image_digits(decode(self.source, x, depth))
        return evaluate(self.target, image)

    def apply_inverse(self, y: Rational, depth: int = 32) -> Evaluation:
        """Preimage of y, reading `depth` target digits.

        Returns the left endpoint of the preimage cylinder (the rewritten
        digits with the canonical all-ones continuation); the true preimage
        lies within error_bound above it.  Applying the remap to the result
        reproduces y's first `depth` digits exactly.
        """
        y = as_fraction(y)
        if not (ZERO <= y < ONE):
            raise DomainError(f"y must lie in [0, 1), got {y}")
        if self.is_identity:
            return Evaluation(y, ZERO)
        image = decode(self.target, y, depth)
        preimage = DigitSeq(tuple(self.digit_map.inverse(m) for m in image))
        return evaluate(self.source, preimage)

    def inverted(self) -> "DigitRemap":
        return DigitRemap(self.target, self.source, self.digit_map.inverted())

    def residual(self, seq: DigitSeq, k: int) -> Fraction:
        """Defect of the one-step self-similarity at digit position k.

        For the exact point named by `seq`, compares the image of the
        (k-1)-shifted point against prefix + mass * image of the k-shifted
        point, both on the target side.  Exact arithmetic makes this 0 for a
        correct implementation, at every k.
        """
        if not 1 <= k <= len(seq):
            raise ValueError(f"k must lie in 1..{len(seq)}, got {k}")
        m = self.digit_map.apply(seq[k - 1])
        lhs = self.point_value(seq.drop(k - 1))
        rhs = self.target.prefix(m) + self.target.p(m) * self.point_value(seq.drop(k))
        return abs(lhs - rhs)


class ClosedFormIntegral(NamedTuple):
    """Value plus a one-sided slack: the true integral lies in
    [value, value + tail_bound].  Exact summation reports tail_bound == 0."""

    value: Fraction
    tail_bound: Fraction

    @property
    def lo(self) -> Fraction:
        return self.value

    @property
    def hi(self) -> Fraction:
        return self.value + self.tail_bound


class IntegralBracket(NamedTuple):
    """Rigorous two-sided enclosure of the integral."""

    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x <= self.upper


def _series_sums_exact(remap: DigitRemap) -> tuple[Fraction, Fraction]:
    """Exact (sum prefix_target(phi(j)) p_j, sum p_target(phi(j)) p_j).

    Past a common start index, p_j, the target masses and the digit map are
    all in closed form, so each residue class of the map's eventual period
    contributes plain geometric series; everything before that start is summed
    term by term.
    """
    src, tgt, phi = remap.source, remap.target, remap.digit_map
    sv = src.value_form()
    tv = tgt.value_form()
    tp = tgt.prefix_form()
    ev = phi.eventual_structure()
    reach = max(abs(c) for c in ev.offsets)
    start = max(sv.start, ev.start, tv.start + reach, tp.start + reach)
    s_pref = ZERO
    s_mass = ZERO
    for j in range(1, start):
        m = phi.apply(j)
        pj = src.p(j)
        s_pref += tgt.prefix(m) * pj
        s_mass += tgt.p(m) * pj
    period = ev.period
    z = sv.ratio * tv.ratio
    z_step = ONE - z**period
    q_step = ONE - sv.ratio**period
    for r in range(period):
        j0 = start + ((r - start) % period)
        off = ev.offsets[j0 % period]
        geo_z = z**j0 / z_step
        geo_q = sv.ratio**j0 / q_step
        s_mass += tv.coeff * sv.coeff * tv.ratio**off * geo_z
        s_pref += sv.coeff * geo_q - tp.coeff * sv.coeff * tv.ratio**off * geo_z
    return s_pref, s_mass


def _terms_for_tolerance(src: ProbVector, tol: Fraction) -> int:
    n = 1
    while src.tail_mass(n + 1) > tol:
        n *= 2
    lo, hi = max(1, n // 2), n
    while lo < hi:
        mid = (lo + hi) // 2
        if src.tail_mass(mid + 1) > tol:
            lo = mid + 1
        else:
            hi = mid
    return lo


def closed_form_integral(
    remap: DigitRemap,
    terms: int | None = None,
    tol: Fraction = Fraction(1, 10**12),
    exact: bool = True,
) -> ClosedFormIntegral:
    """Integral of the remapped function over [0,1) from the series formula.

    With `terms` unset and `exact` left on, both series are summed in closed
    form and the result is the exact rational value.  Otherwise the series
    are truncated after `terms` entries (or enough entries to push the source
    tail mass below `tol`) and the leftover mass bounds the result from
    above: both omitted tails are sums of target quantities below 1 weighted
    by the remaining source mass.
    """
    if terms is None and exact:
        s_pref, s_mass = _series_sums_exact(remap)
        return ClosedFormIntegral(s_pref / (ONE - s_mass), ZERO)
    n = terms if terms is not None else _terms_for_tolerance(remap.source, tol)
    if n < 1:
        raise ValueError("terms must be at least 1")
    src, tgt, phi = remap.source, remap.target, remap.digit_map
    s_pref = ZERO
    s_mass = ZERO
    for j in range(1, n + 1):
        m = phi.apply(j)
        pj = src.p(j)
        s_pref += tgt.prefix(m) * pj
        s_mass += tgt.p(m) * pj
    slack = src.tail_mass(n + 1)
    denom_hi = ONE - s_mass
    denom_lo = denom_hi - slack
    if denom_lo <= 0:
        raise TruncationError(
            f"denominator enclosure [{denom_lo}, {denom_hi}] touches 0 at {n} terms"
        )
    lo = s_pref / denom_hi
    hi = (s_pref + slack) / denom_lo
    return ClosedFormIntegral(lo, hi - lo)


def integral_bracket(
    remap: DigitRemap, depth: int, digit_cap: int = 64
) -> IntegralBracket:
    """Rigorous lower/upper bounds from the depth-`depth` cylinder partition.

    [0,1) splits into all cylinders of the given depth whose digits stay at
    or below `digit_cap`, plus a remainder band at each node for the larger
    digits.  On a covered cylinder the function is pinned inside its image
    cylinder; on a band it is pinned inside the surrounding node's image
    cylinder.  Self-similarity collapses the sum over that tree into a
    per-level recursion, so the cost is linear in depth instead of
    exponential; tests replay the explicit enumeration to confirm equality.
    Both endpoints are exact rationals, the true integral always lies
    between them, and the bracket tightens strictly as depth grows.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if digit_cap < 1:
        raise ValueError("digit_cap must be at least 1")
    src, tgt, phi = remap.source, remap.target, remap.digit_map
    covered = src.prefix(digit_cap + 1)
    mass_sum = ZERO
    pref_sum = ZERO
    for n in range(1, digit_cap + 1):
        m = phi.apply(n)
        pn = src.p(n)
        mass_sum += pn * tgt.p(m)
        pref_sum += pn * tgt.prefix(m)
    lower, upper = ZERO, ONE
    band = ONE - covered
    for _ in range(depth):
        lower = pref_sum + mass_sum * lower
        upper = pref_sum + mass_sum * upper + band
    return IntegralBracket(lower, upper)


@dataclass(frozen=True)
class OrderWitnesses:
    """One order-preserving and one order-reversing pair of (x, image) points,
    if the bounded search found them."""

    increasing: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None
    decreasing: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] | None


def monotonicity_witnesses(
    remap: DigitRemap, digit_bound: int = 4, prefix_len: int = 2
) -> OrderWitnesses:
    """Search short digit prefixes for evidence that the remap is not monotone.

    Evaluates the exact image of every prefix point with digits up to
    `digit_bound`, then looks for a pair that rises and a pair that falls.
    Any non-identity digit map at desk scale yields both within two-digit
    prefixes.
    """
    points = []
    for digits in itertools.product(range(1, digit_bound + 1), repeat=prefix_len):
        seq = DigitSeq(digits)
        x = evaluate(remap.source, seq).value
        points.append((x, remap.point_value(seq)))
    points.sort()
    increasing = decreasing = None
    for a, b in itertools.combinations(points, 2):
        if a[1] < b[1]:
            increasing = increasing or (a, b)
        elif a[1] > b[1]:
            decreasing = decreasing or (a, b)
        if increasing and decreasing:
            break
    return OrderWitnesses(increasing, decreasing)
