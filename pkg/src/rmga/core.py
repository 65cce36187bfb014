"""Foundational value types: points, box domains, sign vectors, fitness sense.

Everything here is an immutable value; the only stateful collaborator is a
caller-owned numpy Generator used for capped sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Point = tuple[float, ...]
SignVector = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """A point's length does not match the domain it is used with."""


class DomainViolationError(ValueError):
    """A point lies outside the closed search box."""


class ConfigurationError(ValueError):
    """Invalid tunables or an objective used without its noise source."""


class GridTooLargeError(ValueError):
    """An exhaustive grid would exceed the evaluation budget."""


class Sense(Enum):
    MINIMIZE = "minimize"
    MAXIMIZE = "maximize"


def better(a: float, b: float, sense: Sense = Sense.MINIMIZE) -> bool:
    """True iff fitness value ``a`` is strictly better than ``b`` under ``sense``."""
    return a < b if sense is Sense.MINIMIZE else a > b


@dataclass(frozen=True)
class Fitness:
    value: float
    sense: Sense = Sense.MINIMIZE

    def better_than(self, other: "Fitness") -> bool:
        if self.sense is not other.sense:
            raise ConfigurationError("cannot compare fitness across senses")
        return better(self.value, other.value, self.sense)


def as_point(coords: Iterable[float]) -> Point:
    """Validate and freeze a coordinate sequence (finite entries only)."""
    p = tuple(float(c) for c in coords)
    for c in p:
        if not math.isfinite(c):
            raise ValueError(f"non-finite coordinate {c!r}")
    return p


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned closed box: lower[i] <= x[i] <= upper[i]."""

    lower: Point
    upper: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", as_point(self.lower))
        object.__setattr__(self, "upper", as_point(self.upper))
        if len(self.lower) != len(self.upper) or not self.lower:
            raise DimensionMismatchError("lower/upper must share a positive length")
        for lo, hi in zip(self.lower, self.upper):
            if not lo < hi:
                raise ValueError(f"need lower < upper per axis, got [{lo}, {hi}]")

    @property
    def dimension(self) -> int:
        return len(self.lower)

    @classmethod
    def uniform(cls, lo: float, hi: float, dimension: int) -> "BoxDomain":
        return cls((lo,) * dimension, (hi,) * dimension)


def contains(domain: BoxDomain, p: Sequence[float]) -> bool:
    """Closed-box membership; the boundary counts as inside."""
    if len(p) != domain.dimension:
        raise DimensionMismatchError(
            f"point of length {len(p)} in {domain.dimension}-d domain"
        )
    return all(lo <= c <= hi for lo, c, hi in zip(domain.lower, p, domain.upper))


def _corner(domain: BoxDomain, bits: Sequence[int]) -> Point:
    return tuple(
        domain.upper[i] if bits[i] else domain.lower[i]
        for i in range(domain.dimension)
    )


def _sample_patterns(dim: int, cap: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
    # Uniform without replacement via rejection; collision odds are negligible
    # for the 2**dim >> cap regime this is used in.
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    while len(out) < cap:
        bits = tuple(int(b) for b in rng.integers(0, 2, size=dim))
        if bits in seen:
            continue
        seen.add(bits)
        out.append(bits)
    return out


def vertices(domain: BoxDomain, cap: int, rng: np.random.Generator) -> list[Point]:
    """Corners of the box.

    Full enumeration in lexicographic order over the sign pattern (lower
    before upper) when 2**dimension <= cap; otherwise ``cap`` distinct
    corners sampled uniformly without replacement, in the order drawn.
    """
    if cap < 1:
        raise ConfigurationError("cap must be >= 1")
    dim = domain.dimension
    if dim <= 62 and 2**dim <= cap:
        return [
            _corner(domain, [(idx >> (dim - 1 - i)) & 1 for i in range(dim)])
            for idx in range(2**dim)
        ]
    return [_corner(domain, bits) for bits in _sample_patterns(dim, cap, rng)]


def all_sign_vectors(dimension: int, cap: int, rng: np.random.Generator) -> list[SignVector]:
    """Directions in {-1,+1}**dimension.

    Lexicographic enumeration (+1 before -1, all-plus first) when
    2**dimension <= cap; otherwise a uniform sample without replacement.
    """
    if dimension < 1:
        raise ConfigurationError("dimension must be >= 1")
    if cap < 1:
        raise ConfigurationError("cap must be >= 1")
    if dimension <= 62 and 2**dimension <= cap:
        return [
            tuple(-1 if (idx >> (dimension - 1 - i)) & 1 else 1 for i in range(dimension))
            for idx in range(2**dimension)
        ]
    return [
        tuple(-1 if b else 1 for b in bits)
        for bits in _sample_patterns(dimension, cap, rng)
    ]


def decimal_fraction(x: float) -> Fraction:
    """Exact rational of a float's shortest decimal representation.

    repr() round-trips, so this is the decimal the float was written as
    (0.1 -> 1/10), which is what grid arithmetic needs to stay exact.
    """
    return Fraction(repr(float(x)))


def fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )
