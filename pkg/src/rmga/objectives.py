"""The benchmark suite: five De Jong functions plus Beale and a shifted quadratic.

All seven problems minimize over a closed box. f4 is the only noisy one;
scoring it independently of the noise goes through evaluate_noise_free().

    f1     sphere                3-d   [-5.12, 5.12]    min 0 at origin
    f2     Rosenbrock banana     2-d   [-2.048, 2.048]  min 0 at (1, 1)
    f3     step (floor sum)      5-d   [-5.12, 5.12]    min 0 at all -5.12
    f4     noisy quartic         30-d  [-1.28, 1.28]    noise-free min 0 at origin
    f5     Shekel's foxholes     2-d   [-65.536, 65.536] min ~0.998004 at (-32, -32)
    beale  Beale's function      2-d   [-4.5, 4.5]      min 0 at (3, 0.5)
    quad   shifted paraboloid    2-d   [-2, 2]          min 0 at (0, 0.4)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from rmga import _kernels
from rmga.core import (
    BoxDomain,
    ConfigurationError,
    DomainViolationError,
    Point,
    Sense,
    contains,
)

# Well centers of the 5x5 foxhole grid: row 1 cycles, row 2 repeats in blocks.
FOXHOLE_A: tuple[tuple[float, ...], tuple[float, ...]] = (
    _kernels.FOXHOLE_A1,
    _kernels.FOXHOLE_A2,
)

# Foxhole well 1 dominates at (-32, -32); value derived by direct evaluation
# of the 25-term sum (see tests), not quoted from anywhere.
F5_OPTIMUM_VALUE = 0.9980038388186492


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    dimension: int
    domain: BoxDomain
    sense: Sense = Sense.MINIMIZE
    known_optimum: Optional[tuple[Point, float]] = None
    noisy: bool = False

    def __post_init__(self) -> None:
        if self.domain.dimension != self.dimension:
            raise ValueError("domain dimension mismatch")


class NoiseSource:
    """Seeded stream of standard-normal draws with a visible position.

    Identical seeds produce identical sequences; each concurrent run must
    own its source.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.position = 0
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def draw(self, n: int) -> np.ndarray:
        self.position += n
        return self._gen.standard_normal(n)

    def reset(self) -> None:
        self.position = 0
        self._gen = np.random.Generator(np.random.PCG64(self.seed))


_SCALAR = {
    "f1": _kernels.eval_f1,
    "f2": _kernels.eval_f2,
    "f3": _kernels.eval_f3,
    "f5": _kernels.eval_f5,
    "beale": _kernels.eval_beale,
    "quad": _kernels.eval_quad,
}


def evaluate(spec: ObjectiveSpec, p: Point, noise: Optional[NoiseSource] = None) -> float:
    """Objective value at an in-domain point.

    A noisy spec requires its noise source and consumes exactly one draw
    per summand (30 for f4) per call, rejected candidates included.
    """
    if not contains(spec.domain, p):
        raise DomainViolationError(f"{p!r} outside the domain of {spec.name}")
    if spec.noisy:
        if noise is None:
            raise ConfigurationError(f"{spec.name} is noisy; a NoiseSource is required")
        return _kernels.eval_f4_noisy(p, noise.draw(spec.dimension))
    return _SCALAR[spec.name](p)


def evaluate_noise_free(spec: ObjectiveSpec, p: Point) -> float:
    """The same formula with all noise terms replaced by zero."""
    if not contains(spec.domain, p):
        raise DomainViolationError(f"{p!r} outside the domain of {spec.name}")
    if spec.noisy:
        return _kernels.eval_f4_noise_free(p)
    return _SCALAR[spec.name](p)


def _specs() -> tuple[ObjectiveSpec, ...]:
    return (
        ObjectiveSpec(
            "f1", 3, BoxDomain.uniform(-5.12, 5.12, 3),
            known_optimum=((0.0, 0.0, 0.0), 0.0),
        ),
        ObjectiveSpec(
            "f2", 2, BoxDomain.uniform(-2.048, 2.048, 2),
            known_optimum=((1.0, 1.0), 0.0),
        ),
        ObjectiveSpec(
            "f3", 5, BoxDomain.uniform(-5.12, 5.12, 5),
            known_optimum=((-5.12,) * 5, 0.0),
        ),
        ObjectiveSpec(
            "f4", 30, BoxDomain.uniform(-1.28, 1.28, 30),
            known_optimum=((0.0,) * 30, 0.0), noisy=True,
        ),
        ObjectiveSpec(
            "f5", 2, BoxDomain.uniform(-65.536, 65.536, 2),
            known_optimum=((-32.0, -32.0), F5_OPTIMUM_VALUE),
        ),
        ObjectiveSpec(
            "beale", 2, BoxDomain.uniform(-4.5, 4.5, 2),
            known_optimum=((3.0, 0.5), 0.0),
        ),
        ObjectiveSpec(
            "quad", 2, BoxDomain.uniform(-2.0, 2.0, 2),
            known_optimum=((0.0, 0.4), 0.0),
        ),
    )


_REGISTRY = _specs()
_BY_NAME = {s.name: s for s in _REGISTRY}

FUNCTION_NAMES = tuple(s.name for s in _REGISTRY)


def registry() -> tuple[ObjectiveSpec, ...]:
    """All seven benchmark problems, in suite order."""
    return _REGISTRY


def get(name: str) -> ObjectiveSpec:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown objective {name!r}; expected one of {FUNCTION_NAMES}") from None
