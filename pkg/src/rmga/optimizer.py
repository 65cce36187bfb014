"""Rotational-mutation direct search.

The procedure starts from the best corner of the search box (elitism over
the vertex population), then repeats two phases until nothing improves:

  * a directed probe: fixed-length steps rms*n along the working sign
    vector, taking the first in-domain improvement;
  * a rotational search: when the probe fails, scan step sizes beta
    (ascending) across all sign-vector directions and take the first
    in-domain improvement, which also becomes the new working direction.

One accepted move is one generation; the generation count is reported as
``trm``. Every candidate is a lattice point reachable from the elite
vertex by sums of the configured step lengths. Internally positions are
tracked as exact decimal offsets on that lattice (integer multiples of the
gcd of all step lengths) and materialized to floats per evaluation, so a
run that walks to a decimal point like (0, 0.4) lands on it exactly
instead of accumulating float drift. The step arithmetic of the public
helpers (step_along and friends) agrees with the lattice coordinates to
within an ulp or two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from rmga.core import (
    BoxDomain,
    ConfigurationError,
    Point,
    Sense,
    SignVector,
    all_sign_vectors,
    better,
    contains,
    decimal_fraction,
    fraction_gcd,
    vertices,
)
from rmga.objectives import NoiseSource, ObjectiveSpec, evaluate, evaluate_noise_free


class StallPolicy(Enum):
    STOP_ON_NO_IMPROVEMENT = "stop_on_no_improvement"


class Termination(Enum):
    STALLED = "Stalled"
    BOUNDARY_STOP = "BoundaryStop"
    GENERATION_CAP = "GenerationCap"


class EventKind(Enum):
    ELITE_SELECTED = "EliteSelected"
    DIRECTED_STEP = "DirectedStep"
    ROTATIONAL_STEP = "RotationalStep"
    STALLED = "Stalled"
    BOUNDARY_STOP = "BoundaryStop"


@dataclass(frozen=True)
class RmConfig:
    """Tunables. Defaults reproduce the reference benchmark configuration."""

    rms: float = 0.1
    alpha_multipliers: tuple[int, ...] = tuple(range(1, 11))
    beta_schedule: tuple[float, ...] = (0.1, 0.25, 0.5, 0.75, 1.0)
    max_generations: int = 100_000
    vertex_cap: int = 64
    direction_cap: int = 64
    seed: int = 0
    stall_policy: StallPolicy = StallPolicy.STOP_ON_NO_IMPROVEMENT

    def __post_init__(self) -> None:
        if not (isinstance(self.rms, (int, float)) and math.isfinite(self.rms) and self.rms > 0):
            raise ConfigurationError("rms must be a positive finite real")
        ms = tuple(self.alpha_multipliers)
        if not ms or any(not isinstance(m, int) or m <= 0 for m in ms):
            raise ConfigurationError("alpha_multipliers must be positive integers")
        if any(b <= a for a, b in zip(ms, ms[1:])):
            raise ConfigurationError("alpha_multipliers must be strictly ascending")
        bs = tuple(float(b) for b in self.beta_schedule)
        if not bs or any(not math.isfinite(b) or b <= 0 for b in bs):
            raise ConfigurationError("beta_schedule entries must be positive finite reals")
        if any(b <= a for a, b in zip(bs, bs[1:])):
            raise ConfigurationError("beta_schedule must be strictly ascending")
        if self.max_generations < 1 or self.vertex_cap < 1 or self.direction_cap < 1:
            raise ConfigurationError("max_generations and caps must be >= 1")
        if not isinstance(self.seed, int):
            raise ConfigurationError("seed must be an integer")
        object.__setattr__(self, "alpha_multipliers", ms)
        object.__setattr__(self, "beta_schedule", bs)


@dataclass(frozen=True)
class TraceEvent:
    generation: int
    kind: EventKind
    point: Point
    value: float
    direction: Optional[SignVector] = None
    step_length: Optional[float] = None


Trace = tuple[TraceEvent, ...]


@dataclass(frozen=True)
class RunResult:
    best_point: Point
    best_value: float
    trm: int
    terminated_by: Termination
    trace: Optional[Trace]
    seed: int


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator, int]:
    """Three independent deterministic streams derived from one seed:
    vertex sampling, direction sampling, and the f4 noise seed."""
    base = seed & (2**64 - 1)
    rng_v = np.random.Generator(np.random.PCG64(np.random.SeedSequence(base, spawn_key=(0,))))
    rng_d = np.random.Generator(np.random.PCG64(np.random.SeedSequence(base, spawn_key=(1,))))
    noise_seed = int(
        np.random.SeedSequence(base, spawn_key=(2,)).generate_state(1, np.uint64)[0]
    )
    return rng_v, rng_d, noise_seed


def select_elite(
    candidates: Sequence[Point],
    spec: ObjectiveSpec,
    noise: Optional[NoiseSource] = None,
) -> tuple[Point, float]:
    """Best candidate under the spec's sense; ties break to the
    lexicographically smallest coordinate sequence."""
    if not candidates:
        raise ValueError("select_elite needs at least one candidate")
    best_p: Optional[Point] = None
    best_v = 0.0
    for p in candidates:
        v = evaluate(spec, p, noise)
        if best_p is None or better(v, best_v, spec.sense) or (v == best_v and p < best_p):
            best_p, best_v = p, v
    assert best_p is not None
    return best_p, best_v


def step_along(s: Point, direction: SignVector, length: float) -> Point:
    """Endpoint of a fixed-length move: s[i] + length * direction[i]."""
    if length <= 0:
        raise ValueError("length must be positive")
    return tuple(si + length * di for si, di in zip(s, direction))


def directed_probe(
    s: Point,
    s_value: float,
    direction: SignVector,
    spec: ObjectiveSpec,
    config: RmConfig,
    noise: Optional[NoiseSource] = None,
) -> Optional[tuple[Point, float]]:
    """First in-domain improvement over step lengths rms*n, n ascending.

    Out-of-domain candidates are skipped; None means no multiplier helped.
    """
    for n in config.alpha_multipliers:
        p = step_along(s, direction, config.rms * n)
        if not contains(spec.domain, p):
            continue
        v = evaluate(spec, p, noise)
        if better(v, s_value, spec.sense):
            return p, v
    return None


def rotational_search(
    s: Point,
    s_value: float,
    spec: ObjectiveSpec,
    config: RmConfig,
    directions: Sequence[SignVector],
    noise: Optional[NoiseSource] = None,
) -> Optional[tuple[Point, float, SignVector]]:
    """First in-domain improvement over the beta schedule (outer, ascending)
    and the direction list (inner, given order)."""
    if not directions:
        raise ValueError("rotational_search needs at least one direction")
    for beta in config.beta_schedule:
        for e in directions:
            p = step_along(s, e, beta)
            if not contains(spec.domain, p):
                continue
            v = evaluate(spec, p, noise)
            if better(v, s_value, spec.sense):
                return p, v, e
    return None


class MoveLattice:
    """Exact decimal lattice of points reachable from an anchor corner.

    Coordinates are anchor[i] + m[i] * unit, where unit is the gcd of every
    configured step length read as its shortest decimal. Floats are
    materialized once per (axis, index) pair, so equal offsets always give
    bit-equal coordinates.
    """

    def __init__(self, domain: BoxDomain, anchor_point: Point, config: RmConfig):
        rms = decimal_fraction(config.rms)
        alpha_lengths = [rms * n for n in config.alpha_multipliers]
        beta_lengths = [decimal_fraction(b) for b in config.beta_schedule]
        unit = alpha_lengths[0]
        for length in alpha_lengths[1:] + beta_lengths:
            unit = fraction_gcd(unit, length)
        self.unit: Fraction = unit
        self.alpha_units = tuple(int(L / unit) for L in alpha_lengths)
        self.alpha_lengths = tuple(float(L) for L in alpha_lengths)
        self.beta_units = tuple(int(L / unit) for L in beta_lengths)
        self.beta_lengths = tuple(float(L) for L in beta_lengths)
        self.anchors: list[Fraction] = []
        self.m_lo: list[int] = []
        self.m_hi: list[int] = []
        for i, c in enumerate(anchor_point):
            lo = decimal_fraction(domain.lower[i])
            hi = decimal_fraction(domain.upper[i])
            anchor = lo if c == domain.lower[i] else hi
            n_inward = int((hi - lo) / unit)
            self.anchors.append(anchor)
            if anchor == lo:
                self.m_lo.append(0)
                self.m_hi.append(n_inward)
            else:
                self.m_lo.append(-n_inward)
                self.m_hi.append(0)
        self._coords: list[dict[int, float]] = [dict() for _ in anchor_point]

    def in_range(self, ms: Sequence[int]) -> bool:
        return all(
            self.m_lo[i] <= m <= self.m_hi[i] for i, m in enumerate(ms)
        )

    def coordinate(self, axis: int, m: int) -> float:
        cache = self._coords[axis]
        c = cache.get(m)
        if c is None:
            c = float(self.anchors[axis] + m * self.unit)
            cache[m] = c
        return c

    def point(self, ms: Sequence[int]) -> Point:
        return tuple(self.coordinate(i, m) for i, m in enumerate(ms))

    def index_of(self, p: Point) -> Optional[tuple[int, ...]]:
        """Lattice index of a point whose coordinates are exact decimals,
        or None when it is off-lattice or out of range."""
        ms = []
        for i, c in enumerate(p):
            off = (decimal_fraction(c) - self.anchors[i]) / self.unit
            if off.denominator != 1:
                return None
            m = int(off)
            if not (self.m_lo[i] <= m <= self.m_hi[i]):
                return None
            ms.append(m)
        return tuple(ms)

    def step_units(self) -> tuple[int, ...]:
        """Distinct move magnitudes in lattice units, ascending."""
        return tuple(sorted(set(self.alpha_units) | set(self.beta_units)))


def _lattice_probe(lattice, ms, value, direction, spec, config, noise):
    saw_in_domain = False
    for du, dl in zip(lattice.alpha_units, lattice.alpha_lengths):
        cand = tuple(m + du * di for m, di in zip(ms, direction))
        if not lattice.in_range(cand):
            continue
        saw_in_domain = True
        p = lattice.point(cand)
        v = evaluate(spec, p, noise)
        if better(v, value, spec.sense):
            return (cand, p, v, dl), saw_in_domain
    return None, saw_in_domain


def _lattice_rotate(lattice, ms, value, directions, spec, config, noise):
    saw_in_domain = False
    for bu, bl in zip(lattice.beta_units, lattice.beta_lengths):
        for e in directions:
            cand = tuple(m + bu * ei for m, ei in zip(ms, e))
            if not lattice.in_range(cand):
                continue
            saw_in_domain = True
            p = lattice.point(cand)
            v = evaluate(spec, p, noise)
            if better(v, value, spec.sense):
                return (cand, p, v, e, bl), saw_in_domain
    return None, saw_in_domain


def rm_optimize(
    spec: ObjectiveSpec,
    config: RmConfig,
    trace_enabled: bool = False,
) -> RunResult:
    """Run the full search: vertex elitism, directed probes, rotational
    fallback, first-improvement acceptance throughout.

    The initial working direction is the inward-pointing sign vector at the
    elite corner (+1 where the corner sits on the lower bound), the only
    choice guaranteed to stay in the box from a vertex. After a successful
    rotation the working direction becomes the successful sign vector.

    Termination: Stalled when a full probe+rotation round has in-domain
    candidates but none improves; BoundaryStop when the round has no
    in-domain candidate at all; GenerationCap when trm reaches the limit.
    For the noisy objective the returned best_value is recomputed
    noise-free at the best point.
    """
    rng_vertices, rng_directions, noise_seed = _streams(config.seed)
    noise = NoiseSource(noise_seed) if spec.noisy else None

    population = vertices(spec.domain, config.vertex_cap, rng_vertices)
    directions = all_sign_vectors(spec.dimension, config.direction_cap, rng_directions)

    elite, elite_value = select_elite(population, spec, noise)
    lattice = MoveLattice(spec.domain, elite, config)
    working = tuple(
        1 if elite[i] == spec.domain.lower[i] else -1 for i in range(spec.dimension)
    )

    ms = (0,) * spec.dimension
    value = elite_value
    trm = 0
    events: Optional[list[TraceEvent]] = None
    if trace_enabled:
        events = [TraceEvent(0, EventKind.ELITE_SELECTED, elite, elite_value)]

    while True:
        if trm >= config.max_generations:
            terminated = Termination.GENERATION_CAP
            break

        hit, saw_probe = _lattice_probe(lattice, ms, value, working, spec, config, noise)
        if hit is not None:
            ms, point, value, length = hit
            trm += 1
            if events is not None:
                events.append(
                    TraceEvent(trm, EventKind.DIRECTED_STEP, point, value, working, length)
                )
            continue

        hit, saw_rotate = _lattice_rotate(lattice, ms, value, directions, spec, config, noise)
        if hit is not None:
            ms, point, value, working, length = hit
            trm += 1
            if events is not None:
                events.append(
                    TraceEvent(trm, EventKind.ROTATIONAL_STEP, point, value, working, length)
                )
            continue

        if saw_probe or saw_rotate:
            terminated = Termination.STALLED
        else:
            terminated = Termination.BOUNDARY_STOP
        if events is not None:
            kind = (
                EventKind.STALLED
                if terminated is Termination.STALLED
                else EventKind.BOUNDARY_STOP
            )
            events.append(TraceEvent(trm, kind, lattice.point(ms), value))
        break

    best_point = lattice.point(ms)
    best_value = evaluate_noise_free(spec, best_point)
    return RunResult(
        best_point=best_point,
        best_value=best_value,
        trm=trm,
        terminated_by=terminated,
        trace=tuple(events) if events is not None else None,
        seed=config.seed,
    )


def rmga_run(spec: ObjectiveSpec, config: RmConfig) -> RunResult:
    """The same computation framed in GA vocabulary.

    Population = vertex set, elitism = select_elite, one generation = one
    accepted mutation, trm = total generations. Always traced; results are
    bit-identical to rm_optimize(spec, config, trace_enabled=True).
    """
    return rm_optimize(spec, config, trace_enabled=True)
