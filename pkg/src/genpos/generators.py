"""Deterministic producers of instructive configurations.

Randomness comes from SplitMix64 (Steele, Lea and Flood's 64-bit mixer) with
unbiased bounded sampling by rejection. The algorithm is part of the external
contract: a given seed yields bit-identical output on every platform and in
every release.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InputError, PerturbationError
from .genericity import decide_all_projections
from .geometry import Configuration, Point
from .linalg import Vector, as_rational, make_vector

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 pseudo-random generator; tiny, fast, fully reproducible."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        if not isinstance(seed, int) or seed < 0:
            raise InputError("seed: must be a non-negative integer")
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased via rejection."""
        if bound < 1:
            raise InputError("bound: must be >= 1")
        limit = _MASK64 + 1 - ((_MASK64 + 1) % bound)
        while True:
            draw = self.next_u64()
            if draw < limit:
                return draw % bound


def cantor_graph_stage(stage: int) -> Configuration:
    """Endpoints of the middle-thirds gaps removed through `stage`, paired
    with the plateau value the Cantor function takes there, plus (0,0) and
    (1,1). Points are ordered by x.

    Stage n has 2 + 2*(2^n - 1) points; every plateau value appears twice.
    """
    if not isinstance(stage, int) or stage < 1:
        raise InputError("stage: must be an integer >= 1")
    points: list[Point] = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
    intervals: list[tuple[Fraction, Fraction]] = [(Fraction(0), Fraction(1))]
    for s in range(1, stage + 1):
        nxt: list[tuple[Fraction, Fraction]] = []
        for i, (a, b) in enumerate(intervals):
            third = (b - a) / 3
            left, right = a + third, b - third
            y = Fraction(2 * i + 1, 2**s)
            points.append((left, y))
            points.append((right, y))
            nxt.append((a, left))
            nxt.append((right, b))
        intervals = nxt
    points.sort(key=lambda p: p[0])
    return Configuration(2, tuple(points))


@dataclass(frozen=True)
class AffineMap:
    """x -> Mx + t with rational matrix M and translation t."""

    matrix: tuple[Vector, ...]
    translation: Vector

    def __post_init__(self):
        rows = tuple(make_vector(r) for r in self.matrix)
        t = make_vector(self.translation)
        n = len(t)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"matrix: expected {n}x{n} to match the translation")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "translation", t)

    def apply(self, point: Point) -> Point:
        return tuple(
            sum((m * x for m, x in zip(row, point)), Fraction(0)) + t
            for row, t in zip(self.matrix, self.translation)
        )


@dataclass(frozen=True)
class IteratedFunctionSystem:
    """A finite list of affine maps sharing one ambient dimension."""

    dimension: int
    maps: tuple[AffineMap, ...]

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InputError("dimension: must be an integer >= 1")
        if not self.maps:
            raise InputError("maps: at least one map is required")
        for i, m in enumerate(self.maps):
            if len(m.translation) != self.dimension:
                raise InputError(
                    f"maps[{i}]: dimension {len(m.translation)} does not match "
                    f"system dimension {self.dimension}"
                )


def product_cantor_system(dimension: int) -> IteratedFunctionSystem:
    """The 2^N contractions x -> x/3 + t, t in {0, 2/3}^N."""
    if not isinstance(dimension, int) or dimension < 1:
        raise InputError("dimension: must be an integer >= 1")
    third = Fraction(1, 3)
    identity_third = tuple(
        tuple(third if i == j else Fraction(0) for j in range(dimension))
        for i in range(dimension)
    )
    maps = tuple(
        AffineMap(identity_third, t)
        for t in product((Fraction(0), Fraction(2, 3)), repeat=dimension)
    )
    return IteratedFunctionSystem(dimension, maps)


def iterate_system(
    system: IteratedFunctionSystem, stage: int, seeds: Configuration
) -> Configuration:
    """Apply every length-`stage` word of the system's maps to every seed.

    Results are deduplicated exactly and sorted by coordinates; stage 0
    returns the seeds unchanged.
    """
    if not isinstance(stage, int) or stage < 0:
        raise InputError("stage: must be an integer >= 0")
    if seeds.dimension != system.dimension:
        raise InputError(
            f"seeds dimension {seeds.dimension} does not match system "
            f"dimension {system.dimension}"
        )
    if stage == 0:
        return seeds
    out: set[Point] = set()
    for word in product(range(len(system.maps)), repeat=stage):
        for seed in seeds.points:
            x = seed
            for index in word:
                x = system.maps[index].apply(x)
            out.add(x)
    return Configuration(system.dimension, tuple(sorted(out)))


def random_configuration(
    count: int, dimension: int, denominator: int, seed: int
) -> Configuration:
    """Points with coordinates p/denominator, p uniform in 0..denominator.

    Sampling uses SplitMix64 seeded as given; a point equal to an earlier one
    is redrawn, so the result is always pairwise distinct.
    """
    if not isinstance(count, int) or count < 1:
        raise InputError("count: must be an integer >= 1")
    if not isinstance(dimension, int) or dimension < 1:
        raise InputError("dimension: must be an integer >= 1")
    if not isinstance(denominator, int) or denominator < 2:
        raise InputError("denominator: must be an integer >= 2")
    if (denominator + 1) ** dimension < count:
        raise InputError(
            f"count: the grid has only {(denominator + 1) ** dimension} "
            f"distinct points, fewer than {count}"
        )
    rng = SplitMix64(seed)
    chosen: list[Point] = []
    taken: set[Point] = set()
    while len(chosen) < count:
        p = tuple(
            Fraction(rng.below(denominator + 1), denominator)
            for _ in range(dimension)
        )
        if p in taken:
            continue
        taken.add(p)
        chosen.append(p)
    return Configuration(dimension, tuple(chosen))


_OFFSET_GRID = 1 << 16


def _ball_offset(rng: SplitMix64, dimension: int, step: Fraction) -> Vector:
    # uniform on the integer grid inside the radius-2^16 ball, by rejection
    while True:
        cells = [rng.below(2 * _OFFSET_GRID + 1) - _OFFSET_GRID for _ in range(dimension)]
        if sum(c * c for c in cells) <= _OFFSET_GRID * _OFFSET_GRID:
            return tuple(step * c for c in cells)


def perturb_to_generic(
    config: Configuration, epsilon, seed: int, max_attempts: int = 16
) -> Configuration:
    """Move every point by at most epsilon until the result is generic.

    Offsets are drawn from the rational grid of spacing epsilon/2^16 inside
    the epsilon-ball, so the squared distance moved is at most epsilon^2 and
    all arithmetic stays exact. Raises PerturbationError, carrying the last
    certificate seen, once max_attempts candidates failed.
    """
    eps = as_rational(epsilon)
    if eps <= 0:
        raise InputError("epsilon: must be positive")
    if not isinstance(max_attempts, int) or max_attempts < 1:
        raise InputError("max_attempts: must be an integer >= 1")
    rng = SplitMix64(seed)
    step = eps / _OFFSET_GRID
    last_certificate = None
    for _ in range(max_attempts):
        moved = [
            tuple(x + d for x, d in zip(p, _ball_offset(rng, config.dimension, step)))
            for p in config.points
        ]
        if len(set(moved)) < len(moved):
            continue
        candidate = Configuration(config.dimension, tuple(moved), config.labels)
        verdict = decide_all_projections(candidate)
        if verdict.generic:
            return candidate
        last_certificate = verdict.certificate
    raise PerturbationError(max_attempts, last_certificate)
