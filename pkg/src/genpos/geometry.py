"""Point configurations, projection kernels, and the per-kernel check.

A Subspace plays the role of a projection kernel H: projecting onto its
orthogonal complement collapses two points into the same fiber exactly when
their difference lies in H. The per-kernel check asks, with k = dim H, that
every non-degenerate fiber has at most k+1 affinely independent points and
that the fiber sizes do not overshoot k in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError
from .linalg import (
    IncrementalSpan,
    Vector,
    as_rational,
    dot,
    gram_matrix,
    make_vector,
    rank,
    solve_linear_system,
    vector_sub,
)

Point = Vector
FiberPartition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Configuration:
    """A finite list of pairwise-distinct labeled points in Q^N."""

    dimension: int
    points: tuple[Point, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise InputError("dimension: must be an integer >= 1")
        pts = tuple(make_vector(p) for p in self.points)
        if not pts:
            raise InputError("points: configuration must contain at least one point")
        for i, p in enumerate(pts):
            if len(p) != self.dimension:
                raise InputError(
                    f"points[{i}]: expected {self.dimension} coordinates, got {len(p)}"
                )
        seen: dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise InputError(
                    f"points: duplicate point at indices {seen[p]} and {i}"
                )
            seen[p] = i
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(pts):
                raise InputError(
                    f"labels: expected {len(pts)} entries, got {len(labels)}"
                )
            object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Subspace:
    """A proper non-zero linear subspace of Q^N given by rational generators.

    Generators may be redundant; dim is always the computed rank.
    """

    ambient_dimension: int
    generators: tuple[Vector, ...]
    dim: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.ambient_dimension, int) or self.ambient_dimension < 1:
            raise InputError("ambient_dimension: must be an integer >= 1")
        gens = tuple(make_vector(g) for g in self.generators)
        for i, g in enumerate(gens):
            if len(g) != self.ambient_dimension:
                raise InputError(
                    f"generators[{i}]: expected {self.ambient_dimension} "
                    f"coordinates, got {len(g)}"
                )
        object.__setattr__(self, "generators", gens)
        k = rank(gens)
        if k == 0:
            raise InputError("generators: subspace must have positive dimension")
        if k >= self.ambient_dimension:
            raise InputError(
                f"generators: subspace of dimension {k} is not proper in "
                f"dimension {self.ambient_dimension}"
            )
        object.__setattr__(self, "dim", k)


@dataclass(frozen=True)
class FiberReport:
    """Checks for one non-degenerate fiber."""

    indices: tuple[int, ...]
    size_ok: bool
    affinely_independent: bool


@dataclass(frozen=True)
class SubspaceCheck:
    """Outcome of the per-kernel general position check."""

    k: int
    fibers: FiberPartition
    nondegenerate: tuple[FiberReport, ...]
    excess_sum: int
    sum_ok: bool
    passed: bool
    violations: tuple[str, ...]


def project_onto_complement(point, kernel: Subspace) -> Point:
    """Project a point onto the orthogonal complement of the kernel.

    The component inside the kernel is found exactly by solving the normal
    equations with the Gram matrix of the kernel's generators.
    """
    p = make_vector(point)
    if len(p) != kernel.ambient_dimension:
        raise InputError(
            f"point has dimension {len(p)}, kernel expects "
            f"{kernel.ambient_dimension}"
        )
    gens = kernel.generators
    gram = gram_matrix(gens)
    rhs = [dot(g, p) for g in gens]
    coeffs = solve_linear_system(gram, rhs)
    # Always consistent: the right side lies in the Gram matrix's row space.
    assert coeffs is not None
    inside = tuple(
        sum((c * g[i] for c, g in zip(coeffs, gens)), Fraction(0))
        for i in range(len(p))
    )
    return tuple(x - y for x, y in zip(p, inside))


def _kernel_span(kernel: Subspace) -> IncrementalSpan:
    span = IncrementalSpan(kernel.ambient_dimension)
    for g in kernel.generators:
        span.add(g)
    return span


def fibers(config: Configuration, kernel: Subspace) -> FiberPartition:
    """Partition point indices into projection fibers.

    Two indices share a class iff the difference of their points lies in the
    kernel; no projections are formed. Classes are listed by smallest member,
    members ascending.
    """
    if kernel.ambient_dimension != config.dimension:
        raise InputError(
            f"kernel ambient dimension {kernel.ambient_dimension} does not "
            f"match configuration dimension {config.dimension}"
        )
    span = _kernel_span(kernel)
    classes: list[list[int]] = []
    reps: list[Point] = []
    for i, p in enumerate(config.points):
        for ci, rep in enumerate(reps):
            if span.includes(vector_sub(p, rep)):
                classes[ci].append(i)
                break
        else:
            classes.append([i])
            reps.append(p)
    return tuple(tuple(c) for c in classes)


def check_general_position(config: Configuration, kernel: Subspace) -> SubspaceCheck:
    """Check general position with respect to one projection kernel.

    With k = dim(kernel), the conditions are: every non-degenerate fiber has
    at most k+1 points, each such fiber is affinely independent, and the
    fiber size excesses sum to at most k.
    """
    partition = fibers(config, kernel)
    k = kernel.dim
    reports: list[FiberReport] = []
    violations: list[str] = []
    excess = 0
    for cls in partition:
        size = len(cls)
        if size < 2:
            continue
        excess += size - 1
        size_ok = size <= k + 1
        base = config.points[cls[0]]
        diffs = [vector_sub(config.points[i], base) for i in cls[1:]]
        r = rank(diffs)
        independent = r == size - 1
        reports.append(FiberReport(tuple(cls), size_ok, independent))
        if not size_ok:
            violations.append(f"fiber size {size} exceeds k+1={k + 1}")
        if not independent:
            violations.append(
                f"fiber {list(cls)} is affinely dependent (rank {r} < {size - 1})"
            )
    sum_ok = excess <= k
    if not sum_ok:
        violations.append(
            f"sum of (|fiber|-1) over non-degenerate fibers = {excess} "
            f"exceeds k={k}"
        )
    return SubspaceCheck(
        k=k,
        fibers=partition,
        nondegenerate=tuple(reports),
        excess_sum=excess,
        sum_ok=sum_ok,
        passed=not violations,
        violations=tuple(violations),
    )


def _rational_cell(value, where: str) -> Fraction:
    try:
        return as_rational(value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def configuration_from_json(obj) -> Configuration:
    """Build a Configuration from its JSON form, naming bad fields."""
    if not isinstance(obj, dict):
        raise InputError("configuration: expected a JSON object")
    if "dimension" not in obj:
        raise InputError("dimension: missing")
    dim = obj["dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("dimension: must be an integer")
    raw_points = obj.get("points")
    if not isinstance(raw_points, list):
        raise InputError("points: missing or not a list")
    points = []
    for i, row in enumerate(raw_points):
        if not isinstance(row, list):
            raise InputError(f"points[{i}]: expected a list of rationals")
        points.append(
            tuple(_rational_cell(cell, f"points[{i}][{j}]") for j, cell in enumerate(row))
        )
    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise InputError("labels: expected a list of strings")
        labels = tuple(labels)
    return Configuration(dim, tuple(points), labels)


def configuration_to_json(config: Configuration) -> dict:
    out = {
        "dimension": config.dimension,
        "points": [[str(c) for c in p] for p in config.points],
    }
    if config.labels is not None:
        out["labels"] = list(config.labels)
    return out


def subspace_from_json(obj) -> Subspace:
    """Build a Subspace from its JSON form, naming bad fields."""
    if not isinstance(obj, dict):
        raise InputError("subspace: expected a JSON object")
    if "ambient_dimension" not in obj:
        raise InputError("ambient_dimension: missing")
    dim = obj["ambient_dimension"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("ambient_dimension: must be an integer")
    raw = obj.get("generators")
    if not isinstance(raw, list):
        raise InputError("generators: missing or not a list")
    gens = []
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise InputError(f"generators[{i}]: expected a list of rationals")
        gens.append(
            tuple(
                _rational_cell(cell, f"generators[{i}][{j}]")
                for j, cell in enumerate(row)
            )
        )
    return Subspace(dim, tuple(gens))


def subspace_to_json(kernel: Subspace) -> dict:
    return {
        "ambient_dimension": kernel.ambient_dimension,
        "generators": [[str(c) for c in g] for g in kernel.generators],
    }


def subspace_check_to_json(report: SubspaceCheck) -> dict:
    return {
        "pass": report.passed,
        "k": report.k,
        "fibers": [list(c) for c in report.fibers],
        "nondegenerate_fibers": [
            {
                "indices": list(f.indices),
                "size": len(f.indices),
                "size_ok": f.size_ok,
                "affinely_independent": f.affinely_independent,
            }
            for f in report.nondegenerate
        ],
        "excess_sum": report.excess_sum,
        "sum_ok": report.sum_ok,
        "violations": list(report.violations),
    }
