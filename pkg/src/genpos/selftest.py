"""Built-in verification battery: oracle agreement and core properties.

Everything here is seeded, so two runs produce identical results. The CLI
`selftest` command executes the battery and reports pass/fail counts; the
helpers for building random corpora are shared with the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .generators import SplitMix64, cantor_graph_stage, perturb_to_generic
from .genericity import (
    decide_all_projections,
    decide_all_projections_oracle,
    classical_general_position,
)
from .geometry import Configuration, Subspace, check_general_position, fibers
from .linalg import gram_determinant, rank
from .metric import hausdorff_sq, squared_triangle_inequality


def grid_configuration(
    rng: SplitMix64, count: int, dimension: int, top: int
) -> Configuration:
    """Random configuration with integer coordinates in 0..top, distinct."""
    chosen: list[tuple[Fraction, ...]] = []
    taken = set()
    while len(chosen) < count:
        p = tuple(Fraction(rng.below(top + 1)) for _ in range(dimension))
        if p in taken:
            continue
        taken.add(p)
        chosen.append(p)
    return Configuration(dimension, tuple(chosen))


def random_subspace(rng: SplitMix64, dimension: int, k: int) -> Subspace:
    """Random k-dimensional kernel with small integer generators."""
    while True:
        gens = tuple(
            tuple(Fraction(rng.below(19)) - 9 for _ in range(dimension))
            for _ in range(k)
        )
        if rank(gens) == k:
            return Subspace(dimension, gens)


def random_vectors(rng: SplitMix64, count: int, dimension: int):
    return [
        tuple(
            Fraction(rng.below(19) - 9, rng.below(9) + 1) for _ in range(dimension)
        )
        for _ in range(count)
    ]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check_fixtures() -> CheckResult:
    triangle = Configuration(2, ((0, 0), (1, 0), (0, 1)))
    square = Configuration(2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    collinear = Configuration(2, ((0, 0), (1, 0), (2, 0)))
    ok = decide_all_projections(triangle).generic
    v = decide_all_projections(square)
    ok = ok and not v.generic and v.certificate.groups == ((0, 1), (2, 3))
    ok = ok and v.certificate.witness.generators == ((Fraction(0), Fraction(1)),)
    v = decide_all_projections(collinear)
    ok = ok and not v.generic and v.certificate.groups == ((0, 1, 2),)
    stage1 = cantor_graph_stage(1)
    ok = ok and not decide_all_projections(stage1).generic
    stage2 = cantor_graph_stage(2)
    report = check_general_position(stage2, Subspace(2, ((1, 0),)))
    ok = ok and len(report.nondegenerate) == 3 and report.excess_sum == 3
    ok = ok and not report.passed
    return CheckResult("golden fixtures", ok, "triangle/square/collinear/cantor")


def _check_oracle_agreement(samples: int = 60) -> CheckResult:
    rng = SplitMix64(2024)
    failures = 0
    for i in range(samples):
        if i % 2 == 0:
            config = grid_configuration(rng, 4 + rng.below(3), 2, 4)
        else:
            config = grid_configuration(rng, 4 + rng.below(3), 3, 2)
        fast = decide_all_projections(config)
        slow = decide_all_projections_oracle(config)
        if fast.generic != slow.generic:
            failures += 1
    return CheckResult(
        "oracle agreement", failures == 0, f"{samples - failures}/{samples} agree"
    )


def _check_minimal_patterns_suffice(samples: int = 40) -> CheckResult:
    rng = SplitMix64(99)
    failures = 0
    for i in range(samples):
        dim = 2 if i % 2 == 0 else 3
        config = grid_configuration(rng, 2 + rng.below(5), dim, 3)
        fast = decide_all_projections(config)
        full = decide_all_projections_oracle(config, minimal_only=False)
        if fast.generic != full.generic:
            failures += 1
    return CheckResult(
        "minimal patterns suffice",
        failures == 0,
        f"{samples - failures}/{samples} agree with exhaustive enumeration",
    )


def _check_gram_vs_rank(samples: int = 200) -> CheckResult:
    rng = SplitMix64(7)
    failures = 0
    for _ in range(samples):
        dim = 1 + rng.below(5)
        count = 1 + rng.below(5)
        vectors = random_vectors(rng, count, dim)
        if (gram_determinant(vectors) != 0) != (rank(vectors) == len(vectors)):
            failures += 1
    return CheckResult(
        "gram determinant vs rank", failures == 0, f"{samples - failures}/{samples}"
    )


def _check_certificate_soundness(samples: int = 60) -> CheckResult:
    rng = SplitMix64(31337)
    violations = 0
    unsound = 0
    for i in range(samples):
        dim = 2 if i % 2 == 0 else 3
        config = grid_configuration(rng, 4 + rng.below(3), dim, 2)
        verdict = decide_all_projections(config)
        if verdict.generic:
            continue
        violations += 1
        if check_general_position(config, verdict.certificate.witness).passed:
            unsound += 1
    return CheckResult(
        "certificate soundness",
        unsound == 0,
        f"{violations} violations, {unsound} unsound witnesses",
    )


def _check_generic_implies_classical(samples: int = 40) -> CheckResult:
    rng = SplitMix64(555)
    failures = 0
    for i in range(samples):
        dim = 2 if i % 2 == 0 else 3
        config = grid_configuration(rng, 4 + rng.below(3), dim, 4)
        if decide_all_projections(config).generic:
            if not classical_general_position(config).in_general_position:
                failures += 1
    return CheckResult(
        "generic implies classical general position", failures == 0, f"{failures} failures"
    )


def _check_fiber_partitions(samples: int = 50) -> CheckResult:
    from .geometry import project_onto_complement

    rng = SplitMix64(404)
    failures = 0
    for _ in range(samples):
        dim = 2 + rng.below(2)
        config = grid_configuration(rng, 3 + rng.below(4), dim, 3)
        kernel = random_subspace(rng, dim, 1 + rng.below(dim - 1))
        partition = fibers(config, kernel)
        covered = sorted(i for cls in partition for i in cls)
        if covered != list(range(len(config.points))):
            failures += 1
            continue
        images = [project_onto_complement(p, kernel) for p in config.points]
        for cls in partition:
            if any(images[i] != images[cls[0]] for i in cls):
                failures += 1
                break
        else:
            for a in range(len(partition)):
                for b in range(a + 1, len(partition)):
                    if images[partition[a][0]] == images[partition[b][0]]:
                        failures += 1
    return CheckResult(
        "fiber partitions match projection images", failures == 0, f"{failures} failures"
    )


def _check_metric(samples: int = 100) -> CheckResult:
    rng = SplitMix64(11)
    failures = 0
    for _ in range(samples):
        dim = 2 + rng.below(2)
        a = grid_configuration(rng, 1 + rng.below(4), dim, 5)
        b = grid_configuration(rng, 1 + rng.below(4), dim, 5)
        c = grid_configuration(rng, 1 + rng.below(4), dim, 5)
        ab, ba = hausdorff_sq(a, b), hausdorff_sq(b, a)
        if ab != ba:
            failures += 1
        if (hausdorff_sq(a, a) != 0) or (
            (ab == 0) != (set(a.points) == set(b.points))
        ):
            failures += 1
        if not squared_triangle_inequality(ab, hausdorff_sq(b, c), hausdorff_sq(a, c)):
            failures += 1
    return CheckResult("hausdorff metric properties", failures == 0, f"{failures} failures")


def _check_perturbation(samples: int = 10) -> CheckResult:
    square = Configuration(2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    eps = Fraction(1, 100)
    failures = 0
    for seed in range(samples):
        try:
            out = perturb_to_generic(square, eps, seed, max_attempts=5)
        except Exception:
            failures += 1
            continue
        if hausdorff_sq(square, out) > eps * eps:
            failures += 1
        if not decide_all_projections(out).generic:
            failures += 1
    return CheckResult("perturbation to generic", failures == 0, f"{failures} failures")


def run_selftest() -> list[CheckResult]:
    """Run the whole battery and return one result per check."""
    return [
        _check_fixtures(),
        _check_oracle_agreement(),
        _check_minimal_patterns_suffice(),
        _check_gram_vs_rank(),
        _check_certificate_soundness(),
        _check_generic_implies_classical(),
        _check_fiber_partitions(),
        _check_metric(),
        _check_perturbation(),
    ]
