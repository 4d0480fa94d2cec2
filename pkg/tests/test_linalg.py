from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genpos import (
    IncrementalSpan,
    InputError,
    as_rational,
    gram_determinant,
    gram_matrix,
    in_span,
    rank,
    solve_linear_system,
)

F = Fraction


def test_as_rational_accepts_strings_ints_fractions():
    assert as_rational("3/4") == F(3, 4)
    assert as_rational("-6/4") == F(-3, 2)
    assert as_rational("7") == F(7)
    assert as_rational(5) == F(5)
    assert as_rational(F(2, 6)) == F(1, 3)


@pytest.mark.parametrize("bad", ["1.5", "3/0", "3/-4", "a", "", "1e3", 0.5, None, True])
def test_as_rational_rejects_non_rationals(bad):
    with pytest.raises(InputError):
        as_rational(bad)


def test_gram_matrix_orthonormal_pair():
    assert gram_matrix([(1, 0), (0, 1)]) == ((F(1), F(0)), (F(0), F(1)))


def test_gram_matrix_empty():
    assert gram_matrix([]) == ()


def test_gram_matrix_direct_evaluation():
    # inner products computed directly: <(1,2),(1,2)>=5, <(1,2),(3,4)>=11, <(3,4),(3,4)>=25
    assert gram_matrix([(1, 2), (3, 4)]) == ((F(5), F(11)), (F(11), F(25)))


def test_gram_matrix_dimension_mismatch():
    with pytest.raises(InputError):
        gram_matrix([(1, 0), (0, 1, 2)])


def test_gram_determinant_examples():
    assert gram_determinant([(1, 0), (0, 1)]) == 1
    assert gram_determinant([(1, 1), (2, 2)]) == 0
    # 5*25 - 11*11
    assert gram_determinant([(1, 2), (3, 4)]) == 4


def test_gram_determinant_rational_entries():
    # det of the 1x1 Gram matrix [<v,v>] for v = (1/2, 1/3)
    assert gram_determinant([(F(1, 2), F(1, 3))]) == F(13, 36)


def test_rank_examples():
    assert rank([]) == 0
    assert rank([(1, 1), (2, 2)]) == 1
    # third row = second - first
    assert rank([(1, 0, 0), (1, 1, 0), (0, 1, 0)]) == 2


def test_rank_dimension_mismatch():
    with pytest.raises(InputError):
        rank([(1, 0), (1, 0, 0)])


def test_in_span_examples():
    assert in_span((2, 2), [(1, 1)])
    assert not in_span((1, 0), [(0, 1)])
    assert not in_span((1, 2, 3), [(1, 0, 0), (0, 1, 0)])
    assert in_span((0, 0), [])


def test_in_span_dimension_mismatch():
    with pytest.raises(InputError):
        in_span((1, 0), [(1, 0, 0)])


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def vector_lists(max_dim=5, max_count=5):
    return st.integers(min_value=1, max_value=max_dim).flatmap(
        lambda dim: st.lists(
            st.tuples(*[rationals] * dim), min_size=0, max_size=max_count
        )
    )


@settings(max_examples=120, deadline=None)
@given(vector_lists())
def test_gram_criterion_matches_rank(vectors):
    independent_by_gram = gram_determinant(vectors) != 0
    independent_by_rank = rank(vectors) == len(vectors)
    assert independent_by_gram == independent_by_rank


@settings(max_examples=100, deadline=None)
@given(vector_lists(), st.randoms(use_true_random=False))
def test_rank_invariant_under_permutation(vectors, rnd):
    shuffled = list(vectors)
    rnd.shuffle(shuffled)
    assert rank(shuffled) == rank(vectors)


@settings(max_examples=100, deadline=None)
@given(
    vector_lists().filter(bool),
    st.data(),
)
def test_rank_invariant_under_scaling_and_combinations(vectors, data):
    n = len(vectors)
    base = rank(vectors)
    i = data.draw(st.integers(min_value=0, max_value=n - 1))
    scale = data.draw(rationals.filter(lambda x: x != 0))
    scaled = list(vectors)
    scaled[i] = tuple(scale * c for c in scaled[i])
    assert rank(scaled) == base
    coeffs = data.draw(st.tuples(*[rationals] * n))
    dim = len(vectors[0])
    combo = tuple(
        sum((c * v[j] for c, v in zip(coeffs, vectors)), Fraction(0))
        for j in range(dim)
    )
    assert rank(list(vectors) + [combo]) == base


@settings(max_examples=100, deadline=None)
@given(vector_lists())
def test_rank_bounded_by_count_and_dimension(vectors):
    r = rank(vectors)
    assert r <= len(vectors)
    if vectors:
        assert r <= len(vectors[0])


@settings(max_examples=60, deadline=None)
@given(vector_lists(max_dim=4, max_count=4).filter(bool), st.tuples(*[rationals] * 4))
def test_in_span_stable_under_basis_rewrite(vectors, extra):
    # appending sums of existing vectors never changes the span
    dim = len(vectors[0])
    probe = tuple(extra[:dim])
    doubled = list(vectors) + [
        tuple(a + b for a, b in zip(vectors[0], vectors[-1]))
    ]
    assert in_span(probe, vectors) == in_span(probe, doubled)


def test_incremental_span_rollback_restores_rank():
    span = IncrementalSpan(3)
    assert span.add((F(1), F(0), F(0)))
    mark = span.mark()
    assert span.add((F(0), F(1), F(0)))
    assert span.add((F(0), F(0), F(1)))
    assert span.rank == 3
    span.rollback(mark)
    assert span.rank == 1
    assert span.includes((F(2), F(0), F(0)))
    assert not span.includes((F(0), F(1), F(0)))


def test_solve_linear_system_unique():
    solution = solve_linear_system([(2, 0), (0, 4)], [6, 2])
    assert solution == [F(3), F(1, 2)]


def test_solve_linear_system_redundant_but_consistent():
    solution = solve_linear_system([(1, 1), (2, 2)], [3, 6])
    assert solution is not None
    x, y = solution
    assert x + y == 3


def test_solve_linear_system_inconsistent():
    assert solve_linear_system([(1, 1), (2, 2)], [3, 7]) is None
