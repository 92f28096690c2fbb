from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import rational_matrices, small_fraction
from eea.algebra import (
    EvolutionAlgebra,
    evolution_operator_apply,
    is_graphicable,
    is_nonsingular,
    is_symmetric,
    multiply,
    permute_basis,
    plenary_power,
    principal_power,
    rank,
    rescale_basis,
    support,
)
from eea.constructions import complete_algebra, cycle_algebra
from eea.errors import DimensionMismatchError, FieldMismatchError, ResourceCapError
from eea.fields import RATIONAL, REAL, prime_field


def triangle(field=RATIONAL):
    return complete_algebra(3, field)


class TestConstruction:
    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            EvolutionAlgebra([[1, 2, 3], [4, 5, 6]])

    def test_triplets_fill_zeros(self):
        A = EvolutionAlgebra.from_triplets(3, [(0, 1, "1/2"), (2, 2, 3)])
        assert A.entry(0, 1) == Fraction(1, 2)
        assert A.entry(2, 2) == 3
        assert A.entry(1, 0) == 0

    def test_triplet_out_of_range(self):
        with pytest.raises(DimensionMismatchError):
            EvolutionAlgebra.from_triplets(2, [(0, 2, 1)])

    def test_matrix_is_read_only(self):
        A = cycle_algebra(4)
        with pytest.raises(ValueError):
            A.matrix[0, 0] = 5

    def test_prime_field_reduces_entries(self):
        A = EvolutionAlgebra([[3, 5], [-1, 0]], prime_field(3))
        assert A.matrix.tolist() == [[0, 2], [2, 0]]

    def test_equality_ignores_name(self):
        assert cycle_algebra(5) == EvolutionAlgebra(cycle_algebra(5).matrix, name="other")


class TestProducts:
    def test_triangle_square(self):
        A = triangle()
        e0 = A.basis(0)
        assert list(multiply(A, e0, e0)) == [0, 1, 1]

    def test_distinct_basis_vectors_annihilate(self):
        A = triangle()
        assert multiply(A, A.basis(0), A.basis(1)) == A.zero_element()

    def test_triangle_plenary_matches_hand_expansion(self):
        A = triangle()
        # e0^[1] = e1 + e2; e0^[2] = e1^2 + e2^2 = 2e0 + e1 + e2
        assert list(plenary_power(A, A.basis(0), 1)) == [0, 1, 1]
        assert list(plenary_power(A, A.basis(0), 2)) == [2, 1, 1]

    def test_plenary_zero_is_identity(self):
        A = triangle()
        x = A.element([1, 2, 3])
        assert plenary_power(A, x, 0) == x

    def test_principal_power(self):
        A = triangle()
        x = A.element([1, 1, 0])
        assert principal_power(A, x, 1) == x
        assert principal_power(A, x, 2) == multiply(A, x, x)
        assert principal_power(A, x, 3) == multiply(A, multiply(A, x, x), x)

    def test_plenary_bit_cap(self):
        A = EvolutionAlgebra([[3]])
        with pytest.raises(ResourceCapError):
            plenary_power(A, A.basis(0), 12, max_bits=100)

    def test_evolution_operator_is_linear_not_squaring(self):
        A = triangle()
        x = A.element([2, 0, 0])
        assert list(evolution_operator_apply(A, x)) == [0, 2, 2]
        assert list(multiply(A, x, x)) == [0, 4, 4]

    def test_field_mismatch(self):
        A = triangle()
        B = triangle(prime_field(5))
        with pytest.raises(FieldMismatchError):
            multiply(A, A.basis(0), B.basis(0))

    def test_operators(self):
        A = triangle()
        x, y = A.basis(0), A.basis(1)
        assert (x * y) == A.zero_element()
        assert list(2 * x + y - x) == [1, 1, 0]
        assert list(-x) == [-1, 0, 0]


class TestSupport:
    def test_exact_support(self):
        A = triangle()
        assert support(A, plenary_power(A, A.basis(0), 1)) == {1, 2}

    def test_mod_two_cancellation(self):
        A = triangle(prime_field(2))
        assert support(A, plenary_power(A, A.basis(0), 2)) == {1, 2}

    def test_real_relative_tolerance(self):
        A = EvolutionAlgebra([[1.0, 0.0], [0.0, 1.0]], REAL)
        x = A.element([1.0, 1e-14])
        assert support(A, x) == {0}


class TestPredicates:
    def test_symmetry(self):
        assert is_symmetric(cycle_algebra(5))
        assert not is_symmetric(EvolutionAlgebra([[0, 1], [0, 0]]))
        assert is_symmetric(EvolutionAlgebra([[7]]))

    def test_graphicable(self):
        assert is_graphicable(cycle_algebra(5))
        assert is_graphicable(complete_algebra(4))
        assert not is_graphicable(EvolutionAlgebra([[0, "1/3"], ["1/3", 0]]))
        assert not is_graphicable(EvolutionAlgebra([[1, 1], [1, 0]]))
        assert is_graphicable(EvolutionAlgebra([[1, 1], [1, 0]]), allow_loops=True)

    def test_rank_examples(self):
        assert is_nonsingular(complete_algebra(3))
        assert not is_nonsingular(EvolutionAlgebra([[0, 0], [0, 0]]))
        assert is_nonsingular(EvolutionAlgebra(np.eye(4, dtype=int).tolist()))
        assert rank(EvolutionAlgebra([[1, 2], [2, 4]])) == 1
        assert rank(EvolutionAlgebra([[1, 2], [2, 4]], REAL)) == 1
        assert rank(EvolutionAlgebra([[1, 1], [1, 1]], prime_field(3))) == 1
        assert rank(EvolutionAlgebra([[1, 2], [2, 1]], prime_field(3))) == 1


class TestBasisChange:
    def test_identity_rescale(self):
        A = cycle_algebra(5)
        assert rescale_basis(A, [1] * 5) == A

    def test_rescale_formula_on_triangle(self):
        A = rescale_basis(cycle_algebra(3), [1, 2, 1])
        # a'_ij = a_ij * l_j / l_i^2
        assert A.entry(0, 1) == 2
        assert A.entry(2, 1) == 2
        assert A.entry(1, 0) == Fraction(1, 4)
        assert A.entry(1, 2) == Fraction(1, 4)
        assert A.entry(0, 2) == 1

    def test_rescale_rejects_zero(self):
        with pytest.raises(ValueError):
            rescale_basis(cycle_algebra(3), [1, 0, 1])

    def test_rotation_preserves_cycle(self):
        A = cycle_algebra(3)
        assert permute_basis(A, [1, 2, 0]) == A

    def test_transposition_transports_entries(self):
        A = EvolutionAlgebra([[0, 5, 0], [0, 0, 7], [0, 0, 0]])
        B = permute_basis(A, [1, 0, 2])
        assert B.entry(1, 0) == 5 and B.entry(0, 2) == 7

    def test_bad_permutation(self):
        with pytest.raises(ValueError):
            permute_basis(cycle_algebra(3), [0, 0, 1])


def _vec(n, draw_list):
    return [Fraction(v) for v in draw_list[:n]] + [Fraction(0)] * (n - len(draw_list))


vectors = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=6, max_size=6)


@given(rational_matrices(max_n=6), vectors, vectors)
def test_commutativity(M, xs, ys):
    A = EvolutionAlgebra(M)
    x, y = A.element(_vec(A.n, xs)), A.element(_vec(A.n, ys))
    assert multiply(A, x, y) == multiply(A, y, x)


@given(rational_matrices(max_n=6), vectors, vectors, vectors)
def test_bilinearity(M, xs, x2s, ys):
    A = EvolutionAlgebra(M)
    x, x2, y = (A.element(_vec(A.n, v)) for v in (xs, x2s, ys))
    assert multiply(A, x + x2, y) == multiply(A, x, y) + multiply(A, x2, y)


@given(rational_matrices(max_n=6), vectors, vectors)
def test_product_matches_naive_oracle(M, xs, ys):
    A = EvolutionAlgebra(M)
    x, y = _vec(A.n, xs), _vec(A.n, ys)
    assert list(multiply(A, A.element(x), A.element(y))) == oracles.naive_product(M, x, y)


def _squaring_law_sides(M, alpha, k):
    lhs = oracles.naive_plenary(M, alpha, k)
    rhs = [Fraction(0)] * len(M)
    for i, a in enumerate(alpha):
        ei = oracles.naive_plenary(M, [Fraction(int(j == i)) for j in range(len(M))], k)
        rhs = [r + a ** (2**k) * v for r, v in zip(rhs, ei)]
    return lhs, rhs


@given(rational_matrices(max_n=6), vectors, st.integers(0, 4))
def test_plenary_matches_naive_oracle(M, xs, k):
    A = EvolutionAlgebra(M)
    alpha = _vec(A.n, xs)
    assert list(plenary_power(A, A.element(alpha), k)) == oracles.naive_plenary(M, alpha, k)


@given(rational_matrices(max_n=6), vectors, st.integers(0, 1))
def test_coefficient_squaring_law_one_step(M, xs, k):
    """x^[k] = sum_i alpha_i^(2^k) e_i^[k] for k <= 1, brute-forcing both sides."""
    lhs, rhs = _squaring_law_sides(M, _vec(len(M), xs), k)
    assert lhs == rhs


@given(rational_matrices(max_n=6), st.integers(0, 5), small_fraction, st.integers(0, 4))
def test_coefficient_squaring_law_single_generator(M, i, a, k):
    n = len(M)
    alpha = [Fraction(0)] * n
    alpha[i % n] = a
    lhs, rhs = _squaring_law_sides(M, alpha, k)
    assert lhs == rhs


def test_coefficient_squaring_law_breaks_at_two_steps():
    # e1^[1] and e2^[1] share e0 in their supports, so the cross term survives.
    M = [[Fraction(v) for v in row] for row in ([1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0])]
    alpha = [Fraction(v) for v in (0, 1, 1, 0)]
    lhs, rhs = _squaring_law_sides(M, alpha, 3)
    assert lhs[0] == 4 and rhs[0] == 2
    A = EvolutionAlgebra(M)
    assert list(plenary_power(A, A.element(alpha), 3)) == lhs


@given(rational_matrices(max_n=6), st.data())
def test_rescale_preserves_pattern(M, data):
    A = EvolutionAlgebra(M)
    lam = data.draw(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool), min_size=A.n, max_size=A.n))
    B = rescale_basis(A, lam)
    assert np.array_equal(A.nonzero_mask, B.nonzero_mask)


@given(rational_matrices(max_n=6), st.data())
def test_permute_conjugates_pattern(M, data):
    A = EvolutionAlgebra(M)
    sigma = data.draw(st.permutations(range(A.n)))
    B = permute_basis(A, sigma)
    for i in range(A.n):
        for j in range(A.n):
            assert B.entry(sigma[i], sigma[j]) == A.entry(i, j)


@given(rational_matrices(max_n=6), st.integers(0, 3))
def test_prime_plenary_is_reduction_of_rational(M, k):
    p = 7
    dens = [v.denominator for row in M for v in row]
    if any(d % p == 0 for d in dens):
        return
    A = EvolutionAlgebra(M)
    B = EvolutionAlgebra(M, prime_field(p))
    x = plenary_power(A, A.basis(0), k)
    y = plenary_power(B, B.basis(0), k)
    assert [prime_field(p).coerce(v) for v in x] == list(y)
