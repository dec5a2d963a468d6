from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffcode.cyclo import CycNum, ONE
from cliffcode.matrices import CycMatrix


def small_matrices(n=2, conductor=4):
    coeff = st.fractions(min_value=-2, max_value=2, max_denominator=2)
    entry = st.lists(st.tuples(st.integers(0, conductor - 1), coeff),
                     max_size=2).map(lambda t: CycNum.from_terms(conductor, t))
    return st.lists(entry, min_size=n * n, max_size=n * n).map(
        lambda vs: CycMatrix.from_dense([vs[i * n:(i + 1) * n] for i in range(n)]))


X = CycMatrix.from_dense([[0, 1], [1, 0]])
Z = CycMatrix.from_dense([[1, 0], [0, -1]])
I2 = CycMatrix.identity(2)


class TestAlgebra:
    def test_pauli_relations(self):
        assert X @ X == I2
        assert Z @ Z == I2
        assert (X @ Z) @ (X @ Z) == I2.scaled(-1)

    @given(a=small_matrices(), b=small_matrices())
    def test_product_matches_numpy(self, a, b):
        assert np.allclose((a @ b).embed(), a.embed() @ b.embed(), atol=1e-9)

    @given(a=small_matrices(), b=small_matrices())
    def test_sum_matches_numpy(self, a, b):
        assert np.allclose((a + b).embed(), a.embed() + b.embed(), atol=1e-9)

    @given(a=small_matrices())
    def test_dagger_is_conjugate_transpose(self, a):
        assert np.allclose(a.dagger().embed(), a.embed().conj().T, atol=1e-12)

    @given(a=small_matrices(), b=small_matrices())
    def test_trace_product_shortcut(self, a, b):
        assert a.trace_product(b) == (a @ b).trace()

    def test_kron(self):
        xz = X.kron(Z)
        assert np.allclose(xz.embed(), np.kron(X.embed(), Z.embed()))


class TestPredicates:
    def test_scalar_detection(self):
        assert I2.scaled(CycNum.root_of_unity(4)).is_scalar() == CycNum.root_of_unity(4)
        assert X.is_scalar() is None
        assert CycMatrix.zeros(2).is_scalar() is not None

    def test_unitary(self):
        assert X.is_unitary()
        assert not (X + I2).is_unitary()

    def test_scalar_multiple_cross_test(self):
        half = I2.scaled(Fraction(1, 2))
        assert half.scalar_multiple_of(I2)
        assert CycMatrix.zeros(2).scalar_multiple_of(I2)  # lambda = 0
        assert not X.scalar_multiple_of(I2)
        assert not (X + I2).scalar_multiple_of(X)
        # support mismatch in the other direction
        assert not I2.scalar_multiple_of(X)

    def test_structural_equality_and_hash(self):
        a = CycMatrix.from_dense([[Fraction(1, 2), 0], [0, Fraction(1, 2)]])
        b = I2.scaled(Fraction(1, 2))
        assert a == b and hash(a) == hash(b)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        X @ CycMatrix.identity(3)
