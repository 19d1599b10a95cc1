import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilqp import (
    ExactMatrix,
    Subspace,
    conjugate_vector,
    kernel_basis,
    rref_rank,
    subspace_sum_intersect,
)
from nilqp.errors import AmbientMismatch, NotInvolution
from nilqp.scalars import Gaussian, Rational

from oracles import frac_rank


def M(rows, cols=None):
    return ExactMatrix(rows, cols=cols)


def test_rref_identity():
    red, rank = rref_rank(ExactMatrix.identity(2))
    assert rank == 2
    assert red == ExactMatrix.identity(2)


def test_rref_proportional_rows():
    red, rank = rref_rank(M([[1, 2], [2, 4]]))
    assert rank == 1
    assert red == M([[1, 2], [0, 0]])


def test_rref_input_unchanged():
    m = M([[1, 2], [2, 4]])
    rref_rank(m)
    assert m == M([[1, 2], [2, 4]])


def test_kernel_of_zero_and_identity():
    assert kernel_basis(ExactMatrix.zeros(3, 3)).dim == 3
    assert kernel_basis(ExactMatrix.identity(4)).dim == 0


def test_kernel_dimension_formula():
    m = M([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    red, rank = rref_rank(m)
    k = kernel_basis(m)
    assert k.dim + rank == m.cols
    for v in k.vectors():
        assert all(not x for x in m.matvec(v))


def test_sum_intersect_equal_subspaces():
    a = Subspace.from_spanning([[1, 0, 0], [0, 1, 0]], ambient_dim=3)
    s, i = subspace_sum_intersect(a, a)
    assert s == a and i == a


def test_sum_intersect_complementary_planes():
    a = Subspace.from_spanning([[1, 0, 0, 0], [0, 1, 0, 0]], ambient_dim=4)
    b = Subspace.from_spanning([[0, 0, 1, 0], [0, 0, 0, 1]], ambient_dim=4)
    s, i = subspace_sum_intersect(a, b)
    assert s == Subspace.full(4)
    assert i.dim == 0


def test_sum_intersect_skew_lines():
    a = Subspace.from_spanning([[1, 1]], ambient_dim=2)
    b = Subspace.from_spanning([[0, 1]], ambient_dim=2)
    s, i = subspace_sum_intersect(a, b)
    assert s == Subspace.full(2)
    assert i.dim == 0


def test_sum_intersect_dimension_formula(rng):
    for _ in range(25):
        n = rng.randrange(1, 6)
        va = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(rng.randrange(0, n + 1))]
        vb = [[rng.randrange(-3, 4) for _ in range(n)] for _ in range(rng.randrange(0, n + 1))]
        a = Subspace.from_spanning(va, ambient_dim=n)
        b = Subspace.from_spanning(vb, ambient_dim=n)
        s, i = subspace_sum_intersect(a, b)
        assert s.dim + i.dim == a.dim + b.dim
        assert i.is_subspace_of(a) and i.is_subspace_of(b)
        assert a.is_subspace_of(s) and b.is_subspace_of(s)


def test_sum_intersect_ambient_mismatch():
    a = Subspace.full(2)
    b = Subspace.full(3)
    with pytest.raises(AmbientMismatch):
        subspace_sum_intersect(a, b)


def test_subspace_canonical_equality():
    a = Subspace.from_spanning([[1, 1, 0], [0, 2, 2]], ambient_dim=3)
    b = Subspace.from_spanning([[2, 2, 0], [1, 3, 2], [1, -1, -2]], ambient_dim=3)
    assert a == b
    assert hash(a) == hash(b)
    assert a.basis == b.basis


def test_conjugate_vector_identity_structure():
    s = ExactMatrix.identity(2)
    i = Gaussian(0, 1)
    out = conjugate_vector((1 + i, Rational(2)), s)
    assert out == (Gaussian(1, -1), Gaussian(2, 0))


def test_conjugate_vector_swap_structure():
    s = M([[0, 1], [1, 0]])
    i = Gaussian(0, 1)
    out = conjugate_vector((1 + i, Rational(0)), s)
    assert out == (Gaussian(0, 0), Gaussian(1, -1))


def test_conjugate_vector_is_involution(rng):
    s = M([[0, 1], [1, 0]])
    for _ in range(10):
        v = tuple(
            Gaussian(rng.randrange(-3, 4), rng.randrange(-3, 4)) for _ in range(2)
        )
        assert conjugate_vector(conjugate_vector(v, s), s) == v


def test_conjugate_vector_antilinear():
    s = ExactMatrix.identity(2)
    i = Gaussian(0, 1)
    lam = Gaussian(2, 3)
    v = (1 + i, Rational(2))
    scaled = tuple(lam * x for x in v)
    expect = tuple(
        Gaussian(lam.re, -lam.im) * x for x in conjugate_vector(v, s)
    )
    assert conjugate_vector(scaled, s) == expect


def test_conjugate_vector_rejects_non_involution():
    s = M([[2, 0], [0, 1]])
    with pytest.raises(NotInvolution):
        conjugate_vector((Rational(1), Rational(1)), s)


entries = st.integers(min_value=-8, max_value=8)


@settings(max_examples=80, deadline=None)
@given(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda c: st.lists(
            st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=5
        )
    )
)
def test_rank_matches_oracle_and_transpose(rows):
    m = ExactMatrix(rows, cols=len(rows[0]))
    assert m.rank() == frac_rank(rows)
    assert m.rank() == m.transpose().rank()


def test_matmul_and_inverse():
    a = M([[1, 2], [3, 5]])
    inv = a.inverse()
    assert a.matmul(inv) == ExactMatrix.identity(2)
    with pytest.raises(ValueError):
        M([[1, 2], [2, 4]]).inverse()


def test_mixed_field_promotion():
    m = M([[1, Gaussian(0, 1)]])
    assert m.field == "Qi"
    assert all(isinstance(x, Gaussian) for x in m.entries[0])
