"""Echelon forms, kernels, complements, lattice operations, enumeration."""

import random

import pytest

from rankweight.errors import AmbientMismatch, InfiniteField
from rankweight.fields import PrimeField, Rationals, BaseFieldDescriptor, make_tower
from rankweight.linalg import (
    Matrix,
    Subspace,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    invert,
    kernel,
    orthogonal_complement,
    rref_canonical,
    subspace_intersection,
    subspace_sum,
)

GF2 = PrimeField(2)
GF3 = PrimeField(3)
QQ = Rationals()
GF4 = make_tower(BaseFieldDescriptor(2), [1, 1, 1]).L
GF8 = make_tower(BaseFieldDescriptor(2), [1, 1, 0, 1]).L
GF9 = make_tower(BaseFieldDescriptor(3), [1, 0, 1]).L


def vecs(field, rows):
    return [[field.from_int(c) for c in row] for row in rows]


def test_rref_gf2():
    s = rref_canonical(Matrix(GF2, vecs(GF2, [[1, 1], [0, 1]])))
    assert s.rows == tuple(tuple(r) for r in vecs(GF2, [[1, 0], [0, 1]]))


def test_rref_zero_matrix():
    s = rref_canonical(Matrix(GF2, vecs(GF2, [[0, 0, 0]] * 3)))
    assert s.dim == 0 and s.ambient_dim == 3


def test_rref_rationals_scaling():
    s = rref_canonical(Matrix(QQ, vecs(QQ, [[2, 4]])))
    assert s.rows == tuple(tuple(r) for r in vecs(QQ, [[1, 2]]))


def test_rref_idempotent_and_preserves_rowspace():
    rng = random.Random(5)
    for field in (GF2, GF3, GF4, QQ):
        pool = list(field.elements()) if field.order else [field.from_int(i) for i in range(-4, 5)]
        for _ in range(50):
            n = rng.randint(1, 4)
            rows = [[rng.choice(pool) for _ in range(n)] for _ in range(rng.randint(1, 4))]
            s = rref_canonical(Matrix(field, rows, n))
            again = rref_canonical(Matrix(field, [list(r) for r in s.rows], n))
            assert again == s
            assert all(s.contains(r) for r in rows)
            assert all(Subspace.from_vectors(field, n, rows).contains(r) for r in s.rows)


def test_kernel_examples():
    s = kernel(Matrix(GF2, vecs(GF2, [[1, 1]])))
    assert s.rows == tuple(tuple(r) for r in vecs(GF2, [[1, 1]]))
    assert kernel(Matrix(GF2, vecs(GF2, [[1, 0], [0, 1]]))).dim == 0
    s = kernel(Matrix(QQ, vecs(QQ, [[1, 1, 0]])))
    assert s == Subspace.from_vectors(QQ, 3, vecs(QQ, [[1, -1, 0], [0, 0, 1]]))


def test_kernel_rank_nullity():
    rng = random.Random(17)
    for field in (GF2, GF3, QQ):
        pool = list(field.elements()) if field.order else [field.from_int(i) for i in range(-3, 4)]
        for _ in range(50):
            n = rng.randint(1, 5)
            m = Matrix(field, [[rng.choice(pool) for _ in range(n)] for _ in range(rng.randint(1, 4))], n)
            assert kernel(m).dim == n - rref_canonical(m).dim


def test_orthogonal_complement_examples():
    s = Subspace.from_vectors(GF2, 2, vecs(GF2, [[1, 1]]))
    assert orthogonal_complement(s) == s  # self-orthogonal in char 2
    assert orthogonal_complement(Subspace.full(GF2, 3)).dim == 0
    s = Subspace.from_vectors(QQ, 3, vecs(QQ, [[1, 0, 0]]))
    assert orthogonal_complement(s) == Subspace.from_vectors(QQ, 3, vecs(QQ, [[0, 1, 0], [0, 0, 1]]))


def test_complement_dimension_and_involution():
    rng = random.Random(23)
    for field in (GF2, GF3, GF4, QQ):
        pool = list(field.elements()) if field.order else [field.from_int(i) for i in range(-3, 4)]
        for _ in range(60):
            n = rng.randint(1, 4)
            s = Subspace.from_vectors(
                field, n, [[rng.choice(pool) for _ in range(n)] for _ in range(rng.randint(0, 4))]
            )
            comp = orthogonal_complement(s)
            assert s.dim + comp.dim == n
            assert orthogonal_complement(comp) == s


def test_sum_and_intersection_examples():
    e1 = Subspace.from_vectors(GF2, 2, vecs(GF2, [[1, 0]]))
    e2 = Subspace.from_vectors(GF2, 2, vecs(GF2, [[0, 1]]))
    assert subspace_sum(e1, e2) == Subspace.full(GF2, 2)
    assert subspace_sum(e1, e1) == e1
    s = subspace_sum(
        Subspace.from_vectors(GF2, 3, vecs(GF2, [[1, 1, 0]])),
        Subspace.from_vectors(GF2, 3, vecs(GF2, [[0, 1, 1]])),
    )
    assert s.dim == 2

    a = Subspace.from_vectors(GF2, 3, vecs(GF2, [[1, 0, 0], [0, 1, 0]]))
    b = Subspace.from_vectors(GF2, 3, vecs(GF2, [[0, 1, 0], [0, 0, 1]]))
    assert subspace_intersection(a, b) == Subspace.from_vectors(GF2, 3, vecs(GF2, [[0, 1, 0]]))
    assert subspace_intersection(a, Subspace.full(GF2, 3)) == a
    assert (
        subspace_intersection(
            Subspace.from_vectors(GF2, 2, vecs(GF2, [[1, 1]])),
            Subspace.from_vectors(GF2, 2, vecs(GF2, [[1, 0]])),
        ).dim
        == 0
    )


def test_dimension_formula_random_pairs():
    rng = random.Random(41)
    for field in (GF2, GF3, GF4, QQ):
        pool = list(field.elements()) if field.order else [field.from_int(i) for i in range(-3, 4)]
        for _ in range(1000):
            n = rng.randint(1, 4)
            mk = lambda: Subspace.from_vectors(
                field, n, [[rng.choice(pool) for _ in range(n)] for _ in range(rng.randint(0, 3))]
            )
            a, b = mk(), mk()
            total = subspace_sum(a, b)
            meet = subspace_intersection(a, b)
            assert total.dim + meet.dim == a.dim + b.dim
            assert total.contains_space(a) and total.contains_space(b)
            assert a.contains_space(meet) and b.contains_space(meet)


def test_contains():
    s = Subspace.from_vectors(GF2, 2, vecs(GF2, [[1, 1]]))
    assert contains(s, vecs(GF2, [[1, 1]])[0])
    assert not contains(s, vecs(GF2, [[1, 0]])[0])
    assert contains(s, vecs(GF2, [[0, 0]])[0])
    with pytest.raises(AmbientMismatch):
        contains(s, vecs(GF2, [[1, 0, 0]])[0])


def test_ambient_mismatch():
    a = Subspace.full(GF2, 2)
    b = Subspace.full(GF2, 3)
    with pytest.raises(AmbientMismatch):
        subspace_sum(a, b)
    with pytest.raises(AmbientMismatch):
        subspace_intersection(a, b)


def test_enumeration_counts_match_gaussian_binomials():
    for field in (GF2, GF3, GF4):
        q = field.order
        for n in range(1, 5):
            for r in range(0, n + 1):
                spaces = list(enumerate_subspaces(field, n, r))
                assert len(spaces) == gaussian_binomial(n, r, q)
                assert len(set(spaces)) == len(spaces)
                assert all(s.dim == r for s in spaces)


def test_enumeration_examples():
    assert len(list(enumerate_subspaces(GF2, 3, 1))) == 7
    assert len(list(enumerate_subspaces(GF4, 2, 2))) == 1
    assert len(list(enumerate_subspaces(GF4, 2, 1))) == 5
    with pytest.raises(InfiniteField):
        list(enumerate_subspaces(QQ, 2, 1))


def test_enumeration_census_against_echelon_profile_count():
    # independent census: sum over pivot profiles of q^(free positions)
    import itertools

    for field in (GF2, GF3, GF4):
        q = field.order
        for n in range(1, 5):
            for r in range(0, n + 1):
                total = 0
                for pivots in itertools.combinations(range(n), r):
                    free = sum(
                        1
                        for i in range(r)
                        for j in range(pivots[i] + 1, n)
                        if j not in pivots
                    )
                    total += q**free
                assert total == gaussian_binomial(n, r, q)


def test_gaussian_binomial_larger_fields():
    for q in (2, 3, 4, 8, 9):
        for n in range(0, 5):
            assert gaussian_binomial(n, 0, q) == 1
            assert gaussian_binomial(n, n, q) == 1
            if n >= 1:
                assert gaussian_binomial(n, 1, q) == (q**n - 1) // (q - 1)


def test_invert():
    m = Matrix(QQ, vecs(QQ, [[1, 2], [3, 4]]))
    inv = invert(m)
    assert inv.rows[0][0].payload == -2
    with pytest.raises(ValueError):
        invert(Matrix(QQ, vecs(QQ, [[1, 2], [2, 4]])))


def test_zero_dimensional_spaces_are_first_class():
    z = Subspace.zero(GF3, 3)
    full = Subspace.full(GF3, 3)
    assert subspace_sum(z, z) == z
    assert subspace_intersection(z, full) == z
    assert orthogonal_complement(z) == full
    assert z.contains([GF3.zero()] * 3)
