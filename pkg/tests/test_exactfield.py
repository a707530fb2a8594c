import random
from fractions import Fraction

import pytest

from cohh.exactfield import (
    CompositeCharacteristic,
    Field,
    ImageNotInKernel,
    SparseMatrix,
    echelonize,
    field_make,
    quotient_representatives,
    reduce_against,
    row_reduce,
    subquotient_dim,
)


def test_field_make():
    assert field_make(3).characteristic == 3
    assert field_make(0).characteristic == 0
    for bad in (4, 6, 1, 9, -2):
        with pytest.raises(CompositeCharacteristic):
            field_make(bad)


def test_scalar_canonicalization():
    f3 = Field(3)
    assert f3.scalar(7) == 1
    assert f3.scalar(-1) == 2
    q = Field(0)
    assert q.scalar(4) == Fraction(4)
    assert q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)


def test_modp_arithmetic_matches_integers():
    rng = random.Random(7)
    for p in (2, 3, 5, 7):
        fld = Field(p)
        for _ in range(250):
            a, b, c = (rng.randrange(-50, 50) for _ in range(3))
            ra, rb, rc = (fld.scalar(x) for x in (a, b, c))
            assert fld.add(ra, rb) == (a + b) % p
            assert fld.mul(ra, rb) == (a * b) % p
            assert fld.mul(ra, fld.add(rb, rc)) == (a * (b + c)) % p
            assert fld.add(fld.add(ra, rb), rc) == fld.add(ra, fld.add(rb, rc))


def test_inverse_and_division():
    f5 = Field(5)
    for a in range(1, 5):
        assert f5.mul(a, f5.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f5.inv(0)
    q = Field(0)
    assert q.div(Fraction(3), Fraction(4)) == Fraction(3, 4)


def test_from_triples_sums_and_drops_zeros():
    f3 = Field(3)
    m = SparseMatrix.from_triples(f3, 2, 2, [(0, 0, 1), (0, 0, 2), (1, 1, 5)])
    assert m.entries == {(1, 1): 2}
    with pytest.raises(IndexError):
        SparseMatrix.from_triples(f3, 1, 1, [(1, 0, 1)])


def test_compose_and_apply():
    f7 = Field(7)
    a = SparseMatrix.from_triples(f7, 2, 2, [(0, 0, 2), (1, 1, 3)])
    b = SparseMatrix.from_triples(f7, 2, 2, [(0, 1, 1), (1, 0, 4)])
    ab = a.compose(b)
    assert ab.entries == {(0, 1): 2, (1, 0): 5}
    assert a.apply([1, 1]) == [2, 3]


def test_row_reduce_identity_and_zero():
    f3 = Field(3)
    ident = SparseMatrix.identity(f3, 2)
    ech = row_reduce(ident)
    assert ech.rank == 2 and ech.kernel == []
    zero = SparseMatrix.zero(f3, 2, 2)
    ech = row_reduce(zero)
    assert ech.rank == 0
    assert ech.kernel == [[1, 0], [0, 1]]


def test_row_reduce_rank_one_over_f2():
    f2 = Field(2)
    m = SparseMatrix.from_triples(f2, 2, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
    ech = row_reduce(m)
    assert ech.rank == 1
    assert ech.kernel == [[1, 1]]


def test_row_reduce_random_rank_nullity_and_annihilation():
    rng = random.Random(11)
    for p in (2, 5, 0):
        fld = Field(p)
        for _ in range(40):
            rows, cols = rng.randrange(1, 6), rng.randrange(1, 6)
            triples = [
                (r, c, rng.randrange(-3, 4))
                for r in range(rows)
                for c in range(cols)
                if rng.random() < 0.5
            ]
            m = SparseMatrix.from_triples(fld, rows, cols, triples)
            ech = row_reduce(m)
            assert ech.rank + len(ech.kernel) == cols
            for vec in ech.kernel:
                assert all(fld.is_zero(x) for x in m.apply(vec))


def test_row_reduce_idempotent_on_rref():
    f5 = Field(5)
    m = SparseMatrix.from_triples(
        f5, 3, 4, [(0, 0, 2), (0, 2, 1), (1, 0, 1), (1, 1, 3), (2, 3, 4)]
    )
    first = row_reduce(m)
    again = SparseMatrix.from_triples(
        f5, len(first.rref), 4,
        [
            (r, c, v)
            for r, row in enumerate(first.rref)
            for c, v in enumerate(row)
            if v
        ],
    )
    second = row_reduce(again)
    assert second.rref == first.rref
    assert second.pivots == first.pivots


def test_subquotient_dim_examples():
    f3 = Field(3)
    one, zero = f3.one, f3.zero
    e1, e2 = [one, zero], [zero, one]
    assert subquotient_dim(f3, [e1, e2], [e1]) == 1
    assert subquotient_dim(f3, [e1], []) == 1
    # kernel {e1+e2, e2}, image {e1+2e2}: both spans echelonize to dims 2 and 1
    assert subquotient_dim(f3, [[1, 1], [0, 1]], [[1, 2]]) == 1


def test_subquotient_rejects_image_outside_kernel():
    f3 = Field(3)
    with pytest.raises(ImageNotInKernel):
        subquotient_dim(f3, [[1, 0]], [[0, 1]])


def test_echelonize_and_reduce_against():
    f5 = Field(5)
    rank, pivots, rows = echelonize([[2, 4], [1, 2]], f5)
    assert rank == 1 and pivots == [0] and rows == [[1, 2]]
    rem = reduce_against([3, 1], rows, pivots, f5)
    assert rem == [0, 0] or any(x for x in rem)  # reduction is defined
    assert reduce_against([2, 4], rows, pivots, f5) == [0, 0]


def test_quotient_representatives():
    f5 = Field(5)
    kernel = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    image = [[1, 1, 0]]
    reps = quotient_representatives(f5, kernel, image)
    assert len(reps) == 2
    # together with the image they span the kernel
    rank, _, _ = echelonize(image + reps, f5)
    assert rank == 3
