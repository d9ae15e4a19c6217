import itertools
import random

import pytest

from mvla import (BlowupError, ElementaryOp, Matrix, MatrixSet, StructureError,
                  all_matrices, det, elementary, find_inverse, is_inverse_pair,
                  madd, mmul, mneg, mprod, mscale, verify_multigroup)
from conftest import det_mod, mat_mul_mod


@pytest.fixture(scope="module")
def x2_triple(X2):
    A = Matrix.from_rows(X2, [(1, 1), (0, 1)])
    B = Matrix.from_rows(X2, [(-1, 1), (0, -1)])
    C = Matrix.from_rows(X2, [(2, 0), (-1, 2)])
    return A, B, C


def test_worked_sum_box(X2, x2_triple):
    A, B, _ = x2_triple
    box = madd(A, B)
    assert box.member_count == 9
    expected = {Matrix.from_rows(X2, [(a, 1), (0, d)])
                for a in (-1, 0, 1) for d in (-1, 0, 1)}
    assert set(box.members()) == expected


def test_worked_product_boxes(X2, x2_triple):
    A, B, C = x2_triple
    AB = mmul(A, B)
    assert set(AB.members()) == {Matrix.from_rows(X2, [(-1, m), (0, -1)])
                                 for m in (-1, 0, 1)}
    AC = mmul(A, C)
    assert set(AC.members()) == {Matrix.from_rows(X2, [(2, 2), (-1, 2)])}


def test_worked_nonassociativity(X2, x2_triple):
    A, B, C = x2_triple
    left = mmul(mmul(A, B), C)
    right = mmul(A, mmul(B, C))
    assert left.entry_set(0, 1) == {-2, 0, 2}
    assert right.entry_set(0, 1) == frozenset(X2.elements)
    assert left != right
    assert left.intersect(right) is not None  # proto-full keeps them overlapping


def test_identity_and_zero_laws_exhaustive_2x2(K, H3):
    for S in (K, H3):
        one = Matrix.identity(S, 2)
        zero = Matrix.zero(S, 2)
        zero_set = MatrixSet.of(zero)
        for A in all_matrices(S, 2, 2):
            assert mmul(A, one) == MatrixSet.of(A)
            assert mmul(one, A) == MatrixSet.of(A)
            assert mmul(A, zero) == zero_set
            assert mmul(zero, A) == zero_set
            assert madd(A, zero) == MatrixSet.of(A)


def test_identity_and_zero_laws_sampled_shapes(Q2, X2, H5):
    rng = random.Random(5)
    for S in (Q2, X2, H5):
        for rows in (1, 2, 3):
            for cols in (1, 2, 3):
                for _ in range(5):
                    entries = [rng.choice(S.elements) for _ in range(rows * cols)]
                    A = Matrix(S, rows, cols, entries)
                    assert mmul(A, Matrix.zero(S, cols, cols)).members() == \
                        (Matrix.zero(S, rows, cols),)
                    assert mmul(A, Matrix.identity(S, cols)) == MatrixSet.of(A)
                    assert mmul(Matrix.identity(S, rows), A) == MatrixSet.of(A)


def test_matrix_additive_multigroup_2x2_over_k(K):
    mats = list(all_matrices(K, 2, 2))
    rep = verify_multigroup(mats, lambda a, b: madd(a, b).members(),
                            lambda a: mneg(a).members()[0],
                            Matrix.zero(K, 2), subject="M2x2(K)")
    assert rep.passed


def test_matrix_additive_multigroup_1x2_over_q2(Q2):
    mats = list(all_matrices(Q2, 1, 2))
    rep = verify_multigroup(mats, lambda a, b: madd(a, b).members(),
                            lambda a: mneg(a).members()[0],
                            Matrix.zero(Q2, 1, 2), subject="M1x2(Q2)")
    assert rep.passed


def _dot_mask(S, row_masks, col_masks):
    from mvla.structures import msum_sets
    terms = [S.mul_masks(r, c) for r, c in zip(row_masks, col_masks)]
    return S.mask_of(msum_sets(S, terms))


def _distributivity_rowcol(S, equality):
    """Every product-box entry depends only on one row and two columns, so the
    2x2 law A(B+C) vs AB+AC reduces to all (row, col, col) triples."""
    els = [1 << S.index(e) for e in S.elements]
    for row in itertools.product(els, repeat=2):
        for colB in itertools.product(els, repeat=2):
            for colC in itertools.product(els, repeat=2):
                mixed = [S.add_masks(b, c) for b, c in zip(colB, colC)]
                left = _dot_mask(S, row, mixed)
                right = S.add_masks(_dot_mask(S, row, colB),
                                    _dot_mask(S, row, colC))
                if equality:
                    if left != right:
                        return False
                else:
                    if left & ~right:
                        return False
    return True


def test_left_distributivity_all_2x2(K, H3, X2):
    assert _distributivity_rowcol(K, equality=True)
    assert _distributivity_rowcol(H3, equality=True)
    assert _distributivity_rowcol(X2, equality=False)


def test_distributivity_direct_box_samples(H3, X2):
    rng = random.Random(9)
    for S, equality in ((H3, True), (X2, False)):
        for _ in range(60):
            A, B, C = (Matrix(S, 2, 2, [rng.choice(S.elements) for _ in range(4)])
                       for _ in range(3))
            left = mmul(A, madd(B, C))
            right_sets = madd(mmul(A, B), mmul(A, C))
            if equality:
                assert left == right_sets
            else:
                assert all(l <= r for l, r in
                           zip(left.entry_sets, right_sets.entry_sets))
            # the mirrored law (B+C)A within BA+CA
            left2 = mmul(madd(B, C), A)
            right2 = madd(mmul(B, A), mmul(C, A))
            assert all(l <= r for l, r in zip(left2.entry_sets, right2.entry_sets))


def test_associativity_setwise_over_h3_samples(H3):
    rng = random.Random(13)
    for _ in range(80):
        A, B, C = (Matrix(H3, 2, 2, [rng.choice(H3.elements) for _ in range(4)])
                   for _ in range(3))
        assert mmul(mmul(A, B), C) == mmul(A, mmul(B, C))


def test_proto_full_keeps_triple_products_overlapping(X2):
    rng = random.Random(17)
    for _ in range(40):
        A, B, C = (Matrix(X2, 2, 2, [rng.choice(X2.elements) for _ in range(4)])
                   for _ in range(3))
        left = mmul(mmul(A, B), C)
        right = mmul(A, mmul(B, C))
        assert left.intersect(right) is not None


def test_det_examples(K, H3):
    assert det(Matrix.from_rows(K, [(1, 1), (1, 1)])) == {0, 1}
    for a, b, d in itertools.product(H3.elements, repeat=3):
        A = Matrix.from_rows(H3, [(a, b), (0, d)])
        assert det(A) == mprod(H3, [a, d])
    assert det(Matrix.from_rows(H3, [(0, 0), (1, 2)])) == {0}
    assert det(Matrix.from_rows(H3, [(1, 0), (2, 0)])) == {0}  # zero column


def test_det_scaling_laws(Q2, H3):
    for A in all_matrices(Q2, 2, 2):
        dA = det(A)
        for lam in Q2.elements:
            left = det(mscale(lam, A))
            lam2 = mprod(Q2, [lam, lam])
            right = frozenset()
            for l2 in lam2:
                right |= Q2.set_of(Q2.mul_masks(1 << Q2.index(l2), Q2.mask_of(dA)))
            assert left <= right
    rng = random.Random(23)
    for _ in range(40):
        A = Matrix(H3, 2, 2, [rng.choice(H3.elements) for _ in range(4)])
        for lam in H3.elements:
            left = det(mscale(lam, A))
            (l2,) = mprod(H3, [lam, lam])
            right = H3.set_of(H3.mul_masks(1 << H3.index(l2), H3.mask_of(det(A))))
            assert left == right


def test_det_over_matrix_set_unions_members(X2, x2_triple):
    A, B, _ = x2_triple
    box = madd(A, B)
    expected = frozenset()
    for M in box.members():
        expected |= det(M)
    assert det(box) == expected


def test_det_guards(H3):
    with pytest.raises(StructureError):
        det(Matrix.zero(H3, 2, 3))
    with pytest.raises(BlowupError):
        det(Matrix.identity(H3, 7))


def test_elementary_operations(H3, Q2):
    A = Matrix.from_rows(H3, [(1, 2), (0, 1)])
    sw = elementary(ElementaryOp.swap(0, 1), A)
    assert elementary(ElementaryOp.swap(0, 1), sw) == MatrixSet.of(A)
    assert elementary(ElementaryOp.scale(0, H3.one), A) == MatrixSet.of(A)
    with pytest.raises(StructureError):
        elementary(ElementaryOp.scale(0, H3.zero), A)
    col = Matrix.from_rows(Q2, [(1,), (-1,)])
    added = elementary(ElementaryOp.add(0, 1), col)
    assert set(added.members()) == {Matrix.from_rows(Q2, [(v,), (-1,)])
                                    for v in (-1, 0, 1)}


def test_find_inverse_examples(H3):
    I2 = Matrix.identity(H3, 2)
    assert find_inverse(I2) == I2
    A = Matrix.from_rows(H3, [(1, 2), (0, 1)])
    B = find_inverse(A)
    assert B is not None and is_inverse_pair(A, B)
    assert find_inverse(Matrix.from_rows(H3, [(0, 2), (0, 1)])) is None
    # a non-triangular invertible matrix goes through the general search
    P = Matrix.from_rows(H3, [(0, 1), (1, 0)])
    BP = find_inverse(P)
    assert BP is not None and is_inverse_pair(P, BP)


def test_find_inverse_guards(H3, X2):
    with pytest.raises(StructureError):
        find_inverse(Matrix.zero(H3, 2, 3))
    with pytest.raises(StructureError):
        find_inverse(Matrix.identity(X2, 2))


def test_strict_field_matrix_ops_match_classical(F3):
    rng = random.Random(31)
    for _ in range(50):
        A = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        B = [[rng.randrange(3) for _ in range(2)] for _ in range(2)]
        MA = Matrix.from_rows(F3, A)
        MB = Matrix.from_rows(F3, B)
        got = mmul(MA, MB).members()
        assert len(got) == 1
        assert got[0].row(0) == mat_mul_mod(A, B, 3)[0]
        assert det(MA) == {det_mod(A, 3)}
        s = madd(MA, MB).members()
        assert len(s) == 1
        assert s[0].entries == tuple((a + b) % 3 for a, b in
                                     zip(MA.entries, MB.entries))
