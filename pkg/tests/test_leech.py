"""Tests for minimal-vector enumeration and basis extraction."""

import numpy as np

from conics800 import exact, golay, leech
from conics800.lattices import membership_mask


def test_census_counts_and_invariants(code):
    vectors, cen = leech.census(code)
    assert cen.total == 196560
    assert cen.shape_counts == (98304, 97152, 1104)
    assert cen.all_norm_32
    assert cen.distinct
    assert cen.negation_closed
    assert cen.ok


def test_shape31_structure(code, vectors):
    block = vectors[: leech.SHAPE31_COUNT].astype(np.int64)
    # exactly one entry of magnitude 3, twenty-three of magnitude 1
    sorted_abs = np.sort(np.abs(block), axis=1)
    assert (sorted_abs[:, :23] == 1).all()
    assert (sorted_abs[:, 23] == 3).all()
    # sign vectors (with the special position flipped) are codewords
    k = np.argmax(np.abs(block) == 3, axis=1)
    signs = block.copy()
    rows = np.arange(len(block))
    signs[rows, k] = -signs[rows, k] // 3
    masks = ((signs == 1).astype(np.uint32) << np.arange(24, dtype=np.uint32)).sum(axis=1)
    sample = np.random.default_rng(9).choice(len(block), 500, replace=False)
    for i in sample:
        assert int(masks[i]) in code


def test_shape20_structure(code, vectors):
    start = leech.SHAPE31_COUNT
    block = vectors[start : start + leech.SHAPE20_COUNT].astype(np.int64)
    support = (block != 0)
    assert (support.sum(axis=1) == 8).all()
    assert (np.abs(block[support]) == 2).all()
    # support octads are codewords; +2 counts are even
    masks = (support.astype(np.uint32) << np.arange(24, dtype=np.uint32)).sum(axis=1)
    plus = (block == 2).sum(axis=1)
    assert (plus % 2 == 0).all()
    sample = np.random.default_rng(10).choice(len(block), 500, replace=False)
    for i in sample:
        assert int(masks[i]) in code


def test_shape40_structure(vectors):
    block = vectors[leech.SHAPE31_COUNT + leech.SHAPE20_COUNT :].astype(np.int64)
    assert len(block) == 1104
    support = block != 0
    assert (support.sum(axis=1) == 2).all()
    assert (np.abs(block[support]) == 4).all()


def test_inner_products(vectors):
    a = vectors[0].astype(np.int64)
    assert leech.inner_raw(a, a) == 32
    assert leech.inner_true(a, a) == 4


def test_extract_basis_is_unimodular_subset(vectors, basis):
    assert len(basis) == 24
    vec_set = {tuple(int(x) for x in row) for row in vectors.tolist()}
    for row in basis:
        assert tuple(row) in vec_set
    gram = [[x // 8 for x in row] for row in exact.mat_mul(basis, exact.transpose(basis))]
    assert exact.det_bareiss(gram) == 1
    assert all(gram[i][i] % 2 == 0 for i in range(24))


def test_all_vectors_lie_in_basis_span(vectors, basis):
    hnf_rows = exact.nonzero_rows(exact.hnf([list(r) for r in basis]))
    assert membership_mask(vectors, hnf_rows).all()


def test_raw_determinant_scale(basis):
    raw_det = exact.det_bareiss([list(r) for r in basis])
    assert abs(raw_det) == leech.RAW_BASIS_DET
    assert leech.RAW_BASIS_DET == 8 ** 12


def test_enumeration_is_deterministic(code):
    v1 = leech.all_minimal_vectors(code)
    v2 = leech.all_minimal_vectors(code)
    assert np.array_equal(v1, v2)
