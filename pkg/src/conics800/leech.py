"""Minimal vectors of the Leech lattice, coordinatized over the Golay code.

Vectors live in Z^24 with the inner product <x, y> = (x . y) / 8, so a
raw dot product of 32 means norm 4. The 196560 norm-4 vectors come in
three shapes, each parametrized by Golay data:

  * shape31: one entry -3s, the rest +-1; signs +1 exactly on a
    codeword o, and the special position k flips sign (so it carries
    -3 when k is in o, +3 when it is not). 4096 x 24 = 98304 vectors.
  * shape20: +-2 on the eight positions of an octad, zero elsewhere,
    with an even number of +2 entries. 759 x 2^7 = 97152 vectors.
  * shape40: +-4 on two positions, zero elsewhere. C(24,2) x 4 = 1104.

Enumeration order is fixed: shape31 by (codeword mask ascending, special
position ascending), shape20 by (octad mask ascending, sign index 0..127
over the seven smallest positions, last sign forced by parity), shape40
by (position pair lexicographic, signs (+,+), (+,-), (-,+), (-,-)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import exact
from .errors import ConstructionError, VerificationError
from .golay import GolayCode, positions_of

RAW_NORM = 32
TRUE_NORM = 4

SHAPE31_COUNT = 98304
SHAPE20_COUNT = 97152
SHAPE40_COUNT = 1104
MINIMAL_COUNT = 196560

# Raw basis determinant of the coordinate lattice: true Gram has det 1
# at scale 1/8, so |det B|^2 = 8^24.
RAW_BASIS_DET = 8**12


def shape31_vectors(code: GolayCode) -> np.ndarray:
    """All 98304 shape31 vectors, int8, in canonical order."""
    words = np.array(code.words, dtype=np.uint32)
    bits = (words[:, None] >> np.arange(24, dtype=np.uint32)[None, :]) & 1
    signs = np.where(bits == 1, 1, -1).astype(np.int8)  # +1 on the codeword
    out = np.repeat(signs, 24, axis=0)
    rows = np.arange(len(words) * 24)
    cols = np.tile(np.arange(24), len(words))
    out[rows, cols] = -3 * out[rows, cols]  # the special position carries -3 * sign
    return out


def shape20_vectors(code: GolayCode) -> np.ndarray:
    """All 97152 shape20 vectors, int8, in canonical order."""
    octads = sorted(code.octads)
    out = np.zeros((len(octads) * 128, 24), dtype=np.int8)
    g = np.arange(128, dtype=np.uint8)
    head = np.where((g[:, None] >> np.arange(7, dtype=np.uint8)[None, :]) & 1 == 1, -2, 2).astype(
        np.int8
    )
    plus_head = (head == 2).sum(axis=1)
    last = np.where(plus_head % 2 == 1, 2, -2).astype(np.int8)  # force even +2 count
    block = np.concatenate([head, last[:, None]], axis=1)
    for i, o in enumerate(octads):
        pos = [p - 1 for p in positions_of(o)]
        out[i * 128 : (i + 1) * 128, pos] = block
    return out


def shape40_vectors() -> np.ndarray:
    """All 1104 shape40 vectors, int8, in canonical order."""
    out = np.zeros((1104, 24), dtype=np.int8)
    r = 0
    for i, j in combinations(range(24), 2):
        for si, sj in ((4, 4), (4, -4), (-4, 4), (-4, -4)):
            out[r, i] = si
            out[r, j] = sj
            r += 1
    return out


def all_minimal_vectors(code: GolayCode) -> np.ndarray:
    """The 196560 minimal vectors: shape31 block, then shape20, then shape40."""
    return np.concatenate([shape31_vectors(code), shape20_vectors(code), shape40_vectors()])


def inner_raw(x, y) -> int:
    return int(np.asarray(x, dtype=np.int64) @ np.asarray(y, dtype=np.int64))


def inner_true(x, y) -> Fraction:
    return Fraction(inner_raw(x, y), 8)


@dataclass(frozen=True)
class MinimalVectorCensus:
    total: int
    shape_counts: tuple[int, int, int]
    all_norm_32: bool
    distinct: bool
    negation_closed: bool

    @property
    def ok(self) -> bool:
        return (
            self.total == MINIMAL_COUNT
            and self.shape_counts == (SHAPE31_COUNT, SHAPE20_COUNT, SHAPE40_COUNT)
            and self.all_norm_32
            and self.distinct
            and self.negation_closed
        )


def _row_view(arr: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(arr)
    return a.view([("", a.dtype)] * a.shape[1]).ravel()


def census(code: GolayCode) -> tuple[np.ndarray, MinimalVectorCensus]:
    """Enumerate all minimal vectors and check the census invariants."""
    s31 = shape31_vectors(code)
    s20 = shape20_vectors(code)
    s40 = shape40_vectors()
    vectors = np.concatenate([s31, s20, s40])
    wide = vectors.astype(np.int64)
    norms_ok = bool(((wide * wide).sum(axis=1) == RAW_NORM).all())
    view = _row_view(vectors)
    order = np.argsort(view)
    sorted_view = view[order]
    distinct = bool((sorted_view[1:] != sorted_view[:-1]).all())
    neg_view = _row_view(-vectors)
    idx = np.searchsorted(sorted_view, neg_view)
    idx = np.clip(idx, 0, len(sorted_view) - 1)
    negation_closed = bool((sorted_view[idx] == neg_view).all())
    report = MinimalVectorCensus(
        total=len(vectors),
        shape_counts=(len(s31), len(s20), len(s40)),
        all_norm_32=norms_ok,
        distinct=distinct,
        negation_closed=negation_closed,
    )
    return vectors, report


def _reduce_chunk_against_hnf(chunk: np.ndarray, hnf_rows: list[list[int]]) -> np.ndarray:
    """Boolean mask of chunk rows lying in the integer row span of hnf_rows.

    hnf_rows must be a row HNF (pivot entries positive, ascending pivot
    columns). Entries stay far below int64 limits: pivots here are <= 8
    and reduced entries are bounded by the pivot, so quotients and
    updates stay small.
    """
    work = chunk.astype(np.int64).copy()
    ok = np.ones(len(work), dtype=bool)
    for row in hnf_rows:
        c = next(j for j, v in enumerate(row) if v)
        pivot = row[c]
        q, r = np.divmod(work[:, c], pivot)
        ok &= r == 0
        rv = np.array(row, dtype=np.int64)
        work -= q[:, None] * rv[None, :]
        work[~ok] = 0  # stop tracking failed rows
    ok &= (work == 0).all(axis=1)
    return ok


def _hnf_pivot_product(hnf_rows: list[list[int]]) -> int:
    prod = 1
    for row in hnf_rows:
        prod *= next(v for v in row if v)
    return prod


def _span_is_full(rows: list[list[int]]) -> bool:
    h: list[list[int]] = []
    for r in rows:
        h = exact.hnf_insert(h, r)
    return len(h) == 24 and _hnf_pivot_product(h) == RAW_BASIS_DET


def extract_basis(vectors: np.ndarray) -> tuple[list[np.ndarray], bool]:
    """Greedily pick minimal vectors whose integer span is the whole lattice.

    Returns (basis_vectors, is_subset): 24 vectors and True when a
    pruned subset of the input achieves covolume 8^12, otherwise the
    HNF rows of the full span and False.
    """
    chosen: list[list[int]] = []
    hnf_rows: list[list[int]] = []
    n = len(vectors)
    chunk_size = 4096
    pos = 0
    while pos < n:
        chunk = vectors[pos : pos + chunk_size]
        if hnf_rows:
            member = _reduce_chunk_against_hnf(chunk, hnf_rows)
        else:
            member = (chunk == 0).all(axis=1)
        new_idx = np.flatnonzero(~member)
        if len(new_idx) == 0:
            pos += chunk_size
            continue
        v = [int(x) for x in chunk[new_idx[0]]]
        chosen.append(v)
        hnf_rows = exact.hnf_insert(hnf_rows, v)
        pos += int(new_idx[0]) + 1  # re-scan the rest of this chunk with the new span
        if len(hnf_rows) == 24 and _hnf_pivot_product(hnf_rows) == RAW_BASIS_DET:
            break
    if len(hnf_rows) != 24 or _hnf_pivot_product(hnf_rows) != RAW_BASIS_DET:
        raise ConstructionError("leech: minimal vectors did not span the lattice")
    # Prune: drop vectors whose removal keeps the full span. Later picks
    # are index refiners and tend to be redundant once their successors
    # are in, so sweep from the end first, then forward, until stable.
    changed = True
    while len(chosen) > 24 and changed:
        changed = False
        for order in (range(len(chosen) - 1, -1, -1), range(len(chosen))):
            for i in order:
                if len(chosen) == 24:
                    break
                if i >= len(chosen):
                    continue
                trial = chosen[:i] + chosen[i + 1 :]
                if _span_is_full(trial):
                    chosen = trial
                    changed = True
    if len(chosen) == 24:
        return [np.array(v, dtype=np.int64) for v in chosen], True
    return [np.array(r, dtype=np.int64) for r in hnf_rows], False


def basis_gram_true(basis: list[np.ndarray]) -> list[list[Fraction]]:
    b = np.array(basis, dtype=np.int64)
    raw = b @ b.T
    return [[Fraction(int(raw[i, j]), 8) for j in range(len(basis))] for i in range(len(basis))]


def validate_basis(basis: list[np.ndarray]) -> None:
    """Check: 24 vectors, integral even Gram at scale 1/8, determinant 1."""
    if len(basis) != 24:
        raise VerificationError(f"leech basis: expected 24 vectors, got {len(basis)}")
    gram = basis_gram_true(basis)
    for i in range(24):
        for j in range(24):
            if gram[i][j].denominator != 1:
                raise VerificationError("leech basis: Gram is not integral")
        if gram[i][i].numerator % 2:
            raise VerificationError("leech basis: Gram diagonal is not even")
    g_int = [[int(x) for x in row] for row in gram]
    d = exact.det_bareiss(g_int)
    if d != 1:
        raise VerificationError(f"leech basis: Gram determinant {d} != 1")
