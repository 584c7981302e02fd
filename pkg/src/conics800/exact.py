"""Exact integer and rational matrix algebra.

Everything here runs on Python's arbitrary-precision ints and
``fractions.Fraction``: Hermite/Smith normal forms with unimodular
transforms, fraction-free determinants, integer kernels and linear
solves, and exact signatures of symmetric forms. Intermediate entries
of the normal-form algorithms routinely exceed machine words even for
small inputs, so none of this goes through numpy.

Matrices are plain lists of rows; rows are lists of ``int`` (or
``Fraction`` where noted). All functions leave their inputs untouched.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

IntMatrix = list[list[int]]


def copy_matrix(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Copy to plain Python ints (numpy scalars would wrap silently)."""
    return [[int(x) for x in row] for row in m]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec_mul(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat_mul(v, a):
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def is_symmetric(m) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def _row_sub(m, i, k, q) -> None:
    """row_i -= q * row_k, in place."""
    if q:
        ri, rk = m[i], m[k]
        for j in range(len(ri)):
            ri[j] -= q * rk[j]


def _row_neg(m, i) -> None:
    m[i] = [-x for x in m[i]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with g = x*a + y*b and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _merge_row(pivots: dict, v: list[int], uv):
    """Fold row v into a pivot structure {col: [row, urow]}, in place.

    The pivot rows stay a (not necessarily above-reduced) echelon set.
    Returns the residual transform row when v reduces to zero, else None.
    Folding one row at a time against rows that are re-reduced between
    top-level calls keeps intermediate entries small; that is the whole
    point versus column-at-a-time elimination, which blows up.
    """
    n = len(v)
    c = 0
    while True:
        while c < n and v[c] == 0:
            c += 1
        if c == n:
            return uv if uv is not None else []
        if c in pivots:
            prow, pu = pivots[c]
            p = prow[c]
            q, rem = divmod(v[c], p)
            if rem == 0:
                for j in range(c, n):
                    v[j] -= q * prow[j]
                if uv is not None:
                    for j in range(len(uv)):
                        uv[j] -= q * pu[j]
            else:
                g, x, y = _xgcd(p, v[c])
                fp, fv = p // g, v[c] // g
                new_prow = [x * a + y * b for a, b in zip(prow, v)]
                new_v = [fp * b - fv * a for a, b in zip(prow, v)]
                if uv is not None:
                    new_pu = [x * a + y * b for a, b in zip(pu, uv)]
                    new_uv = [fp * b - fv * a for a, b in zip(pu, uv)]
                    pivots[c] = [new_prow, new_pu]
                    v, uv = new_v, new_uv
                else:
                    pivots[c] = [new_prow, None]
                    v = new_v
        else:
            if v[c] < 0:
                v = [-a for a in v]
                if uv is not None:
                    uv = [-a for a in uv]
            pivots[c] = [v, uv]
            return None


def _reduce_above(pivots: dict) -> list[int]:
    """Reduce entries above every pivot into [0, pivot); returns sorted cols."""
    cols = sorted(pivots)
    for idx, c in enumerate(cols):
        prow, pu = pivots[c]
        p = prow[c]
        for jdx in range(idx):
            jrow, ju = pivots[cols[jdx]]
            q = jrow[c] // p
            if q:
                for k in range(c, len(jrow)):
                    jrow[k] -= q * prow[k]
                if ju is not None:
                    for k in range(len(ju)):
                        ju[k] -= q * pu[k]
    return cols


def hnf(rows: Sequence[Sequence[int]], transform: bool = False):
    """Row Hermite normal form.

    Returns ``H`` with pivot rows first (positive pivots, entries above a
    pivot reduced into ``[0, pivot)``) and zero rows at the bottom. With
    ``transform=True`` also returns a unimodular ``U`` with ``U @ M == H``.
    """
    m = len(rows)
    pivots: dict = {}
    zero_us: list[list[int]] = []
    for i, row in enumerate(rows):
        uv = [1 if j == i else 0 for j in range(m)] if transform else None
        residue = _merge_row(pivots, [int(x) for x in row], uv)
        if residue is not None:
            zero_us.append(residue)
        _reduce_above(pivots)
    cols = sorted(pivots)
    n = len(rows[0]) if m else 0
    h = [list(pivots[c][0]) for c in cols] + [[0] * n for _ in zero_us]
    if transform:
        u = [list(pivots[c][1]) for c in cols] + [list(z) for z in zero_us]
        return h, u
    return h


def hnf_insert(hnf_rows: Sequence[Sequence[int]], v: Sequence[int]) -> IntMatrix:
    """Insert one row into a reduced row-HNF (nonzero rows only).

    Returns the new reduced HNF rows; the input list is not modified.
    """
    pivots: dict = {}
    for row in hnf_rows:
        c = next(j for j, x in enumerate(row) if x)
        pivots[c] = [[int(x) for x in row], None]
    _merge_row(pivots, [int(x) for x in v], None)
    cols = _reduce_above(pivots)
    return [pivots[c][0] for c in cols]


def nonzero_rows(m) -> IntMatrix:
    return [list(row) for row in m if any(row)]


def rank(m) -> int:
    return len(nonzero_rows(hnf(m)))


def kernel_left(m) -> IntMatrix:
    """Basis of ``{x integer row : x @ m == 0}``, HNF-canonical.

    The kernel of an integer matrix is saturated, so the returned basis
    spans a primitive sublattice of Z^rows.
    """
    h, u = hnf(m, transform=True)
    ker = [u[i] for i in range(len(h)) if not any(h[i])]
    return nonzero_rows(hnf(ker)) if ker else []


def _reduce_against_hnf(h, pivots, v, exact: bool):
    """Express v over the pivot rows of an HNF matrix.

    Returns (coeffs, ok): ``ok`` is False when v is not in the span
    (integer span for exact=True, rational span otherwise).
    """
    w = [x if isinstance(x, Fraction) else int(x) for x in v]
    coeffs = [Fraction(0)] * len(h)
    for i, c in pivots:
        if w[c] == 0:
            continue
        if exact:
            q, rem = divmod(w[c], h[i][c])
            if rem:
                return None, False
        else:
            q = Fraction(w[c], h[i][c])
        coeffs[i] = q
        for j in range(len(w)):
            w[j] -= q * h[i][j]
    if any(w):
        return None, False
    return coeffs, True


def _pivots_of(h) -> list[tuple[int, int]]:
    out = []
    for i, row in enumerate(h):
        c = next((j for j, x in enumerate(row) if x), None)
        if c is not None:
            out.append((i, c))
    return out


class LeftSolver:
    """Reusable integer solver for ``x @ m == v`` with ``m`` fixed.

    Computes the row HNF and its transform once; each solve is then a
    single reduction pass. Use this instead of repeated solve_left
    calls when solving many right-hand sides against one matrix.
    """

    def __init__(self, m):
        self._nrows = len(m)
        self._h, self._u = hnf(m, transform=True)
        self._pivots = _pivots_of(self._h)

    def solve(self, v):
        coeffs, ok = _reduce_against_hnf(self._h, self._pivots, v, exact=True)
        if not ok:
            return None
        x = [0] * self._nrows
        for i, q in enumerate(coeffs):
            if q:
                qi = int(q)
                for j in range(self._nrows):
                    x[j] += qi * self._u[i][j]
        return x


def solve_left(m, v):
    """Integer solution x of ``x @ m == v``, or None."""
    return LeftSolver(m).solve(v)


def solve_left_rational(m, v):
    """Rational solution x of ``x @ m == v``, or None if v is outside the row span."""
    h, u = hnf(m, transform=True)
    coeffs, ok = _reduce_against_hnf(h, _pivots_of(h), [Fraction(t) for t in v], exact=False)
    if not ok:
        return None
    x = [Fraction(0)] * len(m)
    for i, q in enumerate(coeffs):
        if q:
            for j in range(len(m)):
                x[j] += q * u[i][j]
    return x


def snf(m: Sequence[Sequence[int]]):
    """Smith normal form: (divisors, L, R) with ``L @ M @ R`` diagonal.

    Divisors are nonnegative with d1 | d2 | ...; L and R are unimodular.
    Diagonalizes by alternating row and column HNF passes (each keeps
    entries reduced, avoiding the coefficient blowup of naive scanning),
    then repairs divisibility with 2x2 unimodular blocks.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = copy_matrix(m)
    left = identity(rows)
    right = identity(cols)

    def is_diagonal():
        return all(
            a[i][j] == 0 for i in range(rows) for j in range(cols) if i != j
        )

    for _ in range(200):
        if is_diagonal():
            break
        h, u = hnf(a, transform=True)
        a = h
        left = mat_mul(u, left)
        if is_diagonal():
            break
        ht, ut = hnf(transpose(a), transform=True)
        a = transpose(ht)
        right = mat_mul(right, transpose(ut))
    else:
        raise ArithmeticError("Smith normal form did not converge")

    k = min(rows, cols)
    for i in range(k):
        if a[i][i] < 0:
            a[i][i] = -a[i][i]
            _row_neg(left, i)

    # Sort zeros to the end, then enforce d_i | d_j for i < j via the
    # unimodular block [[x, -dj/g], [y, di/g]] after folding row j in.
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                di, dj = a[i][i], a[j][j]
                if di == 0 and dj != 0:
                    a[i][i], a[j][j] = dj, di
                    left[i], left[j] = left[j], left[i]
                    for row in right:
                        row[i], row[j] = row[j], row[i]
                    changed = True
                elif di != 0 and dj % di:
                    g, x, y = _xgcd(di, dj)
                    _row_sub(left, i, j, -1)  # row i += row j
                    for row in right:  # columns (i, j) <- block combination
                        ci, cj = row[i], row[j]
                        row[i] = x * ci + y * cj
                        row[j] = (di // g) * cj - (dj // g) * ci
                    q = y * dj // g
                    _row_sub(left, j, i, q)  # clear the (j, i) remnant
                    a[i][i], a[j][j] = g, di // g * dj
                    changed = True
    divisors = [a[i][i] for i in range(k)]
    return divisors, left, right


def invariant_factors(m) -> tuple[int, ...]:
    """Nontrivial SNF divisors (those different from 1), zeros included."""
    divisors, _, _ = snf(m)
    return tuple(d for d in divisors if d != 1)


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_exact(m) -> Fraction:
    """Determinant of a matrix with int or Fraction entries."""
    n = len(m)
    scale = Fraction(1)
    scaled: IntMatrix = []
    for row in m:
        frow = [Fraction(x) for x in row]
        mult = 1
        for x in frow:
            mult = mult * x.denominator // _gcd(mult, x.denominator)
        scale *= mult
        scaled.append([int(x * mult) for x in frow])
    return Fraction(det_bareiss(scaled)) / scale


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def signature(gram) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a symmetric matrix, exactly.

    Works by rational congruence diagonalization; no floating point.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0 and a[j][k] != 0), None)
            if swap is None:
                other = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if other is None:
                    zero += 1
                    continue
                # Diagonal is zero but a[other][k] is not: fold row/col `other` in.
                for j in range(n):
                    a[k][j] += a[other][j]
                for i in range(n):
                    a[i][k] += a[i][other]
            else:
                a[k], a[swap] = a[swap], a[k]
                for row in a:
                    row[k], row[swap] = row[swap], row[k]
        pivot = a[k][k]
        if pivot == 0:
            zero += 1
            continue
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / pivot
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
    return pos, neg, zero


def write_matrix_text(path, m) -> None:
    """Plain-text matrix format: first line "rows cols", then entry rows.

    Rational entries are written as "p/q", integers bare.
    """
    lines = [f"{len(m)} {len(m[0]) if m else 0}"]
    for row in m:
        lines.append(" ".join(_format_entry(x) for x in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _format_entry(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def read_matrix_text(path):
    """Inverse of write_matrix_text; entries come back as int or Fraction."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split("\n")
    rows, cols = (int(t) for t in tokens[0].split())
    out = []
    for line in tokens[1 : rows + 1]:
        entries = []
        for tok in line.split():
            f = Fraction(tok)
            entries.append(int(f) if f.denominator == 1 else f)
        if len(entries) != cols:
            raise ValueError(f"expected {cols} entries per row, got {len(entries)}")
        out.append(entries)
    if len(out) != rows:
        raise ValueError(f"expected {rows} rows, got {len(out)}")
    return out
