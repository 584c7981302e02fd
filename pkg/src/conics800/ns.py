"""Construction of the polarized rank-20 lattice carrying the 800 classes.

Pipeline: inside the 24-dimensional even unimodular lattice, the five
seed generators span a rank-5 sublattice Vt containing the degree
vector hbar. S is the orthogonal complement of hbar's complement in Vt,
a positive-definite rank-20 lattice containing hbar and all 800 conic
vectors. The target lattice N is the index-2 extension of
(-(hbar-perp in S)) + Zh, h*h = 4, glued by c0 = l0 - hbar/2 + h/2;
each conic l then gives a class c(l) with c*c = -2 and c*h = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exact
from .census import SEED_DET, SEED_GRAM, SEED_ROWS
from .errors import ConstructionError, VerificationError
from .lattices import (
    FiniteQuadraticForm,
    IntegralLattice,
    discriminant_form,
    fqf_isomorphic,
    membership_mask,
    orthogonal_complement,
    short_vectors,
    sublattice_orthogonal_to,
    verify_fqf_witness,
)

HBAR = SEED_ROWS[0]

# Transcendental side: diag(4, 40).
T_GRAM = ((4, 0), (0, 40))

# Expected block forms of the discriminant groups, as (block, ...) specs
# accepted by FiniteQuadraticForm.from_blocks.
_HALF = Fraction(1, 2)
BLOCKS_VT = (([[1, _HALF], [_HALF, 1]], 2), (8, Fraction(1, 8)), (5, Fraction(2, 5)))
BLOCKS_N_A = ((4, Fraction(5, 4)), (8, Fraction(1, 8)), (5, Fraction(2, 5)))
BLOCKS_N_B = ((4, Fraction(-1, 4)), (8, Fraction(-5, 8)), (5, Fraction(2, 5)))

# Hand-built negative controls for the bad-vector scans: in the first,
# (0,1) is a norm -2 vector orthogonal to h = (1,0); in the second,
# (0,1) is isotropic with e*h = 2.
PLANTED_KIND1 = ((4, 0), (0, -2))
PLANTED_KIND2 = ((4, 2), (2, 0))


@dataclass(frozen=True)
class PolarizedLattice:
    """Rank-20 lattice of signature (1,19) with polarization and classes.

    All coordinates refer to the canonical basis obtained from the HNF
    of the doubled glue coordinates; gram is the exact integer Gram.
    """

    gram: np.ndarray
    h: np.ndarray
    classes: np.ndarray
    hnf2: np.ndarray
    m0: np.ndarray
    w_basis: np.ndarray
    glue_index: int

    @property
    def rank(self) -> int:
        return len(self.gram)


def build_vtilde(leech: IntegralLattice) -> IntegralLattice:
    """The rank-5 seed sublattice, checked against its expected Gram."""
    for row in SEED_ROWS:
        if not leech.contains(list(row)):
            raise ConstructionError(f"seed row not in the ambient lattice: {row}")
    vt = IntegralLattice([list(r) for r in SEED_ROWS], ambient_scale=8)
    if vt.gram_int() != [list(r) for r in SEED_GRAM]:
        raise VerificationError("seed sublattice Gram mismatch")
    if exact.det_bareiss(vt.gram_int()) != SEED_DET:
        raise VerificationError("seed sublattice determinant is not 160")
    return vt


def build_S(leech: IntegralLattice, conics: np.ndarray) -> IntegralLattice:
    """Orthogonal complement construction of the rank-20 lattice S.

    Hard-errors unless S has rank 20, contains hbar and every conic,
    and contains no vector of true norm 2.
    """
    vt = build_vtilde(leech)
    vbar = sublattice_orthogonal_to(vt, list(HBAR))
    if vbar.rank != 4:
        raise ConstructionError(f"hbar-complement in the seed lattice has rank {vbar.rank}")
    s = orthogonal_complement(vbar, leech)
    if s.rank != 20:
        raise ConstructionError(f"S has rank {s.rank}, expected 20")
    if not s.contains(list(HBAR)):
        raise ConstructionError("hbar does not lie in S")
    hnf_s = exact.nonzero_rows(exact.hnf([list(r) for r in s.basis]))
    if not membership_mask(conics, hnf_s).all():
        raise ConstructionError("some conic vector does not lie in S")
    gram = s.gram_int()
    if any(gram[i][i] % 2 for i in range(len(gram))):
        raise VerificationError("S is not an even lattice")
    if short_vectors(gram, 2, mode="exact"):
        raise VerificationError("S contains a vector of true norm 2")
    return s


def check_hbar_parity(s: IntegralLattice, hbar=HBAR) -> bool:
    """True iff x.hbar is even for every basis vector x of s."""
    dots = exact.mat_vec_mul([list(r) for r in s.basis], list(hbar))
    return all(d % (2 * s.ambient_scale) == 0 for d in dots)


def hbar_perp(s: IntegralLattice, leech: IntegralLattice) -> IntegralLattice:
    """W = hbar-perp in S; checked equal to the full seed complement."""
    w = sublattice_orthogonal_to(s, list(HBAR))
    if w.rank != 19:
        raise ConstructionError(f"hbar-perp in S has rank {w.rank}, expected 19")
    vt = build_vtilde(leech)
    vt_perp = orthogonal_complement(vt, leech)
    hw = exact.nonzero_rows(exact.hnf([list(r) for r in w.basis]))
    hv = exact.nonzero_rows(exact.hnf([list(r) for r in vt_perp.basis]))
    if hw != hv:
        raise VerificationError("hbar-perp in S differs from the seed-complement in the ambient")
    if exact.det_bareiss(w.gram_int()) != 160:
        raise VerificationError("hbar-perp in S does not have determinant 160")
    return w


def _w_coords_doubled(w_solver: exact.LeftSolver, conic) -> list[int]:
    """Integer coordinates of 2l - hbar in the basis of W."""
    target = [2 * int(x) - h for x, h in zip(conic, HBAR)]
    coords = w_solver.solve(target)
    if coords is None:
        raise ConstructionError(f"2l - hbar escapes hbar-perp for conic {tuple(conic)}")
    return coords


def build_N(
    s: IntegralLattice,
    leech: IntegralLattice,
    conics: np.ndarray,
    glue_index: int = 0,
    true_products: np.ndarray | None = None,
) -> PolarizedLattice:
    """Index-2 extension of (-(hbar-perp in S)) + Zh glued by one conic.

    The glue vector is c0 = l0 - hbar/2 + h/2 for the conic at
    glue_index; every verification below is exact and hard-errors on
    mismatch (non-integral extension, wrong determinant or index,
    wrong signature, any class escaping the lattice).
    """
    w = hbar_perp(s, leech)
    gw = w.gram_int()
    n_dim = w.rank + 1
    w_solver = exact.LeftSolver([list(r) for r in w.basis])

    m0 = [[-gw[i][j] for j in range(w.rank)] + [0] for i in range(w.rank)]
    m0.append([0] * w.rank + [4])
    if exact.det_bareiss(m0) != -640:
        raise VerificationError("orthogonal-sum determinant is not -640")

    u0 = _w_coords_doubled(w_solver, conics[glue_index])
    glue2 = u0 + [1]  # doubled coordinates of c0 in the sum basis
    pairings = exact.vec_mat_mul(glue2, m0)
    if any(p % 2 for p in pairings):
        raise ConstructionError("glue vector pairs non-integrally with the sum")
    self4 = sum(a * b for a, b in zip(glue2, pairings))
    if self4 != -8:
        raise VerificationError(f"glue vector has (2c)^2 = {self4}, expected -8")

    doubled = [[2 * (i == j) for j in range(n_dim)] for i in range(n_dim)] + [glue2]
    h2 = exact.nonzero_rows(exact.hnf(doubled))
    if len(h2) != n_dim:
        raise ConstructionError("extension basis is defective")
    index_sq = 4 ** n_dim // (exact.det_bareiss(h2)) ** 2
    if index_sq != 4:
        raise VerificationError(f"extension index squared is {index_sq}, expected 4")

    gram4 = exact.mat_mul(exact.mat_mul(h2, m0), exact.transpose(h2))
    if any(x % 4 for row in gram4 for x in row):
        raise ConstructionError("extension Gram is non-integral")
    gram = [[x // 4 for x in row] for row in gram4]
    if any(gram[i][i] % 2 for i in range(n_dim)):
        raise VerificationError("extension lattice is not even")
    det = exact.det_bareiss(gram)
    if det != -160:
        raise VerificationError(f"det N = {det}, expected -160 (|det| 160)")
    if exact.signature(gram) != (1, n_dim - 1, 0):
        raise VerificationError("N does not have signature (1,19)")

    n_solver = exact.LeftSolver(h2)
    h_coords = n_solver.solve([0] * w.rank + [2])
    if h_coords is None:
        raise ConstructionError("polarization vector escapes the extension basis")

    classes = []
    for i in range(len(conics)):
        ui = _w_coords_doubled(w_solver, conics[i])
        xi = n_solver.solve(ui + [1])
        if xi is None:
            raise ConstructionError(f"class of conic {i} does not lie in N")
        classes.append(xi)

    gram_np = np.array(gram, dtype=np.int64)
    h_np = np.array(h_coords, dtype=np.int64)
    cls = np.array(classes, dtype=np.int64)
    ch = cls @ gram_np @ h_np
    cc = cls @ gram_np @ cls.T
    if not (ch == 2).all():
        raise VerificationError("some class has c.h != 2")
    if not (np.diagonal(cc) == -2).all():
        raise VerificationError("some class has c.c != -2")
    if true_products is None:
        raw = conics.astype(np.int64) @ conics.astype(np.int64).T
        true_products = raw // 8
    if not np.array_equal(cc, 2 - true_products):
        raise VerificationError("class products do not satisfy c_i.c_j = 2 - l_i.l_j")

    return PolarizedLattice(
        gram=gram_np,
        h=h_np,
        classes=cls,
        hnf2=np.array(h2, dtype=np.int64),
        m0=np.array(m0, dtype=np.int64),
        w_basis=np.array(w.basis, dtype=np.int64),
        glue_index=glue_index,
    )


def check_glue_independence(
    s: IntegralLattice,
    leech: IntegralLattice,
    conics: np.ndarray,
    n: PolarizedLattice,
    other_index: int = 1,
) -> bool:
    """Rebuild the extension glued by a different conic; the canonical
    basis (hence the Gram) must come out identical."""
    other = build_N(s, leech, conics, glue_index=other_index)
    return bool(
        np.array_equal(other.hnf2, n.hnf2) and np.array_equal(other.gram, n.gram)
    )


def check_h_parity(n: PolarizedLattice) -> bool:
    """True iff h.x is even for every basis vector x of N."""
    return not (n.gram @ n.h % 2).any()


def verify_discriminants(n: PolarizedLattice) -> dict:
    """All discriminant-group isomorphisms, with re-verified witnesses.

    Checks: discr of the seed lattice against its 2+8+5 block form;
    discr N against both stated block forms; -discr N against discr of
    the transcendental model diag(4,40); and the complement identity
    discr(W) = -discr(seed) inside the unimodular ambient.
    """
    vt_abs = IntegralLattice.from_gram([list(r) for r in SEED_GRAM])
    d_vt = discriminant_form(vt_abs)
    w_abs = IntegralLattice.from_gram([[int(x) for x in row] for row in _w_gram(n)])
    d_w = discriminant_form(w_abs)
    n_abs = IntegralLattice.from_gram([[int(x) for x in row] for row in n.gram])
    d_n = discriminant_form(n_abs)
    t_abs = IntegralLattice.from_gram([list(r) for r in T_GRAM])
    d_t = discriminant_form(t_abs)

    report: dict = {"group_orders": {
        "seed": d_vt.group_order,
        "N": d_n.group_order,
        "T": d_t.group_order,
    }}
    if d_vt.group_order != 160 or d_n.group_order != 160 or d_t.group_order != 160:
        raise VerificationError(f"discriminant group orders are off: {report['group_orders']}")

    pairs = {
        "seed_block_form": (d_vt, FiniteQuadraticForm.from_blocks(*BLOCKS_VT)),
        "N_block_form_a": (d_n, FiniteQuadraticForm.from_blocks(*BLOCKS_N_A)),
        "N_block_form_b": (d_n, FiniteQuadraticForm.from_blocks(*BLOCKS_N_B)),
        "neg_N_vs_T": (d_n.negate(), d_t),
        "complement_identity": (d_w, d_vt.negate()),
    }
    for name, (f1, f2) in pairs.items():
        ok, witness = fqf_isomorphic(f1, f2)
        if not ok:
            raise VerificationError(f"discriminant isomorphism failed: {name}")
        if not verify_fqf_witness(f1, f2, witness):
            raise VerificationError(f"witness re-verification failed: {name}")
        report[name] = {"isomorphic": True, "witness_ok": True}
    return report


def _w_gram(n: PolarizedLattice) -> np.ndarray:
    """Positive-definite Gram of W recovered from the stored raw basis."""
    raw = n.w_basis.astype(np.int64)
    g8 = raw @ raw.T
    if (g8 % 8).any():
        raise VerificationError("stored W basis has non-integral products")
    return g8 // 8


def _solve_dot(coeffs: list[int], target: int) -> list[int] | None:
    """Integer x with sum(x_i * coeffs_i) = target, if one exists."""
    g = 0
    combo: list[int] = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            combo = [0] * len(coeffs)
            combo[i] = 1 if c > 0 else -1
        else:
            g2, x, y = exact._xgcd(g, c)
            combo = [x * v for v in combo]
            combo[i] += y
            g = g2
    if g == 0 or target % g:
        return None
    return [v * (target // g) for v in combo]


def bad_vector_scan(gram, h_coords, e0_coords=None):
    """All e with (e.e = -2, e.h = 0) and all e with (e.e = 0, e.h = 2).

    Works on any even lattice with h.h = 4 whose h-complement is
    negative definite. Decomposes e = (e.h/4) h + f and enumerates f
    in the appropriate (coset of the) complement by definite
    short-vector search. Returns two lists of integer vectors in the
    lattice's own coordinates; both are expected empty for the
    constructed lattice and non-empty for the planted controls.
    """
    gram = [list(map(int, row)) for row in gram]
    h = [int(x) for x in h_coords]
    n_dim = len(gram)
    gh = exact.mat_vec_mul(gram, h)
    if sum(a * b for a, b in zip(h, gh)) != 4:
        raise ConstructionError("polarization does not have h.h = 4")
    k = exact.kernel_left([[x] for x in gh])
    if len(k) != n_dim - 1:
        raise ConstructionError("h-complement has unexpected rank")
    neg = [[-sum(k[i][a] * gram[a][b] * k[j][b] for a in range(n_dim) for b in range(n_dim))
            for j in range(len(k))] for i in range(len(k))]

    kind1 = []
    for x in short_vectors(neg, 2, mode="exact"):
        e = exact.vec_mat_mul(list(x), k)
        kind1.append(tuple(e))

    kind2 = []
    if e0_coords is None:
        e0_coords = _solve_dot(gh, 2)
    if e0_coords is not None:
        e0 = [int(x) for x in e0_coords]
        if sum(a * b for a, b in zip(e0, gh)) != 2:
            raise ConstructionError("seed vector for the isotropic scan has e0.h != 2")
        s0 = [Fraction(a) - Fraction(b, 2) for a, b in zip(e0, h)]
        sigma = exact.solve_left_rational([list(r) for r in k], s0)
        if sigma is None:
            raise ConstructionError("isotropic-scan shift escapes the h-complement")
        for x in short_vectors(neg, 1, coset_shift=sigma, mode="exact"):
            e = [a + b for a, b in zip(e0, exact.vec_mat_mul(list(x), k))]
            kind2.append(tuple(e))

    for e in kind1:
        ge = exact.mat_vec_mul(gram, list(e))
        if sum(a * b for a, b in zip(e, ge)) != -2 or sum(a * b for a, b in zip(h, ge)) != 0:
            raise VerificationError("kind-1 scan returned a non-witness")
    for e in kind2:
        ge = exact.mat_vec_mul(gram, list(e))
        if sum(a * b for a, b in zip(e, ge)) != 0 or sum(a * b for a, b in zip(h, ge)) != 2:
            raise VerificationError("kind-2 scan returned a non-witness")
    return kind1, kind2


def scan_N(n: PolarizedLattice):
    """Bad-vector scan of the constructed lattice, seeded by class 0."""
    return bad_vector_scan(
        n.gram.tolist(), n.h.tolist(), e0_coords=n.classes[0].tolist()
    )


def export_ns(n: PolarizedLattice, gram_path, h_path, classes_path) -> None:
    exact.write_matrix_text(gram_path, [[int(x) for x in r] for r in n.gram])
    exact.write_matrix_text(h_path, [[int(x) for x in n.h]])
    exact.write_matrix_text(classes_path, [[int(x) for x in r] for r in n.classes])
