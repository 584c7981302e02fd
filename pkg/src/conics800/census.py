"""The 800 conic vectors: filter, classify, recount, intersect.

A conic is a minimal vector l with true products (2, 1, 0, 0, 0)
against the five fixed generators below. The four patterns are keyed
off the coordinate profile on positions 1-9; an independent recount
then reproduces the same numbers from the Golay code alone by counting
codewords with prescribed intersections with {1,...,9}, so the same
800 arrives by two routes that share nothing but the code.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from time import monotonic

import numpy as np

from . import exact
from .errors import VerificationError
from .golay import GolayCode, codewords_meeting, mask_of, positions_of

# Generator rows in raw Leech coordinates (form = dot/8):
# degree vector hbar, its companion a, and three fine-tuning vectors.
SEED_ROWS = (
    (4, 4) + (0,) * 22,
    (0, 4, 4) + (0,) * 21,
    (0, 0, 4, 4) + (0,) * 20,
    (0, 0, 0, 4, 4) + (0,) * 19,
    (-2, 2, 0, -2, 2, 2, 2, 2, 2) + (0,) * 15,
)
SEED_NAMES = ("hbar", "a", "u1", "u2", "u3")

# True Gram matrix the rows must reproduce; det 160.
SEED_GRAM = (
    (4, 2, 0, 0, 0),
    (2, 4, 2, 0, 1),
    (0, 2, 4, 2, -1),
    (0, 0, 2, 4, 0),
    (0, 1, -1, 0, 4),
)
SEED_DET = 160

# Raw dot products selecting a conic: true (2, 1, 0, 0, 0).
CONIC_RAW_DOTS = (16, 8, 0, 0, 0)

CONIC_COUNT = 800
PATTERN_COUNTS = {"P1": 96, "P2": 96, "P3": 320, "P4": 288}

NINE_MASK = mask_of(range(1, 10))
MOVABLE_POSITIONS = (6, 7, 8, 9)

# Codeword-side window conditions on o & {1..9}, with the expected
# per-window codeword counts and sign/choice multipliers.
WINDOW_CONDITIONS = {
    "P1": {"fixed": (1, 4), "per_pair": 16, "octads_only": False, "signs": 1},
    "P2": {"fixed": (2, 3, 5), "per_pair": 16, "octads_only": False, "signs": 1},
    "P3": {"fixed": (1, 2), "per_pair": 10, "octads_only": True, "signs": 32},
    "P4": {"fixed": (1, 2), "per_pair": 3, "octads_only": True, "signs": 8},
}


def validate_seed() -> None:
    rows = [list(r) for r in SEED_ROWS]
    raw = exact.mat_mul(rows, exact.transpose(rows))
    gram = [[x // 8 for x in row] for row in raw]
    if any(x % 8 for row in raw for x in row):
        raise VerificationError("seed rows have non-integral true products")
    if gram != [list(r) for r in SEED_GRAM]:
        raise VerificationError(f"seed Gram mismatch: {gram}")
    if exact.det_bareiss(gram) != SEED_DET:
        raise VerificationError("seed Gram determinant is not 160")


@dataclass(frozen=True)
class ConicRecord:
    l: tuple[int, ...]
    pattern: str
    movable_pair: tuple[int, int] | None  # sorted for P1/P2, ordered (+2,-2) for P4
    codeword: int  # inducing codeword mask (the sign codeword or the octad)
    special_position: int | None  # the -3*sign position for shape31 conics


def find_conics(vectors: np.ndarray, threads: int = 1) -> np.ndarray:
    """Filter the conic vectors and return them lexicographically sorted."""
    seed = np.array(SEED_ROWS, dtype=np.int64).T
    want = np.array(CONIC_RAW_DOTS, dtype=np.int64)

    def dots_block(block: np.ndarray) -> np.ndarray:
        return (block.astype(np.int64) @ seed == want).all(axis=1)

    if threads > 1:
        chunks = np.array_split(np.arange(len(vectors)), threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            masks = list(pool.map(lambda ix: dots_block(vectors[ix]), chunks))
        mask = np.concatenate(masks)
    else:
        mask = dots_block(vectors)
    found = vectors[mask]
    order = np.lexsort(found.T[::-1])
    return found[order]


def classify(l, code: GolayCode) -> ConicRecord:
    """Pattern tag, movable pair, and inducing codeword of one conic."""
    l = tuple(int(x) for x in l)
    amax = max(abs(x) for x in l)
    head = l[:5]
    if amax == 3:
        k = next(i for i, x in enumerate(l) if abs(x) == 3)
        signs = [x if i != k else -x // 3 for i, x in enumerate(l)]
        codeword = sum(1 << i for i, s in enumerate(signs) if s == 1)
        if codeword not in code:
            raise VerificationError(f"conic sign vector is not a codeword: {l}")
        pair = tuple(p for p in MOVABLE_POSITIONS if l[p - 1] == 1)
        if head == (1, 3, -1, 1, -1):
            pattern = "P1"
        elif head == (3, 1, 1, -1, 1):
            pattern = "P2"
        else:
            raise VerificationError(f"unmatched shape31 conic profile {head}")
        if len(pair) != 2:
            raise VerificationError(f"conic {l} lacks a movable +1 pair on 6..9")
        window = WINDOW_CONDITIONS[pattern]["fixed"] + pair
        if codeword & NINE_MASK != mask_of(window):
            raise VerificationError(f"conic codeword window mismatch for {l}")
        return ConicRecord(l, pattern, pair, codeword, k + 1)
    if amax == 2:
        support = sum(1 << i for i, x in enumerate(l) if x)
        if support not in code:
            raise VerificationError(f"conic support is not an octad: {l}")
        if head != (2, 2, 0, 0, 0):
            raise VerificationError(f"unmatched shape20 conic profile {head}")
        movable = [p for p in MOVABLE_POSITIONS if l[p - 1]]
        if not movable:
            if support & NINE_MASK != mask_of((1, 2)):
                raise VerificationError(f"conic octad window mismatch for {l}")
            return ConicRecord(l, "P3", None, support, None)
        if len(movable) == 2:
            plus = [p for p in movable if l[p - 1] == 2]
            minus = [p for p in movable if l[p - 1] == -2]
            if len(plus) == 1 and len(minus) == 1:
                if support & NINE_MASK != mask_of((1, 2) + tuple(movable)):
                    raise VerificationError(f"conic octad window mismatch for {l}")
                return ConicRecord(l, "P4", (plus[0], minus[0]), support, None)
    raise VerificationError(f"conic matches no pattern: {l}")


def classify_all(conics: np.ndarray, code: GolayCode) -> list[ConicRecord]:
    records = [classify(row, code) for row in conics]
    counts: dict[str, int] = {}
    for r in records:
        counts[r.pattern] = counts.get(r.pattern, 0) + 1
    if len(records) != CONIC_COUNT or counts != PATTERN_COUNTS:
        raise VerificationError(f"conic census mismatch: total {len(records)}, split {counts}")
    return records


def recount_by_codewords(code: GolayCode, records: list[ConicRecord]) -> dict:
    """Recompute the pattern counts from the code alone and compare.

    For each pattern the recount multiplies the number of codewords
    meeting {1..9} in the stated window by the number of sign/position
    choices each codeword carries; bucket-level equality against the
    filtered census is also enforced (per movable pair, per window).
    """
    pairs = list(combinations(MOVABLE_POSITIONS, 2))
    by_bucket: dict[tuple[str, tuple], int] = {}
    for r in records:
        key: tuple = r.movable_pair if r.movable_pair else ()
        by_bucket[(r.pattern, key)] = by_bucket.get((r.pattern, key), 0) + 1

    report: dict = {"patterns": {}, "correspondence": {}}
    total = 0
    for pattern, cond in WINDOW_CONDITIONS.items():
        weight = 8 if cond["octads_only"] else None
        entries = []
        recount = 0
        if pattern in ("P1", "P2"):
            for p, q in pairs:
                window = cond["fixed"] + (p, q)
                n = len(codewords_meeting(code, NINE_MASK, mask_of(window), weight))
                census = by_bucket.get((pattern, (p, q)), 0)
                entries.append({"window": sorted(window), "codewords": n, "census": census})
                if n != cond["per_pair"] or census != n * cond["signs"]:
                    raise VerificationError(
                        f"{pattern} recount mismatch at pair ({p},{q}): {n} vs {census}"
                    )
                recount += n * cond["signs"]
        elif pattern == "P3":
            window = cond["fixed"]
            n = len(codewords_meeting(code, NINE_MASK, mask_of(window), weight))
            census = by_bucket.get((pattern, ()), 0)
            entries.append({"window": sorted(window), "codewords": n, "census": census})
            if n != cond["per_pair"] or census != n * cond["signs"]:
                raise VerificationError(f"P3 recount mismatch: {n} octads vs census {census}")
            recount = n * cond["signs"]
        else:  # P4: ordered pairs share the unordered octad condition
            for p, q in pairs:
                window = cond["fixed"] + (p, q)
                n = len(codewords_meeting(code, NINE_MASK, mask_of(window), weight))
                census_pq = by_bucket.get(("P4", (p, q)), 0)
                census_qp = by_bucket.get(("P4", (q, p)), 0)
                entries.append(
                    {"window": sorted(window), "codewords": n,
                     "census": census_pq + census_qp}
                )
                if n != cond["per_pair"] or census_pq != n * cond["signs"] or census_qp != census_pq:
                    raise VerificationError(
                        f"P4 recount mismatch at pair ({p},{q}): {n} vs {census_pq}/{census_qp}"
                    )
                recount += 2 * n * cond["signs"]
        expected = PATTERN_COUNTS[pattern]
        if recount != expected:
            raise VerificationError(f"{pattern} recount {recount} != expected {expected}")
        report["patterns"][pattern] = {
            "underline": cond["per_pair"],
            "signs_per_codeword": cond["signs"],
            "recount": recount,
            "census": sum(e["census"] for e in entries),
            "windows": entries,
        }
        fixed = ",".join(str(x) for x in cond["fixed"])
        movable = "" if pattern == "P3" else ",p,q"
        kind = "octads" if cond["octads_only"] else "codewords"
        report["correspondence"][pattern] = (
            f"{kind} meeting {{1..9}} in {{{fixed}{movable}}}"
        )
        total += recount
    report["total"] = total
    if total != CONIC_COUNT:
        raise VerificationError(f"recount total {total} != {CONIC_COUNT}")
    return report


def intersection_data(conics: np.ndarray) -> tuple[np.ndarray, dict[int, int]]:
    """True pairwise products (800x800 int matrix) and the i<j histogram.

    Hard-errors if any off-diagonal true product exceeds 2 (it would be
    a negative geometric intersection of distinct irreducible conics).
    """
    raw = conics.astype(np.int64) @ conics.astype(np.int64).T
    if (raw % 8).any():
        raise VerificationError("conic pairwise products are not multiples of 8")
    true = raw // 8
    n = len(conics)
    iu = np.triu_indices(n, k=1)
    vals, counts = np.unique(np.asarray(true[iu]), return_counts=True)
    hist = {int(v): int(c) for v, c in zip(vals, counts)}
    if not (np.diagonal(true) == 4).all():
        raise VerificationError("conic self-products are not all 4")
    if hist and max(hist) > 2:
        raise VerificationError(f"off-diagonal true product exceeds 2: {hist}")
    if hist and (min(hist) < -4 or max(hist) > 4):
        raise VerificationError("pairwise product out of the Cauchy-Schwarz range")
    return true, hist


def disjointness_masks(true_products: np.ndarray) -> list[int]:
    """Adjacency bitmasks: i ~ j iff the classes are disjoint (l_i.l_j = 2)."""
    adj = true_products == 2
    np.fill_diagonal(adj, False)
    masks = []
    for row in adj:
        m = 0
        for j in np.flatnonzero(row):
            m |= 1 << int(j)
        masks.append(m)
    return masks


def find_disjoint_16(masks: list[int], size: int = 16) -> list[int]:
    """Lexicographically least clique of the given size, by ordered DFS."""
    n = len(masks)
    full = (1 << n) - 1

    def dfs(clique: list[int], cand: int) -> list[int] | None:
        if len(clique) == size:
            return clique
        if len(clique) + cand.bit_count() < size:
            return None
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if len(clique) + 1 + (masks[v] & c).bit_count() >= size:
                got = dfs(clique + [v], masks[v] & c)
                if got:
                    return got
        return None

    result = dfs([], full)
    if result is None:
        raise VerificationError(f"no {size}-clique of disjoint conics exists")
    return result


def clique_extension_exists(masks: list[int], clique: list[int]) -> bool:
    """One pass: is any vertex outside the clique adjacent to all of it?"""
    cm = 0
    for v in clique:
        cm |= 1 << v
    for v in range(len(masks)):
        if not cm >> v & 1 and masks[v] & cm == cm:
            return True
    return False


def count_disjoint_16(masks: list[int], size: int = 16, budget_seconds: float = 60.0):
    """(count, exhausted): number of size-cliques found within the budget."""
    deadline = monotonic() + budget_seconds
    n = len(masks)
    count = 0
    exhausted = True

    def dfs(depth: int, start_mask: int, cand: int) -> bool:
        nonlocal count
        if depth == size:
            count += 1
            return True
        if depth + cand.bit_count() < size:
            return True
        if monotonic() > deadline:
            return False
        c = cand
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if not dfs(depth + 1, v, masks[v] & c):
                return False
        return True

    exhausted = dfs(0, 0, (1 << n) - 1)
    return count, exhausted


def export_conics(records: list[ConicRecord], path) -> None:
    """One line per conic: 24 coordinates, pattern, movable pair, codeword mask."""
    lines = []
    for r in records:
        coords = " ".join(str(x) for x in r.l)
        pair = ",".join(str(p) for p in r.movable_pair) if r.movable_pair else "-"
        lines.append(f"{coords}  {r.pattern}  {pair}  {r.codeword}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
