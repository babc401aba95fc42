"""Exact match metrics on words: Hamming distance and the f-bar metric.

The f-bar distance between strings of lengths n and m is
1 - 2r/(n+m), where r is the size of a best match: a family of index
pairs, strictly increasing in both coordinates, joining equal symbols.
The best match size is exactly the longest common subsequence length,
computed here by dynamic programming with divide-and-conquer witness
recovery. All values are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptyInputError, LengthMismatchError, OracleSizeExceededError
from .words import DEFAULT_MAX_EXPAND, Word

BRUTE_FORCE_LIMIT = 12


@dataclass(frozen=True)
class Match:
    """Index pairs (i, j), 1-based, strictly increasing in both coordinates."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def verify(self, a: list[str], b: list[str]) -> bool:
        prev_i, prev_j = 0, 0
        for i, j in self.pairs:
            if i <= prev_i or j <= prev_j:
                return False
            if a[i - 1] != b[j - 1]:
                return False
            prev_i, prev_j = i, j
        return True


@dataclass(frozen=True)
class FbarValue:
    """f-bar distance kept as the exact pair (n+m-2r, n+m)."""

    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def match_size(self) -> int:
        return (self.denominator - self.numerator) // 2

    @staticmethod
    def from_match_size(r: int, n: int, m: int) -> "FbarValue":
        return FbarValue(n + m - 2 * r, n + m)

    def __float__(self) -> float:
        return self.numerator / self.denominator


@dataclass(frozen=True)
class DoubleWord:
    """Paired-symbol word: position i carries (primary_i, secondary_i)."""

    primary: Word
    secondary: Word

    def __post_init__(self):
        if self.primary.expanded_length != self.secondary.expanded_length:
            raise LengthMismatchError("double word coordinates differ in length")

    @property
    def expanded_length(self) -> int:
        return self.primary.expanded_length


def hamming(a: Word, b: Word) -> Fraction:
    """Fraction of differing positions between equal-length words."""
    n = a.expanded_length
    if b.expanded_length != n:
        raise LengthMismatchError(f"lengths {n} != {b.expanded_length}")
    if n == 0:
        raise EmptyInputError("hamming of empty words")
    # walk the two run sequences in lockstep
    diff = 0
    ia = ib = 0
    ra, ca = a.runs[0]
    rb, cb = b.runs[0]
    while True:
        step = min(ca, cb)
        if ra != rb:
            diff += step
        ca -= step
        cb -= step
        if ca == 0:
            ia += 1
            if ia == len(a.runs):
                break
            ra, ca = a.runs[ia]
        if cb == 0:
            ib += 1
            if ib < len(b.runs):
                rb, cb = b.runs[ib]
    return Fraction(diff, n)


def _encode(a: list[str], b: list[str]) -> tuple[np.ndarray, np.ndarray]:
    table: dict[str, int] = {}
    for s in a:
        table.setdefault(s, len(table))
    for s in b:
        table.setdefault(s, len(table))
    xa = np.fromiter((table[s] for s in a), dtype=np.int32, count=len(a))
    xb = np.fromiter((table[s] for s in b), dtype=np.int32, count=len(b))
    return xa, xb


def _lcs_row(xa: np.ndarray, xb: np.ndarray) -> np.ndarray:
    """Final DP row: out[j] = LCS(xa, xb[:j]) for j = 0..len(xb)."""
    m = len(xb)
    prev = np.zeros(m + 1, dtype=np.int64)
    cur = np.zeros(m + 1, dtype=np.int64)
    for i in range(len(xa)):
        np.maximum(prev[1:], prev[:-1] + (xb == xa[i]), out=cur[1:])
        np.maximum.accumulate(cur, out=cur)
        prev, cur = cur, prev
    return prev


def lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    xa, xb = _encode(a, b)
    return int(_lcs_row(xa, xb)[-1])


def _hirschberg(xa: np.ndarray, xb: np.ndarray, off_a: int, off_b: int,
                pairs: list[tuple[int, int]]) -> None:
    """Append the pairs of one optimal match, linear memory.

    Ties are broken deterministically: the split point is the smallest
    optimal cut of b, and the base case backtrack prefers advancing in the
    first word.
    """
    n, m = len(xa), len(xb)
    if n == 0 or m == 0:
        return
    if n == 1:
        hits = np.nonzero(xb == xa[0])[0]
        if len(hits):
            pairs.append((off_a + 1, off_b + int(hits[0]) + 1))
        return
    half = n // 2
    left = _lcs_row(xa[:half], xb)
    right = _lcs_row(xa[half:][::-1], xb[::-1])[::-1]
    split = int(np.argmax(left + right))
    _hirschberg(xa[:half], xb[:split], off_a, off_b, pairs)
    _hirschberg(xa[half:], xb[split:], off_a + half, off_b + split, pairs)


def fbar(a: Word, b: Word,
         max_expand: int = DEFAULT_MAX_EXPAND) -> tuple[FbarValue, Match]:
    """f-bar distance with a witness match attaining the best match size."""
    n, m = a.expanded_length, b.expanded_length
    if n == 0 or m == 0:
        raise EmptyInputError("fbar of an empty word")
    ea, eb = a.expand(max_expand), b.expand(max_expand)
    xa, xb = _encode(ea, eb)
    pairs: list[tuple[int, int]] = []
    _hirschberg(xa, xb, 0, 0, pairs)
    witness = Match(tuple(pairs))
    assert witness.verify(ea, eb)
    return FbarValue.from_match_size(len(pairs), n, m), witness


def fbar_value(a: Word, b: Word,
               max_expand: int = DEFAULT_MAX_EXPAND) -> FbarValue:
    """f-bar distance without witness recovery (single DP sweep)."""
    n, m = a.expanded_length, b.expanded_length
    if n == 0 or m == 0:
        raise EmptyInputError("fbar of an empty word")
    r = lcs_length(a.expand(max_expand), b.expand(max_expand))
    return FbarValue.from_match_size(r, n, m)


def fbar_bruteforce(a: Word, b: Word) -> FbarValue:
    """Oracle: exhaustive recursion over the match space itself.

    Enumerates matches directly from the definition (pick the next equal
    pair with both indices increasing), pruning only branches that provably
    cannot beat the best match found. Independent of the DP formulation.
    """
    n, m = a.expanded_length, b.expanded_length
    if n == 0 or m == 0:
        raise EmptyInputError("fbar of an empty word")
    if n > BRUTE_FORCE_LIMIT or m > BRUTE_FORCE_LIMIT:
        raise OracleSizeExceededError(
            f"lengths ({n},{m}) exceed the oracle guard {BRUTE_FORCE_LIMIT}"
        )
    ea, eb = a.expand(), b.expand()
    best = 0

    def explore(i: int, j: int, size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        # an extension cannot exceed the shorter remaining tail
        if size + min(n - i, m - j) <= best:
            return
        for p in range(i, n):
            for q in range(j, m):
                if ea[p] == eb[q]:
                    explore(p + 1, q + 1, size + 1)

    explore(0, 0, 0)
    return FbarValue.from_match_size(best, n, m)


def fbar_double(x: DoubleWord, y: DoubleWord,
                max_expand: int = DEFAULT_MAX_EXPAND) -> FbarValue:
    """f-bar over the paired alphabet: positions match only when both agree."""
    ex = list(zip(x.primary.expand(max_expand), x.secondary.expand(max_expand)))
    ey = list(zip(y.primary.expand(max_expand), y.secondary.expand(max_expand)))
    if not ex or not ey:
        raise EmptyInputError("fbar of an empty double word")
    paired_x = [f"{p}\x00{s}" for p, s in ex]
    paired_y = [f"{p}\x00{s}" for p, s in ey]
    r = lcs_length(paired_x, paired_y)
    return FbarValue.from_match_size(r, len(ex), len(ey))


def fbar_rle(a: Word, b: Word) -> FbarValue:
    """f-bar on run-length encodings, subquadratic on run-sparse input."""
    from .rle_lcs import rle_lcs_length

    n, m = a.expanded_length, b.expanded_length
    if n == 0 or m == 0:
        raise EmptyInputError("fbar of an empty word")
    r = rle_lcs_length(a.runs, b.runs)
    return FbarValue.from_match_size(r, n, m)


def distance_matrix(words: list[Word], metric=fbar_value, jobs: int = 1):
    """Pairwise distance table; cells are independent and may run in parallel."""
    k = len(words)
    out = [[Fraction(0)] * k for _ in range(k)]
    cells = [(i, j) for i in range(k) for j in range(i + 1, k)]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            vals = pool.map(lambda ij: metric(words[ij[0]], words[ij[1]]), cells)
    else:
        vals = (metric(words[i], words[j]) for i, j in cells)
    for (i, j), v in zip(cells, vals):
        value = v.value if isinstance(v, FbarValue) else v
        out[i][j] = out[j][i] = value
    return out
