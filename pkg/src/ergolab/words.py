"""Run-length-encoded words, alphabets with spacers, and leveled construction sequences.

Words are stored as canonical RLE (adjacent runs carry different symbols,
all counts >= 1) so that level arithmetic never expands the huge pattern
words; expansion to a symbol list is guarded by a configurable cap.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    ExpansionGuardError,
    NonDecomposableError,
    PlanInfeasibleError,
)

#: Default cap on expanded symbol count for oracle / expansion paths.
DEFAULT_MAX_EXPAND = 2**22


def _canonical(runs: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for sym, count in runs:
        if count < 0:
            raise ValueError(f"negative run count {count}")
        if count == 0:
            continue
        if out and out[-1][0] == sym:
            out[-1] = (sym, out[-1][1] + count)
        else:
            out.append((sym, count))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A symbol string in canonical run-length encoding."""

    runs: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for i, (sym, count) in enumerate(self.runs):
            if count < 1:
                raise ValueError(f"run {i} has count {count} < 1")
            if i > 0 and self.runs[i - 1][0] == sym:
                raise ValueError(f"runs {i-1},{i} carry the same symbol {sym!r}")

    @staticmethod
    def from_runs(runs: Iterable[tuple[str, int]]) -> "Word":
        """Build a word from arbitrary runs, merging into canonical form."""
        return Word(_canonical(runs))

    @staticmethod
    def from_symbols(symbols: Iterable[str]) -> "Word":
        return Word.from_runs((s, 1) for s in symbols)

    @property
    def expanded_length(self) -> int:
        return sum(c for _, c in self.runs)

    @property
    def run_count(self) -> int:
        return len(self.runs)

    def symbols_used(self) -> set[str]:
        return {s for s, _ in self.runs}

    def symbol_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s, c in self.runs:
            counts[s] = counts.get(s, 0) + c
        return counts

    def expand(self, max_expand: int = DEFAULT_MAX_EXPAND) -> list[str]:
        """Materialize the symbol list; guarded against accidental blowup."""
        n = self.expanded_length
        if n > max_expand:
            raise ExpansionGuardError(
                f"expansion of {n} symbols exceeds the cap of {max_expand}"
            )
        out: list[str] = []
        for s, c in self.runs:
            out.extend([s] * c)
        return out

    def concat(self, other: "Word") -> "Word":
        return Word(_canonical(self.runs + other.runs))

    def repeat(self, times: int) -> "Word":
        """The word repeated ``times`` times, with boundary runs merged."""
        if times < 0:
            raise ValueError("negative repetition")
        if times == 0 or not self.runs:
            return Word(())
        if times == 1:
            return self
        if len(self.runs) == 1:
            sym, count = self.runs[0]
            return Word(((sym, count * times),))
        first_sym = self.runs[0][0]
        last_sym, last_count = self.runs[-1]
        if first_sym != last_sym:
            return Word(self.runs * times)
        # boundary runs merge: w = a... a  ->  interior copies fuse at the seam
        merged_head = (first_sym, self.runs[0][1] + last_count)
        interior = (merged_head,) + self.runs[1:-1]
        runs = self.runs[:-1] + interior * (times - 1) + ((last_sym, last_count),)
        return Word(_canonical(runs))

    def slice(self, start: int, stop: int) -> "Word":
        """Sub-word of expanded positions [start, stop), computed on runs."""
        n = self.expanded_length
        if not (0 <= start <= stop <= n):
            raise ValueError(f"slice [{start},{stop}) out of range for length {n}")
        out: list[tuple[str, int]] = []
        pos = 0
        for sym, count in self.runs:
            lo = max(start, pos)
            hi = min(stop, pos + count)
            if hi > lo:
                out.append((sym, hi - lo))
            pos += count
            if pos >= stop:
                break
        return Word(tuple(out))

    def symbol_at(self, i: int) -> str:
        if i < 0 or i >= self.expanded_length:
            raise IndexError(i)
        pos = 0
        for sym, count in self.runs:
            if i < pos + count:
                return sym
            pos += count
        raise IndexError(i)  # unreachable

    def to_text(self) -> str:
        """Word text format: ``symbol^count`` tokens, space-separated."""
        return " ".join(f"{s}^{c}" for s, c in self.runs)

    @staticmethod
    def from_text(text: str) -> "Word":
        runs = []
        for token in text.split():
            if "^" in token:
                sym, _, count = token.rpartition("^")
                runs.append((sym, int(count)))
            else:
                runs.append((token, 1))
        return Word.from_runs(runs)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Alphabet:
    """Ordered symbol identifiers, optionally with a designated spacer pair."""

    symbols: tuple[str, ...]
    spacer_ids: tuple[str, str] | None = None

    def __post_init__(self):
        seen = set()
        for s in self.symbols:
            if s in seen:
                raise ValueError(f"duplicate symbol {s!r}")
            if "^" in s or any(ch.isspace() for ch in s):
                raise ValueError(f"symbol {s!r} clashes with the text format")
            seen.add(s)
        if self.spacer_ids is not None:
            b, e = self.spacer_ids
            if b == e:
                raise ValueError("spacers must be distinct")
            if b in seen or e in seen:
                raise ValueError("spacers must be distinct from non-spacer symbols")

    @property
    def spacers(self) -> set[str]:
        return set(self.spacer_ids) if self.spacer_ids else set()


def strip_spacers(word: Word, alphabet: Alphabet) -> Word:
    """Remove all spacer runs and re-canonicalize."""
    if alphabet.spacer_ids is None:
        raise ValueError("alphabet declares no spacers")
    sp = alphabet.spacers
    return Word.from_runs(r for r in word.runs if r[0] not in sp)


# ---------------------------------------------------------------------------
# Construction sequences


@dataclass(frozen=True)
class ConstructionLevel:
    """One level of a construction sequence: the word family with its parameters.

    ``h`` is the common word length, ``f`` the per-word occurrence count used
    to build the next level, ``k = f * len(words)`` the concatenation count,
    ``l`` the repetition run length, and ``delta`` the spacer proportion
    (zero for the non-circular variant).
    """

    index: int
    words: tuple[Word, ...]
    h: int
    f: int
    k: int
    l: int
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.words:
            raise ValueError("level has no words")
        if self.k != self.f * len(self.words):
            raise ValueError(f"k={self.k} != f*|words|={self.f * len(self.words)}")
        if not (0 <= self.delta < 1):
            raise ValueError(f"delta={self.delta} outside [0,1)")


@dataclass(frozen=True)
class ConstructionSequence:
    levels: tuple[ConstructionLevel, ...]
    circular: bool = False

    def __post_init__(self):
        if not self.levels:
            raise ValueError("sequence has no levels")
        base = self.levels[0]
        for w in base.words:
            if w.expanded_length != 1:
                raise ValueError("level-0 words must be single symbols")
        if not self.circular:
            for lo, hi in zip(self.levels, self.levels[1:]):
                if hi.h != lo.k * lo.h:
                    raise ValueError(
                        f"level {hi.index}: h={hi.h} != k*h={lo.k * lo.h}"
                    )

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> ConstructionLevel:
        return self.levels[n]


def base_level(alphabet: Alphabet, f: int, l: int) -> ConstructionLevel:
    """Level 0: one single-symbol word per non-spacer symbol."""
    words = tuple(Word(((s, 1),)) for s in alphabet.symbols)
    return ConstructionLevel(
        index=0, words=words, h=1, f=f, k=f * len(words), l=l
    )


def check_A1(level: ConstructionLevel) -> bool:
    """All words in the level have the declared common length."""
    return all(w.expanded_length == level.h for w in level.words)


def tokenize(
    upper_word: Word,
    lower: ConstructionLevel,
    alphabet: Alphabet | None = None,
) -> list[tuple[str, int]]:
    """Split an upper word into ("word", index) and ("spacer", length) tokens.

    Newly added spacer symbols may only sit between lower-word blocks. At
    each block boundary the next h symbols are matched against the lower
    words (words are distinct, so at most one matches); on failure, spacer
    symbols are consumed one at a time before retrying. Greedy first-match:
    a lower level violating unique readability could in principle tokenize
    differently than intended, which the A-checks then report noisily.
    """
    sp = alphabet.spacers if alphabet is not None else set()
    h = lower.h
    table = {w: i for i, w in enumerate(lower.words)}
    n = upper_word.expanded_length
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < n:
        if pos + h <= n:
            idx = table.get(upper_word.slice(pos, pos + h))
            if idx is not None:
                tokens.append(("word", idx))
                pos += h
                continue
        if upper_word.symbol_at(pos) in sp:
            if tokens and tokens[-1][0] == "spacer":
                tokens[-1] = ("spacer", tokens[-1][1] + 1)
            else:
                tokens.append(("spacer", 1))
            pos += 1
            continue
        raise NonDecomposableError(
            f"no lower word and no spacer at offset {pos}"
        )
    return tokens


def decompose(
    upper_word: Word,
    lower: ConstructionLevel,
    alphabet: Alphabet | None = None,
) -> list[int]:
    """Aligned lower-word indices of an upper word, spacers skipped."""
    return [v for kind, v in tokenize(upper_word, lower, alphabet) if kind == "word"]


def check_A2(
    lower: ConstructionLevel,
    upper: ConstructionLevel,
    alphabet: Alphabet | None = None,
) -> bool:
    """Every upper word = k aligned lower words, each lower word f times."""
    try:
        decomps = [decompose(w, lower, alphabet) for w in upper.words]
    except NonDecomposableError:
        return False
    for idxs in decomps:
        if len(idxs) != lower.k:
            return False
        for i in range(len(lower.words)):
            if idxs.count(i) != lower.f:
                return False
    return True


def check_A3(
    lower: ConstructionLevel,
    upper: ConstructionLevel,
    alphabet: Alphabet | None = None,
) -> bool:
    """Unique readability: large shifted overlaps never reproduce prefixes.

    For all upper words w, w' with block decompositions w_1..w_k and
    w'_1..w'_k, every shifted interior block of length at least floor(k/2)
    must differ from the corresponding prefix of w'.
    """
    decomps = [tuple(decompose(w, lower, alphabet)) for w in upper.words]
    kn = lower.k
    for w in decomps:
        for wp in decomps:
            for k in range(kn // 2, kn):
                if k < 1:
                    continue
                prefix = wp[:k]
                for i in range(1, kn - k + 1):
                    if w[i : i + k] == prefix:
                        return False
    return True


def check_A4(
    lower: ConstructionLevel,
    upper: ConstructionLevel,
    alphabet: Alphabet | None = None,
) -> bool:
    """Maximal runs of equal lower words have length a multiple of l.

    In the circular variant a run is also terminated by a newly added spacer,
    so spacers between repetition blocks are fine while a spacer inside one
    breaks the multiple-of-l arithmetic.
    """
    ell = lower.l
    for w in upper.words:
        tokens = tokenize(w, lower, alphabet)
        run_len = 0
        prev: int | None = None
        for kind, value in tokens + [("end", -1)]:
            idx = value if kind == "word" else None
            if idx is not None and idx == prev:
                run_len += 1
            else:
                if prev is not None and run_len % ell != 0:
                    return False
                prev = idx
                run_len = 1
    return True


@dataclass(frozen=True)
class LevelPlan:
    """Recipe for one construction step.

    ``word_plans[w]`` is the group list for new word w: pairs
    (lower word index, repetition count). ``spacer_runs[w]``, when present,
    gives the spacer run inserted before each group (circular variant);
    spacers alternate between the alphabet's b and e by group parity.
    """

    word_plans: tuple[tuple[tuple[int, int], ...], ...]
    spacer_runs: tuple[tuple[int, ...], ...] | None = None

    def to_json(self) -> dict:
        doc = {"word_plans": [[list(g) for g in wp] for wp in self.word_plans]}
        if self.spacer_runs is not None:
            doc["spacer_runs"] = [list(sr) for sr in self.spacer_runs]
        return doc

    @staticmethod
    def from_json(doc: dict) -> "LevelPlan":
        wps = tuple(
            tuple((int(i), int(c)) for i, c in wp) for wp in doc["word_plans"]
        )
        srs = doc.get("spacer_runs")
        return LevelPlan(
            wps,
            None if srs is None else tuple(tuple(int(x) for x in sr) for sr in srs),
        )


def build_next_level(
    seq: ConstructionSequence,
    plan: LevelPlan,
    f_next: int | None = None,
    l_next: int | None = None,
    alphabet: Alphabet | None = None,
) -> tuple[ConstructionSequence, bool]:
    """Append the level the plan describes; returns (sequence, A3 verdict).

    The plan must satisfy the concatenation arithmetic: per new word, group
    repetition counts are positive multiples of l, the total count is k, and
    each lower word's occurrence total is f. A1, A2, A4 then hold by
    construction; A3 is checked on the result and reported, not enforced.
    """
    lower = seq.levels[-1]
    if not plan.word_plans:
        raise PlanInfeasibleError("plan contains no words")
    circular = plan.spacer_runs is not None
    if circular and (alphabet is None or alphabet.spacer_ids is None):
        raise PlanInfeasibleError("spacer plan needs an alphabet with spacers")
    if circular and len(plan.spacer_runs) != len(plan.word_plans):
        raise PlanInfeasibleError("spacer plan length mismatch")

    spacer_total = None
    new_words = []
    for w_idx, groups in enumerate(plan.word_plans):
        if not groups:
            raise PlanInfeasibleError(f"word {w_idx}: empty plan")
        occur = [0] * len(lower.words)
        total = 0
        for g_idx, (idx, count) in enumerate(groups):
            if not (0 <= idx < len(lower.words)):
                raise PlanInfeasibleError(f"word {w_idx}: bad lower index {idx}")
            if count <= 0 or count % lower.l != 0:
                raise PlanInfeasibleError(
                    f"word {w_idx} group {g_idx}: count {count} not a positive "
                    f"multiple of l={lower.l}"
                )
            occur[idx] += count
            total += count
        if total != lower.k:
            raise PlanInfeasibleError(
                f"word {w_idx}: {total} blocks != k={lower.k}"
            )
        if any(c != lower.f for c in occur):
            raise PlanInfeasibleError(
                f"word {w_idx}: occurrence counts {occur} != f={lower.f}"
            )

        if circular:
            srs = plan.spacer_runs[w_idx]
            if len(srs) != len(groups):
                raise PlanInfeasibleError(
                    f"word {w_idx}: {len(srs)} spacer runs for {len(groups)} groups"
                )
            if any(s < 0 for s in srs):
                raise PlanInfeasibleError("negative spacer run")
            this_total = sum(srs)
            if spacer_total is None:
                spacer_total = this_total
            elif this_total != spacer_total:
                raise PlanInfeasibleError("unequal spacer totals break A1")
            b, e = alphabet.spacer_ids
            runs: list[tuple[str, int]] = []
            for g_idx, (idx, count) in enumerate(groups):
                if srs[g_idx]:
                    runs.append((b if g_idx % 2 == 0 else e, srs[g_idx]))
                runs.extend(lower.words[idx].repeat(count).runs)
            new_words.append(Word.from_runs(runs))
        else:
            runs = []
            for idx, count in groups:
                runs.extend(lower.words[idx].repeat(count).runs)
            new_words.append(Word.from_runs(runs))

    h_next = lower.k * lower.h + (spacer_total or 0)
    delta = Fraction(spacer_total or 0, lower.k * lower.h)
    new_words_t = tuple(new_words)
    f_next = lower.f if f_next is None else f_next
    l_next = lower.l if l_next is None else l_next
    level = ConstructionLevel(
        index=lower.index + 1,
        words=new_words_t,
        h=h_next,
        f=f_next,
        k=f_next * len(new_words_t),
        l=l_next,
        delta=delta,
    )
    out = ConstructionSequence(
        seq.levels + (level,), circular=seq.circular or circular
    )
    a3 = check_A3(lower, level, alphabet)
    return out, a3


def derive_parameters_from_tree(tree, depth: int) -> list[LevelPlan]:
    """Deterministic demonstrative map from a tree to a plan sequence.

    The pattern type used at level n is selected by hashing the multiset of
    tree nodes of length n. Two lower words are assumed; each plan builds two
    new words from block order and repetition layout chosen by the hash. This
    is a stand-in parameterization, not a reduction.
    """
    plans = []
    for n in range(depth):
        nodes = sorted(s.entries for s in tree.nodes if len(s.entries) == n)
        digest = hashlib.sha256(
            json.dumps(nodes, separators=(",", ":")).encode()
        ).digest()
        variant = digest[0] % 4
        # two lower words, f = 4, l = 2: four layouts of the same arithmetic
        layouts = {
            0: ([(0, 2), (1, 2), (0, 2), (1, 2)], [(1, 2), (0, 2), (1, 2), (0, 2)]),
            1: ([(0, 4), (1, 4)], [(1, 4), (0, 4)]),
            2: ([(0, 2), (1, 4), (0, 2)], [(1, 2), (0, 4), (1, 2)]),
            3: ([(1, 4), (0, 4)], [(0, 4), (1, 4)]),
        }
        a, b = layouts[variant]
        plans.append(LevelPlan((tuple(a), tuple(b))))
    return plans


# ---------------------------------------------------------------------------
# Serialization

def sequence_to_json(seq: ConstructionSequence) -> dict:
    return {
        "circular": seq.circular,
        "levels": [
            {
                "index": lvl.index,
                "h": lvl.h,
                "f": lvl.f,
                "k": lvl.k,
                "l": lvl.l,
                "delta": [lvl.delta.numerator, lvl.delta.denominator],
                "words": [w.to_text() for w in lvl.words],
            }
            for lvl in seq.levels
        ],
    }


def sequence_from_json(doc: dict) -> ConstructionSequence:
    levels = tuple(
        ConstructionLevel(
            index=lvl["index"],
            words=tuple(Word.from_text(t) for t in lvl["words"]),
            h=lvl["h"],
            f=lvl["f"],
            k=lvl["k"],
            l=lvl["l"],
            delta=Fraction(*lvl["delta"]),
        )
        for lvl in doc["levels"]
    )
    return ConstructionSequence(levels, circular=doc["circular"])
