"""Exact LCS length for run-length-encoded strings.

The kernel processes word X run by run while maintaining the DP row

    v(j) = LCS(processed prefix of X, Y[:j]),   j = 0..|Y|,

as a piecewise-linear integer function with slopes in {0, 1}, stored at
breakpoints only. Appending a run c^q updates the row through the exact
identity

    v'(j) = max_{j' <= j} [ v(j') + min(q, C(j) - C(j')) ],

where C is the prefix count of c in Y: an optimal alignment splits at the
position j' preceding the first matched c of the run, matches min(q, ...)
of the run's symbols greedily, and uses the old row before the split.

Two facts keep everything exact without materializing positions:

* the update target is again nondecreasing with slopes in {0, 1}, so on any
  interval whose endpoint rise is 0 or the full width the function is
  forced; intervals violating this are bisected until none remain;
* for a periodic X over a periodic Y, the per-chunk update operator O is
  max-plus linear, so once one verified chunk satisfies
  v_new = max(v_old, shift(v_old) + g) the relation propagates:
  after i more chunks v = max_{0<=a<=i} shift^a(v_old) + a*g, which is
  evaluated by doubling instead of run-by-run iteration.

Hot paths are numpy int64 throughout; positions and values stay far below
2^40, so the arithmetic is exact.
"""

from __future__ import annotations

from math import gcd

import numpy as np

NEG = -(1 << 50)  # -infinity sentinel; never observable in results

_EXPAND_FALLBACK = 4096  # plain DP below this expanded size


# ---------------------------------------------------------------------------
# plain DP fallback


def _expand_codes(runs: list[tuple[int, int]]) -> np.ndarray:
    return np.repeat(
        np.fromiter((s for s, _ in runs), dtype=np.int32, count=len(runs)),
        np.fromiter((c for _, c in runs), dtype=np.int64, count=len(runs)),
    )


def _lcs_row_codes(xa: np.ndarray, xb: np.ndarray) -> int:
    m = len(xb)
    prev = np.zeros(m + 1, dtype=np.int64)
    cur = np.zeros(m + 1, dtype=np.int64)
    for i in range(len(xa)):
        np.maximum(prev[1:], prev[:-1] + (xb == xa[i]), out=cur[1:])
        np.maximum.accumulate(cur, out=cur)
        prev, cur = cur, prev
    return int(prev[-1])


# ---------------------------------------------------------------------------
# piecewise-linear rows: breakpoint arrays xs (positions) and vs (values)


def _pl_eval(xs: np.ndarray, vs: np.ndarray, pts: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(xs, pts, side="right") - 1
    np.clip(idx, 0, len(xs) - 2, out=idx)
    x0 = xs[idx]
    v0 = vs[idx]
    slope = (vs[idx + 1] - v0) // np.maximum(xs[idx + 1] - x0, 1)
    return v0 + slope * (pts - x0)


def _consolidate(xs: np.ndarray, vs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(xs) <= 2:
        return xs, vs
    slopes = (np.diff(vs) > 0).astype(np.int8)
    keep = np.empty(len(xs), dtype=bool)
    keep[0] = True
    keep[-1] = True
    keep[1:-1] = slopes[1:] != slopes[:-1]
    return xs[keep], vs[keep]


class _PLViolation(Exception):
    """Candidate function is not a nondecreasing 1-Lipschitz integer row."""


def _reconstruct(cand: np.ndarray, vals: np.ndarray, evaluate):
    """Bisect intervals whose rise is neither 0 nor the width.

    A nondecreasing integer function with slopes in {0,1} is forced on any
    interval where the endpoint rise is 0 (flat) or equals the width
    (slope 1); everything else hides a kink and is split at the midpoint.
    """
    for _ in range(64):
        d = np.diff(vals)
        w = np.diff(cand)
        if np.any(d < 0) or np.any(d > w):
            raise _PLViolation("lost monotonicity or 1-Lipschitz")
        bad = (d != 0) & (d != w)
        if not bad.any():
            break
        mids = (cand[:-1][bad] + cand[1:][bad]) // 2
        mv = evaluate(mids)
        cand = np.concatenate([cand, mids])
        vals = np.concatenate([vals, mv])
        order = np.argsort(cand, kind="stable")
        cand = cand[order]
        vals = vals[order]
    else:
        raise _PLViolation("row reconstruction did not converge")
    return _consolidate(cand, vals)


def _floor_log2(x: np.ndarray) -> np.ndarray:
    # exact integer log2 via float mantissa is safe below 2^52
    return np.frexp(x.astype(np.float64))[1] - 1


class _RangeMax:
    def __init__(self, values: np.ndarray):
        self.levels = [values]
        span = 1
        while 2 * span <= len(values):
            prev = self.levels[-1]
            self.levels.append(np.maximum(prev[: len(prev) - span], prev[span:]))
            span *= 2

    def query(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        out = np.full(len(lo), NEG, dtype=np.int64)
        ok = lo <= hi
        if not ok.any():
            return out
        a, b = lo[ok], hi[ok]
        k = _floor_log2(b - a + 1)
        span = (1 << k.astype(np.int64))
        res = np.empty(len(a), dtype=np.int64)
        # group queries by level so each gather is one fancy-index op
        for level in np.unique(k):
            sel = k == level
            table = self.levels[int(level)]
            res[sel] = np.maximum(
                table[a[sel]], table[b[sel] - span[sel] + 1]
            )
        out[ok] = res
        return out


class _SymbolRuns:
    """Per-symbol run geometry of Y: starts, ends (prefix coords), cumcounts."""

    def __init__(self, runs: list[tuple[int, int]]):
        self.m = sum(c for _, c in runs)
        by_symbol: dict[int, list[tuple[int, int]]] = {}
        pos = 0
        for sym, count in runs:
            by_symbol.setdefault(sym, []).append((pos, pos + count))
            pos += count
        self.tables: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        for sym, spans in by_symbol.items():
            cs = np.fromiter((s for s, _ in spans), dtype=np.int64, count=len(spans))
            ce = np.fromiter((e for _, e in spans), dtype=np.int64, count=len(spans))
            cum = np.zeros(len(spans) + 1, dtype=np.int64)
            np.cumsum(ce - cs, out=cum[1:])
            self.tables[sym] = (cs, ce, cum)


def _count_before(cs, ce, cum, pts):
    """C(j): number of symbol occurrences within Y[0:j]."""
    idx = np.searchsorted(ce, pts, side="left")
    idxc = np.minimum(idx, len(cs) - 1)
    inside = np.clip(pts - cs[idxc], 0, None)
    c = cum[idxc] + inside
    return np.where(idx >= len(cs), cum[-1], c)


def _position_of(cs, cum, ts):
    """Prefix position of the t-th occurrence (1-based t <= total)."""
    k = np.searchsorted(cum[1:], ts, side="left")
    return cs[k] + (ts - cum[k])


def _apply_run(xs, vs, symruns: _SymbolRuns, sym: int, q: int):
    """One exact row update for the run sym^q."""
    tab = symruns.tables.get(sym)
    if tab is None:
        return xs, vs  # symbol absent from Y: the row is unchanged
    cs, ce, cum = tab
    total = int(cum[-1])
    m = symruns.m

    # w = v - C structure for window maxima, on merged breakpoints
    mb = np.unique(np.concatenate([xs, cs, ce, np.array([0, m], dtype=np.int64)]))
    wv = _pl_eval(xs, vs, mb) - _count_before(cs, ce, cum, mb)
    segmax = np.maximum(wv[:-1], wv[1:])
    rmq = _RangeMax(segmax)

    def evaluate(pts: np.ndarray) -> np.ndarray:
        cj = _count_before(cs, ce, cum, pts)
        tq = cj - q
        valid = tq >= 0
        lo = np.zeros(len(pts), dtype=np.int64)
        best = np.full(len(pts), NEG, dtype=np.int64)
        if valid.any():
            first_kept = _position_of(cs, cum, tq[valid] + 1)
            lo[valid] = first_kept
            # A-branch: match all q symbols, best old row at the last
            # position with C <= C(j) - q, which is first_kept - 1
            best[valid] = q + _pl_eval(xs, vs, first_kept - 1)
        # B-branch: C(j) + max of w over [lo, j]
        il = np.clip(np.searchsorted(mb, lo, side="right") - 1, 0, len(mb) - 2)
        ih = np.clip(np.searchsorted(mb, pts, side="right") - 1, 0, len(mb) - 2)
        w_ends = np.maximum(
            _pl_eval(xs, vs, lo) - _count_before(cs, ce, cum, lo),
            _pl_eval(xs, vs, pts) - cj,
        )
        wmax = w_ends
        two = ih > il
        if two.any():
            edge = np.maximum(wv[il + 1], wv[ih])
            wmax = np.where(two, np.maximum(wmax, edge), wmax)
        interior = rmq.query(il + 1, ih - 1)
        wmax = np.maximum(wmax, interior)
        return np.maximum(best, cj + wmax)

    # candidate grid: old kinks, C kinks, their forward images under the
    # "advance by q occurrences" map, and the domain ends; missed kinks are
    # recovered by bisection in _reconstruct
    src = np.unique(np.concatenate([xs, cs, ce]))
    taus = _count_before(cs, ce, cum, src) + q
    taus = np.concatenate([taus, taus + 1, np.array([q], dtype=np.int64)])
    taus = taus[(taus >= 1) & (taus <= total)]
    images = _position_of(cs, cum, taus)
    cand = np.unique(
        np.concatenate(
            [
                src,
                images,
                images - 1,
                np.array([0, m], dtype=np.int64),
            ]
        )
    )
    cand = cand[(cand >= 0) & (cand <= m)]
    vals = evaluate(cand)
    return _reconstruct(cand, vals, evaluate)


# ---------------------------------------------------------------------------
# periodic fast path


def _pl_shift_add(xs, vs, delta: int, add: int, m: int):
    """shift_delta(v) + add on [0, m], NEG left of delta.

    The NEG plateau ends at delta - 1 and the shifted function starts at
    delta, so the jump sits between adjacent integers and every integer
    query interpolates exactly.
    """
    if delta == 0:
        return xs, vs + add
    if delta > m:
        return (np.array([0, m], dtype=np.int64),
                np.array([NEG, NEG], dtype=np.int64))
    nx = xs + delta
    keep = nx <= m
    nx = nx[keep]
    nv = vs[keep] + add
    if len(nx) == 0 or nx[-1] < m:
        tail_val = _pl_eval(xs, vs, np.array([m - delta], dtype=np.int64))[0] + add
        nx = np.append(nx, m)
        nv = np.append(nv, tail_val)
    head_x = [0] if delta == 1 else [0, delta - 1]
    nx = np.concatenate([np.array(head_x, dtype=np.int64), nx])
    nv = np.concatenate([np.full(len(head_x), NEG, dtype=np.int64), nv])
    return nx, nv


def _pl_max(fx, fv, gx, gv):
    mb = np.unique(np.concatenate([fx, gx]))

    def evaluate(pts):
        return np.maximum(_pl_eval(fx, fv, pts), _pl_eval(gx, gv, pts))

    return _reconstruct(mb, evaluate(mb), evaluate)


def _pl_equal(fx, fv, gx, gv) -> bool:
    mb = np.unique(np.concatenate([fx, gx]))
    return bool(np.array_equal(_pl_eval(fx, fv, mb), _pl_eval(gx, gv, mb)))


def _smallest_period(items: list) -> int:
    """Smallest p with items[i] == items[i+p] for all i (KMP failure)."""
    n = len(items)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and items[i] != items[k]:
            k = fail[k - 1]
        if items[i] == items[k]:
            k += 1
        fail[i] = k
    return n - fail[-1] if n else 0


def _periodic_core(runs: list[tuple[int, int]]) -> tuple[int, int, int]:
    """(start, stop, period) of the largest exactly periodic run region.

    The period is taken from the middle third (edges of coded words differ),
    then extended outward as far as runs[i] == runs[i + p] holds.
    """
    n = len(runs)
    if n < 8:
        return 0, n, 0
    third = runs[n // 3 : 2 * n // 3]
    p = _smallest_period(third)
    if p == 0 or p > len(third) // 2:
        return 0, n, 0
    lo = n // 3
    while lo > 0 and runs[lo - 1] == runs[lo - 1 + p]:
        lo -= 1
    hi = n // 3 + len(third)
    while hi < n and runs[hi - p] == runs[hi]:
        hi += 1
    return lo, hi, p


def _try_jump_schedule(runs_x, runs_y):
    """Chunking for the periodic fast path, or None.

    Returns (core_lo, core_hi, chunk_runs, delta): chunk_runs consecutive
    X runs advance the row relation by delta Y-positions, where delta is a
    multiple of Y's exact whole-array period so the update kernels commute
    with the shift.
    """
    ry = len(runs_y)
    py = _smallest_period(runs_y)
    if py == 0 or ry % py != 0:
        return None
    period_y_len = sum(c for _, c in runs_y[:py])
    lo, hi, px = _periodic_core(runs_x)
    if px == 0:
        return None
    period_x_len = sum(c for _, c in runs_x[lo : lo + px])
    g = gcd(period_x_len, period_y_len)
    periods_per_chunk = period_y_len // g
    chunk_runs = periods_per_chunk * px
    if chunk_runs > 65536 or chunk_runs > (hi - lo) // 2:
        return None
    delta = period_x_len // g * period_y_len
    return lo, hi, chunk_runs, delta


def _run_with_jump(runs_x, runs_y, symruns, xs, vs):
    m = symruns.m
    schedule = _try_jump_schedule(runs_x, runs_y)
    if schedule is None:
        for sym, q in runs_x:
            xs, vs = _apply_run(xs, vs, symruns, sym, q)
        return xs, vs
    lo, hi, chunk_runs, delta = schedule

    for sym, q in runs_x[:lo]:
        xs, vs = _apply_run(xs, vs, symruns, sym, q)

    n_chunks = (hi - lo) // chunk_runs
    done = 0
    max_probes = 24
    while done < n_chunks:
        base = lo + done * chunk_runs
        prev_xs, prev_vs = xs, vs
        for sym, q in runs_x[base : base + chunk_runs]:
            xs, vs = _apply_run(xs, vs, symruns, sym, q)
        done += 1
        remaining = n_chunks - done
        if remaining == 0 or done > max_probes:
            continue
        # candidate relation: v_new = max(v_old, shift_delta(v_old) + g)
        jumped = False
        probe = int(_pl_eval(xs, vs, np.array([m], dtype=np.int64))[0])
        for dcand in (0, delta):
            if dcand > m:
                continue
            ref = int(
                _pl_eval(prev_xs, prev_vs, np.array([m - dcand], dtype=np.int64))[0]
            )
            gain = probe - ref
            if gain < 0 or (dcand == 0 and gain != 0):
                continue
            try:
                sx, sv = _pl_shift_add(prev_xs, prev_vs, dcand, gain, m)
                cx, cv = _pl_max(prev_xs, prev_vs, sx, sv)
            except _PLViolation:
                continue  # candidate was not a genuine row: identity false
            if _pl_equal(cx, cv, xs, vs):
                if dcand > 0:
                    xs, vs = _jump_chunks(xs, vs, dcand, gain, remaining, m)
                # dcand == 0, gain == 0 is a fixpoint: nothing left to do
                done = n_chunks
                jumped = True
                break
        if jumped:
            break

    for sym, q in runs_x[lo + n_chunks * chunk_runs :]:
        xs, vs = _apply_run(xs, vs, symruns, sym, q)
    return xs, vs


def _jump_chunks(xs, vs, delta: int, gain: int, count: int, m: int):
    """Evaluate max_{0<=a<=count} shift^(a*delta)(v) + a*gain by doubling.

    Uses the monoid (s, S_s) * (t, S_t) = (s+t, max(S_s, shift^(s*delta)(S_t)
    + s*gain)) with S_0 = v, via square-and-multiply over count.
    """
    res_steps, res_x, res_v = 0, xs, vs
    base_steps = 1
    base_x, base_v = _pl_max(xs, vs, *_pl_shift_add(xs, vs, delta, gain, m))
    remaining = count
    while remaining:
        if remaining & 1:
            sx, sv = _pl_shift_add(base_x, base_v, res_steps * delta,
                                   res_steps * gain, m)
            res_x, res_v = _pl_max(res_x, res_v, sx, sv)
            res_steps += base_steps
        remaining >>= 1
        if remaining:
            bx, bv = _pl_shift_add(base_x, base_v, base_steps * delta,
                                   base_steps * gain, m)
            base_x, base_v = _pl_max(base_x, base_v, bx, bv)
            base_steps *= 2
    return res_x, res_v


# ---------------------------------------------------------------------------
# entry point


def _encode_runs(runs_a, runs_b):
    table: dict = {}
    out = []
    for runs in (runs_a, runs_b):
        enc = []
        for sym, count in runs:
            code = table.setdefault(sym, len(table))
            enc.append((code, int(count)))
        out.append(enc)
    return out[0], out[1]


def rle_lcs_length(runs_a, runs_b) -> int:
    """Exact LCS length of the expansions of two canonical RLE run lists."""
    a, b = _encode_runs(list(runs_a), list(runs_b))
    n = sum(c for _, c in a)
    m = sum(c for _, c in b)
    if n == 0 or m == 0:
        return 0
    if max(n, m) <= _EXPAND_FALLBACK:
        return _lcs_row_codes(_expand_codes(a), _expand_codes(b))
    # the row lives on the side with fewer updates to its structure:
    # X = more runs keeps the breakpoint state small
    if len(a) < len(b):
        a, b = b, a
        n, m = m, n
    symruns = _SymbolRuns(b)
    xs = np.array([0, m], dtype=np.int64)
    vs = np.array([0, 0], dtype=np.int64)
    xs, vs = _run_with_jump(a, b, symruns, xs, vs)
    return int(vs[-1])
