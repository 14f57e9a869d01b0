"""Coupon-collector mathematics and covering simulations for complete graphs.

Two questions live here.  First, the k-coupon collector: drawing a uniform
k-subset of m coupons per round, how many rounds until every coupon has
appeared?  The closed form is the inclusion–exclusion sum

    E[X] = Σ_{i=1..m} (−1)^{i+1} · C(m,i) / (1 − C(m−i,k)/C(m,k)),

whose terms reach astronomical magnitudes while the result stays near
(m/k)·ln m — naive floating point dies long before the m ≈ 5·10⁵ needed for
1000-node sweeps.  Terms are therefore evaluated in exact scaled-integer
arithmetic, and for very large m the expectation is instead accumulated as
Σ_s Pr(X > s) over the narrow window of s where the survival probability is
neither 1 nor 0 (outside it, negative association of the per-coupon events
bounds Pr(X ≤ s) ≤ exp(−m·q₁ˢ), certifying the plateau).

Second, the simulation: each round draws a uniform random ordering of n nodes
and its n−1 consecutive pairs are added as edges (or arcs) of K_n; the count
of rounds until full coverage is the covering time.  Those draws are
correlated within a round, so the k-coupon value with k = n−1 is only a
numerically-supported stand-in, which is exactly how it is treated by the
consistency checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SimulationResult",
    "coupon_expectation_classic",
    "kcoupon_expectation",
    "sample_cover_times",
    "simulate_cover_complete",
    "pg_cover_count",
    "savings_ratio",
]

#: Above this m the alternating closed form switches to the tail-sum route.
ALTERNATING_LIMIT = 3000

_EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class SimulationResult:
    n: int
    directed: bool
    trials: int
    mean_cover_time: float
    stddev: float
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "directed": self.directed,
            "trials": self.trials,
            "mean_cover_time": self.mean_cover_time,
            "stddev": self.stddev,
            "seed": self.seed,
        }


def coupon_expectation_classic(m: int) -> float:
    """Classic single-coupon expectation ``m · H(m)``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return m * math.fsum(1.0 / i for i in range(1, m + 1))


# ---------------------------------------------------------------------------
# k-coupon closed form
# ---------------------------------------------------------------------------


def _kcoupon_alternating(m: int, k: int) -> float:
    """Exact evaluation of the alternating sum in scaled integers.

    Every term is an integer-rational; with the scale set beyond the largest
    binomial the floor divisions lose less than one part in 10²⁰ combined.
    """
    digits = len(str(math.comb(m, m // 2))) + 25
    scale = 10 ** digits
    cmk = math.comb(m, k)
    acc = 0
    cmi = 1  # C(m, i), updated incrementally
    cmik = math.comb(m - 1, k)  # C(m-i, k), updated incrementally
    for i in range(1, m + 1):
        cmi = cmi * (m - i + 1) // i
        term = cmi * cmk * scale // (cmk - cmik)
        acc += term if i % 2 == 1 else -term
        # advance C(m-i, k) -> C(m-i-1, k); zero once the top index drops below k
        top = m - i - 1
        cmik = cmik * (top - k + 1) // (top + 1) if top >= k else 0
    return float(Fraction(acc, scale))


def _f190_mul(m1: int, e1: int, m2: int, e2: int, shift: int) -> tuple[int, int]:
    """Multiply two normalized (mantissa, exponent) pairs; value = m·2^(e−shift)."""
    prod = (m1 * m2) >> shift
    e = e1 + e2
    if prod >> shift:
        prod >>= 1
        e += 1
    low = 1 << (shift - 2)
    while prod < low:
        prod <<= 1
        e -= 1
    return prod, e


def _float190_pow(num: int, den: int, s: int, shift: int) -> tuple[int, int]:
    """(num/den)^s as (mantissa, exponent) with value = mant·2^(exp−shift).

    Keeps ~``shift`` bits of *relative* precision whatever the magnitude, so
    the result can safely be multiplied by an enormous exact binomial
    afterwards.  A plain fixed-point power would floor to zero long before
    the combined term C(m,i)·q_i^s becomes negligible.
    """
    e0 = num.bit_length() - den.bit_length() + 1
    if shift >= e0:
        mant = (num << (shift - e0)) // den
    else:
        mant = num // (den << (e0 - shift))
    rm, re = 1 << (shift - 1), 1  # the pair encoding exactly 1.0
    for bit in bin(s)[2:]:
        rm, re = _f190_mul(rm, re, rm, re, shift)
        if bit == "1":
            rm, re = _f190_mul(rm, re, mant, e0, shift)
    return rm, re


def _kcoupon_tail_sum(m: int, k: int) -> float:
    """E[X] = Σ_{s≥0} Pr(X > s), evaluated only where it is informative.

    For s with m·q₁ˢ ≥ 40, negative association of the "coupon i still
    missing" indicators gives Pr(X ≤ s) ≤ (1−q₁ˢ)^m ≤ exp(−m·q₁ˢ) ≤ 1e−17,
    so Pr(X > s) is taken as 1.  Past m·q₁ˢ ≤ 1e−18 the union bound kills the
    survival probability and the remaining mass (≤ 1e−18·m/k draws) is
    dropped.  In between, the inclusion–exclusion survival series is summed
    in 190-bit fixed point with per-s incremental updates of the powers.
    """
    shift = 190
    cmk = math.comb(m, k)
    log_q1 = math.log(m - k) - math.log(m)  # q1 = (m-k)/m

    s_low = 0
    if m * math.exp(log_q1) >= 40.0:  # otherwise even s=1 is in the window
        s_low = int(math.floor(math.log(m / 40.0) / -log_q1))
        s_low = max(s_low, 0)

    # choose how many series terms matter: b_i(s) ≤ λ^i / i! with λ = m q1^s ≤ 40·q1⁻¹-ish
    lam = m * math.exp(log_q1 * (s_low + 1))
    lam = max(lam, 1e-30)
    i_max = 1
    log_term = math.log(lam)
    log_bound = log_term
    while log_bound > math.log(1e-30) and i_max < min(m, 500):
        i_max += 1
        log_bound += math.log(lam) - math.log(i_max)
    i_max = min(max(i_max + 8, 8), m)

    # per-draw miss ratios q_i = C(m−i,k)/C(m,k) and whole terms
    # P_i = C(m,i)·q_i^{s_start}, all scaled by 2^shift.  The term is always
    # assembled from a relative-precision power (or an exact rational floor
    # when s_start = 1) so that a huge C(m,i) never amplifies a fixed-point
    # flooring error.
    s_start = s_low + 1
    q_scaled: list[int] = []
    powers: list[int] = []
    cmi = 1
    cmik = cmk
    for i in range(1, i_max + 1):
        cmi = cmi * (m - i + 1) // i
        cmik = cmik * (m - i + 1 - k) // (m - i + 1) if m - i + 1 > k else 0
        if cmik == 0:
            break  # q_i = 0: this and every later term vanish identically
        q_scaled.append((cmik << shift) // cmk)
        if s_start == 1:
            powers.append((cmi * cmik << shift) // cmk)
        else:
            mant, e = _float190_pow(cmik, cmk, s_start, shift)
            whole = cmi * mant
            powers.append(whole << e if e >= 0 else whole >> -e)

    total_scaled = 0
    unit = 1 << shift
    survival_cut = unit // 10**19  # truncate once Pr(X>s) is below 1e-19
    while True:
        while powers and powers[-1] == 0:  # dead terms stay dead
            powers.pop()
            q_scaled.pop()
        survival = 0
        for i, p in enumerate(powers, start=1):
            survival += p if i % 2 == 1 else -p
        if survival <= survival_cut:
            break
        survival = min(survival, unit)  # clamp fixed-point jitter at Pr ≤ 1
        total_scaled += survival
        for idx, q in enumerate(q_scaled):
            powers[idx] = (powers[idx] * q) >> shift
    return (s_low + 1) + float(Fraction(total_scaled, unit))


def kcoupon_expectation(m: int, k: int, method: str = "auto") -> float:
    """Expected draws of uniform k-subsets until all m coupons are seen.

    ``method`` is ``"auto"`` (alternating sum up to m = 3000, tail-sum
    beyond), or explicitly ``"alternating"`` / ``"tail"`` — the two routes are
    independent and exist to cross-check each other.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if not (1 <= k <= m):
        raise ValueError(f"k must lie in 1..m, got k={k}, m={m}")
    if k == m:
        return 1.0
    if method == "auto":
        method = "alternating" if m <= ALTERNATING_LIMIT else "tail"
    if method == "alternating":
        return _kcoupon_alternating(m, k)
    if method == "tail":
        return _kcoupon_tail_sum(m, k)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# covering simulation
# ---------------------------------------------------------------------------


def _cover_time_one(n: int, directed: bool, rng: np.random.Generator,
                    perm_buf: np.ndarray, first_block: int, next_block: int,
                    covered: np.ndarray) -> int:
    """Covering time of one trial; draws random orderings in blocks."""
    m_target = n * (n - 1) // 2 if not directed else n * (n - 1)
    covered[:] = False
    draws = 0
    block = first_block
    chunk = 32
    while True:
        rows = perm_buf[:block]
        rng.permuted(rows, axis=1, out=rows)
        a, b = rows[:, :-1], rows[:, 1:]
        if directed:
            ids = a.astype(np.int64) * n + b
        else:
            ids = np.minimum(a, b).astype(np.int64) * n + np.maximum(a, b)
        for c0 in range(0, block, chunk):
            part = ids[c0 : c0 + chunk]
            flat = part.reshape(-1)
            snapshot = covered[flat].copy()
            covered[flat] = True
            if np.count_nonzero(covered) >= m_target:
                covered[flat] = snapshot  # rewind and replay the chunk exactly
                for row in part:
                    covered[row] = True
                    draws += 1
                    if np.count_nonzero(covered) >= m_target:
                        return draws
                raise AssertionError("chunk completed coverage but replay did not")
            draws += len(part)
        block = next_block


def sample_cover_times(n: int, directed: bool, trials: int, seed: int) -> np.ndarray:
    """Covering times for all trials.  Trial ``t`` depends only on
    ``(seed, t)``, so any partition of the trial range reproduces the same
    numbers — reductions over them are order-insensitive by construction."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    m = n * (n - 1) // 2 if not directed else n * (n - 1)
    expected = (m / (n - 1)) * (math.log(m) + _EULER_GAMMA)
    first_block = max(8, min(int(expected * 0.9) + 4, max(4_000_000 // n, 64)))
    next_block = max(16, int(expected * 0.15) + 4)
    perm_buf = np.tile(np.arange(n, dtype=np.int32), (max(first_block, next_block), 1))
    covered = np.zeros(n * n, dtype=bool)
    times = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        rng = np.random.default_rng((seed, t))
        times[t] = _cover_time_one(n, directed, rng, perm_buf,
                                   first_block, next_block, covered)
    return times


def simulate_cover_complete(n: int, directed: bool, trials: int, seed: int) -> SimulationResult:
    """Monte-Carlo covering of K_n by random node orderings.

    Each trial counts how many orderings were drawn before the union of their
    consecutive pairs (arcs when directed) covers every pair of nodes.
    """
    times = sample_cover_times(n, directed, trials, seed)
    mean = float(times.mean())
    stddev = float(times.std(ddof=1)) if trials > 1 else 0.0
    return SimulationResult(
        n=n,
        directed=directed,
        trials=trials,
        mean_cover_time=mean,
        stddev=stddev,
        seed=seed,
    )


def pg_cover_count(n: int, directed: bool) -> int:
    """Arrangements the cyclic-group construction spends on full coverage:
    ``⌊n/2⌋`` rings for unordered pairs (1 for n ≤ 3), and the whole group —
    n rings for even n, n−1 for odd — for ordered pairs (1 for n = 1)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not directed:
        return max(1, n // 2)
    if n == 1:
        return 1
    return n if n % 2 == 0 else n - 1


def savings_ratio(n: int, trials: int, seed: int) -> float:
    """How many times more draws random orderings need than the group does,
    on the undirected covering problem."""
    if n < 4:
        raise ValueError("savings_ratio needs n >= 4")
    sim = simulate_cover_complete(n, directed=False, trials=trials, seed=seed)
    return sim.mean_cover_time / pg_cover_count(n, directed=False)
