"""Seeded simulation of the evolving-set process.

Starting from S_0 = {x}, each step draws u uniform on [0, 1] and moves to
the level set S_{t+1} = {v : Q(S_t, v) >= u pi(v)}.  The measure sequence
pi(S_t) is a martingale, absorbed at 0 and 1, and the per-step expectation
of f applied to the folded measure contracts at the chain's f-congestion
rate.  The checks in this module witness both facts against exact curves:
sampled inequalities carry a three-standard-error margin plus a 1e-12
floor for distances at the binary64 noise level; per-set identities are
verified exactly by integrating over u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .chains import StochasticKernel, stationary
from .errors import MismatchedChain
from .exact import MixingCurve
from .isoperimetry import (
    SYMMETRIC_F,
    f_congestion,
    level_set_profile,
    resolve_f,
    _as_mask,
    _mask_bits,
)

SAMPLING_SIGMA = 3.0
NOISE_FLOOR = 1e-12


def evolve_step(k: StochasticKernel, s, u: float) -> int:
    """One level-set step: the mask of {v : Q(S, v) >= u pi(v)}.

    At u = 0 every vertex qualifies (all ratios are >= 0), so the result
    is the full space; just above the largest ratio it is empty.  Ratio
    ties at u itself are kept, per the closed inequality.
    """
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u={u} outside [0, 1]")
    pi = stationary(k).weights
    mask = _as_mask(k.n, s)
    bits = _mask_bits(k.n, mask)
    qvec = (pi[bits, None] * k.rows[bits]).sum(axis=0)
    keep = qvec >= u * pi
    return int(np.where(keep, 1 << np.arange(k.n, dtype=np.int64), 0).sum())


@dataclass(frozen=True)
class EvolvingSetTrace:
    """Trajectories of the evolving-set process from one start state."""

    seed: int
    n_trials: int
    horizon: int
    start: int
    start_weight: float
    chain_key: str
    measures: np.ndarray   # (n_trials, horizon + 1)
    masks: np.ndarray      # (n_trials, horizon + 1) packed bitmasks
    draws: np.ndarray      # (n_trials, horizon) the u variables

    def visited_masks(self) -> list[int]:
        """Distinct sets visited across all trials and steps."""
        return sorted(int(m) for m in np.unique(self.masks))

    def product_estimate(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-step mean and standard error of pi(S_t)(1 - pi(S_t))."""
        vals = self.measures * (1.0 - self.measures)
        return vals.mean(axis=0), vals.std(axis=0, ddof=1) / np.sqrt(self.n_trials)

    def folded_f_estimate(self, f) -> tuple[np.ndarray, np.ndarray]:
        """Per-step mean and standard error of f(min(pi(S_t), 1 - pi(S_t)))."""
        func = resolve_f(f)
        vals = np.asarray(func(np.minimum(self.measures, 1.0 - self.measures)))
        return vals.mean(axis=0), vals.std(axis=0, ddof=1) / np.sqrt(self.n_trials)

    def to_csv(self) -> str:
        lines = ["trial,t,measure"]
        for i in range(self.n_trials):
            lines += [f"{i},{t},{m:.17g}" for t, m in enumerate(self.measures[i])]
        return "\n".join(lines) + "\n"

    def summary_dict(self) -> dict:
        mean, se = self.product_estimate()
        return {
            "seed": self.seed,
            "trials": self.n_trials,
            "horizon": self.horizon,
            "start": self.start,
            "chain": self.chain_key,
            "product_mean": mean,
            "product_se": se,
        }


def simulate(k: StochasticKernel, start: int, horizon: int, n_trials: int,
             seed: int) -> EvolvingSetTrace:
    """Run n_trials independent trajectories from S_0 = {start}.

    Each trial draws its uniforms from a substream keyed by (seed, trial
    index), so results are bit-identical for fixed arguments regardless
    of batching or thread count.  Absorbed trajectories (empty or full
    sets) are held fixed.
    """
    if n_trials < 1 or horizon < 0:
        raise ValueError("need n_trials >= 1 and horizon >= 0")
    if not 0 <= start < k.n:
        raise ValueError(f"start {start} outside range(0, {k.n})")
    pi = stationary(k).weights
    w = pi[:, None] * k.rows
    n = k.n
    powers = 1 << np.arange(n, dtype=np.int64)
    full = (1 << n) - 1

    draws = np.empty((n_trials, horizon))
    for i in range(n_trials):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(i,)))
        draws[i] = rng.random(horizon)

    bits = np.zeros((n_trials, n), dtype=bool)
    bits[:, start] = True
    masks = np.empty((n_trials, horizon + 1), dtype=np.int64)
    measures = np.empty((n_trials, horizon + 1))
    masks[:, 0] = 1 << start
    measures[:, 0] = pi[start]
    for t in range(horizon):
        qmat = bits @ w
        ratios = qmat / pi[None, :]
        nxt = ratios >= draws[:, t][:, None]
        alive = (masks[:, t] != 0) & (masks[:, t] != full)
        bits[alive] = nxt[alive]
        masks[:, t + 1] = bits @ powers
        measures[:, t + 1] = bits @ pi
    return EvolvingSetTrace(seed, n_trials, horizon, start, float(pi[start]),
                            k.fingerprint(), measures, masks, draws)


# ---------------------------------------------------------------------------
# Checks against exact quantities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StepVerdicts:
    """Per-step pass/fail of a sampled inequality, with its margins."""

    passed: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray

    def all_pass(self) -> bool:
        return bool(self.passed.all())

    def failures(self) -> list[int]:
        return [int(t) for t in np.flatnonzero(~self.passed)]


def tv_domination_check(trace: EvolvingSetTrace, curve: MixingCurve) -> StepVerdicts:
    """Sampled E pi(S_t)(1 - pi(S_t)) / pi(x) must dominate the exact TV curve.

    Passes at step t when estimate + slack >= TV(t) for the same chain and
    start state.  The slack combines three standard errors with the
    zero-count allowance 3/(4 N): once every trajectory is absorbed the
    empirical spread is zero, yet unobserved survivors could still
    contribute up to 1/4 each with probability on the order of 3/N, so
    the empirical SE alone would understate the estimator's uncertainty.
    """
    if curve.kind != "tv":
        raise MismatchedChain(f"curve kind {curve.kind!r}, expected 'tv'")
    if curve.chain_key != trace.chain_key:
        raise MismatchedChain("curve and trace come from different kernels")
    if curve.start != trace.start:
        raise MismatchedChain(f"curve start {curve.start}, trace start {trace.start}")
    if curve.t_max < trace.horizon:
        raise MismatchedChain("exact curve shorter than the simulated horizon")
    mean, se = trace.product_estimate()
    estimate = mean / trace.start_weight
    rare = 0.75 / trace.n_trials
    slack = (SAMPLING_SIGMA * se + rare) / trace.start_weight + NOISE_FLOOR
    exact_tv = curve.values[: trace.horizon + 1]
    return StepVerdicts(estimate + slack >= exact_tv, estimate + slack, exact_tv)


def contraction_check(trace: EvolvingSetTrace, c_f: float, f) -> StepVerdicts:
    """Sampled one-step contraction of E f(pi(S_t folded)) at rate c_f.

    Uses the per-trial pairing D_t = f_t - c_f f_{t-1}; step t passes when
    mean(D_t) <= 3 SE(D_t) + 1e-12.
    """
    func = resolve_f(f)
    vals = np.asarray(func(np.minimum(trace.measures, 1.0 - trace.measures)))
    diff = vals[:, 1:] - c_f * vals[:, :-1]
    mean = diff.mean(axis=0)
    se = diff.std(axis=0, ddof=1) / np.sqrt(trace.n_trials)
    slack = SAMPLING_SIGMA * se + NOISE_FLOOR
    return StepVerdicts(mean <= slack, mean, slack)


@dataclass(frozen=True)
class ConditionalCheck:
    mask: int
    lhs: float
    rhs: float
    ok: bool


def conditional_contraction_check(k: StochasticKernel, masks: Iterable[int], f,
                                  tol: float = 1e-12) -> list[ConditionalCheck]:
    """Exact per-set contraction: integral over u of f(folded next measure).

    For each nondegenerate visited set S the u-integral of
    f(min(pi(S_u), 1 - pi(S_u))) must not exceed f(pi(S folded)) times the
    congestion of the folded set.  For the symmetric weights the two sides
    agree exactly (the comparison also verifies the mirror identity
    between the level sets of S and of its complement); the congestion of
    the folded set is computed with the same folding so the identity holds
    for the entropy weight as well.
    """
    func = resolve_f(f)
    folded = lambda m: func(np.minimum(np.asarray(m, dtype=float), 1.0 - np.asarray(m, dtype=float)))
    pi = stationary(k).weights
    full = (1 << k.n) - 1
    out = []
    for mask in masks:
        if mask == 0 or mask == full:
            continue
        lhs = level_set_profile(k, mask).integrate(folded)
        measure = float(pi[_mask_bits(k.n, mask)].sum())
        sharp = mask if measure <= 0.5 else (full ^ mask)
        rhs = level_set_profile(k, sharp).integrate(folded)
        ok = lhs <= rhs + tol
        if isinstance(f, str) and f in SYMMETRIC_F:
            # Symmetric weights: the plain congestion gives the same bound.
            sharp_measure = min(measure, 1.0 - measure)
            plain = float(folded(np.array([sharp_measure]))[0]) * f_congestion(k, sharp, f)
            ok = ok and lhs <= plain + tol and abs(lhs - rhs) <= tol
        out.append(ConditionalCheck(int(mask), float(lhs), float(rhs), bool(ok)))
    return out


def martingale_check(k: StochasticKernel, masks: Iterable[int],
                     tol: float = 1e-12) -> list[ConditionalCheck]:
    """Exact per-set martingale identity: integral of pi(S_u) du = pi(S)."""
    pi = stationary(k).weights
    full = (1 << k.n) - 1
    out = []
    for mask in masks:
        if mask == 0 or mask == full:
            continue
        prof = level_set_profile(k, mask)
        lhs = prof.integrate(lambda m: m)
        rhs = prof.set_measure
        out.append(ConditionalCheck(int(mask), float(lhs), float(rhs),
                                    bool(abs(lhs - rhs) <= tol)))
    return out
