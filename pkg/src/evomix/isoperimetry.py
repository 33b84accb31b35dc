"""Set-expansion quantities computed exhaustively over subsets.

For a kernel P with stationary pi, the ergodic flow is
Q(A,B) = sum_{x in A, y in B} pi(x) P(x,y).  Each set A induces the
level sets A_u = {v : Q(A,v) >= u pi(v)} whose measure profile
u -> pi(A_u) integrates to pi(A).  From that profile come:

  flow_area(A)    half the area between pi(A_u) and the constant pi(A)
  flow_min(A)     least fractional flow from A into mass pi(A^c)
                  (equal to flow_area(A); both are kept as a cross-check)
  capped_flow(A)  flow_min with per-vertex flows capped at pi(v)/2
  f_congestion(A) integral of f(pi(A_u)) du over f(pi(A))

plus the global scalars: the smallest positive gap between subset
measures, the smallest cut flow Q(A, A^c), the smallest stationary
weight, and the congestion maxima/profiles used by the bound formulas.
Exhaustive enumeration is capped at 20 states and is vectorized in
chunks over the leading mask bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

import numpy as np

from .chains import DirectedMultigraph, StochasticKernel, stationary
from .errors import EmptyOrFullSet, StateSpaceTooLarge, ZeroDenominator

ENUM_STATE_CAP = 20
CHUNK_BITS = 16
MEASURE_HALF_TOL = 1e-12

SetLike = Union["VertexSet", int, Iterable[int]]


# ---------------------------------------------------------------------------
# Concave test functions
# ---------------------------------------------------------------------------

def _f_sin(a):
    return np.sin(np.pi * a)


def _f_quad(a):
    return a * (1.0 - a)


def _f_entropy(a):
    a = np.asarray(a, dtype=float)
    out = np.zeros_like(a)
    pos = a > 0
    out[pos] = -a[pos] * np.log(a[pos])
    return out if out.ndim else float(out)


def _f_sqrt(a):
    return np.sqrt(np.clip(a * (1.0 - a), 0.0, None))


F_FUNCTIONS: dict[str, Callable] = {
    "sin_pi": _f_sin,
    "a_one_minus_a": _f_quad,
    "a_log_inv_a": _f_entropy,
    "sqrt_a_one_minus_a": _f_sqrt,
}

# f(a) = f(1-a) holds for all but the entropy weight.
SYMMETRIC_F = ("sin_pi", "a_one_minus_a", "sqrt_a_one_minus_a")


def resolve_f(f) -> Callable:
    if callable(f):
        return f
    try:
        return F_FUNCTIONS[f]
    except KeyError:
        raise ValueError(f"unknown f {f!r}; expected one of {tuple(F_FUNCTIONS)}") from None


# ---------------------------------------------------------------------------
# Vertex sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexSet:
    """Subset of states as a bitmask, with its stationary measure cached."""

    n: int
    mask: int
    measure: float

    def __post_init__(self):
        if self.n > ENUM_STATE_CAP:
            raise StateSpaceTooLarge(f"vertex sets capped at n <= {ENUM_STATE_CAP}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError("mask outside state space")

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.mask >> v & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")


def vertex_set(k: StochasticKernel, ids: SetLike) -> VertexSet:
    mask = _as_mask(k.n, ids)
    pi = stationary(k).weights
    return VertexSet(k.n, mask, float(pi[_mask_bits(k.n, mask)].sum()))


def _as_mask(n: int, a: SetLike) -> int:
    if isinstance(a, VertexSet):
        return a.mask
    if isinstance(a, (int, np.integer)):
        return int(a)
    mask = 0
    for v in a:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} outside range(0, {n})")
        mask |= 1 << v
    return mask


def _mask_bits(n: int, mask: int) -> np.ndarray:
    return (mask >> np.arange(n) & 1).astype(bool)


# ---------------------------------------------------------------------------
# Flows and level-set profiles
# ---------------------------------------------------------------------------

def _flow_context(k: StochasticKernel):
    pi = stationary(k).weights
    return pi, pi[:, None] * k.rows


def ergodic_flow(k: StochasticKernel, a: SetLike, b: SetLike) -> float:
    """Q(A,B) = sum over x in A, y in B of pi(x) P(x,y)."""
    pi, w = _flow_context(k)
    abits = _mask_bits(k.n, _as_mask(k.n, a))
    bbits = _mask_bits(k.n, _as_mask(k.n, b))
    return float(w[np.ix_(abits, bbits)].sum())


def flow_vector(k: StochasticKernel, a: SetLike) -> np.ndarray:
    """Per-vertex flows Q(A, v) for all v."""
    pi, w = _flow_context(k)
    abits = _mask_bits(k.n, _as_mask(k.n, a))
    return w[abits].sum(axis=0)


@dataclass(frozen=True)
class LevelSetProfile:
    """Step function u -> pi(A_u) on [0, 1].

    ``measures[i]`` is the value on the open interval
    (thresholds[i], thresholds[i+1]); at a threshold u the set keeps the
    vertices with ratio exactly u (the printed ">=" convention), which
    changes the function on a null set only.
    """

    thresholds: np.ndarray
    measures: np.ndarray
    set_measure: float

    def __post_init__(self):
        t = np.asarray(self.thresholds, dtype=float)
        m = np.asarray(self.measures, dtype=float)
        t.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "thresholds", t)
        object.__setattr__(self, "measures", m)

    def integrate(self, g: Callable) -> float:
        """Exact piecewise integral of g(pi(A_u)) du over [0, 1]."""
        widths = np.diff(self.thresholds)
        return float((widths * np.asarray(g(self.measures), dtype=float)).sum())

    def value_at(self, u: float) -> float:
        """Measure of {v : ratio >= u} (closed at thresholds)."""
        idx = int(np.searchsorted(self.thresholds, u, side="left"))
        if idx == 0:
            return 1.0
        if idx > self.measures.shape[0]:
            return float(self.measures[-1])
        return float(self.measures[idx - 1])

    def crossing(self) -> float:
        """Largest u with pi(A_u) > pi(A) (0 when the profile never exceeds)."""
        above = self.measures > self.set_measure
        if not above.any():
            return 0.0
        return float(self.thresholds[1:][above].max())


def _profile_from_ratios(ratios: np.ndarray, pi: np.ndarray, set_measure: float) -> LevelSetProfile:
    order = np.argsort(-ratios, kind="stable")
    r_desc = ratios[order]
    cum = np.cumsum(pi[order])
    thresholds = [0.0]
    measures = []
    # Walk thresholds upward: on (r_{j+1}, r_j] the measure is cum[j].
    uniq_desc = []
    j = 0
    while j < r_desc.shape[0]:
        k_ = j
        while k_ + 1 < r_desc.shape[0] and r_desc[k_ + 1] == r_desc[j]:
            k_ += 1
        uniq_desc.append((float(r_desc[j]), float(cum[k_])))
        j = k_ + 1
    for r, m in reversed(uniq_desc):
        if r <= 0.0:
            continue
        measures.append(m)
        thresholds.append(min(r, 1.0))
    if thresholds[-1] < 1.0:
        thresholds.append(1.0)
        measures.append(0.0)
    return LevelSetProfile(np.array(thresholds), np.array(measures), set_measure)


def level_set_profile(k: StochasticKernel, a: SetLike) -> LevelSetProfile:
    """Profile of A_u = {v : Q(A,v) >= u pi(v)}; integrates to pi(A)."""
    pi, w = _flow_context(k)
    mask = _as_mask(k.n, a)
    _require_proper(k.n, mask)
    abits = _mask_bits(k.n, mask)
    qvec = w[abits].sum(axis=0)
    return _profile_from_ratios(qvec / pi, pi, float(pi[abits].sum()))


def _require_proper(n: int, mask: int):
    if mask == 0 or mask == (1 << n) - 1:
        raise EmptyOrFullSet("quantity is degenerate on the empty or full set")


# ---------------------------------------------------------------------------
# Modified ergodic flow (area and greedy forms) and its capped variant
# ---------------------------------------------------------------------------

def flow_area(k: StochasticKernel, a: SetLike) -> float:
    """Half the area between the level-set profile and the constant pi(A)."""
    prof = level_set_profile(k, a)
    c = prof.set_measure
    return 0.5 * prof.integrate(lambda m: np.abs(m - c))


def _greedy_min_flow(ratios: np.ndarray, contrib: np.ndarray, pi: np.ndarray,
                     target: float) -> float:
    """Least total contribution over fractional selections of mass ``target``.

    Vertices are taken in ascending ratio order (ties by id); ``contrib``
    holds each vertex's full contribution and is prorated for the final
    fractional vertex.
    """
    order = np.argsort(ratios, kind="stable")
    cum = np.cumsum(pi[order])
    target = min(target, float(cum[-1]))
    j = int(np.searchsorted(cum, target, side="left"))
    if j >= cum.shape[0]:
        j = cum.shape[0] - 1
    before = float(cum[j - 1]) if j > 0 else 0.0
    frac = (target - before) / pi[order[j]]
    frac = min(max(frac, 0.0), 1.0)
    return float(contrib[order[:j]].sum()) + frac * float(contrib[order[j]])


def flow_min(k: StochasticKernel, a: SetLike) -> float:
    """Least ergodic flow from A into a (fractional) set of mass pi(A^c).

    Equals flow_area(A); the two are independent evaluation routes of the
    same quantity.
    """
    pi, w = _flow_context(k)
    mask = _as_mask(k.n, a)
    _require_proper(k.n, mask)
    abits = _mask_bits(k.n, mask)
    qvec = w[abits].sum(axis=0)
    return _greedy_min_flow(qvec / pi, qvec, pi, 1.0 - float(pi[abits].sum()))


def capped_flow(k: StochasticKernel, a: SetLike) -> float:
    """flow_min with per-vertex flows capped at pi(v)/2.

    Never exceeds flow_min(A); equals it for lazy chains and whenever
    flow_min(A) is at most half the minimal measure gap.
    """
    pi, w = _flow_context(k)
    mask = _as_mask(k.n, a)
    _require_proper(k.n, mask)
    abits = _mask_bits(k.n, mask)
    qvec = w[abits].sum(axis=0)
    capped = np.minimum(qvec, pi / 2.0)
    return _greedy_min_flow(capped / pi, capped, pi, 1.0 - float(pi[abits].sum()))


def f_congestion(k: StochasticKernel, a: SetLike, f) -> float:
    """C_f(A) = integral of f(pi(A_u)) du, divided by f(pi(A))."""
    func = resolve_f(f)
    prof = level_set_profile(k, a)
    denom = float(func(np.array([prof.set_measure]))[0])
    if denom <= 0.0:
        raise ZeroDenominator(f"f(pi(A)) = {denom} for pi(A) = {prof.set_measure}")
    return prof.integrate(func) / denom


# ---------------------------------------------------------------------------
# Exact-rational companions (available when the kernel carries Fractions)
# ---------------------------------------------------------------------------

def flow_vector_exact(k: StochasticKernel, a: SetLike) -> Optional[tuple[Fraction, ...]]:
    if k.exact is None:
        return None
    pi = stationary(k).exact
    if pi is None:
        return None
    mask = _as_mask(k.n, a)
    return tuple(
        sum((pi[x] * k.exact[x][y] for x in range(k.n) if mask >> x & 1), Fraction(0))
        for y in range(k.n)
    )


def flow_min_exact(k: StochasticKernel, a: SetLike) -> Optional[Fraction]:
    """Greedy minimal flow evaluated in exact rational arithmetic."""
    qvec = flow_vector_exact(k, a)
    if qvec is None:
        return None
    pi = stationary(k).exact
    mask = _as_mask(k.n, a)
    target = 1 - sum((pi[v] for v in range(k.n) if mask >> v & 1), Fraction(0))
    order = sorted(range(k.n), key=lambda v: (qvec[v] / pi[v], v))
    total = Fraction(0)
    flow = Fraction(0)
    for v in order:
        if total + pi[v] <= target:
            total += pi[v]
            flow += qvec[v]
        else:
            flow += (target - total) / pi[v] * qvec[v]
            break
    return flow


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

def _check_enum_cap(n: int):
    if n > ENUM_STATE_CAP:
        raise StateSpaceTooLarge(f"exhaustive enumeration capped at n <= {ENUM_STATE_CAP}")


def _mask_chunks(n: int):
    total = 1 << n
    step = min(total, 1 << CHUNK_BITS)
    for lo in range(0, total, step):
        masks = np.arange(lo, min(lo + step, total), dtype=np.int64)
        if lo == 0:
            masks = masks[1:]
        if masks.size and masks[-1] == total - 1:
            masks = masks[:-1]
        if masks.size:
            yield masks


@dataclass
class _Batch:
    masks: np.ndarray
    measures: np.ndarray       # pi(A)
    cut: np.ndarray            # Q(A, A^c)
    area: np.ndarray           # flow_area(A)
    greedy: np.ndarray         # flow_min(A)
    capped: np.ndarray         # capped_flow(A)
    f_integrals: dict[str, np.ndarray]
    denominators: dict[str, np.ndarray]


def _enumerate_batches(k: StochasticKernel, f_names=()):
    """Vectorized per-chunk tables for every nonempty proper subset."""
    _check_enum_cap(k.n)
    pi, w = _flow_context(k)
    n = k.n
    ids = np.arange(n)
    funcs = {name: resolve_f(name) for name in f_names}
    for masks in _mask_chunks(n):
        bits = (masks[:, None] >> ids[None, :] & 1).astype(bool)
        measures = bits @ pi
        qmat = bits.astype(float) @ w
        ratios = qmat / pi[None, :]
        cut = measures - (qmat * bits).sum(axis=1)

        desc = np.argsort(-ratios, axis=1, kind="stable")
        r_desc = np.take_along_axis(ratios, desc, axis=1)
        cum_mass = np.cumsum(np.take_along_axis(np.broadcast_to(pi, ratios.shape), desc, axis=1), axis=1)
        widths = r_desc - np.concatenate([r_desc[:, 1:], np.zeros((r_desc.shape[0], 1))], axis=1)

        area = 0.5 * ((widths * np.abs(cum_mass - measures[:, None])).sum(axis=1)
                      + (1.0 - r_desc[:, 0]) * measures)

        asc = np.argsort(ratios, axis=1, kind="stable")
        greedy = _greedy_bulk(ratios, qmat, pi, measures, asc)
        qhat = np.minimum(qmat, 0.5 * pi[None, :])
        rhat = np.minimum(ratios, 0.5)
        asc_hat = np.argsort(rhat, axis=1, kind="stable")
        capped = _greedy_bulk(rhat, qhat, pi, measures, asc_hat)

        f_integrals = {}
        denominators = {}
        for name, func in funcs.items():
            f_integrals[name] = (widths * func(cum_mass)).sum(axis=1)
            denominators[name] = np.asarray(func(measures), dtype=float)
        yield _Batch(masks, measures, cut, area, greedy, capped, f_integrals, denominators)


def _greedy_bulk(ratios, contrib, pi, measures, asc):
    pi_asc = np.take_along_axis(np.broadcast_to(pi, ratios.shape), asc, axis=1)
    contrib_asc = np.take_along_axis(contrib, asc, axis=1)
    cum_mass = np.cumsum(pi_asc, axis=1)
    cum_flow = np.cumsum(contrib_asc, axis=1)
    target = np.minimum(1.0 - measures, cum_mass[:, -1])
    rows = ratios.shape[0]
    j = np.empty(rows, dtype=np.int64)
    for i in range(rows):
        j[i] = np.searchsorted(cum_mass[i], target[i], side="left")
    j = np.minimum(j, ratios.shape[1] - 1)
    before_mass = np.where(j > 0, np.take_along_axis(cum_mass, np.maximum(j - 1, 0)[:, None], axis=1)[:, 0], 0.0)
    before_flow = np.where(j > 0, np.take_along_axis(cum_flow, np.maximum(j - 1, 0)[:, None], axis=1)[:, 0], 0.0)
    pi_j = np.take_along_axis(pi_asc, j[:, None], axis=1)[:, 0]
    c_j = np.take_along_axis(contrib_asc, j[:, None], axis=1)[:, 0]
    frac = np.clip((target - before_mass) / pi_j, 0.0, 1.0)
    return before_flow + frac * c_j


# ---------------------------------------------------------------------------
# Global scalars
# ---------------------------------------------------------------------------

def pi_star(k: StochasticKernel) -> float:
    """Smallest stationary weight."""
    return float(stationary(k).weights.min())


def min_measure_gap(k: StochasticKernel, dedupe_tol: float = 1e-12) -> float:
    """Smallest positive difference between two subset measures.

    All 2^n subset sums of pi are formed, sorted and deduplicated at
    ``dedupe_tol``; the result is the least positive adjacent gap.  When
    the kernel carries exact rationals and the distinct-sum set stays
    small the gap is confirmed in exact arithmetic.
    """
    _check_enum_cap(k.n)
    pi = stationary(k).weights
    sums = np.zeros(1)
    for p in pi:
        sums = np.concatenate([sums, sums + p])
    sums.sort(kind="stable")
    gaps = np.diff(sums)
    gaps = gaps[gaps > dedupe_tol]
    if gaps.size == 0:
        return 0.0
    result = float(gaps.min())
    exact = _min_measure_gap_exact(k)
    if exact is not None:
        result = float(exact)
    return result


def _min_measure_gap_exact(k: StochasticKernel, cap: int = 1 << 16) -> Optional[Fraction]:
    if k.exact is None:
        return None
    pi = stationary(k).exact
    if pi is None:
        return None
    sums = {Fraction(0)}
    for p in pi:
        sums |= {s + p for s in sums}
        if len(sums) > cap:
            return None
    ordered = sorted(sums)
    gaps = [b - a for a, b in zip(ordered, ordered[1:]) if b > a]
    return min(gaps) if gaps else None


def min_cut_flow(k: StochasticKernel) -> float:
    """Smallest Q(A, A^c) over nonempty proper subsets (exhaustive)."""
    best = np.inf
    for batch in _enumerate_batches(k):
        best = min(best, float(batch.cut.min()))
    return best


# ---------------------------------------------------------------------------
# Expansion conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionWitness:
    """First subset (and vertex, for the measure condition) that fails."""

    mask: int
    vertex: Optional[int] = None


def expansion_check(source: Union[StochasticKernel, DirectedMultigraph],
                    kind: str) -> Optional[ExpansionWitness]:
    """Check the neighborhood-growth condition; None means it holds.

    measure:  pi(N(A) minus v) >= pi(A) for every A with pi(A) <= 1/2
              and every vertex v.
    counting: |N(A)| > |A| for every A with |A| <= n/2.

    N(A) is the out-neighborhood under the positive support.
    """
    if isinstance(source, DirectedMultigraph):
        support = source.multiplicity_matrix() > 0
        deg = source.out_degree.astype(float)
        pi = deg / deg.sum()
        n = source.n_vertices
    else:
        support = source.rows > 0.0
        pi = stationary(source).weights
        n = source.n
    _check_enum_cap(n)
    powers = 1 << np.arange(n, dtype=np.int64)
    support_masks = [int(np.where(support[v], powers, 0).sum()) for v in range(n)]

    for mask in range(1, (1 << n) - 1):
        bits = _mask_bits(n, mask)
        nbhd = 0
        for v in np.flatnonzero(bits):
            nbhd |= support_masks[v]
        if kind == "counting":
            if 2 * int(bits.sum()) <= n:
                if bin(nbhd).count("1") <= int(bits.sum()):
                    return ExpansionWitness(mask)
        elif kind == "measure":
            if float(pi[bits].sum()) <= 0.5 + MEASURE_HALF_TOL:
                nb_bits = _mask_bits(n, nbhd)
                nb_measure = float(pi[nb_bits].sum())
                for v in range(n):
                    removed = nb_measure - (pi[v] if nb_bits[v] else 0.0)
                    if removed < float(pi[bits].sum()) - 1e-12:
                        return ExpansionWitness(mask, v)
        else:
            raise ValueError(f"unknown expansion kind {kind!r}")
    return None


# ---------------------------------------------------------------------------
# Congestion maxima and profiles
# ---------------------------------------------------------------------------

def congestion(k: StochasticKernel, f, restrict_to_half: bool = True) -> float:
    """Largest C_f(A); over pi(A) <= 1/2, or over all proper A when unrestricted."""
    func_name = f if isinstance(f, str) else "custom"
    best = -np.inf
    for batch in _enumerate_batches(k, f_names=(f,) if isinstance(f, str) else ()):
        if isinstance(f, str):
            integrals = batch.f_integrals[f]
            denoms = batch.denominators[f]
        else:
            raise ValueError("congestion requires a named f")
        sel = np.ones(batch.masks.shape[0], dtype=bool)
        if restrict_to_half:
            sel &= batch.measures <= 0.5 + MEASURE_HALF_TOL
        sel &= denoms > 0
        if sel.any():
            best = max(best, float((integrals[sel] / denoms[sel]).max()))
    return best


MEASURE_GROUP_TOL = 1e-12


@dataclass(frozen=True)
class CongestionProfile:
    """Step function r -> max of C_f(A) over sets with pi(A) <= r.

    Achievable measures closer than 1e-12 are grouped, absorbing
    last-bit noise in subset sums.
    """

    f_name: str
    measures: np.ndarray
    values: np.ndarray

    def evaluate(self, r) -> np.ndarray:
        idx = np.searchsorted(self.measures, np.asarray(r, dtype=float) + MEASURE_GROUP_TOL,
                              side="right") - 1
        if np.any(idx < 0):
            raise ValueError("profile evaluated below the smallest achievable measure")
        return self.values[idx]

    def to_csv(self) -> str:
        lines = ["r,congestion"]
        lines += [f"{r:.17g},{v:.17g}" for r, v in zip(self.measures, self.values)]
        return "\n".join(lines) + "\n"


def congestion_profile(k: StochasticKernel, f) -> CongestionProfile:
    """Running congestion maximum over achievable measures (all proper sets)."""
    if not isinstance(f, str):
        raise ValueError("congestion_profile requires a named f")
    all_measures = []
    all_values = []
    for batch in _enumerate_batches(k, f_names=(f,)):
        denoms = batch.denominators[f]
        ok = denoms > 0
        all_measures.append(batch.measures[ok])
        all_values.append(batch.f_integrals[f][ok] / denoms[ok])
    measures = np.concatenate(all_measures)
    values = np.concatenate(all_values)
    order = np.argsort(measures, kind="stable")
    measures = measures[order]
    values = np.maximum.accumulate(values[order])
    # Group measures within tolerance; keep the last (largest) value per group.
    group_ends = np.flatnonzero(np.diff(measures) > MEASURE_GROUP_TOL)
    ends = np.concatenate([group_ends, [measures.shape[0] - 1]])
    return CongestionProfile(f, measures[ends], values[ends])


# ---------------------------------------------------------------------------
# Summary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoperimetricSummary:
    """Global expansion scalars for one chain.

    min_flow / min_capped_flow are minima of flow_min / capped_flow over
    nonempty A with pi(A) <= 1/2 (the minimum over all proper sets is the
    same, since flow_min(A) = flow_min(A^c)).  expansion_min/max combine
    the capped flow with half the measure gap; flow_expansion_max does the
    same with the uncapped flow.
    """

    min_flow: float
    min_capped_flow: float
    min_measure_gap: float
    min_cut_flow: float
    min_stationary: float
    expansion_min: float
    expansion_max: float
    flow_expansion_max: float
    set_count_examined: int

    def __post_init__(self):
        if self.min_capped_flow > self.min_flow + 1e-12:
            raise ValueError("capped flow minimum exceeds flow minimum")


def summarize(k: StochasticKernel) -> IsoperimetricSummary:
    """One exhaustive pass computing every global expansion scalar."""
    psi = np.inf
    psi_hat = np.inf
    cut = np.inf
    examined = 0
    for batch in _enumerate_batches(k):
        cut = min(cut, float(batch.cut.min()))
        half = batch.measures <= 0.5 + MEASURE_HALF_TOL
        examined += int(half.sum())
        if half.any():
            psi = min(psi, float(batch.greedy[half].min()))
            psi_hat = min(psi_hat, float(batch.capped[half].min()))
    gap = min_measure_gap(k)
    return IsoperimetricSummary(
        min_flow=psi,
        min_capped_flow=psi_hat,
        min_measure_gap=gap,
        min_cut_flow=cut,
        min_stationary=pi_star(k),
        expansion_min=min(psi_hat, gap / 2.0),
        expansion_max=max(psi_hat, gap / 2.0),
        flow_expansion_max=max(psi, gap / 2.0),
        set_count_examined=examined,
    )
