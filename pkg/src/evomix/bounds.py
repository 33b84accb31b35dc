"""Mixing-time, eigenvalue and spectral-gap bound formulas.

Every formula is evaluated exactly as printed from its inputs (measured
congestion, the isoperimetric summary, or the walk parameters m / n / d)
and packaged into tagged report entries.  Asymptotic "approx" forms are
emitted with ``informational=True`` and are never used in dominance
checks.  Bounds whose denominator degenerates (contraction factor >= 1)
are reported as +inf rather than raised, so reports stay total.

Sources are tagged by what produces the bound:

  congestion            from a measured f-congestion maximum
  expansion             from the isoperimetric summary scalars
  simple-walk           uniform-neighbor walk, in terms of edge count m
  max-degree-walk       hold-probability walk, in terms of n and d
  flow-product          products of minimal flow and measure-gap scalars
  profile-integral      integrals against a congestion profile
  reversal-composition  L-infinity bound from two L2 bounds
  spectral-lower        mixing-time lower bound from the slow eigenvalue
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import _serialize
from .errors import InvalidProfileParameters, ProfileTouchesOne
from .isoperimetry import CongestionProfile, IsoperimetricSummary, resolve_f

QUANTITIES = ("tau_tv", "tau_linf", "tau_l2", "tau_entropy", "eigen_gap", "spectral_gap")


# ---------------------------------------------------------------------------
# Report containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEntry:
    source: str
    quantity: str
    value: float
    inputs: dict
    informational: bool = False
    conditional: str = ""

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "quantity": self.quantity,
            "value": self.value,
            "informational": self.informational,
            "conditional": self.conditional,
            "inputs": dict(self.inputs),
        }


@dataclass
class BoundReport:
    chain: str
    eps: float
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, *entries: BoundEntry):
        self.entries.extend(entries)

    def binding(self, quantity: str) -> list[BoundEntry]:
        """Non-informational entries for one quantity."""
        return [e for e in self.entries if e.quantity == quantity and not e.informational]

    def to_dict(self) -> dict:
        return {
            "chain": self.chain,
            "eps": self.eps,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self, indent: int = 2) -> str:
        return _serialize.dumps(self.to_dict(), indent=indent) + "\n"


def _tau_from_contraction(contraction: float, mass: float, eps: float) -> float:
    """Smallest real t with mass * contraction^t <= eps (inf when vacuous)."""
    if not 0.0 <= contraction < 1.0:
        return math.inf
    if mass <= eps:
        return 0.0
    if contraction == 0.0:
        return 1.0
    return math.log(mass / eps) / -math.log(contraction)


# ---------------------------------------------------------------------------
# Bounds from a measured f-congestion
# ---------------------------------------------------------------------------

def congestion_prefactors(f, pi: np.ndarray,
                          achievable_measures: Optional[Sequence[float]] = None
                          ) -> tuple[float, float]:
    """The two maxima multiplying C_f^t in the total-variation bound.

    M1 = max over achievable set measures a <= 1/2 of a(1-a)/f(a);
    M2 = max over states of f(min(pi(x), 1-pi(x))) / pi(x).
    """
    func = resolve_f(f)
    pi = np.asarray(pi, dtype=float)
    if achievable_measures is None:
        sums = np.zeros(1)
        for p in pi:
            sums = np.concatenate([sums, sums + p])
        achievable_measures = sums[(sums > 0) & (sums <= 0.5 + 1e-12)]
    a = np.asarray(achievable_measures, dtype=float)
    a = a[(a > 0) & (a <= 0.5 + 1e-12)]
    m1 = float((a * (1.0 - a) / func(a)).max())
    folded = np.minimum(pi, 1.0 - pi)
    m2 = float((func(folded) / pi).max())
    return m1, m2


def congestion_tv_bound(c_f: float, f, pi: np.ndarray, t: int,
                        achievable_measures=None) -> float:
    """Worst-start total variation after t steps: M1 * M2 * C_f^t."""
    m1, m2 = congestion_prefactors(f, pi, achievable_measures)
    return m1 * m2 * c_f ** t


def congestion_entries(c_f: float, f, pi: np.ndarray, eps: float,
                       achievable_measures=None) -> list[BoundEntry]:
    """Mixing-time and eigenvalue entries from a measured congestion maximum."""
    m1, m2 = congestion_prefactors(f, pi, achievable_measures)
    f_name = f if isinstance(f, str) else "custom"
    inputs = {"c_f": c_f, "f": f_name, "prefactor": m1 * m2}
    tau = _tau_from_contraction(c_f, m1 * m2, eps)
    cond = "" if c_f < 1.0 else "contraction-not-strict"
    return [
        BoundEntry("congestion", "tau_tv", max(tau, 0.0), inputs, conditional=cond),
        BoundEntry("congestion", "eigen_gap", 1.0 - c_f, inputs, conditional=cond),
    ]


# ---------------------------------------------------------------------------
# Bounds from the isoperimetric summary
# ---------------------------------------------------------------------------

def general_entries(s: IsoperimetricSummary, eps: float) -> list[BoundEntry]:
    """Bounds from the expansion scalars of an arbitrary finite chain.

    eigen gap     >= 2 (expansion_min / gap) (1 - cos(2 pi expansion_max))
    tau(eps)      <= log((1 - pi_min)/eps) / -log(1 - eigen bound)
    spectral gap  >= (2 q_min / pi_min) (1 - cos(pi pi_min))
    """
    gap = s.min_measure_gap
    inputs = {
        "expansion_min": s.expansion_min,
        "expansion_max": s.expansion_max,
        "measure_gap": gap,
        "cut_min": s.min_cut_flow,
        "pi_min": s.min_stationary,
    }
    eigen = 2.0 * (s.expansion_min / gap) * (1.0 - math.cos(2.0 * math.pi * s.expansion_max))
    spectral = (2.0 * s.min_cut_flow / s.min_stationary) * (
        1.0 - math.cos(math.pi * s.min_stationary))
    tau = _tau_from_contraction(1.0 - eigen, 1.0 - s.min_stationary, eps)
    cond = "" if eigen > 0 else "vacuous"
    approx_eigen = 2.0 * math.pi ** 2 * s.min_capped_flow * s.expansion_max
    entries = [
        BoundEntry("expansion", "eigen_gap", eigen, inputs, conditional=cond),
        BoundEntry("expansion", "spectral_gap", spectral, inputs),
        BoundEntry("expansion", "tau_tv", max(tau, 0.0), inputs, conditional=cond),
        BoundEntry("expansion", "eigen_gap", approx_eigen, inputs, informational=True),
        BoundEntry("expansion", "spectral_gap",
                   math.pi ** 2 * s.min_stationary * s.min_cut_flow, inputs,
                   informational=True),
    ]
    if approx_eigen > 0 and s.min_stationary < 1.0:
        entries.append(BoundEntry(
            "expansion", "tau_tv",
            math.log((1.0 - s.min_stationary) / eps) / approx_eigen,
            inputs, informational=True))
    return entries


# ---------------------------------------------------------------------------
# Walk-parameter corollaries
# ---------------------------------------------------------------------------

def simple_walk_entries(m: int, eps: float, lazy: bool = False,
                        expansion_verified: Optional[bool] = None) -> list[BoundEntry]:
    """Bounds for the uniform-neighbor walk on a balanced digraph with m edges.

    The spectral bound always holds.  Without laziness the remaining
    bounds need the measure expansion condition; with laziness strong
    connectivity suffices, the spectral bound halves, and m is replaced
    by 2m elsewhere.
    """
    if m < 3:
        raise InvalidProfileParameters(f"edge count m={m} too small")
    spectral = 1.0 - math.cos(2.0 * math.pi / m)
    if lazy:
        spectral *= 0.5
    em = 2 * m if lazy else m
    cond = ""
    if not lazy and expansion_verified is not True:
        cond = "needs-expansion-condition"
    inputs = {"m": m, "lazy": lazy, "effective_m": em}
    eigen = 1.0 - math.cos(2.0 * math.pi / em)
    contraction = math.cos(2.0 * math.pi / em)
    tau = _tau_from_contraction(contraction, 1.0 - 2.0 / em, eps)
    if eps <= 1.0:
        route_a = _tau_from_contraction(contraction, (em - 2) / 2.0, eps)
        route_b = em ** 2 / 6.0 + em ** 2 / 8.0 * math.log(1.0 / eps)
        tau_inf = min(route_a, route_b)
    else:
        tau_inf = em ** 2 * (1.0 + 3.0 * eps) / (3.0 * (1.0 + eps) ** 3)
    entries = [
        BoundEntry("simple-walk", "spectral_gap", spectral, inputs),
        BoundEntry("simple-walk", "eigen_gap", eigen, inputs, conditional=cond),
        BoundEntry("simple-walk", "tau_tv", max(tau, 0.0), inputs, conditional=cond),
        BoundEntry("simple-walk", "tau_linf", max(tau_inf, 0.0), inputs, conditional=cond),
        BoundEntry("simple-walk", "spectral_gap",
                   (0.5 if lazy else 1.0) * 2.0 * math.pi ** 2 / m ** 2,
                   inputs, informational=True),
        BoundEntry("simple-walk", "eigen_gap", 2.0 * math.pi ** 2 / em ** 2,
                   inputs, informational=True, conditional=cond),
        BoundEntry("simple-walk", "tau_tv",
                   em ** 2 / (2.0 * math.pi ** 2) * math.log(1.0 / eps),
                   inputs, informational=True, conditional=cond),
    ]
    if eps < 1.0 / em:
        approx_inf = em ** 2 / (2.0 * math.pi ** 2) * math.log((em - 2) / (2.0 * eps))
    elif eps <= 1.0:
        approx_inf = em ** 2 / 8.0 * math.log(4.0 / eps)
    else:
        approx_inf = em ** 2 / (1.0 + eps) ** 2
    entries.append(BoundEntry("simple-walk", "tau_linf", approx_inf, inputs,
                              informational=True, conditional=cond))
    return entries


def max_degree_entries(n: int, d: int, eps: float, lazy: bool = False,
                       expansion_verified: Optional[bool] = None) -> list[BoundEntry]:
    """Bounds for the hold-probability walk with n states and degree bound d.

    Same shape as simple_walk_entries: laziness halves the spectral bound
    and replaces d by 2d in the rest; otherwise the counting expansion
    condition is required for all but the spectral bound.
    """
    if n < 3 or d < 2:
        raise InvalidProfileParameters(f"need n >= 3 and d >= 2, got n={n}, d={d}")
    spectral = (2.0 / d) * (1.0 - math.cos(math.pi / n))
    if lazy:
        spectral *= 0.5
    ed = 2 * d if lazy else d
    cond = ""
    if not lazy and expansion_verified is not True:
        cond = "needs-expansion-condition"
    inputs = {"n": n, "d": d, "lazy": lazy, "effective_d": ed}
    eigen = (2.0 / ed) * (1.0 - math.cos(math.pi / n))
    contraction = 1.0 - eigen
    tau = _tau_from_contraction(contraction, 1.0 - 1.0 / n, eps)
    if eps <= 1.0:
        route_a = _tau_from_contraction(contraction, float(n - 1), eps)
        route_b = n ** 2 * ed / 3.0 + n ** 2 * ed / 4.0 * math.log(1.0 / eps)
        tau_inf = min(route_a, route_b)
    else:
        tau_inf = n ** 2 * ed * (2.0 / 3.0) * (1.0 + 3.0 * eps) / (1.0 + eps) ** 3
    entries = [
        BoundEntry("max-degree-walk", "spectral_gap", spectral, inputs),
        BoundEntry("max-degree-walk", "eigen_gap", eigen, inputs, conditional=cond),
        BoundEntry("max-degree-walk", "tau_tv", max(tau, 0.0), inputs, conditional=cond),
        BoundEntry("max-degree-walk", "tau_linf", max(tau_inf, 0.0), inputs, conditional=cond),
        BoundEntry("max-degree-walk", "spectral_gap",
                   (0.5 if lazy else 1.0) * math.pi ** 2 / (n ** 2 * d),
                   inputs, informational=True),
        BoundEntry("max-degree-walk", "eigen_gap", math.pi ** 2 / (n ** 2 * ed),
                   inputs, informational=True, conditional=cond),
        BoundEntry("max-degree-walk", "tau_tv",
                   n ** 2 * ed / math.pi ** 2 * math.log(1.0 / eps),
                   inputs, informational=True, conditional=cond),
    ]
    if eps < 1.0 / n:
        approx_inf = n ** 2 * ed / math.pi ** 2 * math.log((n - 1) / eps)
    elif eps <= 1.0:
        approx_inf = n ** 2 * ed / 4.0 * math.log(4.0 / eps)
    else:
        approx_inf = 2.0 * n ** 2 * ed / (1.0 + eps) ** 2
    entries.append(BoundEntry("max-degree-walk", "tau_linf", approx_inf, inputs,
                              informational=True, conditional=cond))
    return entries


# ---------------------------------------------------------------------------
# Worst-case level-set profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WorstCaseProfile:
    """Extremal nonincreasing step curve matching given flow statistics.

    ``case`` is "below_gap" when the flow is under half the measure gap
    (three plateaus separated by the gap) and "above_gap" otherwise (two
    plateaus crossing pi(A) at u = crossing).  ``c_sin`` is the exact
    sine-congestion of the curve.
    """

    case: str
    crossing: float
    thresholds: np.ndarray
    values: np.ndarray
    set_measure: float
    c_sin: float

    def integral(self) -> float:
        return float((np.diff(self.thresholds) * self.values).sum())


def worst_case_profile(pi_a: float, flow: float, capped: float, measure_gap: float,
                       crossing: Optional[float] = None) -> WorstCaseProfile:
    """Build the flattest profile consistent with the inputs.

    For flow < measure_gap/2 the curve sits at pi(A) +/- measure_gap on
    initial/final intervals of width flow/measure_gap, and its sine
    congestion is 1 - 2 (flow/gap)(1 - cos(pi gap)).  Otherwise a
    crossing point in (0, 1/2] is required and the curve has plateaus
    pi(A) + capped/crossing and pi(A) - capped/(1 - crossing).
    """
    if not 0.0 < pi_a <= 0.5 + 1e-12:
        raise InvalidProfileParameters(f"set measure {pi_a} outside (0, 1/2]")
    if flow < 0 or capped < 0 or capped > flow + 1e-12 or measure_gap <= 0:
        raise InvalidProfileParameters("flows must satisfy 0 <= capped <= flow, gap > 0")
    sin_a = math.sin(math.pi * pi_a)
    if flow < measure_gap / 2.0:
        w = flow / measure_gap
        thresholds = np.array([0.0, w, 1.0 - w, 1.0])
        values = np.array([pi_a + measure_gap, pi_a, pi_a - measure_gap])
        c = (w * math.sin(math.pi * (pi_a + measure_gap))
             + (1.0 - 2.0 * w) * sin_a
             + w * math.sin(math.pi * (pi_a - measure_gap))) / sin_a
        return WorstCaseProfile("below_gap", w, thresholds, values, pi_a, c)
    if crossing is None:
        raise InvalidProfileParameters("above-gap case needs a crossing point")
    if not 0.0 < crossing <= 0.5:
        raise InvalidProfileParameters(f"crossing {crossing} outside (0, 1/2]")
    if capped > crossing * (1.0 - crossing) + 1e-12:
        raise InvalidProfileParameters("capped flow exceeds crossing*(1-crossing)")
    if crossing < capped / (1.0 - pi_a) - 1e-12:
        raise InvalidProfileParameters("upper plateau exceeds full measure")
    hi = pi_a + capped / crossing
    lo = pi_a - capped / (1.0 - crossing)
    thresholds = np.array([0.0, crossing, 1.0])
    values = np.array([hi, lo])
    c = (crossing * math.sin(math.pi * hi) + (1.0 - crossing) * math.sin(math.pi * lo)) / sin_a
    return WorstCaseProfile("above_gap", crossing, thresholds, values, pi_a, c)


def sine_congestion_cap(pi_a: float, flow: float, capped: float,
                        measure_gap: float) -> float:
    """Case-combined upper bound on the sine congestion of any matching set."""
    if flow < measure_gap / 2.0:
        return 1.0 - 2.0 * (flow / measure_gap) * (1.0 - math.cos(math.pi * measure_gap))
    return math.cos(2.0 * math.pi * capped)


# ---------------------------------------------------------------------------
# Congestion lower-bound formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongestionLowerBound:
    """Closed-form lower bounds on 1 - C_f(r) from flow and gap minima.

    ``paired`` uses the product of the measure gap and the flow minimum;
    ``squared`` uses the flow minimum squared; ``combined`` is their max.
    Branch indicators are exclusive: the flat branch applies strictly
    above the breakpoint.
    """

    f_name: str
    measure_gap: float
    min_flow: float

    def paired(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        dp = self.measure_gap * self.min_flow
        if self.f_name == "a_one_minus_a":
            return np.where(r <= 0.5, 2.0 * dp / (r * (1.0 - r)), 8.0 * dp)
        if self.f_name == "a_log_inv_a":
            cut = math.exp(-0.5)
            safe = np.where(r < 1.0, r, 0.5)
            return np.where(r <= cut, dp / (2.0 * safe ** 2 * np.log(1.0 / safe)),
                            math.e * dp)
        if self.f_name == "sqrt_a_one_minus_a":
            return np.where(r <= 0.5, dp / (4.0 * r ** 2 * (1.0 - r) ** 2), 4.0 * dp)
        raise ValueError(f"no closed form for f {self.f_name!r}")

    def squared(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        p2 = self.min_flow ** 2
        if self.f_name == "a_one_minus_a":
            return np.where(r <= 0.5, 4.0 * p2 / (r * (1.0 - r)), 16.0 * p2)
        if self.f_name == "a_log_inv_a":
            cut = math.exp(-0.5)
            safe = np.where(r < 1.0, r, 0.5)
            return np.where(r <= cut, 2.0 * p2 / (safe ** 2 * np.log(1.0 / safe)),
                            4.0 * math.e * p2)
        if self.f_name == "sqrt_a_one_minus_a":
            return np.where(r <= 0.5, p2 / (2.0 * r ** 2 * (1.0 - r) ** 2), 8.0 * p2)
        raise ValueError(f"no closed form for f {self.f_name!r}")

    def combined(self, r) -> np.ndarray:
        return np.maximum(self.paired(r), self.squared(r))


def congestion_lower_bound(measure_gap: float, min_flow: float, f) -> CongestionLowerBound:
    name = f if isinstance(f, str) else None
    if name not in ("a_one_minus_a", "a_log_inv_a", "sqrt_a_one_minus_a"):
        raise ValueError("closed-form congestion lower bounds exist for the "
                         "quadratic, entropy and square-root weights only")
    return CongestionLowerBound(name, measure_gap, min_flow)


# ---------------------------------------------------------------------------
# Flow-product corollary
# ---------------------------------------------------------------------------

def flow_product_entries(min_flow: float, flow_expansion_max: float, pi_min: float,
                         eps: float) -> list[BoundEntry]:
    """Mixing and eigenvalue bounds from the product of flow and expansion.

    With p = min_flow and a = flow_expansion_max:
      eigen gap >= 16 p a, and ceilinged mixing-time bounds for total
      variation, relative entropy and L2, each with a large-eps branch.
    """
    pa = min_flow * flow_expansion_max
    inputs = {"min_flow": min_flow, "flow_expansion_max": flow_expansion_max,
              "pi_min": pi_min}
    if pa <= 0:
        inf = math.inf
        return [BoundEntry("flow-product", q, inf if q != "eigen_gap" else 0.0,
                           inputs, conditional="vacuous")
                for q in ("eigen_gap", "tau_tv", "tau_entropy", "tau_l2")]
    if eps <= 0.5:
        tau_tv = ((1.0 - 4.0 * pi_min ** 2) / 2.0 + math.log(1.0 / (2.0 * eps))) / (16.0 * pa)
        tau_d = (1.0 - math.e * pi_min ** 2 + math.log(1.0 / (2.0 * eps))) / (4.0 * math.e * pa)
    else:
        tau_tv = ((1.0 - eps) ** 2 - pi_min ** 2) / (8.0 * pa)
        tau_d = (math.exp(-2.0 * eps) - pi_min ** 2) / (4.0 * pa)
    if eps <= 1.0:
        tau_2 = (2.0 / 3.0 + math.log(1.0 / eps)) / (8.0 * pa)
    else:
        tau_2 = (1.0 + 3.0 * eps ** 2) / (6.0 * pa * (1.0 + eps ** 2) ** 3)
    return [
        BoundEntry("flow-product", "eigen_gap", 16.0 * pa, inputs),
        BoundEntry("flow-product", "tau_tv", max(math.ceil(tau_tv), 0), inputs),
        BoundEntry("flow-product", "tau_entropy", max(math.ceil(tau_d), 0), inputs),
        BoundEntry("flow-product", "tau_l2", max(math.ceil(tau_2), 0), inputs),
    ]


# ---------------------------------------------------------------------------
# Evolving-set integral bounds
# ---------------------------------------------------------------------------

EVOSET_KINDS = {
    "tv": ("a_one_minus_a", "tau_tv"),
    "entropy": ("a_log_inv_a", "tau_entropy"),
    "l2": ("sqrt_a_one_minus_a", "tau_l2"),
}


def _upper_limit(kind: str, eps: float) -> float:
    if kind == "tv":
        return 1.0 - eps
    if kind == "entropy":
        return math.exp(-eps)
    if kind == "l2":
        return 1.0 / (1.0 + eps ** 2)
    raise ValueError(f"unknown evolving-set bound kind {kind!r}")


def _weight_antiderivative(kind: str, r: float) -> float:
    if kind == "tv":
        return -math.log(1.0 - r)
    if kind == "entropy":
        return -math.log(math.log(1.0 / r))
    return 0.5 * math.log(r / (1.0 - r))


def _weight(kind: str, r: float) -> float:
    if kind == "tv":
        return 1.0 / (1.0 - r)
    if kind == "entropy":
        return 1.0 / (r * math.log(1.0 / r))
    return 1.0 / (2.0 * r * (1.0 - r))


def _adaptive_simpson(fn: Callable[[float], float], a: float, b: float,
                      rel_tol: float = 1e-10, max_depth: int = 50) -> float:
    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        fl = fn(lmid)
        fr = fn(rmid)
        left = simpson(lo, mid, flo, fl, fmid)
        right = simpson(mid, hi, fmid, fr, fhi)
        if depth >= max_depth or abs(left + right - whole) <= rel_tol * abs(left + right):
            return left + right + (left + right - whole) / 15.0
        return (recurse(lo, mid, flo, fl, fmid, left, depth + 1)
                + recurse(mid, hi, fmid, fr, fhi, right, depth + 1))

    mid = 0.5 * (a + b)
    fa, fm, fb = fn(a), fn(mid), fn(b)
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0)


@dataclass(frozen=True)
class EvosetBound:
    quantity: str
    steps: int
    integral: float
    convex: bool
    note: str = ""

    def entry(self, profile_label: str) -> BoundEntry:
        cond = "" if self.convex else "convexity-check-failed"
        if self.note:
            cond = (cond + ";" if cond else "") + self.note
        return BoundEntry("profile-integral", self.quantity, float(self.steps),
                          {"integral": self.integral, "profile": profile_label},
                          conditional=cond)


def evoset_integral_bound(profile: Union[CongestionProfile, Callable], pi_min: float,
                          eps: float, kind: str) -> EvosetBound:
    """Ceilinged integral bound on a mixing time from a congestion profile.

    Integrates dr / (weight-denominator * (1 - C_f(r))) from the smallest
    stationary weight up to a kind-specific limit; step profiles are
    integrated in closed form per segment, callables by adaptive Simpson.
    The convexity side condition is sampled on a 1001-point grid of the
    transformed profile and only flags the result.
    """
    f_name, quantity = EVOSET_KINDS[kind]
    hi = _upper_limit(kind, eps)
    if hi <= pi_min:
        return EvosetBound(quantity, 0, 0.0, True, "empty-range")

    if isinstance(profile, CongestionProfile):
        evaluate = lambda r: float(profile.evaluate(r))
        breakpoints = [m for m in profile.measures.tolist() if pi_min < m < hi]
    else:
        evaluate = lambda r: float(profile(r))
        breakpoints = []
    grid = [pi_min] + breakpoints + [hi]

    total = 0.0
    for lo_r, hi_r in zip(grid, grid[1:]):
        if hi_r <= lo_r:
            continue
        mid = 0.5 * (lo_r + hi_r)
        c_mid = evaluate(mid)
        if c_mid >= 1.0:
            raise ProfileTouchesOne(f"congestion reaches {c_mid} at r={mid}")
        if isinstance(profile, CongestionProfile):
            total += (_weight_antiderivative(kind, hi_r)
                      - _weight_antiderivative(kind, lo_r)) / (1.0 - c_mid)
        else:
            total += _adaptive_simpson(
                lambda r: _weight(kind, r) / (1.0 - evaluate(r)), lo_r, hi_r)

    convex = _convexity_flag(evaluate, pi_min, kind)
    return EvosetBound(quantity, int(math.ceil(total - 1e-12)), total, convex)


def _convexity_flag(evaluate: Callable[[float], float], pi_min: float, kind: str,
                    grid_points: int = 1001) -> bool:
    if kind == "tv":
        lo, hi = 1e-9, 1.0 - pi_min
        g = lambda x: x * (1.0 - evaluate(1.0 - x))
    elif kind == "entropy":
        lo, hi = 1e-9, math.log(1.0 / pi_min)
        g = lambda x: x * (1.0 - evaluate(math.exp(-x)))
    else:
        lo, hi = 1e-9, math.sqrt((1.0 - pi_min) / pi_min)
        g = lambda x: x * (1.0 - evaluate(1.0 / (1.0 + x ** 2)))
    xs = np.linspace(lo, hi, grid_points)
    try:
        vals = np.array([g(float(x)) for x in xs])
    except ValueError:
        return False
    second = vals[2:] - 2.0 * vals[1:-1] + vals[:-2]
    scale = max(float(np.abs(vals).max()), 1.0)
    return bool((second >= -1e-9 * scale).all())


# ---------------------------------------------------------------------------
# Composition and lower bounds
# ---------------------------------------------------------------------------

def linf_composition_bound(tau2_forward: float, tau2_reversed: float) -> float:
    """tau_inf(eps) <= tau_2(sqrt(eps)) for the walk plus the same for its reversal."""
    return tau2_forward + tau2_reversed


def tau_lower_bound(slow_modulus: float, eps: float) -> float:
    """Every mixing time is at least log(1/2 eps) / -log(slow eigenvalue modulus)."""
    if eps >= 0.5:
        return 0.0
    if slow_modulus >= 1.0:
        return math.inf
    if slow_modulus <= 0.0:
        return 0.0
    return math.log(1.0 / (2.0 * eps)) / -math.log(slow_modulus)
