"""Ground-truth spectral and mixing computations by brute force.

Everything here is meant to be trusted more than any bound: complex
spectra of the transition matrix, the spectral gap of the additive
symmetrization, the four distances to stationarity, and exact worst-case
mixing times obtained by powering the matrix from every start state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .chains import StochasticKernel, Distribution, stationary, reverse
from .errors import NoConvergence, NotIrreducible, NotReached, ZeroStationaryMass

SPECTRUM_STATE_CAP = 512

DISTANCE_KINDS = ("tv", "l2", "linf", "relative_entropy")


# ---------------------------------------------------------------------------
# Spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by modulus (descending) plus a backward-error bound."""

    eigenvalues: np.ndarray
    residual: float

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=complex)
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.eigenvalues)

    def second_largest_modulus(self) -> float:
        """Largest modulus after removing one eigenvalue closest to 1."""
        ev = self.eigenvalues
        drop = int(np.argmin(np.abs(ev - 1.0)))
        rest = np.delete(ev, drop)
        return float(np.abs(rest).max()) if rest.size else 0.0

    def eigen_gap(self) -> float:
        """min over non-trivial eigenvalues of 1 - |lambda_i|."""
        return 1.0 - self.second_largest_modulus()


def _sorted_spectrum(ev: np.ndarray) -> np.ndarray:
    order = np.lexsort((-ev.imag, -ev.real, -np.abs(ev)))
    return ev[order]


def spectrum(k: StochasticKernel) -> Spectrum:
    """Complex spectrum of the transition matrix.

    Uses the LAPACK dense nonsymmetric eigensolver (balancing, Hessenberg
    reduction, implicitly shifted QR).  The residual is the largest
    normalized backward error max_i ||P v_i - lambda_i v_i|| / ||P||_F
    over computed eigenpairs.
    """
    if k.n > SPECTRUM_STATE_CAP:
        raise NoConvergence(f"spectrum capped at n <= {SPECTRUM_STATE_CAP}")
    try:
        ev, vecs = np.linalg.eig(k.rows)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    norms = np.linalg.norm(vecs, axis=0)
    norms[norms == 0] = 1.0
    resid = np.linalg.norm(k.rows @ vecs - vecs * ev[None, :], axis=0) / norms
    scale = max(float(np.linalg.norm(k.rows)), 1.0)
    return Spectrum(_sorted_spectrum(ev), float(resid.max()) / scale)


def circulant_spectrum(first_row) -> Spectrum:
    """Closed-form spectrum of a circulant matrix C[x, y] = c[(y - x) mod n].

    Eigenvalues are sum_j c_j w^(jk) with w = exp(2 pi i / n); used as the
    independent oracle for cyclic walks.
    """
    c = np.asarray(first_row, dtype=float)
    n = c.shape[0]
    k = np.arange(n)
    omega = np.exp(2j * np.pi * np.outer(k, k) / n)
    ev = omega @ c.astype(complex)
    return Spectrum(_sorted_spectrum(ev), 0.0)


def drifted_cycle_eigenvalue(n: int, d: int) -> complex:
    """The slow eigenvalue of the drifted cycle walk.

    ((d-1)/d) e^{i pi (n-1)/n} + (1/d) e^{-i pi (n-1)/n}; it belongs to the
    circulant spectrum at frequency (n-1)/2.
    """
    theta = np.pi * (n - 1) / n
    return (d - 1) / d * np.exp(1j * theta) + (1 / d) * np.exp(-1j * theta)


def match_spectra(a: np.ndarray, b: np.ndarray) -> float:
    """Greedy minimal-distance pairing; returns the largest pair distance."""
    a = np.asarray(a, dtype=complex)
    rest = list(np.asarray(b, dtype=complex))
    worst = 0.0
    for x in sorted(a, key=lambda z: -abs(z)):
        dists = [abs(x - y) for y in rest]
        j = int(np.argmin(dists))
        worst = max(worst, dists[j])
        rest.pop(j)
    return worst


def spectral_gap(k: StochasticKernel) -> float:
    """Gap between the two largest eigenvalues of (P + P*)/2.

    Computed on the symmetric similarity D^(1/2) M D^(-1/2) with
    D = diag(pi), via the dense symmetric eigensolver; the result lies
    in [0, 2].
    """
    if not k.irreducible:
        raise NotIrreducible("spectral gap needs an irreducible kernel")
    pi = stationary(k).weights
    m = 0.5 * (k.rows + reverse(k).rows)
    root = np.sqrt(pi)
    sym = (m * root[:, None]) / root[None, :]
    sym = 0.5 * (sym + sym.T)
    ev = np.linalg.eigvalsh(sym)
    return float(min(max(1.0 - ev[-2], 0.0), 2.0)) if k.n > 1 else 0.0


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

def distance(sigma, pi, kind: str) -> float:
    """Distance from sigma to pi.

    tv                0.5 * sum |sigma - pi|
    l2                sqrt(sum pi (sigma/pi - 1)^2)
    linf              max |sigma/pi - 1|
    relative_entropy  sum sigma log(sigma/pi), with 0 log 0 = 0
    """
    s = sigma.weights if isinstance(sigma, Distribution) else np.asarray(sigma, dtype=float)
    p = pi.weights if isinstance(pi, Distribution) else np.asarray(pi, dtype=float)
    if np.any(p <= 0):
        raise ZeroStationaryMass("reference distribution must be strictly positive")
    if kind == "tv":
        return 0.5 * float(np.abs(s - p).sum())
    ratio = s / p
    if kind == "l2":
        return float(np.sqrt((p * (ratio - 1.0) ** 2).sum()))
    if kind == "linf":
        return float(np.abs(ratio - 1.0).max())
    if kind == "relative_entropy":
        pos = s > 0
        return float((s[pos] * np.log(ratio[pos])).sum())
    raise ValueError(f"unknown distance kind {kind!r}; expected one of {DISTANCE_KINDS}")


def _worst_start_distance(power: np.ndarray, pi: np.ndarray, kind: str) -> float:
    return max(distance(power[x], pi, kind) for x in range(power.shape[0]))


# ---------------------------------------------------------------------------
# Mixing curves and mixing times
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MixingCurve:
    """Per-step distance to stationarity, worst start unless one is fixed."""

    kind: str
    values: np.ndarray
    start: Optional[int] = None
    chain_key: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def t_max(self) -> int:
        return self.values.shape[0] - 1

    def to_csv(self) -> str:
        lines = ["t,distance"]
        lines += [f"{t},{v:.17g}" for t, v in enumerate(self.values)]
        return "\n".join(lines) + "\n"


def mixing_curve(k: StochasticKernel, kind: str, t_max: int,
                 start: Optional[int] = None) -> MixingCurve:
    """Distances for t = 0..t_max by iterated matrix products.

    With ``start=None`` each step reports the maximum over all start
    states; otherwise the distance from the one given state.
    """
    pi = stationary(k).weights
    power = np.eye(k.n)
    values = []
    for _ in range(t_max + 1):
        if start is None:
            values.append(_worst_start_distance(power, pi, kind))
        else:
            values.append(distance(power[start], pi, kind))
        power = power @ k.rows
    return MixingCurve(kind, np.array(values), start, k.fingerprint())


def exact_mixing_time(k: StochasticKernel, kind: str, eps: float, t_max: int) -> int:
    """Smallest t <= t_max with worst-start distance at most eps.

    Raises NotReached when the budget runs out (periodic chains never get
    below small eps); the caller decides how to proceed.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    pi = stationary(k).weights
    power = np.eye(k.n)
    last = np.inf
    for t in range(t_max + 1):
        last = _worst_start_distance(power, pi, kind)
        if last <= eps:
            return t
        power = power @ k.rows
    raise NotReached(t_max, last)


def all_mixing_times(k: StochasticKernel, eps: float, t_max: int) -> dict[str, int]:
    """Mixing times for all four distances from one matrix-power sweep.

    Values are ``-1`` where the target was not reached by t_max.
    """
    pi = stationary(k).weights
    power = np.eye(k.n)
    out = {kind: -1 for kind in DISTANCE_KINDS}
    for t in range(t_max + 1):
        pending = [kind for kind, v in out.items() if v < 0]
        if not pending:
            break
        for kind in pending:
            if _worst_start_distance(power, pi, kind) <= eps:
                out[kind] = t
        power = power @ k.rows
    return out
