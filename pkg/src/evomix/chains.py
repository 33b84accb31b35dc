"""Finite Markov kernels and the graph walks they come from.

Constructs row-stochastic kernels for the walks studied throughout the
package: the simple random walk on a directed multigraph (move to a
uniformly random out-neighbor), the hold-probability walk with degree
bound d (move along each out-edge with probability 1/d, otherwise stay),
and the drifted cycle (clockwise with probability (d-1)/d, counterclockwise
with probability 1/d).  Also provides the stationary distribution, the
time reversal P*(x,y) = pi(y) P(y,x) / pi(x), and the laziness /
symmetrization transforms.

All numeric work is binary64.  When a kernel is built from rational data
(integer multiplicities, small-denominator matrix entries) an exact
``fractions.Fraction`` copy of the entries is kept alongside, which tests
use for exact identities.  Values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegreeBoundTooSmall,
    InvalidParameters,
    NoConvergence,
    NotEulerian,
    NotIrreducible,
    NotStronglyConnected,
    VertexWithNoOutEdge,
)

ROW_SUM_TOL = 1e-12
ENTRY_SLACK = 1e-15
RATIONAL_DENOMINATOR_CAP = 10**6

ExactMatrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DirectedMultigraph:
    """Directed multigraph given by (source, target, multiplicity) edges."""

    n_vertices: int
    edges: tuple[tuple[int, int, int], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n_vertices <= 0:
            raise InvalidParameters("graph needs at least one vertex")
        for (u, v, mult) in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidParameters(f"edge ({u},{v}) endpoint out of range")
            if mult < 1:
                raise InvalidParameters(f"edge ({u},{v}) has multiplicity {mult} < 1")
        if self.labels is not None and len(self.labels) != self.n_vertices:
            raise InvalidParameters("label count differs from vertex count")

    @property
    def out_degree(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=np.int64)
        for (u, _, mult) in self.edges:
            deg[u] += mult
        return deg

    @property
    def in_degree(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=np.int64)
        for (_, v, mult) in self.edges:
            deg[v] += mult
        return deg

    @property
    def edge_count(self) -> int:
        return int(sum(mult for (_, _, mult) in self.edges))

    def multiplicity_matrix(self) -> np.ndarray:
        m = np.zeros((self.n_vertices, self.n_vertices), dtype=np.int64)
        for (u, v, mult) in self.edges:
            m[u, v] += mult
        return m

    def is_eulerian(self) -> bool:
        """Strongly connected with in-degree equal to out-degree everywhere."""
        if not np.array_equal(self.in_degree, self.out_degree):
            return False
        return _strongly_connected(self.multiplicity_matrix() > 0)


def graph_from_edges(n: int, edges: Sequence[tuple[int, int] | tuple[int, int, int]],
                     labels: Optional[Sequence[str]] = None) -> DirectedMultigraph:
    """Build a multigraph, defaulting edge multiplicity to 1."""
    full = tuple((e[0], e[1], e[2] if len(e) == 3 else 1) for e in edges)
    return DirectedMultigraph(n, full, tuple(labels) if labels is not None else None)


def bidirected_cycle(n: int) -> DirectedMultigraph:
    """Cycle on n vertices with both orientations of every edge (2n edges)."""
    if n < 3:
        raise InvalidParameters("cycle needs n >= 3")
    edges = []
    for v in range(n):
        edges.append((v, (v + 1) % n, 1))
        edges.append((v, (v - 1) % n, 1))
    return DirectedMultigraph(n, tuple(edges))


def drifted_cycle_graph(n: int, d: int) -> DirectedMultigraph:
    """Cycle with d-1 clockwise edges and 1 counterclockwise edge per vertex."""
    edges = []
    for v in range(n):
        edges.append((v, (v + 1) % n, d - 1))
        edges.append((v, (v - 1) % n, 1))
    return DirectedMultigraph(n, tuple(edges))


def self_loop_cycle(n: int, d: int) -> DirectedMultigraph:
    """Bidirected cycle with d-2 self-loops at every vertex (out-degree d)."""
    if d < 2:
        raise InvalidParameters("self-loop cycle needs d >= 2")
    edges = []
    for v in range(n):
        edges.append((v, (v + 1) % n, 1))
        edges.append((v, (v - 1) % n, 1))
        if d > 2:
            edges.append((v, v, d - 2))
    return DirectedMultigraph(n, tuple(edges))


# ---------------------------------------------------------------------------
# Kernels and distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Distribution:
    """Probability vector over the state space."""

    weights: np.ndarray
    exact: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if np.any(w < 0):
            raise InvalidParameters("distribution has negative entries")
        if abs(float(w.sum()) - 1.0) > ROW_SUM_TOL:
            raise InvalidParameters(f"distribution sums to {w.sum()!r}, not 1")

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def min_weight(self) -> float:
        return float(self.weights.min())


@dataclass(frozen=True)
class StochasticKernel:
    """Row-stochastic transition matrix with optional exact rational copy."""

    rows: np.ndarray
    labels: Optional[tuple[str, ...]] = None
    exact: Optional[ExactMatrix] = None
    irreducible: bool = field(init=False)

    def __post_init__(self):
        p = np.array(self.rows, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise InvalidParameters("kernel must be a square matrix")
        if np.any(p < -ENTRY_SLACK) or np.any(p > 1.0 + ENTRY_SLACK):
            raise InvalidParameters("kernel entries outside [0, 1]")
        p = np.clip(p, 0.0, 1.0)
        sums = p.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            worst = int(np.argmax(np.abs(sums - 1.0)))
            raise InvalidParameters(f"row {worst} sums to {sums[worst]!r}")
        p.setflags(write=False)
        object.__setattr__(self, "rows", p)
        object.__setattr__(self, "irreducible", _strongly_connected(p > 0.0))
        if self.exact is not None:
            ex = self.exact
            if len(ex) != p.shape[0] or any(len(r) != p.shape[0] for r in ex):
                raise InvalidParameters("exact matrix shape mismatch")
            if any(sum(r) != 1 for r in ex):
                raise InvalidParameters("exact rows must sum to 1")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def is_lazy(self, tol: float = 0.0) -> bool:
        """Holding probability at least 1/2 at every state."""
        return bool(np.all(np.diag(self.rows) >= 0.5 - tol))

    def fingerprint(self) -> str:
        """Stable identity used to pair traces with exact curves."""
        import hashlib

        h = hashlib.sha256()
        h.update(str(self.n).encode())
        h.update(np.ascontiguousarray(self.rows).tobytes())
        return h.hexdigest()[:16]


def kernel_from_matrix(rows, labels: Optional[Sequence[str]] = None) -> StochasticKernel:
    """Wrap a matrix, attaching an exact copy when entries are small rationals."""
    p = np.asarray(rows, dtype=float)
    exact = _rationalize(p)
    return StochasticKernel(p, tuple(labels) if labels is not None else None, exact)


def _rationalize(p: np.ndarray) -> Optional[ExactMatrix]:
    """Exact Fractions for entries that are rationals with small denominator."""
    out = []
    for row in p:
        ex_row = []
        for x in row:
            fr = Fraction(float(x)).limit_denominator(RATIONAL_DENOMINATOR_CAP)
            if float(fr) != float(x):
                return None
            ex_row.append(fr)
        if sum(ex_row) != 1:
            return None
        out.append(tuple(ex_row))
    return tuple(out)


def _strongly_connected(support: np.ndarray) -> bool:
    """Two-pass (forward/backward) iterative DFS on the support digraph."""
    n = support.shape[0]
    if n == 1:
        return True

    def reaches_all(adj: np.ndarray) -> bool:
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    stack.append(int(v))
        return bool(seen.all())

    return reaches_all(support) and reaches_all(support.T)


# ---------------------------------------------------------------------------
# Walk constructors
# ---------------------------------------------------------------------------

def build_simple_walk(g: DirectedMultigraph) -> StochasticKernel:
    """Move to a uniformly random out-neighbor: P(x,y) = mult(x,y)/outdeg(x).

    Requires every vertex to have an out-edge and the graph to be strongly
    connected.  On an Eulerian graph the stationary distribution is
    deg(v)/m with m the total edge count.
    """
    mult = g.multiplicity_matrix()
    deg = g.out_degree
    if np.any(deg == 0):
        raise VertexWithNoOutEdge(f"vertex {int(np.argmin(deg > 0))} has no out-edge")
    if not _strongly_connected(mult > 0):
        raise NotStronglyConnected("simple walk needs a strongly connected graph")
    p = mult / deg[:, None]
    exact = tuple(
        tuple(Fraction(int(mult[x, y]), int(deg[x])) for y in range(g.n_vertices))
        for x in range(g.n_vertices)
    )
    return StochasticKernel(p, g.labels, exact)


def build_max_degree_walk(g: DirectedMultigraph, d: int) -> StochasticKernel:
    """Move along each out-edge with probability 1/d, otherwise hold.

    P(x,y) = mult(x,y)/d off the diagonal and the leftover mass
    1 - outdeg(x)/d (plus explicit self-loops) stays at x.  Requires an
    Eulerian graph and d at least the maximum out-degree; the stationary
    distribution is then uniform.
    """
    deg = g.out_degree
    if d < int(deg.max()):
        raise DegreeBoundTooSmall(f"d={d} below max out-degree {int(deg.max())}")
    if not np.array_equal(g.in_degree, deg):
        raise NotEulerian("in-degree != out-degree")
    mult = g.multiplicity_matrix()
    if not _strongly_connected(mult > 0):
        raise NotEulerian("graph is not strongly connected")
    p = mult / float(d)
    np.fill_diagonal(p, np.diag(mult) / float(d) + 1.0 - deg / float(d))
    exact = tuple(
        tuple(
            Fraction(int(mult[x, y]), d) if x != y
            else Fraction(int(mult[x, x]), d) + 1 - Fraction(int(deg[x]), d)
            for y in range(g.n_vertices)
        )
        for x in range(g.n_vertices)
    )
    return StochasticKernel(p, g.labels, exact)


def build_drifted_cycle(n: int, d: int) -> StochasticKernel:
    """Cycle walk with clockwise drift: P(x,x+1) = (d-1)/d, P(x,x-1) = 1/d.

    n must be odd (even cycles are periodic) and d >= 2.  The stationary
    distribution is uniform.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidParameters(f"n={n} must be odd and >= 3")
    if d < 2:
        raise InvalidParameters(f"d={d} must be >= 2")
    return build_max_degree_walk(drifted_cycle_graph(n, d), d)


# ---------------------------------------------------------------------------
# Stationary distribution, reversal, transforms
# ---------------------------------------------------------------------------

POWER_ITERATION_THRESHOLD = 512


def stationary(k: StochasticKernel) -> Distribution:
    """Solve pi P = pi, sum(pi) = 1.

    Dense solve with partial pivoting on (P^T - I) with one row replaced by
    the normalization; power iteration for state spaces beyond desk scale.
    The result satisfies ||pi P - pi||_1 <= 1e-12.
    """
    if not k.irreducible:
        raise NotIrreducible("stationary distribution needs an irreducible kernel")
    n = k.n
    if n > POWER_ITERATION_THRESHOLD:
        pi = _stationary_power(k.rows)
    else:
        a = k.rows.T - np.eye(n)
        a[-1, :] = 1.0
        b = np.zeros(n)
        b[-1] = 1.0
        try:
            pi = np.linalg.solve(a, b)
        except np.linalg.LinAlgError:
            pi = np.linalg.lstsq(a, b, rcond=None)[0]
    pi = np.clip(pi, 0.0, None)
    pi = pi / pi.sum()
    residual = float(np.abs(pi @ k.rows - pi).sum())
    if residual > ROW_SUM_TOL:
        pi = _stationary_power(k.rows, start=pi)
        residual = float(np.abs(pi @ k.rows - pi).sum())
        if residual > ROW_SUM_TOL:
            raise NoConvergence(f"stationary residual {residual:.3g} above 1e-12")
    exact = _stationary_exact(k.exact) if k.exact is not None and n <= 64 else None
    return Distribution(pi, exact)


def _stationary_power(p: np.ndarray, start: Optional[np.ndarray] = None,
                      max_iter: int = 1_000_000) -> np.ndarray:
    n = p.shape[0]
    pi = np.full(n, 1.0 / n) if start is None else start.copy()
    # Average with the identity so periodic chains converge too.
    q = 0.5 * (p + np.eye(n))
    for _ in range(max_iter):
        nxt = pi @ q
        if np.abs(nxt - pi).sum() < 1e-16:
            pi = nxt
            break
        pi = nxt
    return pi / pi.sum()


def _stationary_exact(exact: ExactMatrix) -> Optional[tuple[Fraction, ...]]:
    """Exact stationary vector by Gaussian elimination over the rationals."""
    n = len(exact)
    # Solve (P^T - I) pi = 0 with the last equation replaced by sum = 1.
    a = [[exact[y][x] - (1 if x == y else 0) for y in range(n)] for x in range(n)]
    a[-1] = [Fraction(1)] * n
    b = [Fraction(0)] * (n - 1) + [Fraction(1)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] *= inv
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] -= f * b[col]
    return tuple(b)


def reverse(k: StochasticKernel) -> StochasticKernel:
    """Time reversal P*(x,y) = pi(y) P(y,x) / pi(x); preserves pi."""
    if not k.irreducible:
        raise NotIrreducible("time reversal needs an irreducible kernel")
    pi = stationary(k)
    w = pi.weights
    p = k.rows.T * (w[None, :] / w[:, None])
    # Renormalize away last-bit drift so the constructor contract holds.
    p = p / p.sum(axis=1)[:, None]
    exact = None
    if k.exact is not None and pi.exact is not None:
        exact = tuple(
            tuple(pi.exact[y] * k.exact[y][x] / pi.exact[x] for y in range(k.n))
            for x in range(k.n)
        )
    return StochasticKernel(p, k.labels, exact)


TRANSFORM_KINDS = ("lazy", "additive_symmetrize", "half_lazy_symmetrize")


def transform(k: StochasticKernel, kind: str) -> StochasticKernel:
    """Laziness and symmetrization transforms; all preserve pi.

    lazy                 (I + P) / 2
    additive_symmetrize  (P + P*) / 2
    half_lazy_symmetrize I/2 + (P + P*) / 4
    """
    if kind == "lazy":
        p = 0.5 * (np.eye(k.n) + k.rows)
        exact = None
        if k.exact is not None:
            half = Fraction(1, 2)
            exact = tuple(
                tuple(half * k.exact[x][y] + (half if x == y else 0) for y in range(k.n))
                for x in range(k.n)
            )
        return StochasticKernel(p, k.labels, exact)
    if kind == "additive_symmetrize":
        rev = reverse(k)
        p = 0.5 * (k.rows + rev.rows)
        exact = None
        if k.exact is not None and rev.exact is not None:
            half = Fraction(1, 2)
            exact = tuple(
                tuple(half * (k.exact[x][y] + rev.exact[x][y]) for y in range(k.n))
                for x in range(k.n)
            )
        return StochasticKernel(p, k.labels, exact)
    if kind == "half_lazy_symmetrize":
        return transform(transform(k, "additive_symmetrize"), "lazy")
    raise InvalidParameters(f"unknown transform {kind!r}; expected one of {TRANSFORM_KINDS}")
