"""Exact conductance, Cheeger bounds, exact minimum bisection, cut balancing.

Conductance values are kept as Fractions so threshold comparisons in the
decision solvers are never contaminated by floating point.  Subset and
partition enumerations run over adjacency bitmasks with incremental updates,
which keeps the default exact limits (n <= 24 cuts, n <= 20 bisection)
comfortably under a minute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import sqrt

import numpy as np

from .errors import EmptySide, ExactLimitExceeded, OddVertexCount, ZeroVolumeSide
from .graph import Graph, matrix_of
from .spectral import SpectralSummary

#: Default ceiling for exhaustive cut enumeration (2^(n-1) - 1 candidate cuts).
EXACT_CONDUCTANCE_LIMIT = 24
#: Default ceiling for exhaustive balanced-partition enumeration.
EXACT_BISECTION_LIMIT = 20


@dataclass(frozen=True)
class Cut:
    """A vertex subset with its boundary size, side volumes and conductance."""

    subset: tuple[int, ...]
    boundary_size: int
    vol_s: int
    vol_complement: int
    phi: Fraction

    @property
    def phi_float(self) -> float:
        return float(self.phi)


@dataclass(frozen=True)
class BisectionResult:
    """Width and witness of a balanced partition search.

    `exhaustive` is False when a budget was given and the search stopped at the
    first partition meeting it; the width is then that witness's width.
    """

    width: int
    partition: tuple[int, ...]
    exhaustive: bool


def _boundary_and_volumes(g: Graph, s: set[int]) -> tuple[int, int, int]:
    boundary = 0
    for u, v in g.edges:
        if (u in s) != (v in s):
            boundary += 1
    vol_s = sum(g.degrees[v] for v in s)
    return boundary, vol_s, 2 * g.m - vol_s


def conductance_of(g: Graph, s) -> Cut:
    """Exact conductance of the cut (S, V \\ S)."""
    s = set(s)
    if not s or len(s) >= g.n:
        raise EmptySide(f"cut side must be a nonempty proper subset, got {len(s)} of {g.n} vertices")
    if any(v < 0 or v >= g.n for v in s):
        raise EmptySide(f"subset contains out-of-range vertices: {sorted(s)}")
    boundary, vol_s, vol_c = _boundary_and_volumes(g, s)
    min_vol = min(vol_s, vol_c)
    if min_vol == 0:
        raise ZeroVolumeSide(f"side with volume 0 (vol_s={vol_s}, vol_complement={vol_c})")
    return Cut(tuple(sorted(s)), boundary, vol_s, vol_c, Fraction(boundary, min_vol))


def _canonical_side(mask: int, n: int) -> tuple[int, ...]:
    """Of the two sides of a cut, the lexicographically smaller vertex list."""
    if mask & 1:
        return tuple(v for v in range(n) if mask >> v & 1)
    return tuple(v for v in range(n) if not mask >> v & 1)


def conductance_exact(g: Graph, exact_limit: int = EXACT_CONDUCTANCE_LIMIT) -> Cut:
    """Global minimum-conductance cut by exhaustive enumeration.

    Cuts are enumerated once each (vertex n-1 pinned to the complement) with
    Gray-code incremental updates.  Ties break to the lexicographically
    smallest canonical side.  Disconnected graphs return phi = 0 with a
    component as witness instead of raising.
    """
    n = g.n
    if n > exact_limit:
        raise ExactLimitExceeded(f"exact conductance limited to n <= {exact_limit}, got {n}")
    if n < 2:
        raise EmptySide("no proper nonempty cut exists on fewer than 2 vertices")
    comps = g.connected_components()
    if len(comps) > 1:
        witness = comps[0]
        vol_s = sum(g.degrees[v] for v in witness)
        return Cut(tuple(witness), 0, vol_s, 2 * g.m - vol_s, Fraction(0))

    masks = g.adjacency_masks
    deg = g.degrees
    total_vol = 2 * g.m
    best_num = None  # boundary of best cut
    best_den = None  # min-volume of best cut
    best_side: tuple[int, ...] | None = None

    mask = 0
    cut = 0
    vol = 0
    for i in range(1, 1 << (n - 1)):
        v = (i & -i).bit_length() - 1
        bit = 1 << v
        if mask & bit:
            mask ^= bit
            cut -= deg[v] - 2 * (masks[v] & mask).bit_count()
            vol -= deg[v]
        else:
            cut += deg[v] - 2 * (masks[v] & mask).bit_count()
            mask ^= bit
            vol += deg[v]
        min_vol = vol if 2 * vol <= total_vol else total_vol - vol
        if min_vol <= 0:
            continue
        if best_num is None or cut * best_den < best_num * min_vol:
            best_num, best_den = cut, min_vol
            best_side = _canonical_side(mask, n)
        elif cut * best_den == best_num * min_vol:
            side = _canonical_side(mask, n)
            if side < best_side:
                best_side = side
    assert best_side is not None
    boundary, vol_s, vol_c = _boundary_and_volumes(g, set(best_side))
    return Cut(best_side, boundary, vol_s, vol_c, Fraction(boundary, min(vol_s, vol_c)))


def conductance_sweep(g: Graph) -> Cut:
    """Fiedler sweep-cut approximation: best prefix cut of the sorted Fiedler vector.

    An upper bound on the true conductance; used where exhaustive enumeration
    is out of reach.
    """
    if g.n < 2:
        raise EmptySide("no proper nonempty cut exists on fewer than 2 vertices")
    comps = g.connected_components()
    if len(comps) > 1:
        witness = comps[0]
        vol_s = sum(g.degrees[v] for v in witness)
        return Cut(tuple(witness), 0, vol_s, 2 * g.m - vol_s, Fraction(0))
    lap = matrix_of(g, "normalized_laplacian")
    if g.n <= 2048:
        lap = np.asarray(lap.todense()) if not isinstance(lap, np.ndarray) else lap
        _, vecs = np.linalg.eigh(lap)
        fiedler = vecs[:, 1]
    else:
        import scipy.sparse.linalg as spla

        _, vecs = spla.eigsh(lap, k=2, sigma=-1e-3, which="LM")
        fiedler = vecs[:, 1]
    order = sorted(range(g.n), key=lambda v: (fiedler[v], v))
    deg = g.degrees
    total_vol = 2 * g.m
    in_prefix = [False] * g.n
    cut = 0
    vol = 0
    best = None
    for idx, v in enumerate(order[:-1]):
        cut += deg[v] - 2 * sum(1 for w in g.neighbors[v] if in_prefix[w])
        vol += deg[v]
        in_prefix[v] = True
        min_vol = min(vol, total_vol - vol)
        if min_vol <= 0:
            continue
        phi = Fraction(cut, min_vol)
        if best is None or phi < best[0]:
            best = (phi, idx)
    assert best is not None
    side = set(order[: best[1] + 1])
    boundary, vol_s, vol_c = _boundary_and_volumes(g, side)
    return Cut(tuple(sorted(side)), boundary, vol_s, vol_c, Fraction(boundary, min(vol_s, vol_c)))


def cheeger_interval(summary: SpectralSummary) -> tuple[float, float]:
    """(lambda2 / 2, sqrt(2 lambda2)): the Cheeger bracket for the conductance.

    The upper end may exceed 1; conductance additionally satisfies phi <= 1,
    which `cheeger_consistent` takes into account.
    """
    lam = max(summary.lambda2, 0.0)
    return (lam / 2.0, sqrt(2.0 * lam))


def cheeger_consistent(phi: float, lambda2: float, slack: float = 1e-9) -> bool:
    """Does phi**2 / 2 <= lambda2 <= 2 phi hold within the given slack?"""
    phi = float(phi)
    return phi * phi / 2.0 <= lambda2 + slack and lambda2 <= 2.0 * phi + slack


def min_bisection_exact(
    h: Graph, budget_b: int | None = None, exact_limit: int = EXACT_BISECTION_LIMIT
) -> BisectionResult:
    """Minimum crossing edges over exactly-balanced partitions, by enumeration.

    Vertex 0's side is fixed so each unordered partition is visited once, in
    lexicographic order (the first minimum found is the lex-smallest witness).
    With `budget_b`, the search may return early at the first partition of
    width <= budget_b.
    """
    n = h.n
    if n % 2 != 0:
        raise OddVertexCount(f"bisection needs an even vertex count, got {n}")
    if n > exact_limit:
        raise ExactLimitExceeded(f"exact bisection limited to n <= {exact_limit}, got {n}")
    masks = h.adjacency_masks
    deg = h.degrees
    half = n // 2
    best_width = None
    best_set: tuple[int, ...] | None = None
    for rest in combinations(range(1, n), half - 1):
        mask = 1
        sum_deg = deg[0]
        for v in rest:
            mask |= 1 << v
            sum_deg += deg[v]
        inside2 = (masks[0] & mask).bit_count()
        for v in rest:
            inside2 += (masks[v] & mask).bit_count()
        width = sum_deg - inside2
        if budget_b is not None and width <= budget_b:
            return BisectionResult(width, (0,) + rest, exhaustive=False)
        if best_width is None or width < best_width:
            best_width = width
            best_set = (0,) + rest
    assert best_width is not None and best_set is not None
    return BisectionResult(best_width, best_set, exhaustive=True)


def balance_cut(h: Graph, s) -> tuple[tuple[int, ...], Fraction]:
    """Greedily rebalance a cut to |S| = n/2, one minimum-increase move at a time.

    Returns the balanced side and the measured growth factor
    |crossing after| / max(1, |crossing before|).  Ties break to the smallest
    vertex id.
    """
    n = h.n
    if n % 2 != 0:
        raise OddVertexCount(f"balancing needs an even vertex count, got {n}")
    side = set(s)
    if not side or len(side) >= n:
        raise EmptySide("cut side must be a nonempty proper subset")
    crossing_before, _, _ = _boundary_and_volumes(h, side)
    crossing = crossing_before
    half = n // 2
    while len(side) != half:
        shrink = len(side) > half
        pool = side if shrink else set(range(n)) - side
        best_v = None
        best_delta = None
        for v in sorted(pool):
            inside = sum(1 for w in h.neighbors[v] if w in side)
            outside = len(h.neighbors[v]) - inside
            delta = inside - outside if shrink else outside - inside
            if best_delta is None or delta < best_delta:
                best_delta = delta
                best_v = v
        if shrink:
            side.remove(best_v)
        else:
            side.add(best_v)
        crossing += best_delta
    return tuple(sorted(side)), Fraction(crossing, max(1, crossing_before))
