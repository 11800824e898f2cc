"""Finite metric spaces, point sets, and exact ell-infinity geometry.

Everything here is exact: coordinates and distances are Fractions, and
every embedding claim is checked by recomputing distances. Floats never
appear on a correctness path.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, PreconditionError

Vec = tuple[Fraction, ...]


def _as_vec(coords) -> Vec:
    return tuple(Fraction(c) for c in coords)


def chebyshev_distance(x, y) -> Fraction:
    """Max-coordinate distance between two equal-length rational vectors."""
    if len(x) != len(y):
        raise DimensionMismatch(f"dimension mismatch: {len(x)} vs {len(y)}")
    best = Fraction(0)
    for a, b in zip(x, y):
        diff = abs(Fraction(a) - Fraction(b))
        if diff > best:
            best = diff
    return best


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A metric on points 0..size-1 given by an exact distance matrix."""

    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        d = len(self.dist)
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.dist)
        object.__setattr__(self, "dist", rows)
        for i, row in enumerate(rows):
            if len(row) != d:
                raise PreconditionError("distance matrix must be square")
            if row[i] != 0:
                raise PreconditionError(f"nonzero diagonal at {i}")
        for i in range(d):
            for j in range(i + 1, d):
                if rows[i][j] != rows[j][i]:
                    raise PreconditionError(f"asymmetric entry at ({i},{j})")
                if rows[i][j] <= 0:
                    raise PreconditionError(f"nonpositive distance at ({i},{j})")
        for i in range(d):
            for j in range(d):
                for l in range(d):
                    if rows[i][j] > rows[i][l] + rows[l][j]:
                        raise PreconditionError(
                            f"triangle inequality fails at ({i},{j},{l})"
                        )

    @property
    def size(self) -> int:
        return len(self.dist)

    @classmethod
    def from_points(cls, points: "PointSet") -> "FiniteMetricSpace":
        pts = points.points
        rows = tuple(
            tuple(chebyshev_distance(p, q) for q in pts) for p in pts
        )
        return cls(rows)


@dataclass(frozen=True)
class PointSet:
    """Distinct points in rational n-space."""

    dim: int
    points: tuple[Vec, ...]

    def __post_init__(self):
        pts = tuple(_as_vec(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for p in pts:
            if len(p) != self.dim:
                raise DimensionMismatch(
                    f"point {p} has dimension {len(p)}, expected {self.dim}"
                )
        if len(set(pts)) != len(pts):
            raise PreconditionError("points must be distinct")

    def __len__(self) -> int:
        return len(self.points)

    def index_of(self, point) -> int:
        return self.points.index(_as_vec(point))


def grid_points(k: int, n: int) -> PointSet:
    """The integer grid {0..k}^n as a point set in lexicographic order."""
    if k < 0 or n < 1:
        raise PreconditionError("grid needs k >= 0 and n >= 1")
    pts = tuple(
        tuple(Fraction(c) for c in p)
        for p in itertools.product(range(k + 1), repeat=n)
    )
    return PointSet(n, pts)


@dataclass(frozen=True)
class Baton:
    """Collinear points described by their consecutive gaps.

    The realized point set is {0, s1, s1+s2, ...}. An empty gap tuple is
    the degenerate one-point baton; it arises when a point set projects
    to a single value on some axis and is rejected by any operation that
    needs at least one step.
    """

    steps: tuple[Fraction, ...]

    def __post_init__(self):
        steps = tuple(Fraction(s) for s in self.steps)
        object.__setattr__(self, "steps", steps)
        for s in steps:
            if s <= 0:
                raise PreconditionError("baton steps must be positive")

    @classmethod
    def unit(cls, k: int) -> "Baton":
        if k < 1:
            raise PreconditionError("unit baton needs k >= 1")
        return cls((Fraction(1),) * k)

    @property
    def k(self) -> int:
        return len(self.steps)

    def positions(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)]
        for s in self.steps:
            out.append(out[-1] + s)
        return tuple(out)

    def as_point_set(self) -> PointSet:
        return PointSet(1, tuple((v,) for v in self.positions()))

    def as_metric_space(self) -> FiniteMetricSpace:
        pos = self.positions()
        rows = tuple(tuple(abs(a - b) for b in pos) for a in pos)
        return FiniteMetricSpace(rows)


@dataclass(frozen=True)
class CopyEmbedding:
    """An isometric copy of a finite metric space inside a point set.

    indices[i] names the point realizing abstract point i; the pairwise
    max-norm distances are verified exactly on construction.
    """

    source: FiniteMetricSpace
    points: PointSet
    indices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        d = self.source.size
        if len(self.indices) != d:
            raise PreconditionError("index count must match metric size")
        if len(set(self.indices)) != d:
            raise PreconditionError("indices must be distinct")
        for i in self.indices:
            if not (0 <= i < len(self.points)):
                raise PreconditionError(f"index {i} out of range")
        for a, b in itertools.combinations(range(d), 2):
            got = chebyshev_distance(
                self.points.points[self.indices[a]],
                self.points.points[self.indices[b]],
            )
            if got != self.source.dist[a][b]:
                raise PreconditionError(
                    f"distance mismatch at pair ({a},{b}): "
                    f"{got} != {self.source.dist[a][b]}"
                )

    def mapped_points(self) -> tuple[Vec, ...]:
        return tuple(self.points.points[i] for i in self.indices)


def frechet_embed(space: FiniteMetricSpace) -> CopyEmbedding:
    """Embed a finite metric space into (Q^d, max norm) via matrix rows.

    Row i of the distance matrix becomes point i; the triangle inequality
    makes this an exact isometry, which the returned embedding rechecks.
    """
    rows = PointSet(space.size, space.dist)
    return CopyEmbedding(space, rows, tuple(range(space.size)))


def find_copies(
    space: FiniteMetricSpace,
    points: PointSet,
    limit: int | None = None,
    distinct_supports: bool = False,
) -> list[CopyEmbedding]:
    """All ordered isometric embeddings of `space` into `points`.

    Enumeration is lexicographic in the index tuple, with partial-distance
    pruning; pruning never changes the output set. With distinct_supports,
    only the first embedding per support set is kept (a configuration and
    its reversal otherwise count separately).
    """
    d = space.size
    n_pts = len(points)
    pts = points.points
    out: list[CopyEmbedding] = []
    seen: set[frozenset] = set()
    chosen: list[int] = []

    def descend() -> bool:
        depth = len(chosen)
        if depth == d:
            if distinct_supports:
                key = frozenset(chosen)
                if key in seen:
                    return False
                seen.add(key)
            out.append(CopyEmbedding(space, points, tuple(chosen)))
            return limit is not None and len(out) >= limit
        for cand in range(n_pts):
            if cand in chosen:
                continue
            ok = True
            for j, prev in enumerate(chosen):
                if chebyshev_distance(pts[cand], pts[prev]) != space.dist[depth][j]:
                    ok = False
                    break
            if ok:
                chosen.append(cand)
                if descend():
                    return True
                chosen.pop()
        return False

    descend()
    return out


def find_copies_naive(
    space: FiniteMetricSpace, points: PointSet
) -> list[tuple[int, ...]]:
    """Unpruned full enumeration of embeddings; oracle for find_copies."""
    d = space.size
    out = []
    for tup in itertools.permutations(range(len(points)), d):
        ok = True
        for a, b in itertools.combinations(range(d), 2):
            if (
                chebyshev_distance(points.points[tup[a]], points.points[tup[b]])
                != space.dist[a][b]
            ):
                ok = False
                break
        if ok:
            out.append(tup)
    return sorted(out)


def diameter(space: FiniteMetricSpace) -> Fraction:
    if space.size < 2:
        raise PreconditionError("diameter needs at least 2 points")
    return max(
        space.dist[i][j]
        for i in range(space.size)
        for j in range(i + 1, space.size)
    )


def connectivity_threshold(space: FiniteMetricSpace) -> Fraction:
    """Least l such that edges of length <= l connect the whole space.

    This is the bottleneck edge of a minimum spanning tree (Prim).
    """
    d = space.size
    if d < 2:
        raise PreconditionError("connectivity threshold needs at least 2 points")
    in_tree = [False] * d
    best = list(space.dist[0])
    in_tree[0] = True
    bottleneck = Fraction(0)
    for _ in range(d - 1):
        nxt = -1
        for v in range(d):
            if not in_tree[v] and (nxt < 0 or best[v] < best[nxt]):
                nxt = v
        bottleneck = max(bottleneck, best[nxt])
        in_tree[nxt] = True
        for v in range(d):
            if not in_tree[v] and space.dist[nxt][v] < best[v]:
                best[v] = space.dist[nxt][v]
    return bottleneck


def grid_decompose(point_set: PointSet) -> list[Baton]:
    """Per-axis consecutive-gap batons whose product grid contains the set.

    Axis i contributes the gaps between its sorted distinct projected
    values; the grid of all value combinations (equivalently, each baton
    translated to the axis minimum) contains every input point. An axis
    with a single value yields the degenerate empty baton.
    """
    if len(point_set) == 0:
        raise PreconditionError("grid_decompose needs a nonempty point set")
    out = []
    for axis in range(point_set.dim):
        values = sorted({p[axis] for p in point_set.points})
        gaps = tuple(b - a for a, b in zip(values, values[1:]))
        out.append(Baton(gaps))
    return out


def random_metric_space(rng: random.Random, size: int) -> FiniteMetricSpace:
    """Random exact metric: random symmetric weights, shortest-path closure.

    The closure fixes every triangle violation, and positive weights keep
    off-diagonal distances positive.
    """
    if size < 1:
        raise PreconditionError("size must be >= 1")
    dist = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            w = Fraction(rng.randint(4, 24), rng.randint(1, 4))
            dist[i][j] = dist[j][i] = w
    for l in range(size):
        for i in range(size):
            for j in range(size):
                via = dist[i][l] + dist[l][j]
                if i != j and via < dist[i][j]:
                    dist[i][j] = via
    return FiniteMetricSpace(tuple(tuple(row) for row in dist))
