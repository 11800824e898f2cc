"""Extraction of baton copies from dense grid subsets.

Any subset of {0..k}^n with more than k^n elements contains k+1 points
x^0..x^k with max-norm distance |s-t| between x^s and x^t. The extractor
below is the constructive induction behind that fact: a head-shift map
pushes mass toward larger last coordinates, a majority class is recursed
on, and preimages are pulled back. General gap patterns reduce to the
unit case through anchor value sets on each axis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PreconditionError
from .metric import Baton, CopyEmbedding, PointSet, chebyshev_distance

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class GridSubset:
    """A set of integer vectors inside {0..k}^n."""

    n: int
    k: int
    elems: frozenset[IntVec]

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset(tuple(e) for e in self.elems))
        if self.n < 1 or self.k < 1:
            raise PreconditionError("grid subset needs n >= 1 and k >= 1")
        for e in self.elems:
            if len(e) != self.n:
                raise PreconditionError(f"element {e} has wrong dimension")
            if any(not (0 <= c <= self.k) for c in e):
                raise PreconditionError(f"element {e} outside {{0..{self.k}}}")

    def __len__(self) -> int:
        return len(self.elems)

    def to_point_set(self) -> PointSet:
        pts = tuple(tuple(Fraction(c) for c in e) for e in sorted(self.elems))
        return PointSet(self.n, pts)


def _fiber(elems: frozenset[IntVec], tail: IntVec) -> set[int]:
    return {e[-1] for e in elems if e[:-1] == tail}


def shift_map(subset: GridSubset, x: IntVec) -> IntVec:
    """One application of the head-shift map.

    x moves to (tail, head+1) when some value j > head is missing from
    the fiber over its tail; otherwise x is a fixed point. The map is
    injective on the subset.
    """
    x = tuple(x)
    if x not in subset.elems:
        raise DomainError(f"{x} is not in the subset")
    tail, head = x[:-1], x[-1]
    missing = set(range(subset.k + 1)) - _fiber(subset.elems, tail)
    if any(j > head for j in missing):
        return tail + (head + 1,)
    return x


def _extract(elems: set[IntVec], n: int, k: int) -> list[IntVec]:
    """Ordered points x^0..x^k with ||x^s - x^t|| = |s-t|, all from elems."""
    if n == 1:
        assert len(elems) == k + 1, "one-dimensional dense set must be full"
        return [(i,) for i in range(k + 1)]

    fibers: dict[IntVec, set[int]] = {}
    for e in elems:
        fibers.setdefault(e[:-1], set()).add(e[-1])

    full = sorted(t for t, heads in fibers.items() if len(heads) == k + 1)
    if full:
        tail = full[0]
        return [tail + (i,) for i in range(k + 1)]

    # No full fiber: shift, partition the image by last coordinate, recurse
    # on a class that stays above the counting threshold.
    preimage: dict[IntVec, IntVec] = {}
    classes: dict[int, set[IntVec]] = {i: set() for i in range(k + 1)}
    for e in elems:
        tail, head = e[:-1], e[-1]
        missing_above = any(
            j > head for j in set(range(k + 1)) - fibers[tail]
        )
        img = tail + (head + 1,) if missing_above else e
        assert img not in preimage, "shift map lost injectivity"
        preimage[img] = e
        classes[img[-1]].add(img)

    assert not classes[0], "image class at head 0 must be empty"
    threshold = k ** (n - 1)
    target = next(
        (i for i in range(1, k + 1) if len(classes[i]) > threshold), None
    )
    assert target is not None, "pigeonhole guarantees a dense class"

    tails = {e[:-1] for e in classes[target]}
    assert len(tails) == len(classes[target])
    sub = _extract(tails, n - 1, k)
    return [preimage[y + (target,)] for y in sub]


def extract_unit_baton(subset: GridSubset) -> CopyEmbedding:
    """Extract a unit-gap baton copy from a grid subset with > k^n points.

    Returns the copy in normalized form: consecutive extracted points are
    at distance exactly 1 and endpoints at distance k. All internal steps
    are asserted; the counting hypothesis guarantees they hold.
    """
    n, k = subset.n, subset.k
    if len(subset) <= k**n:
        raise PreconditionError(
            f"need more than {k}^{n} = {k**n} points, got {len(subset)}"
        )
    chain = _extract(set(subset.elems), n, k)
    for s in range(k + 1):
        for t in range(s + 1, k + 1):
            got = max(abs(a - b) for a, b in zip(chain[s], chain[t]))
            assert got == t - s, "extracted chain is not normalized"
    points = subset.to_point_set()
    indices = tuple(
        points.index_of(tuple(Fraction(c) for c in x)) for x in chain
    )
    return CopyEmbedding(Baton.unit(k).as_metric_space(), points, indices)


@dataclass(frozen=True)
class AnchorSet:
    """Strictly increasing values starting at 0, with marked positions.

    The marked indices select the extraction steps that realize a target
    gap pattern: consecutive marked values differ by the pattern's steps.
    """

    values: tuple[Fraction, ...]
    marks: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "marks", tuple(self.marks))
        if not vals or vals[0] != 0:
            raise PreconditionError("values must start at 0")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise PreconditionError("values must be strictly increasing")
        marks = self.marks
        if (
            len(marks) < 2
            or marks[0] != 0
            or marks[-1] != len(vals) - 1
            or any(b <= a for a, b in zip(marks, marks[1:]))
        ):
            raise PreconditionError("marks must run from 0 to the last index")

    @property
    def top_index(self) -> int:
        return len(self.values) - 1

    def marked_steps(self) -> tuple[Fraction, ...]:
        return tuple(
            self.values[b] - self.values[a]
            for a, b in zip(self.marks, self.marks[1:])
        )


def anchor_set_one_alpha(alpha) -> AnchorSet:
    """Anchor values for the two-step pattern (1, alpha), alpha > 1.

    ceil(alpha) + 2 values: 0, then an arithmetic ramp from 1 to alpha,
    then alpha + 1. Consecutive values differ by at most 1, so a value
    gap above 1 forces an index gap of at least 2.
    """
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise PreconditionError("alpha must exceed 1")
    m = -((-alpha.numerator) // alpha.denominator)  # ceil(alpha)
    values = [Fraction(0)]
    for l in range(1, m + 1):
        values.append(1 + Fraction(l - 1, m - 1) * (alpha - 1))
    values.append(alpha + 1)
    return AnchorSet(tuple(values), (0, 1, m + 1))


def _int_coord(value: Fraction, where: str) -> int:
    if value.denominator != 1:
        raise DomainError(f"{where}: {value} is not an anchor value")
    return value.numerator


def extract_general_baton(
    subset: PointSet, baton: Baton, anchors
) -> CopyEmbedding:
    """Extract a copy of `baton` from a dense subset of anchor-grid points.

    `anchors` provides .values and .marks (AnchorSet, or an anchor
    sequence exposing the same surface). Each coordinate of every point
    must be an anchor value; with more than (len(values)-1)^n points a
    copy is guaranteed. The copy is found by pulling the subset back to
    the integer grid, extracting a unit baton, and pushing the marked
    positions forward.
    """
    values = tuple(Fraction(v) for v in anchors.values)
    marks = tuple(anchors.marks)
    if baton.k + 1 != len(marks):
        raise PreconditionError("anchor marks do not match the baton length")
    if anchors.marked_steps() != baton.steps:
        raise PreconditionError("anchor marked gaps do not match the baton steps")
    index_of_value = {v: i for i, v in enumerate(values)}
    top = len(values) - 1
    n = subset.dim
    if len(subset) <= top**n:
        raise PreconditionError(
            f"need more than {top}^{n} = {top**n} points, got {len(subset)}"
        )

    grid_elems = set()
    for p in subset.points:
        try:
            grid_elems.add(tuple(index_of_value[c] for c in p))
        except KeyError:
            raise DomainError(f"point {p} has a coordinate outside the anchors")
    chain = _extract(grid_elems, n, top)

    # Normalize orientation: some coordinate runs 0..top along the chain;
    # if it runs downward, reverse so marked selection reads forward.
    witness = next(
        j for j in range(n) if {chain[0][j], chain[-1][j]} == {0, top}
    )
    if chain[0][witness] == top:
        chain = chain[::-1]
    assert all(chain[s][witness] == s for s in range(top + 1))

    selected = [chain[i] for i in marks]
    mapped = [tuple(values[c] for c in x) for x in selected]
    positions = baton.positions()
    for s, t in itertools.combinations(range(len(mapped)), 2):
        got = chebyshev_distance(mapped[s], mapped[t])
        assert got == positions[t] - positions[s], (
            "anchor construction failed to realize the gap pattern"
        )
    indices = tuple(subset.index_of(p) for p in mapped)
    return CopyEmbedding(baton.as_metric_space(), subset, indices)
