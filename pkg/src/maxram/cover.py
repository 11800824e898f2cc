"""Covering the discrete torus Z_m^n by translates of the cube {0..d-1}^n.

Coverings are exact set-cover instances over bitmask coverage tables.
Three constructions are provided: branch-and-bound minimum covers with a
node budget, the lexicographic greedy, and the randomized construction
(floor(n * ln d * (m/d)^n) uniform translates plus one patch per point
left uncovered) whose expected leftover count is below (m/d)^n.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .rational import ceil_div, floor_times_log

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class CoverInstance:
    m: int
    d: int
    n: int

    def __post_init__(self):
        if not (1 <= self.d <= self.m):
            raise PreconditionError("need 1 <= d <= m")
        if self.n < 1:
            raise PreconditionError("need n >= 1")

    @property
    def point_count(self) -> int:
        return self.m**self.n


@dataclass
class CoverSolution:
    translates: list[IntVec]
    size: int
    optimal: bool
    lower_bound: int
    s_random: int | None = None
    leftover: int | None = None
    budget_exhausted: bool = False


def counting_lower_bound(inst: CoverInstance) -> int:
    """ceil(m^n / d^n): each translate covers exactly d^n points."""
    return ceil_div(inst.point_count, inst.d**inst.n)


def torus_points(inst: CoverInstance) -> list[IntVec]:
    return list(itertools.product(range(inst.m), repeat=inst.n))


def _point_index(point: IntVec, m: int) -> int:
    idx = 0
    for c in point:
        idx = idx * m + c
    return idx


def cover_mask(inst: CoverInstance, translate: IntVec) -> int:
    """Bitmask of the points covered by translate + {0..d-1}^n (mod m)."""
    m, d, n = inst.m, inst.d, inst.n
    nbytes = (m**n + 7) // 8
    buf = bytearray(nbytes)
    indices = [0]
    for axis in range(n):
        coords = [(translate[axis] + t) % m for t in range(d)]
        indices = [idx * m + c for idx in indices for c in coords]
    for idx in indices:
        buf[idx >> 3] |= 1 << (idx & 7)
    return int.from_bytes(bytes(buf), "little")


def _coverage_table(inst: CoverInstance) -> tuple[list[IntVec], list[int]]:
    translates = torus_points(inst)
    return translates, [cover_mask(inst, v) for v in translates]


def is_cover(inst: CoverInstance, translates) -> bool:
    full = (1 << inst.point_count) - 1
    acc = 0
    for v in translates:
        acc |= cover_mask(inst, tuple(v))
        if acc == full:
            return True
    return acc == full


def greedy_cover(inst: CoverInstance) -> CoverSolution:
    """Largest-new-coverage greedy; ties broken by lexicographic translate."""
    translates, masks = _coverage_table(inst)
    full = (1 << inst.point_count) - 1
    uncovered = full
    chosen: list[IntVec] = []
    while uncovered:
        best_i, best_gain = -1, -1
        for i, mask in enumerate(masks):
            gain = (mask & uncovered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        chosen.append(translates[best_i])
        uncovered &= ~masks[best_i]
    lb = counting_lower_bound(inst)
    return CoverSolution(
        translates=chosen,
        size=len(chosen),
        optimal=len(chosen) == lb,
        lower_bound=lb,
    )


def random_translates_cover(inst: CoverInstance, seed: int = 0) -> CoverSolution:
    """floor(n * ln d * (m/d)^n) uniform random translates, then one patch
    translate placed at every point still uncovered."""
    m, d, n = inst.m, inst.d, inst.n
    ratio = Fraction(m, d) ** n
    s = floor_times_log(n * ratio, d)
    rng = random.Random(seed)
    drawn = [tuple(rng.randrange(m) for _ in range(n)) for _ in range(s)]
    chosen: list[IntVec] = []
    seen = set()
    covered = 0
    for v in drawn:
        if v not in seen:
            seen.add(v)
            chosen.append(v)
            covered |= cover_mask(inst, v)
    leftovers = []
    for idx, point in enumerate(torus_points(inst)):
        if not (covered >> idx) & 1:
            leftovers.append(point)
    for point in leftovers:
        chosen.append(point)
        covered |= cover_mask(inst, point)
    assert covered == (1 << inst.point_count) - 1
    lb = counting_lower_bound(inst)
    return CoverSolution(
        translates=chosen,
        size=len(chosen),
        optimal=len(chosen) == lb,
        lower_bound=lb,
        s_random=s,
        leftover=len(leftovers),
    )


def randomized_cover(inst: CoverInstance, seed: int = 0) -> CoverSolution:
    """The randomized construction; d = 1 makes its random phase empty
    (ln 1 = 0), so fall back to greedy there."""
    if inst.d == 1:
        return greedy_cover(inst)
    return random_translates_cover(inst, seed)


def random_cover_within_expectation(
    inst: CoverInstance, seed: int = 0, max_retries: int = 1000
) -> tuple[CoverSolution, int, bool]:
    """Retry seeds until total size <= s + ceil((m/d)^n), the integer form
    of the expectation guarantee. Returns (best solution, attempts, met)."""
    ratio = Fraction(inst.m, inst.d) ** inst.n
    allowance = ceil_div(ratio.numerator, ratio.denominator)
    best: CoverSolution | None = None
    for attempt in range(max_retries):
        sol = random_translates_cover(inst, seed + attempt)
        if best is None or sol.size < best.size:
            best = sol
        if sol.size <= (sol.s_random or 0) + allowance:
            return sol, attempt + 1, True
    assert best is not None
    return best, max_retries, False


def _window_masks(inst: CoverInstance, points: list[IntVec]) -> list[int]:
    """window[p] = bitmask of points co-coverable with p by one translate."""
    m, d = inst.m, inst.d
    npts = len(points)
    if 2 * d - 1 >= m:
        # The window wraps all the way around every axis.
        full = (1 << npts) - 1
        return [full] * npts
    nbytes = (npts + 7) // 8
    out = []
    for p in points:
        indices = [0]
        for axis in range(inst.n):
            coords = sorted({(p[axis] + off) % m for off in range(-(d - 1), d)})
            indices = [idx * m + c for idx in indices for c in coords]
        buf = bytearray(nbytes)
        for idx in indices:
            buf[idx >> 3] |= 1 << (idx & 7)
        out.append(int.from_bytes(buf, "little"))
    return out


def exact_cover(inst: CoverInstance, budget: int = 10**7) -> CoverSolution:
    """Minimum cover by branch and bound.

    The first translate is pinned to the origin (the torus is transitive,
    so some minimum cover contains it). Branching picks the uncovered
    point with the fewest covering translates and tries its coverers by
    decreasing fresh coverage. Pruning uses the better of the counting
    bound and a greedy packing of pairwise non-co-coverable points. The
    greedy cover seeds the incumbent; if the node budget runs out the
    incumbent is returned with optimal=False.
    """
    points = torus_points(inst)
    translates, masks = _coverage_table(inst)
    npts = inst.point_count
    full = (1 << npts) - 1
    coverers: list[list[int]] = [[] for _ in range(npts)]
    for ti, mask in enumerate(masks):
        probe = mask
        while probe:
            low = probe & -probe
            coverers[low.bit_length() - 1].append(ti)
            probe ^= low
    windows = _window_masks(inst, points)
    dpow = inst.d**inst.n

    greedy = greedy_cover(inst)
    best_size = greedy.size
    best_sol = [tuple(v) for v in greedy.translates]
    nodes = 0
    exhausted = False

    def packing_bound(uncovered: int) -> int:
        count = 0
        taken = 0
        probe = uncovered
        while probe:
            low = probe & -probe
            pi = low.bit_length() - 1
            if not (windows[pi] & taken):
                count += 1
                taken |= windows[pi]
            probe ^= low
        return count

    def search(uncovered: int, chosen: list[int]) -> None:
        nonlocal nodes, exhausted, best_size, best_sol
        if exhausted:
            return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        if not uncovered:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_sol = [translates[i] for i in chosen]
            return
        lb = max(
            ceil_div(uncovered.bit_count(), dpow), packing_bound(uncovered)
        )
        if len(chosen) + lb >= best_size:
            return
        target, target_count = -1, None
        probe = uncovered
        while probe:
            low = probe & -probe
            pi = low.bit_length() - 1
            cnt = len(coverers[pi])
            if target_count is None or cnt < target_count:
                target, target_count = pi, cnt
            probe ^= low
        order = sorted(
            coverers[target],
            key=lambda ti: (-(masks[ti] & uncovered).bit_count(), ti),
        )
        for ti in order:
            chosen.append(ti)
            search(uncovered & ~masks[ti], chosen)
            chosen.pop()
            if exhausted:
                return

    search(full & ~masks[0], [0])

    counting = counting_lower_bound(inst)
    if exhausted:
        return CoverSolution(
            translates=best_sol,
            size=best_size,
            optimal=False,
            lower_bound=counting,
            budget_exhausted=True,
        )
    return CoverSolution(
        translates=best_sol,
        size=best_size,
        optimal=True,
        lower_bound=best_size,
    )


def naive_minimum_cover(inst: CoverInstance) -> CoverSolution:
    """Subset enumeration by increasing size; oracle for small instances."""
    translates, masks = _coverage_table(inst)
    full = (1 << inst.point_count) - 1
    for size in range(1, len(translates) + 1):
        for combo in itertools.combinations(range(len(translates)), size):
            acc = 0
            for i in combo:
                acc |= masks[i]
            if acc == full:
                return CoverSolution(
                    translates=[translates[i] for i in combo],
                    size=size,
                    optimal=True,
                    lower_bound=size,
                )
    raise AssertionError("full translate set always covers")


@dataclass(frozen=True)
class CnRow:
    n: int
    lower: int
    upper: int
    exact: bool


def cn_table(n_max: int, budget: int = 10**7, seed: int = 0) -> list[CnRow]:
    """Bounds on the minimum number of {0,1}^n translates covering Z_3^n.

    Each row reports the counting lower bound and the best constructive
    upper bound; when the exact search finishes within budget the two
    collapse to the true value.
    """
    rows = []
    for n in range(1, n_max + 1):
        inst = CoverInstance(3, 2, n)
        lower = counting_lower_bound(inst)
        upper = greedy_cover(inst).size
        for attempt in range(5):
            upper = min(upper, randomized_cover(inst, seed + attempt).size)
        sol = exact_cover(inst, budget=budget)
        if sol.optimal:
            rows.append(CnRow(n, sol.size, sol.size, True))
        else:
            rows.append(CnRow(n, lower, min(upper, sol.size), False))
    return rows
