"""Subadditive anchor sequences from simultaneous rational approximation.

Given positive rational steps a1..ak, we build integers p1..pk and a
strictly increasing sequence a_0 = 0 < a_1 < ... < a_m (m = sum p_i) that
is subadditive (a_{l+r} <= a_l + a_r) and anchored: every bounded
nonnegative combination gamma = sum d_i*a_i satisfies a_{sum d_i*p_i} =
gamma. The p_i come from a denominator q approximating all steps
simultaneously to within q^-(1+1/k); interior values interpolate each
anchor from below in increments of delta/(2m).

All arithmetic is exact. The only concession to speed is that the
all-pairs subadditivity sweep runs on scaled integers (numpy when they
fit in int64), which loses nothing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .metric import Baton

_RETRY_LIMIT = 64


@dataclass(frozen=True)
class GammaSet:
    """All combinations sum d_i*steps_i <= sum steps_i, sorted, plus the
    least combination beyond them."""

    steps: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    witnesses: tuple[tuple[int, ...], ...]
    gamma_next: Fraction


def _combinations_upto(steps, extra: int):
    """Yield (value, coeffs) over 0 <= d_i <= floor(total/steps_i) + extra."""
    total = sum(steps)
    bounds = [int(total / s) + extra for s in steps]
    for coeffs in itertools.product(*(range(b + 1) for b in bounds)):
        yield sum(d * s for d, s in zip(coeffs, steps)), coeffs


def gamma_set(baton: Baton) -> GammaSet:
    """Enumerate the bounded combination set of the baton's steps.

    The per-coordinate bound floor(total/step_i) is exhaustive below the
    total, and one extra step per coordinate suffices to find the least
    combination above it.
    """
    if baton.k < 1:
        raise PreconditionError("gamma_set needs at least one step")
    steps = baton.steps
    total = sum(steps)
    by_value: dict[Fraction, tuple[int, ...]] = {}
    beyond: Fraction | None = None
    for value, coeffs in _combinations_upto(steps, extra=1):
        if value <= total:
            if value not in by_value or coeffs < by_value[value]:
                by_value[value] = coeffs
        elif beyond is None or value < beyond:
            beyond = value
    values = tuple(sorted(by_value))
    assert beyond is not None
    return GammaSet(
        steps=steps,
        values=values,
        witnesses=tuple(by_value[v] for v in values),
        gamma_next=beyond,
    )


@dataclass(frozen=True)
class DirichletWitness:
    """Denominator q and numerators with |step_i - p_i/q| < q^-(1+1/k)."""

    q: int
    numerators: tuple[int, ...]

    def errors(self, steps) -> tuple[Fraction, ...]:
        return tuple(
            abs(Fraction(s) - Fraction(p, self.q))
            for s, p in zip(steps, self.numerators)
        )


def _round_half_up(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def approximation_bound_holds(error: Fraction, q: int, k: int) -> bool:
    """Exact test of error < q^-(1+1/k), as error^k * q^(k+1) < 1."""
    return error**k * Fraction(q) ** (k + 1) < 1


def dirichlet_approx(steps, q0: int) -> DirichletWitness:
    """Least q > q0 whose nearest-integer numerators satisfy the
    simultaneous approximation bound; a linear scan, checked exactly.

    Rational steps make termination certain: any common-denominator
    multiple has zero error.
    """
    steps = tuple(Fraction(s) for s in steps)
    if not steps or any(s <= 0 for s in steps):
        raise PreconditionError("steps must be positive")
    k = len(steps)
    q = q0
    while True:
        q += 1
        numerators = tuple(_round_half_up(q * s) for s in steps)
        errors = (abs(s - Fraction(p, q)) for s, p in zip(steps, numerators))
        if all(approximation_bound_holds(e, q, k) for e in errors):
            return DirichletWitness(q, numerators)


@dataclass(frozen=True)
class AnchorSequence:
    """The built sequence plus the data needed to audit it.

    marks are the partial sums of p and select the positions where the
    original steps are realized; values aliases a so the sequence plugs
    into the general baton extractor.
    """

    p: tuple[int, ...]
    m: int
    a: tuple[Fraction, ...]
    delta: Fraction
    theta: Fraction
    q0: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(int(v) for v in self.p))
        object.__setattr__(self, "a", tuple(Fraction(v) for v in self.a))
        if not self.p or any(v < 1 for v in self.p):
            raise PreconditionError("p must be positive integers")
        if self.m != sum(self.p):
            raise PreconditionError("m must equal sum(p)")
        if len(self.a) != self.m + 1:
            raise PreconditionError("a must have m+1 entries")
        if self.q < 1:
            raise PreconditionError("q must be a positive integer")

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.a

    @property
    def marks(self) -> tuple[int, ...]:
        out = [0]
        for v in self.p:
            out.append(out[-1] + v)
        return tuple(out)

    def marked_steps(self) -> tuple[Fraction, ...]:
        return tuple(
            self.a[b] - self.a[a] for a, b in zip(self.marks, self.marks[1:])
        )


def scaled_round(q: int, gamma: Fraction) -> int:
    """The index a combination value anchors to: round(q*gamma), half up."""
    return _round_half_up(q * Fraction(gamma))


def _threshold_q0(delta: Fraction, theta: Fraction, k: int) -> int:
    """Least integer with 1/q0 < delta and theta/q0^(1+1/k) < 1/(2q0).

    The second condition is equivalent to (2*theta)^k < q0, so both are
    exact rational comparisons.
    """
    inv = 1 / delta
    lhs = (2 * theta) ** k
    q0 = max(inv.numerator // inv.denominator, lhs.numerator // lhs.denominator)
    while not (Fraction(1, q0 + 1) < delta and lhs < q0 + 1):
        q0 += 1
    return q0 + 1


def _build_from_witness(
    gammas: GammaSet, witness: DirichletWitness, delta: Fraction
) -> tuple[tuple[Fraction, ...], int]:
    q = witness.q
    m = sum(witness.numerators)
    boundaries = [scaled_round(q, g) for g in gammas.values]
    assert boundaries[0] == 0
    assert boundaries[-1] == m, "top anchor index must equal sum(p)"
    unit = delta / (2 * m)
    a = [Fraction(0)] * (m + 1)
    for i in range(1, len(boundaries)):
        gamma = gammas.values[i]
        for l in range(boundaries[i - 1] + 1, boundaries[i] + 1):
            a[l] = gamma - (boundaries[i] - l) * unit
    return tuple(a), m


def build_anchor_sequence(baton: Baton, faithful: bool = False) -> AnchorSequence:
    """Build an anchor sequence for the baton's steps.

    Integer steps short-circuit to p_i = step_i, a_l = l (witness q = 1),
    which satisfies every clause directly and avoids enormous q. Pass
    faithful=True to force the full approximation construction on any
    input. The result is verified before being returned; a failing
    verification (possible only through rounding ties, which the theory
    excludes) retries with the next admissible q.
    """
    if baton.k < 1:
        raise PreconditionError("anchor sequences need at least one step")
    steps = baton.steps
    k = len(steps)
    gammas = gamma_set(baton)
    seq_with_next = gammas.values + (gammas.gamma_next,)
    delta = min(b - a for a, b in zip(seq_with_next, seq_with_next[1:]))
    theta = gammas.values[-1] / gammas.values[1]

    if not faithful and all(s.denominator == 1 for s in steps):
        m = int(sum(steps))
        seq = AnchorSequence(
            p=tuple(int(s) for s in steps),
            m=m,
            a=tuple(Fraction(l) for l in range(m + 1)),
            delta=delta,
            theta=theta,
            q0=0,
            q=1,
        )
        report = verify_anchor_sequence(seq, baton)
        assert report.ok, f"integer fast path failed verification: {report}"
        return seq

    q0 = _threshold_q0(delta, theta, k)
    floor = q0
    for _ in range(_RETRY_LIMIT):
        witness = dirichlet_approx(steps, floor)
        a, m = _build_from_witness(gammas, witness, delta)
        seq = AnchorSequence(
            p=witness.numerators,
            m=m,
            a=a,
            delta=delta,
            theta=theta,
            q0=q0,
            q=witness.q,
        )
        report = verify_anchor_sequence(seq, baton)
        if report.ok:
            return seq
        floor = witness.q
    raise AssertionError("no admissible q passed verification")


@dataclass(frozen=True)
class ClauseResult:
    passed: bool
    counterexample: str | None = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class VerificationReport:
    monotonic: ClauseResult
    subadditive: ClauseResult
    anchored: ClauseResult
    index_increasing: ClauseResult
    index_linear: ClauseResult

    @property
    def ok(self) -> bool:
        return all(
            (
                self.monotonic,
                self.subadditive,
                self.anchored,
                self.index_increasing,
                self.index_linear,
            )
        )

    def clauses(self) -> dict[str, ClauseResult]:
        return {
            "monotonic": self.monotonic,
            "subadditive": self.subadditive,
            "anchored": self.anchored,
            "index_increasing": self.index_increasing,
            "index_linear": self.index_linear,
        }


def _first_subadditive_violation(a: tuple[Fraction, ...], m: int):
    """Lexicographically first (l, r), l <= r, with a[l+r] > a[l] + a[r]."""
    denom = math.lcm(*(v.denominator for v in a))
    scaled = [v.numerator * (denom // v.denominator) for v in a]
    if m >= 2 and 2 * max(abs(v) for v in scaled) < 2**62:
        arr = np.array(scaled, dtype=np.int64)
        for l in range(1, m // 2 + 1):
            bad = arr[2 * l : m + 1] > arr[l] + arr[l : m - l + 1]
            if bad.any():
                return l, l + int(np.nonzero(bad)[0][0])
        return None
    for l in range(1, m // 2 + 1):
        al = scaled[l]
        for r in range(l, m - l + 1):
            if scaled[l + r] > al + scaled[r]:
                return l, r
    return None


def verify_anchor_sequence(seq: AnchorSequence, baton: Baton) -> VerificationReport:
    """Check every clause the construction promises, exactly.

    Clauses: strict monotonicity from a_0 = 0; subadditivity over all
    index pairs; anchoring of every bounded combination under every
    coefficient representation; and the two index properties of
    gamma -> round(q*gamma): strictly increasing on the combination set,
    and agreeing with sum d_i*p_i for every representation.
    """
    a, m, p, q = seq.a, seq.m, seq.p, seq.q
    gammas = gamma_set(baton)

    mono_fail = None
    if a[0] != 0:
        mono_fail = f"a[0] = {a[0]} != 0"
    else:
        for l in range(1, m + 1):
            if a[l] <= a[l - 1]:
                mono_fail = f"a[{l}] = {a[l]} <= a[{l - 1}] = {a[l - 1]}"
                break
    monotonic = ClauseResult(mono_fail is None, mono_fail)

    viol = _first_subadditive_violation(a, m)
    subadditive = ClauseResult(
        viol is None,
        None
        if viol is None
        else f"a[{viol[0] + viol[1]}] > a[{viol[0]}] + a[{viol[1]}]",
    )

    anchor_fail = None
    linear_fail = None
    if len(p) != baton.k:
        anchor_fail = f"p has {len(p)} entries for {baton.k} steps"
    else:
        total = sum(baton.steps)
        for value, coeffs in _combinations_upto(baton.steps, extra=0):
            if value > total:
                continue
            index = sum(d * pi for d, pi in zip(coeffs, p))
            if anchor_fail is None and (index > m or a[index] != value):
                anchor_fail = (
                    f"combination {coeffs} (= {value}) anchors at index "
                    f"{index}, a[{index}] = {a[index] if index <= m else 'out of range'}"
                )
            if linear_fail is None and scaled_round(q, value) != index:
                linear_fail = (
                    f"round(q*gamma) = {scaled_round(q, value)} != "
                    f"sum d_i*p_i = {index} for {coeffs}"
                )
            if anchor_fail and linear_fail:
                break
    anchored = ClauseResult(anchor_fail is None, anchor_fail)
    index_linear = ClauseResult(linear_fail is None, linear_fail)

    incr_fail = None
    rounded = [scaled_round(q, g) for g in gammas.values]
    for i in range(1, len(rounded)):
        if rounded[i] <= rounded[i - 1]:
            incr_fail = (
                f"round(q*gamma) not increasing between {gammas.values[i - 1]} "
                f"and {gammas.values[i]}"
            )
            break
    index_increasing = ClauseResult(incr_fail is None, incr_fail)

    return VerificationReport(
        monotonic=monotonic,
        subadditive=subadditive,
        anchored=anchored,
        index_increasing=index_increasing,
        index_linear=index_linear,
    )
