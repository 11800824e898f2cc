"""Independent rechecking of JSON certificates.

Every certificate kind gets a policy that rebuilds whatever the artifact
claims from its own stated inputs and compares field by field. A policy
trusts nothing it can recompute: distances are recomputed exactly,
anchor sequences are rebuilt from their witness, coverings are re-solved
when small enough. Failures name the offending field or pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .anchors import (
    AnchorSequence,
    DirichletWitness,
    _build_from_witness,
    _round_half_up,
    _threshold_q0,
    approximation_bound_holds,
    gamma_set,
    verify_anchor_sequence,
)
from .chromatic import copy_hypergraph, exact_chromatic, is_proper
from .colorings import PeriodicColoring
from .cover import CoverInstance, counting_lower_bound, exact_cover, is_cover
from .errors import ParseError
from .io import metric_space_from_obj, read_json, vec_from_obj
from .metric import Baton, chebyshev_distance, connectivity_threshold, diameter, grid_points
from .rational import parse_rational


@dataclass(frozen=True)
class ValidationReport:
    kind: str
    ok: bool
    failures: tuple[str, ...]


def _int_value(value, label) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{label} must be an integer")
    return value


def _int_field(obj, key) -> int:
    return _int_value(obj[key], key)


def _bool_field(obj, key) -> bool:
    value = obj[key]
    if not isinstance(value, bool):
        raise ParseError(f"{key} must be a boolean")
    return value


def _list_field(obj, key) -> list:
    value = obj[key]
    if not isinstance(value, list):
        raise ParseError(f"{key} must be a list")
    return value


def _check_pairwise(points, space, label, failures) -> None:
    for i, j in itertools.combinations(range(len(points)), 2):
        got = chebyshev_distance(points[i], points[j])
        if got != space.dist[i][j]:
            failures.append(f"{label}: pair ({i},{j}) has distance {got}")


def _check_copy_embedding(obj) -> list[str]:
    failures: list[str] = []
    space = metric_space_from_obj({"distance_matrix": obj["distance_matrix"]})
    if obj.get("distances_checked") is not True:
        failures.append("distances_checked: must be true")
    points = [vec_from_obj(p) for p in _list_field(obj, "points")]
    if len(points) != space.size:
        failures.append("points: count does not match the distance matrix")
        return failures
    _check_pairwise(points, space, "points", failures)
    return failures


def _check_copy_list(obj) -> list[str]:
    failures: list[str] = []
    space = metric_space_from_obj({"distance_matrix": obj["distance_matrix"]})
    copies = [
        [vec_from_obj(p) for p in copy] for copy in _list_field(obj, "copies")
    ]
    if _int_field(obj, "count") != len(copies):
        failures.append("count: does not match the number of copies")
    for idx, points in enumerate(copies):
        if len(points) != space.size:
            failures.append(f"copies[{idx}]: wrong number of points")
            continue
        _check_pairwise(points, space, f"copies[{idx}]", failures)
    supports = [frozenset(points) for points in copies]
    if _bool_field(obj, "distinct_supports") != (len(set(supports)) == len(supports)):
        failures.append("distinct_supports: does not match the listed copies")
    return failures


def _check_anchor_sequence(obj) -> list[str]:
    failures: list[str] = []
    steps = vec_from_obj(obj["steps"])
    baton = Baton(steps=steps)
    if baton.k < 1:
        raise ParseError("steps must be non-empty")
    k = baton.k
    p = tuple(_int_value(v, "p") for v in _list_field(obj, "p"))
    m = _int_field(obj, "m")
    q = _int_field(obj, "q")
    q0 = _int_field(obj, "q0")
    delta = parse_rational(obj["delta"])
    theta = parse_rational(obj["theta"])
    a = vec_from_obj(obj["a"])

    gammas = gamma_set(baton)
    with_next = gammas.values + (gammas.gamma_next,)
    delta_true = min(y - x for x, y in zip(with_next, with_next[1:]))
    theta_true = gammas.values[-1] / gammas.values[1]
    if delta != delta_true:
        failures.append("delta: recomputed value differs")
    if theta != theta_true:
        failures.append("theta: recomputed value differs")
    if m != sum(p):
        failures.append("m: does not equal sum(p)")
        return failures

    if q == 1:
        if q0 != 0:
            failures.append("q0: must be 0 for the integer fast path")
        if any(s.denominator != 1 for s in steps) or p != tuple(
            int(s) for s in steps
        ):
            failures.append("p: fast path requires p equal to integer steps")
        if a != tuple(Fraction(l) for l in range(m + 1)):
            failures.append("a: fast path requires a_l = l")
    else:
        if q0 != _threshold_q0(delta_true, theta_true, k):
            failures.append("q0: recomputed threshold differs")
        if q <= q0:
            failures.append("q: must exceed q0")
        witness = DirichletWitness(q, p)
        if p != tuple(_round_half_up(q * s) for s in steps):
            failures.append("p: not the half-up rounding of q*steps")
        elif any(
            not approximation_bound_holds(e, q, k) for e in witness.errors(steps)
        ):
            failures.append("q: approximation bound fails")
        else:
            try:
                a_true, m_true = _build_from_witness(gammas, witness, delta_true)
            except AssertionError:
                failures.append("a: rebuild from the witness failed")
            else:
                if m != m_true:
                    failures.append("m: rebuild from the witness differs")
                if a != a_true:
                    failures.append("a: rebuild from the witness differs")

    if failures:
        return failures
    seq = AnchorSequence(p=p, m=m, a=a, delta=delta, theta=theta, q0=q0, q=q)
    report = verify_anchor_sequence(seq, baton)
    expected = {name: bool(result) for name, result in report.clauses().items()}
    stored = obj["verification"]
    if not isinstance(stored, dict) or stored != expected:
        failures.append("verification: recomputed clause results differ")
    return failures


def _check_periodic_coloring(obj) -> list[str]:
    failures: list[str] = []
    space = metric_space_from_obj({"distance_matrix": obj["distance_matrix"]})
    classes = tuple(
        tuple(vec_from_obj(v) for v in vecs) for vecs in _list_field(obj, "classes")
    )
    if _int_field(obj, "class_count") != len(classes):
        failures.append("class_count: does not match the classes")
    try:
        coloring = PeriodicColoring(
            dim=_int_field(obj, "dim"),
            period=parse_rational(obj["period"]),
            box_size=parse_rational(obj["box_size"]),
            classes=classes,
            window=parse_rational(obj["window"]),
            window_anchors=tuple(vec_from_obj(v) for v in _list_field(obj, "anchors")),
        )
    except ValueError as exc:
        failures.append(f"coloring: {exc}")
        return failures
    try:
        coloring.check_partition()
    except ValueError as exc:
        failures.append(f"classes: {exc}")
    try:
        coloring.check_windows()
    except ValueError as exc:
        failures.append(f"anchors: {exc}")
    if coloring.window > diameter(space):
        failures.append("window: exceeds the diameter of the avoided space")
    if coloring.period - coloring.window < connectivity_threshold(space):
        failures.append("period: gap below the connectivity threshold")
    return failures


def _check_chromatic(obj) -> list[str]:
    failures: list[str] = []
    k = _int_field(obj, "k")
    n = _int_field(obj, "n")
    space = metric_space_from_obj({"distance_matrix": obj["distance_matrix"]})
    colors = tuple(_int_value(v, "colors") for v in _list_field(obj, "colors"))
    color_count = _int_field(obj, "color_count")
    optimal = _bool_field(obj, "optimal")
    lower_bound = _int_field(obj, "lower_bound")

    points = grid_points(k, n)
    hypergraph = copy_hypergraph(points, space)
    if len(colors) != hypergraph.vertex_count:
        failures.append("colors: one color per grid point required")
        return failures
    if not is_proper(hypergraph, colors):
        failures.append("colors: a copy is monochromatic")
    if set(colors) != set(range(color_count)):
        failures.append("color_count: colors must use exactly 0..count-1")
    if not 1 <= lower_bound <= color_count:
        failures.append("lower_bound: outside [1, color_count]")
    if hypergraph.vertex_count <= 16:
        resolved = exact_chromatic(hypergraph, budget=10**6)
        if not resolved.budget_exhausted:
            if optimal != (color_count == resolved.color_count):
                failures.append("optimal: disagrees with an independent solve")
            elif optimal and lower_bound != color_count:
                failures.append("lower_bound: optimal certificates must match")
    return failures


def _check_torus_cover(obj) -> list[str]:
    failures: list[str] = []
    inst = CoverInstance(
        m=_int_field(obj, "m"), d=_int_field(obj, "d"), n=_int_field(obj, "n")
    )
    translates = []
    for idx, row in enumerate(_list_field(obj, "translates")):
        vec = tuple(_int_value(v, "translates") for v in row)
        if len(vec) != inst.n or not all(0 <= c < inst.m for c in vec):
            failures.append(f"translates[{idx}]: outside the torus")
        translates.append(vec)
    if failures:
        return failures
    size = _int_field(obj, "size")
    optimal = _bool_field(obj, "optimal")
    lower_bound = _int_field(obj, "lower_bound")
    if size != len(translates):
        failures.append("size: does not match the translate list")
    if not is_cover(inst, translates):
        failures.append("translates: not a cover")
    counting = counting_lower_bound(inst)
    if optimal:
        if lower_bound != size:
            failures.append("lower_bound: optimal covers must match their size")
    elif lower_bound != counting:
        failures.append("lower_bound: non-optimal covers carry the counting bound")
    if not failures and inst.point_count <= 30:
        resolved = exact_cover(inst, budget=10**6)
        if not resolved.budget_exhausted and optimal != (size == resolved.size):
            failures.append("optimal: disagrees with an independent solve")
    return failures


_POLICIES = {
    "copy_embedding": _check_copy_embedding,
    "copy_list": _check_copy_list,
    "anchor_sequence": _check_anchor_sequence,
    "periodic_coloring": _check_periodic_coloring,
    "chromatic": _check_chromatic,
    "torus_cover": _check_torus_cover,
}


def validate_certificate(source) -> ValidationReport:
    """Validate a certificate given as a dict or a path to a JSON file."""
    obj = source if isinstance(source, dict) else read_json(source)
    if not isinstance(obj, dict):
        return ValidationReport(kind="", ok=False, failures=("kind: missing",))
    kind = obj.get("kind")
    policy = _POLICIES.get(kind)
    if policy is None:
        return ValidationReport(
            kind=str(kind), ok=False, failures=(f"kind: unknown {kind!r}",)
        )
    try:
        failures = policy(obj)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        failures = [f"malformed: {exc}"]
    return ValidationReport(kind=kind, ok=not failures, failures=tuple(failures))
