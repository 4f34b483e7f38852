"""Decorated resolution dual graphs.

A graph has one component (vertex) per irreducible curve, one crossing
(edge) per intersection point of two distinct components, and an optional
bag of smooth-point singularities on each component.  Crossings carry the
index of the foliation along the tail component at the crossing point;
the head side is always the reciprocal and is computed, never stored.
Parallel crossings are allowed (two components may meet several times);
self-crossings are not representable and must be blown up first.

All index data lives in a single number field declared at the top of the
input file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import (
    BadFieldElement,
    Disconnected,
    DisconnectedSelection,
    EmptySelection,
    SchemaError,
    SelfLoop,
    UnknownId,
)
from .exactfield import FieldElement, NumberField, format_rational

NONDEGENERATE = "nondegenerate"
SADDLE_NODE = "saddle_node"
SN_STRONG_ON_CURVE = "saddle_node_strong"
SN_WEAK_ON_CURVE = "saddle_node_weak"

SMOOTH_KINDS = (NONDEGENERATE, SN_STRONG_ON_CURVE, SN_WEAK_ON_CURVE)

# Ids created by induced_subcurve for converted boundary crossings.
CUT_PREFIX = "cut:"


@dataclass(frozen=True)
class SmoothSingularity:
    """A reduced singularity at a smooth point of its host component.

    `cs` is the index of the foliation along the host component at the
    point.  It is required (and nonzero) for nondegenerate singularities.
    For a saddle-node whose strong separatrix lies on the component it is
    exactly 0; for one whose weak separatrix lies on the component it may
    be unknown (None), in which case index-sum checks degrade to warnings.
    `has_transverse_separatrix` declares whether a separatrix germ not
    supported on the component passes through the point.
    """

    id: str
    kind: str
    cs: FieldElement | None
    has_transverse_separatrix: bool


@dataclass(frozen=True)
class Crossing:
    """An intersection point of two distinct components.

    Stored orientation is tail -> head with the tail earlier in input
    order.  Nondegenerate crossings store cs_tail, the index along the
    tail side; the head side index is 1/cs_tail.  Saddle-node crossings
    mark which endpoint carries the weak separatrix and optionally its
    index (the strong side always has index 0).
    """

    tail: str
    head: str
    kind: str
    cs_tail: FieldElement | None = None
    weak: str | None = None
    cs_weak: FieldElement | None = None

    def other(self, component_id: str) -> str:
        return self.head if component_id == self.tail else self.tail

    def cs_on(self, component_id: str, field: NumberField) -> FieldElement | None:
        """Index along the given side; None when it is an unknown weak index."""
        if component_id not in (self.tail, self.head):
            raise UnknownId(f"crossing {self.tail}-{self.head} does not touch "
                            f"{component_id}")
        if self.kind == NONDEGENERATE:
            if component_id == self.tail:
                return self.cs_tail
            return self.cs_tail.inverse()
        if component_id == self.weak:
            return self.cs_weak
        return field.zero()


@dataclass(frozen=True)
class Component:
    id: str
    self_intersection: int
    genus: int = 0
    smooth_singularities: tuple[SmoothSingularity, ...] = ()


@dataclass(frozen=True)
class GorensteinData:
    """A declared k-th tensor power trivialization of the normal sheaf.

    `a` assigns to every component the coefficient of the divisor that the
    k-th power of the foliation's normal sheaf is claimed to be.
    """

    k: int
    a: tuple[tuple[str, int], ...]

    def coefficient(self, component_id: str) -> int:
        for cid, value in self.a:
            if cid == component_id:
                return value
        raise UnknownId(f"no gorenstein coefficient for {component_id}")


@dataclass(frozen=True)
class DualGraph:
    field: NumberField
    components: tuple[Component, ...]
    crossings: tuple[Crossing, ...]
    gorenstein: GorensteinData | None = None
    closed_world: bool = False

    def index_of(self, component_id: str) -> int:
        for i, comp in enumerate(self.components):
            if comp.id == component_id:
                return i
        raise UnknownId(f"unknown component id: {component_id}")

    def component(self, component_id: str) -> Component:
        return self.components[self.index_of(component_id)]

    def crossings_at(self, component_id: str) -> list[tuple[int, Crossing]]:
        return [
            (i, c)
            for i, c in enumerate(self.crossings)
            if component_id in (c.tail, c.head)
        ]

    def host_of_singularity(self, singularity_id: str) -> Component:
        for comp in self.components:
            for sing in comp.smooth_singularities:
                if sing.id == singularity_id:
                    return comp
        raise UnknownId(f"unknown singularity id: {singularity_id}")

    def all_smooth_singularities(self) -> list[tuple[Component, SmoothSingularity]]:
        return [
            (comp, sing)
            for comp in self.components
            for sing in comp.smooth_singularities
        ]

    def has_saddle_node_crossing(self) -> bool:
        return any(c.kind == SADDLE_NODE for c in self.crossings)


@dataclass(frozen=True)
class Finding:
    """One validation result.  Severity is "error", "warning" or "info"."""

    severity: str
    code: str
    message: str
    component: str | None = None

    def to_json(self) -> dict:
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "component": self.component,
        }


# ---------------------------------------------------------------------------
# Parsing


def _require_keys(obj: dict, where: str, required: set, optional: set):
    missing = required - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")
    unknown = set(obj) - required - optional
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")


def _parse_smooth_singularity(obj, field: NumberField, where: str) -> SmoothSingularity:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: singularity must be an object")
    _require_keys(obj, where, {"id", "kind", "cs"}, {"separatrix"})
    sid = obj["id"]
    if not isinstance(sid, str) or not sid:
        raise SchemaError(f"{where}: id must be a non-empty string")
    if sid.startswith(CUT_PREFIX):
        raise SchemaError(f"{where}: the id prefix {CUT_PREFIX!r} is reserved")
    kind = obj["kind"]
    if kind not in SMOOTH_KINDS:
        raise SchemaError(f"{where}: unknown kind {kind!r}")
    raw_cs = obj["cs"]
    cs = None if raw_cs is None else field.parse_element(raw_cs)
    if kind == NONDEGENERATE:
        if cs is None or cs.is_zero:
            raise SchemaError(
                f"{where}: a nondegenerate singularity needs a nonzero cs"
            )
        separatrix = obj.get("separatrix", True)
        if separatrix is not True:
            raise SchemaError(
                f"{where}: a nondegenerate singularity always carries a "
                "transverse separatrix"
            )
    elif kind == SN_STRONG_ON_CURVE:
        if cs is not None and not cs.is_zero:
            raise SchemaError(
                f"{where}: the strong side of a saddle-node has index 0"
            )
        cs = field.zero()
        separatrix = obj.get("separatrix", False)
    else:  # weak separatrix on the curve; None means the index is unknown
        separatrix = obj.get("separatrix", True)
    if not isinstance(separatrix, bool):
        raise SchemaError(f"{where}: separatrix must be a boolean")
    return SmoothSingularity(sid, kind, cs, separatrix)


def _parse_crossing(obj, field: NumberField, ids: list[str], where: str) -> Crossing:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: crossing must be an object")
    if "kind" not in obj:
        raise SchemaError(f"{where}: missing keys ['kind']")
    kind = obj["kind"]
    if kind == NONDEGENERATE:
        _require_keys(obj, where, {"tail", "head", "kind", "cs_tail"}, set())
    elif kind == SADDLE_NODE:
        _require_keys(obj, where, {"tail", "head", "kind", "weak"}, {"cs_weak"})
    else:
        raise SchemaError(f"{where}: unknown crossing kind {kind!r}")
    tail, head = obj["tail"], obj["head"]
    for cid in (tail, head):
        if cid not in ids:
            raise UnknownId(f"{where}: unknown component id {cid!r}")
    if tail == head:
        raise SelfLoop(
            f"{where}: component {tail!r} crosses itself; self-crossings are "
            "not representable here, blow up the crossing point first and "
            "re-enter the resulting configuration"
        )
    flip = ids.index(tail) > ids.index(head)
    if kind == NONDEGENERATE:
        cs_tail = field.parse_element(obj["cs_tail"])
        if cs_tail.is_zero:
            raise SchemaError(
                f"{where}: a nondegenerate crossing needs a nonzero cs_tail"
            )
        if flip:
            tail, head = head, tail
            cs_tail = cs_tail.inverse()
        return Crossing(tail, head, NONDEGENERATE, cs_tail=cs_tail)
    weak = obj["weak"]
    if weak not in (tail, head):
        raise SchemaError(f"{where}: weak must name one of the two endpoints")
    raw_weak = obj.get("cs_weak")
    cs_weak = None if raw_weak is None else field.parse_element(raw_weak)
    if flip:
        tail, head = head, tail
    return Crossing(tail, head, SADDLE_NODE, weak=weak, cs_weak=cs_weak)


def graph_from_obj(obj) -> DualGraph:
    """Build a DualGraph from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise SchemaError("input must be a JSON object")
    _require_keys(
        obj, "input", {"field", "components", "crossings"},
        {"gorenstein", "closed_world"},
    )
    field = NumberField.from_json(obj["field"])

    raw_components = obj["components"]
    if not isinstance(raw_components, list) or not raw_components:
        raise SchemaError("components must be a non-empty array")
    components = []
    seen_ids: set[str] = set()
    for i, raw in enumerate(raw_components):
        where = f"components[{i}]"
        if not isinstance(raw, dict):
            raise SchemaError(f"{where}: component must be an object")
        _require_keys(
            raw, where, {"id", "self_intersection"},
            {"genus", "smooth_singularities"},
        )
        cid = raw["id"]
        if not isinstance(cid, str) or not cid:
            raise SchemaError(f"{where}: id must be a non-empty string")
        if cid.startswith(CUT_PREFIX):
            raise SchemaError(f"{where}: the id prefix {CUT_PREFIX!r} is reserved")
        if cid in seen_ids:
            raise SchemaError(f"{where}: duplicate id {cid!r}")
        seen_ids.add(cid)
        selfint = raw["self_intersection"]
        if not isinstance(selfint, int) or isinstance(selfint, bool):
            raise SchemaError(f"{where}: self_intersection must be an integer")
        genus = raw.get("genus", 0)
        if not isinstance(genus, int) or isinstance(genus, bool) or genus < 0:
            raise SchemaError(f"{where}: genus must be a non-negative integer")
        sings = []
        for j, raw_sing in enumerate(raw.get("smooth_singularities", [])):
            sing = _parse_smooth_singularity(
                raw_sing, field, f"{where}.smooth_singularities[{j}]"
            )
            if sing.id in seen_ids:
                raise SchemaError(f"{where}: duplicate id {sing.id!r}")
            seen_ids.add(sing.id)
            sings.append(sing)
        components.append(Component(cid, selfint, genus, tuple(sings)))
    ids = [c.id for c in components]

    raw_crossings = obj["crossings"]
    if not isinstance(raw_crossings, list):
        raise SchemaError("crossings must be an array")
    crossings = tuple(
        _parse_crossing(raw, field, ids, f"crossings[{i}]")
        for i, raw in enumerate(raw_crossings)
    )

    gorenstein = None
    if obj.get("gorenstein") is not None:
        raw_g = obj["gorenstein"]
        _require_keys(raw_g, "gorenstein", {"k", "a"}, set())
        k = raw_g["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise SchemaError("gorenstein.k must be a positive integer")
        raw_a = raw_g["a"]
        if not isinstance(raw_a, dict):
            raise SchemaError("gorenstein.a must be an object")
        for cid in raw_a:
            if cid not in ids:
                raise UnknownId(f"gorenstein.a: unknown component id {cid!r}")
        coeffs = []
        for cid in ids:
            if cid not in raw_a:
                raise SchemaError(f"gorenstein.a must cover component {cid!r}")
            value = raw_a[cid]
            if not isinstance(value, int) or isinstance(value, bool):
                raise SchemaError(f"gorenstein.a[{cid!r}] must be an integer")
            coeffs.append((cid, value))
        gorenstein = GorensteinData(k, tuple(coeffs))

    closed_world = obj.get("closed_world", False)
    if not isinstance(closed_world, bool):
        raise SchemaError("closed_world must be a boolean")

    graph = DualGraph(field, tuple(components), crossings, gorenstein, closed_world)
    _check_connected(graph)
    return graph


def parse_graph(text: str | bytes) -> DualGraph:
    """Parse a JSON input document into a DualGraph."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return graph_from_obj(obj)


def _check_connected(g: DualGraph):
    ids = [c.id for c in g.components]
    adjacency: dict[str, list[str]] = {cid: [] for cid in ids}
    for c in g.crossings:
        adjacency[c.tail].append(c.head)
        adjacency[c.head].append(c.tail)
    seen = {ids[0]}
    queue = [ids[0]]
    while queue:
        v = queue.pop(0)
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    missing = [cid for cid in ids if cid not in seen]
    if missing:
        raise Disconnected(
            f"dual graph is not connected; unreachable from {ids[0]!r}: {missing}"
        )


# ---------------------------------------------------------------------------
# Serialization


def _smooth_singularity_to_obj(s: SmoothSingularity) -> dict:
    return {
        "id": s.id,
        "kind": s.kind,
        "cs": None if s.cs is None else s.cs.to_json(),
        "separatrix": s.has_transverse_separatrix,
    }


def _crossing_to_obj(c: Crossing) -> dict:
    if c.kind == NONDEGENERATE:
        return {
            "tail": c.tail,
            "head": c.head,
            "kind": c.kind,
            "cs_tail": c.cs_tail.to_json(),
        }
    return {
        "tail": c.tail,
        "head": c.head,
        "kind": c.kind,
        "weak": c.weak,
        "cs_weak": None if c.cs_weak is None else c.cs_weak.to_json(),
    }


def graph_to_obj(g: DualGraph) -> dict:
    obj: dict = {
        "field": g.field.to_json(),
        "components": [
            {
                "id": comp.id,
                "self_intersection": comp.self_intersection,
                "genus": comp.genus,
                "smooth_singularities": [
                    _smooth_singularity_to_obj(s) for s in comp.smooth_singularities
                ],
            }
            for comp in g.components
        ],
        "crossings": [_crossing_to_obj(c) for c in g.crossings],
        "closed_world": g.closed_world,
    }
    if g.gorenstein is not None:
        obj["gorenstein"] = {
            "k": g.gorenstein.k,
            "a": {cid: value for cid, value in g.gorenstein.a},
        }
    return obj


def serialize_graph(g: DualGraph, indent: int | None = 2) -> str:
    return json.dumps(graph_to_obj(g), indent=indent)


# ---------------------------------------------------------------------------
# Validation


def validate_indices(g: DualGraph) -> list[Finding]:
    """Check the decorated graph against the index bookkeeping rules.

    Error findings block the verdict engine; warnings do not.  Per
    component the indices of all singular points on it must add up to the
    self-intersection number.  An unknown weak saddle-node index degrades
    that component's check to a warning carrying the implied value.
    """
    findings: list[Finding] = []
    field = g.field

    if g.closed_world:
        for comp in g.components:
            if comp.smooth_singularities:
                findings.append(Finding(
                    "error", "closed-world-contradiction",
                    f"closed_world is set but component {comp.id} declares "
                    "smooth-point singularities",
                    comp.id,
                ))

    for comp in g.components:
        total = field.zero()
        unknown = 0
        for idx, crossing in g.crossings_at(comp.id):
            value = crossing.cs_on(comp.id, field)
            if value is None:
                unknown += 1
            else:
                total = total + value
        for sing in comp.smooth_singularities:
            if sing.cs is None:
                unknown += 1
            else:
                total = total + sing.cs
        target = field.from_rational(comp.self_intersection)
        if unknown:
            implied = target - total
            findings.append(Finding(
                "warning", "vertex-sum-unverified",
                f"{comp.id}: {unknown} unknown weak index(es); the known "
                f"indices sum to {total}, so the unknown ones must add up "
                f"to {implied}",
                comp.id,
            ))
        elif total != target:
            findings.append(Finding(
                "error", "vertex-sum-mismatch",
                f"{comp.id}: indices sum to {total}, but the "
                f"self-intersection is {comp.self_intersection}",
                comp.id,
            ))

    def warn_non_reduced(value: FieldElement, label: str, component_id: str):
        q = value.rational_value()
        if q is not None and q > 0:
            findings.append(Finding(
                "warning", "non-reduced-index",
                f"{label} has index {format_rational(q)}, a positive "
                "rational; the singularity is not reduced",
                component_id,
            ))

    for i, crossing in enumerate(g.crossings):
        if crossing.kind == NONDEGENERATE:
            warn_non_reduced(
                crossing.cs_tail,
                f"crossing {i} ({crossing.tail}-{crossing.head})",
                crossing.tail,
            )
    for comp in g.components:
        for sing in comp.smooth_singularities:
            if sing.kind == NONDEGENERATE:
                warn_non_reduced(sing.cs, f"singularity {sing.id}", comp.id)
            if sing.kind == SN_WEAK_ON_CURVE and not sing.has_transverse_separatrix:
                findings.append(Finding(
                    "warning", "missing-strong-separatrix",
                    f"singularity {sing.id} puts the weak separatrix on "
                    f"{comp.id} but declares no transverse separatrix; the "
                    "strong separatrix of a saddle-node always exists",
                    comp.id,
                ))

    for comp in g.components:
        z = len(g.crossings_at(comp.id)) + len(comp.smooth_singularities)
        findings.append(Finding(
            "info", "component-degree",
            f"{comp.id}: {z} singular point(s); implied normal bundle "
            f"degree {comp.self_intersection + z}",
            comp.id,
        ))

    return findings


def has_errors(findings: Iterable[Finding]) -> bool:
    return any(f.severity == "error" for f in findings)


# ---------------------------------------------------------------------------
# Induced subcurves


def induced_subcurve(g: DualGraph, keep: Iterable[str]) -> DualGraph:
    """Restrict the graph to a subset of components.

    Crossings with exactly one endpoint kept are converted into smooth
    singularities on the kept side, carrying the kept side's index, so
    attachment conditions can be tested on the result.  Converted entries
    get ids "cut:<crossing index>".  Crossings internal to the selection
    survive unchanged.
    """
    keep_ids = list(dict.fromkeys(keep))
    if not keep_ids:
        raise EmptySelection("subcurve selection is empty")
    known = {c.id for c in g.components}
    for cid in keep_ids:
        if cid not in known:
            raise UnknownId(f"unknown component id: {cid}")
    kept = set(keep_ids)

    extra: dict[str, list[SmoothSingularity]] = {cid: [] for cid in kept}
    internal: list[Crossing] = []
    for i, crossing in enumerate(g.crossings):
        tail_in, head_in = crossing.tail in kept, crossing.head in kept
        if tail_in and head_in:
            internal.append(crossing)
        elif tail_in or head_in:
            side = crossing.tail if tail_in else crossing.head
            if crossing.kind == NONDEGENERATE:
                sing = SmoothSingularity(
                    f"{CUT_PREFIX}{i}", NONDEGENERATE,
                    crossing.cs_on(side, g.field), True,
                )
            elif side != crossing.weak:
                # The dropped side was the weak separatrix; it still exists
                # as a curve germ transverse to the kept component.
                sing = SmoothSingularity(
                    f"{CUT_PREFIX}{i}", SN_STRONG_ON_CURVE, g.field.zero(), True,
                )
            else:
                sing = SmoothSingularity(
                    f"{CUT_PREFIX}{i}", SN_WEAK_ON_CURVE, crossing.cs_weak, True,
                )
            extra[side].append(sing)

    components = tuple(
        replace(
            comp,
            smooth_singularities=comp.smooth_singularities + tuple(extra[comp.id]),
        )
        for comp in g.components
        if comp.id in kept
    )

    gorenstein = None
    if g.gorenstein is not None:
        gorenstein = GorensteinData(
            g.gorenstein.k,
            tuple(pair for pair in g.gorenstein.a if pair[0] in kept),
        )

    any_cut = any(extra[cid] for cid in extra)
    sub = DualGraph(
        g.field, components, tuple(internal), gorenstein,
        g.closed_world and not any_cut,
    )
    try:
        _check_connected(sub)
    except Disconnected as exc:
        raise DisconnectedSelection(str(exc)) from None
    return sub
