"""Residue representation of the fundamental group of the dual graph.

Every nondegenerate crossing carries a multiplicative weight: traversed
tail to head it contributes -1/cs_tail (minus the head-side index), and
traversed backwards the reciprocal.  Products of weights around the
fundamental cycles of a deterministic spanning tree classify the
representation as trivial, torsion, infinite, or indeterminate when a
saddle-node sits on a cycle and its weight is undefined.

The dual convention (minus the tail-side index, -cs_tail) is exposed as
well; it yields exactly the inverse holonomy on every cycle, so the
classification never depends on the choice.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .dualgraph import NONDEGENERATE, DualGraph
from .errors import (
    Disconnected,
    NontrivialRepresentation,
    SaddleNodePresent,
)
from .exactfield import FieldElement, is_root_of_unity

HEAD_SIDE = "head_side"
TAIL_SIDE = "tail_side"

TRIVIAL = "trivial"
TORSION = "torsion"
INFINITE = "infinite"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CycleStep:
    """One crossing traversal; forward means tail to head."""

    crossing: int
    forward: bool

    def to_json(self) -> dict:
        return {"crossing": self.crossing, "forward": self.forward}


@dataclass(frozen=True)
class CycleBasis:
    """Spanning-tree data: tree crossing indices plus fundamental cycles.

    Each cycle contains exactly one non-tree crossing, listed first and
    traversed tail to head; the cycles appear in the order of their
    non-tree crossings.
    """

    root: str
    tree: tuple[int, ...]
    cycles: tuple[tuple[CycleStep, ...], ...]


def cycle_basis(g: DualGraph, crossing_order: Sequence[int] | None = None) -> CycleBasis:
    """Fundamental cycles of a breadth-first spanning tree.

    The tree is rooted at the first-listed component and built scanning
    crossings in input order, which makes the basis deterministic.  An
    explicit crossing_order overrides the scan order (used to show the
    classification does not depend on the tree).
    """
    ids = [c.id for c in g.components]
    order = list(range(len(g.crossings))) if crossing_order is None \
        else list(crossing_order)
    adjacency: dict[str, list[int]] = {cid: [] for cid in ids}
    for idx in order:
        crossing = g.crossings[idx]
        adjacency[crossing.tail].append(idx)
        adjacency[crossing.head].append(idx)

    root = ids[0]
    parent: dict[str, tuple[int, str]] = {}
    depth = {root: 0}
    tree: list[int] = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for idx in adjacency[v]:
            w = g.crossings[idx].other(v)
            if w not in depth:
                depth[w] = depth[v] + 1
                parent[w] = (idx, v)
                tree.append(idx)
                queue.append(w)
    if len(depth) != len(ids):
        missing = [cid for cid in ids if cid not in depth]
        raise Disconnected(f"graph is not connected; unreachable: {missing}")

    tree_set = set(tree)

    def step_up(v: str) -> tuple[CycleStep, str]:
        idx, up = parent[v]
        return CycleStep(idx, g.crossings[idx].tail == v), up

    cycles = []
    for idx in sorted(i for i in range(len(g.crossings)) if i not in tree_set):
        crossing = g.crossings[idx]
        steps = [CycleStep(idx, True)]
        u, v = crossing.head, crossing.tail
        ascent_u: list[CycleStep] = []
        ascent_v: list[CycleStep] = []
        while depth[u] > depth[v]:
            s, u = step_up(u)
            ascent_u.append(s)
        while depth[v] > depth[u]:
            s, v = step_up(v)
            ascent_v.append(s)
        while u != v:
            s, u = step_up(u)
            ascent_u.append(s)
            s, v = step_up(v)
            ascent_v.append(s)
        steps.extend(ascent_u)
        steps.extend(
            CycleStep(s.crossing, not s.forward) for s in reversed(ascent_v)
        )
        cycles.append(tuple(steps))
    return CycleBasis(root, tuple(tree), tuple(cycles))


def edge_weight(
    g: DualGraph, step: CycleStep, convention: str = HEAD_SIDE
) -> FieldElement | None:
    """Multiplicative weight of one traversal, None across a saddle-node."""
    crossing = g.crossings[step.crossing]
    if crossing.kind != NONDEGENERATE:
        return None
    if convention == HEAD_SIDE:
        forward = -crossing.cs_tail.inverse()
    elif convention == TAIL_SIDE:
        forward = -crossing.cs_tail
    else:
        raise ValueError(f"unknown convention: {convention!r}")
    return forward if step.forward else forward.inverse()


@dataclass(frozen=True)
class RepresentationClass:
    """Classification of the residue representation.

    kind is one of "trivial", "torsion", "infinite", "indeterminate";
    order is the torsion order (lcm of the holonomy orders) when kind is
    "torsion".  holonomies aligns with basis.cycles and holds None for
    cycles through a saddle-node; those cycle positions are listed in
    offending_cycles and force kind "indeterminate".
    """

    kind: str
    order: int | None
    holonomies: tuple[FieldElement | None, ...]
    basis: CycleBasis
    offending_cycles: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "holonomies": [
                {
                    "cycle": [s.to_json() for s in cycle],
                    "value": None if h is None else h.to_json(),
                }
                for cycle, h in zip(self.basis.cycles, self.holonomies)
            ],
            "offending_cycles": list(self.offending_cycles),
        }


def representation_class(
    g: DualGraph,
    convention: str = HEAD_SIDE,
    crossing_order: Sequence[int] | None = None,
) -> RepresentationClass:
    """Classify the representation from the fundamental cycle holonomies."""
    basis = cycle_basis(g, crossing_order)
    one = g.field.one()
    holonomies: list[FieldElement | None] = []
    offending: list[int] = []
    for pos, cycle in enumerate(basis.cycles):
        h = one
        for step in cycle:
            w = edge_weight(g, step, convention)
            if w is None:
                h = None
                break
            h = h * w
        holonomies.append(h)
        if h is None:
            offending.append(pos)

    if offending:
        kind, order = INDETERMINATE, None
    elif all(h == one for h in holonomies):
        kind, order = TRIVIAL, None
    else:
        orders = []
        for h in holonomies:
            n = is_root_of_unity(h)
            if n is None:
                orders = None
                break
            orders.append(n)
        if orders is None:
            kind, order = INFINITE, None
        else:
            kind, order = TORSION, lcm(*orders)

    return RepresentationClass(
        kind, order, tuple(holonomies), basis, tuple(offending)
    )


@dataclass(frozen=True)
class ResidualDivisor:
    """Residues normalized so the first-listed component carries 1.

    Along every crossing, residue(tail) = weight(tail to head) *
    residue(head).  Each separatrix germ at a nondegenerate smooth-point
    singularity gets -cs times its host's residue.
    """

    residues: tuple[tuple[str, FieldElement], ...]
    separatrix_residues: tuple[tuple[str, FieldElement], ...]

    def residue(self, component_id: str) -> FieldElement:
        return dict(self.residues)[component_id]

    def as_divisor(self) -> dict[str, FieldElement]:
        out = dict(self.residues)
        out.update(dict(self.separatrix_residues))
        return out

    def to_json(self) -> dict:
        return {
            "residues": {cid: r.to_json() for cid, r in self.residues},
            "separatrix_residues": {
                sid: r.to_json() for sid, r in self.separatrix_residues
            },
        }


def residual_divisor(g: DualGraph) -> ResidualDivisor:
    """Propagate residues over the spanning tree of a trivial representation.

    Requires a trivial representation and no saddle-node crossing anywhere
    (residue ratios are undefined across saddle-nodes, even on tree edges).
    Consistency along every non-tree crossing is re-verified.
    """
    if g.has_saddle_node_crossing():
        raise SaddleNodePresent(
            "residue propagation is undefined across saddle-node crossings"
        )
    rep = representation_class(g)
    if rep.kind != TRIVIAL:
        raise NontrivialRepresentation(
            f"residual divisor requires a trivial representation, got {rep.kind}"
        )

    basis = rep.basis
    residues: dict[str, FieldElement] = {basis.root: g.field.one()}
    for idx in basis.tree:
        crossing = g.crossings[idx]
        weight = -crossing.cs_tail.inverse()  # tail/head residue ratio
        if crossing.tail in residues and crossing.head not in residues:
            residues[crossing.head] = residues[crossing.tail] / weight
        elif crossing.head in residues and crossing.tail not in residues:
            residues[crossing.tail] = weight * residues[crossing.head]
    # Tree edges are discovered in BFS order, so both cases above cover
    # every edge exactly once; the loop cannot leave a component unset.

    for cycle in basis.cycles:
        idx = cycle[0].crossing
        crossing = g.crossings[idx]
        weight = -crossing.cs_tail.inverse()
        if residues[crossing.tail] != weight * residues[crossing.head]:
            raise RuntimeError(
                "internal error: trivial representation but inconsistent "
                f"residues across crossing {idx}"
            )

    sep: list[tuple[str, FieldElement]] = []
    for comp in g.components:
        for sing in comp.smooth_singularities:
            if sing.kind == NONDEGENERATE:
                sep.append((sing.id, -sing.cs * residues[comp.id]))

    ordered = tuple((c.id, residues[c.id]) for c in g.components)
    return ResidualDivisor(ordered, tuple(sep))
