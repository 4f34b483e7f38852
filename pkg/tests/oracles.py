"""Independent reference implementations used to cross-check results.

These deliberately use different algorithms than the package (plain
fraction Gaussian elimination instead of fraction-free pivoting, brute
force forest enumeration instead of union-find) so agreement is evidence,
not tautology.
"""

from __future__ import annotations

from fractions import Fraction

from sepkit.dualgraph import SADDLE_NODE, DualGraph


def fraction_rank(rows: list[list[Fraction]]) -> int:
    """Row rank by textbook Gaussian elimination over Q."""
    matrix = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(matrix[0]) if matrix else 0
    for col in range(cols):
        pivot = next(
            (r for r in range(rank, len(matrix)) if matrix[r][col] != 0), None
        )
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        inv = 1 / matrix[rank][col]
        matrix[rank] = [v * inv for v in matrix[rank]]
        for r in range(len(matrix)):
            if r != rank and matrix[r][col] != 0:
                factor = matrix[r][col]
                matrix[r] = [
                    a - factor * b for a, b in zip(matrix[r], matrix[rank])
                ]
        rank += 1
    return rank


def span_dimension_oracle(elements) -> int:
    """Q-dimension of the span of field elements, by plain elimination."""
    rows = [[Fraction(c) for c in e.coeffs] for e in elements]
    return fraction_rank(rows) if rows else 0


def solve_homogeneous(rows: list[list[Fraction]]) -> bool:
    """True when M x = 0 has only the zero rational solution."""
    n = len(rows)
    return fraction_rank(rows) == n


def quadratic_form_negative(rows, vectors) -> bool:
    """Check x^T M x < 0 for every supplied nonzero integer vector."""
    for x in vectors:
        if all(v == 0 for v in x):
            continue
        total = Fraction(0)
        for i, xi in enumerate(x):
            for j, xj in enumerate(x):
                total += Fraction(rows[i][j]) * xi * xj
        if total >= 0:
            return False
    return True


def prune_oracle(g: DualGraph) -> tuple[str, ...]:
    """Brute-force pruning: enumerate forest components directly.

    Components of the forest obtained by deleting saddle-node crossings,
    keep those with no saddle-node pointing (strong to weak) into them,
    and return the one containing the earliest component in input order.
    """
    order = [comp.id for comp in g.components]
    pieces: list[set[str]] = []
    seen: set[str] = set()
    for start in order:
        if start in seen:
            continue
        piece = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for c in g.crossings:
                if c.kind == SADDLE_NODE or v not in (c.tail, c.head):
                    continue
                w = c.other(v)
                if w not in piece:
                    piece.add(w)
                    frontier.append(w)
        seen |= piece
        pieces.append(piece)

    def has_incoming(piece: set[str]) -> bool:
        for c in g.crossings:
            if c.kind != SADDLE_NODE:
                continue
            strong = c.other(c.weak)
            if c.weak in piece and strong not in piece:
                return True
        return False

    candidates = [p for p in pieces if not has_incoming(p)]
    best = min(candidates, key=lambda p: min(order.index(v) for v in p))
    return tuple(cid for cid in order if cid in best)
