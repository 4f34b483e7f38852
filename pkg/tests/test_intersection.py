import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepkit.dualgraph import NONDEGENERATE, Component, Crossing, DualGraph
from sepkit.errors import UnknownId
from sepkit.exactfield import NumberField
from sepkit.fixtures import make_camacho_cycle, make_p2_cycle, make_random_tree
from sepkit.intersection import (
    IntersectionMatrix,
    definiteness,
    divisor_pairing,
    intersection_matrix,
)

from oracles import quadratic_form_negative, solve_homogeneous

QQ = NumberField((Fraction(0),))


def graph_with_matrix(diag, edges):
    n = len(diag)
    comps = tuple(Component(f"E{i + 1}", e) for i, e in enumerate(diag))
    crossings = tuple(
        Crossing(f"E{a + 1}", f"E{b + 1}", NONDEGENERATE,
                 cs_tail=QQ.from_rational(-1))
        for a, b in edges
    )
    return DualGraph(QQ, comps, crossings)


class TestMatrix:
    def test_camacho_matrix_frozen(self):
        g, _ = make_camacho_cycle()
        m = intersection_matrix(g)
        assert m.component_order == ("E1", "E2", "E3")
        assert m.rows == ((-2, 1, 1), (1, -2, 1), (1, 1, -3))
        d = definiteness(m)
        assert d.negative_definite is True
        assert d.determinant == -3
        assert d.invertible is True

    def test_p2_matrix_all_ones(self):
        m = intersection_matrix(make_p2_cycle(2))
        assert m.rows == ((1, 1, 1), (1, 1, 1), (1, 1, 1))
        d = definiteness(m)
        assert d.negative_definite is False
        assert d.determinant == 0
        assert d.invertible is False

    def test_parallel_crossings_add_up(self):
        g = graph_with_matrix((-3, -3), [(0, 1), (0, 1)])
        m = intersection_matrix(g)
        assert m.rows == ((-3, 2), (2, -3))
        assert definiteness(m).negative_definite is True

    def test_json_shape(self):
        m = intersection_matrix(graph_with_matrix((-2, -2), [(0, 1)]))
        assert m.to_json() == {
            "components": ["E1", "E2"],
            "rows": [[-2, 1], [1, -2]],
        }
        assert definiteness(m).to_json() == {
            "negative_definite": True,
            "determinant": 3,
            "invertible": True,
        }

    def test_zero_leading_pivot_falls_back(self):
        # leading principal minor vanishes: not definite, still invertible
        g = graph_with_matrix((0, 0), [(0, 1)])
        d = definiteness(intersection_matrix(g))
        assert d.negative_definite is False
        assert d.determinant == -1
        assert d.invertible is True

    def test_single_component(self):
        d = definiteness(intersection_matrix(graph_with_matrix((-1,), [])))
        assert d.negative_definite is True
        assert d.determinant == -1
        assert definiteness(
            intersection_matrix(graph_with_matrix((0,), []))
        ).negative_definite is False


def random_tree_matrix(rng, n):
    edges = [(rng.randrange(0, i), i) for i in range(1, n)]
    degree = [0] * n
    for a, b in edges:
        degree[a] += 1
        degree[b] += 1
    diag = [-(degree[i] + 1 + rng.randint(0, 2)) for i in range(n)]
    return graph_with_matrix(diag, edges)


class TestDefinitenessOracle:
    @given(st.integers(0, 10_000))
    @settings(max_examples=120, deadline=None)
    def test_diagally_dominant_matrices_pass_quadratic_screen(self, seed):
        rng = random.Random(seed)
        g = random_tree_matrix(rng, rng.randint(1, 8))
        m = intersection_matrix(g)
        assert definiteness(m).negative_definite is True
        vectors = [
            [rng.randint(-5, 5) for _ in range(m.size)] for _ in range(25)
        ]
        assert quadratic_form_negative(m.rows, vectors)

    @given(st.integers(0, 10_000))
    @settings(max_examples=80, deadline=None)
    def test_verdict_matches_quadratic_witness_search(self, seed):
        # random symmetric graphs: when we find a countervector, the exact
        # decision must be False as well
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        edges = [(rng.randrange(0, i), i) for i in range(1, n)]
        diag = [rng.randint(-4, 2) for _ in range(n)]
        m = intersection_matrix(graph_with_matrix(diag, edges))
        decided = definiteness(m).negative_definite
        vectors = [
            [rng.randint(-4, 4) for _ in range(n)] for _ in range(60)
        ]
        if not quadratic_form_negative(m.rows, vectors):
            assert decided is False


class TestDivisorPairing:
    def test_component_coefficients(self):
        g = graph_with_matrix((-2, -2), [(0, 1)])
        pair = divisor_pairing(g, {"E1": 1})
        assert pair["E1"].rational_value() == -2
        assert pair["E2"].rational_value() == 1

    def test_rational_and_field_coefficients_mix(self):
        g = graph_with_matrix((-2, -2), [(0, 1)])
        pair = divisor_pairing(
            g, {"E1": Fraction(1, 2), "E2": QQ.from_rational(1)}
        )
        assert pair["E1"].rational_value() == 0
        assert pair["E2"].rational_value() == Fraction(-3, 2)

    def test_singularity_coefficient_pairs_with_host(self):
        g = make_random_tree(5, n=4, saddle_node_probability=0.0)
        sing = g.components[0].smooth_singularities[0]
        pair = divisor_pairing(g, {sing.id: 1})
        host = g.components[0].id
        assert pair[host].rational_value() == 1
        assert all(v.is_zero for cid, v in pair.items() if cid != host)

    def test_unknown_id_rejected(self):
        g = graph_with_matrix((-2, -2), [(0, 1)])
        with pytest.raises(UnknownId):
            divisor_pairing(g, {"nope": 1})

    def test_kernel_free_for_negative_definite(self):
        # definite implies the homogeneous system has only the zero solution
        for seed in range(25):
            rng = random.Random(seed)
            m = intersection_matrix(random_tree_matrix(rng, rng.randint(1, 7)))
            rows = [[Fraction(v) for v in row] for row in m.rows]
            assert solve_homogeneous(rows)


def random_symmetric(rng, n, lo=-4, hi=4):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = rng.randint(lo, hi)
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    m = tuple(tuple(r) for r in rows)
    return IntersectionMatrix(tuple(f"E{i + 1}" for i in range(n)), m)


class TestRawMatrixInvariants:
    def test_exhaustive_small_vector_screen(self):
        # necessary condition: a vector with x.M.x >= 0 refutes definiteness
        import itertools

        for seed in range(60):
            rng = random.Random(seed)
            n = 3 if seed % 2 else 4
            m = random_symmetric(rng, n, lo=-3, hi=3)
            decided = definiteness(m).negative_definite
            refuted = False
            for x in itertools.product(range(-3, 4), repeat=n):
                if not any(x):
                    continue
                value = sum(
                    m.rows[i][j] * x[i] * x[j]
                    for i in range(n) for j in range(n)
                )
                if value >= 0:
                    refuted = True
                    break
            if refuted:
                assert decided is False

    def test_definite_implies_invertible_on_random_symmetric(self):
        found = 0
        for seed in range(200):
            rng = random.Random(seed)
            m = random_symmetric(rng, rng.randint(1, 5))
            d = definiteness(m)
            if d.negative_definite:
                found += 1
                assert d.invertible and d.determinant != 0
        assert found  # the sample must actually exercise the implication

    def test_definite_implies_invertible_on_fixtures(self):
        graphs = [
            make_camacho_cycle()[0],
            make_p2_cycle(2),
        ] + [make_random_tree(s, n=2 + s % 8) for s in range(20)]
        for g in graphs:
            d = definiteness(intersection_matrix(g))
            if d.negative_definite:
                assert d.invertible and d.determinant != 0
