"""
Tests for lattice, perturbed Delaunay and Watts-Strogatz generators and the geometric predicates.
"""

import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

project_root = Path(__file__).parent.parent
sys.path.append(str(project_root / "20-config"))
sys.path.append(str(project_root / "30-database"))

from delaunay import check_delaunay, delaunay, delaunay_triangles, triangle_edges
from errors import DegenerateInputError, InputError
from network_generator import (GeneratorConfig, generate, lattice, perturb_coords, perturbed_delaunay,
                               ws_rewire)
from predicates import incircle, orient2d


def _exact_orient(a, b, c):
    det = ((Fraction(a[0]) - Fraction(c[0])) * (Fraction(b[1]) - Fraction(c[1]))
           - (Fraction(a[1]) - Fraction(c[1])) * (Fraction(b[0]) - Fraction(c[0])))
    return (det > 0) - (det < 0)


def _hull_edge_count(triangles):
    counts = Counter()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            counts[(min(u, v), max(u, v))] += 1
    return sum(1 for k in counts.values() if k == 1)


def test_unit_square_lattice():
    graph = lattice(2, 2)
    assert graph.node_count == 4
    assert graph.edge_count == 4


def test_lattice_7x7():
    graph = lattice(7, 7)
    assert graph.edge_count == 84
    assert graph.coords[24] == (3.0, 3.0)


def test_periodic_lattice_7x7():
    graph = lattice(7, 7, periodic=True)
    assert graph.edge_count == 98
    assert all(graph.degree(v) == 4 for v in range(49))


@pytest.mark.parametrize("rows,cols", [(r, c) for r in range(2, 21, 3) for c in range(2, 21, 4)])
def test_lattice_closed_forms(rows, cols):
    assert lattice(rows, cols).edge_count == rows * (cols - 1) + cols * (rows - 1)
    if rows >= 3 and cols >= 3:
        assert lattice(rows, cols, periodic=True).edge_count == 2 * rows * cols


@pytest.mark.parametrize("rows,cols,periodic", [(1, 5, False), (2, 5, True), (0, 0, False)])
def test_lattice_too_small(rows, cols, periodic):
    with pytest.raises(InputError):
        lattice(rows, cols, periodic)


def test_perturb_zero_delta():
    coords = lattice(3, 3).coords
    assert perturb_coords(coords, 0.0, 5) == list(coords)


def test_perturb_range_and_determinism():
    coords = lattice(5, 5).coords
    moved = perturb_coords(coords, 0.1, 11)
    assert moved == perturb_coords(coords, 0.1, 11)
    assert moved != perturb_coords(coords, 0.1, 12)
    for (x0, y0), (x1, y1) in zip(coords, moved):
        assert abs(x1 - x0) <= 0.1 and abs(y1 - y0) <= 0.1


def test_perturb_negative_delta():
    with pytest.raises(InputError):
        perturb_coords([(0.0, 0.0)], -1.0, 0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=3, max_size=3))
def test_orient2d_matches_exact(points):
    a, b, c = points
    assert orient2d(a, b, c) == _exact_orient(a, b, c)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 100.0), st.integers(-50, 50))
def test_orient2d_nearly_collinear(t, ulps):
    a, b = (0.5, 0.5), (12.0, 12.0)
    c = (t, t + ulps * float(np.spacing(t)))
    assert orient2d(a, b, c) == _exact_orient(a, b, c)


def test_incircle_signs():
    a, b, c = (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)
    assert incircle(a, b, c, (0.5, 0.5)) == 1
    assert incircle(a, b, c, (2.0, 2.0)) == -1
    assert incircle(a, b, c, (1.0, 1.0)) == 0
    assert incircle(a, b, c, (1.0, 1.0 + 1e-15)) == -1
    assert incircle(a, b, c, (1.0, 1.0 - 1e-15)) == 1


def test_minimal_triangulation():
    graph = delaunay([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    assert graph.edge_count == 3
    assert delaunay_triangles([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]) == [(0, 1, 2)]


def test_perturbed_unit_square():
    graph = perturbed_delaunay(2, 2, 1e-3, seed=3)
    assert graph.edge_count == 5


def test_random_points_are_delaunay():
    coords = np.random.Generator(np.random.PCG64(2024)).uniform(0, 10, size=(30, 2)).tolist()
    triangles = delaunay_triangles(coords)
    assert check_delaunay(coords, triangles) == []
    h = _hull_edge_count(triangles)
    assert len(triangles) == 2 * 30 - 2 - h
    assert len(triangle_edges(triangles)) == 3 * 30 - 3 - h


@pytest.mark.parametrize("points", [
    [(0.0, 0.0), (1.0, 1.0)],
    [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0), (3.0, 3.0)],
    [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.0)],
    [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)],
])
def test_degenerate_points(points):
    with pytest.raises(DegenerateInputError):
        delaunay(points)


def test_collinear_hull_points_are_kept():
    # points on the open hull segment must split it, not be dropped
    coords = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]
    triangles = delaunay_triangles(coords)
    assert check_delaunay(coords, triangles) == []
    edges = set(triangle_edges(triangles))
    assert {(0, 3), (2, 3), (1, 5)} <= edges
    assert (0, 1) not in edges
    assert len(triangles) == 4


def _check_perturbed_lattice(rows, cols, delta, seed):
    graph = perturbed_delaunay(rows, cols, delta, seed=seed)
    n = rows * cols
    triangles = delaunay_triangles(graph.coords)
    assert check_delaunay(graph.coords, triangles) == []
    h = _hull_edge_count(triangles)
    assert len(triangles) == 2 * n - 2 - h
    assert graph.edge_count == 3 * n - 3 - h
    # all lattice edges survive and every unit square gets exactly one diagonal
    assert set(lattice(rows, cols).edges) <= set(graph.edges)
    lengths = [np.hypot(graph.coords[u][0] - graph.coords[v][0], graph.coords[u][1] - graph.coords[v][1])
               for u, v in graph.edges]
    assert sum(1 for d in lengths if 1.4 < d < 1.42) == (rows - 1) * (cols - 1)


def test_perturbed_lattice_small():
    _check_perturbed_lattice(7, 7, 1e-12, seed=1)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(10))
def test_perturbed_15x15_is_delaunay(seed):
    _check_perturbed_lattice(15, 15, 1e-10, seed)


def test_ws_p_zero(lattice_7x7):
    assert ws_rewire(lattice_7x7, 0.0, seed=9) == lattice_7x7


@pytest.mark.parametrize("seed", [0, 1, 2, 99])
def test_ws_p_one_preserves_count(lattice_7x7, seed):
    graph = ws_rewire(lattice_7x7, 1.0, seed=seed)
    assert graph.edge_count == 84
    assert len(set(graph.edges)) == 84
    assert all(u < v for u, v in graph.edges)
    assert graph.coords == lattice_7x7.coords


def test_ws_determinism(lattice_7x7):
    assert ws_rewire(lattice_7x7, 0.3, seed=4) == ws_rewire(lattice_7x7, 0.3, seed=4)


def test_ws_binomial_mean(lattice_7x7):
    original = set(lattice_7x7.edges)
    seeds = 1000
    removed = [len(original - set(ws_rewire(lattice_7x7, 0.05, seed=s).edges)) for s in range(seeds)]
    sigma = np.sqrt(84 * 0.05 * 0.95 / seeds)
    assert abs(np.mean(removed) - 84 * 0.05) <= 3 * sigma


def test_ws_bad_probability(lattice_7x7):
    with pytest.raises(InputError):
        ws_rewire(lattice_7x7, 1.5, seed=0)


def test_generate_dispatch():
    assert generate(GeneratorConfig(kind="lattice", rows=7, cols=7, periodic=True)).edge_count == 98
    assert generate(GeneratorConfig(kind="ws", rows=7, cols=7, rewire_p=0.05, seed=3)).edge_count == 84
    graph = generate(GeneratorConfig(kind="perturbed-delaunay", rows=4, cols=4, delta=1e-3, seed=3))
    assert graph.node_count == 16


@pytest.mark.parametrize("config", [
    GeneratorConfig(kind="hexagonal"),
    GeneratorConfig(kind="lattice", delta=0.1, rewire_p=0.1),
    GeneratorConfig(kind="ws", rewire_p=-0.1),
    GeneratorConfig(kind="lattice", seed=-1),
])
def test_generate_rejects_config(config):
    with pytest.raises(InputError):
        generate(config)
