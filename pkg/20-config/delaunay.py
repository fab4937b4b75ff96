"""
Delaunay triangulation of a planar point set.

Incremental Bowyer-Watson insertion. Instead of an enclosing super-triangle
the convex hull is closed by ghost triangles (u, v, GHOST), one per hull edge
u -> v with the hull interior on its right. A point conflicts with a ghost
triangle when it lies strictly left of u -> v, or on the open segment uv.
This keeps nearly collinear hull points (the border rows of a perturbed
lattice) correct, which a finite super-triangle does not.

All geometric decisions go through the exact predicates in predicates.py.
Exactly cocircular quadruples are not tie-broken: they raise
DegenerateInputError, and callers are expected to perturb their points.
"""

import logging
import sys
from pathlib import Path
from typing import Dict, List, Sequence, Set, Tuple

sys.path.append(str(Path(__file__).parent.parent / "30-database"))
from errors import DegenerateInputError
from graph import Graph
from predicates import incircle, orient2d, strictly_between

logger = logging.getLogger(__name__)

GHOST = -1

Triangle = Tuple[int, int, int]
Coord = Tuple[float, float]


def _canonical(tri: Triangle) -> Triangle:
    """Rotate a triangle so GHOST comes last, or the smallest vertex first."""
    a, b, c = tri
    if GHOST in tri:
        if a == GHOST:
            return (b, c, a)
        if b == GHOST:
            return (c, a, b)
        return tri
    if a <= b and a <= c:
        return tri
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def _validate(points: Sequence[Coord]) -> Triangle:
    """Check the input and return a counter-clockwise starting triangle."""
    n = len(points)
    if n < 3:
        raise DegenerateInputError(f"Delaunay triangulation needs at least 3 points, got {n}")
    first_seen: Dict[Coord, int] = {}
    for i, p in enumerate(points):
        if p in first_seen:
            raise DegenerateInputError(f"Points {first_seen[p]} and {i} coincide at {p}")
        first_seen[p] = i

    a, b = 0, 1
    for c in range(2, n):
        o = orient2d(points[a], points[b], points[c])
        if o > 0:
            return (a, b, c)
        if o < 0:
            return (a, c, b)
    raise DegenerateInputError("All points are collinear")


def _in_conflict(tri: Triangle, p: int, points: Sequence[Coord]) -> bool:
    a, b, c = tri
    if c == GHOST:
        o = orient2d(points[a], points[b], points[p])
        if o > 0:
            return True
        return o == 0 and strictly_between(points[p], points[a], points[b])
    s = incircle(points[a], points[b], points[c], points[p])
    if s == 0:
        raise DegenerateInputError(
            f"Points {a}, {b}, {c} and {p} are exactly cocircular; perturb the coordinates "
            f"(e.g. a positive delta) before triangulating")
    return s > 0


def delaunay_triangles(coords: Sequence[Sequence[float]]) -> List[Triangle]:
    """
    Delaunay triangles of a point set, counter-clockwise, sorted.

    Args:
        coords: (x, y) per point; needs at least 3 points, not all collinear, no duplicates

    Returns:
        List of (a, b, c) vertex-index triples

    Raises:
        DegenerateInputError: On collinear, duplicated or exactly cocircular input
    """
    points = [(float(x), float(y)) for x, y in coords]
    a, b, c = _validate(points)
    triangles: Set[Triangle] = {
        _canonical((a, b, c)),
        _canonical((b, a, GHOST)),
        _canonical((c, b, GHOST)),
        _canonical((a, c, GHOST)),
    }

    for p in range(len(points)):
        if p in (a, b, c):
            continue
        cavity = [t for t in triangles if _in_conflict(t, p, points)]
        if not cavity:
            raise DegenerateInputError(f"Point {p} conflicts with no triangle")

        directed = set()
        for t in cavity:
            directed.update(((t[0], t[1]), (t[1], t[2]), (t[2], t[0])))
        triangles.difference_update(cavity)
        for x, y in directed:
            if (y, x) in directed:
                continue
            if x == GHOST:
                new = (y, p, GHOST)
            elif y == GHOST:
                new = (p, x, GHOST)
            else:
                new = (x, y, p)
            triangles.add(_canonical(new))

    real = sorted(t for t in triangles if GHOST not in t)
    logger.debug(f"Triangulated {len(points)} points into {len(real)} triangles")
    return real


def triangle_edges(triangles: Sequence[Triangle]) -> List[Tuple[int, int]]:
    """Sorted undirected edge list of a triangle set."""
    edges = set()
    for a, b, c in triangles:
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def delaunay(coords: Sequence[Sequence[float]]) -> Graph:
    """Graph of the Delaunay triangulation edges, carrying the input coordinates."""
    triangles = delaunay_triangles(coords)
    return Graph(len(coords), tuple(triangle_edges(triangles)), tuple((x, y) for x, y in coords))


def check_delaunay(coords: Sequence[Sequence[float]],
                   triangles: Sequence[Triangle]) -> List[Tuple[Triangle, int]]:
    """
    Brute-force empty-circumcircle check.

    Returns:
        (triangle, point) pairs where the point lies strictly inside the
        triangle's circumcircle, plus (triangle, -1) for any triangle that is
        not counter-clockwise. An empty list means the triangulation is Delaunay.
    """
    points = [(float(x), float(y)) for x, y in coords]
    violations: List[Tuple[Triangle, int]] = []
    for tri in triangles:
        a, b, c = tri
        if orient2d(points[a], points[b], points[c]) <= 0:
            violations.append((tri, -1))
            continue
        for p in range(len(points)):
            if p in tri:
                continue
            if incircle(points[a], points[b], points[c], points[p]) > 0:
                violations.append((tri, p))
    return violations
