"""
Adaptive-precision orientation and in-circle predicates.

Each predicate first evaluates its determinant in double precision together
with a forward error bound (the static bounds of Shewchuk's orient2d and
incircle). Only when the floating result lies inside the bound is the
determinant recomputed exactly with rational arithmetic; floats convert to
Fraction without rounding, so the returned sign is always exact.

Coordinates of unit-spaced lattices perturbed by 1e-10 or 1e-12 produce
determinants far below the naive double-precision noise level, which is why
the exact stage exists.
"""

import logging
from fractions import Fraction
from typing import Sequence

logger = logging.getLogger(__name__)

_EPSILON = 2.0 ** -53
_CCW_ERRBOUND_A = (3.0 + 16.0 * _EPSILON) * _EPSILON
_ICC_ERRBOUND_A = (10.0 + 96.0 * _EPSILON) * _EPSILON

Point = Sequence[float]


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def orient2d(a: Point, b: Point, c: Point) -> int:
    """
    Orientation of the triple (a, b, c).

    Returns:
        +1 if counter-clockwise, -1 if clockwise, 0 if exactly collinear
    """
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright

    if detleft > 0.0:
        if detright <= 0.0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        return _sign(det)

    if abs(det) > _CCW_ERRBOUND_A * detsum:
        return _sign(det)
    return _orient2d_exact(a, b, c)


def _orient2d_exact(a: Point, b: Point, c: Point) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def incircle(a: Point, b: Point, c: Point, d: Point) -> int:
    """
    Position of d relative to the circle through a, b, c (given counter-clockwise).

    Returns:
        +1 if d is strictly inside, -1 if strictly outside, 0 if exactly on the circle
    """
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]

    bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
    cdxady, adxcdy = cdx * ady, adx * cdy
    adxbdy, bdxady = adx * bdy, bdx * ady

    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy

    det = (alift * (bdxcdy - cdxbdy)
           + blift * (cdxady - adxcdy)
           + clift * (adxbdy - bdxady))
    permanent = ((abs(bdxcdy) + abs(cdxbdy)) * alift
                 + (abs(cdxady) + abs(adxcdy)) * blift
                 + (abs(adxbdy) + abs(bdxady)) * clift)

    if abs(det) > _ICC_ERRBOUND_A * permanent:
        return _sign(det)
    return _incircle_exact(a, b, c, d)


def _incircle_exact(a: Point, b: Point, c: Point, d: Point) -> int:
    dx, dy = Fraction(d[0]), Fraction(d[1])
    adx, ady = Fraction(a[0]) - dx, Fraction(a[1]) - dy
    bdx, bdy = Fraction(b[0]) - dx, Fraction(b[1]) - dy
    cdx, cdy = Fraction(c[0]) - dx, Fraction(c[1]) - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (alift * (bdx * cdy - cdx * bdy)
           + blift * (cdx * ady - adx * cdy)
           + clift * (adx * bdy - bdx * ady))
    return _sign(det)


def strictly_between(p: Point, u: Point, v: Point) -> bool:
    """True if p, already known to be collinear with u and v, lies strictly inside segment uv."""
    px, py = Fraction(p[0]), Fraction(p[1])
    ux, uy = Fraction(u[0]), Fraction(u[1])
    vx, vy = Fraction(v[0]), Fraction(v[1])
    return ((px - ux) * (vx - ux) + (py - uy) * (vy - uy) > 0
            and (px - vx) * (ux - vx) + (py - vy) * (uy - vy) > 0)
