"""Exact arithmetic in Z[sqrt2, sqrt3].

Elements are 4-tuples of ints (a, b, c, d) representing
a + b*sqrt2 + c*sqrt3 + d*sqrt6.  This ring contains 2*cos(pi/m) for
m in {2, 3, 4, 6} (0, 1, sqrt2, sqrt3) and the value 2 used for m = inf,
so reflection matrices of Coxeter groups with those labels multiply out
exactly with integer coordinates.

Tuples are used instead of a class: the breadth-first closure in
``spherical`` hashes and multiplies millions of these.
"""

from __future__ import annotations

from fractions import Fraction

Quad = tuple[int, int, int, int]

ZERO: Quad = (0, 0, 0, 0)
ONE: Quad = (1, 0, 0, 0)
TWO: Quad = (2, 0, 0, 0)
SQRT2: Quad = (0, 1, 0, 0)
SQRT3: Quad = (0, 0, 1, 0)
SQRT6: Quad = (0, 0, 0, 1)


def qadd(x: Quad, y: Quad) -> Quad:
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def qneg(x: Quad) -> Quad:
    return (-x[0], -x[1], -x[2], -x[3])


def qsub(x: Quad, y: Quad) -> Quad:
    return (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])


def qmul(x: Quad, y: Quad) -> Quad:
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
        a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
        a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
        a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
    )


def qscale(x: Quad, n: int) -> Quad:
    return (n * x[0], n * x[1], n * x[2], n * x[3])


def qfloat(x: Quad) -> float:
    return x[0] + x[1] * 1.4142135623730951 + x[2] * 1.7320508075688772 + x[3] * 2.449489742783178


def qsign(x: Quad) -> int:
    """Exact sign of a + b*sqrt2 + c*sqrt3 + d*sqrt6."""
    if x == ZERO:
        return 0
    # Split as (a + b sqrt2) + (c + d sqrt2) sqrt3 and compare squares.
    u = (Fraction(x[0]), Fraction(x[1]))
    v = (Fraction(x[2]), Fraction(x[3]))
    su = _sign_pair(u)
    sv = _sign_pair(v)
    if sv == 0:
        return su
    if su == 0:
        return sv
    if su == sv:
        return su
    # opposite signs: compare u^2 with 3 v^2, both in Q(sqrt2)
    u2 = (u[0] * u[0] + 2 * u[1] * u[1], 2 * u[0] * u[1])
    v2 = (3 * (v[0] * v[0] + 2 * v[1] * v[1]), 6 * v[0] * v[1])
    diff = (u2[0] - v2[0], u2[1] - v2[1])
    s = _sign_pair(diff)
    return su * s if s != 0 else 0


def _sign_pair(p) -> int:
    """Sign of p0 + p1*sqrt2 with rational p0, p1."""
    p0, p1 = p
    if p1 == 0:
        return (p0 > 0) - (p0 < 0)
    if p0 == 0:
        return (p1 > 0) - (p1 < 0)
    if (p0 > 0) == (p1 > 0):
        return 1 if p0 > 0 else -1
    s = p0 * p0 - 2 * p1 * p1
    sign_sq = (s > 0) - (s < 0)
    return sign_sq if p0 > 0 else -sign_sq


def two_cos(m) -> Quad:
    """2*cos(pi/m) for m in {2, 3, 4, 6} and for the infinite label (= 2)."""
    from .diagram import INF

    if m == INF:
        return TWO
    table = {2: ZERO, 3: ONE, 4: SQRT2, 6: SQRT3}
    if m not in table:
        raise ValueError(f"2cos(pi/{m}) is not in Z[sqrt2, sqrt3]")
    return table[m]


EXACT_LABELS = frozenset([2, 3, 4, 6])
