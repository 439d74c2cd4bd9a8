"""Minimal double-double arithmetic for cancellation-prone determinants.

At late times and large correlations the scaled covariance entries exceed the
determinant by up to twelve orders of magnitude, so a naive sxx*spp - sxp^2
loses most of its digits.  Evaluating the entries and the determinant as
(hi, lo) float pairs keeps the algebraic cancellation exact.
"""
from __future__ import annotations

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _quick_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ca = _SPLIT * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLIT * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd(a: float) -> tuple[float, float]:
    return (a, 0.0)


def dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s, e = _two_sum(x[0], y[0])
    return _quick_sum(s, e + x[1] + y[1])


def dd_sub(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    return dd_add(x, (-y[0], -y[1]))


def dd_mul(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    p, e = _two_prod(x[0], y[0])
    return _quick_sum(p, e + x[0] * y[1] + x[1] * y[0])


def dd_mul_d(x: tuple[float, float], a: float) -> tuple[float, float]:
    p, e = _two_prod(x[0], a)
    return _quick_sum(p, e + x[1] * a)


def dd_sum(terms) -> tuple[float, float]:
    acc = (0.0, 0.0)
    for term in terms:
        acc = dd_add(acc, term)
    return acc


def det2x2(sxx: float, sxp: float, spp: float) -> float:
    """Compensated sxx*spp - sxp^2 of plain floats (Kahan-style)."""
    p, pe = _two_prod(sxx, spp)
    q, qe = _two_prod(sxp, sxp)
    d, de = _two_sum(p, -q)
    return d + (de + pe - qe)
