"""Adaptive Simpson quadrature with interval bisection."""
from __future__ import annotations

import math
from collections.abc import Callable

from .errors import InvalidArgumentError


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 48) -> float:
    """Integrate `f` over [a, b] to an absolute tolerance `tol`.

    Each bisection halves the tolerance handed to the children and the accepted
    panels receive the usual Richardson correction (S2 - S1)/15.
    """
    if tol <= 0:
        raise InvalidArgumentError("tol must be positive")
    if a == b:
        return 0.0
    if a > b:
        return -adaptive_simpson(f, b, a, tol, max_depth)

    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    # explicit stack instead of recursion; left halves pop first, so panels arrive in order
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    stack = [(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)]
    pieces = []
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        fl = f(0.5 * (lo + mid))
        fr = f(0.5 * (mid + hi))
        left = simpson(flo, fl, fmid, mid - lo)
        right = simpson(fmid, fr, fhi, hi - mid)
        err = left + right - whole
        if depth >= max_depth or abs(err) <= 15.0 * eps:
            pieces.append(left + right + err / 15.0)
            continue
        stack.append((mid, hi, fmid, fr, fhi, right, 0.5 * eps, depth + 1))
        stack.append((lo, mid, flo, fl, fmid, left, 0.5 * eps, depth + 1))
    return math.fsum(pieces)
