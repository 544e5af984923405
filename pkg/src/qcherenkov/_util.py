"""Small numeric helpers shared across modules."""

from __future__ import annotations

import numpy as np


def pairwise_sum(values) -> float:
    """Sum with a fixed pairwise reduction order.

    Used wherever a quadrature or grid reduction must be bit-reproducible
    independently of chunking or worker count.
    """
    a = np.asarray(values, dtype=float).ravel()
    n = a.size
    if n == 0:
        return 0.0
    while n > 1:
        half = n // 2
        head = a[:half] + a[half : 2 * half]
        if n % 2:
            a = np.concatenate([head, a[2 * half : n]])
        else:
            a = head
        n = a.size
    return float(a[0])


def bisect_root(f, lo: float, hi: float, xtol: float, max_iter: int = 200):
    """Bisection for a sign change of f on [lo, hi].

    Returns the midpoint of the final bracket, or None when f(lo) and f(hi)
    have the same sign. Deterministic: pure float halving, fixed iteration
    policy.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        return None
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid == lo or mid == hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)
