"""NumPy fallback for the Sturm-sequence eigenvalue kernel.

The recurrence is sequential along the matrix, so the fallback vectorizes
across shifts instead: every pass evaluates ``SHIFTS`` trial points inside
each open bracket at once (multisection).
"""
import numpy as np

SAFE_MIN = np.finfo(np.float64).tiny
EPS = np.finfo(np.float64).eps
SHIFTS = 31


def _counts(d, e2, xs, pivmin):
    q = d[0] - xs
    q[np.abs(q) < pivmin] = -pivmin
    c = (q < 0).astype(np.int64)
    for i in range(1, d.shape[0]):
        q = (d[i] - xs) - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        c += q < 0
    return c


def sturm_count(d, e, x):
    """Number of eigenvalues strictly below ``x``."""
    d = np.asarray(d, dtype=np.float64)
    e2 = np.square(np.asarray(e, dtype=np.float64))
    pivmin = SAFE_MIN * max(1.0, e2.max() if e2.size else 1.0)
    return int(_counts(d, e2, np.array([float(x)]), pivmin)[0])


def tridiag_lowest(d, e, k, abstol=0.0):
    """The ``k`` lowest eigenvalues, ascending, by multisection on Sturm counts."""
    d = np.asarray(d, dtype=np.float64)
    e = np.asarray(e, dtype=np.float64)
    n = d.shape[0]
    if k < 0 or k > n:
        raise ValueError(f"k={k} out of range for a {n}x{n} matrix")
    if e.shape[0] != n - 1:
        raise ValueError("off-diagonal must have length len(d) - 1")
    if k == 0:
        return np.empty(0)
    e2 = np.square(e)
    r = np.zeros(n)
    r[:-1] += np.abs(e)
    r[1:] += np.abs(e)
    gl = float(np.min(d - r))
    gu = float(np.max(d + r))
    tol = max(abstol, 2.0 * EPS * max(abs(gl), abs(gu)))
    pivmin = SAFE_MIN * max(1.0, e2.max() if e2.size else 1.0)
    lo = np.full(k, gl - tol)
    hi = np.full(k, gu + tol)
    index = np.arange(k)
    frac = np.arange(1, SHIFTS + 1) / (SHIFTS + 1)
    while True:
        active = np.nonzero(hi - lo > tol)[0]
        if active.size == 0:
            break
        xs = lo[active, None] + (hi - lo)[active, None] * frac[None, :]
        c = _counts(d, e2, xs.ravel(), pivmin).reshape(xs.shape)
        below = c <= index[active, None]
        # counts are monotone in x, so `below` is a prefix of each row
        nb = below.sum(axis=1)
        has_lo = nb > 0
        has_hi = nb < SHIFTS
        rows = np.arange(active.size)
        new_lo = np.where(has_lo, xs[rows, np.maximum(nb - 1, 0)], lo[active])
        new_hi = np.where(has_hi, xs[rows, np.minimum(nb, SHIFTS - 1)], hi[active])
        stalled = (new_lo == lo[active]) & (new_hi == hi[active])
        lo[active] = new_lo
        hi[active] = new_hi
        if stalled.all():
            break
    return 0.5 * (lo + hi)
