"""Array-backed hot loops for the Monte Carlo paths.

Everything here is plain loop code over numpy arrays, jitted with numba when
available; the interpreted fallback keeps the library usable (slowly) without
it.  The list-of-lists implementations in :mod:`tableaux_lab.rsk` are the
reference semantics these kernels are tested against.
"""

from __future__ import annotations

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def rsk_fill(ws, tab, row_len):
    """Run the full insertion chain of ws into the (tab, row_len) buffers.

    Returns the number of rows used, or -1 if the buffers are too small
    (caller grows them and retries).
    """
    max_rows, width = tab.shape
    nrows = 0
    for k in range(ws.shape[0]):
        cur = ws[k]
        r = 0
        while True:
            if r == nrows:
                if r >= max_rows:
                    return -1
                tab[r, 0] = cur
                row_len[r] = 1
                nrows += 1
                break
            m = row_len[r]
            lo, hi = 0, m
            while lo < hi:
                mid = (lo + hi) >> 1
                if tab[r, mid] > cur:
                    hi = mid
                else:
                    lo = mid + 1
            if lo == m:
                if m >= width:
                    return -1
                tab[r, m] = cur
                row_len[r] = m + 1
                break
            tmp = tab[r, lo]
            tab[r, lo] = cur
            cur = tmp
            r += 1
    return nrows


@njit(cache=True)
def u_ins_arr(tab, row_len, nrows, z):
    """u-coordinate of the box created by inserting z; does not mutate the tableau."""
    cur = z
    r = 0
    while r < nrows:
        m = row_len[r]
        lo, hi = 0, m
        while lo < hi:
            mid = (lo + hi) >> 1
            if tab[r, mid] > cur:
                hi = mid
            else:
                lo = mid + 1
        if lo == m:
            return (m + 1) - (r + 1)
        cur = tab[r, lo]
        r += 1
    return -nrows


@njit(cache=True)
def cumulative_f_arr(tab, row_len, nrows, cands, u):
    """Smallest candidate z with u_ins > u; cands is sorted and starts at 0."""
    lo, hi = 0, cands.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if u_ins_arr(tab, row_len, nrows, cands[mid]) > u:
            hi = mid
        else:
            lo = mid + 1
    if lo < cands.shape[0]:
        return cands[lo]
    return 1.0


@njit(cache=True)
def f_values_arr(tab, row_len, nrows, cands, u_grid, out):
    for i in range(u_grid.shape[0]):
        out[i] = cumulative_f_arr(tab, row_len, nrows, cands, u_grid[i])


@njit(cache=True)
def hook_walk_ranks(row_len, col_len, buf, rank):
    """Greene-Nijenhuis-Wilf hook walk filling rank[i, j] with placement steps 1..n.

    Consumes uniforms from buf; returns the number used, or -1 if the buffer
    ran out (caller redraws a larger one and restarts).
    """
    nrows = row_len.shape[0]
    n = 0
    for i in range(nrows):
        n += row_len[i]
    rows = row_len.copy()
    cols = col_len.copy()
    pos = 0
    R = nrows
    C = rows[0] if nrows > 0 else 0
    for k in range(n, 0, -1):
        # uniform box of the current diagram, by rejection in the R x C bounding box
        while True:
            if pos >= buf.shape[0]:
                return -1
            idx = int(buf[pos] * (R * C))
            pos += 1
            i = idx // C
            j = idx - i * C
            if j < rows[i]:
                break
        # walk within hooks until a corner box is reached
        while True:
            arm = rows[i] - 1 - j
            leg = cols[j] - 1 - i
            if arm + leg == 0:
                break
            if pos >= buf.shape[0]:
                return -1
            t = int(buf[pos] * (arm + leg))
            pos += 1
            if t < arm:
                j = j + 1 + t
            else:
                i = i + 1 + (t - arm)
        rank[i, j] = k
        rows[i] -= 1
        cols[j] -= 1
        while R > 0 and rows[R - 1] == 0:
            R -= 1
        if R > 0:
            C = rows[0]
    return pos
