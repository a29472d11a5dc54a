"""Property checks shared between the unit suites and the acceptance module."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from tableaux_lab import diagrams as dg
from tableaux_lab import dcf as dc
from tableaux_lab import rsk
from tableaux_lab import sampling as sp
from tableaux_lab import transition as tr


def random_diagram(rng: np.random.Generator, n: int) -> dg.YoungDiagram:
    """Random diagram with n boxes, grown one uniformly chosen concave corner at a time."""
    d = dg.YoungDiagram(())
    for _ in range(n):
        cs = dg.corners(d)
        d = dg.add_box(d, cs.concave_u[int(rng.integers(len(cs.concave_u)))])
    return d


def growth_chain_probability(d: dg.YoungDiagram, memo: dict) -> Fraction:
    """Sum over all growth chains empty -> ... -> d of the transition-step probabilities."""
    if d.n == 0:
        return Fraction(1)
    if d.parts in memo:
        return memo[d.parts]
    total = Fraction(0)
    parts = list(d.parts)
    for i, p in enumerate(parts):
        nxt = parts[i + 1] if i + 1 < len(parts) else 0
        if p > nxt:
            smaller = dg.from_parts(parts[:i] + ([p - 1] if p > 1 else []) + parts[i + 1 :])
            step_u = p - 1 - i  # u-coordinate of the box restored on top of `smaller`
            weight = dict(tr.transition_weights_exact(smaller))[step_u]
            total += growth_chain_probability(smaller, memo) * weight
    memo[d.parts] = total
    return total


def random_real_tableau(rng: np.random.Generator, n: int) -> rsk.RealTableau:
    return rsk.p_tableau(rng.random(n))


def check_corner_interlacing(rng: np.random.Generator, cases: int = 200, max_n: int = 60) -> None:
    for _ in range(cases):
        d = random_diagram(rng, int(rng.integers(0, max_n + 1)))
        cs = dg.corners(d)
        assert len(cs.concave_u) == len(cs.convex_u) + 1
        merged = []
        for x, y in zip(cs.concave_u, cs.convex_u):
            merged += [x, y]
        merged.append(cs.concave_u[-1])
        assert all(a < b for a, b in zip(merged, merged[1:])), (d, cs)


def check_weights_normalized_centered(rng: np.random.Generator, cases: int = 200, max_n: int = 60) -> None:
    for _ in range(cases):
        d = random_diagram(rng, int(rng.integers(0, max_n + 1)))
        atoms = tr.transition_weights_exact(d)
        assert all(w > 0 for _, w in atoms)
        assert sum(w for _, w in atoms) == Fraction(1)
        assert sum(Fraction(x) * w for x, w in atoms) == Fraction(0)


def check_why_ft_equivalence(rng: np.random.Generator, cases: int = 12, max_n: int = 20) -> None:
    # F_T(u) <= z iff u_ins(T, z) >= u, for z in [0, 1) and non-integer u (the
    # paper's almost-every-u form; u_ins is integer-valued, so at integer u the
    # equivalence holds with strict >).  z runs over the breakpoint grid plus
    # midpoints.
    for _ in range(cases):
        t = random_real_tableau(rng, int(rng.integers(1, max_n + 1)))
        breaks = rsk.insertion_breakpoints(t)
        zs = list(breaks)
        zs += [(a + b) / 2 for a, b in zip(breaks, breaks[1:])]
        zs += [(breaks[-1] + 1.0) / 2]
        nrows = len(t.rows)
        for base in range(-nrows - 1, len(t.rows[0]) + 2):
            for u in (base - 0.5, float(base)):
                fu = rsk.cumulative_F(t, u)
                for z in zs:
                    if z >= 1.0:
                        continue
                    if u != base:  # non-integer u: the paper's weak form
                        assert (fu <= z) == (rsk.u_ins(t, z) >= u), (t, u, z, fu)
                    else:  # integer u: strict form
                        assert (fu <= z) == (rsk.u_ins(t, z) > u), (t, u, z, fu)


def check_bumping_routes(rng: np.random.Generator, cases: int = 60, max_n: int = 25) -> None:
    for _ in range(cases):
        t = rsk.RealTableau(())
        for z in rng.random(int(rng.integers(1, max_n + 1))):
            t, box, route = rsk.insert(t, z)
            xs = [b.x for b in route]
            ys = [b.y for b in route]
            assert all(a >= b for a, b in zip(xs, xs[1:])), route
            assert ys == list(range(1, len(ys) + 1)), route
            assert route[-1] == box
            rsk.validate_real_tableau(t)


def check_chebyshev_containment(rng: np.random.Generator, samples: int = 4000) -> None:
    # every grid estimate obeys the (u, u', z) bound up to 5 standard errors
    d = dg.staircase(8)
    m = tr.transition_measure(d)
    K = lambda u: tr.cumulative_K(m, u)
    u_grid = np.arange(-8.0, 9.0, 2.0)
    z_grid = np.linspace(0.05, 0.95, 7)
    grid = dc.estimate_dcf(d, u_grid, z_grid, samples, sp.make_rng(20250711, 901))
    est = grid.estimates
    se = grid.std_errors
    for i, u in enumerate(u_grid):
        for ip, up in enumerate(u_grid):
            if up >= u:
                continue
            for j, z in enumerate(z_grid):
                if not 0.0 <= z < K(up):
                    continue
                bound = dc.chebyshev_bound(K, u, up, z)
                assert est[i, j] <= bound + 5.0 * se[i, j], (u, up, z, est[i, j], bound)


def check_dcf_monotonicity(rng: np.random.Generator, samples: int = 3000) -> None:
    d = dg.from_parts([3, 1])
    u_grid = np.array([-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0])
    z_grid = np.linspace(0.1, 0.9, 5)
    grid = dc.estimate_dcf(d, u_grid, z_grid, samples, sp.make_rng(20250711, 902))
    est = grid.estimates
    se = grid.std_errors
    # z-monotonicity is exact under the shared-sample construction
    assert (np.diff(est, axis=1) >= 0).all()
    # u-monotonicity holds within two pooled standard errors
    for j in range(len(z_grid)):
        for i in range(len(u_grid) - 1):
            pooled = np.hypot(se[i, j], se[i + 1, j])
            assert est[i + 1, j] <= est[i, j] + 2.0 * pooled, (i, j)
