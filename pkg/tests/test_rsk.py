from collections import Counter

import numpy as np
import pytest

from tableaux_lab import rsk
from tableaux_lab import transition as tr
from tableaux_lab.diagrams import from_parts
from tableaux_lab.sampling import make_rng

from _properties import check_bumping_routes, check_why_ft_equivalence, random_real_tableau


def test_insert_examples():
    t = rsk.real_tableau([[0.6]])
    t_up, box, route = rsk.insert(t, 0.7)
    assert (box.x, box.y, box.u) == (2, 1, 1)
    assert [(b.x, b.y) for b in route] == [(2, 1)]
    assert t_up.rows == ((0.6, 0.7),)

    t_bump, box2, route2 = rsk.insert(t, 0.3)
    assert (box2.x, box2.y, box2.u) == (1, 2, -1)
    assert [(b.x, b.y) for b in route2] == [(1, 1), (1, 2)]
    assert t_bump.rows == ((0.3,), (0.6,))

    empty = rsk.RealTableau(())
    _, box3, _ = rsk.insert(empty, 0.5)
    assert (box3.x, box3.y, box3.u) == (1, 1, 0)

    with pytest.raises(ValueError):
        rsk.insert(t, 1.5)


def test_insert_tie_goes_right():
    # an entry equal to the inserted value is not "strictly larger", so z continues rightward
    t = rsk.real_tableau([[0.5]])
    _, box, _ = rsk.insert(t, 0.5)
    assert (box.x, box.y) == (2, 1)


def test_u_ins_examples_and_monotonicity():
    t = rsk.real_tableau([[0.6]])
    assert rsk.u_ins(t, 0.7) == 1
    assert rsk.u_ins(t, 0.3) == -1
    rng = make_rng(31, 0)
    for _ in range(30):
        t = random_real_tableau(rng, int(rng.integers(1, 25)))
        zs = np.sort(rng.random(12))
        vals = [rsk.u_ins(t, z) for z in zs]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_insert_preserves_invariants():
    check_bumping_routes(make_rng(32, 0), cases=500, max_n=20)


def test_p_q_tableau_examples():
    assert rsk.p_tableau([0.5]).rows == ((0.5,),)
    assert rsk.p_tableau([0.6, 0.3]).rows == ((0.3,), (0.6,))
    assert rsk.p_tableau([0.3, 0.6]).rows == ((0.3, 0.6),)
    assert rsk.q_tableau([0.6, 0.3]).rows == ((1,), (2,))
    assert rsk.q_tableau([0.3, 0.6]).rows == ((1, 2),)


def test_pq_shapes_agree():
    rng = make_rng(33, 0)
    for _ in range(40):
        w = rng.random(int(rng.integers(1, 30)))
        p = rsk.p_tableau(w)
        q = rsk.q_tableau(w)
        rsk.validate_real_tableau(p)
        rsk.validate_standard_tableau(q)
        assert p.shape() == q.shape() == rsk.rsk_shape(w)


def test_responsibility_matrix():
    assert rsk.responsibility_matrix([0.6, 0.3]) == {
        rsk.BoxCoord(1, 1): 0.6,
        rsk.BoxCoord(1, 2): 0.3,
    }
    assert rsk.responsibility_matrix([]) == {}
    rng = make_rng(34, 0)
    for _ in range(20):
        w = rng.random(int(rng.integers(1, 25))).tolist()
        values = sorted(rsk.responsibility_matrix(w).values())
        assert values == sorted(w)


def test_cumulative_F_examples():
    t = rsk.real_tableau([[0.6]])
    assert rsk.cumulative_F(t, 0.0) == 0.6
    assert rsk.cumulative_F(t, -2.0) == 0.0
    assert rsk.cumulative_F(t, 1.0) == 1.0


def test_cumulative_F_step_structure():
    rng = make_rng(35, 0)
    for _ in range(25):
        t = random_real_tableau(rng, int(rng.integers(1, 20)))
        allowed = {0.0, 1.0} | set(t.entries())
        nrows = len(t.rows)
        grid = np.linspace(-nrows - 1.5, len(t.rows[0]) + 1.5, 40)
        vals = [rsk.cumulative_F(t, u) for u in grid]
        assert all(v in allowed for v in vals)
        assert all(a <= b for a, b in zip(vals, vals[1:]))
        # right-continuity at the integer jump points
        for u in range(-nrows, len(t.rows[0]) + 1):
            assert rsk.cumulative_F(t, u + 1e-12) == rsk.cumulative_F(t, u)


def test_cumulative_F_matches_linear_scan():
    # the binary search over breakpoints must agree with the direct scan
    rng = make_rng(36, 0)
    for _ in range(25):
        t = random_real_tableau(rng, int(rng.integers(1, 18)))
        for u in range(-len(t.rows) - 1, len(t.rows[0]) + 2):
            scan = 1.0
            for z in rsk.insertion_breakpoints(t):
                if rsk.u_ins(t, z) > u:
                    scan = z
                    break
            assert rsk.cumulative_F(t, u) == scan


def test_why_ft_equivalence():
    check_why_ft_equivalence(make_rng(37, 0))


def test_rsk_shape_distribution_matches_plancherel():
    rng = make_rng(38, 0)
    samples = 100_000
    counts = Counter(rsk.rsk_shape(rng.random(3)).parts for _ in range(samples))
    for parts, pmf in (((3,), 1 / 6), ((2, 1), 2 / 3), ((1, 1, 1), 1 / 6)):
        se = (pmf * (1 - pmf) / samples) ** 0.5
        assert abs(counts[parts] / samples - pmf) < 4 * se, parts
    # cross-module: pmf values come from the hook-length route
    assert tr.plancherel_pmf(from_parts([2, 1])) == pytest.approx(2 / 3)


def test_jdt_examples():
    q = rsk.standard_tableau([[1, 2], [3]])
    path = rsk.jdt_lazy_path(q, 2)
    assert [(b.x, b.y) for b in path.path] == [(1, 1), (2, 1)]
    assert [(b.x, b.y) for b in path.j] == [(1, 1), (2, 1)]
    assert not path.truncated

    q2 = rsk.standard_tableau([[1, 3], [2]])
    path2 = rsk.jdt_lazy_path(q2, 3)
    assert [(b.x, b.y) for b in path2.path] == [(1, 1), (1, 2)]
    assert [(b.x, b.y) for b in path2.j] == [(1, 1), (1, 2)]
    assert path2.truncated  # entry 3 is off the greedy path

    single = rsk.standard_tableau([[1]])
    path3 = rsk.jdt_lazy_path(single, 1)
    assert [(b.x, b.y) for b in path3.path] == [(1, 1)]
    assert [(b.x, b.y) for b in path3.j] == [(1, 1)]


def test_jdt_path_properties():
    rng = make_rng(39, 0)
    for _ in range(30):
        w = rng.random(int(rng.integers(1, 40)))
        q = rsk.q_tableau(w)
        res = rsk.jdt_lazy_path(q, len(w))
        xs = [b.x for b in res.path]
        ys = [b.y for b in res.path]
        assert all(a <= b for a, b in zip(xs, xs[1:]))
        assert all(a <= b for a, b in zip(ys, ys[1:]))
        entries = [q.rows[b.y - 1][b.x - 1] for b in res.path]
        assert all(a < b for a, b in zip(entries, entries[1:]))
        # j_n holds the last path box with entry <= n
        for n, box in enumerate(res.j, start=1):
            assert q.rows[box.y - 1][box.x - 1] <= n


def test_validation_rejects_bad_tableaux():
    with pytest.raises(ValueError):
        rsk.real_tableau([[0.5, 0.2]])  # row not increasing
    with pytest.raises(ValueError):
        rsk.real_tableau([[0.5], [0.5]])  # column not strict
    with pytest.raises(ValueError):
        rsk.real_tableau([[1.5]])  # outside unit interval
    with pytest.raises(ValueError):
        rsk.standard_tableau([[1, 2], [4]])  # not a permutation of 1..n
