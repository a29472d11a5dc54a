"""Schensted row insertion and RSK on real-valued (Poissonized) tableaux.

Rows are numbered from 1 (bottom) and columns from 1 (left), matching the
French convention; a box at column x and row y has u-coordinate x - y.
Insertion bumps the leftmost entry strictly larger than the incoming value,
so an entry equal to an existing one continues to the right.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable

from .diagrams import YoungDiagram


@dataclass(frozen=True)
class BoxCoord:
    """Lattice box at column x >= 1, row y >= 1; u = x - y."""

    x: int
    y: int

    @property
    def u(self) -> int:
        return self.x - self.y


@dataclass(frozen=True)
class RealTableau:
    """Filling of a Young diagram with reals in [0, 1], weakly increasing along
    rows and strictly increasing up columns."""

    rows: tuple[tuple[float, ...], ...]

    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self) -> list[float]:
        return [v for row in self.rows for v in row]

    def to_json_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}


@dataclass(frozen=True)
class StandardTableau:
    """Filling of a Young diagram with 1..n, each used once, increasing along rows and up columns."""

    rows: tuple[tuple[int, ...], ...]

    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_json_dict(self) -> dict:
        return {"rows": [list(r) for r in self.rows]}


def validate_real_tableau(t: RealTableau) -> None:
    """Raise ValueError unless rows/columns satisfy the tableau monotonicity invariants."""
    rows = t.rows
    t.shape()  # row lengths weakly decreasing
    for r, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"entry {v} at row {r + 1} outside [0, 1]")
            if j and row[j - 1] > v:
                raise ValueError(f"row {r + 1} is not weakly increasing")
            if r and rows[r - 1][j] >= v:
                raise ValueError(f"column {j + 1} is not strictly increasing")


def validate_standard_tableau(q: StandardTableau) -> None:
    """Raise ValueError unless the filling is a standard tableau on 1..n."""
    q.shape()
    seen = sorted(v for row in q.rows for v in row)
    if seen != list(range(1, q.n + 1)):
        raise ValueError("entries must be exactly 1..n")
    for r, row in enumerate(q.rows):
        for j, v in enumerate(row):
            if j and row[j - 1] >= v:
                raise ValueError(f"row {r + 1} is not increasing")
            if r and q.rows[r - 1][j] >= v:
                raise ValueError(f"column {j + 1} is not increasing")


def real_tableau(rows: Iterable[Iterable[float]]) -> RealTableau:
    """Validated RealTableau from row-major data."""
    t = RealTableau(tuple(tuple(float(v) for v in row) for row in rows))
    validate_real_tableau(t)
    return t


def standard_tableau(rows: Iterable[Iterable[int]]) -> StandardTableau:
    """Validated StandardTableau from row-major data."""
    q = StandardTableau(tuple(tuple(int(v) for v in row) for row in rows))
    validate_standard_tableau(q)
    return q


def _insert_into_rows(rows: list[list[float]], z: float) -> tuple[BoxCoord, list[BoxCoord]]:
    # mutates rows; returns (new box, bumping route: one changed box per visited row)
    route = []
    cur = z
    r = 0
    while True:
        if r == len(rows):
            rows.append([cur])
            box = BoxCoord(1, r + 1)
            route.append(box)
            return box, route
        row = rows[r]
        i = bisect_right(row, cur)
        if i == len(row):
            row.append(cur)
            box = BoxCoord(len(row), r + 1)
            route.append(box)
            return box, route
        cur, row[i] = row[i], cur
        route.append(BoxCoord(i + 1, r + 1))
        r += 1


def insert(t: RealTableau, z: float) -> tuple[RealTableau, BoxCoord, list[BoxCoord]]:
    """Schensted row insertion of z; returns the new tableau, the new box, and the bumping route."""
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"inserted value must lie in [0, 1], got {z}")
    rows = [list(r) for r in t.rows]
    box, route = _insert_into_rows(rows, z)
    return RealTableau(tuple(tuple(r) for r in rows)), box, route


def u_ins(t: RealTableau, z: float) -> int:
    """u-coordinate of the box created by inserting z, without keeping the new tableau."""
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"inserted value must lie in [0, 1], got {z}")
    rows = t.rows
    cur = z
    r = 0
    while r < len(rows):
        row = rows[r]
        i = bisect_right(row, cur)
        if i == len(row):
            return (len(row) + 1) - (r + 1)
        cur = row[i]
        r += 1
    return -len(rows)


def p_tableau(w: Iterable[float]) -> RealTableau:
    """Insertion tableau of the word: iterated Schensted insertion into the empty tableau."""
    rows: list[list[float]] = []
    for z in w:
        if not 0.0 <= z <= 1.0:
            raise ValueError(f"word entries must lie in [0, 1], got {z}")
        _insert_into_rows(rows, z)
    return RealTableau(tuple(tuple(r) for r in rows))


def _pq_rows(w: Iterable[float]) -> tuple[list[list[float]], list[list[int]]]:
    p_rows: list[list[float]] = []
    q_rows: list[list[int]] = []
    for k, z in enumerate(w, start=1):
        if not 0.0 <= z <= 1.0:
            raise ValueError(f"word entries must lie in [0, 1], got {z}")
        box, _ = _insert_into_rows(p_rows, z)
        if box.y > len(q_rows):
            q_rows.append([])
        q_rows[box.y - 1].append(k)
    return p_rows, q_rows


def q_tableau(w: Iterable[float]) -> StandardTableau:
    """Recording tableau: entry k marks the box created by the k-th insertion."""
    _, q_rows = _pq_rows(w)
    return StandardTableau(tuple(tuple(r) for r in q_rows))


def rsk_shape(w: Iterable[float]) -> YoungDiagram:
    """Common shape of the insertion and recording tableaux of the word."""
    p_rows, _ = _pq_rows(w)
    return YoungDiagram(tuple(len(r) for r in p_rows))


def responsibility_matrix(w: Iterable[float]) -> dict[BoxCoord, float]:
    """Map each box to the word entry whose insertion created it (w indexed by the recording tableau)."""
    ws = list(w)
    _, q_rows = _pq_rows(ws)
    return {
        BoxCoord(j + 1, r + 1): ws[k - 1]
        for r, row in enumerate(q_rows)
        for j, k in enumerate(row)
    }


def insertion_breakpoints(t: RealTableau) -> list[float]:
    """Candidate z values where z -> u_ins(t, z) can jump: 0 and the distinct entries of t."""
    return [0.0] + sorted(set(t.entries()))


def cumulative_F(t: RealTableau, u: float) -> float:
    """Cumulative function of the tableau: the smallest z whose insertion lands strictly past u.

    z -> u_ins(t, z) is a right-continuous non-decreasing step function with
    breakpoints among the entries of t, so the infimum of {z : u_ins(t, z) > u}
    is attained at 0 or at an entry; returns 1 when the set is empty.
    """
    cands = insertion_breakpoints(t)
    lo, hi = 0, len(cands)  # leftmost candidate with u_ins > u
    while lo < hi:
        mid = (lo + hi) // 2
        if u_ins(t, cands[mid]) > u:
            hi = mid
        else:
            lo = mid + 1
    return cands[lo] if lo < len(cands) else 1.0


@dataclass(frozen=True)
class JdtLazyPath:
    """Greedy smaller-neighbor path through a standard tableau.

    ``path`` lists the visited boxes; ``j`` holds, for n = 1..n_eff, the last
    path box with entry <= n.  ``truncated`` flags that the requested n_max
    exceeded the largest entry reachable before the path hit the tableau
    boundary, so j is shorter than asked for.
    """

    path: tuple[BoxCoord, ...]
    j: tuple[BoxCoord, ...]
    truncated: bool


def jdt_lazy_path(q: StandardTableau, n_max: int) -> JdtLazyPath:
    """Jeu-de-taquin path of the tableau with the lazy index j_n, for n = 1..n_max.

    From (1,1) each step moves to whichever of (x+1, y) and (x, y+1) holds the
    smaller entry; a neighbor outside the tableau loses automatically, and the
    path stops when both are missing (finite-tableau truncation).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rows = q.rows

    def entry(x: int, y: int) -> int | None:
        if y <= len(rows) and x <= len(rows[y - 1]):
            return rows[y - 1][x - 1]
        return None

    x, y = 1, 1
    path = [BoxCoord(1, 1)]
    entries = [entry(1, 1)]
    while True:
        right = entry(x + 1, y)
        up = entry(x, y + 1)
        if right is None and up is None:
            break
        if up is None or (right is not None and right < up):
            x += 1
            entries.append(right)
        else:
            y += 1
            entries.append(up)
        path.append(BoxCoord(x, y))

    last_entry = entries[-1]
    truncated = n_max > last_entry
    j = []
    idx = 0
    for n in range(1, min(n_max, last_entry) + 1):
        while idx + 1 < len(entries) and entries[idx + 1] <= n:
            idx += 1
        j.append(path[idx])
    return JdtLazyPath(tuple(path), tuple(j), truncated)
