"""Young diagrams, profiles, corners, and the d_XY metric.

Diagrams are integer partitions drawn in the French convention (row 1 at the
bottom).  Corner bookkeeping and profiles live in Russian coordinates
u = x - y, v = x + y, where (x, y) are French lattice coordinates.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field


@dataclass(frozen=True)
class YoungDiagram:
    """Integer partition with weakly decreasing positive parts."""

    parts: tuple[int, ...]
    n: int = field(init=False)

    def __post_init__(self):
        for i, p in enumerate(self.parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {p} at index {i}")
            if i and self.parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {self.parts}")
        object.__setattr__(self, "n", sum(self.parts))

    def __repr__(self):
        return f"YoungDiagram({list(self.parts)})"


@dataclass(frozen=True)
class CornerSet:
    """Interlacing u-coordinates of the concave (addable) and convex (removable) corners."""

    concave_u: tuple[int, ...]
    convex_u: tuple[int, ...]

    def __post_init__(self):
        if len(self.concave_u) != len(self.convex_u) + 1:
            raise ValueError("need exactly one more concave corner than convex")
        merged = []
        for x, y in zip(self.concave_u, self.convex_u):
            merged += [x, y]
        merged.append(self.concave_u[-1])
        if any(a >= b for a, b in zip(merged, merged[1:])):
            raise ValueError(f"corners do not interlace: {merged}")


@dataclass(frozen=True)
class CurveParametrization:
    """French-coordinate parametrization of a limit curve.

    ``x_of_y`` maps y >= 0 to the x-coordinate of the curve (0 beyond its
    support), ``y_of_x`` the other way round.  Both maps weakly decrease.
    """

    x_of_y: Callable[[float], float]
    y_of_x: Callable[[float], float]


def from_parts(parts: Iterable[int]) -> YoungDiagram:
    """Build a validated diagram from a weakly decreasing list of positive parts."""
    return YoungDiagram(tuple(int(p) for p in parts))


def staircase(N: int) -> YoungDiagram:
    """Staircase diagram (N, N-1, ..., 2, 1) with N(N+1)/2 boxes; N = 0 gives the empty diagram."""
    if N < 0:
        raise ValueError("N must be >= 0")
    return YoungDiagram(tuple(range(N, 0, -1)))


def conjugate(d: YoungDiagram) -> YoungDiagram:
    """Transpose of the diagram: column lengths become parts."""
    if not d.parts:
        return d
    cols = [0] * d.parts[0]
    for p in d.parts:
        for j in range(p):
            cols[j] += 1
    return YoungDiagram(tuple(cols))


def corners(d: YoungDiagram) -> CornerSet:
    """Concave and convex corner u-coordinates, read off the profile.

    A corner point (x, y) of the profile has u = x - y.  Concave corners sit
    where a box can be added (end of row 1, every strict descent between
    consecutive rows, and on top of the last row); convex corners sit at the
    removable boxes.
    """
    parts = d.parts
    ell = len(parts)
    if ell == 0:
        return CornerSet((0,), ())
    concave = [-ell]
    convex = []
    for i in range(ell, 1, -1):
        if parts[i - 2] > parts[i - 1]:
            concave.append(parts[i - 1] - (i - 1))
    concave.append(parts[0])
    for i in range(ell, 0, -1):
        nxt = parts[i] if i < ell else 0
        if parts[i - 1] > nxt:
            convex.append(parts[i - 1] - i)
    return CornerSet(tuple(concave), tuple(convex))


def profile_value(d: YoungDiagram, c: float, u: float) -> float:
    """Rescaled profile height of c*d at u; equals |u| outside the support.

    The profile is the upper envelope of |u| and one "tent" v_j - |u - u_j|
    per convex corner (u_j, v_j); tents and profile agree because all profile
    segments have slope +-1.
    """
    if c <= 0:
        raise ValueError("scale c must be positive")
    u0 = u / c
    best = abs(u0)
    parts = d.parts
    ell = len(parts)
    for i in range(1, ell + 1):
        nxt = parts[i] if i < ell else 0
        if parts[i - 1] > nxt:
            uj = parts[i - 1] - i
            vj = parts[i - 1] + i
            best = max(best, vj - abs(u0 - uj))
    return c * best


def add_box(d: YoungDiagram, u: int) -> YoungDiagram:
    """Diagram with one extra box at the concave corner with u-coordinate ``u``."""
    parts = list(d.parts)
    ell = len(parts)
    if u == -ell:
        return YoungDiagram(tuple(parts) + (1,))
    if ell and u == parts[0]:
        return YoungDiagram((parts[0] + 1,) + tuple(parts[1:]))
    for i in range(2, ell + 1):
        if parts[i - 2] > parts[i - 1] and u == parts[i - 1] - (i - 1):
            parts[i - 1] += 1
            return YoungDiagram(tuple(parts))
    raise ValueError(f"u={u} is not a concave corner of {d}")


def d_xy_diagrams(d1: YoungDiagram, d2: YoungDiagram, c: float) -> float:
    """d_XY distance between two c-rescaled diagrams.

    Equals c times the larger of the sup distance between parts and the sup
    distance between conjugate parts, padding the shorter list with zeros.
    """
    if c <= 0:
        raise ValueError("scale c must be positive")

    def sup_parts(a: tuple[int, ...], b: tuple[int, ...]) -> int:
        m = max(len(a), len(b))
        return max(
            (abs((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) for i in range(m)),
            default=0,
        )

    dx = sup_parts(d1.parts, d2.parts)
    dy = sup_parts(conjugate(d1).parts, conjugate(d2).parts)
    return c * max(dx, dy)


def _d_x_to_curve(parts: tuple[int, ...], c: float, x_of_y: Callable[[float], float]) -> float:
    # max over rows i >= 1 of |c*part_i - X(c(i-1))| and |c*part_i - X(c*i)|,
    # continuing past the last row (part 0) until the curve has decayed to 0
    best = 0.0
    i = 1
    while True:
        part = c * parts[i - 1] if i <= len(parts) else 0.0
        lo = x_of_y(c * (i - 1))
        hi = x_of_y(c * i)
        best = max(best, abs(part - lo), abs(part - hi))
        if i > len(parts) and lo == 0.0:
            return best
        i += 1


def d_xy_to_curve(d: YoungDiagram, c: float, curve: CurveParametrization) -> float:
    """d_XY distance between the c-rescaled diagram and a parametrized limit curve.

    The x-distance compares rescaled parts against the curve's x-parametrization
    sampled at the row-index grid; the y-distance mirrors this on the conjugate
    diagram with the y-parametrization.
    """
    if c <= 0:
        raise ValueError("scale c must be positive")
    dx = _d_x_to_curve(d.parts, c, curve.x_of_y)
    dy = _d_x_to_curve(conjugate(d).parts, c, curve.y_of_x)
    return max(dx, dy)


def partitions_of(n: int) -> Iterator[YoungDiagram]:
    """All Young diagrams with exactly n boxes, largest-part-first order."""

    def rec(remaining: int, cap: int, prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(prefix)
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            yield from rec(remaining - p, p, prefix)
            prefix.pop()

    if n < 0:
        raise ValueError("n must be >= 0")
    for parts in rec(n, n, []):
        yield YoungDiagram(parts)


def parse_parts(text: str) -> YoungDiagram:
    """Parse a CLI-style comma-separated part list, e.g. "4,2,2,2"; empty string is the empty diagram."""
    text = text.strip()
    if not text:
        return YoungDiagram(())
    return from_parts(int(tok) for tok in text.split(","))
