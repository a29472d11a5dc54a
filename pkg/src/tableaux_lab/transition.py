"""Kerov transition measures and the exact algebra around them.

Atom weights come from the partial-fraction decomposition of the rational
function prod(z - y_j) / prod(z - x_i) over the interlacing corner
u-coordinates; all weight arithmetic is exact over the integers and converted
to float only at the measure boundary.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .diagrams import YoungDiagram, add_box, corners

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite probability measure given as (location, weight) atoms sorted by location."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        locs = self.locations
        if any(a >= b for a, b in zip(locs, locs[1:])):
            raise ValueError("atom locations must be strictly increasing")
        if any(not 0.0 < w <= 1.0 for w in self.weights):
            raise ValueError("atom weights must lie in (0, 1]")
        if abs(sum(self.weights) - 1.0) > _WEIGHT_TOL:
            raise ValueError(f"atom weights must sum to 1, got {sum(self.weights)!r}")

    @property
    def locations(self) -> tuple[float, ...]:
        return tuple(a[0] for a in self.atoms)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(a[1] for a in self.atoms)

    def to_json_dict(self) -> dict:
        return {"locations": list(self.locations), "weights": list(self.weights)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def transition_weights_exact(d: YoungDiagram) -> list[tuple[int, Fraction]]:
    """Exact transition-measure atoms of a diagram as (corner u, rational weight).

    The weight at concave corner x_i is prod_j (x_i - y_j) / prod_{j != i}
    (x_i - x_j); corner interlacing makes every weight positive and they sum
    to one exactly.
    """
    cs = corners(d)
    xs, ys = cs.concave_u, cs.convex_u
    out = []
    for i, xi in enumerate(xs):
        num = Fraction(1)
        for yj in ys:
            num *= xi - yj
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                den *= xi - xj
        out.append((xi, num / den))
    return out


def transition_measure(d: YoungDiagram) -> DiscreteMeasure:
    """Transition measure of a diagram, with float atom weights."""
    return DiscreteMeasure(tuple((float(x), float(w)) for x, w in transition_weights_exact(d)))


def cumulative_K(m: DiscreteMeasure, u: float) -> float:
    """CDF of the measure: total weight of atoms at locations <= u."""
    k = bisect_right(m.locations, u)
    return float(sum(m.weights[:k]))


def growth_step(d: YoungDiagram, rng: np.random.Generator) -> YoungDiagram:
    """One step of the Plancherel growth process: add a box at corner x_i with probability p_i."""
    atoms = transition_weights_exact(d)
    v = rng.random()
    acc = 0.0
    for u, w in atoms:
        acc += float(w)
        if v < acc:
            return add_box(d, u)
    return add_box(d, atoms[-1][0])


def hook_count(d: YoungDiagram) -> int:
    """Number f^lambda of standard Young tableaux of the shape, by the hook length formula."""
    parts = d.parts
    if not parts:
        return 1
    cols = [0] * parts[0]
    for p in parts:
        for j in range(p):
            cols[j] += 1
    prod = 1
    for i, p in enumerate(parts):
        for j in range(p):
            prod *= (p - j) + (cols[j] - i) - 1
    return factorial(d.n) // prod


def plancherel_pmf_exact(d: YoungDiagram) -> Fraction:
    """Plancherel probability (f^lambda)^2 / n! as an exact rational."""
    f = hook_count(d)
    return Fraction(f * f, factorial(d.n))


def plancherel_pmf(d: YoungDiagram) -> float:
    """Plancherel probability (f^lambda)^2 / n! of the shape."""
    return float(plancherel_pmf_exact(d))


def cauchy_plus(m: DiscreteMeasure, u: float) -> float:
    """Modified Cauchy transform with kernel 1/(|u - x| + 1); values in (0, 1]."""
    return float(sum(w / (abs(u - x) + 1.0) for x, w in m.atoms))


def interaction_energy(m: DiscreteMeasure, u0: float, eps: float = 0.0) -> float:
    """Interaction energy of the measure split at u0, with optional regularization.

    Sums w1*w2 / (x2 - x1 + eps) over atom pairs with x1 <= u0 < x2; eps = 0
    gives the plain energy (always finite for discrete measures).
    """
    if eps < 0:
        raise ValueError("eps must be >= 0")
    left = [(x, w) for x, w in m.atoms if x <= u0]
    right = [(x, w) for x, w in m.atoms if x > u0]
    total = 0.0
    for x1, w1 in left:
        for x2, w2 in right:
            total += w1 * w2 / (x2 - x1 + eps)
    return total
