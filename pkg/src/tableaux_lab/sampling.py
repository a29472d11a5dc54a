"""Deterministic, splittable samplers for standard and Poissonized tableaux.

Streams come from a counter-based Philox generator keyed by (seed, stream), so
distinct streams from one seed are non-overlapping by construction and every
sample is reproducible from the pair.  Heavy samplers run on the array kernels;
:class:`ArrayTableau` is their product and converts losslessly to the
list-of-lists types in :mod:`tableaux_lab.rsk`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .diagrams import YoungDiagram, conjugate
from .rsk import RealTableau, StandardTableau
from .transition import hook_count

_MASK64 = (1 << 64) - 1
_REJECTION_MAX_BOXES = 8


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by (seed, stream); identical keys replay identical sequences."""
    if not 0 <= seed <= _MASK64:
        raise ValueError("seed must fit in 64 bits")
    if not 0 <= stream <= _MASK64:
        raise ValueError("stream must fit in 64 bits")
    return np.random.Generator(np.random.Philox(key=(seed & _MASK64) | (stream << 64)))


@dataclass
class ArrayTableau:
    """Row-major array view of a real tableau: data[i, :row_len[i]] is row i+1."""

    data: np.ndarray
    row_len: np.ndarray
    sorted_entries: np.ndarray | None = None
    _breakpoints: np.ndarray | None = field(default=None, repr=False)

    @property
    def nrows(self) -> int:
        return len(self.row_len)

    @property
    def n(self) -> int:
        return int(self.row_len.sum())

    def shape(self) -> YoungDiagram:
        return YoungDiagram(tuple(int(m) for m in self.row_len))

    def entries(self) -> np.ndarray:
        return np.concatenate([self.data[i, : self.row_len[i]] for i in range(self.nrows)]) \
            if self.nrows else np.empty(0)

    def breakpoints(self) -> np.ndarray:
        """Sorted candidate z values (0 plus the entries) for cumulative-function evaluation."""
        if self._breakpoints is None:
            ent = self.sorted_entries if self.sorted_entries is not None else np.sort(self.entries())
            self._breakpoints = np.concatenate(([0.0], ent))
        return self._breakpoints

    def u_ins(self, z: float) -> int:
        return int(_kernels.u_ins_arr(self.data, self.row_len, self.nrows, float(z)))

    def cumulative_f(self, u: float) -> float:
        return float(
            _kernels.cumulative_f_arr(self.data, self.row_len, self.nrows, self.breakpoints(), float(u))
        )

    def f_values(self, u_grid: np.ndarray) -> np.ndarray:
        out = np.empty(len(u_grid))
        _kernels.f_values_arr(
            self.data, self.row_len, self.nrows, self.breakpoints(), np.asarray(u_grid, dtype=float), out
        )
        return out

    def to_real_tableau(self) -> RealTableau:
        return RealTableau(
            tuple(tuple(float(v) for v in self.data[i, : self.row_len[i]]) for i in range(self.nrows))
        )


class FixedShapeSampler:
    """Repeated sampling from one shape, with the corner bookkeeping set up once."""

    def __init__(self, d: YoungDiagram):
        if d.n < 1:
            raise ValueError("shape must have at least one box")
        self.shape = d
        self._parts = np.asarray(d.parts, dtype=np.int64)
        self._cols = np.asarray(conjugate(d).parts, dtype=np.int64)
        self._rank = np.zeros((len(d.parts), d.parts[0]), dtype=np.int64)
        self._buf_size = 8 * d.n + 64

    def syt_ranks(self, rng: np.random.Generator) -> np.ndarray:
        """Hook-walk sample of a uniform standard tableau, as a rank matrix (0 outside the shape).

        The returned buffer is reused by the next call; callers that keep it
        must copy.
        """
        while True:
            buf = rng.random(self._buf_size)
            self._rank[:] = 0
            if _kernels.hook_walk_ranks(self._parts, self._cols, buf, self._rank) >= 0:
                return self._rank
            self._buf_size *= 2

    def poissonized_array(self, rng: np.random.Generator) -> ArrayTableau:
        """Uniform Poissonized tableau of the shape, as an array tableau.

        Draws a uniform standard tableau and places the k-th smallest of n
        i.i.d. uniforms into the box holding k; uniformity on the tableau
        polytope follows from its decomposition into equal-volume order
        simplices indexed by standard tableaux (certified against the
        rejection oracle in the tests).
        """
        rank = self.syt_ranks(rng)
        sorted_u = np.sort(rng.random(self.shape.n))
        data = sorted_u[rank - 1]  # cells outside the shape hold garbage and are never read
        return ArrayTableau(data, self._parts, sorted_entries=sorted_u)


def uniform_syt_ranks(d: YoungDiagram, rng: np.random.Generator) -> np.ndarray:
    """Hook-walk sample of a uniform standard tableau, as a rank matrix (0 outside the shape)."""
    return FixedShapeSampler(d).syt_ranks(rng)


def uniform_syt(d: YoungDiagram, rng: np.random.Generator) -> StandardTableau:
    """Uniformly random standard Young tableau of the given shape."""
    rank = uniform_syt_ranks(d, rng)
    return StandardTableau(tuple(tuple(int(v) for v in rank[i, : d.parts[i]]) for i in range(len(d.parts))))


def poissonized_array(d: YoungDiagram, rng: np.random.Generator) -> ArrayTableau:
    """Uniform Poissonized tableau of fixed shape, as an array tableau."""
    return FixedShapeSampler(d).poissonized_array(rng)


def poissonized(d: YoungDiagram, rng: np.random.Generator) -> RealTableau:
    """Uniform Poissonized tableau of fixed shape."""
    return poissonized_array(d, rng).to_real_tableau()


def plancherel_poissonized_array(n: int, rng: np.random.Generator) -> ArrayTableau:
    """Insertion tableau of n i.i.d. uniforms, as an array tableau; its shape is Plancherel."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ws = rng.random(n)
    size = max(int(3.2 * n**0.5) + 8, 8)
    while True:
        tab = np.empty((min(size, max(n, 1)),) * 2, dtype=np.float64)
        row_len = np.zeros(tab.shape[0], dtype=np.int64)
        nrows = _kernels.rsk_fill(ws, tab, row_len)
        if nrows >= 0:
            return ArrayTableau(tab[:nrows], row_len[:nrows], sorted_entries=np.sort(ws))
        size = int(size * 1.6) + 8

def plancherel_poissonized(n: int, rng: np.random.Generator) -> RealTableau:
    """Plancherel-distributed random Poissonized tableau with n boxes."""
    return plancherel_poissonized_array(n, rng).to_real_tableau()


def _reading_order_ok(parts: tuple[int, ...], vals: np.ndarray) -> np.ndarray:
    # vals: (k, n) batch of reading-order fillings; True where rows weakly
    # increase and columns strictly increase
    ok = np.ones(len(vals), dtype=bool)
    off = 0
    prev_off = 0
    for r, p in enumerate(parts):
        if p > 1:
            ok &= (vals[:, off + 1 : off + p] >= vals[:, off : off + p - 1]).all(axis=1)
        if r:
            ok &= (vals[:, off : off + p] > vals[:, prev_off : prev_off + p]).all(axis=1)
        prev_off = off
        off += p
    return ok


def _rows_from_reading_order(parts: tuple[int, ...], flat: np.ndarray) -> RealTableau:
    rows = []
    off = 0
    for p in parts:
        rows.append(tuple(float(v) for v in flat[off : off + p]))
        off += p
    return RealTableau(tuple(rows))


def rejection_attempt(d: YoungDiagram, rng: np.random.Generator) -> RealTableau | None:
    """One brute-force attempt: fill the shape with i.i.d. uniforms in reading order,
    keep it only if the tableau constraints hold."""
    vals = rng.random((1, d.n))
    if _reading_order_ok(d.parts, vals)[0]:
        return _rows_from_reading_order(d.parts, vals[0])
    return None


def rejection_poissonized_oracle(d: YoungDiagram, rng: np.random.Generator) -> RealTableau:
    """Exactly uniform Poissonized tableau by rejection; practical only for n <= 8.

    The acceptance probability is f^lambda / n!, so this is the distributional
    ground truth the order-statistics sampler is checked against.
    """
    if d.n > _REJECTION_MAX_BOXES:
        raise ValueError(f"rejection oracle is limited to n <= {_REJECTION_MAX_BOXES} boxes")
    if d.n < 1:
        raise ValueError("shape must have at least one box")
    while True:
        t = rejection_attempt(d, rng)
        if t is not None:
            return t


def rejection_batch(d: YoungDiagram, rng: np.random.Generator, attempts: int) -> tuple[np.ndarray, int]:
    """Vectorized rejection attempts; returns (accepted reading-order fillings, accept count)."""
    if d.n > _REJECTION_MAX_BOXES:
        raise ValueError(f"rejection oracle is limited to n <= {_REJECTION_MAX_BOXES} boxes")
    vals = rng.random((attempts, d.n))
    ok = _reading_order_ok(d.parts, vals)
    return vals[ok], int(ok.sum())


def poissonized_entries_batch(d: YoungDiagram, rng: np.random.Generator, k: int) -> np.ndarray:
    """k independent Poissonized tableaux of the shape, as reading-order entry rows."""
    out = np.empty((k, d.n))
    parts = d.parts
    for s in range(k):
        at = poissonized_array(d, rng)
        off = 0
        for i, p in enumerate(parts):
            out[s, off : off + p] = at.data[i, :p]
            off += p
    return out


def expected_rejection_rate(d: YoungDiagram) -> float:
    """Acceptance probability f^lambda / n! of the rejection oracle."""
    from math import factorial

    return hook_count(d) / factorial(d.n)
