"""Brute-force space-time pattern counting.

The window ``W(half_width, rows, theta)`` holds, for each time row
``t = 0..rows``, the sites ``n`` with ``|n - t cot(theta)| <= half_width``
(the closed parallelogram, initial row included).
Every cell of the window is a function of the initial configuration on a
finite interval of sites (the dependence cone), so the number of distinct
window patterns can be found by enumerating that interval.

Two configurations that differ somewhere in the window are separated by
any small enough epsilon, so the epsilon of the separated-set definition
drops out and only pattern distinctness is counted.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64); the seed
is carried in every result.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .measures import MarkovMeasure, as_prob_vector
from .rule import LocalRule, as_rule, step

DEFAULT_BUDGET = 2**24
CHUNK = 2**16


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CallableRule:
    """Arbitrary (e.g. nonlinear) local rule on the span ``[l, r]``.

    ``fn`` receives an integer array of shape ``(..., r - l + 1)`` holding
    the neighbourhoods and returns the new symbols, shape ``(...)``.
    """

    m: int
    l: int
    r: int
    fn: Callable[[np.ndarray], np.ndarray]
    name: str = "callable"

    def __str__(self) -> str:
        return f"{self.name} [{self.l},{self.r}] % {self.m}"


def _normalize_any(rule):
    if isinstance(rule, CallableRule):
        return rule
    return as_rule(rule)


def advance(rule, states: np.ndarray, start: int) -> tuple[np.ndarray, int]:
    """One time step of a batch of finite segments (no wraparound)."""
    if isinstance(rule, LocalRule):
        return step(rule, states, start)
    width = rule.r - rule.l + 1
    out_len = states.shape[-1] - width + 1
    if out_len < 1:
        raise ValueError("segment shorter than the rule span")
    windows = np.lib.stride_tricks.sliding_window_view(states, width, axis=-1)
    out = np.asarray(rule.fn(windows), dtype=np.int64) % rule.m
    return out, start - rule.l


@dataclass(frozen=True)
class WindowSpec:
    half_width: int
    rows: int
    theta: float

    def __post_init__(self):
        if self.half_width < 1:
            raise ValueError("half_width must be >= 1")
        if self.rows < 1:
            raise ValueError("rows must be >= 1")
        if not 0 < self.theta < math.pi or math.sin(self.theta) <= 0:
            raise ValueError("theta must lie strictly between 0 and pi")

    def row_sites(self, t: int) -> range:
        c = t * math.cos(self.theta) / math.sin(self.theta)
        lo = math.ceil(c - self.half_width - 1e-9)
        hi = math.floor(c + self.half_width + 1e-9)
        return range(lo, hi + 1)


def lattice_cells(w: WindowSpec) -> list[tuple[int, int]]:
    return [(n, t) for t in range(w.rows + 1) for n in w.row_sites(t)]


def dependence_cone(rule, w: WindowSpec) -> tuple[int, int]:
    rule = _normalize_any(rule)
    cells = lattice_cells(w)
    return (min(n + t * rule.l for n, t in cells),
            max(n + t * rule.r for n, t in cells))


def window_patterns(rule, w: WindowSpec, segments: np.ndarray, start: int) -> np.ndarray:
    """Window contents for a batch of initial segments starting at site ``start``.

    Returns an array of shape ``(batch, n_cells)`` with cells in the order
    of :func:`lattice_cells`.
    """
    rule = _normalize_any(rule)
    state = np.asarray(segments, dtype=np.int64)
    pos = start
    cols = []
    for t in range(w.rows + 1):
        if t:
            state, pos = advance(rule, state, pos)
        sites = w.row_sites(t)
        lo, hi = sites.start - pos, sites.stop - pos
        if lo < 0 or hi > state.shape[-1]:
            raise ValueError("segment does not cover the dependence cone")
        cols.append(state[..., lo:hi])
    return np.concatenate(cols, axis=-1)


def _encode(patterns: np.ndarray, m: int) -> np.ndarray:
    n_cells = patterns.shape[-1]
    if n_cells * math.log2(m) < 63:
        weights = m ** np.arange(n_cells, dtype=np.int64)
        return patterns @ weights
    # too wide for int64: compare raw rows
    arr = np.ascontiguousarray(patterns.astype(np.int64))
    return arr.view(np.dtype((np.void, arr.dtype.itemsize * n_cells))).ravel()


def _digits(indices: np.ndarray, m: int, length: int) -> np.ndarray:
    powers = m ** np.arange(length, dtype=np.int64)
    return (indices[:, None] // powers[None, :]) % m


@dataclass(frozen=True)
class PatternCount:
    count: int
    mode: str
    cone: tuple[int, int]
    rows: int
    seed: int | None = None
    budget: int | None = None

    @property
    def estimate_nats_per_row(self) -> float:
        return math.log(self.count) / self.rows


def count_patterns(rule, w: WindowSpec, mode: str = "exact",
                   budget: int = DEFAULT_BUDGET, seed: int = 0) -> PatternCount:
    """Number of distinct window patterns over all initial configurations.

    ``mode="exact"`` enumerates every segment on the dependence cone and
    needs ``m**len(cone) <= budget``.  ``mode="sampled"`` draws ``budget``
    random segments and returns a lower bound.
    """
    rule = _normalize_any(rule)
    A, B = dependence_cone(rule, w)
    length = B - A + 1
    m = rule.m
    seen = []
    if mode == "exact":
        total = m**length
        if total > budget:
            raise BudgetExceeded(
                f"exact enumeration needs {m}^{length} = {total} segments, "
                f"budget is {budget}")
        for lo in range(0, total, CHUNK):
            idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
            pats = window_patterns(rule, w, _digits(idx, m, length), A)
            seen.append(np.unique(_encode(pats, m)))
        return PatternCount(len(np.unique(np.concatenate(seen))), "exact", (A, B), w.rows)
    if mode == "sampled":
        rng = np.random.default_rng(seed)
        left = budget
        while left > 0:
            n = min(CHUNK, left)
            segs = rng.integers(0, m, size=(n, length), dtype=np.int64)
            pats = window_patterns(rule, w, segs, A)
            seen.append(np.unique(_encode(pats, m)))
            left -= n
        count = len(np.unique(np.concatenate(seen)))
        return PatternCount(count, "sampled", (A, B), w.rows, seed, budget)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class TDEEstimate:
    rule: str
    theta: float
    half_width: int
    rows: int
    mode: str
    seed: int | None
    count: int

    @property
    def nats_per_row(self) -> float:
        return math.log(self.count) / self.rows

    @property
    def nats_per_site(self) -> float:
        return math.log(self.count) / ((2 * self.half_width + 1) * self.rows
                                       * math.sin(self.theta))

    @property
    def nats_per_length(self) -> float:
        # rows are unit steps in time; the window has length rows / sin(theta)
        return math.log(self.count) * math.sin(self.theta) / self.rows

    def to_json(self) -> dict:
        return {
            "rule": self.rule, "theta": self.theta,
            "half_width": self.half_width, "rows": self.rows,
            "mode": self.mode, "seed": self.seed, "count": self.count,
            "nats_per_row": self.nats_per_row,
            "nats_per_site": self.nats_per_site,
            "nats_per_length": self.nats_per_length,
        }

    @classmethod
    def from_json(cls, d: dict) -> TDEEstimate:
        return cls(d["rule"], d["theta"], d["half_width"], d["rows"],
                   d["mode"], d["seed"], d["count"])


def estimate_tde(rule, theta: float, half_width: int, rows: int,
                 mode: str = "exact", budget: int = DEFAULT_BUDGET,
                 seed: int = 0) -> TDEEstimate:
    """Empirical directional entropy from the window pattern count.

    ``nats_per_row = ln(N) / rows`` tends to the closed form at
    theta = pi/2 as rows grows, with a transient of
    ``(2 half_width + 1) ln m / rows`` from the initial row.
    """
    rule = _normalize_any(rule)
    w = WindowSpec(half_width, rows, theta)
    pc = count_patterns(rule, w, mode, budget, seed)
    return TDEEstimate(str(rule), theta, half_width, rows, mode,
                       seed if mode == "sampled" else None, pc.count)


# -- measure-theoretic plug-in estimate --------------------------------------

def sample_configurations(measure, length: int, samples: int,
                          rng: np.random.Generator) -> np.ndarray:
    """``samples`` i.i.d. segments of ``length`` sites from a Bernoulli
    probability vector or a (stationary) Markov measure."""
    if isinstance(measure, MarkovMeasure):
        pi = np.array([float(x) for x in measure.stationary])
        cum = np.cumsum(measure.matrix.to_array(), axis=1)
        out = np.empty((samples, length), dtype=np.int64)
        out[:, 0] = _draw(np.cumsum(pi), rng.random(samples))
        for j in range(1, length):
            u = rng.random(samples)
            out[:, j] = _draw_rows(cum[out[:, j - 1]], u)
        return out
    p = np.array([float(x) for x in as_prob_vector(measure)])
    return rng.choice(len(p), size=(samples, length), p=p).astype(np.int64)


def _draw(cum: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)


def _draw_rows(cum_rows: np.ndarray, u: np.ndarray) -> np.ndarray:
    idx = (cum_rows <= u[:, None]).sum(axis=1)
    return np.minimum(idx, cum_rows.shape[1] - 1)


def empirical_measure_entropy(measure, rule, direction, block_radius: int,
                              depth: int, samples: int, seed: int = 0) -> float:
    """Plug-in estimate of the entropy of ``sigma^s F^q`` per step.

    Records the blocks ``(sigma^{sk} F^{qk} x)[-i..i]`` for ``k < depth``,
    computes the empirical joint entropy of the block sequence and divides
    by ``depth``.  Biased low for finite samples.
    """
    rule = _normalize_any(rule)
    s, q = direction
    i, n = block_radius, depth
    if q < 0:
        raise ValueError("need q >= 0; use the inverse rule for q < 0")
    if samples < 1 or n < 1 or i < 0:
        raise ValueError("need samples >= 1, depth >= 1, block_radius >= 0")
    A = min(-i + s * k + q * k * rule.l for k in range(n))
    B = max(i + s * k + q * k * rule.r for k in range(n))
    rng = np.random.default_rng(seed)
    state = sample_configurations(measure, B - A + 1, samples, rng)
    pos = A
    blocks = []
    t = 0
    for k in range(n):
        while t < q * k:
            state, pos = advance(rule, state, pos)
            t += 1
        lo = -i + s * k - pos
        blocks.append(state[:, lo:lo + 2 * i + 1])
    joint = np.concatenate(blocks, axis=1)
    _, counts = np.unique(_encode(joint, rule.m), return_counts=True)
    if len(counts) > samples / 10:
        warnings.warn(f"{len(counts)} distinct block sequences from {samples} "
                      "samples; the plug-in estimate is strongly biased",
                      stacklevel=2)
    freq = counts / samples
    return float(-np.sum(freq * np.log(freq)) / n)
