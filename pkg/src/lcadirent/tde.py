"""Closed-form topological directional entropy of linear CA plus shift.

For a prime power ``p**k`` with unit-coefficient extremes ``L <= 0 <= R``
the entropy in direction ``theta`` is piecewise::

    k ln p |cos t + R sin t|      0       <= t <= theta_L
    k ln p (R - L) |sin t|        theta_L <= t <= theta_R
    k ln p |cos t + L sin t|      theta_R <= t <= pi

with ``theta_L = arccot(-L)`` and ``theta_R = arccot(-R)``.  A composite
modulus contributes one such term per prime factor and the values add.
All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rule import LocalRule, arccot, as_rule, permutivity_report, project

BREAKPOINT_TOL = 1e-12


@dataclass(frozen=True)
class CurveTerm:
    p: int
    k: int
    L: int
    R: int

    def __post_init__(self):
        if not self.L <= 0 <= self.R:
            raise ValueError(f"need L <= 0 <= R, got L={self.L}, R={self.R}")

    @property
    def weight(self) -> float:
        return self.k * math.log(self.p)

    @property
    def theta_L(self) -> float:
        return arccot(-self.L)

    @property
    def theta_R(self) -> float:
        return arccot(-self.R)

    def piece(self, theta: float) -> str:
        if theta <= self.theta_L:
            return "right"
        if theta >= self.theta_R:
            return "left"
        return "middle"

    def expression(self, piece: str) -> tuple[int, int]:
        """``(a, b)`` such that the piece equals ``weight * |a cos t + b sin t|``."""
        if piece == "right":
            return 1, self.R
        if piece == "middle":
            return 0, self.R - self.L
        if piece == "left":
            return 1, self.L
        raise ValueError(piece)

    def value(self, theta):
        t = np.asarray(theta, dtype=float)
        c, s = np.cos(t), np.sin(t)
        v = np.where(t <= self.theta_L, np.abs(c + self.R * s),
                     np.where(t >= self.theta_R, np.abs(c + self.L * s),
                              (self.R - self.L) * np.abs(s)))
        v = self.weight * v
        return float(v) if v.ndim == 0 else v


@dataclass(frozen=True)
class EntropyCurve:
    terms: tuple[CurveTerm, ...]

    @property
    def breakpoints(self) -> tuple[float, ...]:
        pts = sorted(a for t in self.terms for a in (t.theta_L, t.theta_R))
        out: list[float] = []
        for a in pts:
            if not out or a - out[-1] > BREAKPOINT_TOL:
                out.append(a)
        return tuple(out)

    @property
    def modulus(self) -> int:
        return math.prod(t.p**t.k for t in self.terms)

    def __call__(self, theta):
        return eval_curve(self, theta)

    def to_json(self) -> dict:
        return {
            "kind": "tde",
            "terms": [{"p": t.p, "k": t.k, "L": t.L, "R": t.R} for t in self.terms],
            "breakpoints": list(self.breakpoints),
        }

    @classmethod
    def from_json(cls, data: dict) -> EntropyCurve:
        return cls(tuple(CurveTerm(d["p"], d["k"], d["L"], d["R"])
                         for d in data["terms"]))


def tde_prime_power(rule: LocalRule, report=None) -> CurveTerm:
    rule = as_rule(rule)
    mod = rule.modulus
    if not mod.is_prime_power:
        raise ValueError(f"modulus {rule.m} is not a prime power")
    if report is None:
        report = permutivity_report(rule)
    (f,) = report.factors
    return CurveTerm(f.p, f.k, f.L, f.R)


def tde_curve(rule: LocalRule | str) -> EntropyCurve:
    """One term per prime factor of the modulus, via the CRT projections."""
    rule = as_rule(rule)
    terms = []
    for i, (p, k) in enumerate(rule.modulus.factors):
        comp = project(rule, i)
        terms.append(tde_prime_power(comp))
    return EntropyCurve(tuple(terms))


def eval_curve(curve: EntropyCurve, theta):
    t = np.asarray(theta, dtype=float)
    if np.any((t < 0) | (t > math.pi)) or np.any(np.isnan(t)):
        raise ValueError("theta must lie in [0, pi]")
    total = np.zeros_like(t)
    for term in curve.terms:
        total = total + term.value(t)
    return float(total) if total.ndim == 0 else total


def topological_entropy(rule: LocalRule | str) -> float:
    """Entropy of the CA alone, i.e. the curve at theta = pi/2."""
    curve = tde_curve(rule)
    return math.fsum(t.k * (t.R - t.L) * math.log(t.p) for t in curve.terms)


@dataclass(frozen=True)
class Sector:
    lo: float
    hi: float
    pieces: tuple[tuple[CurveTerm, str], ...]

    def expressions(self) -> tuple[tuple[int, int, int, int], ...]:
        """Per term ``(p, k, a, b)`` for ``k ln p |a cos t + b sin t|``."""
        return tuple((t.p, t.k) + t.expression(pc) for t, pc in self.pieces)

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "terms": [
                {"p": t.p, "k": t.k, "piece": pc,
                 "cos": t.expression(pc)[0], "sin": t.expression(pc)[1],
                 "weight": t.weight}
                for t, pc in self.pieces
            ],
        }


def closed_form_report(curve: EntropyCurve) -> list[Sector]:
    """Split [0, pi] into sectors on which every term uses a single piece.

    Adjacent sectors with identical expressions are merged, so a term with
    ``L = R = 0`` (pure shift, ``|cos t|`` on both sides of pi/2) does not
    create a sector boundary.
    """
    edges = [0.0, *curve.breakpoints, math.pi]
    sectors: list[Sector] = []
    for lo, hi in zip(edges, edges[1:]):
        if hi - lo <= BREAKPOINT_TOL:
            continue
        mid = 0.5 * (lo + hi)
        pieces = tuple((t, t.piece(mid)) for t in curve.terms)
        sec = Sector(lo, hi, pieces)
        if sectors and sectors[-1].expressions() == sec.expressions():
            sec = Sector(sectors[-1].lo, hi, sectors[-1].pieces)
            sectors[-1] = sec
        else:
            sectors.append(sec)
    return sectors


def sample_curve(curve: EntropyCurve, samples: int = 721) -> np.ndarray:
    """``(n, 2)`` array of ``(theta, h)`` on a uniform grid over [0, pi]
    with every breakpoint inserted once."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    grid = merge_grid(np.linspace(0.0, math.pi, samples), curve.breakpoints)
    return np.column_stack([grid, eval_curve(curve, grid)])


def merge_grid(grid, extra, tol: float = BREAKPOINT_TOL) -> np.ndarray:
    """Sorted union of ``grid`` and ``extra``; grid points within ``tol`` of
    an extra point are dropped so each extra point appears exactly once."""
    grid = np.asarray(grid, dtype=float)
    extra = np.unique(np.asarray(extra, dtype=float))
    if extra.size:
        near = np.min(np.abs(grid[:, None] - extra[None, :]), axis=1) <= tol
        grid = grid[~near]
    return np.sort(np.concatenate([grid, extra]))
