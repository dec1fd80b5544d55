"""Measure-theoretic directional entropy for the uniform measure.

Directions are vectors ``v = (x, y)`` in the plane of (shift, time).  With
``z_l = x + l*y`` and ``z_r = x + r*y`` taken from the minimal-memory span
``[l, r]`` of the rule, the closed form is

    max(|z_l|, |z_r|) ln m    if z_l z_r >= 0
    |z_r - z_l| ln m          otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .rule import LocalRule, arccot, as_rule, permutivity_report
from .tde import merge_grid


@dataclass(frozen=True)
class Direction:
    x: float
    y: float

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise ValueError("direction must be nonzero")

    @classmethod
    def from_angle(cls, theta: float) -> Direction:
        return cls(math.cos(theta), math.sin(theta))

    def z(self, rule: LocalRule) -> tuple[float, float]:
        return self.x + rule.l * self.y, self.x + rule.r * self.y

    def __neg__(self) -> Direction:
        return Direction(-self.x, -self.y)


def _as_direction(v) -> Direction:
    return v if isinstance(v, Direction) else Direction(*v)


def scale(v, alpha: float) -> Direction:
    """``alpha * v``; the entropy scales by ``|alpha|``."""
    if alpha == 0:
        raise ValueError("scaling by 0 gives the degenerate zero direction")
    v = _as_direction(v)
    return Direction(alpha * v.x, alpha * v.y)


def mtde_uniform(rule: LocalRule | str, v) -> float:
    rule = as_rule(rule)
    v = _as_direction(v)
    zl, zr = v.z(rule)
    if zl * zr >= 0:
        h = max(abs(zl), abs(zr))
    else:
        h = abs(zr - zl)
    return h * math.log(rule.m)


class CaseValue(NamedTuple):
    value: float | None
    case: int | None


def mtde_case_theorem(rule: LocalRule | str, v) -> CaseValue:
    """Value backed by one of the three permutivity cases, if any applies.

    Case 1: rightmost permutative and z_r dominates with the same sign.
    Case 2: leftmost permutative and z_l dominates with the same sign.
    Case 3: bipermutative with z_l z_r <= 0.
    """
    rule = as_rule(rule)
    v = _as_direction(v)
    rep = permutivity_report(rule)
    zl, zr = v.z(rule)
    ln_m = math.log(rule.m)
    if rep.rightmost and (0 <= zl <= zr or zr <= zl <= 0):
        return CaseValue(abs(zr) * ln_m, 1)
    if rep.leftmost and (zl <= zr <= 0 or 0 <= zr <= zl):
        return CaseValue(abs(zl) * ln_m, 2)
    if rep.bipermutative and zl * zr <= 0:
        return CaseValue(abs(zr - zl) * ln_m, 3)
    return CaseValue(None, None)


def sector_boundaries(rule: LocalRule | str) -> list[float]:
    """Angles in [0, 2 pi] where z_l or z_r vanishes on the unit circle."""
    rule = as_rule(rule)
    out = set()
    for c in {rule.l, rule.r}:
        a = arccot(-c)  # cos a + c sin a = 0
        out.update((a, a + math.pi))
    return sorted(out)


def mtde_circle_curve(rule: LocalRule | str, samples: int = 721) -> np.ndarray:
    """``(n, 2)`` table of ``(theta, h)`` over [0, 2 pi], sector boundaries included."""
    if samples < 2:
        raise ValueError("need at least 2 samples")
    rule = as_rule(rule)
    grid = merge_grid(np.linspace(0.0, 2 * math.pi, samples), sector_boundaries(rule))
    c, s = np.cos(grid), np.sin(grid)
    zl, zr = c + rule.l * s, c + rule.r * s
    h = np.where(zl * zr >= 0, np.maximum(np.abs(zl), np.abs(zr)), np.abs(zr - zl))
    return np.column_stack([grid, h * math.log(rule.m)])


def integer_direction_entropy(rule: LocalRule | str, s: int, t: int) -> float:
    """Entropy of ``sigma^s F^t`` under the uniform measure."""
    return mtde_uniform(rule, Direction(s, t))
