"""Bernoulli and Markov measures on Z_m^Z and the directional bounds.

Entries may be exact (``Fraction``, ``int`` or ``"num/den"`` strings) or
floats.  Exact input stays exact: stationary vectors come out as
``Fraction`` for matrices up to ``EXACT_MAX_N`` states.  Entropies are
always floats in nats, with ``0 ln 0 = 0``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .rule import LocalRule, as_rule

EXACT_MAX_N = 64
FLOAT_TOL = 1e-12


class InvalidMeasure(ValueError):
    pass


def parse_entry(x):
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidMeasure(f"bad probability entry {x!r}") from exc
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    raise InvalidMeasure(f"bad probability entry {x!r}")


def _all_exact(values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def as_prob_vector(entries: Sequence) -> tuple:
    """Validate and return the entries as a tuple (Fractions if all exact)."""
    vals = [parse_entry(x) for x in entries]
    if not vals:
        raise InvalidMeasure("empty probability vector")
    if not _all_exact(vals):
        vals = [float(v) for v in vals]
    if any(v < 0 for v in vals):
        raise InvalidMeasure("negative probability")
    total = sum(vals)
    if isinstance(total, Fraction):
        if total != 1:
            raise InvalidMeasure(f"probabilities sum to {total}, not 1")
    elif abs(total - 1) > FLOAT_TOL:
        raise InvalidMeasure(f"probabilities sum to {total!r}, not 1")
    return tuple(vals)


@dataclass(frozen=True)
class StochasticMatrix:
    rows: tuple[tuple, ...]

    def __post_init__(self):
        rows = [[parse_entry(x) for x in row] for row in self.rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise InvalidMeasure("matrix must be square and nonempty")
        exact = all(_all_exact(r) for r in rows)
        if not exact:
            rows = [[float(x) for x in r] for r in rows]
        for i, r in enumerate(rows):
            if any(x < 0 for x in r):
                raise InvalidMeasure(f"row {i} has a negative entry")
            s = sum(r)
            if (s != 1) if exact else (abs(s - 1) > FLOAT_TOL):
                raise InvalidMeasure(f"row {i} sums to {s}, not 1")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def exact(self) -> bool:
        return isinstance(self.rows[0][0], Fraction)

    def to_array(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows])

    def is_irreducible(self) -> bool:
        ncomp, _ = connected_components(self.to_array() > 0, directed=True,
                                        connection="strong")
        return ncomp == 1

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[_render(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> StochasticMatrix:
        rows = data["rows"]
        if "n" in data and data["n"] != len(rows):
            raise InvalidMeasure(f"declared n={data['n']} but {len(rows)} rows")
        return cls(tuple(tuple(r) for r in rows))


def _render(x) -> str | float:
    if isinstance(x, Fraction):
        return str(x)
    return float(x)


def _stationary_exact(rows) -> tuple[Fraction, ...]:
    # solve pi (T - I) = 0 with sum(pi) = 1: replace the last equation
    n = len(rows)
    A = [[rows[j][i] - (1 if i == j else 0) for j in range(n)] + [Fraction(0)]
         for i in range(n)]
    A[-1] = [Fraction(1)] * n + [Fraction(1)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise InvalidMeasure("singular system; stationary vector not unique")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [a * inv for a in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return tuple(A[i][n] for i in range(n))


def _stationary_float(T: np.ndarray, max_iter: int = 100_000) -> np.ndarray:
    n = T.shape[0]
    A = np.vstack([T.T - np.eye(n), np.ones(n)])
    b = np.zeros(n + 1)
    b[-1] = 1.0
    pi, *_ = np.linalg.lstsq(A, b, rcond=None)
    if np.all(pi >= -1e-14) and np.max(np.abs(pi @ T - pi)) <= FLOAT_TOL:
        return np.clip(pi, 0, None) / np.clip(pi, 0, None).sum()
    # lazy chain avoids periodic oscillation
    P = 0.5 * (T + np.eye(n))
    pi = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = pi @ P
        if np.max(np.abs(nxt - pi)) <= FLOAT_TOL:
            return nxt / nxt.sum()
        pi = nxt
    raise InvalidMeasure("power iteration did not converge")


def stationary(T: StochasticMatrix | Sequence) -> tuple:
    """Stationary row vector ``pi`` with ``pi T = pi`` and ``sum(pi) = 1``."""
    if not isinstance(T, StochasticMatrix):
        T = StochasticMatrix(tuple(map(tuple, T)))
    if not T.is_irreducible():
        warnings.warn("stochastic matrix is reducible; the stationary vector "
                      "may not be unique", stacklevel=2)
    if T.exact and T.n <= EXACT_MAX_N:
        try:
            return _stationary_exact(T.rows)
        except InvalidMeasure:
            pass
    return tuple(float(x) for x in _stationary_float(T.to_array()))


@dataclass(frozen=True)
class MarkovMeasure:
    matrix: StochasticMatrix
    stationary: tuple

    @classmethod
    def from_matrix(cls, T) -> MarkovMeasure:
        if not isinstance(T, StochasticMatrix):
            T = StochasticMatrix(tuple(map(tuple, T)))
        return cls(T, stationary(T))

    @property
    def exact(self) -> bool:
        return _all_exact(self.stationary)

    @property
    def n(self) -> int:
        return self.matrix.n

    def residual(self) -> float:
        pi = np.array([float(x) for x in self.stationary])
        return float(np.max(np.abs(pi @ self.matrix.to_array() - pi)))

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.to_json(),
            "stationary": [_render(x) for x in self.stationary],
            "stationary_decimal": [float(x) for x in self.stationary],
            "exact": self.exact,
        }

    @classmethod
    def from_json(cls, data: dict) -> MarkovMeasure:
        T = StochasticMatrix.from_json(data["matrix"])
        return cls(T, as_prob_vector(data["stationary"]))


def _plogp(x) -> float:
    x = float(x)
    return x * math.log(x) if x > 0 else 0.0


def shannon_entropy(p: Sequence) -> float:
    p = as_prob_vector(p)
    return 0.0 - math.fsum(_plogp(x) for x in p)


class EntropyRate(NamedTuple):
    rate: float
    row_entropies: tuple[float, ...]


def entropy_rate(mu: MarkovMeasure | StochasticMatrix | Sequence) -> EntropyRate:
    """``-sum_i pi_i sum_j t_ij ln t_ij`` and the row entropies ``H_i``."""
    if not isinstance(mu, MarkovMeasure):
        mu = MarkovMeasure.from_matrix(mu)
    H = tuple(0.0 - math.fsum(_plogp(t) for t in row) for row in mu.matrix.rows)
    rate = math.fsum(float(p) * h for p, h in zip(mu.stationary, H))
    return EntropyRate(rate, H)


def _degenerate(rule: LocalRule) -> bool:
    # every coefficient divisible by p (the zero rule included)
    return all(a % p == 0 for p in rule.modulus.primes for a in rule.coeffs)


def _prime_power_rule(rule, n: int) -> LocalRule:
    rule = as_rule(rule)
    if not rule.modulus.is_prime_power:
        raise ValueError(f"modulus {rule.m} is not a prime power")
    if n != rule.m:
        raise ValueError(f"measure has {n} symbols but the rule works mod {rule.m}")
    return rule


def bernoulli_bound(rule: LocalRule | str, p_vec: Sequence, v) -> float:
    """Upper bound ``|q| (r - l) H(p_vec)`` for direction ``v = (s, q)``."""
    p_vec = as_prob_vector(p_vec)
    rule = _prime_power_rule(rule, len(p_vec))
    if _degenerate(rule):
        return 0.0
    _, q = v
    return abs(q) * (rule.r - rule.l) * shannon_entropy(p_vec)


def markov_bound(rule: LocalRule | str, mu: MarkovMeasure, v) -> float:
    """Upper bound ``|q| (r - l) h(mu)`` for direction ``v = (s, q)``."""
    rule = _prime_power_rule(rule, mu.n)
    if _degenerate(rule):
        return 0.0
    _, q = v
    return abs(q) * (rule.r - rule.l) * entropy_rate(mu).rate


def markov_directional(mu: MarkovMeasure, direction) -> float:
    _, b = direction
    return abs(b) * entropy_rate(mu).rate


def cylinder_prob(measure, word: Sequence[int]):
    """Probability of the cylinder fixing ``word`` on consecutive sites.

    ``measure`` is a probability vector (Bernoulli) or a MarkovMeasure.
    """
    if len(word) == 0:
        raise ValueError("empty word")
    if isinstance(measure, MarkovMeasure):
        n = measure.n
        _check_symbols(word, n)
        prob = measure.stationary[word[0]]
        rows = measure.matrix.rows
        for a, b in zip(word, word[1:]):
            prob = prob * rows[a][b]
        return prob
    p = as_prob_vector(measure)
    _check_symbols(word, len(p))
    prob = Fraction(1) if _all_exact(p) else 1.0
    for j in word:
        prob = prob * p[j]
    return prob


def _check_symbols(word, n):
    for j in word:
        if not 0 <= j < n:
            raise ValueError(f"symbol {j} out of range 0..{n - 1}")
