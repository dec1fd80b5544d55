"""Linear local rules over Z_m and their algebra.

A rule ``f(x_l, ..., x_r) = sum a_i x_i (mod m)`` is stored by its left
index ``l`` and the coefficient tuple ``(a_l, ..., a_r)``.  Rules map to
Laurent polynomials through ``x_i <-> X**(-i)``; composition of the
cellular automata is then the product of polynomials.

Text form (used by :func:`parse_rule` and ``str(rule)``)::

    rule  := term ("+" term)* "%" modulus
    term  := coeff "x[" index "]"

for example ``"2x[-1]+2x[0]+3x[1] % 4"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .laurent import LaurentPoly

MAX_MODULUS = 2**31 - 1


class RuleSyntaxError(ValueError):
    """Malformed rule text.  ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class NotInvertible(ValueError):
    """Raised by :func:`invert`; ``primes`` lists the offending prime factors."""

    def __init__(self, rule: LocalRule, primes: Sequence[int]):
        self.rule = rule
        self.primes = tuple(primes)
        super().__init__(
            f"{rule} is not invertible: need exactly one unit coefficient "
            f"modulo each prime, violated for p in {list(self.primes)}")


def arccot(t: float) -> float:
    """Inverse cotangent with range (0, pi)."""
    return math.pi / 2 - math.atan(t)


@dataclass(frozen=True)
class Modulus:
    m: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        for p, k in self.factors:
            prod *= p**k
        if prod != self.m:
            raise ValueError(f"factors {self.factors} do not multiply to {self.m}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**k for p, k in self.factors)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factors) == 1


def factorize(m: int) -> Modulus:
    """Prime factorization by trial division."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    factors = []
    n, p = m, 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return Modulus(m, tuple(factors))


@dataclass(frozen=True)
class LocalRule:
    """Linear local rule ``sum_{i=l}^{r} a_i x_i mod m``.

    Residues are reduced on construction.  The span is *not* trimmed;
    call :func:`normalize` for the minimal-memory form.
    """

    m: int
    l: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not 2 <= self.m <= MAX_MODULUS:
            raise ValueError(f"modulus must be in [2, {MAX_MODULUS}], got {self.m}")
        if not self.coeffs:
            raise ValueError("a rule needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(a) % self.m for a in self.coeffs))

    @classmethod
    def from_terms(cls, m: int, terms: dict[int, int]) -> LocalRule:
        """Build from ``{index: coefficient}``; absent indices are zero."""
        if not terms:
            return zero_rule(m)
        lo, hi = min(terms), max(terms)
        return cls(m, lo, tuple(terms.get(i, 0) for i in range(lo, hi + 1)))

    @property
    def r(self) -> int:
        return self.l + len(self.coeffs) - 1

    @property
    def span(self) -> tuple[int, int]:
        return self.l, self.r

    @cached_property
    def modulus(self) -> Modulus:
        return factorize(self.m)

    def coeff(self, i: int) -> int:
        if self.l <= i <= self.r:
            return self.coeffs[i - self.l]
        return 0

    def terms(self) -> dict[int, int]:
        """Nonzero coefficients by index."""
        return {self.l + j: a for j, a in enumerate(self.coeffs) if a}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_normalized(self) -> bool:
        if self.is_zero():
            return self.l == 0 and len(self.coeffs) == 1
        return self.coeffs[0] != 0 and self.coeffs[-1] != 0

    def __str__(self) -> str:
        terms = self.terms()
        if not terms:
            return f"0x[0] % {self.m}"
        body = "+".join(f"{a}x[{i}]" for i, a in sorted(terms.items()))
        return f"{body} % {self.m}"

    def __call__(self, segment: np.ndarray, start: int = 0):
        return step(self, segment, start)


def zero_rule(m: int) -> LocalRule:
    return LocalRule(m, 0, (0,))


def identity_rule(m: int) -> LocalRule:
    return LocalRule(m, 0, (1,))


_TOKEN = re.compile(r"\s*(?:(?P<term>(?P<coeff>\d+)\s*x\s*\[\s*(?P<index>[+-]?\d+)\s*\])"
                    r"|(?P<plus>\+)|(?P<mod>%))")


def parse_rule(text: str) -> LocalRule:
    """Parse ``"2x[-1]+2x[0]+3x[1] % 4"``.  The result is not normalized."""
    pos = 0
    terms: dict[int, int] = {}
    expect_term = True
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            if pos >= len(text.rstrip()):
                raise RuleSyntaxError("missing '% modulus'", text, pos)
            raise RuleSyntaxError("unexpected input", text, _skip_ws(text, pos))
        at = match.start(match.lastgroup)
        if match.group("term"):
            if not expect_term:
                raise RuleSyntaxError("expected '+' or '%'", text, at)
            index = int(match.group("index"))
            if index in terms:
                raise RuleSyntaxError(f"duplicate index {index}", text, at)
            terms[index] = int(match.group("coeff"))
            expect_term = False
        elif match.group("plus"):
            if expect_term:
                raise RuleSyntaxError("expected a term", text, at)
            expect_term = True
        else:
            if expect_term:
                what = "empty rule" if not terms else "expected a term"
                raise RuleSyntaxError(what, text, at)
            pos = match.end()
            break
        pos = match.end()

    tail = re.match(r"\s*(\d+)\s*$", text[pos:])
    if tail is None:
        raise RuleSyntaxError("expected a nonnegative integer modulus", text,
                              _skip_ws(text, pos))
    m = int(tail.group(1))
    if m < 2:
        raise RuleSyntaxError(f"modulus must be >= 2, got {m}", text,
                              pos + tail.start(1))
    if m > MAX_MODULUS:
        raise RuleSyntaxError(f"modulus exceeds {MAX_MODULUS}", text,
                              pos + tail.start(1))
    lo, hi = min(terms), max(terms)
    return LocalRule(m, lo, tuple(terms.get(i, 0) for i in range(lo, hi + 1)))


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def normalize(rule: LocalRule) -> LocalRule:
    """Trim zero coefficients at both ends (minimal memory)."""
    c = rule.coeffs
    nz = [j for j, a in enumerate(c) if a]
    if not nz:
        return zero_rule(rule.m)
    lo, hi = nz[0], nz[-1]
    return LocalRule(rule.m, rule.l + lo, c[lo:hi + 1])


def as_rule(rule: LocalRule | str) -> LocalRule:
    """Parse text if needed and return the normalized rule."""
    if isinstance(rule, str):
        rule = parse_rule(rule)
    return normalize(rule)


# -- permutivity ------------------------------------------------------------

@dataclass(frozen=True)
class FactorPermutivity:
    p: int
    k: int
    P: tuple[int, ...]
    L: int
    R: int

    @property
    def theta_L(self) -> float:
        return arccot(-self.L)

    @property
    def theta_R(self) -> float:
        return arccot(-self.R)


@dataclass(frozen=True)
class PermutivityReport:
    factors: tuple[FactorPermutivity, ...]
    leftmost: bool
    rightmost: bool

    @property
    def bipermutative(self) -> bool:
        return self.leftmost and self.rightmost

    def for_prime(self, p: int) -> FactorPermutivity:
        for f in self.factors:
            if f.p == p:
                return f
        raise KeyError(p)


def permutivity_report(rule: LocalRule) -> PermutivityReport:
    rule = normalize(rule)
    per = []
    for p, k in rule.modulus.factors:
        P = sorted({0} | {i for i, a in rule.terms().items() if a % p})
        per.append(FactorPermutivity(p, k, tuple(P), P[0], P[-1]))
    m = rule.m
    left = rule.l < 0 and math.gcd(rule.coeffs[0], m) == 1
    right = rule.r > 0 and math.gcd(rule.coeffs[-1], m) == 1
    return PermutivityReport(tuple(per), left, right)


# -- prime power components -------------------------------------------------

def project(rule: LocalRule, i: int) -> LocalRule:
    """Component of ``rule`` modulo the ``i``-th prime power of its modulus."""
    q = rule.modulus.prime_powers[i]
    return normalize(LocalRule(q, rule.l, rule.coeffs))


def crt(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Solve x = residues[i] (mod moduli[i]) for pairwise coprime moduli."""
    x, M = 0, 1
    for a, q in zip(residues, moduli):
        t = ((a - x) * pow(M, -1, q)) % q
        x += M * t
        M *= q
    return x % M


def crt_combine(components: Sequence[LocalRule]) -> LocalRule:
    """Recombine rules over coprime moduli into one rule over their product."""
    moduli = [c.m for c in components]
    m = math.prod(moduli)
    indices = set()
    for c in components:
        indices.update(c.terms())
    terms = {i: crt([c.coeff(i) for c in components], moduli) for i in indices}
    return normalize(LocalRule.from_terms(m, terms))


# -- Laurent correspondence, composition, inversion -------------------------

def to_laurent(rule: LocalRule) -> LaurentPoly:
    return LaurentPoly(rule.m, {-i: a for i, a in rule.terms().items()})


def from_laurent(poly: LaurentPoly, modulus: int | None = None) -> LocalRule:
    m = poly.modulus if modulus is None else modulus
    if modulus is not None and modulus != poly.modulus:
        poly = poly.reduce(modulus)
    return normalize(LocalRule.from_terms(m, {-e: c for e, c in poly.terms.items()}))


def compose(f: LocalRule, g: LocalRule) -> LocalRule:
    """Rule of the automaton ``F o G`` (linear rules commute)."""
    if f.m != g.m:
        raise ValueError(f"modulus mismatch: {f.m} vs {g.m}")
    return from_laurent(to_laurent(f) * to_laurent(g))


def power(f: LocalRule, n: int) -> LocalRule:
    if n < 0:
        raise ValueError("use invert() for negative powers")
    return from_laurent(to_laurent(f) ** n)


def unit_positions(rule: LocalRule, p: int) -> list[int]:
    return [i for i, a in rule.terms().items() if a % p]


def is_invertible(rule: LocalRule) -> bool:
    rule = normalize(rule)
    return all(len(unit_positions(rule, p)) == 1 for p in rule.modulus.primes)


def _invert_prime_power(rule: LocalRule, p: int, k: int) -> LocalRule:
    q = p**k
    (j,) = unit_positions(rule, p)
    U = to_laurent(rule)
    a_inv = pow(rule.coeff(j), -1, q)
    # U = a_j X^{-j} (1 + pN), pN nilpotent mod p^k
    pN = (U * a_inv).shift(j) - LaurentPoly.constant(q)
    neg = -pN
    series = LaurentPoly.constant(q)
    term = LaurentPoly.constant(q)
    for _ in range(1, k):
        term = term * neg
        if term.is_zero():
            break
        series = series + term
    S = (series * a_inv).shift(j)
    return from_laurent(S)


def invert(rule: LocalRule) -> LocalRule:
    """Inverse rule g with compose(rule, g) equal to the identity rule."""
    rule = normalize(rule)
    bad = [p for p in rule.modulus.primes if len(unit_positions(rule, p)) != 1]
    if bad:
        raise NotInvertible(rule, bad)
    parts = [_invert_prime_power(project(rule, i), p, k)
             for i, (p, k) in enumerate(rule.modulus.factors)]
    if len(parts) == 1:
        return parts[0]
    return crt_combine(parts)


# -- dynamics ---------------------------------------------------------------

def step(rule: LocalRule, segment, start: int = 0) -> tuple[np.ndarray, int]:
    """Apply the rule to a finite segment with no padding.

    ``segment`` holds sites ``start .. start+len-1`` along its last axis
    (leading axes are a batch).  Returns the image on sites
    ``start-l .. start+len-1-r`` together with its first index.
    """
    seg = np.asarray(segment, dtype=np.int64)
    width = rule.r - rule.l + 1
    n = seg.shape[-1]
    if n < width:
        raise ValueError(f"segment of length {n} is shorter than the rule span {width}")
    out_len = n - width + 1
    m = rule.m
    out = np.zeros(seg.shape[:-1] + (out_len,), dtype=np.int64)
    for j, a in enumerate(rule.coeffs):
        if a:
            out = (out + a * seg[..., j:j + out_len]) % m
    return out, start - rule.l
