"""Finite Laurent polynomials with coefficients in Z_m.

A polynomial is stored as a mapping ``exponent -> residue`` with zero
residues dropped, so ``LaurentPoly(4, {})`` is the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


def _clean(terms: Mapping[int, int], modulus: int) -> dict[int, int]:
    out = {}
    for e, c in terms.items():
        c %= modulus
        if c:
            out[int(e)] = c
    return out


@dataclass(frozen=True)
class LaurentPoly:
    modulus: int
    terms: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "terms", _clean(self.terms, self.modulus))

    @classmethod
    def constant(cls, modulus: int, c: int = 1) -> LaurentPoly:
        return cls(modulus, {0: c})

    @classmethod
    def monomial(cls, modulus: int, exponent: int, c: int = 1) -> LaurentPoly:
        return cls(modulus, {exponent: c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_exponent(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else 0

    def __getitem__(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def _check(self, other: LaurentPoly) -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.modulus, out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.modulus, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly(self.modulus,
                               {e: c * other for e, c in self.terms.items()})
        self._check(other)
        m = self.modulus
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = (out.get(e, 0) + c1 * c2) % m
        return LaurentPoly(m, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            raise ValueError("negative powers need invert()")
        result = LaurentPoly.constant(self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by X**k."""
        return LaurentPoly(self.modulus, {e + k: c for e, c in self.terms.items()})

    def reduce(self, modulus: int) -> LaurentPoly:
        """Reduce the coefficients modulo a divisor of the current modulus."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return LaurentPoly(modulus, self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.modulus, tuple(sorted(self.terms.items()))))

    def __str__(self) -> str:
        if not self.terms:
            return f"0 (mod {self.modulus})"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}X")
            else:
                parts.append(f"{c}X^{e}")
        return " + ".join(parts) + f" (mod {self.modulus})"
