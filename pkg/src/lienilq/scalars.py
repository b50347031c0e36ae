"""Scalar modes: exact rationals or a prime field F_p.

A mode is chosen per computation and never mixed within one. Exact mode is
the certifying authority; mod-p results carry Monte-Carlo semantics (a
nonzero residue mod p certifies a nonzero rational residue for integer
inputs, while a zero residue is only a necessary condition).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 2147483647  # 2^31 - 1
SECOND_PRIME = 2147483629
DEFAULT_PRIMES = (DEFAULT_PRIME, SECOND_PRIME)


@dataclass(frozen=True)
class Mode:
    """Scalar mode. ``p is None`` means exact rationals, else residues mod p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and self.p < 2:
            raise ValueError(f"modulus must be at least 2, got {self.p}")

    @property
    def is_exact(self) -> bool:
        return self.p is None

    def tag(self) -> str:
        return "exact" if self.p is None else f"mod{self.p}"

    def coerce(self, value):
        """Canonical scalar for this mode from an int or Fraction."""
        if self.p is None:
            return value if isinstance(value, Fraction) else Fraction(value)
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(
                    f"denominator of {value} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return value % self.p

    def inv(self, value):
        if self.p is None:
            c = value if isinstance(value, Fraction) else Fraction(value)
            return 1 / c
        return pow(value, -1, self.p)


EXACT = Mode(None)


def mod(p: int) -> Mode:
    return Mode(p)


def mode_from_tag(tag: str) -> Mode:
    if tag == "exact":
        return EXACT
    if tag.startswith("mod"):
        return Mode(int(tag[3:]))
    raise ValueError(f"unknown mode tag {tag!r}")


def format_scalar(c) -> str:
    """Render a scalar as an integer or ``a/b``."""
    if isinstance(c, Fraction):
        if c.denominator != 1:
            return f"{c.numerator}/{c.denominator}"
        return str(c.numerator)
    return str(c)


def parse_scalar(text: str, mode: Mode):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return mode.coerce(Fraction(int(num), int(den)))
    return mode.coerce(int(text))
