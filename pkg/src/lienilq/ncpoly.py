"""Exact arithmetic in the free associative algebra A_n on x_1, ..., x_n.

Monomials are words: tuples of 1-based generator indices, with the empty
word as the unit. A polynomial is a finitely supported map from words to
scalars in a fixed mode; zero coefficients are never stored, so equality
is map equality. All values are immutable by convention and safe to share.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import AmbientMismatchError, ModeMismatchError
from .scalars import EXACT, Mode, format_scalar, parse_scalar

Word = tuple


def deglex_key(word: Word):
    """Sort key for degree-lexicographic order with x1 < x2 < ... < xn."""
    return (len(word), word)


def multidegree_of(word: Word, n: int) -> tuple:
    """Letter-count vector of a word in ambient A_n."""
    exps = [0] * n
    for letter in word:
        if not 1 <= letter <= n:
            raise AmbientMismatchError(f"letter x{letter} outside ambient A_{n}")
        exps[letter - 1] += 1
    return tuple(exps)


class NCPoly:
    """Element of A_n with scalars in a fixed mode."""

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n: int, terms: Mapping[Word, object], mode: Mode = EXACT,
                 *, _raw: bool = False):
        self.n = n
        self.mode = mode
        if _raw:
            self.terms = dict(terms)
            return
        clean: dict = {}
        for word, coeff in terms.items():
            word = tuple(word)
            for letter in word:
                if not 1 <= letter <= n:
                    raise AmbientMismatchError(
                        f"letter x{letter} outside ambient A_{n}")
            c = mode.coerce(coeff)
            if c != 0:
                clean[word] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, mode: Mode = EXACT) -> "NCPoly":
        return cls(n, {}, mode, _raw=True)

    @classmethod
    def unit(cls, n: int, mode: Mode = EXACT) -> "NCPoly":
        return cls(n, {(): mode.coerce(1)}, mode, _raw=True)

    @classmethod
    def generator(cls, i: int, n: int, mode: Mode = EXACT) -> "NCPoly":
        if not 1 <= i <= n:
            raise AmbientMismatchError(f"generator x{i} outside ambient A_{n}")
        return cls(n, {(i,): mode.coerce(1)}, mode, _raw=True)

    @classmethod
    def word(cls, letters: Iterable[int], n: int, mode: Mode = EXACT) -> "NCPoly":
        return cls(n, {tuple(letters): 1}, mode)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.n == other.n and self.mode == other.mode
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms.items())))

    def _check(self, other: "NCPoly"):
        if self.n != other.n:
            raise AmbientMismatchError(
                f"ambient mismatch: A_{self.n} vs A_{other.n}")
        if self.mode != other.mode:
            raise ModeMismatchError(
                f"mode mismatch: {self.mode.tag()} vs {other.mode.tag()}")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.terms)
        p = self.mode.p
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if p is not None:
                v %= p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(self.n, out, self.mode, _raw=True)

    def __neg__(self) -> "NCPoly":
        p = self.mode.p
        if p is None:
            out = {w: -c for w, c in self.terms.items()}
        else:
            out = {w: (-c) % p for w, c in self.terms.items()}
        return NCPoly(self.n, out, self.mode, _raw=True)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, scalar) -> "NCPoly":
        c0 = self.mode.coerce(scalar)
        if c0 == 0:
            return NCPoly.zero(self.n, self.mode)
        p = self.mode.p
        if p is None:
            out = {w: c * c0 for w, c in self.terms.items()}
        else:
            out = {w: c * c0 % p for w, c in self.terms.items()}
        return NCPoly(self.n, out, self.mode, _raw=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        p = self.mode.p
        if p is None:
            out = {w: c for w, c in out.items() if c != 0}
        else:
            out = {w: v for w, c in out.items() if (v := c % p)}
        return NCPoly(self.n, out, self.mode, _raw=True)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- grading -----------------------------------------------------------

    def multidegree(self) -> tuple | None:
        """Common multidegree if homogeneous, else None. Zero counts as
        homogeneous of any degree and returns None."""
        degs = {multidegree_of(w, self.n) for w in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({multidegree_of(w, self.n) for w in self.terms}) <= 1

    def __repr__(self):
        return f"NCPoly({self.n}, {format_poly(self)!r}, {self.mode.tag()})"

    def __str__(self):
        return format_poly(self)


def commutator(p: NCPoly, q: NCPoly) -> NCPoly:
    """[p, q] = pq - qp."""
    return p * q - q * p


def left_normed_bracket(entries: list) -> NCPoly:
    """Fold the commutator left to right: [...[[a1,a2],a3],...,ak].

    A single entry is returned unchanged.
    """
    if not entries:
        raise ValueError("left_normed_bracket needs at least one entry")
    acc = entries[0]
    for e in entries[1:]:
        acc = commutator(acc, e)
    return acc


def homogeneous_components(p: NCPoly) -> dict:
    """Split into multihomogeneous parts, keyed by multidegree."""
    buckets: dict = {}
    for w, c in p.terms.items():
        buckets.setdefault(multidegree_of(w, p.n), {})[w] = c
    return {d: NCPoly(p.n, t, p.mode, _raw=True) for d, t in buckets.items()}


# -- textual format ---------------------------------------------------------
#
# Terms joined by " + " / " - ", words as x1*x2*x1, rational coefficients as
# a/b, the unit word as 1. Examples: "x1*x2 - x2*x1", "1/2*x1 + 3", "0".

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+(?:/\d+)?)(?:\*(?P<word1>x\d+(?:\*x\d+)*))?"
    r"|(?P<word2>x\d+(?:\*x\d+)*)|(?P<one>1))$")


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    items = sorted(p.terms.items(), key=lambda kv: deglex_key(kv[0]))
    pieces = []
    for word, coeff in items:
        if p.mode.is_exact and coeff < 0:
            sign, mag = "-", -coeff
        else:
            sign, mag = "+", coeff
        wtxt = "*".join(f"x{l}" for l in word) if word else "1"
        if mag == 1 and word:
            body = wtxt
        elif word:
            body = f"{format_scalar(mag)}*{wtxt}"
        else:
            body = format_scalar(mag)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, n: int, mode: Mode = EXACT) -> NCPoly:
    """Parse the textual format produced by :func:`format_poly`."""
    text = text.strip()
    if text in ("", "0"):
        return NCPoly.zero(n, mode)
    chunks = re.split(r"\s+([+-])\s+", text)
    if chunks[0].startswith("-"):
        chunks[0] = chunks[0][1:].strip()
        signs = [-1]
    else:
        signs = [1]
    bodies = [chunks[0]]
    for k in range(1, len(chunks), 2):
        signs.append(1 if chunks[k] == "+" else -1)
        bodies.append(chunks[k + 1])
    terms: dict = {}
    for sign, body in zip(signs, bodies):
        m = _TERM_RE.match(body.strip())
        if not m:
            raise ValueError(f"cannot parse term {body!r}")
        if m.group("one"):
            coeff, word = 1, ()
        elif m.group("word2"):
            coeff, word = 1, _parse_word(m.group("word2"))
        else:
            coeff = parse_scalar(m.group("coeff"), EXACT)
            word = _parse_word(m.group("word1")) if m.group("word1") else ()
        terms[word] = terms.get(word, 0) + sign * coeff
    return NCPoly(n, terms, mode)


def _parse_word(text: str) -> Word:
    return tuple(int(tok[1:]) for tok in text.split("*"))
