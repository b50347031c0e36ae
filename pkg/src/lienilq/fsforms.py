"""Polynomial differential forms with the product a*b = ab + da^db on even
forms: an independent model of the quotient by M_3, used as an oracle for
its dimensions and relations.

A form is a scalar combination of terms x^a dx_S with a an exponent vector
and S a strictly increasing index set; the term's degree is |a| + |S| (so
each dx_i weighs 1, matching [x_i, x_j] of word degree 2 mapping to
2 dx_i^dx_j of degree 2).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations

from .errors import AmbientMismatchError, DegreeError, ModeMismatchError
from .lcs import ComponentStore, hilbert_q
from .scalars import EXACT, Mode, format_scalar, parse_scalar


class Form:
    """Polynomial differential form; terms map (exponents, dx set) to
    scalars. Immutable by convention."""

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n, terms, mode: Mode = EXACT, *, _raw=False):
        self.n = n
        self.mode = mode
        if _raw:
            self.terms = dict(terms)
            return
        clean = {}
        for (exps, dxs), coeff in terms.items():
            exps = tuple(exps)
            dxs = tuple(dxs)
            if len(exps) != n:
                raise AmbientMismatchError(f"exponent vector {exps} not of length {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if list(dxs) != sorted(set(dxs)) or any(
                    not 1 <= i <= n for i in dxs):
                raise ValueError(f"dx index set {dxs} must be strictly "
                                 f"increasing within 1..{n}")
            c = mode.coerce(coeff)
            if c != 0:
                clean[(exps, dxs)] = c
        self.terms = clean

    @classmethod
    def zero(cls, n, mode: Mode = EXACT):
        return cls(n, {}, mode, _raw=True)

    @classmethod
    def unit(cls, n, mode: Mode = EXACT):
        return cls(n, {((0,) * n, ()): mode.coerce(1)}, mode, _raw=True)

    @classmethod
    def coordinate(cls, i, n, mode: Mode = EXACT):
        exps = tuple(1 if t == i - 1 else 0 for t in range(n))
        return cls(n, {(exps, ()): mode.coerce(1)}, mode, _raw=True)

    @classmethod
    def dx(cls, i, n, mode: Mode = EXACT):
        return cls(n, {((0,) * n, (i,)): mode.coerce(1)}, mode, _raw=True)

    def _check(self, other):
        if self.n != other.n:
            raise AmbientMismatchError(f"{self.n} vs {other.n} variables")
        if self.mode != other.mode:
            raise ModeMismatchError(
                f"{self.mode.tag()} vs {other.mode.tag()}")

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return (self.n == other.n and self.mode == other.mode
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        p = self.mode.p
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if p is not None:
                v %= p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Form(self.n, out, self.mode, _raw=True)

    def __neg__(self):
        p = self.mode.p
        return Form(self.n,
                    {k: (-c if p is None else (-c) % p)
                     for k, c in self.terms.items()},
                    self.mode, _raw=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar):
        c0 = self.mode.coerce(scalar)
        if c0 == 0:
            return Form.zero(self.n, self.mode)
        p = self.mode.p
        return Form(self.n,
                    {k: (c * c0 if p is None else c * c0 % p)
                     for k, c in self.terms.items()},
                    self.mode, _raw=True)

    def is_even(self):
        return all(len(dxs) % 2 == 0 for _, dxs in self.terms)

    def degrees(self):
        return {sum(exps) + len(dxs) for exps, dxs in self.terms}

    def __repr__(self):
        return f"Form({self.n}, {format_form(self)!r}, {self.mode.tag()})"

    def __str__(self):
        return format_form(self)


def _merge_dx(s1, s2):
    """Concatenate two increasing index sets with the transposition sign;
    returns (sign, merged) or (0, ()) on overlap."""
    if not s1:
        return 1, s2
    if not s2:
        return 1, s1
    out = []
    sign = 1
    i = j = 0
    while i < len(s1) and j < len(s2):
        a, b = s1[i], s2[j]
        if a == b:
            return 0, ()
        if a < b:
            out.append(a)
            i += 1
        else:
            # s2[j] jumps over the remaining entries of s1
            if (len(s1) - i) % 2:
                sign = -sign
            out.append(b)
            j += 1
    out.extend(s1[i:])
    out.extend(s2[j:])
    return sign, tuple(out)


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    p = a.mode.p
    out: dict = {}
    for (e1, s1), c1 in a.terms.items():
        for (e2, s2), c2 in b.terms.items():
            sign, s = _merge_dx(s1, s2)
            if sign == 0:
                continue
            key = (tuple(x + y for x, y in zip(e1, e2)), s)
            out[key] = out.get(key, 0) + sign * c1 * c2
    if p is None:
        out = {k: c for k, c in out.items() if c != 0}
    else:
        out = {k: v for k, c in out.items() if (v := c % p)}
    return Form(a.n, out, a.mode, _raw=True)


def d(a: Form) -> Form:
    """Exterior differential; satisfies d(d(a)) = 0 and the graded Leibniz
    rule."""
    p = a.mode.p
    out: dict = {}
    for (exps, dxs), c in a.terms.items():
        for i in range(1, a.n + 1):
            e = exps[i - 1]
            if e == 0:
                continue
            sign, s = _merge_dx((i,), dxs)
            if sign == 0:
                continue
            newexps = tuple(x - 1 if t == i - 1 else x
                            for t, x in enumerate(exps))
            key = (newexps, s)
            out[key] = out.get(key, 0) + sign * e * c
    if p is None:
        out = {k: c for k, c in out.items() if c != 0}
    else:
        out = {k: v for k, c in out.items() if (v := c % p)}
    return Form(a.n, out, a.mode, _raw=True)


def star(a: Form, b: Form) -> Form:
    """a*b = ab + da^db, defined on even forms."""
    if not a.is_even() or not b.is_even():
        raise DegreeError("the product is defined on even forms only")
    return wedge(a, b) + wedge(d(a), d(b))


def star_commutator(a: Form, b: Form) -> Form:
    return star(a, b) - star(b, a)


# ---------------------------------------------------------------------------
# the model check


def even_basis_by_degree(n: int, D: int, mode: Mode = EXACT) -> list:
    """Lists of basis even forms x^a dx_S, |a| + |S| = d, for d = 0..D."""
    out = [[] for _ in range(D + 1)]
    sets = [S for k in range(0, n + 1, 2)
            for S in combinations(range(1, n + 1), k)]
    for S in sets:
        base = len(S)
        if base > D:
            continue
        for exps in _exponents_up_to(n, D - base):
            deg = sum(exps) + base
            out[deg].append(Form(n, {(tuple(exps), S): 1}, mode, _raw=True))
    return out


def _exponents_up_to(n, dmax):
    cur = [0] * n

    def rec(pos, left):
        if pos == n:
            yield tuple(cur)
            return
        for v in range(left + 1):
            cur[pos] = v
            yield from rec(pos + 1, left - v)
            cur[pos] = 0

    yield from rec(0, dmax)


@dataclass
class FsReport:
    n: int
    max_degree: int
    mode_tag: str
    associativity_ok: bool = True
    relations_ok: bool = True
    dims: list = field(default_factory=list)
    quotient_dims: list = field(default_factory=list)
    dims_match: bool = True
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.associativity_ok and self.relations_ok and self.dims_match


def fs_check(n: int, D: int, mode: Mode = EXACT, *,
             store: ComponentStore | None = None) -> FsReport:
    """Certify, through total degree D, that the even-form algebra is
    associative, satisfies the quotient's defining relations, and has the
    same dimensions as the engine's quotient by M_3."""
    if n < 2 or D < 2:
        raise ValueError("need n >= 2 and D >= 2")
    report = FsReport(n, D, mode.tag())
    basis = even_basis_by_degree(n, D, mode)

    # (a) associativity on all basis triples of total degree <= D
    flat = [(deg, f) for deg in range(D + 1) for f in basis[deg]]
    for da, fa in flat:
        if da > D - 2:
            break
        for db, fb in flat:
            if da + db > D - 1:
                break
            left = star(fa, fb)
            for dc, fc in flat:
                if da + db + dc > D:
                    break
                lhs = star(left, fc)
                rhs = star(fa, star(fb, fc))
                if lhs != rhs:
                    report.associativity_ok = False
                    report.failures.append(
                        f"associativity fails on ({fa}, {fb}, {fc})")
                    if len(report.failures) > 4:
                        return report

    # (b) images of the defining relations vanish
    x = [None] + [Form.coordinate(i, n, mode) for i in range(1, n + 1)]
    two_dx = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            y = star_commutator(x[i], x[j])
            expected = wedge(Form.dx(i, n, mode), Form.dx(j, n, mode)).scale(2)
            if y != expected:
                report.relations_ok = False
                report.failures.append(
                    f"commutator image of (x{i}, x{j}) is {y}, "
                    f"expected {expected}")
            two_dx[(i, j)] = y
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for l in rng:
                if not star_commutator(x[i], two_dx[(j, l)]).is_zero():
                    report.relations_ok = False
                    report.failures.append(
                        f"lie relation image (x{i}, y_{j}{l}) is nonzero")
    for i in rng:
        for j in rng:
            for k in rng:
                for l in rng:
                    v = (star(two_dx[(i, j)], two_dx[(k, l)])
                         + star(two_dx[(i, k)], two_dx[(j, l)]))
                    if not v.is_zero():
                        report.relations_ok = False
                        report.failures.append(
                            f"quadratic relation image nonzero at "
                            f"({i},{j},{k},{l})")

    # (c) per-degree dimensions against the engine
    report.dims = [len(basis[deg]) for deg in range(D + 1)]
    series = hilbert_q(n, 3, D, mode, store=store)
    report.quotient_dims = list(series.coefficients)
    report.dims_match = report.dims == report.quotient_dims
    if not report.dims_match:
        report.failures.append(
            f"dimension mismatch: forms {report.dims}, "
            f"quotient {report.quotient_dims}")
    return report


# ---------------------------------------------------------------------------
# textual format: 3/2*x1^2*x2*dx{1,3}


_FORM_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\*?)?"
    r"(?P<body>(?:x\d+(?:\^\d+)?(?:\*x\d+(?:\^\d+)?)*)?"
    r"(?:\*?dx\{\d+(?:,\d+)*\})?|1)$")


def format_form(f: Form) -> str:
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(),
                   key=lambda kv: (sum(kv[0][0]) + len(kv[0][1]), kv[0]))
    pieces = []
    for (exps, dxs), coeff in items:
        if f.mode.is_exact and coeff < 0:
            sign, mag = "-", -coeff
        else:
            sign, mag = "+", coeff
        factors = []
        for i, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        if dxs:
            factors.append("dx{" + ",".join(map(str, dxs)) + "}")
        body = "*".join(factors) if factors else "1"
        if mag == 1 and factors:
            pieces.append((sign, body))
        elif factors:
            pieces.append((sign, f"{format_scalar(mag)}*{body}"))
        else:
            pieces.append((sign, format_scalar(mag)))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def parse_form(text: str, n: int, mode: Mode = EXACT) -> Form:
    text = text.strip()
    if text in ("", "0"):
        return Form.zero(n, mode)
    chunks = re.split(r"\s+([+-])\s+", text)
    signs = [1]
    if chunks[0].startswith("-"):
        chunks[0] = chunks[0][1:].strip()
        signs = [-1]
    bodies = [chunks[0]]
    for k in range(1, len(chunks), 2):
        signs.append(1 if chunks[k] == "+" else -1)
        bodies.append(chunks[k + 1])
    terms: dict = {}
    for sign, body in zip(signs, bodies):
        m = _FORM_TERM_RE.match(body.strip())
        if not m or (not m.group("coeff") and not m.group("body")):
            raise ValueError(f"cannot parse form term {body!r}")
        coeff = parse_scalar(m.group("coeff"), EXACT) if m.group("coeff") else 1
        exps = [0] * n
        dxs: tuple = ()
        rest = m.group("body") or ""
        if rest and rest != "1":
            for tok in rest.split("*"):
                if tok.startswith("dx{"):
                    dxs = tuple(int(s) for s in tok[3:-1].split(","))
                elif tok:
                    if "^" in tok:
                        var, e = tok.split("^")
                        exps[int(var[1:]) - 1] += int(e)
                    else:
                        exps[int(tok[1:]) - 1] += 1
        key = (tuple(exps), dxs)
        terms[key] = terms.get(key, 0) + sign * coeff
    return Form(n, terms, mode)
