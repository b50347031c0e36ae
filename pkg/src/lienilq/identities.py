"""Null-pair checks, the element identities behind them, and ideal-product
containment spot checks.

A pair (m, l) is null when M_m(A) M_l(A) lies in M_{m+l-1}(A) for every
algebra A; this reduces to a single membership test for the product of two
left-normed generator brackets in the multilinear component of degree
m + l. Verdicts over F_p carry Monte-Carlo semantics; exact mode certifies.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ResourceGuardError
from .lcs import ComponentStore, _sub_multidegrees, component_basis, member_of_m
from .ncpoly import NCPoly, commutator, left_normed_bracket
from .scalars import DEFAULT_PRIMES, EXACT, Mode, mod
from .span import dim_component, words_of_multidegree

DEFAULT_COMPONENT_LIMIT = math.factorial(10)

# the thirteen quadratic building blocks combining into the product of a
# commutator with a degree-3 bracket; coefficients are (+-1/2, +-1)
_R_TERMS = (
    (Fraction(-1, 2), ("j", "k", "l", "m", "i")),
    (Fraction(1, 2), ("j", "k", "m", "l", "i")),
    (Fraction(-1, 2), ("j", "k", "i", "l", "m")),
    (Fraction(-1, 2), ("j", "m", "l", "k", "i")),
    (Fraction(1, 2), ("j", "m", "k", "l", "i")),
    (Fraction(-1, 2), ("j", "m", "i", "l", "k")),
    (Fraction(-1, 1), ("j", "i", "k", "l", "m")),
    (Fraction(-1, 1), ("j", "i", "m", "l", "k")),
    (Fraction(1, 2), ("l", "k", "m", "j", "i")),
    (Fraction(-1, 2), ("l", "k", "i", "j", "m")),
    (Fraction(1, 2), ("l", "m", "k", "j", "i")),
    (Fraction(-1, 2), ("l", "m", "i", "j", "k")),
    (Fraction(-1, 2), ("k", "i", "m", "j", "l")),
)


@dataclass
class PairReport:
    m: int
    l: int
    is_null: bool
    verdicts: dict
    dim: int
    spanning_rank: int | None
    shortcut: str | None = None
    parity_null: bool | None = None
    agrees_with_parity: bool | None = None
    disagreement: bool = False
    elapsed: float = 0.0


def _gen_bracket(gens, n: int, mode: Mode) -> NCPoly:
    return left_normed_bracket([NCPoly.generator(g, n, mode) for g in gens])


def _consensus(verdicts: dict) -> tuple:
    """Combine per-mode membership verdicts. Exact certifies; otherwise a
    single non-membership vote outweighs memberships (membership mod p is
    only a necessary condition)."""
    exact = [v for tag, v in verdicts.items() if tag == "exact"]
    if exact:
        return exact[0], False
    vals = set(verdicts.values())
    if len(vals) == 1:
        return vals.pop(), False
    return False, True


def check_null_pair(m: int, l: int, modes=None, *,
                    store: ComponentStore | None = None,
                    max_component: int = DEFAULT_COMPONENT_LIMIT,
                    force: bool = False) -> PairReport:
    """Membership of the two-bracket product in M_{m+l-1} of the multilinear
    component; symmetric in (m, l)."""
    if m < 1 or l < 1:
        raise ValueError("pair entries must be positive")
    m, l = min(m, l), max(m, l)
    t0 = time.time()
    if m == 1:
        rep = PairReport(m, l, True, {}, 0, None, shortcut="m=1",
                         elapsed=time.time() - t0)
        return rep
    d = m + l
    dim = math.factorial(d)
    if dim > max_component and not force:
        raise ResourceGuardError(
            f"component dimension {dim} exceeds limit {max_component}")
    if modes is None:
        modes = tuple(mod(p) for p in DEFAULT_PRIMES)
    delta = (1,) * d
    verdicts: dict = {}
    rank = None
    for mode in modes:
        w = (_gen_bracket(range(1, m + 1), d, mode)
             * _gen_bracket(range(m + 1, d + 1), d, mode))
        basis = component_basis(d, d - 1, delta, mode, engine="forward",
                                store=store)
        verdicts[mode.tag()] = basis.contains(w)
        rank = basis.rank
    is_null, disagreement = _consensus(verdicts)
    return PairReport(m, l, is_null, verdicts, dim, rank,
                      disagreement=disagreement, elapsed=time.time() - t0)


def scan_null_pairs(max_sum: int, modes=None, *, exact_up_to: int = 7,
                    store: ComponentStore | None = None,
                    max_component: int = DEFAULT_COMPONENT_LIMIT,
                    force: bool = False) -> list:
    """All unordered pairs with m + l <= max_sum, each annotated with the
    parity prediction (null iff m or l is odd)."""
    if max_sum < 2:
        raise ValueError("need max_sum >= 2")
    if modes is None:
        modes = tuple(mod(p) for p in DEFAULT_PRIMES)
    reports = []
    for m in range(1, max_sum // 2 + 1):
        for l in range(m, max_sum - m + 1):
            run_modes = list(modes)
            if m + l <= exact_up_to and m > 1 \
                    and not any(md.is_exact for md in run_modes):
                run_modes.append(EXACT)
            rep = check_null_pair(m, l, run_modes, store=store,
                                  max_component=max_component, force=force)
            rep.parity_null = (m % 2 == 1) or (l % 2 == 1)
            rep.agrees_with_parity = rep.is_null == rep.parity_null
            reports.append(rep)
    return reports


# ---------------------------------------------------------------------------
# element identities


def s_element(i: int, j: int, k: int, l: int, m: int, n: int | None = None,
              mode: Mode = EXACT) -> NCPoly:
    """[x_i,x_j][x_k,[x_l,x_m]] + [x_k,x_j][x_i,[x_l,x_m]]; symmetric under
    swapping i and k."""
    n = n if n is not None else max(i, j, k, l, m)
    x = [None] + [NCPoly.generator(t, n, mode) for t in range(1, n + 1)]
    y = commutator(x[l], x[m])
    return (commutator(x[i], x[j]) * commutator(x[k], y)
            + commutator(x[k], x[j]) * commutator(x[i], y))


def r_element(i: int, j: int, k: int, l: int, m: int, n: int | None = None,
              mode: Mode = EXACT) -> NCPoly:
    """The signed combination of thirteen s_element instances used to
    rewrite commutator products; coefficients are +-1/2 and -1."""
    n = n if n is not None else max(i, j, k, l, m)
    env = {"i": i, "j": j, "k": k, "l": l, "m": m}
    out = NCPoly.zero(n, mode)
    for coeff, names in _R_TERMS:
        args = tuple(env[t] for t in names)
        out = out + s_element(*args, n=n, mode=mode).scale(mode.coerce(coeff))
    return out


def r_term_count() -> int:
    return len(_R_TERMS)


def r_term_coefficients() -> list:
    return [c for c, _ in _R_TERMS]


def verify_four_term_identity(a: NCPoly, b: NCPoly, c: NCPoly,
                              d: NCPoly) -> bool:
    """[a,b][c,d] + [a,d][c,b] == [[ac,b],d] + a[d,[c,b]] - [[a,b],d]c."""
    lhs = commutator(a, b) * commutator(c, d) + commutator(a, d) * commutator(c, b)
    rhs = (left_normed_bracket([a * c, b, d])
           + a * commutator(d, commutator(c, b))
           - left_normed_bracket([a, b, d]) * c)
    return (lhs - rhs).is_zero()


def verify_r_identity(i: int, j: int, k: int, l: int, m: int,
                      mode: Mode = EXACT) -> bool:
    """[x_i,x_j][x_k,[x_l,x_m]] == (R(i,j,m,l,k) - R(i,j,l,m,k)) / 3."""
    if mode.p == 3:
        raise ValueError("the identity has a 1/3 coefficient; "
                         "modulus 3 is rejected")
    n = max(i, j, k, l, m)
    x = [None] + [NCPoly.generator(t, n, mode) for t in range(1, n + 1)]
    lhs = commutator(x[i], x[j]) * commutator(x[k], commutator(x[l], x[m]))
    diff = (r_element(i, j, m, l, k, n=n, mode=mode)
            - r_element(i, j, l, m, k, n=n, mode=mode))
    rhs = diff.scale(mode.coerce(Fraction(1, 3)))
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# ideal-product containments


def _basis_polys(n: int, i: int, alpha: tuple, mode: Mode, store):
    if sum(alpha) == 0:
        return []
    if i == 1:
        return [NCPoly.word(w, n, mode) for w in words_of_multidegree(alpha)]
    if sum(alpha) < i:
        return []
    return component_basis(n, i, alpha, mode, store=store).to_polys()


def check_gupta_levin(m: int, l: int, delta: tuple, mode: Mode, *,
                      store: ComponentStore | None = None,
                      max_component: int = DEFAULT_COMPONENT_LIMIT,
                      force: bool = False) -> bool:
    """Every product of spanning vectors of M_m and M_l in the given
    component lies in M_{m+l-2}."""
    if m < 2 or l < 2:
        raise ValueError("need m, l >= 2")
    delta = tuple(delta)
    n = len(delta)
    if dim_component(delta) > max_component and not force:
        raise ResourceGuardError(
            f"component dimension {dim_component(delta)} exceeds limit")
    total = sum(delta)
    for alpha in _sub_multidegrees(delta, m, total - l):
        beta = tuple(d - a for d, a in zip(delta, alpha))
        left = _basis_polys(n, m, alpha, mode, store)
        if not left:
            continue
        right = _basis_polys(n, l, beta, mode, store)
        for u in left:
            for v in right:
                if not member_of_m(u * v, m + l - 2, mode, store=store):
                    return False
    return True


def check_triple_bracket(i: int, j: int, k: int, delta: tuple, mode: Mode, *,
                         store: ComponentStore | None = None,
                         max_component: int = DEFAULT_COMPONENT_LIMIT,
                         force: bool = False) -> bool:
    """[[M_i, M_j], M_k] of the given component lies in M_{i+j+k-3}."""
    delta = tuple(delta)
    n = len(delta)
    if dim_component(delta) > max_component and not force:
        raise ResourceGuardError(
            f"component dimension {dim_component(delta)} exceeds limit")
    total = sum(delta)
    lo_a = max(i, 1)
    for alpha in _sub_multidegrees(delta, lo_a, total - max(j, 1) - max(k, 1)):
        rest = tuple(d - a for d, a in zip(delta, alpha))
        ua = _basis_polys(n, i, alpha, mode, store)
        if not ua:
            continue
        for beta in _sub_multidegrees(rest, max(j, 1),
                                      sum(rest) - max(k, 1)):
            gamma = tuple(r - b for r, b in zip(rest, beta))
            ub = _basis_polys(n, j, beta, mode, store)
            if not ub:
                continue
            uc = _basis_polys(n, k, gamma, mode, store)
            for a in ua:
                for b in ub:
                    inner = commutator(a, b)
                    if inner.is_zero():
                        continue
                    for c in uc:
                        w = commutator(inner, c)
                        if w.is_zero():
                            continue
                        if not member_of_m(w, i + j + k - 3, mode,
                                           store=store):
                            return False
    return True
