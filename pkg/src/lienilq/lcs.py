"""Graded spanning sets for L_i(A_n) and M_i(A_n), membership, dimensions
of the quotients Q_{n,i}, Hilbert series, and finite-dimension weight tables.

Two complementary computations back the public operations:

- primal: echelonized spans of M_i(A_n)[delta] built from a reduced
  word-entry spanning family (u * [w1,...,wi] * v with the first entry
  deglex-minimal); used for membership and rank queries.
- dual: the annihilator of M_i(A_n)[delta] propagated degree by degree via
      M_i[d] = sum_j x_j M_i[d-e_j] + sum_k M_i[d-e_k] x_k
               + sum_j [x_j, L_{i-1}[d-e_j]],
  which keeps all linear algebra in the (small) quotient dimension; used
  for dimension pipelines at scales where spans are enormous.

Both are cross-checked against each other and against the brute-force
monomial-entry enumeration in the test suite.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import DegreeError, InconsistencyError
from .ncpoly import NCPoly, deglex_key, homogeneous_components
from .scalars import EXACT, Mode, format_scalar, mode_from_tag, parse_scalar
from .span import (ComponentIndex, SpanBasis, component_index, dim_component,
                   echelonize_rows, matmul_mod, serialize_basis,
                   deserialize_basis, words_of_multidegree)

ANN_FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# small graded containers


@dataclass(frozen=True)
class HilbertSeries:
    """Dimensions of Q_{n,i} by total degree, 0..truncation."""
    coefficients: tuple
    truncation: int

    def __iter__(self):
        return iter(self.coefficients)


@dataclass
class WeightTable:
    """Multidegree -> multiplicity map of a graded GL(n) character;
    zero entries are omitted."""
    entries: dict
    truncation: int

    def total(self) -> int:
        return sum(self.entries.values())

    def by_total_degree(self) -> dict:
        out: dict = {}
        for nu, mult in self.entries.items():
            out[sum(nu)] = out.get(sum(nu), 0) + mult
        return out

    def top_degree(self) -> int:
        return max((sum(nu) for nu in self.entries), default=0)


# ---------------------------------------------------------------------------
# component store (memoization plus optional on-disk persistence)


class ComponentStore:
    """Insert-or-get store of span bases and annihilator matrices, safe for
    concurrent use; optionally persisted under a cache directory."""

    def __init__(self, cache_dir: str | None = None):
        self.cache_dir = cache_dir
        self._spans: dict = {}
        self._anns: dict = {}
        self._lock = threading.RLock()

    # -- span bases --------------------------------------------------------

    def get_span(self, key):
        with self._lock:
            basis = self._spans.get(key)
        if basis is not None:
            return basis
        path = self._span_path(key)
        if path and os.path.exists(path):
            with open(path) as fh:
                basis = deserialize_basis(fh)
            with self._lock:
                self._spans.setdefault(key, basis)
            return basis
        return None

    def put_span(self, key, basis):
        with self._lock:
            basis = self._spans.setdefault(key, basis)
        path = self._span_path(key)
        if path and not os.path.exists(path):
            self._atomic_write(path, lambda fh: serialize_basis(basis, fh))
        return basis

    def _span_path(self, key):
        if not self.cache_dir:
            return None
        n, i, delta, modetag = key
        name = (f"span_v{ANN_FORMAT_VERSION}_n{n}_i{i}_"
                f"d{'-'.join(map(str, delta))}_{modetag}.txt")
        return os.path.join(self.cache_dir, name)

    # -- annihilator matrices ----------------------------------------------

    def get_ann(self, key):
        with self._lock:
            entry = self._anns.get(key)
        if entry is not None:
            return entry
        path = self._ann_path(key)
        if path and os.path.exists(path):
            entry = _read_ann_file(path, key)
            with self._lock:
                entry = self._anns.setdefault(key, entry)
            return entry
        return None

    def put_ann(self, key, entry):
        with self._lock:
            entry = self._anns.setdefault(key, entry)
        path = self._ann_path(key)
        if path and not os.path.exists(path):
            self._atomic_write(path, lambda fh: _write_ann(fh, key, entry))
        return entry

    def _ann_path(self, key):
        if not self.cache_dir:
            return None
        n, i, delta, modetag = key
        name = (f"ann_v{ANN_FORMAT_VERSION}_n{n}_i{i}_"
                f"d{'-'.join(map(str, delta))}_{modetag}.txt")
        return os.path.join(self.cache_dir, name)

    def _atomic_write(self, path, writer):
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w") as fh:
            writer(fh)
        os.replace(tmp, path)

    def clear_memory(self):
        with self._lock:
            self._spans.clear()
            self._anns.clear()


DEFAULT_STORE = ComponentStore()


def _store(store):
    return store if store is not None else DEFAULT_STORE


def _write_ann(fh, key, entry):
    matrix, pivcols = entry
    n, i, delta, modetag = key
    fh.write(f"lienilq-ann {ANN_FORMAT_VERSION}\n")
    fh.write(f"n {n}\ni {i}\ndelta {','.join(map(str, delta))}\n")
    fh.write(f"mode {modetag}\nncols {dim_component(delta)}\n")
    fh.write(f"rank {len(pivcols)}\n")
    for pc, row in zip(pivcols, matrix):
        if isinstance(row, np.ndarray):
            nz = np.flatnonzero(row)
            pairs = " ".join(f"{int(c)}:{int(row[c])}" for c in nz)
        else:
            pairs = " ".join(f"{c}:{format_scalar(v)}"
                             for c, v in enumerate(row) if v)
        fh.write(f"{pc} {pairs}\n")


def _read_ann_file(path, key):
    n, i, delta, modetag = key
    mode = mode_from_tag(modetag)
    m = dim_component(delta)
    pivcols, rows = [], []
    with open(path) as fh:
        header = fh.readline().split()
        if header[:1] != ["lienilq-ann"] or int(header[1]) != ANN_FORMAT_VERSION:
            raise ValueError(f"unsupported ann file header {header}")
        for _ in range(6):
            fh.readline()
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            pivcols.append(int(parts[0]))
            if mode.is_exact:
                row = [Fraction(0)] * m
                for pair in parts[1:]:
                    c, v = pair.split(":")
                    row[int(c)] = parse_scalar(v, mode)
            else:
                row = np.zeros(m, dtype=np.int64)
                for pair in parts[1:]:
                    c, v = pair.split(":")
                    row[int(c)] = int(v)
            rows.append(row)
    if mode.is_exact:
        return rows, pivcols
    if rows:
        return np.vstack(rows), pivcols
    return np.zeros((0, m), dtype=np.int64), pivcols


# ---------------------------------------------------------------------------
# word tuple and bracket enumeration


def _sub_multidegrees(rem: tuple, lo: int, hi: int) -> Iterator[tuple]:
    """Componentwise 0 <= s <= rem with lo <= |s| <= hi."""
    n = len(rem)
    cur = [0] * n

    def rec(pos, total):
        if pos == n:
            if lo <= total <= hi:
                yield tuple(cur)
            return
        for v in range(0, min(rem[pos], hi - total) + 1):
            cur[pos] = v
            yield from rec(pos + 1, total + v)
            cur[pos] = 0

    yield from rec(0, 0)


def _expand_bracket(entries: tuple) -> dict:
    """Expansion of the left-normed bracket of words, as word -> int."""
    acc = {entries[0]: 1}
    for w in entries[1:]:
        new: dict = {}
        for word, c in acc.items():
            a = word + w
            new[a] = new.get(a, 0) + c
            b = w + word
            new[b] = new.get(b, 0) - c
        acc = {k: v for k, v in new.items() if v}
        if not acc:
            break
    return acc


def _word_tuples(n: int, k: int, budget: tuple, *, exact_total: bool,
                 min_first: bool) -> Iterator[tuple]:
    """Ordered k-tuples of nonempty words of total multidegree <= budget
    (== budget when exact_total). With min_first, the first entry is the
    deglex-minimal entry and the second entry differs from the first, which
    preserves the span of the corresponding left-normed brackets."""
    entries: list = []

    def rec(pos, rem):
        if pos == k:
            if not exact_total or sum(rem) == 0:
                yield tuple(entries), tuple(b - r for b, r in zip(budget, rem))
            return
        slots_left = k - pos - 1
        hi = sum(rem) - slots_left
        if hi < 1:
            return
        first_key = deglex_key(entries[0]) if (min_first and pos > 0) else None
        for beta in _sub_multidegrees(rem, 1, hi):
            for w in words_of_multidegree(beta):
                if first_key is not None:
                    if deglex_key(w) < first_key:
                        continue
                    if pos == 1 and w == entries[0]:
                        continue
                entries.append(w)
                yield from rec(pos + 1,
                               tuple(r - b for r, b in zip(rem, beta)))
                entries.pop()

    yield from rec(0, tuple(budget))


def _lie_bracket_dicts(n: int, k: int, gamma: tuple) -> Iterator[dict]:
    """Expansions of a spanning family of L_k(A_n)[gamma] (word -> int)."""
    if k == 1:
        for w in words_of_multidegree(gamma):
            yield {w: 1}
        return
    for entries, _ in _word_tuples(n, k, gamma, exact_total=True,
                                   min_first=True):
        d = _expand_bracket(entries)
        if d:
            yield d


# ---------------------------------------------------------------------------
# public spanning enumerations


def l_spanning_monomial_entries(n: int, i: int, delta: tuple,
                                mode: Mode = EXACT) -> list:
    """All left-normed brackets of i nonempty words of total multidegree
    delta (identically zero brackets dropped). The i = 1 case returns the
    words themselves."""
    if i < 1:
        raise ValueError("need i >= 1")
    out = []
    for d in _lie_bracket_dicts_full(n, i, tuple(delta)):
        out.append(NCPoly(n, d, mode))
    return out


def _lie_bracket_dicts_full(n, i, delta):
    if i == 1:
        for w in words_of_multidegree(delta):
            yield {w: 1}
        return
    for entries, _ in _word_tuples(n, i, delta, exact_total=True,
                                   min_first=False):
        d = _expand_bracket(entries)
        if d:
            yield d


def m_spanning_generators(n: int, i: int, delta: tuple,
                          mode: Mode = EXACT) -> list:
    """All u * B * v of multidegree delta with B a left-normed bracket of i
    single generators and u, v words (identically zero brackets dropped).

    This is the literal generator-entry family. Its span is a subspace of
    M_i(A_n)[delta] that is proper in general for i >= 3: products of two
    shorter brackets arising from the rewriting of word entries escape it
    (e.g. [x1,x2]^2 at n=2, delta=(2,2)). Dimension and membership
    pipelines therefore use the word-entry families instead.
    """
    if i < 2:
        raise ValueError("need i >= 2")
    delta = tuple(delta)
    if sum(delta) < i:
        return []
    out = []
    comp_budget = delta
    for gs in _generator_tuples(n, i, comp_budget):
        B = _expand_bracket(tuple((g,) for g in gs))
        if not B:
            continue
        beta = [0] * n
        for g in gs:
            beta[g - 1] += 1
        rho = tuple(d - b for d, b in zip(delta, beta))
        for uv in words_of_multidegree(rho):
            for cut in range(len(uv) + 1):
                u, v = uv[:cut], uv[cut:]
                out.append(NCPoly(
                    n, {u + w + v: c for w, c in B.items()}, mode))
    return out


def _generator_tuples(n, i, budget):
    cur = []

    def rec(pos, rem):
        if pos == i:
            yield tuple(cur)
            return
        for g in range(1, n + 1):
            if rem[g - 1] == 0:
                continue
            nxt = list(rem)
            nxt[g - 1] -= 1
            cur.append(g)
            yield from rec(pos + 1, tuple(nxt))
            cur.pop()

    yield from rec(0, tuple(budget))


def _ideal_rows(n: int, i: int, delta: tuple,
                comp: ComponentIndex) -> Iterator[dict]:
    """Reduced spanning family of M_i(A_n)[delta] as coordinate rows."""
    index = comp.index
    for entries, beta in _word_tuples(n, i, delta, exact_total=False,
                                      min_first=True):
        B = _expand_bracket(entries)
        if not B:
            continue
        items = list(B.items())
        rho = tuple(d - b for d, b in zip(delta, beta))
        for uv in words_of_multidegree(rho):
            for cut in range(len(uv) + 1):
                u, v = uv[:cut], uv[cut:]
                yield {index[u + w + v]: c for w, c in items}


# ---------------------------------------------------------------------------
# primal component bases and membership


def component_basis(n: int, i: int, delta: tuple, mode: Mode,
                    *, engine: str = "auto",
                    store: ComponentStore | None = None) -> SpanBasis:
    """Echelonized basis of M_i(A_n)[delta], memoized per (n,i,delta,mode)."""
    if i < 2:
        raise ValueError("component_basis needs i >= 2; M_1 is all of A")
    delta = tuple(delta)
    st = _store(store)
    key = (n, i, delta, mode.tag())
    basis = st.get_span(key)
    if basis is not None:
        return basis
    comp = component_index(n, delta)
    if sum(delta) < i:
        basis = SpanBasis(comp, mode, [], True)
    else:
        basis = echelonize_rows(_ideal_rows(n, i, delta, comp), comp, mode,
                                engine=engine)
    return st.put_span(key, basis)


def _poly_in_mode(p: NCPoly, mode: Mode) -> NCPoly:
    if p.mode == mode:
        return p
    return NCPoly(p.n, p.terms, mode)


def member_of_m(p: NCPoly, i: int, mode: Mode | None = None,
                *, store: ComponentStore | None = None,
                engine: str = "auto") -> bool:
    """True iff every homogeneous component of p lies in M_i(A_n)."""
    if i <= 1:
        return True
    mode = mode if mode is not None else p.mode
    p = _poly_in_mode(p, mode)
    for delta, part in homogeneous_components(p).items():
        if sum(delta) < i:
            return False
        basis = component_basis(p.n, i, delta, mode, engine=engine,
                                store=store)
        if not basis.contains(part):
            return False
    return True


# ---------------------------------------------------------------------------
# dual: annihilator propagation


def _orbit_rep(delta: tuple) -> tuple:
    return tuple(sorted(delta, reverse=True))


@lru_cache(maxsize=256)
def _orbit_remap(n: int, delta: tuple) -> np.ndarray:
    """Column map from the delta component into its sorted-representative
    component: column t holds the rep-component index of the relabeled
    t-th word of delta."""
    rep = _orbit_rep(delta)
    order = sorted(range(n), key=lambda j: (-delta[j], j))
    relabel = {order[k] + 1: k + 1 for k in range(n)}
    rep_index = component_index(n, rep).index
    comp = component_index(n, delta)
    out = np.empty(comp.dim, dtype=np.int64)
    for t, w in enumerate(comp.words):
        out[t] = rep_index[tuple(relabel[l] for l in w)]
    return out


def _ann_matrix(n, i, delta, mode, store):
    """Annihilator of M_i(A_n)[delta] in the delta component's own column
    order, as (matrix, pivot columns of the rep RREF)."""
    rep = _orbit_rep(delta)
    matrix, pivcols = _ann_rep(n, i, rep, mode, store)
    if delta == rep:
        return matrix, pivcols
    remap = _orbit_remap(n, delta)
    if mode.is_exact:
        return [[row[c] for c in remap] for row in matrix], None
    return matrix[:, remap], None


def _ann_rep(n, i, delta, mode, store):
    st = _store(store)
    key = (n, i, delta, mode.tag())
    entry = st.get_ann(key)
    if entry is not None:
        return entry
    if mode.is_exact:
        entry = _ann_rep_exact(n, i, delta, store)
    else:
        entry = _ann_rep_mod(n, i, delta, mode.p, store)
    return st.put_ann(key, entry)


def _ann_rep_mod(n, i, delta, p, store):
    m = dim_component(delta)
    if sum(delta) < i:
        eye = np.eye(m, dtype=np.int64)
        return eye, list(range(m))
    comp = component_index(n, delta)
    js = [j for j in range(n) if delta[j] > 0]
    child = {}
    for j in js:
        gamma = tuple(d - (1 if t == j else 0) for t, d in enumerate(delta))
        child[j] = (gamma, _ann_matrix(n, i, gamma, Mode(p), store)[0])
    offs, Q = {}, 0
    for j in js:
        offs[j] = Q
        Q += child[j][1].shape[0]
    if Q == 0:
        return np.zeros((0, m), dtype=np.int64), []
    # f is parametrized by its left slices: block of words starting with
    # x_{j+1} equals c_j^T A_j (suffixes enumerate the child component in
    # order because the word list is lexicographic)
    F = np.zeros((m, Q), dtype=np.int64)
    row0 = 0
    for j in js:
        gamma, A = child[j]
        mj = dim_component(gamma)
        F[row0:row0 + mj, offs[j]:offs[j] + A.shape[0]] = A.T
        row0 += mj
    acc = _ModRrefSmall(Q, p)
    # right slices must again annihilate the child components
    for k in js:
        gamma = child[k][0]
        Ak, pivk = _ann_matrix_with_pivots(n, i, gamma, Mode(p), store)
        ck = component_index(n, gamma)
        sel = np.fromiter((comp.index[w + (k + 1,)] for w in ck.words),
                          dtype=np.int64, count=ck.dim)
        G = F[sel]
        if Ak.shape[0]:
            R = (G - matmul_mod(Ak.T % p, G[pivk], p)) % p
        else:
            R = G % p
        acc.add_block(R)
        del G, R
    # new relations in this degree: f([x_{j+1}, y]) = 0 for y spanning
    # L_{i-1} of the child component
    for j in js:
        gamma = child[j][0]
        if sum(gamma) >= i - 1:
            _add_bracket_constraints_mod(acc, F, comp, j + 1, n, i - 1,
                                         gamma, p)
    N = acc.nullspace()
    if N.shape[0] == 0:
        return np.zeros((0, m), dtype=np.int64), []
    ann = matmul_mod(N, F.T % p, p)
    return _rref_rows_mod(ann, p)


def _add_bracket_constraints_mod(acc, F, comp, letter, n, k, gamma, p,
                                 batch_rows=200_000):
    from scipy.sparse import csr_matrix
    rows, cols, vals = [], [], []
    nrows = 0
    index = comp.index

    def flush():
        nonlocal rows, cols, vals, nrows
        if nrows == 0:
            return
        C = csr_matrix((np.array(vals, dtype=np.int64),
                        (np.array(rows, dtype=np.int64),
                         np.array(cols, dtype=np.int64))),
                       shape=(nrows, comp.dim))
        acc.add_block(np.asarray((C @ F) % p))
        rows, cols, vals = [], [], []
        nrows = 0

    for y in _lie_bracket_dicts(n, k, gamma):
        for w, c in y.items():
            rows.append(nrows)
            cols.append(index[(letter,) + w])
            vals.append(c)
            rows.append(nrows)
            cols.append(index[w + (letter,)])
            vals.append(-c)
        nrows += 1
        if nrows >= batch_rows:
            flush()
    flush()


def _ann_matrix_with_pivots(n, i, delta, mode, store):
    """Like _ann_matrix but guarantees usable pivot columns: for non-sorted
    delta the remapped matrix is re-echelonized (cheap: few rows)."""
    matrix, pivcols = _ann_matrix(n, i, delta, mode, store)
    if pivcols is not None:
        if mode.is_exact:
            return matrix, pivcols
        return matrix, np.array(pivcols, dtype=np.int64)
    if mode.is_exact:
        return _rref_rows_exact(matrix)
    matrix, pivcols = _rref_rows_mod(matrix, mode.p)
    return matrix, np.array(pivcols, dtype=np.int64)


class _ModRrefSmall:
    """RREF accumulator over F_p for wide stacks of short rows."""

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.pivcols: list = []
        self.rows: list = []
        self._bycol: dict = {}

    def add_block(self, M: np.ndarray):
        p = self.p
        M = np.asarray(M, dtype=np.int64) % p
        base = len(self.rows)
        if base:
            P = np.vstack(self.rows)
            M = (M - matmul_mod(M[:, self.pivcols], P, p)) % p
        for r in range(M.shape[0]):
            row = M[r]
            # rows are pre-reduced against pivots known at block entry only
            for idx in range(base, len(self.rows)):
                f = row[self.pivcols[idx]]
                if f:
                    row = (row - f * self.rows[idx]) % p
            self._insert(row)

    def _insert(self, row):
        p = self.p
        nz = np.flatnonzero(row)
        if nz.size == 0:
            return
        c0 = int(nz[0])
        row = row * pow(int(row[c0]), -1, p) % p
        for idx in range(len(self.rows)):
            f = self.rows[idx][c0]
            if f:
                self.rows[idx] = (self.rows[idx] - f * row) % p
        self._bycol[c0] = len(self.rows)
        self.pivcols.append(c0)
        self.rows.append(row.copy())

    @property
    def rank(self):
        return len(self.rows)

    def nullspace(self) -> np.ndarray:
        p = self.p
        free = [c for c in range(self.ncols) if c not in self._bycol]
        N = np.zeros((len(free), self.ncols), dtype=np.int64)
        for r, f in enumerate(free):
            N[r, f] = 1
            for pc, row in zip(self.pivcols, self.rows):
                v = row[f]
                if v:
                    N[r, pc] = (-v) % p
        return N


def _rref_rows_mod(M: np.ndarray, p: int):
    acc = _ModRrefSmall(M.shape[1], p)
    acc.add_block(M)
    order = np.argsort(acc.pivcols)
    rows = [acc.rows[k] for k in order]
    pivcols = [acc.pivcols[k] for k in order]
    if rows:
        return np.vstack(rows), pivcols
    return np.zeros((0, M.shape[1]), dtype=np.int64), []


# -- exact (Fraction) twin of the dual engine, for small components --------


class _ExactRrefSmall:
    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivcols: list = []
        self.rows: list = []
        self._bycol: dict = {}

    def add_block(self, rows):
        for row in rows:
            row = list(row)
            for idx in range(len(self.rows)):
                f = row[self.pivcols[idx]]
                if f:
                    row = [a - f * b for a, b in zip(row, self.rows[idx])]
            c0 = next((c for c, v in enumerate(row) if v), None)
            if c0 is None:
                continue
            inv = Fraction(1, 1) / row[c0]
            row = [v * inv for v in row]
            for idx in range(len(self.rows)):
                f = self.rows[idx][c0]
                if f:
                    self.rows[idx] = [a - f * b for a, b
                                      in zip(self.rows[idx], row)]
            self._bycol[c0] = len(self.rows)
            self.pivcols.append(c0)
            self.rows.append(row)

    @property
    def rank(self):
        return len(self.rows)

    def nullspace(self):
        free = [c for c in range(self.ncols) if c not in self._bycol]
        N = []
        for f in free:
            vec = [Fraction(0)] * self.ncols
            vec[f] = Fraction(1)
            for pc, row in zip(self.pivcols, self.rows):
                if row[f]:
                    vec[pc] = -row[f]
            N.append(vec)
        return N


def _rref_rows_exact(rows):
    acc = _ExactRrefSmall(len(rows[0]) if rows else 0)
    acc.add_block(rows)
    order = sorted(range(len(acc.rows)), key=lambda k: acc.pivcols[k])
    return ([acc.rows[k] for k in order],
            [acc.pivcols[k] for k in order])


def _ann_rep_exact(n, i, delta, store):
    m = dim_component(delta)
    if sum(delta) < i:
        eye = [[Fraction(int(r == c)) for c in range(m)] for r in range(m)]
        return eye, list(range(m))
    comp = component_index(n, delta)
    js = [j for j in range(n) if delta[j] > 0]
    child = {}
    for j in js:
        gamma = tuple(d - (1 if t == j else 0) for t, d in enumerate(delta))
        child[j] = (gamma, _ann_matrix(n, i, gamma, EXACT, store)[0])
    offs, Q = {}, 0
    for j in js:
        offs[j] = Q
        Q += len(child[j][1])
    if Q == 0:
        return [], []
    F = [[Fraction(0)] * Q for _ in range(m)]
    row0 = 0
    for j in js:
        gamma, A = child[j]
        mj = dim_component(gamma)
        for r, arow in enumerate(A):
            col = offs[j] + r
            for t in range(mj):
                if arow[t]:
                    F[row0 + t][col] = arow[t]
        row0 += mj
    acc = _ExactRrefSmall(Q)
    for k in js:
        gamma = child[k][0]
        Ak, pivk = _ann_matrix_with_pivots(n, i, gamma, EXACT, store)
        ck = component_index(n, gamma)
        block = []
        for t, w in enumerate(ck.words):
            g = F[comp.index[w + (k + 1,)]]
            block.append(list(g))
        # subtract the rowspace combination determined by pivot coordinates
        if Ak:
            piv_rows = [block[pc] for pc in pivk]
            for t in range(ck.dim):
                w_row = block[t]
                combo = [Fraction(0)] * Q
                for r, arow in enumerate(Ak):
                    f = arow[t]
                    if f:
                        combo = [a + f * b for a, b
                                 in zip(combo, piv_rows[r])]
                block[t] = [a - b for a, b in zip(w_row, combo)]
        acc.add_block(block)
    for j in js:
        gamma = child[j][0]
        if sum(gamma) >= i - 1:
            letter = j + 1
            block = []
            for y in _lie_bracket_dicts(n, i - 1, gamma):
                vec = [Fraction(0)] * Q
                for w, c in y.items():
                    r1 = F[comp.index[(letter,) + w]]
                    r2 = F[comp.index[w + (letter,)]]
                    vec = [a + c * (b1 - b2)
                           for a, b1, b2 in zip(vec, r1, r2)]
                block.append(vec)
                if len(block) >= 4096:
                    acc.add_block(block)
                    block = []
            acc.add_block(block)
    N = acc.nullspace()
    if not N:
        return [], []
    ann = []
    for cvec in N:
        ann.append([sum(F[t][s] * cvec[s] for s in range(Q) if cvec[s])
                    for t in range(m)])
    return _rref_rows_exact(ann)


# ---------------------------------------------------------------------------
# dimensions, series, weights


def q_dimension(n: int, i: int, delta: tuple, mode: Mode,
                *, store: ComponentStore | None = None,
                method: str = "dual") -> int:
    """dim Q_{n,i}[delta] = dim A_n[delta] - rank M_i(A_n)[delta]."""
    delta = tuple(delta)
    if i < 1:
        raise ValueError("need i >= 1")
    if i == 1:
        return 1 if sum(delta) == 0 else 0
    if method == "dual":
        rep = _orbit_rep(delta)
        matrix, _ = _ann_rep(n, i, rep, mode, store)
        return len(matrix) if mode.is_exact else int(matrix.shape[0])
    if method == "primal":
        basis = component_basis(n, i, delta, mode, store=store)
        return dim_component(delta) - basis.rank
    raise ValueError(f"unknown method {method!r}")


def hilbert_q(n: int, i: int, D: int, mode: Mode,
              *, store: ComponentStore | None = None) -> HilbertSeries:
    """Total-degree dimension series of Q_{n,i} through degree D."""
    if D < 0:
        raise ValueError("need D >= 0")
    coeffs = []
    for d in range(D + 1):
        s = 0
        for rep in _degree_reps(n, d):
            s += q_dimension(n, i, rep, mode, store=store) * _orbit_size(rep)
        coeffs.append(s)
    return HilbertSeries(tuple(coeffs), D)


def _degree_reps(n: int, d: int) -> Iterator[tuple]:
    """Weakly decreasing multidegrees of total d (orbit representatives)."""
    def rec(remaining, maxpart, slots):
        if slots == 0:
            if remaining == 0:
                yield ()
            return
        for v in range(min(remaining, maxpart), -1, -1):
            if v * slots < remaining:
                break
            for rest in rec(remaining - v, v, slots - 1):
                yield (v,) + rest

    yield from rec(d, d, n)


def _orbit_size(rep: tuple) -> int:
    n = len(rep)
    out = math.factorial(n)
    from collections import Counter
    for c in Counter(rep).values():
        out //= math.factorial(c)
    return out


def _all_multidegrees(n: int, d: int) -> Iterator[tuple]:
    cur = [0] * n

    def rec(pos, total):
        if pos == n - 1:
            cur[pos] = d - total
            yield tuple(cur)
            cur[pos] = 0
            return
        for v in range(d - total + 1):
            cur[pos] = v
            yield from rec(pos + 1, total + v)
            cur[pos] = 0

    yield from rec(0, 0)


def lambda_weights(n: int, i: int, D: int, mode: Mode,
                   *, store: ComponentStore | None = None) -> WeightTable:
    """Graded weight multiplicities of the finite factor of gr Q_{n,i},
    obtained from the quotient dimensions by multiplying the multigraded
    series by prod_j (1 - t_j)."""
    entries: dict = {}
    subsets = [tuple(s) for s in _subsets(n)]
    for d in range(D + 1):
        for nu in _all_multidegrees(n, d):
            val = 0
            for S in subsets:
                arg = list(nu)
                ok = True
                for j in S:
                    arg[j] -= 1
                    if arg[j] < 0:
                        ok = False
                        break
                if not ok:
                    continue
                term = q_dimension(n, i, tuple(arg), mode, store=store)
                val += -term if len(S) % 2 else term
            if val < 0:
                raise InconsistencyError(
                    f"negative weight multiplicity {val} at {nu}: "
                    f"bug or truncation too small")
            if val:
                entries[nu] = val
    return WeightTable(entries, D)


def _subsets(n):
    for mask in range(1 << n):
        yield [j for j in range(n) if mask >> j & 1]


def stabilization_window(n: int, i: int) -> int:
    return n + i


def lambda_dim(n: int, i: int, D: int, mode: Mode,
               *, store: ComponentStore | None = None):
    """Total dimension of the weight table plus a stabilization flag: true
    iff the top W = n + i degrees of the computed range are all zero."""
    table = lambda_weights(n, i, D, mode, store=store)
    W = stabilization_window(n, i)
    top = table.top_degree()
    stabilized = D >= W and top <= D - W
    return table.total(), stabilized


__all__ = [
    "HilbertSeries", "WeightTable", "ComponentStore", "DEFAULT_STORE",
    "l_spanning_monomial_entries", "m_spanning_generators",
    "component_basis", "member_of_m", "q_dimension", "hilbert_q",
    "lambda_weights", "lambda_dim", "stabilization_window",
]
