"""Echelonized spans inside one multidegree component of A_n.

A component is coordinatized by its deglex-ordered word list. Spans answer
rank, membership and equality queries. Three exact elimination engines
cover the practical regimes:

- ``dense``   components of dimension <= 512, reduced in batches;
- ``sparse``  incremental fully reduced echelon (RREF) held as sparse rows,
              fast whenever the quotient of the component by the span is
              low dimensional (the typical ideal-component shape);
- ``forward`` forward-only echelon over F_p (jitted) or over the integers,
              for huge components whose span complement is large, where
              full reduction would densify rows catastrophically.

No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

from .errors import DegreeError, ModeMismatchError
from .scalars import EXACT, Mode, format_scalar, parse_scalar
from .ncpoly import NCPoly, multidegree_of

DENSE_LIMIT = 512
SPAN_FORMAT_VERSION = 1


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """(A @ B) % p for int64 operands with entries in [0, p), p < 2^31,
    splitting A to keep every intermediate inside int64."""
    hi, lo = np.divmod(A, 1 << 16)
    return (((hi @ B % p) << 16) + lo @ B) % p


def dim_component(delta: tuple) -> int:
    """Number of words of the given multidegree (a multinomial)."""
    total = sum(delta)
    out = 1
    rem = total
    for d in delta:
        out *= math.comb(rem, d)
        rem -= d
    return out


def words_of_multidegree(delta: tuple) -> Iterator[tuple]:
    """All words of the given multidegree, in lex (= deglex) order."""
    n = len(delta)
    if sum(delta) == 0:
        yield ()
        return
    counts = list(delta)
    word: list = []

    def rec():
        if len(word) == sum(delta):
            yield tuple(word)
            return
        for j in range(n):
            if counts[j] > 0:
                counts[j] -= 1
                word.append(j + 1)
                yield from rec()
                word.pop()
                counts[j] += 1

    yield from rec()


class ComponentIndex:
    """Deglex-ordered word list of one multidegree component, with ranks."""

    __slots__ = ("n", "delta", "words", "index")

    def __init__(self, n: int, delta: tuple):
        if len(delta) != n:
            raise DegreeError(f"multidegree {delta} does not match n={n}")
        self.n = n
        self.delta = tuple(delta)
        self.words = tuple(words_of_multidegree(self.delta))
        self.index = {w: k for k, w in enumerate(self.words)}

    @property
    def dim(self) -> int:
        return len(self.words)

    def __repr__(self):
        return f"ComponentIndex(n={self.n}, delta={self.delta}, dim={self.dim})"


@lru_cache(maxsize=8)
def component_index(n: int, delta: tuple) -> ComponentIndex:
    return ComponentIndex(n, delta)


def poly_to_row(p: NCPoly, comp: ComponentIndex) -> dict:
    """Coordinates of a homogeneous polynomial in a component."""
    row = {}
    for w, c in p.terms.items():
        k = comp.index.get(w)
        if k is None:
            raise DegreeError(
                f"word {w} has multidegree {multidegree_of(w, p.n)}, "
                f"component expects {comp.delta}")
        row[k] = c
    return row


def row_to_poly(row: dict, comp: ComponentIndex, mode: Mode) -> NCPoly:
    return NCPoly(comp.n, {comp.words[k]: v for k, v in row.items()}, mode)


# ---------------------------------------------------------------------------
# sparse incremental RREF


class _SparseRref:
    """Fully reduced sparse echelon; rows never contain other pivot columns,
    so their size is bounded by 1 + (quotient dimension)."""

    def __init__(self, mode: Mode):
        self.mode = mode
        self.p = mode.p
        self.rows: dict = {}      # pivot col -> {col: coeff}, pivot entry == 1
        self.colusers: dict = {}  # col -> set of pivot cols using it

    def insert(self, vec: dict):
        p = self.p
        rows = self.rows
        res = {}
        for c, v in vec.items():
            v = v % p if p is not None else v
            if v:
                res[c] = v
        for c in sorted(k for k in res if k in rows):
            coeff = res.pop(c, 0)
            if not coeff:
                continue
            for cc, vv in rows[c].items():
                if cc == c:
                    continue
                w = res.get(cc, 0) - coeff * vv
                if p is not None:
                    w %= p
                if w:
                    res[cc] = w
                else:
                    res.pop(cc, None)
        res = {c: v for c, v in res.items() if v}
        if not res:
            return None
        c0 = min(res)
        inv = self.mode.inv(res[c0])
        if p is None:
            newrow = {c: v * inv for c, v in res.items()}
        else:
            newrow = {c: v * inv % p for c, v in res.items()}
        for pc in list(self.colusers.get(c0, ())):
            self._eliminate_col(pc, c0, newrow)
        rows[c0] = newrow
        for cc in newrow:
            if cc != c0:
                self.colusers.setdefault(cc, set()).add(c0)
        return c0

    def _eliminate_col(self, pc: int, col: int, newrow: dict):
        p = self.p
        row = self.rows[pc]
        coeff = row.pop(col)
        self.colusers[col].discard(pc)
        for cc, vv in newrow.items():
            if cc == col:
                continue
            w = row.get(cc, 0) - coeff * vv
            if p is not None:
                w %= p
            if w:
                if cc not in row:
                    self.colusers.setdefault(cc, set()).add(pc)
                row[cc] = w
            elif cc in row:
                del row[cc]
                self.colusers[cc].discard(pc)

    def finalize(self):
        out = []
        for c0 in sorted(self.rows):
            row = self.rows[c0]
            cols = sorted(row)
            out.append((np.array(cols, dtype=np.int64),
                        [row[c] for c in cols]))
        return out, True


# ---------------------------------------------------------------------------
# dense batch RREF (component dimension <= DENSE_LIMIT)


class _DenseRref:
    def __init__(self, mode: Mode, ncols: int, chunk: int = 2048):
        self.mode = mode
        self.p = mode.p
        self.ncols = ncols
        self.chunk = chunk
        self.pivcols: list = []
        self.pivrows: list = []   # aligned with pivcols
        self.buffer: list = []

    def insert(self, vec: dict):
        self.buffer.append(vec)
        if len(self.buffer) >= self.chunk:
            self._flush()

    def _flush(self):
        if not self.buffer:
            return
        if self.p is not None:
            self._flush_mod()
        else:
            self._flush_exact()
        self.buffer = []

    def _flush_mod(self):
        p = self.p
        M = np.zeros((len(self.buffer), self.ncols), dtype=np.int64)
        for r, vec in enumerate(self.buffer):
            for c, v in vec.items():
                M[r, c] = (M[r, c] + v) % p
        if self.pivcols:
            P = np.array(self.pivrows, dtype=np.int64)
            M = (M - matmul_mod(M[:, self.pivcols], P, p)) % p
        for r in range(M.shape[0]):
            row = M[r]
            for k in range(len(self.pivcols)):
                f = row[self.pivcols[k]]
                if f:
                    row = (row - f * np.asarray(self.pivrows[k])) % p
            nz = np.flatnonzero(row)
            if nz.size == 0:
                continue
            c0 = int(nz[0])
            inv = pow(int(row[c0]), -1, p)
            row = row * inv % p
            self._add_pivot_mod(c0, row)

    def _add_pivot_mod(self, c0, row):
        p = self.p
        for k in range(len(self.pivrows)):
            prow = np.asarray(self.pivrows[k])
            f = prow[c0]
            if f:
                self.pivrows[k] = (prow - f * row) % p
        self.pivcols.append(c0)
        self.pivrows.append(row)
        order = np.argsort(self.pivcols, kind="stable")
        self.pivcols = [self.pivcols[i] for i in order]
        self.pivrows = [self.pivrows[i] for i in order]

    def _flush_exact(self):
        for vec in self.buffer:
            row = [Fraction(0)] * self.ncols
            for c, v in vec.items():
                row[c] += v
            for k, c0 in enumerate(self.pivcols):
                f = row[c0]
                if f:
                    prow = self.pivrows[k]
                    row = [a - f * b for a, b in zip(row, prow)]
            nz = [c for c, a in enumerate(row) if a]
            if not nz:
                continue
            c0 = nz[0]
            f = row[c0]
            row = [a / f for a in row]
            for k in range(len(self.pivrows)):
                g = self.pivrows[k][c0]
                if g:
                    self.pivrows[k] = [a - g * b
                                       for a, b in zip(self.pivrows[k], row)]
            pos = 0
            while pos < len(self.pivcols) and self.pivcols[pos] < c0:
                pos += 1
            self.pivcols.insert(pos, c0)
            self.pivrows.insert(pos, row)

    def _pivpos(self, c0):
        import bisect
        k = bisect.bisect_left(self.pivcols, c0)
        if k < len(self.pivcols) and self.pivcols[k] == c0:
            return k
        return None

    def finalize(self):
        self._flush()
        out = []
        for c0, row in zip(self.pivcols, self.pivrows):
            arr = np.asarray(row) if self.p is not None else row
            if self.p is not None:
                nz = np.flatnonzero(arr)
                out.append((nz.astype(np.int64), [int(arr[c]) for c in nz]))
            else:
                nz = [c for c, a in enumerate(row) if a]
                out.append((np.array(nz, dtype=np.int64),
                            [row[c] for c in nz]))
        return out, True


# ---------------------------------------------------------------------------
# forward-only echelon for huge components


class _ForwardMod:
    def __init__(self, mode: Mode, ncols: int, batch: int = 4096,
                 pool_start: int = 1 << 21):
        from . import _fkernels
        self.k = _fkernels
        self.p = mode.p
        self.ncols = ncols
        self.batch = batch
        self.buf = np.zeros(ncols, dtype=np.int64)
        self.pivot_row_of_col = np.full(ncols, -1, dtype=np.int64)
        self.pool_cols = np.zeros(pool_start, dtype=np.int32)
        self.pool_vals = np.zeros(pool_start, dtype=np.int64)
        self.row_ptr = np.zeros(ncols + 1, dtype=np.int64)
        self.state = np.zeros(4, dtype=np.int64)
        self._cols: list = []
        self._vals: list = []
        self._ptr: list = [0]

    def insert(self, vec: dict):
        p = self.p
        for c, v in vec.items():
            v %= p
            if v:
                self._cols.append(c)
                self._vals.append(v)
        self._ptr.append(len(self._cols))
        if len(self._ptr) - 1 >= self.batch:
            self.flush()

    def flush(self):
        if len(self._ptr) <= 1:
            return
        in_cols = np.array(self._cols, dtype=np.int64)
        in_vals = np.array(self._vals, dtype=np.int64)
        in_ptr = np.array(self._ptr, dtype=np.int64)
        start = 0
        while True:
            self.k.insert_rows(in_cols, in_vals, in_ptr, start, self.buf,
                               self.pivot_row_of_col, self.pool_cols,
                               self.pool_vals, self.row_ptr, self.state,
                               self.p)
            if self.state[2] == self.k.STATUS_GROW:
                start = int(self.state[3])
                cap = self.pool_cols.shape[0] * 2
                self.pool_cols = np.resize(self.pool_cols, cap)
                self.pool_vals = np.resize(self.pool_vals, cap)
                continue
            break
        self._cols, self._vals, self._ptr = [], [], [0]

    @property
    def rank(self) -> int:
        return int(self.state[0])

    def probe(self, vec: dict) -> bool:
        """True iff the vector lies in the current span."""
        self.flush()
        cols, vals = [], []
        p = self.p
        for c, v in vec.items():
            v %= p
            if v:
                cols.append(c)
                vals.append(v)
        if not cols:
            return True
        stuck = self.k.probe_row(np.array(cols, dtype=np.int64),
                                 np.array(vals, dtype=np.int64), self.buf,
                                 self.pivot_row_of_col, self.pool_cols,
                                 self.pool_vals, self.row_ptr, self.p)
        return stuck < 0

    def finalize(self):
        self.flush()
        n_piv = int(self.state[0])
        order = np.argsort([self.pool_cols[self.row_ptr[r]]
                            for r in range(n_piv)])
        out = []
        for r in order:
            a, b = int(self.row_ptr[r]), int(self.row_ptr[r + 1])
            out.append((self.pool_cols[a:b].astype(np.int64).copy(),
                        [int(v) for v in self.pool_vals[a:b]]))
        return out, False


class _ForwardExact:
    """Forward echelon over Q: jitted integer fraction-free elimination,
    falling back to the dict implementation if entries outgrow int64."""

    def __init__(self, mode: Mode, ncols: int, batch: int = 4096,
                 pool_start: int = 1 << 21):
        from . import _fkernels
        self.k = _fkernels
        self.ncols = ncols
        self.batch = batch
        self.buf = np.zeros(ncols, dtype=np.int64)
        self.pivot_row_of_col = np.full(ncols, -1, dtype=np.int64)
        self.pool_cols = np.zeros(pool_start, dtype=np.int32)
        self.pool_vals = np.zeros(pool_start, dtype=np.int64)
        self.row_ptr = np.zeros(ncols + 1, dtype=np.int64)
        self.state = np.zeros(4, dtype=np.int64)
        self._cols: list = []
        self._vals: list = []
        self._ptr: list = [0]
        self._history: list = []
        self._fallback = None

    def insert(self, vec: dict):
        ints = _ForwardExactPy._clear(vec)
        if self._fallback is not None:
            self._fallback.insert(ints)
            return
        self._history.append(ints)
        for c, v in ints.items():
            self._cols.append(c)
            self._vals.append(v)
        self._ptr.append(len(self._cols))
        if len(self._ptr) - 1 >= self.batch:
            self.flush()

    def flush(self):
        if self._fallback is not None or len(self._ptr) <= 1:
            return
        in_cols = np.array(self._cols, dtype=np.int64)
        in_vals = np.array(self._vals, dtype=np.int64)
        in_ptr = np.array(self._ptr, dtype=np.int64)
        start = 0
        while True:
            self.k.insert_rows_fracfree(in_cols, in_vals, in_ptr, start,
                                        self.buf, self.pivot_row_of_col,
                                        self.pool_cols, self.pool_vals,
                                        self.row_ptr, self.state)
            if self.state[2] == self.k.STATUS_GROW:
                start = int(self.state[3])
                cap = self.pool_cols.shape[0] * 2
                self.pool_cols = np.resize(self.pool_cols, cap)
                self.pool_vals = np.resize(self.pool_vals, cap)
                continue
            if self.state[2] == self.k.STATUS_OVERFLOW:
                self._switch_to_fallback()
                return
            break
        self._cols, self._vals, self._ptr = [], [], [0]

    def _switch_to_fallback(self):
        fb = _ForwardExactPy(EXACT, self.ncols)
        for ints in self._history:
            fb.insert(ints)
        self._fallback = fb
        self._cols, self._vals, self._ptr = [], [], [0]
        self._history = []

    @property
    def rank(self) -> int:
        if self._fallback is not None:
            return self._fallback.rank
        return int(self.state[0])

    def probe(self, vec: dict) -> bool:
        self.flush()
        if self._fallback is not None:
            return self._fallback.probe(vec)
        ints = _ForwardExactPy._clear(vec)
        if not ints:
            return True
        cols = np.array(sorted(ints), dtype=np.int64)
        vals = np.array([ints[int(c)] for c in cols], dtype=np.int64)
        out = self.k.probe_row_fracfree(cols, vals, self.buf,
                                        self.pivot_row_of_col,
                                        self.pool_cols, self.pool_vals,
                                        self.row_ptr)
        if out == -2:
            self._switch_to_fallback()
            return self._fallback.probe(vec)
        return out == -1

    def finalize(self):
        self.flush()
        if self._fallback is not None:
            return self._fallback.finalize()
        n_piv = int(self.state[0])
        order = np.argsort([self.pool_cols[self.row_ptr[r]]
                            for r in range(n_piv)])
        out = []
        for r in order:
            a, b = int(self.row_ptr[r]), int(self.row_ptr[r + 1])
            out.append((self.pool_cols[a:b].astype(np.int64).copy(),
                        [int(v) for v in self.pool_vals[a:b]]))
        return out, False


class _ForwardExactPy:
    """Forward echelon over Q via integer fraction-free dict rows."""

    def __init__(self, mode: Mode, ncols: int):
        self.ncols = ncols
        self.rows: dict = {}  # pivot col -> {col: int}, content 1, lead > 0

    @staticmethod
    def _clear(vec: dict) -> dict:
        den = 1
        for v in vec.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // math.gcd(den, v.denominator)
        out = {}
        for c, v in vec.items():
            w = int(v * den)
            if w:
                out[c] = w
        return out

    @staticmethod
    def _normalize(vec: dict, lead_col: int) -> dict:
        g = 0
        for v in vec.values():
            g = math.gcd(g, v)
        if g > 1:
            vec = {c: v // g for c, v in vec.items()}
        if vec[lead_col] < 0:
            vec = {c: -v for c, v in vec.items()}
        return vec

    def _reduce(self, vec: dict):
        """Returns (residual dict, its leading col) or (None, None)."""
        res = self._clear(vec)
        if not res:
            return None, None
        c = min(res)
        ncols = self.ncols
        steps = 0
        while c < ncols:
            v = res.get(c, 0)
            if not v:
                c += 1
                continue
            row = self.rows.get(c)
            if row is None:
                return res, c
            lead = row[c]
            g = math.gcd(v, lead)
            mul_res, mul_row = lead // g, v // g
            if mul_res != 1:
                for cc in res:
                    res[cc] *= mul_res
            for cc, vv in row.items():
                w = res.get(cc, 0) - mul_row * vv
                if w:
                    res[cc] = w
                else:
                    res.pop(cc, None)
            steps += 1
            if steps % 64 == 0 and res:
                g = 0
                for vv in res.values():
                    g = math.gcd(g, vv)
                if g > 1:
                    for cc in list(res):
                        res[cc] //= g
            c += 1
        return None, None

    def insert(self, vec: dict):
        res, c0 = self._reduce(vec)
        if res is None:
            return None
        self.rows[c0] = self._normalize(res, c0)
        return c0

    def probe(self, vec: dict) -> bool:
        res, _ = self._reduce(vec)
        return res is None

    def flush(self):
        pass

    @property
    def rank(self):
        return len(self.rows)

    def finalize(self):
        out = []
        for c0 in sorted(self.rows):
            row = self.rows[c0]
            cols = sorted(row)
            out.append((np.array(cols, dtype=np.int64),
                        [row[c] for c in cols]))
        return out, False


def _make_engine(mode: Mode, ncols: int, engine: str):
    if engine == "auto":
        engine = "dense" if ncols <= DENSE_LIMIT else "sparse"
    if engine == "dense":
        return _DenseRref(mode, ncols)
    if engine == "sparse":
        return _SparseRref(mode)
    if engine == "forward":
        if mode.is_exact:
            return _ForwardExact(mode, ncols)
        return _ForwardMod(mode, ncols)
    raise ValueError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# the public basis object


@dataclass
class SpanBasis:
    """Echelonized basis of a subspace of one component.

    Rows are (cols, vals) with strictly increasing pivot columns. When
    ``fully_reduced`` is true the basis is the canonical RREF (pivot
    coefficient 1, every row reduced against all other pivots); the forward
    engines keep forward echelon only, which preserves every rank and
    membership answer.
    """

    component: ComponentIndex
    mode: Mode
    rows: list
    fully_reduced: bool
    _engine: object = field(default=None, repr=False, compare=False)
    _pivot_map: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._pivot_map is None:
            self._pivot_map = {int(cols[0]): k
                               for k, (cols, vals) in enumerate(self.rows)}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivot_cols(self) -> list:
        return sorted(self._pivot_map)

    def row_dict(self, k: int) -> dict:
        cols, vals = self.rows[k]
        return {int(c): v for c, v in zip(cols, vals)}

    def row_poly(self, k: int) -> NCPoly:
        return row_to_poly(self.row_dict(k), self.component, self.mode)

    def to_polys(self) -> list:
        return [self.row_poly(k) for k in range(self.rank)]

    def reduce_vector(self, vec: dict) -> dict:
        """Residue of a coordinate vector after elimination by the rows."""
        p = self.mode.p
        res = {}
        for c, v in vec.items():
            v = self.mode.coerce(v)
            if v != 0:
                res[c] = v
        if self.fully_reduced:
            for c in sorted(k for k in res if k in self._pivot_map):
                coeff = res.pop(c, 0)
                if not coeff:
                    continue
                cols, vals = self.rows[self._pivot_map[c]]
                for cc, vv in zip(cols, vals):
                    cc = int(cc)
                    if cc == c:
                        continue
                    w = res.get(cc, 0) - coeff * vv
                    if p is not None:
                        w %= p
                    if w:
                        res[cc] = w
                    else:
                        res.pop(cc, None)
            return res
        while res:
            c = min(res)
            k = self._pivot_map.get(c)
            if k is None:
                return res
            cols, vals = self.rows[k]
            lead = vals[0]
            coeff = res[c] * self.mode.inv(lead)
            if p is not None:
                coeff %= p
            for cc, vv in zip(cols, vals):
                cc = int(cc)
                w = res.get(cc, 0) - coeff * vv
                if p is not None:
                    w %= p
                if w:
                    res[cc] = w
                else:
                    res.pop(cc, None)
        return res

    def contains_vector(self, vec: dict) -> bool:
        if self._engine is not None and hasattr(self._engine, "probe"):
            return self._engine.probe(dict(vec))
        return not self.reduce_vector(vec)

    def contains(self, p: NCPoly) -> bool:
        if p.is_zero():
            return True
        if not _mode_compatible(p.mode, self.mode):
            raise ModeMismatchError(
                f"poly mode {p.mode.tag()} vs basis mode {self.mode.tag()}")
        d = p.multidegree()
        if d is None or d != self.component.delta:
            raise DegreeError(
                f"polynomial is not homogeneous of degree {self.component.delta}")
        return self.contains_vector(poly_to_row(p, self.component))


def _mode_compatible(a: Mode, b: Mode) -> bool:
    return a == b or a.is_exact


def echelonize(vectors: Iterable[NCPoly], delta: tuple, mode: Mode,
               *, n: int | None = None, engine: str = "auto") -> SpanBasis:
    """Echelonized span of homogeneous polynomials of one multidegree."""
    vectors = list(vectors)
    if n is None:
        if not vectors:
            raise DegreeError("cannot infer ambient n from an empty list")
        n = vectors[0].n
    comp = component_index(n, tuple(delta))
    rows = []
    for v in vectors:
        if v.n != n:
            raise DegreeError(f"ambient mismatch: A_{v.n} vs A_{n}")
        if not _mode_compatible(v.mode, mode):
            raise ModeMismatchError(
                f"vector mode {v.mode.tag()} vs requested {mode.tag()}")
        if v.is_zero():
            continue
        if v.multidegree() != comp.delta:
            raise DegreeError(
                f"vector of degree {v.multidegree()} in component {comp.delta}")
        rows.append({c: mode.coerce(x)
                     for c, x in poly_to_row(v, comp).items()})
    return echelonize_rows(rows, comp, mode, engine=engine)


def echelonize_rows(rows: Iterable[dict], comp: ComponentIndex, mode: Mode,
                    *, engine: str = "auto") -> SpanBasis:
    """Row-level variant of :func:`echelonize`; rows are col->coeff dicts."""
    eng = _make_engine(mode, comp.dim, engine)
    for row in rows:
        eng.insert(row)
    out_rows, fully = eng.finalize()
    keep = (eng if isinstance(eng, (_ForwardMod, _ForwardExact,
                                    _ForwardExactPy)) else None)
    return SpanBasis(comp, mode, out_rows, fully, _engine=keep)


def contains(basis: SpanBasis, v: NCPoly) -> bool:
    return basis.contains(v)


def spans_equal(a: SpanBasis, b: SpanBasis) -> bool:
    """Equal rank plus mutual containment of rows."""
    if a.component.n != b.component.n or a.component.delta != b.component.delta:
        raise DegreeError("bases live in different components")
    if a.mode != b.mode:
        raise ModeMismatchError(
            f"mode mismatch: {a.mode.tag()} vs {b.mode.tag()}")
    if a.rank != b.rank:
        return False
    if a.fully_reduced and b.fully_reduced:
        if a.pivot_cols() != b.pivot_cols():
            return False
        return all(a.row_dict(k) == b.row_dict(k) for k in range(a.rank))
    return (all(b.contains_vector(a.row_dict(k)) for k in range(a.rank))
            and all(a.contains_vector(b.row_dict(k)) for k in range(b.rank)))


# ---------------------------------------------------------------------------
# serialization (sparse text rows: pivot col then col:val pairs)


def serialize_basis(basis: SpanBasis, fh):
    comp = basis.component
    fh.write(f"lienilq-span {SPAN_FORMAT_VERSION}\n")
    fh.write(f"n {comp.n}\n")
    fh.write(f"delta {','.join(map(str, comp.delta))}\n")
    fh.write(f"mode {basis.mode.tag()}\n")
    fh.write(f"ncols {comp.dim}\n")
    fh.write(f"rank {basis.rank}\n")
    fh.write(f"fully_reduced {int(basis.fully_reduced)}\n")
    for cols, vals in basis.rows:
        pairs = " ".join(f"{int(c)}:{format_scalar(v)}"
                         for c, v in zip(cols, vals))
        fh.write(f"{int(cols[0])} {pairs}\n")


def deserialize_basis(fh) -> SpanBasis:
    header = fh.readline().split()
    if header[:1] != ["lienilq-span"] or int(header[1]) != SPAN_FORMAT_VERSION:
        raise ValueError(f"unsupported span file header {header}")
    meta = {}
    for _ in range(6):
        key, val = fh.readline().split(None, 1)
        meta[key] = val.strip()
    from .scalars import mode_from_tag
    mode = mode_from_tag(meta["mode"])
    delta = tuple(int(x) for x in meta["delta"].split(","))
    comp = component_index(int(meta["n"]), delta)
    rows = []
    for line in fh:
        parts = line.split()
        if not parts:
            continue
        cols, vals = [], []
        for pair in parts[1:]:
            c, v = pair.split(":")
            cols.append(int(c))
            vals.append(parse_scalar(v, mode))
        rows.append((np.array(cols, dtype=np.int64), vals))
    return SpanBasis(comp, mode, rows, bool(int(meta["fully_reduced"])))
