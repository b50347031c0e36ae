import io

import hypothesis.strategies as st
import pytest
from hypothesis import given

from lienilq.errors import DegreeError, ModeMismatchError
from lienilq.ncpoly import NCPoly, commutator
from lienilq.scalars import EXACT, mod, DEFAULT_PRIME
from lienilq.span import (component_index, deserialize_basis, dim_component,
                          echelonize, echelonize_rows, serialize_basis,
                          spans_equal, words_of_multidegree)


def gens(n):
    return [None] + [NCPoly.generator(i, n) for i in range(1, n + 1)]


def test_component_words_deglex_sorted():
    comp = component_index(2, (2, 1))
    assert comp.words == ((1, 1, 2), (1, 2, 1), (2, 1, 1))
    assert comp.dim == dim_component((2, 1)) == 3
    assert dim_component((1, 1, 1, 1)) == 24
    assert len(list(words_of_multidegree((2, 2)))) == 6


def test_echelonize_examples():
    x = gens(2)
    c = commutator(x[1], x[2])
    s = x[1] * x[2] + x[2] * x[1]
    assert echelonize([c, s], (1, 1), EXACT).rank == 2
    assert echelonize([NCPoly.zero(2)], (1, 1), EXACT, n=2).rank == 0
    three = (x[1] * x[2]).scale(3)
    assert echelonize([three], (1, 1), mod(3), n=2).rank == 0
    assert echelonize([three], (1, 1), EXACT, n=2).rank == 1


def test_contains_examples():
    x = gens(2)
    c = commutator(x[1], x[2])
    b = echelonize([x[1] * x[2], x[2] * x[1]], (1, 1), EXACT)
    assert b.contains(c)
    b2 = echelonize([c], (1, 1), EXACT)
    assert not b2.contains(x[1] * x[2])
    assert b2.contains(NCPoly.zero(2))


def test_spans_equal_examples():
    x = gens(2)
    c = commutator(x[1], x[2])
    a = echelonize([c], (1, 1), EXACT)
    b = echelonize([(-2) * (x[1] * x[2]) + 2 * (x[2] * x[1])], (1, 1), EXACT)
    assert spans_equal(a, b)
    z1 = echelonize([], (1, 1), EXACT, n=2)
    z2 = echelonize([NCPoly.zero(2)], (1, 1), EXACT, n=2)
    assert spans_equal(z1, z2)
    assert not spans_equal(echelonize([x[1] * x[2]], (1, 1), EXACT),
                           echelonize([x[2] * x[1]], (1, 1), EXACT))


def test_errors():
    x = gens(2)
    with pytest.raises(DegreeError):
        echelonize([x[1] + x[1] * x[2]], (1, 1), EXACT)
    with pytest.raises(DegreeError):
        echelonize([x[1] * x[1]], (1, 1), EXACT)
    b = echelonize([x[1] * x[2]], (1, 1), EXACT)
    with pytest.raises(ModeMismatchError):
        b.contains(NCPoly.generator(1, 2, mod(7)) * NCPoly.generator(2, 2, mod(7)))
    with pytest.raises(DegreeError):
        b.contains(x[1])


def rows_strategy(ncols=8, nrows=6):
    entry = st.integers(-3, 3)
    row = st.dictionaries(st.integers(0, ncols - 1), entry, max_size=4)
    return st.lists(row, max_size=nrows)


@given(rows_strategy())
def test_rank_bounds_and_self_containment(rows):
    comp = component_index(4, (1, 1, 1, 0))
    rows = [{c % comp.dim: v for c, v in r.items()} for r in rows]
    basis = echelonize_rows([dict(r) for r in rows], comp, EXACT)
    assert basis.rank <= len(rows)
    assert basis.rank <= comp.dim
    for r in rows:
        cleaned = {c: EXACT.coerce(v) for c, v in r.items() if v}
        assert basis.contains_vector(cleaned)


@given(rows_strategy(), st.sampled_from([2, 3, 5, 101, DEFAULT_PRIME]))
def test_modp_rank_at_most_exact_rank(rows, p):
    comp = component_index(4, (1, 1, 1, 0))
    rows = [{c % comp.dim: v for c, v in r.items()} for r in rows]
    exact_rank = echelonize_rows([dict(r) for r in rows], comp, EXACT).rank
    mod_rank = echelonize_rows([dict(r) for r in rows], comp, mod(p)).rank
    assert mod_rank <= exact_rank


@given(rows_strategy())
def test_engines_agree(rows):
    comp = component_index(4, (1, 1, 1, 0))
    rows = [{c % comp.dim: v for c, v in r.items()} for r in rows]
    p = mod(DEFAULT_PRIME)
    ranks = set()
    bases = {}
    for engine in ("dense", "sparse", "forward"):
        b = echelonize_rows([dict(r) for r in rows], comp, p, engine=engine)
        ranks.add(b.rank)
        bases[engine] = b
    assert len(ranks) == 1
    probe = {0: 1, 3: 2}
    answers = {bases[e].contains_vector(dict(probe)) for e in bases}
    assert len(answers) == 1
    be = echelonize_rows([dict(r) for r in rows], comp, EXACT,
                         engine="forward")
    bs = echelonize_rows([dict(r) for r in rows], comp, EXACT,
                         engine="sparse")
    assert be.rank == bs.rank


def test_serialize_roundtrip():
    x = gens(2)
    for mode in (EXACT, mod(DEFAULT_PRIME)):
        basis = echelonize(
            [commutator(x[1], x[2]).scale(EXACT.coerce(1)) if mode.is_exact
             else NCPoly(2, commutator(x[1], x[2]).terms, mode),
             NCPoly(2, {(1, 2): 1}, mode)], (1, 1), mode)
        buf = io.StringIO()
        serialize_basis(basis, buf)
        buf.seek(0)
        loaded = deserialize_basis(buf)
        assert loaded.rank == basis.rank
        assert loaded.fully_reduced == basis.fully_reduced
        assert spans_equal(loaded, basis)


def test_forward_exact_fallback_matches():
    from lienilq.span import _ForwardExactPy
    comp = component_index(2, (2, 2))
    rows = [{0: 1, 3: 2}, {1: 1, 3: 5}, {0: 1, 1: 1}, {3: 7}, {2: 4, 5: 1}]
    fast = echelonize_rows([dict(r) for r in rows], comp, EXACT,
                           engine="forward")
    slow = _ForwardExactPy(EXACT, comp.dim)
    for r in rows:
        slow.insert(dict(r))
    assert fast.rank == slow.rank
    assert fast.contains_vector({0: 1, 3: 2})
    assert slow.probe({0: 1, 3: 2})
    assert not fast.contains_vector({4: 1})
    assert not slow.probe({4: 1})
