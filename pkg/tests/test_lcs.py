import itertools
import random

import pytest

from lienilq import lcs
from lienilq.ncpoly import NCPoly, commutator, left_normed_bracket
from lienilq.scalars import EXACT, mod, DEFAULT_PRIME, SECOND_PRIME
from lienilq.span import component_index, dim_component, echelonize, spans_equal

P1 = mod(DEFAULT_PRIME)
P2 = mod(SECOND_PRIME)


def gens(n):
    return [None] + [NCPoly.generator(i, n) for i in range(1, n + 1)]


def multidegrees(n, total):
    return (t for t in itertools.product(range(total + 1), repeat=n)
            if sum(t) == total)


def monomial_ideal_basis(n, i, delta, mode):
    """Ground truth: echelonized span of u * (monomial-entry brackets) * v."""
    from lienilq.span import words_of_multidegree
    vecs = []
    for beta in itertools.product(*(range(x + 1) for x in delta)):
        if not (i <= sum(beta) <= sum(delta)):
            continue
        rem = tuple(d - b for d, b in zip(delta, beta))
        for br in lcs.l_spanning_monomial_entries(n, i, beta, mode):
            for uv in words_of_multidegree(rem):
                for cut in range(len(uv) + 1):
                    u = NCPoly.word(uv[:cut], n, mode)
                    v = NCPoly.word(uv[cut:], n, mode)
                    vecs.append(u * br * v)
    return echelonize(vecs, delta, mode, n=n)


def test_l_spanning_examples():
    polys = lcs.l_spanning_monomial_entries(2, 2, (1, 1))
    as_terms = {frozenset(p.terms.items()) for p in polys}
    x = gens(2)
    c = commutator(x[1], x[2])
    assert frozenset(c.terms.items()) in as_terms
    assert frozenset((-c).terms.items()) in as_terms
    assert len(polys) == 2

    words = lcs.l_spanning_monomial_entries(2, 1, (2, 0))
    assert [p.terms for p in words] == [{(1, 1): 1}]

    polys = lcs.l_spanning_monomial_entries(2, 2, (2, 1))
    x = gens(2)
    expect = commutator(x[1] * x[2], x[1])
    assert any(p == expect for p in polys)
    expect = commutator(x[1], x[2] * x[1])
    assert any(p == expect for p in polys)


def test_m_spanning_generator_examples():
    fam = lcs.m_spanning_generators(2, 2, (1, 1))
    assert echelonize(fam, (1, 1), EXACT, n=2).rank == 1
    fam = lcs.m_spanning_generators(2, 3, (2, 1))
    assert echelonize(fam, (2, 1), EXACT, n=2).rank == 1
    assert lcs.m_spanning_generators(2, 3, (1, 1)) == []


def test_generator_entry_family_is_incomplete():
    # the generator-entry span misses [x1,x2]^2 at n=2, delta=(2,2); the
    # word-entry ideal span contains it
    x = gens(2)
    ysq = commutator(x[1], x[2]) * commutator(x[1], x[2])
    gen_basis = echelonize(lcs.m_spanning_generators(2, 3, (2, 2)),
                           (2, 2), EXACT, n=2)
    full_basis = lcs.component_basis(2, 3, (2, 2), EXACT)
    assert gen_basis.rank == 3
    assert full_basis.rank == 4
    assert not gen_basis.contains(ysq)
    assert full_basis.contains(ysq)


@pytest.mark.parametrize("n,maxdeg", [(2, 5), (3, 4)])
def test_component_basis_matches_monomial_oracle(n, maxdeg, store):
    for total in range(2, maxdeg + 1):
        for delta in multidegrees(n, total):
            for i in range(2, min(total, 4) + 1):
                mine = lcs.component_basis(n, i, delta, EXACT, store=store)
                oracle = monomial_ideal_basis(n, i, delta, EXACT)
                assert spans_equal(mine, oracle), (n, i, delta)


def test_component_basis_multilinear_against_oracle(store):
    mine = lcs.component_basis(4, 3, (1, 1, 1, 1), EXACT, store=store)
    oracle = monomial_ideal_basis(4, 3, (1, 1, 1, 1), EXACT)
    assert mine.rank == oracle.rank == 16
    assert spans_equal(mine, oracle)


def test_member_of_m_examples(store):
    x = gens(3)
    b = left_normed_bracket([x[1], x[2], x[3]])
    assert lcs.member_of_m(b, 3, EXACT, store=store)
    y = commutator(gens(2)[1], gens(2)[2])
    assert not lcs.member_of_m(y, 3, EXACT, store=store)
    assert lcs.member_of_m(y, 1, EXACT, store=store)
    x5 = gens(5)
    w = commutator(x5[1], x5[2]) * commutator(x5[3],
                                              commutator(x5[4], x5[5]))
    assert lcs.member_of_m(w, 4, EXACT, store=store)


def test_q_dimension_examples(store):
    for n in (2, 3):
        for total in range(0, 5):
            for delta in multidegrees(n, total):
                assert lcs.q_dimension(n, 2, delta, P1, store=store) == 1
    total_deg2 = sum(lcs.q_dimension(2, 3, d, EXACT, store=store)
                     for d in multidegrees(2, 2))
    assert total_deg2 == 4
    total_deg3 = sum(lcs.q_dimension(2, 4, d, EXACT, store=store)
                     for d in multidegrees(2, 3))
    assert total_deg3 == 8 == sum(dim_component(d)
                                  for d in multidegrees(2, 3))
    assert lcs.q_dimension(2, 1, (2, 1), EXACT) == 0
    assert lcs.q_dimension(2, 1, (0, 0), EXACT) == 1


def test_hilbert_examples(store):
    assert lcs.hilbert_q(2, 2, 4, P1, store=store).coefficients == \
        (1, 2, 3, 4, 5)
    assert lcs.hilbert_q(2, 3, 3, EXACT, store=store).coefficients == \
        (1, 2, 4, 6)
    for n, i in [(2, 3), (2, 4), (3, 3)]:
        assert lcs.hilbert_q(n, i, 1, P1, store=store).coefficients[1] == n


def test_dual_primal_and_mode_agreement(store):
    for n in (2, 3):
        for total in range(0, 6):
            for delta in multidegrees(n, total):
                for i in (2, 3, 4):
                    vals = {
                        lcs.q_dimension(n, i, delta, P1, store=store),
                        lcs.q_dimension(n, i, delta, P2, store=store),
                        lcs.q_dimension(n, i, delta, EXACT, store=store),
                        lcs.q_dimension(n, i, delta, P1, store=store,
                                        method="primal"),
                    }
                    assert len(vals) == 1, (n, i, delta, vals)


def test_nesting(store):
    for delta in [(2, 1), (2, 2), (1, 1, 1)]:
        n = len(delta)
        for i in (2, 3):
            outer = lcs.component_basis(n, i, delta, EXACT, store=store)
            inner = lcs.component_basis(n, i + 1, delta, EXACT, store=store)
            for k in range(inner.rank):
                assert outer.contains_vector(inner.row_dict(k))


def test_ideal_closure(store):
    rng = random.Random(7)
    basis = lcs.component_basis(2, 3, (2, 1), EXACT, store=store)
    for k in range(basis.rank):
        p = basis.row_poly(k)
        for _ in range(3):
            u = NCPoly.word([rng.randint(1, 2) for _ in range(rng.randint(0, 2))], 2)
            v = NCPoly.word([rng.randint(1, 2) for _ in range(rng.randint(0, 2))], 2)
            assert lcs.member_of_m(u * p * v, 3, EXACT, store=store)


def test_weight_symmetry(store):
    for delta in [(3, 1), (2, 1, 0), (2, 0, 1)]:
        n = len(delta)
        perms = set(itertools.permutations(delta))
        vals = {lcs.q_dimension(n, 3, d, P1, store=store, method="primal")
                for d in perms}
        assert len(vals) == 1
        assert vals.pop() == lcs.q_dimension(n, 3, delta, P1, store=store)


def test_lambda_examples(store):
    table = lcs.lambda_weights(2, 2, 6, P1, store=store)
    assert table.entries == {(0, 0): 1}
    table = lcs.lambda_weights(2, 3, 6, P1, store=store)
    assert table.entries == {(0, 0): 1, (1, 1): 1}
    dim, stab = lcs.lambda_dim(2, 3, 7, P1, store=store)
    assert (dim, stab) == (2, True)
    dim, stab = lcs.lambda_dim(2, 3, 6, P1, store=store)
    assert (dim, stab) == (2, False)  # window n+i=5 not yet met at D=6
    dim, stab = lcs.lambda_dim(2, 4, 10, EXACT, store=store)
    assert (dim, stab) == (5, True)


def test_series_identity(store):
    import math
    n, i, D = 2, 3, 6
    series = lcs.hilbert_q(n, i, D, P1, store=store)
    lam = lcs.lambda_weights(n, i, D, P1, store=store).by_total_degree()
    for d in range(D + 1):
        conv = sum(lam.get(k, 0) * math.comb(d - k + n - 1, n - 1)
                   for k in range(d + 1))
        assert series.coefficients[d] == conv


def test_store_disk_cache(tmp_path):
    from lienilq.lcs import ComponentStore
    s1 = ComponentStore(cache_dir=str(tmp_path))
    b1 = lcs.component_basis(2, 3, (2, 1), P1, store=s1)
    q1 = lcs.q_dimension(2, 3, (2, 2), P1, store=s1)
    files = list(tmp_path.iterdir())
    assert any(f.name.startswith("span_") for f in files)
    assert any(f.name.startswith("ann_") for f in files)
    s2 = ComponentStore(cache_dir=str(tmp_path))
    b2 = lcs.component_basis(2, 3, (2, 1), P1, store=s2)
    assert spans_equal(b1, b2)
    assert lcs.q_dimension(2, 3, (2, 2), P1, store=s2) == q1
