"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criteria 2 and the n=4 part of criterion 9 belong to the extended profile
(LIENILQ_EXTENDED=1); they are skipped by default and reported as such.

Criterion 10 asserts that the generator-entry spanning family generates the
same span as the monomial-entry ideal family. That statement is false
(products of two shorter brackets, such as [x1,x2]^2 at n=2 delta=(2,2),
lie in the ideal but not in the generator-entry span), so the test fails by
design at its first counterexample; see test_generator_entry_family_is_
incomplete in test_lcs.py and the corrected guard below, which passes.
"""

import itertools
import random

import pytest

from conftest import EXTENDED
from lienilq import characters, fsforms, identities, lcs, presentation
from lienilq.ncpoly import NCPoly, commutator
from lienilq.scalars import EXACT, mod, DEFAULT_PRIME, SECOND_PRIME
from lienilq.span import echelonize, spans_equal, words_of_multidegree

P1 = mod(DEFAULT_PRIME)
P2 = mod(SECOND_PRIME)
TWO_PRIMES = (P1, P2)


def report(num, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num}: {tag}{' ' if detail else ''}{detail}")


def multidegrees(n, total):
    return (t for t in itertools.product(range(total + 1), repeat=n)
            if sum(t) == total)


def test_criterion_1_null_pair_table(store):
    reports = identities.scan_null_pairs(7, TWO_PRIMES, exact_up_to=7,
                                         store=store)
    not_null = sorted((r.m, r.l) for r in reports
                      if not r.is_null and r.m >= 2)
    consistent = all(len(set(r.verdicts.values())) <= 1 for r in reports)
    exact_covered = all("exact" in r.verdicts
                        for r in reports if r.m >= 2 and r.m + r.l <= 7)
    ok = not_null == [(2, 2), (2, 4)] and consistent and exact_covered
    report(1, ok, f"not-null pairs {not_null}")
    assert not_null == [(2, 2), (2, 4)]
    assert consistent and exact_covered


@pytest.mark.extended
def test_criterion_2_extended_pairs(store):
    if not EXTENDED:
        report(2, True, "SKIPPED (extended profile disabled; "
                        "set LIENILQ_EXTENDED=1)")
        pytest.skip("extended profile disabled")
    results = {}
    for (m, l) in [(2, 6), (4, 4)]:
        rep = identities.check_null_pair(m, l, TWO_PRIMES, store=store)
        results[(m, l)] = rep
    ok = all(not rep.is_null and set(rep.verdicts.values()) == {False}
             for rep in results.values())
    report(2, ok, f"(2,6) null={results[(2, 6)].is_null}, "
                  f"(4,4) null={results[(4, 4)].is_null}")
    assert ok


def test_criterion_3_identity_suite(store):
    x = [None] + [NCPoly.generator(t, 5) for t in range(1, 6)]
    four_gens = identities.verify_four_term_identity(x[1], x[2], x[3], x[4])
    four_bracket = identities.verify_four_term_identity(
        x[1], x[2], x[3], commutator(x[4], x[5]))
    r_base = identities.verify_r_identity(1, 2, 3, 4, 5)
    rng = random.Random(2008)
    r_random = all(identities.verify_r_identity(
        *(rng.randint(1, 5) for _ in range(5))) for _ in range(10))
    s_member = lcs.member_of_m(identities.s_element(1, 2, 3, 4, 5), 4,
                               EXACT, store=store)
    ok = four_gens and four_bracket and r_base and r_random and s_member
    report(3, ok, f"four-term={four_gens and four_bracket} "
                  f"r-identity={r_base and r_random} s-in-M4={s_member}")
    assert ok


def test_criterion_4_product_containments(store):
    gl = all(identities.check_gupta_levin(3, 3, (1,) * 6, mode, store=store)
             for mode in TWO_PRIMES)
    tb = all(identities.check_triple_bracket(2, 2, 3, (1,) * 7, mode,
                                             store=store)
             for mode in TWO_PRIMES)
    ok = gl and tb
    report(4, ok, f"gupta-levin(3,3)@A6={gl} triple(2,2,3)@A7={tb}")
    assert ok


def test_criterion_5_q2_is_polynomial(store):
    ok = True
    for n in (2, 3):
        for total in range(0, 7):
            for delta in multidegrees(n, total):
                for mode in (P1, P2, EXACT):
                    if lcs.q_dimension(n, 2, delta, mode, store=store) != 1:
                        ok = False
    report(5, ok)
    assert ok


def test_criterion_6_fs_model(store):
    rep25 = fsforms.fs_check(2, 5, EXACT, store=store)
    rep34 = fsforms.fs_check(3, 4, EXACT, store=store)
    ok = rep25.passed and rep34.passed
    report(6, ok, f"(2,5) dims {rep25.dims}; (3,4) dims {rep34.dims}")
    assert rep25.passed, rep25.failures
    assert rep34.passed, rep34.failures


def test_criterion_7_lambda_dimensions(store):
    runs = [
        (2, 3, 7, EXACT, 2),
        (3, 3, 8, P1, 4),
        (4, 3, 11, P1, 8),
        (2, 4, 10, EXACT, 5),
        (3, 4, 11, P1, 18),
    ]
    results = {}
    ok = True
    for n, i, D, mode, expected in runs:
        dim, stabilized = lcs.lambda_dim(n, i, D, mode, store=store)
        results[(n, i)] = (dim, stabilized)
        ok = ok and dim == expected and stabilized
    # independent oracle for the i = 4 values: tableau dimension counts
    for n in (2, 3):
        oracle = (2 ** (n - 1)
                  + characters.kostka_weights((2, 1), n).total()
                  + characters.kostka_weights((2, 2), n).total())
        ok = ok and results[(n, 4)][0] == oracle
    report(7, ok, str(results))
    assert ok, results


def test_criterion_8_presentations(store):
    runs = [(2, 3, 6), (3, 3, 5), (2, 4, 7), (3, 4, 6)]
    ok = True
    details = []
    for n, i, D in runs:
        for mode in TWO_PRIMES:
            rep = presentation.verify_presentation(n, i, D, mode,
                                                   store=store)
            ok = ok and rep.passed
        details.append(f"({n},{i},{D})={rep.passed}")
    mutated = presentation.relations_q4(2).without("quadratic")
    mrep = presentation.verify_presentation(2, 4, 5, P1, relations=mutated,
                                            store=store)
    mutation_fails = (not mrep.passed
                      and min(sum(r.delta) for r in mrep.records
                              if not r.equal) <= 5)
    ok = ok and mutation_fails
    report(8, ok, " ".join(details) + f" mutation-detected={mutation_fails}")
    assert ok


def test_criterion_9_corollary_k3(store):
    rep2 = characters.verify_corollary_k3(2, EXACT, store=store)
    rep3 = characters.verify_corollary_k3(3, P1, store=store)
    ok = (rep2.passed and rep2.stabilized and rep3.passed and rep3.stabilized)
    detail = (f"n=2 {rep2.decomposition.multiplicities} "
              f"n=3 {rep3.decomposition.multiplicities}")
    if EXTENDED:
        rep4 = characters.verify_corollary_k3(4, P1, store=store)
        ok = ok and rep4.passed
        detail += (f" n=4 {rep4.decomposition.multiplicities} "
                   f"(stabilized={rep4.stabilized} at D={rep4.truncation})")
    else:
        detail += " (n=4 requires the extended profile)"
    report(9, ok, detail)
    assert ok


def _generator_vs_monomial_grid():
    for n in (2, 3):
        for total in range(2, 7):
            for delta in multidegrees(n, total):
                for i in range(2, min(total, 6) + 1):
                    yield n, i, delta
    for n in (4, 5, 6):
        for i in range(2, n + 1):
            yield n, i, (1,) * n


def _monomial_family(n, i, delta):
    vecs = []
    for beta in itertools.product(*(range(x + 1) for x in delta)):
        if not i <= sum(beta) <= sum(delta):
            continue
        rem = tuple(d - b for d, b in zip(delta, beta))
        for br in lcs.l_spanning_monomial_entries(n, i, beta, EXACT):
            for uv in words_of_multidegree(rem):
                for cut in range(len(uv) + 1):
                    u = NCPoly.word(uv[:cut], n)
                    v = NCPoly.word(uv[cut:], n)
                    vecs.append(u * br * v)
    return vecs


def test_criterion_10_generator_entry_oracle_equivalence():
    # implemented as specified; fails at its first counterexample because
    # the generator-entry family spans a proper subspace for i >= 3
    for n, i, delta in _generator_vs_monomial_grid():
        gen_basis = echelonize(lcs.m_spanning_generators(n, i, delta),
                               delta, EXACT, n=n)
        mono_basis = echelonize(_monomial_family(n, i, delta), delta,
                                EXACT, n=n)
        equal = spans_equal(gen_basis, mono_basis)
        if not equal:
            report(10, False,
                   f"first counterexample at n={n}, i={i}, delta={delta}: "
                   f"generator-entry rank {gen_basis.rank}, "
                   f"monomial-entry rank {mono_basis.rank}")
        assert equal, (
            f"generator-entry span differs from the monomial-entry ideal "
            f"span at n={n}, i={i}, delta={delta} "
            f"(ranks {gen_basis.rank} vs {mono_basis.rank})")
    report(10, True)


def test_criterion_10_corrected_reduced_family_guard(store):
    """The guard criterion 10 intends: the spanning family the pipeline
    actually uses is verified against the monomial-entry ideal family."""
    checked = 0
    for n, i, delta in _generator_vs_monomial_grid():
        if n == 6 and i > 4:
            continue  # covered at n <= 5; quotient too large for exact here
        mine = lcs.component_basis(n, i, delta, EXACT, store=store)
        mono = echelonize(_monomial_family(n, i, delta), delta, EXACT, n=n)
        assert spans_equal(mine, mono), (n, i, delta)
        checked += 1
    report("10-corrected", True, f"{checked} components")
