import pytest

from lienilq import lcs
from lienilq import presentation as pres
from lienilq.ncpoly import NCPoly, commutator, left_normed_bracket, parse_poly
from lienilq.scalars import EXACT, mod, DEFAULT_PRIME
from lienilq.span import echelonize, spans_equal

P1 = mod(DEFAULT_PRIME)


def gens(n):
    return [None] + [NCPoly.generator(i, n) for i in range(1, n + 1)]


def test_relation_instances_q3():
    rels = pres.relations_q3(2)
    x = gens(2)
    lie = commutator(x[1], commutator(x[1], x[2]))
    assert any(r.poly == lie for r in rels.labelled("lie"))
    y12 = commutator(x[1], x[2])
    ysq = y12 * y12
    assert any(r.poly == ysq for r in rels.labelled("quadratic"))


def test_relations_are_sound(store):
    for n in (2, 3):
        for rels, i in [(pres.relations_q3(n), 3), (pres.relations_q4(n), 4)]:
            for r in rels.relations:
                assert lcs.member_of_m(r.poly, i, P1, store=store), \
                    (n, i, r.label)


def test_relations_q4_cubic_includes_y_cubed():
    rels = pres.relations_q4(2)
    x = gens(2)
    y = commutator(x[1], x[2])
    ycubed = y * y * y
    assert any(r.poly == ycubed for r in rels.labelled("cubic"))


def test_z_linear_relations_hold_identically():
    x = gens(3)

    def z(i, j, k):
        return left_normed_bracket([x[i], x[j], x[k]])

    for (i, j, k) in [(1, 2, 3), (2, 3, 1), (1, 3, 2)]:
        assert (z(i, j, k) + z(j, i, k)).is_zero()
        assert (z(i, j, k) + z(j, k, i) + z(k, i, j)).is_zero()


def test_ideal_span_examples():
    x = gens(2)
    c = commutator(x[1], x[2])
    rels = pres.RelationSet(2, 3, [pres.Relation("lie", c)])
    assert pres.ideal_span(rels, (1, 1), EXACT).rank == 1
    assert pres.ideal_span(rels, (2, 1), EXACT).rank == 2
    q4 = pres.relations_q4(2)
    for delta in [(1, 1), (2, 1), (3, 0), (2, 2)]:
        if sum(delta) <= 3:
            assert pres.ideal_span(q4, delta, EXACT).rank == 0


def test_ideal_span_monotone():
    q4 = pres.relations_q4(2)
    lie_only = pres.RelationSet(2, 4, q4.labelled("lie"))
    for delta in [(2, 2), (3, 2)]:
        assert (pres.ideal_span(lie_only, delta, EXACT).rank
                <= pres.ideal_span(q4, delta, EXACT).rank)


def test_verify_presentation_small(store):
    rep = pres.verify_presentation(2, 3, 5, EXACT, store=store)
    assert rep.passed and rep.sound
    assert all(r.equal for r in rep.records)
    rep = pres.verify_presentation(2, 4, 5, P1, store=store)
    assert rep.passed


def test_verify_presentation_records_are_deglex_sorted(store):
    rep = pres.verify_presentation(2, 3, 4, P1, store=store)
    deltas = [r.delta for r in rep.records]
    assert deltas == sorted(deltas, key=lambda t: (sum(t), t))


def test_mutation_quadratic_family_is_needed(store):
    rels = pres.relations_q4(2).without("quadratic")
    rep = pres.verify_presentation(2, 4, 5, P1, relations=rels, store=store)
    assert not rep.passed
    bad = [r for r in rep.records if not r.equal]
    assert bad and min(sum(r.delta) for r in bad) <= 5
    assert rep.witness is not None
    w = parse_poly(rep.witness, 2, P1)
    assert lcs.member_of_m(w, 4, P1, store=store)
    ib = pres.ideal_span(rels, rep.witness_delta, P1)
    assert not ib.contains(w)


def test_spans_equal_against_component_basis(store):
    rels = pres.relations_q3(2)
    for delta in [(2, 1), (2, 2), (3, 1)]:
        ib = pres.ideal_span(rels, delta, EXACT)
        mb = lcs.component_basis(2, 3, delta, EXACT, store=store)
        assert spans_equal(ib, mb)
