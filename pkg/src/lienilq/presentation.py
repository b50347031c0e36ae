"""Relation sets presenting the quotients by M_3 and M_4, and degreewise
verification that the two-sided ideal they generate fills the whole ideal.

Writing y_ij = [x_i, x_j] and z_ijk = [[x_i, x_j], x_k], the target ideals
are generated by

- M_3:  [x_i, y_jl]            and  y_ij y_kl + y_ik y_jl
- M_4:  [x_i, z_jlm],  y_ij z_klm,  and  y_ij y_kl y_mp + y_ik y_jl y_mp

over all index tuples. Verification is a truncation: relations are checked
to lie in the ideal (soundness) and the generated ideal is compared with
the ideal componentwise up to a degree bound (completeness via rank
equality, one containment being automatic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .lcs import ComponentStore, component_basis, member_of_m
from .ncpoly import NCPoly, commutator, format_poly, homogeneous_components
from .scalars import EXACT, Mode
from .span import (SpanBasis, component_index, dim_component, echelonize_rows,
                   poly_to_row, row_to_poly, words_of_multidegree)


@dataclass
class Relation:
    label: str
    poly: NCPoly


@dataclass
class RelationSet:
    n: int
    target: int          # 3 or 4
    relations: list

    def labelled(self, label: str) -> list:
        return [r for r in self.relations if r.label == label]

    def without(self, label: str) -> "RelationSet":
        return RelationSet(self.n, self.target,
                           [r for r in self.relations if r.label != label])


def _gens(n: int, mode: Mode):
    return [None] + [NCPoly.generator(i, n, mode) for i in range(1, n + 1)]


def _dedupe(polys):
    seen = set()
    out = []
    for label, p in polys:
        if p.is_zero():
            continue
        key = frozenset(p.terms.items())
        if key in seen:
            continue
        seen.add(key)
        out.append(Relation(label, p))
    return out


def relations_q3(n: int, mode: Mode = EXACT) -> RelationSet:
    """Lie relations [x_i, y_jl] and quadratic relations
    y_ij y_kl + y_ik y_jl, over all index tuples (zero and duplicate
    instances dropped)."""
    if n < 2:
        raise ValueError("need n >= 2")
    x = _gens(n, mode)
    y = {(i, j): commutator(x[i], x[j])
         for i in range(1, n + 1) for j in range(1, n + 1)}
    polys = []
    for i, j, l in product(range(1, n + 1), repeat=3):
        polys.append(("lie", commutator(x[i], y[j, l])))
    for i, j, k, l in product(range(1, n + 1), repeat=4):
        polys.append(("quadratic", y[i, j] * y[k, l] + y[i, k] * y[j, l]))
    return RelationSet(n, 3, _dedupe(polys))


def relations_q4(n: int, mode: Mode = EXACT) -> RelationSet:
    """Lie relations [x_i, z_jlm], quadratic relations y_ij z_klm, and cubic
    relations y_ij y_kl y_mp + y_ik y_jl y_mp, over all index tuples."""
    if n < 2:
        raise ValueError("need n >= 2")
    x = _gens(n, mode)
    rng = range(1, n + 1)
    y = {(i, j): commutator(x[i], x[j]) for i in rng for j in rng}
    z = {(i, j, k): commutator(y[i, j], x[k])
         for i in rng for j in rng for k in rng}
    polys = []
    for i, j, l, m in product(rng, repeat=4):
        polys.append(("lie", commutator(x[i], z[j, l, m])))
    for i, j, k, l, m in product(rng, repeat=5):
        polys.append(("quadratic", y[i, j] * z[k, l, m]))
    for i, j, k, l, m, p_ in product(rng, repeat=6):
        polys.append(("cubic",
                      y[i, j] * y[k, l] * y[m, p_]
                      + y[i, k] * y[j, l] * y[m, p_]))
    return RelationSet(n, 4, _dedupe(polys))


def ideal_span(rels: RelationSet, delta: tuple, mode: Mode,
               *, engine: str = "auto") -> SpanBasis:
    """Echelonized span of {u * r * v} of one multidegree."""
    delta = tuple(delta)
    comp = component_index(rels.n, delta)

    def rows():
        for rel in rels.relations:
            p = rel.poly if rel.poly.mode == mode \
                else NCPoly(rels.n, rel.poly.terms, mode)
            rho = p.multidegree()
            rem = tuple(d - r for d, r in zip(delta, rho))
            if any(t < 0 for t in rem):
                continue
            items = list(p.terms.items())
            for uv in words_of_multidegree(rem):
                for cut in range(len(uv) + 1):
                    u, v = uv[:cut], uv[cut:]
                    yield {comp.index[u + w + v]: c for w, c in items}

    return echelonize_rows(rows(), comp, mode, engine=engine)


@dataclass
class DegreeRecord:
    delta: tuple
    dim: int
    rank_ideal: int
    rank_m: int
    equal: bool


@dataclass
class PresentationReport:
    n: int
    target: int
    max_degree: int
    mode_tag: str
    sound: bool
    records: list = field(default_factory=list)
    witness_delta: tuple | None = None
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.sound and all(r.equal for r in self.records)


def verify_presentation(n: int, i: int, D: int, mode: Mode, *,
                        relations: RelationSet | None = None,
                        store: ComponentStore | None = None) -> PresentationReport:
    """Check, for every multidegree of total degree <= D, that the two-sided
    ideal generated by the relations coincides with the target ideal
    component. Truncated verification: the report never claims more than
    degree D."""
    if i not in (3, 4):
        raise ValueError("presentations are available for targets 3 and 4")
    if n < 2 or D < i:
        raise ValueError("need n >= 2 and D >= target")
    rels = relations if relations is not None \
        else (relations_q3(n, EXACT) if i == 3 else relations_q4(n, EXACT))
    report = PresentationReport(n, i, D, mode.tag(), sound=True)
    for rel in rels.relations:
        if not member_of_m(rel.poly, i, mode, store=store):
            report.sound = False
            report.witness = format_poly(rel.poly)
            return report
    deltas = []
    for d in range(D + 1):
        deltas.extend(_multidegrees_of_total(n, d))
    deltas.sort(key=lambda t: (sum(t), t))
    for delta in deltas:
        mb = component_basis(n, i, delta, mode, store=store)
        ib = ideal_span(rels, delta, mode)
        rec = DegreeRecord(delta, dim_component(delta), ib.rank, mb.rank,
                           ib.rank == mb.rank)
        report.records.append(rec)
        if not rec.equal and report.witness is None:
            report.witness_delta = delta
            report.witness = _find_witness(mb, ib)
    return report


def _multidegrees_of_total(n, d):
    cur = [0] * n

    def rec(pos, left):
        if pos == n - 1:
            cur[pos] = left
            yield tuple(cur)
            cur[pos] = 0
            return
        for v in range(left + 1):
            cur[pos] = v
            yield from rec(pos + 1, left - v)
            cur[pos] = 0

    yield from rec(0, d)


def _find_witness(mb: SpanBasis, ib: SpanBasis) -> str | None:
    """A vector of the target ideal component outside the generated ideal."""
    for k in range(mb.rank):
        vec = mb.row_dict(k)
        if not ib.contains_vector(vec):
            poly = row_to_poly(vec, mb.component, mb.mode)
            return format_poly(poly)
    return None
