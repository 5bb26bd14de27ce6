"""Boundaries: ordered tuples of locally principal subschemes on a chart.

Components are keyed by stable ids so the order is global across charts;
emptiness is a per-chart fact (the defining element becomes a unit).  The
four transforms under a blow-up record are computed per produced chart:
total (pullback), principal (divide out pullbacks of center components
contained in the subscheme), maximal (divide out the largest powers), and
complete (principal plus the exceptional divisor adjoined last).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charts import BlowUpRecord, BlowUpSequence, Chart
from .errors import CertificationError, InputError, NonPrincipalError, RingMismatchError
from .factor import squarefree_part
from .ideal import Ideal
from .poly import Polynomial


@dataclass(frozen=True)
class BoundaryComponent:
    id: str
    element: Polynomial


@dataclass(frozen=True)
class Boundary:
    chart: Chart
    components: tuple[BoundaryComponent, ...] = ()

    def __post_init__(self):
        for comp in self.components:
            if comp.element.ring != self.chart.ring:
                raise RingMismatchError(
                    f"component {comp.id} not in chart {self.chart.id}'s ring"
                )

    def __len__(self) -> int:
        return len(self.components)

    def elements(self) -> list[Polynomial]:
        return [c.element for c in self.components]

    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def component_is_empty(self, comp: BoundaryComponent) -> bool:
        """Empty on this chart: the element is a unit modulo the relations."""
        if comp.element.is_zero():
            return False
        if comp.element.is_unit_constant():
            return True
        if self.chart.relations.is_zero():
            return False
        return self.chart.relations.plus_gens([comp.element]).is_unit()

    def component_is_whole_chart(self, comp: BoundaryComponent) -> bool:
        """The element vanishes identically on the chart scheme."""
        if comp.element.is_zero():
            return True
        return self.chart.relations.contains(comp.element)


def boundary_on(chart: Chart, *elements: Polynomial, ids=None) -> Boundary:
    comps = []
    for k, e in enumerate(elements):
        cid = ids[k] if ids else f"B{k + 1}"
        comps.append(BoundaryComponent(cid, e))
    return Boundary(chart, tuple(comps))


def reduced_form(B: Boundary) -> Boundary:
    """Drop empty components, preserving relative order; idempotent."""
    kept = tuple(c for c in B.components if not B.component_is_empty(c))
    return Boundary(B.chart, kept)


def ordered_disjoint_union(B: Boundary, Bp: Boundary) -> Boundary:
    if B.chart.id != Bp.chart.id or B.chart.ring != Bp.chart.ring:
        raise InputError("ordered disjoint union across different charts")
    taken = set(B.ids())
    comps = list(B.components)
    for c in Bp.components:
        cid = c.id
        while cid in taken:
            cid += "+"
        taken.add(cid)
        comps.append(BoundaryComponent(cid, c.element))
    return Boundary(B.chart, tuple(comps))


def schematic_support(B: Boundary) -> Polynomial:
    """[B]: the divisor sum, realized as the product of defining elements."""
    out = B.chart.ring.one()
    for c in B.components:
        out = out * c.element
    return out


def support(B: Boundary) -> Ideal:
    """|B|: the set-theoretic union, as the squarefree part of the product."""
    prod = schematic_support(B)
    if prod.is_zero():
        return Ideal(B.chart.ring, [])
    if prod.is_unit_constant():
        return Ideal(B.chart.ring, [B.chart.ring.one()])
    return Ideal(B.chart.ring, [squarefree_part(prod)])


@dataclass(frozen=True)
class StratumQuery:
    J: tuple[int, ...]
    closure_ideal: Ideal
    boundary_of_stratum: tuple[Ideal, ...]
    nonempty: bool
    dim: int


def stratum(B: Boundary, J) -> StratumQuery:
    """The J-th closed stratum with emptiness/dimension answers.

    The open stratum is nonempty iff the closure is not covered by the
    deeper closures, tested by radical membership of the product of the
    remaining defining elements.
    """
    J = tuple(sorted(J))
    n = len(B.components)
    if any(j < 0 or j >= n for j in J):
        raise InputError(f"stratum index set {J} out of range")
    closure = B.chart.relations.plus_gens([B.components[j].element for j in J])
    deeper = tuple(
        closure.plus_gens([B.components[j].element])
        for j in range(n)
        if j not in J
    )
    if closure.is_unit():
        return StratumQuery(J, closure, deeper, False, -1)
    rest = B.chart.ring.one()
    for j in range(n):
        if j not in J:
            rest = rest * B.components[j].element
    if rest.is_unit_constant():
        nonempty = True
    elif rest.is_zero():
        nonempty = False
    else:
        nonempty = not closure.radical_contains(rest)
    return StratumQuery(J, closure, deeper, nonempty, closure.dimension())


def pullback_boundary(B: Boundary, mapping, target: Chart) -> Boundary:
    """Componentwise substitution; ids survive, emptiness is re-evaluated
    implicitly by the per-chart predicates."""
    comps = tuple(
        BoundaryComponent(c.id, c.element.substitute(mapping, target.ring))
        for c in B.components
    )
    return Boundary(target, comps)


def restrict_boundary(B: Boundary, subchart: Chart) -> Boundary:
    """Restriction onto a closed subscheme chart (same ring)."""
    if subchart.ring != B.chart.ring:
        raise RingMismatchError("restriction target has a different ring")
    return Boundary(subchart, B.components)


# -- transforms -----------------------------------------------------------------


@dataclass(frozen=True)
class TransformedBoundary:
    """A transformed boundary split into old and new parts with provenance."""

    old_part: Boundary
    new_part: Boundary
    provenance: dict[str, str] = field(default_factory=dict)

    def complete(self) -> Boundary:
        return ordered_disjoint_union(self.old_part, self.new_part)


def _component_divisors(
    record: BlowUpRecord,
    chart: Chart,
    source_relations: Ideal,
) -> list[tuple[Ideal, Polynomial]]:
    """(component ideal incl. relations, pullback generator) per center piece."""
    out = []
    pm = chart.parent_map()
    for comp in record.center.components:
        test_ideal = comp.plus(source_relations)
        if len(record.center.components) == 1 or comp == record.center.ideal:
            gen = chart.exceptional
        else:
            g = comp.is_principal()
            if g is None:
                raise NonPrincipalError(
                    "declared center component has no principal pullback"
                )
            gen = g.substitute(pm, chart.ring)
        out.append((test_ideal, gen))
    return out


def principal_transform_element(
    record: BlowUpRecord,
    chart: Chart,
    f: Polynomial,
    source_relations: Ideal | None = None,
) -> tuple[Polynomial, str]:
    """f^▷ of a locally principal element into one produced chart.

    Center components that are subschemes of V(f) (ideal containment, i.e.
    membership of f in the component ideal) each strip one copy of their
    pullback; the division is exact by construction.
    """
    pm = chart.parent_map()
    total = f.substitute(pm, chart.ring)
    if record.trivial:
        return total, "pullback"
    src_rel = source_relations if source_relations is not None else Ideal(f.ring, [])
    result = total
    fired = False
    for ideal_with_rel, gen in _component_divisors(record, chart, src_rel):
        if ideal_with_rel.contains(f):
            fired = True
            if not gen.is_unit_constant():
                try:
                    result = result.exact_div(gen)
                except ValueError as exc:
                    raise CertificationError(
                        f"principal transform division by {gen} not exact"
                    ) from exc
    return result, ("subtract" if fired else "pullback")


def maximal_principal_transform_element(
    record: BlowUpRecord,
    chart: Chart,
    f: Polynomial,
    source_relations: Ideal | None = None,
) -> Polynomial:
    """f^□: strip the largest power of each component's pullback divisor."""
    pm = chart.parent_map()
    total = f.substitute(pm, chart.ring)
    if record.trivial or total.is_zero():
        return total
    src_rel = source_relations if source_relations is not None else Ideal(f.ring, [])
    result = total
    for _, gen in _component_divisors(record, chart, src_rel):
        if gen.is_unit_constant() or gen.is_zero():
            continue
        k = gen.max_power_dividing(result)
        for _ in range(k):
            result = result.exact_div(gen)
    return result


def principal_transform_subscheme(
    record: BlowUpRecord, f: Polynomial, source_relations: Ideal | None = None
) -> dict[str, Polynomial]:
    """Per-chart principal transform of a locally principal subscheme."""
    return {
        chart.id: principal_transform_element(record, chart, f, source_relations)[0]
        for chart in record.produced_charts
    }


def maximal_principal_transform(
    record: BlowUpRecord, f: Polynomial, source_relations: Ideal | None = None
) -> dict[str, Polynomial]:
    return {
        chart.id: maximal_principal_transform_element(record, chart, f, source_relations)
        for chart in record.produced_charts
    }


def complete_transform(
    record: BlowUpRecord,
    B: Boundary,
    new_component_id: str = "E1",
) -> dict[str, TransformedBoundary]:
    """f^∘(B) = f^▷(B) ⊔_ord {E_f} in every produced chart.

    The exceptional divisor is adjoined as a new last component even when it
    duplicates an existing one.
    """
    out = {}
    for chart in record.produced_charts:
        olds = []
        prov = {}
        for comp in B.components:
            elem, rule = principal_transform_element(
                record, chart, comp.element, B.chart.relations
            )
            olds.append(BoundaryComponent(comp.id, elem))
            prov[comp.id] = rule
        new = BoundaryComponent(new_component_id, chart.exceptional)
        prov[new_component_id] = "exceptional"
        out[chart.id] = TransformedBoundary(
            Boundary(chart, tuple(olds)), Boundary(chart, (new,)), prov
        )
    return out


def transform_sequence(
    seq: BlowUpSequence, B: Boundary, kind: str = "complete"
) -> dict[str, TransformedBoundary]:
    """Iterate a transform along the sequence; one result per leaf chart.

    `kind` is one of total / principal / complete.  The complete transform
    accumulates one new component per record along the leaf's path, in
    blow-up order.
    """
    if kind not in ("total", "principal", "complete"):
        raise InputError(f"unknown transform kind {kind!r}")
    if B.chart.id not in {r.id for r in seq.roots}:
        raise InputError("boundary must live on a root chart of the sequence")
    results = {}
    for leaf in seq.leaves():
        if seq.root_of(leaf.id).id != B.chart.id:
            continue
        olds = list(B.components)
        news: list[BoundaryComponent] = []
        prov: dict[str, str] = {}
        source = B.chart
        for rec, chart in seq.path_records(leaf.id):
            rec_index = seq.record_of_source[rec.source_chart]
            next_olds = []
            for comp in olds:
                if kind == "total":
                    elem = comp.element.substitute(chart.parent_map(), chart.ring)
                    rule = "pullback"
                else:
                    elem, rule = principal_transform_element(
                        rec, chart, comp.element, source.relations
                    )
                next_olds.append(BoundaryComponent(comp.id, elem))
                prov[comp.id] = rule
            next_news = []
            for comp in news:
                if kind == "total":
                    elem = comp.element.substitute(chart.parent_map(), chart.ring)
                else:
                    elem, _ = principal_transform_element(
                        rec, chart, comp.element, source.relations
                    )
                next_news.append(BoundaryComponent(comp.id, elem))
            if kind == "complete" and not rec.trivial:
                eid = f"E{rec_index + 1}"
                next_news.append(BoundaryComponent(eid, chart.exceptional))
                prov[eid] = "exceptional"
            olds, news = next_olds, next_news
            source = chart
        results[leaf.id] = TransformedBoundary(
            Boundary(leaf, tuple(olds)), Boundary(leaf, tuple(news)), prov
        )
    return results
