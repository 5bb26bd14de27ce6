"""Regularity, snc, semi-regularity, transversality and permissibility.

Smoothness over Q stands in for regularity (legitimate in characteristic
zero) and is decided by the Jacobian criterion: the ideal plus its c-by-c
Jacobian minors must be the unit ideal, c the codimension.  Monomial
ideals are decomposed combinatorially; principal ideals go straight to the
hypersurface criterion; everything else is treated as equidimensional of
its computed dimension unless a piece decomposition is declared.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .boundary import Boundary, boundary_on, reduced_form, restrict_boundary, support
from .charts import Center, Chart, subscheme_chart
from .config import CAPS
from .errors import InputError, MixedDimensionError, ResourceLimitError
from .factor import factor_principal
from .ideal import Ideal
from .poly import Polynomial


@dataclass(frozen=True)
class Witness:
    J: tuple[int, ...]
    criterion: str  # non-smooth | wrong-codimension | empty-check-skipped


@dataclass(frozen=True)
class RegularityReport:
    verdict: bool
    witness: Optional[Witness]
    bad_locus: Ideal

    def __bool__(self) -> bool:
        return self.verdict


def _unit(ring) -> Ideal:
    return Ideal(ring, [ring.one()])


def _ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.is_unit():
        return b
    if b.is_unit():
        return a
    gens = [f * g for f in a.gens for g in b.gens]
    return Ideal(a.ring, gens)


def _jacobian_singular_ideal(I: Ideal, codim: int) -> Ideal:
    ring = I.ring
    gens = list(I.gens)
    names = ring.names
    jac = [[g.derivative(n) for n in names] for g in gens]
    if codim <= 0:
        return I
    minors = []
    for rows in combinations(range(len(gens)), codim):
        for cols in combinations(range(len(names)), codim):
            minors.append(_det([[jac[r][c] for c in cols] for r in rows]))
    return I.plus_gens([m for m in minors if not m.is_zero()])


def _det(m) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    ring = m[0][0].ring
    out = ring.zero()
    for j in range(n):
        sub = [[m[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = m[0][j] * _det(sub)
        out = out + (term if j % 2 == 0 else -term)
    return out


def scheme_regularity(I: Ideal) -> tuple[bool, Ideal]:
    """(regular?, bad-locus ideal) of the affine scheme V(I)."""
    ring = I.ring
    if I.is_zero():
        return True, _unit(ring)
    if I.is_unit():
        return True, _unit(ring)
    f = I.is_principal()
    if f is not None and not f.is_constant():
        sing = I.plus_gens([f.derivative(n) for n in f.variables()])
        return sing.is_unit(), sing
    if I.is_monomial():
        mins = I.minimal_monomial_generators()
        if all(sum(g.leading_monomial()) == 1 for g in mins):
            return True, _unit(ring)
        subspaces = I.coordinate_subspaces()
        dims = {len(ring) - len(s) for s in subspaces}
        if len(dims) > 1:
            raise MixedDimensionError(
                "monomial scheme has components of mixed dimension; "
                "declare a piece decomposition"
            )
    d = I.dimension()
    sing = _jacobian_singular_ideal(I, len(ring) - d)
    return sing.is_unit(), sing


def is_regular_scheme(chart: Chart, pieces: Sequence[Ideal] | None = None) -> RegularityReport:
    """Smoothness of the chart scheme over Q (Jacobian criterion)."""
    if pieces:
        for a, b in combinations(pieces, 2):
            if not a.plus(b).is_unit():
                raise InputError("declared pieces are not pairwise disjoint")
        bad = _unit(chart.ring)
        ok = True
        for p in pieces:
            v, b = scheme_regularity(p.plus(chart.relations))
            ok = ok and v
            if not v:
                bad = _ideal_product(bad, b)
        witness = None if ok else Witness((), "non-smooth")
        return RegularityReport(ok, witness, bad if not ok else _unit(chart.ring))
    v, bad = scheme_regularity(chart.relations)
    if v:
        return RegularityReport(True, None, _unit(chart.ring))
    return RegularityReport(False, Witness((), "non-smooth"), bad)


def _strata_scan(
    chart: Chart,
    elements: list[Polynomial],
    collect_all: bool,
) -> RegularityReport:
    """Check every nonempty closed stratum for smoothness and codimension.

    Exponential in the component count; capped.
    """
    n = len(elements)
    if n > CAPS.max_boundary_components:
        raise ResourceLimitError(
            f"{n} boundary components exceed the stratum-enumeration cap "
            f"{CAPS.max_boundary_components}"
        )
    chart_dim = chart.relations.dimension()
    bad = _unit(chart.ring)
    first_witness = None
    ok = True
    for size in range(0, n + 1):
        for J in combinations(range(n), size):
            closure = chart.relations.plus_gens([elements[j] for j in J])
            if closure.is_unit():
                continue
            smooth, sing = scheme_regularity(closure)
            if not smooth:
                ok = False
                if first_witness is None:
                    first_witness = Witness(J, "non-smooth")
                bad = _ideal_product(bad, sing)
                if not collect_all:
                    return RegularityReport(False, first_witness, bad)
                continue
            codim = chart_dim - closure.dimension()
            if codim != size:
                ok = False
                if first_witness is None:
                    first_witness = Witness(J, "wrong-codimension")
                bad = _ideal_product(bad, closure)
                if not collect_all:
                    return RegularityReport(False, first_witness, bad)
    if ok:
        return RegularityReport(True, None, _unit(chart.ring))
    return RegularityReport(False, first_witness, bad)


def is_snc(chart: Chart, B: Boundary, check_shared_components: bool = False) -> RegularityReport:
    """Snc: every nonempty stratum is regular of pure codimension |J|."""
    red = reduced_form(B)
    if check_shared_components:
        from .factor import gcd_poly

        elems = red.elements()
        for i, j in combinations(range(len(elems)), 2):
            g = gcd_poly(elems[i], elems[j])
            if not g.is_unit_constant() and not g.is_zero():
                return RegularityReport(
                    False,
                    Witness((i, j), "wrong-codimension"),
                    chart.relations.plus_gens([g]),
                )
    return _strata_scan(chart, red.elements(), collect_all=False)


def is_strictly_monomial(chart: Chart, B: Boundary) -> RegularityReport:
    """Chart regular and the reduced support divisor snc."""
    amb = is_regular_scheme(chart)
    if not amb.verdict:
        return amb
    supp = support(B)
    if supp.is_unit():
        return RegularityReport(True, None, _unit(chart.ring))
    if supp.is_zero():
        # a component vanishes identically: support is the whole chart
        return RegularityReport(False, Witness((), "wrong-codimension"), chart.relations)
    elem = supp.gens[0]
    factors = [u for u, _ in factor_principal(elem)]
    synthetic = boundary_on(chart, *factors, ids=[f"S{k+1}" for k in range(len(factors))])
    rep = is_snc(chart, synthetic)
    return rep


def _auto_pieces(chart: Chart) -> list[Ideal]:
    """Connected-piece decomposition when it is visible (principal relations
    with pairwise disjoint factors); otherwise the whole chart."""
    rel = chart.relations
    whole = [rel]
    f = rel.is_principal()
    if f is None or f.is_constant():
        return whole
    facs = factor_principal(f)
    if len(facs) <= 1:
        return whole
    pieces = [Ideal(chart.ring, [u**m]) for u, m in facs]
    for a, b in combinations(pieces, 2):
        if not a.plus(b).is_unit():
            return whole
    return pieces


def semi_regular_locus(
    chart: Chart, B: Boundary, pieces: Sequence[Ideal] | None = None
) -> RegularityReport:
    """Semi-regularity: snc after locally discarding whole-chart components.

    Per declared (or auto-detected) connected piece, components whose
    defining element vanishes identically there are copies of the piece and
    leave the stratification; the rest must be snc.  The bad locus is the
    union over pieces of the failing strata loci.
    """
    piece_ideals = list(pieces) if pieces else _auto_pieces(chart)
    red = reduced_form(B)
    ok = True
    witness = None
    bad = _unit(chart.ring)
    for piece in piece_ideals:
        piece_rel = piece.plus(chart.relations)
        piece_chart = Chart(chart.id, chart.ring, piece_rel, chart.parent, chart.exceptional)
        active = [
            c.element
            for c in red.components
            if not piece_rel.contains(c.element)
        ]
        rep = _strata_scan(piece_chart, active, collect_all=True)
        if not rep.verdict:
            ok = False
            if witness is None:
                witness = rep.witness
            bad = _ideal_product(bad, rep.bad_locus)
    if ok:
        return RegularityReport(True, None, _unit(chart.ring))
    return RegularityReport(False, witness, bad)


def has_snc_with_boundary(chart: Chart, Z: Ideal, B: Boundary) -> RegularityReport:
    """(Z, B|_Z) is a semi-regular B-scheme."""
    sub = subscheme_chart(chart, Z, chart.id + "|Z")
    return semi_regular_locus(sub, restrict_boundary(B, sub))


def is_transversal(chart: Chart, Z: Ideal, B: Boundary) -> RegularityReport:
    """(Z, B|_Z) is a regular B-scheme, i.e. the restricted boundary is snc."""
    sub = subscheme_chart(chart, Z, chart.id + "|Z")
    return is_snc(sub, restrict_boundary(B, sub))


def is_permissible(chart: Chart, center: Center, B: Boundary) -> RegularityReport:
    """The center has simple normal crossings with the boundary."""
    if center.is_empty():
        return RegularityReport(True, None, _unit(chart.ring))
    return has_snc_with_boundary(chart, center.ideal, B)
