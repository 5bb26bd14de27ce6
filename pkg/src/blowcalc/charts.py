"""Affine charts, blow-ups along coordinate-type centers, and chart forests.

A blow-up record turns one chart into the standard charts of the blow-up
along a center whose generators are variables after an (optional) invertible
affine-linear frame.  Charts never glue; identity of loci across charts is
tracked only through the parent substitution maps.  Empty centers are legal
(trivial blow-up), and a Cartier center given by one non-coordinate element
produces the identity chart with that element as exceptional divisor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .errors import (
    CenterNotContainedError,
    CenterNotCoordinateError,
    CertificationError,
    FrameError,
    InputError,
    UnknownSourceChartError,
)
from .ideal import Ideal
from .poly import Polynomial, Ring


# -- frames ------------------------------------------------------------------


@dataclass(frozen=True)
class Frame:
    """Invertible affine-linear coordinate change u = A x + b.

    `names[i]` is the name of the i-th new coordinate and `images[i]` its
    defining affine-linear polynomial in the old variables.
    """

    names: tuple[str, ...]
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.names) != len(self.images):
            raise FrameError("frame names/images length mismatch")
        ring = self.images[0].ring
        if len(self.names) != len(ring):
            raise FrameError("frame must cover every chart variable")
        for img in self.images:
            if img.ring != ring:
                raise FrameError("frame images live in different rings")
            if img.total_degree() > 1:
                raise FrameError(f"frame image {img} is not affine-linear")
        self.inverse_images()  # raises when singular

    @property
    def ring(self) -> Ring:
        return self.images[0].ring

    def matrix(self) -> tuple[list[list[Fraction]], list[Fraction]]:
        n = len(self.ring)
        A = [[Fraction(0)] * n for _ in range(n)]
        b = [Fraction(0)] * n
        for i, img in enumerate(self.images):
            for e, c in img.terms.items():
                if sum(e) == 0:
                    b[i] = c
                else:
                    A[i][e.index(1)] = c
        return A, b

    def inverse_images(self) -> tuple[Polynomial, ...]:
        """Old variables as affine-linear polynomials of the new names."""
        A, b = self.matrix()
        n = len(self.ring)
        # Gauss-Jordan on [A | I]
        aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
        for col in range(n):
            piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
            if piv is None:
                raise FrameError("frame matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        new_ring = Ring(self.names)
        out = []
        for i in range(n):
            inv_row = aug[i][n:]
            # x_i = sum inv_row[j] * (u_j - b_j)
            p = new_ring.zero()
            for j, c in enumerate(inv_row):
                if c:
                    p = p + new_ring.var(self.names[j]) * c - new_ring.const(c * b[j])
            out.append(p)
        return tuple(out)


def identity_frame(ring: Ring) -> Frame:
    return Frame(ring.names, ring.gens())


def frame_for_linear_generators(ring: Ring, gens: list[Polynomial]) -> Frame:
    """Complete affine-linear generators to a coordinate frame.

    Each generator becomes the coordinate named after its pivot variable
    (leftmost variable with nonzero coefficient not already used); all other
    variables keep themselves.  Raises when the generators are not
    independent affine-linear forms.
    """
    n = len(ring)
    used: dict[int, Polynomial] = {}
    for g in gens:
        if g.is_zero() or g.total_degree() != 1:
            raise CenterNotCoordinateError(f"generator {g} is not affine-linear")
        coeffs = {e.index(1): c for e, c in g.terms.items() if sum(e) == 1}
        # pivot: leftmost variable of g not already claimed by another generator
        pivot = next((i for i in range(n) if i in coeffs and i not in used), None)
        if pivot is None:
            raise CenterNotCoordinateError(f"generator {g} has no free pivot variable")
        used[pivot] = g * (1 / coeffs[pivot])
    images = []
    for i in range(n):
        images.append(used[i] if i in used else ring.var(ring.names[i]))
    return Frame(ring.names, tuple(images))


# -- charts and centers --------------------------------------------------------


@dataclass(frozen=True)
class Chart:
    """One affine chart: variables, ambient relations, link to its parent."""

    id: str
    ring: Ring
    relations: Ideal
    parent: Optional[tuple[str, dict[str, Polynomial]]] = None
    exceptional: Optional[Polynomial] = None

    def parent_map(self) -> dict[str, Polynomial]:
        if self.parent is None:
            raise InputError(f"chart {self.id} has no parent")
        return self.parent[1]

    def is_empty(self) -> bool:
        return self.relations.is_unit()

    def dimension(self) -> int:
        return self.relations.dimension()


@dataclass(frozen=True)
class Center:
    """A blow-up center with its declared component decomposition."""

    ideal: Ideal
    components: tuple[Ideal, ...] = ()
    frame: Optional[Frame] = None

    def __post_init__(self):
        if not self.components:
            object.__setattr__(self, "components", (self.ideal,))

    def is_empty(self) -> bool:
        return self.ideal.is_unit()

    def validate_components(self) -> bool:
        """Set-theoretic check: the union of components equals the center."""
        if self.components == (self.ideal,):
            return True
        for comp in self.components:
            for g in self.ideal.gens:
                if not comp.radical_contains(g):
                    return False
        inter = None
        for comp in self.components:
            inter = comp if inter is None else inter.intersect(comp)
        return all(self.ideal.radical_contains(g) for g in inter.gens)


def center_of(ring_or_chart, gens, components=None, frame=None) -> Center:
    ring = ring_or_chart.ring if isinstance(ring_or_chart, Chart) else ring_or_chart
    ideal = Ideal(ring, list(gens))
    comps = tuple(Ideal(ring, list(c)) for c in components) if components else ()
    return Center(ideal, comps, frame)


def root_chart(ring: Ring, relations=None, chart_id: str = "X") -> Chart:
    return Chart(chart_id, ring, Ideal(ring, list(relations or [])))


def subscheme_chart(chart: Chart, extra: Ideal, chart_id: str | None = None) -> Chart:
    """The chart of a closed subscheme: same ring, enlarged relations."""
    return Chart(
        chart_id or chart.id,
        chart.ring,
        chart.relations.plus(extra),
        chart.parent,
        chart.exceptional,
    )


@dataclass(frozen=True)
class BlowUpRecord:
    source_chart: str
    center: Center
    produced_charts: tuple[Chart, ...]
    trivial: bool = False


def _primed(name: str, taken: set[str]) -> str:
    cand = name + "'"
    while cand in taken:
        cand += "'"
    return cand


def blow_up(chart: Chart, center: Center) -> BlowUpRecord:
    """Blow up the chart along the center.

    Produces one standard chart per center-generating variable; in chart j
    the j-th variable is kept and every other generator variable v becomes
    v' with v = v_j * v'.  Relations of each produced chart are the strict
    transform (total transform saturated by the exceptional element) of the
    source relations.
    """
    if center.ideal.ring != chart.ring:
        raise InputError("center does not live in the chart's ring")
    if center.is_empty():
        child = Chart(
            chart.id + "/~",
            chart.ring,
            chart.relations,
            (chart.id, {n: chart.ring.var(n) for n in chart.ring.names}),
            chart.ring.one(),
        )
        return BlowUpRecord(chart.id, center, (child,), trivial=True)
    if center.ideal.is_zero():
        raise InputError("cannot blow up along the zero ideal")
    for rel in chart.relations.gens:
        if not center.ideal.contains(rel):
            raise CenterNotContainedError(
                f"relation {rel} not contained in the center ideal"
            )

    gens = list(center.ideal.gens)
    frame = center.frame or identity_frame(chart.ring)
    if frame.ring != chart.ring:
        raise FrameError("frame is declared on a different ring")

    # match each generator (up to scalar) with a frame coordinate
    indices: list[int] = []
    unmatched: list[Polynomial] = []
    for g in gens:
        hit = None
        for i, img in enumerate(frame.images):
            if i in indices:
                continue
            if _proportional(g, img):
                hit = i
                break
        if hit is None:
            unmatched.append(g)
        else:
            indices.append(hit)

    if unmatched:
        if len(gens) == 1 and not gens[0].is_constant():
            return _principal_blow_up(chart, center, gens[0])
        raise CenterNotCoordinateError(
            f"generators {[str(g) for g in unmatched]} are not frame coordinates"
        )

    inverse = frame.inverse_images()
    u_ring = Ring(frame.names)
    produced = []
    for j in indices:
        taken = set(frame.names)
        new_names = list(frame.names)
        primes = {}
        for i in indices:
            if i != j:
                new_names[i] = _primed(frame.names[i], taken)
                taken.add(new_names[i])
                primes[i] = new_names[i]
        child_ring = Ring(new_names)
        blow_map = {}
        for i, un in enumerate(frame.names):
            if i == j or i not in indices:
                blow_map[un] = child_ring.var(new_names[i])
            else:
                blow_map[un] = child_ring.var(new_names[j]) * child_ring.var(primes[i])
        parent_map = {
            chart.ring.names[m]: inverse[m].substitute(blow_map, child_ring)
            for m in range(len(chart.ring))
        }
        exceptional = child_ring.var(new_names[j])
        total = [rel.substitute(parent_map, child_ring) for rel in chart.relations.gens]
        relations = Ideal(child_ring, total)
        for g in gens:
            img = g.substitute(parent_map, child_ring)
            if not exceptional.divides(img):
                raise CertificationError(
                    "exceptional element does not divide a center generator image"
                )
        if relations.gens:
            relations = relations.saturate(exceptional)
        child = Chart(
            f"{chart.id}/{frame.names[j]}",
            child_ring,
            relations,
            (chart.id, parent_map),
            exceptional,
        )
        produced.append(child)
    return BlowUpRecord(chart.id, center, tuple(produced))


def _proportional(f: Polynomial, g: Polynomial) -> bool:
    if f.is_zero() or g.is_zero() or len(f.terms) != len(g.terms):
        return False
    ratio = None
    for e, c in f.terms.items():
        if e not in g.terms:
            return False
        r = c / g.terms[e]
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


def _principal_blow_up(chart: Chart, center: Center, g: Polynomial) -> BlowUpRecord:
    # Cartier-divisor center: the blow-up is an isomorphism; the divisor
    # itself becomes the exceptional element.
    child = Chart(
        chart.id + "/div",
        chart.ring,
        chart.relations,
        (chart.id, {n: chart.ring.var(n) for n in chart.ring.names}),
        g,
    )
    return BlowUpRecord(chart.id, center, (child,))


# -- sequences -----------------------------------------------------------------


@dataclass
class BlowUpSequence:
    """An ordered list of blow-up records over a forest of charts."""

    roots: tuple[Chart, ...]
    records: list[BlowUpRecord] = field(default_factory=list)

    def __post_init__(self):
        self._index()

    def _index(self):
        self.charts: dict[str, Chart] = {c.id: c for c in self.roots}
        self.children: dict[str, list[str]] = {c.id: [] for c in self.roots}
        self.record_of_source: dict[str, int] = {}
        for k, rec in enumerate(self.records):
            if rec.source_chart not in self.charts:
                raise UnknownSourceChartError(rec.source_chart)
            if rec.source_chart in self.record_of_source:
                raise UnknownSourceChartError(
                    f"chart {rec.source_chart} already blown up"
                )
            self.record_of_source[rec.source_chart] = k
            for c in rec.produced_charts:
                self.charts[c.id] = c
                self.children[c.id] = []
                self.children[rec.source_chart].append(c.id)

    def chart(self, chart_id: str) -> Chart:
        if chart_id not in self.charts:
            raise UnknownSourceChartError(chart_id)
        return self.charts[chart_id]

    def is_leaf(self, chart_id: str) -> bool:
        return chart_id in self.charts and not self.children[chart_id]

    def leaves(self) -> list[Chart]:
        return [self.charts[cid] for cid in self.charts if not self.children[cid]]

    def nonempty_leaves(self) -> list[Chart]:
        return [c for c in self.leaves() if not c.is_empty()]

    def compose(self, record: BlowUpRecord) -> "BlowUpSequence":
        if not self.is_leaf(record.source_chart):
            raise UnknownSourceChartError(
                f"{record.source_chart} is not a leaf of the forest"
            )
        return BlowUpSequence(self.roots, self.records + [record])

    def apply(self, chart_id: str, center: Center) -> tuple["BlowUpSequence", BlowUpRecord]:
        record = blow_up(self.chart(chart_id), center)
        return self.compose(record), record

    def path_records(self, chart_id: str) -> list[tuple[BlowUpRecord, Chart]]:
        """Records along the root-to-chart path, with the chart each enters."""
        path = []
        cur = self.chart(chart_id)
        while cur.parent is not None:
            parent_id = cur.parent[0]
            rec = self.records[self.record_of_source[parent_id]]
            path.append((rec, cur))
            cur = self.charts[parent_id]
        return list(reversed(path))

    def root_of(self, chart_id: str) -> Chart:
        cur = self.chart(chart_id)
        while cur.parent is not None:
            cur = self.charts[cur.parent[0]]
        return cur

    def pull_to_chart(self, f: Polynomial, chart_id: str) -> Polynomial:
        """Substitute a root-chart element along the path into `chart_id`."""
        cur = f
        for rec, chart in self.path_records(chart_id):
            cur = cur.substitute(chart.parent_map(), chart.ring)
        return cur

    def remembered_centers(self, include_trivial: bool = False) -> list[tuple[str, Ideal]]:
        return [
            (rec.source_chart, rec.center.ideal)
            for rec in self.records
            if include_trivial or not rec.trivial
        ]


def empty_sequence(chart: Chart) -> BlowUpSequence:
    return BlowUpSequence((chart,))


def compose_sequence(seq: BlowUpSequence, record: BlowUpRecord) -> BlowUpSequence:
    return seq.compose(record)


# -- transforms of ideals -------------------------------------------------------


def total_transform(record: BlowUpRecord, Z: Ideal) -> dict[str, Ideal]:
    """Pullback of Z's generators into every produced chart."""
    out = {}
    for chart in record.produced_charts:
        pm = chart.parent_map()
        out[chart.id] = Ideal(
            chart.ring, [g.substitute(pm, chart.ring) for g in Z.gens]
        )
    return out


def strict_transform(record: BlowUpRecord, Z: Ideal) -> dict[str, Ideal]:
    """Saturation of the total transform (with chart relations) by the
    exceptional element, per produced chart."""
    out = {}
    totals = total_transform(record, Z)
    for chart in record.produced_charts:
        tot = totals[chart.id].plus(chart.relations)
        if tot.is_zero() or chart.exceptional is None or chart.exceptional.is_unit_constant():
            out[chart.id] = tot
        else:
            out[chart.id] = tot.saturate(chart.exceptional)
    return out


def strict_transform_along(seq: BlowUpSequence, Z: Ideal, chart_id: str) -> Ideal:
    """Iterated strict transform of a root-chart subscheme into one chart."""
    path = seq.path_records(chart_id)
    if not path:
        return Z.plus(seq.chart(chart_id).relations)
    current = Z
    for rec, chart in path:
        pm = chart.parent_map()
        tot = Ideal(chart.ring, [g.substitute(pm, chart.ring) for g in current.gens])
        tot = tot.plus(chart.relations)
        if chart.exceptional is not None and not chart.exceptional.is_unit_constant() and not tot.is_zero():
            tot = tot.saturate(chart.exceptional)
        current = tot
    return current


# -- restriction and pushforward -------------------------------------------------


def restrict_sequence(seq: BlowUpSequence, Z: Ideal) -> BlowUpSequence:
    """The induced sequence of strict transforms on the subscheme Z.

    Every center must be a subscheme of the running strict transform of Z;
    chart ids are reused so that pushing forward restores the forest.
    """
    if len(seq.roots) != 1:
        raise InputError("restriction expects a single root chart")
    root = seq.roots[0]
    sub_root = subscheme_chart(root, Z)
    out = BlowUpSequence((sub_root,))
    for rec in seq.records:
        sub_source = out.chart(rec.source_chart)
        for rel in sub_source.relations.gens:
            if not rec.center.ideal.contains(rel):
                raise CenterNotContainedError(
                    f"center at {rec.source_chart} is not inside the strict "
                    f"transform of the subscheme (missing {rel})"
                )
        new_rec = blow_up(sub_source, rec.center)
        out = out.compose(new_rec)
    return out


def push_forward_sequence(sub_seq: BlowUpSequence, ambient_root: Chart) -> BlowUpSequence:
    """Replay a subscheme sequence on the ambient chart with the same centers."""
    if len(sub_seq.roots) != 1:
        raise InputError("pushforward expects a single root chart")
    sub_root = sub_seq.roots[0]
    if sub_root.ring != ambient_root.ring:
        raise InputError("subscheme and ambient roots have different rings")
    for rel in ambient_root.relations.gens:
        if not sub_root.relations.contains(rel):
            raise InputError("subscheme root does not refine the ambient relations")
    id_map = {sub_root.id: ambient_root.id}
    out = BlowUpSequence((ambient_root,))
    for rec in sub_seq.records:
        amb_source = out.chart(id_map[rec.source_chart])
        new_rec = blow_up(amb_source, rec.center)
        out = out.compose(new_rec)
        for sub_chart, amb_chart in zip(
            sub_seq.records[sub_seq.record_of_source[rec.source_chart]].produced_charts,
            new_rec.produced_charts,
        ):
            id_map[sub_chart.id] = amb_chart.id
    return out
