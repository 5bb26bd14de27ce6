"""Finitely generated ideals and the classic elimination computations.

Saturation, colon ideals and radical membership all run through one
auxiliary-variable elimination using a block order, which keeps the public
Groebner surface at {lex, degrevlex}.
"""

from __future__ import annotations

from itertools import combinations

from .groebner import buchberger, normal_form
from .poly import DEGREVLEX, ELIM1, LEX, Polynomial, Ring
from .errors import RingMismatchError

PUBLIC_ORDERS = (LEX, DEGREVLEX)


class Ideal:
    """An ideal given by generators, with a cached reduced Groebner basis."""

    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: Ring, gens):
        self.ring = ring
        cleaned = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator not in the ideal's ring")
            if not g.is_zero() and g not in cleaned:
                cleaned.append(g)
        self.gens = tuple(cleaned)
        self._gb: dict[str, tuple[Polynomial, ...]] = {}

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.ring == other.ring
            and self.groebner() == other.groebner()
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.groebner()))

    # -- basis and membership ------------------------------------------

    def groebner(self, order: str = DEGREVLEX) -> tuple[Polynomial, ...]:
        """Reduced Groebner basis; cached per order, idempotent."""
        if order not in self._gb:
            self._gb[order] = tuple(buchberger(list(self.gens), order))
        return self._gb[order]

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("membership across rings")
        if f.is_zero():
            return True
        gb = self.groebner()
        if not gb:
            return False
        return normal_form(f, list(gb)).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_unit_constant()

    def is_principal(self) -> Polynomial | None:
        """The single generator when the ideal is visibly principal."""
        if len(self.gens) == 1:
            return self.gens[0]
        gb = self.groebner()
        if len(gb) == 1:
            return gb[0]
        return None

    def plus(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, list(self.gens) + list(other.gens))

    def plus_gens(self, polys) -> "Ideal":
        return Ideal(self.ring, list(self.gens) + list(polys))

    # -- elimination-based operations -----------------------------------

    def _fresh_aux(self) -> str:
        name = "t"
        k = 0
        while name in self.ring.index:
            name = f"t{k}"
            k += 1
        return name

    def _eliminate_first(self, gens_ext: list[Polynomial], ext: Ring) -> "Ideal":
        gb = buchberger(gens_ext, ELIM1)
        kept = []
        for g in gb:
            if all(e[0] == 0 for e in g.terms):
                kept.append(
                    Polynomial(self.ring, {e[1:]: c for e, c in g.terms.items()})
                )
        return Ideal(self.ring, kept)

    def intersect(self, other: "Ideal") -> "Ideal":
        """I ∩ J via the t / (1-t) trick and block-order elimination."""
        if other.ring != self.ring:
            raise RingMismatchError("intersection across rings")
        aux = self._fresh_aux()
        ext = self.ring.extend([aux], prepend=True)
        t = ext.var(aux)
        gens_ext = [g.rename(ext) * t for g in self.gens]
        gens_ext += [g.rename(ext) * (ext.one() - t) for g in other.gens]
        return self._eliminate_first(gens_ext, ext)

    def quotient(self, other: "Ideal") -> "Ideal":
        """The colon ideal I : J = {f : f*J ⊆ I}."""
        if other.ring != self.ring:
            raise RingMismatchError("quotient across rings")
        if other.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        result: Ideal | None = None
        for g in other.gens:
            inter = self.intersect(Ideal(self.ring, [g]))
            part = Ideal(self.ring, [h.exact_div(g) for h in inter.gens])
            result = part if result is None else result.intersect(part)
        return result if result is not None else self

    def saturate(self, f: Polynomial) -> "Ideal":
        """I : f^∞ via Rabinowitsch's extra variable."""
        if f.ring != self.ring:
            raise RingMismatchError("saturation across rings")
        if f.is_zero():
            raise ValueError("saturation by zero")
        if f.is_unit_constant():
            return self
        aux = self._fresh_aux()
        ext = self.ring.extend([aux], prepend=True)
        t = ext.var(aux)
        gens_ext = [g.rename(ext) for g in self.gens]
        gens_ext.append(ext.one() - t * f.rename(ext))
        return self._eliminate_first(gens_ext, ext)

    def radical_contains(self, f: Polynomial) -> bool:
        """f ∈ √I, by the Rabinowitsch trick."""
        if f.ring != self.ring:
            raise RingMismatchError("radical membership across rings")
        if f.is_zero():
            return True
        aux = self._fresh_aux()
        ext = self.ring.extend([aux], prepend=True)
        t = ext.var(aux)
        gens_ext = [g.rename(ext) for g in self.gens]
        gens_ext.append(ext.one() - t * f.rename(ext))
        gb = buchberger(gens_ext, ELIM1)
        return len(gb) == 1 and gb[0].is_unit_constant()

    # -- dimension -------------------------------------------------------

    def dimension(self) -> int:
        """Krull dimension of the quotient ring, -1 for the unit ideal.

        Uses the leading-term combinatorics: the dimension equals the size
        of the largest variable subset S such that no lead monomial of the
        ideal is supported entirely inside S.
        """
        gb = self.groebner()
        n = len(self.ring)
        if not gb:
            return n
        if gb[0].is_unit_constant():
            return -1
        supports = []
        for g in gb:
            lm = g.leading_monomial()
            supports.append(frozenset(i for i, e in enumerate(lm) if e))
        for size in range(n, -1, -1):
            for S in combinations(range(n), size):
                sset = set(S)
                if all(not sup <= sset for sup in supports):
                    return size
        return 0

    def codimension(self) -> int:
        d = self.dimension()
        return len(self.ring) if d < 0 else len(self.ring) - d

    # -- monomial structure ------------------------------------------------

    def is_monomial(self) -> bool:
        return all(len(g.terms) == 1 for g in self.groebner())

    def minimal_monomial_generators(self) -> list[Polynomial]:
        """Minimal generators of a monomial ideal (from its Groebner basis)."""
        gb = self.groebner()
        monos = [g.leading_monomial() for g in gb]
        out = []
        for i, m in enumerate(monos):
            if any(j != i and all(a <= b for a, b in zip(monos[j], m)) and monos[j] != m for j in range(len(monos))):
                continue
            out.append(Polynomial(self.ring, {m: 1}))
        return out

    def coordinate_subspaces(self) -> list[tuple[str, ...]]:
        """Irreducible components of a monomial ideal's zero set.

        Each component is a coordinate subspace, returned as the tuple of
        vanishing variable names (minimal-generator combinatorics).
        """
        gens = self.minimal_monomial_generators()
        if not gens:
            return []
        supports = [tuple(i for i, e in enumerate(g.leading_monomial()) if e) for g in gens]
        # minimal hitting sets of the supports
        n = len(self.ring)
        hits: list[set[int]] = []
        for size in range(1, n + 1):
            for S in combinations(range(n), size):
                sset = set(S)
                if all(any(i in sset for i in sup) for sup in supports):
                    if not any(h <= sset for h in hits):
                        hits.append(sset)
        return [tuple(self.ring.names[i] for i in sorted(h)) for h in hits]


def ideal(ring: Ring, *gens: Polynomial) -> Ideal:
    return Ideal(ring, list(gens))


# spec-facing functional surface ------------------------------------------

def groebner_basis(I: Ideal, order: str = DEGREVLEX) -> tuple[Polynomial, ...]:
    if order not in PUBLIC_ORDERS:
        raise ValueError(f"order must be one of {PUBLIC_ORDERS}")
    return I.groebner(order)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    return I.quotient(J)


def saturation(I: Ideal, f: Polynomial) -> Ideal:
    return I.saturate(f)


def dimension(I: Ideal) -> int:
    return I.dimension()
