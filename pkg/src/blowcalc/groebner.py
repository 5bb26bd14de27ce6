"""Buchberger's algorithm with the sugar selection strategy.

Deliberately the simple algorithm (no F4/F5): desk-scale inputs make it
sufficient and auditable.  Both standard elimination criteria are applied:
the product (coprime lead monomials) criterion and the chain criterion.
Intermediate basis size and total degree are capped; exceeding a cap is a
clean ResourceLimitError, never a silent wrong answer.
"""

from __future__ import annotations

from fractions import Fraction

from .config import CAPS
from .errors import ResourceLimitError
from .poly import (
    DEGREVLEX,
    Polynomial,
    _mono_div,
    _mono_divides,
    _mono_lcm,
    _mono_mul,
    order_key,
)


def normal_form(f: Polynomial, basis: list[Polynomial], order: str = DEGREVLEX) -> Polynomial:
    """Full remainder of f on division by `basis` (in the given fixed order)."""
    if not basis:
        return f
    key = order_key(order)
    divisors = [(g.leading_monomial(order), g.terms[g.leading_monomial(order)], g) for g in basis if not g.is_zero()]
    rem = dict(f.terms)
    out: dict = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        hit = None
        for lm, lc, g in divisors:
            if _mono_divides(lm, e):
                hit = (lm, lc, g)
                break
        if hit is None:
            out[e] = c
            del rem[e]
            continue
        lm, lc, g = hit
        m = _mono_div(e, lm)
        q = c / lc
        for e2, c2 in g.terms.items():
            t = _mono_mul(m, e2)
            s = rem.get(t, Fraction(0)) - q * c2
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return Polynomial(f.ring, out)


def _spoly(f: Polynomial, g: Polynomial, order: str) -> Polynomial:
    lmf = f.leading_monomial(order)
    lmg = g.leading_monomial(order)
    lcm = _mono_lcm(lmf, lmg)
    mf = _mono_div(lcm, lmf)
    mg = _mono_div(lcm, lmg)
    ring = f.ring
    a = Polynomial(ring, {mf: Fraction(1) / f.terms[lmf]})
    b = Polynomial(ring, {mg: Fraction(1) / g.terms[lmg]})
    return a * f - b * g


def _guard_degree(p: Polynomial) -> None:
    if p.total_degree() > CAPS.max_total_degree:
        raise ResourceLimitError(
            f"total degree {p.total_degree()} exceeds cap {CAPS.max_total_degree}"
        )


def buchberger(gens: list[Polynomial], order: str = DEGREVLEX) -> list[Polynomial]:
    """The unique reduced Groebner basis of <gens> for the given order.

    Returns [] for the zero ideal and [1] for the unit ideal; basis
    elements are monic and sorted by descending leading monomial, so
    recomputation yields an identical list.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    key = order_key(order)
    for g in basis:
        _guard_degree(g)
    # interreduce the input first: smaller starting set, same ideal
    basis = _interreduce([g.monic(order) for g in basis], order)
    if any(g.is_unit_constant() for g in basis):
        return [ring.one()]

    sugars = [g.total_degree() for g in basis]
    lms = [g.leading_monomial(order) for g in basis]

    def pair_data(i: int, j: int):
        lcm = _mono_lcm(lms[i], lms[j])
        sugar = max(
            sugars[i] + sum(_mono_div(lcm, lms[i])),
            sugars[j] + sum(_mono_div(lcm, lms[j])),
        )
        return (sugar, key(lcm), i, j)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done_pairs = set()

    while pairs:
        sugar, _, i, j = min(pair_data(i, j) for i, j in pairs)
        pairs.discard((i, j))
        done_pairs.add((i, j))
        lcm = _mono_lcm(lms[i], lms[j])
        # product criterion: coprime lead monomials reduce to zero
        if lcm == _mono_mul(lms[i], lms[j]):
            continue
        # chain criterion: some k divides the lcm and both side pairs are done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _mono_divides(lms[k], lcm):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in done_pairs and pjk in done_pairs:
                    skip = True
                    break
        if skip:
            continue
        s = _spoly(basis[i], basis[j], order)
        h = normal_form(s, basis, order)
        if h.is_zero():
            continue
        _guard_degree(h)
        h = h.monic(order)
        basis.append(h)
        sugars.append(sugar)
        lms.append(h.leading_monomial(order))
        if len(basis) > CAPS.max_basis_size:
            raise ResourceLimitError(
                f"intermediate basis size exceeds cap {CAPS.max_basis_size}"
            )
        new = len(basis) - 1
        for t in range(new):
            pairs.add((t, new))
        if h.is_unit_constant():
            return [ring.one()]

    return _reduce_basis(basis, order)


def _interreduce(basis: list[Polynomial], order: str) -> list[Polynomial]:
    changed = True
    basis = [g for g in basis if not g.is_zero()]
    while changed:
        changed = False
        for i in range(len(basis)):
            rest = basis[:i] + basis[i + 1:]
            r = normal_form(basis[i], rest, order)
            if r != basis[i]:
                changed = True
                if r.is_zero():
                    basis = rest
                else:
                    basis = rest + [r.monic(order)]
                break
    return basis


def _reduce_basis(basis: list[Polynomial], order: str) -> list[Polynomial]:
    key = order_key(order)
    # minimalize: drop g whose lead monomial is divisible by another's
    lms = [g.leading_monomial(order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(
            j != i
            and _mono_divides(lms[j], lms[i])
            and (lms[j] != lms[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # interreduce tails
    reduced = []
    for i, g in enumerate(keep):
        rest = keep[:i] + keep[i + 1:]
        r = normal_form(g, rest, order)
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda p: key(p.leading_monomial(order)), reverse=True)
    return reduced
