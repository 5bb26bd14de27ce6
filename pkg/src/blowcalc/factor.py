"""Desk-scale factorization over Q.

Multivariate gcd runs a primitive pseudo-remainder sequence; squarefree
parts come from the char-0 derivative gcd; irreducible factorization maps
through a Kronecker substitution to one variable, factors there with
rational-root extraction plus bounded interpolation search, and lifts
candidate factors back by trial division.  Everything is exact and capped:
inputs past the caps raise ResourceLimitError rather than grinding.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import gcd as int_gcd, isqrt

from .config import CAPS
from .errors import CertificationError, ResourceLimitError
from .poly import Polynomial, Ring


# -- integer / content utilities -------------------------------------------

def integer_primitive(f: Polynomial) -> tuple[Fraction, Polynomial]:
    """Write f = unit * g with g having coprime integer coefficients and a
    positive leading (degrevlex) coefficient."""
    if f.is_zero():
        return Fraction(1), f
    denom_lcm = 1
    for c in f.terms.values():
        denom_lcm = denom_lcm * c.denominator // int_gcd(denom_lcm, c.denominator)
    num_gcd = 0
    for c in f.terms.values():
        num_gcd = int_gcd(num_gcd, abs(c.numerator * (denom_lcm // c.denominator)))
    unit = Fraction(num_gcd, denom_lcm)
    g = f * (1 / unit)
    if g.leading_coefficient() < 0:
        unit = -unit
        g = -g
    return unit, g


def monomial_content(f: Polynomial) -> tuple[int, ...]:
    """Componentwise minimum exponent vector of f's support."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    mins = None
    for e in f.terms:
        mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
    return mins


def _strip_monomial(f: Polynomial) -> tuple[list[tuple[Polynomial, int]], Polynomial]:
    mc = monomial_content(f)
    factors = []
    for i, m in enumerate(mc):
        if m:
            factors.append((f.ring.var(f.ring.names[i]), m))
    if any(mc):
        e = [0] * len(f.ring)
        for i, m in enumerate(mc):
            e[i] = m
        f = f.exact_div(f.ring.monomial(e))
    return factors, f


# -- multivariate gcd -------------------------------------------------------

def _coeff_in(f: Polynomial, i: int, k: int) -> Polynomial:
    """Coefficient of x_i^k, as a polynomial with x_i-exponent zero."""
    terms = {}
    for e, c in f.terms.items():
        if e[i] == k:
            e2 = list(e)
            e2[i] = 0
            terms[tuple(e2)] = c
    return Polynomial(f.ring, terms)


def _deg_in(f: Polynomial, i: int) -> int:
    if f.is_zero():
        return -1
    return max(e[i] for e in f.terms)


def _content_in(f: Polynomial, i: int) -> Polynomial:
    """Gcd of the x_i-coefficients of f."""
    degs = sorted({e[i] for e in f.terms})
    cont = f.ring.zero()
    for d in degs:
        cont = gcd_poly(cont, _coeff_in(f, i, d))
        if cont.is_unit_constant():
            return f.ring.one()
    return cont


def _prem(f: Polynomial, g: Polynomial, i: int) -> Polynomial:
    """Pseudo-remainder of f by g with respect to x_i."""
    dg = _deg_in(g, i)
    lcg = _coeff_in(g, i, dg)
    r = f
    while not r.is_zero() and _deg_in(r, i) >= dg:
        dr = _deg_in(r, i)
        lcr = _coeff_in(r, i, dr)
        shift = [0] * len(f.ring)
        shift[i] = dr - dg
        r = lcg * r - lcr * f.ring.monomial(shift) * g
    return r


def gcd_poly(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd over Q, normalized integer-primitive with positive lead."""
    ring = f.ring
    if f.is_zero():
        return integer_primitive(g)[1] if not g.is_zero() else ring.zero()
    if g.is_zero():
        return integer_primitive(f)[1]
    if f.is_constant() or g.is_constant():
        return ring.one()
    # main variable: first ring variable occurring in either operand
    main = None
    for i in range(len(ring)):
        if _deg_in(f, i) > 0 or _deg_in(g, i) > 0:
            main = i
            break
    if _deg_in(f, main) == 0:
        return gcd_poly(f, _content_in(g, main))
    if _deg_in(g, main) == 0:
        return gcd_poly(_content_in(f, main), g)
    cf = _content_in(f, main)
    cg = _content_in(g, main)
    c = gcd_poly(cf, cg)
    a = f.exact_div(cf)
    b = g.exact_div(cg)
    if _deg_in(a, main) < _deg_in(b, main):
        a, b = b, a
    while True:
        r = _prem(a, b, main)
        if r.is_zero():
            ppb = b.exact_div(_content_in(b, main))
            return integer_primitive(c * ppb)[1]
        if _deg_in(r, main) == 0:
            # pp-gcd is x-free, hence trivial for x-primitive operands
            return integer_primitive(c)[1]
        r = r.exact_div(_content_in(r, main))
        a, b = b, r


def squarefree_part(f: Polynomial) -> Polynomial:
    """The product of f's distinct irreducible factors (char-0 formula)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.is_constant():
        return f.ring.one()
    d = f
    for name in f.variables():
        d = gcd_poly(d, f.derivative(name))
        if d.is_unit_constant():
            break
    _, fn = integer_primitive(f)
    if d.is_unit_constant():
        return fn
    return integer_primitive(fn.exact_div(integer_primitive(d)[1]))[1]


# -- univariate factorization over Z ---------------------------------------

def _u_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _u_eval(c: list[int], a: int) -> int:
    v = 0
    for coeff in reversed(c):
        v = v * a + coeff
    return v


def _u_divmod_exact(c: list[int], d: list[int]) -> list[int] | None:
    """Quotient of c by d over Q when exact with integer result, else None."""
    if len(c) < len(d) or not d or d[-1] == 0:
        return None
    c = list(c)
    q = [0] * (len(c) - len(d) + 1)
    lead = d[-1]
    for k in range(len(q) - 1, -1, -1):
        if c[len(d) - 1 + k] % lead != 0:
            return None
        t = c[len(d) - 1 + k] // lead
        q[k] = t
        for j, dj in enumerate(d):
            c[k + j] -= t * dj
    if any(c[: len(d) - 1]) or any(c[len(d) - 1 + len(q):]):
        return None
    return q


def _u_gcd(a: list[int], b: list[int]) -> list[int]:
    fa = [Fraction(x) for x in a]
    fb = [Fraction(x) for x in b]
    while fb and any(fb):
        fa, fb = fb, _frac_rem(fa, fb)
    while fa and fa[-1] == 0:
        fa.pop()
    if not fa:
        return []
    den = 1
    for x in fa:
        den = den * x.denominator // int_gcd(den, x.denominator)
    ints = [int(x * den) for x in fa]
    g = 0
    for x in ints:
        g = int_gcd(g, abs(x))
    out = [x // g for x in ints] if g else ints
    if out and out[-1] < 0:
        out = [-x for x in out]
    return out


def _frac_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    bb = list(b)
    while bb and bb[-1] == 0:
        bb.pop()
    while len(a) >= len(bb) and a and any(a):
        t = a[-1] / bb[-1]
        shift = len(a) - len(bb)
        for j, bj in enumerate(bb):
            a[shift + j] -= t * bj
        while a and a[-1] == 0:
            a.pop()
    return a


def _u_derivative(c: list[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n > CAPS.max_integer_to_factor:
        raise ResourceLimitError(f"integer {n} too large to factor at desk scale")
    bound = isqrt(n)
    if bound > 2_000_000:
        raise ResourceLimitError(f"divisor search for {n} exceeds desk scale")
    small, large = [], []
    for i in range(1, bound + 1):
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
    return small + large[::-1]


def _u_content_strip(c: list[int]) -> list[int]:
    g = 0
    for x in c:
        g = int_gcd(g, abs(x))
    if g > 1:
        c = [x // g for x in c]
    if c and c[-1] < 0:
        c = [-x for x in c]
    return c


def _u_squarefree_decomposition(c: list[int]) -> list[tuple[list[int], int]]:
    """Yun's algorithm: returns [(squarefree part, multiplicity)]."""
    out = []
    a = _u_content_strip(list(c))
    g = _u_gcd(a, _u_derivative(a))
    if len(g) <= 1:
        return [(a, 1)]
    y = _u_divmod_exact(a, g)
    z = _u_divmod_exact(_u_derivative(a), g)
    i = 1
    while len(y) > 1:
        w = _u_trim([zz - yy for zz, yy in _pad(z, _u_derivative(y))])
        h = _u_gcd(y, w)
        if len(h) > 1:
            out.append((h, i))
        y2 = _u_divmod_exact(y, h)
        z = _u_divmod_exact(w, h)
        y = y2
        i += 1
    return out


def _pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return zip(a + [0] * (n - len(a)), b + [0] * (n - len(b)))


def _u_rational_roots(c: list[int]) -> tuple[list[list[int]], list[int]]:
    """Split all linear rational factors s*t - r off a squarefree int poly."""
    factors: list[list[int]] = []
    c = _u_content_strip(list(c))
    while len(c) > 2:
        found = None
        for s in _divisors(c[-1]):
            for r0 in _divisors(c[0]):
                for r in (r0, -r0):
                    if int_gcd(abs(r), s) != 1:
                        continue
                    val = sum(
                        coeff * r**i * s ** (len(c) - 1 - i)
                        for i, coeff in enumerate(c)
                    )
                    if val == 0:
                        found = (r, s)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        r, s = found
        lin = _u_content_strip([-r, s])
        q = _u_divmod_exact(c, lin)
        if q is None:
            raise CertificationError("linear factor division failed")
        factors.append(lin)
        c = _u_content_strip(q)
    if len(c) == 2:
        factors.append(_u_content_strip(c))
        c = [1]
    return factors, c


def _u_factor_squarefree(c: list[int]) -> list[list[int]]:
    """Irreducible integer factors of a squarefree primitive poly, c[0] != 0."""
    factors, c = _u_rational_roots(c)
    deg = len(c) - 1
    if deg <= 0:
        return factors
    if deg <= 3:
        # no rational roots: degrees 2 and 3 are irreducible over Q
        factors.append(c)
        return factors
    dd = 2
    sample_points = [0] + [v for n in range(1, 40) for v in (n, -n)]
    while dd <= (len(c) - 1) // 2:
        points: list[int] = []
        values: list[int] = []
        for a in sample_points:
            v = _u_eval(c, a)
            if v == 0:
                raise CertificationError("unexpected integer root")
            points.append(a)
            values.append(v)
            if len(points) == dd + 1:
                break
        div_lists = []
        total = 1
        for v in values:
            ds = _divisors(v)
            signed = [d for d0 in ds for d in (d0, -d0)]
            div_lists.append(signed)
            total *= len(signed)
            if total > CAPS.max_divisor_combinations:
                raise ResourceLimitError(
                    "divisor combination count exceeds desk-scale cap"
                )
        hit = None
        for combo in iproduct(*div_lists):
            cand = _lagrange_int(points, combo)
            if cand is None or len(cand) - 1 != dd:
                continue
            cand = _u_content_strip(cand)
            if len(cand) <= 1:
                continue
            q = _u_divmod_exact(c, cand)
            if q is not None:
                hit = (cand, q)
                break
        if hit is None:
            dd += 1
            continue
        cand, q = hit
        factors.append(cand)  # minimal degree reached first, hence irreducible
        c = _u_content_strip(q)
        if len(c) - 1 <= 3:
            if len(c) > 1:
                sub, rest = _u_rational_roots(c)
                factors.extend(sub)
                if len(rest) > 1:
                    factors.append(rest)
            return factors
    if len(c) > 1:
        factors.append(c)
    return factors


def _lagrange_int(points: list[int], values) -> list[int] | None:
    """Integer-coefficient interpolating polynomial, or None."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial for node i
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = _mul_lin(basis, -points[j])
            denom *= points[i] - points[j]
        scale = Fraction(values[i], 1) / denom
        for k in range(len(basis)):
            coeffs[k] += basis[k] * scale
    out = []
    for c in coeffs:
        if c.denominator != 1:
            return None
        out.append(int(c))
    return _u_trim(out)


def _mul_lin(c: list[Fraction], root_neg: int) -> list[Fraction]:
    out = [Fraction(0)] * (len(c) + 1)
    for i, x in enumerate(c):
        out[i] += x * root_neg
        out[i + 1] += x
    return out


def _u_factor_full(c: list[int]) -> list[tuple[list[int], int]]:
    """Full integer factorization with multiplicities; strips t^k first."""
    k = 0
    while c and c[0] == 0:
        c = c[1:]
        k += 1
    c = _u_content_strip(c)
    out: list[tuple[list[int], int]] = []
    if k:
        out.append(([0, 1], k))
    if len(c) <= 1:
        return out
    for part, mult in _u_squarefree_decomposition(c):
        for f in _u_factor_squarefree(part):
            out.append((f, mult))
    return out


# -- multivariate factorization via Kronecker substitution ------------------

def _kron_weights(ring: Ring, present: list[int], D: int) -> dict[int, int]:
    return {v: D**j for j, v in enumerate(present)}


def _kron_image(f: Polynomial, weights: dict[int, int]) -> list[int]:
    deg = 0
    img: dict[int, int] = {}
    for e, c in f.terms.items():
        k = sum(e[i] * w for i, w in weights.items())
        img[k] = img.get(k, 0) + int(c)
        deg = max(deg, k)
    out = [0] * (deg + 1)
    for kk, v in img.items():
        out[kk] = v
    return _u_trim(out)


def _kron_decode(c: list[int], ring: Ring, present: list[int], D: int) -> Polynomial:
    terms = {}
    for k, coeff in enumerate(c):
        if coeff == 0:
            continue
        e = [0] * len(ring)
        rem = k
        for v in present:
            e[v] = rem % D
            rem //= D
        if rem:
            # exponent overflow: candidate cannot decode inside the box
            return ring.zero()
        terms[tuple(e)] = Fraction(coeff)
    return Polynomial(ring, terms)


def _factor_squarefree_multivariate(f: Polynomial) -> list[Polynomial]:
    present = [i for i in range(len(f.ring)) if _deg_in(f, i) > 0]
    if len(present) == 1:
        name = f.ring.names[present[0]]
        c = [0] * (_deg_in(f, present[0]) + 1)
        for e, coeff in f.terms.items():
            c[e[present[0]]] = int(coeff)
        out = []
        for fac in _u_factor_squarefree(_u_content_strip(c)):
            terms = {}
            for k, coeff in enumerate(fac):
                if coeff:
                    ee = [0] * len(f.ring)
                    ee[present[0]] = k
                    terms[tuple(ee)] = Fraction(coeff)
            out.append(Polynomial(f.ring, terms))
        return out
    D = max(_deg_in(f, i) for i in present) + 1
    weights = _kron_weights(f.ring, present, D)
    image = _kron_image(f, weights)
    if len(image) - 1 > CAPS.max_kron_image_degree:
        raise ResourceLimitError(
            f"Kronecker image degree {len(image) - 1} exceeds cap"
        )
    ufacs = _u_factor_full(image)
    count = 1
    for _, m in ufacs:
        count *= m + 1
    if count > CAPS.max_factor_subsets:
        raise ResourceLimitError("factor recombination count exceeds cap")
    # enumerate proper sub-multisets, smallest candidate degree first
    choices = sorted(
        (combo for combo in iproduct(*[range(m + 1) for _, m in ufacs])
         if any(combo) and list(combo) != [m for _, m in ufacs]),
        key=lambda combo: (
            sum(k * (len(ufacs[i][0]) - 1) for i, k in enumerate(combo)),
            combo,
        ),
    )
    for combo in choices:
        prod = [1]
        for i, k in enumerate(combo):
            for _ in range(k):
                prod = _u_mul(prod, ufacs[i][0])
        cand = _kron_decode(prod, f.ring, present, D)
        if cand.is_zero() or cand.is_constant():
            continue
        cand = integer_primitive(cand)[1]
        if cand.divides(f):
            rest = integer_primitive(f.exact_div(cand))[1]
            return _factor_squarefree_multivariate(cand) + _factor_squarefree_multivariate(rest)
    return [integer_primitive(f)[1]]


def _u_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


# -- public surface ----------------------------------------------------------

def factor_with_unit(f: Polynomial) -> tuple[Fraction, list[tuple[Polynomial, int]]]:
    """f = unit * prod(factor^mult) with primitive irreducible factors.

    Monomial factors come first (in ring order), the rest in a canonical
    deterministic order.  The identity is re-expanded and checked.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if f.is_constant():
        return f.constant_value(), []
    mono_factors, core = _strip_monomial(f)
    _, core = integer_primitive(core)
    factors = list(mono_factors)
    if not core.is_constant():
        sq = squarefree_part(core)
        irr = _factor_squarefree_multivariate(sq)
        irr.sort(key=lambda p: (p.total_degree(), str(p)))
        for u in irr:
            m = u.max_power_dividing(core)
            factors.append((u, m))
    rebuilt = f.ring.one()
    for u, m in factors:
        rebuilt = rebuilt * u**m
    q = f.exact_div(rebuilt)
    if not q.is_constant():
        raise CertificationError("factorization does not re-expand to the input")
    return q.constant_value(), factors


def factor_principal(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Irreducible factors with multiplicities, up to a rational unit."""
    return factor_with_unit(f)[1]
