"""Exact multivariate polynomials over the rationals.

A Ring is an ordered tuple of variable names; a Polynomial maps exponent
vectors to nonzero Fraction coefficients.  Values are immutable after
construction and safe to share.  Text round-trips through a canonical
grammar: terms `c*x^e*y^f` joined by `+`/`-`, printed in descending
degrevlex order so golden files are bit-stable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError, RingMismatchError

LEX = "lex"
DEGREVLEX = "degrevlex"
ELIM1 = "elim1"  # internal: eliminates the first ring variable

_ORDERS = (LEX, DEGREVLEX, ELIM1)


def order_key(order: str):
    """Sort key on exponent tuples; max(key) is the leading monomial."""
    if order == LEX:
        return lambda e: e
    if order == DEGREVLEX:
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == ELIM1:
        # block order: first variable dominates, degrevlex on the rest
        return lambda e: (e[0], sum(e[1:]), tuple(-x for x in reversed(e[1:])))
    raise ValueError(f"unknown monomial order {order!r}")


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class Ring:
    """An ordered list of variable names over Q."""

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise ParseError("invalid variable name", n, 0)
        if len(set(names)) != len(names):
            raise RingMismatchError(f"duplicate variable in ring {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)})"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * len(self.names): c})

    def var(self, name: str) -> "Polynomial":
        i = self.index[name]
        e = [0] * len(self.names)
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in self.names)

    def monomial(self, exps: Iterable[int], coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != len(self.names):
            raise RingMismatchError("exponent vector length mismatch")
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {exps: c})

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(self, text)

    def extend(self, extra: Iterable[str], prepend: bool = False) -> "Ring":
        extra = tuple(extra)
        return Ring(extra + self.names if prepend else self.names + extra)


def _mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Sparse polynomial: exponent vector -> nonzero Fraction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[tuple, Fraction]):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash = None

    # -- basic state -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()))

    def is_unit_constant(self) -> bool:
        return self.is_constant() and not self.is_zero()

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index[name]
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self) -> tuple[str, ...]:
        used = [False] * len(self.ring)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, tuple(sorted(self.terms.items()))))
        return self._hash

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        res: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                m = _mono_mul(e1, e2)
                s = res.get(m, Fraction(0)) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        return self * Fraction(c)

    # -- leading data ------------------------------------------------

    def leading_monomial(self, order: str = DEGREVLEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order: str = DEGREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: str = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self * (Fraction(1) / lc)

    # -- division ----------------------------------------------------

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient self/other; raises ValueError when not divisible."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        key = order_key(DEGREVLEX)
        lm = max(other.terms, key=key)
        lc = other.terms[lm]
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            e = max(rem, key=key)
            if not _mono_divides(lm, e):
                raise ValueError("not divisible")
            m = _mono_div(e, lm)
            c = rem[e] / lc
            quo[m] = quo.get(m, Fraction(0)) + c
            for e2, c2 in other.terms.items():
                t = _mono_mul(m, e2)
                s = rem.get(t, Fraction(0)) - c * c2
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return Polynomial(self.ring, quo)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    def max_power_dividing(self, other: "Polynomial") -> int:
        """Largest n with self^n | other (other nonzero, self nonconstant)."""
        n = 0
        cur = other
        while True:
            try:
                cur = cur.exact_div(self)
            except ValueError:
                return n
            n += 1

    # -- calculus / maps ---------------------------------------------

    def derivative(self, name: str) -> "Polynomial":
        i = self.ring.index[name]
        res = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                res[tuple(e2)] = c * e[i]
        return Polynomial(self.ring, res)

    def substitute(self, mapping: Mapping[str, "Polynomial"], target: Ring) -> "Polynomial":
        """Exact composition; `mapping` must cover every variable used here."""
        images: list[Polynomial | None] = []
        for n in self.ring.names:
            img = mapping.get(n)
            if img is not None and img.ring != target:
                raise RingMismatchError(f"image of {n} not in target ring")
            images.append(img)
        result = target.zero()
        power_cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, exp in enumerate(e):
                if exp == 0:
                    continue
                if images[i] is None:
                    raise RingMismatchError(
                        f"no image for variable {self.ring.names[i]}"
                    )
                kp = (i, exp)
                if kp not in power_cache:
                    power_cache[kp] = images[i] ** exp
                term = term * power_cache[kp]
            result = result + term
        return result

    def rename(self, target: Ring, name_map: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-home onto `target`, variable-by-variable (default: same names)."""
        mapping = {}
        for n in self.variables():
            tgt = (name_map or {}).get(n, n)
            mapping[n] = target.var(tgt)
        return self.substitute(mapping, target)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, exp in enumerate(e):
                if exp:
                    v *= Fraction(point[self.ring.names[i]]) ** exp
            total += v
        return total

    # -- text --------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"<{format_poly(self)}>"


def format_poly(p: Polynomial) -> str:
    """Canonical printing: descending degrevlex, explicit `*` and `^`."""
    if p.is_zero():
        return "0"
    key = order_key(DEGREVLEX)
    parts = []
    for e in sorted(p.terms, key=key, reverse=True):
        c = p.terms[e]
        mono = "*".join(
            n if k == 1 else f"{n}^{k}"
            for n, k in zip(p.ring.names, e)
            if k
        )
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        parts.append((c < 0, body))
    out = []
    for i, (neg, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError("unexpected character", text, pos)
            break
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


def parse_poly(ring: Ring, text: str) -> Polynomial:
    """Parse the canonical grammar: signed terms of `*`-joined factors.

    A factor is a rational constant `a` / `a/b`, a declared variable, or
    a variable with `^exponent`.  Parentheses are not part of the grammar.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", text, 0)
    result = ring.zero()
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        # leading sign of the term
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if not first and sign == 1 and tokens[i][1] == "+":
                pass
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign", text, tokens[-1][2])
        first = False
        coeff = Fraction(sign)
        exps = [0] * len(ring)
        expect_factor = True
        while i < n:
            kind, val, pos = tokens[i]
            if expect_factor:
                if kind == "num":
                    coeff *= Fraction(val)
                elif kind == "name":
                    if val not in ring.index:
                        raise ParseError(f"unknown variable {val!r}", text, pos)
                    idx = ring.index[val]
                    exp = 1
                    if i + 1 < n and tokens[i + 1] == ("op", "^", tokens[i + 1][2]):
                        if i + 2 >= n or tokens[i + 2][0] != "num" or "/" in tokens[i + 2][1]:
                            raise ParseError("exponent must be an integer", text, pos)
                        exp = int(tokens[i + 2][1])
                        i += 2
                    exps[idx] += exp
                else:
                    raise ParseError("expected a factor", text, pos)
                expect_factor = False
                i += 1
            else:
                if kind == "op" and val == "*":
                    expect_factor = True
                    i += 1
                elif kind == "op" and val in "+-":
                    break
                else:
                    raise ParseError("expected '*' or '+'/'-'", text, pos)
        if expect_factor:
            raise ParseError("dangling '*'", text, tokens[min(i, n - 1)][2])
        if coeff != 0:
            e = tuple(exps)
            s = result.terms.get(e, Fraction(0)) + coeff
            terms = dict(result.terms)
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
            result = Polynomial(ring, terms)
    return result
