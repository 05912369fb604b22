"""Sparse multivariate polynomials over an exact field, lex-ordered.

A ring fixes an explicit variable list, greatest first; there is no implicit
alphabetical order anywhere.  Monomials are sparse tuples of (rank, exponent)
pairs sorted by descending rank, where the greatest variable has the highest
rank.  With that layout native tuple comparison coincides with the
lexicographic monomial order, which keeps the division and completion loops
cheap.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

UNIT = ()


class RingError(ValueError):
    """Configuration error: mismatched rings, orders or variables."""


# -- monomial helpers (monomials are plain tuples, usable as dict keys) ------

def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ra, ea = a[i]
        rb, eb = b[j]
        if ra == rb:
            out.append((ra, ea + eb))
            i += 1
            j += 1
        elif ra > rb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_divides(b, a) -> bool:
    """True when monomial b divides monomial a."""
    i = 0
    la = len(a)
    for rb, eb in b:
        while i < la and a[i][0] > rb:
            i += 1
        if i == la or a[i][0] != rb or a[i][1] < eb:
            return False
        i += 1
    return True


def mono_div(a, b):
    """a / b, assuming b divides a."""
    if not b:
        return a
    out = []
    j = 0
    lb = len(b)
    for ra, ea in a:
        if j < lb and b[j][0] == ra:
            e = ea - b[j][1]
            j += 1
            if e:
                out.append((ra, e))
        else:
            out.append((ra, ea))
    return tuple(out)


def mono_lcm(a, b):
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        ra, ea = a[i]
        rb, eb = b[j]
        if ra == rb:
            out.append((ra, max(ea, eb)))
            i += 1
            j += 1
        elif ra > rb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_degree(a) -> int:
    return sum(e for _, e in a)


def _display_key(name: str):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


class PolyRing:
    """F[v_1, ..., v_k] under the lex order induced by `variables`.

    `variables` lists the names greatest first; e.g. ("s", "t2", "t1") puts
    s > t2 > t1.
    """

    __slots__ = ("field", "variables", "_rank_of", "_name_of")

    def __init__(self, field, variables: Iterable[str]):
        self.field = field
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise RingError("duplicate variable names")
        n = len(self.variables)
        self._rank_of = {v: n - i for i, v in enumerate(self.variables)}
        self._name_of = {n - i: v for i, v in enumerate(self.variables)}

    # ---- construction ----
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {UNIT: self.field.one})

    def constant(self, c) -> "Polynomial":
        c = self.field.from_int(c) if isinstance(c, int) else c
        return Polynomial(self, {UNIT: c} if c != self.field.zero else {})

    def variable(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.mono({name: 1}): self.field.one})

    def term(self, coeff, exps: dict) -> "Polynomial":
        coeff = self.field.from_int(coeff) if isinstance(coeff, int) else coeff
        if coeff == self.field.zero:
            return self.zero()
        return Polynomial(self, {self.mono(exps): coeff})

    def poly(self, d: dict) -> "Polynomial":
        """Wrap {mono: coeff}; zero coefficients are dropped."""
        zero = self.field.zero
        return Polynomial(self, {m: c for m, c in d.items() if c != zero})

    def mono(self, exps: dict):
        pairs = []
        for name, e in exps.items():
            if e < 0:
                raise RingError(f"negative exponent for {name}")
            if e:
                try:
                    pairs.append((self._rank_of[name], e))
                except KeyError:
                    raise RingError(f"variable {name!r} not in ring") from None
        pairs.sort(reverse=True)
        return tuple(pairs)

    def mono_items(self, mono):
        """(name, exponent) pairs in display order: by family, then index."""
        items = [(self._name_of[r], e) for r, e in mono]
        items.sort(key=lambda it: _display_key(it[0]))
        return items

    def rank_of(self, name: str) -> int:
        return self._rank_of[name]

    # ---- moving between rings ----
    def lift(self, poly: "Polynomial", parent: "PolyRing") -> "Polynomial":
        """Reinterpret in `parent`, which extends self by greater variables."""
        k = len(parent.variables) - len(self.variables)
        if k < 0 or parent.variables[k:] != self.variables:
            raise RingError("target ring does not extend this ring")
        return Polynomial(parent, dict(poly._d))

    def restrict(self, poly: "Polynomial", sub: "PolyRing") -> "Polynomial":
        """Reinterpret in the subring `sub` obtained by dropping greatest vars."""
        k = len(self.variables) - len(sub.variables)
        if k < 0 or self.variables[k:] != sub.variables:
            raise RingError("subring must drop a prefix of greatest variables")
        top = len(sub.variables)
        for m in poly._d:
            if m and m[0][0] > top:
                raise RingError("polynomial involves dropped variables")
        return Polynomial(sub, dict(poly._d))

    def parse(self, text: str) -> "Polynomial":
        d = {}
        zero = self.field.zero
        for coeff_text, exps in _parse_terms(text):
            c = self.field.parse(coeff_text)
            m = self.mono(exps)
            c = self.field.add(d.get(m, zero), c)
            if c == zero:
                d.pop(m, None)
            else:
                d[m] = c
        return Polynomial(self, d)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {self.variables})"


class Polynomial:
    """Immutable sparse polynomial; canonical form, structural equality."""

    __slots__ = ("ring", "_d", "_terms")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._terms = None

    # ---- queries ----
    def is_zero(self) -> bool:
        return not self._d

    @property
    def terms(self):
        """(monomial, coefficient) pairs, strictly descending."""
        if self._terms is None:
            self._terms = tuple(
                (m, self._d[m]) for m in sorted(self._d, reverse=True)
            )
        return self._terms

    def lm(self):
        if not self._d:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._d)

    def lc(self):
        return self._d[self.lm()]

    def lt(self):
        m = self.lm()
        return m, self._d[m]

    def total_degree(self) -> int:
        if not self._d:
            return 0
        return max(mono_degree(m) for m in self._d)

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(m) for m in self._d}
        return len(degs) <= 1

    def coeff(self, mono):
        return self._d.get(mono, self.ring.field.zero)

    def variables_used(self):
        names = set()
        for m in self._d:
            for r, _ in m:
                names.add(self.ring._name_of[r])
        return names

    # ---- arithmetic ----
    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        if field.char == 2:
            return Polynomial(
                self.ring, dict.fromkeys(self._d.keys() ^ other._d.keys(), 1)
            )
        d = dict(self._d)
        zero = field.zero
        for m, c in other._d.items():
            s = field.add(d.get(m, zero), c)
            if s == zero:
                d.pop(m, None)
            else:
                d[m] = s
        return Polynomial(self.ring, d)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        if field.char == 2:
            return Polynomial(
                self.ring, dict.fromkeys(self._d.keys() ^ other._d.keys(), 1)
            )
        d = dict(self._d)
        zero = field.zero
        for m, c in other._d.items():
            s = field.sub(d.get(m, zero), c)
            if s == zero:
                d.pop(m, None)
            else:
                d[m] = s
        return Polynomial(self.ring, d)

    def __neg__(self) -> "Polynomial":
        field = self.ring.field
        if field.char == 2:
            return self
        return Polynomial(self.ring, {m: field.neg(c) for m, c in self._d.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        field = self.ring.field
        a, b = self._d, other._d
        if len(a) > len(b):
            a, b = b, a
        if field.char == 2:
            acc = set()
            for ma in a:
                acc ^= {mono_mul(ma, mb) for mb in b}
            return Polynomial(self.ring, dict.fromkeys(acc, 1))
        acc = {}
        zero = field.zero
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                s = field.add(acc.get(m, zero), field.mul(ca, cb))
                if s == zero:
                    acc.pop(m, None)
                else:
                    acc[m] = s
        return Polynomial(self.ring, acc)

    def scale(self, c) -> "Polynomial":
        field = self.ring.field
        if c == field.zero:
            return Polynomial(self.ring, {})
        if c == field.one:
            return self
        return Polynomial(self.ring, {m: field.mul(c, x) for m, x in self._d.items()})

    def mul_term(self, c, mono) -> "Polynomial":
        """self * c * x^mono."""
        field = self.ring.field
        if c == field.zero:
            return Polynomial(self.ring, {})
        if c == field.one:
            return Polynomial(self.ring, {mono_mul(m, mono): x for m, x in self._d.items()})
        return Polynomial(
            self.ring, {mono_mul(m, mono): field.mul(c, x) for m, x in self._d.items()}
        )

    def sub_scaled(self, other: "Polynomial", c, mono) -> "Polynomial":
        """self - c * x^mono * other, fused."""
        field = self.ring.field
        if field.char == 2:
            shifted = {mono_mul(m, mono) for m in other._d}
            return Polynomial(self.ring, dict.fromkeys(self._d.keys() ^ shifted, 1))
        d = dict(self._d)
        zero = field.zero
        for m, x in other._d.items():
            key = mono_mul(m, mono)
            s = field.sub(d.get(key, zero), field.mul(c, x))
            if s == zero:
                d.pop(key, None)
            else:
                d[key] = s
        return Polynomial(self.ring, d)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        c = self.lc()
        if c == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(c))

    def pow(self, k: int) -> "Polynomial":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, values: dict):
        """Full evaluation; `values` maps variable name to a field scalar."""
        field = self.ring.field
        total = field.zero
        by_rank = {self.ring._rank_of[n]: v for n, v in values.items()}
        for m, c in self._d.items():
            term = c
            for r, e in m:
                v = by_rank[r]
                for _ in range(e):
                    term = field.mul(term, v)
            total = field.add(total, term)
        return total

    # ---- structure ----
    def _check(self, other):
        if other.ring != self.ring:
            raise RingError("polynomials from different rings")

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and other.ring == self.ring
            and other._d == self._d
        )

    def __hash__(self):
        return hash((self.ring.variables, self.terms))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


def format_scalar_factor(field, c) -> tuple[bool, str]:
    """(negative, magnitude-text) for display; F_p scalars are never negative."""
    if isinstance(c, Fraction) and c < 0:
        return True, field.fmt(-c)
    return False, field.fmt(c)


def format_poly(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    ring = p.ring
    chunks = []
    for m, c in p.terms:
        neg, mag = format_scalar_factor(ring.field, c)
        factors = []
        if not m or mag != "1":
            factors.append(mag)
        for name, e in ring.mono_items(m):
            factors.append(name if e == 1 else f"{name}^{e}")
        text = "*".join(factors)
        if not chunks:
            chunks.append(f"-{text}" if neg else text)
        else:
            chunks.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(chunks)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z]+\d*)|(?P<op>[*^+\-()]))")


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"bad token at {text[pos:pos + 10]!r}")
            break
        pos = m.end()
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


def _parse_terms(text: str):
    """Parse a sum of product terms into (coefficient-text, {name: exp}) pairs.

    Grammar: term ((+|-) term)*; term: factor ('*' factor)*;
    factor: number | name ['^' number].  Signs fold into the coefficient text
    as a leading '-' count; the caller's field parses the number.
    """
    tokens = tokenize(text)
    if not tokens:
        return []
    terms = []
    i = 0
    n = len(tokens)

    def parse_term(sign):
        nonlocal i
        coeff_num = None
        exps: dict = {}
        expect_factor = True
        while i < n:
            kind, val = tokens[i]
            if kind == "op" and val in "+-" and not expect_factor:
                break
            if kind == "num":
                if coeff_num is None:
                    coeff_num = val
                else:
                    raise ValueError("two numeric factors in one term")
                i += 1
            elif kind == "name":
                name = val
                i += 1
                e = 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= n or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise ValueError("exponent must be an integer")
                    e = int(tokens[i][1])
                    i += 1
                exps[name] = exps.get(name, 0) + e
            elif kind == "op" and val == "*":
                i += 1
                expect_factor = True
                continue
            else:
                raise ValueError(f"unexpected token {val!r}")
            expect_factor = False
        if expect_factor:
            raise ValueError("dangling operator")
        coeff = coeff_num if coeff_num is not None else "1"
        if sign < 0:
            coeff = "-" + coeff
        return coeff, exps

    sign = 1
    while i < n:
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            sign = -sign if val == "-" else sign
            i += 1
            continue
        terms.append(parse_term(sign))
        sign = 1
    return terms
