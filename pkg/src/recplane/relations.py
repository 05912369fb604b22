"""Relation polynomials and the presentations they generate.

For a dependency L = a_1 z_{i_1} + ... + a_k z_{i_k} = 0 the commutative
relation P_L clears denominators in sum(a_j / t_{i_j}) = 0; its odd
refinements mix t and u variables, one for each subset S of the support.
Presentations collect these generators, and chart rings carry the localized
form living on one piece of the compactification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrangement import Arrangement, Flat, Relation, relations_for
from .caps import Caps
from .fields import field_to_json
from .polynomials import Polynomial, PolyRing, RingError
from .superalg import (
    ExtElement,
    TdzElement,
    XiElement,
    ext_mul,
    subset_key,
    xi_from_tdz,
)


@lru_cache(maxsize=None)
def _t_ring(field, m: int) -> PolyRing:
    return PolyRing(field, tuple(f"t{i}" for i in range(m, 0, -1)))


def t_ring(arr: Arrangement) -> PolyRing:
    """F[t_1..t_m] for the arrangement, ordered t_m > ... > t_1."""
    return _t_ring(arr.field, arr.m)


def t_monomial(ring: PolyRing, indices) -> Polynomial:
    return ring.term(1, {f"t{i}": 1 for i in indices})


def p_of_L(ring: PolyRing, rel: Relation) -> Polynomial:
    """sum_j a_j * t_{support minus i_j}."""
    support = set(rel.support)
    out = ring.zero()
    for i, a in zip(rel.support, rel.coeffs):
        out = out + ring.term(a, {f"t{j}": 1 for j in support if j != i})
    return out


def d_of_L(ring: PolyRing, rel: Relation) -> TdzElement:
    """sum_j a_j * dz_{i_j} with unit polynomial parts."""
    comps = {}
    for i, a in zip(rel.support, rel.coeffs):
        comps[(i,)] = ring.constant(a)
    return TdzElement(ring, comps)


def _dz_wedge(ring: PolyRing, subset) -> TdzElement:
    return TdzElement(ring, {tuple(subset): ring.one()})


def p_of_LS(ring: PolyRing, rel: Relation, subset) -> XiElement:
    """The odd relation for (L, S).

    Built as P_L dz_S minus, for each position s in S, the correction
    t_{|L| minus j_s} * dz_{j_1}..dz_{j_{s-1}} dL dz_{j_{s+1}}..dz_{j_l},
    then converted into the u-variables.  The conversion cannot fail here;
    offending dz-only monomials cancel between the two parts.
    """
    S = tuple(sorted(subset))
    if not set(S) <= set(rel.support):
        raise ValueError("subset must lie inside the relation support")
    support = set(rel.support)
    base = ext_mul(
        TdzElement.from_poly(p_of_L(ring, rel)), _dz_wedge(ring, S)
    )
    dL = d_of_L(ring, rel)
    total = base
    for s_pos, j in enumerate(S):
        acc = _dz_wedge(ring, S[:s_pos])
        acc = ext_mul(acc, dL)
        acc = ext_mul(acc, _dz_wedge(ring, S[s_pos + 1:]))
        correction = acc.poly_mul(t_monomial(ring, sorted(support - {j})))
        total = total - correction
    return xi_from_tdz(total)


def q_of_LS(ring: PolyRing, rel: Relation, subset) -> XiElement:
    """t_{|L|} * dL wedge dz_S, converted into the u-variables."""
    S = tuple(sorted(subset))
    if not set(S) <= set(rel.support):
        raise ValueError("subset must lie inside the relation support")
    tdz = ext_mul(d_of_L(ring, rel), _dz_wedge(ring, S))
    return xi_from_tdz(tdz.poly_mul(t_monomial(ring, rel.support)))


def ext_lt(e: ExtElement):
    """(monomial, coefficient, subset) of the leading term, TOP-style."""
    best = None
    best_key = None
    for s, p in e._comps.items():
        m = p.lm()
        key = (m, subset_key(s))
        if best_key is None or key > best_key:
            best_key = key
            best = (m, p._d[m], s)
    if best is None:
        raise ValueError("zero element has no leading term")
    return best


def ext_monic(e: ExtElement) -> ExtElement:
    _, c, _ = ext_lt(e)
    if c == e.ring.field.one:
        return e
    return e.scale(e.ring.field.inv(c))


@dataclass(frozen=True)
class GeneratorRecord:
    """A presentation generator plus where it came from."""

    element: object  # Polynomial or XiElement
    relation: Relation
    subset: tuple | None  # None in the commutative case

    def to_json(self, field) -> dict:
        data = {
            "element": str(self.element),
            "relation": self.relation.to_json(field),
        }
        if self.subset is not None:
            data["subset"] = list(self.subset)
        return data


@dataclass(frozen=True)
class Presentation:
    """Generators-and-relations data for the commutative or odd quotient."""

    arrangement: Arrangement
    super: bool
    mode: str
    generators: tuple

    @property
    def ring(self) -> PolyRing:
        return t_ring(self.arrangement)

    def elements(self):
        return [g.element for g in self.generators]

    def to_json(self) -> dict:
        arr = self.arrangement
        m = arr.m
        data = {
            "field": field_to_json(arr.field),
            "m": m,
            "super": self.super,
            "mode": self.mode,
            "variables": {"t": [f"t{i}" for i in range(1, m + 1)]},
            "grading": {"t": 2},
            "generators": [g.to_json(arr.field) for g in self.generators],
        }
        if self.super:
            data["variables"]["u"] = [f"u{i}" for i in range(1, m + 1)]
            data["grading"]["u"] = 1
        return data

    def to_text(self) -> str:
        kind = "super" if self.super else "commutative"
        lines = [
            f"{kind} presentation, mode={self.mode}, m={self.arrangement.m}",
            f"generators: {len(self.generators)}",
        ]
        for g in self.generators:
            tag = f"L={list(g.relation.support)}"
            if g.subset is not None:
                tag += f" S={list(g.subset)}"
            lines.append(f"  [{tag}] {g.element}")
        return "\n".join(lines)


def commutative_generators(
    arr: Arrangement, mode: str = "circuits", caps: Caps | None = None
) -> Presentation:
    """Presentation of the commutative relation ideal.

    Scalar-multiple dependencies normalize to the same Relation, so the
    relation family is de-duplicated before polynomials are built.
    """
    ring = t_ring(arr)
    records = [
        GeneratorRecord(p_of_L(ring, rel), rel, None)
        for rel in relations_for(arr, mode, caps)
    ]
    return Presentation(arr, False, mode, tuple(records))


def subsets_of(support, size=None):
    from itertools import combinations

    items = tuple(sorted(support))
    if size is not None:
        return list(combinations(items, size))
    out = []
    for k in range(len(items) + 1):
        out.extend(combinations(items, k))
    return out


def super_generators(
    arr: Arrangement, mode: str = "circuits", caps: Caps | None = None
) -> Presentation:
    """Presentation of the odd relation ideal: one generator per (L, S).

    All 2^k subsets of each support appear, zero elements included (the full
    support always yields zero: its corrections sum back to P_L dz_S).
    """
    ring = t_ring(arr)
    records = []
    for rel in relations_for(arr, mode, caps):
        for S in subsets_of(rel.support):
            records.append(GeneratorRecord(p_of_LS(ring, rel, S), rel, S))
    return Presentation(arr, True, mode, tuple(records))


# -- chart rings --------------------------------------------------------------


@lru_cache(maxsize=None)
def _chart_poly_ring(field, t_indices, z_indices) -> PolyRing:
    names = [f"t{i}" for i in sorted(t_indices, reverse=True)]
    names += [f"z{j}" for j in sorted(z_indices, reverse=True)]
    return PolyRing(field, tuple(names))


@dataclass(frozen=True)
class ChartRing:
    """One affine chart: t_i for i outside the flat, z_j on it, T inverted."""

    arrangement: Arrangement
    flat: Flat
    inverted: tuple
    super: bool
    ring: PolyRing
    generators: tuple

    def to_json(self) -> dict:
        arr = self.arrangement
        s_v = set(self.flat.indices)
        data = {
            "flat": list(self.flat.indices),
            "inverted": list(self.inverted),
            "super": self.super,
            "variables": {
                "t": [f"t{i}" for i in range(1, arr.m + 1) if i not in s_v],
                "z": [f"z{j}" for j in self.flat.indices],
            },
            "generators": [g.to_json(arr.field) for g in self.generators],
        }
        if self.super:
            data["variables"]["u"] = [
                f"u{i}" for i in range(1, arr.m + 1) if i not in s_v
            ]
            data["variables"]["dz"] = [f"dz{j}" for j in self.flat.indices]
        return data

    def to_text(self) -> str:
        kind = "super" if self.super else "commutative"
        lines = [
            f"{kind} chart: flat={list(self.flat.indices)} inverted={list(self.inverted)}",
        ]
        for g in self.generators:
            tag = f"L={list(g.relation.support)}"
            if g.subset is not None:
                tag += f" S={list(g.subset)}"
            lines.append(f"  [{tag}] {format_chart_element(g.element, self.flat)}")
        return "\n".join(lines)


class ChartSuperElement(ExtElement):
    """Exterior element on a chart; index kind (u vs dz) depends on the flat."""

    ext_prefix = "u"


def format_chart_element(element, flat: Flat) -> str:
    if isinstance(element, Polynomial):
        return str(element)
    s_v = set(flat.indices)
    from .polynomials import format_scalar_factor

    if element.is_zero():
        return "0"
    ring = element.ring
    chunks = []
    for s in element.subsets():
        p = element._comps[s]
        ext = "*".join(f"dz{i}" if i in s_v else f"u{i}" for i in s)
        for m, c in p.terms:
            neg, mag = format_scalar_factor(ring.field, c)
            factors = []
            if (not m and not s) or mag != "1":
                factors.append(mag)
            for name, x in ring.mono_items(m):
                factors.append(name if x == 1 else f"{name}^{x}")
            if ext:
                factors.append(ext)
            text = "*".join(factors)
            if not chunks:
                chunks.append(f"-{text}" if neg else text)
            else:
                chunks.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(chunks)


def _divide_monomial(chart_ring, s_v, divisors, mono, subset):
    """Monomial-level division by t_D with localized semantics.

    A present t_j factor is consumed; an absent one contributes the inverse
    coordinate z_j; a u_j factor turns into dz_j (index slot unchanged, so no
    sign).  The result must live in the chart variables.
    """
    exps = dict(mono)  # rank == original index in the t-ring
    sub = set(subset)
    out = {}
    for j in divisors:
        have = exps.get(j, 0)
        if have > 0 and j not in sub:
            if have > 1:
                raise RingError(f"t{j}^{have} cannot be divided onto the chart")
            del exps[j]
        elif have == 0 and j in sub:
            pass  # u_j / t_j = dz_j; membership in the flat renders it as dz
        elif have == 0:
            out[f"z{j}"] = out.get(f"z{j}", 0) + 1
        else:
            raise RingError(f"monomial mixes t{j} and u{j} on the chart")
    for i, e in exps.items():
        if i in s_v:
            raise RingError(f"t{i} survives division on the chart")
        out[f"t{i}"] = e
    for j in sub & s_v:
        if j not in divisors:
            raise RingError(f"u{j} has no chart expression")
    return chart_ring.mono(out)


def chart_divide(chart_poly_ring, s_v, rel: Relation, element):
    """Divide a generator by t_{S_V intersect support} on the chart."""
    divisors = sorted(s_v & set(rel.support))
    field = chart_poly_ring.field

    def convert(poly_dict, subset):
        d = {}
        for m, c in poly_dict.items():
            key = _divide_monomial(chart_poly_ring, s_v, divisors, m, subset)
            got = field.add(d.get(key, field.zero), c)
            if got == field.zero:
                d.pop(key, None)
            else:
                d[key] = got
        return Polynomial(chart_poly_ring, d)

    if isinstance(element, Polynomial):
        return convert(element._d, ())
    comps = {s: convert(p._d, s) for s, p in element._comps.items()}
    return ChartSuperElement(chart_poly_ring, comps)


def chart_ring(
    arr: Arrangement,
    flat: Flat,
    invert=(),
    super: bool = False,
    mode: str = "circuits",
    caps: Caps | None = None,
) -> ChartRing:
    """The chart for a flat, with the forms in `invert` made invertible."""
    s_v = set(flat.indices)
    inverted = tuple(sorted(set(invert)))
    if not set(inverted) <= s_v:
        raise ValueError("inverted indices must lie in the flat")
    ring = _chart_poly_ring(
        arr.field,
        tuple(i for i in range(1, arr.m + 1) if i not in s_v),
        tuple(flat.indices),
    )
    pres = (
        super_generators(arr, mode, caps) if super else commutative_generators(arr, mode, caps)
    )
    records = []
    for g in pres.generators:
        divided = chart_divide(ring, s_v, g.relation, g.element)
        records.append(GeneratorRecord(divided, g.relation, g.subset))
    return ChartRing(arr, flat, inverted, super, ring, tuple(records))
