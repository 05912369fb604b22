"""Independent verification machinery.

Everything here checks the relation-polynomial presentations from first
principles: direct substitution into the localized differential ring, kernels
by elimination and by syzygy preimages, brute-force point counts over finite
fields, and Hilbert dimensions computed two unrelated ways.  No check trusts
the construction it is checking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import linalg
from .arrangement import (
    Arrangement,
    Flat,
    distinct_relations,
    field_points,
    flats,
    restrict_to_flat,
)
from .caps import Caps
from .fields import FieldError
from .groebner import eliminate, groebner_ideal, ideal_equal, normal_form
from .modules import (
    ModuleElement,
    module_groebner,
    module_normal_form,
    module_preimage,
)
from .polynomials import Polynomial, PolyRing, mono_divides
from .relations import (
    chart_ring,
    commutative_generators,
    ext_monic,
    p_of_L,
    q_of_LS,
    subsets_of,
    super_generators,
    t_ring,
    t_monomial,
)
from .superalg import (
    OmegaElement,
    XiElement,
    ext_mul,
    merge_subsets,
    subset_key,
)


# -- reports ------------------------------------------------------------------


@dataclass
class Report:
    """Outcome of one verification; serializes to the JSON report schema."""

    check: str
    instance: str
    status: str
    witnesses: list = dc_field(default_factory=list)
    details: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "details": self.details,
        }


def instance_label(arr: Arrangement) -> str:
    tag = f"p{arr.field.char}" if arr.field.char else "q"
    vecs = ";".join(
        ",".join(arr.field.fmt(x) for x in row) for row in arr.forms
    )
    return f"{tag}_n{arr.n}_m{arr.m}_{vecs}"


# -- the ambient differential ring and the two evaluation maps ----------------


@lru_cache(maxsize=None)
def _x_ring(field, n: int) -> PolyRing:
    return PolyRing(field, tuple(f"x{i}" for i in range(n, 0, -1)))


def x_ring(arr: Arrangement) -> PolyRing:
    return _x_ring(arr.field, arr.n)


def z_polynomials(arr: Arrangement):
    """The forms as polynomials in the x-ring."""
    ring = x_ring(arr)
    out = []
    for row in arr.forms:
        p = ring.zero()
        for k, c in enumerate(row, start=1):
            if c != arr.field.zero:
                p = p + ring.term(c, {f"x{k}": 1})
        out.append(p)
    return out


@dataclass(frozen=True)
class LocalizedOmega:
    """numerator / (z_1 ... z_m)^den_exp inside F[x] tensor Lambda[dx].

    Zero testing is full expansion of the numerator; nothing is factored.
    """

    numerator: OmegaElement
    den_exp: int

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def with_denominator(self, zs, n_target: int) -> "LocalizedOmega":
        if n_target < self.den_exp:
            raise ValueError("cannot lower the denominator exponent")
        num = self.numerator
        for z in zs:
            for _ in range(n_target - self.den_exp):
                num = num.poly_mul(z)
        return LocalizedOmega(num, n_target)

    def __str__(self):
        return f"({self.numerator}) / (z1..zm)^{self.den_exp}"


def _pow_cached(cache, z, k):
    have = cache.setdefault(id(z), {0: z.ring.one(), 1: z})
    while k not in have:
        top = max(have)
        have[top + 1] = have[top] * z
    return have[k]


def eval_h(arr: Arrangement, f: Polynomial) -> LocalizedOmega:
    """Substitute t_i -> 1/z_i and clear to the common denominator."""
    zs = z_polynomials(arr)
    ring = x_ring(arr)
    if f.is_zero():
        return LocalizedOmega(OmegaElement.zero(ring), 0)
    n_common = max(
        (e for m in f._d for _, e in m), default=0
    )
    cache: dict = {}
    total = ring.zero()
    for m, c in f._d.items():
        exps = dict(m)  # rank of t_i equals i
        prod = ring.constant(c)
        for i in range(1, arr.m + 1):
            k = n_common - exps.get(i, 0)
            if k:
                prod = prod * _pow_cached(cache, zs[i - 1], k)
        total = total + prod
    comps = {(): total} if not total.is_zero() else {}
    return LocalizedOmega(OmegaElement(ring, comps), n_common)


def wedge_expand(field, rows, labels):
    """Expansion of a wedge of covectors in the coordinate exterior basis.

    `rows` are coefficient vectors over `labels`; the result maps ascending
    label subsets to the minor-determinant coefficients.
    """
    acc = {(): field.one}
    for row in rows:
        nxt: dict = {}
        for subset, c in acc.items():
            for pos, x in enumerate(row):
                if x == field.zero:
                    continue
                lab = labels[pos]
                sign, merged = merge_subsets(subset, (lab,))
                if sign == 0:
                    continue
                val = field.mul(c, x)
                if sign < 0:
                    val = field.neg(val)
                got = field.add(nxt.get(merged, field.zero), val)
                if got == field.zero:
                    nxt.pop(merged, None)
                else:
                    nxt[merged] = got
        acc = nxt
        if not acc:
            break
    return acc


def eval_psi(arr: Arrangement, xi: XiElement) -> LocalizedOmega:
    """Substitute t_i -> 1/z_i, u_i -> dz_i/z_i; expand dz into dx."""
    zs = z_polynomials(arr)
    ring = x_ring(arr)
    field = arr.field
    x_labels = tuple(range(1, arr.n + 1))
    terms = []
    n_common = 0
    for s, p in xi._comps.items():
        in_s = set(s)
        for m, c in p._d.items():
            exps = dict(m)
            need = {
                i: exps.get(i, 0) + (1 if i in in_s else 0)
                for i in range(1, arr.m + 1)
            }
            n_common = max(n_common, max(need.values(), default=0))
            terms.append((s, c, need))
    cache: dict = {}
    comps: dict = {}
    for s, c, need in terms:
        prod = ring.constant(c)
        for i in range(1, arr.m + 1):
            k = n_common - need[i]
            if k:
                prod = prod * _pow_cached(cache, zs[i - 1], k)
        rows = [arr.form(i) for i in s]
        for subset, coeff in wedge_expand(field, rows, x_labels).items():
            add = prod.scale(coeff)
            got = comps.get(subset)
            comps[subset] = add if got is None else got + add
    return LocalizedOmega(OmegaElement(ring, comps), n_common)


# -- kernels from first principles ---------------------------------------------


def kernel_I(arr: Arrangement):
    """Generators of Ker(h) by eliminating the x's from (z_i t_i - 1)."""
    field = arr.field
    xs = tuple(f"x{i}" for i in range(arr.n, 0, -1))
    ts = tuple(f"t{i}" for i in range(arr.m, 0, -1))
    big = PolyRing(field, xs + ts)
    gens = []
    for i in range(1, arr.m + 1):
        z = big.zero()
        for k, c in enumerate(arr.form(i), start=1):
            if c != field.zero:
                z = z + big.term(c, {f"x{k}": 1})
        gens.append(z * big.variable(f"t{i}") - big.one())
    return eliminate(gens, set(xs), subring=t_ring(arr))


@lru_cache(maxsize=None)
def _dz_expansion(arr: Arrangement, indices):
    """dz_I in the basis dz_{I'}, I' inside the chosen basis indices."""
    coords = arr.basis_coordinates()
    rows = [coords[i - 1] for i in indices]
    return wedge_expand(arr.field, rows, arr.basis_indices)


def degree_module_columns(arr: Arrangement, r: int):
    """(index subsets, columns t_I * expansion(dz_I)) for Grassmann degree r."""
    ring = t_ring(arr)
    subsets = list(itertools.combinations(range(1, arr.m + 1), r))
    columns = []
    for I in subsets:
        tI = t_monomial(ring, I)
        entries = {
            sub: tI.scale(c) for sub, c in _dz_expansion(arr, I).items()
        }
        columns.append(ModuleElement(ring, entries))
    return subsets, columns


def degree_module_relations(arr: Arrangement, r: int, igens=None):
    """Generators g * e_{I'} of the relation submodule in degree r."""
    ring = t_ring(arr)
    if igens is None:
        igens = kernel_I(arr)
    out = []
    for I_prime in itertools.combinations(arr.basis_indices, r):
        for g in igens:
            out.append(ModuleElement(ring, {I_prime: g}))
    return out


def xi_to_module(xi: XiElement) -> ModuleElement:
    return ModuleElement(xi.ring, dict(xi._comps))


def module_to_xi(elem: ModuleElement) -> XiElement:
    return XiElement(elem.ring, dict(elem._entries))


def kernel_K_degree(arr: Arrangement, r: int, igens=None):
    """Degree-r generators of Ker(psi) as u-encoded elements.

    Computed as the preimage of the relation submodule under the map sending
    the u-basis to t_I * dz_I, so the only upstream input is the elimination
    kernel; at r = 0 this reproduces it.
    """
    ring = t_ring(arr)
    subsets, columns = degree_module_columns(arr, r)
    if not subsets:
        return []
    relmod = degree_module_relations(arr, r, igens)
    rows = module_preimage(columns, relmod)
    elems = [
        ModuleElement(ring, {s: p for s, p in zip(subsets, vec) if not p.is_zero()})
        for vec in rows
    ]
    return [module_to_xi(e) for e in module_groebner(elems)]


def span_module_generators(arr: Arrangement, pres, r: int):
    """Degree-r piece of the ideal the presentation generates: u_B multiples."""
    out = []
    seen = set()
    for g in pres.generators:
        el = g.element
        if isinstance(el, Polynomial):
            el = XiElement.from_poly(el)
        if el.is_zero():
            continue
        k = el.grassmann_degrees()[0]
        if k > r:
            continue
        for B in itertools.combinations(range(1, arr.m + 1), r - k):
            prod = ext_mul(XiElement(el.ring, {B: el.ring.one()}), el)
            if prod.is_zero():
                continue
            monic = ext_monic(prod)
            key = tuple(
                (subset_key(s), monic._comps[s].terms) for s in monic.subsets()
            )
            if key in seen:
                continue
            seen.add(key)
            out.append(xi_to_module(prod))
    return out


def modules_equal(A, B):
    """Mutual containment of spans by normal-form reduction; returns
    (equal, witness) with a witness element string on failure."""
    ga = module_groebner(A)
    gb = module_groebner(B)
    for b in B:
        if not module_normal_form(b, ga).is_zero():
            return False, f"not in first span: {b}"
    for a in A:
        if not module_normal_form(a, gb).is_zero():
            return False, f"not in second span: {a}"
    return True, None


# -- instance-level theorem checks ---------------------------------------------


def verify_theorem1(arr: Arrangement, mode: str = "circuits",
                    caps: Caps | None = None) -> Report:
    """Elimination kernel against the commutative generator family."""
    label = instance_label(arr)
    ker = kernel_I(arr)
    pres = commutative_generators(arr, mode, caps)
    gens = [g.element for g in pres.generators]
    ok = ideal_equal(ker, gens)
    witnesses = []
    if not ok:
        witnesses.append({"kernel": [str(g) for g in ker],
                          "generators": [str(g) for g in gens]})
    return Report("theorem1", label, "pass" if ok else "fail", witnesses,
                  {"mode": mode, "kernel_size": len(ker), "generators": len(gens)})


def verify_theorem2(arr: Arrangement, mode: str = "circuits",
                    rmax: int | None = None, caps: Caps | None = None) -> Report:
    """Per-degree module equality of the generated ideal and Ker(psi)."""
    label = instance_label(arr)
    rmax = arr.m if rmax is None else rmax
    igens = kernel_I(arr)
    pres = super_generators(arr, mode, caps)
    degrees = []
    witnesses = []
    ok = True
    for r in range(rmax + 1):
        lhs = span_module_generators(arr, pres, r)
        if r <= arr.rank:
            rhs = [xi_to_module(e) for e in kernel_K_degree(arr, r, igens)]
        else:
            # beyond the rank everything of this degree is a relation
            ring = t_ring(arr)
            rhs = [
                ModuleElement.basis_vector(ring, I)
                for I in itertools.combinations(range(1, arr.m + 1), r)
            ]
        equal, witness = modules_equal(lhs, rhs)
        degrees.append({"r": r, "status": "pass" if equal else "fail"})
        if not equal:
            ok = False
            witnesses.append({"r": r, "witness": witness})
    return Report("theorem2", label, "pass" if ok else "fail", witnesses,
                  {"mode": mode, "degrees": degrees})


def verify_minimal(arr: Arrangement, caps: Caps | None = None) -> Report:
    """Circuit-generated families against the full enumerated families.

    Circuits normalize to the same Relation objects that the enumeration
    produces, so the circuit family is a subset of the full one and only the
    reverse containment needs reduction.
    """
    label = instance_label(arr)
    if arr.field.char == 0:
        raise FieldError("minimality check enumerates relations over F_p")
    pres_c = commutative_generators(arr, "circuits", caps)
    pres_a = commutative_generators(arr, "all", caps)
    gb_i = groebner_ideal([g.element for g in pres_c.generators])
    witnesses = []
    ok_i = True
    for g in pres_a.generators:
        if not normal_form(g.element, gb_i).is_zero():
            ok_i = False
            witnesses.append({"ideal_witness": str(g.element)})
            break
    sup_c = super_generators(arr, "circuits", caps)
    sup_a = super_generators(arr, "all", caps)
    degrees = []
    ok = ok_i
    for r in range(arr.m + 1):
        lhs = span_module_generators(arr, sup_c, r)
        gb = module_groebner(lhs)
        lhs_keys = {e.sort_key() for e in lhs}
        status = "pass"
        for cand in span_module_generators(arr, sup_a, r):
            if cand.sort_key() in lhs_keys:
                continue
            if not module_normal_form(cand, gb).is_zero():
                status = "fail"
                ok = False
                witnesses.append({"r": r, "witness": str(cand)})
                break
        degrees.append({"r": r, "status": status})
    return Report("minimal", label, "pass" if ok else "fail", witnesses,
                  {"ideal_equal": ok_i, "degrees": degrees})


def verify_lemma7(arr: Arrangement, caps: Caps | None = None) -> Report:
    """The Q-element identities and their reduction to zero, per circuit."""
    from .arrangement import circuits as circuits_of
    from .relations import p_of_LS

    label = instance_label(arr)
    ring = t_ring(arr)
    witnesses = []
    checked = 0
    for rel in circuits_of(arr):
        i1 = rel.support[0]
        plist = {S: p_of_LS(ring, rel, S) for S in subsets_of(rel.support)}
        u1 = XiElement(ring, {(i1,): ring.one()})
        base = ext_mul(u1, XiElement.from_poly(p_of_L(ring, rel))) - plist[
            (i1,)
        ].poly_mul(ring.variable(f"t{i1}"))
        if base != q_of_LS(ring, rel, ()):
            witnesses.append({"relation": list(rel.support),
                              "identity": "u_min*P_L - t_min*P_L_min != Q_L_empty"})
        for S in subsets_of(rel.support):
            q = q_of_LS(ring, rel, S)
            checked += 1
            for i in S:
                ui = XiElement(ring, {(i,): ring.one()})
                if q != ext_mul(ui, plist[S]):
                    witnesses.append({"relation": list(rel.support),
                                      "S": list(S), "i": i,
                                      "identity": "Q != u_i * P_LS"})
            if q.is_zero():
                continue
            r = len(S) + 1
            basis = []
            for T, p in plist.items():
                if p.is_zero() or len(T) > r:
                    continue
                for B in itertools.combinations(range(1, arr.m + 1), r - len(T)):
                    prod = ext_mul(XiElement(ring, {B: ring.one()}), p)
                    if not prod.is_zero():
                        basis.append(xi_to_module(prod))
            nf = module_normal_form(xi_to_module(q), module_groebner(basis))
            if not nf.is_zero():
                witnesses.append({"relation": list(rel.support), "S": list(S),
                                  "reduction": str(nf)})
    status = "pass" if not witnesses else "fail"
    return Report("lemma7", label, status, witnesses, {"pairs": checked})


# -- the explicit Groebner family check -----------------------------------------


def _family_vectors(field, slots: int, caps: Caps):
    """All nonzero coefficient assignments over `slots` positions."""
    count = field.char ** slots - 1
    caps.check("family enumeration", count, caps.family)
    for combo in itertools.product(range(field.char), repeat=slots):
        if any(combo):
            yield combo


def verify_groebner_lemma(arr: Arrangement, r: int,
                          caps: Caps | None = None) -> Report:
    """Enumerate the three-part family and run the Buchberger criterion on it.

    Also confirms the family generates the same submodule as the straight
    generators (s * t_I e_I and (1-s) * P_L e_{I'}).
    """
    label = instance_label(arr)
    caps = caps or Caps()
    if arr.field.char == 0:
        raise FieldError("family enumeration needs a finite field")
    field = arr.field
    tr = t_ring(arr)
    ring = PolyRing(field, ("s",) + tr.variables)
    s_poly = ring.variable("s")
    one_minus_s = ring.one() - s_poly

    subsets = list(itertools.combinations(range(1, arr.m + 1), r))
    expansions = {I: _dz_expansion(arr, I) for I in subsets}
    rels = distinct_relations(arr, caps)
    p_polys = [tr.lift(p_of_L(tr, rel), ring) for rel in rels]
    labels = list(itertools.combinations(arr.basis_indices, r))

    def combined(vec):
        entries: dict = {}
        union = set()
        for c, I in zip(vec, subsets):
            if not c:
                continue
            union.update(I)
            for sub, x in expansions[I].items():
                val = field.mul(field.from_int(c), x)
                got = field.add(entries.get(sub, field.zero), val)
                if got == field.zero:
                    entries.pop(sub, None)
                else:
                    entries[sub] = got
        return union, entries

    def dedupe(elems):
        out = []
        seen = set()
        for e in elems:
            if e.is_zero():
                continue
            key = e.monic().sort_key()
            if key not in seen:
                seen.add(key)
                out.append(e)
        return out

    s1 = []
    s3 = []
    for vec in _family_vectors(field, len(subsets), caps):
        union, entries = combined(vec)
        if not entries:
            continue
        t_union = ring.term(1, {f"t{i}": 1 for i in sorted(union)})
        base = ModuleElement(
            ring, {sub: t_union.scale(c) for sub, c in entries.items()}
        )
        s1.append(base.poly_mul(s_poly))
        for rel, p in zip(rels, p_polys):
            t_extra = ring.term(
                1, {f"t{i}": 1 for i in sorted(union - set(rel.support))}
            )
            s3.append(
                ModuleElement(
                    ring,
                    {sub: p * t_extra.scale(c) for sub, c in entries.items()},
                )
            )
    s2 = [
        ModuleElement(ring, {I_prime: p * one_minus_s})
        for p in p_polys
        for I_prime in labels
    ]
    family = dedupe(s1) + dedupe(s2) + dedupe(s3)

    # Buchberger criterion against the family itself, no completion.
    from .modules import _spair

    pairs = 0
    witnesses = []
    grouped: dict = {}
    for idx, g in enumerate(family):
        grouped.setdefault(g.lt()[2], []).append(idx)
    for members in grouped.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                i, j = members[a], members[b]
                s, _, _ = _spair(family[i], family[j])
                pairs += 1
                rem = module_normal_form(s, family)
                if not rem.is_zero():
                    witnesses.append({"pair": [i, j], "remainder": str(rem)})
                    if len(witnesses) >= 3:
                        break
            if len(witnesses) >= 3:
                break
        if len(witnesses) >= 3:
            break

    # The family and the straight generators span the same submodule.
    plain = []
    for I in subsets:
        entries = {
            sub: ring.term(1, {f"t{i}": 1 for i in I}).scale(c)
            for sub, c in expansions[I].items()
        }
        if entries:
            plain.append(ModuleElement(ring, entries).poly_mul(s_poly))
    plain += s2
    span_ok = True
    plain_gb = module_groebner(plain)
    for e in family:
        if not module_normal_form(e, plain_gb).is_zero():
            span_ok = False
            witnesses.append({"membership": str(e)})
            break

    status = "pass" if not witnesses and span_ok else "fail"
    return Report(
        "groebner-lemma", label, status, witnesses,
        {"r": r, "family_size": len(family), "pairs": pairs,
         "same_span": span_ok},
    )


# -- stratified point counting ---------------------------------------------------


def _evaluate_at(poly: Polynomial, point) -> bool:
    """True when the polynomial vanishes at the point (indexed by rank-1)."""
    field = poly.ring.field
    total = field.zero
    for m, c in poly._d.items():
        term = c
        for rank, e in m:
            v = point[rank - 1]
            if v == field.zero:
                term = field.zero
                break
            for _ in range(e):
                term = field.mul(term, v)
        total = field.add(total, term)
    return total == field.zero


def count_points(arr: Arrangement, caps: Caps | None = None) -> Report:
    """Points of the vanishing locus versus the per-flat stratification sum."""
    caps = caps or Caps()
    if arr.field.char == 0:
        raise FieldError("point counting needs a finite field")
    field = arr.field
    p = field.char
    caps.check("point enumeration", p ** arr.m, caps.points)
    igens = kernel_I(arr)
    lhs = 0
    for point in field_points(field, arr.m):
        if all(_evaluate_at(g, point) for g in igens):
            lhs += 1
    per_flat = []
    rhs = 0
    for f in flats(arr, caps):
        sub = restrict_to_flat(arr, f)
        caps.check("point enumeration", p ** sub.n, caps.points)
        cnt = 0
        for point in field_points(field, sub.n):
            good = True
            for row in sub.forms:
                v = field.zero
                for c, x in zip(row, point):
                    v = field.add(v, field.mul(c, x))
                if v == field.zero:
                    good = False
                    break
            if good:
                cnt += 1
        per_flat.append({"flat": list(f.indices), "count": cnt})
        rhs += cnt
    status = "pass" if lhs == rhs else "fail"
    return Report("stratification", instance_label(arr), status, [],
                  {"lhs": lhs, "rhs": rhs, "per_flat": per_flat})


# -- Hilbert functions two ways ---------------------------------------------------


def _t_monomials_of_degree(ring: PolyRing, d: int):
    """All monomials of total degree d in the ring's variables."""
    names = ring.variables
    for combo in itertools.combinations_with_replacement(names, d):
        exps: dict = {}
        for name in combo:
            exps[name] = exps.get(name, 0) + 1
        yield ring.mono(exps)


def _standard_count(lt_monos, ring, d) -> int:
    count = 0
    for m in _t_monomials_of_degree(ring, d):
        if not any(mono_divides(lt, m) for lt in lt_monos):
            count += 1
    return count


def hilbert(arr: Arrangement, super: bool = False, max_degree: int = 10,
            caps: Caps | None = None):
    """Dimension tables by standard monomials and by the evaluation rank.

    Returns {"standard": {deg: dim}, "rank": {deg: dim}} over topological
    degrees 0..max_degree (t has degree 2, u degree 1).
    """
    table_a = {d: 0 for d in range(max_degree + 1)}
    table_b = {d: 0 for d in range(max_degree + 1)}
    ring = t_ring(arr)
    igens = kernel_I(arr)
    if not super:
        lt = [g.lm() for g in igens]
        for d in range(max_degree // 2 + 1):
            table_a[2 * d] = _standard_count(lt, ring, d)
        for deg in range(max_degree + 1):
            if deg % 2:
                continue
            table_b[deg] = _rank_dimension(arr, deg // 2)
    else:
        per_r_lt = {}
        for r in range(min(arr.m, max_degree) + 1):
            # kernel_K_degree already returns a reduced Groebner basis
            basis = [xi_to_module(e) for e in kernel_K_degree(arr, r, igens)]
            by_label: dict = {}
            for g in basis:
                m, _, lab = g.lt()
                by_label.setdefault(lab, []).append(m)
            per_r_lt[r] = by_label
        for deg in range(max_degree + 1):
            total = 0
            for r in range(min(arr.m, deg) + 1):
                if (deg - r) % 2:
                    continue
                d = (deg - r) // 2
                by_label = per_r_lt.get(r)
                if by_label is None:
                    continue
                for I in itertools.combinations(range(1, arr.m + 1), r):
                    total += _standard_count(by_label.get(I, ()), ring, d)
            table_a[deg] = total
            table_b[deg] = _rank_dimension_super(arr, deg)
    return {"standard": table_a, "rank": table_b}


def _rank_dimension(arr: Arrangement, d: int) -> int:
    """Rank of the h-images of all degree-d t-monomials."""
    ring = t_ring(arr)
    max_den = 0
    images = []
    for m in _t_monomials_of_degree(ring, d):
        img = eval_h(arr, Polynomial(ring, {m: arr.field.one}))
        images.append(img)
        max_den = max(max_den, img.den_exp)
    zs = z_polynomials(arr)
    cols: dict = {}
    vecs = []
    for img in images:
        img = img.with_denominator(zs, max_den)
        vec = {}
        poly = img.numerator.component(())
        for mono, c in poly._d.items():
            vec[cols.setdefault(((), mono), len(cols))] = c
        vecs.append(vec)
    return _sparse_rank(arr.field, vecs, len(cols))


def _rank_dimension_super(arr: Arrangement, deg: int) -> int:
    """Rank of the psi-images of all monomials of topological degree `deg`."""
    ring = t_ring(arr)
    images = []
    max_den = 0
    for r in range(min(arr.m, deg) + 1):
        if (deg - r) % 2:
            continue
        d = (deg - r) // 2
        for B in itertools.combinations(range(1, arr.m + 1), r):
            for m in _t_monomials_of_degree(ring, d):
                xi = XiElement(ring, {B: Polynomial(ring, {m: arr.field.one})})
                img = eval_psi(arr, xi)
                images.append(img)
                max_den = max(max_den, img.den_exp)
    zs = z_polynomials(arr)
    cols: dict = {}
    vecs = []
    for img in images:
        img = img.with_denominator(zs, max_den)
        vec = {}
        for s, poly in img.numerator._comps.items():
            for mono, c in poly._d.items():
                vec[cols.setdefault((s, mono), len(cols))] = c
        vecs.append(vec)
    return _sparse_rank(arr.field, vecs, len(cols))


def _sparse_rank(field, vecs, ncols) -> int:
    if not vecs or ncols == 0:
        return 0
    if field.char == 2:
        rows = []
        for vec in vecs:
            bits = 0
            for j in vec:
                bits |= 1 << j
            rows.append(bits)
        return linalg.matrix_rank_f2_bitmask(rows)
    dense = []
    for vec in vecs:
        row = [field.zero] * ncols
        for j, c in vec.items():
            row[j] = c
        dense.append(row)
    return linalg.rank(field, dense)


# -- chart verification -----------------------------------------------------------


def chart_kernel(arr: Arrangement, flat: Flat):
    """Kernel of the chart coordinate map, by elimination over F[x, t, z].

    The chart sends t_i to 1/z_i(x) for i outside the flat and z_j to the
    form z_j(x) on it; the kernel is computed in the chart polynomial ring.
    """
    from .relations import _chart_poly_ring

    field = arr.field
    s_v = set(flat.indices)
    t_idx = tuple(i for i in range(1, arr.m + 1) if i not in s_v)
    chart = _chart_poly_ring(field, t_idx, tuple(flat.indices))
    xs = tuple(f"x{i}" for i in range(arr.n, 0, -1))
    big = PolyRing(field, xs + chart.variables)

    def z_poly(i):
        p = big.zero()
        for k, c in enumerate(arr.form(i), start=1):
            if c != field.zero:
                p = p + big.term(c, {f"x{k}": 1})
        return p

    gens = []
    for i in t_idx:
        gens.append(z_poly(i) * big.variable(f"t{i}") - big.one())
    for j in flat.indices:
        gens.append(big.variable(f"z{j}") - z_poly(j))
    return eliminate(gens, set(xs), subring=chart)


def eval_chart(arr: Arrangement, flat: Flat, element) -> LocalizedOmega:
    """Direct substitution of a chart element into the localized target.

    t_i -> 1/z_i(x), u_i -> dz_i(x)/z_i(x) outside the flat; z_j -> z_j(x),
    dz_j -> dz_j(x) on it.  Only the outside forms are inverted.
    """
    field = arr.field
    ring = x_ring(arr)
    s_v = set(flat.indices)
    outside = [i for i in range(1, arr.m + 1) if i not in s_v]
    if isinstance(element, Polynomial):
        comps = {(): element}
    else:
        comps = dict(element._comps)
    zs = z_polynomials(arr)
    x_labels = tuple(range(1, arr.n + 1))
    chart_r = None
    terms = []
    n_common = 0
    for s, p in comps.items():
        chart_r = p.ring
        for m, c in p._d.items():
            by_name = {n: e for n, e in chart_r.mono_items(m)}
            need = {}
            for i in outside:
                need[i] = by_name.get(f"t{i}", 0) + (1 if i in s else 0)
            n_common = max(n_common, max(need.values(), default=0))
            terms.append((s, c, by_name, need))
    cache: dict = {}
    out: dict = {}
    for s, c, by_name, need in terms:
        prod = ring.constant(c)
        for i in outside:
            k = n_common - need[i]
            if k:
                prod = prod * _pow_cached(cache, zs[i - 1], k)
        for j in sorted(s_v):
            e = by_name.get(f"z{j}", 0)
            if e:
                prod = prod * _pow_cached(cache, zs[j - 1], e)
        rows = [arr.form(i) for i in s]
        for subset, coeff in wedge_expand(field, rows, x_labels).items():
            add = prod.scale(coeff)
            got = out.get(subset)
            out[subset] = add if got is None else got + add
    return LocalizedOmega(OmegaElement(ring, out), n_common)


def verify_charts(arr: Arrangement, caps: Caps | None = None,
                  include_super: bool = True) -> Report:
    """Chart generators against the elimination kernel, flat by flat.

    Commutative charts get the full two-sided ideal comparison; super charts
    are checked by exact substitution (every generator must map to zero).
    """
    label = instance_label(arr)
    witnesses = []
    count = 0
    for f in flats(arr, caps):
        count += 1
        chart = chart_ring(arr, f)
        gens = [g.element for g in chart.generators]
        ker = chart_kernel(arr, f)
        if not ideal_equal(gens, ker):
            witnesses.append({"flat": list(f.indices),
                              "kernel": [str(k) for k in ker],
                              "chart": [str(g) for g in gens]})
        if include_super:
            sup = chart_ring(arr, f, super=True)
            for g in sup.generators:
                if g.element.is_zero():
                    continue
                if not eval_chart(arr, f, g.element).is_zero():
                    witnesses.append({"flat": list(f.indices),
                                      "super_generator": str(g.element)})
    status = "pass" if not witnesses else "fail"
    return Report("charts", label, status, witnesses, {"flats": count})
