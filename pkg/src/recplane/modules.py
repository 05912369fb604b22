"""Free modules over a polynomial ring with subset-labeled basis.

The term order is TOP (term over position) lexicographic: monomials compare
first under the ring's lex order, then basis labels compare via their
descending index tuples.  The completion tracks representations over the
input generators, which yields syzygies and, from those, submodule preimages.
"""

from __future__ import annotations

import heapq

from .polynomials import (
    Polynomial,
    PolyRing,
    RingError,
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)
from .superalg import subset_key


class TopLexOrder:
    """Term-over-position order: ring lex on monomials, then label order."""

    __slots__ = ("ring",)

    def __init__(self, ring: PolyRing):
        self.ring = ring

    @staticmethod
    def label_key(label):
        return subset_key(label)

    def term_key(self, mono, label):
        return (mono, subset_key(label))


class ModuleElement:
    """Immutable element of a free module; entries keyed by basis label."""

    __slots__ = ("ring", "_entries", "_lt")

    def __init__(self, ring: PolyRing, entries: dict):
        self.ring = ring
        self._entries = {s: p for s, p in entries.items() if not p.is_zero()}
        self._lt = None

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def basis_vector(cls, ring, label, poly=None):
        return cls(ring, {tuple(label): poly if poly is not None else ring.one()})

    @property
    def entries(self):
        return dict(self._entries)

    def entry(self, label) -> Polynomial:
        return self._entries.get(tuple(label), self.ring.zero())

    def labels(self):
        return sorted(self._entries, key=subset_key)

    def is_zero(self) -> bool:
        return not self._entries

    def lt(self):
        """(monomial, coefficient, label) of the leading term under TOP-lex."""
        if self._lt is None:
            if not self._entries:
                raise ValueError("zero module element has no leading term")
            best = None
            best_key = None
            for label, p in self._entries.items():
                m = p.lm()
                key = (m, subset_key(label))
                if best_key is None or key > best_key:
                    best_key = key
                    best = (m, p._d[m], label)
            self._lt = best
        return self._lt

    def __add__(self, other):
        self._check(other)
        entries = dict(self._entries)
        for s, p in other._entries.items():
            q = entries.get(s)
            entries[s] = p if q is None else q + p
        return ModuleElement(self.ring, entries)

    def __sub__(self, other):
        self._check(other)
        entries = dict(self._entries)
        for s, p in other._entries.items():
            q = entries.get(s)
            entries[s] = -p if q is None else q - p
        return ModuleElement(self.ring, entries)

    def __neg__(self):
        return ModuleElement(self.ring, {s: -p for s, p in self._entries.items()})

    def scale(self, c):
        return ModuleElement(self.ring, {s: p.scale(c) for s, p in self._entries.items()})

    def poly_mul(self, poly: Polynomial):
        return ModuleElement(self.ring, {s: p * poly for s, p in self._entries.items()})

    def mul_term(self, c, mono):
        return ModuleElement(
            self.ring, {s: p.mul_term(c, mono) for s, p in self._entries.items()}
        )

    def sub_scaled(self, other, c, mono):
        """self - c * x^mono * other."""
        entries = dict(self._entries)
        for s, p in other._entries.items():
            q = entries.get(s)
            shifted = p.mul_term(c, mono)
            entries[s] = -shifted if q is None else q - shifted
        return ModuleElement(self.ring, entries)

    def monic(self):
        if not self._entries:
            return self
        _, c, _ = self.lt()
        if c == self.ring.field.one:
            return self
        return self.scale(self.ring.field.inv(c))

    def lift(self, parent_ring: PolyRing):
        return ModuleElement(
            parent_ring,
            {s: self.ring.lift(p, parent_ring) for s, p in self._entries.items()},
        )

    def restrict(self, subring: PolyRing):
        return ModuleElement(
            subring,
            {s: self.ring.restrict(p, subring) for s, p in self._entries.items()},
        )

    def uses_variable(self, name: str) -> bool:
        r = self.ring.rank_of(name)
        return any(
            any(rank == r for rank, _ in m) for p in self._entries.values() for m in p._d
        )

    def sort_key(self):
        """Canonical key: term list sorted descending, for deterministic output."""
        items = []
        for s in self.labels():
            items.append((subset_key(s), self._entries[s].terms))
        return tuple(items)

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.ring != self.ring:
            raise RingError("module elements from different modules")

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and other.ring == self.ring
            and other._entries == self._entries
        )

    def __hash__(self):
        return hash((self.ring.variables, self.sort_key()))

    def __str__(self):
        if not self._entries:
            return "0"
        parts = []
        for s in self.labels():
            name = "e{" + ",".join(map(str, s)) + "}"
            parts.append(f"({self._entries[s]})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<ModuleElement {self}>"


def _prepare(basis):
    by_label: dict = {}
    for idx, g in enumerate(basis):
        if g.is_zero():
            continue
        m, c, label = g.lt()
        by_label.setdefault(label, []).append((m, c, g, idx))
    return by_label


def module_normal_form(v: ModuleElement, basis, order=None, track=False):
    """Remainder of v modulo `basis` under TOP-lex division.

    With track=True also returns the quotient dict {basis_index: Polynomial}
    so that v == sum(q_i * basis_i) + remainder.
    """
    by_label = _prepare(basis)
    field = v.ring.field
    work = {s: dict(p._d) for s, p in v._entries.items()}
    rem: dict = {}
    quots: dict = {} if track else None
    while work:
        # leading term across labels
        best_key = None
        best = None
        for label, d in work.items():
            m = max(d)
            key = (m, subset_key(label))
            if best_key is None or key > best_key:
                best_key = key
                best = (m, label)
        m, label = best
        c = work[label][m]
        hit = None
        for lm, lc, g, idx in by_label.get(label, ()):
            if mono_divides(lm, m):
                hit = (lm, lc, g, idx)
                break
        if hit is None:
            rem.setdefault(label, {})[m] = c
            del work[label][m]
            if not work[label]:
                del work[label]
            continue
        lm, lc, g, idx = hit
        factor = field.div(c, lc)
        shift = mono_div(m, lm)
        if track:
            qd = quots.setdefault(idx, {})
            s = field.add(qd.get(shift, field.zero), factor)
            if s == field.zero:
                qd.pop(shift, None)
            else:
                qd[shift] = s
        for s, p in g._entries.items():
            d = work.get(s)
            if d is None:
                d = work[s] = {}
            for gm, gc in p._d.items():
                key = mono_mul(gm, shift)
                val = field.sub(d.get(key, field.zero), field.mul(factor, gc))
                if val == field.zero:
                    d.pop(key, None)
                else:
                    d[key] = val
            if not d:
                del work[s]
    ring = v.ring
    remainder = ModuleElement(
        ring, {s: Polynomial(ring, d) for s, d in rem.items()}
    )
    if track:
        return remainder, {
            i: Polynomial(ring, d) for i, d in quots.items() if d
        }
    return remainder


def _spair(f: ModuleElement, g: ModuleElement):
    """S-pair data for elements whose leading terms share a label."""
    field = f.ring.field
    mf, cf, _ = f.lt()
    mg, cg, _ = g.lt()
    lcm = mono_lcm(mf, mg)
    af = field.inv(cf)
    ag = field.inv(cg)
    sf = mono_div(lcm, mf)
    sg = mono_div(lcm, mg)
    return f.mul_term(af, sf) - g.mul_term(ag, sg), (af, sf), (ag, sg)


def _row_combine(ring, terms):
    """Sparse sum of polynomially scaled rows (row, factor)."""
    out: dict = {}
    zero = ring.zero()
    for row, factor in terms:
        for idx, poly in row.items():
            out[idx] = out.get(idx, zero) + poly * factor
    return {i: p for i, p in out.items() if not p.is_zero()}


def module_buchberger(gens, *, track=False, track_limit=None):
    """Raw completion over the input list.

    Returns (G, reps, syzygies): G contains every nonzero input plus the new
    reducers; reps[i] expresses G[i] over the inputs (restricted to indices
    below track_limit when given); syzygies are rows over the inputs obtained
    from every S-pair that reduces to zero, which generate the full syzygy
    module of the inputs.
    """
    if not gens:
        return [], [], []
    ring = gens[0].ring
    field = ring.field
    limit = track_limit if track_limit is not None else len(gens)
    G = []
    reps = []
    syz = []
    for idx, g in enumerate(gens):
        if g.is_zero():
            if track and idx < limit:
                syz.append({idx: ring.one()})
            continue
        G.append(g)
        if track:
            reps.append({idx: ring.one()} if idx < limit else {})

    heap = []

    def push_pairs(j):
        mj, _, labj = G[j].lt()
        for i in range(j):
            mi, _, labi = G[i].lt()
            if labi != labj:
                continue
            heapq.heappush(heap, (mono_degree(mono_lcm(mi, mj)), i, j))

    for j in range(len(G)):
        push_pairs(j)

    while heap:
        _, i, j = heapq.heappop(heap)
        s, (ai, si), (aj, sj) = _spair(G[i], G[j])
        if track:
            r, quots = module_normal_form(s, G, track=True)
            mono_i = Polynomial(ring, {si: ai})
            mono_j = Polynomial(ring, {sj: field.neg(aj)})
            parts = [(reps[i], mono_i), (reps[j], mono_j)]
            for k, q in quots.items():
                parts.append((reps[k], -q))
            row = _row_combine(ring, parts)
        else:
            r = module_normal_form(s, G)
            row = None
        if r.is_zero():
            if track:
                syz.append(row)
        else:
            _, lc, _ = r.lt()
            if lc != field.one:
                inv = field.inv(lc)
                r = r.scale(inv)
                if track:
                    row = {k: p.scale(inv) for k, p in row.items()}
            G.append(r)
            if track:
                reps.append(row)
            push_pairs(len(G) - 1)
    return G, reps, syz


def reduce_module_basis(G):
    """Minimal interreduced monic basis, sorted by ascending leading term."""
    G = [g for g in G if not g.is_zero()]

    def lt_key(g):
        m, _, label = g.lt()
        return (m, subset_key(label))

    G.sort(key=lt_key)
    minimal = []
    for g in G:
        m, _, label = g.lt()
        keep = True
        for h in minimal:
            hm, _, hlabel = h.lt()
            if hlabel == label and mono_divides(hm, m):
                keep = False
                break
        if keep:
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = module_normal_form(g, others)
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lt_key)
    return reduced


def module_groebner(gens, order=None):
    """Reduced Groebner basis of the submodule generated by `gens`."""
    G, _, _ = module_buchberger(gens)
    return reduce_module_basis(G)


def is_module_groebner(G) -> bool:
    """Buchberger criterion: every applicable S-pair reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    for i in range(len(G)):
        _, _, labi = G[i].lt()
        for j in range(i + 1, len(G)):
            _, _, labj = G[j].lt()
            if labi != labj:
                continue
            s, _, _ = _spair(G[i], G[j])
            if not module_normal_form(s, G).is_zero():
                return False
    return True


def module_intersect(A, B):
    """Generators of the intersection via the auxiliary greatest variable s."""
    elems = [g for g in list(A) + list(B) if not g.is_zero()]
    if not elems:
        return []
    ring = elems[0].ring
    if "s" in ring.variables:
        raise RingError("ambient ring already uses the auxiliary variable s")
    ext = PolyRing(ring.field, ("s",) + ring.variables)
    s_poly = ext.variable("s")
    one_minus_s = ext.one() - s_poly
    lifted = []
    for a in A:
        if not a.is_zero():
            lifted.append(a.lift(ext).poly_mul(s_poly))
    for b in B:
        if not b.is_zero():
            lifted.append(b.lift(ext).poly_mul(one_minus_s))
    basis = module_groebner(lifted)
    out = [g.restrict(ring) for g in basis if not g.uses_variable("s")]
    return reduce_module_basis(out)


def module_syzygies(gens, *, track_limit=None):
    """Generating rows {index: Polynomial} of the syzygy module of `gens`."""
    _, _, syz = module_buchberger(gens, track=True, track_limit=track_limit)
    return [row for row in syz if row]


def module_preimage(map_columns, ambient_gens):
    """Generators of {f in R^c : sum f_i * column_i lies in <ambient_gens>}.

    Computed from syzygies of (columns ++ ambient generators) projected to the
    column coordinates.  Rows come back as tuples of polynomials.
    """
    columns = list(map_columns)
    c = len(columns)
    if c == 0:
        return []
    ring = columns[0].ring
    rows = module_syzygies(columns + list(ambient_gens), track_limit=c)
    zero = ring.zero()
    out = []
    seen = set()
    for row in rows:
        vec = tuple(row.get(i, zero) for i in range(c))
        if all(p.is_zero() for p in vec):
            continue
        key = tuple(p.terms for p in vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(vec)
    return out
