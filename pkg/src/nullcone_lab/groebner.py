"""Buchberger's algorithm and the ideal operations built on it.

Inside a computation every monomial is carried as two Python ints:

* ``key``  -- a linear functional of the exponent vector whose integer order
  is the monomial order (so multiplying monomials adds keys);
* ``pack`` -- exponents in fixed-width bit fields with a guard bit, so that
  divisibility is one subtraction and a mask test.

Polynomials are lists of ``(key, pack, coeff)`` sorted by decreasing key.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ideals import IdealGens, ideal
from .orders import BlockOrder, elimination_wrap
from .poly import ContextError, FieldSpec, Monomial, Polynomial, Ring

FIELD_BITS = 16
_EXP_LIMIT = 1 << (FIELD_BITS - 2)
DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The configured cap on monomial operations was reached."""


class FieldMismatch(ValueError):
    pass


class _Budget:
    __slots__ = ("left", "cap")

    def __init__(self, cap: int | None):
        self.cap = cap
        self.left = cap if cap is not None else -1

    def spend(self, k: int):
        if self.cap is None:
            return
        self.left -= k
        if self.left < 0:
            raise BudgetExceeded(f"exceeded budget of {self.cap} monomial operations")


class _Codec:
    """Encodes exponent vectors for one order."""

    def __init__(self, order: BlockOrder):
        self.order = order
        n = len(order.variables)
        self.n = n
        slots = sum(1 + len(seg) for seg in order.segments)
        base = 1 << FIELD_BITS
        weight = [0] * n
        idx = 0
        for seg in order.segments:
            wdeg = base ** (slots - 1 - idx)
            idx += 1
            for v in seg:
                weight[v] = wdeg - base ** (slots - 1 - idx)
                idx += 1
        self.weight = weight
        self.shift = [FIELD_BITS * v for v in range(n)]
        self.mask = (1 << FIELD_BITS) - 1
        self.guard = sum(1 << (FIELD_BITS * v + FIELD_BITS - 1) for v in range(n))

    def encode(self, m: Monomial) -> tuple[int, int]:
        if sum(m) >= _EXP_LIMIT:
            raise OverflowError("monomial degree too large for the packed representation")
        key = 0
        pack = 0
        for v, e in enumerate(m):
            if e:
                key += e * self.weight[v]
                pack += e << self.shift[v]
        return key, pack

    def decode(self, pack: int) -> Monomial:
        mask = self.mask
        return tuple((pack >> s) & mask for s in self.shift)

    def divides(self, a: int, b: int) -> bool:
        """Packed ``a`` divides packed ``b``."""
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> tuple[int, int]:
        m = tuple(max(x, y) for x, y in zip(self.decode(a), self.decode(b)))
        return self.encode(m)

    def support(self, pack: int) -> int:
        bits = 0
        mask = self.mask
        for v, s in enumerate(self.shift):
            if (pack >> s) & mask:
                bits |= 1 << v
        return bits

    def to_internal(self, f: Polynomial) -> list:
        terms = []
        for m, c in f.terms.items():
            k, p = self.encode(m)
            terms.append((k, p, c))
        terms.sort(key=lambda t: t[0], reverse=True)
        return terms

    def to_poly(self, ring: Ring, terms) -> Polynomial:
        return Polynomial(ring, {self.decode(p): c for _, p, c in terms})


def _monic(terms, fld: FieldSpec):
    if not terms:
        return terms
    c0 = terms[0][2]
    if c0 == 1:
        return terms
    inv = fld.inv(c0)
    norm = fld.norm
    return [(k, p, norm(c * inv)) for k, p, c in terms]


def _reduce(terms, basis, codec: _Codec, fld: FieldSpec, budget: _Budget, full: bool = True):
    """Normal form of ``terms`` modulo monic internal polynomials ``basis``.

    With ``full=False`` only the lead term is reduced until it is
    irreducible, and the remaining tail is returned untouched.
    """
    if not terms or not basis:
        return terms
    norm = fld.norm
    guard = codec.guard
    leads = [(g[0][0], g[0][1], g) for g in basis]
    acc: dict[int, list] = {}
    heap: list[int] = []
    for k, p, c in terms:
        acc[k] = [p, c]
        heap.append(-k)
    heapq.heapify(heap)
    out = []
    ops = 0
    while heap:
        k = -heapq.heappop(heap)
        entry = acc.pop(k, None)
        if entry is None:
            continue
        p, c = entry
        if not c:
            continue
        for lk, lp, g in leads:
            if ((p | guard) - lp) & guard == guard:
                mk = k - lk
                mp = p - lp
                for tk, tp, tc in g[1:]:
                    nk = tk + mk
                    slot = acc.get(nk)
                    if slot is None:
                        acc[nk] = [tp + mp, norm(-c * tc)]
                        heapq.heappush(heap, -nk)
                    else:
                        slot[1] = norm(slot[1] - c * tc)
                ops += len(g)
                break
        else:
            out.append((k, p, c))
            if not full:
                rest = sorted(((kk, v[0], v[1]) for kk, v in acc.items() if v[1]), key=lambda t: t[0], reverse=True)
                budget.spend(ops)
                return out + rest
    budget.spend(ops)
    return out


def _spoly(f, g, codec: _Codec, fld: FieldSpec, lk: int, lp: int):
    """S-polynomial of monic internal polynomials with lcm (lk, lp)."""
    norm = fld.norm
    fk, fp = lk - f[0][0], lp - f[0][1]
    gk, gp = lk - g[0][0], lp - g[0][1]
    acc: dict[int, list] = {}
    for k, p, c in f[1:]:
        acc[k + fk] = [p + fp, c]
    for k, p, c in g[1:]:
        nk = k + gk
        slot = acc.get(nk)
        if slot is None:
            acc[nk] = [p + gp, norm(-c)]
        else:
            slot[1] = norm(slot[1] - c)
    out = [(k, v[0], v[1]) for k, v in acc.items() if v[1]]
    out.sort(key=lambda t: t[0], reverse=True)
    return out


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (monic) paired with its order."""

    basis: tuple[Polynomial, ...]
    order: BlockOrder
    ring: Ring
    reduced: bool = True
    _codec: _Codec = field(default=None, repr=False, compare=False)
    _internal: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._codec is None:
            self._codec = _Codec(self.order)
        if self._internal is None:
            self._internal = [self._codec.to_internal(g) for g in self.basis]

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def leads(self) -> list[Monomial]:
        return [self._codec.decode(g[0][1]) for g in self._internal]

    def is_unit(self) -> bool:
        return any(g[0][1] == 0 for g in self._internal)

    def normal_form(self, f: Polynomial, budget: int | None = DEFAULT_BUDGET) -> Polynomial:
        if f.ring is not self.ring and f.ring != self.ring:
            raise ContextError("polynomial and basis live in different rings")
        terms = _reduce(self._codec.to_internal(f), self._internal, self._codec, self.field, _Budget(budget))
        return self._codec.to_poly(self.ring, terms)

    def contains(self, f: Polynomial, budget: int | None = DEFAULT_BUDGET) -> bool:
        return self.normal_form(f, budget).is_zero()

    def lead_set(self) -> frozenset:
        return frozenset(self.leads())

    def same_ideal(self, other: GroebnerBasis) -> bool:
        """Reduced bases under one order are unique, so compare them as sets."""
        return set(self.basis) == set(other.basis)

    def to_ideal(self, label: str = "GB") -> IdealGens:
        return IdealGens(self.basis, label, self.ring)

    def to_json(self) -> dict:
        return {"order": self.order.descriptor(), "basis": [g.to_text(self.order) for g in self.basis]}


def _as_list(gens) -> list[Polynomial]:
    if isinstance(gens, IdealGens):
        return list(gens.gens)
    return list(gens)


def buchberger(gens: IdealGens | Iterable[Polynomial], order: BlockOrder,
               budget: int | None = DEFAULT_BUDGET, reduce: bool = True) -> GroebnerBasis:
    """Groebner basis by Buchberger's algorithm.

    Pairs are processed smallest-lcm first (ties by index) and pruned with
    the Gebauer-Moeller criteria.  With ``reduce=False`` the monic inputs are
    kept as given and only S-polynomial remainders are appended, so a set
    that is already a Groebner basis comes back unchanged.
    """
    polys = [g for g in _as_list(gens) if g]
    if isinstance(gens, IdealGens):
        ring = gens.ring
    elif polys:
        ring = polys[0].ring
    else:
        raise ValueError("cannot infer the ring of an empty generator list")
    order.check_ring(ring)
    fld = ring.field
    codec = _Codec(order)
    bud = _Budget(budget)

    G: list[list] = []          # all polynomials ever added
    supp: list[int] = []        # support bitmask of each lead
    active: list[int] = []      # indices still in the basis
    pairs: list[tuple] = []     # heap of (lcm key, i, j, lcm pack)

    def lcm(i, j):
        return codec.lcm(G[i][0][1], G[j][0][1])

    def update(h: int):
        nonlocal active, pairs
        lh = G[h][0][1]
        cand = []
        for g in active:
            lk, lp = lcm(g, h)
            cand.append((g, lk, lp, (supp[g] & supp[h]) == 0))
        # chain criterion among the new pairs
        keep = []
        for idx, (g, lk, lp, cop) in enumerate(cand):
            if cop:
                keep.append((g, lk, lp, cop))
                continue
            dominated = False
            for jdx, (g2, lk2, lp2, _) in enumerate(cand):
                if jdx == idx:
                    continue
                if codec.divides(lp2, lp) and (lp2 != lp or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((g, lk, lp, cop))
        new = [(lk, g, h, lp) for g, lk, lp, cop in keep if not cop]
        # drop old pairs whose lcm is strictly divisible through h
        old = []
        for lk, i, j, lp in pairs:
            if codec.divides(lh, lp):
                li = lcm(i, h)[1]
                lj = lcm(j, h)[1]
                if li != lp and lj != lp:
                    continue
            old.append((lk, i, j, lp))
        pairs = old + new
        heapq.heapify(pairs)
        active = [g for g in active if not codec.divides(lh, G[g][0][1])] + [h]

    def add(terms):
        G.append(terms)
        supp.append(codec.support(terms[0][1]))
        update(len(G) - 1)

    start = []
    for f in polys:
        t = _monic(codec.to_internal(f), fld)
        start.append(t)
    if reduce:
        start.sort(key=lambda t: t[0][0])
    if not reduce:
        for t in start:
            add(t)
        start = []
    for t in start:
        r = _monic(_reduce(t, [G[a] for a in active], codec, fld, bud), fld)
        if r:
            if r[0][1] == 0:
                return _finish([r], order, ring, codec, fld, bud)
            add(r)

    while pairs:
        lk, i, j, lp = heapq.heappop(pairs)
        s = _spoly(G[i], G[j], codec, fld, lk, lp)
        bud.spend(len(G[i]) + len(G[j]))
        r = _monic(_reduce(s, [G[a] for a in active], codec, fld, bud), fld)
        if r:
            if r[0][1] == 0:
                return _finish([r], order, ring, codec, fld, bud)
            add(r)

    if not reduce:
        return GroebnerBasis(tuple(codec.to_poly(ring, g) for g in G), order, ring, False, codec, G)
    return _finish([G[a] for a in active], order, ring, codec, fld, bud)


def _finish(basis, order, ring, codec, fld, bud) -> GroebnerBasis:
    # minimal basis, then tail-reduce each element by the others
    basis = sorted(basis, key=lambda t: t[0][0])
    minimal = []
    for g in basis:
        if not any(codec.divides(h[0][1], g[0][1]) for h in minimal):
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce(g[1:], others, codec, fld, bud)
        reduced.append(_monic([g[0]] + tail, fld))
    reduced.sort(key=lambda t: t[0][0], reverse=True)
    polys = tuple(codec.to_poly(ring, g) for g in reduced)
    return GroebnerBasis(polys, order, ring, True, codec, reduced)


def normal_form(f: Polynomial, G: GroebnerBasis, budget: int | None = DEFAULT_BUDGET) -> Polynomial:
    return G.normal_form(f, budget)


def is_member(f: Polynomial, G: GroebnerBasis, budget: int | None = DEFAULT_BUDGET) -> bool:
    return G.contains(f, budget)


def s_pairs_reduce_to_zero(G: GroebnerBasis, budget: int | None = DEFAULT_BUDGET) -> bool:
    """Brute-force Buchberger criterion over all pairs (used as an oracle)."""
    codec, fld = G._codec, G.field
    bud = _Budget(budget)
    basis = G._internal
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lk, lp = codec.lcm(basis[i][0][1], basis[j][0][1])
            s = _spoly(basis[i], basis[j], codec, fld, lk, lp)
            if _reduce(s, basis, codec, fld, bud):
                return False
    return True


# -- ideal operations ------------------------------------------------------------

def _eliminate(gens: Sequence[Polynomial], big: Ring, ring: Ring, inner: BlockOrder, budget) -> GroebnerBasis:
    outer = range(ring.nvars, big.nvars)
    order = elimination_wrap(big, outer, inner)
    G = buchberger(IdealGens(tuple(gens), "elim", big), order, budget)
    kept = tuple(g.restrict(ring) for g in G.basis if not any(any(m[ring.nvars:]) for m in g.terms))
    return GroebnerBasis(kept, inner, ring)


def _unit(ring: Ring, label: str) -> IdealGens:
    return IdealGens((ring.one(),), label, ring)


def ideal_intersect(I: IdealGens, J: IdealGens, inner: BlockOrder,
                    budget: int | None = DEFAULT_BUDGET) -> IdealGens:
    """I ∩ J via u*I + (1 - u)*J and elimination of u."""
    ring = I.ring
    if J.ring != ring:
        raise ContextError("ideals live in different rings")
    if not I.gens or not J.gens:
        return IdealGens((), f"({I.label})∩({J.label})", ring)
    big = ring.extend(1)
    u = big.monomial_poly(big.unit_monomial(big.nvars - 1))
    gens = [u * g.embed(big) for g in I.gens] + [(1 - u) * g.embed(big) for g in J.gens]
    G = _eliminate(gens, big, ring, inner, budget)
    return G.to_ideal(f"({I.label})∩({J.label})")


def intersect_basis(I: IdealGens, J: IdealGens, inner: BlockOrder,
                    budget: int | None = DEFAULT_BUDGET) -> GroebnerBasis:
    return buchberger(ideal_intersect(I, J, inner, budget), inner, budget) if I.gens and J.gens \
        else GroebnerBasis((), inner, I.ring)


def exact_divide(f: Polynomial, g: Polynomial, order: BlockOrder) -> Polynomial:
    """Quotient f / g, which must be exact."""
    from .orders import lead_term

    ring = f.ring
    fld = ring.field
    gm, gc = lead_term(order, g)
    ginv = fld.inv(gc)
    q = ring.zero()
    r = f
    while r:
        m, c = lead_term(order, r)
        if any(x < y for x, y in zip(m, gm)):
            raise ArithmeticError("division is not exact")
        t = ring.monomial_poly(tuple(x - y for x, y in zip(m, gm)), fld.norm(c * ginv))
        q = q + t
        r = r - t * g
    return q


def ideal_quotient(I: IdealGens, J: IdealGens, order: BlockOrder,
                   budget: int | None = DEFAULT_BUDGET) -> IdealGens:
    """I : J as the intersection over g in J of (1/g)(I ∩ (g))."""
    ring = I.ring
    label = f"({I.label}):({J.label})"
    result: GroebnerBasis | None = None
    for g in J.gens:
        if not g:
            continue
        if not I.gens:
            piece = GroebnerBasis((), order, ring)
        else:
            inter = ideal_intersect(I, IdealGens((g,), "g", ring), order, budget)
            piece = buchberger([exact_divide(h, g, order) for h in inter.gens], order, budget) \
                if inter.gens else GroebnerBasis((), order, ring)
        if result is None:
            result = piece
        elif not piece.basis or not result.basis:
            result = GroebnerBasis((), order, ring)
        else:
            result = buchberger(ideal_intersect(result.to_ideal(), piece.to_ideal(), order, budget), order, budget)
        if result.is_unit():
            continue
    if result is None:
        return _unit(ring, label)
    return result.to_ideal(label)


def saturation(I: IdealGens, f: Polynomial, inner: BlockOrder,
               budget: int | None = DEFAULT_BUDGET) -> IdealGens:
    """I : f^∞ by adjoining u with u*f - 1 and eliminating u."""
    if not f:
        raise ValueError("cannot saturate by zero")
    ring = I.ring
    big = ring.extend(1)
    u = big.monomial_poly(big.unit_monomial(big.nvars - 1))
    gens = [g.embed(big) for g in I.gens] + [u * f.embed(big) - 1]
    G = _eliminate(gens, big, ring, inner, budget)
    return G.to_ideal(f"({I.label}):({f.to_text()})^inf")


def frobenius_bracket(I: IdealGens, p: int) -> IdealGens:
    """Generator-wise p-th powers; only meaningful in characteristic p."""
    fld = I.ring.field
    if fld.p != p:
        raise FieldMismatch(f"Frobenius bracket with p={p} needs the field GF({p}), not {fld}")
    return IdealGens(tuple(g ** p for g in I.gens), f"({I.label})^[{p}]", I.ring)


def bracket_basis(G: GroebnerBasis, p: int) -> GroebnerBasis:
    """Groebner basis of I^[p] from one of I.

    Over GF(p), g^p is g with every variable raised to the p-th power, and
    that substitution carries Groebner bases to Groebner bases (it preserves
    the order, lcms, and S-polynomial reductions).
    """
    if G.field.p != p:
        raise FieldMismatch(f"Frobenius bracket with p={p} needs the field GF({p}), not {G.field}")
    return GroebnerBasis(tuple(g.frobenius_substitute(p) for g in G.basis), G.order, G.ring)


def initial_ideal(I: IdealGens | GroebnerBasis, order: BlockOrder,
                  budget: int | None = DEFAULT_BUDGET) -> IdealGens:
    G = I if isinstance(I, GroebnerBasis) else buchberger(I, order, budget)
    ring = G.ring
    return IdealGens(tuple(ring.monomial_poly(m) for m in G.leads()), f"in({getattr(I, 'label', 'GB')})", ring)


def _monomials_of(M: IdealGens) -> list[Monomial]:
    out = []
    for g in M.gens:
        if not g.is_monomial():
            raise ValueError("monomial_dimension needs monomial generators")
        out.append(next(iter(g.terms)))
    return out


def min_hitting_set(supports: Sequence[int]) -> int:
    """Size of a smallest variable set meeting every support bitmask."""
    sets = sorted(set(supports), key=lambda s: bin(s).count("1"))
    if any(s == 0 for s in sets):
        raise ValueError("a constant generator cannot be hit")
    minimal = []
    for s in sets:
        if not any((t & s) == t for t in minimal):
            minimal.append(s)
    best = [sum(1 for _ in minimal)]

    def lower_bound(rest):
        used = 0
        count = 0
        for s in rest:
            if not s & used:
                used |= s
                count += 1
        return count

    def search(rest, depth):
        if not rest:
            best[0] = min(best[0], depth)
            return
        if depth + lower_bound(rest) >= best[0]:
            return
        pick = min(rest, key=lambda s: bin(s).count("1"))
        bits = pick
        while bits:
            low = bits & -bits
            bits ^= low
            search([s for s in rest if not s & low], depth + 1)

    search(minimal, 0)
    return best[0]


def monomial_height(M: IdealGens) -> int:
    mons = _monomials_of(M)
    if not mons:
        return 0
    supports = [sum(1 << v for v, e in enumerate(m) if e) for m in mons]
    return min_hitting_set(supports)


def monomial_dimension(M: IdealGens, ring: Ring | None = None) -> int:
    """Krull dimension of S/M for a monomial ideal M."""
    ring = ring or M.ring
    return ring.nvars - monomial_height(M)
