"""Executable Fedder/Glassbrenner certificates and lemma-level checks.

Every check returns a :class:`Verdict`.  Arithmetic is exact, so a verdict
passes only when each asserted condition holds on the nose.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb

from . import groebner as gb
from .ideals import (
    Context,
    IdealGens,
    ParameterError,
    alpha,
    alpha_gl_labelled,
    alpha_pairs,
    d_entry,
    determinant,
    expected_height,
    gl_context,
    ideal,
    symplectic_context,
    symplectic_gens,
    valid_rs,
    voc_gens,
    witness_f,
    witness_g,
    yz_entries,
)
from .orders import BlockOrder, degrevlex, lead_term
from .poly import FieldSpec, Polynomial, coprime, is_squarefree


@dataclass
class Verdict:
    check_name: str
    params: dict
    passed: bool
    witness: str | None = None
    detail: str = ""
    elapsed: float = 0.0
    skipped: bool = False

    def to_json(self, timings: bool = True) -> dict:
        return {
            "check_name": self.check_name,
            "params": self.params,
            "passed": self.passed,
            "skipped": self.skipped,
            "witness": self.witness,
            "detail": self.detail,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timings else 0,
        }

    @classmethod
    def from_json(cls, d: dict) -> Verdict:
        return cls(d["check_name"], d["params"], d["passed"], d.get("witness"), d.get("detail", ""),
                   d.get("elapsed_ms", 0) / 1000, d.get("skipped", False))


class _timed:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _mono(ring, m) -> str:
    return ring.monomial_text(m)


# -- certificate primitives ------------------------------------------------------

def not_in_m_bracket(f: Polynomial, p: int) -> bool:
    """f is outside m^[p] iff some term has every exponent at most p - 1."""
    return any(all(e < p for e in m) for m in f.terms)


def bracket_groebner(I: IdealGens, p: int, order: BlockOrder | None = None, method: str = "substitute",
                     budget: int | None = gb.DEFAULT_BUDGET) -> gb.GroebnerBasis:
    """Groebner basis of I^[p].

    ``substitute`` raises every variable of a basis of I to the p-th power;
    ``direct`` runs Buchberger on the generator-wise p-th powers.
    """
    order = order or degrevlex(I.ring)
    if method == "direct":
        return gb.buchberger(gb.frobenius_bracket(I, p), order, budget)
    if method != "substitute":
        raise ValueError(f"unknown bracket method {method!r}")
    return gb.bracket_basis(gb.buchberger(I, order, budget), p)


def colon_membership(w: Polynomial, I: IdealGens, p: int, *, bracket: gb.GroebnerBasis | None = None,
                     order: BlockOrder | None = None, budget: int | None = gb.DEFAULT_BUDGET) -> bool:
    """w lies in I^[p] : I, i.e. w*g is in I^[p] for every generator g."""
    if bracket is None:
        bracket = bracket_groebner(I, p, order, budget=budget)
    return all(bracket.contains(w * g, budget) for g in I.gens)


def full_colon(I: IdealGens, p: int, order: BlockOrder | None = None,
               budget: int | None = gb.DEFAULT_BUDGET) -> gb.GroebnerBasis:
    """The ideal I^[p] : I computed outright (oracle path)."""
    order = order or degrevlex(I.ring)
    Q = gb.ideal_quotient(gb.frobenius_bracket(I, p), I, order, budget)
    return gb.buchberger(Q, order, budget)


def _require_fp(I: IdealGens, p: int):
    if I.ring.field.p != p:
        raise gb.FieldMismatch(f"certificate needs the field GF({p}), got {I.ring.field}")


def fedder_fpure(I: IdealGens, w: Polynomial, p: int, order: BlockOrder | None = None,
                 budget: int | None = gb.DEFAULT_BUDGET, params: dict | None = None) -> Verdict:
    _require_fp(I, p)
    with _timed() as clock:
        in_colon = colon_membership(w, I, p, order=order, budget=budget)
        outside = not_in_m_bracket(w, p)
    return Verdict(
        "fedder", dict(params or {}, p=p, ideal=I.label), in_colon and outside,
        witness=_witness_text(w, order),
        detail=f"w in I^[p]:I: {in_colon}; w not in m^[p]: {outside}",
        elapsed=clock.elapsed)


def glassbrenner_fregular(I: IdealGens, s: Polynomial, f: Polynomial, p: int, order: BlockOrder | None = None,
                          budget: int | None = gb.DEFAULT_BUDGET, params: dict | None = None) -> Verdict:
    _require_fp(I, p)
    with _timed() as clock:
        w = f ** (p - 1)
        in_colon = colon_membership(w, I, p, order=order, budget=budget)
        outside = not_in_m_bracket(s * w, p)
    return Verdict(
        "glassbrenner", dict(params or {}, p=p, ideal=I.label, multiplier=s.to_text()), in_colon and outside,
        witness=_witness_text(s * w, order),
        detail=(f"f^(p-1) in I^[p]:I: {in_colon}; s*f^(p-1) not in m^[p]: {outside}; "
                "regularity of the localization at s is taken from the localization lemma, not computed"),
        elapsed=clock.elapsed)


def _witness_text(w: Polynomial, order: BlockOrder | None) -> str:
    if order is not None and w:
        m, _ = lead_term(order, w)
        return f"lead {w.ring.monomial_text(m)} ({len(w)} terms)"
    return f"{len(w)} terms"


# -- lemma checks ------------------------------------------------------------------

def check_lemma_3_3(t: int, n: int) -> Verdict:
    """Lead terms of d_{i,j} with j - i <= t under the symplectic block order."""
    with _timed() as clock:
        ctx = symplectic_context(t, n)
        order = ctx.order()
        bad = []
        count = 0
        for i, j in alpha_pairs(t, n):
            m, _ = lead_term(order, d_entry(ctx, i, j))
            want = ctx.ring.unit_monomial(ctx.ring.index("Y", j - i, i))
            want = tuple(a + b for a, b in zip(want, ctx.ring.unit_monomial(ctx.ring.index("Y", t + j - i, j))))
            count += 1
            if m != want:
                bad.append(f"d[{i},{j}]: got {_mono(ctx.ring, m)}, expected {_mono(ctx.ring, want)}")
    return Verdict("lemma33", {"t": t, "n": n}, not bad, detail="; ".join(bad) or f"{count} lead terms match",
                   elapsed=clock.elapsed)


def check_lemma_5_3(m: int, t: int, n: int) -> Verdict:
    """alpha has squarefree pairwise coprime leads; c-leads are y[i,i+j-1] z[i+j-1,j]."""
    with _timed() as clock:
        ctx = gl_context(m, t, n)
        order = ctx.order()
        items = alpha_gl_labelled(ctx)
        leads = [(label, lead_term(order, f)[0]) for label, f in items]
        bad = []
        for label, lm in leads:
            if not is_squarefree(lm):
                bad.append(f"{label} lead not squarefree")
        for (la, a), (lb, b) in combinations(leads, 2):
            if not coprime(a, b):
                bad.append(f"{la} and {lb} share a variable")
        ring = ctx.ring
        for i in range(1, t + 1):
            for j in range(1, t + 2 - i):
                k = i + j - 1
                want = tuple(x + y for x, y in zip(ring.unit_monomial(ring.index("Y", i, k)),
                                                   ring.unit_monomial(ring.index("Z", k, j))))
                got = dict(leads)[f"c[{i},{j}]"]
                if got != want:
                    bad.append(f"c[{i},{j}] lead {_mono(ring, got)}")
    return Verdict("lemma53", {"m": m, "t": t, "n": n}, not bad,
                   witness=", ".join(_mono(ctx.ring, lm) for _, lm in leads),
                   detail="; ".join(bad) or f"{len(leads)} leads squarefree and pairwise coprime",
                   elapsed=clock.elapsed)


def check_alpha_groebner_and_height(ctx: Context, budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    """Buchberger returns alpha unchanged and its initial ideal has the expected height."""
    with _timed() as clock:
        order = ctx.order()
        A = alpha(ctx)
        G = gb.buchberger(A, order, budget)
        leads = [lead_term(order, g)[0] for g in A.gens]
        monic = [g.monic(order) for g in A.gens]
        # without interreduction Buchberger must hand alpha back untouched
        unchanged = list(gb.buchberger(A, order, budget, reduce=False).basis) == monic
        literal = set(G.basis) == set(monic)
        sqf = all(is_squarefree(m) for m in leads)
        cop = all(coprime(a, b) for a, b in combinations(leads, 2))
        height = gb.monomial_height(gb.initial_ideal(G, order))
        if ctx.shape == "symplectic":
            want = expected_height(ctx)
            height_ok = height == len(A) == want
            hdetail = f"height(in(a)) = {height}, |alpha| = {len(A)}, expected {want}"
        else:
            height_ok = height == len(A)
            hdetail = f"height(in(a)) = {height}, |alpha| = {len(A)}"
    passed = unchanged and sqf and cop and height_ok
    return Verdict("alpha", ctx.describe(), passed,
                   detail=f"alpha returned unchanged: {unchanged}; reduced basis is alpha itself: {literal}; squarefree: {sqf}; coprime: {cop}; {hdetail}",
                   elapsed=clock.elapsed)


def check_squarefree_initial(I: IdealGens, order: BlockOrder, budget: int | None = gb.DEFAULT_BUDGET,
                             params: dict | None = None) -> Verdict:
    with _timed() as clock:
        G = gb.buchberger(I, order, budget)
        leads = G.leads()
        bad = [m for m in leads if not is_squarefree(m)]
    return Verdict("squarefree", dict(params or {}, ideal=I.label, field=str(I.ring.field)), not bad,
                   witness=", ".join(sorted(_mono(I.ring, m) for m in leads)),
                   detail=f"{len(leads)} lead terms, {len(bad)} not squarefree", elapsed=clock.elapsed)


def nullcone_intersection(ctx: Context, order: BlockOrder | None = None,
                          budget: int | None = gb.DEFAULT_BUDGET) -> IdealGens:
    """The iterated intersection of the p_{r,s} with r + s = t."""
    m, t, n = ctx.params
    order = order or _order_or_degrevlex(ctx)
    cur = None
    for r, s in valid_rs(m, t, n, exact=True):
        P = voc_gens(ctx, r, s)
        cur = P if cur is None else gb.ideal_intersect(cur, P, order, budget)
    return cur


def _order_or_degrevlex(ctx: Context) -> BlockOrder:
    try:
        return ctx.order()
    except ValueError:
        return degrevlex(ctx.ring)


def check_nullcone_decomposition(m: int, t: int, n: int, field: FieldSpec | None = None,
                                 budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    with _timed() as clock:
        ctx = gl_context(m, t, n, field)
        order = _order_or_degrevlex(ctx)
        inter = gb.buchberger(nullcone_intersection(ctx, order, budget), order, budget)
        direct = gb.buchberger(yz_entries(ctx), order, budget)
        same = inter.same_ideal(direct)
    return Verdict("decomposition", ctx.describe(), same,
                   detail=f"reduced GB sizes: intersection {len(inter)}, (YZ) {len(direct)}",
                   elapsed=clock.elapsed)


# -- localization ---------------------------------------------------------------------

def _det_of(rows: list[list[Polynomial]], ring) -> Polynomial:
    if not rows:
        return ring.one()
    out = ring.zero()
    for k in range(len(rows)):
        sub = [row[:k] + row[k + 1:] for row in rows[1:]]
        term = rows[0][k] * _det_of(sub, ring)
        out = out + term if k % 2 == 0 else out - term
    return out


def _minors_of(mat: list[list[Polynomial]], k: int, ring) -> list[Polynomial]:
    if not mat or k > min(len(mat), len(mat[0])):
        return []
    return [_det_of([[mat[i][j] for j in cs] for i in rs], ring)
            for rs in combinations(range(len(mat)), k) for cs in combinations(range(len(mat[0])), k)]


def symplectic_localization_gens(ctx: Context) -> tuple[IdealGens, IdealGens, Polynomial]:
    """Both sides of the y_{1,1}-localization of P(Y), denominators cleared."""
    t, n = ctx.params
    if t < 2 or n < 2:
        raise ValueError("the localization needs t >= 2 and n >= 2")
    y = ctx.y
    y11 = y(1, 1)

    def zc(i, j):  # y11 * z_{i,j}
        return y11 * y(i, j) - y(i, 1) * y(1, j)

    top = list(range(2, t + 1))
    bottom = list(range(t + 2, 2 * t + 1))
    gens = []
    for a, b in combinations(range(2, n + 1), 2):
        d = ctx.ring.zero()
        for s in range(t - 1):
            d = d + zc(top[s], a) * zc(bottom[s], b) - zc(top[s], b) * zc(bottom[s], a)
        gens.append(d)
    for j in range(2, n + 1):
        f = y11 * zc(t + 1, j)
        for s in range(2, t + 1):
            f = f + y(s, 1) * zc(t + s, j) - y(t + s, 1) * zc(s, j)
        gens.append(f)
    return symplectic_gens(ctx), ideal(gens, "P(Z)+(f)", ctx.ring), y11


def voc_localization_gens(ctx: Context, r: int, s: int) -> tuple[IdealGens, IdealGens, Polynomial]:
    """Both sides of the y_{1,1}-localization of p_{r,s}, denominators cleared."""
    m, t, n = ctx.params
    if min(m, t, n) < 2 or r < 1:
        raise ValueError("the localization needs m, t, n >= 2 and r >= 1")
    ring = ctx.ring
    y, z = ctx.y, ctx.z
    y11 = y(1, 1)
    yp = [[y11 * y(i, j) - y(i, 1) * y(1, j) for j in range(2, t + 1)] for i in range(2, m + 1)]
    zp = [[z(k, j) for j in range(1, n + 1)] for k in range(2, t + 1)]
    gens = _minors_of(yp, r, ring) + _minors_of(zp, s + 1, ring)
    for i in range(m - 1):
        for j in range(n):
            e = ring.zero()
            for k in range(t - 1):
                e = e + yp[i][k] * zp[k][j]
            gens.append(e)
    for j in range(1, n + 1):
        f = ring.zero()
        for k in range(1, t + 1):
            f = f + y(1, k) * z(k, j)
        gens.append(f)
    return voc_gens(ctx, r, s), ideal(gens, f"p_{{{r - 1},{s}}}(Y',Z')+(f)", ring), y11


def check_localization(ctx: Context, r: int | None = None, s: int | None = None,
                       budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    with _timed() as clock:
        order = _order_or_degrevlex(ctx)
        if ctx.shape == "symplectic":
            lhs, rhs, x = symplectic_localization_gens(ctx)
            params = ctx.describe()
        else:
            lhs, rhs, x = voc_localization_gens(ctx, r, s)
            params = dict(ctx.describe(), r=r, s=s)
        A = gb.buchberger(gb.saturation(lhs, x, order, budget), order, budget)
        B = gb.buchberger(gb.saturation(rhs, x, order, budget), order, budget)
        same = A.same_ideal(B)
    return Verdict("localization", params, same,
                   detail=f"saturated GB sizes {len(A)} and {len(B)}", elapsed=clock.elapsed)


# -- Frobenius certificates -----------------------------------------------------------

def check_symplectic_witness(t: int, n: int, p: int = 2, oracle: bool = False,
                             budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    """f^(p-1) in P^[p]:P and y_{1,n} f^(p-1) outside m^[p], f the product of alpha."""
    with _timed() as clock:
        ctx = symplectic_context(t, n, FieldSpec(p))
        order = ctx.order()
        P = symplectic_gens(ctx)
        f = witness_f(ctx)
        v = glassbrenner_fregular(P, ctx.y(1, n), f, p, order, budget)
        detail = v.detail
        passed = v.passed
        if oracle:
            Q = full_colon(P, p, order, budget)
            agrees = Q.contains(f ** (p - 1), budget)
            passed = passed and agrees
            detail += f"; full colon contains f^(p-1): {agrees}"
    return Verdict("symplectic-witness", {"t": t, "n": n, "p": p, "oracle": oracle}, passed,
                   witness=v.witness, detail=detail, elapsed=clock.elapsed)


def check_colon_containment(t: int, n: int, p: int = 2, budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    """Every generator of a^[p]:a lies in P^[p]:P (both computed in full)."""
    with _timed() as clock:
        ctx = symplectic_context(t, n, FieldSpec(p))
        order = ctx.order()
        A = alpha(ctx)
        P = symplectic_gens(ctx)
        QA = full_colon(A, p, order, budget)
        QP = full_colon(P, p, order, budget)
        missing = [g for g in QA.basis if not QP.contains(g, budget)]
    return Verdict("colon-containment", {"t": t, "n": n, "p": p}, not missing,
                   detail=f"{len(QA)} generators of a^[p]:a, {len(missing)} outside P^[p]:P",
                   elapsed=clock.elapsed)


def check_voc_witness(m: int, t: int, n: int, r: int, s: int, p: int = 2,
                      budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    """y_{m,1} f^(p-1) certificate for the variety of complexes p_{r,s}.

    Only for r, s >= 1: with r = 0 or s = 0 the quotient is a determinantal
    ring and no witness is needed.
    """
    if r < 1 or s < 1:
        raise ParameterError(f"the y[m,1] witness covers r, s >= 1; got (r, s) = ({r}, {s})")
    ctx = gl_context(m, t, n, FieldSpec(p))
    order = ctx.order()
    v = glassbrenner_fregular(voc_gens(ctx, r, s), ctx.y(m, 1), witness_f(ctx), p, order, budget,
                              params=dict(ctx.describe(), r=r, s=s))
    v.check_name = "voc-witness"
    return v


def check_compatible_splitting(m: int, t: int, n: int, p: int = 2,
                               budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    """g^(p-1) lies in p_{r,s}^[p] : p_{r,s} for every r + s = t and outside m^[p]."""
    with _timed() as clock:
        ctx = gl_context(m, t, n, FieldSpec(p))
        order = ctx.order()
        w = witness_g(ctx) ** (p - 1)
        results = {}
        for r, s in valid_rs(m, t, n, exact=True):
            results[(r, s)] = colon_membership(w, voc_gens(ctx, r, s), p, order=order, budget=budget)
        outside = not_in_m_bracket(w, p)
    parts = ", ".join(f"p_{{{r},{s}}}: {ok}" for (r, s), ok in results.items())
    return Verdict("compatible-splitting", {"m": m, "t": t, "n": n, "p": p},
                   all(results.values()) and outside, witness=_witness_text(w, order),
                   detail=f"colon membership {parts}; not in m^[p]: {outside}", elapsed=clock.elapsed)


def check_pigeonhole(I: IdealGens, h: int, p: int, sample: int = 500, seed: int = 0,
                     order: BlockOrder | None = None, budget: int | None = gb.DEFAULT_BUDGET,
                     params: dict | None = None) -> Verdict:
    """Products of h(p-1) generators times any generator land in I^[p].

    This is the ordinary-power surrogate I^{h(p-1)} of the symbolic power.
    """
    _require_fp(I, p)
    with _timed() as clock:
        gens = list(I.gens)
        k = h * (p - 1)
        total = comb(len(gens) + k - 1, k)
        if total <= sample:
            combos = list(combinations_with_replacement(range(len(gens)), k))
        else:
            rng = random.Random(seed)
            combos = [tuple(sorted(rng.randrange(len(gens)) for _ in range(k))) for _ in range(sample)]
        B = bracket_groebner(I, p, order, budget=budget)
        failures = 0
        for idx in combos:
            prod = I.ring.one()
            for a in idx:
                prod = prod * gens[a]
            if not all(B.contains(prod * g, budget) for g in gens):
                failures += 1
    how = "all" if total <= sample else f"{len(combos)} sampled of"
    return Verdict("pigeonhole", dict(params or {}, ideal=I.label, h=h, p=p), failures == 0,
                   detail=f"{how} {total} products of {k} generators checked, {failures} failures; "
                          "surrogate: ordinary power I^(h(p-1))",
                   elapsed=clock.elapsed)


def check_voc_height(m: int, t: int, n: int, r: int, s: int, field: FieldSpec | None = None,
                     budget: int | None = gb.DEFAULT_BUDGET) -> Verdict:
    with _timed() as clock:
        ctx = gl_context(m, t, n, field)
        order = _order_or_degrevlex(ctx)
        G = gb.buchberger(voc_gens(ctx, r, s), order, budget)
        dim = gb.monomial_dimension(gb.initial_ideal(G, order), ctx.ring)
        want = expected_height(ctx, "voc", r, s)
    return Verdict("voc-height", dict(ctx.describe(), r=r, s=s), ctx.ring.nvars - dim == want,
                   detail=f"dim S/in(p) = {dim}, height {ctx.ring.nvars - dim}, formula {want}",
                   elapsed=clock.elapsed)


# -- printed worked examples ----------------------------------------------------------

def check_symplectic_example() -> Verdict:
    from .reference import SYMPLECTIC_EXAMPLE as ref

    with _timed() as clock:
        ctx = symplectic_context(ref["t"], ref["n"])
        order = ctx.order()
        bad = []
        if order.block_matrix("Y") != ref["block_matrix"]:
            bad.append(f"block matrix {order.block_matrix('Y')}")
        for (i, j), want in ref["leads"].items():
            got = ctx.ring.monomial_text(lead_term(order, d_entry(ctx, i, j))[0])
            if got != want:
                bad.append(f"d[{i},{j}] lead {got}, printed {want}")
    return Verdict("symplectic-example", {"t": ref["t"], "n": ref["n"]}, not bad,
                   detail="; ".join(bad) or "block matrix and six lead terms match", elapsed=clock.elapsed)


def check_gl_example() -> Verdict:
    from .reference import GL_EXAMPLE as ref

    with _timed() as clock:
        ctx = gl_context(ref["m"], ref["t"], ref["n"])
        order = ctx.order()
        bad = []
        for tag in ("Y", "Z"):
            if order.block_matrix(tag) != ref[f"block_matrix_{tag}"]:
                bad.append(f"block matrix {tag} {order.block_matrix(tag)}")
        got = {label: ctx.ring.monomial_text(lead_term(order, f)[0]) for label, f in alpha_gl_labelled(ctx)}
        if set(got) != set(ref["leads"]):
            bad.append(f"alpha labels differ: {sorted(set(got) ^ set(ref['leads']))}")
        for label, want in ref["leads"].items():
            if got.get(label) != want:
                bad.append(f"{label} lead {got.get(label)}, printed {want}")
    return Verdict("gl-example", {"m": ref["m"], "t": ref["t"], "n": ref["n"]}, not bad,
                   detail="; ".join(bad) or "both block matrices and twelve lead terms match",
                   elapsed=clock.elapsed)
