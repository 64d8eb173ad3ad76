"""Randomized property suites; each runs at least ``CASES`` examples.

Called directly by the unit tests and, with a timer, by the acceptance run.
"""

from __future__ import annotations

from collections import Counter

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nullcone_lab.orders import compare, gl_blocks, lead_term, symplectic_blocks
from nullcone_lab.poly import FieldSpec, Polynomial, monomial_mul
from nullcone_lab.ideals import gl_context, symplectic_context

import oracles

CASES = 1000
CALLS: Counter = Counter()

SETTINGS = settings(max_examples=CASES, deadline=None, derandomize=True, database=None,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])

_SHAPES = [("sp", 1, 3), ("sp", 2, 3), ("sp", 2, 4), ("gl", 2, 2, 2), ("gl", 3, 2, 3), ("gl", 5, 3, 5)]
_CONTEXTS = {}


def context(shape, field=None):
    key = (shape, field)
    if key not in _CONTEXTS:
        fs = FieldSpec(field) if field else FieldSpec()
        ctx = symplectic_context(*shape[1:], fs) if shape[0] == "sp" else gl_context(*shape[1:], fs)
        _CONTEXTS[key] = (ctx, ctx.order())
    return _CONTEXTS[key]


@st.composite
def shaped_monomials(draw, count):
    shape = draw(st.sampled_from(_SHAPES))
    ctx, order = context(shape)
    n = ctx.ring.nvars
    mons = [tuple(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))) for _ in range(count)]
    return order, mons


@st.composite
def polynomials(draw, ring, max_terms=4, max_exp=2, coeffs=st.integers(-6, 6)):
    n = ring.nvars
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        m = tuple(draw(st.lists(st.integers(0, max_exp), min_size=n, max_size=n)))
        terms[m] = ring.field(draw(coeffs))
    return Polynomial(ring, terms)


@st.composite
def poly_triples(draw):
    p = draw(st.sampled_from([None, 2, 3, 7]))
    ctx, _ = context(("sp", 1, 2), p)
    return tuple(draw(polynomials(ctx.ring)) for _ in range(3))


@SETTINGS
@given(shaped_monomials(3))
def order_axioms(data):
    CALLS["order"] += 1
    order, (a, b, c) = data
    ranking = oracles.ranking_from_blocks(order.block_of)
    ab = compare(order, a, b)
    # agrees with the textbook comparison over the same ranking
    assert ab == oracles.revlex_cmp(a, b, ranking)
    assert compare(order, b, a) == -ab
    assert (ab == 0) == (a == b)
    if ab < 0 and compare(order, b, c) < 0:
        assert compare(order, a, c) < 0
    if ab != 0:
        assert compare(order, monomial_mul(a, c), monomial_mul(b, c)) == ab
    one = (0,) * len(a)
    assert compare(order, one, a) <= 0


@SETTINGS
@given(poly_triples())
def ring_axioms(triple):
    CALLS["ring"] += 1
    f, g, h = triple
    zero, one = f.ring.zero(), f.ring.one()
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + zero == f and f * one == f and f * zero == zero
    assert f - f == zero
    assert (f - g) + g == f


@st.composite
def lead_pairs(draw):
    shape = draw(st.sampled_from(_SHAPES))
    p = draw(st.sampled_from([None, 2, 3]))
    ctx, order = context(shape, p)
    f = draw(polynomials(ctx.ring, max_terms=4, max_exp=1))
    g = draw(polynomials(ctx.ring, max_terms=4, max_exp=1))
    return order, f, g


@SETTINGS
@given(lead_pairs())
def lead_multiplicative(data):
    CALLS["lead"] += 1
    order, f, g = data
    if not f or not g:
        return
    lf, cf = lead_term(order, f)
    lg, cg = lead_term(order, g)
    lfg, cfg = lead_term(order, f * g)
    assert lfg == monomial_mul(lf, lg)
    assert cfg == f.ring.field.norm(cf * cg)
    assert lfg == oracles.lead_monomial(f * g, oracles.ranking_from_blocks(order.block_of))


@st.composite
def frobenius_pairs(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    ctx, _ = context(("sp", 1, 2), p)
    f = draw(polynomials(ctx.ring, max_terms=3, max_exp=2))
    g = draw(polynomials(ctx.ring, max_terms=3, max_exp=2))
    return p, f, g


@SETTINGS
@given(frobenius_pairs())
def frobenius_additive(data):
    CALLS["frobenius"] += 1
    p, f, g = data
    assert (f + g) ** p == f ** p + g ** p
    assert (f * g) ** p == (f ** p) * (g ** p)
    assert f ** p == f.frobenius_substitute(p)


SUITES = {
    "monomial-order axioms": order_axioms,
    "ring axioms": ring_axioms,
    "lead-term multiplicativity": lead_multiplicative,
    "Frobenius additivity": frobenius_additive,
}
KEYS = {"monomial-order axioms": "order", "ring axioms": "ring",
        "lead-term multiplicativity": "lead", "Frobenius additivity": "frobenius"}
