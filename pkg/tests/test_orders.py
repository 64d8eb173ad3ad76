from __future__ import annotations

from math import comb

import pytest

import oracles
from nullcone_lab import groebner as gb
from nullcone_lab.ideals import alpha_gl_labelled, c_entry, d_entry, gl_context, symplectic_context
from nullcone_lab.orders import (
    UnsupportedShape,
    ZeroPolynomialError,
    compare,
    degrevlex,
    elimination_wrap,
    gl_block_formula,
    gl_block_numbers,
    gl_blocks,
    lead_term,
    symplectic_block_number,
    symplectic_blocks,
)
from nullcone_lab.poly import ContextError, Ring


def test_symplectic_block_matrix_example():
    order = symplectic_blocks(2, 4)
    assert order.block_matrix("Y") == [[1, 3, 1, 0], [2, 2, 0, 0], [0, 1, 3, 1], [0, 0, 2, 2]]
    assert order.block_of[0] == 1  # y[1,1]
    assert order.block_of[1] == 3  # y[1,2]


def test_symplectic_small_case_by_hand():
    # t=1, n=2: y11 case (a), y12 case (c); lower row via w
    assert symplectic_block_number(1, 1, 2) == 1
    assert symplectic_block_number(1, 2, 2) == 0
    order = symplectic_blocks(1, 2)
    assert order.block_matrix("Y") == [[1, 0], [0, 1]]


def test_symplectic_blocks_range():
    for t in range(1, 5):
        for n in range(1, 7):
            blocks = symplectic_blocks(t, n).block_of
            assert all(0 <= b <= max(n - 1, 0) for b in blocks)


def test_gl_example_matrices():
    order = gl_blocks(5, 3, 5)
    assert order.block_matrix("Y") == [[12, 11, 10], [9, 14, 13], [6, 8, 15], [3, 5, 7], [1, 2, 4]]
    assert order.block_matrix("Z") == [[12, 9, 6, 3, 1], [14, 11, 8, 5, 2], [15, 13, 10, 7, 4]]


def test_gl_z_closed_form_z12():
    yb, zb = gl_block_numbers(5, 3, 5)
    assert zb[(1, 2)] == 9 == comb(3, 2) + 3 * (1 - 2 + 5 - 3 + 1) - 1 + 1
    assert gl_block_formula("Z", 1, 2, 5, 3, 5) == 9


def test_gl_closed_forms_against_scan():
    mismatched_middle = []
    for m in range(1, 7):
        for n in range(1, 7):
            for t in range(1, min(m, n) + 1):
                yb, zb = gl_block_numbers(m, t, n)
                for (i, j), b in zb.items():
                    assert gl_block_formula("Z", i, j, m, t, n) == b, (m, t, n, i, j)
                for (i, j), b in yb.items():
                    f = gl_block_formula("Y", i, j, m, t, n)
                    if i >= m - t + 1 and j <= i - m + t or i <= j:
                        assert f == b, (m, t, n, i, j)
                    elif f != b:
                        mismatched_middle.append((m, t, n, i, j))
    # the middle Y case is the one that disagrees; e.g. y21 at (5,3,5)
    assert (5, 3, 5, 2, 1) in mismatched_middle
    assert gl_block_formula("Y", 2, 1, 5, 3, 5) == 15
    assert gl_block_numbers(5, 3, 5)[0][(2, 1)] == 9


def test_gl_y_upper_triangle_follows_z():
    for m, t, n in [(3, 2, 3), (5, 3, 5), (4, 4, 6)]:
        yb, zb = gl_block_numbers(m, t, n)
        for i in range(1, t + 1):
            for j in range(i, t + 1):
                assert yb[(i, j)] == zb[(j, j - i + 1)]
        assert sorted(zb.values()) == list(range(1, t * n + 1))


def test_gl_unsupported_shape():
    with pytest.raises(UnsupportedShape):
        gl_blocks(2, 3, 4)
    with pytest.raises(UnsupportedShape):
        gl_blocks(4, 3, 2)


def test_tie_rank_bijective_and_refines_blocks():
    for order in (symplectic_blocks(2, 4), gl_blocks(5, 3, 5), gl_blocks(3, 2, 4)):
        rank = order.tie_rank
        assert sorted(rank) == list(range(len(rank)))
        for a in range(len(rank)):
            for b in range(len(rank)):
                if order.block_of[a] > order.block_of[b]:
                    assert rank[a] > rank[b]
                if order.block_of[a] == order.block_of[b] and a < b:
                    assert rank[a] < rank[b]  # Y before Z, then row, then column


def test_compare_examples():
    ctx = symplectic_context(2, 4)
    order = ctx.order()
    one = ctx.ring.one_monomial()
    for k in range(ctx.ring.nvars):
        assert compare(order, one, ctx.ring.unit_monomial(k)) == -1
    d12 = d_entry(ctx, 1, 2)
    top = max(d12.terms, key=order.key)
    assert all(compare(order, top, m) >= 0 for m in d12.terms)
    assert ctx.ring.monomial_text(top) == "y[1,1]*y[3,2]"
    g = gl_context(5, 3, 5)
    assert g.ring.monomial_text(lead_term(g.order(), c_entry(g, 1, 1))[0]) == "y[1,1]*z[1,1]"


def test_compare_rejects_foreign_monomials():
    order = symplectic_blocks(1, 2)
    with pytest.raises(ContextError):
        compare(order, (1, 0), (0, 1))
    other = symplectic_context(1, 3)
    with pytest.raises(ContextError):
        lead_term(order, other.y(1, 1))


def test_lead_term_examples():
    ctx = symplectic_context(2, 4)
    order = ctx.order()
    m = ctx.ring.unit_monomial(3)
    assert lead_term(order, ctx.ring.monomial_poly(m, 5)) == (m, 5)
    assert ctx.ring.monomial_text(lead_term(order, d_entry(ctx, 1, 4))[0]) == "y[2,1]*y[4,4]"
    g = gl_context(5, 3, 5)
    minor = dict(alpha_gl_labelled(g))["det Z[1..3][2..4]"]
    assert g.ring.monomial_text(lead_term(g.order(), minor)[0]) == "z[1,2]*z[2,3]*z[3,4]"
    with pytest.raises(ZeroPolynomialError):
        lead_term(order, ctx.ring.zero())


def test_lemma53_c_leads_and_minor_diagonals_grid():
    for m in range(1, 7):
        for n in range(1, 7):
            for t in range(1, min(m, n) + 1):
                ctx = gl_context(m, t, n)
                order = ctx.order()
                ring = ctx.ring
                for i in range(1, t + 1):
                    for j in range(1, t + 2 - i):
                        k = i + j - 1
                        lm = lead_term(order, c_entry(ctx, i, j))[0]
                        assert ring.monomial_text(lm) == f"y[{i},{k}]*z[{k},{j}]"
                for label, f in alpha_gl_labelled(ctx):
                    if not label.startswith("det"):
                        continue
                    tag = label[4]
                    rows, cols = label[6:-1].split("][")
                    r0, r1 = map(int, rows.split(".."))
                    c0, c1 = map(int, cols.split(".."))
                    diag = "*".join(f"{tag.lower()}[{r0 + k},{c0 + k}]" for k in range(r1 - r0 + 1))
                    assert ring.monomial_text(lead_term(order, f)[0]) == diag, (m, t, n, label)


def test_elimination_wrap():
    ctx = symplectic_context(1, 2)
    big = ctx.ring.extend(1)
    order = elimination_wrap(big, [big.nvars - 1], ctx.order())
    u = big.unit_monomial(big.nvars - 1)
    for k in range(1, 6):
        xk = tuple(k if v == 0 else 0 for v in range(big.nvars))
        assert compare(order, u, xk) == 1
    # restricted to inner variables the comparisons are the inner ones
    inner = ctx.order()
    mons = [(1, 1, 0, 0), (0, 0, 1, 1), (2, 0, 0, 0), (0, 1, 1, 0)]
    for a in mons:
        for b in mons:
            assert compare(order, a + (0,), b + (0,)) == compare(inner, a, b)
    y11 = ctx.y(1, 1).embed(big)
    uu = big.monomial_poly(u)
    G = gb.buchberger([uu * y11 - 1, y11], order)
    assert G.is_unit()
    with pytest.raises(ContextError):
        elimination_wrap(big, [0], ctx.order())


def test_descriptor_and_degrevlex():
    d = gl_blocks(2, 2, 2).descriptor()
    assert set(d) == {"kind", "params", "block_matrix_Y", "block_matrix_Z"}
    assert d["kind"] == "GLBlocks" and d["params"] == [2, 2, 2]
    s = symplectic_blocks(1, 2).descriptor()
    assert s["block_matrix_Z"] is None
    ring = Ring.from_matrices({"Y": (1, 3)})
    order = degrevlex(ring)
    # x^2 vs x*z: the smallest variable z has the larger exponent in x*z
    assert compare(order, (2, 0, 0), (1, 0, 1)) == 1
    ranking = oracles.ranking_from_blocks(order.block_of)
    assert compare(order, (0, 1, 1), (1, 0, 1)) == oracles.revlex_cmp((0, 1, 1), (1, 0, 1), list(reversed(ranking)))
