"""Block monomial orders for the symplectic and general linear nullcones.

Every order here is graded reverse-lexicographic over a ranking of the
variables, possibly stacked as a product (elimination) order.  An order
maps a monomial to a sort key; larger key means larger monomial.  Keys are
additive under monomial multiplication, which the Groebner engine relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .poly import ContextError, Monomial, Polynomial, Ring, Variable


class UnsupportedShape(ValueError):
    """Matrix shape outside the range the construction is defined for."""


class ZeroPolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class BlockOrder:
    """A product of degrevlex segments.

    ``segments`` lists variable ids, each segment in ascending rank; the
    first segment dominates.  ``block_of`` records the block number of each
    variable (auxiliary variables get ``-1``).
    """

    variables: tuple[Variable, ...]
    segments: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]
    kind: str
    params: tuple = ()
    inner: BlockOrder | None = None

    @property
    def tie_rank(self) -> tuple[int, ...]:
        """Global rank of each variable (0 = smallest)."""
        rank = [0] * len(self.variables)
        r = 0
        for seg in reversed(self.segments):
            for v in seg:
                rank[v] = r
                r += 1
        return tuple(rank)

    def key(self, m: Monomial) -> tuple[int, ...]:
        out: list[int] = []
        for seg in self.segments:
            out.append(sum(m[v] for v in seg))
            out.extend(-m[v] for v in seg)
        return tuple(out)

    def check_ring(self, ring: Ring):
        if ring.variables != self.variables:
            raise ContextError("monomial order belongs to a different set of variables")

    def descriptor(self) -> dict:
        """JSON-ready description of the order."""
        out = {"kind": self.kind, "params": list(self.params)}
        for tag in ("Y", "Z"):
            cells = [v for v in self.variables if v.tag == tag]
            if not cells:
                out[f"block_matrix_{tag}"] = None
                continue
            rows = max(v.row for v in cells)
            cols = max(v.col for v in cells)
            mat = [[0] * cols for _ in range(rows)]
            for v in cells:
                mat[v.row - 1][v.col - 1] = self.block_of[v.id]
            out[f"block_matrix_{tag}"] = mat
        return out

    def block_matrix(self, tag: str = "Y") -> list[list[int]]:
        return self.descriptor()[f"block_matrix_{tag}"]


def _ranked(variables: Sequence[Variable], block_of: Sequence[int]) -> tuple[int, ...]:
    # ties inside a block: Y before Z, then row, then column -- i.e. by id
    return tuple(sorted(range(len(variables)), key=lambda k: (block_of[k], k)))


def from_blocks(variables: Sequence[Variable], block_of: Sequence[int], kind: str, params=()) -> BlockOrder:
    variables = tuple(variables)
    return BlockOrder(variables, (_ranked(variables, block_of),), tuple(block_of), kind, tuple(params))


def degrevlex(ring: Ring) -> BlockOrder:
    """Plain degrevlex with the variable of largest id the smallest."""
    n = ring.nvars
    return BlockOrder(ring.variables, (tuple(range(n - 1, -1, -1)),), (0,) * n, "PlainDegRevLex")


def symplectic_block_number(i: int, j: int, n: int) -> int:
    """Block of y_{i,j} (and of w_{i,j}) for a 2t x n matrix."""
    if 2 * j < n - i + 1:
        return 2 * j + i - 2
    if j < n - i + 1:
        return 2 * n - 2 * j - i
    return 0


def symplectic_ring(t: int, n: int, field=None) -> Ring:
    from .poly import FieldSpec

    return Ring.from_matrices({"Y": (2 * t, n)}, field or FieldSpec())


def gl_ring(m: int, t: int, n: int, field=None) -> Ring:
    from .poly import FieldSpec

    return Ring.from_matrices({"Y": (m, t), "Z": (t, n)}, field or FieldSpec())


def symplectic_blocks(t: int, n: int, ring: Ring | None = None) -> BlockOrder:
    if t < 1 or n < 1:
        raise UnsupportedShape("need t >= 1 and n >= 1")
    ring = ring or symplectic_ring(t, n)
    blocks = []
    for v in ring.variables:
        if v.row <= t:
            blocks.append(symplectic_block_number(v.row, v.col, n))
        else:
            # lower half relabelled: y_{i+t, c} = w_{i, n-c+1}
            blocks.append(symplectic_block_number(v.row - t, n - v.col + 1, n))
    return from_blocks(ring.variables, blocks, "SymplecticBlocks", (t, n))


def gl_block_numbers(m: int, t: int, n: int) -> tuple[dict, dict]:
    """Diagonal scan assigning blocks to Y (m x t) and Z (t x n).

    Returns two dicts keyed by (row, col).
    """
    if t < 1 or t > min(m, n):
        raise UnsupportedShape(f"block order needs 1 <= t <= min(m, n); got m={m}, t={t}, n={n}")
    zb: dict[tuple[int, int], int] = {}
    label = 1
    for e in range(n - 1, -t, -1):  # e = col - row
        for i in range(t, 0, -1):
            j = i + e
            if 1 <= j <= n:
                zb[(i, j)] = label
                label += 1
    yb: dict[tuple[int, int], int] = {}
    label = 1
    for d in range(m - 1, 0, -1):  # d = row - col, strictly below the diagonal
        for j in range(t, 0, -1):
            i = j + d
            if 1 <= i <= m:
                yb[(i, j)] = label
                label += 1
    for i in range(1, t + 1):
        for j in range(i, t + 1):
            yb[(i, j)] = zb[(j, j - i + 1)]
    return yb, zb


def gl_block_formula(tag: str, i: int, j: int, m: int, t: int, n: int) -> int | None:
    """The printed closed-form block numbers; ``None`` when no case applies.

    Only a cross-check: the middle Y case does not agree with the scan.
    When m = t the first and last Y cases overlap on the diagonal; the last
    one (the link to Z) wins there.
    """
    if tag == "Y":
        if 1 <= i <= j <= t:
            return t * n + t - j - comb(t - i + 2, 2) + 1
        if i >= m - t + 1 and j <= i - m + t:
            return comb(m - i + j + 1, 2) - j + 1
        if i - m + t + 1 <= j <= i - 1:
            return comb(t + 1, 2) + (t - j) + t * (m - t + i - j - 1) + 1
        return None
    d = i - j
    if 1 - n <= d <= t - n - 1:
        return i - 2 * j + 2 * n + comb(d + n - 1, 2)
    if t - n <= d <= -1:
        return comb(t, 2) + t * (d + n - t + 1) - i + 1
    if 0 <= d <= t - 1:
        return t * n - comb(t - i + j + 1, 2) + t - i + 1
    return None


def gl_blocks(m: int, t: int, n: int, ring: Ring | None = None) -> BlockOrder:
    yb, zb = gl_block_numbers(m, t, n)
    ring = ring or gl_ring(m, t, n)
    blocks = [(yb if v.tag == "Y" else zb)[(v.row, v.col)] for v in ring.variables]
    return from_blocks(ring.variables, blocks, "GLBlocks", (m, t, n))


def elimination_wrap(ring: Ring, outer: Sequence[int], inner: BlockOrder) -> BlockOrder:
    """Product order on ``ring``: monomials involving ``outer`` dominate.

    ``ring`` must extend the variables of ``inner`` by the outer ones.
    """
    k = len(inner.variables)
    if ring.variables[:k] != inner.variables:
        raise ContextError("ring does not extend the inner order's variables")
    outer = tuple(sorted(outer, reverse=True))
    if set(outer) != set(range(k, ring.nvars)):
        raise ContextError("outer variables must be exactly the adjoined ones")
    blocks = inner.block_of + (-1,) * len(outer)
    return BlockOrder(ring.variables, (outer,) + inner.segments, blocks, "ProductElimination",
                      (tuple(sorted(outer)),), inner)


def compare(order: BlockOrder, a: Monomial, b: Monomial) -> int:
    if len(a) != len(order.variables) or len(b) != len(order.variables):
        raise ContextError("monomial length does not match the order's variables")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def lead_term(order: BlockOrder, f: Polynomial) -> tuple[Monomial, object]:
    if not f.terms:
        raise ZeroPolynomialError("zero polynomial has no lead term")
    order.check_ring(f.ring)
    m = max(f.terms, key=order.key)
    return m, f.terms[m]


def lead_monomial(order: BlockOrder, f: Polynomial) -> Monomial:
    return lead_term(order, f)[0]
