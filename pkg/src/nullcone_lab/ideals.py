"""Generators of the nullcone ideals, varieties of complexes, and witnesses."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .orders import BlockOrder, UnsupportedShape, gl_blocks, gl_ring, symplectic_blocks, symplectic_ring
from .poly import FieldSpec, Polynomial, Ring, product


class ParameterError(ValueError):
    pass


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    """A polynomial ring together with the matrix shape it was built for."""

    shape: str  # "symplectic" or "gl"
    params: tuple[int, ...]
    ring: Ring

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    def dims(self, tag: str) -> tuple[int, int]:
        if self.shape == "symplectic":
            t, n = self.params
            if tag != "Y":
                raise ShapeError("symplectic rings only have Y")
            return 2 * t, n
        m, t, n = self.params
        return (m, t) if tag == "Y" else (t, n)

    def y(self, i: int, j: int) -> Polynomial:
        return self.ring.var("Y", i, j)

    def z(self, i: int, j: int) -> Polynomial:
        return self.ring.var("Z", i, j)

    def entry(self, tag: str, i: int, j: int) -> Polynomial:
        return self.ring.var(tag, i, j)

    def order(self) -> BlockOrder:
        if self.shape == "symplectic":
            return symplectic_blocks(*self.params, ring=self.ring)
        return gl_blocks(*self.params, ring=self.ring)

    def with_field(self, field: FieldSpec) -> Context:
        return Context(self.shape, self.params, self.ring.with_field(field))

    def describe(self) -> dict:
        names = ("t", "n") if self.shape == "symplectic" else ("m", "t", "n")
        return {"shape": self.shape, **dict(zip(names, self.params)), "field": str(self.field)}


def symplectic_context(t: int, n: int, field: FieldSpec | None = None) -> Context:
    if t < 1 or n < 1:
        raise ParameterError("need t >= 1 and n >= 1")
    return Context("symplectic", (t, n), symplectic_ring(t, n, field or FieldSpec()))


def gl_context(m: int, t: int, n: int, field: FieldSpec | None = None) -> Context:
    if min(m, t, n) < 1:
        raise ParameterError("need m, t, n >= 1")
    return Context("gl", (m, t, n), gl_ring(m, t, n, field or FieldSpec()))


@dataclass(frozen=True)
class IdealGens:
    gens: tuple[Polynomial, ...]
    label: str
    ring: Ring

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: IdealGens) -> IdealGens:
        return IdealGens(self.gens + other.gens, f"{self.label}+{other.label}", self.ring)

    def to_json(self, ctx: Context | None = None, order: BlockOrder | None = None) -> dict:
        return {
            "label": self.label,
            "shape": ctx.describe() if ctx else None,
            "generators": [g.to_text(order) for g in self.gens],
        }


def ideal(gens, label: str, ring: Ring) -> IdealGens:
    return IdealGens(tuple(g for g in gens if g), label, ring)


# -- symplectic ---------------------------------------------------------------

def d_entry(ctx: Context, i: int, j: int) -> Polynomial:
    """Entry (i, j) of Y^T Omega Y, a sum of t two-by-two minors."""
    t, _ = ctx.params
    y = ctx.y
    out = ctx.ring.zero()
    for s in range(1, t + 1):
        out = out + y(s, i) * y(t + s, j) - y(s, j) * y(t + s, i)
    return out


def symplectic_gens(ctx: Context) -> IdealGens:
    _, n = ctx.params
    gens = [d_entry(ctx, i, j) for i, j in combinations(range(1, n + 1), 2)]
    return ideal(gens, "P(Y)", ctx.ring)


def alpha_pairs(t: int, n: int) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(1, n + 1), 2) if j - i <= t]


def alpha_symplectic(ctx: Context) -> IdealGens:
    t, n = ctx.params
    return ideal([d_entry(ctx, i, j) for i, j in alpha_pairs(t, n)], "alpha", ctx.ring)


# -- general linear -----------------------------------------------------------

def c_entry(ctx: Context, i: int, j: int) -> Polynomial:
    _, t, _ = ctx.params
    out = ctx.ring.zero()
    for k in range(1, t + 1):
        out = out + ctx.y(i, k) * ctx.z(k, j)
    return out


def yz_entries(ctx: Context) -> IdealGens:
    m, _, n = ctx.params
    gens = [c_entry(ctx, i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    return ideal(gens, "(YZ)", ctx.ring)


def determinant(ctx: Context, tag: str, rows, cols, memo: dict | None = None) -> Polynomial:
    """Determinant of the square submatrix on ``rows`` x ``cols``.

    Laplace expansion along the first row; ``memo`` shares sub-minors
    between calls.
    """
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols):
        raise ShapeError("determinant needs a square submatrix")
    if memo is None:
        memo = {}
    return _det(ctx, tag, rows, cols, memo)


def _det(ctx, tag, rows, cols, memo):
    if not rows:
        return ctx.ring.one()
    key = (tag, rows, cols)
    if key in memo:
        return memo[key]
    out = ctx.ring.zero()
    r0, rest = rows[0], rows[1:]
    for k, c in enumerate(cols):
        term = ctx.entry(tag, r0, c) * _det(ctx, tag, rest, cols[:k] + cols[k + 1:], memo)
        out = out + term if k % 2 == 0 else out - term
    memo[key] = out
    return out


def minors(ctx: Context, tag: str, row_range, col_range, k: int) -> list[Polynomial]:
    """All k x k minors of the submatrix with inclusive row/column ranges."""
    a, b = row_range
    c, d = col_range
    rows, cols = ctx.dims(tag)
    if not (1 <= a <= b <= rows and 1 <= c <= d <= cols):
        raise ShapeError(f"submatrix [{a},{b}]x[{c},{d}] outside {tag} of size {rows}x{cols}")
    if k < 1 or k > min(b - a + 1, d - c + 1):
        raise ShapeError(f"no {k}x{k} minors in a {b - a + 1}x{d - c + 1} submatrix")
    memo: dict = {}
    return [determinant(ctx, tag, rs, cs, memo)
            for rs in combinations(range(a, b + 1), k)
            for cs in combinations(range(c, d + 1), k)]


def all_minors(ctx: Context, tag: str, k: int) -> list[Polynomial]:
    rows, cols = ctx.dims(tag)
    if k > min(rows, cols):
        return []
    return minors(ctx, tag, (1, rows), (1, cols), k)


def voc_gens(ctx: Context, r: int, s: int) -> IdealGens:
    """I_{r+1}(Y) + I_{s+1}(Z) + (YZ)."""
    m, t, n = ctx.params
    if r < 0 or s < 0 or r > min(m, t) or s > min(t, n) or r + s > t:
        raise ParameterError(f"invalid (r, s) = ({r}, {s}) for m={m}, t={t}, n={n}")
    gens = all_minors(ctx, "Y", r + 1) + all_minors(ctx, "Z", s + 1) + list(yz_entries(ctx).gens)
    return ideal(gens, f"p_{{{r},{s}}}", ctx.ring)


def valid_rs(m: int, t: int, n: int, exact: bool = False) -> list[tuple[int, int]]:
    out = []
    for r in range(0, min(m, t) + 1):
        for s in range(0, min(t, n) + 1):
            if r + s == t or (not exact and r + s < t):
                out.append((r, s))
    return out


def alpha_gl_labelled(ctx: Context) -> list[tuple[str, Polynomial]]:
    m, t, n = ctx.params
    if t > min(m, n):
        raise UnsupportedShape(f"alpha needs t <= min(m, n); got m={m}, t={t}, n={n}")
    out = []
    for i in range(1, t + 1):
        for j in range(1, t + 2 - i):
            out.append((f"c[{i},{j}]", c_entry(ctx, i, j)))

    def sub(tag, r0, r1, c0, c1):
        return (f"det {tag}[{r0}..{r1}][{c0}..{c1}]",
                determinant(ctx, tag, range(r0, r1 + 1), range(c0, c1 + 1)))

    for i in range(2, t):
        out.append(sub("Y", m - i + 1, m, 1, i))
    for i in range(1, m - t + 1):
        out.append(sub("Y", i + 1, t + i, 1, t))
    for i in range(2, t):
        out.append(sub("Z", 1, i, n - i + 1, n))
    for i in range(1, n - t + 1):
        out.append(sub("Z", 1, t, i + 1, t + i))
    return out


def alpha_gl(ctx: Context) -> IdealGens:
    return ideal([f for _, f in alpha_gl_labelled(ctx)], "alpha", ctx.ring)


# -- witnesses and heights ----------------------------------------------------

def alpha(ctx: Context) -> IdealGens:
    return alpha_symplectic(ctx) if ctx.shape == "symplectic" else alpha_gl(ctx)


def witness_f(ctx: Context) -> Polynomial:
    return product(alpha(ctx).gens, ctx.ring)


def witness_g(ctx: Context) -> Polynomial:
    if ctx.shape != "gl":
        raise ShapeError("g is defined for the general linear shape only")
    m, _, n = ctx.params
    return ctx.y(m, 1) * ctx.z(1, n) * witness_f(ctx)


def symplectic_height(t: int, n: int) -> int:
    return comb(n, 2) if n <= t + 1 else n * t - comb(t + 1, 2)


def voc_height(m: int, t: int, n: int, r: int, s: int) -> int:
    return (m - r) * (t - r) + (n - s) * (t - s) + r * s


def expected_height(ctx: Context, which: str = "nullcone", r: int | None = None, s: int | None = None) -> int:
    if ctx.shape == "symplectic":
        return symplectic_height(*ctx.params)
    if r is None or s is None:
        raise ParameterError("variety of complexes height needs r and s")
    return voc_height(*ctx.params, r, s)


def maximal_ideal_frobenius(ctx: Context, p: int) -> IdealGens:
    if ctx.field.is_prime_field and ctx.field.p != p:
        raise ParameterError(f"p={p} does not match the field {ctx.field}")
    ring = ctx.ring
    gens = [ring.monomial_poly(tuple(p * e for e in ring.unit_monomial(k))) for k in range(ring.nvars)]
    return ideal(gens, "m^[p]", ring)
