"""Exact coefficient fields and sparse multivariate polynomials.

Monomials are dense exponent tuples indexed by variable id.  A polynomial
is an immutable mapping ``monomial -> nonzero coefficient`` tied to a
:class:`Ring` (ordered variable list plus coefficient field).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]


class ContextError(ValueError):
    """Operands live in different rings or fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the prime field F_p (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __call__(self, x) -> int | Fraction:
        """Coerce an integer or fraction into the field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def norm(self, x):
        return x if self.p is None else x % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(x, -1, self.p)

    def neg(self, x):
        return -x if self.p is None else (-x) % self.p

    def signed(self, c) -> int | Fraction:
        """Representative used for printing: F_p elements in (-p/2, p/2]."""
        if self.p is None:
            return c
        return c - self.p if c > self.p // 2 else c

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


@dataclass(frozen=True)
class Variable:
    tag: str
    row: int
    col: int
    id: int

    def __str__(self) -> str:
        return f"{self.tag.lower()}[{self.row},{self.col}]"


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over ``field`` in an ordered tuple of variables."""

    variables: tuple[Variable, ...]
    field: FieldSpec = FieldSpec()
    _index: dict = dc_field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        index = {}
        for k, v in enumerate(self.variables):
            if v.id != k:
                raise ValueError("variable ids must be dense and in order")
            key = (v.tag, v.row, v.col)
            if key in index:
                raise ValueError(f"duplicate variable {v}")
            index[key] = k
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_matrices(cls, shapes: Mapping[str, tuple[int, int]], field: FieldSpec = FieldSpec()) -> Ring:
        """Variables of each matrix in row-major order, matrices in the given order."""
        variables = []
        for tag, (rows, cols) in shapes.items():
            for i in range(1, rows + 1):
                for j in range(1, cols + 1):
                    variables.append(Variable(tag, i, j, len(variables)))
        return cls(tuple(variables), field)

    def extend(self, count: int, tag: str = "U") -> Ring:
        """Adjoin ``count`` auxiliary variables after the existing ones."""
        start = sum(1 for v in self.variables if v.tag == tag)
        new = list(self.variables)
        for k in range(count):
            new.append(Variable(tag, start + k + 1, 1, len(new)))
        return Ring(tuple(new), self.field)

    def with_field(self, field: FieldSpec) -> Ring:
        return Ring(self.variables, field)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, tag: str, row: int, col: int) -> int:
        try:
            return self._index[(tag, row, col)]
        except KeyError:
            raise ContextError(f"no variable {tag.lower()}[{row},{col}] in this ring") from None

    def var(self, tag: str, row: int, col: int) -> Polynomial:
        return self.monomial_poly(self.unit_monomial(self.index(tag, row, col)))

    def unit_monomial(self, k: int) -> Monomial:
        e = [0] * self.nvars
        e[k] = 1
        return tuple(e)

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def monomial_poly(self, m: Monomial, c=1) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {m: c} if c else {})

    def const(self, c) -> Polynomial:
        return self.monomial_poly(self.one_monomial(), c)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def monomial_text(self, m: Monomial) -> str:
        parts = []
        for k, e in enumerate(m):
            if e:
                parts.append(str(self.variables[k]) + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) if parts else "1"


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- construction helpers -------------------------------------------------
    def _check(self, other: Polynomial):
        if self.ring is not other.ring and self.ring != other.ring:
            raise ContextError("polynomials belong to different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = norm(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.norm
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, {m: norm(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        f = self.ring.field
        c = f(c)
        return Polynomial(self.ring, {m: f.norm(v * c) for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c=1) -> Polynomial:
        norm = self.ring.field.norm
        return Polynomial(self.ring, {monomial_mul(m, mono): norm(v * c) for m, v in self.terms.items()})

    # -- queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self.terms.items())

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> set[int]:
        return {k for m in self.terms for k, e in enumerate(m) if e}

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- ring maps ------------------------------------------------------------
    def embed(self, ring: Ring) -> Polynomial:
        """Pad exponent vectors into a ring that extends this one."""
        extra = ring.nvars - self.ring.nvars
        if extra < 0 or ring.variables[: self.ring.nvars] != self.ring.variables:
            raise ContextError("target ring does not extend the source ring")
        pad = (0,) * extra
        return Polynomial(ring, {m + pad: c for m, c in self.terms.items()})

    def restrict(self, ring: Ring) -> Polynomial:
        """Drop trailing variables; they must not occur."""
        n = ring.nvars
        out = {}
        for m, c in self.terms.items():
            if any(m[n:]):
                raise ContextError("polynomial involves variables outside the target ring")
            out[m[:n]] = c
        return Polynomial(ring, out)

    def frobenius_substitute(self, p: int) -> Polynomial:
        """Replace every variable x by x^p, leaving coefficients alone."""
        return Polynomial(self.ring, {tuple(p * e for e in m): c for m, c in self.terms.items()})

    def monic(self, order=None) -> Polynomial:
        if not self.terms:
            return self
        from .orders import lead_term

        _, c = lead_term(order, self) if order is not None else (None, next(iter(self.terms.values())))
        return self.scale(self.ring.field.inv(c))

    # -- text -----------------------------------------------------------------
    def to_text(self, order=None) -> str:
        """``c*y[i,j]^e*z[k,l]`` terms joined by ``+``, descending under ``order``."""
        if not self.terms:
            return "0"
        items = list(self.terms.items())
        if order is not None:
            items.sort(key=lambda mc: order.key(mc[0]), reverse=True)
        else:
            items.sort(reverse=True)
        field = self.ring.field
        out = []
        for m, c in items:
            c = field.signed(c)
            mono = self.ring.monomial_text(m)
            if mono == "1":
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"{c}*{mono}")
        return "+".join(out).replace("+-", "-")

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"


def product(polys: Iterable[Polynomial], ring: Ring) -> Polynomial:
    out = ring.one()
    for f in polys:
        out = out * f
    return out
