"""Ternary cyclic codes C_(i1,...,it) of length 3^m - 1."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cosets import coset
from .field import FieldCtx, FieldElem
from .polyf3 import TritPoly, poly_powmod, product


class CoefficientEscape(ArithmeticError):
    """A minimal polynomial picked up a coefficient outside F_3."""


def minimal_poly(ctx: FieldCtx, i: int) -> TritPoly:
    """Minimal polynomial of alpha^i over F_3, as the product over its conjugates."""
    members = coset(i, ctx.m).members
    # coefficients of prod (X - alpha^j), low degree first
    coeffs: list[FieldElem] = [ctx.one]
    for j in members:
        root = ctx.alpha_pow(j)
        shifted = [ctx.zero] + coeffs
        for t in range(len(coeffs)):
            shifted[t] = shifted[t] - root * coeffs[t]
        coeffs = shifted
    out = []
    for c in coeffs:
        if not c.in_prime_field():
            raise CoefficientEscape(f"minimal polynomial of alpha^{i} has coefficient {c!r}")
        out.append(c.to_int())
    return TritPoly(out)


@dataclass(frozen=True)
class CyclicCode:
    ctx: FieldCtx
    zeros: tuple[int, ...]
    generator: TritPoly
    leaders: tuple[int, ...]
    coset_sizes: tuple[int, ...]
    collapsed: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.ctx.n

    @property
    def k(self) -> int:
        return self.n - self.generator.degree

    @property
    def m(self) -> int:
        return self.ctx.m

    def summary(self) -> dict:
        return {
            "field": self.ctx.spec(),
            "zeros": list(self.zeros),
            "n": self.n,
            "k": self.k,
            "generator": str(self.generator),
            "generator_machine": self.generator.machine(),
            "cosets": [{"leader": l, "size": s} for l, s in zip(self.leaders, self.coset_sizes)],
            "collapsed_zeros": list(self.collapsed),
        }


def build_code(ctx: FieldCtx, zeros) -> CyclicCode:
    """Code generated by the product of minimal polynomials over the distinct
    cosets of ``zeros``.  Zeros sharing a coset with an earlier one are
    recorded in ``collapsed`` instead of raising."""
    zeros = tuple(sorted(int(z) for z in zeros))
    if not zeros:
        raise ValueError("at least one zero is required")
    for z in zeros:
        if not 0 <= z < ctx.n:
            raise ValueError(f"zero exponent {z} outside [0, {ctx.n})")
    leaders: list[int] = []
    sizes: list[int] = []
    collapsed: list[int] = []
    for z in zeros:
        c = coset(z, ctx.m)
        if c.leader in leaders:
            collapsed.append(z)
            continue
        leaders.append(c.leader)
        sizes.append(c.size)
    gen = product(minimal_poly(ctx, l) for l in leaders)
    return CyclicCode(ctx, zeros, gen, tuple(leaders), tuple(sizes), tuple(collapsed))


def divides_xn_minus_1(code: CyclicCode) -> bool:
    """``g | x^n - 1``, checked as ``x^n = 1 mod g`` to avoid a degree-n division."""
    return poly_powmod(TritPoly.x(), code.n, code.generator) == TritPoly.one() % code.generator


def is_codeword(code: CyclicCode, poly: TritPoly) -> bool:
    """Root test at every zero; ``poly`` is read mod ``x^n - 1``."""
    if not poly.is_zero() and poly.degree >= code.n:
        raise ValueError("polynomial degree must be below n")
    ctx = code.ctx
    return all(ctx.evaluate(poly, ctx.alpha_pow(i)).is_zero() for i in code.zeros)


def shift(poly: TritPoly, n: int, s: int = 1) -> TritPoly:
    """Cyclic shift ``x^s * poly mod x^n - 1``."""
    out = [0] * n
    for i, c in enumerate(poly.coeffs):
        out[(i + s) % n] = c
    return TritPoly(out)
