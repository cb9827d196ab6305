"""Polynomials over F_3.

A polynomial is stored as a pair of integer bit masks ``(ones, twos)``:
bit ``i`` of ``ones`` is set when the coefficient of ``x^i`` is 1, bit ``i``
of ``twos`` when it is 2.  The two masks never overlap.  Python integers are
arbitrary precision, so every coefficient-wise operation runs bit-parallel
over the whole polynomial.

The helpers ``tadd``/``tsub``/``tscale`` operate on raw mask pairs and work
unchanged on numpy unsigned-integer arrays, which is how :mod:`field`
vectorizes arithmetic over every element of GF(3^m) at once.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from functools import reduce

from sympy import factorint

DEFAULT_SEED = 0xC0DE
DEGREE_ZERO = -math.inf


class DivisionByZeroPolynomial(ZeroDivisionError):
    pass


class ConstantPolynomialError(ValueError):
    pass


def tadd(x1, x2, y1, y2):
    """Trit-wise sum of two mask pairs."""
    t = (x1 | y2) ^ (x2 | y1)
    return (x2 | y2) ^ t, (x1 | y1) ^ t


def tsub(x1, x2, y1, y2):
    return tadd(x1, x2, y2, y1)


def tscale(x1, x2, c):
    c %= 3
    if c == 0:
        return 0, 0
    if c == 1:
        return x1, x2
    return x2, x1


def _spread3(mask: int) -> int:
    # bit i -> bit 3i
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << (3 * i)
        mask >>= 1
        i += 1
    return out


def _compress3(mask: int) -> int:
    # inverse of _spread3 on masks supported on multiples of 3
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << i
        mask >>= 3
        i += 1
    return out


class TritPoly:
    """Immutable polynomial over F_3.

    ``TritPoly([c0, c1, ...])`` builds ``c0 + c1*x + ...``; coefficients are
    reduced mod 3.  Use :meth:`parse` for the text formats.
    """

    __slots__ = ("ones", "twos")

    def __init__(self, coeffs=()):
        ones = twos = 0
        for i, c in enumerate(coeffs):
            c %= 3
            if c == 1:
                ones |= 1 << i
            elif c == 2:
                twos |= 1 << i
        object.__setattr__(self, "ones", ones)
        object.__setattr__(self, "twos", twos)

    @classmethod
    def from_masks(cls, ones: int, twos: int) -> TritPoly:
        if ones & twos:
            raise ValueError("overlapping coefficient masks")
        p = cls.__new__(cls)
        object.__setattr__(p, "ones", ones)
        object.__setattr__(p, "twos", twos)
        return p

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> TritPoly:
        return cls.from_masks(*tscale(1 << k, 0, c))

    @classmethod
    def x(cls) -> TritPoly:
        return cls.monomial(1)

    @classmethod
    def one(cls) -> TritPoly:
        return cls.monomial(0)

    @classmethod
    def zero(cls) -> TritPoly:
        return cls.from_masks(0, 0)

    def __setattr__(self, name, value):
        raise AttributeError("TritPoly is immutable")

    # -- structure -----------------------------------------------------

    @property
    def degree(self):
        """Degree; ``-inf`` for the zero polynomial."""
        if not (self.ones | self.twos):
            return DEGREE_ZERO
        return (self.ones | self.twos).bit_length() - 1

    def is_zero(self) -> bool:
        return not (self.ones | self.twos)

    def coeff(self, i: int) -> int:
        if (self.ones >> i) & 1:
            return 1
        if (self.twos >> i) & 1:
            return 2
        return 0

    @property
    def coeffs(self) -> list[int]:
        """Little-endian coefficient list; ``[]`` for zero."""
        if self.is_zero():
            return []
        return [self.coeff(i) for i in range(self.degree + 1)]

    @property
    def lead(self) -> int:
        return 0 if self.is_zero() else self.coeff(self.degree)

    def is_monic(self) -> bool:
        return self.lead == 1

    def monic(self) -> TritPoly:
        if self.lead == 2:
            return -self
        return self

    def weight(self) -> int:
        return (self.ones | self.twos).bit_count()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return TritPoly.from_masks(*tadd(self.ones, self.twos, other.ones, other.twos))

    __radd__ = __add__

    def __neg__(self):
        return TritPoly.from_masks(self.twos, self.ones)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return TritPoly.from_masks(*tsub(self.ones, self.twos, other.ones, other.twos))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TritPoly.from_masks(*tscale(self.ones, self.twos, other))
        if not isinstance(other, TritPoly):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = TritPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divrem(self, _coerce(other))

    def __floordiv__(self, other):
        return poly_divrem(self, _coerce(other))[0]

    def __mod__(self, other):
        return poly_divrem(self, _coerce(other))[1]

    def __lshift__(self, k: int):
        return TritPoly.from_masks(self.ones << k, self.twos << k)

    def __call__(self, x: int) -> int:
        """Evaluate at an element of F_3."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % 3
        return acc

    def derivative(self) -> TritPoly:
        return TritPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def cube(self) -> TritPoly:
        """Frobenius: ``p(x)^3 = p(x^3)`` over F_3."""
        return TritPoly.from_masks(_spread3(self.ones), _spread3(self.twos))

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = TritPoly([other])
        if not isinstance(other, TritPoly):
            return NotImplemented
        return self.ones == other.ones and self.twos == other.twos

    def __hash__(self):
        return hash((self.ones, self.twos))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return not self.is_zero()

    # -- text ----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"TritPoly('{format_poly(self)}')"

    def machine(self) -> str:
        return format_poly_machine(self)

    @classmethod
    def parse(cls, text: str) -> TritPoly:
        return parse_poly(text)


def _coerce(v):
    if isinstance(v, TritPoly):
        return v
    if isinstance(v, int):
        return TritPoly([v])
    return NotImplemented


# ----------------------------------------------------------------------
# text formats

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*x(?:\s*\^\s*\{?\s*(\d+)\s*\}?)?)?")


def parse_poly(text: str) -> TritPoly:
    """Parse ``"x^7+2x^6+x^5+x^3+2x+2"`` or ``"2,2,0,1,0,1,2,1"``.

    The human form also accepts ``-`` signs, ``*``, unicode minus and
    ``x^{12}`` braces, so LaTeX-style ``x^{12}-x^{11}+x^{10}`` input works.
    """
    s = text.strip().replace("−", "-").replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if "x" not in s:
        parts = [p for p in s.split(",") if p != ""]
        try:
            return TritPoly([int(p) for p in parts])
        except ValueError:
            raise ValueError(f"bad polynomial {text!r}") from None
    acc = TritPoly.zero()
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial {text!r} at {pos}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise ValueError(f"bad polynomial {text!r} at {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {text!r} at {pos}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        k = 0 if not xpart else (int(exp) if exp else 1)
        acc = acc + TritPoly.monomial(k, c)
        pos = m.end()
    return acc


def format_poly(p: TritPoly, signed: bool = False) -> str:
    """Human form, highest degree first.  ``signed`` writes 2 as ``-1``."""
    if p.is_zero():
        return "0"
    out = ""
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if not c:
            continue
        neg = signed and c == 2
        cs = "2" if c == 2 and not signed else ""
        if i == 0:
            term = "1" if neg else str(c)
        elif i == 1:
            term = f"{cs}x"
        else:
            term = f"{cs}x^{i}"
        if neg:
            out += "-" + term
        else:
            out += ("+" if out else "") + term
    return out


def format_poly_machine(p: TritPoly) -> str:
    return ",".join(str(c) for c in p.coeffs) or "0"


# ----------------------------------------------------------------------
# ring operations


def poly_add(a: TritPoly, b: TritPoly) -> TritPoly:
    return a + b


def poly_mul(a: TritPoly, b: TritPoly) -> TritPoly:
    if (a.ones | a.twos).bit_count() < (b.ones | b.twos).bit_count():
        a, b = b, a
    r1 = r2 = 0
    m, i = b.ones, 0
    while m:
        if m & 1:
            r1, r2 = tadd(r1, r2, a.ones << i, a.twos << i)
        m >>= 1
        i += 1
    m, i = b.twos, 0
    while m:
        if m & 1:
            r1, r2 = tadd(r1, r2, a.twos << i, a.ones << i)
        m >>= 1
        i += 1
    return TritPoly.from_masks(r1, r2)


def poly_divrem(a: TritPoly, b: TritPoly) -> tuple[TritPoly, TritPoly]:
    """Return ``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``."""
    if b.is_zero():
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    db = b.degree
    inv = b.lead  # 1 and 2 are self-inverse in F_3
    r1, r2 = a.ones, a.twos
    q1 = q2 = 0
    while True:
        dr = (r1 | r2).bit_length() - 1
        if dr < db:
            break
        c = (1 if (r1 >> dr) & 1 else 2) * inv % 3
        shift = dr - db
        s1, s2 = tscale(b.ones << shift, b.twos << shift, c)
        r1, r2 = tsub(r1, r2, s1, s2)
        if c == 1:
            q1 |= 1 << shift
        else:
            q2 |= 1 << shift
    return TritPoly.from_masks(q1, q2), TritPoly.from_masks(r1, r2)


def poly_gcd(a: TritPoly, b: TritPoly) -> TritPoly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def poly_powmod(base: TritPoly, k: int, mod: TritPoly) -> TritPoly:
    result = TritPoly.one() % mod
    base = base % mod
    while k:
        if k & 1:
            result = (result * base) % mod
        k >>= 1
        if k:
            base = (base * base) % mod
    return result


def frobenius_mod(p: TritPoly, mod: TritPoly) -> TritPoly:
    """``p^3 mod mod`` using the cube-by-spreading identity."""
    return p.cube() % mod


def x_pow_3k_mod(k: int, mod: TritPoly) -> TritPoly:
    """``x^(3^k) mod mod``."""
    h = TritPoly.x() % mod
    for _ in range(k):
        h = frobenius_mod(h, mod)
    return h


def _prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


def is_irreducible(p: TritPoly) -> bool:
    """Rabin's test over F_3."""
    d = p.degree
    if d < 1:
        raise ConstantPolynomialError("irreducibility of a constant polynomial")
    if d == 1:
        return True
    p = p.monic()
    x = TritPoly.x()
    # x^(3^j) mod p for every j <= d, computed once
    powers = [x % p]
    for _ in range(d):
        powers.append(frobenius_mod(powers[-1], p))
    if powers[d] != x % p:
        return False
    for q in _prime_divisors(d):
        if poly_gcd(powers[d // q] - x, p).degree > 0:
            return False
    return True


def poly_order(p: TritPoly) -> int:
    """Least ``N`` with ``p | x^N - 1`` for irreducible ``p`` with ``p(0) != 0``."""
    if p.degree < 1 or not is_irreducible(p):
        raise ValueError(f"{p} is not irreducible")
    if p.coeff(0) == 0:
        raise ValueError(f"x divides {p}")
    p = p.monic()
    x = TritPoly.x()
    n = 3**p.degree - 1
    for q, e in factorint(n).items():
        for _ in range(e):
            if poly_powmod(x, n // q, p) == TritPoly.one():
                n //= q
            else:
                break
    return n


def is_primitive(p: TritPoly) -> bool:
    if p.degree < 1 or p.coeff(0) == 0 or not is_irreducible(p):
        return False
    return poly_order(p) == 3**p.degree - 1


# ----------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    """``unit * prod(f**k for f, k in factors)``; factors monic irreducible."""

    unit: int
    factors: tuple[tuple[TritPoly, int], ...]

    def expand(self) -> TritPoly:
        acc = TritPoly([self.unit])
        for f, k in self.factors:
            acc = acc * f**k
        return acc

    def degrees(self) -> list[tuple[int, int]]:
        """Sorted ``(degree, multiplicity)`` pairs, one per distinct factor."""
        return sorted((f.degree, k) for f, k in self.factors)

    def format(self, signed: bool = False) -> str:
        parts = [] if self.unit == 1 else ["-1" if signed else "2"]
        for f, k in self.factors:
            parts.append(f"({format_poly(f, signed)})" + (f"^{k}" if k > 1 else ""))
        return "".join(parts) or "1"

    def __str__(self):
        return self.format()


def _pth_root(p: TritPoly) -> TritPoly:
    # over F_3 every coefficient is its own cube root
    return TritPoly.from_masks(_compress3(p.ones), _compress3(p.twos))


def squarefree_decomposition(f: TritPoly) -> list[tuple[TritPoly, int]]:
    """Monic ``f`` -> list of ``(g_i, i)`` with ``f = prod g_i^i``, each ``g_i`` squarefree."""
    out: list[tuple[TritPoly, int]] = []
    if f.degree < 1:
        return out
    fd = f.derivative()
    if fd.is_zero():
        return [(g, 3 * k) for g, k in squarefree_decomposition(_pth_root(f))]
    c = poly_gcd(f, fd)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        i += 1
        w = y
        c = c // y
    if c.degree > 0:
        out.extend((g, 3 * k) for g, k in squarefree_decomposition(_pth_root(c)))
    return out


def distinct_degree(f: TritPoly) -> list[tuple[TritPoly, int]]:
    """Split squarefree monic ``f`` into products of equal-degree irreducibles."""
    out = []
    x = TritPoly.x()
    h = x % f if f.degree > 0 else x
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = frobenius_mod(h, f)
        g = poly_gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(rng: random.Random, below: int) -> TritPoly:
    return TritPoly([rng.randrange(3) for _ in range(below)])


def equal_degree(f: TritPoly, d: int, rng: random.Random) -> list[TritPoly]:
    """Cantor-Zassenhaus splitting of ``f`` whose irreducible factors all have degree ``d``."""
    if f.degree == d:
        return [f]
    r = f.degree // d
    expo = (3**d - 1) // 2
    one = TritPoly.one()
    while True:
        a = _random_poly(rng, f.degree)
        if a.degree < 1:
            continue
        g = poly_gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        g = poly_gcd(poly_powmod(a, expo, f) - one, f)
        if 0 < g.degree < f.degree:
            break
    parts = equal_degree(g, d, rng) + equal_degree(f // g, d, rng)
    assert len(parts) == r
    return parts


def factor(p: TritPoly, seed: int = DEFAULT_SEED) -> Factorization:
    """Complete factorization over F_3; factors sorted by degree then coefficients."""
    if p.degree < 1:
        raise ConstantPolynomialError("cannot factor a constant polynomial")
    unit = p.lead
    f = p.monic()
    rng = random.Random(seed)
    counts: dict[TritPoly, int] = {}
    for g, mult in squarefree_decomposition(f):
        for block, d in distinct_degree(g):
            for irr in equal_degree(block, d, rng):
                counts[irr] = counts.get(irr, 0) + mult
    factors = tuple(sorted(counts.items(), key=lambda fk: fk[0].sort_key()))
    return Factorization(unit=unit, factors=factors)


def product(polys) -> TritPoly:
    return reduce(poly_mul, polys, TritPoly.one())


def monic_polys(degree: int):
    """All monic polynomials of the given degree, in counter order."""
    for low in range(3**degree):
        coeffs = []
        v = low
        for _ in range(degree):
            coeffs.append(v % 3)
            v //= 3
        yield TritPoly(coeffs + [1])
