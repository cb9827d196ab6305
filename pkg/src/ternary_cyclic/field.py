"""Arithmetic in GF(3^m) built on a primitive modulus.

Elements use polynomial-basis coordinates packed the same way as
:class:`~ternary_cyclic.polyf3.TritPoly` (two bit masks).  The core routines
take raw mask pairs and are written so they accept either Python ints
(single elements) or numpy unsigned arrays (every element of the field at
once); :class:`FieldArray` wraps the latter for the exhaustive scans.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .polyf3 import TritPoly, is_irreducible, parse_poly, poly_order, tadd, tscale, tsub

EXHAUSTIVE_CAP = 13
MAX_M = 40


class FieldError(ValueError):
    pass


class NotIrreducible(FieldError):
    pass


class NotPrimitive(FieldError):
    def __init__(self, modulus, order):
        super().__init__(f"{modulus} is irreducible but has order {order}, not {3**modulus.degree - 1}")
        self.order = order


class CapExceeded(RuntimeError):
    """An exhaustive operation was asked for m above the cap without ``force``."""


def check_cap(m: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    if m > cap and not force:
        raise CapExceeded(f"m={m} exceeds the exhaustive cap {cap}; pass force to override")


class FieldCtx:
    """GF(3^m) = F_3[x]/(modulus); ``alpha`` is the class of ``x``."""

    def __init__(self, modulus: TritPoly | str):
        if isinstance(modulus, str):
            modulus = parse_poly(modulus)
        m = modulus.degree
        if not isinstance(m, int) or m < 1:
            raise FieldError("modulus must have degree >= 1")
        if m > MAX_M:
            raise FieldError(f"m={m} exceeds {MAX_M}")
        if not modulus.is_monic():
            raise FieldError(f"modulus {modulus} is not monic")
        if not is_irreducible(modulus):
            raise NotIrreducible(f"{modulus} is reducible over F_3")
        order = poly_order(modulus)
        if order != 3**m - 1:
            raise NotPrimitive(modulus, order)
        self.m = m
        self.modulus = modulus
        self.n = 3**m - 1
        self.size = 3**m
        self._full = (1 << m) - 1
        # x^m = -(modulus - x^m)
        low = modulus - TritPoly.monomial(m)
        self._r1, self._r2 = low.twos, low.ones

    def __repr__(self):
        return f"FieldCtx(m={self.m}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("FieldCtx", self.modulus))

    def spec(self) -> str:
        return f"m={self.m},mod={self.modulus}"

    # -- raw mask arithmetic (ints or numpy arrays) ----------------------

    def _mulx(self, a1, a2):
        m = self.m
        a1 = a1 << 1
        a2 = a2 << 1
        h1 = (a1 >> m) & 1
        h2 = (a2 >> m) & 1
        a1 = a1 & self._full
        a2 = a2 & self._full
        c1 = ((-h1) & self._r1) | ((-h2) & self._r2)
        c2 = ((-h1) & self._r2) | ((-h2) & self._r1)
        return tadd(a1, a2, c1, c2)

    def _mul(self, a1, a2, b1, b2):
        if isinstance(a1, np.ndarray) and not isinstance(b1, np.ndarray):
            # keep the sign masks as arrays; -1 is not a valid unsigned operand
            a1, a2, b1, b2 = b1, b2, a1, a2
        r1 = r2 = 0
        for i in range(self.m - 1, -1, -1):
            r1, r2 = self._mulx(r1, r2)
            s1 = -((b1 >> i) & 1)
            s2 = -((b2 >> i) & 1)
            r1, r2 = tadd(r1, r2, (s1 & a1) | (s2 & a2), (s1 & a2) | (s2 & a1))
        return r1, r2

    def _pow(self, a1, a2, k: int):
        r1, r2 = 1, 0
        if isinstance(a1, np.ndarray):
            r1 = np.ones_like(a1)
            r2 = np.zeros_like(a2)
        while k:
            if k & 1:
                r1, r2 = self._mul(r1, r2, a1, a2)
            k >>= 1
            if k:
                a1, a2 = self._mul(a1, a2, a1, a2)
        return r1, r2

    # -- element constructors ------------------------------------------

    def elem(self, value) -> FieldElem:
        """Build an element from an F_3 int, a coordinate list or a TritPoly."""
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, int):
            return FieldElem(self, *tscale(1, 0, value))
        if isinstance(value, TritPoly):
            p = value % self.modulus
            return FieldElem(self, p.ones, p.twos)
        p = TritPoly(list(value))
        if p.degree >= self.m:
            raise FieldError("too many coordinates")
        return FieldElem(self, p.ones, p.twos)

    def from_index(self, idx: int) -> FieldElem:
        """Element whose base-3 digits (little-endian) are its coordinates."""
        ones = twos = 0
        for j in range(self.m):
            d = idx % 3
            if d == 1:
                ones |= 1 << j
            elif d == 2:
                twos |= 1 << j
            idx //= 3
        return FieldElem(self, ones, twos)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1, 0)

    @cached_property
    def alpha(self) -> FieldElem:
        if self.m == 1:
            # x reduces to the constant -(c0)
            return FieldElem(self, self._r1, self._r2)
        return FieldElem(self, 2, 0)

    def alpha_pow(self, k: int) -> FieldElem:
        return self.alpha ** (k % self.n)

    # -- exhaustive views ----------------------------------------------

    def all_elements(self, cap: int = EXHAUSTIVE_CAP, force: bool = False):
        """Yield every element once, in coordinate-counter order."""
        check_cap(self.m, cap, force)
        for idx in range(self.size):
            yield self.from_index(idx)

    @cached_property
    def dtype(self):
        # one spare bit for the shift in _mulx
        if self.m <= 15:
            return np.uint16
        if self.m <= 31:
            return np.uint32
        return np.uint64

    def array_all(self, cap: int = EXHAUSTIVE_CAP, force: bool = False) -> FieldArray:
        """All 3^m elements as a :class:`FieldArray` in counter order."""
        check_cap(self.m, cap, force)
        return FieldArray.from_index(self, np.arange(self.size, dtype=np.int64))

    @cached_property
    def _all(self) -> FieldArray:
        return self.array_all(force=True)

    @cached_property
    def frobenius_perm(self) -> np.ndarray:
        """``perm[idx]`` is the counter index of ``x^3`` for ``x`` at ``idx``."""
        x = self._all
        return (x * x * x).index()

    @cached_property
    def inverse_perm(self) -> np.ndarray:
        """Counter index of ``x^-1`` (0 maps to 0), via x^(3^m-2) = x * (prod_{k>=1} x^(3^k))^2."""
        x = self._all
        acc = None
        for k in range(1, self.m):
            y = x[self._frob_power(k)]
            acc = y if acc is None else acc * y
        if acc is None:
            acc = x ** 0
        return (acc * acc * x).index()

    def _frob_power(self, k: int) -> np.ndarray:
        perm = np.arange(self.size, dtype=np.int64)
        f = self.frobenius_perm
        for _ in range(k % self.m):
            perm = f[perm]
        return perm

    @lru_cache(maxsize=64)
    def power_table(self, e: int) -> np.ndarray:
        """Counter index of ``x^e`` for every element ``x`` (``0^0 = 1``).

        ``x^e`` is assembled from Frobenius images ``x^(3^k)``, which are
        index gathers, so only the digit products cost multiplications.
        """
        if e < 0:
            raise ValueError("negative exponent")
        x = self._all
        if e == 0:
            return np.ones(self.size, dtype=np.int64)
        r = e % self.n or self.n
        plain = _digits(r, balanced=False)
        signed = _digits(r, balanced=True)
        cost_plain = sum(1 for d in plain if d) + sum(1 for d in plain if d == 2)
        cost_signed = sum(1 for d in signed if d)
        if "inverse_perm" not in self.__dict__ and any(d < 0 for d in signed):
            cost_signed += self.m + 1
        acc = None
        if cost_signed < cost_plain:
            inv = self.inverse_perm
            for k, d in enumerate(signed):
                if not d:
                    continue
                idx = self._frob_power(k)
                y = x[inv[idx] if d < 0 else idx]
                acc = y if acc is None else acc * y
        else:
            for k, d in enumerate(plain):
                if not d:
                    continue
                y = x[self._frob_power(k)]
                if d == 2:
                    y = y * y
                acc = y if acc is None else acc * y
        out = acc.index()
        out[0] = 0
        return out

    @cached_property
    def _mask_to_index(self) -> np.ndarray:
        t = np.zeros(1 << self.m, dtype=np.int64)
        r = np.arange(1 << self.m, dtype=np.int64)
        for j in range(self.m):
            t += ((r >> j) & 1) * 3**j
        return t

    @cached_property
    def log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """``(exp, log)``: ``exp[k]`` is the counter index of alpha^k and
        ``log[idx]`` inverts it (``log[0] = -1``)."""
        n = self.n
        block = max(1, int(np.ceil(np.sqrt(n))))
        nblocks = -(-n // block)
        small = [self.alpha ** 0]
        for _ in range(block - 1):
            small.append(small[-1] * self.alpha)
        step = self.alpha**block
        big = [self.one]
        for _ in range(nblocks - 1):
            big.append(big[-1] * step)
        dt = self.dtype
        s1 = np.array([e.ones for e in small], dtype=dt)
        s2 = np.array([e.twos for e in small], dtype=dt)
        g1 = np.array([e.ones for e in big], dtype=dt)
        g2 = np.array([e.twos for e in big], dtype=dt)
        a = FieldArray(self, np.tile(s1, nblocks), np.tile(s2, nblocks))
        b = FieldArray(self, np.repeat(g1, block), np.repeat(g2, block))
        exp = (a * b).index()[:n]
        log = np.full(self.size, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if np.count_nonzero(log >= 0) != n or log[0] != -1:
            raise FieldError("alpha does not generate the multiplicative group")
        return exp, log

    @cached_property
    def zech(self) -> np.ndarray:
        """``zech[k] = log(alpha^k + 1)``, or -1 where alpha^k = -1."""
        exp, log = self.log_tables
        powers = FieldArray.from_index(self, exp)
        return log[(powers + self.one).index()]

    def log(self, x: FieldElem) -> int:
        if x.is_zero():
            raise FieldError("log of zero")
        if self.m <= EXHAUSTIVE_CAP:
            return int(self.log_tables[1][x.index])
        raise CapExceeded("discrete log only via tables for small m")

    # -- polynomial evaluation -----------------------------------------

    def evaluate(self, p: TritPoly, x: FieldElem) -> FieldElem:
        acc = self.zero
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc


class FieldElem:
    """A GF(3^m) element tied to one :class:`FieldCtx`."""

    __slots__ = ("ctx", "ones", "twos")

    def __init__(self, ctx: FieldCtx, ones: int, twos: int):
        self.ctx = ctx
        self.ones = int(ones)
        self.twos = int(twos)

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise FieldError("elements from different fields")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return None

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(1 if (self.ones >> j) & 1 else 2 if (self.twos >> j) & 1 else 0 for j in range(self.ctx.m))

    @property
    def index(self) -> int:
        return sum(c * 3**j for j, c in enumerate(self.coords))

    def is_zero(self) -> bool:
        return not (self.ones | self.twos)

    def in_prime_field(self) -> bool:
        return not ((self.ones | self.twos) >> 1)

    def to_int(self) -> int:
        """The F_3 value of a prime-field element."""
        if not self.in_prime_field():
            raise FieldError(f"{self} is not in F_3")
        return 1 if self.ones else 2 if self.twos else 0

    def as_poly(self) -> TritPoly:
        return TritPoly.from_masks(self.ones, self.twos)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.ctx, *tadd(self.ones, self.twos, o.ones, o.twos))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.ctx, *tsub(self.ones, self.twos, o.ones, o.twos))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElem(self.ctx, self.twos, self.ones)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.ctx, *self.ctx._mul(self.ones, self.twos, o.ones, o.twos))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if not self.is_zero():
            k %= self.ctx.n
            if k == 0:
                return self.ctx.one
        return FieldElem(self.ctx, *self.ctx._pow(self.ones, self.twos, k))

    def inverse(self) -> FieldElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in GF(3^m)")
        return self ** (self.ctx.n - 1)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.elem(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx == other.ctx and self.ones == other.ones and self.twos == other.twos

    def __hash__(self):
        return hash((self.ones, self.twos))

    def __repr__(self):
        if self.is_zero():
            return "0"
        if self.ctx.m <= 8:
            return f"α^{self.ctx.log(self)}"
        return "[" + ",".join(map(str, self.coords)) + "]"

    def to_json(self):
        return list(self.coords)


class FieldArray:
    """A vector of GF(3^m) elements stored as two unsigned mask arrays."""

    __slots__ = ("ctx", "ones", "twos")

    def __init__(self, ctx: FieldCtx, ones: np.ndarray, twos: np.ndarray):
        self.ctx = ctx
        self.ones = ones
        self.twos = twos

    @classmethod
    def from_index(cls, ctx: FieldCtx, idx: np.ndarray) -> FieldArray:
        idx = np.asarray(idx, dtype=np.int64).copy()
        dt = ctx.dtype
        ones = np.zeros(idx.shape, dtype=dt)
        twos = np.zeros(idx.shape, dtype=dt)
        for j in range(ctx.m):
            d = idx % 3
            ones |= (d == 1).astype(dt) << j
            twos |= (d == 2).astype(dt) << j
            idx //= 3
        return cls(ctx, ones, twos)

    def _pair(self, other):
        if isinstance(other, FieldArray):
            return other.ones, other.twos
        if isinstance(other, int):
            other = self.ctx.elem(other)
        if isinstance(other, FieldElem):
            return other.ones, other.twos
        return None

    def __len__(self):
        return len(self.ones)

    def __getitem__(self, i):
        if isinstance(i, (int, np.integer)):
            return FieldElem(self.ctx, int(self.ones[i]), int(self.twos[i]))
        return FieldArray(self.ctx, self.ones[i], self.twos[i])

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return FieldArray(self.ctx, *tadd(self.ones, self.twos, *o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return FieldArray(self.ctx, *tsub(self.ones, self.twos, *o))

    def __neg__(self):
        return FieldArray(self.ctx, self.twos, self.ones)

    def __mul__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return FieldArray(self.ctx, *self.ctx._mul(self.ones, self.twos, *o))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent on arrays")
        return FieldArray(self.ctx, *self.ctx._pow(self.ones, self.twos, k))

    def is_zero(self) -> np.ndarray:
        return (self.ones | self.twos) == 0

    def equals(self, other) -> np.ndarray:
        o1, o2 = self._pair(other)
        return (self.ones == o1) & (self.twos == o2)

    def index(self) -> np.ndarray:
        t = self.ctx._mask_to_index
        return t[self.ones.astype(np.int64)] + 2 * t[self.twos.astype(np.int64)]


# ----------------------------------------------------------------------
# module-level API


def _digits(e: int, balanced: bool) -> list[int]:
    """Little-endian base-3 digits, in {0,1,2} or balanced {-1,0,1}."""
    out = []
    while e:
        d = e % 3
        if balanced and d == 2:
            d = -1
        out.append(d)
        e = (e - d) // 3
    return out


def ctx_new(modulus: TritPoly | str) -> FieldCtx:
    return FieldCtx(modulus)


@lru_cache(maxsize=None)
def ctx_default(m: int) -> FieldCtx:
    """Lexicographically smallest monic primitive polynomial of degree ``m``
    (coefficient tuples compared from the constant term up)."""
    if not 1 <= m <= MAX_M:
        raise FieldError(f"m={m} outside [1, {MAX_M}]")
    target = 3**m - 1
    # the product of the roots, (-1)^m p(0), must generate F_3^*, i.e. be 2
    c0 = 2 if m % 2 == 0 else 1
    for low in itertools.product(range(3), repeat=m):
        if low[0] != c0 and m > 1:
            continue
        if low[0] == 0:
            continue
        p = TritPoly(list(low) + [1])
        # cheap root test at 1 and -1 before the full irreducibility test
        if m > 1 and (sum(low) + 1) % 3 == 0:
            continue
        if m > 1 and (sum(c * (-1) ** i for i, c in enumerate(low)) + (-1) ** m) % 3 == 0:
            continue
        if is_irreducible(p) and poly_order(p) == target:
            return FieldCtx(p)
    raise FieldError(f"no primitive polynomial of degree {m}")  # pragma: no cover


def frobenius(x: FieldElem, k: int) -> FieldElem:
    """``x^(3^k)``; ``k`` is taken mod m."""
    k %= x.ctx.m
    for _ in range(k):
        x = x * x * x
    return x


def half_power(x: FieldElem) -> int:
    """Quadratic character ``x^((3^m-1)/2)`` as +1 or -1."""
    if x.is_zero():
        raise FieldError("quadratic character of zero")
    v = x ** (x.ctx.n // 2)
    if v == x.ctx.one:
        return 1
    if v == -x.ctx.one:
        return -1
    raise FieldError("x^s is not +-1")  # pragma: no cover


def parse_field_spec(text: str) -> FieldCtx:
    """``"m=4,mod=x^4+2x^3+2"`` or ``"m=4"``."""
    text = text.strip()
    m = None
    mod = None
    head, sep, tail = text.partition("mod=")
    if sep:
        mod = parse_poly(tail)
    for part in head.split(","):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        if key.strip() != "m":
            raise ValueError(f"bad field spec {text!r}")
        m = int(val)
    if mod is None:
        if m is None:
            raise ValueError(f"bad field spec {text!r}")
        return ctx_default(m)
    if m is not None and mod.degree != m:
        raise ValueError(f"modulus degree {mod.degree} does not match m={m}")
    return FieldCtx(mod)
