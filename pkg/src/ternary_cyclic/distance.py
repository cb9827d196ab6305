"""Minimum-distance machinery for ternary cyclic codes.

Three independent routes:

* :func:`find_low_weight` searches for codewords of weight <= 3 directly from
  the zero set, in the discrete-log domain (exp/log and Zech tables).
* ``weight3_reduced_*`` scan the single-variable equations that weight-3
  codewords reduce to for each code shape, using polynomial-basis power
  tables over the whole field.
* :func:`exact_min_distance` enumerates codewords (or the dual code plus the
  MacWilliams transform) for tiny parameters.

:func:`optimality_bound` evaluates the A_p(n, d) upper bound with exact
integers.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from math import comb, gcd

import numpy as np

from .codes import CyclicCode
from .field import EXHAUSTIVE_CAP, FieldCtx, FieldElem, check_cap
from .polyf3 import TritPoly, poly_divrem

ENUMERATION_BUDGET = 3**12
WEIGHT4_CAP = 6


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class WeightWitness:
    """Codeword ``sum c_j x^{s_j}``; positions are exponents of alpha."""

    weight: int
    support_exponents: tuple[int, ...]
    coefficients: tuple[int, ...]

    def holds(self, code: CyclicCode) -> bool:
        """Re-check with scalar field arithmetic (no log tables)."""
        ctx = code.ctx
        for i in code.zeros:
            acc = ctx.zero
            for s, c in zip(self.support_exponents, self.coefficients):
                acc = acc + ctx.alpha_pow(i * s) * c
            if not acc.is_zero():
                return False
        return len(set(self.support_exponents)) == self.weight and all(c in (1, 2) for c in self.coefficients)

    def poly(self, n: int) -> TritPoly:
        coeffs = [0] * n
        for s, c in zip(self.support_exponents, self.coefficients):
            coeffs[s % n] = c
        return TritPoly(coeffs)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["support_exponents"] = list(self.support_exponents)
        d["coefficients"] = list(self.coefficients)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> WeightWitness:
        return cls(d["weight"], tuple(d["support_exponents"]), tuple(d["coefficients"]))


# ----------------------------------------------------------------------
# generic oracle (log domain)


def _log_coeff(c: int, n: int) -> int:
    return 0 if c == 1 else n // 2


def _pivot(zeros, n):
    return min(zeros, key=lambda i: (gcd(i, n), i))


def _sum_is_minus_one(a, b, zech, n):
    """For logs ``a`` and ``b``: does ``alpha^a + alpha^b == -1``?"""
    zd = zech[(b - a) % n]
    return (zd >= 0) & ((a + zd) % n == n // 2)


def _weight2(code: CyclicCode, zech) -> WeightWitness | None:
    n = code.n
    s = np.arange(1, n, dtype=np.int64)
    hits = []
    for c1 in (1, 2):
        ok = np.ones(len(s), dtype=bool)
        want = (n // 2 - _log_coeff(c1, n)) % n
        for i in code.zeros:
            ok &= (i * s) % n == want
        if ok.any():
            hits.append((int(s[ok.argmax()]), c1))
    if not hits:
        return None
    s1, c1 = min(hits)
    return WeightWitness(2, (s1, 0), (c1, 1))


def _weight3(code: CyclicCode, zech) -> WeightWitness | None:
    n = code.n
    i0 = _pivot(code.zeros, n)
    g = gcd(i0, n)
    ng = n // g
    inv = pow(i0 // g, -1, ng) if ng > 1 else 0
    s1 = np.arange(1, n, dtype=np.int64)
    best = None
    for pattern, (c1, c2) in enumerate(((1, 1), (1, 2), (2, 1), (2, 2))):
        d1, d2 = _log_coeff(c1, n), _log_coeff(c2, n)
        z = zech[(i0 * s1 + d1) % n]
        t = (z + n // 2 - d2) % n
        ok1 = (z >= 0) & (t % g == 0)
        base = ((t // g) * inv) % ng
        s2 = base[:, None] + ng * np.arange(g, dtype=np.int64)[None, :]
        ok = ok1[:, None] & (s2 != 0) & (s2 != s1[:, None])
        for i in code.zeros:
            if i == i0:
                continue
            a = (i * s1 + d1)[:, None] % n
            b = (i * s2 + d2) % n
            ok &= _sum_is_minus_one(a, b, zech, n)
        if ok.any():
            r, j = np.unravel_index(int(ok.argmax()), ok.shape)
            cand = (int(s1[r]), pattern, int(j), int(s2[r, j]), c1, c2)
            if best is None or cand[:3] < best[:3]:
                best = cand
    if best is None:
        return None
    a, _, _, b, c1, c2 = best
    return WeightWitness(3, (a, b, 0), (c1, c2, 1))


def find_low_weight(
    code: CyclicCode, max_w: int = 3, cap: int = EXHAUSTIVE_CAP, force: bool = False
) -> WeightWitness | None:
    """Smallest-weight codeword of weight <= ``max_w`` (at most 3), or None.

    Shifts and scalings are normalized away: the last support position is
    alpha^0 with coefficient 1.  For weight 3 one zero exponent (the one
    with the smallest gcd with n) is used to solve for the remaining
    position, the others are checked.
    """
    if max_w > 3:
        raise ValueError("max_w above 3; use find_weight4")
    check_cap(code.m, cap, force)
    # a single term c*alpha^(i*s) never vanishes
    if max_w < 2:
        return None
    zech = code.ctx.zech
    w = _weight2(code, zech)
    if w is not None or max_w < 3:
        return w
    return _weight3(code, zech)


def find_weight4(code: CyclicCode, cap: int = WEIGHT4_CAP, force: bool = False) -> WeightWitness | None:
    """First weight-4 codeword (positions ``s1 < s2``, ``s3``, 0), small m only."""
    check_cap(code.m, cap, force)
    n = code.n
    zech = code.ctx.zech
    i0 = _pivot(code.zeros, n)
    g = gcd(i0, n)
    ng = n // g
    inv = pow(i0 // g, -1, ng) if ng > 1 else 0
    others = [i for i in code.zeros if i != i0]
    h = n // 2
    for s1 in range(1, n):
        s2 = np.arange(s1 + 1, n, dtype=np.int64)
        if not len(s2):
            break
        for c1 in (1, 2):
            for c2 in (1, 2):
                for c3 in (1, 2):
                    d1, d2, d3 = (_log_coeff(c, n) for c in (c1, c2, c3))
                    # log of c1 a^(i0 s1) + c2 a^(i0 s2) + 1
                    a = (i0 * s1 + d1) % n
                    b = (i0 * s2 + d2) % n
                    zab = zech[(b - a) % n]
                    lab = (a + zab) % n
                    z = np.where(zab >= 0, zech[lab], 0)
                    # zab < 0: the first two terms cancel, the sum is 1 (log 0)
                    ok1 = (zab < 0) | (z >= 0)
                    t = (np.where(zab >= 0, z, 0) + h - d3) % n
                    ok1 &= t % g == 0
                    base = ((t // g) * inv) % ng
                    s3 = base[:, None] + ng * np.arange(g, dtype=np.int64)[None, :]
                    ok = ok1[:, None] & (s3 != 0) & (s3 != s1) & (s3 != s2[:, None])
                    for i in others:
                        ok &= _vanishes(
                            [(i * s1 + d1) % n, (i * s2[:, None] + d2) % n, (i * s3 + d3) % n], zech, n
                        )
                    if ok.any():
                        r, j = np.unravel_index(int(ok.argmax()), ok.shape)
                        return WeightWitness(
                            4, (s1, int(s2[r]), int(s3[r, j]), 0), (c1, c2, c3, 1)
                        )
    return None


def _vanishes(logs, zech, n):
    """Does ``sum alpha^l + 1`` vanish, for log arrays ``logs`` (broadcast)?"""
    # fold terms: track (is_zero, log) of the partial sum
    zero = np.zeros(np.broadcast(*logs).shape, dtype=bool)
    acc = np.broadcast_to(logs[0], zero.shape).astype(np.int64)
    for lt in logs[1:]:
        lt = np.broadcast_to(lt, zero.shape)
        zd = zech[(lt - acc) % n]
        new_zero = ~zero & (zd < 0)
        acc = np.where(zero, lt, (acc + np.maximum(zd, 0)) % n)
        zero = new_zero
    return ~zero & (acc == n // 2)


# ----------------------------------------------------------------------
# reduced single-variable equations (polynomial basis)


class ParityFail:
    """The exponent has the wrong parity for the reduction to apply;
    low-weight (weight 2) codewords exist."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ParityFail"


PARITY_FAIL = ParityFail()


def _first_outside_f3(mask: np.ndarray) -> int | None:
    mask = mask.copy()
    mask[:3] = False
    if not mask.any():
        return None
    return int(mask.argmax())


class _Scan:
    """Whole-field views shared by the reduced scans."""

    def __init__(self, ctx: FieldCtx, cap: int, force: bool):
        check_cap(ctx.m, cap, force)
        self.ctx = ctx
        self.x = ctx._all
        self.idx = np.arange(ctx.size, dtype=np.int64)

    def elems(self, idx) -> object:
        return self.x[idx]

    def power(self, e: int) -> np.ndarray:
        return self.ctx.power_table(e)


def weight3_reduced_c01e(ctx: FieldCtx, e: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    """First ``x`` outside F_3 with ``x^e + (-(x+1))^e + 1 = 0``, or None.

    For even ``e`` this is ``(x+1)^e + x^e + 1 = 0``; the sign keeps the
    reduction exact for odd ``e`` too.
    """
    sc = _Scan(ctx, cap, force)
    p = sc.power(e)
    plus1 = (sc.x + 1).index()
    sign = 1 if e % 2 == 0 else 2
    val = sc.elems(p) + sc.elems(p[plus1]) * sign + 1
    hit = _first_outside_f3(val.is_zero())
    return None if hit is None else ctx.from_index(hit)


def weight3_reduced_1es(ctx: FieldCtx, e: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    """Reduced weight-3 system for C_(1,e,s), s = (3^m-1)/2.

    With the third position at 1 and coefficient 1, the zero at 1 fixes
    ``y = -c2 (c1 x + 1)``; the zero at s becomes a quadratic-character
    condition ``c1 chi(x) + c2 chi(y) + 1 = 0`` in F_3.  Returns the first
    ``x`` (counter order) over the four sign patterns, ``PARITY_FAIL`` when
    weight-2 words exist (m and e both odd), else None.
    """
    if ctx.m % 2 and e % 2:
        return PARITY_FAIL
    sc = _Scan(ctx, cap, force)
    pe = sc.power(e)
    chi = sc.power(ctx.n // 2)  # counter index 1 or 2 is the F_3 value
    best = None
    for c1 in (1, 2):
        for c2 in (1, 2):
            y = (sc.x * c1 + 1) * ((-c2) % 3)
            yi = y.index()
            ok = (yi != 0) & (yi != 1) & (yi != sc.idx)
            ok &= (c1 * chi + c2 * chi[yi] + 1) % 3 == 0
            val = sc.elems(pe) * c1 + sc.elems(pe[yi]) * c2 + 1
            ok &= val.is_zero()
            ok[0] = False
            ok[1] = False
            if ok.any():
                hit = int(ok.argmax())
                best = hit if best is None else min(best, hit)
    return None if best is None else ctx.from_index(best)


def weight3_reduced_1e(ctx: FieldCtx, e: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    """Criterion for C_(1,e): ``e`` even and neither ``(x+1)^e + x^e + 1`` nor
    ``(x+1)^e - x^e - 1`` vanishes outside F_3.  Returns the first root,
    ``PARITY_FAIL`` for odd ``e``, else None."""
    if e % 2:
        return PARITY_FAIL
    sc = _Scan(ctx, cap, force)
    p = sc.power(e)
    a = sc.elems(p[(sc.x + 1).index()])
    b = sc.elems(p)
    hit = _first_outside_f3((a + b + 1).is_zero() | (a - b - 1).is_zero())
    return None if hit is None else ctx.from_index(hit)


def weight3_reduced_2e(ctx: FieldCtx, e: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    """Criterion for C_(2,e): ``e`` odd and neither ``(1+x^2)^e - (1+x^e)^2`` nor
    ``(1+x^2)^e + (1+x^e)^2`` vanishes outside F_3."""
    if e % 2 == 0:
        return PARITY_FAIL
    sc = _Scan(ctx, cap, force)
    p = sc.power(e)
    lhs = sc.elems(p[(sc.x * sc.x + 1).index()])
    rhs = sc.elems(p) + 1
    rhs = rhs * rhs
    hit = _first_outside_f3((lhs - rhs).is_zero() | (lhs + rhs).is_zero())
    return None if hit is None else ctx.from_index(hit)


class Shape(str, enum.Enum):
    C01E = "0,1,e"
    C1ES = "1,e,s"
    C1E = "1,e"
    C2E = "2,e"

    def zeros(self, e: int, m: int) -> tuple[int, ...]:
        s = (3**m - 1) // 2
        return {
            Shape.C01E: (0, 1, e),
            Shape.C1ES: (1, e, s),
            Shape.C1E: (1, e),
            Shape.C2E: (2, e),
        }[self]


REDUCED = {
    Shape.C01E: weight3_reduced_c01e,
    Shape.C1ES: weight3_reduced_1es,
    Shape.C1E: weight3_reduced_1e,
    Shape.C2E: weight3_reduced_2e,
}


def reduced_check(shape: Shape, ctx: FieldCtx, e: int, cap: int = EXHAUSTIVE_CAP, force: bool = False):
    return REDUCED[Shape(shape)](ctx, e, cap, force)


def reduced_says_low_weight(result) -> bool:
    return result is not None


# ----------------------------------------------------------------------
# exact enumeration


def _generator_matrix(g: TritPoly, n: int) -> np.ndarray:
    k = n - g.degree
    row = np.array(g.coeffs + [0] * (n - g.degree - 1), dtype=np.int64)
    return np.stack([np.roll(row, j) for j in range(k)])


def _weights(gen: np.ndarray, chunk: int = 1 << 16) -> np.ndarray:
    """Weight distribution of the row space of ``gen`` over F_3."""
    k, n = gen.shape
    total = 3**k
    counts = np.zeros(n + 1, dtype=np.int64)
    pw = 3 ** np.arange(k, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // pw[None, :]) % 3
        words = digits @ gen % 3
        counts += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return counts


def krawtchouk(j: int, i: int, n: int, q: int = 3) -> int:
    return sum((-1) ** l * (q - 1) ** (j - l) * comb(i, l) * comb(n - i, j - l) for l in range(j + 1))


def macwilliams(dual_counts, n: int, q: int = 3) -> list[int]:
    """Weight distribution of a code from that of its dual."""
    size = int(sum(dual_counts))
    out = []
    for j in range(n + 1):
        s = sum(int(b) * krawtchouk(j, i, n, q) for i, b in enumerate(dual_counts) if b)
        if s % size:
            raise ArithmeticError("MacWilliams transform is not integral")
        out.append(s // size)
    return out


def exact_min_distance(code: CyclicCode, budget: int = ENUMERATION_BUDGET, allow_dual: bool = False) -> int:
    """True minimum distance by enumerating every codeword.

    With ``allow_dual`` the dual code (generated by the reciprocal parity-check
    polynomial) is enumerated instead when that is smaller, and the weight
    distribution is recovered with the MacWilliams identity.
    """
    n, k = code.n, code.k
    if 3**k <= budget:
        counts = _weights(_generator_matrix(code.generator, n))
        nz = np.flatnonzero(counts[1:])
        return int(nz[0]) + 1 if len(nz) else 0
    if allow_dual and 3 ** (n - k) <= budget:
        xn1 = TritPoly.monomial(n) - 1
        h, r = poly_divrem(xn1, code.generator)
        assert r.is_zero()
        hrec = TritPoly(list(reversed(h.coeffs))).monic()
        dual = _weights(_generator_matrix(hrec, n))
        dist = macwilliams(dual, n)
        if dist[0] != 1:
            raise ArithmeticError("MacWilliams transform lost A_0 = 1")
        return next(j for j in range(1, n + 1) if dist[j])
    raise BudgetExceeded(f"3^{k} codewords exceed the enumeration budget {budget}")


# ----------------------------------------------------------------------
# optimality bound


class Verdict(str, enum.Enum):
    EXCLUDED = "Excluded"
    NOT_EXCLUDED = "NotExcluded"


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    t: int
    r: int
    bound: int
    denominator: int
    code_size: int | None
    verdict: Verdict | None
    k: int | None = None
    p: int = 3

    def to_dict(self) -> dict:
        # the integers have up to ~10^6 digits; keep the exact exponent form
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "p": self.p,
            "t": self.t,
            "r": self.r,
            "bound": f"floor({self.p}^{self.t + 2 * self.r} / {self.denominator})",
            "denominator": self.denominator,
            "code_size": None if self.k is None else f"{self.p}^{self.k}",
            "verdict": None if self.verdict is None else self.verdict.value,
        }

    @classmethod
    def from_dict(cls, d: dict) -> BoundReport:
        return optimality_bound(d["n"], d["d"], k=d["k"], p=d.get("p", 3))


def optimality_bound(n: int, d: int, k: int | None = None, p: int = 3) -> BoundReport:
    """``A_p(n,d) <= p^(t+2r) / sum_{i<=r} C(t+2r, i)(p-1)^i``.

    ``bound`` is the floor of the right-hand side; with ``k`` the verdict says
    whether a code with ``p^k`` words and distance ``d`` is excluded.
    """
    if not 1 <= d <= n:
        raise ValueError("need 1 <= d <= n")
    if p < 3:
        raise ValueError("bound needs p >= 3")
    t = n - d + 1
    r = min((n - t) // 2, (t - 1) // (p - 2))
    top = p ** (t + 2 * r)
    den = sum(comb(t + 2 * r, i) * (p - 1) ** i for i in range(r + 1))
    size = None if k is None else p**k
    verdict = None
    if size is not None:
        verdict = Verdict.EXCLUDED if size * den > top else Verdict.NOT_EXCLUDED
    return BoundReport(n, d, t, r, top // den, den, size, verdict, k, p)
