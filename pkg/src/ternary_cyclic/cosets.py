"""3-cyclotomic cosets modulo 3^m - 1."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd


@dataclass(frozen=True)
class Coset:
    leader: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members


@lru_cache(maxsize=None)
def _cached(j: int, m: int) -> Coset:
    n = 3**m - 1
    orbit = [j]
    k = j * 3 % n
    while k != j:
        orbit.append(k)
        k = k * 3 % n
    return Coset(leader=min(orbit), members=tuple(sorted(orbit)))


def coset(j: int, m: int) -> Coset:
    """The orbit of ``j`` under multiplication by 3 mod ``3^m - 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    n = 3**m - 1
    return _cached(j % n, m)


def same_coset(a: int, b: int, m: int) -> bool:
    n = 3**m - 1
    return b % n in coset(a, m)


def coset_leaders(m: int) -> list[int]:
    n = 3**m - 1
    seen = bytearray(n)
    leaders = []
    for j in range(n):
        if seen[j]:
            continue
        leaders.append(j)
        k = j
        while not seen[k]:
            seen[k] = 1
            k = k * 3 % n
    return leaders


def coset_size_predicted(e: int, m: int) -> tuple[int, str] | None:
    """Size promised by the known coset-size rules, with the rule that fired.

    Returns ``None`` when none of the rules applies.  Rule tags:
    ``"gcd"`` (gcd(e, n) <= 2), ``"gcd-product"`` (gcd(e,n)*gcd(3^j-1,n) never
    0 mod n), ``"3^k+1"`` and ``"(3^h+5)/2"``.
    """
    n = 3**m - 1
    if not 1 <= e <= n - 1:
        return None
    g = gcd(e, n)
    if 1 <= g <= 2:
        return m, "gcd"
    if all(g * gcd(3**j - 1, n) % n for j in range(1, m)):
        return m, "gcd-product"
    for k in range(1, m):
        if e == 3**k + 1:
            if m % 2:
                return m, "3^k+1"
            return (m // 2 if 2 * k == m else m), "3^k+1"
    if m % 2:
        for h in range(1, m + 1, 2):
            if (3**h + 5) // 2 == e:
                return m, "(3^h+5)/2"
    return None


# numbering used in CLI output
RULE_NUMBER = {"gcd": 1, "gcd-product": 1, "3^k+1": 2, "(3^h+5)/2": 3}
