"""Registry of known optimal-exponent families, loaded from a data file.

The record schema is documented at the top of ``data/known_families.txt``.
Expressions are evaluated by a small AST walker over exact rationals, so a
data file can never run arbitrary code.
"""

from __future__ import annotations

import ast
import enum
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd

from sympy import isprime


class CodeShape(str, enum.Enum):
    C_1V = "C_1v"
    C_UV = "C_uv"
    C_01E = "C_01e"
    C_1ES = "C_1es"


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class KnownFamily:
    shape: CodeShape
    source: str
    rule_id: str
    params: tuple[tuple[str, str], ...]
    conditions: str

    def __str__(self):
        return f"{self.rule_id} [{self.source}]"


@dataclass(frozen=True)
class FamilyInstance:
    family: KnownFamily
    e: int
    u: int | None
    bindings: tuple[tuple[str, int], ...]

    def to_dict(self) -> dict:
        return {
            "rule_id": self.family.rule_id,
            "source": self.family.source,
            "shape": self.family.shape.value,
            "e": self.e,
            "u": self.u,
            "params": dict(self.bindings),
        }


# ----------------------------------------------------------------------
# expression evaluation

_BIN = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
    ast.Pow: operator.pow,
}
_CMP = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}


def _int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise RegistryError(f"non-integral value {x}")
        return int(x)
    return int(x)


def solve_congruence(a: int, b: int, n: int) -> list[int]:
    """All ``v`` in ``[0, n)`` with ``a*v = b (mod n)``."""
    g = gcd(a, n)
    if b % g:
        return []
    ng = n // g
    v0 = (b // g) * pow(a // g, -1, ng) % ng if ng > 1 else 0
    return [v0 + j * ng for j in range(g)]


class _Evaluator:
    def __init__(self, env: dict):
        self.env = env

    def __call__(self, text: str):
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise RegistryError(f"cannot parse {text!r}") from exc
        return self.visit(tree.body)

    def visit(self, node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id == "true":
                return True
            if node.id not in self.env:
                raise RegistryError(f"unknown name {node.id!r}")
            return Fraction(self.env[node.id])
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            a, b = self.visit(node.left), self.visit(node.right)
            if isinstance(node.op, ast.Pow):
                return Fraction(_int(a) ** _int(b))
            if isinstance(node.op, (ast.FloorDiv, ast.Mod)):
                return Fraction(_BIN[type(node.op)](_int(a), _int(b)))
            return _BIN[type(node.op)](a, b)
        if isinstance(node, ast.UnaryOp):
            v = self.visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            if isinstance(node.op, ast.Not):
                return not v
        if isinstance(node, ast.BoolOp):
            vals = (self.visit(v) for v in node.values)
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Compare):
            left = self.visit(node.left)
            for op, comp in zip(node.ops, node.comparators):
                right = self.visit(comp)
                if type(op) not in _CMP or not _CMP[type(op)](left, right):
                    return False
                left = right
            return True
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            args = [self.visit(a) for a in node.args]
            name = node.func.id
            if name == "gcd":
                return Fraction(gcd(*(_int(a) for a in args)))
            if name == "isprime":
                return bool(isprime(_int(args[0])))
            if name == "solve":
                n = _int(self.env["n"])
                return [Fraction(v) for v in solve_congruence(_int(args[0]) % n, _int(args[1]) % n, n)]
        raise RegistryError(f"unsupported expression: {ast.dump(node)}")


# ----------------------------------------------------------------------
# loading


def parse_record(line: str) -> KnownFamily:
    fields = [f.strip() for f in line.split("|")]
    if len(fields) != 5:
        raise RegistryError(f"expected 5 fields: {line!r}")
    shape, source, rule_id, params, cond = fields
    bindings = []
    for part in params.split(";"):
        name, sep, expr = part.partition("=")
        if not sep:
            raise RegistryError(f"bad parameter binding {part!r}")
        bindings.append((name.strip(), expr.strip()))
    if not any(n == "e" for n, _ in bindings):
        raise RegistryError(f"{rule_id}: no e= binding")
    try:
        shape = CodeShape(shape)
    except ValueError as exc:
        raise RegistryError(f"unknown shape {shape!r}") from exc
    return KnownFamily(shape, source, rule_id, tuple(bindings), cond or "true")


def load_text(text: str) -> tuple[KnownFamily, ...]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_record(line))
    ids = [f.rule_id for f in out]
    if len(set(ids)) != len(ids):
        raise RegistryError("duplicate rule ids")
    return tuple(out)


@lru_cache(maxsize=1)
def load_registry() -> tuple[KnownFamily, ...]:
    text = resources.files(__package__).joinpath("data/known_families.txt").read_text()
    return load_text(text)


def _expand(family: KnownFamily, m: int):
    n = 3**m - 1
    envs = [{"m": m, "n": n}]
    for name, expr in family.params:
        lo, dots, hi = expr.partition("..")
        if dots:
            nxt = []
            for env in envs:
                ev = _Evaluator(env)
                for v in range(_int(ev(lo)), _int(ev(hi)) + 1):
                    nxt.append({**env, name: v})
            envs = nxt
        elif name in ("u", "e"):
            for env in envs:
                env["_" + name] = expr
        else:
            raise RegistryError(f"{family.rule_id}: unknown binding {name!r}")
    for env in envs:
        ev = _Evaluator(env)
        if not ev(family.conditions):
            continue
        u = None if "_u" not in env else _int(ev(env["_u"])) % n
        val = ev(env["_e"])
        values = val if isinstance(val, list) else [val]
        binds = tuple((k, v) for k, v in env.items() if k not in ("m", "n", "_u", "_e"))
        for v in values:
            yield _int(v) % n, u, binds


def instances(family: KnownFamily, m: int) -> list[FamilyInstance]:
    """Every exponent the family produces at ``m`` (deduplicated, in order)."""
    n = 3**m - 1
    seen = set()
    out = []
    for e, u, binds in _expand(family, m):
        if not 1 <= e <= n - 1:
            continue
        if family.shape is CodeShape.C_1V and e % 2:
            continue
        if (e, u) in seen:
            continue
        seen.add((e, u))
        out.append(FamilyInstance(family, e, u, binds))
    return out


def known_exponents(shape, m: int, u: int | None = None) -> list[FamilyInstance]:
    """All registry instances of ``shape`` at ``m`` (for C_uv optionally one ``u``)."""
    shape = CodeShape(shape)
    out = []
    for fam in load_registry():
        if fam.shape is not shape:
            continue
        for inst in instances(fam, m):
            if u is not None and inst.u != u:
                continue
            out.append(inst)
    return out
