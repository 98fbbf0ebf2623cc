"""Finitary set functors as flat equational presentations.

A presentation is a signature of operation symbols with arities plus
equations between flat terms ``sigma(v_1, ..., v_n) = tau(w_1, ..., w_m)``.
Its value at a finite set X is the set of term instances ``sigma(x_1, ...)``
with arguments in X, modulo every substitution instance of the equations
with variables valued in X.  Over the empty set only nullary symbols give
instances, which is what makes C01 of the empty set empty.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass
from typing import NamedTuple, Protocol

from scipy.cluster.hierarchy import DisjointSet

from gradcat.errors import ContractViolation, ResourceGuardError
from gradcat.finset import FinMap, FinSet, label_key

DEFAULT_GUARD = 10**6
_guard_override: int | None = None


def guard_limit() -> int:
    if _guard_override is not None:
        return _guard_override
    env = os.environ.get("GRADCAT_GUARD")
    return int(env) if env else DEFAULT_GUARD


def set_guard(limit: int | None) -> None:
    """Override the instance-count guard (None restores env/default)."""
    global _guard_override
    _guard_override = limit


class Term(NamedTuple):
    sym: str
    args: tuple

    def __repr__(self) -> str:
        return f"{self.sym}({', '.join(map(repr, self.args))})"


class SetFunctor(Protocol):
    name: str

    def obj(self, X: FinSet) -> FinSet: ...

    def mor(self, f: FinMap) -> FinMap: ...


@dataclass(frozen=True)
class Presentation:
    name: str
    ops: tuple  # ((sym, arity), ...)
    eqs: tuple = ()  # ((Term pattern, Term pattern), ...) with variable names as args

    def __post_init__(self):
        arity = {}
        for sym, n in self.ops:
            if sym in arity:
                raise ContractViolation(f"symbol {sym!r} declared twice")
            if n < 0:
                raise ContractViolation(f"symbol {sym!r} has negative arity")
            arity[sym] = n
        for k, (lhs, rhs) in enumerate(self.eqs):
            for side in (lhs, rhs):
                if side.sym not in arity:
                    raise ContractViolation(f"equation {k} uses undeclared symbol {side.sym!r}")
                if len(side.args) != arity[side.sym]:
                    raise ContractViolation(
                        f"equation {k}: {side.sym!r} has arity {arity[side.sym]}, got {len(side.args)}")

    @classmethod
    def build(cls, name: str, ops, eqs=()) -> Presentation:
        """Convenience constructor from plain tuples/lists."""
        ops = tuple((str(s), int(n)) for s, n in ops)
        eqs = tuple((Term(l[0], tuple(map(str, l[1]))), Term(r[0], tuple(map(str, r[1]))))
                    for l, r in eqs)
        return cls(name, ops, eqs)

    def arity(self, sym: str) -> int:
        return dict(self.ops)[sym]

    def obj(self, X: FinSet) -> FinSet:
        return evaluate(self, X).carrier

    def mor(self, f: FinMap) -> FinMap:
        return eval_mor(self, f)

    @classmethod
    def from_json(cls, doc: dict) -> Presentation:
        ops = [(o["sym"], o["arity"]) for o in doc["ops"]]
        eqs = [((e["lhs"]["op"], e["lhs"]["args"]), (e["rhs"]["op"], e["rhs"]["args"]))
               for e in doc.get("eqs", [])]
        return cls.build(doc["name"], ops, eqs)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ops": [{"sym": s, "arity": n} for s, n in self.ops],
            "eqs": [{"lhs": {"op": l.sym, "args": list(l.args)},
                     "rhs": {"op": r.sym, "args": list(r.args)}} for l, r in self.eqs],
        }


@dataclass(frozen=True)
class Evaluation:
    carrier: FinSet  # class representatives
    rep: dict  # every term instance -> representative of its class


def instance_count(H: Presentation, n: int) -> int:
    terms = sum(n**a for _, a in H.ops)
    subst = sum(n ** len(set(l.args) | set(r.args)) for l, r in H.eqs)
    return terms + subst


def term_instances(H: Presentation, X: FinSet) -> list[Term]:
    return [Term(sym, args) for sym, n in H.ops for args in itertools.product(X.elements, repeat=n)]


@functools.lru_cache(maxsize=4096)
def _evaluate(H: Presentation, X: FinSet) -> Evaluation:
    instances = term_instances(H, X)
    classes = DisjointSet(instances)
    for lhs, rhs in H.eqs:
        variables = sorted(set(lhs.args) | set(rhs.args))
        for values in itertools.product(X.elements, repeat=len(variables)):
            env = dict(zip(variables, values))
            classes.merge(Term(lhs.sym, tuple(env[v] for v in lhs.args)),
                          Term(rhs.sym, tuple(env[v] for v in rhs.args)))
    rep = {}
    for block in classes.subsets():
        least = min(block, key=label_key)
        for t in block:
            rep[t] = least
    return Evaluation(FinSet(set(rep.values())), rep)


def evaluate(H: Presentation, X: FinSet) -> Evaluation:
    needed = instance_count(H, len(X))
    bound = guard_limit()
    if needed > bound:
        raise ResourceGuardError(needed, bound)
    return _evaluate(H, X)


def eval_obj(H: SetFunctor, X: FinSet) -> FinSet:
    return H.obj(X)


@functools.lru_cache(maxsize=65536)
def _eval_mor(H: Presentation, f: FinMap) -> FinMap:
    src = evaluate(H, f.dom)
    dst = evaluate(H, f.cod)
    d = f.as_dict()
    image = {}
    for t, r in src.rep.items():
        target = dst.rep[Term(t.sym, tuple(d[a] for a in t.args))]
        if image.setdefault(r, target) != target:
            raise ContractViolation(f"{H.name}: map is not well defined on the class of {r!r}")
    return FinMap(src.carrier, dst.carrier, tuple(image[r] for r in src.carrier))


def eval_mor(H: SetFunctor, f: FinMap) -> FinMap:
    if isinstance(H, Presentation):
        return _eval_mor(H, f)
    return H.mor(f)


# --- built-in presentations ----------------------------------------------

def identity_functor() -> Presentation:
    return Presentation.build("id", [("v", 1)])


def c01() -> Presentation:
    return Presentation.build("c01", [("u", 1)], [(("u", ["x"]), ("u", ["y"]))])


def constant_one() -> Presentation:
    return Presentation.build("constant-1", [("c", 0)])


def square() -> Presentation:
    return Presentation.build("square", [("p", 2)])


def x_plus_x() -> Presentation:
    return Presentation.build("x-plus-x", [("l", 1), ("r", 1)])


def hom_functor(w: int) -> Presentation:
    """Set(W, -) for |W| = w: one w-ary symbol and no equations."""
    return Presentation.build(f"hom:{w}", [("h", w)])


BUILTIN_NAMES = ("c01", "id", "constant-1", "square", "x-plus-x", "hom:W", "evconst:d")


def builtin(name: str) -> SetFunctor:
    from gradcat.functors.evseq import EvSeqFunctor

    simple = {
        "c01": c01, "id": identity_functor, "constant-1": constant_one,
        "square": square, "x-plus-x": x_plus_x,
    }
    if name in simple:
        return simple[name]()
    kind, _, param = name.partition(":")
    if kind in ("hom", "evconst") and param.isdigit():
        return hom_functor(int(param)) if kind == "hom" else EvSeqFunctor(int(param))
    raise KeyError(name)
