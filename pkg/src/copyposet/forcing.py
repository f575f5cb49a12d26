"""Symbolic poset expressions and the structural factorization of copy posets.

``factorize`` rewrites sq(P(alpha)) as a forcing product over the CNF
exponents of alpha, dropping the finite tail; ``rp_refine`` expresses
sq(P(w^(delta+n))) through iterated reduced powers of the quotient algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    OMEGA, OrdinalTerm, OrdinalError, compare, omega_power, pretty, term_to_obj,
)
from .cardinals import CardinalExpr, render_expr


@dataclass(frozen=True)
class PosetExpr:
    kind: str
    # copy: alpha | sq: arg | prod: factors (expr, mult) | cp: kappa | col: (lam, kappa)
    # rp: (n, base) | quot: delta (the algebra P(w^delta)/I) | pos: arg | iter: (first, tag)
    # ro: arg
    alpha: OrdinalTerm | None = None
    delta: OrdinalTerm | None = None
    kappa: CardinalExpr | None = None
    lam: CardinalExpr | None = None
    n: int | None = None
    args: tuple = ()
    factors: tuple = ()  # ((PosetExpr, multiplicity), ...)
    tag: str | None = None

    def __repr__(self) -> str:
        return f"<{render_poset(self)}>"


def copy_poset(alpha: OrdinalTerm) -> PosetExpr:
    return PosetExpr("copy", alpha=alpha)


def sep_quotient(p: PosetExpr) -> PosetExpr:
    return PosetExpr("sq", args=(p,))


def sq_copies(alpha: OrdinalTerm) -> PosetExpr:
    return sep_quotient(copy_poset(alpha))


def product(factors: list[tuple[PosetExpr, int]]) -> PosetExpr:
    if any(m < 1 for _p, m in factors):
        raise OrdinalError("product multiplicities must be positive")
    if len(factors) == 1 and factors[0][1] == 1:
        return factors[0][0]
    return PosetExpr("prod", factors=tuple(factors))


def cp(kappa: CardinalExpr) -> PosetExpr:
    return PosetExpr("cp", kappa=kappa)


def col(lam: CardinalExpr, kappa: CardinalExpr) -> PosetExpr:
    return PosetExpr("col", lam=lam, kappa=kappa)


def quotient_algebra(delta: OrdinalTerm) -> PosetExpr:
    return PosetExpr("quot", delta=delta)


def reduced_power(n: int, base: PosetExpr) -> PosetExpr:
    return PosetExpr("rp", n=n, args=(base,))


def positive_part(base: PosetExpr) -> PosetExpr:
    return PosetExpr("pos", args=(base,))


def iteration(first: PosetExpr, tag: str) -> PosetExpr:
    return PosetExpr("iter", args=(first,), tag=tag)


def ro(base: PosetExpr) -> PosetExpr:
    return PosetExpr("ro", args=(base,))


def render_poset(p: PosetExpr) -> str:
    if p.kind == "copy":
        return f"P({pretty(p.alpha)})"
    if p.kind == "sq":
        return f"sq({render_poset(p.args[0])})"
    if p.kind == "prod":
        parts = []
        for q, m in p.factors:
            txt = render_poset(q)
            parts.append(txt if m == 1 else f"{txt}^{m}")
        return " x ".join(parts)
    if p.kind == "cp":
        return f"CP({render_expr(p.kappa)})"
    if p.kind == "col":
        return f"Col({render_expr(p.lam)}, {render_expr(p.kappa)})"
    if p.kind == "rp":
        return f"rp^{p.n}({render_poset(p.args[0])})"
    if p.kind == "quot":
        return f"P(w^({pretty(p.delta)}))/I"
    if p.kind == "pos":
        return f"({render_poset(p.args[0])})+"
    if p.kind == "iter":
        return f"{render_poset(p.args[0])} * pi[{p.tag}]"
    if p.kind == "ro":
        return f"ro({render_poset(p.args[0])})"
    raise AssertionError(p.kind)


def poset_to_obj(p: PosetExpr) -> dict:
    obj: dict = {"kind": p.kind}
    if p.alpha is not None:
        obj["alpha"] = term_to_obj(p.alpha)
    if p.delta is not None:
        obj["delta"] = term_to_obj(p.delta)
    if p.kappa is not None:
        obj["kappa"] = render_expr(p.kappa)
    if p.lam is not None:
        obj["lambda"] = render_expr(p.lam)
    if p.n is not None:
        obj["n"] = p.n
    if p.args:
        obj["args"] = [poset_to_obj(a) for a in p.args]
    if p.factors:
        obj["factors"] = [[poset_to_obj(q), m] for q, m in p.factors]
    if p.tag is not None:
        obj["tag"] = p.tag
    obj["pretty"] = render_poset(p)
    return obj


def cnf_factors(alpha: OrdinalTerm) -> list[tuple[OrdinalTerm, int]]:
    """(exponent, multiplicity) pairs of alpha's CNF, finite tail dropped."""
    from .terms import exp_term
    return [(exp_term(e), c) for (e, c) in alpha.summands]


def factorize(alpha: OrdinalTerm) -> PosetExpr:
    """sq(P(alpha)) as a product over the CNF exponents, tail discarded."""
    if compare(alpha, OMEGA) < 0:
        raise OrdinalError("factorization requires an infinite ordinal")
    factors = [(sq_copies(omega_power(e)), c) for (e, c) in alpha.summands]
    return product(factors)


def rp_refine(delta: OrdinalTerm, n: int) -> PosetExpr:
    """sq(P(w^(delta+n))) as the positive part of rp^n of P(w^delta)/I."""
    if delta.is_zero():
        raise OrdinalError("reduced-power refinement requires delta >= 1")
    if n < 0:
        raise OrdinalError("the reduced-power index is a natural number")
    if n == 0:
        return positive_part(quotient_algebra(delta))
    return positive_part(reduced_power(n, quotient_algebra(delta)))


@dataclass(frozen=True)
class Step:
    rule: str
    instantiation: tuple = ()  # ((name, value), ...)
    premises: tuple = ()       # strings: "assume: ...", "fact: ...", "case: ..."

    def to_obj(self) -> dict:
        return {"rule": self.rule,
                "instantiation": {k: v for k, v in self.instantiation},
                "premises": list(self.premises)}


@dataclass(frozen=True)
class ForcingFact:
    kind: str  # SigmaClosed | CompletelyEmbeds | Collapses | RoIso | RoNotIso
    #            | ForcingEquivalent | Preserves
    operands: tuple = ()       # PosetExpr / CardinalExpr / str operands
    trace: tuple = ()          # Steps
    resolved: tuple = ()       # ((position, resolved text), ...) for display

    def key(self) -> tuple:
        return (self.kind, tuple(_operand_text(o) for o in self.operands))

    def to_obj(self) -> dict:
        return {"kind": self.kind,
                "operands": [_operand_obj(o) for o in self.operands],
                "pretty": fact_text(self),
                "trace": [s.to_obj() for s in self.trace],
                **({"resolved": {str(i): t for i, t in self.resolved}}
                   if self.resolved else {})}


def _operand_text(o) -> str:
    if isinstance(o, PosetExpr):
        return render_poset(o)
    if isinstance(o, CardinalExpr):
        return render_expr(o)
    return str(o)


def _operand_obj(o):
    if isinstance(o, PosetExpr):
        return poset_to_obj(o)
    if isinstance(o, CardinalExpr):
        return {"cardinal": render_expr(o)}
    return str(o)


def fact_text(f: ForcingFact) -> str:
    ops = [_operand_text(o) for o in f.operands]
    res = dict(f.resolved)
    for i in range(len(ops)):
        if i in res and res[i] != ops[i]:
            ops[i] = f"{ops[i]} (= {res[i]})"
    if f.kind == "SigmaClosed":
        return f"{ops[0]} is sigma-closed"
    if f.kind == "CompletelyEmbeds":
        return f"{ops[0]} completely embeds into {ops[1]}"
    if f.kind == "Collapses":
        return f"{ops[0]} collapses {ops[1]} to {ops[2]}"
    if f.kind == "RoIso":
        return f"ro({ops[0]}) ~ ro({ops[1]})"
    if f.kind == "RoNotIso":
        return f"ro({ops[0]}) is not isomorphic to ro({ops[1]})"
    if f.kind == "ForcingEquivalent":
        return f"{ops[0]} is forcing equivalent to {ops[1]}"
    if f.kind == "Preserves":
        return f"{ops[0]} preserves cardinals {ops[1]}"
    raise AssertionError(f.kind)
