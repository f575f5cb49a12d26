"""Cardinal-arithmetic hypotheses, bounded forward-chaining closure, entailment.

The closure is sound and deliberately incomplete: rules fire over the finite
universe of declared expressions plus subexpressions (and a one-step layer of
successors / cofinalities the rules need), never inventing unbounded towers.
Every derived relation carries a provenance chain for auditing.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .atoms import AtomRegistry, CardinalAtom


class HypothesisError(ValueError):
    pass


class ContradictionError(HypothesisError):
    def __init__(self, message: str, chain: list[str]):
        super().__init__(message)
        self.chain = chain


# -- expressions ---------------------------------------------------------------

@dataclass(frozen=True)
class CardinalExpr:
    kind: str  # aleph0 | atom | c | h | succ | cf | pow2 | pow2lt | exp | cc_cp
    atom: CardinalAtom | None = None
    args: tuple = ()

    def __repr__(self) -> str:
        return f"<{render_expr(self)}>"


ALEPH0 = CardinalExpr("aleph0")
CONTINUUM = CardinalExpr("c")
DIST_H = CardinalExpr("h")

_KIND_ORDER = {"aleph0": 0, "atom": 1, "succ": 2, "c": 3, "h": 4,
               "pow2": 5, "pow2lt": 6, "exp": 7, "cf": 8, "cc_cp": 9}


def skey(e: CardinalExpr) -> tuple:
    base = (_KIND_ORDER[e.kind],)
    if e.kind == "atom":
        return base + (e.atom.rank,)
    return base + tuple(skey(a) for a in e.args)


def atom_expr(a: CardinalAtom) -> CardinalExpr:
    return CardinalExpr("atom", atom=a)


def succ_of(x: CardinalExpr, registry: AtomRegistry) -> CardinalExpr:
    if x.kind == "aleph0":
        return atom_expr(registry.builtin(1))
    if x.kind == "atom" and x.atom.builtin_index is not None:
        return atom_expr(registry.builtin(x.atom.builtin_index + 1))
    return CardinalExpr("succ", args=(x,))


def pred_of(x: CardinalExpr, registry: AtomRegistry) -> Optional[CardinalExpr]:
    """The y with succ(y) = x, when x is recognizably a successor cardinal."""
    if x.kind == "succ":
        return x.args[0]
    if x.kind == "atom" and x.atom.builtin_index is not None:
        k = x.atom.builtin_index
        return ALEPH0 if k == 1 else atom_expr(registry.builtin(k - 1))
    return None


def cf_of(x: CardinalExpr) -> CardinalExpr:
    if x.kind == "aleph0":
        return ALEPH0
    if x.kind == "atom":
        if x.atom.regular:
            return x
        if x.atom.declared_cofinality is None:
            return ALEPH0
        return atom_expr(x.atom.declared_cofinality)
    if x.kind == "succ":
        return x  # successor cardinals are regular
    return CardinalExpr("cf", args=(x,))


def pow2_of(x: CardinalExpr) -> CardinalExpr:
    if x.kind == "aleph0":
        return CONTINUUM
    return CardinalExpr("pow2", args=(x,))


def pow2lt_of(x: CardinalExpr, registry: AtomRegistry) -> CardinalExpr:
    """Weak power 2^{<x}; collapses through successor steps."""
    if x.kind == "aleph0":
        return ALEPH0
    if x.kind == "succ":
        return pow2_of(x.args[0])
    if x.kind == "atom" and x.atom.builtin_index is not None:
        k = x.atom.builtin_index
        return pow2_of(ALEPH0 if k == 1 else atom_expr(registry.builtin(k - 1)))
    return CardinalExpr("pow2lt", args=(x,))


def exp_of(base: CardinalExpr, ex: CardinalExpr) -> CardinalExpr:
    return CardinalExpr("exp", args=(base, ex))


def cc_cp_of(x: CardinalExpr) -> CardinalExpr:
    return CardinalExpr("cc_cp", args=(x,))


def subexprs(e: CardinalExpr) -> Iterable[CardinalExpr]:
    yield e
    for a in e.args:
        yield from subexprs(a)


def render_expr(e: CardinalExpr) -> str:
    if e.kind == "aleph0":
        return "w"
    if e.kind == "atom":
        return e.atom.name
    if e.kind == "c":
        return "c"
    if e.kind == "h":
        return "h"
    if e.kind == "succ":
        return f"succ({render_expr(e.args[0])})"
    if e.kind == "cf":
        return f"cf({render_expr(e.args[0])})"
    if e.kind == "pow2":
        return f"2^{_tight(e.args[0])}"
    if e.kind == "pow2lt":
        return f"2^<{_tight(e.args[0])}"
    if e.kind == "exp":
        return f"{_tight(e.args[0])}^{_tight(e.args[1])}"
    if e.kind == "cc_cp":
        return f"cc(CP({render_expr(e.args[0])}))"
    raise AssertionError(e.kind)


def _tight(e: CardinalExpr) -> str:
    s = render_expr(e)
    return s if e.kind in ("aleph0", "atom", "c", "h", "succ", "cf", "cc_cp") else f"({s})"


# -- rigid (declaration-determined) comparisons --------------------------------

def _rigid_key(e: CardinalExpr) -> tuple | None:
    """A totally ordered key for aleph0 / atoms; None when not declaration-rigid."""
    if e.kind == "aleph0":
        return (0, 0)
    if e.kind == "atom":
        return (1, e.atom.rank)
    return None


def rigid_compare(a: CardinalExpr, b: CardinalExpr) -> int | None:
    ka, kb = _rigid_key(a), _rigid_key(b)
    if ka is None or kb is None:
        return None if a != b else 0
    return (ka > kb) - (ka < kb)


# -- hypotheses ----------------------------------------------------------------

@dataclass(frozen=True)
class Hypothesis:
    kind: str  # rel | GCH | CH | MA | CohenModel
    op: str | None = None  # eq | lt | le
    lhs: CardinalExpr | None = None
    rhs: CardinalExpr | None = None
    mu: CardinalExpr | None = None
    kappa: CardinalAtom | None = None

    def render(self) -> str:
        if self.kind == "rel":
            sym = {"eq": "=", "lt": "<", "le": "<="}[self.op]
            return f"{render_expr(self.lhs)} {sym} {render_expr(self.rhs)}"
        if self.kind == "MA":
            return f"MA mu={render_expr(self.mu)}"
        if self.kind == "CohenModel":
            return f"CohenModel({self.kappa.name})"
        return self.kind


def rel(op: str, lhs: CardinalExpr, rhs: CardinalExpr) -> Hypothesis:
    return Hypothesis("rel", op=op, lhs=lhs, rhs=rhs)


# -- hypothesis grammar ---------------------------------------------------------

def parse_cardinal_expr(text: str, registry: AtomRegistry) -> CardinalExpr:
    expr, i = _parse_cexpr(text, 0, registry)
    if text[i:].strip():
        raise HypothesisError(f"trailing input in cardinal expression: {text[i:]!r}")
    return expr


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _parse_name(text: str, i: int) -> tuple[str, int]:
    j = i
    while j < len(text) and (text[j].isalnum() or text[j] == "_"):
        j += 1
    if j == i:
        raise HypothesisError(f"expected a name at {text[i:]!r}")
    return text[i:j], j


def _parse_cexpr(text: str, i: int, registry: AtomRegistry) -> tuple[CardinalExpr, int]:
    base, i = _parse_cprimary(text, i, registry)
    i = _skip_ws(text, i)
    if i < len(text) and text[i] == "^" and (i + 1 >= len(text) or text[i + 1] not in "<"):
        ex, i = _parse_cexpr(text, i + 1, registry)
        return exp_of(base, ex), i
    return base, i


def _parse_cprimary(text: str, i: int, registry: AtomRegistry) -> tuple[CardinalExpr, int]:
    i = _skip_ws(text, i)
    if i >= len(text):
        raise HypothesisError("unexpected end of cardinal expression")
    if text[i] == "(":
        expr, i = _parse_cexpr(text, i + 1, registry)
        i = _skip_ws(text, i)
        if i >= len(text) or text[i] != ")":
            raise HypothesisError("missing ')' in cardinal expression")
        return expr, i + 1
    if text[i] == "2":
        i = _skip_ws(text, i + 1)
        if i >= len(text) or text[i] != "^":
            raise HypothesisError("bare '2' is only allowed as a power base")
        i += 1
        if i < len(text) and text[i] == "<":
            arg, i = _parse_cprimary(text, i + 1, registry)
            return pow2lt_of(arg, registry), i
        arg, i = _parse_cprimary(text, i, registry)
        return pow2_of(arg), i
    name, j = _parse_name(text, i)
    j = _skip_ws(text, j)
    if name == "w":
        return ALEPH0, j
    if name == "c":
        return CONTINUUM, j
    if name == "h":
        return DIST_H, j
    if name in ("cf", "succ") and j < len(text) and text[j] == "(":
        arg, j = _parse_cexpr(text, j + 1, registry)
        j = _skip_ws(text, j)
        if j >= len(text) or text[j] != ")":
            raise HypothesisError(f"missing ')' after {name}(...)")
        return (cf_of(arg) if name == "cf" else succ_of(arg, registry)), j + 1
    if name == "cc" and j < len(text) and text[j] == "(":
        j = _skip_ws(text, j + 1)
        inner, j2 = _parse_name(text, j)
        if inner != "CP":
            raise HypothesisError("expected CP(...) inside cc(...)")
        j2 = _skip_ws(text, j2)
        if j2 >= len(text) or text[j2] != "(":
            raise HypothesisError("expected '(' after CP")
        arg, j2 = _parse_cexpr(text, j2 + 1, registry)
        j2 = _skip_ws(text, j2)
        if j2 >= len(text) or text[j2] != ")":
            raise HypothesisError("missing ')' after CP(...)")
        j2 = _skip_ws(text, j2 + 1)
        if j2 >= len(text) or text[j2] != ")":
            raise HypothesisError("missing ')' after cc(...)")
        return cc_cp_of(arg), j2 + 1
    found = registry.lookup(name)
    if found is None:
        raise HypothesisError(f"undeclared atom {name!r} in cardinal expression")
    return atom_expr(found), j


def parse_hypothesis_line(line: str, registry: AtomRegistry) -> Hypothesis | None:
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    if text.startswith("card "):
        _declare_from_line(text, registry)
        return None
    if text in ("GCH", "CH"):
        return Hypothesis(text)
    if text.startswith("MA"):
        rest = text[2:].strip()
        if not rest.startswith("mu="):
            raise HypothesisError("MA hypothesis must look like 'MA mu=<expr>'")
        return Hypothesis("MA", mu=parse_cardinal_expr(rest[3:], registry))
    if text.startswith("CohenModel"):
        inner = text[len("CohenModel"):].strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise HypothesisError("CohenModel takes a parenthesized regular atom")
        kexpr = parse_cardinal_expr(inner[1:-1], registry)
        if kexpr.kind != "atom" or kexpr.atom.singular:
            raise HypothesisError("CohenModel requires a regular cardinal atom")
        return Hypothesis("CohenModel", kappa=kexpr.atom)
    for sym, op in (("<=", "le"), ("=", "eq"), ("<", "lt"), (">=", "ge"), (">", "gt")):
        if sym in text:
            lhs_text, rhs_text = text.split(sym, 1)
            lhs = parse_cardinal_expr(lhs_text, registry)
            rhs = parse_cardinal_expr(rhs_text, registry)
            if op == "ge":
                return rel("le", rhs, lhs)
            if op == "gt":
                return rel("lt", rhs, lhs)
            return rel(op, lhs, rhs)
    raise HypothesisError(f"cannot parse hypothesis {text!r}")


def _declare_from_line(text: str, registry: AtomRegistry) -> None:
    parts = text.split()
    if len(parts) < 4 or parts[0] != "card" or parts[2] != "rank":
        raise HypothesisError(f"bad declaration {text!r}")
    name, rank = parts[1], int(parts[3])
    singular = False
    cof: str | None = None
    if len(parts) > 4:
        if parts[4] != "singular" or len(parts) != 7 or parts[5] != "cf":
            raise HypothesisError(f"bad declaration {text!r}")
        singular = True
        cof = None if parts[6] == "w" else parts[6]
    registry.declare(name, rank, singular=singular, cofinality=cof)


def parse_hypotheses(text: str, registry: AtomRegistry) -> list[Hypothesis]:
    hyps = []
    for line in text.splitlines():
        h = parse_hypothesis_line(line, registry)
        if h is not None:
            hyps.append(h)
    return hyps


# -- the fact base and its closure ----------------------------------------------

Rel = tuple  # (op, lhs, rhs)


def _rel_key(op: str, lhs: CardinalExpr, rhs: CardinalExpr) -> Rel:
    if op == "eq" and skey(lhs) > skey(rhs):
        lhs, rhs = rhs, lhs
    return (op, lhs, rhs)


def render_rel(r: Rel) -> str:
    sym = {"eq": "=", "lt": "<", "le": "<="}[r[0]]
    return f"{render_expr(r[1])} {sym} {render_expr(r[2])}"


class FactBase:
    def __init__(self, registry: AtomRegistry, hyps: tuple[Hypothesis, ...]):
        self.registry = registry
        self.hyps = hyps
        self.universe: set[CardinalExpr] = set()
        self.rels: dict[Rel, tuple[str, tuple]] = {}
        self.gch = False

    # -- storage

    def add(self, op: str, lhs: CardinalExpr, rhs: CardinalExpr,
            rule: str, premises: tuple = ()) -> bool:
        if op == "eq" and lhs == rhs:
            return False
        key = _rel_key(op, lhs, rhs)
        if key in self.rels:
            return False
        self.rels[key] = (rule, premises)
        if op == "lt" and lhs == rhs:
            raise ContradictionError(
                f"derived {render_rel(key)}", self.chain(key))
        if op == "lt" and self.holds("eq", lhs, rhs):
            raise ContradictionError(
                f"derived both {render_rel(key)} and equality", self.chain(key))
        if op == "eq" and self.holds("lt", lhs, rhs) or (op == "eq" and self.holds("lt", rhs, lhs)):
            raise ContradictionError(
                f"derived both equality and strict order for {render_rel(key)}",
                self.chain(key))
        return True

    def holds(self, op: str, lhs: CardinalExpr, rhs: CardinalExpr) -> bool:
        if op in ("eq", "le") and lhs == rhs:
            return True
        return _rel_key(op, lhs, rhs) in self.rels

    def entails_rel(self, op: str, lhs: CardinalExpr, rhs: CardinalExpr) -> str:
        if self.holds(op, lhs, rhs):
            return "yes"
        if op == "eq" and (self.holds("lt", lhs, rhs) or self.holds("lt", rhs, lhs)):
            return "no"
        if op == "le" and self.holds("lt", rhs, lhs):
            return "no"
        if op == "lt" and (self.holds("le", rhs, lhs) or self.holds("eq", lhs, rhs)):
            return "no"
        return "unknown"

    def chain(self, key: Rel) -> list[str]:
        out: list[str] = []
        seen: set = set()

        def walk(k: Rel) -> None:
            if k in seen or k not in self.rels:
                return
            seen.add(k)
            rule, premises = self.rels[k]
            for p in premises:
                if isinstance(p, tuple):
                    walk(p)
            out.append(f"{render_rel(k)}  [{rule}]")

        walk(key)
        return out

    def resolve(self, x: CardinalExpr) -> CardinalExpr:
        """Most canonical member of x's equality class (atoms first)."""
        best = x
        for (op, l, r_) in list(self.rels):
            if op != "eq":
                continue
            if l == x and skey(r_) < skey(best):
                best = r_
            if r_ == x and skey(l) < skey(best):
                best = l
        if best != x:
            nxt = self.resolve(best)
            return nxt
        return best

    def relations(self) -> list[Rel]:
        return sorted(self.rels, key=lambda k: (k[0], skey(k[1]), skey(k[2])))


def _gch_ground(theta: CardinalExpr, mu: CardinalExpr,
                registry: AtomRegistry) -> CardinalExpr | None:
    """theta^mu under GCH, decided from declarations alone (rigid atoms)."""
    cth = cf_of(theta)
    k_mu_cf = rigid_compare(mu, cth)
    k_mu_th = rigid_compare(mu, theta)
    if k_mu_cf is None or k_mu_th is None:
        return None
    if k_mu_cf < 0:
        return theta
    if k_mu_th <= 0:
        return succ_of(theta, registry)
    return succ_of(mu, registry)


def gch_exp(theta: CardinalExpr, mu: CardinalExpr, registry: AtomRegistry,
            facts: "FactBase | None" = None) -> CardinalExpr | None:
    """GCH exponentiation theta^mu; None marks an unresolvable ordering."""
    rigid = _gch_ground(theta, mu, registry)
    if rigid is not None:
        return rigid
    if facts is None:
        return None
    cth = cf_of(theta)
    if facts.entails_rel("lt", mu, cth) == "yes":
        return theta
    if facts.entails_rel("le", cth, mu) == "yes" and facts.entails_rel("le", mu, theta) == "yes":
        return succ_of(theta, registry)
    if facts.entails_rel("le", theta, mu) == "yes":
        return succ_of(mu, registry)
    return None


@dataclass(frozen=True)
class CohenTransfer:
    value: CardinalExpr
    continuum: CardinalExpr  # the emitted extension fact: c equals this


def cohen_transfer(kappa: CardinalAtom, expr: CardinalExpr,
                   registry: AtomRegistry) -> CohenTransfer:
    """Extension value of theta^mu (or 2^mu) after adding Fn(kappa,2) over a GCH ground."""
    kexpr = atom_expr(kappa)
    if expr.kind == "c":
        # 2^w in normalized form
        theta, mu = kexpr, ALEPH0
    elif expr.kind == "pow2":
        theta, mu = kexpr, expr.args[0]
    elif expr.kind == "exp":
        theta, mu = expr.args
        m = rigid_compare(theta, kexpr)
        if m is None:
            raise HypothesisError(
                f"cannot order {render_expr(theta)} against {kappa.name} in the ground model")
        theta = kexpr if m < 0 else theta
    else:
        raise HypothesisError("transfer applies to expressions 2^mu or theta^mu")
    value = _gch_ground(theta, mu, registry)
    if value is None:
        raise HypothesisError(
            f"cannot order {render_expr(mu)} against {render_expr(theta)} / its cofinality")
    return CohenTransfer(value, kexpr)


def closure(hyps: Iterable[Hypothesis], registry: AtomRegistry,
            extra_exprs: Iterable[CardinalExpr] = ()) -> FactBase:
    hyps = tuple(hyps)
    fb = FactBase(registry, hyps)

    # universe: subexpressions, standard constants, registered atoms
    uni: set[CardinalExpr] = {ALEPH0, CONTINUUM, DIST_H, atom_expr(registry.builtin(1))}
    for h in hyps:
        if h.kind == "rel":
            uni.update(subexprs(h.lhs))
            uni.update(subexprs(h.rhs))
        elif h.kind == "MA":
            uni.update(subexprs(h.mu))
            uni.add(pow2_of(h.mu))
            uni.add(exp_of(h.mu, ALEPH0))
        elif h.kind == "CohenModel":
            uni.add(atom_expr(h.kappa))
    for e in extra_exprs:
        uni.update(subexprs(e))
    for a in registry.atoms():
        uni.add(atom_expr(a))

    gch = any(h.kind == "GCH" for h in hyps)
    if gch:
        for x in list(uni):
            if x.kind in ("aleph0", "atom", "succ"):
                uni.add(pow2_of(x))

    # one bounded derived layer
    for x in list(uni):
        uni.add(succ_of(x, registry))
        if x.kind in ("pow2", "exp"):
            uni.add(CardinalExpr("cf", args=(x,)))
        if x.kind == "cc_cp":
            arg = x.args[0]
            uni.add(pow2_of(arg))
            uni.add(succ_of(succ_of(arg, registry), registry))
            uni.add(succ_of(pow2_of(arg), registry))
        if x.kind == "atom" and x.atom.builtin_index is not None:
            for k in range(1, x.atom.builtin_index):
                uni.add(atom_expr(registry.builtin(k)))

    cohens = [h for h in hyps if h.kind == "CohenModel"]
    for h in cohens:
        for x in list(uni):
            if x.kind in ("pow2", "exp"):
                try:
                    uni.update(subexprs(cohen_transfer(h.kappa, x, registry).value))
                except HypothesisError:
                    pass

    fb.universe = uni
    fb.gch = gch

    # seed facts
    atoms_in = sorted((x for x in uni if x.kind == "atom"), key=skey)
    for x in uni:
        fb.add("le", ALEPH0, x, "infinite-floor")
    for i, a in enumerate(atoms_in):
        fb.add("lt", ALEPH0, a, "atom-order")
        for b in atoms_in[i + 1:]:
            fb.add("lt", a, b, "atom-order")
    w1 = atom_expr(registry.builtin(1))
    if w1 in uni:
        fb.add("le", w1, DIST_H, "h-bounds")
    fb.add("le", DIST_H, CONTINUUM, "h-bounds")

    for h in hyps:
        if h.kind == "rel":
            fb.add(h.op, h.lhs, h.rhs, "hypothesis")
        elif h.kind == "CH":
            fb.add("eq", CONTINUUM, w1, "CH")
        elif h.kind == "GCH":
            for x in list(uni):
                if x.kind in ("aleph0", "atom", "succ"):
                    fb.add("eq", pow2_of(x), succ_of(x, registry), "GCH")
                if x.kind == "atom" and x.atom.singular:
                    w = pow2lt_of(x, registry)
                    if w in uni:
                        fb.add("eq", w, x, "GCH")
        elif h.kind == "MA":
            fb.add("lt", h.mu, CONTINUUM, "MA")
        elif h.kind == "CohenModel":
            fb.add("eq", CONTINUUM, atom_expr(h.kappa), "F2.4")
            fb.add("eq", DIST_H, w1, "cohen-h")
            for x in list(uni):
                if x.kind in ("pow2", "exp"):
                    try:
                        tr = cohen_transfer(h.kappa, x, registry)
                    except HypothesisError:
                        continue
                    fb.add("eq", x, tr.value, "F2.4")

    _run_rules(fb)
    return fb


def _run_rules(fb: FactBase) -> None:
    uni = fb.universe
    registry = fb.registry
    ma_axioms = [h for h in fb.hyps if h.kind == "MA"]
    for _ in range(100):
        changed = False

        def emit(op, l, r_, rule, *prem):
            nonlocal changed
            if l in uni and r_ in uni and fb.add(op, l, r_, rule, tuple(prem)):
                changed = True

        rels = list(fb.rels.items())
        by_op: dict[str, list[Rel]] = {"eq": [], "le": [], "lt": []}
        for key, _prov in rels:
            by_op[key[0]].append(key)

        # equality and order structure
        for key in by_op["eq"]:
            _op, l, r_ = key
            emit("le", l, r_, "eq-weaken", key)
            emit("le", r_, l, "eq-weaken", key)
        for key in by_op["lt"]:
            _op, l, r_ = key
            emit("le", l, r_, "lt-weaken", key)
        le_pairs = [k for k in fb.rels if k[0] == "le"]
        lt_pairs = [k for k in fb.rels if k[0] == "lt"]
        le_by_lhs: dict[CardinalExpr, list[Rel]] = {}
        for k in le_pairs:
            le_by_lhs.setdefault(k[1], []).append(k)
        lt_by_lhs: dict[CardinalExpr, list[Rel]] = {}
        for k in lt_pairs:
            lt_by_lhs.setdefault(k[1], []).append(k)
        for k1 in le_pairs:
            for k2 in le_by_lhs.get(k1[2], ()):
                emit("le", k1[1], k2[2], "le-trans", k1, k2)
            for k2 in lt_by_lhs.get(k1[2], ()):
                emit("lt", k1[1], k2[2], "order-trans", k1, k2)
        for k1 in lt_pairs:
            for k2 in le_by_lhs.get(k1[2], ()):
                emit("lt", k1[1], k2[2], "order-trans", k1, k2)
        for k in le_pairs:
            back = _rel_key("le", k[2], k[1])
            if k[1] != k[2] and back in fb.rels:
                emit("eq", k[1], k[2], "antisymmetry", k, back)

        # arithmetic rules over the universe
        for x in list(uni):
            if x.kind == "pow2":
                emit("lt", x.args[0], x, "cantor")
                cf_node = CardinalExpr("cf", args=(x,))
                if cf_node in uni:
                    emit("lt", x.args[0], cf_node, "koenig")
            if x.kind == "pow2lt":
                emit("le", x.args[0], x, "weakpow-above")
                p = pow2_of(x.args[0])
                emit("le", x, p, "weakpow-below")
            if x.kind == "succ":
                emit("lt", x.args[0], x, "succ-above")
            if x.kind == "atom" and x.atom.builtin_index is not None and x.atom.builtin_index > 1:
                prev = atom_expr(registry.builtin(x.atom.builtin_index - 1))
                emit("lt", prev, x, "atom-order")
            if x.kind == "cf":
                emit("le", x, x.args[0], "cf-below")
            if x.kind == "cc_cp":
                arg = x.args[0]
                emit("le", succ_of(succ_of(arg, registry), registry), x, "F2.6a")
                emit("le", x, succ_of(pow2_of(arg), registry), "F2.6a")
                weak = pow2lt_of(arg, registry)
                k_tree = _rel_key("eq", weak, arg)
                if fb.holds("eq", weak, arg):
                    emit("eq", x, succ_of(pow2_of(arg), registry), "cc-tree", k_tree)
                k_pinch = _rel_key("eq", pow2_of(arg), succ_of(arg, registry))
                if fb.holds("eq", pow2_of(arg), succ_of(arg, registry)):
                    emit("eq", x, succ_of(pow2_of(arg), registry), "cc-pinch", k_pinch)
            if x.kind == "exp":
                base, ex = x.args
                emit("le", base, x, "exp-base")
                p_ex = pow2_of(ex)
                emit("le", p_ex, x, "exp-above-pow2")
                p_base = pow2_of(base)
                k_le = _rel_key("le", ex, base)
                if fb.holds("le", ex, base):
                    emit("le", x, p_base, "exp-below-pow2", k_le)
                cfb = cf_of(base)
                if fb.holds("le", cfb, ex) or cfb == ex:
                    emit("lt", base, x, "koenig-exp")
                # T5.8(b): for singular x of countable cofinality, 2^{<x}=x gives x^w = 2^x
                if (ex == ALEPH0 and base.kind == "atom" and base.atom.singular
                        and cf_of(base) == ALEPH0):
                    weak = pow2lt_of(base, registry)
                    if fb.holds("eq", weak, base):
                        emit("eq", x, pow2_of(base), "singular-weakpow",
                             _rel_key("eq", weak, base))
            # MA: 2^x = c for aleph0 <= x < c
            if x.kind == "pow2" and ma_axioms:
                arg = x.args[0]
                if fb.holds("lt", arg, CONTINUUM):
                    emit("eq", x, CONTINUUM, "MA", _rel_key("lt", arg, CONTINUUM))

        # below-successor: y < succ(x) gives y <= x
        for key in list(fb.rels):
            if key[0] != "lt":
                continue
            _op, y, s = key
            p = pred_of(s, registry)
            if p is not None:
                emit("le", y, p, "below-successor", key)

        # monotonicity through unary constructors
        for key in [k for k in fb.rels if k[0] in ("le", "lt")]:
            op, l, r_ = key
            sl, sr = succ_of(l, registry), succ_of(r_, registry)
            if sl in uni and sr in uni:
                emit("le" if op == "le" else "lt", sl, sr, "succ-mono", key)
            pl, pr = pow2_of(l), pow2_of(r_)
            if pl in uni and pr in uni:
                emit("le", pl, pr, "pow2-mono", key)
            if op == "lt":
                sl = succ_of(l, registry)
                if sl in uni:
                    emit("le", sl, r_, "no-between", key)
        # congruence under equality for applied constructors
        for key in by_op["eq"]:
            _op, l, r_ = key
            for make in (lambda z: succ_of(z, registry), pow2_of, cf_of,
                         lambda z: pow2lt_of(z, registry), cc_cp_of):
                fl, fr = make(l), make(r_)
                if fl != fr and fl in uni and fr in uni:
                    emit("eq", fl, fr, "congruence", key)
            for other in list(uni):
                if other.kind == "exp":
                    b, ex2 = other.args
                    for nb, ne in (((r_ if b == l else b), (r_ if ex2 == l else ex2)),
                                   ((l if b == r_ else b), (l if ex2 == r_ else ex2))):
                        cand = exp_of(nb, ne)
                        if cand != other and cand in uni:
                            emit("eq", other, cand, "congruence", key)

        if not changed:
            return
    raise HypothesisError("closure did not reach a fixpoint within bounds")


def entails(hyps: Iterable[Hypothesis], relation: Hypothesis,
            registry: AtomRegistry) -> str:
    if relation.kind != "rel":
        raise HypothesisError("entailment queries must be relations")
    fb = closure(hyps, registry,
                 extra_exprs=tuple(subexprs(relation.lhs)) + tuple(subexprs(relation.rhs)))
    return fb.entails_rel(relation.op, relation.lhs, relation.rhs)
