"""Parametric first-order formulas over integer linear arithmetic, with a
bounded-domain evaluator used as a definitional oracle for the direct
semigroup algorithms.

Atoms are linear inequalities whose coefficients are integer polynomials in
the parameter n; n itself may never be quantified.  Quantifiers range over
[-W, W] for a caller-chosen window W.  An interval-propagation pass tries to
certify that every quantified variable is forced into a finite range by the
formula's own constraints; when all are, the bounded answer equals the
unbounded one and the result is flagged "exact", otherwise
"window-limited".

Surface syntax: ``E``/``A`` quantify, ``& | -> !`` connect, atoms compare
linear terms with ``<= < >= > = !=``.  Terms multiply polynomial-in-n
coefficients with variables, e.g. ``(n^2+1)*z1 + 2*z2 <= 4n``.  Equality
desugars to the conjunction of ``<=`` and the negation of ``<= b-1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import (
    ParseError,
    QuantifiedParameterError,
    UnboundVariableError,
    UnknownBuiltinError,
)
from .polyfam import ParametricFamily, PolynomialZ, render_poly

# ---------------------------------------------------------------------------
# abstract syntax
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """sum of coeff(n) * var over coeffs, compared <= bound(n)."""

    coeffs: tuple[tuple[str, PolynomialZ], ...]
    bound: PolynomialZ

    def negated(self) -> "Atom":
        # not(sum <= b)  <=>  -sum <= -b - 1
        return Atom(
            tuple((v, -p) for v, p in self.coeffs),
            -self.bound - PolynomialZ.constant(1),
        )


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class And:
    items: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    items: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __post_init__(self):
        if self.var == "n":
            raise QuantifiedParameterError("the parameter n may not be quantified")


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"

    def __post_init__(self):
        if self.var == "n":
            raise QuantifiedParameterError("the parameter n may not be quantified")


Formula = Union[Atom, Not, And, Or, Implies, Exists, ForAll]


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Atom):
        return frozenset(v for v, _ in f.coeffs)
    if isinstance(f, Not):
        return free_vars(f.child)
    if isinstance(f, (And, Or)):
        out: frozenset[str] = frozenset()
        for item in f.items:
            out |= free_vars(item)
        return out
    if isinstance(f, Implies):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, (Exists, ForAll)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# linear terms (parser and builders)
# ---------------------------------------------------------------------------


class LinTerm:
    """sum of coeff(n) * var plus a polynomial constant."""

    __slots__ = ("vars", "const")

    def __init__(self, vars=None, const=None):
        self.vars: dict[str, PolynomialZ] = dict(vars or {})
        self.const: PolynomialZ = const if const is not None else PolynomialZ()

    @staticmethod
    def of_var(name: str) -> "LinTerm":
        return LinTerm({name: PolynomialZ.constant(1)})

    @staticmethod
    def of_poly(p: PolynomialZ) -> "LinTerm":
        return LinTerm({}, p)

    @staticmethod
    def of_int(c: int) -> "LinTerm":
        return LinTerm({}, PolynomialZ.constant(c))

    def __add__(self, other: "LinTerm") -> "LinTerm":
        out = dict(self.vars)
        for v, p in other.vars.items():
            out[v] = out.get(v, PolynomialZ()) + p
        return LinTerm(out, self.const + other.const)

    def __sub__(self, other: "LinTerm") -> "LinTerm":
        return self + other.scaled(PolynomialZ.constant(-1))

    def scaled(self, p: PolynomialZ) -> "LinTerm":
        return LinTerm({v: q * p for v, q in self.vars.items()}, self.const * p)

    def times(self, other: "LinTerm", pos: int) -> "LinTerm":
        if self.vars and other.vars:
            raise ParseError("nonlinear product of variables", pos)
        if other.vars:
            return other.scaled(self.const)
        return self.scaled(other.const)


def _atom_le(lhs: LinTerm, rhs: LinTerm) -> Atom:
    diff = lhs - rhs
    coeffs = tuple(sorted((v, p) for v, p in diff.vars.items() if not p.is_zero))
    return Atom(coeffs, -diff.const)


def _make_and(items: Sequence[Formula]) -> Formula:
    return items[0] if len(items) == 1 else And(tuple(items))


def compare(lhs: LinTerm, op: str, rhs: LinTerm) -> Formula:
    one = LinTerm.of_int(1)
    if op == "<=":
        return _atom_le(lhs, rhs)
    if op == "<":
        return _atom_le(lhs, rhs - one)
    if op == ">=":
        return _atom_le(rhs, lhs)
    if op == ">":
        return _atom_le(rhs, lhs - one)
    if op == "=":
        return And((_atom_le(lhs, rhs), Not(_atom_le(lhs, rhs - one))))
    if op == "!=":
        return Not(And((_atom_le(lhs, rhs), Not(_atom_le(lhs, rhs - one)))))
    raise ValueError(f"unknown comparison {op!r}")


# ---------------------------------------------------------------------------
# surface parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op><=|>=|!=|->|[<>=!&|()^*+-]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.toks[self.idx] if self.idx < len(self.toks) else ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.idx += 1
        return t

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        lhs = self.disjunction()
        if self.peek()[1] == "->":
            self.next()
            return Implies(lhs, self.formula())
        return lhs

    def disjunction(self) -> Formula:
        items = [self.conjunction()]
        while self.peek()[1] == "|":
            self.next()
            items.append(self.conjunction())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conjunction(self) -> Formula:
        items = [self.unary()]
        while self.peek()[1] == "&":
            self.next()
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "!":
            self.next()
            return Not(self.unary())
        if kind == "name" and val in ("E", "A"):
            self.next()
            vkind, vname, vpos = self.next()
            if vkind != "name":
                raise ParseError("expected a variable after the quantifier", vpos)
            if vname == "n":
                raise QuantifiedParameterError(
                    f"the parameter n may not be quantified (position {vpos})"
                )
            body = self.unary()
            return Exists(vname, body) if val == "E" else ForAll(vname, body)
        return self.atom_or_group()

    def atom_or_group(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "(":
            save = self.idx
            try:
                self.next()
                inner = self.formula()
                self.expect(")")
                return inner
            except ParseError:
                self.idx = save  # reparse as an arithmetic atom
        return self.atom()

    def atom(self) -> Formula:
        lhs = self.expr()
        kind, val, pos = self.next()
        if val not in ("<=", "<", ">=", ">", "=", "!="):
            raise ParseError(f"expected a comparison, found {val or 'end of input'!r}", pos)
        rhs = self.expr()
        return compare(lhs, val, rhs)

    def expr(self) -> LinTerm:
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.next()[1] == "-" else 1
        total = self.term().scaled(PolynomialZ.constant(sign))
        while self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            t = self.term()
            total = total + (t if op == "+" else t.scaled(PolynomialZ.constant(-1)))
        return total

    def term(self) -> LinTerm:
        out = self.factor()
        while self.peek()[1] == "*":
            pos = self.peek()[2]
            self.next()
            out = out.times(self.factor(), pos)
        return out

    def factor(self) -> LinTerm:
        kind, val, pos = self.next()
        if kind == "int":
            coef = int(val)
            # allow juxtaposed monomials in the parameter: 4n^2
            if self.peek()[0] == "name" and self.peek()[1] == "n":
                self.next()
                power = self._optional_power()
                return LinTerm.of_poly(PolynomialZ.monomial(coef, power))
            return LinTerm.of_int(coef)
        if kind == "name":
            if val == "n":
                power = self._optional_power()
                return LinTerm.of_poly(PolynomialZ.monomial(1, power))
            return LinTerm.of_var(val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if val == "-":
            return self.factor().scaled(PolynomialZ.constant(-1))
        raise ParseError(f"expected a term, found {val or 'end of input'!r}", pos)

    def _optional_power(self) -> int:
        if self.peek()[1] == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "int" or int(val) <= 0:
                raise ParseError("expected a positive exponent", pos)
            return int(val)
        return 1


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    f = parser.formula()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"unexpected trailing input {val!r}", pos)
    return f


def render(f: Formula) -> str:
    """Canonical ASCII rendering; parse(render(f)) is structurally equal to f."""
    if isinstance(f, Atom):
        pieces = [f"({render_poly(p)})*{v}" for v, p in f.coeffs]
        lhs = " + ".join(pieces) if pieces else "0"
        return f"{lhs} <= {render_poly(f.bound)}"
    if isinstance(f, Not):
        return f"!({render(f.child)})"
    if isinstance(f, And):
        return "(" + " & ".join(render(i) for i in f.items) + ")"
    if isinstance(f, Or):
        return "(" + " | ".join(render(i) for i in f.items) + ")"
    if isinstance(f, Implies):
        return f"({render(f.lhs)} -> {render(f.rhs)})"
    if isinstance(f, Exists):
        return f"E {f.var} ({render(f.body)})"
    if isinstance(f, ForAll):
        return f"A {f.var} ({render(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# bounded evaluation with interval certificates
# ---------------------------------------------------------------------------


def _collect_entailed_atoms(f: Formula, negated: bool, env: dict, shadowed: set):
    """Atoms conjunctively entailed by f (negation-aware), plus the variables
    quantified along the way.  Stops at genuinely disjunctive structure."""
    if isinstance(f, Atom):
        return [f.negated() if negated else f], set()
    if isinstance(f, Not):
        return _collect_entailed_atoms(f.child, not negated, env, shadowed)
    if isinstance(f, And) and not negated:
        atoms, qvars = [], set()
        for item in f.items:
            a, q = _collect_entailed_atoms(item, False, env, shadowed)
            atoms.extend(a)
            qvars |= q
        return atoms, qvars
    if isinstance(f, Or) and negated:
        atoms, qvars = [], set()
        for item in f.items:
            a, q = _collect_entailed_atoms(item, True, env, shadowed)
            atoms.extend(a)
            qvars |= q
        return atoms, qvars
    if isinstance(f, Implies) and negated:
        a1, q1 = _collect_entailed_atoms(f.lhs, False, env, shadowed)
        a2, q2 = _collect_entailed_atoms(f.rhs, True, env, shadowed)
        return a1 + a2, q1 | q2
    if isinstance(f, Exists) and not negated:
        if f.var in env or f.var in shadowed:
            return [], set()  # shadowing: bounds would be unsound
        a, q = _collect_entailed_atoms(f.body, False, env, shadowed | {f.var})
        return a, q | {f.var}
    if isinstance(f, ForAll) and negated:
        if f.var in env or f.var in shadowed:
            return [], set()
        a, q = _collect_entailed_atoms(f.body, True, env, shadowed | {f.var})
        return a, q | {f.var}
    return [], set()


def _derive_interval(var, inst, qvars, env):
    """Fixpoint interval propagation over the unknown variables; returns the
    interval derived for var as a (lo, hi) pair of Optional[int].  ``inst``
    holds instantiated atoms as (coeffs, bound) pairs."""
    unknown = set(qvars) | {var}
    for coeffs, _ in inst:
        for v, _c in coeffs:
            if v not in env:
                unknown.add(v)
    lo: dict[str, Optional[int]] = {u: None for u in unknown}
    hi: dict[str, Optional[int]] = {u: None for u in unknown}
    for _ in range(2 * len(unknown) + 2):
        changed = False
        for coeffs, bound in inst:
            fixed = 0
            unk = []
            for v, c in coeffs:
                if v in env:
                    fixed += c * env[v]
                else:
                    unk.append((v, c))
            for v, c in unk:
                rest = bound - fixed
                ok = True
                for w, cw in unk:
                    if w == v:
                        continue
                    if cw > 0:
                        if lo[w] is None:
                            ok = False
                            break
                        rest -= cw * lo[w]
                    else:
                        if hi[w] is None:
                            ok = False
                            break
                        rest -= cw * hi[w]
                if not ok:
                    continue
                if c > 0:
                    new_hi = rest // c
                    if hi[v] is None or new_hi < hi[v]:
                        hi[v] = new_hi
                        changed = True
                else:
                    # c < 0: c*v <= rest  =>  v >= ceil(rest / c)
                    q, r = divmod(rest, c)
                    new_lo = q + (1 if r else 0)
                    if lo[v] is None or new_lo > lo[v]:
                        lo[v] = new_lo
                        changed = True
        if not changed:
            break
    return lo[var], hi[var]


class _Evaluator:
    def __init__(self, n: int, window: int):
        self.n = n
        self.window = window
        self.env: dict[str, int] = {}
        self.certified = True
        # caches keyed on node identity: formulas are immutable, and the
        # evaluator lives for a single (formula, n) run
        self._atom_cache: dict[int, tuple[tuple[tuple[str, int], ...], int]] = {}
        self._collect_cache: dict[tuple[int, bool], tuple[list, set]] = {}

    def _instantiated(self, a: Atom):
        hit = self._atom_cache.get(id(a))
        if hit is None:
            coeffs = tuple((v, p(self.n)) for v, p in a.coeffs)
            hit = (tuple((v, c) for v, c in coeffs if c != 0), a.bound(self.n))
            self._atom_cache[id(a)] = hit
        return hit

    def atom(self, a: Atom) -> bool:
        coeffs, bound = self._instantiated(a)
        total = 0
        env = self.env
        for v, c in coeffs:
            if v not in env:
                raise UnboundVariableError(v)
            total += c * env[v]
        return total <= bound

    def run(self, f: Formula) -> bool:
        if isinstance(f, Atom):
            return self.atom(f)
        if isinstance(f, Not):
            return not self.run(f.child)
        if isinstance(f, And):
            return all(self.run(i) for i in f.items)
        if isinstance(f, Or):
            return any(self.run(i) for i in f.items)
        if isinstance(f, Implies):
            return not self.run(f.lhs) or self.run(f.rhs)
        if isinstance(f, Exists):
            return self._search(f.var, f.body, negate_body=False)
        if isinstance(f, ForAll):
            return not self._search(f.var, f.body, negate_body=True)
        raise TypeError(f"not a formula: {f!r}")

    def _search(self, var: str, body: Formula, negate_body: bool) -> bool:
        """Is there a witness in the (derived or default) range making body
        evaluate to (not negate_body)?"""
        key = (id(body), negate_body, var)
        cached = self._collect_cache.get(key)
        if cached is None:
            atoms, qvars = _collect_entailed_atoms(body, negate_body, self.env, {var})
            inst = [self._instantiated(a) for a in atoms]
            cached = (inst, qvars)
            self._collect_cache[key] = cached
        inst, qvars = cached
        lo, hi = _derive_interval(var, inst, qvars, self.env)
        if lo is None or hi is None or lo < -self.window or hi > self.window:
            self.certified = False
        lo_eff = -self.window if lo is None else max(lo, -self.window)
        hi_eff = self.window if hi is None else min(hi, self.window)
        saved = self.env.get(var)
        found = False
        for c in range(lo_eff, hi_eff + 1):
            self.env[var] = c
            if self.run(body) != negate_body:
                found = True
                break
        if saved is None:
            self.env.pop(var, None)
        else:
            self.env[var] = saved
        return found


def evaluate(
    formula: Formula,
    n: int,
    assignment: Optional[dict] = None,
    window: int = 64,
) -> tuple[bool, str]:
    """Truth value at parameter n with quantifiers over [-window, window],
    plus 'exact' when interval propagation certifies the window irrelevant,
    else 'window-limited'."""
    ev = _Evaluator(n, window)
    if assignment:
        ev.env.update({k: int(v) for k, v in assignment.items()})
    value = ev.run(formula)
    return value, ("exact" if ev.certified else "window-limited")


def define_set(
    formula: Formula,
    n: int,
    free: Sequence[str],
    window: int,
):
    """All assignments of the free variables within [-window, window]
    satisfying the formula: a set of ints for one free variable, a set of
    tuples otherwise."""
    missing = free_vars(formula) - set(free)
    if missing:
        raise UnboundVariableError(sorted(missing)[0])
    if not free:
        raise ValueError("define_set needs at least one free variable")
    out = set()
    grid = range(-window, window + 1)
    if len(free) == 1:
        name = free[0]
        for v in grid:
            if evaluate(formula, n, {name: v}, window)[0]:
                out.add(v)
        return out
    from itertools import product

    for vs in product(grid, repeat=len(free)):
        if evaluate(formula, n, dict(zip(free, vs)), window)[0]:
            out.add(vs)
    return out


def suggested_window(formula: Formula, n: int) -> int:
    """Four times the largest instantiated constant in the formula."""
    biggest = 1

    def walk(f: Formula):
        nonlocal biggest
        if isinstance(f, Atom):
            for _, p in f.coeffs:
                biggest = max(biggest, abs(p(n)))
            biggest = max(biggest, abs(f.bound(n)))
        elif isinstance(f, Not):
            walk(f.child)
        elif isinstance(f, (And, Or)):
            for i in f.items:
                walk(i)
        elif isinstance(f, Implies):
            walk(f.lhs)
            walk(f.rhs)
        elif isinstance(f, (Exists, ForAll)):
            walk(f.body)

    walk(formula)
    return 4 * biggest


# ---------------------------------------------------------------------------
# builtin defining formulas
# ---------------------------------------------------------------------------

BUILTIN_NAMES = (
    "member",
    "gcd",
    "frobenius",
    "pf",
    "symmetric",
    "fundamental_gap",
    "length_set",
    "delta_elem",
    "apery",
)


def _scalar_polys(fam: ParametricFamily) -> list[PolynomialZ]:
    if fam.ambient_dim != 1:
        raise ValueError("builtin formulas are stated for one-dimensional families")
    return [vec[0] for vec in fam.generators]


class _Fresh:
    def __init__(self):
        self.counter = 0

    def __call__(self, stem: str) -> str:
        self.counter += 1
        return f"{stem}{self.counter}"


def _member_of(term: LinTerm, polys: Sequence[PolynomialZ], fresh: _Fresh) -> Formula:
    """term >= 0 and some nonnegative combination of the generators hits it."""
    zs = [fresh("z") for _ in polys]
    combo = LinTerm()
    parts: list[Formula] = []
    for z, p in zip(zs, polys):
        parts.append(_atom_le(LinTerm.of_int(0), LinTerm.of_var(z)))
        combo = combo + LinTerm.of_var(z).scaled(p)
    parts.append(compare(combo, "=", term))
    body: Formula = _make_and(parts)
    for z in reversed(zs):
        body = Exists(z, body)
    return And((_atom_le(LinTerm.of_int(0), term), body))


def _combination_equals(term: LinTerm, polys, fresh, nonneg: bool) -> Formula:
    """Some integer (optionally nonnegative) combination equals the term."""
    zs = [fresh("z") for _ in polys]
    combo = LinTerm()
    parts: list[Formula] = []
    for z, p in zip(zs, polys):
        if nonneg:
            parts.append(_atom_le(LinTerm.of_int(0), LinTerm.of_var(z)))
        combo = combo + LinTerm.of_var(z).scaled(p)
    parts.append(compare(combo, "=", term))
    body: Formula = _make_and(parts)
    for z in reversed(zs):
        body = Exists(z, body)
    return body


def builtin_formula(
    name: str,
    fam: ParametricFamily,
    element: Optional[PolynomialZ] = None,
) -> Formula:
    """The defining first-order formula for a named invariant of the family.

    The free variable is always x (none for 'symmetric'); 'length_set' and
    'delta_elem' require the element polynomial whose factorizations are
    meant.  Membership subformulas are expanded in place.
    """
    polys = _scalar_polys(fam)
    fresh = _Fresh()
    x = LinTerm.of_var("x")

    def member(term: LinTerm) -> Formula:
        return _member_of(term, polys, fresh)

    if name == "member":
        return member(x)

    if name == "gcd":
        # least positive integer (not necessarily nonnegative) combination
        y = fresh("y")
        inner = Implies(
            And(
                (
                    _combination_equals(LinTerm.of_var(y), polys, fresh, nonneg=False),
                    _atom_le(LinTerm.of_int(1), LinTerm.of_var(y)),
                )
            ),
            _atom_le(x, LinTerm.of_var(y)),
        )
        return And(
            (
                _atom_le(LinTerm.of_int(1), x),
                _combination_equals(x, polys, fresh, nonneg=False),
                ForAll(y, inner),
            )
        )

    if name == "frobenius":
        y = fresh("y")
        return And(
            (
                Not(member(x)),
                ForAll(y, Implies(compare(x, "<", LinTerm.of_var(y)), member(LinTerm.of_var(y)))),
            )
        )

    if name == "pf":
        y = fresh("y")
        cond = And((member(LinTerm.of_var(y)), Not(compare(LinTerm.of_var(y), "=", LinTerm.of_int(0)))))
        return And(
            (
                Not(member(x)),
                ForAll(y, Implies(cond, member(x + LinTerm.of_var(y)))),
            )
        )

    if name == "symmetric":
        fvar = fresh("f")
        zvar = fresh("w")
        fterm = LinTerm.of_var(fvar)
        y = fresh("y")
        frob_def = And(
            (
                Not(member(fterm)),
                ForAll(y, Implies(compare(fterm, "<", LinTerm.of_var(y)), member(LinTerm.of_var(y)))),
            )
        )
        reflect = ForAll(
            zvar,
            Implies(Not(member(LinTerm.of_var(zvar))), member(fterm - LinTerm.of_var(zvar))),
        )
        return Exists(fvar, And((frob_def, reflect)))

    if name == "fundamental_gap":
        two_x = x.scaled(PolynomialZ.constant(2))
        three_x = x.scaled(PolynomialZ.constant(3))
        return And((Not(member(x)), member(two_x), member(three_x)))

    if name in ("length_set", "delta_elem"):
        if element is None:
            raise ValueError(f"builtin {name!r} needs the element polynomial")
        target = LinTerm.of_poly(element)

        def in_lengths(term: LinTerm) -> Formula:
            zs = [fresh("z") for _ in polys]
            combo = LinTerm()
            total = LinTerm()
            parts: list[Formula] = []
            for z, p in zip(zs, polys):
                parts.append(_atom_le(LinTerm.of_int(0), LinTerm.of_var(z)))
                combo = combo + LinTerm.of_var(z).scaled(p)
                total = total + LinTerm.of_var(z)
            parts.append(compare(combo, "=", target))
            parts.append(compare(term, "=", total))
            body: Formula = _make_and(parts)
            for z in reversed(zs):
                body = Exists(z, body)
            return body

        if name == "length_set":
            return in_lengths(x)
        y1, y2, w = fresh("y"), fresh("y"), fresh("w")
        t1, t2, tw = LinTerm.of_var(y1), LinTerm.of_var(y2), LinTerm.of_var(w)
        between = ForAll(
            w,
            Implies(And((in_lengths(tw), compare(t1, "<", tw))), _atom_le(t2, tw)),
        )
        body = And(
            (
                in_lengths(t1),
                in_lengths(t2),
                compare(t1, "<", t2),
                compare(x, "=", t2 - t1),
                between,
            )
        )
        return Exists(y1, Exists(y2, body))

    if name == "apery":
        mvar = fresh("m")
        y = fresh("y")
        mterm = LinTerm.of_var(mvar)
        min_elt = And(
            (
                member(mterm),
                _atom_le(LinTerm.of_int(1), mterm),
                ForAll(
                    y,
                    Implies(
                        And((member(LinTerm.of_var(y)), _atom_le(LinTerm.of_int(1), LinTerm.of_var(y)))),
                        _atom_le(mterm, LinTerm.of_var(y)),
                    ),
                ),
            )
        )
        return And((member(x), Exists(mvar, And((min_elt, Not(member(x - mterm)))))))

    raise UnknownBuiltinError(name)
