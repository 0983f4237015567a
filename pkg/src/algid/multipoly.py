"""Sparse multivariate polynomials over an exact field.

A monomial is a tuple of (variable, exponent) pairs sorted by variable name;
the polynomial is a map from monomial to nonzero Scalar.  Canonical form is
unique, so equality is plain dict equality.  The module also houses the small
scalar-expression language ("2 a1 - 1", "sqrt(a1 + b2)", "b1/b2^2") used by
the family catalog and by transcribed fixture systems.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import AlgidError, DivisionByZero, FieldMismatch, IdentitySyntaxError
from .exactnum import Field, Scalar, sqrt

Monomial = Tuple[Tuple[str, int], ...]

ONE: Monomial = ()


class SqrtUnavailable(AlgidError):
    """Raised when an expression needs a square root that the field lacks."""

    def __init__(self, radicand: Scalar):
        super().__init__(f"{radicand!r} is not a square in {radicand.field!r}")
        self.radicand = radicand


def _mon_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: Dict[str, int] = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mon_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mon_sort_key(m: Monomial):
    """Graded-lex key: higher total degree first, then lex on the variable word."""
    word = tuple(v for v, e in m for _ in range(e))
    return (-mon_degree(m), word)


def render_monomial(m: Monomial) -> str:
    return " ".join(v if e == 1 else f"{v}^{e}" for v, e in m) if m else "1"


class MultiPoly:
    """Immutable-by-convention sparse polynomial; do not mutate .terms."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Monomial, Scalar]):
        self.field = field
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "MultiPoly":
        return cls(field, {})

    @classmethod
    def const(cls, field: Field, value) -> "MultiPoly":
        return cls(field, {ONE: field.scalar(value)})

    @classmethod
    def var(cls, field: Field, name: str, exp: int = 1) -> "MultiPoly":
        return cls(field, {((name, exp),): field.one()})

    @classmethod
    def coerce(cls, field: Field, value) -> "MultiPoly":
        if isinstance(value, MultiPoly):
            if value.field != field:
                raise FieldMismatch(f"{value.field} vs {field}")
            return value
        return cls.const(field, value)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def constant_value(self) -> Scalar:
        if not self.terms:
            return self.field.zero()
        if self.is_constant():
            return self.terms[ONE]
        raise ValueError(f"{self} is not constant")

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree_in(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((mon_degree(m) for m in self.terms), default=0)

    def sorted_terms(self) -> Iterator[Tuple[Monomial, Scalar]]:
        for m in sorted(self.terms, key=mon_sort_key):
            yield m, self.terms[m]

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return MultiPoly(self.field, terms)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.field, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        terms: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mon_mul(m1, m2)
                c = c1 * c2
                s = terms.get(m)
                terms[m] = c if s is None else s + c
        return MultiPoly(self.field, terms)

    def scale(self, c) -> "MultiPoly":
        c = self.field.scalar(c)
        return MultiPoly(self.field, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.terms.items())))

    # -- substitution / collection -------------------------------------------

    def subs(self, assignment: Mapping[str, object]) -> "MultiPoly":
        """Substitute variables by scalars or polynomials; others stay symbolic."""
        vals = {v: MultiPoly.coerce(self.field, x) for v, x in assignment.items()}
        out = MultiPoly.zero(self.field)
        for m, c in self.terms.items():
            term = MultiPoly.const(self.field, c)
            for v, e in m:
                factor = vals.get(v)
                term = term * (factor**e if factor is not None else MultiPoly.var(self.field, v, e))
            out = out + term
        return out

    def collect_coefficients(self, varnames: Iterable[str]) -> Dict[Monomial, "MultiPoly"]:
        """Group terms by their monomial part in `varnames`.

        The returned coefficient polynomials involve only variables outside
        `varnames`; recombining reproduces the polynomial exactly.  Empty map
        iff the polynomial is zero.
        """
        vs = set(varnames)
        out: Dict[Monomial, Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            inner = tuple((v, e) for v, e in m if v in vs)
            outer = tuple((v, e) for v, e in m if v not in vs)
            bucket = out.setdefault(inner, {})
            s = bucket.get(outer)
            bucket[outer] = c if s is None else s + c
        return {
            mon: MultiPoly(self.field, coeffs)
            for mon, coeffs in out.items()
            if any(not c.is_zero() for c in coeffs.values())
        }

    def eval_scalar(self, assignment: Mapping[str, Scalar]) -> Scalar:
        """Total evaluation; every variable must be assigned."""
        return self.subs(assignment).constant_value()

    # -- rendering -----------------------------------------------------------

    def __repr__(self) -> str:
        return self.render()

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mag, neg = c, False
            if str(c)[0] == "-":
                mag, neg = -c, True
            coeff = str(mag)
            if m and coeff == "1":
                body = render_monomial(m)
            elif m:
                body = f"{coeff} {render_monomial(m)}"
            else:
                body = coeff
            parts.append(("- " if neg else "+ ") + body if parts else ("-" if neg else "") + body)
        return " ".join(parts)

    def to_json(self) -> list:
        return [
            {"monomial": [[v, e] for v, e in m], "coeff": c.to_json()}
            for m, c in self.sorted_terms()
        ]


# -- scalar-expression mini-language ------------------------------------------
#
# expr   := term (('+'|'-') term)*
# term   := unary (('*'|'/') unary | unary-adjacent)*      adjacency multiplies
# unary  := '-' unary | power
# power  := atom ('^' INT)?
# atom   := INT | NAME | '(' expr ')' | 'sqrt' '(' expr ')'

_Node = tuple


def _tokenize_expr(text: str):
    toks, i, n = [], 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append((i, "int", text[i:j]))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "'"):
                j += 1
            toks.append((i, "name", text[i:j]))
            i = j
        elif ch in "+-*/^()":
            toks.append((i, ch, ch))
            i += 1
        else:
            raise IdentitySyntaxError(i, f"unexpected character {ch!r}")
    return toks


def parse_expr(text: str) -> _Node:
    """Parse the mini-language into a tuple tree (no field binding yet)."""
    toks = _tokenize_expr(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (len(text), "end", "")

    def take(kind=None):
        nonlocal pos
        tok = peek()
        if kind is not None and tok[1] != kind:
            raise IdentitySyntaxError(tok[0], f"expected {kind!r}, got {tok[2]!r}")
        pos += 1
        return tok

    def expr():
        node = term()
        while peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term():
        node = unary()
        while True:
            kind = peek()[1]
            if kind in ("*", "/"):
                op = take()[1]
                node = ("mul" if op == "*" else "div", node, unary())
            elif kind in ("int", "name", "("):
                node = ("mul", node, unary())
            else:
                return node

    def unary():
        if peek()[1] == "-":
            take()
            return ("neg", unary())
        return power()

    def power():
        node = atom()
        if peek()[1] == "^":
            take()
            tok = take("int")
            node = ("pow", node, int(tok[2]))
        return node

    def atom():
        tok = peek()
        if tok[1] == "int":
            take()
            return ("num", int(tok[2]))
        if tok[1] == "name":
            take()
            if tok[2] == "sqrt":
                take("(")
                inner = expr()
                take(")")
                return ("sqrt", inner)
            return ("var", tok[2])
        if tok[1] == "(":
            take()
            inner = expr()
            take(")")
            return inner
        raise IdentitySyntaxError(tok[0], f"unexpected token {tok[2]!r}")

    node = expr()
    if pos != len(toks):
        raise IdentitySyntaxError(peek()[0], f"trailing input {peek()[2]!r}")
    return node


def expr_variables(node: _Node) -> set:
    kind = node[0]
    if kind == "var":
        return {node[1]}
    if kind in ("num",):
        return set()
    if kind == "pow":
        return expr_variables(node[1])
    return set().union(*(expr_variables(c) for c in node[1:] if isinstance(c, tuple)))


def eval_expr(node: _Node, field: Field, env: Mapping[str, Scalar]) -> Scalar:
    """Fully evaluate an expression tree to a Scalar.

    Raises SqrtUnavailable when a radicand is a nonsquare and DivisionByZero
    when a denominator vanishes — callers treat both as "point not realizable".
    """
    kind = node[0]
    if kind == "num":
        return field.scalar(node[1])
    if kind == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise AlgidError(f"unbound variable {node[1]!r}") from None
    if kind == "add":
        return eval_expr(node[1], field, env) + eval_expr(node[2], field, env)
    if kind == "sub":
        return eval_expr(node[1], field, env) - eval_expr(node[2], field, env)
    if kind == "mul":
        return eval_expr(node[1], field, env) * eval_expr(node[2], field, env)
    if kind == "div":
        den = eval_expr(node[2], field, env)
        if den.is_zero():
            raise DivisionByZero("denominator vanishes in expression")
        return eval_expr(node[1], field, env) / den
    if kind == "neg":
        return -eval_expr(node[1], field, env)
    if kind == "pow":
        base = eval_expr(node[1], field, env)
        out = field.one()
        for _ in range(node[2]):
            out = out * base
        return out
    if kind == "sqrt":
        rad = eval_expr(node[1], field, env)
        root = sqrt(rad)
        if root is None:
            raise SqrtUnavailable(rad)
        return root
    raise AlgidError(f"bad expression node {kind!r}")


def expr_to_poly(node: _Node, field: Field, env: Optional[Mapping[str, object]] = None) -> MultiPoly:
    """Build a MultiPoly; unbound variables stay symbolic.

    Division is only allowed by nonzero constants and sqrt only of constant
    squares, which keeps the result a genuine polynomial.
    """
    env = env or {}

    def rec(n: _Node) -> MultiPoly:
        kind = n[0]
        if kind == "num":
            return MultiPoly.const(field, n[1])
        if kind == "var":
            if n[1] in env:
                return MultiPoly.coerce(field, env[n[1]])
            return MultiPoly.var(field, n[1])
        if kind == "add":
            return rec(n[1]) + rec(n[2])
        if kind == "sub":
            return rec(n[1]) - rec(n[2])
        if kind == "mul":
            return rec(n[1]) * rec(n[2])
        if kind == "neg":
            return -rec(n[1])
        if kind == "pow":
            return rec(n[1]) ** n[2]
        if kind == "div":
            den = rec(n[2])
            if not den.is_constant():
                raise AlgidError("division by a non-constant expression")
            c = den.constant_value()
            if c.is_zero():
                raise DivisionByZero("constant denominator vanishes")
            from .exactnum import inv

            return rec(n[1]).scale(inv(c))
        if kind == "sqrt":
            inner = rec(n[1])
            if not inner.is_constant():
                raise AlgidError("sqrt of a non-constant expression")
            root = sqrt(inner.constant_value())
            if root is None:
                raise SqrtUnavailable(inner.constant_value())
            return MultiPoly.const(field, root)
        raise AlgidError(f"bad expression node {kind!r}")

    return rec(node)


def parse_poly(text: str, field: Field, env: Optional[Mapping[str, object]] = None) -> MultiPoly:
    """Parse mini-language text straight to a polynomial over `field`."""
    return expr_to_poly(parse_expr(text), field, env)
