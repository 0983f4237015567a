"""A tiny language for polynomial identities on a nonassociative algebra.

Grammar (whitespace-insensitive)::

    identity := sum ("=" sum)?          missing right side means "= 0"
    sum      := ("-")? term (("+"|"-") term)*  |  "0"
    term     := INT? factor             an integer weight, never a product
    factor   := atom ("*" atom)?        "*" does not associate: a*b*c is an error
    atom     := NAME | "(" sum ")" | "[" sum "," sum ("," sum)? "]"
    atom     := atom "^2"               square, expands to atom*atom

Names are letters followed by letters, digits or primes (u, v', w2).  Brackets
of two arguments are commutators [a,b] = ab - ba, of three associators
[a,b,c] = (ab)c - a(bc).  A bare integer is only legal as the literal 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple, Union

from .errors import IdentitySyntaxError, UnknownIdentity


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Prod:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Comm:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Assoc:
    a: "Node"
    b: "Node"
    c: "Node"


@dataclass(frozen=True)
class Sum:
    terms: Tuple[Tuple[int, "Node"], ...]


Node = Union[Var, Prod, Comm, Assoc, Sum]


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Sum
    rhs: Sum

    def render(self) -> str:
        return f"{render(self.lhs)} = {render(self.rhs) if self.rhs.terms else '0'}"


# -- parsing -------------------------------------------------------------------


def _tokenize(text: str):
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
        elif ch in "+-*^=()[],":
            toks.append((i, ch, ch))
            i += 1
        else:
            raise IdentitySyntaxError(i, f"unexpected character {ch!r}")
    return toks


def _mk_sum(terms: List[Tuple[int, Node]]) -> Sum:
    return Sum(tuple((w, f) for w, f in terms if w != 0))


def _unwrap(s: Sum) -> Node:
    if len(s.terms) == 1 and s.terms[0][0] == 1:
        return s.terms[0][1]
    return s


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (len(self.text), "end", "")

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[1] != kind:
            raise IdentitySyntaxError(tok[0], f"expected {kind!r}, got {tok[2] or 'end of input'!r}")
        self.pos += 1
        return tok

    def identity(self, name: str) -> Identity:
        lhs = self.sum()
        rhs = Sum(())
        if self.peek()[1] == "=":
            self.take()
            rhs = self.sum()
        tok = self.peek()
        if tok[1] != "end":
            raise IdentitySyntaxError(tok[0], f"trailing input {tok[2]!r}")
        return Identity(name, lhs, rhs)

    def sum(self) -> Sum:
        terms: List[Tuple[int, Node]] = []
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.peek()[1] in ("+", "-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        if len(terms) == 1 and terms[0] == (0, None):
            return Sum(())
        if any(f is None for _, f in terms):
            bad = next(t for t in terms if t[1] is None)
            raise IdentitySyntaxError(self.peek()[0], "a bare integer other than a lone 0 is not a term")
        return _mk_sum(terms)

    def term(self, sign: int) -> Tuple[int, Node]:
        weight = 1
        tok = self.peek()
        if tok[1] == "int":
            self.take()
            weight = int(tok[2])
            if self.peek()[1] not in ("name", "(", "["):
                if weight == 0:
                    return (0, None)
                raise IdentitySyntaxError(tok[0], "integer weight must be followed by a factor")
        return (sign * weight, self.factor())

    def factor(self) -> Node:
        node = self.atom()
        if self.peek()[1] == "*":
            self.take()
            node = Prod(node, self.atom())
        tok = self.peek()
        if tok[1] == "*":
            raise IdentitySyntaxError(tok[0], "the product is not associative; add parentheses")
        if tok[1] in ("name", "(", "[", "int"):
            raise IdentitySyntaxError(tok[0], "adjacent factors need an explicit *")
        return node

    def atom(self) -> Node:
        tok = self.peek()
        if tok[1] == "name":
            self.take()
            node: Node = Var(tok[2])
        elif tok[1] == "(":
            self.take()
            node = _unwrap(self.sum())
            self.take(")")
        elif tok[1] == "[":
            self.take()
            args = [_unwrap(self.sum())]
            self.take(",")
            args.append(_unwrap(self.sum()))
            if self.peek()[1] == ",":
                self.take()
                args.append(_unwrap(self.sum()))
            self.take("]")
            node = Comm(*args) if len(args) == 2 else Assoc(*args)
        else:
            raise IdentitySyntaxError(tok[0], f"expected a factor, got {tok[2] or 'end of input'!r}")
        if self.peek()[1] == "^":
            self.take()
            etok = self.take("int")
            if etok[2] != "2":
                raise IdentitySyntaxError(etok[0], "only squares are defined without an association order")
            node = Prod(node, node)
        return node


def parse_identity(text: str, name: str = "") -> Identity:
    return _Parser(text).identity(name or text)


# -- rendering -----------------------------------------------------------------


def render(node: Node) -> str:
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Prod):
        return f"{_atom_text(node.left)}*{_atom_text(node.right)}"
    if isinstance(node, Comm):
        return f"[{render(node.left)},{render(node.right)}]"
    if isinstance(node, Assoc):
        return f"[{render(node.a)},{render(node.b)},{render(node.c)}]"
    if isinstance(node, Sum):
        if not node.terms:
            return "0"
        parts = []
        for w, f in node.terms:
            mag = abs(w)
            body = _atom_text(f) if isinstance(f, Sum) else render(f)
            text = body if mag == 1 else f"{mag} {body}"
            if not parts:
                parts.append(("-" if w < 0 else "") + text)
            else:
                parts.append(("- " if w < 0 else "+ ") + text)
        return " ".join(parts)
    raise TypeError(f"not an identity node: {node!r}")


def _atom_text(node: Node) -> str:
    if isinstance(node, (Prod, Sum)):
        return f"({render(node)})"
    return render(node)


# -- structural queries ----------------------------------------------------------


def variables(node: Node) -> List[str]:
    """Variable names in order of first appearance."""
    out: List[str] = []

    def walk(n: Node):
        if isinstance(n, Var):
            if n.name not in out:
                out.append(n.name)
        elif isinstance(n, Prod) or isinstance(n, Comm):
            walk(n.left)
            walk(n.right)
        elif isinstance(n, Assoc):
            walk(n.a)
            walk(n.b)
            walk(n.c)
        elif isinstance(n, Sum):
            for _, f in n.terms:
                walk(f)

    walk(node)
    return out


def identity_variables(ident: Identity) -> List[str]:
    out = variables(ident.lhs)
    for v in variables(ident.rhs):
        if v not in out:
            out.append(v)
    return out


Word = Union[Var, Prod]


def word_terms(node: Node) -> Dict[Word, int]:
    """Expand brackets and sums into a signed combination of plain words.

    Words are binary trees built from Var and Prod only; the result maps each
    word to its integer coefficient (zero coefficients dropped).
    """
    out: Dict[Word, int] = {}

    def add(w: Word, c: int):
        n = out.get(w, 0) + c
        if n:
            out[w] = n
        else:
            out.pop(w, None)

    def walk(n: Node, c: int):
        if isinstance(n, Var):
            add(n, c)
        elif isinstance(n, Prod):
            for lw, lc in word_terms(n.left).items():
                for rw, rc in word_terms(n.right).items():
                    add(Prod(lw, rw), c * lc * rc)
        elif isinstance(n, Comm):
            walk(Prod(n.left, n.right), c)
            walk(Prod(n.right, n.left), -c)
        elif isinstance(n, Assoc):
            walk(Prod(Prod(n.a, n.b), n.c), c)
            walk(Prod(n.a, Prod(n.b, n.c)), -c)
        elif isinstance(n, Sum):
            for w, f in n.terms:
                walk(f, c * w)
        else:
            raise TypeError(f"not an identity node: {n!r}")

    walk(node, 1)
    return out


def word_leaves(w: Word) -> Iterator[str]:
    if isinstance(w, Var):
        yield w.name
    else:
        yield from word_leaves(w.left)
        yield from word_leaves(w.right)


def degree_profile(ident: Identity) -> Dict[str, int]:
    """Maximum number of occurrences of each variable in any expanded word."""
    out: Dict[str, int] = {v: 0 for v in identity_variables(ident)}
    for side in (ident.lhs, ident.rhs):
        for w in word_terms(side):
            counts: Dict[str, int] = {}
            for name in word_leaves(w):
                counts[name] = counts.get(name, 0) + 1
            for name, k in counts.items():
                out[name] = max(out.get(name, 0), k)
    return out


def is_multilinear(ident: Identity) -> bool:
    """True when every expanded word contains each identity variable exactly once."""
    names = set(identity_variables(ident))
    if not names:
        return False
    for side in (ident.lhs, ident.rhs):
        for w in word_terms(side):
            counts: Dict[str, int] = {}
            for name in word_leaves(w):
                counts[name] = counts.get(name, 0) + 1
            if set(counts) != names or any(k != 1 for k in counts.values()):
                return False
    return True


def mirror(node: Node) -> Node:
    """Replace every product a*b by b*a (the opposite-algebra translation)."""
    if isinstance(node, Var):
        return node
    if isinstance(node, Prod):
        return Prod(mirror(node.right), mirror(node.left))
    if isinstance(node, Comm):
        return Comm(mirror(node.right), mirror(node.left))
    if isinstance(node, Assoc):
        # ((ab)c - a(bc)) reversed is c(ba) - (cb)a = -[c',b',a']
        return Sum(((-1, Assoc(mirror(node.c), mirror(node.b), mirror(node.a))),))
    if isinstance(node, Sum):
        terms = []
        for w, f in node.terms:
            m = mirror(f)
            if isinstance(m, Sum) and len(m.terms) == 1:
                terms.append((w * m.terms[0][0], m.terms[0][1]))
            else:
                terms.append((w, m))
        return _mk_sum(terms)
    raise TypeError(f"not an identity node: {node!r}")


def mirror_identity(ident: Identity) -> Identity:
    return Identity(f"{ident.name}^op", mirror(ident.lhs), mirror(ident.rhs))


# -- the standard catalogue of identities ---------------------------------------

IDENTITY_TEXTS: Dict[str, str] = {
    "I1": "u*v = v*u",
    "I2": "u*v = -v*u",
    "I3": "(u*v)*w = u*(v*w)",
    "I4": "(u*v)*w = -u*(v*w)",
    "I5": "u^2*u = u*u^2",
    "I6": "[u,v]*w = w*[u,v]",
    "I7": "[u,v]*w = -w*[u,v]",
    "I8": "[u,v]*w = u*[v,w]",
    "I9": "[u,v]*w = -u*[v,w]",
    "I10": "u*(v*u) = (u*v)*u",
    "I11": "u*(v*u) = -(u*v)*u",
    "I12": "u*[v,u] = [u,v]*u",
    "I13": "u*[v,u] = -[u,v]*u",
    "I14": "u*(v*w) = (u*v)*w + v*(u*w)",
    "I15": "u*(v*w) = -(u*v)*w - v*(u*w)",
    "I16": "u*[v,w] = [u,v]*w + v*[u,w]",
    "I17": "u*[v,w] = -[u,v]*w - v*[u,w]",
    "I18": "(u*v)*w + (v*w)*u + (w*u)*v = 0",
    "I19": "(u*v)*u^2 = u*(v*u^2)",
    "I20": "(u*v)*u^2 = -u*(v*u^2)",
    "I21": "[u,v]*u^2 = u*[v,u^2]",
    "I22": "[u,v]*u^2 = -u*[v,u^2]",
    "I23": "((u*v)*w + (v*w)*u + (w*u)*v)*u = (u*v)*(u*w) + (v*(u*w))*u + ((u*w)*u)*v",
    "I24": "((u*v)*w + (v*w)*u + (w*u)*v)*u = -(u*v)*(u*w) - (v*(u*w))*u - ((u*w)*u)*v",
    "I25": "(u*v)*w = u*(v*w + w*v)",
    "I26": "(u*v)*w = -u*(v*w + w*v)",
    "I27": "[u,v,w] = [v,u,w]",
    "I28": "[u,v,w] = -[v,u,w]",
    "I29": "[u,v,w] = [w,v,u]",
    "I30": "[u,v,w] = -[w,v,u]",
    # derived expressions checked to vanish on particular algebras
    "comm-of-comms": "[[u,v],[u',v']]",
    "comm-times-comm": "[u,v]*[u',v']",
    "assoc-times-assoc": "[u,v,w]*[u',v',w']",
    "jacobi-left": "[u,v]*w + [v,w]*u + [w,u]*v",
    "jacobi-right": "w*[u,v] + u*[v,w] + v*[w,u]",
    "weighted-comm-mix": "2[u,v]*w + w*[u,v]",
    "assoc-cycle-minus": "[u,v,w] + [v,w,u] - [w,u,v]",
    "assoc-cycle-plus": "[u,v,w] + [v,w,u] + [w,u,v]",
    "left-assoc-word": "(u*v)*w",
    "right-assoc-word": "u*(v*w)",
}

NUMBERED_IDENTITIES = tuple(f"I{k}" for k in range(1, 31))


def get_identity(name: str) -> Identity:
    try:
        text = IDENTITY_TEXTS[name]
    except KeyError:
        raise UnknownIdentity(name) from None
    return parse_identity(text, name)
