"""Two-dimensional algebras as matrices of structural constants.

An algebra on basis e1, e2 is encoded by the 2 x 4 matrix A whose columns are
indexed by the ordered products (e1e1, e1e2, e2e1, e2e2): column (i,j) holds
the coordinates of ei * ej.  For coordinate vectors u, v the product is

    (u v)  =  A . (u (x) v)

with u (x) v the Kronecker column (u1 v1, u1 v2, u2 v1, u2 v2).

Entries may be exact field scalars (a concrete algebra) or polynomials in the
structure constants a1..a4, b1..b4 (the generic algebra); operations promote
scalars to constant polynomials whenever the two kinds meet.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple, Union

from .errors import DimensionMismatch, FieldMismatch
from .exactnum import Field, Scalar, inv
from .multipoly import MultiPoly

Entry = Union[Scalar, MultiPoly]

GENERIC_NAMES = (("a1", "a2", "a3", "a4"), ("b1", "b2", "b3", "b4"))


def _lift(field: Field, x: Entry) -> MultiPoly:
    if isinstance(x, MultiPoly):
        return x
    return MultiPoly.const(field, x)


def _any_poly(*groups) -> bool:
    return any(isinstance(x, MultiPoly) for g in groups for x in g)


class Vec:
    """A coordinate vector (length 2) over scalars or polynomials."""

    __slots__ = ("field", "entries")

    def __init__(self, field: Field, entries: Sequence[Entry]):
        if len(entries) != 2:
            raise DimensionMismatch(f"expected 2 coordinates, got {len(entries)}")
        self.field = field
        self.entries: Tuple[Entry, Entry] = tuple(entries)

    @classmethod
    def basis(cls, field: Field, i: int) -> "Vec":
        if i not in (1, 2):
            raise DimensionMismatch(f"basis index {i} out of range for dimension 2")
        return cls(field, [field.one() if k == i else field.zero() for k in (1, 2)])

    @classmethod
    def symbolic(cls, field: Field, prefix: str) -> "Vec":
        return cls(field, [MultiPoly.var(field, f"{prefix}1"), MultiPoly.var(field, f"{prefix}2")])

    def lift(self) -> "Vec":
        return Vec(self.field, [_lift(self.field, x) for x in self.entries])

    def __add__(self, other: "Vec") -> "Vec":
        a, b = _align_vecs(self, other)
        return Vec(self.field, [x + y for x, y in zip(a.entries, b.entries)])

    def __sub__(self, other: "Vec") -> "Vec":
        a, b = _align_vecs(self, other)
        return Vec(self.field, [x - y for x, y in zip(a.entries, b.entries)])

    def __neg__(self) -> "Vec":
        return Vec(self.field, [-x for x in self.entries])

    def scale(self, c) -> "Vec":
        if isinstance(c, MultiPoly) or _any_poly(self.entries):
            cp = c if isinstance(c, MultiPoly) else MultiPoly.const(self.field, c)
            return Vec(self.field, [cp * _lift(self.field, x) for x in self.entries])
        c = self.field.scalar(c)
        return Vec(self.field, [c * x for x in self.entries])

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec) or self.field != other.field:
            return False
        a, b = _align_vecs(self, other)
        return a.entries == b.entries

    def __hash__(self) -> int:
        return hash((self.field, self.entries))

    def __repr__(self) -> str:
        return f"Vec({self.entries[0]!r}, {self.entries[1]!r})"

    def to_json(self) -> list:
        return [_entry_json(x) for x in self.entries]


def _align_vecs(a: Vec, b: Vec) -> Tuple[Vec, Vec]:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    if _any_poly(a.entries, b.entries):
        return a.lift(), b.lift()
    return a, b


def _entry_json(x: Entry):
    if isinstance(x, Scalar):
        return x.to_json()
    if x.is_constant():
        return x.constant_value().to_json()
    raise ValueError("cannot serialize a non-constant symbolic entry")


class Msc:
    """Matrix of structural constants of a 2-dimensional algebra."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows: Sequence[Sequence[Entry]]):
        if len(rows) != 2 or any(len(r) != 4 for r in rows):
            raise DimensionMismatch("a 2-dimensional MSC has 2 rows of 4 columns")
        self.field = field
        self.rows: Tuple[Tuple[Entry, ...], ...] = tuple(tuple(r) for r in rows)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_scalars(cls, field: Field, rows: Sequence[Sequence[object]]) -> "Msc":
        return cls(field, [[field.scalar(x) for x in r] for r in rows])

    @classmethod
    def generic(cls, field: Field) -> "Msc":
        return cls(
            field,
            [[MultiPoly.var(field, name) for name in row] for row in GENERIC_NAMES],
        )

    # -- structure -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return 2

    def is_concrete(self) -> bool:
        return all(isinstance(x, Scalar) for row in self.rows for x in row)

    def lift(self) -> "Msc":
        return Msc(self.field, [[_lift(self.field, x) for x in row] for row in self.rows])

    def entries_flat(self) -> Tuple[Entry, ...]:
        """Row-major entries, matching the generic names a1..a4, b1..b4."""
        return tuple(x for row in self.rows for x in row)

    def generic_assignment(self) -> dict:
        names = [n for row in GENERIC_NAMES for n in row]
        return dict(zip(names, self.entries_flat()))

    # -- algebra operations ---------------------------------------------------

    def product(self, u: Vec, v: Vec) -> Vec:
        if u.field != self.field or v.field != self.field:
            raise FieldMismatch("vector field differs from algebra field")
        A = self
        if _any_poly(self.entries_flat(), u.entries, v.entries):
            A, u, v = self.lift(), u.lift(), v.lift()
        u1, u2 = u.entries
        v1, v2 = v.entries
        tensor = (u1 * v1, u1 * v2, u2 * v1, u2 * v2)
        return Vec(
            self.field,
            [sum_entries([A.rows[r][k] * tensor[k] for k in range(4)]) for r in range(2)],
        )

    def commutator(self, u: Vec, v: Vec) -> Vec:
        return self.product(u, v) - self.product(v, u)

    def associator(self, u: Vec, v: Vec, w: Vec) -> Vec:
        return self.product(self.product(u, v), w) - self.product(u, self.product(v, w))

    def opposite(self) -> "Msc":
        """The algebra with reversed multiplication; swaps the e1e2/e2e1 columns."""
        return Msc(self.field, [[r[0], r[2], r[1], r[3]] for r in self.rows])

    # -- comparisons / serialization ------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Msc) or self.field != other.field:
            return False
        a, b = self, other
        if _any_poly(a.entries_flat(), b.entries_flat()):
            a, b = a.lift(), b.lift()
        return a.rows == b.rows

    def __hash__(self) -> int:
        return hash((self.field, self.rows))

    def __repr__(self) -> str:
        r1 = ", ".join(repr(x) for x in self.rows[0])
        r2 = ", ".join(repr(x) for x in self.rows[1])
        return f"Msc([{r1}; {r2}])"

    def table(self) -> List[str]:
        """Multiplication table lines e_i e_j = ... for display."""
        cols = [(1, 1), (1, 2), (2, 1), (2, 2)]
        lines = []
        for k, (i, j) in enumerate(cols):
            parts = []
            for r in (0, 1):
                c = self.rows[r][k]
                text = str(c) if isinstance(c, Scalar) else c.render()
                if text == "0":
                    continue
                if text == "1":
                    parts.append(f"e{r + 1}")
                elif text == "-1":
                    parts.append(f"-e{r + 1}")
                elif any(op in text for op in (" + ", " - ")):
                    parts.append(f"({text}) e{r + 1}")
                else:
                    parts.append(f"{text} e{r + 1}")
            rhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
            lines.append(f"e{i} e{j} = {rhs}")
        return lines

    def to_json(self) -> dict:
        return {
            "dim": 2,
            "field": self.field.to_json(),
            "entries": [[_entry_json(x) for x in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Msc":
        from .exactnum import field_make

        if data.get("dim") != 2:
            raise DimensionMismatch(f"unsupported dimension {data.get('dim')!r}")
        field = field_make(data["field"])
        return cls.from_scalars(field, data["entries"])


def sum_entries(xs: Sequence[Entry]) -> Entry:
    out = xs[0]
    for x in xs[1:]:
        out = out + x
    return out


# -- generic small matrices (lists of lists) ----------------------------------


def mat_mul(A: Sequence[Sequence[Entry]], B: Sequence[Sequence[Entry]]):
    n, k, m = len(A), len(B), len(B[0])
    assert all(len(r) == k for r in A)
    return [
        [sum_entries([A[i][t] * B[t][j] for t in range(k)]) for j in range(m)]
        for i in range(n)
    ]


def mat_kron(A: Sequence[Sequence[Entry]], B: Sequence[Sequence[Entry]]):
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b for a in ra for b in rb])
    return out


def identity_mat(field: Field, n: int, symbolic: bool = False):
    one = MultiPoly.const(field, 1) if symbolic else field.one()
    zero = MultiPoly.zero(field) if symbolic else field.zero()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def det2(g: Sequence[Sequence[Entry]]) -> Entry:
    return g[0][0] * g[1][1] - g[0][1] * g[1][0]


def change_basis(A: Msc, g: Sequence[Sequence[Scalar]]) -> Msc:
    """MSC of the image algebra under the isomorphism with matrix g.

    If f has matrix g (coordinates of f(x) are g.x) then the returned B
    satisfies f(u v) = f(u) f(v) in B, i.e. B = g A (g^-1 (x) g^-1).
    Concrete scalar entries only; for symbolic witnesses use conjugates_to,
    which avoids inverting g.
    """
    d = det2(g)
    if d.is_zero():
        raise ValueError("change of basis matrix is singular")
    dinv = inv(d)
    ginv = [[g[1][1] * dinv, -g[0][1] * dinv], [-g[1][0] * dinv, g[0][0] * dinv]]
    rows = mat_mul(mat_mul(g, A.rows), mat_kron(ginv, ginv))
    return Msc(A.field, rows)


def conjugates_to(A: Msc, B: Msc, g: Sequence[Sequence[Entry]]) -> bool:
    """True iff the isomorphism with matrix g carries A onto B.

    Uses the division-free form g.A == B.(g (x) g), valid for polynomial
    entries as well, plus invertibility of g.
    """
    if det2(g).is_zero():
        return False
    field = A.field

    def lift_rows(M):
        return [[_lift(field, x) for x in row] for row in M]

    gl = lift_rows(g)
    lhs = mat_mul(gl, lift_rows(A.rows))
    rhs = mat_mul(lift_rows(B.rows), mat_kron(gl, gl))
    return lhs == rhs
