"""Canonical two-dimensional algebra families and the classification claims.

Twelve families per characteristic regime, stored as 2x4 cell-expression
templates over named parameters.  On top of the templates sit three kinds of
claim tables, all transcribed literally from the classification being
verified:

* ``CLAIMED_SOLUTIONS[regime][identity]`` — which family instances are
  asserted to satisfy each identity,
* ``OPPOSITE_TABLES[regime]`` — how each family relates to its opposite
  algebra (exact equality or isomorphism, with the printed witness where one
  is printed),
* ``SELF_OPPOSITE[regime]`` — which instances are asserted isomorphic to
  their own opposite.

This module is data plus instantiation helpers; the checking logic lives in
``verifier``.  Rows known to be wrong in the source tables carry a non-empty
``erratum`` note and are still checked (they are expected to fail with a
witness, never silently dropped).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra_core import Msc
from .errors import (
    CharMismatch,
    DivisionByZero,
    ParamCountMismatch,
    SearchSpaceTooLarge,
    UnknownFamily,
    UnknownIdentity,
)
from .exactnum import QQ, Field, Scalar
from .multipoly import (
    MultiPoly,
    SqrtUnavailable,
    eval_expr,
    expr_to_poly,
    parse_expr,
)

REGIME_CHAR0 = "char0"  # characteristic not 2 and not 3
REGIME_CHAR2 = "char2"
REGIME_CHAR3 = "char3"
REGIMES = (REGIME_CHAR0, REGIME_CHAR2, REGIME_CHAR3)

# Hard cap on brute-force parameter enumeration (p ** n_frees).
_ENUM_LIMIT = 20000


def regime_for_field(field: Field) -> str:
    """The regime whose canonical forms make sense over `field`."""
    if field.char == 2:
        return REGIME_CHAR2
    if field.char == 3:
        return REGIME_CHAR3
    return REGIME_CHAR0


@lru_cache(maxsize=None)
def _node(text: str):
    return parse_expr(text)


def _has_sqrt(text: str) -> bool:
    def walk(n) -> bool:
        if n[0] == "sqrt":
            return True
        return any(walk(c) for c in n[1:] if isinstance(c, tuple))

    return walk(_node(text))


def scalar_text(s: Scalar) -> str:
    return str(s.value)


@dataclass(frozen=True)
class Family:
    """One canonical family: a 2x4 template of cell expressions."""

    name: str
    regime: str
    params: Tuple[str, ...]
    rows: Tuple[Tuple[str, str, str, str], Tuple[str, str, str, str]]
    note: str = ""

    @property
    def arity(self) -> int:
        return len(self.params)

    def label(self) -> str:
        if not self.params:
            return self.name
        return "%s(%s)" % (self.name, ", ".join(self.params))

    def param_cell(self, param: str) -> Tuple[int, int]:
        """Position of the cell that is literally this parameter."""
        for r in range(2):
            for c in range(4):
                if self.rows[r][c].strip() == param:
                    return (r, c)
        raise UnknownFamily(
            "family %s has no bare cell for parameter %s" % (self.name, param)
        )

    def check_regime(self, field: Field) -> None:
        ch = field.char
        ok = {
            REGIME_CHAR0: ch not in (2, 3),
            REGIME_CHAR2: ch == 2,
            REGIME_CHAR3: ch == 3,
        }[self.regime]
        if not ok:
            raise CharMismatch(
                "family %s needs characteristic %s; field has characteristic %d"
                % (
                    self.name,
                    {
                        REGIME_CHAR0: "different from 2 and 3",
                        REGIME_CHAR2: "2",
                        REGIME_CHAR3: "3",
                    }[self.regime],
                    ch,
                )
            )

    def instantiate(self, field: Field, args: Sequence[Scalar]) -> Msc:
        self.check_regime(field)
        if len(args) != self.arity:
            raise ParamCountMismatch(
                "family %s takes %d parameter(s), got %d"
                % (self.name, self.arity, len(args))
            )
        env = dict(zip(self.params, args))
        rows = [
            [eval_expr(_node(cell), field, env) for cell in row]
            for row in self.rows
        ]
        return Msc(field, rows)

    def instantiate_poly(self, field: Field, arg_polys: Sequence[MultiPoly]) -> Msc:
        """Template instantiation with polynomial arguments (symbolic checks)."""
        self.check_regime(field)
        if len(arg_polys) != self.arity:
            raise ParamCountMismatch(
                "family %s takes %d parameter(s), got %d"
                % (self.name, self.arity, len(arg_polys))
            )
        env = dict(zip(self.params, arg_polys))
        rows = [
            [expr_to_poly(_node(cell), field, env) for cell in row]
            for row in self.rows
        ]
        return Msc(field, rows)


def _fam(name, regime, params, row1, row2, note=""):
    return Family(name, regime, tuple(params), (tuple(row1), tuple(row2)), note)


# --- characteristic != 2, 3 ------------------------------------------------

_CHAR0_FAMILIES = (
    _fam("A1", REGIME_CHAR0, ("a1", "a2", "a4", "b1"),
         ("a1", "a2", "a2 + 1", "a4"), ("b1", "-a1", "1 - a1", "-a2")),
    _fam("A2", REGIME_CHAR0, ("a1", "b1", "b2"),
         ("a1", "0", "0", "1"), ("b1", "b2", "1 - a1", "0"),
         note="A2(a1, b1, b2) and A2(a1, -b1, b2) are isomorphic"),
    _fam("A3", REGIME_CHAR0, ("b1", "b2"),
         ("0", "1", "1", "0"), ("b1", "b2", "1", "-1")),
    _fam("A4", REGIME_CHAR0, ("a1", "b2"),
         ("a1", "0", "0", "0"), ("0", "b2", "1 - a1", "0")),
    _fam("A5", REGIME_CHAR0, ("a1",),
         ("a1", "0", "0", "0"), ("1", "2*a1 - 1", "1 - a1", "0")),
    _fam("A6", REGIME_CHAR0, ("a1", "b1"),
         ("a1", "0", "0", "1"), ("b1", "1 - a1", "-a1", "0"),
         note="A6(a1, b1) and A6(a1, -b1) are isomorphic"),
    _fam("A7", REGIME_CHAR0, ("b1",),
         ("0", "1", "1", "0"), ("b1", "1", "0", "-1")),
    _fam("A8", REGIME_CHAR0, ("a1",),
         ("a1", "0", "0", "0"), ("0", "1 - a1", "-a1", "0")),
    _fam("A9", REGIME_CHAR0, (),
         ("1/3", "0", "0", "0"), ("1", "2/3", "-1/3", "0")),
    _fam("A10", REGIME_CHAR0, (),
         ("0", "1", "1", "0"), ("0", "0", "0", "-1")),
    _fam("A11", REGIME_CHAR0, (),
         ("0", "1", "1", "0"), ("1", "0", "0", "-1")),
    _fam("A12", REGIME_CHAR0, (),
         ("0", "0", "0", "0"), ("1", "0", "0", "0")),
)

# --- characteristic 2 -------------------------------------------------------

_CHAR2_FAMILIES = (
    _fam("A1_2", REGIME_CHAR2, ("a1", "a2", "a4", "b1"),
         ("a1", "a2", "1 + a2", "a4"), ("b1", "a1", "1 + a1", "a2")),
    _fam("A2_2", REGIME_CHAR2, ("a1", "b1", "b2"),
         ("a1", "0", "0", "1"), ("b1", "b2", "1 + a1", "0")),
    _fam("A3_2", REGIME_CHAR2, ("a1", "b2"),
         ("a1", "1", "1", "0"), ("0", "b2", "1 + a1", "1")),
    _fam("A4_2", REGIME_CHAR2, ("a1", "b2"),
         ("a1", "0", "0", "0"), ("0", "b2", "1 + a1", "0")),
    _fam("A5_2", REGIME_CHAR2, ("a1",),
         ("a1", "0", "0", "0"), ("1", "1", "1 + a1", "0")),
    _fam("A6_2", REGIME_CHAR2, ("a1", "b1"),
         ("a1", "0", "0", "1"), ("b1", "1 + a1", "a1", "0")),
    _fam("A7_2", REGIME_CHAR2, ("a1",),
         ("a1", "1", "1", "0"), ("0", "1 + a1", "a1", "1")),
    _fam("A8_2", REGIME_CHAR2, ("a1",),
         ("a1", "0", "0", "0"), ("0", "1 + a1", "a1", "0")),
    _fam("A9_2", REGIME_CHAR2, (),
         ("1", "0", "0", "0"), ("1", "0", "1", "0")),
    _fam("A10_2", REGIME_CHAR2, (),
         ("0", "1", "1", "0"), ("0", "0", "0", "1")),
    _fam("A11_2", REGIME_CHAR2, (),
         ("1", "1", "1", "0"), ("0", "1", "1", "1")),
    _fam("A12_2", REGIME_CHAR2, (),
         ("0", "0", "0", "0"), ("1", "0", "0", "0")),
)

# --- characteristic 3 -------------------------------------------------------

_CHAR3_FAMILIES = (
    _fam("A1_3", REGIME_CHAR3, ("a1", "a2", "a4", "b1"),
         ("a1", "a2", "a2 + 1", "a4"), ("b1", "-a1", "1 - a1", "-a2")),
    _fam("A2_3", REGIME_CHAR3, ("a1", "b1", "b2"),
         ("a1", "0", "0", "1"), ("b1", "b2", "1 - a1", "0"),
         note="A2_3(a1, b1, b2) and A2_3(a1, -b1, b2) are isomorphic"),
    _fam("A3_3", REGIME_CHAR3, ("b1", "b2"),
         ("0", "1", "1", "0"), ("b1", "b2", "1", "-1")),
    _fam("A4_3", REGIME_CHAR3, ("a1", "b2"),
         ("a1", "0", "0", "0"), ("0", "b2", "1 - a1", "0")),
    _fam("A5_3", REGIME_CHAR3, ("a1",),
         ("a1", "0", "0", "0"), ("1", "-a1 - 1", "1 - a1", "0")),
    _fam("A6_3", REGIME_CHAR3, ("a1", "b1"),
         ("a1", "0", "0", "1"), ("b1", "1 - a1", "-a1", "0")),
    _fam("A7_3", REGIME_CHAR3, ("b1",),
         ("0", "1", "1", "0"), ("b1", "1", "0", "-1")),
    _fam("A8_3", REGIME_CHAR3, ("a1",),
         ("a1", "0", "0", "0"), ("0", "1 - a1", "-a1", "0")),
    _fam("A9_3", REGIME_CHAR3, (),
         ("0", "1", "1", "0"), ("1", "0", "0", "-1")),
    _fam("A10_3", REGIME_CHAR3, (),
         ("0", "1", "1", "0"), ("0", "0", "0", "-1")),
    _fam("A11_3", REGIME_CHAR3, (),
         ("1", "0", "0", "0"), ("1", "-1", "-1", "0")),
    _fam("A12_3", REGIME_CHAR3, (),
         ("0", "0", "0", "0"), ("1", "0", "0", "0")),
)

FAMILY_ORDER: Dict[str, Tuple[Family, ...]] = {
    REGIME_CHAR0: _CHAR0_FAMILIES,
    REGIME_CHAR2: _CHAR2_FAMILIES,
    REGIME_CHAR3: _CHAR3_FAMILIES,
}

FAMILIES: Dict[str, Family] = {
    f.name: f for fams in FAMILY_ORDER.values() for f in fams
}


def family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamily("unknown family %r (known: %s)"
                            % (name, ", ".join(sorted(FAMILIES)))) from None


# ---------------------------------------------------------------------------
# Claim rows


@dataclass(frozen=True)
class ClaimedRow:
    """One entry of a claimed solution list: a family at given arguments.

    ``args`` are expressions over the ``frees``; ``nonzero``/``zero`` are
    polynomial side conditions on the frees.  ``samples`` freezes rational
    points used over the rationals when an argument involves a square root
    (symbolic checking is used whenever all arguments are radical-free).
    ``sqrt_requirements`` lists constants whose square root the claimed
    witness construction needs to exist in the field (self-opposite rows).
    A non-empty ``erratum`` marks a row known to fail; the text states the
    mechanical witness.
    """

    family: str
    args: Tuple[str, ...]
    frees: Tuple[str, ...] = ()
    nonzero: Tuple[str, ...] = ()
    zero: Tuple[str, ...] = ()
    samples: Tuple[Tuple[str, ...], ...] = ()
    sqrt_requirements: Tuple[str, ...] = ()
    erratum: str = ""
    note: str = ""

    def label(self) -> str:
        if not self.args:
            return self.family
        return "%s(%s)" % (self.family, ", ".join(self.args))

    def has_radical(self) -> bool:
        return any(_has_sqrt(a) for a in self.args)

    def symbolic_algebra(self, field: Field) -> Optional[Msc]:
        """Template at polynomial arguments, or None if a radical blocks it."""
        if self.has_radical():
            return None
        env = {f: MultiPoly.var(field, f) for f in self.frees}
        fam = family(self.family)
        polys = [expr_to_poly(_node(a), field, env) for a in self.args]
        return fam.instantiate_poly(field, polys)

    def _conditions_hold(self, field: Field, env: Dict[str, Scalar]) -> bool:
        for text in self.nonzero:
            if eval_expr(_node(text), field, env).is_zero():
                return False
        for text in self.zero:
            if not eval_expr(_node(text), field, env).is_zero():
                return False
        return True

    def _instance_at(self, field: Field, point: Tuple[Scalar, ...]) -> "ClaimInstance":
        env = dict(zip(self.frees, point))
        try:
            vals = tuple(eval_expr(_node(a), field, env) for a in self.args)
        except SqrtUnavailable as exc:
            return ClaimInstance(self, point, None, None,
                                 "square root unavailable: %s" % exc)
        except DivisionByZero as exc:
            return ClaimInstance(self, point, None, None,
                                 "division by zero: %s" % exc)
        algebra = family(self.family).instantiate(field, vals)
        return ClaimInstance(self, point, vals, algebra, "")

    def instances(self, field: Field) -> List["ClaimInstance"]:
        """Concrete instances of this row over `field`.

        Over the rationals: the frozen sample points (radical rows), or the
        single point for parameter-free rows; rows with free radical-free
        parameters yield no concrete instances here — they are checked
        symbolically via `symbolic_algebra`.  Over a finite field every
        parameter assignment is enumerated.  Points violating the side
        conditions are pruned; argument evaluation failures become skipped
        instances carrying the reason.
        """
        if field.kind == "Q":
            if self.samples:
                pts = [
                    tuple(eval_expr(_node(t), field, {}) for t in sample)
                    for sample in self.samples
                ]
            elif not self.frees:
                pts = [()]
            else:
                return []
        else:
            if field.p ** len(self.frees) > _ENUM_LIMIT:
                raise SearchSpaceTooLarge(
                    "%d parameter points over F_%d is over the enumeration limit"
                    % (field.p ** len(self.frees), field.p))
            pts = list(itertools.product(field.elements(), repeat=len(self.frees)))
        out = []
        for pt in pts:
            env = dict(zip(self.frees, pt))
            if not self._conditions_hold(field, env):
                continue
            out.append(self._instance_at(field, pt))
        return out


@dataclass(frozen=True)
class ClaimInstance:
    row: ClaimedRow
    point: Tuple[Scalar, ...]
    arg_values: Optional[Tuple[Scalar, ...]]
    algebra: Optional[Msc]
    skip_reason: str

    def label(self) -> str:
        if self.arg_values is not None:
            if not self.arg_values:
                return self.row.family
            return "%s(%s)" % (
                self.row.family,
                ", ".join(scalar_text(v) for v in self.arg_values),
            )
        base = self.row.label()
        if self.point:
            at = ", ".join(
                "%s=%s" % (f, scalar_text(v))
                for f, v in zip(self.row.frees, self.point)
            )
            return "%s @ %s" % (base, at)
        return base


# Frozen rational sample pools for the radical rows (each value makes the
# radicand a perfect square and respects the row's side conditions).
_POOL_A1_MINUS_A1SQ = (("1/2",), ("1/5",), ("1/10",), ("4/5",), ("9/10",))
_POOL_32A1_MINUS_15 = (("1/2",), ("3/4",), ("5/4",), ("2",), ("3",))
_POOL_12A1_7A1SQ_4 = (("1",), ("1/2",), ("5/7",), ("5/11",), ("13/23",))


def _row(fam_name, *args, frees=(), nz=(), z=(), samples=(), sqrt_req=(),
         erratum="", note=""):
    return ClaimedRow(
        family=fam_name,
        args=tuple(args),
        frees=tuple(frees),
        nonzero=tuple(nz),
        zero=tuple(z),
        samples=tuple(samples),
        sqrt_requirements=tuple(sqrt_req),
        erratum=erratum,
        note=note,
    )


# --- claimed solution lists, characteristic != 2, 3 -------------------------

_C0_I1 = (
    _row("A2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
    _row("A3", "b1", "1", frees=("b1",)),
    _row("A4", "a1", "1 - a1", frees=("a1",)),
    _row("A5", "2/3"),
    _row("A10"),
    _row("A11"),
    _row("A12"),
)

_C0_I7 = _C0_I1 + (
    _row("A4", "a1", "a1 - 1", frees=("a1",)),
    _row("A5", "0"),
    _row("A8", "1/2"),
)

_C0_I14 = (
    _row("A4", "0", "-1"),
    _row("A8", "0"),
    _row("A12"),
)

_C0_I21 = (
    _row("A2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
    _row("A3", "b1", "1", frees=("b1",)),
    _row("A4", "0", "-1"),
    _row("A4", "0", "0"),
    _row("A4", "a1", "1 - a1", frees=("a1",)),
    _row("A5", "2/3"),
    _row("A10"),
    _row("A11"),
    _row("A12"),
)

_ERR_A12_ANTICOMM = (
    "uv + vu = 2 x1 y1 e2 on this algebra, nonzero away from characteristic "
    "2; the characteristic-3 table rightly omits it (expected fail)"
)

_CHAR0_CLAIMS: Dict[str, Tuple[ClaimedRow, ...]] = {
    "I1": _C0_I1,
    "I2": (
        _row("A4", "0", "-1"),
        _row("A12", erratum=_ERR_A12_ANTICOMM),
    ),
    "I3": (
        _row("A2", "1/2", "0", "1/2"),
        _row("A4", "1/2", "1/2"),
        _row("A4", "1", "0"),
        _row("A4", "1", "1"),
        _row("A4", "1/2", "0"),
        _row("A12"),
    ),
    "I4": (_row("A12"),),
    "I5": (
        _row("A1", "1/3", "-1/3", "0", "0"),
        _row("A2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A3", "b1", "1", frees=("b1",)),
        _row("A4", "a1", "1 - a1", frees=("a1",), nz=("3*a1 - 2",)),
        _row("A4", "a1", "2*a1 - 1", frees=("a1",)),
        _row("A5", "2/3"),
        _row("A8", "1/3"),
        _row("A10"),
        _row("A11"),
        _row("A12"),
    ),
    "I6": _C0_I1,
    "I7": _C0_I7,
    "I8": _C0_I1,
    "I9": _C0_I1,
    "I10": _C0_I1 + (
        _row("A4", "a1", "2*a1 - 1", frees=("a1",), nz=("3*a1 - 2",)),
        _row("A8", "1/3"),
    ),
    "I11": (_row("A12"),),
    "I12": _C0_I7,
    "I13": _C0_I1,
    "I14": _C0_I14,
    "I15": (_row("A12"),),
    "I16": _C0_I7,
    "I17": _C0_I1,
    "I18": _C0_I14,
    "I19": (
        _row("A2", "1/2", "0", "1/2"),
        _row("A2", "1/2", "0", "-1/2"),
        _row("A4", "a1", "-1 + 2*a1", frees=("a1",),
             nz=("5*a1^2 - 5*a1 + 1",)),
        _row("A4", "a1", "sqrt(a1 - a1^2)", frees=("a1",),
             nz=("a1", "a1 - 1"), samples=_POOL_A1_MINUS_A1SQ),
        _row("A4", "a1", "-sqrt(a1 - a1^2)", frees=("a1",),
             nz=("a1", "a1 - 1"), samples=_POOL_A1_MINUS_A1SQ),
        _row("A5", "(5 - sqrt(5))/10"),
        _row("A5", "(5 + sqrt(5))/10"),
        _row("A8", "1/3"),
        _row("A8", "(1 - sqrt(-1))/2"),
        _row("A8", "(1 + sqrt(-1))/2"),
        _row("A12"),
    ),
    "I20": (
        _row("A4", "0", "-1"),
        _row("A4", "0", "0"),
        _row("A12"),
    ),
    "I21": _C0_I21,
    "I22": _C0_I21,
    "I23": (
        _row("A2", "1/2", "0", "1/2"),
        _row("A4", "0", "-1"),
        _row("A4", "1/2", "1/2"),
        _row("A4", "1", "0"),
        _row("A8", "0"),
        _row("A12"),
    ),
    "I24": _C0_I14,
    "I25": (_row("A12"),),
    "I26": (_row("A12"),),
    "I27": (
        _row("A2", "1/2", "0", "1/2"),
        _row("A2", "1", "0", "1/2"),
        _row("A4", "1", "b2", frees=("b2",)),
        _row("A4", "1/2", "b2", frees=("b2",)),
        _row("A5", "1"),
        _row("A5", "1/2"),
        _row("A8", "0"),
        _row("A12"),
    ),
    "I28": (
        _row("A2", "1/2", "0", "1/2"),
        _row("A4", "1/2", "1/2"),
        _row("A4", "1/2", "0"),
        _row("A4", "1", "0"),
        _row("A4", "1", "1"),
        _row("A12"),
    ),
    "I29": (
        _row("A1", "a1",
             "(sqrt(32*a1 - 15) - 8*a1 - 1)/8",
             "(4*a1 + 1 - sqrt(32*a1 - 15))/4",
             "(8*a1 - 1 + sqrt(32*a1 - 15))/8",
             frees=("a1",), samples=_POOL_32A1_MINUS_15),
        _row("A1", "a1",
             "(-sqrt(32*a1 - 15) - 8*a1 - 1)/8",
             "(4*a1 + 1 + sqrt(32*a1 - 15))/4",
             "(8*a1 - 1 - sqrt(32*a1 - 15))/8",
             frees=("a1",), samples=_POOL_32A1_MINUS_15),
        _row("A2", "1/2", "0", "1/2"),
        _row("A4", "a1", "(a1 - sqrt(12*a1 - 7*a1^2 - 4))/2",
             frees=("a1",), samples=_POOL_12A1_7A1SQ_4),
        _row("A4", "a1", "(a1 + sqrt(12*a1 - 7*a1^2 - 4))/2",
             frees=("a1",), samples=_POOL_12A1_7A1SQ_4),
        _row("A5", "1/2"),
        _row("A5", "1"),
        _row("A8", "(3 - sqrt(-7))/8"),
        _row("A8", "(3 + sqrt(-7))/8"),
        _row("A12"),
    ),
    "I30": (
        _row("A2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A3", "b1", "1", frees=("b1",)),
        _row("A4", "a1", "1 - a1", frees=("a1",)),
        _row("A4", "a1", "2*a1 - 1", frees=("a1",)),
        _row("A5", "2/3"),
        _row("A8", "1/3"),
        _row("A10"),
        _row("A11"),
        _row("A12"),
    ),
}

# Dedicated list used for I19 when the field has characteristic 5 (the
# char0 list's exclusions degenerate there: 10 = 0 kills the two A5 branches
# and 5 a1^2 - 5 a1 + 1 = 1 frees the A4 row).  The two A5 rows are kept so
# the report shows why they contribute nothing over such fields.
CHAR5_I19_ROWS: Tuple[ClaimedRow, ...] = (
    _row("A2", "1/2", "0", "1/2"),
    _row("A2", "1/2", "0", "-1/2"),
    _row("A4", "a1", "-1 + 2*a1", frees=("a1",)),
    _row("A4", "a1", "sqrt(a1 - a1^2)", frees=("a1",), nz=("a1", "a1 - 1")),
    _row("A4", "a1", "-sqrt(a1 - a1^2)", frees=("a1",), nz=("a1", "a1 - 1")),
    _row("A5", "(5 - sqrt(5))/10",
         note="branch collapses in characteristic 5 (division by 10 = 0)"),
    _row("A5", "(5 + sqrt(5))/10",
         note="branch collapses in characteristic 5 (division by 10 = 0)"),
    _row("A8", "1/3"),
    _row("A8", "3/2"),
    _row("A9"),
    _row("A12"),
)

# --- claimed solution lists, characteristic 2 --------------------------------

_C2_I1 = (
    _row("A2_2", "a1", "b1", "1 + a1", frees=("a1", "b1")),
    _row("A3_2", "a1", "1 + a1", frees=("a1",)),
    _row("A4_2", "a1", "1 + a1", frees=("a1",)),
    _row("A5_2", "0"),
    _row("A10_2"),
    _row("A11_2"),
    _row("A12_2"),
)

_C2_I3 = (
    _row("A3_2", "1", "0"),
    _row("A4_2", "1", "0"),
    _row("A4_2", "1", "1"),
    _row("A8_2", "1"),
    _row("A10_2"),
    _row("A12_2"),
)

_C2_I6 = (
    _row("A2_2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
    _row("A3_2", "a1", "1 - a1", frees=("a1",)),
    _row("A4_2", "a1", "1 - a1", frees=("a1",)),
    _row("A5_2", "0"),
    _row("A10_2"),
    _row("A11_2"),
    _row("A12_2"),
)

_C2_I10 = _C2_I1 + (
    _row("A4_2", "a1", "1", frees=("a1",), nz=("a1",)),
    _row("A8_2", "1"),
)

_C2_I14 = (
    _row("A4_2", "0", "1"),
    _row("A8_2", "0"),
    _row("A12_2"),
)

_C2_I19 = (
    _row("A3_2", "0", "0"),
    _row("A3_2", "1", "0"),
    _row("A4_2", "a1", "1", frees=("a1",)),
    _row("A4_2", "a1", "sqrt(a1 + a1^2)", frees=("a1",),
         nz=("a1^2 + a1 + 1",)),
    _row("A5_2", "a1", frees=("a1",), z=("a1^2 + a1 + 1",),
         note="condition a1^2 + a1 + 1 = 0 has no solution in F_2"),
    _row("A8_2", "1"),
    _row("A10_2"),
    _row("A12_2"),
)

_C2_I21 = _C2_I1 + (_row("A4_2", "0", "0"),)

_C2_I23 = (
    _row("A3_2", "1", "0"),
    _row("A4_2", "1", "0"),
    _row("A4_2", "0", "1"),
    _row("A8_2", "0"),
    _row("A10_2"),
    _row("A12_2"),
)

_C2_I27 = (
    _row("A3_2", "1", "0"),
    _row("A4_2", "1", "b2", frees=("b2",)),
    _row("A5_2", "1"),
    _row("A6_2", "a1", "0", frees=("a1",)),
    _row("A7_2", "1"),
    _row("A8_2", "a1", frees=("a1",)),
    _row("A9_2"),
    _row("A10_2"),
    _row("A12_2"),
)

_C2_I29 = (
    _row("A1_2", "a1", "1 + a1", "a1", "1 + a1", frees=("a1",)),
    _row("A2_2", "a1", "b1", "1 + a1", frees=("a1", "b1")),
    _row("A3_2", "a1", "1 + a1", frees=("a1",)),
    _row("A4_2", "a1", "1 + a1", frees=("a1",)),
    _row("A4_2", "a1", "1", frees=("a1",), nz=("a1",)),
    _row("A5_2", "a1", frees=("a1",)),
    _row("A8_2", "1"),
    _row("A9_2"),
    _row("A10_2"),
    _row("A11_2"),
    _row("A12_2"),
)

_ERR_A52_POISSON = (
    "the left Poisson cycle on A5_2(a1) leaves e2 coefficient x1 y1 z1 with "
    "constant residual 1, unsatisfiable for every a1 in characteristic 2; "
    "dropping the row makes this list the exact analogue of the "
    "characteristic-0 one (expected fail)"
)

_CHAR2_CLAIMS: Dict[str, Tuple[ClaimedRow, ...]] = {
    "I1": _C2_I1,
    "I2": _C2_I1,
    "I3": _C2_I3,
    "I4": _C2_I3,
    "I5": (
        _row("A1_2", "1", "1", "0", "0"),
        _row("A2_2", "a1", "b1", "1 + a1", frees=("a1", "b1")),
        _row("A3_2", "a1", "1 - a1", frees=("a1",)),
        _row("A4_2", "a1", "1 + a1", frees=("a1",), nz=("a1",)),
        _row("A4_2", "a1", "1", frees=("a1",)),
        _row("A5_2", "0"),
        _row("A8_2", "1"),
        _row("A10_2"),
        _row("A11_2"),
        _row("A12_2"),
    ),
    "I6": _C2_I6,
    "I7": _C2_I6,
    "I8": _C2_I1,
    "I9": _C2_I1,
    "I10": _C2_I10,
    "I11": _C2_I10,
    "I12": _C2_I1,
    "I13": _C2_I1,
    "I14": _C2_I14,
    "I15": _C2_I14,
    "I16": _C2_I1,
    "I17": _C2_I1,
    "I18": (
        _row("A4_2", "0", "1"),
        _row("A5_2", "0", erratum=_ERR_A52_POISSON),
        _row("A8_2", "0"),
        _row("A12_2"),
    ),
    "I19": _C2_I19,
    "I20": _C2_I19,
    "I21": _C2_I21,
    "I22": _C2_I21,
    "I23": _C2_I23,
    "I24": _C2_I23,
    "I25": (_row("A12_2"),),
    "I26": (_row("A12_2"),),
    "I27": _C2_I27,
    "I28": _C2_I27,
    "I29": _C2_I29,
    "I30": _C2_I29,
}

# Pairs of identities whose expanded systems coincide in characteristic 2
# (2 = 0 merges the paired sign variants); I5 and I18 stand alone.
CHAR2_IDENTITY_PAIRS: Tuple[Tuple[str, str], ...] = (
    ("I1", "I2"), ("I3", "I4"), ("I6", "I7"), ("I8", "I9"),
    ("I10", "I11"), ("I12", "I13"), ("I14", "I15"), ("I16", "I17"),
    ("I19", "I20"), ("I21", "I22"), ("I23", "I24"), ("I25", "I26"),
    ("I27", "I28"), ("I29", "I30"),
)

# --- claimed solution lists, characteristic 3 --------------------------------

_ERR_A53_COMM = (
    "row 2 of the template is (1, -a1 - 1, 1 - a1, 0) and "
    "(1 - a1) - (-a1 - 1) = 2 is nonzero mod 3, so no instance is "
    "commutative (expected fail)"
)

_C3_I6 = (
    _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
    _row("A3_3", "b1", "1", frees=("b1",)),
    _row("A4_3", "a1", "1 - a1", frees=("a1",)),
    _row("A9_3"),
    _row("A10_3"),
    _row("A11_3"),
    _row("A12_3"),
)

_C3_I7 = _C3_I6 + (
    _row("A4_3", "a1", "a1 - 1", frees=("a1",)),
    _row("A5_3", "0"),
    _row("A8_3", "-1"),
)

_C3_I23 = (
    _row("A2_3", "-1", "0", "-1"),
    _row("A2_3", "0", "0", "-1"),
    _row("A4_3", "a1", "-(1 - a1)^2", frees=("a1",)),
    _row("A5_3", "0"),
    _row("A8_3", "0"),
    _row("A12_3"),
)

_C3_I21 = (
    _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
    _row("A3_3", "b1", "1", frees=("b1",)),
    _row("A4_3", "0", "-1"),
    _row("A4_3", "0", "0"),
    _row("A4_3", "a1", "1 - a1", frees=("a1",)),
    _row("A9_3"),
    _row("A10_3"),
    _row("A11_3"),
    _row("A12_3"),
)

_CHAR3_CLAIMS: Dict[str, Tuple[ClaimedRow, ...]] = {
    "I1": (
        _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A3_3", "b1", "1", frees=("b1",)),
        _row("A4_3", "a1", "1 - a1", frees=("a1",)),
        _row("A5_3", "a1", frees=("a1",), erratum=_ERR_A53_COMM),
        _row("A9_3"),
        _row("A10_3"),
        _row("A11_3"),
        _row("A12_3"),
    ),
    "I2": (_row("A4_3", "0", "-1"),),
    "I3": (
        _row("A2_3", "-1", "0", "-1"),
        _row("A4_3", "-1", "-1"),
        _row("A4_3", "1", "0"),
        _row("A4_3", "1", "1"),
        _row("A4_3", "-1", "0"),
        _row("A12_3"),
    ),
    "I4": (_row("A12_3"),),
    "I5": (
        _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A3_3", "b1", "1", frees=("b1",)),
        _row("A3_3", "0", "-1"),
        _row("A4_3", "a1", "1 - a1", frees=("a1",)),
        _row("A4_3", "a1", "2*a1 - 1", frees=("a1",)),
        _row("A9_3"),
        _row("A10_3"),
        _row("A11_3"),
        _row("A12_3"),
    ),
    "I6": _C3_I6,
    "I7": _C3_I7,
    "I8": _C3_I6,
    "I9": _C3_I6,
    "I10": _C3_I6 + (_row("A4_3", "a1", "2*a1 - 1", frees=("a1",)),),
    "I11": (_row("A12_3"),),
    "I12": _C3_I7,
    "I13": _C3_I6,
    "I14": (
        _row("A4_3", "0", "-1"),
        _row("A8_3", "0"),
        _row("A12_3"),
    ),
    "I15": (
        _row("A2_3", "2", "0", "-1"),
        _row("A4_3", "1", "0"),
        _row("A4_3", "1", "1"),
        _row("A4_3", "-1", "-1"),
        _row("A12_3"),
    ),
    "I16": _C3_I7,
    "I17": _C3_I6,
    "I18": (
        _row("A2_3", "0", "0", "-1"),
        _row("A2_3", "2", "0", "-1"),
        _row("A4_3", "a1", "-(1 - a1)^2", frees=("a1",)),
        _row("A5_3", "0"),
        _row("A8_3", "0"),
        _row("A12_3"),
    ),
    "I19": (
        _row("A2_3", "-1", "0", "1"),
        _row("A2_3", "-1", "0", "-1"),
        _row("A4_3", "a1", "-1 - a1", frees=("a1",),
             nz=("(a1 + 1)^2 + 1",)),
        _row("A4_3", "a1", "sqrt(a1 - a1^2)", frees=("a1",),
             nz=("a1", "a1 - 1")),
        _row("A4_3", "a1", "-sqrt(a1 - a1^2)", frees=("a1",),
             nz=("a1", "a1 - 1")),
        _row("A5_3", "-1 + sqrt(-1)"),
        _row("A5_3", "-1 - sqrt(-1)"),
        _row("A8_3", "sqrt(-1)"),
        _row("A8_3", "-sqrt(-1)"),
        _row("A10_3"),
        _row("A12_3"),
    ),
    "I20": (
        _row("A4_3", "0", "-1"),
        _row("A4_3", "0", "0"),
        _row("A12_3"),
    ),
    "I21": _C3_I21,
    "I22": _C3_I21,
    "I23": _C3_I23,
    "I24": _C3_I23,
    "I25": (_row("A12_3"),),
    "I26": (
        _row("A2_3", "-1", "0", "-1"),
        _row("A4_3", "-1", "0"),
        _row("A4_3", "-1", "-1"),
        _row("A4_3", "1", "0"),
        _row("A12_3"),
    ),
    "I27": (
        _row("A2_3", "-1", "0", "-1"),
        _row("A2_3", "1", "0", "-1"),
        _row("A4_3", "1", "b2", frees=("b2",)),
        _row("A4_3", "-1", "b2", frees=("b2",)),
        _row("A5_3", "-1"),
        _row("A5_3", "1"),
        _row("A8_3", "0"),
        _row("A12_3"),
    ),
    "I28": (
        _row("A2_3", "-1", "0", "-1"),
        _row("A4_3", "-1", "-1"),
        _row("A4_3", "-1", "0"),
        _row("A4_3", "1", "0"),
        _row("A4_3", "1", "1"),
        _row("A12_3"),
    ),
    "I29": (
        _row("A1_3", "a1",
             "sqrt(2*a1) - a1 + 1",
             "a1 - 2 - 2*sqrt(2*a1)",
             "a1 + 1 + sqrt(2*a1)",
             frees=("a1",)),
        _row("A1_3", "a1",
             "-sqrt(2*a1) - a1 + 1",
             "a1 - 2 + 2*sqrt(2*a1)",
             "a1 + 1 - sqrt(2*a1)",
             frees=("a1",)),
        _row("A2_3", "-1", "0", "-1"),
        _row("A4_3", "a1", "-a1 + sqrt(-a1^2 - 1)", frees=("a1",)),
        _row("A4_3", "a1", "-a1 - sqrt(-a1^2 - 1)", frees=("a1",)),
        _row("A5_3", "-1"),
        _row("A5_3", "1"),
        _row("A8_3", "sqrt(-1)"),
        _row("A8_3", "-sqrt(-1)"),
        _row("A12_3"),
    ),
    "I30": (
        _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A3_3", "b1", "1", frees=("b1",)),
        _row("A4_3", "a1", "1 - a1", frees=("a1",)),
        _row("A4_3", "a1", "2*a1 - 1", frees=("a1",)),
        _row("A9_3"),
        _row("A10_3"),
        _row("A11_3"),
        _row("A12_3"),
    ),
}

CLAIMED_SOLUTIONS: Dict[str, Dict[str, Tuple[ClaimedRow, ...]]] = {
    REGIME_CHAR0: _CHAR0_CLAIMS,
    REGIME_CHAR2: _CHAR2_CLAIMS,
    REGIME_CHAR3: _CHAR3_CLAIMS,
}


def claimed_rows(regime: str, identity_name: str,
                 field: Optional[Field] = None) -> Tuple[ClaimedRow, ...]:
    """The claimed list for one identity in one regime.

    Passing the target field swaps in the dedicated characteristic-5 list
    for I19 (the only list that is sensitive to a characteristic inside the
    char0 regime).
    """
    try:
        table = CLAIMED_SOLUTIONS[regime]
    except KeyError:
        raise UnknownIdentity("unknown regime %r" % (regime,)) from None
    if identity_name not in table:
        raise UnknownIdentity("no claimed list for %r" % (identity_name,))
    if (identity_name == "I19" and regime == REGIME_CHAR0
            and field is not None and field.char == 5):
        return CHAR5_I19_ROWS
    return table[identity_name]


# ---------------------------------------------------------------------------
# Opposite-algebra tables


@dataclass(frozen=True)
class OppositeRow:
    """How one family (or a slice of it) relates to its opposite.

    kind == "equal": opposite(source) is literally the image matrix.
    kind == "iso":   opposite(source) is isomorphic to the image; when a
    change-of-basis witness g is recorded, change_basis(opposite(source), g)
    must equal the image.  ``samples`` freezes rational points for the
    parametric rows; over finite fields the parameters are enumerated.
    """

    source_family: str
    source_args: Tuple[str, ...]
    kind: str
    image_family: str
    image_args: Tuple[str, ...]
    frees: Tuple[str, ...] = ()
    witness: Optional[Tuple[Tuple[str, str], Tuple[str, str]]] = None
    nonzero: Tuple[str, ...] = ()
    samples: Tuple[Tuple[str, ...], ...] = ()
    note: str = ""

    def label(self) -> str:
        src = ("%s(%s)" % (self.source_family, ", ".join(self.source_args))
               if self.source_args else self.source_family)
        img = ("%s(%s)" % (self.image_family, ", ".join(self.image_args))
               if self.image_args else self.image_family)
        sign = "=" if self.kind == "equal" else "~"
        return "opposite(%s) %s %s" % (src, sign, img)

    def _texts(self) -> Tuple[str, ...]:
        out = list(self.source_args) + list(self.image_args)
        if self.witness is not None:
            out.extend(self.witness[0])
            out.extend(self.witness[1])
        return tuple(out)

    def fully_polynomial(self) -> bool:
        """True when every expression is radical- and division-free, so the
        row can be checked symbolically over the frees."""
        def poly_ok(n) -> bool:
            if n[0] in ("sqrt", "div"):
                return False
            return all(poly_ok(c) for c in n[1:] if isinstance(c, tuple))

        return all(poly_ok(_node(t)) for t in self._texts())

    def instances(self, field: Field) -> List["OppositeInstance"]:
        if field.kind == "Q":
            pts = [
                tuple(eval_expr(_node(t), field, {}) for t in sample)
                for sample in self.samples
            ]
            if not self.frees:
                pts = [()]
        else:
            if field.p ** len(self.frees) > _ENUM_LIMIT:
                raise SearchSpaceTooLarge(
                    "%d parameter points over F_%d is over the enumeration limit"
                    % (field.p ** len(self.frees), field.p))
            pts = list(itertools.product(field.elements(), repeat=len(self.frees)))
        out = []
        for pt in pts:
            env = dict(zip(self.frees, pt))
            keep = True
            for text in self.nonzero:
                if eval_expr(_node(text), field, env).is_zero():
                    keep = False
                    break
            if not keep:
                continue
            out.append(self._instance_at(field, pt, env))
        return out

    def _instance_at(self, field, pt, env) -> "OppositeInstance":
        try:
            src_vals = tuple(eval_expr(_node(a), field, env)
                             for a in self.source_args)
            img_vals = tuple(eval_expr(_node(a), field, env)
                             for a in self.image_args)
            g = None
            if self.witness is not None:
                g = tuple(
                    tuple(eval_expr(_node(cell), field, env) for cell in row)
                    for row in self.witness
                )
        except SqrtUnavailable as exc:
            return OppositeInstance(self, pt, None, None, None,
                                    "square root unavailable: %s" % exc)
        except DivisionByZero as exc:
            return OppositeInstance(self, pt, None, None, None,
                                    "division by zero: %s" % exc)
        source = family(self.source_family).instantiate(field, src_vals)
        image = family(self.image_family).instantiate(field, img_vals)
        return OppositeInstance(self, pt, source, image, g, "")


@dataclass(frozen=True)
class OppositeInstance:
    row: OppositeRow
    point: Tuple[Scalar, ...]
    source: Optional[Msc]
    image: Optional[Msc]
    witness: Optional[Tuple[Tuple[Scalar, Scalar], Tuple[Scalar, Scalar]]]
    skip_reason: str

    def label(self) -> str:
        base = self.row.label()
        if self.point:
            at = ", ".join(
                "%s=%s" % (f, scalar_text(v))
                for f, v in zip(self.row.frees, self.point)
            )
            return "%s @ %s" % (base, at)
        return base


def _opp(src, src_args, kind, img, img_args, frees=(), witness=None, nz=(),
         samples=(), note=""):
    return OppositeRow(
        source_family=src,
        source_args=tuple(src_args),
        kind=kind,
        image_family=img,
        image_args=tuple(img_args),
        frees=tuple(frees),
        witness=witness,
        nonzero=tuple(nz),
        samples=tuple(samples),
        note=note,
    )


# Frozen rational points for the parametric char0 rows.  The A2 points keep
# a1 + b2 a perfect square so the witness diag(a1 + b2, sqrt(a1 + b2))
# stays rational.
_OPP_PTS_A1 = (("2", "3", "5", "7"), ("1", "2", "3", "4"),
               ("0", "1", "2", "3"), ("-1", "2", "-3", "4"),
               ("1/2", "1/3", "1/5", "1/7"))
_OPP_PTS_A2 = (("2", "1", "-1"), ("2", "3", "2"), ("5", "1", "4"),
               ("2", "7", "23"), ("1/2", "2", "7/2"))
_OPP_PTS_A3 = (("1", "1"), ("2", "3"), ("-1", "2"), ("1/2", "5"), ("3", "-2"))
_OPP_PTS_A4 = (("2", "-1"), ("2", "2"), ("5", "4"), ("1/2", "1/2"), ("3", "6"))
_OPP_PTS_1 = (("1",), ("2",), ("-1",), ("1/2",), ("4",))
_OPP_PTS_2 = (("1", "1"), ("2", "3"), ("-1", "2"), ("1/2", "5"), ("3", "-2"))

_CHAR0_OPPOSITE = (
    _opp("A1", ("a1", "a2", "a4", "b1"), "iso",
         "A1", ("-a2", "-a1", "b1", "a4"),
         frees=("a1", "a2", "a4", "b1"),
         witness=(("0", "1"), ("1", "0")), samples=_OPP_PTS_A1),
    _opp("A2", ("a1", "b1", "b2"), "iso",
         "A2", ("a1/(a1 + b2)", "b1/((a1 + b2)*sqrt(a1 + b2))",
                "(1 - a1)/(a1 + b2)"),
         frees=("a1", "b1", "b2"),
         witness=(("a1 + b2", "0"), ("0", "sqrt(a1 + b2)")),
         nz=("a1 + b2",), samples=_OPP_PTS_A2),
    _opp("A2", ("a1", "b1", "-a1"), "equal", "A6", ("a1", "b1"),
         frees=("a1", "b1"), samples=_OPP_PTS_2),
    _opp("A3", ("b1", "b2"), "iso", "A3", ("b1/b2^2", "1/b2"),
         frees=("b1", "b2"), witness=(("b2", "0"), ("0", "1")),
         nz=("b2",), samples=_OPP_PTS_A3),
    _opp("A3", ("b1", "0"), "equal", "A7", ("b1",),
         frees=("b1",), samples=_OPP_PTS_1),
    _opp("A4", ("a1", "b2"), "iso",
         "A4", ("a1/(a1 + b2)", "(1 - a1)/(a1 + b2)"),
         frees=("a1", "b2"), witness=(("a1 + b2", "0"), ("0", "1")),
         nz=("a1 + b2",), samples=_OPP_PTS_A4),
    _opp("A4", ("a1", "-a1"), "equal", "A8", ("a1",),
         frees=("a1",), samples=_OPP_PTS_1),
    _opp("A5", ("a1",), "iso", "A5", ("a1/(3*a1 - 1)",),
         frees=("a1",), witness=(("3*a1 - 1", "0"), ("0", "(3*a1 - 1)^2")),
         nz=("3*a1 - 1",), samples=_OPP_PTS_1),
    _opp("A5", ("1/3",), "equal", "A9", ()),
    _opp("A6", ("a1", "b1"), "equal", "A2", ("a1", "b1", "-a1"),
         frees=("a1", "b1"), samples=_OPP_PTS_2),
    _opp("A7", ("b1",), "equal", "A3", ("b1", "0"),
         frees=("b1",), samples=_OPP_PTS_1),
    _opp("A8", ("a1",), "equal", "A4", ("a1", "-a1"),
         frees=("a1",), samples=_OPP_PTS_1),
    _opp("A9", (), "equal", "A5", ("1/3",)),
    _opp("A10", (), "equal", "A10", ()),
    _opp("A11", (), "equal", "A11", ()),
    _opp("A12", (), "equal", "A12", ()),
)

_CHAR2_OPPOSITE = (
    _opp("A1_2", ("a1", "a2", "a4", "b1"), "iso",
         "A1_2", ("a2", "a1", "b1", "a4"),
         frees=("a1", "a2", "a4", "b1")),
    _opp("A2_2", ("a1", "b1", "b2"), "iso",
         "A2_2", ("a1/(a1 + b2)", "b1/((a1 + b2)*sqrt(a1 + b2))",
                  "(1 + a1)/(a1 + b2)"),
         frees=("a1", "b1", "b2"), nz=("a1 + b2",)),
    _opp("A2_2", ("a1", "b1", "a1"), "equal", "A6_2", ("a1", "b1"),
         frees=("a1", "b1")),
    _opp("A3_2", ("a1", "b2"), "iso",
         "A3_2", ("a1/(a1 + b2)", "(1 + a1)/(a1 + b2)"),
         frees=("a1", "b2"), witness=(("a1 + b2", "0"), ("0", "1")),
         nz=("a1 + b2",)),
    _opp("A3_2", ("a1", "a1"), "equal", "A7_2", ("a1",), frees=("a1",)),
    _opp("A4_2", ("a1", "b2"), "iso",
         "A4_2", ("a1/(a1 + b2)", "(1 + a1)/(a1 + b2)"),
         frees=("a1", "b2"), nz=("a1 + b2",)),
    _opp("A4_2", ("a1", "a1"), "equal", "A8_2", ("a1",), frees=("a1",)),
    _opp("A5_2", ("a1",), "iso", "A5_2", ("a1/(a1 + 1)",),
         frees=("a1",), nz=("a1 + 1",)),
    _opp("A5_2", ("1",), "equal", "A9_2", ()),
    _opp("A6_2", ("a1", "b1"), "equal", "A2_2", ("a1", "b1", "a1"),
         frees=("a1", "b1")),
    _opp("A7_2", ("a1",), "equal", "A3_2", ("a1", "a1"), frees=("a1",)),
    _opp("A8_2", ("a1",), "equal", "A4_2", ("a1", "a1"), frees=("a1",)),
    _opp("A9_2", (), "equal", "A5_2", ("1",)),
    _opp("A10_2", (), "equal", "A10_2", ()),
    _opp("A11_2", (), "equal", "A11_2", ()),
    _opp("A12_2", (), "equal", "A12_2", ()),
)

_CHAR3_OPPOSITE = (
    _opp("A1_3", ("a1", "a2", "a4", "b1"), "iso",
         "A1_3", ("-a2", "-a1", "b1", "a4"),
         frees=("a1", "a2", "a4", "b1")),
    _opp("A2_3", ("a1", "b1", "b2"), "iso",
         "A2_3", ("a1/(a1 + b2)", "b1/((a1 + b2)*sqrt(a1 + b2))",
                  "(1 - a1)/(a1 + b2)"),
         frees=("a1", "b1", "b2"), nz=("a1 + b2",)),
    _opp("A2_3", ("a1", "b1", "-a1"), "equal", "A6_3", ("a1", "b1"),
         frees=("a1", "b1")),
    _opp("A3_3", ("b1", "b2"), "iso", "A3_3", ("b1/b2^2", "1/b2"),
         frees=("b1", "b2"), nz=("b2",)),
    _opp("A3_3", ("b1", "0"), "equal", "A7_3", ("b1",), frees=("b1",)),
    _opp("A4_3", ("a1", "b2"), "iso",
         "A4_3", ("a1/(a1 + b2)", "(1 - a1)/(a1 + b2)"),
         frees=("a1", "b2"), nz=("a1 + b2",)),
    _opp("A4_3", ("a1", "-a1"), "equal", "A8_3", ("a1",), frees=("a1",)),
    _opp("A5_3", ("a1",), "iso", "A5_3", ("-a1",), frees=("a1",)),
    _opp("A6_3", ("a1", "b1"), "equal", "A2_3", ("a1", "b1", "-a1"),
         frees=("a1", "b1")),
    _opp("A7_3", ("b1",), "equal", "A3_3", ("b1", "0"), frees=("b1",)),
    _opp("A8_3", ("a1",), "equal", "A4_3", ("a1", "-a1"), frees=("a1",)),
    _opp("A9_3", (), "equal", "A9_3", ()),
    _opp("A10_3", (), "equal", "A10_3", ()),
    _opp("A11_3", (), "equal", "A11_3", ()),
    _opp("A12_3", (), "equal", "A12_3", ()),
)

OPPOSITE_TABLES: Dict[str, Tuple[OppositeRow, ...]] = {
    REGIME_CHAR0: _CHAR0_OPPOSITE,
    REGIME_CHAR2: _CHAR2_OPPOSITE,
    REGIME_CHAR3: _CHAR3_OPPOSITE,
}

# --- instances asserted isomorphic to their own opposite ---------------------

SELF_OPPOSITE: Dict[str, Tuple[ClaimedRow, ...]] = {
    REGIME_CHAR0: (
        _row("A1", "a1", "-a1", "a2", "a2", frees=("a1", "a2")),
        _row("A2", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A2", "0", "0", "-1", sqrt_req=("-1",)),
        _row("A3", "b1", "-1", frees=("b1",)),
        _row("A3", "b1", "1", frees=("b1",)),
        _row("A4", "a1", "1 - a1", frees=("a1",)),
        _row("A4", "0", "-1"),
        _row("A5", "2/3"),
        _row("A5", "0"),
        _row("A10"),
        _row("A11"),
        _row("A12"),
    ),
    REGIME_CHAR2: (
        _row("A1_2", "a1", "a1", "a2", "a2", frees=("a1", "a2")),
        _row("A2_2", "a1", "b1", "1 + a1", frees=("a1", "b1")),
        _row("A3_2", "a1", "1 + a1", frees=("a1",)),
        _row("A4_2", "a1", "1 + a1", frees=("a1",)),
        _row("A5_2", "0"),
        _row("A10_2"),
        _row("A11_2"),
        _row("A12_2"),
    ),
    REGIME_CHAR3: (
        _row("A1_3", "a1", "-a1", "a2", "a2", frees=("a1", "a2")),
        _row("A2_3", "a1", "b1", "1 - a1", frees=("a1", "b1")),
        _row("A2_3", "0", "0", "-1", sqrt_req=("-1",)),
        _row("A3_3", "b1", "-1", frees=("b1",)),
        _row("A3_3", "b1", "1", frees=("b1",)),
        _row("A4_3", "a1", "1 - a1", frees=("a1",)),
        _row("A4_3", "0", "-1"),
        _row("A5_3", "0"),
        _row("A9_3"),
        _row("A10_3"),
        _row("A11_3"),
        _row("A12_3"),
    ),
}

# Frozen rational points for the parametric self-opposite rows over the
# rationals (two frees -> pairs, one free -> singletons).
SELF_OPPOSITE_POINTS_2 = (("1", "1"), ("2", "3"), ("-1", "2"),
                          ("1/2", "5"), ("3", "-2"))
SELF_OPPOSITE_POINTS_1 = (("1",), ("2",), ("-1",), ("1/2",), ("4",))


# ---------------------------------------------------------------------------
# Negative spot-check selection


def row_covers(row: ClaimedRow, field: Field, candidate: Msc) -> bool:
    """Whether some parameter assignment of `row` yields exactly `candidate`.

    Every free parameter of a claim row appears verbatim as one of the
    arguments (a module invariant, asserted below), and every family
    parameter appears verbatim as a template cell; together these force the
    only possible binding, which is then verified by full instantiation.
    """
    fam = family(row.family)
    env: Dict[str, Scalar] = {}
    for free in row.frees:
        slot = next(
            j for j, a in enumerate(row.args) if a.strip() == free
        )
        r, c = fam.param_cell(fam.params[slot])
        env[free] = candidate.rows[r][c]
    try:
        vals = tuple(eval_expr(_node(a), field, env) for a in row.args)
    except (SqrtUnavailable, DivisionByZero):
        return False
    if not row._conditions_hold(field, env):
        return False
    try:
        built = fam.instantiate(field, vals)
    except CharMismatch:
        return False
    return built == candidate


def negative_instances(regime: str, identity_name: str, field: Field,
                       count: int = 3) -> List[Tuple[Family, Tuple[Scalar, ...], Msc]]:
    """The first `count` canonical instances absent from the claimed list.

    Families are walked in catalog order with every free parameter set to 2
    (reduced into the field); an instance is absent when no claimed row can
    produce its matrix.
    """
    rows = claimed_rows(regime, identity_name, field)
    two = field.scalar(2)
    out = []
    for fam in FAMILY_ORDER[regime]:
        args = tuple(two for _ in fam.params)
        candidate = fam.instantiate(field, args)
        if any(row_covers(row, field, candidate) for row in rows):
            continue
        out.append((fam, args, candidate))
        if len(out) >= count:
            break
    return out


def _check_table_invariants() -> None:
    # every family parameter is a bare template cell
    for fam in FAMILIES.values():
        for p in fam.params:
            fam.param_cell(p)
    # every claim-row free appears verbatim as an argument
    all_rows: List[ClaimedRow] = []
    for table in CLAIMED_SOLUTIONS.values():
        for rows in table.values():
            all_rows.extend(rows)
    all_rows.extend(CHAR5_I19_ROWS)
    for rows in SELF_OPPOSITE.values():
        all_rows.extend(rows)
    for row in all_rows:
        fam = family(row.family)
        if len(row.args) != fam.arity:
            raise ParamCountMismatch(
                "row %s: %d args for family of arity %d"
                % (row.label(), len(row.args), fam.arity))
        for free in row.frees:
            if not any(a.strip() == free for a in row.args):
                raise UnknownFamily(
                    "row %s: free %s has no bare argument slot"
                    % (row.label(), free))
    for table in OPPOSITE_TABLES.values():
        for orow in table:
            src = family(orow.source_family)
            img = family(orow.image_family)
            if len(orow.source_args) != src.arity:
                raise ParamCountMismatch("bad source arity in %s" % orow.label())
            if len(orow.image_args) != img.arity:
                raise ParamCountMismatch("bad image arity in %s" % orow.label())


_check_table_invariants()
