"""The fifteen ladder/diagonal generators and derived operators.

Operators act on labeled states: the label l = (l0, l1, l2) selects the
concrete first-order differential operator, and the result carries the
shifted label.  Index convention: a lowering operator of a family uses the
label of the state it acts on, a raising operator uses the label of the
state it produces, so that every application travels along an intertwining
edge of the parameter lattice.  With the uniform factor 1/2 this closes the
su(2,1) bracket table exactly, and together with the tilde operators (the
parameter-reflected family) an so(4,2) set.

Realizations in the (theta, xi) chart use

    J0 = sin(theta) d_xi + cos(theta) coth(xi) d_theta
    J1 = cos(theta) d_xi - sin(theta) coth(xi) d_theta
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import (FunExpr, Monomial, RationalLike, d_theta, d_xi,
                      monomial, rational)

HALF = Fraction(1, 2)


class VariableMismatchError(ValueError):
    """A separated 1D operator was fed an expression in the wrong variables."""


@dataclass(frozen=True)
class ParamPoint:
    """A parameter point l = (l0, l1, l2) with exact rational entries."""

    l0: Fraction
    l1: Fraction
    l2: Fraction

    @staticmethod
    def of(l0: RationalLike, l1: RationalLike, l2: RationalLike) -> "ParamPoint":
        return ParamPoint(rational(l0), rational(l1), rational(l2))

    def shifted(self, d: tuple[int, int, int]) -> "ParamPoint":
        return ParamPoint(self.l0 + d[0], self.l1 + d[1], self.l2 + d[2])

    def astuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.l0, self.l1, self.l2)

    def __str__(self) -> str:
        return f"({self.l0}, {self.l1}, {self.l2})"


@dataclass(frozen=True)
class LabeledState:
    """A wavefunction tagged with the parameter point it belongs to."""

    label: ParamPoint
    expr: FunExpr

    @property
    def is_zero(self) -> bool:
        return self.expr.is_zero


class OperatorName(str, enum.Enum):
    A_PLUS = "A+"
    A_MINUS = "A-"
    ATILDE_PLUS = "Atilde+"
    ATILDE_MINUS = "Atilde-"
    B_PLUS = "B+"
    B_MINUS = "B-"
    BTILDE_PLUS = "Btilde+"
    BTILDE_MINUS = "Btilde-"
    C_PLUS = "C+"
    C_MINUS = "C-"
    CTILDE_PLUS = "Ctilde+"
    CTILDE_MINUS = "Ctilde-"
    L0 = "L0"
    L1 = "L1"
    L2 = "L2"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


OperatorWord = Sequence[OperatorName]

O = OperatorName

SHIFTS: dict[OperatorName, tuple[int, int, int]] = {
    O.A_PLUS: (-1, -1, 0), O.A_MINUS: (1, 1, 0),
    O.ATILDE_PLUS: (1, -1, 0), O.ATILDE_MINUS: (-1, 1, 0),
    O.B_PLUS: (-1, 0, -1), O.B_MINUS: (1, 0, 1),
    O.BTILDE_PLUS: (1, 0, -1), O.BTILDE_MINUS: (-1, 0, 1),
    O.C_PLUS: (0, 1, -1), O.C_MINUS: (0, -1, 1),
    O.CTILDE_PLUS: (0, -1, -1), O.CTILDE_MINUS: (0, 1, 1),
    O.L0: (0, 0, 0), O.L1: (0, 0, 0), O.L2: (0, 0, 0),
}

LADDER_OPERATORS = tuple(op for op in OperatorName if SHIFTS[op] != (0, 0, 0))
LOWERING_SU21 = (O.A_MINUS, O.B_MINUS, O.C_MINUS)
LOWERING_SO42 = LOWERING_SU21 + (O.ATILDE_MINUS, O.BTILDE_MINUS, O.CTILDE_MINUS)

# basis multipliers used in coefficient functions
_TAN = (-1, 1, 0, 0)
_COT = (1, -1, 0, 0)
_TANH_COS = (1, 0, -1, 1)
_COTH_SEC = (-1, 0, 1, -1)
_TANH_SIN = (0, 1, -1, 1)
_COTH_CSC = (0, -1, 1, -1)


def _combo(*pairs: tuple[Fraction, tuple[int, int, int, int]]) -> FunExpr:
    return FunExpr.from_terms(
        Monomial(c, Fraction(dp), Fraction(dq), Fraction(dr), Fraction(ds))
        for c, (dp, dq, dr, ds) in pairs if c != 0)


# Each entry: derivative part ('dtheta'|'J0'|'J1', sign) and a zeroth-order
# coefficient builder label -> FunExpr.  The overall factor 1/2 is applied
# in `apply`.
_LADDER_TABLE: dict[OperatorName, tuple[str, int, Callable[[ParamPoint], FunExpr]]] = {
    O.A_PLUS: ("dtheta", +1, lambda l: _combo(
        (-(l.l0 - HALF), _TAN), (l.l1 - HALF, _COT))),
    O.A_MINUS: ("dtheta", -1, lambda l: _combo(
        (-(l.l0 + HALF), _TAN), (l.l1 + HALF, _COT))),
    O.ATILDE_PLUS: ("dtheta", +1, lambda l: _combo(
        (l.l0 + HALF, _TAN), (l.l1 - HALF, _COT))),
    O.ATILDE_MINUS: ("dtheta", -1, lambda l: _combo(
        (l.l0 - HALF, _TAN), (l.l1 + HALF, _COT))),
    O.B_PLUS: ("J1", +1, lambda l: _combo(
        (l.l2 - HALF, _TANH_COS), (l.l0 - HALF, _COTH_SEC))),
    O.B_MINUS: ("J1", -1, lambda l: _combo(
        (l.l2 + HALF, _TANH_COS), (l.l0 + HALF, _COTH_SEC))),
    O.BTILDE_PLUS: ("J1", +1, lambda l: _combo(
        (l.l2 - HALF, _TANH_COS), (-(l.l0 + HALF), _COTH_SEC))),
    O.BTILDE_MINUS: ("J1", -1, lambda l: _combo(
        (l.l2 + HALF, _TANH_COS), (-(l.l0 - HALF), _COTH_SEC))),
    O.C_PLUS: ("J0", +1, lambda l: _combo(
        (l.l2 - HALF, _TANH_SIN), (-(l.l1 + HALF), _COTH_CSC))),
    O.C_MINUS: ("J0", -1, lambda l: _combo(
        (l.l2 + HALF, _TANH_SIN), (-(l.l1 - HALF), _COTH_CSC))),
    O.CTILDE_PLUS: ("J0", +1, lambda l: _combo(
        (l.l2 - HALF, _TANH_SIN), (l.l1 - HALF, _COTH_CSC))),
    O.CTILDE_MINUS: ("J0", -1, lambda l: _combo(
        (l.l2 + HALF, _TANH_SIN), (l.l1 + HALF, _COTH_CSC))),
}


def apply_j0(f: FunExpr) -> FunExpr:
    return monomial(1, 0, 1, 0, 0) * d_xi(f) \
        + monomial(1, 1, 0, 1, -1) * d_theta(f)


def apply_j1(f: FunExpr) -> FunExpr:
    return monomial(1, 1, 0, 0, 0) * d_xi(f) \
        - monomial(1, 0, 1, 1, -1) * d_theta(f)


_DERIVATIVE_PART = {"dtheta": d_theta, "J0": apply_j0, "J1": apply_j1}


def apply(op: OperatorName, st: LabeledState) -> LabeledState:
    """Apply one generator; the result carries the shifted label."""
    if op is O.L0:
        return LabeledState(st.label, st.expr.scale(st.label.l0))
    if op is O.L1:
        return LabeledState(st.label, st.expr.scale(st.label.l1))
    if op is O.L2:
        return LabeledState(st.label, st.expr.scale(st.label.l2))
    kind, sign, coeff_fn = _LADDER_TABLE[op]
    deriv = _DERIVATIVE_PART[kind](st.expr)
    out = deriv.scale(sign) + coeff_fn(st.label) * st.expr
    return LabeledState(st.label.shifted(SHIFTS[op]), out.scale(HALF))


def apply_word(word: OperatorWord, st: LabeledState) -> LabeledState:
    """Apply a composition written right-to-left (rightmost acts first)."""
    for op in reversed(tuple(word)):
        st = apply(op, st)
    return st


def diag_eigenvalue(which: str, label: ParamPoint) -> Fraction:
    """Eigenvalue of the diagonal generator of family 'A', 'B' or 'C'."""
    if which == "A":
        return -HALF * (label.l0 + label.l1)
    if which == "B":
        return -HALF * (label.l0 + label.l2)
    if which == "C":
        return -HALF * (label.l2 - label.l1)
    raise ValueError(f"unknown diagonal family {which!r}")


def cprime(label: ParamPoint) -> Fraction:
    """The central invariant l1 + l2 - l0, conserved by the su(2,1) ladder."""
    return label.l1 + label.l2 - label.l0


def apply_hamiltonian(st: LabeledState) -> FunExpr:
    """Exact image of the full Hamiltonian at the state's parameters."""
    l0, l1, l2 = st.label.astuple()
    f = st.expr
    out = -d_xi(d_xi(f))
    out = out - monomial(1, 0, 0, 1, -1) * d_xi(f)
    out = out - monomial(l2 * l2 - Fraction(1, 4), 0, 0, -2, 0) * f
    theta_part = -d_theta(d_theta(f)) \
        + monomial(l1 * l1 - Fraction(1, 4), 0, -2, 0, 0) * f \
        + monomial(l0 * l0 - Fraction(1, 4), -2, 0, 0, 0) * f
    out = out + monomial(1, 0, 0, 0, -2) * theta_part
    return out


def _require_pair(f: FunExpr, hyperbolic: bool, which: str) -> None:
    for m in f.terms:
        if hyperbolic and (m.p != 0 or m.q != 0):
            raise VariableMismatchError(
                f"{which} operator expects a hyperbolic-variable expression, got {m}")
        if not hyperbolic and (m.r != 0 or m.s != 0):
            raise VariableMismatchError(
                f"{which} operator expects a theta-only expression, got {m}")


def apply_separated(which: str, f: FunExpr,
                    params: tuple[RationalLike, RationalLike]) -> FunExpr:
    """One-dimensional factor Hamiltonians.

    which='theta': -d^2 + (y^2-1/4)/sin^2 + (x^2-1/4)/cos^2 with (x, y) = (l0, l1)
    which='chi':   -d^2 + (x^2-1/4)/sinh^2 - (y^2-1/4)/cosh^2 with (x, y) = (l0, l2)
    which='beta':  -d^2 + (x^2-1/4)/sinh^2 - (y^2-1/4)/cosh^2 with (x, y) = (l1, l2)

    For 'chi'/'beta' the hyperbolic exponent slots of FunExpr are read as
    cosh/sinh of the single variable.
    """
    x, y = rational(params[0]), rational(params[1])
    quarter = Fraction(1, 4)
    if which == "theta":
        _require_pair(f, hyperbolic=False, which=which)
        return -d_theta(d_theta(f)) \
            + monomial(y * y - quarter, 0, -2, 0, 0) * f \
            + monomial(x * x - quarter, -2, 0, 0, 0) * f
    if which in ("chi", "beta"):
        _require_pair(f, hyperbolic=True, which=which)
        return -d_xi(d_xi(f)) \
            + monomial(x * x - quarter, 0, 0, 0, -2) * f \
            - monomial(y * y - quarter, 0, 0, -2, 0) * f
    raise ValueError(f"unknown separated Hamiltonian {which!r}")


def separated_ladder(family: str, sign: int,
                     params: tuple[RationalLike, RationalLike]) -> Callable[[FunExpr], FunExpr]:
    """Concrete 1D intertwiners for the factor Hamiltonians.

    family 'A', indices (a, b): +-d_theta - (a+1/2) tan + (b+1/2) cot
    family 'B', indices (a, c): +-d_chi  + (c+1/2) tanh + (a+1/2) coth
    family 'C', indices (b, c): +-d_beta + (c+1/2) tanh + (-b+1/2) coth
    """
    x, y = rational(params[0]), rational(params[1])
    if family == "A":
        w = _combo((-(x + HALF), _TAN), (y + HALF, _COT))
        return lambda f: d_theta(f).scale(sign) + w * f
    if family == "B":
        w = _combo((y + HALF, (0, 0, -1, 1)), (x + HALF, (0, 0, 1, -1)))
        return lambda f: d_xi(f).scale(sign) + w * f
    if family == "C":
        w = _combo((y + HALF, (0, 0, -1, 1)), (-x + HALF, (0, 0, 1, -1)))
        return lambda f: d_xi(f).scale(sign) + w * f
    raise ValueError(f"unknown ladder family {family!r}")


def separated_eigenvalue(family: str,
                         params: tuple[RationalLike, RationalLike]) -> Fraction:
    """Factorization constants: (1+a+b)^2, -(1+a+c)^2, -(1-b+c)^2."""
    x, y = rational(params[0]), rational(params[1])
    if family == "A":
        return (1 + x + y) ** 2
    if family == "B":
        return -((1 + x + y) ** 2)
    if family == "C":
        return -((1 - x + y) ** 2)
    raise ValueError(f"unknown ladder family {family!r}")


def commutator(x: OperatorName, y: OperatorName, st: LabeledState) -> LabeledState:
    """[x, y] applied to st; both orderings land on the same label."""
    xy = apply(x, apply(y, st))
    yx = apply(y, apply(x, st))
    assert xy.label == yx.label
    return LabeledState(xy.label, xy.expr - yx.expr)


def apply_casimir(st: LabeledState) -> FunExpr:
    """Quadratic Casimir: A+A- - B+B- - C+C- + 2/3(A^2+B^2+C^2) - (A+B+C)."""
    out = apply(O.A_PLUS, apply(O.A_MINUS, st)).expr
    out = out - apply(O.B_PLUS, apply(O.B_MINUS, st)).expr
    out = out - apply(O.C_PLUS, apply(O.C_MINUS, st)).expr
    a = diag_eigenvalue("A", st.label)
    b = diag_eigenvalue("B", st.label)
    c = diag_eigenvalue("C", st.label)
    scalar = Fraction(2, 3) * (a * a + b * b + c * c) - (a + b + c)
    return out + st.expr.scale(scalar)


def hamiltonian_from_casimir(st: LabeledState) -> FunExpr:
    """-4*Casimir + (l1+l2-l0)^2/3 - 15/4 applied to st."""
    cp = cprime(st.label)
    scalar = Fraction(1, 3) * cp * cp - Fraction(15, 4)
    return apply_casimir(st).scale(-4) + st.expr.scale(scalar)


_FAMILY_EDGES = {
    # family -> (lowering op, raising op); lowering uses the state's label
    "A": (O.A_MINUS, O.A_PLUS),
    "B": (O.B_MINUS, O.B_PLUS),
    "C": (O.C_MINUS, O.C_PLUS),
}


def verify_intertwining(family: str, label: ParamPoint, probe: FunExpr) -> FunExpr:
    """Residual of the intertwining relations of one ladder family.

    With X the lowering operator at `label` and l' = label + shift(X), checks
    X H_l - H_l' X and the reverse relation for the raising operator on the
    same edge; returns the first nonzero residual (empty expression when both
    hold, which is the contract).
    """
    dn, up = _FAMILY_EDGES[family]
    upper = label.shifted(SHIFTS[dn])
    lo_st = LabeledState(label, probe)
    res1 = apply(dn, LabeledState(label, apply_hamiltonian(lo_st))).expr \
        - apply_hamiltonian(LabeledState(upper, apply(dn, lo_st).expr))
    if not res1.is_zero:
        return res1
    hi_st = LabeledState(upper, probe)
    res2 = apply(up, LabeledState(upper, apply_hamiltonian(hi_st))).expr \
        - apply_hamiltonian(LabeledState(label, apply(up, hi_st).expr))
    return res2


# sign-carrying conjugation table of the three parameter reflections
_REFLECT_TABLE: dict[int, dict[OperatorName, tuple[int, OperatorName]]] = {
    0: {
        O.A_PLUS: (1, O.ATILDE_PLUS), O.A_MINUS: (1, O.ATILDE_MINUS),
        O.ATILDE_PLUS: (1, O.A_PLUS), O.ATILDE_MINUS: (1, O.A_MINUS),
        O.B_PLUS: (1, O.BTILDE_PLUS), O.B_MINUS: (1, O.BTILDE_MINUS),
        O.BTILDE_PLUS: (1, O.B_PLUS), O.BTILDE_MINUS: (1, O.B_MINUS),
        O.C_PLUS: (1, O.C_PLUS), O.C_MINUS: (1, O.C_MINUS),
        O.CTILDE_PLUS: (1, O.CTILDE_PLUS), O.CTILDE_MINUS: (1, O.CTILDE_MINUS),
        O.L0: (-1, O.L0), O.L1: (1, O.L1), O.L2: (1, O.L2),
    },
    1: {
        O.A_PLUS: (1, O.ATILDE_MINUS), O.A_MINUS: (1, O.ATILDE_PLUS),
        O.ATILDE_PLUS: (1, O.A_MINUS), O.ATILDE_MINUS: (1, O.A_PLUS),
        O.B_PLUS: (1, O.B_PLUS), O.B_MINUS: (1, O.B_MINUS),
        O.BTILDE_PLUS: (1, O.BTILDE_PLUS), O.BTILDE_MINUS: (1, O.BTILDE_MINUS),
        O.C_PLUS: (1, O.CTILDE_PLUS), O.C_MINUS: (1, O.CTILDE_MINUS),
        O.CTILDE_PLUS: (1, O.C_PLUS), O.CTILDE_MINUS: (1, O.C_MINUS),
        O.L0: (1, O.L0), O.L1: (-1, O.L1), O.L2: (1, O.L2),
    },
    2: {
        O.A_PLUS: (1, O.A_PLUS), O.A_MINUS: (1, O.A_MINUS),
        O.ATILDE_PLUS: (1, O.ATILDE_PLUS), O.ATILDE_MINUS: (1, O.ATILDE_MINUS),
        O.B_PLUS: (1, O.BTILDE_MINUS), O.B_MINUS: (1, O.BTILDE_PLUS),
        O.BTILDE_PLUS: (1, O.B_MINUS), O.BTILDE_MINUS: (1, O.B_PLUS),
        O.C_PLUS: (-1, O.CTILDE_MINUS), O.C_MINUS: (-1, O.CTILDE_PLUS),
        O.CTILDE_PLUS: (-1, O.C_MINUS), O.CTILDE_MINUS: (-1, O.C_PLUS),
        O.L0: (1, O.L0), O.L1: (1, O.L1), O.L2: (-1, O.L2),
    },
}


def reflect(i: int, op: OperatorName) -> tuple[int, OperatorName]:
    """Conjugate `op` by the reflection l_i -> -l_i; returns (sign, name)."""
    try:
        return _REFLECT_TABLE[i][op]
    except KeyError:
        raise ValueError(f"no reflection entry for axis {i}, operator {op}") from None
