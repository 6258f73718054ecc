"""Fundamental states, representation lattices and bound spectra.

A representation is seeded by a vertex state at l = (l0, 0, l2) annihilated
by the three lowering operators, with energy

    E0 = -(l0 + l2 + 3/2)(l0 + l2 + 5/2).

Raising words generate the rest of the representation; every generated state
is an exact eigenstate of the Hamiltonian at its own label with the vertex
energy.  The bound spectrum of one Hamiltonian collects the vertices whose
lattice reaches its label; degeneracy is always computed as the numerical
rank of the Gram matrix of generated states, never assumed from a counting
rule.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (FunExpr, RationalLike, inner, is_normalizable, monomial,
                      norm_squared, rational)
from .operators import (LabeledState, OperatorName as O, ParamPoint,
                        apply, apply_word)

HALF = Fraction(1, 2)


class AdmissibilityError(ValueError):
    """Parameters violate a normalizability constraint."""


def ground_theta(l0: RationalLike, l1: RationalLike) -> FunExpr:
    """cos^(l0+1/2) sin^(l1+1/2); needs l0, l1 >= -1/2."""
    l0, l1 = rational(l0), rational(l1)
    if l0 < -HALF or l1 < -HALF:
        raise AdmissibilityError(
            f"theta ground state needs l0, l1 >= -1/2, got ({l0}, {l1})")
    return monomial(1, l0 + HALF, l1 + HALF, 0, 0)


def ground_chi(l0: RationalLike, l2: RationalLike) -> FunExpr:
    """cosh^(l2+1/2) sinh^(l0+1/2); needs l0 >= -1/2 and l0+l2 < -1."""
    l0, l2 = rational(l0), rational(l2)
    if l0 < -HALF:
        raise AdmissibilityError(f"chi ground state needs l0 >= -1/2, got {l0}")
    if not l0 + l2 < -1:
        raise AdmissibilityError(
            f"chi ground state needs l0+l2 < -1, got {l0 + l2}")
    return monomial(1, 0, 0, l2 + HALF, l0 + HALF)


def ground_beta(l1: RationalLike, l2: RationalLike) -> FunExpr:
    """cosh^(l2+1/2) sinh^(-l1+1/2); needs l2-l1 < -1 and l1 <= 1/2."""
    l1, l2 = rational(l1), rational(l2)
    if not l2 - l1 < -1:
        raise AdmissibilityError(
            f"beta ground state needs l2-l1 < -1, got {l2 - l1}")
    if l1 > HALF:
        raise AdmissibilityError(f"beta ground state needs l1 <= 1/2, got {l1}")
    return monomial(1, 0, 0, l2 + HALF, -l1 + HALF)


def ground_full(l0: RationalLike, l2: RationalLike) -> LabeledState:
    """Joint vacuum cos^(l0+1/2) sin^(1/2) cosh^(l2+1/2) sinh^(l0+1) at (l0, 0, l2).

    Annihilated by all three lowering operators; normalizable under the
    invariant measure iff l0 >= -1/2 and l0 + l2 < -5/2.
    """
    l0, l2 = rational(l0), rational(l2)
    if l0 < -HALF:
        raise AdmissibilityError(f"vertex needs l0 >= -1/2, got {l0}")
    if not l0 + l2 < Fraction(-5, 2):
        raise AdmissibilityError(
            f"vertex needs l0+l2 < -5/2 for a normalizable state, got {l0 + l2}")
    expr = monomial(1, l0 + HALF, HALF, l2 + HALF, l0 + 1)
    return LabeledState(ParamPoint(l0, Fraction(0), l2), expr)


def so42_vacuum(l2: RationalLike) -> LabeledState:
    """The l0 = 0 vertex, additionally annihilated by the tilde lowerings."""
    l2 = rational(l2)
    if not l2 < Fraction(-5, 2):
        raise AdmissibilityError(f"so(4,2) vacuum needs l2 < -5/2, got {l2}")
    return ground_full(0, l2)


def vertex_energy(l0: RationalLike, l2: RationalLike) -> Fraction:
    """-(l0+l2+3/2)(l0+l2+5/2); shared by the whole representation."""
    sigma = rational(l0) + rational(l2)
    return -((sigma + Fraction(3, 2)) * (sigma + Fraction(5, 2)))


# Raising sets: the B-type raisings are commutators of these and add no new
# labels, so lattice geometry follows the A/C (and tilde) generators.
RAISING = {
    "su21": (O.A_PLUS, O.C_PLUS),
    "so42": (O.A_PLUS, O.ATILDE_PLUS, O.C_PLUS, O.CTILDE_PLUS),
}


@dataclass(frozen=True)
class LatticePoint:
    label: ParamPoint
    depth: int


def _lattice_bfs(vertex_state: LabeledState, algebra: str,
                 max_depth: int) -> dict[ParamPoint, tuple[int, list[LabeledState]]]:
    """Breadth-first closure under the raising set with pruning.

    A branch is pruned when it produces the zero expression or a state that
    is not normalizable.  Returns label -> (minimal depth, independent states
    seen at that label).
    """
    try:
        raising = RAISING[algebra]
    except KeyError:
        raise ValueError(f"unknown algebra {algebra!r}; use 'su21' or 'so42'") from None
    found: dict[ParamPoint, tuple[int, list[LabeledState]]] = {
        vertex_state.label: (0, [vertex_state])}
    frontier = [vertex_state]
    for depth in range(1, max_depth + 1):
        nxt: list[LabeledState] = []
        for st in frontier:
            for op in raising:
                img = apply(op, st)
                if img.is_zero or not is_normalizable(img.expr):
                    continue
                d, states = found.get(img.label, (depth, []))
                if any(img.expr.proportional_to(o.expr) for o in states):
                    continue
                states.append(img)
                found[img.label] = (min(d, depth), states)
                nxt.append(img)
        frontier = nxt
    return found


def enumerate_lattice(vertex: ParamPoint, algebra: str,
                      max_depth: int) -> list[LatticePoint]:
    """All labels reachable from the vertex by raising words of bounded length."""
    if vertex.l1 != 0:
        raise AdmissibilityError(f"vertices carry l1 = 0, got {vertex}")
    vstate = ground_full(vertex.l0, vertex.l2)
    found = _lattice_bfs(vstate, algebra, max_depth)
    pts = [LatticePoint(lab, d) for lab, (d, _) in found.items()]
    pts.sort(key=lambda pt: (pt.depth, pt.label.astuple()))
    return pts


def lattice_states(vertex: ParamPoint, algebra: str,
                   max_depth: int) -> dict[ParamPoint, list[LabeledState]]:
    """Independent generated states per reachable label (for degeneracies)."""
    vstate = ground_full(vertex.l0, vertex.l2)
    found = _lattice_bfs(vstate, algebra, max_depth)
    return {lab: states for lab, (_, states) in found.items()}


def _word_counts(vertex: ParamPoint, target: ParamPoint,
                 algebra: str) -> list[dict[O, int]]:
    """Multiset solutions: raising-operator counts moving vertex -> target."""
    delta = (target.l0 - vertex.l0, target.l1 - vertex.l1, target.l2 - vertex.l2)
    if any(d.denominator != 1 for d in delta):
        return []
    d0, d1, d2 = (int(d) for d in delta)
    if algebra == "su21":
        # a*A+ + c*C+ with shifts A+ = (-1,-1,0), C+ = (0,1,-1)
        a, c = -d0, -d2
        if a >= 0 and c >= 0 and (-a + c) == d1:
            return [{O.A_PLUS: a, O.C_PLUS: c}]
        return []
    if algebra != "so42":
        raise ValueError(f"unknown algebra {algebra!r}")
    # a*(-1,-1,0) + at*(1,-1,0) + c*(0,1,-1) + ct*(0,-1,-1)
    csum = -d2
    if csum < 0 or (csum + d1 + d0) % 2:
        return []
    sols = []
    for a in range(max(0, -d0), csum + abs(d1) + abs(d0) + 1):
        at = a + d0
        cdiff = d1 + a + at
        c = (csum + cdiff) // 2
        ct = csum - c
        if ct < 0:
            break
        if c < 0:
            continue
        sols.append({O.A_PLUS: a, O.ATILDE_PLUS: at, O.C_PLUS: c, O.CTILDE_PLUS: ct})
    return sols


def _generate_at(vertex: ParamPoint, target: ParamPoint,
                 algebra: str) -> tuple[list[tuple[O, ...]], list[LabeledState]]:
    """Words (right-to-left order) and the independent states they produce."""
    vstate = ground_full(vertex.l0, vertex.l2)
    words: list[tuple[O, ...]] = []
    states: list[LabeledState] = []
    for counts in _word_counts(vertex, target, algebra):
        symbols = [op for op, k in counts.items() for _ in range(k)]
        for word in sorted(set(itertools.permutations(symbols))):
            st = apply_word(word, vstate)
            assert st.label == target
            if st.is_zero or not is_normalizable(st.expr):
                continue
            if not any(st.expr.proportional_to(o.expr) for o in states):
                states.append(st)
                words.append(tuple(word))
    return words, states


def states_at(vertex: ParamPoint, target: ParamPoint,
              algebra: str = "su21") -> list[LabeledState]:
    """Distinct states at `target` from raising words out of `vertex`.

    Enumerates every ordering of each word multiset, drops zero images and
    removes proportional duplicates.  Returns [] when the target is not
    reachable.
    """
    return _generate_at(vertex, target, algebra)[1]


def witness_words(vertex: ParamPoint, target: ParamPoint,
                  algebra: str = "su21") -> list[tuple[O, ...]]:
    """The raising words behind states_at, rightmost operator applied first."""
    return _generate_at(vertex, target, algebra)[0]


def gram_matrix(states: list[LabeledState]) -> np.ndarray:
    """Pairwise inner products of unit-normalized states."""
    norms = [float(np.sqrt(norm_squared(st.expr))) for st in states]
    n = len(states)
    g = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            g[i, j] = g[j, i] = inner(states[i].expr, states[j].expr) / (norms[i] * norms[j])
    return g


def gram_rank(states: list[LabeledState], rel_tol: float = 1e-9) -> int:
    """Rank of the Gram matrix; the operational definition of degeneracy."""
    if not states:
        return 0
    labels = {st.label for st in states}
    if len(labels) > 1:
        raise ValueError(f"states must share one label, got {labels}")
    sv = np.linalg.svd(gram_matrix(states), compute_uv=False)
    return int(np.sum(sv > rel_tol * sv[0]))


def normalize(st: LabeledState) -> tuple[LabeledState, float]:
    """Scale to unit norm; returns (state, constant) with constant = 1/sqrt(<f,f>).

    The scale factor is stored as the exact rational image of the float, so
    downstream operator algebra on the normalized state stays exact.
    """
    if st.is_zero:
        raise ValueError("cannot normalize the zero state")
    n2 = norm_squared(st.expr)
    const = 1.0 / float(np.sqrt(n2))
    scaled = st.expr.scale(Fraction(const))
    return LabeledState(st.label, scaled), const


@dataclass(frozen=True)
class EnergyLevel:
    energy: Fraction
    degeneracy: int
    witnesses: tuple[tuple[O, ...], ...]
    vertex: ParamPoint

    def to_dict(self) -> dict:
        return {
            "energy": str(self.energy),
            "energy_float": float(self.energy),
            "degeneracy": self.degeneracy,
            "vertex": [str(x) for x in self.vertex.astuple()],
            "witnesses": [[op.value for op in w] for w in self.witnesses],
        }


@dataclass(frozen=True)
class SpectrumReport:
    target: ParamPoint
    levels: tuple[EnergyLevel, ...]
    normalizations: tuple[tuple[float, ...], ...]

    def to_dict(self) -> dict:
        return {
            "target": [str(x) for x in self.target.astuple()],
            "levels": [lv.to_dict() for lv in self.levels],
            "normalizations": [list(ns) for ns in self.normalizations],
        }


def bound_spectrum(target: ParamPoint, max_extra: int = 64) -> SpectrumReport:
    """All bound levels of the Hamiltonian at `target`.

    A vertex (l0', 0, l2') reaches the target only with l0' = l0 + k and
    l2' = l2 + l1 + k for a nonnegative word count k, so candidate level sums
    l0'+l2' walk upward in steps of two until normalizability (sum < -5/2)
    fails.  Levels come out sorted by increasing energy; each level's
    degeneracy is the Gram rank of its generated states.
    """
    levels: list[EnergyLevel] = []
    norms: list[tuple[float, ...]] = []
    for k in range(0, max_extra):
        v0 = target.l0 + k
        v2 = target.l2 + target.l1 + k
        sigma = v0 + v2
        if not sigma < Fraction(-5, 2):
            break
        if v0 < -HALF:
            continue
        vertex = ParamPoint(v0, Fraction(0), v2)
        words, sts = _generate_at(vertex, target, "su21")
        if not sts:
            continue
        levels.append(EnergyLevel(vertex_energy(v0, v2), gram_rank(sts),
                                  tuple(words), vertex))
        norms.append(tuple(normalize(st)[1] for st in sts))
    if not levels:
        raise AdmissibilityError(
            f"no admissible vertex reaches {target}; Hamiltonian has no "
            "ladder-generated bound states")
    order = sorted(range(len(levels)), key=lambda i: levels[i].energy)
    return SpectrumReport(target, tuple(levels[i] for i in order),
                          tuple(norms[i] for i in order))
