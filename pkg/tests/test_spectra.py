"""Ground states, lattices, degeneracies and bound spectra."""

import math
from fractions import Fraction

import pytest

from ladderspec import (AdmissibilityError, LabeledState, OperatorName,
                        ParamPoint, apply, apply_hamiltonian, bound_spectrum,
                        cprime, enumerate_lattice, gram_rank, ground_beta,
                        ground_chi, ground_full, ground_theta, lattice_states,
                        monomial, norm_squared, normalize, so42_vacuum,
                        states_at, vertex_energy)
from ladderspec.operators import LOWERING_SO42, LOWERING_SU21

from conftest import quadrature_oracle

O = OperatorName


class TestGroundStates:
    def test_ground_theta_shape(self):
        assert ground_theta(0, 0) == monomial(1, "1/2", "1/2")
        st = LabeledState(ParamPoint.of(0, 0, 0), ground_theta(0, 0))
        assert apply(O.A_MINUS, st).is_zero

    def test_ground_chi_admissible(self):
        assert ground_chi(0, -3) == monomial(1, 0, 0, "-5/2", "1/2")

    def test_ground_chi_rejects(self):
        with pytest.raises(AdmissibilityError, match="l0\\+l2"):
            ground_chi(0, -1)

    def test_ground_beta_rejects_boundary(self):
        with pytest.raises(AdmissibilityError, match="l2-l1"):
            ground_beta(1, 0)

    def test_ground_theta_rejects(self):
        with pytest.raises(AdmissibilityError):
            ground_theta(-1, 0)

    def test_ground_full_shape(self):
        st = ground_full(0, -5)
        assert st.label == ParamPoint.of(0, 0, -5)
        assert st.expr == monomial(1, "1/2", "1/2", "-9/2", 1)

    def test_ground_full_annihilated(self):
        st = ground_full(1, -4)
        for op in LOWERING_SU21:
            assert apply(op, st).is_zero

    def test_ground_full_normalization_bound(self):
        with pytest.raises(AdmissibilityError, match="-5/2"):
            ground_full(0, -2)

    def test_so42_vacuum(self):
        vac = so42_vacuum(-3)
        assert vac.expr == monomial(1, "1/2", "1/2", "-5/2", 1)
        for op in LOWERING_SO42:
            assert apply(op, vac).is_zero

    def test_so42_vacuum_boundary(self):
        with pytest.raises(AdmissibilityError):
            so42_vacuum("-5/2")


class TestVertexEnergy:
    def test_example_values(self):
        assert vertex_energy(0, -5) == Fraction(-35, 4)
        assert vertex_energy(1, -4) == Fraction(-3, 4)
        assert vertex_energy(0, "-3/2") == 0

    def test_depends_only_on_sum(self):
        assert vertex_energy(0, -3) == vertex_energy(1, -4) == vertex_energy(2, -5)


class TestLattice:
    def test_su21_depth_one(self):
        pts = enumerate_lattice(ParamPoint.of(0, 0, -3), "su21", 1)
        labels = {pt.label for pt in pts}
        # the A-raising annihilates the l0=0 vertex, only the C-raising survives
        assert labels == {ParamPoint.of(0, 0, -3), ParamPoint.of(0, 1, -4)}

    def test_depth_zero(self):
        pts = enumerate_lattice(ParamPoint.of(0, 0, -3), "so42", 0)
        assert [pt.label for pt in pts] == [ParamPoint.of(0, 0, -3)]

    def test_cprime_plane(self):
        pts = enumerate_lattice(ParamPoint.of(1, 0, -4), "su21", 4)
        assert {cprime(pt.label) for pt in pts} == {Fraction(-5)}

    def test_all_states_are_eigenstates(self):
        for v in (ParamPoint.of(0, 0, -3), ParamPoint.of(1, 0, -4)):
            e = vertex_energy(v.l0, v.l2)
            for sts in lattice_states(v, "su21", 3).values():
                for st in sts:
                    assert apply_hamiltonian(st) == st.expr.scale(e)

    def test_so42_contains_inner_vertex(self):
        pts = enumerate_lattice(ParamPoint.of(0, 0, -3), "so42", 2)
        assert ParamPoint.of(0, 0, -5) in {pt.label for pt in pts}

    def test_inadmissible_vertex(self):
        with pytest.raises(AdmissibilityError):
            enumerate_lattice(ParamPoint.of(0, 0, -2), "su21", 2)


class TestStatesAt:
    def test_degenerate_pair(self):
        sts = states_at(ParamPoint.of(1, 0, -4), ParamPoint.of(0, 0, -5))
        assert len(sts) == 2
        assert gram_rank(sts) == 2

    def test_vertex_is_its_own_state(self):
        sts = states_at(ParamPoint.of(0, 0, -5), ParamPoint.of(0, 0, -5))
        assert len(sts) == 1

    def test_unreachable_target(self):
        assert states_at(ParamPoint.of(0, 0, -4), ParamPoint.of(0, 0, -5)) == []

    def test_deeper_level_rank(self):
        # two raising steps of each kind; the eigenspace here is 3-dimensional
        # (three separated channels share the energy), and the word states hit
        # all of it
        sts = states_at(ParamPoint.of(2, 0, -5), ParamPoint.of(0, 0, -7))
        assert gram_rank(sts) == 3

    def test_so42_inner_vertex_is_doubly_degenerate(self):
        # the first inner vertex of the big-representation pyramid carries the
        # full 2D eigenspace
        sts = states_at(ParamPoint.of(0, 0, -3), ParamPoint.of(0, 0, -5), "so42")
        assert gram_rank(sts) == 2


class TestGramRank:
    def test_proportional_states(self):
        st = ground_full(0, -5)
        double = LabeledState(st.label, st.expr.scale(2))
        assert gram_rank([st, double]) == 1

    def test_empty(self):
        assert gram_rank([]) == 0

    def test_rescaling_invariance(self):
        sts = states_at(ParamPoint.of(1, 0, -4), ParamPoint.of(0, 0, -5))
        scaled = [LabeledState(s.label, s.expr.scale(Fraction(7, 3))) for s in sts]
        assert gram_rank(scaled) == gram_rank(sts)

    def test_mixed_labels_rejected(self):
        with pytest.raises(ValueError):
            gram_rank([ground_full(0, -5), ground_full(0, -3)])


class TestNormalize:
    def test_unit_norm_after(self):
        st, const = normalize(ground_full(0, -5))
        assert norm_squared(st.expr) == pytest.approx(1.0, abs=1e-12)
        assert const > 0

    def test_zero_state_rejected(self):
        with pytest.raises(ValueError):
            normalize(LabeledState(ParamPoint.of(0, 0, -5), monomial(0)))

    def test_constant_matches_quadrature(self):
        st = ground_full(0, -3)
        const = normalize(st)[1]
        oracle = 1.0 / math.sqrt(quadrature_oracle(st.expr * st.expr))
        assert abs(const - oracle) < 1e-8


class TestBoundSpectrum:
    def test_h5_levels(self):
        rep = bound_spectrum(ParamPoint.of(0, 0, -5))
        energies = [lv.energy for lv in rep.levels]
        degs = [lv.degeneracy for lv in rep.levels]
        assert energies == [Fraction(-35, 4), Fraction(-3, 4)]
        assert degs == [1, 2]

    def test_energies_strictly_increasing_and_negative(self):
        for target in (ParamPoint.of(0, 0, -5), ParamPoint.of(0, 0, -7),
                       ParamPoint.of("1/2", 0, "-13/2")):
            rep = bound_spectrum(target)
            es = [lv.energy for lv in rep.levels]
            assert all(e < 0 for e in es)
            assert all(a < b for a, b in zip(es, es[1:]))

    def test_every_witness_is_an_eigenstate(self):
        from ladderspec import apply_word
        rep = bound_spectrum(ParamPoint.of(0, 0, -7))
        for lv in rep.levels:
            vstate = ground_full(lv.vertex.l0, lv.vertex.l2)
            for word in lv.witnesses:
                st = apply_word(word, vstate)
                assert apply_hamiltonian(st) == st.expr.scale(lv.energy)

    def test_inadmissible_target(self):
        with pytest.raises(AdmissibilityError):
            bound_spectrum(ParamPoint.of(0, 0, -2))

    def test_off_plane_target(self):
        # a label with l1 != 0 belongs to representations seeded higher up
        rep = bound_spectrum(ParamPoint.of(0, 1, -4))
        assert rep.levels[0].vertex == ParamPoint.of(0, 0, -3)
        assert rep.levels[0].energy == Fraction(-3, 4)

    def test_degeneracy_ladder_deep_target(self):
        # independent count: separated channels alpha_n = (1+2n)^2 at l2 = -7
        # give E(n,m) = 1/4 - (2(n+m)-5)^2 for n+m < 5/2, hence degeneracies
        # 1, 2, 3 from the pair counts at each energy
        rep = bound_spectrum(ParamPoint.of(0, 0, -7))
        assert [(lv.energy, lv.degeneracy) for lv in rep.levels] == [
            (Fraction(-99, 4), 1), (Fraction(-35, 4), 2), (Fraction(-3, 4), 3)]

    def test_degeneracy_ladder_shifted_vertex(self):
        # same counting with l0 = 1: channels (2+2n)^2, E = 1/4-(2(n+m)-3)^2
        rep = bound_spectrum(ParamPoint.of(1, 0, -6))
        assert [(lv.energy, lv.degeneracy) for lv in rep.levels] == [
            (Fraction(-35, 4), 1), (Fraction(-3, 4), 2)]
