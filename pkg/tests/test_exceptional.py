import json

import pytest

from maxclass.arith import FpPoly, PrimeField, x_minus_one_pow
from maxclass.exceptional import (
    AbelianIdealReport,
    ConstructedAlgebra,
    ExceptionalParams,
    abelian_ideal_check,
    closed_form_betas,
    construct,
    exceptional_report,
    expected_first_length,
    expected_lengths,
    first_length_coverage,
    genfunc_closed_form,
    subalgebra_tower,
    theorem_parameter_grid,
    two_path_check,
)
from maxclass.sequences import BetaSequence, constituents, jacobi_verify

F3 = PrimeField(3)
F5 = PrimeField(5)
F7 = PrimeField(7)


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExceptionalParams(F5, 1, 2, 2)      # m < n
        with pytest.raises(ValueError):
            ExceptionalParams(F5, 1, 2, 0)      # m > 0
        with pytest.raises(ValueError):
            ExceptionalParams(F5, 1, 6, 1)      # n <= q
        with pytest.raises(ValueError):
            ExceptionalParams(F5, 0, 2, 1)      # c >= 1

    def test_mode(self):
        assert ExceptionalParams(F5, 1, 2, 1).mode == "construction"  # q = p
        assert ExceptionalParams(F5, 2, 2, 1).mode == "theorem"
        assert ExceptionalParams(F5, 2, 6, 1).mode == "construction"  # n >= p
        assert ExceptionalParams(F3, 3, 2, 1).mode == "theorem"

    def test_to_dict(self):
        d = ExceptionalParams(F3, 2, 2, 1).to_dict()
        assert d == {"p": 3, "c": 2, "q": 9, "n": 2, "m": 1, "mode": "theorem"}

    def test_theorem_grid_sizes(self):
        assert len(theorem_parameter_grid(F5, 2)) == 6
        assert len(theorem_parameter_grid(F7, 2)) == 15
        assert len(theorem_parameter_grid(F3, 3)) == 1
        assert theorem_parameter_grid(F7, 1) == []


class TestClosedForms:
    def test_small_case_frozen(self):
        # q = 3, n = 2, m = 1: entries 2, 2, then (0, 1, 2) repeating
        params = ExceptionalParams(F3, 1, 2, 1)
        got = closed_form_betas(params, 11)
        assert got == [2, 2, 0, 1, 2, 0, 1, 2, 0]

    def test_requires_room_for_two_constituents(self):
        with pytest.raises(ValueError, match="2n <= q \\+ m"):
            closed_form_betas(ExceptionalParams(F5, 1, 4, 1), 20)
        with pytest.raises(ValueError):
            genfunc_closed_form(ExceptionalParams(F5, 1, 4, 1))

    @pytest.mark.parametrize("params", [
        ExceptionalParams(F3, 1, 2, 1),
        ExceptionalParams(F3, 2, 2, 1),
        ExceptionalParams(F5, 1, 2, 1),
        ExceptionalParams(F5, 2, 3, 1),
        ExceptionalParams(F5, 2, 3, 2),
        ExceptionalParams(F7, 1, 3, 2),
    ])
    def test_series_matches_piecewise(self, params):
        depth = 3 * params.q + 2 * params.n
        series = genfunc_closed_form(params).expand(depth)[params.n + 1:]
        assert series == closed_form_betas(params, depth)

    def test_parent_specialization(self):
        # at n = m + 1 the series collapses to X^q - X^q (X-1)^m / (1 - X^q)
        for params in [ExceptionalParams(F3, 2, 2, 1), ExceptionalParams(F5, 2, 3, 2)]:
            q, m, field = params.q, params.m, params.field
            rs = genfunc_closed_form(params)
            one_minus_xq = FpPoly.one(field) - FpPoly.monomial(field, 1, q)
            want_num = (one_minus_xq - x_minus_one_pow(field, m)).shift(q)
            assert rs.num == want_num
            assert rs.den == one_minus_xq

    def test_first_length(self):
        assert expected_first_length(ExceptionalParams(F5, 2, 4, 1)) == 26
        assert expected_first_length(ExceptionalParams(F5, 2, 4, 2)) == 28
        assert expected_first_length(ExceptionalParams(F5, 2, 4, 3)) == 28

    def test_expected_lengths_even_m(self):
        assert expected_lengths(ExceptionalParams(F5, 2, 3, 2), 4) == [28, 24, 25, 25]
        assert expected_lengths(ExceptionalParams(F5, 2, 3, 1), 4) == [26, 25, 25, 25]


class TestConstruct:
    def test_matches_closed_form_q5(self):
        params = ExceptionalParams(F5, 1, 2, 1)
        algebra = construct(params)
        assert algebra.depth == params.default_depth == 19
        assert list(algebra.sequence.betas) == closed_form_betas(params, 19)
        assert sorted(algebra.elements) == list(range(2, 19 + 3))

    def test_matches_closed_form_q9(self):
        params = ExceptionalParams(F3, 2, 3, 2)
        algebra = construct(params, 40)
        assert list(algebra.sequence.betas) == closed_form_betas(params, 40)

    def test_depth_validation(self):
        with pytest.raises(ValueError, match="shallow"):
            construct(ExceptionalParams(F5, 1, 2, 1), 2)

    def test_constituent_structure_q27(self):
        params = ExceptionalParams(F3, 3, 2, 1)
        algebra = construct(params, 70)
        report = constituents(algebra.sequence)
        assert report.ell == 28
        assert report.lengths() == [28, 27]
        assert all(c.ordinary for c in report.constituents[1:])


class TestCoverage:
    def test_frozen_values(self):
        cov = first_length_coverage(F5, 2, 4)
        assert cov["by_m"] == {1: 26, 2: 28, 3: 28}
        assert cov["values"] == [26, 28] == cov["expected"]
        assert cov["ok"]

    @pytest.mark.parametrize("field,c,n", [
        (F3, 2, 2), (F3, 3, 2), (F5, 2, 2), (F5, 2, 3), (F5, 2, 4),
        (F7, 2, 4), (F7, 2, 5), (F7, 2, 6),
    ])
    def test_even_values_in_window(self, field, c, n):
        cov = first_length_coverage(field, c, n)
        assert cov["ok"], cov


class TestAbelianIdeal:
    def test_requires_parent_shape(self):
        with pytest.raises(ValueError, match="n = m \\+ 1"):
            abelian_ideal_check(ExceptionalParams(F5, 2, 4, 1))

    @pytest.mark.parametrize("params", [
        ExceptionalParams(F3, 1, 2, 1),
        ExceptionalParams(F3, 2, 2, 1),
        ExceptionalParams(F5, 1, 2, 1),
        ExceptionalParams(F5, 2, 3, 2),
    ])
    def test_holds_on_family(self, params):
        report = abelian_ideal_check(params)
        assert report.ok
        assert report.pairs_checked > 0
        assert report.failure is None

    def test_tampered_sequence_caught(self):
        params = ExceptionalParams(F5, 1, 2, 1)
        algebra = construct(params)
        betas = list(algebra.sequence.betas)
        betas[9 - 3] = 2   # beta_9 = 0 sits between constituents; 2 breaks it
        fake = ConstructedAlgebra(params, BetaSequence(F5, 2, betas), {})
        report = abelian_ideal_check(params, algebra=fake)
        assert not report.ok
        assert report.failure is not None

    def test_report_serializes(self):
        report = abelian_ideal_check(ExceptionalParams(F3, 1, 2, 1))
        json.dumps(report.to_dict())


class TestTwoPaths:
    def test_tower_raises_type_stepwise(self):
        params = ExceptionalParams(F5, 2, 2, 1)
        seq = construct(params, 60).sequence
        tower = subalgebra_tower(seq, 2)
        assert tower.n == 4 and tower.depth == 58

    @pytest.mark.parametrize("params", [
        ExceptionalParams(F5, 2, 4, 1),
        ExceptionalParams(F5, 2, 3, 1),
        ExceptionalParams(F3, 3, 2, 1),
        ExceptionalParams(F7, 1, 4, 2),
    ])
    def test_construction_and_tower_agree(self, params):
        assert two_path_check(params, depth=2 * params.q + 2 * params.n)

    def test_tampered_sequence_caught(self):
        params = ExceptionalParams(F5, 2, 4, 1)
        algebra = construct(params, 60)
        betas = list(algebra.sequence.betas)
        betas[-1] = (betas[-1] + 1) % 5
        fake = ConstructedAlgebra(params, BetaSequence(F5, 4, betas), {})
        assert not two_path_check(params, algebra=fake)


class TestReport:
    @pytest.mark.parametrize("params", [
        ExceptionalParams(F3, 1, 2, 1),
        ExceptionalParams(F3, 2, 2, 1),
        ExceptionalParams(F3, 3, 2, 1),
        ExceptionalParams(F5, 1, 2, 1),
        ExceptionalParams(F5, 1, 3, 2),
        ExceptionalParams(F5, 2, 3, 2),
    ])
    def test_family_members_pass(self, params):
        report = exceptional_report(params)
        assert report.ok, report.to_dict()

    def test_report_contents(self):
        params = ExceptionalParams(F3, 2, 3, 2)
        report = exceptional_report(params)
        assert report.ell == 12
        assert report.lengths[:3] == [12, 8, 9]
        assert report.ideal_ok is True      # n = m + 1: the ideal check runs
        assert report.jacobi_depth == 27
        data = json.dumps(report.to_dict(), sort_keys=True)
        assert '"ok": true' in data

    def test_ideal_check_skipped_off_parent(self):
        report = exceptional_report(ExceptionalParams(F3, 2, 3, 1))
        assert report.ideal_ok is None
        assert report.ok

    def test_flipped_entry_fails_report(self):
        params = ExceptionalParams(F5, 1, 2, 1)
        algebra = construct(params)
        betas = list(algebra.sequence.betas)
        betas[10 - 3] = (betas[10 - 3] + 3) % 5
        fake = ConstructedAlgebra(params, BetaSequence(F5, 2, betas), {})
        report = exceptional_report(params, algebra=fake)
        assert not report.ok
        assert not report.closed_form_ok
        assert not report.jacobi_ok

    def test_jacobi_cap_respected(self):
        params = ExceptionalParams(F3, 1, 2, 1)
        report = exceptional_report(params, jacobi_cap=7)
        assert report.jacobi_depth == 7


class TestConstructionMode:
    def test_large_n_small_q(self):
        # n just below q, still inside the permitted parameter range
        params = ExceptionalParams(F3, 1, 3, 2)
        assert params.mode == "construction"
        algebra = construct(params, 20)
        assert jacobi_verify(algebra.sequence).ok

    def test_sequence_need_not_follow_theorem_forms(self):
        # 2n > q + m: constructible, but the closed forms refuse
        params = ExceptionalParams(F5, 1, 4, 1)
        algebra = construct(params, 25)
        assert jacobi_verify(algebra.sequence).ok
        with pytest.raises(ValueError):
            closed_form_betas(params, 25)
