import json

import pytest

import mmk
from mmk.errors import DomainError, SchemaError
from mmk.motorola import DIMENSION_VALUES, DimensionScores, Status

from conftest import read_fixture


class TestDimensionScores:
    def test_valid_values(self):
        d = DimensionScores(0, 6, 10)
        assert d.total == 16

    @pytest.mark.parametrize("bad", [-2, 1, 3, 5, 7, 9, 11, 12])
    def test_rejects_off_scale(self, bad):
        with pytest.raises(DomainError) as exc:
            DimensionScores(bad, 0, 0)
        assert exc.value.code == "dimension_out_of_range"


class TestPracticeScore:
    @pytest.mark.parametrize(
        "dims,score",
        [
            ((0, 0, 0), 0),
            ((10, 10, 10), 10),
            ((6, 6, 8), 7),     # mean 6.67 rounds up
            ((4, 2, 2), 3),     # mean 2.67 rounds up
            ((6, 4, 4), 5),     # mean 4.67 rounds up
            ((2, 2, 0), 1),     # mean 1.33 rounds down
            ((8, 8, 10), 9),    # mean 8.67 rounds up
            ((2, 0, 0), 1),     # mean 0.67: .5-and-up goes away from zero
        ],
    )
    def test_rounding(self, dims, score):
        assert mmk.practice_score(DimensionScores(*dims)) == score

    def test_half_rounds_away_from_zero(self):
        # mean 5.0 - no half case exists with even inputs, but 6,6,8 -> 20/3
        # and 4,6,6 -> 16/3 probe both sides of .5
        assert mmk.practice_score(DimensionScores(4, 6, 6)) == 5
        assert mmk.practice_score(DimensionScores(6, 6, 4)) == 5


class TestFactorScore:
    def test_worked_example(self):
        final, status = mmk.factor_score([7, 3, 5, 3, 7])
        assert final == 5.0
        assert status is Status.WEAK

    def test_final_is_unrounded(self):
        final, status = mmk.factor_score([7, 7, 6])
        assert final == pytest.approx(20 / 3)
        assert status is Status.WEAK

    def test_strong_threshold_inclusive(self):
        final, status = mmk.factor_score([7, 7, 7])
        assert final == 7.0
        assert status is Status.STRONG

    def test_just_below_threshold(self):
        _, status = mmk.factor_score([7, 7, 7, 6])
        assert status is Status.WEAK

    def test_empty_rejected(self):
        with pytest.raises(DomainError) as exc:
            mmk.factor_score([])
        assert exc.value.code == "empty_factor"

    @pytest.mark.parametrize("bad", [-1, 11])
    def test_range_checked(self, bad):
        with pytest.raises(DomainError):
            mmk.factor_score([5, bad])


class TestAssess:
    def test_full_assessment(self, model, company_scores):
        report = mmk.assess_maturity(model, company_scores)
        assert report.achieved_level == 3
        assert [(w.level, w.factor_id) for w in report.weak_factors] == [(4, "CSF6"), (4, "CB3")]
        assert report.factor("CSF6").final_score == 6.0
        assert report.factor("CB3").final_score == pytest.approx(20 / 3)
        assert all(f.complete for lvl in report.levels for f in lvl.factors)

    def test_missing_scores_rejected_when_not_partial(self, model):
        with pytest.raises(DomainError) as exc:
            mmk.assess_maturity(model, {})
        assert exc.value.code == "scores_incomplete"
        assert exc.value.detail == {"missing": 51}

    def test_unknown_practice_rejected(self, model, company_scores):
        scores = dict(company_scores)
        scores["P99-NOPE"] = DimensionScores(0, 0, 0)
        with pytest.raises(DomainError) as exc:
            mmk.assess_maturity(model, scores, partial=True)
        assert exc.value.code == "unknown_practice"

    def test_partial_zero_fills_and_marks_incomplete(self, model):
        _, _, scores = mmk.parse_scores_document(read_fixture("scores/worked_example.json"))
        report = mmk.assess_maturity(model, scores, partial=True)
        csf1 = report.factor("CSF1")
        assert csf1.complete
        assert [p.score for p in csf1.practices] == [7, 3, 5, 3, 7]
        assert csf1.final_score == 5.0
        untouched = report.factor("CB1")
        assert not untouched.complete
        assert untouched.status is Status.WEAK
        assert all(p.score == 0 for p in untouched.practices if not p.scored)

    def test_incomplete_factors_sit_outside_the_gate(self, model):
        # a lone scored factor cannot advance the level, but must not block
        # the gate with its zero-filled neighbours either
        _, _, scores = mmk.parse_scores_document(read_fixture("scores/worked_example.json"))
        report = mmk.assess_maturity(model, scores, partial=True)
        assert report.achieved_level == 1

    def test_partial_strong_factor_gates_normally(self, model, company_scores):
        level2 = [f.id for f in model.levels[1].factors]
        keep = {
            pid: d
            for pid, d in company_scores.items()
            if any(pid.endswith(f"-{fid}") for fid in level2)
        }
        report = mmk.assess_maturity(model, keep, partial=True)
        assert report.achieved_level == 2


class TestGateLevels:
    def test_published_finals(self, model):
        finals = {
            "CSF1": 7.8, "CSF5": 7.5, "CB1": 8.0, "CB5": 7.3,
            "CSF2": 7.2, "CSF4": 7.25, "CB2": 8.3,
            "CSF6": 6.0, "CB3": 6.66, "CB4": 7.4,
            "CSF3": 7.8, "CB6": 7.8,
        }
        achieved, weak = mmk.gate_levels(model, finals)
        assert achieved == 3
        assert [(lvl, fid) for lvl, fid, _ in weak] == [(4, "CSF6"), (4, "CB3")]

    def test_contiguity(self, model):
        # a weak factor at level 2 pins the result even if later levels pass
        finals = {f.id: 10.0 for _, f in model.factors()}
        finals["CB5"] = 3.0
        achieved, weak = mmk.gate_levels(model, finals)
        assert achieved == 1
        assert [fid for _, fid, _ in weak] == ["CB5"]

    def test_all_strong(self, model):
        finals = {f.id: 7.0 for _, f in model.factors()}
        achieved, weak = mmk.gate_levels(model, finals)
        assert achieved == model.levels[-1].number
        assert weak == []

    def test_weak_list_sorted_by_level_then_score(self, model):
        finals = {f.id: 10.0 for _, f in model.factors()}
        finals["CSF6"] = 5.0
        finals["CB3"] = 3.0
        finals["CB6"] = 4.0
        _, weak = mmk.gate_levels(model, finals)
        assert [(lvl, fid) for lvl, fid, _ in weak] == [(4, "CB3"), (4, "CSF6"), (5, "CB6")]


class TestWhatIf:
    def build_report(self, model, scores, partial=False):
        return mmk.assess_maturity(model, scores, partial=partial)

    def test_plan_reaches_target_on_replay(self, model, company_scores):
        report = self.build_report(model, company_scores)
        plan = mmk.whatif_plan(report, 4)
        assert {fp.factor_id for fp in plan.factors} == {"CSF6", "CB3"}
        replayed = mmk.apply_plan(company_scores, plan)
        after = mmk.assess_maturity(model, replayed)
        assert after.achieved_level >= 4

    def test_deficit_counts_practice_points(self, model, company_scores):
        report = self.build_report(model, company_scores)
        plan = mmk.whatif_plan(report, 4)
        by_factor = {fp.factor_id: fp for fp in plan.factors}
        # CSF6 sits at 6.0 over 4 practices: needs ceil(1.0 * 4) = 4 points
        assert by_factor["CSF6"].deficit == 4
        # CB3 sits at 20/3 over 3 practices: needs 1 point
        assert by_factor["CB3"].deficit == 1

    def test_raises_never_exceed_ten(self, model, company_scores):
        report = self.build_report(model, company_scores)
        plan = mmk.whatif_plan(report, 5)
        for fp in plan.factors:
            for pr in fp.raises:
                assert 0 <= pr.from_score <= pr.to_score <= 10
                for dim in ("approach", "deployment", "results"):
                    assert getattr(pr.to_dims, dim) in DIMENSION_VALUES

    def test_target_already_achieved(self, model, company_scores):
        report = self.build_report(model, company_scores)
        with pytest.raises(DomainError) as exc:
            mmk.whatif_plan(report, 3)
        assert exc.value.code == "target_already_achieved"

    def test_target_out_of_range(self, model, company_scores):
        report = self.build_report(model, company_scores)
        for bad in (0, 1, 6):
            with pytest.raises(DomainError):
                mmk.whatif_plan(report, bad)

    def test_partial_session_plans_unscored_practices(self, model):
        _, _, scores = mmk.parse_scores_document(read_fixture("scores/worked_example.json"))
        report = self.build_report(model, scores, partial=True)
        plan = mmk.whatif_plan(report, 2)
        replayed = mmk.apply_plan(scores, plan)
        after = mmk.assess_maturity(model, replayed, partial=True)
        assert after.achieved_level >= 2
        # every practice the plan touched now carries real dimension values
        planned = {pr.practice_id for fp in plan.factors for pr in fp.raises}
        assert planned <= set(replayed)


class TestScoresDocument:
    def test_round_trip(self, company_scores):
        doc = mmk.serialize_scores(company_scores, "sre-himm@1", partial=False)
        ref, partial, again = mmk.parse_scores_document(json.dumps(doc))
        assert ref == "sre-himm@1"
        assert partial is False
        assert again == company_scores

    def test_rejects_duplicate_practice(self):
        doc = {
            "model": "sre-himm@1",
            "partial": True,
            "scores": [
                {"practice_id": "P1-CSF1", "approach": 2, "deployment": 2, "results": 2},
                {"practice_id": "P1-CSF1", "approach": 4, "deployment": 4, "results": 4},
            ],
        }
        with pytest.raises(SchemaError):
            mmk.parse_scores_document(json.dumps(doc))

    def test_rejects_unknown_field(self):
        doc = {
            "model": "m@1",
            "partial": False,
            "scores": [{"practice_id": "P1", "approach": 2, "deployment": 2, "results": 2, "extra": 9}],
        }
        with pytest.raises(SchemaError):
            mmk.parse_scores_document(json.dumps(doc))


class TestReportDict:
    def test_shape(self, model, company_scores):
        report = mmk.assess_maturity(model, company_scores)
        doc = mmk.report_to_dict(report)
        assert doc["model"] == "sre-himm@1"
        assert doc["achieved_level"] == 3
        assert [lvl["number"] for lvl in doc["levels"]] == [1, 2, 3, 4, 5]
        first = doc["levels"][1]["factors"][0]
        assert set(first) == {"factor_id", "name", "kind", "final_score", "status", "complete", "practices"}
        assert doc["weak_factors"] == [
            {"level": 4, "factor_id": "CSF6", "final_score": 6.0},
            {"level": 4, "factor_id": "CB3", "final_score": pytest.approx(20 / 3)},
        ]

    def test_plan_dict_shape(self, model, company_scores):
        report = mmk.assess_maturity(model, company_scores)
        plan = mmk.whatif_plan(report, 4)
        doc = mmk.plan_to_dict(plan)
        assert doc["target_level"] == 4
        for fp in doc["factors"]:
            assert set(fp) == {"factor_id", "level", "final_score", "deficit", "raises"}
            for pr in fp["raises"]:
                assert set(pr) == {"practice_id", "from_score", "to_score", "from", "to"}
