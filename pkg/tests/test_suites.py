import json

import pytest

from oracles import count_nodes
from topobelief import formula as fm
from topobelief.formula import parse
from topobelief.model import ScenarioClass, ed_scenarios, load, parse_scenario, random_model
from topobelief.semantics import Semantics, find_countermodel, satisfies, valid_in_model
from topobelief.suites import (
    BASE_SCHEMES,
    DEFAULT_INSTANTIATION,
    DEFAULT_MATRIX,
    Batch,
    SuiteError,
    expected_failures,
    get_suite,
    run_suite,
    scheme_instances,
    soundness_batch,
    stalnaker_images,
    suite_names,
)


class TestSuiteContents:
    def test_base_is_eleven_schemes(self):
        assert len(BASE_SCHEMES) == 11

    def test_full_belief_suite(self):
        suite = get_suite("sel")
        assert len(suite.schemes) == 17
        for name in ("K_B", "sPI", "KB", "RB", "wF", "CB"):
            assert name in suite.schemes
        assert suite.semantics is Semantics.STRONG

    def test_range_belief_suite(self):
        suite = get_suite("el_kboxb")
        assert len(suite.schemes) == 15
        assert "wF" not in suite.schemes and "CB" not in suite.schemes
        assert suite.semantics is Semantics.ED
        assert suite.scenario_class is ScenarioClass.ALL

    def test_extensions(self):
        assert get_suite("el_kboxb_d").scenario_class is ScenarioClass.CONSISTENT
        assert get_suite("el_kboxb_wf").scenario_class is ScenarioClass.DENSE
        assert get_suite("el_kboxb_cb").semantics is Semantics.AE

    def test_pure_belief_suite(self):
        assert get_suite("kd45_b").schemes == ("K_B", "D_B", "4_B", "5_B")

    def test_unknown(self):
        with pytest.raises(SuiteError, match="unknown"):
            get_suite("nope")

    def test_collapsed_images_are_reference_only(self):
        with pytest.raises(SuiteError, match="documentation-only"):
            get_suite("stal_t")
        images = stalnaker_images()
        assert set(images) == {"K_B", "sPI", "KB", "RB", "wF", "CB"}
        for template in images.values():
            assert count_nodes(template, fm.Box) == 0

    def test_names_listing(self):
        assert "sel" in suite_names() and "kd45_b" in suite_names()

    def test_default_instantiation_is_versioned(self):
        texts = tuple(fm.to_text(f) for f in DEFAULT_INSTANTIATION)
        assert texts == ("p", "q", "p & q", "! p", "K p", "box p", "B p", "dia q")


class TestInstances:
    def test_one_metavariable_count(self):
        assert len(scheme_instances(fm.get_scheme("T_K"))) == 8

    def test_two_metavariable_count(self):
        assert len(scheme_instances(fm.get_scheme("K_B"))) == 64

    def test_deduplication(self):
        insts = scheme_instances(fm.get_scheme("T_K"), [parse("p"), parse("p")])
        assert len(insts) == 1


class TestRunSuite:
    def test_full_belief_clean_small(self):
        report = run_suite(get_suite("sel"), Batch(exhaustive_n=2))
        assert report.clean
        assert len(report.results) == 304  # 3 binary schemes x 64 + 14 unary x 8

    def test_pure_belief_clean_small(self):
        report = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=2))
        assert report.clean
        by_scheme = {r.scheme for r in report.results}
        assert by_scheme == {"K_B", "D_B", "4_B", "5_B"}

    def test_bimodal_base_clean_small(self):
        report = run_suite(get_suite("el_kbox"), Batch(exhaustive_n=2))
        assert report.clean

    def test_bimodal_base_clean_on_standard_batch(self):
        # the suite/semantics matrix invariant covers the base row too
        report = run_suite(get_suite("el_kbox"), soundness_batch())
        assert report.clean

    def test_consistency_axiom_needs_its_class(self):
        report = run_suite(
            get_suite("el_kboxb_d"), Batch(exhaustive_n=1), scenario_class=ScenarioClass.ALL
        )
        assert not report.clean
        bad = [r for r in report.results if r.status == "countermodel"]
        assert bad and all(r.scheme == "D_B" for r in bad)
        first = bad[0]
        scenario = parse_scenario(first.witness_scenario)
        assert scenario.v == 0
        # the embedded witness replays through the public evaluator
        model = load(json.dumps(first.witness_model))
        assert not satisfies(model, scenario, parse(first.instance), Semantics.ED)

    def test_report_json_deterministic(self):
        report = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=2))
        again = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=2))
        assert report.to_json() == again.to_json()
        payload = json.loads(report.to_json())
        assert payload["clean"] is True
        assert payload["suite"] == "kd45_b"

    def test_text_report_mentions_verdict(self):
        report = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=1))
        assert "all schemes valid" in report.to_text()

    def test_necessitation_rows_checked_when_premise_valid(self):
        top = parse("true")
        report = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=2), instantiation=[top])
        rows = {(r.rule, r.premise): r.status for r in report.rules}
        assert rows[("Nec_B", "true")] == "valid"

    def test_necessitation_rows_vacuous_otherwise(self):
        report = run_suite(get_suite("kd45_b"), Batch(exhaustive_n=2))
        assert all(r.status == "vacuous" for r in report.rules)

    def test_matrix_rows_resolve(self):
        for name, kind, cls in DEFAULT_MATRIX:
            suite = get_suite(name)
            assert kind is None or isinstance(kind, Semantics)
            assert cls is None or isinstance(cls, ScenarioClass)
            assert suite.schemes


class TestClassMonotonicity:
    def test_scenario_streams_nest(self):
        for seed in range(6):
            m = random_model(seed, 4)
            every = {(s.x, s.u, s.v) for s in ed_scenarios(m, ScenarioClass.ALL)}
            for cls in (ScenarioClass.CONSISTENT, ScenarioClass.DENSE, ScenarioClass.TOTAL):
                sub = {(s.x, s.u, s.v) for s in ed_scenarios(m, cls)}
                assert sub <= every

    def test_valid_under_all_stays_valid_under_subclasses(self):
        schemes = [
            inst
            for name in ("K_B", "sPI", "KB", "RB")
            for inst in scheme_instances(fm.get_scheme(name), DEFAULT_INSTANTIATION[:3])
        ]
        for seed in range(4):
            m = random_model(seed, 4)
            for inst in schemes:
                assert valid_in_model(m, inst, Semantics.ED, ScenarioClass.ALL).valid
                for cls in (ScenarioClass.CONSISTENT, ScenarioClass.DENSE, ScenarioClass.TOTAL):
                    assert valid_in_model(m, inst, Semantics.ED, cls).valid

    def test_belief_negative_introspection_on_dense_ranges(self):
        # the pure-belief introspection axiom that the strongest suite does
        # not list still holds scenario-wise over dense conjectures
        f = parse("! B p -> B ! B p")
        for seed in range(6):
            m = random_model(seed, 4)
            assert valid_in_model(m, f, Semantics.ED, ScenarioClass.DENSE).valid


class TestExpectedFailures:
    def test_registry_labels(self):
        labels = [e.label for e in expected_failures()]
        assert labels == [
            "5_box",
            "box_dichotomy",
            "T_B",
            "omniscience",
            "D_B",
            "wF",
            "CB",
        ]

    def test_every_entry_replays(self):
        for entry in expected_failures():
            assert entry.replay(), entry.label

    def test_witnesses_respect_size_bounds(self):
        for entry in expected_failures():
            assert entry.witness_model.n <= entry.max_worlds

    def test_search_confirms_one_entry(self):
        entry = expected_failures()[0]
        out = find_countermodel(
            parse(entry.formula), entry.semantics, entry.scenario_class, max_n=entry.max_worlds
        )
        assert out.status == "found"


class TestBatch:
    def test_alignment_required(self):
        with pytest.raises(SuiteError):
            Batch(seeds=(1, 2), sizes=(4,))

    def test_soundness_batch_shape(self):
        batch = soundness_batch(random_count=6)
        assert batch.exhaustive_n == 3
        assert batch.seeds == (1, 2, 3, 4, 5, 6)
        assert batch.sizes == (4, 5, 6, 4, 5, 6)

    def test_describe_is_json_ready(self):
        batch = soundness_batch(random_count=2)
        json.dumps(batch.describe())

    def test_exhaustive_model_count(self):
        batch = Batch(exhaustive_n=2)
        assert sum(1 for _ in batch.models()) == 1 * 4 + 4 * 16
