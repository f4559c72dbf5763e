import json

import pytest
from hypothesis import given, strategies as st

from narrmap.crosstab import TokenRules
from narrmap.errors import ReportError
from narrmap.ingest import read_and_segment
from narrmap.pipeline import AnalysisConfig, analyze_document
from narrmap.report import AnalysisReport, dumps, normalize

from conftest import DATA


@pytest.fixture(scope="module")
def analysis():
    return analyze_document(read_and_segment(DATA / "harbour.md"))


def test_round_trip_is_byte_identical(analysis):
    text = analysis.report.to_json()
    again = AnalysisReport.from_json(text).to_json()
    assert again == text


def test_contents(analysis):
    r = analysis.report.to_dict()
    assert r["schema_id"] == "narrmap.report/1"
    assert r["segmentation"]["segment_count"] == len(r["rows"]) == 9
    assert r["vocabulary"]["raw_size"] > r["vocabulary"]["pruned_size"]
    assert len(r["dendrogram"]["merges"]) == 8
    assert len(r["rows"][0]["coordinates"]) == r["ca"]["n_axes"]
    assert r["outliers"]["flagged"] == [s["index"] for s in r["outliers"]["segments"] if s["flagged"]]
    assert len(r["metrics"]) == 9


def test_config_echo_reproduces_run(analysis):
    config = AnalysisConfig.from_dict(analysis.report.config)
    doc = read_and_segment(DATA / "harbour.md", config.segmentation)
    assert analyze_document(doc, config).report.to_json() == analysis.report.to_json()


def test_config_echo_with_stopwords():
    config = AnalysisConfig(tokens=TokenRules(stopword_list=frozenset({"the", "a"})),
                            linkage="ward", axes=(2, 3), flag_fraction=0.3)
    back = AnalysisConfig.from_dict(json.loads(dumps(config.to_dict())))
    assert back == config


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_reals_keep_twelve_digits_and_round_trip(x):
    once = normalize(x)
    assert normalize(json.loads(json.dumps(once))) == once
    if x != 0:
        assert once == pytest.approx(x, rel=1e-11)


def test_nonfinite_become_null():
    assert normalize([float("nan"), float("inf")]) == [None, None]


@pytest.mark.parametrize("text", ["not json", "[]", '{"schema_id": "other/1"}', '{"schema_id": "narrmap.report/1"}'])
def test_rejects_bad_reports(text):
    with pytest.raises(ReportError):
        AnalysisReport.from_json(text)
