import json

import pytest

from locus.corpus import (ManifestError, default_manifest_path, expand_stream, load_manifest,
                          run_corpus)

SMALL = {
    "name": "small",
    "streams": [
        {"name": "ids", "random": {"boundary": [3, 12], "interior": [0, 10]},
         "seeds": {"start": 0, "count": 20}, "suites": ["pick-euler"]},
        {"name": "fix", "instances": ["octahedron", "wheel(5)", "annulus(4)"],
         "suites": ["lemma-2-4", "lemma-3-1", "lemma-3-6"]},
        {"name": "loc", "instances": ["hex-patch(2)", "lemma36-counterexample"],
         "random": {"boundary": [5, 9], "interior": [0, 8]}, "seeds": [7, 8],
         "filter": "7-located", "suites": ["lemma-3-8", "theorem"]},
    ],
}


def untimed(report):
    return report.lines(timing=False)


def test_shipped_manifest_all_suites_pass():
    report = run_corpus(default_manifest_path())
    assert report.passed, "\n".join(report.lines())
    lines = report.lines()
    assert "verdict: pass" in lines
    assert any(ln.startswith("stream.located.rejected:") and "lemma36-counterexample" in ln
               for ln in lines)
    assert report.suites["pick-euler"].passed == 500
    assert report.suites["lemma-2-4"].passed >= 100


def test_shipped_manifest_shape():
    m = load_manifest(default_manifest_path())
    names = [s["name"] for s in m["streams"]]
    assert names[:3] == ["identities", "fixtures", "located"]
    assert len(expand_stream(m["streams"][0])) == 500


def test_deterministic_and_thread_independent():
    a = untimed(run_corpus(SMALL, threads=1))
    b = untimed(run_corpus(json.dumps(SMALL), threads=1))
    c = untimed(run_corpus(SMALL, threads=2))
    assert a == b == c
    assert "verdict: pass" in a


def test_env_threads(monkeypatch):
    monkeypatch.setenv("LOCUS_THREADS", "2")
    assert untimed(run_corpus(SMALL)) == untimed(run_corpus(SMALL, threads=1))


def test_expand_stream_is_seeded():
    st = load_manifest(SMALL)["streams"][0]
    assert expand_stream(st) == expand_stream(st)
    assert all(3 <= spec[1] <= 12 and 0 <= spec[2] <= 10 for spec in expand_stream(st))


def test_empty_manifest():
    report = run_corpus({})
    assert report.passed and report.lines(timing=False) == ["manifest: manifest", "verdict: pass"]


@pytest.mark.parametrize("bad", [
    "[]",
    "no/such/manifest.json",
    "{not json",
    {"colour": 1},
    {"settings": {"speed": 2}},
    {"streams": [{"suites": ["lemma-9-9"]}]},
    {"streams": [{"instances": ["cube"]}]},
    {"streams": [{"random": {"boundary": [3, 5]}}]},
    {"streams": [{"random": {"boundary": [9, 5]}, "seeds": [1]}]},
    {"streams": [{"filter": "8-located"}]},
    {"streams": [{"random": {"boundary": 5, "config": {"spin": 1}}, "seeds": [1]}]},
])
def test_malformed_manifests(bad):
    with pytest.raises(ManifestError):
        load_manifest(bad)
