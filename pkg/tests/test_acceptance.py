"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines. Scores on
the original 150-utterance corpus are not recomputable (the annotated data
is unpublished), so scoring is accepted via exact oracle equivalence on
generated pairs plus rendering of the reference per-round values.
"""

import json
import os
import random
import signal
import socket
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import httpx
import pytest

from spokenud import (
    AdjudicationError,
    PairScore,
    ParseError,
    Resolution,
    SamplingError,
    apply_resolution,
    create_session,
    export_gold,
    lint_spoken,
    parse,
    render_score_table,
    sample,
    save_session,
    score_pair,
    serialize,
    switch_points,
    validate_structure,
)
from spokenud.conllu import Document, Sentence, Token

from docgen import mutated_copy, naive_counts, random_document


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}")


def test_oracle_equivalence_1000_pairs():
    with criterion("oracle equivalence: 1000 random pairs match naive counts exactly, < 10 s"):
        rng = random.Random(20260809)
        started = time.monotonic()
        for index in range(1000):
            a = random_document(rng, max_sentences=30, max_tokens=15)
            b = mutated_copy(rng, a, rate=0.25)
            universal = index % 2 == 1
            expected = naive_counts(a, b, universal_only=universal)
            score = score_pair(a, b, universal_deprel_only=universal)
            got = (score.total_tokens, score.pos_matches,
                   score.head_matches, score.labeled_matches)
            assert got == expected, f"pair {index}: {got} != oracle {expected}"
        elapsed = time.monotonic() - started
        assert elapsed < 10.0, f"oracle sweep took {elapsed:.1f} s"


def test_identity_and_bounds(example1, example2):
    with criterion("identity and bounds: agree(f, f) is 100/100/100 and LAS <= UAS always"):
        for doc in (example1, example2):
            score = score_pair(doc, doc)
            assert (score.pos, score.uas, score.las) == (100.0, 100.0, 100.0)
        rng = random.Random(42)
        for _ in range(200):
            a = random_document(rng, max_sentences=10, max_tokens=15)
            b = mutated_copy(rng, a, rate=0.5)
            score = score_pair(a, b)
            assert 0.0 <= score.las <= score.uas <= 100.0
            assert 0.0 <= score.pos <= 100.0


REFERENCE_ROUNDS = [
    ("Round 1", (69.5, 72.3, 60.9)),
    ("Round 2", (87.1, 76.1, 64.6)),
    ("Round 3", (89.7, 80.1, 71.4)),
]


def test_reference_table_rendering():
    with criterion("table rendering: the three reference rounds render one-decimal, three rows"):
        rows = []
        for label, (pos, uas, las) in REFERENCE_ROUNDS:
            rows.append((label, PairScore(
                total_tokens=1000, pos_matches=round(pos * 10),
                head_matches=round(uas * 10), labeled_matches=round(las * 10))))
        table = render_score_table(rows)
        lines = table.splitlines()
        assert lines[0].split() == ["POS", "UAS", "LAS"]
        body = [line.split() for line in lines[1:]]
        assert body == [
            ["Round", "1", "69.5", "72.3", "60.9"],
            ["Round", "2", "87.1", "76.1", "64.6"],
            ["Round", "3", "89.7", "80.1", "71.4"],
        ]


def test_reference_fixtures(example1, example2, example2_text):
    with criterion("reference fixtures: both parse clean, lint clean; cc mutation trips exactly R4"):
        for doc in (example1, example2):
            assert doc.issues == ()
            assert validate_structure(doc) == []
            errors = [d for d in lint_spoken(doc) if d.severity == "error"]
            assert errors == []
        mutated = parse(example2_text.replace("12\tdislocated", "12\tcc"))
        diagnostics = lint_spoken(mutated)
        assert [(d.rule_id, d.token_id) for d in diagnostics] == [("R4", 13)]


def test_round_trip_idempotence(example1_text, example2_text):
    with criterion("round-trip: serialize . parse is byte-identical on fixtures + 100 documents"):
        for text in (example1_text, example2_text):
            assert serialize(parse(text)) == text
        rng = random.Random(7)
        for _ in range(100):
            canonical = serialize(random_document(rng, max_sentences=10, max_tokens=12))
            assert serialize(parse(canonical)) == canonical


def _sentence(rows):
    tokens = tuple(Token(id=i, form=f"w{i}", upos="NOUN", head=h, deprel=d)
                   for i, (h, d) in enumerate(rows, start=1))
    return Document((Sentence(sent_id="s1", tokens=tokens),))


def test_structural_safety():
    with criterion("structural safety: cycle, multi-root, out-of-range each yield their V-rule"):
        cycle = _sentence([(2, "dep"), (1, "dep"), (0, "root")])
        assert [d.rule_id for d in validate_structure(cycle)] == ["V3"]
        multi = _sentence([(0, "root"), (0, "root")])
        assert [d.rule_id for d in validate_structure(multi)] == ["V1"]
        out_of_range = _sentence([(9, "dep"), (0, "root")])
        assert [d.rule_id for d in validate_structure(out_of_range)] == ["V4"]
        for text, code in [
            ("1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n", "CYCLE"),
            ("1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n", "MULTIPLE_ROOTS"),
            ("1\ta\t_\t_\t_\t_\t9\tdep\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n", "HEAD_OUT_OF_RANGE"),
        ]:
            with pytest.raises(ParseError) as err:
                parse(text)
            assert err.value.code == code


def test_adjudication_identity(example1_text):
    with criterion("adjudication: take_a export is byte-identical; two-root merge is rejected"):
        a = parse(example1_text.replace("8\texpl", "8\tdet"), source_name="a")
        b = parse(example1_text, source_name="b")
        session = create_session(a, b, ("ann1", "ann2"))
        for record in session.records:
            apply_resolution(session, Resolution(record.sent_id, record.token_id, "take_a"))
        assert serialize(export_gold(session)) == serialize(a)

        left = _sentence([(3, "advmod"), (3, "nsubj"), (0, "root"), (3, "obj"), (3, "obl")])
        right = _sentence([(5, "advmod"), (5, "nsubj"), (5, "xcomp"), (5, "obj"), (0, "root")])
        session = create_session(left, right, ("ann1", "ann2"))
        for token_id in (1, 2, 4):
            apply_resolution(session, Resolution("s1", token_id, "take_a"))
        apply_resolution(session, Resolution("s1", 3, "take_a"))
        apply_resolution(session, Resolution("s1", 5, "take_b"))
        with pytest.raises(AdjudicationError) as err:
            export_gold(session)
        assert err.value.code == "EXPORT_INVALID_TREE"


def test_sampler_contract():
    with criterion("sampler: switch guarantee, seed determinism, eligibility error"):
        rng = random.Random(11)
        sentences = []
        for i in range(1, 41):
            langs = ["fy", "nl"] if i % 3 else ["fy", "fy"]
            tokens = tuple(
                Token(id=j, form=f"w{j}", head=0 if j == 1 else 1,
                      deprel="root" if j == 1 else "dep",
                      misc=(("Lang", lang),))
                for j, lang in enumerate(langs, start=1))
            sentences.append(Sentence(sent_id=f"u{i}", tokens=tokens))
        corpus = Document(tuple(sentences))
        eligible = sum(1 for s in corpus.sentences if switch_points(s) >= 1)

        picked = sample(corpus, 10, require_switch=True, seed=123)
        assert len(picked.sentences) == 10
        assert all(switch_points(s) >= 1 for s in picked.sentences)
        again = sample(corpus, 10, require_switch=True, seed=123)
        assert [s.sent_id for s in picked.sentences] == [s.sent_id for s in again.sentences]
        with pytest.raises(SamplingError) as err:
            sample(corpus, eligible + 1, require_switch=True, seed=123)
        assert err.value.code == "NOT_ENOUGH_ELIGIBLE"


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def _wait_until_up(client, url, deadline=15.0):
    start = time.monotonic()
    while time.monotonic() - start < deadline:
        try:
            response = client.get(url)
            if response.status_code == 200:
                return response
        except httpx.TransportError:
            time.sleep(0.1)
    raise AssertionError(f"service at {url} did not come up within {deadline} s")


def test_service_durability(example1_text, tmp_path):
    with criterion("service durability: resolution survives kill -9 and restart"):
        a = parse(example1_text.replace("8\texpl", "8\tdet"), source_name="a")
        b = parse(example1_text, source_name="b")
        session_path = tmp_path / "session.json"
        save_session(create_session(a, b, ("ann1", "ann2")), session_path)
        port = _free_port()
        base = f"http://127.0.0.1:{port}"
        argv = [sys.executable, "-m", "spokenud.cli", "serve", str(session_path),
                "--port", str(port)]

        def spawn():
            return subprocess.Popen(argv, stdout=subprocess.DEVNULL,
                                    stderr=subprocess.DEVNULL)

        proc = spawn()
        try:
            with httpx.Client(timeout=5.0) as client:
                _wait_until_up(client, f"{base}/api/session")
                response = client.post(
                    f"{base}/api/sentences/0/resolutions",
                    json={"token_id": 7, "choice": "take_b"})
                assert response.status_code == 200
            os.kill(proc.pid, signal.SIGKILL)
            proc.wait(timeout=10)
            proc = spawn()
            with httpx.Client(timeout=5.0) as client:
                _wait_until_up(client, f"{base}/api/session")
                data = client.get(f"{base}/api/progress").json()
                assert data["resolved"] == 1
                detail = client.get(f"{base}/api/sentences/0").json()
                assert detail["resolutions"][0]["choice"] == "take_b"
        finally:
            if proc.poll() is None:
                proc.kill()
                proc.wait(timeout=10)
