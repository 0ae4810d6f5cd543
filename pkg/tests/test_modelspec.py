import math
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from likelihood_evidence import ModelSpecError, check, likelihood, parse, serialize, to_model
from likelihood_evidence.modelspec import document_from_model, load, read_text
from likelihood_evidence.models import rain_model

DATA = Path(__file__).parent / "data"
CORPUS = sorted((DATA / "corpus").glob("*.lmod"))
MODELS = sorted((Path(__file__).parent.parent / "models").glob("*.lmod"))


def test_corpus_has_fifty_files():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("path", CORPUS + MODELS, ids=lambda p: p.name)
def test_round_trip(path):
    doc = parse(read_text(path))
    text = serialize(doc)
    again = parse(text)
    assert again == doc
    assert serialize(again) == text


def _codes(text):
    return [(d.code, d.line, d.column) for d in check(text)[1]]


def test_good_file_with_comments_and_rationals():
    doc = parse(
        "# leading comment\n"
        "model coin\n"
        "param p : 0.5 fair\n"
        'outcome : H "tails side"   # trailing comment\n'
        "row 0.5 : 1/2 1/2\n"
        "row fair : 0.5 0.5\n"
    )
    assert doc.params == (("p", (0.5, "fair")),)
    assert doc.outcomes == ("H", "tails side")
    model = to_model(doc)
    assert model.prob((0.5,), "H") == 0.5
    assert "1/2 1/2" in serialize(doc)


def test_row_not_normalized_points_at_row():
    assert _codes("model m\nparam t : a\noutcome : x y\nrow a : 0.5 0.4\n") == [("RowNotNormalized", 4, 9)]


def test_nearly_normalized_row_warns():
    doc, diags = check("model m\nparam t : a\noutcome : x y\nrow a : 0.5 0.4999999999\n")
    assert doc is not None
    assert [(d.severity, d.code) for d in diags] == [("warning", "RowNearlyNormalized")]


@pytest.mark.parametrize(
    "text, code, line",
    [
        ("model m\nmodel n\nparam t : a\noutcome : x\nrow a : 1\n", "DuplicateDeclaration", 2),
        ("model m\nparam t : a a\noutcome : x\nrow a : 1\n", "DuplicateValue", 2),
        ("model m\nparam t : a\noutcome : x\nrow b : 1\nrow a : 1\n", "UnknownValue", 4),
        ("model m\nparam t : a\noutcome : x\nrow a : 1\nrow a : 1\n", "DuplicateRow", 5),
        ("model m\nparam t : a b\noutcome : x\nrow a : 1\n", "MissingRow", 4),
        ("model m\nparam t : a\nrow a : 1\n", "MissingDeclaration", 1),
        ('model m\nparam t : "open\noutcome : x\nrow a : 1\n', "SyntaxError", 2),
        ("model m\nparam t : a\noutcome : x y\nrow a : 1.5 -0.5\n", "SyntaxError", 4),
        ("model m\nparam t : a\noutcome : x y\nrow a : 1\n", "SyntaxError", 4),
    ],
)
def test_error_diagnostics(text, code, line):
    codes = _codes(text)
    assert (code, line) in [(c, ln) for c, ln, _ in codes], codes
    with pytest.raises(ModelSpecError) as info:
        parse(text)
    assert info.value.diagnostics


def test_diagnostics_are_single_line():
    _, diags = check("model m\nparam t : a\noutcome : x y\nrow a : 0.5 0.4\n")
    text = str(diags[0])
    assert "\n" not in text
    assert text.startswith("error:4:9: RowNotNormalized:")


def test_non_utf8_file(tmp_path):
    path = tmp_path / "latin1.lmod"
    path.write_bytes("model m\nparam t : caf\xe9\n".encode("latin-1"))
    with pytest.raises(ModelSpecError) as info:
        load(path)
    assert info.value.diagnostics[0].code == "EncodingError"


def test_builtin_round_trip_keeps_likelihoods():
    model = rain_model()
    reparsed = to_model(parse(serialize(document_from_model(model))))
    assert dict(likelihood(model, "rain").raw_items()) == dict(likelihood(reparsed, "rain").raw_items())


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.sampled_from(list('model param outcome row : # " \\ \n\t abxy 0.5 1/2 - 1e3')), max_size=200))
def test_check_never_raises(text):
    doc, diags = check(text)
    assert (doc is None) == any(d.severity == "error" for d in diags)
    for d in diags:
        assert d.line >= 1 and d.column >= 1


def _fuzzed_model(rng, index):
    dims = [(f"d{j}", [f"v{j}_{i}" for i in range(rng.randint(1, 3))]) for j in range(rng.randint(1, 3))]
    outcomes = [f"o{i}" for i in range(rng.randint(1, 6))]
    lines = [f"model fuzz{index}"]
    lines += [f"param {name} : " + " ".join(values) for name, values in dims]
    lines.append("outcome : " + " ".join(outcomes))
    keys = [()]
    for _, values in dims:
        keys = [k + (v,) for k in keys for v in values]
    for key in keys:
        raw = [rng.random() for _ in outcomes]
        total = math.fsum(raw)
        probs = [repr(x / total) for x in raw]
        lines.append("row " + " ".join(key) + " : " + " ".join(probs))
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("index", range(100))
def test_fuzzed_models_are_normalized(index):
    rng = random.Random(index)
    model = to_model(parse(_fuzzed_model(rng, index)))
    for _, probs in model.rows():
        assert abs(math.fsum(probs) - 1) <= 1e-9
