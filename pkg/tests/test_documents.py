"""Code-document parsing, element grammar, canonical rendering, round-trips."""

import json

import pytest

from helpers import gf4, gf8, qtheta, vec
from rankweight.documents import (
    document_from_code,
    document_to_json,
    parse_code_file,
    parse_element,
    render_code_document,
)
from rankweight.errors import (
    NotIrreducible,
    ParseError,
    RowLengthMismatch,
    UnknownSymbol,
)
from rankweight.fields import format_element
from rankweight.ranksupport import LinearCode

SAMPLE = (
    '{"tower": {"characteristic": 2, "base_degree": 1, "extension_modulus": [1,1,1],'
    ' "generator_name": "w"}, "length": 2, "generators": [["1", "w"]]}'
)


def test_parse_sample_document():
    doc = parse_code_file(SAMPLE)
    code = doc.to_code()
    t = gf4()
    assert code.length == 2
    assert code == LinearCode.from_generators(t, 2, [vec(t, 1, t.generator())])


def test_row_length_mismatch():
    bad = SAMPLE.replace('[["1", "w"]]', '[["1", "w", "0"]]')
    with pytest.raises(RowLengthMismatch):
        parse_code_file(bad)


def test_reducible_modulus_rejected():
    bad = SAMPLE.replace("[1,1,1]", "[1,0,1]")
    with pytest.raises(NotIrreducible):
        parse_code_file(bad)


def test_unknown_symbol():
    bad = SAMPLE.replace('"w"]]', '"z"]]')
    with pytest.raises(UnknownSymbol):
        parse_code_file(bad)


def test_malformed_json_has_position():
    with pytest.raises(ParseError) as e:
        parse_code_file('{"tower": ')
    assert "line" in str(e.value)


def test_missing_and_mistyped_fields():
    with pytest.raises(ParseError):
        parse_code_file('{"length": 2, "generators": []}')
    with pytest.raises(ParseError):
        parse_code_file('{"tower": {"characteristic": "two"}, "length": 2, "generators": []}')
    with pytest.raises(ParseError):
        parse_code_file(SAMPLE.replace('"length": 2', '"length": 0'))


def test_element_grammar():
    t = gf4()
    L = t.L
    w = t.generator()
    assert parse_element(L, "w^2+w+1") == w * w + w + 1
    assert parse_element(L, "0") == L.zero()
    assert parse_element(L, "5/3") == L.from_int(5) / L.from_int(3)
    with pytest.raises(ParseError):
        parse_element(L, "1/2")  # denominator vanishes in characteristic 2
    with pytest.raises(ParseError):
        parse_element(L, "w +")
    with pytest.raises(ParseError):
        parse_element(L, "w^")

    q = qtheta()
    theta = q.generator()
    from fractions import Fraction

    assert parse_element(q.L, "-1/2*t+3") == theta * Fraction(-1, 2) + 3
    assert parse_element(q.L, "t^2-3/2") == theta * theta - Fraction(3, 2)


def test_render_parse_roundtrip_elements():
    import random

    rng = random.Random(4)
    for t in (gf4(), gf8()):
        for x in t.L.elements():
            assert parse_element(t.L, format_element(x)) == x
    q = qtheta()
    from helpers import random_rational_vector

    for _ in range(40):
        (x,) = random_rational_vector(rng, q, 1)
        assert parse_element(q.L, format_element(x)) == x


def test_document_roundtrip():
    docs = [
        SAMPLE,
        json.dumps(
            {
                "tower": {
                    "characteristic": 0,
                    "base_degree": 1,
                    "extension_modulus": [-2, 0, 0, 1],
                    "generator_name": "t",
                },
                "length": 3,
                "generators": [["1", "t", "1/2"], ["0", "t^2", "-3"]],
            }
        ),
        json.dumps(
            {
                "tower": {
                    "characteristic": 2,
                    "base_degree": 2,
                    "base_modulus": [1, 1, 1],
                    "base_generator_name": "u",
                    "extension_modulus": ["u", "1", "1"],
                    "generator_name": "w",
                },
                "length": 2,
                "generators": [["(u+1)*w", "1"], ["u", "w"]],
            }
        ),
    ]
    for text in docs:
        doc = parse_code_file(text)
        rendered = render_code_document(doc)
        again = parse_code_file(rendered)
        assert again == doc
        assert render_code_document(again) == rendered


def test_document_from_code_reproduces():
    t = gf8()
    w = t.generator()
    code = LinearCode.from_generators(t, 3, [vec(t, 1, w, 0), vec(t, 0, 0, 1)])
    doc = document_from_code(code)
    text = render_code_document(doc)
    assert parse_code_file(text).to_code() == code
    payload = document_to_json(doc)
    assert list(payload) == ["tower", "length", "generators"]


def test_shipped_samples_parse_and_roundtrip():
    import pathlib

    samples = sorted((pathlib.Path(__file__).parent.parent / "samples").glob("*.json"))
    assert len(samples) >= 4
    for path in samples:
        doc = parse_code_file(path.read_text())
        code = doc.to_code()
        assert code.length == doc.length
        assert parse_code_file(render_code_document(doc)) == doc
