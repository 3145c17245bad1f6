from __future__ import annotations

import json

import pytest

from honeykit.errors import InvalidTriple, UnknownTokenType
from honeykit.prompts import (
    BlockSet,
    BlockTriple,
    GENERATOR_TEMPLATES,
    INPUT_TEMPLATES,
    OUTPUT_TEMPLATES,
    assemble,
    builtin_blocks,
    enumerate_triples,
)

EXPECTED_141 = (
    "Act as a robots.txt generator. Consider the following information: "
    "{animal food web shop}. Based on the given information, return a robots.txt "
    "file. Some paths of the robots.txt should be interesting for a potential "
    "attacker. Only reply with the robots.txt and nothing else. "
    "Do not write explanations."
)


def test_builtin_block_counts():
    assert len(GENERATOR_TEMPLATES) == 7
    assert len(INPUT_TEMPLATES) == 6
    assert len(OUTPUT_TEMPLATES) == 5
    assert GENERATOR_TEMPLATES[6] == ""
    assert OUTPUT_TEMPLATES[4] == ""


def test_enumerate_triples_grid():
    triples = list(enumerate_triples())
    assert len(triples) == 210
    assert triples[0].as_tuple() == (0, 0, 0)
    assert triples[-1].as_tuple() == (6, 5, 4)
    assert triples == sorted(triples, key=lambda t: t.as_tuple())
    assert len(set(triples)) == 210


def test_assemble_reference_prompt():
    prompt = assemble(BlockTriple(1, 4, 1), "A", "animal food web shop")
    assert prompt.text == EXPECTED_141
    assert prompt.triple.as_tuple() == (1, 4, 1)
    assert prompt.token_type == "A"
    assert prompt.input_payload == "animal food web shop"


def test_empty_blocks_join_without_extra_spaces():
    text = assemble(BlockTriple(6, 0, 4), "A", "x").text
    assert "  " not in text
    assert text == text.strip()
    # only the input preamble and the special instruction remain
    assert text.startswith("I will provide you with the following information: x.")


def test_noun_substituted_per_token_type():
    for token_type, noun in [("A", "robots.txt"), ("B", "honeyword"), ("D", "invoice file")]:
        text = assemble(BlockTriple(0, 0, 0), token_type, "payload").text
        assert f"You are now a {noun} generator." in text
        assert "{honey_token}" not in text


def test_payload_inserted_exactly_once_for_every_input_block():
    marker = "XQZV-payload-7"
    for input_id in range(6):
        text = assemble(BlockTriple(0, input_id, 0), "A", marker).text
        assert text.count(marker) == 1
        assert "{input}" not in text


def test_literal_brace_blocks_wrap_payload():
    text = assemble(BlockTriple(0, 4, 0), "A", "pay").text
    assert "Consider the following information: {pay}." in text


def test_substitution_does_not_rescan_payload():
    # a payload containing placeholder syntax must come through verbatim
    text = assemble(BlockTriple(0, 0, 0), "A", "see {honey_token} and {input}").text
    assert "see {honey_token} and {input}" in text


def test_empty_payload_rejected_when_referenced():
    with pytest.raises(ValueError):
        assemble(BlockTriple(0, 0, 0), "A", "")


def test_unknown_token_type():
    with pytest.raises(UnknownTokenType):
        assemble(BlockTriple(0, 0, 0), "Z", "x")


def test_invalid_triple_ids():
    blocks = BlockSet.builtin()
    for bad in [(7, 0, 0), (0, 6, 0), (0, 0, 5), (-1, 0, 0)]:
        with pytest.raises(InvalidTriple):
            blocks.validate_triple(BlockTriple(*bad))


def test_builtin_blocks_lists_all_18():
    blocks = builtin_blocks()
    assert len(blocks) == 18
    categories = {b.category for b in blocks}
    assert categories == {"generator", "input", "output"}


def test_custom_block_file_round_trip(tmp_path):
    data = {
        "generator": [{"id": 0, "template": "Gen {honey_token}."}, {"id": 1, "template": ""}],
        "input": [{"id": 0, "template": "In {input}."}],
        "output": [{"id": 0, "template": "Out."}],
    }
    path = tmp_path / "blocks.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    blocks = BlockSet.from_json_file(path)
    assert len(list(enumerate_triples(blocks))) == 2
    text = assemble(BlockTriple(0, 0, 0), "A", "pp", blocks=blocks).text
    assert text.startswith("Gen robots.txt. In pp.")


def test_custom_block_file_requires_contiguous_ids(tmp_path):
    data = {
        "generator": [{"id": 0, "template": "a"}, {"id": 2, "template": "b"}],
        "input": [{"id": 0, "template": "{input}"}],
        "output": [{"id": 0, "template": ""}],
    }
    path = tmp_path / "blocks.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ValueError):
        BlockSet.from_json_file(path)
