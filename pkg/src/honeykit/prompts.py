"""Prompt building blocks and deterministic prompt assembly.

A prompt is built from a triple of block ids — generator instruction,
input preamble, output format — plus the special instruction of the
honeytoken type being generated. Rendered blocks are joined with single
spaces in that fixed order; empty blocks are dropped.

The differing bracketing and quoting across input preambles (curly
quotes, straight quotes, literal braces) is part of each template, not
of the placeholder.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidTriple, UnknownTokenType
from .tokens import TokenTypeSpec, builtin_token_specs

HONEY_TOKEN_PLACEHOLDER = "{honey_token}"
INPUT_PLACEHOLDER = "{input}"

CATEGORY_GENERATOR = "generator"
CATEGORY_INPUT = "input"
CATEGORY_OUTPUT = "output"
CATEGORIES = (CATEGORY_GENERATOR, CATEGORY_INPUT, CATEGORY_OUTPUT)


@dataclass(frozen=True)
class BuildingBlock:
    category: str
    id: int
    template: str


GENERATOR_TEMPLATES = (
    "You are now a {honey_token} generator.",
    "Act as a {honey_token} generator.",
    "Behave like a {honey_token} generator.",
    "Generate a {honey_token}.",
    "Create a {honey_token}.",
    "Make a {honey_token}.",
    "",
)

INPUT_TEMPLATES = (
    "I will provide you with the following information: {input}.",
    "Consider the following information: “{input}”.",
    "Take the following information into account: '{input}'",
    "I will provide you with the following information: {{input}}.",
    "Consider the following information: {{input}}.",
    "Take the following information into account: {{input}}.",
)

OUTPUT_TEMPLATES = (
    "Refrain from explaining your response.",
    "Only reply with the {honey_token} and nothing else. Do not write explanations.",
    "Quick answer.",
    "Just the answer.",
    "",
)


@dataclass(frozen=True)
class BlockTriple:
    generator_id: int
    input_id: int
    output_id: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.generator_id, self.input_id, self.output_id)

    def __str__(self) -> str:
        return f"[{self.generator_id},{self.input_id},{self.output_id}]"


class BlockSet:
    """One full table of building blocks, by default the built-in grid."""

    def __init__(self, generator: tuple[str, ...], input: tuple[str, ...], output: tuple[str, ...]):
        if not generator or not input or not output:
            raise ValueError("every block category needs at least one template")
        self.generator = tuple(generator)
        self.input = tuple(input)
        self.output = tuple(output)

    @classmethod
    def builtin(cls) -> "BlockSet":
        return cls(GENERATOR_TEMPLATES, INPUT_TEMPLATES, OUTPUT_TEMPLATES)

    @classmethod
    def from_json_file(cls, path: str | Path) -> "BlockSet":
        """Load overrides: JSON arrays `generator`, `input`, `output` of
        {id, template}; ids must be contiguous from 0."""
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        tables = []
        for category in CATEGORIES:
            entries = payload[category]
            by_id = {int(e["id"]): str(e["template"]) for e in entries}
            if sorted(by_id) != list(range(len(by_id))):
                raise ValueError(f"{category} block ids must be contiguous from 0")
            tables.append(tuple(by_id[i] for i in range(len(by_id))))
        return cls(*tables)

    def blocks(self) -> list[BuildingBlock]:
        out = []
        for category, table in zip(CATEGORIES, (self.generator, self.input, self.output)):
            out.extend(BuildingBlock(category, i, t) for i, t in enumerate(table))
        return out

    def validate_triple(self, triple: BlockTriple) -> BlockTriple:
        checks = (
            (triple.generator_id, len(self.generator), "generator"),
            (triple.input_id, len(self.input), "input"),
            (triple.output_id, len(self.output), "output"),
        )
        for value, size, name in checks:
            if not 0 <= value < size:
                raise InvalidTriple(f"{name} id {value} out of range 0..{size - 1}")
        return triple


@dataclass(frozen=True)
class AssembledPrompt:
    triple: BlockTriple
    token_type: str
    input_payload: str
    text: str


def builtin_blocks() -> list[BuildingBlock]:
    """All 18 built-in blocks (7 generator + 6 input + 5 output)."""
    return BlockSet.builtin().blocks()


def enumerate_triples(blocks: BlockSet | None = None) -> list[BlockTriple]:
    """Every block triple in lexicographic (generator, input, output) order."""
    blocks = blocks or BlockSet.builtin()
    return [
        BlockTriple(g, i, o)
        for g in range(len(blocks.generator))
        for i in range(len(blocks.input))
        for o in range(len(blocks.output))
    ]


def _render(template: str, noun: str, payload: str) -> str:
    # Plain replace never rescans what it inserts, so literal-brace
    # templates like "{{input}}" come out as "{payload}" and payload text
    # containing a placeholder is left untouched.
    return template.replace(HONEY_TOKEN_PLACEHOLDER, noun).replace(INPUT_PLACEHOLDER, payload)


def assemble(
    triple: BlockTriple | tuple[int, int, int],
    token_type: str,
    input_payload: str,
    blocks: BlockSet | None = None,
    specs: dict[str, TokenTypeSpec] | None = None,
) -> AssembledPrompt:
    """Render one complete prompt.

    ``{honey_token}`` is substituted with the token type's generator
    noun, ``{input}`` with the payload; the special instruction sits
    between the input and output blocks.
    """
    if not isinstance(triple, BlockTriple):
        triple = BlockTriple(*triple)
    blocks = blocks or BlockSet.builtin()
    blocks.validate_triple(triple)
    specs = specs or builtin_token_specs()
    if token_type not in specs:
        raise UnknownTokenType(f"unknown token type {token_type!r}")
    spec = specs[token_type]

    input_template = blocks.input[triple.input_id]
    if INPUT_PLACEHOLDER in input_template and not input_payload:
        raise ValueError("input payload must be non-empty when the input block references it")

    noun = spec.generator_noun
    parts = [
        _render(blocks.generator[triple.generator_id], noun, input_payload),
        _render(input_template, noun, input_payload),
        spec.special_instruction,
        _render(blocks.output[triple.output_id], noun, input_payload),
    ]
    text = " ".join(part for part in parts if part)
    return AssembledPrompt(triple=triple, token_type=token_type, input_payload=input_payload, text=text)
