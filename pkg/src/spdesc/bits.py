"""Bits and structural descriptions.

A bit is a two-point labeled order, either a chain (bottom below top) or
an antichain (two incomparable cells).  Each label is either ``R``, the
self reference, or a reference to a lower ideal.  A structural
description is a finite table mapping ideal keys to (ideal, bit set)
entries; it reads as a recursive construction system: start from the
empty and one point orders, and whenever a bit's cells can be filled
(self-labeled cells from what has been built so far, ideal-labeled cells
from the referenced ideal), the combined order is built too.

Two leaf ideals may appear as labels without having entries of their
own, because no bit system can generate them: the void ideal (key
``"0"``) and the ideal containing only the empty order (key ``"*"``).
Their membership is decided directly from the obstructions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ideals import (
    EMPTY_ONLY_IDEAL,
    VOID_IDEAL,
    Ideal,
    contains_ideal,
    make_ideal,
)
from .terms import TermParseError, parse_term

CHAIN_SHAPE = "chain"
ANTICHAIN_SHAPE = "antichain"

VOID_KEY = VOID_IDEAL.key  # "0"
EMPTY_ONLY_KEY = EMPTY_ONLY_IDEAL.key  # "*"


class UnknownIdealKeyError(KeyError):
    """A label or lookup key does not resolve in the description."""


class DocumentFormatError(ValueError):
    """A serialized description document violates the schema."""


class _RLabel:
    """The self-reference label; a singleton."""

    __slots__ = ()

    def __repr__(self):
        return "R"


R = _RLabel()


@dataclass(frozen=True)
class IdealRef:
    """Reference to an ideal by its canonical key."""

    key: str

    def __repr__(self):
        return f"IdealRef({self.key!r})"


def label_sort_key(label):
    if label is R:
        return (0, "")
    return (1, label.key)


@dataclass(frozen=True)
class Bit:
    """Two-point labeled chain or antichain.

    ``first``/``second`` are bottom/top for a chain and the two unordered
    cells of an antichain; antichain labels are stored sorted.  Labels
    are ``R``, ``IdealRef`` instances, or (during synthesis, before
    registration) ``Ideal`` values directly.
    """

    shape: str
    first: object
    second: object


def chain_bit(bottom, top) -> Bit:
    return Bit(CHAIN_SHAPE, bottom, top)


def antichain_bit(a, b) -> Bit:
    if label_sort_key(b) < label_sort_key(a):
        a, b = b, a
    return Bit(ANTICHAIN_SHAPE, a, b)


def bit_sort_key(bit: Bit):
    return (0 if bit.shape == CHAIN_SHAPE else 1, label_sort_key(bit.first), label_sort_key(bit.second))


R_CHAIN_BIT = chain_bit(R, R)
R_ANTICHAIN_BIT = antichain_bit(R, R)


@dataclass(frozen=True)
class Entry:
    ideal: Ideal
    bits: tuple[Bit, ...]


def make_entry(ideal: Ideal, bits) -> Entry:
    """Entry with its bit set deduplicated and deterministically sorted."""
    ordered = sorted(set(bits), key=bit_sort_key)
    return Entry(ideal, tuple(ordered))


class StructuralDescription:
    """Keyed table of entries plus the root ideal's key.

    After construction the table is immutable and safe for concurrent
    reads; the membership cache used by the closure module fills in
    get-or-compute style.
    """

    def __init__(self, root: str, entries: dict[str, Entry]):
        self.root = root
        self.entries = dict(entries)
        self._topdown_cache: dict = {}

    def ideal_for(self, key: str) -> Ideal:
        """Resolve a key to its ideal; the two leaf keys resolve even
        without entries."""
        entry = self.entries.get(key)
        if entry is not None:
            return entry.ideal
        if key == VOID_KEY:
            return VOID_IDEAL
        if key == EMPTY_ONLY_KEY:
            return EMPTY_ONLY_IDEAL
        raise UnknownIdealKeyError(key)

    def bits_for(self, key: str) -> tuple[Bit, ...]:
        entry = self.entries.get(key)
        if entry is None:
            raise UnknownIdealKeyError(key)
        return entry.bits

    def __eq__(self, other):
        if not isinstance(other, StructuralDescription):
            return NotImplemented
        return self.root == other.root and self.entries == other.entries

    def __repr__(self):
        return f"StructuralDescription(root={self.root!r}, entries={len(self.entries)})"


def _entry_refs(entry: Entry):
    for bit in entry.bits:
        for label in (bit.first, bit.second):
            if label is not R:
                yield label.key


def rank(desc: StructuralDescription, key: str) -> int:
    """Recursion depth of an entry: 0 for an empty bit set, otherwise one
    more than the deepest referenced entry (references without entries,
    i.e. the leaf ideals, add no depth)."""
    if key not in desc.entries:
        raise UnknownIdealKeyError(key)
    memo: dict[str, int] = {}
    in_progress: set[str] = set()

    def walk(k: str) -> int:
        got = memo.get(k)
        if got is not None:
            return got
        if k in in_progress:
            raise ValueError(f"cyclic references through entry {k!r}")
        in_progress.add(k)
        entry = desc.entries[k]
        if not entry.bits:
            result = 0
        else:
            deepest = 0
            for ref in _entry_refs(entry):
                if ref in desc.entries:
                    deepest = max(deepest, walk(ref))
            result = deepest + 1
        in_progress.discard(k)
        memo[k] = result
        return result

    return walk(key)


def validate(desc: StructuralDescription) -> list[str]:
    """Check the description invariants; returns a list of violation
    messages, empty when the description is valid.

    Checked: the root and every label resolve; entry keys match their
    ideals; bit shapes are the two-point chain/antichain shapes; the
    reference graph is acyclic; every label ideal is strictly contained
    in its entry's ideal.
    """
    problems = []
    if desc.root not in desc.entries:
        problems.append(f"root key {desc.root!r} has no entry")
    for key in sorted(desc.entries):
        entry = desc.entries[key]
        if entry.ideal.key != key:
            problems.append(f"entry {key!r}: key does not match its ideal {entry.ideal.key!r}")
        for bit in entry.bits:
            if bit.shape not in (CHAIN_SHAPE, ANTICHAIN_SHAPE):
                problems.append(f"entry {key!r}: unknown bit shape {bit.shape!r}")
                continue
            for label in (bit.first, bit.second):
                if label is R:
                    continue
                try:
                    ref_ideal = desc.ideal_for(label.key)
                except UnknownIdealKeyError:
                    problems.append(f"entry {key!r}: label {label.key!r} does not resolve")
                    continue
                if ref_ideal is entry.ideal or not contains_ideal(entry.ideal, ref_ideal):
                    problems.append(
                        f"entry {key!r}: label {label.key!r} is not strictly contained"
                        " in the entry ideal"
                    )
    # Cycle check over references that have entries.
    color: dict[str, int] = {}

    def dfs(k: str) -> bool:
        color[k] = 1
        for ref in _entry_refs(desc.entries[k]):
            if ref not in desc.entries:
                continue
            c = color.get(ref, 0)
            if c == 1:
                return True
            if c == 0 and dfs(ref):
                return True
        color[k] = 2
        return False

    for key in sorted(desc.entries):
        if color.get(key, 0) == 0 and dfs(key):
            problems.append(f"reference cycle through entry {key!r}")
    return problems


def _label_doc(label) -> str:
    return "R" if label is R else label.key


def serialize(desc: StructuralDescription) -> dict:
    """Plain-data document for JSON output; deterministic ordering."""
    entries_doc = []
    for key in sorted(desc.entries):
        entry = desc.entries[key]
        bits_doc = [
            {"shape": bit.shape, "labels": [_label_doc(bit.first), _label_doc(bit.second)]}
            for bit in entry.bits
        ]
        entries_doc.append(
            {"ideal": [t.text for t in entry.ideal.obstructions], "bits": bits_doc}
        )
    return {"root": desc.root, "entries": entries_doc}


def _require_fields(mapping, fields, what):
    if not isinstance(mapping, dict):
        raise DocumentFormatError(f"{what} must be an object")
    extra = set(mapping) - set(fields)
    if extra:
        raise DocumentFormatError(f"{what} has unknown fields: {sorted(extra)}")
    missing = set(fields) - set(mapping)
    if missing:
        raise DocumentFormatError(f"{what} is missing fields: {sorted(missing)}")


def deserialize(doc: dict) -> StructuralDescription:
    """Rebuild a description from a document; rejects unknown fields and
    malformed terms, shapes or labels."""
    _require_fields(doc, ("root", "entries"), "document")
    root = doc["root"]
    if not isinstance(root, str):
        raise DocumentFormatError("root must be a key string")
    if not isinstance(doc["entries"], list):
        raise DocumentFormatError("entries must be a list")
    entries: dict[str, Entry] = {}
    for entry_doc in doc["entries"]:
        _require_fields(entry_doc, ("ideal", "bits"), "entry")
        terms_doc = entry_doc["ideal"]
        if not isinstance(terms_doc, list) or not all(isinstance(s, str) for s in terms_doc):
            raise DocumentFormatError("entry ideal must be a list of term strings")
        try:
            ideal = make_ideal(parse_term(s) for s in terms_doc)
        except TermParseError as exc:
            raise DocumentFormatError(f"bad obstruction term: {exc}") from exc
        if not isinstance(entry_doc["bits"], list):
            raise DocumentFormatError("entry bits must be a list")
        bits = []
        for bit_doc in entry_doc["bits"]:
            _require_fields(bit_doc, ("shape", "labels"), "bit")
            shape = bit_doc["shape"]
            if shape not in (CHAIN_SHAPE, ANTICHAIN_SHAPE):
                raise DocumentFormatError(f"unknown bit shape {shape!r}")
            labels_doc = bit_doc["labels"]
            if (
                not isinstance(labels_doc, list)
                or len(labels_doc) != 2
                or not all(isinstance(s, str) for s in labels_doc)
            ):
                raise DocumentFormatError("bit labels must be a pair of strings")
            labels = [R if s == "R" else IdealRef(s) for s in labels_doc]
            if shape == CHAIN_SHAPE:
                bits.append(chain_bit(labels[0], labels[1]))
            else:
                bits.append(antichain_bit(labels[0], labels[1]))
        if ideal.key in entries:
            raise DocumentFormatError(f"duplicate entry for ideal {ideal.key!r}")
        entries[ideal.key] = make_entry(ideal, bits)
    return StructuralDescription(root, entries)


def to_json(desc: StructuralDescription) -> str:
    return json.dumps(serialize(desc), indent=2) + "\n"


def from_json(text: str) -> StructuralDescription:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"invalid JSON: {exc}") from exc
    return deserialize(doc)


def to_dot(desc: StructuralDescription) -> str:
    """Graphviz view: one node per entry (leaf labels get their own
    nodes), one edge per distinct entry-to-ideal reference."""
    keys = sorted(desc.entries)
    referenced = {ref for key in keys for ref in _entry_refs(desc.entries[key])}
    extra = sorted(referenced - set(keys))
    names = {k: f"n{i}" for i, k in enumerate(keys + extra)}
    lines = ["digraph structural_description {"]
    for k in keys:
        shape = ", penwidth=2" if k == desc.root else ""
        lines.append(f'  {names[k]} [label="{k}"{shape}];')
    for k in extra:
        lines.append(f'  {names[k]} [label="{k}", style=dashed];')
    edges = sorted(
        {(names[k], names[ref]) for k in keys for ref in _entry_refs(desc.entries[k])}
    )
    for a, b in edges:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
