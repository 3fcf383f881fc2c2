"""Shared builders for randomized and hand-written test data.

Everything here is deterministic given a random.Random instance, so tests
pin their own seeds and stay reproducible.
"""
from __future__ import annotations

import random
from pathlib import Path

from clincorp.annio import (
    HEADERS,
    serialize_ann,
    serialize_chk,
    serialize_ptb,
    serialize_tok,
)
from clincorp.model import (
    Chunk,
    DocAnnotations,
    Document,
    Entity,
    EntityGroup,
    Relation,
    Sentence,
    Token,
)
from clincorp.parseval import ParseTree
from clincorp.tagsets import (
    POS_TAGS,
    SYN_TAGS,
    VALID_ASSERTIONS,
    EntityType,
    RelationType,
    relation_signature,
)

ALPHABET = "患者有发热咳嗽头痛腹泻心悸糖尿病高血压检查治疗示无明显好转恶化入院出院后续用药情况稳定"

# Part-of-speech labels excluding punctuation, for leaves that must count.
NON_PUNCT_POS = tuple(t for t in POS_TAGS if t != "PU")


def random_word(rng: random.Random, max_len: int = 4) -> str:
    n = rng.randint(1, max_len)
    return "".join(rng.choice(ALPHABET) for _ in range(n))


def random_sentences(
    rng: random.Random,
    n_sentences: int | None = None,
    with_pos: bool = True,
) -> tuple[str, list[Sentence]]:
    """Build a document text and a token layer that exactly partitions each
    sentence.  Sentences are separated by one newline in the text."""
    if n_sentences is None:
        n_sentences = rng.randint(1, 5)
    sentences: list[Sentence] = []
    parts: list[str] = []
    cursor = 0
    for _ in range(n_sentences):
        n_tokens = rng.randint(1, 8)
        tokens = []
        rel = 0
        words = []
        for _ in range(n_tokens):
            w = random_word(rng)
            pos = rng.choice(POS_TAGS) if with_pos else None
            tokens.append(Token(start=rel, end=rel + len(w), surface=w, pos=pos))
            rel += len(w)
            words.append(w)
        sentences.append(Sentence(start=cursor, tokens=tuple(tokens)))
        sent_text = "".join(words)
        parts.append(sent_text)
        cursor += len(sent_text) + 1  # newline separator
    return "\n".join(parts), sentences


def random_tree_over(
    rng: random.Random, leaves: list[tuple[str, str]]
) -> ParseTree:
    """Random constituency tree whose preterminals are the given
    (pos, surface) pairs, in order."""

    def build(lo: int, hi: int) -> ParseTree:
        if hi - lo == 1:
            pos, surface = leaves[lo]
            return ParseTree(label=pos, children=(), surface=surface)
        k = rng.randint(1, min(4, hi - lo))
        cuts = sorted(rng.sample(range(lo + 1, hi), k - 1)) if k > 1 else []
        bounds = [lo, *cuts, hi]
        children = tuple(build(bounds[i], bounds[i + 1]) for i in range(k))
        if len(children) == 1 and rng.random() < 0.5:
            return children[0]
        return ParseTree(label=rng.choice(SYN_TAGS), children=children, surface=None)

    root = build(0, len(leaves))
    if root.is_preterminal:
        root = ParseTree(label="IP", children=(root,), surface=None)
    return root


def random_tree(rng: random.Random, n_leaves: int | None = None) -> ParseTree:
    if n_leaves is None:
        n_leaves = rng.randint(1, 10)
    leaves = []
    for _ in range(n_leaves):
        pos = "PU" if rng.random() < 0.2 else rng.choice(NON_PUNCT_POS)
        leaves.append((pos, random_word(rng, 2)))
    return random_tree_over(rng, leaves)


def random_chunks(rng: random.Random, n_tokens: int) -> list[Chunk]:
    chunks: list[Chunk] = []
    i = 0
    while i < n_tokens:
        width = rng.randint(1, 3)
        last = min(i + width, n_tokens)
        if rng.random() < 0.7:
            chunks.append(Chunk(first=i, last_exclusive=last, label=rng.choice(SYN_TAGS)))
        i = last
    return chunks


def random_annotations(
    rng: random.Random, doc_id: str, text: str, sentences: list[Sentence]
) -> DocAnnotations:
    """Entities, groups, and relations that pass validation: spans inside one
    sentence, valid assertions, homogeneous same-sentence groups, relation
    endpoints matching their signature within one sentence."""
    ann = DocAnnotations(doc_id=doc_id, text=text)
    next_t = 1
    by_sentence: dict[int, dict[EntityType, list[str]]] = {}
    seen_keys: set[tuple] = set()
    for si, sent in enumerate(sentences):
        if not sent.tokens:
            continue
        for _ in range(rng.randint(0, 4)):
            length = sent.end - sent.start
            start = sent.start + rng.randint(0, length - 1)
            end = min(sent.end, start + rng.randint(1, 4))
            etype = rng.choice(list(EntityType))
            if (start, end, etype.value) in seen_keys:
                continue
            seen_keys.add((start, end, etype.value))
            allowed = sorted(VALID_ASSERTIONS[etype], key=lambda a: a.value)
            assertion = rng.choice(allowed) if allowed else None
            tid = f"T{next_t}"
            next_t += 1
            ann.entities[tid] = Entity(
                eid=tid, etype=etype, start=start, end=end,
                surface=text[start:end], assertion=assertion,
            )
            by_sentence.setdefault(si, {}).setdefault(etype, []).append(tid)
    next_g = 1
    groups_by_sentence: dict[int, dict[EntityType, list[str]]] = {}
    for si, by_type in by_sentence.items():
        for etype, tids in by_type.items():
            if len(tids) >= 2 and rng.random() < 0.5:
                size = rng.randint(2, len(tids))
                gid = f"G{next_g}"
                next_g += 1
                ann.groups[gid] = EntityGroup(
                    gid=gid, etype=etype, members=tuple(sorted(rng.sample(tids, size)))
                )
                groups_by_sentence.setdefault(si, {}).setdefault(etype, []).append(gid)
    next_r = 1
    seen_rel: set[tuple] = set()
    for si, by_type in by_sentence.items():
        for rtype in RelationType:
            t1, t2 = relation_signature(rtype)
            pool1 = list(by_type.get(t1, ())) + list(
                groups_by_sentence.get(si, {}).get(t1, ())
            )
            pool2 = list(by_type.get(t2, ())) + list(
                groups_by_sentence.get(si, {}).get(t2, ())
            )
            if pool1 and pool2 and rng.random() < 0.25:
                arg1, arg2 = rng.choice(pool1), rng.choice(pool2)
                if arg1 == arg2 or (rtype, arg1, arg2) in seen_rel:
                    continue
                seen_rel.add((rtype, arg1, arg2))
                rid = f"R{next_r}"
                next_r += 1
                ann.relations[rid] = Relation(rid=rid, rtype=rtype, arg1=arg1, arg2=arg2)
    return ann


def random_document(rng: random.Random, doc_id: str) -> Document:
    """A fully layered, internally consistent document."""
    text, sentences = random_sentences(rng)
    trees = [
        random_tree_over(rng, [(t.pos or "NN", t.surface) for t in s.tokens])
        for s in sentences
    ]
    chunks = [random_chunks(rng, len(s.tokens)) for s in sentences]
    ann = random_annotations(rng, doc_id, text, sentences)
    return Document(
        doc_id=doc_id, text=text, sentences=sentences, chunks=chunks,
        trees=trees, annotations=ann,
    )


def write_bundle(root: Path, doc: Document, subdir: str = "") -> Path:
    """Serialize every layer of a document into a bundle directory."""
    base = root / subdir if subdir else root
    base.mkdir(parents=True, exist_ok=True)
    stem = base / doc.doc_id.split("/")[-1]
    stem.with_suffix(".txt").write_text(doc.text, encoding="utf-8")
    stem.with_suffix(".tok").write_text(serialize_tok(doc.sentences), encoding="utf-8")
    if doc.trees:
        stem.with_suffix(".ptb").write_text(serialize_ptb(doc.trees), encoding="utf-8")
    if doc.chunks:
        stem.with_suffix(".chk").write_text(serialize_chk(doc.chunks), encoding="utf-8")
    if doc.annotations is not None:
        stem.with_suffix(".ann").write_text(
            serialize_ann(doc.annotations), encoding="utf-8"
        )
    return stem


__all__ = [
    "ALPHABET",
    "HEADERS",
    "NON_PUNCT_POS",
    "random_annotations",
    "random_chunks",
    "random_document",
    "random_sentences",
    "random_tree",
    "random_tree_over",
    "random_word",
    "write_bundle",
]
