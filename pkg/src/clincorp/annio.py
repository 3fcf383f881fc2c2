"""Readers and writers for the corpus file formats.

A document bundle is a set of sibling files sharing one stem:

    <doc>.txt   UTF-8 text; all offsets count Unicode code points into it
    <doc>.tok   one token per line: start TAB end TAB surface [TAB pos],
                absolute offsets, blank line between sentences
    <doc>.ptb   one bracketed constituency tree per line
    <doc>.chk   one chunk per line: first TAB last_exclusive TAB label
                (token indices), blank line terminating each sentence block
    <doc>.ann   standoff entity layer: T/A/G/R lines

Lines starting with '#' are comments everywhere.  Serializers produce a
canonical form: entity lines sorted by span, assertion ids renumbered in
entity order, group and relation lines sorted by their resolved spans, so
serialize(parse(serialize(x))) is byte-identical to serialize(x).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError, ParseError
from .model import (
    DOC_TYPES,
    AnnotationSet,
    Chunk,
    DocAnnotations,
    Document,
    Entity,
    EntityGroup,
    Relation,
    Sentence,
    Token,
)
from .parseval import ParseTree, parse_tree
from .tagsets import (
    POS_TAG_SET,
    parse_assertion_type,
    parse_entity_type,
    parse_relation_type,
)

LAYER_SUFFIXES = (".txt", ".tok", ".ptb", ".chk", ".ann")

# First line of every serialized layer file; parsers skip all '#' lines, so
# an empty layer serializes to the header alone.
HEADERS = {
    "tok": "# tokens: start\tend\tsurface[\tpos]; blank line between sentences",
    "ptb": "# trees: one bracketed constituency tree per line",
    "chk": "# chunks: first\tlast_exclusive\tlabel; blank line ends each sentence",
    "ann": "# standoff: T entity / A assertion / G group / R relation lines",
}


def read_text_file(path: str | Path) -> str:
    """Read a UTF-8 file; decode failures report the offending line."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise ParseError(
            f"invalid UTF-8 at byte offset {exc.start}", path=str(path), line=line
        ) from None


def _is_comment(line: str) -> bool:
    return line.lstrip().startswith("#")


# ---------------------------------------------------------------- tokens ---

def parse_tok(content: str, *, path: str | None = None) -> list[Sentence]:
    """Parse a token file.  File offsets are document-absolute; each sentence
    is anchored at its first token and stores sentence-relative spans.
    Unknown part-of-speech labels and non-monotonic spans are format errors
    and raise with the line number."""
    sentences: list[Sentence] = []
    block: list[tuple[int, int, str, str | None]] = []
    prev_end = 0

    def flush() -> None:
        if not block:
            return
        sent_start = block[0][0]
        tokens = tuple(
            Token(start=s - sent_start, end=e - sent_start, surface=surf, pos=pos)
            for s, e, surf, pos in block
        )
        sentences.append(Sentence(start=sent_start, tokens=tokens))
        block.clear()

    for lineno, line in enumerate(content.splitlines(), start=1):
        if _is_comment(line):
            continue
        if not line.strip():
            flush()
            continue
        fields = line.split("\t")
        if len(fields) not in (3, 4):
            raise ParseError(
                f"expected 3 or 4 tab-separated fields, got {len(fields)}",
                path=path, line=lineno,
            )
        try:
            start, end = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("offsets must be integers", path=path, line=lineno) from None
        if end <= start:
            raise ParseError(f"empty or inverted span [{start}, {end})", path=path, line=lineno)
        if start < prev_end:
            raise ParseError(
                f"non-monotonic span: [{start}, {end}) starts before "
                f"the previous token ends at {prev_end}", path=path, line=lineno,
            )
        prev_end = end
        surface = fields[2]
        if not surface:
            raise ParseError("empty surface", path=path, line=lineno)
        pos = fields[3] if len(fields) == 4 else None
        if pos is not None and pos not in POS_TAG_SET:
            raise ParseError(f"unknown-pos-label {pos!r}", path=path, line=lineno)
        block.append((start, end, surface, pos))
    flush()
    return sentences


def serialize_tok(sentences: list[Sentence]) -> str:
    blocks: list[str] = []
    for sent in sentences:
        lines = []
        for tok in sent.tokens:
            if "\t" in tok.surface or "\n" in tok.surface:
                raise InputError(
                    f"token surface {tok.surface!r} cannot be written to the "
                    "tab-separated token format"
                )
            s, e = sent.abs_span(tok)
            fields = [str(s), str(e), tok.surface]
            if tok.pos is not None:
                fields.append(tok.pos)
            lines.append("\t".join(fields))
        blocks.append("\n".join(lines))
    return HEADERS["tok"] + "\n" + ("\n\n".join(blocks) + "\n" if blocks else "")


# ----------------------------------------------------------------- trees ---

def parse_ptb(content: str, *, path: str | None = None) -> list[ParseTree]:
    trees: list[ParseTree] = []
    for lineno, line in enumerate(content.splitlines(), start=1):
        if _is_comment(line) or not line.strip():
            continue
        trees.append(parse_tree(line, path=path, line=lineno))
    return trees


def serialize_ptb(trees: list[ParseTree]) -> str:
    return HEADERS["ptb"] + "\n" + "".join(t.to_string() + "\n" for t in trees)


# ---------------------------------------------------------------- chunks ---

def parse_chk(content: str, *, path: str | None = None) -> list[list[Chunk]]:
    """Parse a chunk file.  A blank line terminates each sentence block, so a
    sentence without chunks appears as a bare blank line.  A missing final
    terminator is tolerated."""
    blocks: list[list[Chunk]] = []
    block: list[Chunk] = []
    open_block = False
    for lineno, line in enumerate(content.splitlines(), start=1):
        if _is_comment(line):
            continue
        if not line.strip():
            blocks.append(block)
            block = []
            open_block = False
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                f"expected 3 tab-separated fields, got {len(fields)}",
                path=path, line=lineno,
            )
        try:
            first, last = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError("token indices must be integers", path=path, line=lineno) from None
        if last <= first or first < 0:
            raise ParseError(f"bad token range [{first}, {last})", path=path, line=lineno)
        if not fields[2]:
            raise ParseError("empty chunk label", path=path, line=lineno)
        block.append(Chunk(first=first, last_exclusive=last, label=fields[2]))
        open_block = True
    if open_block:
        blocks.append(block)
    return blocks


def serialize_chk(blocks: list[list[Chunk]]) -> str:
    out: list[str] = [HEADERS["chk"] + "\n"]
    for block in blocks:
        for ch in block:
            out.append(f"{ch.first}\t{ch.last_exclusive}\t{ch.label}\n")
        out.append("\n")
    return "".join(out)


# -------------------------------------------------------------- entities ---

_T_RE = re.compile(r"^(T\d+)\t(\S+) (\d+) (\d+)\t(.*)$")
_A_RE = re.compile(r"^(A\d+)\t(\S+) (T\d+)$")
_G_RE = re.compile(r"^(G\d+)\t(\S+)((?: T\d+)+)$")
_R_RE = re.compile(r"^(R\d+)\t(\S+) Arg1:([TG]\d+) Arg2:([TG]\d+)$")


def parse_ann(
    content: str, *, doc_id: str = "", text: str = "", path: str | None = None
) -> DocAnnotations:
    """Parse a standoff entity file.  Structural problems (bad syntax, unknown
    labels, duplicate ids, assertion lines pointing nowhere) raise ParseError;
    semantic problems on well-formed data are left to the validator."""
    ann = DocAnnotations(doc_id=doc_id, text=text)
    assertions: list[tuple[int, str, str, str]] = []  # (line, aid, label, target)
    ref_lines: dict[str, int] = {}  # group/relation id -> source line
    for lineno, raw in enumerate(content.splitlines(), start=1):
        line = raw.rstrip("\r")
        if _is_comment(line) or not line.strip():
            continue
        kind = line[0]
        if kind == "T":
            m = _T_RE.match(line)
            if not m:
                raise ParseError("malformed entity line", path=path, line=lineno)
            tid, label, start, end, surface = m.groups()
            etype = parse_entity_type(label)
            if etype is None:
                raise ParseError(f"unknown entity type {label!r}", path=path, line=lineno)
            if tid in ann.entities:
                raise ParseError(f"duplicate entity id {tid}", path=path, line=lineno)
            ann.entities[tid] = Entity(
                eid=tid, etype=etype, start=int(start), end=int(end), surface=surface
            )
        elif kind == "A":
            m = _A_RE.match(line)
            if not m:
                raise ParseError("malformed assertion line", path=path, line=lineno)
            aid, label, target = m.groups()
            if parse_assertion_type(label) is None:
                raise ParseError(f"unknown assertion type {label!r}", path=path, line=lineno)
            assertions.append((lineno, aid, label, target))
        elif kind == "G":
            m = _G_RE.match(line)
            if not m:
                raise ParseError("malformed group line", path=path, line=lineno)
            gid, label, members = m.groups()
            etype = parse_entity_type(label)
            if etype is None:
                raise ParseError(f"unknown entity type {label!r}", path=path, line=lineno)
            if gid in ann.groups:
                raise ParseError(f"duplicate group id {gid}", path=path, line=lineno)
            ann.groups[gid] = EntityGroup(
                gid=gid, etype=etype, members=tuple(members.split())
            )
            ref_lines[gid] = lineno
        elif kind == "R":
            m = _R_RE.match(line)
            if not m:
                raise ParseError("malformed relation line", path=path, line=lineno)
            rid, label, arg1, arg2 = m.groups()
            rtype = parse_relation_type(label)
            if rtype is None:
                raise ParseError(f"unknown relation type {label!r}", path=path, line=lineno)
            if rid in ann.relations:
                raise ParseError(f"duplicate relation id {rid}", path=path, line=lineno)
            ann.relations[rid] = Relation(rid=rid, rtype=rtype, arg1=arg1, arg2=arg2)
            ref_lines[rid] = lineno
        else:
            raise ParseError(
                f"unknown annotation line kind {kind!r}", path=path, line=lineno
            )
    seen_targets: set[str] = set()
    for lineno, aid, label, target in assertions:
        if target not in ann.entities:
            raise ParseError(
                f"assertion {aid} refers to missing entity {target}",
                path=path, line=lineno,
            )
        if target in seen_targets:
            raise ParseError(
                f"entity {target} carries more than one assertion",
                path=path, line=lineno,
            )
        seen_targets.add(target)
        old = ann.entities[target]
        ann.entities[target] = Entity(
            eid=old.eid, etype=old.etype, start=old.start, end=old.end,
            surface=old.surface, assertion=parse_assertion_type(label),
        )
    for g in ann.groups.values():
        for m in g.members:
            if m not in ann.entities:
                raise ParseError(
                    f"dangling-reference {m} in group {g.gid}",
                    path=path, line=ref_lines[g.gid],
                )
    for r in ann.relations.values():
        for ref in (r.arg1, r.arg2):
            if ref not in ann.entities and ref not in ann.groups:
                raise ParseError(
                    f"dangling-reference {ref} in relation {r.rid}",
                    path=path, line=ref_lines[r.rid],
                )
    return ann


def _id_num(ref: str) -> tuple[int, str]:
    """Sort key for annotation ids: numeric part when present, else the raw
    string after all numbered ids."""
    m = re.fullmatch(r"[TAGR](\d+)", ref)
    if m:
        return (int(m.group(1)), "")
    return (1 << 62, ref)


def _entity_sort_key(e: Entity) -> tuple:
    return (e.start, e.end, _id_num(e.eid))


def _resolved_span(ann: DocAnnotations, ref: str) -> tuple:
    """Span-based sort key for a T or G reference; dangling refs sort last."""
    if ref in ann.entities:
        e = ann.entities[ref]
        return ((e.start, e.end),)
    if ref in ann.groups:
        spans = sorted(
            (ann.entities[m].start, ann.entities[m].end)
            for m in ann.groups[ref].members
            if m in ann.entities
        )
        if spans:
            return tuple(spans)
    return ((1 << 62, 1 << 62),)


def serialize_ann(ann: DocAnnotations) -> str:
    lines: list[str] = [HEADERS["ann"]]
    entities = sorted(ann.entities.values(), key=_entity_sort_key)
    for e in entities:
        if "\n" in e.surface or "\t" in e.surface:
            raise InputError(
                f"entity surface {e.surface!r} cannot be written to the "
                "standoff format"
            )
        lines.append(f"{e.eid}\t{e.etype.value} {e.start} {e.end}\t{e.surface}")
    next_a = 1
    for e in entities:
        if e.assertion is not None:
            lines.append(f"A{next_a}\t{e.assertion.value} {e.eid}")
            next_a += 1
    for g in sorted(
        ann.groups.values(), key=lambda g: (_resolved_span(ann, g.gid), _id_num(g.gid))
    ):
        lines.append(f"{g.gid}\t{g.etype.value}" + "".join(f" {m}" for m in g.members))
    for r in sorted(
        ann.relations.values(),
        key=lambda r: (
            _resolved_span(ann, r.arg1),
            _resolved_span(ann, r.arg2),
            r.rtype.value,
            _id_num(r.rid),
        ),
    ):
        lines.append(f"{r.rid}\t{r.rtype.value} Arg1:{r.arg1} Arg2:{r.arg2}")
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------- bundles ---

@dataclass(slots=True)
class BundlePaths:
    """Filesystem locations of one document's layer files."""

    doc_id: str
    txt: Path
    tok: Path | None = None
    ptb: Path | None = None
    chk: Path | None = None
    ann: Path | None = None
    doc_type: str | None = None


def discover(root: str | Path) -> dict[str, BundlePaths]:
    """Find document bundles under a directory tree.  Every *.txt file roots a
    bundle; sibling files with the same stem fill in the layers.  A parent
    directory named after a known document type tags the bundle."""
    root = Path(root)
    if not root.is_dir():
        raise InputError(f"not a directory: {root}")
    bundles: dict[str, BundlePaths] = {}
    for txt in sorted(root.rglob("*.txt")):
        doc_id = str(txt.relative_to(root).with_suffix("")).replace("\\", "/")
        bp = BundlePaths(doc_id=doc_id, txt=txt)
        for suffix, attr in ((".tok", "tok"), (".ptb", "ptb"), (".chk", "chk"), (".ann", "ann")):
            sib = txt.with_suffix(suffix)
            if sib.exists():
                setattr(bp, attr, sib)
        if txt.parent.name in DOC_TYPES:
            bp.doc_type = txt.parent.name
        bundles[doc_id] = bp
    return bundles


def load_document(paths: BundlePaths) -> Document:
    """Read every present layer of a bundle into a Document.

    Tree and token layers must agree sentence-for-sentence on leaf counts;
    a mismatch means the files describe different segmentations and is a
    format error, not a validation finding.
    """
    text = read_text_file(paths.txt)
    doc = Document(doc_id=paths.doc_id, text=text, doc_type=paths.doc_type)
    if paths.tok is not None:
        doc.sentences = parse_tok(read_text_file(paths.tok), path=str(paths.tok))
    if paths.ptb is not None:
        doc.trees = parse_ptb(read_text_file(paths.ptb), path=str(paths.ptb))
    if paths.chk is not None:
        doc.chunks = parse_chk(read_text_file(paths.chk), path=str(paths.chk))
    if doc.trees and doc.sentences:
        if len(doc.trees) != len(doc.sentences):
            raise ParseError(
                f"{len(doc.trees)} trees for {len(doc.sentences)} sentences",
                path=str(paths.ptb),
            )
        for i, (tree, sent) in enumerate(zip(doc.trees, doc.sentences)):
            n_leaves = len(tree.leaves())
            if n_leaves != len(sent.tokens):
                raise ParseError(
                    f"sentence {i}: tree has {n_leaves} leaves but the token "
                    f"layer has {len(sent.tokens)} tokens", path=str(paths.ptb),
                )
    if paths.ann is not None:
        doc.annotations = parse_ann(
            read_text_file(paths.ann), doc_id=paths.doc_id, text=text,
            path=str(paths.ann),
        )
        doc.annotations.doc_type = paths.doc_type
    return doc


def load_corpus(root: str | Path) -> dict[str, Document]:
    return {doc_id: load_document(bp) for doc_id, bp in discover(root).items()}


def load_annotation_set(root: str | Path, group_id: str = "") -> AnnotationSet:
    """Load a directory tree as one annotator group's annotation set."""
    return AnnotationSet(
        group_id=group_id or str(root), documents=load_corpus(root)
    )
