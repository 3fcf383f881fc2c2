"""Iterative annotation-round management.

The annotation process loops: sample documents from the unannotated pool,
assign a share of them to both annotator groups, measure agreement on the
shared documents, and stop once every task's agreement has stayed above its
threshold for a whole window of rounds.  The k-fold splitter supports the
downstream evaluation experiments.

All randomness comes from a self-contained splitmix-style 64-bit generator
driving a Fisher-Yates shuffle (exact algorithm in docs/FORMATS.md), so a
given seed produces the same sample, assignment, or fold manifest in any
implementation, not just this one.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import InputError, ParseError
from .model import AnnotationSet, DocAnnotations, Entity

GROUP_A = "AG1"
GROUP_B = "AG2"

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 sequence: a 64-bit counter-based generator."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def seeded_shuffle(items: list, seed: int) -> list:
    """Fisher-Yates shuffle of a copy, driven by SplitMix64(seed)."""
    out = list(items)
    rng = SplitMix64(seed)
    for i in range(len(out) - 1, 0, -1):
        j = rng.next() % (i + 1)
        out[i], out[j] = out[j], out[i]
    return out


# ----------------------------------------------------------------- rounds ---

@dataclass(slots=True)
class RoundState:
    """Progress of the iterative annotation process."""

    round_index: int = 1
    pool: list[str] = field(default_factory=list)
    assignments: dict[str, list[str]] = field(default_factory=dict)
    iaa_history: dict[str, list[float]] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "round_index": self.round_index,
                "pool": self.pool,
                "assignments": self.assignments,
                "iaa_history": self.iaa_history,
            },
            ensure_ascii=False, indent=2, sort_keys=True,
        ) + "\n"

    @classmethod
    def from_json(cls, content: str, *, path: str | None = None) -> "RoundState":
        try:
            data = json.loads(content)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
        required = {"round_index", "pool", "assignments", "iaa_history"}
        if not isinstance(data, dict) or set(data) != required:
            raise ParseError(
                f"state file must hold exactly the keys {sorted(required)}", path=path
            )
        state = cls(
            round_index=data["round_index"],
            pool=list(data["pool"]),
            assignments={k: list(v) for k, v in data["assignments"].items()},
            iaa_history={k: list(map(float, v)) for k, v in data["iaa_history"].items()},
        )
        if not isinstance(state.round_index, int) or state.round_index < 1:
            raise ParseError("round_index must be an integer >= 1", path=path)
        return state


def load_state(path: str | Path) -> RoundState:
    return RoundState.from_json(Path(path).read_text(encoding="utf-8"), path=str(path))


def save_state(state: RoundState, path: str | Path) -> None:
    Path(path).write_text(state.to_json(), encoding="utf-8")


def sample_round(
    state: RoundState, n: int, seed: int
) -> tuple[RoundState, list[str]]:
    """Draw n documents from the pool without replacement.

    Returns a new state (the input is untouched) with the drawn documents
    removed and the round counter advanced, plus the sample itself.
    """
    if n < 0 or n > len(state.pool):
        raise InputError(
            f"cannot sample {n} documents from a pool of {len(state.pool)}"
        )
    shuffled = seeded_shuffle(state.pool, seed)
    sampled = shuffled[:n]
    drawn = set(sampled)
    new_state = replace(
        state,
        round_index=state.round_index + 1,
        pool=[d for d in state.pool if d not in drawn],
        assignments=dict(state.assignments),
        iaa_history={k: list(v) for k, v in state.iaa_history.items()},
    )
    return new_state, sampled


def assign_duplicates(
    docs: list[str], fraction: float, seed: int
) -> dict[str, list[str]]:
    """Assign documents to the two annotator groups.

    ceil(fraction * n) shuffled documents go to both groups so their overlap
    can be scored; the remainder alternates between the groups.  The small
    epsilon keeps fractions like 1/3 from rounding up through float error.
    """
    if not 0.0 <= fraction <= 1.0:
        raise InputError(f"duplicate fraction must be in [0, 1], got {fraction}")
    shuffled = seeded_shuffle(docs, seed)
    n_shared = math.ceil(fraction * len(docs) - 1e-9)
    assignments: dict[str, list[str]] = {}
    for doc in shuffled[:n_shared]:
        assignments[doc] = [GROUP_A, GROUP_B]
    for i, doc in enumerate(shuffled[n_shared:]):
        assignments[doc] = [GROUP_A if i % 2 == 0 else GROUP_B]
    return assignments


@dataclass(frozen=True, slots=True)
class ConvergencePolicy:
    """Stop rule: the last `window` agreement values must all reach the
    task's threshold."""

    window: int = 3
    tau: dict[str, float] = field(default_factory=dict)
    default_tau: float = 0.9

    def threshold(self, task: str) -> float:
        return self.tau.get(task, self.default_tau)


def check_convergence(
    history: list[float], policy: ConvergencePolicy, task: str
) -> bool:
    if len(history) < policy.window:
        return False
    t = policy.threshold(task)
    return all(v >= t for v in history[-policy.window:])


# ------------------------------------------------------------------ folds ---

@dataclass(slots=True)
class FoldManifest:
    k: int
    seed: int
    folds: list[list[str]]

    def to_json(self) -> str:
        return json.dumps(
            {"k": self.k, "seed": self.seed, "folds": self.folds},
            ensure_ascii=False, indent=2,
        ) + "\n"


def kfold(doc_ids: list[str], k: int, seed: int) -> FoldManifest:
    """Deterministic k-fold split: seeded shuffle, then round-robin deal, so
    fold sizes differ by at most one."""
    if k < 2:
        raise InputError(f"k must be at least 2, got {k}")
    if len(doc_ids) < k:
        raise InputError(f"cannot make {k} folds from {len(doc_ids)} documents")
    shuffled = seeded_shuffle(doc_ids, seed)
    return FoldManifest(k=k, seed=seed, folds=[shuffled[i::k] for i in range(k)])


# ----------------------------------------------------------------- diffs ---

@dataclass(frozen=True, slots=True)
class Disagreement:
    """One adjudication item: an annotation present on one side only, or
    present on both with differing attributes."""

    doc_id: str
    layer: str
    kind: str  # a-only | b-only | attribute-mismatch
    location: str
    surface: str
    detail: str = ""

    def render(self) -> str:
        return "\t".join(
            (self.doc_id, self.layer, self.kind, self.location, self.surface,
             self.detail)
        )


def _span_surface(ann: DocAnnotations, key: tuple[int, int, str]) -> str:
    start, end, _ = key
    return ann.text[start:end] if ann.text else ""


def _diff_entities(
    ann_a: DocAnnotations, ann_b: DocAnnotations, doc_id: str
) -> list[Disagreement]:
    def index(ann: DocAnnotations) -> dict[tuple, list[Entity]]:
        idx: dict[tuple, list[Entity]] = {}
        for e in ann.entities.values():
            idx.setdefault(e.key(), []).append(e)
        return idx

    ia, ib = index(ann_a), index(ann_b)
    out: list[Disagreement] = []
    for key in sorted(set(ia) | set(ib)):
        ea, eb = ia.get(key, []), ib.get(key, [])
        start, end, etype = key
        loc = f"[{start},{end}) {etype}"
        surface = (ea or eb)[0].surface
        for _ in range(len(ea) - len(eb)):
            out.append(Disagreement(doc_id, "entity", "a-only", loc, surface))
        for _ in range(len(eb) - len(ea)):
            out.append(Disagreement(doc_id, "entity", "b-only", loc, surface))
        if ea and eb:
            aa = sorted(e.assertion.value if e.assertion else "none" for e in ea)
            ab = sorted(e.assertion.value if e.assertion else "none" for e in eb)
            if aa != ab:
                out.append(Disagreement(
                    doc_id, "entity", "attribute-mismatch", loc, surface,
                    detail=f"assertion {'/'.join(aa)} vs {'/'.join(ab)}",
                ))
    return out


def _endpoint_desc(ann: DocAnnotations, spans: tuple) -> str:
    return ";".join(_span_surface(ann, k) or f"[{k[0]},{k[1]})" for k in spans)


def _diff_keyed(
    keys_a: dict, keys_b: dict, doc_id: str, layer: str
) -> list[Disagreement]:
    out: list[Disagreement] = []
    for key in sorted(set(keys_a) | set(keys_b)):
        na = len(keys_a.get(key, []))
        nb = len(keys_b.get(key, []))
        loc, surface = (keys_a.get(key) or keys_b[key])[0]
        for _ in range(na - nb):
            out.append(Disagreement(doc_id, layer, "a-only", loc, surface))
        for _ in range(nb - na):
            out.append(Disagreement(doc_id, layer, "b-only", loc, surface))
    return out


def diff_report(
    set_a: AnnotationSet, set_b: AnnotationSet, layer: str
) -> list[Disagreement]:
    """Itemized disagreements for adjudication.

    Entities match by span and type, then compare assertions; groups match
    by type and member set; relations match group-preserved (type plus
    endpoint member sets).  Swapping the inputs swaps a-only with b-only and
    leaves attribute mismatches in place with their sides reversed.
    """
    if layer not in ("entity", "group", "relation"):
        raise InputError(f"diff supports entity/group/relation, not {layer!r}")
    if set(set_a.documents) != set(set_b.documents):
        only_a = sorted(set(set_a.documents) - set(set_b.documents))
        only_b = sorted(set(set_b.documents) - set(set_a.documents))
        raise InputError(
            "annotation sets cover different documents "
            f"(only in a: {only_a}; only in b: {only_b})"
        )
    from .groups import endpoint_key

    out: list[Disagreement] = []
    for doc_id in sorted(set_a.documents):
        ann_a = set_a.documents[doc_id].annotations or DocAnnotations(doc_id, "")
        ann_b = set_b.documents[doc_id].annotations or DocAnnotations(doc_id, "")
        if layer == "entity":
            out.extend(_diff_entities(ann_a, ann_b, doc_id))
            continue

        def keyed(ann: DocAnnotations) -> dict:
            idx: dict = {}
            if layer == "group":
                for g in ann.groups.values():
                    members = tuple(sorted(
                        ann.entities[m].key() for m in g.members if m in ann.entities
                    ))
                    key = (g.etype.value, members)
                    desc = _endpoint_desc(ann, members)
                    idx.setdefault(key, []).append((f"group {g.etype.value}", desc))
            else:
                for r in ann.relations.values():
                    k1 = tuple(sorted(endpoint_key(ann, r.arg1)))
                    k2 = tuple(sorted(endpoint_key(ann, r.arg2)))
                    key = (r.rtype.value, k1, k2)
                    desc = f"{_endpoint_desc(ann, k1)} -> {_endpoint_desc(ann, k2)}"
                    idx.setdefault(key, []).append((r.rtype.value, desc))
            return idx

        out.extend(_diff_keyed(keyed(ann_a), keyed(ann_b), doc_id, layer))
    return out
