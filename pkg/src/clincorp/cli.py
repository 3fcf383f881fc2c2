"""Command-line surface for the corpus toolkit.

Subcommands: validate, iaa, score, expand, stats, kfold, round, seg-advise.
Reports go to stdout; diagnostics and progress notes go to stderr.  Exit
status is 0 on success, 1 when the run itself succeeded but produced
findings (validation diagnostics, excluded documents, an unconverged
process), and 2 on usage, I/O, or format errors.

Output is deterministic: stable ordering everywhere, metrics printed with
three decimals and percentages with two.  A JSON configuration file can
supply defaults for most flags, located by --config or the CLINCORP_CONFIG
environment variable; explicit flags win over the file.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import annio, stats, workflow
from .agreement import (
    AgreementReport,
    CorpusAgreement,
    MatchPolicy,
    RelationMode,
    corpus_agreement,
)
from .errors import ClincorpError, InputError, ParseError
from .groups import expand_all
from .model import DOC_TYPES
from .numfmt import fmt_metric, fmt_percent
from .parseval import EvalParams
from .segadvice import advise_chain, load_lexicon
from .validate import validate_document
from .workflow import ConvergencePolicy, RoundState

CONFIG_ENV = "CLINCORP_CONFIG"

_POLICIES = {p.value: p for p in MatchPolicy}
_MODES = {"group": RelationMode.GROUP_PRESERVED, "one2one": RelationMode.ONE_TO_ONE}


def _load_config(explicit: str | None) -> dict:
    path = explicit or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise InputError(f"config {path} must hold a JSON object")
    return data


def _pick(flag_value, config: dict, key: str, default):
    """Flag beats config file beats built-in default."""
    if flag_value is not None:
        return flag_value
    if key in config:
        return config[key]
    return default


# -------------------------------------------------------------- rendering ---

def _report_json(report: AgreementReport) -> str:
    """Fixed-format JSON so identical inputs yield identical bytes."""
    return (
        "{\n"
        f'  "agreed": {report.agreed},\n'
        f'  "count_a": {report.count_a},\n'
        f'  "count_b": {report.count_b},\n'
        f'  "precision": {fmt_metric(report.precision)},\n'
        f'  "recall": {fmt_metric(report.recall)},\n'
        f'  "f": {fmt_metric(report.f)},\n'
        f'  "vacuous": {"true" if report.vacuous else "false"}\n'
        "}\n"
    )


def _detail_table(corpus: CorpusAgreement, beta: float) -> str:
    lines = ["doc_id\tagreed\tcount_a\tcount_b\tprecision\trecall\tf"]
    for doc_id in sorted(corpus.per_doc):
        r = corpus.doc_reports(beta)[doc_id]
        lines.append(
            f"{doc_id}\t{r.agreed}\t{r.count_a}\t{r.count_b}\t"
            f"{fmt_metric(r.precision)}\t{fmt_metric(r.recall)}\t{fmt_metric(r.f)}"
        )
    p, r, f = corpus.macro(beta)
    lines.append(
        f"macro\t-\t-\t-\t{fmt_metric(p)}\t{fmt_metric(r)}\t{fmt_metric(f)}"
    )
    return "\n".join(lines) + "\n"


def _json_str(value: str) -> str:
    return json.dumps(value, ensure_ascii=False)


# ------------------------------------------------------------- subcommand ---

def _cmd_validate(args: argparse.Namespace, config: dict) -> int:
    corpus = annio.load_corpus(args.directory)
    if not corpus:
        raise InputError(f"no document bundles under {args.directory}")
    lines = []
    for doc_id in sorted(corpus):
        lines.extend(d.render() for d in validate_document(corpus[doc_id]))
    sys.stdout.write("".join(line + "\n" for line in lines))
    print(
        f"{len(lines)} finding(s) in {len(corpus)} document(s)", file=sys.stderr
    )
    return 1 if lines else 0


def _agreement_args(args: argparse.Namespace, config: dict):
    policy = _POLICIES[_pick(args.policy, config, "policy", "span_type")]
    mode = _MODES[_pick(args.mode, config, "mode", "one2one")]
    beta = float(_pick(args.beta, config, "beta", 1.0))
    params = EvalParams(
        labeled=_pick(
            False if args.unlabeled else None, config, "labeled", True
        ),
        include_root=_pick(
            False if args.exclude_root else None, config, "include_root", True
        ),
        ignore_punct=_pick(
            False if args.keep_punct else None, config, "ignore_punct", True
        ),
    )
    return policy, mode, beta, params


def _run_agreement(args: argparse.Namespace, config: dict, names: tuple[str, str]) -> int:
    policy, mode, beta, params = _agreement_args(args, config)
    set_a = annio.load_annotation_set(args.dir_a, group_id=names[0])
    set_b = annio.load_annotation_set(args.dir_b, group_id=names[1])
    corpus = corpus_agreement(
        set_a, set_b, args.layer, policy=policy, mode=mode, params=params
    )
    out = _report_json(corpus.report(beta))
    if args.details:
        sys.stderr.write(_detail_table(corpus, beta))
    for doc_id in corpus.excluded_docs:
        print(f"excluded document {doc_id}: layer shapes differ", file=sys.stderr)
    for doc_id, sents in sorted(corpus.excluded_sentences.items()):
        idx = ",".join(map(str, sents))
        print(f"excluded sentences in {doc_id}: {idx}", file=sys.stderr)
    sys.stdout.write(out)
    return 1 if corpus.has_exclusions else 0


def _cmd_iaa(args: argparse.Namespace, config: dict) -> int:
    return _run_agreement(args, config, ("AG1", "AG2"))


def _cmd_score(args: argparse.Namespace, config: dict) -> int:
    # Gold plays the reference (recall) role, predictions the response role.
    return _run_agreement(args, config, ("gold", "pred"))


def _cmd_expand(args: argparse.Namespace, config: dict) -> int:
    path = Path(args.ann_file)
    ann = annio.parse_ann(annio.read_text_file(path), doc_id=path.stem, path=str(path))
    tid_by_key: dict[tuple, str] = {}
    for tid, ent in ann.entities.items():
        best = tid_by_key.get(ent.key())
        if best is None or int(tid[1:]) < int(best[1:]):
            tid_by_key[ent.key()] = tid
    lines = ["# one-to-one expansion of grouped relations"]
    pairs = sorted(expand_all(ann), key=lambda p: p.key)
    for i, pair in enumerate(pairs, start=1):
        a1, a2 = tid_by_key[pair.arg1], tid_by_key[pair.arg2]
        lines.append(f"R{i}\t{pair.rtype.value} Arg1:{a1} Arg2:{a2}")
    sys.stdout.write("".join(line + "\n" for line in lines))
    return 0


def _stats_rows(args: argparse.Namespace, docs) -> list:
    if args.report == "pos":
        return stats.distribution(docs, "pos", doc_type=args.doc_type)
    if args.report == "syn":
        return stats.distribution(docs, "syntactic", doc_type=args.doc_type)
    if args.report == "entity":
        return stats.assertion_cross_table(docs, doc_type=args.doc_type)
    return stats.relation_table(docs, doc_type=args.doc_type)


def _cmd_stats(args: argparse.Namespace, config: dict) -> int:
    if args.doc_type is not None and args.doc_type not in DOC_TYPES:
        raise InputError(
            f"unknown doc type {args.doc_type!r}; expected one of {DOC_TYPES}"
        )
    corpus = annio.load_corpus(args.directory)
    if not corpus:
        raise InputError(f"no document bundles under {args.directory}")
    docs = [corpus[k] for k in sorted(corpus)]
    fmt = _pick(args.format, config, "format", "tsv")

    if args.report == "length":
        tokens, sentences = stats.token_and_sentence_counts(docs, args.doc_type)
        avg = stats.avg_sentence_length(docs, args.doc_type)
        if fmt == "tsv":
            out = (
                f"tokens\t{tokens}\n"
                f"sentences\t{sentences}\n"
                f"avg_tokens_per_sentence\t{fmt_percent(avg)}\n"
            )
        else:
            out = (
                "{\n"
                f'  "tokens": {tokens},\n'
                f'  "sentences": {sentences},\n'
                f'  "avg_tokens_per_sentence": {fmt_percent(avg)}\n'
                "}\n"
            )
        sys.stdout.write(out)
        return 0

    rows = _stats_rows(args, docs)
    if args.report in ("pos", "syn"):
        header = "label\tcount\tpct"
        tsv = [
            f"{r.label}\t{r.count}\t{fmt_percent(r.pct)}" for r in rows
        ]
        json_rows = [
            f'  {{"label": {_json_str(r.label)}, "count": {r.count}, '
            f'"pct": {fmt_percent(r.pct)}}}'
            for r in rows
        ]
    else:
        header = "label\tcount\tpct_within\tpct_all"
        tsv = [
            f"{r.label}\t{r.count}\t{fmt_percent(r.pct_within)}\t{fmt_percent(r.pct_all)}"
            for r in rows
        ]
        json_rows = [
            f'  {{"label": {_json_str(r.label)}, "count": {r.count}, '
            f'"pct_within": {fmt_percent(r.pct_within)}, '
            f'"pct_all": {fmt_percent(r.pct_all)}}}'
            for r in rows
        ]
    if fmt == "tsv":
        out = "".join(line + "\n" for line in [header, *tsv])
    else:
        out = "[\n" + ",\n".join(json_rows) + "\n]\n" if json_rows else "[]\n"
    sys.stdout.write(out)
    return 0


def _cmd_kfold(args: argparse.Namespace, config: dict) -> int:
    doc_ids = sorted(annio.discover(args.directory))
    if not doc_ids:
        raise InputError(f"no document bundles under {args.directory}")
    manifest = workflow.kfold(doc_ids, args.k, args.seed)
    sys.stdout.write(manifest.to_json())
    return 0


def _cmd_seg_advise(args: argparse.Namespace, config: dict) -> int:
    lexicon = load_lexicon(
        annio.read_text_file(args.lexicon), path=str(args.lexicon)
    )
    trail = advise_chain(lexicon, args.term)
    sys.stdout.write("".join(d.render() + "\n" for d in trail))
    return 0


# ------------------------------------------------------------------ round ---

def _cmd_round(args: argparse.Namespace, config: dict) -> int:
    if args.action == "new":
        if args.pool_from:
            pool = sorted(annio.discover(args.pool_from))
            if not pool:
                raise InputError(f"no document bundles under {args.pool_from}")
        else:
            pool = list(args.pool or [])
        if not pool:
            raise InputError("round new needs --pool-from or --pool")
        state = RoundState(round_index=1, pool=pool)
        workflow.save_state(state, args.state)
        sys.stdout.write(state.to_json())
        return 0

    state = workflow.load_state(args.state)

    if args.action == "sample":
        if args.n is None or args.seed is None:
            raise InputError("round sample needs --n and --seed")
        fraction = float(
            _pick(args.duplicate_fraction, config, "duplicate_fraction", 1 / 3)
        )
        new_state, sampled = workflow.sample_round(state, args.n, args.seed)
        assignments = workflow.assign_duplicates(sampled, fraction, args.seed)
        for doc, groups in assignments.items():
            new_state.assignments[doc] = sorted(groups)
        workflow.save_state(new_state, args.state)
        sys.stdout.write(
            json.dumps(
                {
                    "round_index": new_state.round_index,
                    "sampled": sampled,
                    "assignments": {d: sorted(g) for d, g in assignments.items()},
                },
                ensure_ascii=False, indent=2, sort_keys=True,
            ) + "\n"
        )
        return 0

    if args.action == "record-iaa":
        if args.task is None or args.value is None:
            raise InputError("round record-iaa needs --task and --value")
        history = state.iaa_history.setdefault(args.task, [])
        history.append(args.value)
        workflow.save_state(state, args.state)
        sys.stdout.write(
            json.dumps(
                {"task": args.task, "history": history},
                ensure_ascii=False,
            ) + "\n"
        )
        return 0

    # status
    window = int(_pick(args.window, config, "window", 3))
    tau_map = config.get("tau", {})
    if not isinstance(tau_map, dict):
        raise InputError("config key 'tau' must map task names to thresholds")
    policy = ConvergencePolicy(
        window=window,
        tau={k: float(v) for k, v in tau_map.items()},
        default_tau=float(_pick(args.tau, config, "default_tau", 0.9)),
    )
    lines = ["task\trounds\tthreshold\tconverged"]
    all_converged = bool(state.iaa_history)
    for task in sorted(state.iaa_history):
        history = state.iaa_history[task]
        ok = workflow.check_convergence(history, policy, task)
        all_converged = all_converged and ok
        lines.append(
            f"{task}\t{len(history)}\t{fmt_metric(policy.threshold(task))}\t"
            f"{'true' if ok else 'false'}"
        )
    sys.stdout.write("".join(line + "\n" for line in lines))
    if not state.iaa_history:
        print("no agreement history recorded yet", file=sys.stderr)
    return 0 if all_converged else 1


# ------------------------------------------------------------------ parser ---

def _add_agreement_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--layer", required=True,
        choices=("seg", "pos", "chunk", "tree", "entity", "relation"),
    )
    sub.add_argument("--policy", choices=sorted(_POLICIES), default=None,
                     help="entity match policy")
    sub.add_argument("--mode", choices=sorted(_MODES), default=None,
                     help="relation comparison mode")
    sub.add_argument("--beta", type=float, default=None,
                     help="F-measure beta (default 1.0)")
    sub.add_argument("--unlabeled", action="store_true",
                     help="tree layer: match brackets by span only")
    sub.add_argument("--exclude-root", action="store_true",
                     help="tree layer: skip the root bracket")
    sub.add_argument("--keep-punct", action="store_true",
                     help="tree layer: keep punctuation leaves")
    sub.add_argument("--details", action="store_true",
                     help="per-document table on the diagnostic stream")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clincorp",
        description="Validate, score, and manage multilayer clinical-text annotations.",
    )
    parser.add_argument("--config", default=None,
                        help=f"JSON config file (or set {CONFIG_ENV})")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="check one annotated corpus directory")
    p.add_argument("directory")
    p.set_defaults(func=_cmd_validate)

    p = subs.add_parser("iaa", help="agreement between two annotation sets")
    _add_agreement_flags(p)
    p.add_argument("dir_a")
    p.add_argument("dir_b")
    p.set_defaults(func=_cmd_iaa)

    p = subs.add_parser("score", help="score predictions against gold (same math as iaa)")
    _add_agreement_flags(p)
    p.add_argument("dir_a", metavar="gold_dir")
    p.add_argument("dir_b", metavar="pred_dir")
    p.set_defaults(func=_cmd_score)

    p = subs.add_parser("expand", help="expand grouped relations to entity pairs")
    p.add_argument("ann_file")
    p.set_defaults(func=_cmd_expand)

    p = subs.add_parser("stats", help="corpus distribution and length reports")
    p.add_argument("--report", required=True,
                   choices=("pos", "syn", "entity", "relation", "length"))
    p.add_argument("--doc-type", default=None)
    p.add_argument("--format", choices=("tsv", "json"), default=None)
    p.add_argument("directory")
    p.set_defaults(func=_cmd_stats)

    p = subs.add_parser("kfold", help="deterministic k-fold split of a corpus")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("directory")
    p.set_defaults(func=_cmd_kfold)

    p = subs.add_parser("round", help="manage the iterative annotation process")
    p.add_argument("action", choices=("new", "sample", "record-iaa", "status"))
    p.add_argument("--state", required=True, help="state file (JSON)")
    p.add_argument("--pool-from", default=None,
                   help="new: fill the pool from a corpus directory")
    p.add_argument("--pool", nargs="*", default=None,
                   help="new: fill the pool with explicit document ids")
    p.add_argument("--n", type=int, default=None, help="sample: documents to draw")
    p.add_argument("--seed", type=int, default=None, help="sample: shuffle seed")
    p.add_argument("--duplicate-fraction", type=float, default=None,
                   help="sample: share assigned to both groups (default 1/3)")
    p.add_argument("--task", default=None, help="record-iaa: task name")
    p.add_argument("--value", type=float, default=None,
                   help="record-iaa: agreement F value")
    p.add_argument("--window", type=int, default=None,
                   help="status: rounds that must all pass (default 3)")
    p.add_argument("--tau", type=float, default=None,
                   help="status: default threshold (default 0.9)")
    p.set_defaults(func=_cmd_round)

    p = subs.add_parser("seg-advise", help="segmentation advice for a lexicon term")
    p.add_argument("--lexicon", required=True, help="term lexicon (TSV)")
    p.add_argument("term")
    p.set_defaults(func=_cmd_seg_advise)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage to stderr; 2 for usage errors.
        code = exc.code or 0
        return code if isinstance(code, int) else 2
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except ClincorpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
