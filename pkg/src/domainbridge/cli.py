"""Command-line front end.

Subcommands cover the full experiment cycle: generating the synthetic
benchmark, building lexicons, training, prediction, evaluation, corpus
divergence, the bag-of-words baseline, and long-format figure-data export.

Every run writes a ``manifest.json`` under ``--out`` recording the
subcommand, the resolved configuration (seed included), sha256 checksums of
every input file, and the list of outputs. Outputs carry no timestamps, so
re-running with the same inputs reproduces them byte for byte.

Exit codes: 0 success, 1 usage/configuration error, 2 data error.
A JSON file passed via ``--config`` supplies defaults (keys mirror flag
names, either punctuation works); explicit flags win over the file, and the
``DOMAIN_BRIDGE_SEED`` environment variable seeds runs that set no seed at
all.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from .baseline import (
    DEFAULT_C_GRID,
    fit_baseline,
    predict_labels,
    save_baseline,
)
from .corpus import CorpusSplit, LabeledCorpus, load_corpus
from .embeddings import load_text_embeddings
from .errors import DomainBridgeError
from .evaluation import (
    MODE_DIVERGENCE,
    MODE_SIMILARITY,
    VARIANT_JENSEN_SHANNON,
    VARIANT_SYMMETRIZED_KL,
    divergence_matrix,
    evaluate,
)
from .lexicon import (
    frequency_lexicon,
    load_lexicon,
    mutual_information_lexicon,
    save_lexicon,
    word_list_lexicon,
)
from .model import (
    TrainConfig,
    classify_source,
    classify_target,
    load_model,
    save_model,
    train,
    tune_grid,
)
from .synthetic import SyntheticSpec, generate_benchmark, save_benchmark

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42
SEED_ENV_VAR = "DOMAIN_BRIDGE_SEED"
_GRID_ALPHAS = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
_GRID_BATCH_SIZES = "20,50,100,200,500"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this artifact reserves 2 for data errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="output directory (created if missing)")
    sub.add_argument("--config", help="JSON file of default flag values")
    sub.add_argument("--seed", type=int, default=None,
                     help=f"RNG seed (default: ${SEED_ENV_VAR} or {DEFAULT_SEED})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="domainbridge", allow_abbrev=False,
                     description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    commands = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    sub = commands.add_parser("synth", help="generate the synthetic two-domain benchmark")
    sub.add_argument("--dim", type=int, default=20)
    sub.add_argument("--vocab-size", type=int, default=300)
    sub.add_argument("--sentiment-fraction", type=float, default=0.3)
    sub.add_argument("--separation", type=float, default=2.0)
    sub.add_argument("--rotation", default="random_orthogonal",
                     choices=["identity", "random_orthogonal"])
    sub.add_argument("--noise", type=float, default=0.05)
    sub.add_argument("--sentence-length", type=int, default=8)
    sub.add_argument("--n-train", type=int, default=500)
    sub.add_argument("--n-dev", type=int, default=100)
    sub.add_argument("--n-test", type=int, default=200)
    sub.add_argument("--disjoint-sentiment-vocab", action="store_true",
                     help="give the two domains non-overlapping sentiment words")
    _add_common(sub)

    sub = commands.add_parser("train", help="fit the joint projection model")
    sub.add_argument("--source-emb")
    sub.add_argument("--target-emb")
    sub.add_argument("--train", help="labeled source training corpus")
    sub.add_argument("--dev", help="labeled source dev corpus (epoch selection)")
    sub.add_argument("--lexicon", help="projection lexicon TSV")
    sub.add_argument("--alpha", type=float, default=0.5)
    sub.add_argument("--epochs", type=int, default=100)
    sub.add_argument("--batch-size", type=int, default=20)
    sub.add_argument("--lr", type=float, default=1e-3)
    sub.add_argument("--init", default="glorot", choices=["glorot", "identity"])
    sub.add_argument("--optimizer", default="adam", choices=["adam", "sgd"])
    sub.add_argument("--k", type=int, default=None, help="joint space size (default: source dim)")
    sub.add_argument("--ablate-mprime", action="store_true",
                     help="reuse the source projection on the target side")
    sub.add_argument("--grid", action="store_true",
                     help="tune alpha and batch size on dev instead of single run")
    sub.add_argument("--grid-alphas", default=_GRID_ALPHAS)
    sub.add_argument("--grid-batch-sizes", default=_GRID_BATCH_SIZES)
    sub.add_argument("--figures", action="store_true", help="render loss curves to PNG")
    _add_common(sub)

    sub = commands.add_parser("predict", help="classify a corpus with a trained model")
    sub.add_argument("--model")
    sub.add_argument("--test", help="corpus to classify")
    sub.add_argument("--side", default="target", choices=["source", "target"])
    sub.add_argument("--source-emb")
    sub.add_argument("--target-emb")
    _add_common(sub)

    sub = commands.add_parser("eval", help="score a predictions file against gold labels")
    sub.add_argument("--pred", help="predictions TSV from the predict subcommand")
    sub.add_argument("--gold", help="corpus file carrying the gold labels")
    sub.add_argument("--system", default="model", help="system name recorded in the report")
    sub.add_argument("--source-name", default="source")
    sub.add_argument("--target-name", default="target")
    _add_common(sub)

    sub = commands.add_parser("divergence", help="pairwise corpus divergence matrix")
    sub.add_argument("--corpora", nargs="+", help="two or more corpus files")
    sub.add_argument("--k", type=int, default=10000, help="shared vocabulary size")
    sub.add_argument("--variant", default=VARIANT_JENSEN_SHANNON,
                     choices=[VARIANT_JENSEN_SHANNON, VARIANT_SYMMETRIZED_KL])
    sub.add_argument("--mode", default=MODE_DIVERGENCE,
                     choices=[MODE_DIVERGENCE, MODE_SIMILARITY])
    sub.add_argument("--epsilon", type=float, default=1e-6, help="additive smoothing")
    sub.add_argument("--figures", action="store_true", help="render a heatmap PNG")
    _add_common(sub)

    sub = commands.add_parser("lexicon", help="build a projection lexicon")
    sub.add_argument("--strategy", default="frequency",
                     choices=["frequency", "word-list", "mi-pivots"])
    sub.add_argument("--corpora", nargs="*", default=[],
                     help="corpus files (frequency and word-list strategies)")
    sub.add_argument("--k", type=int, default=20000, help="frequency strategy: top-k words")
    sub.add_argument("--words", help="word-list strategy: file with one word per line")
    sub.add_argument("--source-labeled", help="mi-pivots: labeled source corpus")
    sub.add_argument("--source-unlabeled", help="mi-pivots: unlabeled source corpus")
    sub.add_argument("--target-unlabeled", help="mi-pivots: unlabeled target corpus")
    sub.add_argument("--min-count", type=int, default=10)
    sub.add_argument("--top-m", type=int, default=500)
    sub.add_argument("--mi-target", default="label", choices=["label", "domain"])
    _add_common(sub)

    sub = commands.add_parser("baseline", help="bag-of-words linear baseline")
    sub.add_argument("--train", help="labeled training corpus")
    sub.add_argument("--dev", help="labeled dev corpus (C selection)")
    sub.add_argument("--test", help="in-domain test corpus")
    sub.add_argument("--target-test", help="optional cross-domain test corpus")
    sub.add_argument("--features", default="binary", choices=["binary", "count", "tfidf"])
    sub.add_argument("--min-df", type=int, default=2)
    _add_common(sub)

    sub = commands.add_parser("plot-data", help="flatten eval reports into long-format CSV")
    sub.add_argument("--reports", nargs="*", default=[], help="report JSON files")
    sub.add_argument("--figures", action="store_true", help="render grouped bars PNG")
    _add_common(sub)

    return parser


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _input(value: str | None, flag: str, command: str) -> Path:
    if not value:
        raise ValueError(f"{command}: missing required flag {flag}")
    path = Path(value)
    if not path.is_file():
        raise DomainBridgeError(f"{flag}: no such file: {value}")
    return path


def _resolve_seed(args: argparse.Namespace) -> int:
    seed = getattr(args, "seed", None)
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _write_json(path: Path, document: dict) -> None:
    path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", "utf-8")


def _manifest(out_dir: Path, args: argparse.Namespace, seed: int,
              inputs: list[Path], outputs: list[str]) -> None:
    config = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    config["seed"] = seed
    _write_json(out_dir / "manifest.json", {
        "subcommand": args.command,
        "config": config,
        "inputs": {str(p): _sha256(p) for p in sorted(set(inputs))},
        "outputs": sorted(set(outputs)),
    })


def _load_named_corpus(path: Path) -> LabeledCorpus:
    return load_corpus(path, path.stem)


def _config_input(args: argparse.Namespace) -> list[Path]:
    value = getattr(args, "config", None)
    return [Path(value)] if value else []


def _parse_number_list(text: str, flag: str, cast):
    try:
        values = [cast(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"{flag}: expected a comma-separated number list, got {text!r}") from None
    if not values:
        raise ValueError(f"{flag}: empty list")
    return values


def _cmd_synth(args, out_dir: Path, seed: int) -> int:
    spec = SyntheticSpec(
        dimension=args.dim,
        vocab_size=args.vocab_size,
        sentiment_fraction=args.sentiment_fraction,
        separation=args.separation,
        rotation=args.rotation,
        noise=args.noise,
        sentence_length=args.sentence_length,
        n_train=args.n_train,
        n_dev=args.n_dev,
        n_test=args.n_test,
        seed=seed,
        disjoint_sentiment_vocab=bool(args.disjoint_sentiment_vocab),
    )
    paths = save_benchmark(generate_benchmark(spec), out_dir)
    _manifest(out_dir, args, seed, _config_input(args), [p.name for p in paths.values()])
    return 0


def _cmd_train(args, out_dir: Path, seed: int) -> int:
    source_path = _input(args.source_emb, "--source-emb", "train")
    target_path = _input(args.target_emb, "--target-emb", "train")
    train_path = _input(args.train, "--train", "train")
    dev_path = _input(args.dev, "--dev", "train")
    lexicon_path = _input(args.lexicon, "--lexicon", "train")

    source_space = load_text_embeddings(source_path)
    target_space = (
        source_space
        if target_path.resolve() == source_path.resolve()
        else load_text_embeddings(target_path)
    )
    train_corpus = _load_named_corpus(train_path)
    dev_corpus = _load_named_corpus(dev_path)
    # train() never touches the test split; keep the type honest with a stub
    splits = CorpusSplit(train=train_corpus, dev=dev_corpus,
                         test=LabeledCorpus(train_corpus.domain_name, ()))
    lexicon = load_lexicon(lexicon_path)

    config = TrainConfig(
        alpha=args.alpha,
        epochs=args.epochs,
        batch_size=args.batch_size,
        learning_rate=args.lr,
        seed=seed,
        init=args.init,
        optimizer=args.optimizer,
        joint_dim=args.k,
        ablate_target_matrix=bool(args.ablate_mprime),
    )

    outputs = ["model.json", "train_report.json"]
    if args.grid:
        alphas = _parse_number_list(args.grid_alphas, "--grid-alphas", float)
        batch_sizes = _parse_number_list(args.grid_batch_sizes, "--grid-batch-sizes", int)
        model, report, grid = tune_grid(
            source_space, target_space, lexicon, splits, config, alphas, batch_sizes
        )
        _write_json(out_dir / "grid.json", {
            "cells": grid,
            "selected": {"alpha": model.alpha, "batch_size": report.config.batch_size},
        })
        outputs.append("grid.json")
    else:
        model, report = train(source_space, target_space, lexicon, splits, config)

    save_model(model, out_dir / "model.json")
    _write_json(out_dir / "train_report.json", report.to_json_dict())
    if getattr(args, "figures", False):
        from .plots import render_loss_curves

        render_loss_curves(report, out_dir / "loss_curves.png")
        outputs.append("loss_curves.png")
    inputs = [source_path, target_path, train_path, dev_path, lexicon_path]
    _manifest(out_dir, args, seed, inputs + _config_input(args), outputs)
    return 0


def _cmd_predict(args, out_dir: Path, seed: int) -> int:
    model_path = _input(args.model, "--model", "predict")
    test_path = _input(args.test, "--test", "predict")
    if args.side not in ("source", "target"):
        raise ValueError(f"predict: --side must be 'source' or 'target', got {args.side!r}")
    emb_flag = "--target-emb" if args.side == "target" else "--source-emb"
    emb_value = args.target_emb if args.side == "target" else args.source_emb
    emb_path = _input(emb_value, emb_flag, "predict")

    model = load_model(model_path)
    space = load_text_embeddings(emb_path)
    corpus = _load_named_corpus(test_path)
    classify = classify_target if args.side == "target" else classify_source
    result = classify(model, space, corpus, seed)

    lines = []
    for label, probs in zip(result.labels, result.probabilities):
        if label is None:
            lines.append("skipped\tnan\tnan")
        else:
            lines.append(f"{label}\t{float(probs[0])!r}\t{float(probs[1])!r}")
    (out_dir / "predictions.tsv").write_text("\n".join(lines) + "\n", "utf-8")
    _manifest(out_dir, args, seed,
              [model_path, test_path, emb_path] + _config_input(args), ["predictions.tsv"])
    return 0


def _cmd_eval(args, out_dir: Path, seed: int) -> int:
    pred_path = _input(args.pred, "--pred", "eval")
    gold_path = _input(args.gold, "--gold", "eval")
    predicted = [
        line.split("\t")[0]
        for line in pred_path.read_text("utf-8").splitlines()
        if line.strip()
    ]
    gold_corpus = _load_named_corpus(gold_path)
    if len(predicted) != len(gold_corpus.documents):
        raise DomainBridgeError(
            f"{pred_path} has {len(predicted)} predictions but {gold_path} has "
            f"{len(gold_corpus.documents)} documents"
        )
    predictions, gold = [], []
    dropped = 0
    for label, doc in zip(predicted, gold_corpus.documents):
        if label == "skipped" or doc.label is None:
            dropped += 1
            continue
        predictions.append(label)
        gold.append(doc.label)
    if dropped:
        logger.warning("dropped %d document(s) without both prediction and gold label", dropped)
    if not predictions:
        raise DomainBridgeError("no documents left to evaluate")
    try:
        report = evaluate(predictions, gold, gold_corpus.label_set)
    except ValueError as exc:
        raise DomainBridgeError(f"{pred_path}: {exc}") from None

    document = {
        "system": args.system,
        "source": args.source_name,
        "target": args.target_name,
        "n_dropped": dropped,
        **report.to_json_dict(),
    }
    _write_json(out_dir / "report.json", document)
    (out_dir / "report.txt").write_text(report.to_text(), "utf-8")
    _manifest(out_dir, args, seed, [pred_path, gold_path] + _config_input(args),
              ["report.json", "report.txt"])
    return 0


def _cmd_divergence(args, out_dir: Path, seed: int) -> int:
    if not args.corpora:
        raise ValueError("divergence: missing required flag --corpora")
    paths = [_input(p, "--corpora", "divergence") for p in args.corpora]
    corpora = []
    seen = set()
    for path in paths:
        if path.stem in seen:
            raise DomainBridgeError(
                f"duplicate domain name {path.stem!r}; corpus files need distinct stems"
            )
        seen.add(path.stem)
        corpora.append(_load_named_corpus(path))
    matrix = divergence_matrix(
        corpora, k=args.k, variant=args.variant, mode=args.mode, epsilon=args.epsilon
    )
    (out_dir / "divergence.csv").write_text(matrix.to_csv(), "utf-8")
    _write_json(out_dir / "divergence.json", matrix.to_json_dict())
    outputs = ["divergence.csv", "divergence.json"]
    if getattr(args, "figures", False):
        from .plots import render_divergence_heatmap

        render_divergence_heatmap(matrix, out_dir / "divergence_heatmap.png")
        outputs.append("divergence_heatmap.png")
    _manifest(out_dir, args, seed, paths + _config_input(args), outputs)
    return 0


def _cmd_lexicon(args, out_dir: Path, seed: int) -> int:
    inputs: list[Path] = []
    if args.strategy == "frequency":
        if not args.corpora:
            raise ValueError("lexicon: the frequency strategy needs --corpora")
        paths = [_input(p, "--corpora", "lexicon") for p in args.corpora]
        inputs += paths
        lexicon = frequency_lexicon([_load_named_corpus(p) for p in paths], k=args.k)
    elif args.strategy == "word-list":
        words_path = _input(args.words, "--words", "lexicon")
        if not args.corpora:
            raise ValueError("lexicon: the word-list strategy needs --corpora")
        paths = [_input(p, "--corpora", "lexicon") for p in args.corpora]
        inputs += [words_path] + paths
        words = [
            line.strip()
            for line in words_path.read_text("utf-8").splitlines()
            if line.strip()
        ]
        lexicon = word_list_lexicon(words, [_load_named_corpus(p) for p in paths])
    else:  # mi-pivots
        labeled_path = _input(args.source_labeled, "--source-labeled", "lexicon")
        src_path = _input(args.source_unlabeled, "--source-unlabeled", "lexicon")
        tgt_path = _input(args.target_unlabeled, "--target-unlabeled", "lexicon")
        inputs += [labeled_path, src_path, tgt_path]
        lexicon = mutual_information_lexicon(
            _load_named_corpus(labeled_path),
            _load_named_corpus(src_path),
            _load_named_corpus(tgt_path),
            min_count=args.min_count,
            top_m=args.top_m,
            mi_target=args.mi_target,
        )
    save_lexicon(lexicon, out_dir / "lexicon.tsv")
    _manifest(out_dir, args, seed, inputs + _config_input(args), ["lexicon.tsv"])
    return 0


def _eval_pair(predictions, corpus: LabeledCorpus):
    pairs = [(p, d.label) for p, d in zip(predictions, corpus.documents) if d.label]
    if not pairs:
        raise DomainBridgeError(f"{corpus.domain_name}: no labeled documents to score")
    return evaluate([p for p, _ in pairs], [g for _, g in pairs], corpus.label_set)


def _cmd_baseline(args, out_dir: Path, seed: int) -> int:
    train_path = _input(args.train, "--train", "baseline")
    dev_path = _input(args.dev, "--dev", "baseline")
    test_path = _input(args.test, "--test", "baseline")
    inputs = [train_path, dev_path, test_path]
    train_corpus = _load_named_corpus(train_path)
    dev_corpus = _load_named_corpus(dev_path)
    test_corpus = _load_named_corpus(test_path)

    vectorizer, model, grid = fit_baseline(
        train_corpus, dev_corpus,
        C_grid=DEFAULT_C_GRID, mode=args.features, min_df=args.min_df, seed=seed,
    )
    save_baseline(vectorizer, model, out_dir / "baseline_model.json")

    in_report = _eval_pair(predict_labels(vectorizer, model, test_corpus), test_corpus)
    _write_json(out_dir / "report_in_domain.json", {
        "system": "bow-linear",
        "source": train_corpus.domain_name,
        "target": test_corpus.domain_name,
        **in_report.to_json_dict(),
    })
    summary = {
        "C": model.C,
        "grid": grid,
        "features": args.features,
        "in_domain_accuracy": in_report.accuracy,
        "in_domain_macro_f1": in_report.macro_f1,
    }
    outputs = ["baseline_model.json", "baseline_report.json", "report_in_domain.json"]
    if args.target_test:
        tt_path = _input(args.target_test, "--target-test", "baseline")
        inputs.append(tt_path)
        tt_corpus = _load_named_corpus(tt_path)
        cross = _eval_pair(predict_labels(vectorizer, model, tt_corpus), tt_corpus)
        _write_json(out_dir / "report_cross_domain.json", {
            "system": "bow-linear",
            "source": train_corpus.domain_name,
            "target": tt_corpus.domain_name,
            **cross.to_json_dict(),
        })
        summary["cross_domain_accuracy"] = cross.accuracy
        summary["cross_domain_macro_f1"] = cross.macro_f1
        outputs.append("report_cross_domain.json")
    _write_json(out_dir / "baseline_report.json", summary)
    _manifest(out_dir, args, seed, inputs + _config_input(args), outputs)
    return 0


def _cmd_plot_data(args, out_dir: Path, seed: int) -> int:
    paths = [_input(p, "--reports", "plot-data") for p in args.reports]
    rows: list[dict] = []
    for path in paths:
        try:
            document = json.loads(path.read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise DomainBridgeError(f"{path}: not valid JSON ({exc})") from None
        metrics = document.get("metrics")
        if not isinstance(metrics, dict):
            raise DomainBridgeError(f"{path}: report lacks a 'metrics' object")
        for metric in sorted(metrics):
            rows.append({
                "system": document.get("system", "unknown"),
                "source": document.get("source", "unknown"),
                "target": document.get("target", "unknown"),
                "metric": metric,
                "value": metrics[metric],
            })
    csv_path = out_dir / "plot_data.csv"
    with csv_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["system", "source", "target", "metric", "value"])
        for row in rows:
            writer.writerow([row["system"], row["source"], row["target"],
                             row["metric"], repr(float(row["value"]))])
    outputs = ["plot_data.csv"]
    if getattr(args, "figures", False) and rows:
        from .plots import render_metric_bars

        render_metric_bars(rows, out_dir / "metric_bars.png")
        outputs.append("metric_bars.png")
    _manifest(out_dir, args, seed, paths + _config_input(args), outputs)
    return 0


_HANDLERS = {
    "synth": _cmd_synth,
    "train": _cmd_train,
    "predict": _cmd_predict,
    "eval": _cmd_eval,
    "divergence": _cmd_divergence,
    "lexicon": _cmd_lexicon,
    "baseline": _cmd_baseline,
    "plot-data": _cmd_plot_data,
}


def _load_config_values(path_value: str) -> dict:
    config_path = Path(path_value)
    if not config_path.is_file():
        raise DomainBridgeError(f"--config: no such file: {path_value}")
    try:
        config = json.loads(config_path.read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainBridgeError(f"{config_path}: not valid JSON ({exc})") from None
    if not isinstance(config, dict):
        raise DomainBridgeError(f"{config_path}: config must be a JSON object")
    return {
        key.replace("-", "_"): value
        for key, value in config.items()
        if key.replace("-", "_") not in ("command", "config")
    }


def _apply_config(parser: argparse.ArgumentParser, argv: list[str], values: dict) -> None:
    """Install config values as defaults on the chosen subparser.

    Subparsers parse into a fresh namespace, so pre-seeding the outer
    namespace would be thrown away; defaults are the one channel that
    explicit flags still override. Keys another subcommand owns are ignored,
    which lets one config file serve a whole pipeline.
    """
    probe, _ = parser.parse_known_args(argv)
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            chosen = action.choices[probe.command]
            break
    else:  # pragma: no cover - build_parser always registers subcommands
        raise AssertionError("parser has no subcommands")
    dests = {a.dest: a for a in chosen._actions}
    applicable = {}
    for dest, value in values.items():
        target = dests.get(dest)
        if target is None:
            continue
        if isinstance(value, str) and target.type is not None:
            try:
                value = target.type(value)
            except (TypeError, ValueError):
                raise ValueError(
                    f"config value for {dest!r}: could not parse {value!r}"
                ) from None
        applicable[dest] = value
    chosen.set_defaults(**applicable)


def _run(argv: list[str]) -> int:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)

    parser = build_parser()
    if known.config:
        _apply_config(parser, argv, _load_config_values(known.config))
    args = parser.parse_args(argv)
    seed = _resolve_seed(args)
    out = getattr(args, "out", None)
    if not out:
        raise ValueError(f"{args.command}: missing required flag --out")
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    return _HANDLERS[args.command](args, out_dir, seed)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _run(list(sys.argv[1:]) if argv is None else list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except DomainBridgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: no such file: {exc.filename}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
