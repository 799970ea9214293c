"""Command-line entry point: ``stancenet {ingest,stance,analyze,synth,report}``.

Every subcommand reads an optional JSON config (``--config``); explicit flags
override it. Outputs go to ``--out`` and are written atomically, so a failed
run leaves no truncated files behind.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

from . import report
from .hashtag_graph import parse_seeds, write_edges_csv as write_hashtag_edges
from .ingest import Corpus, DEFAULT_LEMMAS, dedupe, dump_corpus, lemma_filter, load_corpus
from .lexicon import LexiconError, load_lexicons
from .lingstats import StatsConfig
from .netmetrics import build_networks, write_edges_csv as write_network_edges
from .pipeline import (curation_aid, detect_stances, linguistic_report, network_report,
                       prepare, split_by_stance)
from .propagation import DEFAULT_GAMMA, read_stance_csv, write_stance_csv, write_valence_csv
from .synth import SynthParams, generate

log = logging.getLogger("stancenet")

LOG_ENV = "STANCENET_LOG_LEVEL"


class UsageError(Exception):
    pass


@dataclass
class PipelineConfig:
    input: list[str] = field(default_factory=list)
    seeds: str | None = None
    lexicons: str | None = None
    gamma: int = DEFAULT_GAMMA
    alpha: float = 0.05
    lemmas: list[str] = field(default_factory=lambda: list(DEFAULT_LEMMAS))
    out: str = "out"
    dedup: bool = True
    dedup_for_networks: bool = False
    literal_dilution: bool = False
    raw_counts: bool = False
    min_user_tweets: int = 1
    top_k: int = 10

    def validate(self) -> None:
        if self.gamma < 1:
            raise UsageError(f"gamma must be >= 1, got {self.gamma}")
        if not 0 < self.alpha < 1:
            raise UsageError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.lemmas:
            raise UsageError("lemmas must be non-empty")

    @classmethod
    def load(cls, path: str | None) -> "PipelineConfig":
        if path is None:
            return cls()
        p = Path(path)
        if not p.is_file():
            raise UsageError(f"config file not found: {path}")
        try:
            data = json.loads(p.read_text("utf-8"))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: line {exc.lineno}: {exc.msg}") from None
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"{path}: unknown config keys {sorted(unknown)}")
        # relative paths are relative to the config file
        base = p.parent
        for key in ("seeds", "lexicons", "out"):
            if isinstance(data.get(key), str):
                data[key] = str(base / data[key])
        if isinstance(data.get("input"), str):
            data["input"] = [data["input"]]
        if "input" in data:
            data["input"] = [str(base / x) for x in data["input"]]
        return cls(**data)


def _config(args) -> PipelineConfig:
    cfg = PipelineConfig.load(getattr(args, "config", None))
    for name in ("seeds", "lexicons", "gamma", "alpha", "out"):
        v = getattr(args, name, None)
        if v is not None:
            setattr(cfg, name, v)
    if getattr(args, "input", None):
        cfg.input = list(args.input)
    if getattr(args, "lemmas", None):
        cfg.lemmas = [x.strip().lower() for x in args.lemmas.split(",") if x.strip()]
    for flag in ("dedup_for_networks", "literal_dilution", "raw_counts"):
        if getattr(args, flag, False):
            setattr(cfg, flag, True)
    if getattr(args, "no_dedup", False):
        cfg.dedup = False
    cfg.validate()
    return cfg


def _require_files(paths) -> None:
    missing = [p for p in paths if not Path(p).is_file()]
    if missing:
        raise UsageError(f"input file(s) not found: {', '.join(map(str, missing))}")


def _corpus_text(corpus: Corpus) -> str:
    buf = io.StringIO()
    dump_corpus(corpus, buf)
    return buf.getvalue()


def _default_corpus(cfg: PipelineConfig) -> list[str]:
    if cfg.input:
        return cfg.input
    return [str(Path(cfg.out) / "corpus.jsonl")]


def cmd_ingest(args) -> int:
    cfg = _config(args)
    if not cfg.input:
        raise UsageError("ingest needs --input (or 'input' in the config)")
    _require_files(cfg.input)
    raw = load_corpus(*cfg.input)
    full, deduped = prepare(raw, cfg.lemmas)
    out = Path(cfg.out)
    summary = {
        "raw_tweets": len(raw),
        "filtered_tweets": len(full),
        "deduplicated_tweets": len(deduped),
        "users": len(full.users),
        "lemmas": cfg.lemmas,
    }
    report.atomic_write(out / "corpus.jsonl", _corpus_text(full))
    if cfg.dedup:
        report.atomic_write(out / "corpus.dedup.jsonl", _corpus_text(deduped))
    report.atomic_write(out / "ingest_summary.json", report.to_json(summary))
    print(f"{len(raw)} tweets read, {len(full)} kept by lemma filter "
          f"({', '.join(cfg.lemmas)}), {len(deduped)} unique texts from {len(full.users)} users")
    return 0


def _load_seeds(cfg: PipelineConfig) -> dict[str, float]:
    if cfg.seeds is None:
        text = resources.files("stancenet").joinpath("data/seeds.txt").read_text("utf-8")
        seeds = parse_seeds(text.splitlines())
    else:
        _require_files([cfg.seeds])
        with open(cfg.seeds, encoding="utf-8") as fh:
            seeds = parse_seeds(fh)
    if not seeds:
        raise UsageError("no seed hashtags given; propagation needs at least one")
    return seeds


def cmd_stance(args) -> int:
    cfg = _config(args)
    paths = _default_corpus(cfg)
    _require_files(paths)
    try:
        seeds = _load_seeds(cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    # the filter is idempotent, so ingest output passes through unchanged
    corpus = lemma_filter(load_corpus(*paths), cfg.lemmas)
    result = detect_stances(corpus, seeds, cfg.gamma, cfg.literal_dilution)
    out = Path(cfg.out)

    vbuf, sbuf, ebuf = io.StringIO(), io.StringIO(), io.StringIO()
    write_valence_csv(result.graph, vbuf)
    write_stance_csv(result.stances, sbuf)
    write_hashtag_edges(result.graph, ebuf)
    counts = result.stances.counts()
    summary = {
        "users": counts,
        "hashtags": len(result.graph.nodes),
        "valenced_hashtags": len(result.graph.valence),
        "gamma": cfg.gamma,
        "literal_dilution": cfg.literal_dilution,
        "top_cooccurring": {s: [[h, w] for h, w in nb]
                            for s, nb in curation_aid(result.graph, cfg.top_k).items()},
    }
    report.atomic_write(out / "valence.csv", vbuf.getvalue())
    report.atomic_write(out / "stance.csv", sbuf.getvalue())
    report.atomic_write(out / "hashtag_edges.csv", ebuf.getvalue())
    report.atomic_write(out / "stance_summary.json", report.to_json(summary))
    print(f"{counts['Pro']} Pro users, {counts['Anti']} Anti users, "
          f"{counts['Unlabeled']} unlabeled; {len(result.graph.valence)}/"
          f"{len(result.graph.nodes)} hashtags valenced")
    return 0


def cmd_analyze(args) -> int:
    cfg = _config(args)
    paths = _default_corpus(cfg)
    stance_path = Path(args.stances) if args.stances else Path(cfg.out) / "stance.csv"
    _require_files([*paths, stance_path])
    if cfg.lexicons is not None:
        _require_files([cfg.lexicons])
    try:
        categories = load_lexicons(cfg.lexicons)
    except LexiconError as exc:
        raise UsageError(f"lexicons: {exc}") from None
    corpus = lemma_filter(load_corpus(*paths), cfg.lemmas)
    with open(stance_path, encoding="utf-8") as fh:
        stances = read_stance_csv(fh)
    deduped = dedupe(corpus)
    ling_corpus = corpus if cfg.raw_counts else deduped
    net_corpus = deduped if cfg.dedup_for_networks else corpus
    out = Path(cfg.out)

    files: dict[str, str] = {}
    pro, anti = split_by_stance(ling_corpus, stances)
    n_pro = len({t.user_id for t in pro})
    n_anti = len({t.user_id for t in anti})
    print(f"{n_pro} Pro users with {len(pro)} Pro tweets, "
          f"{n_anti} Anti users with {len(anti)} Anti tweets")
    if pro and anti:
        stats = linguistic_report(ling_corpus, stances, categories,
                                  StatsConfig(cfg.alpha, cfg.min_user_tweets))
        files["lingstats.csv"] = report.ling_csv(stats)
        files["lingstats.json"] = report.to_json({
            "alpha": cfg.alpha,
            "denominators": "raw" if cfg.raw_counts else "deduplicated",
            "rows": report.ling_rows(stats),
        })
        files["lingstats.txt"] = report.ling_text(stats)
    else:
        print("linguistic report skipped: one of the stance groups has no tweets",
              file=sys.stderr)

    metrics = network_report(net_corpus, stances)
    files["netmetrics.csv"] = report.net_csv(metrics)
    files["netmetrics.json"] = report.to_json({
        "corpus": "deduplicated" if cfg.dedup_for_networks else "full",
        "table": report.net_table(metrics),
        "metrics": {k: m.as_dict() for k, m in metrics.items()},
    })
    files["netmetrics.txt"] = report.net_text(metrics)

    ebuf = io.StringIO()
    write_network_edges(build_networks(net_corpus, stances), ebuf)
    files["network_edges.csv"] = ebuf.getvalue()

    for name, text in files.items():
        report.atomic_write(out / name, text)
    for name in ("lingstats.txt", "netmetrics.txt"):
        if name in files:
            print(files[name], end="")
    return 0


def cmd_synth(args) -> int:
    _require_files([args.params])
    try:
        params = SynthParams.from_dict(json.loads(Path(args.params).read_text("utf-8")))
    except (ValueError, TypeError) as exc:
        raise UsageError(f"invalid synth params: {exc}") from None
    categories = load_lexicons(args.lexicons)
    try:
        corpus, truth = generate(params, categories)
    except ValueError as exc:
        raise UsageError(f"invalid synth params: {exc}") from None
    out = Path(args.out)
    report.atomic_write(out / "corpus.jsonl", _corpus_text(corpus))
    report.atomic_write(out / "truth.json", report.to_json(truth))
    print(f"{len(corpus)} tweets from {len(corpus.users)} users written to {out}")
    return 0


def cmd_report(args) -> int:
    from .lingstats import CategoryStats
    from .netmetrics import GroupNetworkMetrics
    out = Path(args.out or "out")
    shown = False
    ling = out / "lingstats.json"
    if ling.is_file():
        rows = json.loads(ling.read_text("utf-8"))["rows"]
        print(report.ling_text([CategoryStats(**r) for r in rows]), end="")
        shown = True
    net = out / "netmetrics.json"
    if net.is_file():
        if shown:
            print()
        data = json.loads(net.read_text("utf-8"))["metrics"]
        print(report.net_text({k: GroupNetworkMetrics(**v) for k, v in data.items()}), end="")
        shown = True
    if not shown:
        raise UsageError(f"no reports found in {out}; run 'analyze' first")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stancenet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs=True):
        sp.add_argument("--config", help="JSON pipeline config")
        sp.add_argument("--out", help="output directory (default: out)")
        if inputs:
            sp.add_argument("--input", nargs="+", help="JSON Lines corpus file(s)")

    sp = sub.add_parser("ingest", help="parse, lemma-filter and deduplicate a corpus")
    common(sp)
    sp.add_argument("--lemmas", help="comma-separated lemmas (default: vacc,vax)")
    sp.add_argument("--no-dedup", action="store_true", help="skip writing the deduplicated corpus")
    sp.set_defaults(func=cmd_ingest)

    sp = sub.add_parser("stance", help="propagate seed valences and label users")
    common(sp)
    sp.add_argument("--seeds", help="seed file of 'hashtag,valence' lines")
    sp.add_argument("--gamma", type=int, help=f"slack schedule denominator (default {DEFAULT_GAMMA})")
    sp.add_argument("--literal-dilution", action="store_true",
                    help="let unlabeled neighbours count as valence 0")
    sp.set_defaults(func=cmd_stance)

    sp = sub.add_parser("analyze", help="linguistic and network reports per stance group")
    common(sp)
    sp.add_argument("--stances", help="stance CSV (default: <out>/stance.csv)")
    sp.add_argument("--lexicons", help="lexicon JSON (default: bundled)")
    sp.add_argument("--alpha", type=float, help="significance level (default 0.05)")
    sp.add_argument("--dedup-for-networks", action="store_true",
                    help="build interaction networks from deduplicated tweets")
    sp.add_argument("--raw-counts", action="store_true",
                    help="use all tweets, not unique texts, for the linguistic statistics")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("synth", help="generate a planted corpus with ground truth")
    sp.add_argument("--params", required=True, help="JSON synth parameters")
    sp.add_argument("--lexicons", help="lexicon JSON (default: bundled)")
    sp.add_argument("--out", required=True, help="output directory")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("report", help="print the tables from an analyze run")
    sp.add_argument("--out", help="directory holding analyze outputs (default: out)")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get(LOG_ENV, "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"stancenet {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
