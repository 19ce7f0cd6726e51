"""Command-line entry point.

Settings come from an optional INI config file; any flag given on the
command line overrides the corresponding config value.
"""

from __future__ import annotations

import argparse
import sys

from . import pipeline as pl


def _add_common(p):
    p.add_argument("--config", help="INI config file with per-stage sections")
    p.add_argument("--corpus", help="corpus file, one document per line")
    p.add_argument("--titles", help="titles file, one title per line")
    p.add_argument("--stopwords", help="stopword file, one term per line")
    p.add_argument("--names", help="file of common names to drop")
    p.add_argument("--out", help="output directory")
    p.add_argument("--seed", type=int, help="global seed; stage seeds derive from it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicvec",
        description="Document features from LDA and paragraph vectors, "
                    "with KNN search and 2-D maps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="tokenize, filter and index the corpus")
    _add_common(p)
    p.add_argument("--keep-top-n", type=int, help="vocabulary size cap")
    p.add_argument("--min-token-len", type=int)

    p = sub.add_parser("lda-train", help="train the topic model "
                       "(uses OUT/corpus_filtered.txt when present)")
    _add_common(p)
    p.add_argument("--num-topics", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--sweeps", type=int)
    p.add_argument("--burn-in", type=int)
    p.add_argument("--sample-lag", type=int)
    p.add_argument("--readout", choices=["final", "average"])
    p.add_argument("--unnormalized", action="store_true", default=None,
                   help="export expected topic counts instead of normalized rows")

    p = sub.add_parser("lda-topics", help="dump the most probable words per topic")
    _add_common(p)
    p.add_argument("--model", help="model archive (default OUT/lda_model.npz)")
    p.add_argument("--n", type=int, help="words per topic")

    p = sub.add_parser("doc2vec-train", help="train paragraph vectors")
    _add_common(p)
    p.add_argument("--dim", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--min-count", type=int)
    p.add_argument("--mode", choices=["pvdm", "pvdbow"])
    p.add_argument("--subsample", type=float)
    p.add_argument("--max-epochs", type=int)

    p = sub.add_parser("knn", help="rank nearest documents for a query")
    _add_common(p)
    p.add_argument("--features", help="feature CSV, one row per document")
    p.add_argument("--title", help="query by exact title")
    p.add_argument("--index", type=int, help="query by row index")
    p.add_argument("--k", type=int)
    p.add_argument("--metric", choices=["cosine", "euclidean"])

    p = sub.add_parser("tsne", help="project features to two dimensions")
    _add_common(p)
    p.add_argument("--features", help="feature CSV, one row per document")
    p.add_argument("--perplexity", type=float)
    p.add_argument("--iterations", type=int)
    p.add_argument("--learning-rate", type=float)
    p.add_argument("--kernel", choices=["student_t", "gaussian"])

    p = sub.add_parser("pipeline", help="run every stage in order")
    _add_common(p)

    return parser


def _override(obj, attr, value):
    if value is not None:
        setattr(obj, attr, value)


def config_from_args(args) -> pl.PipelineConfig:
    cfg = pl.load_config(args.config) if args.config else pl.PipelineConfig()
    _override(cfg, "corpus_path", args.corpus)
    _override(cfg, "titles_path", args.titles)
    _override(cfg, "stopwords_path", args.stopwords)
    _override(cfg, "names_path", args.names)
    _override(cfg, "out_dir", args.out)
    _override(cfg, "seed", args.seed)

    cmd = args.command
    if cmd == "preprocess":
        _override(cfg.preprocess, "keep_top_n_terms", args.keep_top_n)
        _override(cfg.preprocess, "min_token_len", args.min_token_len)
    elif cmd == "lda-train":
        _override(cfg.lda, "num_topics", args.num_topics)
        _override(cfg.lda, "alpha", args.alpha)
        _override(cfg.lda, "beta", args.beta)
        _override(cfg.lda, "sweeps", args.sweeps)
        _override(cfg.lda, "burn_in", args.burn_in)
        _override(cfg.lda, "sample_lag", args.sample_lag)
        if args.readout:
            cfg.lda.readout = ("final_sample" if args.readout == "final"
                               else "thinned_average")
        _override(cfg, "lda_unnormalized", args.unnormalized)
    elif cmd == "lda-topics":
        _override(cfg, "lda_num_words", args.n)
    elif cmd == "doc2vec-train":
        _override(cfg.doc2vec, "dim", args.dim)
        _override(cfg.doc2vec, "window", args.window)
        _override(cfg.doc2vec, "min_count", args.min_count)
        _override(cfg.doc2vec, "mode", args.mode)
        _override(cfg.doc2vec, "subsample", args.subsample)
        _override(cfg.doc2vec, "max_epochs", args.max_epochs)
    elif cmd == "knn":
        _override(cfg, "knn_title", args.title)
        _override(cfg, "knn_index", args.index)
        _override(cfg, "knn_k", args.k)
        _override(cfg, "knn_metric", args.metric)
    elif cmd == "tsne":
        _override(cfg.tsne, "perplexity", args.perplexity)
        _override(cfg.tsne, "iterations", args.iterations)
        _override(cfg.tsne, "learning_rate", args.learning_rate)
        _override(cfg.tsne, "kernel", args.kernel)

    if args.seed is not None and cmd != "pipeline":
        cfg.apply_seed()  # pipeline applies it itself
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return pl.run(args.command, cfg,
                      features_path=getattr(args, "features", None),
                      model_path=getattr(args, "model", None))
    except Exception as e:
        print(f"topicvec: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
