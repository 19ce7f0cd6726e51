"""End-to-end wiring: declarative config, model persistence, title-keyed
queries, and the stage runners behind the command-line interface."""

from __future__ import annotations

import configparser
import dataclasses
import difflib
import json
import os
import zipfile
from dataclasses import dataclass, field

import numpy as np

from . import corpus as corpus_mod
from . import doc2vec as d2v_mod
from . import lda as lda_mod
from . import neighbors as nn_mod
from . import tsne as tsne_mod
from .autoencoder import FeedforwardNet
from .corpus import Corpus, PreprocessConfig, build_corpus
from .doc2vec import Doc2VecConfig, EmbeddingModel
from .lda import LdaConfig, LdaModel
from .tsne import TsneConfig

ARCHIVE_VERSION = 1

COMMANDS = ("preprocess", "lda-train", "lda-topics", "doc2vec-train",
            "knn", "tsne", "pipeline")


class ArchiveError(Exception):
    pass


class CorruptArchiveError(ArchiveError):
    pass


class VersionMismatchError(ArchiveError):
    pass


class KindMismatchError(ArchiveError):
    pass


class PipelineError(Exception):
    pass


# ---------------------------------------------------------------- persistence

def save_model(model, path) -> None:
    """Write a model to a versioned, self-describing archive."""
    if isinstance(model, LdaModel):
        kind = "lda"
        arrays = {"phi": model.phi, "theta": model.theta,
                  "doc_topic_counts": model.doc_topic_counts}
        extra = {"config": dataclasses.asdict(model.config), "terms": model.terms}
    elif isinstance(model, EmbeddingModel):
        kind = "doc2vec"
        arrays = {"W": model.W, "D": model.D, "U": model.U, "b": model.b,
                  "term_freq": model.term_freq}
        extra = {"config": dataclasses.asdict(model.config),
                 "terms": model.terms, "labels": model.labels}
    elif isinstance(model, FeedforwardNet):
        kind = "ffnet"
        arrays = {}
        for l, (w, b) in enumerate(zip(model.weights, model.biases)):
            arrays[f"w{l}"] = w
            arrays[f"b{l}"] = b
        extra = {"layer_sizes": model.layer_sizes, "activations": model.activations}
    else:
        raise TypeError(f"cannot archive objects of type {type(model).__name__}")
    meta = {"version": ARCHIVE_VERSION, "kind": kind, **extra}
    np.savez(path, __meta__=np.asarray(json.dumps(meta)), **arrays)


def load_model(path, kind: str | None = None):
    """Load a model archive, optionally insisting on a model kind."""
    try:
        with np.load(path, allow_pickle=False) as npz:
            if "__meta__" not in npz.files:
                raise CorruptArchiveError(f"{path}: not a model archive")
            meta = json.loads(str(npz["__meta__"]))
            arrays = {name: npz[name] for name in npz.files if name != "__meta__"}
    except (zipfile.BadZipFile, ValueError, EOFError, OSError, KeyError) as e:
        if isinstance(e, ArchiveError):
            raise
        raise CorruptArchiveError(f"{path}: unreadable archive ({e})") from e

    if meta.get("version") != ARCHIVE_VERSION:
        raise VersionMismatchError(
            f"{path}: archive version {meta.get('version')!r}, "
            f"expected {ARCHIVE_VERSION}")
    if kind is not None and meta["kind"] != kind:
        raise KindMismatchError(f"{path}: holds a {meta['kind']!r} model, "
                                f"expected {kind!r}")

    if meta["kind"] == "lda":
        cfg = LdaConfig(**meta["config"])
        return LdaModel(arrays["phi"], arrays["theta"], cfg,
                        list(meta["terms"]), arrays["doc_topic_counts"])
    if meta["kind"] == "doc2vec":
        cfg = Doc2VecConfig(**meta["config"])
        terms = list(meta["terms"])
        return EmbeddingModel(arrays["W"], arrays["D"], arrays["U"], arrays["b"],
                              cfg, terms, {t: i for i, t in enumerate(terms)},
                              arrays["term_freq"], list(meta["labels"]))
    if meta["kind"] == "ffnet":
        sizes = list(meta["layer_sizes"])
        L = len(sizes) - 1
        return FeedforwardNet(sizes, [arrays[f"w{l}"] for l in range(L)],
                              [arrays[f"b{l}"] for l in range(L)],
                              list(meta["activations"]))
    raise CorruptArchiveError(f"{path}: unknown model kind {meta['kind']!r}")


# ------------------------------------------------------------------- queries

def title_lookup(titles: list[str], name: str) -> int:
    """Index of the first document whose title matches exactly."""
    try:
        return titles.index(name)
    except ValueError:
        close = difflib.get_close_matches(name, titles, n=3, cutoff=0.0)
        raise KeyError(f"unknown title {name!r}; closest matches: {close}") from None


# -------------------------------------------------------------------- config

@dataclass
class PipelineConfig:
    corpus_path: str = ""
    titles_path: str = ""
    stopwords_path: str | None = None
    names_path: str | None = None
    out_dir: str = "out"
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    lda: LdaConfig = field(default_factory=LdaConfig)
    doc2vec: Doc2VecConfig = field(default_factory=Doc2VecConfig)
    tsne: TsneConfig = field(default_factory=TsneConfig)
    knn_k: int = 20
    knn_metric: str = "cosine"
    knn_title: str | None = None
    knn_index: int = 0
    lda_num_words: int = 20
    lda_unnormalized: bool = False
    seed: int = 0

    def apply_seed(self) -> None:
        """Derive per-stage seeds from the global seed."""
        self.lda.seed = self.seed + 1
        self.doc2vec.seed = self.seed + 2
        self.tsne.seed = self.seed + 3


def _set_fields(obj, section):
    hints = {f.name: f for f in dataclasses.fields(obj)}
    for key, raw in section.items():
        if key not in hints:
            raise PipelineError(f"unknown config key {key!r} in [{section.name}]")
        current = getattr(obj, key)
        if isinstance(current, bool):
            setattr(obj, key, raw.strip().lower() in ("1", "true", "yes", "on"))
        elif isinstance(current, int):
            setattr(obj, key, int(raw))
        elif isinstance(current, float) or key in ("alpha", "beta"):
            setattr(obj, key, float(raw))
        else:
            setattr(obj, key, raw)


def load_config(path) -> PipelineConfig:
    """Read the INI-style config: one section per stage plus [paths], [knn]
    and [run]."""
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise PipelineError(f"cannot read config file {path}")
    cfg = PipelineConfig()
    for name in parser.sections():
        section = parser[name]
        if name == "paths":
            cfg.corpus_path = section.get("corpus", cfg.corpus_path)
            cfg.titles_path = section.get("titles", cfg.titles_path)
            cfg.stopwords_path = section.get("stopwords", cfg.stopwords_path)
            cfg.names_path = section.get("names", cfg.names_path)
            cfg.out_dir = section.get("out_dir", cfg.out_dir)
        elif name == "preprocess":
            _set_fields(cfg.preprocess, section)
        elif name == "lda":
            extras = {k: section.pop(k) for k in ("num_words", "unnormalized")
                      if k in section}
            _set_fields(cfg.lda, section)
            if "num_words" in extras:
                cfg.lda_num_words = int(extras["num_words"])
            if "unnormalized" in extras:
                cfg.lda_unnormalized = extras["unnormalized"].lower() in (
                    "1", "true", "yes", "on")
        elif name == "doc2vec":
            _set_fields(cfg.doc2vec, section)
        elif name == "tsne":
            _set_fields(cfg.tsne, section)
        elif name == "knn":
            cfg.knn_k = section.getint("k", cfg.knn_k)
            cfg.knn_metric = section.get("metric", cfg.knn_metric)
            cfg.knn_title = section.get("title", cfg.knn_title)
            cfg.knn_index = section.getint("index", cfg.knn_index)
        elif name == "run":
            cfg.seed = section.getint("seed", cfg.seed)
        else:
            raise PipelineError(f"unknown config section [{name}]")
    return cfg


# ------------------------------------------------------------------- exports

def write_matrix_csv(path, matrix) -> None:
    """Comma-separated rows at full (round-trippable) precision."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    with open(path, "w", encoding="utf-8") as f:
        for row in matrix:
            f.write(",".join(repr(float(v)) for v in row) + "\n")


def load_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def _out(cfg: PipelineConfig, name: str) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return os.path.join(cfg.out_dir, name)


# -------------------------------------------------------------------- stages

def _load_titles(cfg: PipelineConfig) -> list[str]:
    if not cfg.titles_path:
        raise PipelineError("no titles file configured")
    return corpus_mod.load_lines(cfg.titles_path)


def run_preprocess(cfg: PipelineConfig) -> Corpus:
    """Raw text in, filtered token corpus out (written next to the other
    artifacts as corpus_filtered.txt)."""
    if not cfg.corpus_path:
        raise PipelineError("no corpus file configured")
    raw = corpus_mod.load_lines(cfg.corpus_path)
    titles = _load_titles(cfg)
    if len(raw) != len(titles):
        raise PipelineError(
            f"corpus has {len(raw)} lines but titles file has {len(titles)}")
    pcfg = cfg.preprocess
    if cfg.stopwords_path:
        pcfg = dataclasses.replace(
            pcfg, stopwords=corpus_mod.load_stopwords(cfg.stopwords_path))
    if cfg.names_path:
        pcfg = dataclasses.replace(
            pcfg, drop_names=corpus_mod.load_stopwords(cfg.names_path))
    docs = [corpus_mod.preprocess_document(line, pcfg) for line in raw]
    corp = build_corpus(docs, titles)
    corp = corpus_mod.filter_vocabulary(corp, pcfg.keep_top_n_terms,
                                        pcfg.score_aggregate)
    tokens = [[corp.vocab.id_to_term[t] for t in doc.tokens] for doc in corp.docs]
    corpus_mod.write_token_file(_out(cfg, "corpus_filtered.txt"), tokens)
    return corp


def _load_token_corpus(cfg: PipelineConfig) -> Corpus:
    """Build a corpus from an already-tokenized file (one doc per line)."""
    filtered = os.path.join(cfg.out_dir, "corpus_filtered.txt")
    path = filtered if os.path.exists(filtered) else cfg.corpus_path
    if not path:
        raise PipelineError("no corpus file configured")
    docs = corpus_mod.load_token_file(path)
    titles = _load_titles(cfg)
    if len(docs) != len(titles):
        raise PipelineError(
            f"corpus has {len(docs)} documents but titles file has {len(titles)}")
    return build_corpus(docs, titles)


def run_lda_train(cfg: PipelineConfig) -> LdaModel:
    corp = _load_token_corpus(cfg)
    model = lda_mod.train(corp, cfg.lda)
    save_model(model, _out(cfg, "lda_model.npz"))
    if cfg.lda_unnormalized:
        features = model.doc_topic_counts + cfg.lda.alpha_vec()
    else:
        features = model.theta
    write_matrix_csv(_out(cfg, "lda_theta.csv"), features)
    return model


def run_lda_topics(cfg: PipelineConfig, model_path: str | None = None) -> str:
    path = model_path or os.path.join(cfg.out_dir, "lda_model.npz")
    model = load_model(path, kind="lda")
    text = lda_mod.format_topics(model, cfg.lda_num_words)
    with open(_out(cfg, "lda_topics.txt"), "w", encoding="utf-8") as f:
        f.write(text)
    return text


def run_doc2vec_train(cfg: PipelineConfig) -> EmbeddingModel:
    corp = _load_token_corpus(cfg)
    model = d2v_mod.train(corp, cfg.doc2vec)
    save_model(model, _out(cfg, "doc2vec_model.npz"))
    write_matrix_csv(_out(cfg, "doc2vec_vectors.csv"), model.D)
    return model


def run_knn(cfg: PipelineConfig, features_path: str,
            out_name: str = "knn.tsv") -> str:
    features = load_matrix_csv(features_path)
    titles = _load_titles(cfg)
    if features.shape[0] != len(titles):
        raise PipelineError("feature rows do not match the titles file")
    if cfg.knn_title is not None:
        index = title_lookup(titles, cfg.knn_title)
    else:
        index = cfg.knn_index
    result = nn_mod.knn(features, index, cfg.knn_k, cfg.knn_metric)
    listing = nn_mod.format_listing(result, titles)
    with open(_out(cfg, out_name), "w", encoding="utf-8") as f:
        f.write(listing)
    return listing


def run_tsne(cfg: PipelineConfig, features_path: str,
             out_name: str = "tsne.csv") -> np.ndarray:
    features = load_matrix_csv(features_path)
    titles = _load_titles(cfg)
    if features.shape[0] != len(titles):
        raise PipelineError("feature rows do not match the titles file")
    layout = tsne_mod.run(features, cfg.tsne)
    write_matrix_csv(_out(cfg, out_name), layout.Y)
    return layout.Y


def run_pipeline(cfg: PipelineConfig) -> None:
    """All stages in order, on both feature sets."""
    cfg.apply_seed()
    run_preprocess(cfg)
    run_lda_train(cfg)
    run_lda_topics(cfg)
    run_doc2vec_train(cfg)
    run_knn(cfg, os.path.join(cfg.out_dir, "lda_theta.csv"), "knn_lda.tsv")
    run_knn(cfg, os.path.join(cfg.out_dir, "doc2vec_vectors.csv"),
            "knn_doc2vec.tsv")
    run_tsne(cfg, os.path.join(cfg.out_dir, "lda_theta.csv"), "lda_tsne.csv")
    base = cfg.tsne.seed
    cfg.tsne.seed = base + 1  # independent layout noise for the second map
    try:
        run_tsne(cfg, os.path.join(cfg.out_dir, "doc2vec_vectors.csv"),
                 "doc2vec_tsne.csv")
    finally:
        cfg.tsne.seed = base


def run(command: str, cfg: PipelineConfig,
        features_path: str | None = None,
        model_path: str | None = None) -> int:
    """Dispatch one CLI command; raises on failure, returns 0 on success."""
    if command not in COMMANDS:
        raise PipelineError(f"unknown command {command!r}")
    if command == "preprocess":
        run_preprocess(cfg)
    elif command == "lda-train":
        run_lda_train(cfg)
    elif command == "lda-topics":
        print(run_lda_topics(cfg, model_path), end="")
    elif command == "doc2vec-train":
        run_doc2vec_train(cfg)
    elif command == "knn":
        if not features_path:
            raise PipelineError("knn needs a --features file")
        print(run_knn(cfg, features_path), end="")
    elif command == "tsne":
        if not features_path:
            raise PipelineError("tsne needs a --features file")
        run_tsne(cfg, features_path)
    else:
        run_pipeline(cfg)
    return 0
