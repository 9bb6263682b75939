"""Pipeline configuration: one dataclass, loadable from a flat key-value
file, with CLI flags overriding file values key by key."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .embeddings import GLOVE_TEXT, WORD2VEC_BINARY
from .errors import ConfigError
from .kv import parse_bool, parse_kv_file
from .lsa import DimensionPolicy
from .preprocess import PreprocessConfig
from .rouge import AGG_AVG, AGG_MAX, METRICS, TruncationMode
from .selection import CHARACTERS, SENTENCES, WORDS, SummaryBudget
from .weighting import SCHEMES

_FORMATS = (WORD2VEC_BINARY, GLOVE_TEXT)

_BUDGET_KEYS = {
    "summary_words": WORDS,
    "summary_chars": CHARACTERS,
    "summary_sentences": SENTENCES,
}


@dataclass(frozen=True)
class PipelineConfig:
    scheme: str = "EMBAWEF"
    embeddings: str | None = None
    embedding_format: str = WORD2VEC_BINARY
    dim_policy: DimensionPolicy = field(default_factory=DimensionPolicy.default)
    budget: SummaryBudget | None = None
    truncation: TruncationMode = field(default_factory=TruncationMode.none)
    raw_cosines: bool = False
    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    metrics: tuple[str, ...] = METRICS
    rouge_agg: str = AGG_MAX
    stem: bool = True
    keep_stopwords: bool = True
    workers: int | None = None
    emit_timings: bool = False

    @classmethod
    def from_sources(
        cls,
        config_path: str | Path | None = None,
        overrides: Mapping[str, str] | None = None,
    ) -> "PipelineConfig":
        """Merge a config file (if any) with CLI overrides and validate.

        Overrides use the same keys as the file; a key present in both takes
        its value from the override.
        """
        raw: dict[str, str] = {}
        if config_path is not None:
            raw.update(parse_kv_file(config_path))
        given = {k: v for k, v in (overrides or {}).items() if v is not None}
        # An override within a mutually exclusive group displaces the whole
        # group from the file, not just its own key.
        if any(k in given for k in _BUDGET_KEYS):
            for k in _BUDGET_KEYS:
                raw.pop(k, None)
        if "dims" in given or "dims_ratio" in given:
            raw.pop("dims", None)
            raw.pop("dims_ratio", None)
        raw.update(given)
        return cls.from_mapping(raw)

    @classmethod
    def from_mapping(cls, raw: Mapping[str, str]) -> "PipelineConfig":
        known = {
            "scheme", "embeddings", "embedding_format", "dims", "dims_ratio",
            "summary_words", "summary_chars", "summary_sentences", "truncate",
            "raw_cosines", "stopwords_path", "expand_contractions",
            "case_fold_fallback", "metrics", "rouge_agg", "stem",
            "keep_stopwords", "workers", "emit_timings",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

        kwargs: dict = {}

        if "scheme" in raw:
            scheme = raw["scheme"].upper()
            if scheme not in SCHEMES:
                raise ConfigError(f"unknown scheme {raw['scheme']!r}; expected one of {SCHEMES}")
            kwargs["scheme"] = scheme
        if "embeddings" in raw:
            kwargs["embeddings"] = raw["embeddings"] or None
        if "embedding_format" in raw:
            if raw["embedding_format"] not in _FORMATS:
                raise ConfigError(
                    f"unknown embedding format {raw['embedding_format']!r}; "
                    f"expected one of {_FORMATS}"
                )
            kwargs["embedding_format"] = raw["embedding_format"]

        if "dims" in raw and "dims_ratio" in raw:
            raise ConfigError("dims and dims_ratio are mutually exclusive")
        if "dims" in raw:
            kwargs["dim_policy"] = DimensionPolicy.fixed(_parse_int(raw["dims"], "dims"))
        elif "dims_ratio" in raw:
            try:
                rho = float(raw["dims_ratio"])
            except ValueError:
                raise ConfigError(f"dims_ratio: expected a float, got {raw['dims_ratio']!r}") from None
            if not 0.0 < rho <= 1.0:
                raise ConfigError(f"dims_ratio: must be in (0, 1], got {rho}")
            kwargs["dim_policy"] = DimensionPolicy.ratio(rho)

        budget_keys = [k for k in _BUDGET_KEYS if k in raw]
        if len(budget_keys) > 1:
            raise ConfigError(
                "exactly one summary budget is allowed, got: " + ", ".join(sorted(budget_keys))
            )
        if budget_keys:
            key = budget_keys[0]
            kwargs["budget"] = SummaryBudget(_BUDGET_KEYS[key], _parse_int(raw[key], key))

        if "truncate" in raw:
            kwargs["truncation"] = TruncationMode.parse(raw["truncate"])
        if "raw_cosines" in raw:
            kwargs["raw_cosines"] = parse_bool(raw["raw_cosines"], "raw_cosines")

        pp_kwargs: dict = {}
        if "stopwords_path" in raw:
            pp_kwargs["stopwords_path"] = raw["stopwords_path"] or None
        if "expand_contractions" in raw:
            pp_kwargs["expand_contractions"] = parse_bool(
                raw["expand_contractions"], "expand_contractions"
            )
        if "case_fold_fallback" in raw:
            pp_kwargs["case_fold_fallback"] = parse_bool(
                raw["case_fold_fallback"], "case_fold_fallback"
            )
        if pp_kwargs:
            kwargs["preprocess"] = PreprocessConfig(**pp_kwargs)

        if "metrics" in raw:
            metrics = tuple(m.strip().lower() for m in raw["metrics"].split(",") if m.strip())
            bad = [m for m in metrics if m not in METRICS]
            if bad or not metrics:
                raise ConfigError(f"metrics must be a non-empty subset of {METRICS}")
            kwargs["metrics"] = metrics
        if "rouge_agg" in raw:
            if raw["rouge_agg"] not in (AGG_MAX, AGG_AVG):
                raise ConfigError(f"rouge_agg must be max or avg, got {raw['rouge_agg']!r}")
            kwargs["rouge_agg"] = raw["rouge_agg"]
        if "stem" in raw:
            kwargs["stem"] = parse_bool(raw["stem"], "stem")
        if "keep_stopwords" in raw:
            kwargs["keep_stopwords"] = parse_bool(raw["keep_stopwords"], "keep_stopwords")
        if "workers" in raw:
            kwargs["workers"] = _parse_int(raw["workers"], "workers")
        if "emit_timings" in raw:
            kwargs["emit_timings"] = parse_bool(raw["emit_timings"], "emit_timings")

        return cls(**kwargs)

    def echo(self) -> dict:
        """Result-affecting settings, in stable order, for report embedding.

        Runtime-only knobs (workers, emit_timings) are excluded on purpose:
        reports must be byte-identical across worker pool sizes.
        """
        policy = self.dim_policy
        budget = self.budget
        return {
            "scheme": self.scheme,
            "embeddings": self.embeddings,
            "embedding_format": self.embedding_format if self.embeddings else None,
            "dim_policy": {"kind": policy.kind, "value": policy.value},
            "budget": None if budget is None else {"kind": budget.kind, "limit": budget.limit},
            "truncate": (
                "none"
                if self.truncation.kind == "none"
                else f"{self.truncation.kind}:{self.truncation.limit}"
            ),
            "raw_cosines": self.raw_cosines,
            "stopwords_path": self.preprocess.stopwords_path,
            "expand_contractions": self.preprocess.expand_contractions,
            "case_fold_fallback": self.preprocess.case_fold_fallback,
            "metrics": list(self.metrics),
            "rouge_agg": self.rouge_agg,
            "stem": self.stem,
            "keep_stopwords": self.keep_stopwords,
        }


def _parse_int(value: str, key: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None
    if parsed < 1:
        raise ConfigError(f"{key}: must be >= 1, got {parsed}")
    return parsed
