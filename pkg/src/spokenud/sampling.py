"""Select code-switched utterances for annotation and report language-mix stats.

A switch point is a boundary between adjacent language-tagged tokens whose
tags differ. Untagged tokens and 'und' are transparent: they are skipped
when looking at adjacency and never create switch points. 'mixed' differs
from both 'fy' and 'nl'.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .conllu import Document, Sentence
from .errors import SamplingError

_SWITCHABLE = frozenset({"fy", "nl", "mixed"})

UNTAGGED = "none"


def switch_points(sentence: Sentence) -> int:
    """Number of adjacent differing-tag pairs after skipping transparent tokens."""
    tags = [t.lang for t in sentence.tokens if t.lang in _SWITCHABLE]
    return sum(1 for previous, current in zip(tags, tags[1:]) if previous != current)


@dataclass(frozen=True)
class SwitchStats:
    utterance_count: int
    switched_utterance_count: int
    switch_points_total: int
    tokens_per_lang: dict[str, int]

    def to_json(self) -> dict:
        return {
            "utterance_count": self.utterance_count,
            "switched_utterance_count": self.switched_utterance_count,
            "switch_points_total": self.switch_points_total,
            "tokens_per_lang": dict(sorted(self.tokens_per_lang.items())),
        }

    def render(self) -> str:
        lines = [
            f"utterances           {self.utterance_count}",
            f"with switch point    {self.switched_utterance_count}",
            f"switch points total  {self.switch_points_total}",
        ]
        for lang, count in sorted(self.tokens_per_lang.items()):
            lines.append(f"tokens [{lang}]{' ' * max(1, 10 - len(lang))}{count}")
        return "\n".join(lines)


def stats(doc: Document) -> SwitchStats:
    """Aggregate switch points and per-language token counts over a document."""
    switched = 0
    points_total = 0
    per_lang: dict[str, int] = {}
    for sent in doc.sentences:
        points = switch_points(sent)
        points_total += points
        if points:
            switched += 1
        for tok in sent.tokens:
            lang = tok.lang if tok.lang is not None else UNTAGGED
            per_lang[lang] = per_lang.get(lang, 0) + 1
    return SwitchStats(len(doc.sentences), switched, points_total, per_lang)


def sample(doc: Document, n: int, require_switch: bool = False, seed: int = 0) -> Document:
    """Uniform sample of n sentences without replacement, original order kept.

    With require_switch only sentences containing at least one switch point
    are eligible. Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    eligible = [i for i, sent in enumerate(doc.sentences)
                if not require_switch or switch_points(sent) >= 1]
    if len(eligible) < n:
        raise SamplingError(
            "NOT_ENOUGH_ELIGIBLE",
            f"requested {n} utterances but only {len(eligible)} are eligible")
    rng = random.Random(seed)
    chosen = sorted(rng.sample(eligible, n))
    return Document(tuple(doc.sentences[i] for i in chosen),
                    source_name=f"sample:{doc.source_name}")
