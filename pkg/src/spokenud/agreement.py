"""Pairwise inter-annotator agreement over UPOS, heads, and relation labels.

Scores are accuracy percentages: POS over UPOS tags, UAS over heads, LAS
over head+label. Raw counts are always kept alongside the percentages, and
reports can be cut into consecutive batches of sentences to follow the
round-by-round annotation workflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterator

from .conllu import Document, Sentence, Token, deprel_universal
from .errors import PairingError

DEFAULT_BATCH_SIZE = 50

SCORED_FIELDS = ("upos", "head", "deprel")


def percent(matches: int, total: int) -> float:
    return 100.0 * matches / total if total else 0.0


def percent_string(matches: int, total: int) -> str:
    """Percentage rendered half-up to one decimal, computed exactly."""
    if total == 0:
        return "0.0"
    value = Decimal(100 * matches) / Decimal(total)
    return str(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PairScore:
    total_tokens: int
    pos_matches: int
    head_matches: int
    labeled_matches: int

    @property
    def pos(self) -> float:
        return percent(self.pos_matches, self.total_tokens)

    @property
    def uas(self) -> float:
        return percent(self.head_matches, self.total_tokens)

    @property
    def las(self) -> float:
        return percent(self.labeled_matches, self.total_tokens)

    def rendered(self) -> tuple[str, str, str]:
        return (
            percent_string(self.pos_matches, self.total_tokens),
            percent_string(self.head_matches, self.total_tokens),
            percent_string(self.labeled_matches, self.total_tokens),
        )

    def to_json(self) -> dict:
        pos, uas, las = self.rendered()
        return {
            "pos": float(pos),
            "uas": float(uas),
            "las": float(las),
            "total_tokens": self.total_tokens,
            "pos_matches": self.pos_matches,
            "head_matches": self.head_matches,
            "labeled_matches": self.labeled_matches,
        }

    def __add__(self, other: "PairScore") -> "PairScore":
        return PairScore(
            self.total_tokens + other.total_tokens,
            self.pos_matches + other.pos_matches,
            self.head_matches + other.head_matches,
            self.labeled_matches + other.labeled_matches,
        )


@dataclass(frozen=True)
class RoundReport:
    batch_size: int
    per_round: tuple[PairScore, ...]
    cumulative: PairScore


@dataclass(frozen=True)
class DisagreementRecord:
    sent_id: str
    token_id: int
    fields_differing: tuple[str, ...]
    value_a: dict
    value_b: dict

    def to_json(self) -> dict:
        return {
            "sent_id": self.sent_id,
            "token_id": self.token_id,
            "fields": list(self.fields_differing),
            "a": dict(self.value_a),
            "b": dict(self.value_b),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DisagreementRecord":
        return cls(data["sent_id"], data["token_id"], tuple(data["fields"]),
                   dict(data["a"]), dict(data["b"]))


def aligned_sentences(a: Document, b: Document) -> Iterator[tuple[Sentence, Sentence]]:
    """Pair up sentences, insisting on identical segmentation and tokenization."""
    if len(a.sentences) != len(b.sentences):
        raise PairingError(
            "SENTENCE_COUNT_MISMATCH",
            f"{a.source_name} has {len(a.sentences)} sentences, "
            f"{b.source_name} has {len(b.sentences)}")
    if not a.sentences:
        raise PairingError("EMPTY_PAIR", "both documents are empty")
    for index, (sa, sb) in enumerate(zip(a.sentences, b.sentences)):
        if sa.sent_id != sb.sent_id:
            raise PairingError(
                "TOKENIZATION_MISMATCH",
                f"sentence {index + 1} is '{sa.sent_id}' in {a.source_name} "
                f"but '{sb.sent_id}' in {b.source_name}")
        if sa.forms != sb.forms:
            for tok_a, tok_b in zip(sa.tokens, sb.tokens):
                if tok_a.form != tok_b.form:
                    raise PairingError(
                        "TOKENIZATION_MISMATCH",
                        f"sentence '{sa.sent_id}' token {tok_a.id}: "
                        f"'{tok_a.form}' vs '{tok_b.form}'")
            raise PairingError(
                "TOKENIZATION_MISMATCH",
                f"sentence '{sa.sent_id}' has {len(sa)} tokens in {a.source_name} "
                f"but {len(sb)} in {b.source_name}")
        yield sa, sb


def _deprel_key(token: Token, universal_only: bool) -> str:
    return deprel_universal(token.deprel) if universal_only else token.deprel


def score_pair(a: Document, b: Document, universal_deprel_only: bool = False,
               ignore_punct: bool = False) -> PairScore:
    """Count matching UPOS / head / head+label over all aligned tokens."""
    total = pos = heads = labeled = 0
    for sa, sb in aligned_sentences(a, b):
        for tok_a, tok_b in zip(sa.tokens, sb.tokens):
            if ignore_punct and tok_a.upos == "PUNCT" and tok_b.upos == "PUNCT":
                continue
            total += 1
            if tok_a.upos == tok_b.upos:
                pos += 1
            if tok_a.head == tok_b.head:
                heads += 1
                if _deprel_key(tok_a, universal_deprel_only) == _deprel_key(tok_b, universal_deprel_only):
                    labeled += 1
    if total == 0:
        raise PairingError("EMPTY_PAIR", "no scorable tokens in the pair")
    return PairScore(total, pos, heads, labeled)


def batch_report(a: Document, b: Document, batch_size: int = DEFAULT_BATCH_SIZE,
                 universal_deprel_only: bool = False,
                 ignore_punct: bool = False) -> RoundReport:
    """Score consecutive batches of `batch_size` sentences plus the whole pair."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    pairs = list(aligned_sentences(a, b))
    rounds: list[PairScore] = []
    for start in range(0, len(pairs), batch_size):
        chunk = pairs[start:start + batch_size]
        sub_a = Document(tuple(sa for sa, _ in chunk), source_name=a.source_name)
        sub_b = Document(tuple(sb for _, sb in chunk), source_name=b.source_name)
        rounds.append(score_pair(sub_a, sub_b, universal_deprel_only, ignore_punct))
    cumulative = rounds[0]
    for score in rounds[1:]:
        cumulative = cumulative + score
    return RoundReport(batch_size, tuple(rounds), cumulative)


def _token_values(token: Token) -> dict:
    return {"upos": token.upos, "head": token.head, "deprel": token.deprel}


def disagreements(a: Document, b: Document) -> list[DisagreementRecord]:
    """One record per token whose UPOS, head, or deprel differs, in document order."""
    records: list[DisagreementRecord] = []
    for sa, sb in aligned_sentences(a, b):
        for tok_a, tok_b in zip(sa.tokens, sb.tokens):
            va, vb = _token_values(tok_a), _token_values(tok_b)
            differing = tuple(f for f in SCORED_FIELDS if va[f] != vb[f])
            if differing:
                records.append(DisagreementRecord(
                    sa.sent_id, tok_a.id, differing,
                    {f: va[f] for f in differing},
                    {f: vb[f] for f in differing}))
    return records


def confusion(a: Document, b: Document, field: str) -> dict[tuple[str, str], int]:
    """Count (value in a, value in b) pairs for 'upos' or 'deprel' over all tokens."""
    if field not in ("upos", "deprel"):
        raise ValueError(f"field must be 'upos' or 'deprel', got {field!r}")
    matrix: dict[tuple[str, str], int] = {}
    for sa, sb in aligned_sentences(a, b):
        for tok_a, tok_b in zip(sa.tokens, sb.tokens):
            if field == "upos":
                key = (tok_a.upos or "_", tok_b.upos or "_")
            else:
                key = (tok_a.deprel, tok_b.deprel)
            matrix[key] = matrix.get(key, 0) + 1
    return matrix


def render_score_table(rows: list[tuple[str, PairScore]]) -> str:
    """Aligned plain-text table with POS, UAS and LAS columns, one row per label."""
    label_width = max(len(label) for label, _ in rows)
    lines = [f"{'':<{label_width}}  {'POS':>5}  {'UAS':>5}  {'LAS':>5}"]
    for label, score in rows:
        pos, uas, las = score.rendered()
        lines.append(f"{label:<{label_width}}  {pos:>5}  {uas:>5}  {las:>5}")
    return "\n".join(lines)


def render_report(report: RoundReport, cumulative_label: str = "All") -> str:
    rows = [(f"Round {i}", score) for i, score in enumerate(report.per_round, start=1)]
    rows.append((cumulative_label, report.cumulative))
    return render_score_table(rows)


def report_to_json(report: RoundReport) -> dict:
    return {
        "batch_size": report.batch_size,
        "rounds": [score.to_json() for score in report.per_round],
        "cumulative": report.cumulative.to_json(),
    }
