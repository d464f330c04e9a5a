"""Merge two annotators' documents into a gold file via recorded resolutions.

A session holds both documents, the list of token-level disagreements, and
the resolutions made so far. Annotator A is the merge base: only the scored
fields (upos, head, deprel) of resolved tokens are replaced. Sessions are
saved as a single JSON file, written atomically after every mutation.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import NamedTuple

from . import conllu
from .agreement import (
    DisagreementRecord,
    PairScore,
    aligned_sentences,
    disagreements,
    score_pair,
)
from .conllu import Document, Sentence, Token, UPOS_TAGS, is_valid_deprel
from .errors import AdjudicationError, PairingError
from .validation import SEVERITY_ERROR, validate_structure

SESSION_VERSION = 1

CHOICES = ("take_a", "take_b", "custom")

UNRESOLVED_KEY = "Unresolved"


def _now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class CustomValues:
    upos: str | None
    head: int
    deprel: str

    def to_json(self) -> dict:
        return {"upos": self.upos, "head": self.head, "deprel": self.deprel}

    @classmethod
    def from_json(cls, data: dict) -> "CustomValues":
        return cls(data.get("upos"), data["head"], data["deprel"])


@dataclass(frozen=True)
class Resolution:
    sent_id: str
    token_id: int
    choice: str
    custom_values: CustomValues | None = None
    note: str | None = None
    timestamp: datetime = field(default_factory=_now)

    def to_json(self) -> dict:
        return {
            "sent_id": self.sent_id,
            "token_id": self.token_id,
            "choice": self.choice,
            "custom_values": self.custom_values.to_json() if self.custom_values else None,
            "note": self.note,
            "timestamp": self.timestamp.isoformat(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Resolution":
        custom = data.get("custom_values")
        return cls(
            sent_id=data["sent_id"],
            token_id=data["token_id"],
            choice=data["choice"],
            custom_values=CustomValues.from_json(custom) if custom else None,
            note=data.get("note"),
            timestamp=datetime.fromisoformat(data["timestamp"]),
        )


class Progress(NamedTuple):
    resolved: int
    total: int
    provisional: PairScore


@dataclass
class AdjudicationSession:
    doc_a: Document
    doc_b: Document
    annotator_names: tuple[str, str]
    records: list[DisagreementRecord]
    resolutions: dict[tuple[str, int], Resolution] = field(default_factory=dict)
    created: datetime = field(default_factory=_now)
    modified: datetime = field(default_factory=_now)

    def record_for(self, sent_id: str, token_id: int) -> DisagreementRecord | None:
        for record in self.records:
            if record.sent_id == sent_id and record.token_id == token_id:
                return record
        return None

    def sentence_a(self, sent_id: str) -> Sentence:
        for sent in self.doc_a.sentences:
            if sent.sent_id == sent_id:
                return sent
        raise AdjudicationError("UNKNOWN_RECORD", f"no sentence '{sent_id}' in the session")


def create_session(a: Document, b: Document, names: tuple[str, str]) -> AdjudicationSession:
    """Start a session over two token-identical documents."""
    records = disagreements(a, b)
    now = _now()
    return AdjudicationSession(a, b, (names[0], names[1]), records,
                               created=now, modified=now)


def _validate_custom(session: AdjudicationSession, r: Resolution) -> None:
    values = r.custom_values
    if values is None:
        raise AdjudicationError("INVALID_CUSTOM_DEPREL",
                                "choice 'custom' requires custom_values")
    sent = session.sentence_a(r.sent_id)
    if not isinstance(values.head, int) or not 0 <= values.head <= len(sent) \
            or values.head == r.token_id:
        raise AdjudicationError(
            "INVALID_CUSTOM_HEAD",
            f"head {values.head!r} is not a valid attachment for token {r.token_id} "
            f"of the {len(sent)}-token sentence '{r.sent_id}'")
    if not is_valid_deprel(values.deprel):
        raise AdjudicationError("INVALID_CUSTOM_DEPREL",
                                f"'{values.deprel}' is not a universal relation label")
    if values.upos is not None and values.upos not in UPOS_TAGS:
        raise AdjudicationError("INVALID_CUSTOM_UPOS",
                                f"'{values.upos}' is not a universal POS tag")


def apply_resolution(session: AdjudicationSession, r: Resolution) -> AdjudicationSession:
    """Store a resolution; re-applying to the same token overwrites."""
    if r.choice not in CHOICES:
        raise AdjudicationError("INVALID_CHOICE",
                                f"unknown choice {r.choice!r}, expected one of {CHOICES}")
    if session.record_for(r.sent_id, r.token_id) is None:
        raise AdjudicationError(
            "UNKNOWN_RECORD",
            f"no disagreement recorded for token {r.token_id} of sentence '{r.sent_id}'")
    if r.choice == "custom":
        _validate_custom(session, r)
    session.resolutions[(r.sent_id, r.token_id)] = r
    session.modified = _now()
    return session


def remove_resolution(session: AdjudicationSession, sent_id: str, token_id: int) -> AdjudicationSession:
    if (sent_id, token_id) not in session.resolutions:
        raise AdjudicationError(
            "UNKNOWN_RECORD",
            f"no resolution stored for token {token_id} of sentence '{sent_id}'")
    del session.resolutions[(sent_id, token_id)]
    session.modified = _now()
    return session


def _resolved_token(token: Token, other: Token, r: Resolution) -> Token:
    if r.choice == "take_a":
        return token
    if r.choice == "take_b":
        return token.with_annotation(other.upos, other.head, other.deprel)
    values = r.custom_values
    return token.with_annotation(values.upos, values.head, values.deprel)


def merged_document(session: AdjudicationSession, flag_unresolved: bool = False) -> Document:
    """Document A with every resolved token's scored fields replaced.

    Unresolved disagreements keep A's values; with flag_unresolved they are
    additionally marked Unresolved=Yes in MISC.
    """
    by_sentence: dict[str, dict[int, DisagreementRecord]] = {}
    for record in session.records:
        by_sentence.setdefault(record.sent_id, {})[record.token_id] = record
    sentences = []
    for sent_a, sent_b in zip(session.doc_a.sentences, session.doc_b.sentences):
        pending = by_sentence.get(sent_a.sent_id, {})
        if not pending:
            sentences.append(sent_a)
            continue
        tokens = []
        for position, token in enumerate(sent_a.tokens):
            if token.id in pending:
                resolution = session.resolutions.get((sent_a.sent_id, token.id))
                if resolution is not None:
                    token = _resolved_token(token, sent_b.tokens[position], resolution)
                elif flag_unresolved:
                    token = token.with_misc_entry(UNRESOLVED_KEY, "Yes")
            tokens.append(token)
        sentences.append(replace(sent_a, tokens=tuple(tokens)))
    return Document(tuple(sentences), source_name="<merged>")


def export_gold(session: AdjudicationSession, allow_partial: bool = False) -> Document:
    """Produce the merged gold document, refusing to emit an invalid tree."""
    unresolved = [r for r in session.records
                  if (r.sent_id, r.token_id) not in session.resolutions]
    if unresolved and not allow_partial:
        sample = ", ".join(f"{r.sent_id}:{r.token_id}" for r in unresolved[:5])
        raise AdjudicationError(
            "UNRESOLVED_REMAIN",
            f"{len(unresolved)} of {len(session.records)} disagreements unresolved "
            f"(first: {sample})")
    merged = merged_document(session, flag_unresolved=allow_partial)
    errors = [d for d in validate_structure(merged) if d.severity == SEVERITY_ERROR]
    if errors:
        bad_sentences = {d.sent_id for d in errors}
        involved = [f"{sid}:{tid}" for (sid, tid) in sorted(session.resolutions)
                    if sid in bad_sentences]
        detail = "; ".join(d.render() for d in errors[:5])
        raise AdjudicationError(
            "EXPORT_INVALID_TREE",
            f"merged document fails validation ({detail}) — "
            f"resolutions involved: {', '.join(involved) or 'none'}")
    return merged


def progress(session: AdjudicationSession) -> Progress:
    """Resolved/total counts plus a provisional score of A against the merge."""
    resolved = len(session.resolutions)
    total = len(session.records)
    if session.doc_a.token_count == 0:
        provisional = PairScore(0, 0, 0, 0)  # vacuous; only possible on degenerate docs
    else:
        provisional = score_pair(session.doc_a, merged_document(session))
    return Progress(resolved, total, provisional)


def session_to_json(session: AdjudicationSession) -> dict:
    return {
        "version": SESSION_VERSION,
        "annotators": list(session.annotator_names),
        "created": session.created.isoformat(),
        "modified": session.modified.isoformat(),
        "doc_a": conllu.serialize(session.doc_a),
        "doc_b": conllu.serialize(session.doc_b),
        "records": [record.to_json() for record in session.records],
        "resolutions": [r.to_json() for r in session.resolutions.values()],
    }


def session_from_json(data: dict) -> AdjudicationSession:
    if data.get("version") != SESSION_VERSION:
        raise AdjudicationError("BAD_SESSION_FILE",
                                f"unsupported session version {data.get('version')!r}")
    try:
        doc_a = conllu.parse(data["doc_a"], strictness="permissive", source_name="doc_a")
        doc_b = conllu.parse(data["doc_b"], strictness="permissive", source_name="doc_b")
        records = [DisagreementRecord.from_json(r) for r in data["records"]]
        resolutions = {(r["sent_id"], r["token_id"]): Resolution.from_json(r)
                       for r in data["resolutions"]}
        names = (data["annotators"][0], data["annotators"][1])
        created = datetime.fromisoformat(data["created"])
        modified = datetime.fromisoformat(data["modified"])
        for _ in aligned_sentences(doc_a, doc_b):
            pass
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise AdjudicationError("BAD_SESSION_FILE", f"malformed session file: {exc}") from exc
    except PairingError as exc:
        raise AdjudicationError("BAD_SESSION_FILE",
                                f"session documents no longer align: {exc}") from exc
    session = AdjudicationSession(doc_a, doc_b, names, records,
                                  resolutions, created, modified)
    for key in resolutions:
        if session.record_for(*key) is None:
            raise AdjudicationError("BAD_SESSION_FILE",
                                    f"resolution {key} does not address a recorded disagreement")
    return session


def save_session(session: AdjudicationSession, path: str | Path) -> None:
    """Write the session JSON atomically (temp file + rename, fsynced)."""
    path = Path(path)
    payload = json.dumps(session_to_json(session), ensure_ascii=False, indent=2)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def load_session(path: str | Path) -> AdjudicationSession:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AdjudicationError("BAD_SESSION_FILE", f"not valid JSON: {exc}") from exc
    return session_from_json(data)
