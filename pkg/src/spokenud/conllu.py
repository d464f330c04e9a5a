"""Data model and reader/writer for CoNLL-U files with per-token language tags.

Documents are immutable after construction; parsing and serialization are
pure functions. Multiword-token ranges and empty nodes (decimal ids) are
preserved verbatim but take no part in the dependency tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from .errors import ParseError

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

UNIVERSAL_DEPRELS = frozenset({
    "acl", "advcl", "advmod", "amod", "appos", "aux", "case", "cc", "ccomp",
    "clf", "compound", "conj", "cop", "csubj", "dep", "det", "discourse",
    "dislocated", "expl", "fixed", "flat", "goeswith", "iobj", "list",
    "mark", "nmod", "nsubj", "nummod", "obj", "obl", "orphan", "parataxis",
    "punct", "reparandum", "root", "vocative", "xcomp",
})

LANG_TAGS = frozenset({"fy", "nl", "mixed", "und"})
LANG_KEY = "Lang"

DEPREL_PATTERN = re.compile(r"^[a-z]+(:[a-z]+)?$")

_MWT_ID = re.compile(r"^(\d+)-(\d+)$")
_EMPTY_ID = re.compile(r"^(\d+)\.\d+$")
_TOKEN_ID = re.compile(r"^\d+$")
_SENT_ID_COMMENT = re.compile(r"^#\s*sent_id\s*=\s*(.*)$")
_TEXT_COMMENT = re.compile(r"^#\s*text\s*=\s*(.*)$")

NUM_COLUMNS = 10

KVPairs = tuple  # ordered (key, value) pairs; value None for bare flags


def deprel_universal(deprel: str) -> str:
    """Universal part of a relation label (subtype after ':' stripped)."""
    return deprel.split(":", 1)[0]


def is_valid_deprel(deprel: str) -> bool:
    """True if label matches universal(:subtype)? with a known universal part."""
    return bool(DEPREL_PATTERN.match(deprel)) and deprel_universal(deprel) in UNIVERSAL_DEPRELS


@dataclass(frozen=True)
class Token:
    """One syntactic word. head is None only in permissively parsed drafts."""

    id: int
    form: str
    lemma: str | None = None
    upos: str | None = None
    xpos: str | None = None
    feats: KVPairs = ()
    head: int | None = None
    deprel: str = "_"
    deps: str = "_"
    misc: KVPairs = ()

    @property
    def lang(self) -> str | None:
        for key, value in self.misc:
            if key == LANG_KEY:
                return value
        return None

    @property
    def deprel_universal(self) -> str:
        return deprel_universal(self.deprel)

    def with_annotation(self, upos: str | None, head: int | None, deprel: str) -> "Token":
        """Copy of this token with the three adjudicated fields replaced."""
        return replace(self, upos=upos, head=head, deprel=deprel)

    def with_misc_entry(self, key: str, value: str | None) -> "Token":
        kept = tuple(pair for pair in self.misc if pair[0] != key)
        return replace(self, misc=kept + ((key, value),))


@dataclass(frozen=True)
class MWTRange:
    """A multiword-token line, kept verbatim for round-tripping."""

    start: int
    end: int
    form: str
    line: str


@dataclass(frozen=True)
class EmptyNode:
    """An empty-node line (decimal id), kept verbatim after its anchor token."""

    anchor: int
    line: str


@dataclass(frozen=True)
class Sentence:
    sent_id: str
    tokens: tuple[Token, ...]
    text: str | None = None
    comments: tuple[str, ...] = ()
    mwt_ranges: tuple[MWTRange, ...] = ()
    empty_nodes: tuple[EmptyNode, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, token_id: int) -> Token:
        return self.tokens[token_id - 1]

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass(frozen=True)
class ParseIssue:
    """A structural violation recorded in permissive mode."""

    code: str
    message: str
    sent_id: str | None = None
    line_no: int | None = None


@dataclass(frozen=True)
class Document:
    sentences: tuple[Sentence, ...]
    source_name: str = field(default="<string>", compare=False)
    issues: tuple[ParseIssue, ...] = field(default=(), compare=False)

    def __iter__(self) -> Iterator[Sentence]:
        return iter(self.sentences)

    def __len__(self) -> int:
        return len(self.sentences)

    @property
    def token_count(self) -> int:
        return sum(len(s) for s in self.sentences)


class _IssueLog:
    """Collects issues in permissive mode, raises on the first in strict mode."""

    def __init__(self, strict: bool):
        self.strict = strict
        self.issues: list[ParseIssue] = []

    def report(self, code: str, message: str, sent_id: str | None = None,
               line_no: int | None = None) -> None:
        if self.strict:
            where = f" (line {line_no})" if line_no is not None else ""
            sent = f" in sentence '{sent_id}'" if sent_id else ""
            raise ParseError(code, f"{message}{sent}{where}")
        self.issues.append(ParseIssue(code, message, sent_id, line_no))


def _split_pairs(column: str) -> KVPairs:
    """FEATS/MISC column to ordered (key, value) pairs; '_' means absent."""
    if column == "_":
        return ()
    pairs = []
    for part in column.split("|"):
        if "=" in part:
            key, value = part.split("=", 1)
            pairs.append((key, value))
        else:
            pairs.append((part, None))
    return tuple(pairs)


def _join_pairs(pairs: KVPairs) -> str:
    if not pairs:
        return "_"
    return "|".join(k if v is None else f"{k}={v}" for k, v in pairs)


def _absent(value: str | None) -> str:
    return "_" if value is None else value


def find_cycles(tokens: Iterable[Token]) -> list[list[int]]:
    """All head-relation cycles among the given tokens, each as a sorted id list.

    Heads that are None, 0, or point outside the sentence terminate the walk
    (such problems are reported separately).
    """
    token_ids = {t.id for t in tokens}
    head_of = {t.id: t.head for t in tokens}
    color: dict[int, int] = {}  # 0 in progress, 1 done
    cycles: list[list[int]] = []
    for start in head_of:
        if start in color:
            continue
        path: list[int] = []
        node: int | None = start
        while node is not None and node in token_ids and node not in color:
            color[node] = 0
            path.append(node)
            node = head_of[node]
            if node is not None and color.get(node) == 0:
                cycles.append(sorted(path[path.index(node):]))
                break
        for visited in path:
            color[visited] = 1
    return cycles


def _check_sentence(sent: Sentence, log: _IssueLog, line_no: int | None) -> None:
    """Structural checks shared by strict and permissive parsing."""
    ids = [t.id for t in sent.tokens]
    if ids != list(range(1, len(ids) + 1)):
        log.report("BAD_ID_SEQUENCE",
                   f"token ids are {ids}, expected 1..{len(ids)}",
                   sent.sent_id, line_no)
        return  # head checks are meaningless against a broken id sequence
    n = len(ids)
    heads_known = True
    for tok in sent.tokens:
        if tok.head is None:
            heads_known = False
        elif tok.head < 0 or tok.head > n:
            log.report("HEAD_OUT_OF_RANGE",
                       f"token {tok.id} has head {tok.head}, valid range is 0..{n}",
                       sent.sent_id, line_no)
    cycles = find_cycles(sent.tokens)
    for cycle in cycles:
        log.report("CYCLE",
                   "head relation contains a cycle through tokens "
                   + ", ".join(str(i) for i in cycle),
                   sent.sent_id, line_no)
    roots = [t.id for t in sent.tokens if t.head == 0]
    if len(roots) > 1:
        log.report("MULTIPLE_ROOTS",
                   "tokens " + ", ".join(str(i) for i in roots) + " all attach to 0",
                   sent.sent_id, line_no)
    elif not roots and heads_known and not cycles:
        # a cycle already explains the missing root
        log.report("NO_ROOT", "no token attaches to 0", sent.sent_id, line_no)


def _parse_token_line(line: str, line_no: int, log: _IssueLog, sent_id: str) -> Token | None:
    cols = line.split("\t")
    if len(cols) != NUM_COLUMNS:
        log.report("MALFORMED_LINE",
                   f"{len(cols)} columns instead of {NUM_COLUMNS}: {line!r}",
                   sent_id, line_no)
        if len(cols) < 2:
            return None
        cols = (cols + ["_"] * NUM_COLUMNS)[:NUM_COLUMNS]
    raw_id, form, lemma, upos, xpos, feats, head, deprel, deps, misc = cols
    if not _TOKEN_ID.match(raw_id):
        log.report("MALFORMED_LINE", f"unparseable token id {raw_id!r}", sent_id, line_no)
        return None
    if form == "":
        log.report("MALFORMED_LINE", "empty FORM column", sent_id, line_no)
        form = "_"
    if head == "_":
        head_value: int | None = None
        log.report("MALFORMED_LINE", f"token {raw_id} has no head", sent_id, line_no)
    else:
        try:
            head_value = int(head)
        except ValueError:
            log.report("MALFORMED_LINE", f"unparseable head {head!r}", sent_id, line_no)
            head_value = None
    return Token(
        id=int(raw_id),
        form=form,
        lemma=None if lemma == "_" else lemma,
        upos=None if upos == "_" else upos,
        xpos=None if xpos == "_" else xpos,
        feats=_split_pairs(feats),
        head=head_value,
        deprel=deprel,
        deps=deps,
        misc=_split_pairs(misc),
    )


def parse(text: str, strictness: str = "strict", source_name: str = "<string>") -> Document:
    """Parse CoNLL-U text into a Document.

    In strict mode the first structural violation raises ParseError; in
    permissive mode violations become ParseIssues on the returned Document
    and the offending sentences are retained.
    """
    if strictness not in ("strict", "permissive"):
        raise ValueError(f"unknown strictness {strictness!r}")
    log = _IssueLog(strict=strictness == "strict")

    blocks: list[tuple[int, list[str]]] = []  # (line_no of first line, lines)
    current: list[str] = []
    current_start = 0
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip()
        if line == "":
            if current:
                blocks.append((current_start, current))
                current = []
        else:
            if not current:
                current_start = line_no
            current.append(line)
    if current:
        blocks.append((current_start, current))
    if not blocks:
        raise ParseError("EMPTY_INPUT", "no sentences found in input")

    sentences: list[Sentence] = []
    seen_ids: dict[str, int] = {}
    for ordinal, (start_line, lines) in enumerate(blocks, start=1):
        comments: list[str] = []
        sent_id = f"s{ordinal}"
        sent_text: str | None = None
        tokens: list[Token] = []
        mwt_ranges: list[MWTRange] = []
        empty_nodes: list[EmptyNode] = []
        for offset, line in enumerate(lines):
            line_no = start_line + offset
            if line.startswith("#"):
                comments.append(line)
                id_match = _SENT_ID_COMMENT.match(line)
                text_match = _TEXT_COMMENT.match(line)
                if id_match:
                    sent_id = id_match.group(1).strip()
                elif text_match and sent_text is None:
                    sent_text = text_match.group(1)
                continue
            first_col = line.split("\t", 1)[0]
            mwt = _MWT_ID.match(first_col)
            if mwt:
                cols = line.split("\t")
                form = cols[1] if len(cols) > 1 else ""
                mwt_ranges.append(MWTRange(int(mwt.group(1)), int(mwt.group(2)), form, line))
                continue
            if _EMPTY_ID.match(first_col):
                anchor = int(first_col.split(".", 1)[0])
                empty_nodes.append(EmptyNode(anchor, line))
                continue
            token = _parse_token_line(line, line_no, log, sent_id)
            if token is not None:
                tokens.append(token)
        if sent_id in seen_ids:
            log.report("DUPLICATE_SENT_ID",
                       f"sent_id '{sent_id}' already used by sentence {seen_ids[sent_id]}",
                       sent_id, start_line)
        else:
            seen_ids[sent_id] = ordinal
        sentence = Sentence(
            sent_id=sent_id,
            tokens=tuple(tokens),
            text=sent_text,
            comments=tuple(comments),
            mwt_ranges=tuple(mwt_ranges),
            empty_nodes=tuple(empty_nodes),
        )
        _check_sentence(sentence, log, start_line)
        sentences.append(sentence)

    return Document(tuple(sentences), source_name=source_name, issues=tuple(log.issues))


def token_line(tok: Token) -> str:
    return "\t".join((
        str(tok.id),
        tok.form,
        _absent(tok.lemma),
        _absent(tok.upos),
        _absent(tok.xpos),
        _join_pairs(tok.feats),
        "_" if tok.head is None else str(tok.head),
        tok.deprel,
        tok.deps,
        _join_pairs(tok.misc),
    ))


def serialize(doc: Document) -> str:
    """Canonical CoNLL-U: tab-separated, '_' for absent, LF, one blank line
    after each sentence. serialize(parse(serialize(d))) == serialize(d)."""
    lines: list[str] = []
    for sent in doc.sentences:
        lines.extend(sent.comments)
        mwt_by_start = {m.start: m for m in sent.mwt_ranges}
        empties: dict[int, list[str]] = {}
        for node in sent.empty_nodes:
            empties.setdefault(node.anchor, []).append(node.line)
        lines.extend(empties.get(0, []))
        for tok in sent.tokens:
            if tok.id in mwt_by_start:
                lines.append(mwt_by_start[tok.id].line)
            lines.append(token_line(tok))
            lines.extend(empties.get(tok.id, []))
        lines.append("")
    return "\n".join(lines) + "\n"


def import_tagged_transcript(text: str) -> Document:
    """Build a Document from `form<TAB>lang` lines, blank line per utterance.

    Tokens get a placeholder tree (token 1 is the root, the rest attach to it
    with deprel 'dep') so the output parses and can be annotated further.
    """
    utterances: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    lines = [raw.rstrip() for raw in text.split("\n")]
    for line_no, line in enumerate(lines, start=1):
        if line == "":
            if current:
                utterances.append(current)
                current = []
            elif any(rest != "" for rest in lines[line_no:]):
                raise ParseError("EMPTY_UTTERANCE",
                                 f"blank line {line_no} delimits an utterance with no tokens")
            continue
        cols = line.split("\t")
        if len(cols) != 2 or cols[0] == "":
            raise ParseError("MALFORMED_LINE",
                             f"expected form<TAB>lang on line {line_no}: {line!r}")
        form, lang = cols
        if lang not in LANG_TAGS:
            raise ParseError("BAD_LANG_TAG",
                             f"language tag {lang!r} on line {line_no} not in "
                             + "{" + ", ".join(sorted(LANG_TAGS)) + "}")
        current.append((form, lang))
    if current:
        utterances.append(current)
    if not utterances:
        raise ParseError("EMPTY_INPUT", "no utterances found in input")

    sentences = []
    for ordinal, words in enumerate(utterances, start=1):
        sent_id = f"u{ordinal}"
        tokens = tuple(
            Token(
                id=i,
                form=form,
                head=0 if i == 1 else 1,
                deprel="root" if i == 1 else "dep",
                misc=((LANG_KEY, lang),),
            )
            for i, (form, lang) in enumerate(words, start=1)
        )
        sent_text = " ".join(form for form, _ in words)
        sentences.append(Sentence(
            sent_id=sent_id,
            tokens=tokens,
            text=sent_text,
            comments=(f"# sent_id = {sent_id}", f"# text = {sent_text}"),
        ))
    return Document(tuple(sentences), source_name="<transcript>")
