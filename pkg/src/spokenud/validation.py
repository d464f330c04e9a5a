"""Structural UD validation plus a spoken-language lint rule set.

V-rules check that each sentence is a well-formed labeled tree over known
tag inventories. R-rules encode the annotation conventions this corpus uses
for fillers, left-headed relations, disfluencies, trailing coordinators,
resumptive pronouns, and language tagging. Both are pure functions; the
diagnostic list is ordered by sentence, then token, then rule id.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conllu import (
    Document,
    Sentence,
    UPOS_TAGS,
    deprel_universal,
    find_cycles,
    is_valid_deprel,
)

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"
SEVERITY_INFO = "info"

SEVERITIES = (SEVERITY_ERROR, SEVERITY_WARNING, SEVERITY_INFO)

# rule id -> (name, default severity)
RULE_CATALOG = {
    "V1": ("MULTIPLE_ROOTS", SEVERITY_ERROR),
    "V2": ("NO_ROOT", SEVERITY_ERROR),
    "V3": ("CYCLE", SEVERITY_ERROR),
    "V4": ("HEAD_OUT_OF_RANGE", SEVERITY_ERROR),
    "V5": ("ROOT_DEPREL_MISMATCH", SEVERITY_ERROR),
    "V6": ("BAD_UPOS", SEVERITY_ERROR),
    "V7": ("BAD_DEPREL", SEVERITY_ERROR),
    "R1": ("FILLER_NOT_DISCOURSE", SEVERITY_WARNING),
    "R2": ("RIGHT_HEADED_FLAT", SEVERITY_ERROR),
    "R3": ("REPARANDUM_DIRECTION", SEVERITY_WARNING),
    "R4": ("TRAILING_COORDINATOR", SEVERITY_WARNING),
    "R5": ("RESUMPTIVE_NOT_EXPL", SEVERITY_INFO),
    "R6": ("MISSING_LANG", SEVERITY_WARNING),
}

LINT_RULES = frozenset(rule for rule in RULE_CATALOG if rule.startswith("R"))

DEFAULT_FILLERS = frozenset({"eh", "ehm", "uh", "hmm"})

# relations that must point leftward (head before dependent)
LEFT_HEADED = frozenset({"fixed", "flat", "appos", "conj"})

# relations internal to a nominal, climbed through when looking for the
# subject a resumptive pronoun duplicates
_NOMINAL_INTERNAL = frozenset({"flat", "appos", "compound"})

# fraction of tokens that must carry Lang before missing tags are flagged
_LANG_COVERAGE_THRESHOLD = 0.5


@dataclass(frozen=True)
class Diagnostic:
    rule_id: str
    severity: str
    sent_id: str
    token_id: int | None
    message: str

    def render(self) -> str:
        token = "" if self.token_id is None else str(self.token_id)
        return f"{self.severity} {self.rule_id} {self.sent_id}:{token} {self.message}"

    def to_json(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "severity": self.severity,
            "sent_id": self.sent_id,
            "token_id": self.token_id,
            "message": self.message,
        }


@dataclass(frozen=True)
class LintConfig:
    filler_lexicon: frozenset[str] = DEFAULT_FILLERS
    enabled_rules: frozenset[str] = LINT_RULES
    severity_overrides: dict[str, str] = field(default_factory=dict)

    def severity(self, rule_id: str) -> str:
        return self.severity_overrides.get(rule_id, RULE_CATALOG[rule_id][1])


def parse_lint_config(text: str) -> LintConfig:
    """Read the key-value config format (see README): `fillers`, `disable`,
    `enable`, and `severity.<RULE> = level` lines. '#' starts a comment."""
    fillers = set(DEFAULT_FILLERS)
    enabled = set(LINT_RULES)
    overrides: dict[str, str] = {}
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {line_no}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "fillers":
            fillers = {form.lower() for form in value.split()}
        elif key == "disable":
            enabled -= _rule_ids(value, line_no)
        elif key == "enable":
            enabled |= _rule_ids(value, line_no)
        elif key.startswith("severity."):
            rule = key.split(".", 1)[1]
            if rule not in RULE_CATALOG:
                raise ValueError(f"config line {line_no}: unknown rule {rule!r}")
            if value not in SEVERITIES:
                raise ValueError(f"config line {line_no}: unknown severity {value!r}")
            overrides[rule] = value
        else:
            raise ValueError(f"config line {line_no}: unknown key {key!r}")
    return LintConfig(frozenset(fillers), frozenset(enabled), overrides)


def _rule_ids(value: str, line_no: int) -> set[str]:
    rules = set(value.split())
    unknown = rules - set(RULE_CATALOG)
    if unknown:
        raise ValueError(f"config line {line_no}: unknown rules {sorted(unknown)}")
    return rules


def _sort_key(doc: Document):
    order = {sent.sent_id: i for i, sent in enumerate(doc.sentences)}

    def key(diag: Diagnostic):
        return (order.get(diag.sent_id, len(order)), diag.token_id or 0, diag.rule_id)

    return key


def _structure_diagnostics(sent: Sentence) -> list[Diagnostic]:
    out: list[Diagnostic] = []

    def emit(rule: str, token_id: int | None, message: str) -> None:
        out.append(Diagnostic(rule, RULE_CATALOG[rule][1], sent.sent_id, token_id, message))

    ids = {t.id for t in sent.tokens}
    heads_known = all(t.head is not None for t in sent.tokens)
    cycles = find_cycles(sent.tokens)
    roots = [t.id for t in sent.tokens if t.head == 0]
    if len(roots) > 1:
        emit("V1", None, "tokens " + ", ".join(map(str, roots)) + " all attach to 0")
    elif not roots and heads_known and not cycles:
        # a cycle already explains the missing root
        emit("V2", None, "no token attaches to 0")
    for cycle in cycles:
        emit("V3", cycle[0],
             "head relation contains a cycle through tokens " + ", ".join(map(str, cycle)))
    for tok in sent.tokens:
        if tok.head is not None and tok.head != 0 and tok.head not in ids:
            emit("V4", tok.id, f"head {tok.head} does not exist in this sentence")
        if tok.head is not None:
            is_root_head = tok.head == 0
            is_root_label = tok.deprel == "root"
            if is_root_head and not is_root_label:
                emit("V5", tok.id, f"attaches to 0 but is labeled '{tok.deprel}', not 'root'")
            elif is_root_label and not is_root_head:
                emit("V5", tok.id, f"labeled 'root' but attaches to {tok.head}, not 0")
        if tok.upos is not None and tok.upos not in UPOS_TAGS:
            emit("V6", tok.id, f"'{tok.upos}' is not a universal POS tag")
        if not is_valid_deprel(tok.deprel):
            emit("V7", tok.id, f"'{tok.deprel}' is not a universal relation (with optional subtype)")
    return out


def validate_structure(doc: Document) -> list[Diagnostic]:
    """Run V-rules over every sentence of a (possibly permissively parsed) document."""
    diagnostics: list[Diagnostic] = []
    for sent in doc.sentences:
        diagnostics.extend(_structure_diagnostics(sent))
    diagnostics.sort(key=_sort_key(doc))
    return diagnostics


def _lint_sentence(sent: Sentence, config: LintConfig, emit) -> None:
    tokens = sent.tokens
    by_id = {t.id: t for t in tokens}

    for tok in tokens:
        if "R1" in config.enabled_rules and tok.form.lower() in config.filler_lexicon:
            if tok.deprel_universal != "discourse":
                emit("R1", sent.sent_id, tok.id,
                     f"filler '{tok.form}' is labeled '{tok.deprel}', expected 'discourse'")
        if ("R2" in config.enabled_rules and tok.deprel_universal in LEFT_HEADED
                and tok.head is not None and tok.head > tok.id):
            emit("R2", sent.sent_id, tok.id,
                 f"'{tok.deprel}' must be left-headed but head {tok.head} follows token {tok.id}")
        if ("R3" in config.enabled_rules and tok.deprel_universal == "reparandum"
                and tok.head is not None and tok.head < tok.id):
            emit("R3", sent.sent_id, tok.id,
                 f"reparandum at {tok.id} must precede its repair, but head is {tok.head}")

    if "R4" in config.enabled_rules and tokens:
        last = tokens[-1]
        if last.upos == "CCONJ" and last.deprel_universal != "dislocated":
            emit("R4", sent.sent_id, last.id,
                 f"utterance-final coordinator '{last.form}' is labeled "
                 f"'{last.deprel}', expected 'dislocated'")

    if "R5" in config.enabled_rules:
        for tok in tokens:
            if tok.upos != "PRON" or tok.head in (None, 0) or tok.id == 1:
                continue
            node = by_id[tok.id - 1]
            while node.deprel_universal in _NOMINAL_INTERNAL and node.head in by_id:
                node = by_id[node.head]
            if (node.deprel_universal == "nsubj" and node.head == tok.head
                    and tok.deprel_universal != "expl"):
                emit("R5", sent.sent_id, tok.id,
                     f"'{tok.form}' resumes the subject at {node.id}; expected 'expl', "
                     f"found '{tok.deprel}'")


def lint_spoken(doc: Document, config: LintConfig | None = None) -> list[Diagnostic]:
    """Run R-rules; sentences with structural (V-rule) problems are skipped."""
    config = config or LintConfig()
    diagnostics: list[Diagnostic] = []

    def emit(rule: str, sent_id: str, token_id: int | None, message: str) -> None:
        diagnostics.append(Diagnostic(rule, config.severity(rule), sent_id, token_id, message))

    clean = [sent for sent in doc.sentences if not _structure_diagnostics(sent)]
    for sent in clean:
        _lint_sentence(sent, config, emit)

    if "R6" in config.enabled_rules:
        total = doc.token_count
        tagged = sum(1 for sent in doc.sentences for t in sent.tokens if t.lang is not None)
        if total and tagged / total >= _LANG_COVERAGE_THRESHOLD:
            for sent in clean:
                for tok in sent.tokens:
                    if tok.lang is None:
                        emit("R6", sent.sent_id, tok.id,
                             f"'{tok.form}' has no Lang tag but {tagged}/{total} tokens do")

    diagnostics.sort(key=_sort_key(doc))
    return diagnostics
