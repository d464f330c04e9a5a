"""Quality-control workbench for spoken, code-switched UD treebanks."""

from .adjudication import (
    AdjudicationSession,
    CustomValues,
    Progress,
    Resolution,
    apply_resolution,
    create_session,
    export_gold,
    load_session,
    merged_document,
    progress,
    remove_resolution,
    save_session,
)
from .agreement import (
    DisagreementRecord,
    PairScore,
    RoundReport,
    batch_report,
    confusion,
    disagreements,
    render_report,
    render_score_table,
    score_pair,
)
from .conllu import (
    Document,
    EmptyNode,
    MWTRange,
    ParseIssue,
    Sentence,
    Token,
    import_tagged_transcript,
    parse,
    serialize,
)
from .errors import (
    AdjudicationError,
    PairingError,
    ParseError,
    SamplingError,
    WorkbenchError,
)
from .sampling import SwitchStats, sample, stats, switch_points
from .validation import Diagnostic, LintConfig, lint_spoken, parse_lint_config, validate_structure

__version__ = "0.1.0"

__all__ = [
    "AdjudicationError",
    "AdjudicationSession",
    "CustomValues",
    "Diagnostic",
    "DisagreementRecord",
    "Document",
    "EmptyNode",
    "LintConfig",
    "MWTRange",
    "PairScore",
    "PairingError",
    "ParseError",
    "ParseIssue",
    "Progress",
    "Resolution",
    "RoundReport",
    "SamplingError",
    "Sentence",
    "SwitchStats",
    "Token",
    "WorkbenchError",
    "apply_resolution",
    "batch_report",
    "confusion",
    "create_session",
    "disagreements",
    "export_gold",
    "import_tagged_transcript",
    "lint_spoken",
    "load_session",
    "merged_document",
    "parse",
    "parse_lint_config",
    "progress",
    "remove_resolution",
    "render_report",
    "render_score_table",
    "sample",
    "save_session",
    "score_pair",
    "serialize",
    "stats",
    "switch_points",
    "validate_structure",
]
