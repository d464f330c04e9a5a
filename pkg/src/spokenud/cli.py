"""Command-line entry point.

Exit codes: 0 success, 1 validation or lint errors were found, 2 usage or
I/O error, 3 precondition mismatch (tokenization divergence, unresolved
disagreements, not enough eligible utterances). Data goes to stdout,
diagnostics to stderr, so CoNLL-U output can be piped.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import adjudication, agreement, conllu, sampling, service, validation
from .errors import AdjudicationError, PairingError, ParseError, SamplingError

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load(path: str, strictness: str = "permissive") -> conllu.Document:
    return conllu.parse(_read(path), strictness=strictness, source_name=path)


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    doc = _load(args.file)
    config = validation.LintConfig()
    if args.config:
        config = validation.parse_lint_config(_read(args.config))
    diagnostics = [
        validation.Diagnostic(issue.code, validation.SEVERITY_ERROR,
                              issue.sent_id or "?", None, issue.message)
        for issue in doc.issues
    ]
    diagnostics += validation.validate_structure(doc)
    if args.lint == "spoken":
        diagnostics += validation.lint_spoken(doc, config)
    if args.json:
        print(json.dumps([d.to_json() for d in diagnostics], indent=2))
    else:
        for diag in diagnostics:
            print(diag.render(), file=sys.stderr)
    has_errors = any(d.severity == validation.SEVERITY_ERROR for d in diagnostics)
    return EXIT_FINDINGS if has_errors else EXIT_OK


def cmd_agree(args) -> int:
    doc_a = _load(args.a)
    doc_b = _load(args.b)
    report = agreement.batch_report(
        doc_a, doc_b, batch_size=args.batch_size,
        universal_deprel_only=args.universal, ignore_punct=args.ignore_punct)
    if args.json:
        print(json.dumps(agreement.report_to_json(report), indent=2))
    else:
        print(agreement.render_report(report))
    return EXIT_OK


def cmd_diff(args) -> int:
    doc_a = _load(args.a)
    doc_b = _load(args.b)
    if args.annotators:
        names = tuple(name.strip() for name in args.annotators.split(","))
        if len(names) != 2 or not all(names):
            raise ValueError("--annotators expects two comma-separated names")
    else:
        names = (Path(args.a).stem, Path(args.b).stem)
    session = adjudication.create_session(doc_a, doc_b, (names[0], names[1]))
    adjudication.save_session(session, args.output)
    print(f"session with {len(session.records)} disagreements written to {args.output}",
          file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    service.serve(args.session, port=args.port, bind=args.bind,
                  open_browser=args.open)
    return EXIT_OK


def cmd_export(args) -> int:
    session = adjudication.load_session(args.session)
    gold = adjudication.export_gold(session, allow_partial=args.allow_partial)
    _write_output(conllu.serialize(gold), args.output)
    return EXIT_OK


def cmd_sample(args) -> int:
    doc = _load(args.corpus)
    selection = sampling.sample(doc, args.n, require_switch=args.require_switch,
                                seed=args.seed)
    _write_output(conllu.serialize(selection), args.output)
    return EXIT_OK


def cmd_stats(args) -> int:
    result = sampling.stats(_load(args.file))
    if args.json:
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(result.render())
    return EXIT_OK


def cmd_import(args) -> int:
    doc = conllu.import_tagged_transcript(_read(args.tsv))
    _write_output(conllu.serialize(doc), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spokenud",
        description="Quality control for spoken, code-switched UD treebanks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural validation and spoken lint")
    p.add_argument("file")
    p.add_argument("--lint", choices=["spoken"], help="also run the spoken lint rules")
    p.add_argument("--json", action="store_true", help="diagnostics as a JSON array on stdout")
    p.add_argument("--config", help="lint config file (see README)")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("agree", help="inter-annotator agreement report")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--batch-size", type=int, default=agreement.DEFAULT_BATCH_SIZE,
                   help="sentences per round (default %(default)s)")
    p.add_argument("--universal", action="store_true",
                   help="compare relation labels without subtypes")
    p.add_argument("--ignore-punct", action="store_true",
                   help="skip tokens both annotators tag PUNCT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("diff", help="create an adjudication session from two annotations")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True, help="session file to write")
    p.add_argument("--annotators", help="two comma-separated names")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("serve", help="run the adjudication web service")
    p.add_argument("session")
    p.add_argument("--port", type=int, default=service.DEFAULT_PORT)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--open", action="store_true", help="open the UI in a browser")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="export the merged gold CoNLL-U")
    p.add_argument("session")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--allow-partial", action="store_true",
                   help="export with unresolved tokens flagged Unresolved=Yes")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("sample", help="sample utterances for an annotation round")
    p.add_argument("corpus")
    p.add_argument("-n", type=int, required=True, help="number of utterances")
    p.add_argument("--require-switch", action="store_true",
                   help="only utterances with at least one code-switch point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("stats", help="language-mix statistics")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("import", help="import a form<TAB>lang transcript")
    p.add_argument("tsv")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_import)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (PairingError, AdjudicationError, SamplingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
