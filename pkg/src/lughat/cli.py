"""Command-line front end for the dictionary lifecycle.

Exit codes: 0 success, 1 not found, 2 validation failure, 3 I/O or
corrupt store, 4 usage error. All terminal I/O is UTF-8; --json
switches the query commands to the same byte-exact JSON the HTTP
service emits.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import storefile, textops, wire
from .errors import (
    EmptyKeyError,
    NotFoundError,
    RepertoireViolationError,
    StoreFileError,
)
from .records import E2S, S2E, EntryRecord
from .store import Lexicon

DEFAULT_STORE = "./lughat.store"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(4)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--store",
        default=os.environ.get("LUGHAT_STORE", DEFAULT_STORE),
        help="store file path (env LUGHAT_STORE, default %(default)s)",
    )
    common.add_argument(
        "--kind",
        choices=(E2S, S2E),
        default=E2S,
        help="which dictionary to work with (default %(default)s)",
    )
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument(
        "--repair",
        action="store_true",
        help="rebuild derived links when loading an inconsistent store",
    )

    parser = _Parser(prog="lughat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("init", parents=[common], help="create a new empty store")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("add", parents=[common], help="add or replace a record")
    p.add_argument("--word", required=True, help="headword")
    p.add_argument("--pron", default="", help="pronunciation")
    p.add_argument("--grammar", default="", help="grammar tag")
    p.add_argument("--sindhi", action="append", default=[], help="Sindhi meaning (repeatable)")
    p.add_argument("--english", action="append", default=[], help="English meaning (repeatable)")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("get", parents=[common], help="look a word up")
    p.add_argument("word")
    p.set_defaults(func=cmd_get)

    p = sub.add_parser("delete", parents=[common], help="remove a record")
    p.add_argument("word")
    p.set_defaults(func=cmd_delete)

    p = sub.add_parser("list", parents=[common], help="list words in dictionary order")
    p.add_argument("--prefix", default="")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--limit", type=int, default=50)
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("tokenize", parents=[common], help="split a Sindhi meaning into words")
    p.add_argument("text")
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("import", parents=[common], help="bulk-load records from TSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_import)

    p = sub.add_parser("export", parents=[common], help="write one dictionary side as TSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", parents=[common], help="run the local editor service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--assets", default=None, help="directory of built UI files to serve at /")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("stats", parents=[common], help="entry counts and store details")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError):
            pass
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return args.func(args)
    except NotFoundError as exc:
        print(f"lughat: {exc}", file=sys.stderr)
        return 1
    except (EmptyKeyError, RepertoireViolationError) as exc:
        print(f"lughat: {exc}", file=sys.stderr)
        return 2
    except (StoreFileError, OSError) as exc:
        print(f"lughat: {exc}", file=sys.stderr)
        return 3


# -- helpers -----------------------------------------------------------


def _load(args) -> Lexicon:
    if not os.path.exists(args.store):
        raise FileNotFoundError(f"store {args.store!r} not found; run 'lughat init' first")
    lex = storefile.load(args.store, repair=args.repair)
    if lex.repair_report is not None and not lex.repair_report.is_empty():
        print("lughat: store was inconsistent; derived links rebuilt", file=sys.stderr)
        _print_changeset(lex.repair_report, json_mode=False, stream=sys.stderr)
        storefile.save(lex, args.store)
    return lex


def _emit_json(payload) -> None:
    sys.stdout.write(wire.encode_json(payload).decode("utf-8"))


def _print_changeset(cs, json_mode, stream=None) -> None:
    if json_mode:
        _emit_json(wire.changeset_payload(cs))
        return
    stream = stream or sys.stdout
    if cs.is_empty():
        print("no changes", file=stream)
        return
    for verb in ("created", "updated", "deleted"):
        for kind, key, _rec in getattr(cs, verb):
            print(f"{verb} {kind} {key}", file=stream)


def _print_entry(kind, rec, json_mode) -> None:
    if json_mode:
        _emit_json(wire.entry_payload(kind, rec))
        return
    joined = lambda items: storefile.GLOSS_JOIN.join(items)
    print(f"word: {rec.headword}")
    print(f"pronunciation: {rec.pronunciation}")
    print(f"grammar: {rec.grammar}")
    print(f"sindhi: {joined(rec.sindhi_glosses)}")
    print(f"english: {joined(rec.english_glosses)}")
    origin = rec.provenance
    if rec.derived_from:
        origin += " (from: " + ", ".join(rec.derived_from) + ")"
    print(f"provenance: {origin}")
    print(f"revision: {rec.revision}")


# -- commands ----------------------------------------------------------


def cmd_init(args) -> int:
    if os.path.exists(args.store):
        raise StoreFileError(f"store {args.store!r} already exists")
    storefile.save(Lexicon(), args.store)
    print(f"created {args.store}")
    return 0


def cmd_add(args) -> int:
    lex = _load(args)
    record = EntryRecord(
        headword=args.word,
        pronunciation=args.pron,
        grammar=args.grammar,
        sindhi_glosses=args.sindhi,
        english_glosses=args.english,
    )
    cs = lex.put(args.kind, record)
    storefile.save(lex, args.store)
    _print_changeset(cs, args.json)
    return 0


def cmd_get(args) -> int:
    lex = _load(args)
    rec = lex.get(args.kind, args.word)
    if rec is None:
        raise NotFoundError(f"no {args.kind} entry for {args.word!r}")
    _print_entry(args.kind, rec, args.json)
    return 0


def cmd_delete(args) -> int:
    lex = _load(args)
    cs = lex.delete(args.kind, args.word)
    storefile.save(lex, args.store)
    _print_changeset(cs, args.json)
    return 0


def cmd_list(args) -> int:
    if args.limit <= 0 or args.offset < 0:
        print("lughat: --limit must be positive and --offset non-negative", file=sys.stderr)
        return 4
    lex = _load(args)
    rows = lex.list_words(args.kind, prefix=args.prefix, offset=args.offset, limit=args.limit)
    if args.json:
        total = lex.count_words(args.kind, args.prefix)
        _emit_json(
            wire.listing_payload(args.kind, args.prefix, args.offset, args.limit, total, rows)
        )
    else:
        for headword, provenance in rows:
            print(f"{headword}\t{provenance}")
    return 0


def cmd_tokenize(args) -> int:
    rep = textops.load_repertoire()
    text = textops.normalize_text(args.text, textops.DISPLAY, textops.SINDHI)
    tokens = [t.text for t in textops.tokenize_sindhi(text, rep.delimiters)]
    if args.json:
        _emit_json({"tokens": tokens})
    else:
        for tok in tokens:
            print(tok)
    return 0


def cmd_import(args) -> int:
    lex = _load(args)
    cs, errors = storefile.import_tsv(lex, args.file, args.kind)
    storefile.save(lex, args.store)
    for line_no, reason in errors:
        print(f"{args.file}:{line_no}: {reason}", file=sys.stderr)
    if args.json:
        payload = wire.changeset_payload(cs)
        payload["errors"] = [{"line": line_no, "reason": reason} for line_no, reason in errors]
        _emit_json(payload)
    else:
        applied = len(cs.created) + len(cs.updated) + len(cs.deleted)
        print(f"imported {applied} changes, {len(errors)} lines skipped")
    return 0


def cmd_export(args) -> int:
    lex = _load(args)
    count = storefile.export_tsv(lex, args.file, args.kind)
    print(f"wrote {count} lines to {args.file}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.store, host=args.host, port=args.port, assets_dir=args.assets)
    return 0


def cmd_stats(args) -> int:
    lex = _load(args)
    info = {"store": args.store, **lex.stats()}
    if args.json:
        _emit_json(info)
    else:
        for name, value in info.items():
            print(f"{name}: {value}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
