"""Local HTTP+JSON editor service over a single store file.

Loopback, single store, no auth: this is the desktop companion for the
browser editor. Reads go straight to the in-memory lexicon; every
mutation is applied under one writer lock and persisted to disk before
the response goes out, so a crash never loses an acknowledged edit.
Revision checks via If-Match keep two browser tabs from silently
overwriting each other.
"""

from __future__ import annotations

import json
import mimetypes
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from urllib.parse import parse_qs, unquote, urlsplit

from . import storefile, textops, wire
from .errors import EmptyKeyError, NotFoundError, RepertoireViolationError
from .records import E2S, KINDS, key_side, normalize_key
from .store import Lexicon

MAX_BODY = 10 * 1024 * 1024


def load_keyboard_layout(path=None) -> dict:
    """Keyboard layout: {"name": ..., "rows": [[{label, codepoints}, ...], ...]}."""
    if path is None:
        text = resources.files("lughat.data").joinpath("keyboard.json").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    layout = json.loads(text)
    if not isinstance(layout.get("name"), str) or not isinstance(layout.get("rows"), list):
        raise ValueError("keyboard layout must have a name and rows")
    for row in layout["rows"]:
        for key in row:
            if not isinstance(key.get("label"), str) or not isinstance(key.get("codepoints"), str):
                raise ValueError("each key needs a label and codepoints")
            if not key["codepoints"]:
                raise ValueError("key codepoints must be non-empty")
    return layout


class DictionaryService:
    """Request-independent core: owns the lexicon, the lock and the disk."""

    def __init__(self, lexicon: Lexicon, store_path, assets_dir=None, keyboard_path=None):
        self.lexicon = lexicon
        self.store_path = store_path
        self.assets_dir = os.path.abspath(assets_dir) if assets_dir else None
        self.keyboard = load_keyboard_layout(keyboard_path)
        self.lock = threading.Lock()

    def persist(self) -> None:
        storefile.save(self.lexicon, self.store_path)


class _Handler(BaseHTTPRequestHandler):
    service: DictionaryService  # set by make_handler

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    # -- plumbing ------------------------------------------------------

    def _send(self, status: int, body: bytes, content_type="application/json; charset=utf-8"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _json(self, status: int, payload) -> None:
        self._send(status, wire.encode_json(payload))

    def _error(self, status: int, error: str, message: str = "", **extra) -> None:
        self._json(status, wire.error_payload(error, message, **extra))

    def _read_body(self):
        length = int(self.headers.get("Content-Length", 0) or 0)
        if length < 0 or length > MAX_BODY:
            return None
        return self.rfile.read(length)

    def _entry_route(self, path):
        """/api/entries/{kind}/{key} -> (kind, key) or None."""
        parts = [unquote(p) for p in path.split("/") if p != ""]
        if len(parts) == 4 and parts[:2] == ["api", "entries"] and parts[2] in KINDS:
            return parts[2], parts[3]
        return None

    # -- verbs ---------------------------------------------------------

    def do_GET(self):
        url = urlsplit(self.path)
        path = url.path
        svc = self.service
        if path == "/api/health":
            with svc.lock:
                return self._json(200, wire.health_payload(svc.lexicon))
        if path == "/api/keyboard":
            return self._json(200, svc.keyboard)
        if path == "/api/entries":
            return self._list_entries(url)
        route = self._entry_route(path)
        if route is not None:
            kind, word = route
            with svc.lock:
                rec = svc.lexicon.get(kind, word)
                if rec is None:
                    return self._error(404, "NotFound", f"no {kind} entry for {word!r}")
                return self._json(200, wire.entry_payload(kind, rec))
        if path.startswith("/api/"):
            return self._error(404, "NotFound", "unknown endpoint")
        return self._static(path)

    def do_POST(self):
        if urlsplit(self.path).path != "/api/tokenize":
            return self._error(404, "NotFound", "unknown endpoint")
        body = self._read_body()
        try:
            obj = json.loads(body or b"")
        except json.JSONDecodeError:
            return self._error(400, "BadRequest", "body must be JSON")
        if not isinstance(obj, dict) or not isinstance(obj.get("text"), str):
            return self._error(400, "BadRequest", 'body must be {"text": "..."}')
        rep = self.service.lexicon.repertoire
        text = textops.normalize_text(obj["text"], textops.DISPLAY, textops.SINDHI)
        tokens = [t.text for t in textops.tokenize_sindhi(text, rep.delimiters)]
        return self._json(200, {"tokens": tokens})

    def do_PUT(self):
        route = self._entry_route(urlsplit(self.path).path)
        if route is None:
            return self._error(404, "NotFound", "unknown endpoint")
        kind, word = route
        body = self._read_body()
        try:
            obj = json.loads(body or b"")
        except json.JSONDecodeError:
            return self._error(400, "BadRequest", "body must be JSON")
        try:
            record = wire.record_from_obj(obj)
        except ValueError as exc:
            return self._error(400, "BadRequest", str(exc))
        if "kind" in obj and obj["kind"] != kind:
            return self._error(400, "BadRequest", "kind in body does not match URL")

        side = key_side(kind)
        try:
            body_key = normalize_key(record.headword, side)
            url_key = normalize_key(word, side)
        except EmptyKeyError as exc:
            return self._error(400, "EmptyKey", str(exc))
        if body_key != url_key:
            return self._error(400, "BadRequest", "headword does not match URL key")

        if_match = self.headers.get("If-Match")
        expected = None
        if if_match is not None:
            if not if_match.strip().isdigit():
                return self._error(400, "BadRequest", "If-Match must be a revision number")
            expected = int(if_match.strip())

        svc = self.service
        with svc.lock:
            current = svc.lexicon.table_for(kind).get(body_key)
            current_revision = current.revision if current is not None else 0
            if expected is not None and expected != current_revision:
                return self._error(
                    409,
                    "RevisionConflict",
                    "entry changed since it was read",
                    current_revision=current_revision,
                )
            try:
                cs = svc.lexicon.put(kind, record)
            except EmptyKeyError as exc:
                return self._error(400, "EmptyKey", str(exc))
            except RepertoireViolationError as exc:
                return self._json(400, wire.violations_payload(exc))
            try:
                svc.persist()
            except OSError as exc:
                return self._error(500, "Internal", f"could not persist store: {exc}")
            return self._json(200, wire.changeset_payload(cs))

    def do_DELETE(self):
        route = self._entry_route(urlsplit(self.path).path)
        if route is None:
            return self._error(404, "NotFound", "unknown endpoint")
        kind, word = route
        svc = self.service
        with svc.lock:
            try:
                cs = svc.lexicon.delete(kind, word)
            except EmptyKeyError as exc:
                return self._error(400, "EmptyKey", str(exc))
            except NotFoundError as exc:
                return self._error(404, "NotFound", str(exc))
            try:
                svc.persist()
            except OSError as exc:
                return self._error(500, "Internal", f"could not persist store: {exc}")
            return self._json(200, wire.changeset_payload(cs))

    # -- pieces ----------------------------------------------------------

    def _list_entries(self, url):
        params = parse_qs(url.query)

        def single(name, default):
            values = params.get(name, [default])
            return values[-1]

        kind = single("kind", E2S)
        if kind not in KINDS:
            return self._error(400, "BadRequest", f"kind must be one of {KINDS}")
        prefix = single("prefix", "")
        try:
            offset = int(single("offset", "0"))
            limit = int(single("limit", "50"))
        except ValueError:
            return self._error(400, "BadRequest", "offset and limit must be integers")
        if offset < 0 or limit <= 0:
            return self._error(400, "BadRequest", "offset must be >= 0 and limit > 0")
        svc = self.service
        with svc.lock:
            rows = svc.lexicon.list_words(kind, prefix=prefix, offset=offset, limit=limit)
            total = svc.lexicon.count_words(kind, prefix)
            return self._json(
                200, wire.listing_payload(kind, prefix, offset, limit, total, rows)
            )

    def _static(self, path):
        assets = self.service.assets_dir
        if assets is None:
            return self._error(404, "NotFound", "no UI assets configured")
        rel = path.lstrip("/") or "index.html"
        full = os.path.abspath(os.path.join(assets, rel))
        if not (full == assets or full.startswith(assets + os.sep)):
            return self._error(404, "NotFound", "bad path")
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            return self._error(404, "NotFound", "no such file")
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        if ctype.startswith("text/") or ctype in ("application/javascript", "application/json"):
            ctype += "; charset=utf-8"
        with open(full, "rb") as f:
            return self._send(200, f.read(), content_type=ctype)


def make_server(store_path, host="127.0.0.1", port=0, assets_dir=None, repertoire=None,
                keyboard_path=None) -> ThreadingHTTPServer:
    """Build a ready-to-run server; creates the store file if missing."""
    if os.path.exists(store_path):
        lexicon = storefile.load(store_path, repertoire=repertoire)
    else:
        lexicon = Lexicon(repertoire=repertoire)
        storefile.save(lexicon, store_path)
    service = DictionaryService(lexicon, store_path, assets_dir=assets_dir,
                                keyboard_path=keyboard_path)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    server.service = service
    return server


def serve(store_path, host="127.0.0.1", port=8080, assets_dir=None, repertoire=None) -> None:
    server = make_server(store_path, host=host, port=port, assets_dir=assets_dir,
                         repertoire=repertoire)
    address = f"http://{server.server_address[0]}:{server.server_address[1]}/"
    print(f"serving {store_path} at {address}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
