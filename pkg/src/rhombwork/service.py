"""Local session service: the server half of the interactive flip editor.

One session edits one substitution draft.  Mutations are serialized
through a lock and tagged with a revision counter; a flip request names
the revision it saw and the exact site it targets, so stale requests are
rejected instead of silently re-applied.  Responses are JSON over a
local HTTP socket.
"""

from __future__ import annotations

import hashlib
import json
import threading
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .docio import serialize_substitution
from .flips import FlipSite, apply_flip, find_flips
from .subst import Substitution, make_substitution
from .symmetry import corner_report
from .tiler import Patch


class ConflictError(ValueError):
    """Stale revision or stale flip site."""


class NotFoundError(KeyError):
    pass


def _site_token(site: FlipSite) -> str:
    payload = json.dumps(site.key(), separators=(",", ":"))
    return hashlib.sha1(payload.encode()).hexdigest()[:12]


def _tile_payload(t) -> dict:
    return {"label": t.label, "rot": t.rot, "trans": list(t.trans.coeffs)}


def _site_payload(site: FlipSite) -> dict:
    return {
        "id": _site_token(site),
        "center": [round(site.center_xy[0], 6), round(site.center_xy[1], 6)],
        "hexagon": [[round(x, 6) for x in pt.to_xy()] for pt in site.hexagon],
        "tiles": [_tile_payload(t) for t in site.tiles],
    }


@dataclass
class _HistoryEntry:
    label: int
    before: Patch
    after: Patch


class EditSession:
    """A substitution draft plus undo/redo history and a revision counter."""

    def __init__(self, sub: Substitution, path: str | None = None):
        self.sub = sub
        self.path = path
        self.revision = 0
        self._undo: list[_HistoryEntry] = []
        self._redo: list[_HistoryEntry] = []
        self._lock = threading.Lock()
        self._saved_text = serialize_substitution(sub)

    @property
    def dirty(self) -> bool:
        """True iff the draft differs from the document last loaded or saved."""
        return serialize_substitution(self.sub) != self._saved_text

    # -- queries ---------------------------------------------------------
    def state(self) -> dict:
        return {
            "n": self.sub.n,
            "sequence": list(self.sub.seq),
            "labels": list(self.sub.labels()),
            "dirty": self.dirty,
            "revision": self.revision,
        }

    def patch_payload(self, label: int) -> dict:
        if label not in self.sub.images:
            raise NotFoundError(f"no image for label {label}")
        patch = self.sub.images[label]
        sites = find_flips(patch)
        return {
            "revision": self.revision,
            "label": label,
            "tiles": [_tile_payload(t) for t in patch.sorted_tiles()],
            "sites": [_site_payload(s) for s in sites],
        }

    def symmetry_payload(self, depth: int = 1) -> dict:
        report = corner_report(self.sub, depth=depth)
        data = report.to_dict()
        data["revision"] = self.revision
        data["text"] = report.to_text()
        return data

    # -- mutations ---------------------------------------------------------
    def _replace_image(self, label: int, patch: Patch) -> None:
        images = dict(self.sub.images)
        images[label] = patch
        self.sub = make_substitution(self.sub.spec, self.sub.seq, images)

    def flip(self, label: int, site_id: str, revision: int) -> dict:
        with self._lock:
            if revision != self.revision:
                raise ConflictError(
                    f"revision {revision} is stale (current {self.revision})"
                )
            if label not in self.sub.images:
                raise NotFoundError(f"no image for label {label}")
            patch = self.sub.images[label]
            site = next(
                (s for s in find_flips(patch) if _site_token(s) == site_id), None
            )
            if site is None:
                raise ConflictError(f"flip site {site_id} is stale")
            new_patch = apply_flip(patch, site)
            entry = _HistoryEntry(label=label, before=patch, after=new_patch)
            self._replace_image(label, new_patch)
            self._undo.append(entry)
            self._redo.clear()
            self.revision += 1
            removed = [_tile_payload(t) for t in site.tiles]
            added = [
                _tile_payload(t) for t in sorted(
                    new_patch.tiles - patch.tiles, key=lambda t: t.sort_key()
                )
            ]
            return {
                "revision": self.revision,
                "label": label,
                "removed": removed,
                "added": added,
            }

    def undo(self) -> dict:
        with self._lock:
            if not self._undo:
                raise ConflictError("nothing to undo")
            entry = self._undo.pop()
            self._replace_image(entry.label, entry.before)
            self._redo.append(entry)
            self.revision += 1
            return self.state()

    def redo(self) -> dict:
        with self._lock:
            if not self._redo:
                raise ConflictError("nothing to redo")
            entry = self._redo.pop()
            self._replace_image(entry.label, entry.after)
            self._undo.append(entry)
            self.revision += 1
            return self.state()

    def save(self, path: str | None = None) -> dict:
        with self._lock:
            target = path or self.path
            if target is None:
                raise ValueError("no save path configured")
            text = serialize_substitution(self.sub)
            with open(target, "w", encoding="utf-8") as handle:
                handle.write(text)
            self.path = target
            self._saved_text = text
            return {"saved": target, "revision": self.revision}


class _Handler(BaseHTTPRequestHandler):
    session: EditSession

    def log_message(self, *args):  # noqa: A003 - silence default logging
        pass

    def _send(self, code: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if not length:
            return {}
        try:
            return json.loads(self.rfile.read(length))
        except json.JSONDecodeError:
            raise ValueError("request body is not JSON")

    def do_OPTIONS(self):  # noqa: N802
        self._send(204, {})

    def do_GET(self):  # noqa: N802
        try:
            if self.path == "/session":
                self._send(200, self.session.state())
            elif self.path.startswith("/patch/"):
                label = int(self.path.rsplit("/", 1)[1])
                self._send(200, self.session.patch_payload(label))
            elif self.path.startswith("/symmetry"):
                depth = 2 if self.path.endswith("depth=2") else 1
                self._send(200, self.session.symmetry_payload(depth=depth))
            else:
                self._send(404, {"error": "not-found", "detail": self.path})
        except NotFoundError as exc:
            self._send(404, {"error": "not-found", "detail": str(exc)})
        except (ValueError, KeyError) as exc:
            self._send(400, {"error": "bad-request", "detail": str(exc)})

    def do_POST(self):  # noqa: N802
        try:
            body = self._body()
            if self.path == "/flip":
                result = self.session.flip(
                    int(body["label"]), str(body["site"]), int(body["revision"])
                )
                self._send(200, result)
            elif self.path == "/undo":
                self._send(200, self.session.undo())
            elif self.path == "/redo":
                self._send(200, self.session.redo())
            elif self.path == "/save":
                self._send(200, self.session.save(body.get("path")))
            else:
                self._send(404, {"error": "not-found", "detail": self.path})
        except ConflictError as exc:
            self._send(409, {"error": "conflict", "detail": str(exc)})
        except NotFoundError as exc:
            self._send(404, {"error": "not-found", "detail": str(exc)})
        except (ValueError, KeyError) as exc:
            self._send(400, {"error": "bad-request", "detail": str(exc)})


class SessionServer:
    """A ThreadingHTTPServer bound to one edit session."""

    def __init__(self, session: EditSession, port: int = 0, host: str = "127.0.0.1"):
        handler = type("BoundHandler", (_Handler,), {"session": session})
        self.httpd = ThreadingHTTPServer((host, port), handler)
        self.session = session

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def serve_forever(self) -> None:
        self.httpd.serve_forever()

    def start_background(self) -> threading.Thread:
        thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        thread.start()
        return thread

    def shutdown(self) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()
