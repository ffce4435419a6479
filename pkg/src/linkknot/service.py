"""Local HTTP service exposing the design loop for the interactive viewer.

Sessions hold an immutable base mesh plus a revisioned copy-on-write label
overlay (twists and null sides).  Responses for a fixed (session, revision)
are byte-identical and cacheable; PATCH is atomic under the session lock.
"""

from __future__ import annotations

import json
import logging
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from . import lkm
from .geometry import GeometryError, RealizationParams, linking_matrix, realize
from .mesh import LabeledMesh, MeshError, connectivity_report, edge_key
from .strands import strand_report, trace

log = logging.getLogger("lk.service")

DEFAULT_PORT = 7431


class EditError(ValueError):
    """An edit referenced an unknown edge, face, or side."""


@dataclass
class Session:
    session_id: str
    base: LabeledMesh
    twists: dict = field(default_factory=dict)
    nulls: frozenset = frozenset()
    revision: int = 0
    lock: threading.RLock = field(default_factory=threading.RLock)
    _cache: dict = field(default_factory=dict)

    def snapshot(self):
        with self.lock:
            return self.revision, dict(self.twists), self.nulls

    def mesh_at(self, twists, nulls) -> LabeledMesh:
        mesh = self.base.with_twists(twists, replace=True)
        if nulls:
            mesh = mesh.with_nulls(nulls)
        return mesh

    def apply(self, edits, null_edits, save_dir=None) -> int:
        """Atomically apply label edits; returns the new revision."""
        with self.lock:
            twists = dict(self.twists)
            nulls = set(self.nulls)
            for item in edits:
                try:
                    a, b = item["edge"]
                    t = int(item["t"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise EditError(f"malformed edit {item!r}") from exc
                key = edge_key(int(a), int(b))
                if key not in self.base.edges:
                    raise EditError(f"unknown edge {list(key)}")
                twists[key] = t
            for item in null_edits:
                try:
                    a, b = item["edge"]
                    face = int(item["face"])
                except (KeyError, TypeError, ValueError) as exc:
                    raise EditError(f"malformed null edit {item!r}") from exc
                occ = int(item.get("occurrence", 0))
                flag = bool(item.get("null", True))
                try:
                    slot = self.base.slot_for_occurrence(
                        face, edge_key(int(a), int(b)), occ)
                except MeshError as exc:
                    raise EditError(str(exc)) from exc
                if flag:
                    nulls.add(slot.slot_id)
                else:
                    nulls.discard(slot.slot_id)
            self.twists = twists
            self.nulls = frozenset(nulls)
            self.revision += 1
            self._cache.clear()
            revision = self.revision
        if save_dir:
            mesh = self.mesh_at(twists, frozenset(nulls))
            path = Path(save_dir) / f"{self.session_id}-rev{revision}.lkm"
            lkm.dump(mesh, path)
        return revision

    def cached(self, key, build) -> bytes:
        with self.lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        payload = build()
        with self.lock:
            if len(self._cache) > 16:
                self._cache.clear()
            self._cache[key] = payload
        return payload


class SessionStore:
    def __init__(self, save_dir=None):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()
        self._counter = 0
        self.save_dir = save_dir
        if save_dir:
            Path(save_dir).mkdir(parents=True, exist_ok=True)

    def create(self, document) -> Session:
        mesh = lkm.parse_mesh(document)
        with self._lock:
            self._counter += 1
            session = Session(f"s{self._counter}", mesh)
            self._sessions[session.session_id] = session
        if self.save_dir:
            path = Path(self.save_dir) / f"{session.session_id}-rev0.lkm"
            lkm.dump(mesh, path)
        return session

    def get(self, session_id) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def _session_report(mesh: LabeledMesh, strands, inset=None) -> dict:
    components = [{"id": i, "kind": kind, "length": len(slots)}
                  for i, (kind, slots, _) in enumerate(strands.components())]
    warnings = list(connectivity_report(mesh).warnings)
    for key, rec in mesh.edges.items():
        if rec.degree == 1 and rec.twist != 0:
            warnings.append(f"twist {rec.twist} on boundary edge "
                            f"{list(key)} (K=1) acts as the identity")
    matrix = None
    closed_ids = [c["id"] for c in components if c["kind"] == "cycle"]
    if closed_ids:
        try:
            params = RealizationParams(**({"inset": inset} if inset else {}))
            geometry = realize(mesh, strands, params)
            matrix, link_warnings = linking_matrix(geometry)
            warnings.extend(link_warnings)
        except GeometryError as exc:
            warnings.append(f"linking matrix unavailable: {exc}")
    return {
        "count": strands.component_count,
        "components": components,
        "closed_component_ids": closed_ids,
        "linking_matrix": matrix,
        "warnings": warnings,
    }


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    store: SessionStore = None
    ui_dir: str | None = None

    def log_message(self, fmt, *args):
        log.info("%s " + fmt, self.address_string(), *args)

    # -- plumbing ---------------------------------------------------------
    def _send(self, status: int, body: bytes,
              content_type="application/json") -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods",
                         "GET, POST, PATCH, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload) -> None:
        self._send(status, _json_bytes(payload))

    def _fail(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise EditError(f"malformed JSON body: {exc}") from exc

    def _session_and_rev(self, session_id: str, query):
        session = self.store.get(session_id)
        if session is None:
            self._fail(404, f"unknown session {session_id}")
            return None
        revision, twists, nulls = session.snapshot()
        wanted = query.get("rev", [None])[0]
        if wanted is not None and int(wanted) != revision:
            self._fail(409, f"stale revision {wanted}; current is {revision}")
            return None
        return session, revision, twists, nulls

    # -- methods ----------------------------------------------------------
    def do_OPTIONS(self):
        self._send(204, b"", content_type="text/plain")

    def do_POST(self):
        try:
            if urlparse(self.path).path != "/session":
                self._fail(404, "unknown endpoint")
                return
            body = self._body()
            document = body.get("lkm", body)
            try:
                session = self.store.create(document)
            except MeshError as exc:
                self._fail(422, str(exc))
                return
            self._send_json(200, {"session": session.session_id,
                                  "revision": session.revision})
        except EditError as exc:
            self._fail(422, str(exc))
        except Exception as exc:
            log.exception("POST failed")
            self._fail(500, f"internal error: {exc}")

    def do_PATCH(self):
        try:
            match = re.fullmatch(r"/session/([^/]+)/labels",
                                 urlparse(self.path).path)
            if not match:
                self._fail(404, "unknown endpoint")
                return
            session = self.store.get(match.group(1))
            if session is None:
                self._fail(404, f"unknown session {match.group(1)}")
                return
            body = self._body()
            revision = session.apply(body.get("edits", []),
                                     body.get("nulls", []),
                                     save_dir=self.store.save_dir)
            self._send_json(200, {"revision": revision})
        except EditError as exc:
            self._fail(422, str(exc))
        except Exception as exc:
            log.exception("PATCH failed")
            self._fail(500, f"internal error: {exc}")

    def do_GET(self):
        try:
            url = urlparse(self.path)
            query = parse_qs(url.query)
            match = re.fullmatch(r"/session/([^/]+)/(mesh|strands|geometry|report)",
                                 url.path)
            if match:
                resolved = self._session_and_rev(match.group(1), query)
                if resolved is None:
                    return
                session, revision, twists, nulls = resolved
                kind = match.group(2)
                body = self._build(session, kind, revision, twists, nulls, query)
                self._send(200, body)
                return
            if url.path == "/":
                if self.ui_dir:
                    self._static("index.html")
                else:
                    self._send_json(200, {"service": "lk", "endpoints": [
                        "POST /session", "GET /session/{id}/mesh",
                        "PATCH /session/{id}/labels",
                        "GET /session/{id}/strands",
                        "GET /session/{id}/geometry",
                        "GET /session/{id}/report"]})
                return
            if self.ui_dir:
                self._static(url.path.lstrip("/"))
                return
            self._fail(404, "unknown endpoint")
        except Exception as exc:
            log.exception("GET failed")
            self._fail(500, f"internal error: {exc}")

    def _build(self, session, kind, revision, twists, nulls, query) -> bytes:
        inset = query.get("inset", [None])[0]
        radius = query.get("radius", [None])[0]
        cache_key = (kind, revision, inset, radius)

        def build():
            mesh = session.mesh_at(twists, nulls)
            if kind == "mesh":
                doc = lkm.serialize_mesh(mesh)
                doc["revision"] = revision
                return _json_bytes(doc)
            strands = trace(mesh)
            if kind == "strands":
                doc = strand_report(mesh, strands)
                doc["revision"] = revision
                return _json_bytes(doc)
            if kind == "geometry":
                kwargs = {}
                if inset is not None:
                    kwargs["inset"] = float(inset)
                if radius is not None:
                    kwargs["tube_radius"] = float(radius)
                geometry = realize(mesh, strands, RealizationParams(**kwargs))
                doc = geometry.to_document()
                doc["revision"] = revision
                return _json_bytes(doc)
            doc = _session_report(mesh, strands,
                                  float(inset) if inset else None)
            doc["revision"] = revision
            return _json_bytes(doc)

        return session.cached(cache_key, build)

    def _static(self, rel: str) -> None:
        base = Path(self.ui_dir).resolve()
        target = (base / rel).resolve()
        if not str(target).startswith(str(base)) or not target.is_file():
            self._fail(404, f"no such file {rel}")
            return
        ctype = {
            ".html": "text/html", ".js": "text/javascript",
            ".css": "text/css", ".json": "application/json",
            ".map": "application/json", ".ico": "image/x-icon",
        }.get(target.suffix, "application/octet-stream")
        self._send(200, target.read_bytes(), content_type=ctype)


def create_server(port: int = DEFAULT_PORT, mesh_path=None, ui_dir=None,
                  save_dir=None) -> ThreadingHTTPServer:
    """Build the HTTP server (bind only; caller decides how to run it)."""
    store = SessionStore(save_dir=save_dir)
    if mesh_path:
        with open(mesh_path, "r", encoding="utf-8") as fh:
            session = store.create(json.load(fh))
        log.info("initial mesh loaded as session %s", session.session_id)
    handler = type("Handler", (_Handler,), {"store": store, "ui_dir": ui_dir})
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.store = store
    return server


def serve(port: int = DEFAULT_PORT, mesh_path=None, ui_dir=None,
          save_dir=None) -> None:
    server = create_server(port, mesh_path, ui_dir, save_dir)
    host, actual_port = server.server_address[:2]
    print(f"lk service listening on http://{host}:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
