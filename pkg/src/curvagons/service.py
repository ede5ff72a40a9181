"""HTTP/WebSocket session service built on FastAPI.

Each session holds one Surface, an undo stack (depth 64), and a set of live
WebSocket subscribers that receive an {event, report, frame} document after
every mutation and throttled frames (at most 30/s) while a relaxation runs.
Sessions are in-memory only; the spec file is the durable format.
"""

from __future__ import annotations

import asyncio
import threading
import time
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import CurvagonError, UnknownSession
from .report import report_document
from .specfile import parse_spec, write_spec
from .surface import SlotRef, Surface

UNDO_DEPTH = 64
DEFAULT_TTL = 3600.0
FRAME_INTERVAL = 1.0 / 30.0


@dataclass
class SessionState:
    id: str
    surface: Surface = field(default_factory=Surface)
    undo_stack: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_touch: float = field(default_factory=time.monotonic)
    subscribers: list = field(default_factory=list)  # asyncio.Queue per socket
    embedding: Optional[object] = None  # last relaxed EmbeddedMesh


class FaceBody(BaseModel):
    sides: int
    edge_length: str = "1"


class GlueBody(BaseModel):
    a: list[int]  # [face, index]
    b: list[int]
    flip: bool = False


class RelaxBody(BaseModel):
    iters: int = 2000
    tol: float = 1e-8
    seed: int = 0


def embedding_frame(mesh) -> Optional[dict]:
    if mesh is None:
        return None
    s = mesh.surface
    faces = []
    for fid in sorted(s.faces):
        n = s.faces[fid].sides
        faces.append({
            "id": fid,
            "sides": n,
            "nodes": [mesh.corner_node[(fid, i)] for i in range(n)],
        })
    return {
        "positions": [[round(float(c), 9) for c in p] for p in mesh.positions],
        "springs": [[u, v, r] for u, v, r in mesh.springs],
        "faces": faces,
    }


def create_app(ttl: float = DEFAULT_TTL) -> FastAPI:
    app = FastAPI(title="curvagons session service")
    sessions: dict[str, SessionState] = {}

    def get_session(sid: str) -> SessionState:
        now = time.monotonic()
        for key in [k for k, st in sessions.items() if now - st.last_touch > ttl]:
            del sessions[key]
        st = sessions.get(sid)
        if st is None:
            raise UnknownSession(f"no session {sid!r}")
        st.last_touch = now
        return st

    def broadcast(st: SessionState, event: str, frame=None):
        doc = {
            "event": event,
            "report": report_document(st.surface),
            "frame": frame if frame is not None else embedding_frame(st.embedding),
        }
        loop = getattr(app.state, "loop", None)

        def push():
            for q in list(st.subscribers):
                try:
                    q.put_nowait(doc)
                except asyncio.QueueFull:
                    pass

        if loop is not None and loop.is_running():
            loop.call_soon_threadsafe(push)
        else:
            push()

    @app.on_event("startup")
    async def capture_loop():
        app.state.loop = asyncio.get_running_loop()

    @app.exception_handler(CurvagonError)
    async def domain_error(request: Request, exc: CurvagonError):
        status = 404 if isinstance(exc, UnknownSession) else 422
        return JSONResponse(status_code=status,
                            content={"status": "error", "code": exc.code,
                                     "message": str(exc)})

    @app.post("/sessions")
    def create_session():
        sid = uuid.uuid4().hex
        sessions[sid] = SessionState(id=sid)
        return {"status": "ok", "id": sid}

    @app.post("/sessions/{sid}/faces")
    def add_face(sid: str, body: FaceBody):
        st = get_session(sid)
        with st.lock:
            st.undo_stack.append(st.surface.copy())
            del st.undo_stack[:-UNDO_DEPTH]
            fid = st.surface.add_face(body.sides, Fraction(body.edge_length))
            st.embedding = None
        broadcast(st, "face-added")
        return {"status": "ok", "face": fid, "report": report_document(st.surface)}

    @app.post("/sessions/{sid}/glue")
    def glue(sid: str, body: GlueBody):
        st = get_session(sid)
        with st.lock:
            st.undo_stack.append(st.surface.copy())
            del st.undo_stack[:-UNDO_DEPTH]
            try:
                st.surface.glue(SlotRef(body.a[0], body.a[1]),
                                SlotRef(body.b[0], body.b[1]), body.flip)
            except CurvagonError:
                st.undo_stack.pop()
                raise
            st.embedding = None
        broadcast(st, "glued")
        return {"status": "ok", "report": report_document(st.surface)}

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        st = get_session(sid)
        with st.lock:
            if st.undo_stack:
                st.surface = st.undo_stack.pop()
                st.embedding = None
        broadcast(st, "undone")
        return {"status": "ok", "report": report_document(st.surface)}

    @app.get("/sessions/{sid}/report")
    def get_report(sid: str):
        st = get_session(sid)
        return {"status": "ok", "report": report_document(st.surface)}

    @app.get("/sessions/{sid}/spec")
    def get_spec(sid: str):
        st = get_session(sid)
        return {"status": "ok", "spec": write_spec(st.surface)}

    @app.post("/sessions/{sid}/spec")
    def put_spec(sid: str, body: dict):
        st = get_session(sid)
        with st.lock:
            st.undo_stack.append(st.surface.copy())
            del st.undo_stack[:-UNDO_DEPTH]
            st.surface = parse_spec(body.get("spec", ""))
            st.embedding = None
        broadcast(st, "spec-loaded")
        return {"status": "ok", "report": report_document(st.surface)}

    @app.post("/sessions/{sid}/relax")
    async def relax_route(sid: str, body: RelaxBody):
        from .embedding import init_embedding, relax

        st = get_session(sid)

        def work():
            mesh = init_embedding(st.surface, body.seed)
            done = 0
            last_frame = 0.0
            chunk = 200
            while done < body.iters:
                step = min(chunk, body.iters - done)
                mesh, rep = relax(mesh, step, body.tol)
                done += rep.iterations if rep.iterations else step
                now = time.monotonic()
                if now - last_frame >= FRAME_INTERVAL:
                    last_frame = now
                    broadcast(st, "relax-progress", embedding_frame(mesh))
                if rep.converged:
                    break
            return mesh, rep

        with st.lock:
            mesh, rep = await asyncio.get_event_loop().run_in_executor(None, work)
            st.embedding = mesh
        broadcast(st, "relaxed")
        return {
            "status": "ok",
            "iterations": rep.iterations,
            "final_energy": rep.final_energy,
            "max_edge_residual": rep.max_edge_residual,
            "gradient_norm": rep.gradient_norm,
            "converged": rep.converged,
        }

    @app.get("/sessions/{sid}/embedding")
    def get_embedding(sid: str):
        from .embedding import init_embedding

        st = get_session(sid)
        if st.embedding is None and st.surface.faces and st.surface.is_connected():
            st.embedding = init_embedding(st.surface, 0)
        return {"status": "ok", "frame": embedding_frame(st.embedding)}

    @app.websocket("/sessions/{sid}/live")
    async def live(ws: WebSocket, sid: str):
        st = sessions.get(sid)
        if st is None:
            await ws.close(code=4404)
            return
        await ws.accept()
        q: asyncio.Queue = asyncio.Queue(maxsize=256)
        st.subscribers.append(q)
        try:
            while True:
                doc = await q.get()
                await ws.send_json(doc)
                await asyncio.sleep(FRAME_INTERVAL)  # <= 30 frames/sec
        except WebSocketDisconnect:
            pass
        finally:
            if q in st.subscribers:
                st.subscribers.remove(q)

    return app
