"""Local HTTP service exposing planning and simulation to scripts and the
dispatch console.

Bodies are parsed by hand (not via response models) so that responses go
through the same canonical serializer as the CLI; service and CLI output
are byte-identical for identical inputs. One simulation session exists
at a time; starting while one is en route yields 409.
"""

from __future__ import annotations

import asyncio
import json
from math import inf
from typing import Any, Mapping

from fastapi import FastAPI, Request
from fastapi.responses import Response, StreamingResponse

from . import sim as simlib
from .constraints import RelaxationPolicy, Requirements, SweepPolicy
from .graph import GraphError, RoadGraph, UnknownNodeError, graph_to_doc
from .jsonio import canonical_dumps
from .planner import PlannerConfig, plan, result_to_doc
from .presets import get_preset


class _BadRequest(ValueError):
    pass


def _json_response(doc: Any, status_code: int = 200) -> Response:
    return Response(
        content=canonical_dumps(doc) + "\n",
        media_type="application/json",
        status_code=status_code,
    )


def _error(status_code: int, message: str) -> Response:
    return _json_response({"error": message}, status_code)


async def _read_json(request: Request) -> Mapping[str, Any]:
    try:
        doc = json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError):
        raise _BadRequest("body must be valid JSON") from None
    if not isinstance(doc, Mapping):
        raise _BadRequest("body must be a JSON object")
    return doc


def _config_from_body(doc: Mapping[str, Any]) -> PlannerConfig:
    """Planner configuration from request fields (null = not provided)."""
    alpha, d1, d2 = 1.0, inf, inf
    if doc.get("preset") is not None:
        try:
            preset = get_preset(str(doc["preset"]))
        except ValueError as exc:
            raise _BadRequest(str(exc)) from None
        alpha, d1, d2 = preset.alpha, preset.d1_s, preset.d2_s

    def num(name: str, default: float) -> float:
        v = doc.get(name)
        if v is None:
            return default
        try:
            return float(v)
        except (TypeError, ValueError):
            raise _BadRequest(f"field {name!r} must be a number") from None

    try:
        return PlannerConfig(
            alpha=num("alpha", alpha),
            requirements=Requirements(d1_s=num("d1_s", d1), d2_s=num("d2_s", d2)),
            k=int(num("k", 8)),
            relaxation=RelaxationPolicy(
                growth=num("relax_d", 1.5), max_d1_s=num("relax_max_s", inf)
            ),
            sweep=SweepPolicy(low=num("beta1", 1.0), high=num("beta2", 1.0), rows=int(num("h", 1))),
        )
    except ValueError as exc:
        raise _BadRequest(str(exc)) from None


def _endpoints_from_body(doc: Mapping[str, Any]) -> tuple[str, str]:
    try:
        return str(doc["from"]), str(doc["to"])
    except KeyError as exc:
        raise _BadRequest(f"missing field {exc}") from None


class _ServiceState:
    def __init__(self, graph: RoadGraph) -> None:
        self.graph = graph
        self.sim: simlib.TransportState | None = None
        self.version = 0
        self.lock = asyncio.Lock()


def create_app(graph: RoadGraph, console_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="covroute service", docs_url=None, redoc_url=None)
    svc = _ServiceState(graph)
    app.state.covroute = svc

    @app.get("/graph")
    async def get_graph() -> Response:
        return _json_response(graph_to_doc(svc.graph))

    @app.post("/plan")
    async def post_plan(request: Request) -> Response:
        try:
            doc = await _read_json(request)
            s, t = _endpoints_from_body(doc)
            config = _config_from_body(doc)
        except _BadRequest as exc:
            return _error(400, str(exc))
        try:
            result = plan(svc.graph, s, t, config)
        except UnknownNodeError as exc:
            return _error(404, str(exc))
        return _json_response(result_to_doc(result))

    @app.post("/sim/start")
    async def sim_start(request: Request) -> Response:
        try:
            doc = await _read_json(request)
            s, t = _endpoints_from_body(doc)
            config = _config_from_body(doc)
        except _BadRequest as exc:
            return _error(400, str(exc))
        async with svc.lock:
            if svc.sim is not None and svc.sim.status == "en_route":
                return _error(409, "a simulation is already en route")
            try:
                state = simlib.start(svc.graph, s, t, config)
            except UnknownNodeError as exc:
                return _error(404, str(exc))
            except simlib.SimError as exc:
                return _error(422, str(exc))
            svc.sim = state
            svc.version += 1
            return _json_response(simlib.state_to_doc(state))

    @app.post("/sim/event")
    async def sim_event(request: Request) -> Response:
        try:
            doc = await _read_json(request)
        except _BadRequest as exc:
            return _error(400, str(exc))
        async with svc.lock:
            if svc.sim is None:
                return _error(404, "no simulation session")
            payload = dict(doc)
            # Interactive events apply at the current clock unless stamped.
            payload.setdefault("at_time_s", svc.sim.clock_s)
            try:
                event = simlib.event_from_doc(payload)
            except ValueError as exc:
                return _error(400, str(exc))
            try:
                state = simlib.apply_event(svc.sim, event)
            except simlib.SimError as exc:
                return _error(409, str(exc))
            except UnknownNodeError as exc:
                return _error(404, str(exc))
            except (GraphError, ValueError) as exc:
                return _error(400, str(exc))
            svc.sim = state
            svc.graph = state.graph  # relabels become visible via GET /graph
            svc.version += 1
            return _json_response(simlib.state_to_doc(state))

    @app.post("/sim/advance")
    async def sim_advance(request: Request) -> Response:
        try:
            doc = await _read_json(request)
        except _BadRequest as exc:
            return _error(400, str(exc))
        try:
            dt = float(doc["dt_s"])
        except (KeyError, TypeError, ValueError):
            return _error(400, "field 'dt_s' must be a number")
        async with svc.lock:
            if svc.sim is None:
                return _error(404, "no simulation session")
            try:
                state = simlib.advance(svc.sim, dt)
            except simlib.SimError as exc:
                return _error(409, str(exc))
            except ValueError as exc:
                return _error(400, str(exc))
            svc.sim = state
            svc.version += 1
            return _json_response(simlib.state_to_doc(state))

    @app.get("/sim/state")
    async def sim_state() -> Response:
        if svc.sim is None:
            return _error(404, "no simulation session")
        return _json_response(simlib.state_to_doc(svc.sim))

    @app.get("/sim/stream")
    async def sim_stream() -> StreamingResponse:
        async def gen():
            last = -1
            idle_polls = 0
            while True:
                if svc.version != last:
                    last = svc.version
                    idle_polls = 0
                    if svc.sim is None:
                        yield 'data: {"status":"idle"}\n\n'
                    else:
                        yield f"data: {canonical_dumps(simlib.state_to_doc(svc.sim))}\n\n"
                else:
                    idle_polls += 1
                    if idle_polls >= 300:  # ~15 s keep-alive comment
                        idle_polls = 0
                        yield ": keep-alive\n\n"
                await asyncio.sleep(0.05)

        return StreamingResponse(gen(), media_type="text/event-stream")

    if console_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/console", StaticFiles(directory=console_dir, html=True), name="console")
    return app
