"""Stateless HTTP/JSON facade over the engine.

All state lives in request payloads; the only shared mutable structure is the
in-memory job store behind a lock, used when an enumeration outlives the
synchronous wait budget (the request then gets 202 + a polling token).
"""

from __future__ import annotations

import json
import threading
import uuid

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import DomainError, IntegrityError
from .laurent import LaurentPolynomial
from .quiver import IceQuiver, mutate_matrix
from .seeds import Seed, mutate_seed, mutate_seed_sequence
from .ydynamics import YSeed, mutate_y_seed

SCHEMAS = {
    "quiver": {
        "type": "object",
        "required": ["n", "m", "entries"],
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "m": {"type": "integer", "minimum": 1},
            "entries": {
                "type": "array",
                "items": {
                    "type": "array",
                    "prefixItems": [
                        {"type": "integer"},
                        {"type": "integer"},
                        {"type": "integer"},
                    ],
                    "description": "[i, j, b_ij] with 1-based indices, j mutable",
                },
            },
            "symmetrizer": {"type": "array", "items": {"type": "integer"}},
            "names": {"type": "array", "items": {"type": "string"}},
        },
    },
    "laurent_terms": {
        "type": "array",
        "items": {
            "type": "array",
            "prefixItems": [
                {"type": "array", "items": {"type": "integer"}},
                {"type": "string", "description": "integer coefficient"},
            ],
        },
    },
    "seed_state": {
        "type": "object",
        "required": ["quiver", "cluster", "history"],
        "properties": {
            "quiver": {"$ref": "#/quiver"},
            "cluster": {"type": "array", "items": {"$ref": "#/laurent_terms"}},
            "history": {
                "type": "array",
                "items": {"type": "integer"},
                "description": "1-based vertices mutated since the initial seed",
            },
        },
    },
    "mutate_request": {
        "type": "object",
        "required": ["quiver", "k"],
        "properties": {"quiver": {"$ref": "#/quiver"}, "k": {"type": "integer"}},
    },
    "class_request": {
        "type": "object",
        "required": ["quiver"],
        "properties": {"quiver": {"$ref": "#/quiver"}, "cap": {"type": "integer"}},
    },
    "periodicity_request": {
        "type": "object",
        "required": ["pair"],
        "properties": {
            "pair": {"type": "string", "examples": ["A2,A2"]},
            "mode": {"enum": ["exact", "modular"]},
        },
    },
}


class JobStore:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs = {}

    def create(self):
        token = uuid.uuid4().hex
        with self._lock:
            self._jobs[token] = {"status": "running", "progress": 0}
        return token

    def update(self, token, **fields):
        with self._lock:
            self._jobs[token].update(fields)

    def get(self, token):
        with self._lock:
            job = self._jobs.get(token)
            return dict(job) if job else None


def _seed_state(seed, history):
    return {
        "quiver": seed.quiver.to_json(),
        "cluster": [p.to_json_terms() for p in seed.cluster],
        "history": list(history),
    }


def _load_seed_state(state):
    quiver = IceQuiver.from_json(state["quiver"])
    cluster = [
        LaurentPolynomial.from_json_terms(quiver.m, t) for t in state["cluster"]
    ]
    history = [int(k) for k in state.get("history", [])]
    seed = Seed(quiver, cluster)
    # replay verification: rewinding the history must give the initial seed,
    # and replaying it forward must reproduce the submitted state
    rewound = seed
    for k in reversed(history):
        rewound = mutate_seed(rewound, k - 1)
    initial = Seed.initial(rewound.quiver)
    if rewound != initial:
        raise DomainError("history does not replay to the submitted state")
    replayed = mutate_seed_sequence(initial, [k - 1 for k in history])
    if replayed != seed:
        raise IntegrityError("replay verification failed after rewind succeeded")
    return seed, history


def create_app(sync_wait_seconds=2.0):
    app = FastAPI(title="cluster-workbench", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    jobs = JobStore()
    app.state.jobs = jobs
    app.state.sync_wait_seconds = sync_wait_seconds

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        return JSONResponse(
            status_code=422,
            content={"code": "domain_error", "message": str(exc)},
        )

    @app.exception_handler(IntegrityError)
    async def integrity_error_handler(request: Request, exc: IntegrityError):
        return JSONResponse(
            status_code=500,
            content={"code": "integrity_error", "message": str(exc)},
        )

    async def _body(request):
        try:
            return json.loads(await request.body())
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise MalformedBody(str(exc)) from exc

    class MalformedBody(Exception):
        pass

    @app.exception_handler(MalformedBody)
    async def malformed_handler(request: Request, exc: MalformedBody):
        return JSONResponse(
            status_code=400,
            content={"code": "malformed", "message": str(exc)},
        )

    def _require(body, *fields):
        if not isinstance(body, dict):
            raise MalformedBody("body must be a JSON object")
        for f in fields:
            if f not in body:
                raise MalformedBody(f"missing field {f!r}")

    def _mutable_index(quiver, k):
        try:
            k = int(k)
        except (TypeError, ValueError):
            raise MalformedBody("k must be an integer") from None
        if not 1 <= k <= quiver.n:
            raise DomainError(
                f"vertex {k} is not mutable (mutable range is 1..{quiver.n})"
            )
        return k - 1

    @app.get("/v1/health")
    async def health():
        return {"ok": True}

    @app.get("/v1/schema")
    async def schema():
        return SCHEMAS

    @app.post("/v1/quiver/mutate")
    async def quiver_mutate(request: Request):
        body = await _body(request)
        _require(body, "quiver", "k")
        quiver = IceQuiver.from_json(body["quiver"])
        k = _mutable_index(quiver, body["k"])
        return {"quiver": mutate_matrix(quiver, k).to_json()}

    @app.post("/v1/seed/mutate")
    async def seed_mutate(request: Request):
        body = await _body(request)
        _require(body, "state", "k")
        seed, history = _load_seed_state(body["state"])
        k = _mutable_index(seed.quiver, body["k"])
        mutated = mutate_seed(seed, k)
        state = _seed_state(mutated, history + [k + 1])
        state["new_variable"] = mutated.cluster[k].format(
            [seed.quiver.label(i) for i in range(seed.quiver.m)]
        )
        return {"state": state}

    @app.post("/v1/seed/initial")
    async def seed_initial(request: Request):
        body = await _body(request)
        _require(body, "quiver")
        quiver = IceQuiver.from_json(body["quiver"])
        return {"state": _seed_state(Seed.initial(quiver), [])}

    @app.post("/v1/yseed/mutate")
    async def yseed_mutate(request: Request):
        body = await _body(request)
        _require(body, "yseed", "k")
        ys = YSeed.from_json(body["yseed"])
        k = _mutable_index(ys.quiver, body["k"])
        return {"yseed": mutate_y_seed(ys, k).to_json()}

    @app.post("/v1/yseed/initial")
    async def yseed_initial(request: Request):
        body = await _body(request)
        _require(body, "quiver")
        quiver = IceQuiver.from_json(body["quiver"])
        return {"yseed": YSeed.initial(quiver).to_json()}

    def _run_job(token, fn):
        try:
            result = fn(lambda done: jobs.update(token, progress=done))
            jobs.update(token, status="done", result=result)
        except DomainError as exc:
            jobs.update(token, status="error", code="domain_error", message=str(exc))
        except Exception as exc:  # pragma: no cover - defensive
            jobs.update(token, status="error", code="integrity_error", message=str(exc))

    def _submit(fn):
        """Run fn synchronously up to the wait budget, else hand back a token."""
        token = jobs.create()
        worker = threading.Thread(target=_run_job, args=(token, fn), daemon=True)
        worker.start()
        worker.join(timeout=app.state.sync_wait_seconds)
        job = jobs.get(token)
        if job["status"] == "done":
            return JSONResponse(job["result"])
        if job["status"] == "error":
            code = 422 if job.get("code") == "domain_error" else 500
            return JSONResponse(
                status_code=code,
                content={"code": job.get("code"), "message": job.get("message")},
            )
        return JSONResponse(status_code=202, content={"job": token})

    @app.post("/v1/class")
    async def mutation_class_endpoint(request: Request):
        from .mutation_class import mutation_class

        body = await _body(request)
        _require(body, "quiver")
        quiver = IceQuiver.from_json(body["quiver"])
        cap = int(body.get("cap", 100000))

        def work(progress):
            report = mutation_class(quiver, cap=cap, progress=progress)
            payload = report.to_json()
            payload["size"] = report.class_size
            payload["double"] = report.double_arrow_count
            return payload

        return _submit(work)

    @app.post("/v1/periodicity")
    async def periodicity_endpoint(request: Request):
        from .periodicity import verify_restricted_periodicity

        body = await _body(request)
        _require(body, "pair")
        pair = str(body["pair"])
        mode = str(body.get("mode", "exact"))

        def work(progress):
            return verify_restricted_periodicity(pair, mode=mode).to_json()

        return _submit(work)

    @app.get("/v1/jobs/{token}")
    async def job_status(token: str):
        job = jobs.get(token)
        if job is None:
            return JSONResponse(status_code=404, content={"code": "unknown_job"})
        return job

    return app


app = create_app()
