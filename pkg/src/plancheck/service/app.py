"""HTTP/JSON service exposing the workbench pipeline.

Every endpoint is a thin adapter over the same library calls the CLI
uses: identical inputs yield identical session JSON either way.  Plan
generation and feedback are asynchronous jobs (POST returns a job id,
GET polls) so the client contract also covers slow live providers.
"""

import time
from contextlib import asynccontextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..errors import (
    EmptyText,
    NoTranslation,
    NotFound,
    NotHard,
    NotVerified,
    PlanCheckError,
    ProviderError,
    UntranslatableConstraint,
)
from ..llm.provider import ENV_MODEL, ENV_URL, FixtureProvider, FixtureStore, LiveProvider, Provider
from ..pipeline import Workbench
from ..scenario import default_fixture_dir
from ..session import Clock, session_document
from .jobs import JobStore
from .store import SessionStore

import os


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    provider_mode: str = "recorded"  # recorded | live
    fixture_dir: Path | None = None
    sessions_dir: Path = Path("sessions")
    static_dir: Path | None = None
    workers: int = 4

    def validate(self) -> None:
        if self.provider_mode not in ("recorded", "live"):
            raise ValueError(f"provider mode must be 'recorded' or 'live', got {self.provider_mode!r}")
        if self.provider_mode == "recorded":
            directory = self.fixture_dir or default_fixture_dir()
            if not Path(directory).is_dir():
                raise ValueError(f"recorded mode needs a fixture directory, {directory} is not one")
        else:
            missing = [name for name in (ENV_URL, ENV_MODEL) if not os.environ.get(name)]
            if missing:
                raise ValueError("live mode needs environment variables: " + ", ".join(missing))

    def build_provider(self) -> Provider:
        if self.provider_mode == "live":
            return LiveProvider()
        directory = self.fixture_dir or default_fixture_dir()
        return FixtureProvider(FixtureStore.from_dir(directory))


class ConstraintIn(BaseModel):
    nl_text: str
    kind: Literal["hard", "soft"]


class ConfirmIn(BaseModel):
    accept: bool


class PlanIn(BaseModel):
    task_prompt: str
    n: int = Field(default=3, ge=1)


class FeedbackIn(BaseModel):
    plan_id: str
    text: str


class SessionCreated(BaseModel):
    session_id: str


class JobCreated(BaseModel):
    job_id: str


_STATUS_BY_ERROR = (
    (NotFound, 404),
    (EmptyText, 400),
    (NotHard, 400),
    (NoTranslation, 400),
    (NotVerified, 400),
    (UntranslatableConstraint, 400),
    (ProviderError, 502),
)


def _status_for(exc: PlanCheckError) -> int:
    for kind, status in _STATUS_BY_ERROR:
        if isinstance(exc, kind):
            return status
    return 500


def create_app(
    config: ServiceConfig, provider: Provider | None = None, clock: Clock = time.time
) -> FastAPI:
    config.validate()
    provider = provider if provider is not None else config.build_provider()
    store = SessionStore(config.sessions_dir)
    jobs = JobStore(max_workers=config.workers)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        jobs.shutdown()  # finish in-flight verifications before exiting

    app = FastAPI(title="plancheck", version="1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store
    app.state.jobs = jobs

    @app.exception_handler(PlanCheckError)
    async def handle_package_error(request, exc: PlanCheckError):
        return JSONResponse(status_code=_status_for(exc), content={"detail": str(exc)})

    def mutate(session_id: str, fn):
        """Load-mutate-save under the session's single-writer lock."""
        with store.lock(session_id):
            session = store.get(session_id)
            workbench = Workbench(session, provider, clock)
            result = fn(workbench)
            store.save(session_id, session)
            return result

    @app.post("/api/v1/sessions", response_model=SessionCreated)
    def create_session():
        return SessionCreated(session_id=store.create())

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str):
        # the exact persisted bytes, so responses survive restarts byte-identically
        return Response(content=store.raw(session_id), media_type="application/json")

    @app.post("/api/v1/sessions/{session_id}/constraints")
    def add_constraint(session_id: str, body: ConstraintIn):
        constraint = mutate(
            session_id, lambda wb: wb.define_constraint(body.nl_text, body.kind)
        )
        session = store.get(session_id)
        doc = next(c for c in session_document(session)["constraints"] if c["id"] == constraint.id)
        return doc

    @app.post("/api/v1/sessions/{session_id}/constraints/{cid}/confirm")
    def confirm_constraint(session_id: str, cid: str, body: ConfirmIn):
        kept = mutate(session_id, lambda wb: wb.confirm_constraint(cid, body.accept))
        if kept is None:
            return {"constraint": None, "removed": cid}
        session = store.get(session_id)
        doc = next(c for c in session_document(session)["constraints"] if c["id"] == cid)
        return {"constraint": doc, "removed": None}

    @app.delete("/api/v1/sessions/{session_id}/constraints/{cid}")
    def delete_constraint(session_id: str, cid: str):
        mutate(session_id, lambda wb: wb.remove_constraint(cid))
        return {"removed": cid}

    @app.post("/api/v1/sessions/{session_id}/plan", response_model=JobCreated)
    def plan(session_id: str, body: PlanIn):
        store.raw(session_id)  # 404 before queueing
        job_id = jobs.submit(
            lambda: mutate(session_id, lambda wb: wb.generate(body.task_prompt, body.n))
        )
        return JobCreated(job_id=job_id)

    @app.post("/api/v1/sessions/{session_id}/feedback", response_model=JobCreated)
    def feedback(session_id: str, body: FeedbackIn):
        store.raw(session_id)
        job_id = jobs.submit(
            lambda: mutate(session_id, lambda wb: wb.apply_feedback(body.plan_id, body.text))
        )
        return JobCreated(job_id=job_id)

    @app.get("/api/v1/jobs/{job_id}")
    def job_status(job_id: str):
        return jobs.get(job_id).as_dict()

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
