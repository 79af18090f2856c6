"""In-memory verification jobs on a bounded worker pool.

Plan generation and feedback run asynchronously: the endpoint returns a
job id immediately and clients poll for the result.  Results are immutable
once stored; jobs do not survive a restart (sessions do).
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ..errors import NotFound


@dataclass
class Job:
    id: str
    status: str = "pending"  # pending | done | error
    result: list | None = None
    error: str | None = None

    def as_dict(self) -> dict:
        doc: dict = {"status": self.status}
        if self.status == "done":
            doc["result"] = self.result
        if self.status == "error":
            doc["error"] = self.error
        return doc


@dataclass
class JobStore:
    max_workers: int = 4
    _jobs: dict = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _counter: int = 0

    def __post_init__(self):
        self._executor = ThreadPoolExecutor(max_workers=self.max_workers)

    def submit(self, work: Callable[[], list]) -> str:
        with self._lock:
            self._counter += 1
            job = Job(f"j{self._counter}")
            self._jobs[job.id] = job

        def run():
            try:
                result = work()
            except Exception as exc:  # job errors are data for the client
                with self._lock:
                    job.error = str(exc)
                    job.status = "error"
            else:
                with self._lock:
                    job.result = result
                    job.status = "done"

        self._executor.submit(run)
        return job.id

    def get(self, job_id: str) -> Job:
        with self._lock:
            if job_id not in self._jobs:
                raise NotFound(f"job {job_id} not found")
            return self._jobs[job_id]

    def shutdown(self) -> None:
        """Let in-flight verifications finish before the process exits."""
        self._executor.shutdown(wait=True)
