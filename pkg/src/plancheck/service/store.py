"""Session files on disk plus per-session write serialization."""

import re
import threading
from pathlib import Path

from ..errors import NotFound
from ..session import Session, load, persist


class SessionStore:
    """One JSON file per session under a storage directory.

    Mutations go through :meth:`lock`, giving single-writer semantics per
    session while distinct sessions stay independent.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def _path(self, session_id: str) -> Path:
        if not re.fullmatch(r"[A-Za-z0-9_-]+", session_id):
            raise NotFound(f"session {session_id} not found")
        return self.directory / f"{session_id}.json"

    def create(self) -> str:
        with self._registry_lock:
            highest = 0
            for path in self.directory.glob("s*.json"):
                m = re.fullmatch(r"s(\d+)", path.stem)
                if m:
                    highest = max(highest, int(m.group(1)))
            session_id = f"s{highest + 1}"
            self._path(session_id).write_bytes(persist(Session()))
            return session_id

    def raw(self, session_id: str) -> bytes:
        path = self._path(session_id)
        if not path.exists():
            raise NotFound(f"session {session_id} not found")
        return path.read_bytes()

    def get(self, session_id: str) -> Session:
        return load(self.raw(session_id))

    def save(self, session_id: str, session: Session) -> None:
        path = self._path(session_id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_bytes(persist(session))
        tmp.replace(path)
