from .app import ServiceConfig, create_app
from .jobs import Job, JobStore
from .store import SessionStore

__all__ = ["Job", "JobStore", "ServiceConfig", "SessionStore", "create_app"]
