"""Workbench orchestration, persistence, and HTTP API."""

from .api import create_app, serve
from .store import WorkbenchStore
from .workbench import (
    ItemState,
    NotEligible,
    RunNotFound,
    RunRecord,
    Workbench,
    WorkbenchError,
    record_from_json,
    record_to_json,
)

__all__ = [
    "ItemState",
    "NotEligible",
    "RunNotFound",
    "RunRecord",
    "Workbench",
    "WorkbenchError",
    "WorkbenchStore",
    "create_app",
    "record_from_json",
    "record_to_json",
    "serve",
]
