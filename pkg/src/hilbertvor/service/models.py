"""Pydantic request/response models for the versioned JSON protocol.

Every request is idempotent for a given snapshot id; responses carry the
snapshot id they answer (mutations return the id of the new snapshot).
Error codes mirror the CLI exit codes: 2 input error, 3 degeneracy.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

PROTOCOL_VERSION = 1

RequestName = Literal[
    "load_scene",
    "insert_site",
    "move_site",
    "remove_site",
    "query_distance",
    "query_ball",
    "query_bisector",
    "query_zregion",
    "query_sectors",
    "full_diagram",
]


class ProtocolRequest(BaseModel):
    version: int = PROTOCOL_VERSION
    request: RequestName
    payload: dict = Field(default_factory=dict)


class ProtocolError(BaseModel):
    code: int  # 2 input error, 3 geometric degeneracy
    message: str
    details: Optional[dict] = None


class ProtocolResponse(BaseModel):
    version: int = PROTOCOL_VERSION
    request: str
    snapshot_id: Optional[str] = None
    result: Optional[dict] = None
    error: Optional[ProtocolError] = None
