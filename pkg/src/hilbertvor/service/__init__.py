"""HTTP protocol service: pydantic models, session store, FastAPI app."""

from .models import ProtocolError, ProtocolRequest, ProtocolResponse
from .session import SessionStore

__all__ = ["ProtocolError", "ProtocolRequest", "ProtocolResponse", "SessionStore"]
