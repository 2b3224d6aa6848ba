"""Base models shared by parameter sets and run records."""

from __future__ import annotations

from datetime import UTC, datetime
from uuid import uuid4

from pydantic import BaseModel, ConfigDict, Field


def _utcnow() -> datetime:
    return datetime.now(UTC)


def _new_id() -> str:
    return str(uuid4())


class ParamsBase(BaseModel):
    """Base for immutable, validated algorithm parameter sets."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class RecordBase(BaseModel):
    """Base for run records written next to experiment outputs."""

    id: str = Field(default_factory=_new_id)
    created_at: datetime = Field(default_factory=_utcnow)
    updated_at: datetime = Field(default_factory=_utcnow)

    model_config = ConfigDict(populate_by_name=True)
