"""Shared pydantic base for reports, documents, knob blocks and manifests."""

from pydantic import BaseModel, ConfigDict


class BaseSchema(BaseModel):
    """Model base with alias-aware input and output.

    Report rows declare ``level`` with the alias ``lambda``; either name is
    accepted on input and the alias is what lands in artifacts. Unknown keys
    are dropped so older readers can load newer documents.
    """

    model_config = ConfigDict(
        extra="ignore",
        populate_by_name=True,
        validate_assignment=True,
    )

    def to_json(self, indent: int | None = None) -> str:
        """JSON text with aliases applied. Infinite floats are written as ``null``."""
        return self.model_dump_json(indent=indent, by_alias=True)
