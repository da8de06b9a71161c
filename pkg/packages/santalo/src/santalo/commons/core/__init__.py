"""Core ID helpers."""

from santalo.commons.core.ids import instance_id, new_id

__all__ = [
    "new_id",
    "instance_id",
]
