"""Infrastructure helpers (instance fan-out)."""

from santalo.commons.infra.tasks import map_ordered

__all__ = [
    "map_ordered",
]
