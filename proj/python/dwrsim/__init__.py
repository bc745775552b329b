"""SIMT core simulator with dynamic warp resizing."""

from ._core import (
    Program,
    coalesce_addresses,
    generate_workload,
    insert_lat_barriers,
    lat_count,
    parse_program,
    run,
    storage_overhead,
)

__all__ = [
    "Program",
    "coalesce_addresses",
    "generate_workload",
    "insert_lat_barriers",
    "lat_count",
    "parse_program",
    "run",
    "storage_overhead",
]
