"""
artifacts/__init__.py

Public interface for artifact output.

- ArtifactWriter writes deterministic text, CSV and JSON files.
- Codecs convert snapshots and DMD models to and from their file formats.
"""

from .formats import (
    dmd_model_from_dict,
    dmd_model_to_dict,
    format_float,
    read_snapshot_csv,
    snapshot_rows,
    to_jsonable,
)
from .writer import ArtifactWriter

__all__ = [
    "ArtifactWriter",
    "dmd_model_from_dict",
    "dmd_model_to_dict",
    "format_float",
    "read_snapshot_csv",
    "snapshot_rows",
    "to_jsonable",
]
