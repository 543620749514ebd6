"""
writer.py

Deterministic artifact output.

Provides ArtifactWriter for writing text, CSV and JSON files under an output directory.
Every file is written with '\\n' line endings; JSON keys are sorted so identical inputs give
byte-identical files. File-system failures surface as ArtifactWriteError.

Purpose:
- Keep file-system handling out of the pipeline stages.
- Record what each run produced.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union

from .formats import format_float, to_jsonable
from ..exceptions import ArtifactWriteError

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """
    Writer for run artifacts under a root directory.

    Tracks the relative path of every file it writes in ``written``.
    """

    def __init__(self, root: Union[str, Path]):
        """
        Initialize artifact writer.

        Args:
            root: Output directory; created on first write.
        """
        self.root = Path(root)
        self.written: List[str] = []

    def _target(self, name: str) -> Path:
        path = self.root / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ArtifactWriteError(path=str(path), reason=str(e))
        return path

    def write_text(self, name: str, text: str) -> Path:
        """
        Write a text file.

        Args:
            name: Path relative to the root.
            text: File content.

        Returns:
            Absolute path of the file.

        Raises:
            ArtifactWriteError: If the file cannot be written.
        """
        path = self._target(name)
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(text)
        except OSError as e:
            raise ArtifactWriteError(path=str(path), reason=str(e))
        self.written.append(name)
        logger.debug("wrote %s", path)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        """Write a CSV file; floats use 17 significant digits."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
        return self.write_text(name, buffer.getvalue())

    def write_json(self, name: str, payload: Any) -> Path:
        """Write a JSON document with sorted keys."""
        text = json.dumps(to_jsonable(payload), indent=2, sort_keys=True, allow_nan=False)
        return self.write_text(name, text + "\n")
