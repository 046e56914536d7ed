"""File operations for documents and reports."""
import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from stabkit.errors import InputError


class FileUtils:
    """Reading input documents and writing deterministic reports."""

    @staticmethod
    def validate_path(path: Path, base_dir: Optional[Path] = None) -> Path:
        """Resolve ``path``, optionally constraining it to ``base_dir``.

        Raises:
            InputError: If the path lies outside ``base_dir``
        """
        resolved = Path(path).resolve()
        if base_dir is not None:
            try:
                resolved.relative_to(Path(base_dir).resolve())
            except ValueError:
                raise InputError(f"Path {path} is outside base directory {base_dir}")
        return resolved

    @staticmethod
    def safe_read(path: Path, encoding: str = "utf-8") -> str:
        """Read a text file.

        Raises:
            InputError: If the file is missing or is not a regular file
        """
        validated_path = FileUtils.validate_path(path)
        if not validated_path.exists():
            raise InputError(f"File not found: {path}")
        if not validated_path.is_file():
            raise InputError(f"Not a file: {path}")
        with open(validated_path, "r", encoding=encoding) as f:
            return f.read()

    @staticmethod
    def safe_write(
        path: Path, content: str, encoding: str = "utf-8", create_parents: bool = True
    ) -> None:
        validated_path = FileUtils.validate_path(path)
        if create_parents:
            validated_path.parent.mkdir(parents=True, exist_ok=True)
        with open(validated_path, "w", encoding=encoding, newline="\n") as f:
            f.write(content)

    @staticmethod
    def read_json(path: Path) -> Any:
        """Parse a JSON document.

        Raises:
            InputError: If the file is missing or is not valid JSON
        """
        text = FileUtils.safe_read(path)
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Malformed JSON in {path}: {e}") from e

    @staticmethod
    def dumps_json(data: Any, indent: int = 2) -> str:
        """Sorted keys and fixed indentation, so equal data gives equal bytes."""
        return json.dumps(data, sort_keys=True, indent=indent, ensure_ascii=False) + "\n"

    @staticmethod
    def write_json(path: Path, data: Any, indent: int = 2) -> None:
        FileUtils.safe_write(path, FileUtils.dumps_json(data, indent))

    @staticmethod
    def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> int:
        """Write a table; returns the number of data rows."""
        validated_path = FileUtils.validate_path(path)
        validated_path.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        with open(validated_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow(row)
                count += 1
        return count

    @staticmethod
    def read_csv(path: Path) -> List[Dict[str, str]]:
        text = FileUtils.safe_read(path)
        return list(csv.DictReader(text.splitlines()))
