"""JSON schemas of the stabkit input documents."""
import json
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List

SCHEMA_DIR = Path(__file__).parent

SCHEMA_NAMES = ("charge", "form", "mukai", "path", "representation", "sample", "sigma")


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """Schema document ``<name>.json``.

    Raises:
        KeyError: For an unknown schema name
    """
    if name not in SCHEMA_NAMES:
        raise KeyError(f"Unknown schema {name!r}; known: {', '.join(SCHEMA_NAMES)}")
    with open(SCHEMA_DIR / f"{name}.json", "r", encoding="utf-8") as f:
        return json.load(f)


def required_keys(name: str) -> List[str]:
    return list(load_schema(name).get("required", []))
