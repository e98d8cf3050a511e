"""
JSON Schema documents for experiment configs and command outputs.

The schemas ship in the top-level schemas/ directory as <name>.schema.json.
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Type

import jsonschema
import jsonschema.exceptions

from ..core.exceptions import ValidationError

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parents[3] / "schemas"


def schema_names() -> List[str]:
    return sorted(path.name[: -len(".schema.json")] for path in SCHEMA_DIR.glob("*.schema.json"))


@lru_cache(maxsize=None)
def load_schema(name: str) -> Dict[str, Any]:
    """
    Raises:
        ValidationError: If no schema of that name ships
    """
    path = SCHEMA_DIR / f"{name}.schema.json"
    if not path.is_file():
        raise ValidationError(f"no schema named {name!r}; available: {schema_names()}")
    schema = json.loads(path.read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    return schema


def validate_document(document: Any, name: str, error: Type[Exception] = ValidationError) -> None:
    """
    Validate a JSON-compatible document against a shipped schema.

    Args:
        document: Parsed JSON (dicts, lists, numbers, strings, None)
        name: Schema name, e.g. 'experiment' or 'vqe'
        error: Exception class raised on the first violation

    Raises:
        error: Naming the failing location and the violated constraint
    """
    validator = jsonschema.Draft7Validator(load_schema(name))
    violations = list(validator.iter_errors(document))
    if violations:
        worst = jsonschema.exceptions.best_match(violations)
        where = "/".join(str(part) for part in worst.absolute_path) or "<root>"
        logger.debug(f"{name} schema: {len(violations)} violations")
        raise error(f"{name} schema: {where}: {worst.message}")
