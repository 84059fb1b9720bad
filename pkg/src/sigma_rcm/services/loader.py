"""Load model and skeleton files (JSON or YAML).

Syntax errors carry line/column positions; structural errors carry the dotted
location of the offending field. Both surface as ``ModelFileError``.
"""

import json
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ValidationError

from sigma_rcm.exceptions import ModelFileError
from sigma_rcm.models.documents import ModelDocument, SkeletonDocument
from sigma_rcm.models.relational import RelationalModel
from sigma_rcm.models.skeleton import Skeleton


logger = logging.getLogger(__name__)

YAML_SUFFIXES = {".yaml", ".yml"}


def _read_data(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(str(path), f"Cannot read file: {e.strerror or e}") from e

    if path.suffix.lower() in YAML_SUFFIXES:
        try:
            return yaml.safe_load(text)
        except yaml.MarkedYAMLError as e:
            mark = e.problem_mark
            raise ModelFileError(
                str(path),
                str(e.problem or e),
                line=mark.line + 1 if mark else None,
                column=mark.column + 1 if mark else None,
            ) from e
        except yaml.YAMLError as e:
            raise ModelFileError(str(path), str(e)) from e

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(str(path), e.msg, line=e.lineno, column=e.colno) from e


def _validate(path: Path, document_cls: type[BaseModel], data: Any) -> Any:
    try:
        return document_cls.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or None
        raise ModelFileError(str(path), first["msg"], location=location) from e


def load_model(path: str | Path) -> RelationalModel:
    """Read a model file into a ``RelationalModel``.

    Args:
        path: JSON file, or YAML file with a .yaml/.yml suffix

    Returns:
        The parsed model (not yet checked with ``validate_model``)

    Raises:
        ModelFileError: On I/O, syntax or structural errors
    """
    file_path = Path(path)
    document = _validate(file_path, ModelDocument, _read_data(file_path))
    model = RelationalModel.from_dict(document.model_dump(by_alias=True))
    logger.info(
        f"Loaded model from {file_path}: {len(model.schema.entities)} entities, "
        f"{len(model.dependencies)} dependencies"
    )
    return model


def load_skeleton(path: str | Path) -> Skeleton:
    """Read a skeleton file into a ``Skeleton``.

    Raises:
        ModelFileError: On I/O, syntax or structural errors
    """
    file_path = Path(path)
    document = _validate(file_path, SkeletonDocument, _read_data(file_path))
    skeleton = Skeleton.from_dict(document.model_dump(by_alias=True))
    logger.info(f"Loaded skeleton from {file_path}: {skeleton.size} entity instances")
    return skeleton
