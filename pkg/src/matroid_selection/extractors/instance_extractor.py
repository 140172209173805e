"""
Instance Extractor
Reads and writes instance JSON files, validated by schema and model invariants
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Union

import jsonschema

from ..core.errors import InstanceValidationError
from ..core.model import Atom, GraphicGround, Instance, LaminarFamily, ValueDistribution
from ..utils.rationals import parse_rational
from ..validators.instance_validator import InstanceValidator
from .base_extractor import BaseExtractor, ExtractionResult

NUMBER = {"oneOf": [{"type": "number"}, {"type": "string", "pattern": r"^\s*-?[0-9./eE+\s-]+$"}]}

INSTANCE_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "required": ["matroid", "distributions"],
    "properties": {
        "matroid": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["type", "bins"],
                    "properties": {
                        "type": {"const": "laminar"},
                        "bins": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "required": ["members", "capacity"],
                                "properties": {
                                    "members": {"type": "array", "items": {"type": "integer"}},
                                    "capacity": {"type": "integer"},
                                },
                            },
                        },
                    },
                },
                {
                    "type": "object",
                    "required": ["type", "vertices", "edges"],
                    "properties": {
                        "type": {"const": "graphic"},
                        "vertices": {"type": "integer"},
                        "edges": {
                            "type": "array",
                            "items": {"type": "array", "items": {"type": "integer"},
                                      "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            ]
        },
        "distributions": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["value", "prob"],
                    "properties": {"value": NUMBER, "prob": NUMBER},
                },
            },
        },
        "name": {"type": "string"},
    },
}


def _distribution(atoms: List[Dict[str, Any]]) -> ValueDistribution:
    exact = not any(isinstance(a["value"], float) or isinstance(a["prob"], float) for a in atoms)
    return ValueDistribution(
        tuple(Atom(parse_rational(a["value"]), parse_rational(a["prob"])) for a in atoms), exact)


def instance_from_dict(data: Dict[str, Any]) -> Instance:
    """
    Convert schema-shaped data into a validated Instance

    Atoms are kept as written for validation, then stored in ascending value order.

    Raises:
        InstanceValidationError: On schema, number or invariant violations
    """
    try:
        jsonschema.validate(instance=data, schema=INSTANCE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise InstanceValidationError(f"Schema violation at {list(e.absolute_path)}: {e.message}") from e

    try:
        dists = tuple(_distribution(atoms) for atoms in data["distributions"])
    except ValueError as e:
        raise InstanceValidationError(str(e)) from e

    matroid = data["matroid"]
    if matroid["type"] == "laminar":
        ground = LaminarFamily.of((b["members"], b["capacity"]) for b in matroid["bins"])
    else:
        ground = GraphicGround.of(matroid["vertices"], matroid["edges"])

    raw = Instance(ground, dists, data.get("name", ""))
    report = InstanceValidator.validate(raw)
    if not report.ok:
        first = report.first
        where = f" (element {first.element})" if first.element is not None else \
            f" (bin {first.bin})" if first.bin is not None else ""
        raise InstanceValidationError(f"{first.message}{where}")
    return raw.with_distributions(
        [ValueDistribution.of(((a.value, a.prob) for a in d.atoms), d.exact) for d in dists])


class InstanceExtractor(BaseExtractor):
    """Reader for instance JSON files"""

    def get_supported_extensions(self) -> List[str]:
        return ['.json']

    def extract(self, file_path: Path, **kwargs) -> ExtractionResult:
        """
        Parse and validate an instance file

        Returns:
            ExtractionResult whose content is the Instance
        """
        file_path = Path(file_path)
        self._log_extraction_start(file_path)

        ok, error = self.validate_file(file_path)
        if not ok:
            self._log_extraction_failure(file_path, error)
            return self._create_error_result("json", error)

        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            error = f"Invalid JSON format: {str(e)}"
            self._log_extraction_failure(file_path, error)
            return self._create_error_result("json", error)

        try:
            instance = instance_from_dict(data)
        except InstanceValidationError as e:
            self._log_extraction_failure(file_path, str(e))
            return self._create_error_result("json", str(e))

        structure = "laminar" if instance.is_laminar else "graphic"
        if not instance.name:
            instance = Instance(instance.ground, instance.distributions, file_path.stem)
        warnings = [] if all(d.exact for d in instance.distributions) else \
            ["float probabilities read; mass checked within tolerance"]
        result = ExtractionResult(
            content=instance,
            file_type="json",
            extracted_structure=structure,
            metadata=self._metadata(file_path, item_count=instance.n),
            warnings=warnings,
        )
        self._log_extraction_success(file_path, result)
        return result


def load_instance(path: Union[str, Path]) -> Instance:
    """
    Read an instance file

    Raises:
        InstanceValidationError: With the first error of the extraction
    """
    result = InstanceExtractor().extract(Path(path))
    if not result.success:
        raise InstanceValidationError(result.errors[0])
    return result.content


def save_instance(instance: Instance, path: Union[str, Path]) -> Path:
    """Write an instance as JSON with rational strings"""
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    data = instance.to_dict()
    if instance.name:
        data["name"] = instance.name
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
    return path


__all__ = ['INSTANCE_SCHEMA', 'instance_from_dict', 'InstanceExtractor', 'load_instance', 'save_instance']
