"""Run configuration and report models."""
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from stabkit.lattice.rational import parse_rational
from stabkit.utils.config_loader import ConfigLoader, get_config
from stabkit.utils.file_utils import FileUtils

Command = Literal["validate", "hn", "walls", "deform", "dist", "qext", "cy2"]

REQUIRED_INPUTS: Dict[str, tuple] = {
    "validate": ("sigma",),
    "hn": ("object", "charge"),
    "walls": ("object", "path"),
    "deform": ("sigma", "q", "path"),
    "dist": ("sigma1", "sigma2", "sample"),
    "qext": ("q",),
    "cy2": ("lattice", "z"),
}


class RunConfig(BaseModel):
    """One command with its input documents, numeric knobs and output targets."""

    model_config = ConfigDict(frozen=True)

    command: Command
    inputs: Dict[str, Path] = Field(default_factory=dict)
    steps: int = Field(8, ge=1)
    budget: int = Field(10_000_000, ge=1)
    tolerance: float = Field(1e-9, gt=0)
    norm_margin: str = "1/2"
    max_subdivisions: int = Field(8, ge=0)
    refine_width: str = "1/1000000000"
    corpus_max_dim: int = Field(2, ge=0)
    path_samples: int = Field(4, ge=1)
    truncated: bool = False
    json_out: Optional[Path] = None
    csv_out: Optional[Path] = None
    svg_out: Optional[Path] = None

    @field_validator("inputs")
    @classmethod
    def inputs_exist(cls, value: Dict[str, Path]) -> Dict[str, Path]:
        for name, path in value.items():
            if not Path(path).is_file():
                raise ValueError(f"Input '{name}' does not exist: {path}")
        return value

    @field_validator("norm_margin", "refine_width")
    @classmethod
    def positive_rational(cls, value: str) -> str:
        if parse_rational(value) <= 0:
            raise ValueError(f"Expected a positive rational, got {value}")
        return value

    @model_validator(mode="after")
    def required_inputs_present(self) -> "RunConfig":
        missing = [k for k in REQUIRED_INPUTS[self.command] if k not in self.inputs]
        if missing:
            raise ValueError(f"Command '{self.command}' needs input(s): {', '.join(missing)}")
        return self

    @property
    def margin(self) -> Fraction:
        return parse_rational(self.norm_margin)

    @property
    def width(self) -> Fraction:
        return parse_rational(self.refine_width)

    @classmethod
    def from_settings(cls, command: str, inputs: Dict[str, Any],
                      loader: Optional[ConfigLoader] = None, **overrides: Any) -> "RunConfig":
        """Configuration file defaults, then explicit overrides that are not None."""
        loader = loader or get_config()
        settings = {
            "steps": loader.get("deformation.steps"),
            "budget": loader.get("enumeration.budget"),
            "tolerance": loader.get("numerics.tolerance"),
            "norm_margin": loader.get("deformation.norm_margin"),
            "max_subdivisions": loader.get("deformation.max_subdivisions"),
            "refine_width": loader.get("walls.refine_width"),
            "corpus_max_dim": loader.get("enumeration.corpus_max_dim"),
            "path_samples": loader.get("cy2.path_samples"),
        }
        settings = {k: (str(v) if k in ("norm_margin", "refine_width") else v)
                    for k, v in settings.items() if v is not None}
        settings.update({k: v for k, v in overrides.items() if v is not None})
        paths = {k: Path(v) for k, v in inputs.items() if v is not None}
        return cls(command=command, inputs=paths, **settings)


class ErrorInfo(BaseModel):
    type: str
    message: str
    witness: Any = None


class Report(BaseModel):
    """Command echo, exact results, verdict and timing."""

    command: str
    inputs: Dict[str, str]
    passed: bool
    exit_code: int
    result: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[ErrorInfo] = None
    timing_seconds: float = 0.0

    def to_json(self, include_timing: bool = True, indent: int = 2) -> str:
        data = self.model_dump(mode="json")
        if not include_timing:
            data.pop("timing_seconds")
        return FileUtils.dumps_json(data, indent)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate_json(text)
