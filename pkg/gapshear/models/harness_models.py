from datetime import datetime
from enum import Enum
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, model_validator

from ..exceptions import ParameterError


class CorpusKind(str, Enum):
    UNIFORM_RANDOM = "uniform-random"
    APERIODIC_VERIFIED = "aperiodic-verified"
    PERIODIC_STRESS = "periodic-stress"
    DISJOINT_PAIR = "disjoint-pair"


class CorpusSpec(BaseModel):
    n: int = Field(ge=0)
    alphabet_size: int = Field(default=26, ge=1, le=256)
    binary: bool = False
    kind: CorpusKind = CorpusKind.UNIFORM_RANDOM
    planted_edits: int = Field(default=0, ge=0)
    seed: int = 0
    window: Optional[int] = Field(default=None, gt=0, description="ℓ for aperiodic verification")
    k: Optional[int] = Field(default=None, ge=0, description="k for aperiodic verification")
    stress_period: int = Field(default=4, ge=1)

    @model_validator(mode="after")
    def _check_kind(self) -> "CorpusSpec":
        if self.kind == CorpusKind.APERIODIC_VERIFIED and (self.window is None or self.k is None):
            raise ParameterError("aperiodic-verified corpora need both window and k")
        if self.kind == CorpusKind.DISJOINT_PAIR and self.binary:
            raise ParameterError("a binary alphabet has no disjoint partner")
        if self.kind == CorpusKind.DISJOINT_PAIR and self.alphabet_size > 128:
            raise ParameterError(f"an alphabet of {self.alphabet_size} bytes has no disjoint partner of the same size")
        return self

    @property
    def alphabet(self) -> bytes:
        if self.binary:
            return b"01"
        if self.alphabet_size <= 26:
            return bytes(range(ord("a"), ord("a") + self.alphabet_size))
        return bytes(range(self.alphabet_size))

    @property
    def partner_alphabet(self) -> bytes:
        """Same size as alphabet and disjoint from it"""
        size = len(self.alphabet)
        if self.alphabet_size <= 26:
            return bytes(range(ord("A"), ord("A") + size))
        return bytes(range(size, 2 * size))


class RunReport(BaseModel):
    command: str
    seed: int
    parameters: Dict[str, Union[int, float, str, bool, None]] = {}
    verdict: Optional[str] = None
    output_path: Optional[str] = None
    probes_x: int = 0
    probes_y: int = 0
    wall_time_ms: float = 0.0
    extra: Dict[str, Union[int, float, str, bool, None, List[int]]] = {}
    created_at: datetime = Field(default_factory=datetime.now)


class BenchRow(BaseModel):
    n: int
    k: int
    mode: str
    seed: int
    verdict: str
    probes: int
    wall_ms: float
