import sys
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

ROOT = Path(__file__).resolve().parent.parent.parent
if str(ROOT) not in sys.path:
    sys.path.append(str(ROOT))

from src.brauer.algebra import AlgebraElement
from src.brauer.coefficients import Ring, parse_ring
from src.brauer.diagrams import diagram_make
from src.brauer.errors import ParseError
from src.brauer.reports import Report
from src.homology.groups import HomologyGroup


# --- input models ---
class TermModel(BaseModel):
    pairs: List[List[int]]
    coeff: str = "1"


class ElementModel(BaseModel):
    """{"n": 2, "ring": "Z", "delta": "0", "terms": [{"pairs": [[-1, 1], [-2, 2]], "coeff": "1"}]}"""

    n: int = Field(ge=0)
    ring: Optional[str] = None
    delta: Optional[str] = None
    terms: List[TermModel] = Field(default_factory=list)

    @field_validator("delta", mode="before")
    @classmethod
    def delta_as_text(cls, v):
        return None if v is None else str(v)

    def to_element(self, ring: Ring) -> AlgebraElement:
        out = AlgebraElement.zero(self.n, ring)
        for term in self.terms:
            d = diagram_make(self.n, term.pairs)
            out = out + AlgebraElement.basis(d, ring).scale(ring.parse(term.coeff))
        return out


# --- output models ---
class HomologyRow(BaseModel):
    degree: int
    free_rank: int
    torsion: List[str] = Field(default_factory=list)

    @classmethod
    def from_group(cls, degree: int, group: HomologyGroup) -> "HomologyRow":
        return cls(**group.to_row(degree))


class CheckRow(BaseModel):
    suite: str
    check: str
    instance: str
    expected: str
    computed: str
    passed: bool

    @classmethod
    def from_report(cls, report: Report) -> List["CheckRow"]:
        return [cls(suite=report.name, **vars(r)) for r in report.rows]


# --- run configuration ---
class RunConfig(BaseModel):
    """Validated command-line flags; nothing is computed before this succeeds."""

    command: Literal["mul", "homology", "tor", "verify"]
    ring: str = "Z"
    delta: str = "0"
    n: Optional[int] = Field(default=None, ge=0)
    m: Optional[int] = Field(default=None, ge=0)
    X: Optional[List[int]] = None
    x: Optional[int] = None
    y: Optional[int] = None
    k: Optional[int] = Field(default=None, ge=0)
    j: Optional[int] = Field(default=None, ge=0)
    i: Optional[int] = Field(default=None, ge=0)
    letters: Optional[int] = Field(default=None, ge=0)
    seps: Optional[int] = Field(default=None, ge=0)
    maxdeg: Optional[int] = None
    target: Optional[Literal["cn", "cnk", "w", "inductive"]] = None
    algebra: Optional[Literal["brauer", "sym"]] = None
    module: Literal["trivial", "induced", "quotient", "restricted"] = "trivial"
    N: Optional[int] = Field(default=None, ge=0)
    suite: Optional[str] = None
    output: Literal["json", "tsv"] = "json"
    budget: Optional[int] = Field(default=None, gt=0)
    export: Optional[Path] = None
    progress: bool = False

    @model_validator(mode="after")
    def command_arguments(self):
        if self.command == "homology" and self.target is None:
            raise ValueError("homology needs --target")
        if self.command == "tor" and (self.algebra is None or self.n is None):
            raise ValueError("tor needs --algebra and --n")
        if self.command == "verify" and not self.suite:
            raise ValueError("verify needs a suite name")
        return self

    def make_ring(self) -> Ring:
        return parse_ring(self.ring, self.delta)


def validate_config(**kwargs) -> RunConfig:
    try:
        return RunConfig(**kwargs)
    except ValidationError as e:
        raise ParseError(f"invalid arguments: {e.errors()[0]['msg']}") from e


def parse_model(model, payload: dict):
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        raise ParseError(f"invalid {model.__name__}: {e.errors()[0]['msg']}") from e
