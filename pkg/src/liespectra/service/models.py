"""Request and response shapes for the HTTP service.

Matrix entries arrive either as bare numbers or [re, im] pairs; the models
keep them loose on purpose and funnel everything through the document
parser, so the service and the file format validate identically.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from ..documents import InputDocument, document_from_jsonable

# a matrix entry: bare real or [re, im]
Entry = float | list[float]


class ToleranceModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    eps_rank: float | None = None
    eps_cluster: float | None = None
    eps_residual: float | None = None


class GeneratorModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    matrix: list[list[Entry]]


class InputModel(BaseModel):
    """Mirror of the input document: named fixture or explicit generators."""

    model_config = ConfigDict(extra="forbid")

    fixture: str | None = None
    dim: int | None = None
    generators: list[GeneratorModel] | None = None
    tolerances: ToleranceModel | None = None

    def to_document(self) -> InputDocument:
        obj: dict = {}
        if self.fixture is not None:
            obj["fixture"] = self.fixture
        if self.dim is not None:
            obj["dim"] = self.dim
        if self.generators is not None:
            obj["generators"] = [
                {"name": g.name, "matrix": g.matrix} for g in self.generators
            ]
        if self.tolerances is not None:
            obj["tolerances"] = {
                k: v for k, v in self.tolerances.model_dump().items() if v is not None
            }
        return document_from_jsonable(obj)


class ComputeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    input: InputModel
    workers: int | None = None


class SlodkowskiRequest(ComputeRequest):
    k: int


class HomologyRequest(ComputeRequest):
    character: list[Entry]


class TensorRequest(ComputeRequest):
    # "with" is the second operand; aliased because it is a Python keyword
    with_: InputModel = Field(alias="with")


class VerifyRequest(ComputeRequest):
    with_: InputModel | None = Field(default=None, alias="with")


class RunResponse(BaseModel):
    document: dict
    exit_status: int


class FixtureEntry(BaseModel):
    name: str
    description: str


class FixturesResponse(BaseModel):
    fixtures: list[FixtureEntry]


class HealthResponse(BaseModel):
    status: str = "ok"
