"""
State files.

    {"type": "dirac", "point": ["1/2"]}
    {"type": "mixture", "points": [["0"], ["1/2"]], "weights": ["2/5", "3/5"]}
    {"type": "sampler", "law": "uniform", "n": 100000, "seed": 42}
    {"type": "sampler", "law": "product-beta", "params": [[2, 5]], "arity": 1}
    {"type": "sampler", "law": "atom-mix", "arity": 1,
     "components": [{"weight": 0.5, "law": "uniform"}, {"weight": 0.5, "point": [0]}]}
"""

import json
from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from ..core.exceptions import StateDefinitionError
from ..core.rational import Rational
from .base import State
from .mixture import DiracState, MixtureState
from .sampler import AtomMixLaw, Law, ProductBetaLaw, SamplerState, UniformLaw


class DiracDescription(BaseModel):
    type: Literal["dirac"]
    point: list[Rational]


class MixtureDescription(BaseModel):
    type: Literal["mixture"]
    points: list[list[Rational]]
    weights: list[Rational]


class LawComponent(BaseModel):
    weight: float
    law: Optional[Literal["uniform", "product-beta"]] = None
    params: Optional[list[tuple[float, float]]] = None
    point: Optional[list[float]] = None


class SamplerDescription(BaseModel):
    type: Literal["sampler"]
    law: Literal["uniform", "product-beta", "atom-mix"]
    n: Optional[int] = None
    seed: Optional[int] = None
    arity: Optional[int] = None
    params: Optional[list[tuple[float, float]]] = None
    components: Optional[list[LawComponent]] = None
    shared_stream: bool = False


StateDescription = Annotated[Union[DiracDescription, MixtureDescription, SamplerDescription], Field(discriminator="type")]


class StateFile(BaseModel):
    state: StateDescription


def _simple_law(name: str, params) -> Law:
    if name == "uniform":
        return UniformLaw()
    if not params:
        raise StateDefinitionError("product-beta needs params")
    return ProductBetaLaw(params)


def _law(desc: SamplerDescription) -> Law:
    if desc.law != "atom-mix":
        return _simple_law(desc.law, desc.params)
    if not desc.components:
        raise StateDefinitionError("atom-mix needs components")
    components = []
    for c in desc.components:
        if (c.law is None) == (c.point is None):
            raise StateDefinitionError("each atom-mix component needs exactly one of law or point")
        components.append((c.weight, _simple_law(c.law, c.params) if c.law else c.point))
    return AtomMixLaw(components)


def _sampler_arity(desc: SamplerDescription, arity: Optional[int]) -> int:
    if desc.arity is not None:
        return desc.arity
    if arity is not None:
        return arity
    if desc.law == "product-beta" and desc.params:
        return len(desc.params)
    for c in desc.components or []:
        if c.point is not None:
            return len(c.point)
    return 1


def state_from_description(desc, arity: Optional[int] = None, seed: Optional[int] = None) -> State:
    """
    Build a backend from a parsed state description.

    Args:
        desc: a DiracDescription, MixtureDescription or SamplerDescription.
        arity (int | None): arity for samplers that do not state one.
        seed (int | None): overrides the sampler seed of the file.
    """
    match desc:
        case DiracDescription():
            return DiracState(desc.point)
        case MixtureDescription():
            return MixtureState(desc.points, desc.weights)
        case SamplerDescription():
            return SamplerState(
                _law(desc),
                _sampler_arity(desc, arity),
                n_samples=desc.n,
                seed=seed if seed is not None else desc.seed,
                shared_stream=desc.shared_stream,
            )
    raise StateDefinitionError(f"unknown state description: {desc!r}")


def parse_state(data: dict, arity: Optional[int] = None, seed: Optional[int] = None) -> State:
    try:
        desc = StateFile(state=data).state
    except ValidationError as e:
        raise StateDefinitionError(f"invalid state description: {e}") from e
    return state_from_description(desc, arity=arity, seed=seed)


def load_state(path: Union[str, Path], arity: Optional[int] = None, seed: Optional[int] = None) -> State:
    """Read a UTF-8 JSON state file."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return parse_state(data, arity=arity, seed=seed)


def state_to_description(state: MixtureState) -> dict:
    """JSON form of a mixture (a Dirac state is written as one)."""
    if isinstance(state, DiracState):
        return DiracDescription(type="dirac", point=list(state.point)).model_dump(mode="json")
    if isinstance(state, MixtureState):
        return MixtureDescription(
            type="mixture",
            points=[list(p) for p in state.points],
            weights=list(state.weights),
        ).model_dump(mode="json")
    raise StateDefinitionError(f"{state} has no file representation")
