"""
Subcommands. Each one is a thin wrapper over a library call and returns the
``result`` part of the output envelope, optionally with diagnostics.
"""

import json
import re
from typing import Any, NamedTuple, Optional

import numpy as np

from ..config import settings
from ..core.cells import atom_formula, enumerate_sigma
from ..core.exceptions import UsageError
from ..core.formula import evaluate
from ..core.generate import random_formulas
from ..core.pwl import is_equivalent, is_tautology, lower
from ..core.rational import format_number, parse_point
from ..core.syntax import parse_modal, parse_product, print_formula, to_tree
from ..fp1.canon import canon_to_formula, canonical_elements
from ..fp1.spectrum import ApproximateSpectrum, load_dist, state_from_dist, dist_from_state
from ..modal.axioms import axiom_instances, check_soundness
from ..modal.problem import load_problem
from ..modal.search import SearchResult, entails, sat_search
from ..modal.semantics import eval_modal
from ..states.base import State
from ..states.harness import check_s4_prime, check_state_axioms, close_under_atoms
from ..states.schema import load_state, state_to_description
from .command import command

_VARIABLE = re.compile(r"x([0-9]+)")


class Output(NamedTuple):
    result: Any
    diagnostics: list


def _fmt(value) -> Any:
    return format_number(value, settings.float_digits)


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required", flag)
    return value


def _infer_arity(*texts: str) -> int:
    indices = [int(m) for text in texts for m in _VARIABLE.findall(text)]
    return max(indices, default=0) + 1


def _read(loader, path: str, flag: str, **kwargs):
    try:
        return loader(path, **kwargs)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}", flag) from e
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg}", flag) from e


def _state(path: Optional[str], arity: Optional[int] = None, seed: Optional[int] = None) -> State:
    return _read(load_state, _require(path, "--state"), "--state", arity=arity, seed=seed)


def _search_output(result: SearchResult) -> Output:
    payload = {"status": result.status.value}
    if result.witness is not None:
        payload["witness"] = state_to_description(result.witness)
        payload["trace"] = result.trace
    return Output(payload, [result.diagnostics])


# ----------------------------------------------------------------------
# Product logic
# ----------------------------------------------------------------------
@command
def parse(formula: str, arity: Optional[int] = None, modal: bool = False):
    """Parse a formula and print it back with its tree."""
    n = arity or _infer_arity(formula)
    phi = parse_modal(formula, n) if modal else parse_product(formula, n)
    return {"text": print_formula(phi), "tree": to_tree(phi)}


@command
def cells(arity: Optional[int] = None, formula: Optional[str] = None):
    """List the cells of [0,1]^n with their atoms, and the restriction of a formula to each."""
    n = arity or (_infer_arity(formula) if formula else None)
    n = _require(n, "--arity")
    rows = [{"cell": str(cell), "atom": print_formula(atom_formula(cell))} for cell in enumerate_sigma(n)]
    if formula is not None:
        lowered = lower(parse_product(formula, n), n)
        for row, cell in zip(rows, enumerate_sigma(n)):
            row["restriction"] = str(lowered[cell])
    return rows


@command(name="eval")
def eval_formula(formula: str, point: Optional[str] = None):
    """Evaluate a product formula at a point given as "1/2,0,1"."""
    try:
        t = parse_point(_require(point, "--point"))
    except ValueError as e:
        raise UsageError(str(e), "--point") from e
    if not t:
        raise UsageError("--point needs at least one coordinate", "--point")
    return _fmt(evaluate(parse_product(formula, len(t)), t))


@command
def taut(formula: str, arity: Optional[int] = None):
    """Decide whether a formula is a tautology of product logic."""
    n = arity or _infer_arity(formula)
    return is_tautology(parse_product(formula, n), n)


@command
def equiv(left: str, right: str, arity: Optional[int] = None):
    """Decide whether two formulas are equivalent in product logic."""
    n = arity or _infer_arity(left, right)
    return is_equivalent(parse_product(left, n), parse_product(right, n), n)


# ----------------------------------------------------------------------
# States
# ----------------------------------------------------------------------
@command(name="state-eval")
def state_eval(formula: str, state: Optional[str] = None, arity: Optional[int] = None, seed: Optional[int] = None):
    """Value of a state on a formula."""
    sigma = _state(state, arity or _infer_arity(formula), seed)
    value, stderr = sigma.estimate(parse_product(formula, sigma.arity))
    if sigma.exact:
        return _fmt(value)
    return Output(_fmt(value), [{"stderr": _fmt(stderr)}])


@command(name="state-check")
def state_check(
    formulas: list[str],
    state: Optional[str] = None,
    arity: Optional[int] = None,
    samples: int = 0,
    depth: int = 3,
    tol: float = 0.0,
    seed: Optional[int] = None,
):
    """Check the state axioms and the cellwise double-negation condition on a formula sample."""
    sigma = _state(state, arity or _infer_arity(*formulas), seed)
    sample = [parse_product(text, sigma.arity) for text in formulas]
    if samples:
        rng = np.random.default_rng(settings.default_seed if seed is None else seed)
        sample += random_formulas(rng, samples, sigma.arity, depth)
    if not sample:
        raise UsageError("give formulas or --samples K", "--samples")
    sample = close_under_atoms(sample, sigma.arity)
    axioms = check_state_axioms(sigma, sample, tol)
    prime = check_s4_prime(sigma, sample, tol)
    return {
        "ok": axioms.ok and prime.ok,
        "checked": {**axioms.checked, **prime.checked},
        "violations": [v.model_dump() for v in axioms.violations + prime.violations],
    }


# ----------------------------------------------------------------------
# One generator
# ----------------------------------------------------------------------
@command(name="fp1-to-dist")
def fp1_to_dist(state: Optional[str] = None, horizon: int = 20, seed: Optional[int] = None):
    """Spectrum distribution of a one-variable state."""
    dist = dist_from_state(_state(state, 1, seed), horizon)
    if isinstance(dist, ApproximateSpectrum):
        return Output(dist.to_dict(settings.float_digits), ["approximate: black-box state"])
    return dist.model_dump(mode="json")


@command(name="fp1-from-dist")
def fp1_from_dist(formulas: list[str], dist: Optional[str] = None, horizon: int = 3):
    """Values of the state of a spectrum distribution, on given formulas or on the canonical shapes."""
    sigma = state_from_dist(_read(load_dist, _require(dist, "--dist"), "--dist"))
    targets = [parse_product(text, 1) for text in formulas]
    if not targets:
        targets = [canon_to_formula(c) for c in canonical_elements(horizon)]
    return {print_formula(f): _fmt(sigma.evaluate(f)) for f in targets}


# ----------------------------------------------------------------------
# Modal statements
# ----------------------------------------------------------------------
@command(name="modal-eval")
def modal_eval(formula: str, state: Optional[str] = None, arity: Optional[int] = None, seed: Optional[int] = None):
    """Value of a modal statement under a state."""
    sigma = _state(state, arity or _infer_arity(formula), seed)
    return _fmt(eval_modal(sigma, parse_modal(formula, sigma.arity)))


@command(name="modal-axioms")
def modal_axioms(
    left: str,
    right: str,
    arity: Optional[int] = None,
    state: Optional[str] = None,
    tol: float = 0.0,
    seed: Optional[int] = None,
):
    """Instances of the probability axioms for a pair of events, optionally checked against a state."""
    n = arity or _infer_arity(left, right)
    instances = axiom_instances(parse_product(left, n), parse_product(right, n), n)
    rows = [{"axiom": name, "instance": print_formula(phi)} for name, phi in instances]
    if state is None:
        return rows
    sigma = _state(state, n, seed)
    for row, (_, phi) in zip(rows, instances):
        row["value"] = _fmt(eval_modal(sigma, phi))
    report = check_soundness(sigma, instances, tol)
    return {"ok": report.ok, "instances": rows}


@command(name="modal-sat")
def modal_sat(problem: Optional[str] = None):
    """Search for a finite mixture satisfying every premise of a problem file."""
    return _search_output(sat_search(_read(load_problem, _require(problem, "--problem"), "--problem")))


@command(name="modal-entails")
def modal_entails(problem: Optional[str] = None):
    """Search for a countermodel to the target of a problem file."""
    return _search_output(entails(_read(load_problem, _require(problem, "--problem"), "--problem")))
