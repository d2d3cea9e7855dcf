import argparse
import json

import pytest

from pistate.cli import build_parser, run
from pistate.cli.command import REGISTRY, Command, command

COMMANDS = {
    "parse", "cells", "eval", "taut", "equiv", "state-eval", "state-check", "fp1-to-dist",
    "fp1-from-dist", "modal-eval", "modal-axioms", "modal-sat", "modal-entails",
}


@pytest.fixture
def invoke(capsys):
    """
    Run the command line and return the exit status with the decoded envelope.
    """

    def _invoke(*argv):
        status = run(list(argv))
        return status, json.loads(capsys.readouterr().out)

    return _invoke


@pytest.fixture
def write_json(tmp_path):
    """
    Write a JSON document to a temporary file and return its path.
    """

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def mixture_file(write_json):
    """
    The mixture 2/5 at 0 and 3/5 at 1/2.
    """
    return write_json("mix.json", {"type": "mixture", "points": [["0"], ["1/2"]], "weights": ["2/5", "3/5"]})


def test_every_command_is_registered():
    """
    The parser exposes the full command set.
    """
    assert COMMANDS <= set(REGISTRY)
    parser = build_parser()
    namespace = parser.parse_args(["taut", "x0", "--arity", "1"])
    assert namespace.command.name == "taut"
    assert namespace.arity == 1


def test_signature_drives_the_parser():
    """
    Positionals come from parameters without defaults, flags from the rest.
    """

    def scale(value: float, times: int = 2, verbose: bool = False, tags: list[str] = ()):
        """Multiply a value."""
        return value * times

    cmd = Command("scale", "Multiply a value.", scale)
    parser = argparse.ArgumentParser()
    cmd.add_to(parser.add_subparsers())
    namespace = parser.parse_args(["scale", "1.5", "--times", "3", "--verbose", "--tags", "a", "b"])
    assert cmd.invoke(namespace) == 4.5
    assert namespace.verbose is True
    assert namespace.tags == ["a", "b"]
    assert cmd.invoke(parser.parse_args(["scale", "2"])) == 4.0
    assert "scale" not in REGISTRY


def test_taut_writes_a_compact_envelope(capsys):
    """
    The product axiom is a tautology; output is one compact JSON line.
    """
    status = run(["taut", "--arity", "3", "~~x0 -> ((x1*x0 -> x2*x0) -> (x1 -> x2))"])
    out = capsys.readouterr().out
    assert status == 0
    assert out == '{"ok":true,"result":true,"diagnostics":[]}\n'


def test_pretty_output(capsys):
    """
    --json indents the envelope.
    """
    assert run(["taut", "x0 | ~x0", "--json"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("{\n")
    assert json.loads(out)["result"] is False


def test_parse_and_eval(invoke):
    """
    parse prints the desugared formula, eval the exact value.
    """
    status, envelope = invoke("parse", "~x0^2")
    assert status == 0
    assert envelope["result"]["text"] == "~(x0 * x0)"
    status, envelope = invoke("eval", "x0 -> x1", "--point", "1/2,1/3")
    assert envelope["result"] == "2/3"
    status, envelope = invoke("equiv", "~~~x0", "~x0")
    assert envelope["result"] is True


def test_cells_lists_atoms_and_restrictions(invoke):
    """
    One row per cell with the restriction of the formula.
    """
    status, envelope = invoke("cells", "--formula", "x0")
    rows = envelope["result"]
    assert [r["cell"] for r in rows] == ["1", "2"]
    assert rows[0]["restriction"] == "ZERO"


def test_state_eval_on_a_mixture(invoke, mixture_file):
    """
    The mixture gives x0 the value 3/10.
    """
    status, envelope = invoke("state-eval", "--state", mixture_file, "x0")
    assert status == 0
    assert envelope == {"ok": True, "result": "3/10", "diagnostics": []}


def test_state_eval_on_a_sampler_reports_the_error(invoke, write_json):
    """
    Approximate states add their standard error to the diagnostics.
    """
    path = write_json("uniform.json", {"type": "sampler", "law": "uniform", "n": 2000, "seed": 1})
    status, envelope = invoke("state-eval", "--state", path, "x0")
    assert status == 0
    assert abs(envelope["result"] - 0.5) < 0.05
    assert "stderr" in envelope["diagnostics"][0]


def test_state_check(invoke, mixture_file):
    """
    A mixture passes the axiom checks on a random sample.
    """
    status, envelope = invoke("state-check", "x0", "~x0", "--state", mixture_file, "--samples", "3", "--seed", "4")
    assert status == 0
    assert envelope["result"]["ok"] is True
    assert envelope["result"]["checked"]["S2"] > 0


def test_fp1_round_trip(invoke, write_json):
    """
    The Dirac state at 1/2 gives the geometric distribution, and back.
    """
    state = write_json("dirac_half.json", {"type": "dirac", "point": ["1/2"]})
    status, envelope = invoke("fp1-to-dist", "--state", state, "--horizon", "10")
    dist = envelope["result"]
    assert dist == {"neg": "0", "nn": "1/2", "prefix": [], "tails": [{"c": "1/2", "r": "1/2"}], "limit": "0"}
    path = write_json("dist.json", dist)
    status, envelope = invoke("fp1-from-dist", "x0^2", "~~x0", "--dist", path)
    assert envelope["result"] == {"x0 * x0": "1/4", "~~x0": "1"}


def test_modal_commands(invoke, mixture_file, write_json):
    """
    modal-eval, modal-axioms and modal-sat on small inputs.
    """
    status, envelope = invoke("modal-eval", "!P(x0)", "--state", mixture_file)
    assert envelope["result"] == "7/10"
    status, envelope = invoke("modal-axioms", "x0^2", "x0", "--state", mixture_file)
    assert envelope["result"]["ok"] is True
    problem = write_json("p.json", {"arity": 1, "gamma": ["D(P(~x0))"], "target": "P(x0)", "budget": {"samples": 10}})
    status, envelope = invoke("modal-sat", "--problem", problem)
    assert envelope["result"]["status"] == "SAT"
    assert envelope["result"]["witness"]["type"] in ("dirac", "mixture")
    status, envelope = invoke("modal-entails", "--problem", problem)
    assert envelope["result"]["status"] == "COUNTERMODEL"
    assert envelope["diagnostics"][0]["lp_calls"] >= 1


def test_domain_errors_exit_with_one(invoke, write_json):
    """
    An invalid distribution is a domain error and names the violated condition.
    """
    path = write_json("bad.json", {"neg": "1/2"})
    status, envelope = invoke("fp1-from-dist", "--dist", path)
    assert status == 1
    assert envelope["ok"] is False
    assert envelope["diagnostics"][0]["error"] == "DistributionError"
    assert "total mass" in envelope["diagnostics"][0]["message"]


def test_usage_errors_exit_with_two(invoke, tmp_path):
    """
    Missing flags, unreadable files and unknown commands are usage errors.
    """
    status, envelope = invoke("state-eval", "x0")
    assert status == 2
    assert envelope["diagnostics"][0]["flag"] == "--state"
    status, envelope = invoke("state-eval", "x0", "--state", str(tmp_path / "missing.json"))
    assert status == 2
    status, envelope = invoke("no-such-command")
    assert status == 2
    assert envelope["ok"] is False


def test_decorator_accepts_a_name():
    """
    @command(name=...) registers under the given name.
    """

    @command(name="demo-double")
    def double(value: int):
        """Double a number."""
        return 2 * value

    try:
        assert REGISTRY["demo-double"] is double
        assert double.description == "Double a number."
    finally:
        REGISTRY.pop("demo-double")


def test_unreadable_point_is_a_usage_error(invoke):
    """
    A coordinate that is not a rational names the --point flag.
    """
    status, envelope = invoke("eval", "x0", "--point", "abc")
    assert status == 2
    assert envelope["ok"] is False
    assert envelope["diagnostics"][0]["flag"] == "--point"
    assert "abc" in envelope["diagnostics"][0]["message"]


def test_deep_formulas_get_an_error_envelope(invoke):
    """
    A formula nested beyond the recursive passes is reported, not raised.
    """
    status, envelope = invoke("taut", "x0^3000 -> x0")
    assert status == 1
    assert envelope["ok"] is False
    assert envelope["diagnostics"][0]["error"] == "FormulaDepthError"
