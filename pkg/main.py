from fractions import Fraction

from pistate.core import parse_product, is_tautology
from pistate.fp1 import dist_from_state
from pistate.modal import parse_problem, sat_search
from pistate.states import DiracState, MixtureState, check_state_axioms

# Short tour of the library
# Full test coverage is in the `tests` folder


def demo():
    """
    - Decides a product-logic axiom.
    - Evaluates and checks a mixture state.
    - Reads off the spectrum distribution of a Dirac state.
    - Runs a small countermodel search.
    """
    # -------------------------
    # Product logic
    # -------------------------
    axiom = parse_product("~~x0 -> ((x1*x0 -> x2*x0) -> (x1 -> x2))", 3)
    print("tautology:", is_tautology(axiom, 3))

    # -------------------------
    # States
    # -------------------------
    s = MixtureState([[0], [Fraction(1, 2)]], [Fraction(2, 5), Fraction(3, 5)])
    print("s(x0) =", s(parse_product("x0", 1)))
    report = check_state_axioms(s, [parse_product(t, 1) for t in ("x0", "x0 * x0", "~x0")])
    print("axioms hold:", report.ok, report.checked)

    # -------------------------
    # One variable
    # -------------------------
    print("spectrum:", dist_from_state(DiracState([Fraction(1, 2)])).model_dump(mode="json"))

    # -------------------------
    # Modal search
    # -------------------------
    result = sat_search(parse_problem({"arity": 1, "gamma": ["P(x0) <=> !P(x0)"]}))
    print("search:", result.status.value, result.witness, result.diagnostics)


if __name__ == "__main__":
    demo()
