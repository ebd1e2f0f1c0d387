from fractions import Fraction

import pytest

from oddlex import (
    BOT_BOUND,
    TOP_BOUND,
    FormulaSyntaxError,
    PreconditionViolation,
    ShapeError,
    UnassignedVariable,
    adjoin_bounds,
    check_consequence,
    eval_formula,
    format_formula,
    holds,
    make_qj,
    make_zj,
    parse_formula,
    parse_theory,
    unit_interval_render,
    z_chain,
    zelem,
)
from oddlex.logic import And, Const, Fuse, Imp, Neg, Or, Var, rendered, variables
from oddlex.sampling import sample_elem
from conftest import rng

BZ = adjoin_bounds(z_chain())


# -- parsing -------------------------------------------------------------------

def test_parse_examples():
    assert parse_formula("p -> p") == Imp(Var("p"), Var("p"))
    assert parse_formula("~p * q -> r") == Imp(Fuse(Neg(Var("p")), Var("q")), Var("r"))
    assert parse_formula("t <-> f") == And(Imp(Const.T, Const.F), Imp(Const.F, Const.T))


def test_precedence_chain():
    f = parse_formula("a | b & c * ~d -> e")
    assert f == Imp(Or(Var("a"), And(Var("b"), Fuse(Var("c"), Neg(Var("d"))))), Var("e"))


def test_imp_is_right_associative():
    assert parse_formula("a -> b -> c") == Imp(Var("a"), Imp(Var("b"), Var("c")))


def test_parse_errors_carry_positions():
    with pytest.raises(FormulaSyntaxError):
        parse_formula("p -> ")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("(p -> q")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("p q")
    with pytest.raises(FormulaSyntaxError) as exc:
        parse_formula("p -> P")
    assert exc.value.position == 5


def test_print_parse_round_trip():
    texts = ["p -> p", "~p * q -> r", "t <-> f", "a | b & c * ~d -> e",
             "((a -> b) -> c) -> d", "~(p | q) & ~~r", "top -> bot | t"]
    for text in texts:
        f = parse_formula(text)
        assert parse_formula(format_formula(f)) == f


def test_theory_files_skip_comments():
    theory = parse_theory("# premises\np\n\nq -> p  # trailing\n")
    assert theory == [Var("p"), Imp(Var("q"), Var("p"))]


# -- evaluation ----------------------------------------------------------------

def test_eval_contraction_counterexample():
    value = eval_formula(BZ, parse_formula("(p*p)->p"), {"p": zelem(1)})
    assert value == zelem(-1)
    assert not holds(BZ, value)


def test_eval_tau_positivity_sampled(named_algebras):
    r = rng("eval-tau")
    f = parse_formula("p -> p")
    for A in named_algebras.values():
        for _ in range(200):
            assert holds(A, eval_formula(A, f, {"p": sample_elem(A, r)}))


def test_unit_constants_coincide(named_algebras):
    f = parse_formula("t <-> f")
    for A in named_algebras.values():
        assert eval_formula(A, f, {}) == A.unit()


def test_bound_constants_need_a_bounded_algebra():
    assert eval_formula(BZ, parse_formula("top"), {}) is TOP_BOUND
    with pytest.raises(PreconditionViolation):
        eval_formula(z_chain(), parse_formula("top"), {})


def test_unassigned_variable_is_reported():
    with pytest.raises(UnassignedVariable):
        eval_formula(BZ, parse_formula("p -> q"), {"p": zelem(0)})


VALID_IN_ALL_CHAINS = [
    "p -> p",
    "t <-> f",
    "(p * q) -> (q * p)",
    "(p & q) -> p",
    "p -> (p | q)",
    "(p -> q) | (q -> p)",
    "~~p <-> p",
    "(p * (q * r)) <-> ((p * q) * r)",
    "(p * q -> r) <-> (p -> (q -> r))",
]


def test_soundness_smoke(named_algebras):
    r = rng("soundness")
    for A in named_algebras.values():
        for text in VALID_IN_ALL_CHAINS:
            f = parse_formula(text)
            names = sorted(variables(f))
            for _ in range(150):
                assignment = {v: sample_elem(A, r) for v in names}
                assert holds(A, eval_formula(A, f, assignment)), (str(A), text)


def test_eval_monotone_in_lattice_and_fusion_contexts(named_algebras):
    r = rng("monotone-eval")
    f = parse_formula("(p & q) | (p * p * q)")
    for A in named_algebras.values():
        for _ in range(150):
            q_val = sample_elem(A, r)
            lo, hi = sample_elem(A, r), sample_elem(A, r)
            if A.lt(hi, lo):
                lo, hi = hi, lo
            v_lo = eval_formula(A, f, {"p": lo, "q": q_val})
            v_hi = eval_formula(A, f, {"p": hi, "q": q_val})
            assert A.leq(v_lo, v_hi)


# -- countermodel search ---------------------------------------------------------

def test_contraction_fails_in_the_bounded_integers():
    cm = check_consequence(BZ, [], parse_formula("(p*p)->p"), budget=10000, seed=0)
    assert cm is not None
    assert cm.assignment["p"] == zelem(1)
    assert cm.goal_value == zelem(-1)
    cm.validate()


def test_valid_formulas_yield_not_found():
    assert check_consequence(BZ, [], parse_formula("p->p"), budget=2000, seed=0) is None
    assert check_consequence(BZ, [], parse_formula("t<->f"), budget=2000, seed=0) is None


def test_theory_threshold_blocks_falsification():
    cm = check_consequence(BZ, [parse_formula("p")], parse_formula("p*p"),
                           budget=4000, seed=0)
    assert cm is None


def test_theory_constrained_countermodel():
    cm = check_consequence(BZ, [parse_formula("~p")], parse_formula("p"),
                           budget=4000, seed=0)
    assert cm is not None
    assert holds(BZ, cm.theory_values[0])
    assert not holds(BZ, cm.goal_value)
    cm.validate()


def test_search_is_reproducible():
    goal = parse_formula("(p * q) -> (p & q)")
    a = check_consequence(BZ, [], goal, budget=3000, seed=42)
    b = check_consequence(BZ, [], goal, budget=3000, seed=42)
    assert a is not None and b is not None
    assert a.assignment == b.assignment and a.goal_value == b.goal_value
    assert rendered(a).to_json() == rendered(b).to_json()


def test_search_works_in_a_product_algebra():
    A = adjoin_bounds(make_zj(2))
    cm = check_consequence(A, [], parse_formula("(p*p)->p"), budget=8000, seed=0)
    assert cm is not None
    cm.validate()


def test_budget_must_be_positive():
    with pytest.raises(PreconditionViolation):
        check_consequence(BZ, [], parse_formula("p"), budget=0, seed=0)


# -- unit interval rendering -------------------------------------------------------

def test_midpoint_insertion_examples():
    A = z_chain()
    m = unit_interval_render(A, [zelem(0)])
    assert m[zelem(0)] == Fraction(1, 2)
    m = unit_interval_render(A, [zelem(0), zelem(5)])
    assert m[zelem(5)] == Fraction(3, 4)
    m = unit_interval_render(A, [zelem(0), zelem(5), zelem(2)])
    assert m[zelem(2)] == Fraction(5, 8)
    m = unit_interval_render(A, [zelem(0), zelem(-7)])
    assert m[zelem(-7)] == Fraction(1, 4)


def test_rendering_is_strictly_order_preserving():
    r = rng("render")
    A = make_qj(2)
    elems = []
    seen = set()
    while len(elems) < 40:
        e = sample_elem(A, r)
        if e not in seen:
            seen.add(e)
            elems.append(e)
    m = unit_interval_render(A, elems)
    for e1 in elems:
        assert Fraction(0) < m[e1] < Fraction(1)
        for e2 in elems:
            if A.lt(e1, e2):
                assert m[e1] < m[e2]


def test_bounds_render_to_the_endpoints():
    m = unit_interval_render(BZ, [zelem(0), TOP_BOUND, BOT_BOUND, zelem(3)])
    assert m[TOP_BOUND] == 1 and m[BOT_BOUND] == 0
    assert m[zelem(0)] == Fraction(1, 2) and m[zelem(3)] == Fraction(3, 4)


def test_duplicate_elements_are_rejected():
    with pytest.raises(ShapeError):
        unit_interval_render(z_chain(), [zelem(1), zelem(1)])


def test_rendered_countermodel_orders_all_values():
    cm = check_consequence(BZ, [], parse_formula("(p*p)->p"), budget=5000, seed=0)
    cm = rendered(cm)
    cm.validate()
    assert cm.rendering[BOT_BOUND] == 0 and cm.rendering[TOP_BOUND] == 1
    assert all(Fraction(0) <= v <= Fraction(1) for v in cm.rendering.values())
    doc = cm.to_json()
    assert doc["assignment"] == {"p": "1"}
    assert doc["goal_value"] == "-1"
