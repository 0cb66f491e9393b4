import random

import pytest

from growthforge.errors import (
    AllRootsOfUnity,
    BudgetExceeded,
    DegenerateGeneratingSet,
    KindMismatch,
    NotExponential,
    WitnessRejected,
)
from growthforge.exact import IntMatrix, hnf_saturate
from growthforge.groups import GroupSpec, Word, element_compose
from growthforge.spectra import char_poly
from growthforge.witness import (
    _check,
    classify_split_extension,
    free_pair_standard,
    quotient_problem,
    restricted_action,
    verify_free_semigroup,
    witness_search,
)
from conftest import FIB, HEISENBERG, ROTATION, SOL
from oracles import random_unimodular

W = Word.parse


def test_verify_sol_depth_10(sol):
    res = verify_free_semigroup(sol, W("t"), W("t e1"), 10)
    assert res.ok and res.distinct_count == 2 ** 11 - 2


def test_verify_equal_generators(sol):
    res = verify_free_semigroup(sol, W("t"), W("t"), 1)
    assert not res.ok and res.counterexample == ("a", "b")


def test_verify_commuting_pair(z2_spec):
    res = verify_free_semigroup(z2_spec, W("a"), W("b"), 2)
    assert not res.ok and res.counterexample == ("ab", "ba")


def test_verify_depth_limits(sol):
    with pytest.raises(BudgetExceeded):
        verify_free_semigroup(sol, W("t"), W("t e1"), 21)
    with pytest.raises(ValueError):
        verify_free_semigroup(sol, W("t"), W("t e1"), 0)


def test_check_rejects(sol):
    with pytest.raises(WitnessRejected):
        _check(sol.generators, W("e1"), W("e2"), 3)


@pytest.mark.parametrize("matrix, a, b, length", [
    (SOL, "t", "t e1", 2),
    (FIB, "t t", "t t e1", 3),
])
def test_free_pair_standard_examples(matrix, a, b, length):
    w = free_pair_standard(IntMatrix(matrix))
    assert (str(w.word_a), str(w.word_b)) == (a, b)
    assert w.max_length == length
    assert w.rate_lower_bound == pytest.approx(2 ** (1 / length))
    assert w.verified_depth == 8
    assert w.construction == "standard_pair"


def test_free_pair_standard_fib_reports_index():
    w = free_pair_standard(IntMatrix(FIB))
    assert w.trace["power"] == 2 and w.trace["subgroup_index"] == 2


def test_free_pair_standard_unipotent():
    with pytest.raises(AllRootsOfUnity):
        free_pair_standard(IntMatrix(HEISENBERG))


@pytest.mark.parametrize("matrix, verdict", [
    (HEISENBERG, "polynomial_growth"),
    (ROTATION, "polynomial_growth"),
    ([[0, -1], [1, 1]], "polynomial_growth"),
    (SOL, "uniform_exponential_growth"),
    (FIB, "uniform_exponential_growth"),
    ([[3, 2], [1, 1]], "uniform_exponential_growth"),
])
def test_classify_fixtures(matrix, verdict):
    c = classify_split_extension(GroupSpec.split_extension(matrix))
    assert c.verdict == verdict
    assert (c.witness is None) == (verdict == "polynomial_growth")
    assert c.evidence == ("kronecker_true" if c.witness is None else "witness")


def test_classify_invariance():
    rng = random.Random(43)
    for matrix in (SOL, FIB, HEISENBERG, ROTATION, [[3, 2], [1, 1]]):
        a = IntMatrix(matrix)
        base = classify_split_extension(a, verify_depth=0).verdict
        assert classify_split_extension(a.inverse(), verify_depth=0).verdict == base
        for _ in range(10):
            p = random_unimodular(rng, 2)
            assert classify_split_extension(p @ a @ p.inverse(), verify_depth=0).verdict == base


def test_search_standard_matches_standard_pair(sol):
    w = witness_search(sol)
    std = free_pair_standard(sol)
    assert (w.word_a, w.word_b) == (std.word_a, std.word_b)
    assert w.max_length <= 3 + 2 * sol.rank
    assert w.trace["branch"] == "full_rank"


def test_search_rewritten_generators(sol):
    gens = sol.with_words({"x": "t e1", "y": "e1 e2", "z": "e2"})
    w = witness_search(sol, gens)
    assert w.max_length <= 7
    assert verify_free_semigroup(gens, w.word_a, w.word_b, 8).ok
    ea, eb = w.expanded()
    assert gens.evaluate(w.word_a) == sol.generators.evaluate(ea)
    assert gens.evaluate(w.word_b) == sol.generators.evaluate(eb)


def test_search_without_t_exponent(sol):
    with pytest.raises(DegenerateGeneratingSet):
        witness_search(sol, sol.with_words({"a": "e1", "b": "e2"}))


def test_search_polynomial_group():
    spec = GroupSpec.split_extension(HEISENBERG)
    with pytest.raises(NotExponential):
        witness_search(spec)


def test_search_rejects_matrix_group(z_spec):
    with pytest.raises(KindMismatch):
        witness_search(z_spec)


def test_search_abelian_subgroup(sol):
    # <t e1 ... > with only one generator is cyclic, hence abelian
    with pytest.raises(NotExponential):
        witness_search(sol, sol.with_words({"x": "t e1"}))


BLOCK = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 0]]


def test_search_raised_power_branch():
    spec = GroupSpec.split_extension(BLOCK)
    gens = spec.with_words({"x": "t", "y": "e3"})
    w = witness_search(spec, gens)
    assert w.trace["branch"] == "raised_power"
    assert "quotient_attempt" in w.trace
    assert (str(w.word_a), str(w.word_b)) == ("x x", "x x y")
    assert verify_free_semigroup(gens, w.word_a, w.word_b, 10).ok


def test_search_even_exponents():
    spec = GroupSpec.split_extension(BLOCK)
    gens = spec.with_words({"x": "t t", "y": "t t t e1", "z": "e3"})
    w = witness_search(spec, gens)
    assert w.trace["t_exponent"] == 2
    assert verify_free_semigroup(gens, w.word_a, w.word_b, 8).ok


def test_quotient_problem_is_a_homomorphism():
    spec = GroupSpec.split_extension(BLOCK)
    gens = spec.with_words({"x": "t", "y": "e3", "z": "e1"})
    t_elem = gens.element("x")
    v1 = hnf_saturate([(1, 0, 0, 0), (0, 1, 0, 0)], 4)
    qp = quotient_problem(gens, t_elem, 1, v1)
    assert qp.index == 1
    assert qp.group.matrix.is_unimodular
    assert char_poly(qp.group.matrix).coeffs == (1, -1, -1)
    rng = random.Random(47)
    letters = [(l, e) for l in gens.labels for e in (1, -1)]
    for _ in range(100):
        u = Word(rng.choices(letters, k=rng.randint(0, 5)))
        v = Word(rng.choices(letters, k=rng.randint(0, 5)))
        gu, gv = gens.evaluate(u), gens.evaluate(v)
        lhs = qp.project(element_compose(gu, gv), t_elem, 1)
        rhs = element_compose(qp.project(gu, t_elem, 1), qp.project(gv, t_elem, 1))
        assert lhs == rhs


def test_restricted_action():
    a = IntMatrix(BLOCK)
    sub = restricted_action(a, [(0, 0, 1, 0), (0, 0, 0, 1)])
    assert char_poly(sub).coeffs == (1, -1, -1)


def test_witness_to_dict(sol):
    d = free_pair_standard(sol).to_dict()
    assert d["word_a"] == "t" and d["word_b"] == "t e1"
    assert d["rate_lower_bound"] == 1.414214
    assert d["trace"]["branch"] == "standard"


def test_random_generating_sets_of_sol():
    rng = random.Random(53)
    spec = GroupSpec.split_extension(SOL)
    letters = [(l, e) for l in ("t", "e1", "e2") for e in (1, -1)]
    for _ in range(20):
        words = {"x": W("t") + Word(rng.choices(letters, k=rng.randint(0, 2))),
                 "y": Word(rng.choices(letters, k=rng.randint(1, 3))),
                 "z": Word(rng.choices(letters, k=rng.randint(1, 3)))}
        gens = spec.with_words(words)
        try:
            w = witness_search(spec, gens)
        except NotExponential:
            continue
        assert verify_free_semigroup(gens, w.word_a, w.word_b, 8).ok
