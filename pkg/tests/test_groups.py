import random

import pytest

from growthforge.errors import (
    DimensionMismatch,
    InvalidTable,
    KindMismatch,
    NotTransitive,
    ParseError,
    UnknownLabel,
    ValidationError,
)
from growthforge.exact import IntMatrix
from growthforge.groups import (
    GeneratingSet,
    GroupSpec,
    SplitExtension,
    Word,
    canonical_encode,
    commutator,
    element_compose,
    element_invert,
    element_power,
    evaluate_word,
    finite_index_generators,
    is_identity,
)
from conftest import SOL


def test_word_parse_and_print():
    w = Word.parse("t e1^-1  t^-1")
    assert w == Word([("t", 1), ("e1", -1), ("t", -1)])
    assert str(w) == "t e1^-1 t^-1"
    assert Word.parse("") == Word()
    assert w.inverse() == Word.parse("t e1 t^-1")
    assert Word.parse("t t^-1 e1").reduced() == Word.parse("e1")
    assert Word.parse("t").power(-2) == Word.parse("t^-1 t^-1")
    with pytest.raises(ParseError):
        Word.parse("t^2")
    with pytest.raises(ParseError):
        Word.parse("1x")


def test_split_compose_and_invert(sol):
    g = sol.group
    x = g.element((1, 0), 1)
    y = g.element((0, 1), 0)
    assert element_compose(x, y) == g.element((2, 1), 1)
    assert element_compose(y, x) == g.element((1, 1), 1)
    assert element_invert(x) == g.element((-1, 1), -1)
    assert is_identity(element_compose(x, element_invert(x)))


def test_evaluate_word_examples(sol):
    assert evaluate_word(sol, "t e1 t^-1") == sol.group.element((2, 1), 0)
    assert evaluate_word(sol, "") == sol.group.identity()
    assert evaluate_word(sol, "e1 e2 e1^-1") == sol.group.element((0, 1), 0)
    with pytest.raises(UnknownLabel):
        evaluate_word(sol, "t x")


def test_commutator_examples(sol):
    t, e1 = sol.generators.element("t"), sol.generators.element("e1")
    assert commutator(t, e1) == sol.group.element((1, 1), 0)
    # split-model closed form for [(w1,k1),(w2,k2)]
    g = sol.group
    rng = random.Random(3)
    for _ in range(50):
        w1 = (rng.randint(-5, 5), rng.randint(-5, 5))
        w2 = (rng.randint(-5, 5), rng.randint(-5, 5))
        k1, k2 = rng.randint(-3, 3), rng.randint(-3, 3)
        i = IntMatrix.identity(2)
        expected = tuple(
            a - b for a, b in zip((i - g.action(k2)).apply(w1), (i - g.action(k1)).apply(w2))
        )
        assert commutator(g.element(w1, k1), g.element(w2, k2)) == g.element(expected, 0)


def test_conjugation_by_t_applies_matrix(sol):
    g = sol.group
    t = g.t()
    for k in range(-3, 4):
        for v in [(1, 0), (0, 1), (3, -2)]:
            conj = element_compose(element_compose(element_power(t, k), g.element(v, 0)),
                                   element_power(t, -k))
            assert conj == g.element(g.action(k).apply(v), 0)


def test_matrix_group_ops(z_spec):
    g = z_spec.generators.element("g")
    assert element_power(g, 3).m == IntMatrix([[1, 3], [0, 1]])
    assert element_invert(g).m == IntMatrix([[1, -1], [0, 1]])
    assert is_identity(element_compose(g, element_invert(g)))


def test_kind_and_dimension_mismatch(sol, z_spec, z2_spec):
    with pytest.raises(KindMismatch):
        element_compose(sol.group.t(), z_spec.generators.element("g"))
    with pytest.raises(DimensionMismatch):
        element_compose(z_spec.generators.element("g"), z2_spec.generators.element("a"))
    other = SplitExtension(IntMatrix([[1, 1], [0, 1]]))
    with pytest.raises(KindMismatch):
        element_compose(sol.group.t(), other.t())


def test_canonical_encoding(sol, z_spec):
    g = sol.group
    assert canonical_encode(g.element((1, 0), 0)) == canonical_encode(g.element((1, 0), 0))
    assert canonical_encode(g.element((1, 0), 0)) != canonical_encode(g.element((0, 1), 0))
    assert canonical_encode(g.element((1, 0), 0)) != canonical_encode(g.element((-1, 0), 0))
    big = 2**200 + 7
    assert canonical_encode(g.element((big, 0), 0)) != canonical_encode(g.element((big + 1, 0), 0))
    assert canonical_encode(g.element((1, 0), 0)) != canonical_encode(z_spec.generators.element("g"))
    assert canonical_encode(g.identity())[:1] == b"S"
    assert canonical_encode(z_spec.generators.element("g"))[:1] == b"M"


def test_split_extension_rejects_bad_matrix():
    with pytest.raises(ValidationError):
        GroupSpec.split_extension([[2, 0], [0, 1]])
    with pytest.raises(ValidationError):
        GroupSpec.split_extension([[1, 0, 0], [0, 1, 0]])


def test_generating_set_validation(sol):
    with pytest.raises(ValidationError):
        GeneratingSet([], [])
    with pytest.raises(ValidationError):
        GeneratingSet(["a", "a"], [sol.group.t(), sol.group.t()])
    with pytest.raises(ValidationError):
        GeneratingSet(["1a"], [sol.group.t()])


def test_with_words_expands_back(sol):
    gens = sol.with_words({"x": "t e1", "y": "e1 e2"})
    assert gens.evaluate("x y^-1") == evaluate_word(sol, "t e1 e2^-1 e1^-1")
    assert gens.expand("x y^-1") == Word.parse("t e1 e2^-1 e1^-1")


def test_spec_words_and_pairs():
    spec = GroupSpec.split_extension(SOL, {"x": "t e1", "y": ((1, 2), 0)})
    assert spec.generators.element("x") == spec.group.element((2, 1), 1)
    assert spec.generators.element("y") == spec.group.element((1, 2), 0)


def test_group_axioms_random(sol):
    rng = random.Random(7)
    g = sol.group

    def rand():
        return g.element((rng.randint(-9, 9), rng.randint(-9, 9)), rng.randint(-4, 4))

    for _ in range(200):
        x, y, z = rand(), rand(), rand()
        assert element_compose(element_compose(x, y), z) == element_compose(x, element_compose(y, z))
        assert element_invert(element_compose(x, y)) == element_compose(element_invert(y), element_invert(x))
        n = rng.randint(-5, 5)
        assert element_power(x, n) == element_invert(element_power(x, -n))


def test_word_homomorphism(sol):
    rng = random.Random(9)
    letters = [(l, e) for l in sol.generators.labels for e in (1, -1)]
    for _ in range(200):
        u = Word(rng.choices(letters, k=rng.randint(0, 6)))
        v = Word(rng.choices(letters, k=rng.randint(0, 6)))
        assert evaluate_word(sol, u + v) == element_compose(evaluate_word(sol, u), evaluate_word(sol, v))
        assert evaluate_word(sol, u.inverse()) == element_invert(evaluate_word(sol, u))


def _cyclic_table(d):
    return {"g": [(i + 1) % d for i in range(d)]}


@pytest.mark.parametrize("d, expected", [(1, ["g"]), (2, ["g g"]), (3, ["g g g"])])
def test_schreier_cyclic(z_spec, d, expected):
    out = finite_index_generators(z_spec, _cyclic_table(d))
    assert [str(w) for w in out.definitions] == expected
    assert out.labels[0] == "k1"


def test_schreier_z2_index_two(z2_spec):
    # kernel of (a, b) -> a mod 2
    out = finite_index_generators(z2_spec, {"a": [1, 0], "b": [0, 1]})
    words = {str(w) for w in out.definitions}
    assert "b" in words and "a a" in words
    for w in out.definitions:
        assert sum(e for l, e in w if l == "a") % 2 == 0
        assert len(w) <= 3


def test_schreier_errors(z_spec, z2_spec):
    with pytest.raises(NotTransitive):
        finite_index_generators(z_spec, {"g": [0, 1]})
    with pytest.raises(InvalidTable):
        finite_index_generators(z_spec, {"g": [0, 0]})
    with pytest.raises(InvalidTable):
        finite_index_generators(z_spec, {"h": [0]})
    with pytest.raises(InvalidTable):
        finite_index_generators(z2_spec, {"a": [1, 0], "b": [0, 1, 2]})
