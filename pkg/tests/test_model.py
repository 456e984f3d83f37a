import itertools

import pytest
from hypothesis import given, strategies as st

from ftloops import (
    And,
    BasicEvent,
    BasicRef,
    Gate,
    GateRef,
    KooN,
    Or,
    build_tree,
    expand_koon,
)
from ftloops.errors import BadKooN, BadProbability, DuplicateId, EmptyTops, UnresolvedReference
from ftloops.model import Kind, evaluate, walk

a, b, c = BasicRef("a"), BasicRef("b"), BasicRef("c")
G1, G2, G3 = GateRef("G1"), GateRef("G2"), GateRef("G3")


def two_gate_tree():
    basics = [BasicEvent(x) for x in ("Aa", "Ab", "Ba", "Bb")]
    gates = [
        Gate("A", Or([BasicRef("Aa"), And([BasicRef("Ab"), GateRef("B")])])),
        Gate("B", Or([BasicRef("Bb"), And([BasicRef("Ba"), GateRef("A")])])),
    ]
    return build_tree(basics, gates, ["A"])


def test_build_two_gate_model():
    tree = two_gate_tree()
    assert len(tree.gates) == 2
    assert len(tree.basics) == 4
    assert tree.tops == ("A",)
    assert tree.dependencies == {"A": ["B"], "B": ["A"]}


@pytest.mark.parametrize(
    "basics, gates, tops, error",
    [
        ([BasicEvent("x")], [Gate("A", GateRef("Zz"))], ["A"], UnresolvedReference),
        ([BasicEvent("x")], [Gate("A", BasicRef("Zz"))], ["A"], UnresolvedReference),
        ([BasicEvent("x")], [Gate("A", BasicRef("x"))], ["B"], UnresolvedReference),
        ([BasicEvent("x")], [Gate("A", BasicRef("x"))], ["x"], UnresolvedReference),
        ([BasicEvent("x"), BasicEvent("x")], [Gate("A", BasicRef("x"))], ["A"], DuplicateId),
        ([BasicEvent("A")], [Gate("A", BasicRef("A"))], ["A"], DuplicateId),
        ([BasicEvent("x")], [Gate("A", BasicRef("x"))], [], EmptyTops),
        ([BasicEvent("x", prob=1.5)], [Gate("A", BasicRef("x"))], ["A"], BadProbability),
        ([BasicEvent("x", prob=-0.1)], [Gate("A", BasicRef("x"))], ["A"], BadProbability),
        (
            [],
            [Gate("G1", G2), Gate("G2", G1), Gate("G3", G1), Gate("T", KooN(4, [G1, G2, G3]))],
            ["T"],
            BadKooN,
        ),
        ([BasicEvent("x")], [Gate("A", KooN(0, [BasicRef("x")]))], ["A"], BadKooN),
    ],
)
def test_build_rejects(basics, gates, tops, error):
    with pytest.raises(error):
        build_tree(basics, gates, tops)


def test_self_reference_is_legal():
    tree = build_tree([], [Gate("A", GateRef("A"))], ["A"])
    assert tree.dependencies["A"] == ["A"]


def test_tree_is_immutable():
    tree = two_gate_tree()
    with pytest.raises(AttributeError):
        tree.tops = ("B",)


def test_koon_two_of_three():
    assert expand_koon(KooN(2, [G1, G2, G3])) == Or([And([G1, G2]), And([G1, G3]), And([G2, G3])])


def test_koon_one_of_n_is_or():
    assert expand_koon(KooN(1, [a, b])) == Or([a, b])


def test_koon_n_of_n_is_and():
    assert expand_koon(KooN(3, [a, b, c])) == And([a, b, c])


def test_koon_nested_inside_gates():
    expr = And([c, KooN(1, [a, b])])
    assert expand_koon(expr) == And([c, Or([a, b])])


@pytest.mark.parametrize("n", range(1, 7))
def test_koon_threshold_equivalence_exhaustive(n):
    inputs = [BasicRef(f"x{i}") for i in range(n)]
    for k in range(1, n + 1):
        node = KooN(k, inputs)
        expanded = expand_koon(node)
        assert not any(isinstance(x, KooN) for x in walk(expanded))
        for bits in itertools.product((False, True), repeat=n):
            values = {f"x{i}": v for i, v in enumerate(bits)}
            assert evaluate(expanded, values) == (sum(bits) >= k)


@st.composite
def exprs(draw, depth=3):
    names = st.sampled_from(["a", "b", "c", "d"]).map(BasicRef)
    if depth == 0:
        return draw(names)
    kind = draw(st.sampled_from(["leaf", "or", "and", "koon"]))
    if kind == "leaf":
        return draw(names)
    if kind == "koon":
        ins = draw(st.lists(names, min_size=1, max_size=4))
        return KooN(draw(st.integers(1, len(ins))), ins)
    children = draw(st.lists(exprs(depth=depth - 1), min_size=1, max_size=3))
    return (Or if kind == "or" else And)(children)


@given(exprs())
def test_expand_koon_idempotent_and_equivalent(expr):
    once = expand_koon(expr)
    assert expand_koon(once) == once
    for bits in itertools.product((False, True), repeat=4):
        values = dict(zip("abcd", bits))
        assert evaluate(once, values) == evaluate(expr, values)


def test_kind_defaults_to_nonrepairable():
    assert BasicEvent("x").kind is Kind.NON_REPAIRABLE
    assert BasicEvent("x").prob is None


def test_empty_identifier_rejected():
    from ftloops.errors import ModelError

    with pytest.raises(ModelError):
        build_tree([BasicEvent("")], [Gate("A", BasicRef(""))], ["A"])
