import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cml_kit import (
    Kernel,
    KernelError,
    closure,
    disjoint_union,
    dumps_kernel,
    left_tag,
    loads_kernel,
    right_tag,
    validate,
)

S = frozenset


def test_smallest_legal_kernel():
    k = Kernel(["m"], {("m", "m"): 0})
    validate(k)
    assert k.rate("m", "m") == 0


def test_duplicate_state_rejected():
    with pytest.raises(KernelError, match="duplicate state"):
        validate(Kernel(["m", "m"], {}))


def test_fig1_validates(fig1):
    validate(fig1)
    assert len(fig1.states) == 6


def test_negative_rate_rejected():
    with pytest.raises(KernelError, match="negative rate"):
        validate(Kernel(["a"], {("a", "a"): Fraction(-1)}))


def test_unknown_endpoint_rejected():
    with pytest.raises(KernelError, match="not a state"):
        validate(Kernel(["a"], {("a", "b"): 1}))


def test_float_rate_rejected():
    with pytest.raises(Exception, match="float"):
        Kernel(["a"], {("a", "a"): 0.1})


def test_measure_branch_pair(fig1):
    # total rate from the root into the two mid states: 3 + 2
    assert fig1.measure("m", S({"m2", "m4"})) == 5


def test_measure_empty_set(fig1):
    assert fig1.measure("m", S()) == 0


def test_measure_three_targets(fig1):
    assert fig1.measure("m", S({"m1", "m2", "m4"})) == 6


def test_measure_unknown_member(fig1):
    with pytest.raises(KernelError, match="not in kernel"):
        fig1.measure("m", S({"zz"}))
    with pytest.raises(KernelError, match="unknown state"):
        fig1.measure("zz", S())


def test_union_of_singletons():
    u = disjoint_union(Kernel(["a"], {("a", "a"): 1}), Kernel(["a"], {("a", "a"): 2}))
    validate(u)
    assert len(u.states) == 2
    assert u.rate("L:a", "L:a") == 1
    assert u.rate("R:a", "R:a") == 2
    assert u.rate("L:a", "R:a") == 0


def test_union_preserves_measures(fig1, fig3n):
    u = disjoint_union(fig1, fig3n)
    assert len(u.states) == 10
    assert u.measure(left_tag("m"), S({left_tag("m2"), left_tag("m4")})) == 5
    for s in fig1.states:
        assert u.measure(left_tag(s), S(map(left_tag, fig1.states))) == fig1.total(s)
    for s in fig3n.states:
        assert u.total(right_tag(s)) == fig3n.total(s)


def test_union_with_empty_kernel(fig1):
    u = disjoint_union(fig1, Kernel([], {}))
    assert [s[2:] for s in u.states] == list(fig1.states)
    assert u.measure("L:m", S({"L:m2", "L:m4"})) == 5


def test_closure_identity():
    c = S({"a", "b"})
    identity = S({("a", "a"), ("b", "b"), ("c", "c")})
    assert closure(c, identity) == c


def test_closure_empty():
    assert closure(S(), S({("a", "b")})) == S()


def test_closure_order_example():
    # image of {m1} under the displayed relation, plus {m1} itself
    relation = S({("m", "n"), ("m1", "n1"), ("m2", "n2"), ("m4", "n2")})
    assert closure(S({"m1"}), relation) == S({"m1", "n1"})


states_st = st.lists(
    st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=5, unique=True
)
rates_st = st.fractions(min_value=0, max_value=5, max_denominator=6)


@st.composite
def kernels(draw):
    states = draw(states_st)
    entries = {}
    for s in states:
        for t in states:
            if draw(st.booleans()):
                entries[(s, t)] = draw(rates_st)
    return Kernel(states, entries)


@given(kernels(), st.data())
def test_measure_additive_over_disjoint_sets(k, data):
    members = sorted(k.state_set)
    split = data.draw(st.integers(0, len(members)))
    left, right = S(members[:split]), S(members[split:])
    for m in k.states:
        assert k.measure(m, left) + k.measure(m, right) == k.measure(m, left | right)


@given(kernels(), kernels())
def test_union_preserves_left_measures(k1, k2):
    u = disjoint_union(k1, k2)
    validate(u)
    tagged = S(map(left_tag, k1.states))
    for m in k1.states:
        assert u.measure(left_tag(m), tagged) == k1.total(m)


@given(
    st.sets(st.sampled_from("abcde")),
    st.sets(st.tuples(st.sampled_from("abcde"), st.sampled_from("abcde"))),
    st.sets(st.tuples(st.sampled_from("abcde"), st.sampled_from("abcde"))),
)
def test_closure_extensive_and_monotone(c, r1, r2):
    c = S(c)
    r1, r2 = S(r1), S(r2)
    assert c <= closure(c, r1)
    assert closure(c, r1) <= closure(c, r1 | r2)


def test_json_round_trip(fig1):
    again = loads_kernel(dumps_kernel(fig1, comment="round trip"))
    assert again == fig1


@pytest.mark.parametrize(
    "text, message",
    [
        ('{"states": ["a"], "rates": {"a": {"a": "-1"}}}', "rates.a.a"),
        ('{"states": ["a"], "rates": {"a": {"a": "x/y"}}}', "rates.a.a"),
        ('{"states": ["a"], "rates": {"a": {"b": "1"}}}', "not a state"),
        ('{"states": "a"}', "list of strings"),
        ("{", "not valid JSON"),
    ],
)
def test_loader_diagnostics(text, message):
    with pytest.raises(KernelError, match=message):
        loads_kernel(text)


def test_loader_accepts_comment_and_decimal():
    k = loads_kernel(
        json.dumps(
            {"comment": "x", "states": ["a"], "rates": {"a": {"a": "0.25"}}}
        )
    )
    assert k.rate("a", "a") == Fraction(1, 4)
