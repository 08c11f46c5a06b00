from fractions import Fraction

from cml_kit import Kernel, bisimilar, distance, holds
from cml_kit.harness.generate import corpus

Q = Fraction


def test_uniform_lift_distance(fig1, fig4o):
    # all five rates raised by 1/10; the root exit totals differ by 3/10
    d = distance(fig1, "m", fig4o, "o")
    assert d.value == Q(3, 10)
    assert d.attained_at == Q(3, 10)


def test_branch_merge_distance(fig1, fig4n):
    assert distance(fig1, "m", fig4n, "n").value == Q(1, 10)


def test_self_distance_zero(fig1):
    for s in fig1.states:
        assert distance(fig1, s, fig1, s).value == 0


def test_distance_attained_and_tight(fig1, fig4o):
    d = distance(fig1, "m", fig4o, "o")
    assert holds(fig1, "m", fig4o, "o", d.value)
    assert holds(fig4o, "o", fig1, "m", d.value)
    below = d.value - Q(1, 1000)
    assert not (
        holds(fig1, "m", fig4o, "o", below) and holds(fig4o, "o", fig1, "m", below)
    )


def test_pseudometric_axioms_on_generated_kernels():
    for kernel in corpus(6, 4, seed=21):
        states = kernel.states
        values = {}
        for m in states:
            for n in states:
                values[(m, n)] = distance(kernel, m, kernel, n).value
        for m in states:
            assert values[(m, m)] == 0
            for n in states:
                assert values[(m, n)] == values[(n, m)]
                for p in states:
                    assert values[(m, p)] <= values[(m, n)] + values[(n, p)]


def test_zero_distance_iff_bisimilar():
    for kernel in corpus(8, 5, seed=22):
        for i, m in enumerate(kernel.states):
            for n in kernel.states[i:]:
                zero = distance(kernel, m, kernel, n).value == 0
                assert zero == bisimilar(kernel, m, kernel, n)


def test_deadlock_distance_is_exit_rate():
    quiet = Kernel(["a"], {})
    busy = Kernel(["b", "c"], {("b", "c"): 5})
    assert distance(quiet, "a", busy, "b").value == 5


def test_scan_recovers_from_missed_breakpoint():
    # regression: the initial slack pool misses the true threshold here, so
    # the bisection probe comes back feasible and the scan must learn the new
    # breakpoint instead of giving up
    k = Kernel(
        ["s0", "s1", "s2", "s3"],
        {
            ("s0", "s1"): Q(1, 2),
            ("s1", "s2"): 1,
            ("s1", "s3"): 1,
            ("s2", "s3"): 2,
            ("s3", "s2"): 2,
            ("s3", "s3"): 3,
        },
    )
    assert distance(k, "s0", k, "s2").value == 2
    assert holds(k, "s0", k, "s2", 2) and holds(k, "s2", k, "s0", 2)
    tight = Q(2) - Q(1, 1000)
    assert not (holds(k, "s0", k, "s2", tight) and holds(k, "s2", k, "s0", tight))
