import math
import random
from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permseq.perm import (
    IntegrityError,
    ParameterError,
    PermSpec,
    ResidueRule,
    ResourceError,
    ccset_validate,
    count_generalizations,
    generalization_order,
    generalization_rank,
    generalize,
    iter_generalizations,
    make_fafc,
    make_pabcd,
    verify_bijection,
)


def brute_cover(pairs):
    """Exact-cover check by scanning one full period."""
    big = reduce(math.lcm, (a for a, _ in pairs))
    for x in range(big):
        hits = sum(1 for a, b in pairs if x % a == b)
        if hits != 1:
            return False, x
    return True, None


def rules_of(spec):
    return [(r.src_mod, r.src_res, r.dst_mod, r.dst_res) for r in spec.rules]


def test_pabcd_2433_rules():
    assert rules_of(make_pabcd(2, 4, 3, 3)) == [
        (4, 0, 3, 0), (8, 1, 9, 1), (8, 2, 9, 2), (8, 3, 9, 4), (8, 5, 9, 5), (8, 6, 9, 7), (8, 7, 9, 8),
    ]


def test_collatz_is_inverse_of_1322(collatz):
    for x in range(2000):
        if x % 2 == 0:
            want = 3 * x // 2
        elif x % 4 == 1:
            want = 3 * (x // 4) + 1
        else:
            want = 3 * (x // 4) + 2
        assert collatz.apply(x) == want
    assert collatz.apply(27) == 20
    assert collatz.label == "P(1,3,2,2)^-1"
    assert collatz.inverse().label == "P(1,3,2,2)"


def test_pabcd_parameter_errors():
    with pytest.raises(ParameterError):
        make_pabcd(2, 3, 2, 2)
    with pytest.raises(ParameterError):
        make_pabcd(1, 1, 1, 1)


@pytest.mark.parametrize(
    "pairs,valid",
    [
        ([(3, 0), (3, 1), (3, 2)], True),
        ([(2, 0), (4, 1), (8, 3), (16, 7), (16, 15)], True),
        ([(2, 0), (4, 1)], False),
        ([(2, 0), (4, 0), (4, 1), (4, 3)], False),
    ],
)
def test_ccset_examples(pairs, valid):
    rep = ccset_validate(pairs)
    assert rep.valid is valid
    assert rep.total == sum(Fraction(1, a) for a, _ in pairs)
    assert brute_cover(pairs)[0] is valid


def test_ccset_witnesses():
    rep = ccset_validate([(2, 0), (4, 1)])
    assert (rep.problem, rep.witness, rep.total) == ("uncovered", 3, Fraction(3, 4))
    rep = ccset_validate([(2, 0), (4, 0), (4, 1), (4, 3)])
    assert (rep.problem, rep.witness) == ("overlap", 0)
    rep = ccset_validate([])
    assert (rep.valid, rep.total, rep.problem) == (False, 0, "empty")


def test_ccset_lcm_ceiling():
    with pytest.raises(ResourceError):
        ccset_validate([(10**7, 0), (10**7 + 1, 0)])


@st.composite
def residue_sets(draw):
    """Random splits of N0 into classes, optionally damaged."""
    classes = [(1, 0)]
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, len(classes) - 1))
        m, r = classes.pop(i)
        k = draw(st.sampled_from([2, 3]))
        classes += [(m * k, r + j * m) for j in range(k)]
    damage = draw(st.sampled_from(["none", "drop", "dup"]))
    if damage == "drop" and len(classes) > 1:
        classes.pop(draw(st.integers(0, len(classes) - 1)))
    elif damage == "dup":
        classes.append(classes[draw(st.integers(0, len(classes) - 1))])
    return classes


@given(residue_sets())
@settings(max_examples=150, deadline=None)
def test_ccset_agrees_with_brute_force(pairs):
    rep = ccset_validate(pairs)
    ok, witness = brute_cover(pairs)
    assert rep.valid is ok
    if not ok:
        assert rep.witness == witness


def test_generalization_counts():
    assert count_generalizations(6, "simple") == 719
    assert count_generalizations(6, "extended") == 4320
    assert count_generalizations(2, "simple") == 1
    assert count_generalizations(2, "extended") == 4
    assert count_generalizations(2, "simple", proper=False) == 2


@pytest.mark.parametrize("mode,n", [("simple", 4), ("extended", 3)])
def test_rank_round_trip(mode, n):
    for rank in range(count_generalizations(n, mode)):
        order = generalization_order(n, mode, rank)
        assert generalization_rank(order, mode) == rank
        if mode == "extended":
            assert order[0] != 0


def test_simple_swap_of_1322(p1322):
    g = generalize(p1322, (1, 0), "simple")
    assert rules_of(g) == [(3, 0, 2, 0), (3, 1, 4, 3), (3, 2, 4, 1)]
    assert [g.apply(x) for x in (1, 3, 2)] == [3, 2, 1]


def test_generalize_rejects_bad_orders(p1322):
    with pytest.raises(ParameterError):
        generalize(p1322, (0, 0), "simple")
    with pytest.raises(ParameterError):
        generalize(p1322, (0, 1), "simple", proper=True)
    with pytest.raises(ParameterError):
        generalize(p1322, (0, 2, 1), "extended", proper=True)


def test_all_simple_generalizations_of_2433_are_bijections(p2433):
    seen = 0
    for _, g in iter_generalizations(p2433, "simple"):
        assert verify_bijection(g).valid
        seen += 1
    assert seen == 719


def test_fafc_reduces_to_pabcd():
    assert rules_of(make_fafc(2, 4, 1, 3, 3, 1)) == rules_of(make_pabcd(2, 4, 3, 3))
    assert rules_of(make_fafc(1, 3, 1, 2, 2, 1)) == rules_of(make_pabcd(1, 3, 2, 2))


def test_fafc_identity_case():
    spec = make_fafc(2, 3, 2, 3, 2, 3)
    assert all(spec.apply(x) == x for x in range(500))


def test_fafc_case_five():
    spec = make_fafc(10, 8, 5, 9, 9, 3)
    src = sorted((r.src_mod, r.src_res) for r in spec.rules)
    dst = sorted((r.dst_mod, r.dst_res) for r in spec.rules)
    assert [p for p in src if p[0] == 40] == [(40, 8 * j) for j in range(5)]
    assert [p for p in dst if p[0] == 27] == [(27, 9 * j) for j in range(3)]
    assert {p for p in src if p[0] == 80} == {(80, r) for r in range(80) if r % 8}
    assert {p for p in dst if p[0] == 81} == {(81, s) for s in range(81) if s % 9}
    assert verify_bijection(spec).valid


def test_fafc_parameter_errors():
    with pytest.raises(ParameterError):
        make_fafc(10, 8, 3, 9, 9, 3)
    with pytest.raises(ParameterError):
        make_fafc(2, 4, 1, 3, 3, 2)


def test_duplicated_destination_is_reported(p2433):
    rules = list(p2433.rules)
    rules[1] = ResidueRule(8, 1, 9, 2)
    spec = PermSpec(tuple(rules), "broken")
    rep = verify_bijection(spec)
    assert not rep.valid
    # 9n+1 lost its rule and 9n+2 has two; the least bad residue is reported
    assert (rep.destination.problem, rep.destination.witness) == ("uncovered", 1)
    assert rep.source.valid


def test_incomplete_spec_raises_integrity_error():
    spec = PermSpec((ResidueRule(2, 0, 3, 0),), "half")
    with pytest.raises(IntegrityError):
        spec.apply(1)


def test_apply_examples(p2433):
    assert p2433.apply(3) == 4 and p2433.apply(4) == 3


def test_json_round_trip(p2433):
    g = generalize(p2433, generalization_order(7 - 1, "simple", 17), "simple")
    back = PermSpec.from_json(g.to_json())
    assert back == g
    assert back.to_dict()["rules"][0] == {"src_mod": 4, "src_res": 0, "dst_mod": 3, "dst_res": 0}


def test_monotonicity_convention(p2433):
    a, b = 2, 4
    for x in range(a * b + 1, 5000):
        y = p2433.apply(x)
        assert (y < x) if x % b == 0 else (y > x)


def test_2653_non_multiples_grow():
    spec = make_pabcd(2, 6, 5, 3)
    assert verify_bijection(spec).valid
    for x in range(6, 20000):
        if x % 6:
            y = spec.apply(x)
            assert y > x and y % 6


def test_big_integers_round_trip(p2433):
    x = 3**200 + 12345
    assert p2433.apply_inv(p2433.apply(x)) == x


def _random_simple(rng, base, k):
    n = len(base.rules) - 1
    total = count_generalizations(n, "simple")
    return [generalize(base, generalization_order(n, "simple", r), "simple")
            for r in rng.sample(range(1, total + 1), k)]


def test_injective_on_prefix(p1322, p2433):
    rng = random.Random(7)
    specs = [p1322, p2433, make_fafc(10, 8, 5, 9, 9, 3), make_pabcd(2, 6, 5, 3)]
    specs += _random_simple(rng, p2433, 3)
    for spec in specs:
        image = {spec.apply(x) for x in range(10**5)}
        assert len(image) == 10**5, spec.label


@given(st.integers(0, 10**30))
@settings(max_examples=300, deadline=None)
def test_inverse_round_trip_property(x):
    for spec in (make_pabcd(1, 3, 2, 2), make_pabcd(2, 4, 3, 3), make_pabcd(2, 6, 5, 3)):
        assert spec.apply_inv(spec.apply(x)) == x
        assert spec.apply(spec.apply_inv(x)) == x
