import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permseq import make_pabcd
from permseq.dynamics import (
    Cycle,
    CycleRecord,
    Escaped,
    StepLimit,
    branch_stats,
    classify_cycle,
    count_local_maxima,
    default_m_floor,
    escapes_backward,
    multiplication_factors,
    run_trajectory,
    trajectory,
)
from permseq.perm import IntegrityError

ROW7 = (15, 17, 19, 22, 25, 28, 21, 23, 26, 29, 32, 24, 18, 20)


def test_classify_examples():
    r = classify_cycle((3, 4), 4)
    assert (r.length, r.m) == (2, 1)
    r = classify_cycle(ROW7, 4)
    assert (r.min, r.max, r.length, r.m) == (15, 32, 14, 3)
    assert r.K + r.L == r.length and r.L == sum(1 for x in ROW7 if x % 4 == 0)
    r = classify_cycle((5,), 4)
    assert (r.length, r.m) == (1, 0)


def test_classify_rejects_repeats():
    with pytest.raises(IntegrityError):
        classify_cycle((1, 2, 1), 2)


@given(st.integers(0, len(ROW7) - 1))
def test_classify_rotation_invariant(k):
    assert classify_cycle(ROW7[k:] + ROW7[:k], 4) == classify_cycle(ROW7, 4)


@given(st.lists(st.integers(0, 10**6), min_size=2, max_size=40, unique=True))
@settings(max_examples=200)
def test_maxima_equal_minima(xs):
    n = len(xs)
    minima = sum(1 for i in range(n) if xs[i - 1] > xs[i] < xs[(i + 1) % n])
    assert count_local_maxima(xs) == minima >= 1


def test_collatz_trajectories(collatz):
    out = run_trajectory(collatz, 4)
    assert isinstance(out, Cycle) and out.entry_steps == 0
    assert out.record.elements == (4, 6, 9, 7, 5)
    out = run_trajectory(collatz, 59)
    assert out.record.elements == (44, 66, 99, 74, 111, 83, 62, 93, 70, 105, 79, 59)
    assert out.record.m == 4
    out = run_trajectory(collatz, 8, 10**8, 10)
    assert isinstance(out, Escaped)
    assert out.threshold_crossed > 10**8 and out.maxima_seen > 10


def test_cycle_closure(p2433):
    rec = run_trajectory(p2433, 90, 10**8, 20).record
    x = rec.min
    for _ in range(rec.length):
        x = p2433.apply(x)
    assert x == rec.min and rec.key() == (90, 1972, 93)


def test_escape_needs_maxima(collatz):
    # with a floor no trajectory can reach, the walk runs into the ceiling instead
    out = run_trajectory(collatz, 8, 10**4, 10**9)
    assert isinstance(out, Escaped) and out.threshold_crossed > 10**8


def test_step_limit(collatz):
    assert run_trajectory(collatz, 8, 10**8, 10, step_limit=5) == StepLimit(5)


def test_bad_thresholds(collatz):
    with pytest.raises(ValueError):
        run_trajectory(collatz, 8, 0)


def test_forward_escape_implies_backward(collatz):
    one_sided = [x for x in (8, 14, 40, 64, 80) if not escapes_backward(collatz, x, 10**8, 10)]
    assert one_sided == []


def test_2653_strictly_increasing():
    spec = make_pabcd(2, 6, 5, 3)
    for x0 in (3, 9, 15):
        xs = trajectory(spec, x0, 10**4)
        assert all(a < b for a, b in zip(xs, xs[1:]))
        assert isinstance(run_trajectory(spec, x0, 10**6), Escaped)


def test_uniform_factors():
    f1, f2 = multiplication_factors(0.5, 1 / 3, 2, 2, 1, 3)
    assert f1 == pytest.approx(1.06066, abs=1e-5)
    assert f2 == pytest.approx(1.05827, abs=1e-5)


def test_degenerate_branch():
    st_ = branch_stats([4, 8, 12], 2, 4, 3, 3)
    assert st_.frac_0_mod_b == 1
    assert st_.factor_left_right == pytest.approx(3 / 4)


def test_escaped_branch_product_near_one(p1322):
    xs = trajectory(p1322, 8, 10**4)
    assert abs(branch_stats(xs, 1, 3, 2, 2).product - 1) < 0.05


def test_record_json_round_trip():
    rec = classify_cycle(ROW7, 4)
    assert CycleRecord.from_dict(rec.to_dict()) == rec
    assert "elements" not in rec.to_dict(with_elements=False)


def test_default_m_floor(p1322, p2433, collatz):
    assert default_m_floor(p1322) == 10 and default_m_floor(collatz) == 10
    assert default_m_floor(p2433) == 20
    assert default_m_floor(make_pabcd(2, 6, 5, 3)) is None
