import json
from fractions import Fraction

import pytest

from permseq import kernel
from permseq.census import CensusSettings, cycle_census, divergence_ratio, sweep_generalizations
from permseq.perm import make_pabcd
from permseq.primes import prime_composite_perm


def test_collatz_small(collatz):
    rep = cycle_census(collatz, 10, CensusSettings(10**8, 10))
    assert [c.elements for c in rep.cycles] == [(0,), (1,), (2, 3), (4, 6, 9, 7, 5)]
    assert rep.divergent_minima == [8]
    assert rep.cycles[0].trivial and not rep.cycles[1].trivial


def test_partition(census_2433_1e5):
    r = census_2433_1e5
    assert r.cycle_seed_count + r.divergent_seed_count + r.step_limited_seed_count == r.x0
    assert r.step_limited_seed_count == 0
    seen = set()
    for c in r.cycles:
        assert not seen & set(c.elements)
        seen |= set(c.elements)


def test_step_limited_seeds_are_reported(p2433):
    rep = cycle_census(p2433, 200, CensusSettings(10**8, 20, step_limit=20))
    assert rep.step_limited_seed_count > 0
    assert rep.cycle_seed_count + rep.divergent_seed_count + rep.step_limited_seed_count == 200


def test_deterministic_serialisation(p2433):
    s = CensusSettings(10**8, 20)
    assert cycle_census(p2433, 20000, s).to_json() == cycle_census(p2433, 20000, s).to_json()


def test_monotone_in_x0(p2433):
    s = CensusSettings(10**8, 20)
    small = set(cycle_census(p2433, 10**3, s).cycle_keys())
    assert small <= set(cycle_census(p2433, 10**4, s).cycle_keys())


@pytest.mark.skipif(not kernel.HAVE_COMPILED, reason="compiled kernel not built")
@pytest.mark.parametrize("params,floor", [((2, 4, 3, 3), 20), ((1, 3, 2, 2), 10), ((2, 6, 5, 3), None)])
def test_backend_parity(params, floor):
    spec = make_pabcd(*params)
    s = CensusSettings(10**8, floor)
    fast = cycle_census(spec, 20000, s, backend="cython").to_dict(None)
    slow = cycle_census(spec, 20000, s, backend="python").to_dict(None)
    assert fast == slow


@pytest.mark.skipif(not kernel.HAVE_COMPILED, reason="compiled kernel not built")
def test_overflow_falls_back_to_python_ints(p2433):
    # thresholds beyond int64 force the compiled walker to hand over
    w = kernel.walk(p2433, 27 * 10**17, 10**30, None, 10**4, backend="cython")
    v = kernel.walk(p2433, 27 * 10**17, 10**30, None, 10**4, backend="python")
    assert w == v and w.last > 2**63


def test_2653_cycles_and_ratio():
    spec = make_pabcd(2, 6, 5, 3)
    rep = cycle_census(spec, 100, CensusSettings(10**6))
    assert rep.cycle_keys(include_trivial=True) == [(0, 0, 1), (1, 1, 1), (2, 2, 1)]
    assert rep.divergent_minima == list(range(3, 100, 6))
    assert divergence_ratio(spec, 100, CensusSettings(10**6)) == Fraction(17, 100)


def test_primecomp_census_starts_at_one():
    rep = cycle_census(prime_composite_perm(), 50, CensusSettings(10**6))
    assert rep.cycles[0].elements == (1,)
    assert rep.cycle_seed_count + rep.divergent_seed_count + rep.step_limited_seed_count == 49


def test_csv_and_json(census_2433_1e5):
    lines = census_2433_1e5.to_csv().splitlines()
    assert lines[0] == "nr,x_min,x_max,length,m"
    assert lines[-1] == "12,645,1612,31,8"
    doc = json.loads(census_2433_1e5.to_json())
    assert doc["divergent_min_count"] == census_2433_1e5.divergent_min_count
    assert doc["cycles"][0] == {"min": 0, "max": 0, "length": 1, "K": 0, "L": 1, "m": 0,
                                "elements": [0], "trivial": True}


def test_sweep_basics():
    s = CensusSettings(10**8, None)
    assert sweep_generalizations((2, 4, 3, 3), "simple", 0, 1000, s) == []
    one = sweep_generalizations((2, 4, 3, 3), "simple", 4, 5000, s)
    two = sweep_generalizations((2, 4, 3, 3), "simple", 4, 5000, s, jobs=2)
    assert one == two
    assert [r.rank for r in one] == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        sweep_generalizations((2, 2, 1, 3), "simple", 2, 100, s)


def test_simple_sweep_cycle_counts_are_plausible():
    res = sweep_generalizations((2, 4, 3, 3), "simple", 20, 10**4, CensusSettings(10**8, 20))
    assert all(5 <= r.n_cycles <= 30 for r in res)
