"""Pure-Python trajectory walker (reference and fallback for ``_ckernel``)."""

CYCLE, ESCAPED, STEP_LIMIT, OVERFLOW = 0, 1, 2, 3


def _run(step, x0, threshold, m_floor, step_limit, owner, label, ceiling):
    n_owner = len(owner) if owner is not None else 0
    hits = []
    last_hit = 0
    x = x0
    prev = None
    lo = hi = x0
    maxima = 0
    steps = 0
    while steps < step_limit:
        y = step(x)
        steps += 1
        if prev is not None and prev < x > y:
            maxima += 1
        prev, x = x, y
        if x == x0:
            return CYCLE, steps, maxima, lo, hi, x, hits
        if x < lo:
            lo = x
        elif x > hi:
            hi = x
        if x < n_owner:
            o = owner[x]
            if o == 0:
                owner[x] = label
            elif o > 0 and o != label and o != last_hit:
                hits.append(int(o))
                last_hit = o
        if x > threshold and (maxima > m_floor or x > ceiling):
            return ESCAPED, steps, maxima, lo, hi, x, hits
    return STEP_LIMIT, steps, maxima, lo, hi, x, hits


def walk_table(m, mult, offs, qmax, x0, threshold, m_floor, step_limit, owner=None, label=0, ceiling=None):
    """Iterate ``x -> mult[x % m] * (x // m) + offs[x % m]`` from ``x0``.

    Stops when the orbit returns to ``x0`` (CYCLE), when an element exceeds
    ``threshold`` after more than ``m_floor`` local maxima or exceeds
    ``ceiling`` outright (ESCAPED), or after ``step_limit`` steps.  The
    ceiling (default ``threshold**2``) keeps runaway orbits with few maxima
    from growing without bound.  Elements below ``len(owner)`` that are
    still 0 in ``owner`` are set to ``label``; other positive labels met on
    the way are reported in ``hits``.  Returns ``(status, steps, maxima,
    min, max, last, hits)``.
    """
    mult = [int(a) for a in mult]
    offs = [int(b) for b in offs]

    def step(x):
        q, r = divmod(x, m)
        return mult[r] * q + offs[r]

    return _run(step, int(x0), int(threshold), int(m_floor), int(step_limit), owner, label,
                _ceiling(threshold, ceiling))


def walk_callable(step, x0, threshold, m_floor, step_limit, owner=None, label=0, ceiling=None):
    """``walk_table`` for maps given as a Python callable."""
    return _run(step, int(x0), int(threshold), int(m_floor), int(step_limit), owner, label,
                _ceiling(threshold, ceiling))


def _ceiling(threshold, ceiling):
    return int(threshold) ** 2 if ceiling is None else int(ceiling)
