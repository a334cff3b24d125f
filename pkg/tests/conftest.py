import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from linrel import GF, QQ, Matrix, span
from linrel.relation import LinearRelation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

F2 = GF(2)
F3 = GF(3)


def small_ints(lo=-3, hi=3):
    return st.integers(min_value=lo, max_value=hi)


@st.composite
def q_matrices(draw, max_rows=4, max_cols=4, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(1, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.lists(small_ints(), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(entries, QQ, c)


@st.composite
def fp_matrices(draw, p=3, max_rows=4, max_cols=4):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(entries, GF(p), c)


@st.composite
def q_subspaces(draw, ambient=3, max_gens=4):
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.lists(small_ints(-2, 2), min_size=ambient, max_size=ambient), min_size=k, max_size=k))
    return span(gens, ambient, QQ)


@st.composite
def q_relations(draw, n=2, m=2, max_gens=4):
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.lists(small_ints(-2, 2), min_size=n + m, max_size=n + m), min_size=k, max_size=k))
    return LinearRelation(n, m, span(gens, n + m, QQ))


def to_sympy(A):
    import sympy
    if not A.rows:
        return sympy.zeros(0, A.ncols)
    return sympy.Matrix([[sympy.Rational(str(a)) for a in row] for row in A.rows])


# -- point-set oracle over a small prime field ------------------------------------


def points(S):
    """All vectors of a subspace over GF(p), by brute-force linear combinations."""
    p = S.field.p
    out = set()
    for coeffs in itertools.product(range(p), repeat=S.dim):
        v = [0] * S.ambient
        for c, b in zip(coeffs, S.basis):
            for i, a in enumerate(b):
                v[i] = (v[i] + c * a) % p
        out.add(tuple(v))
    return out


def pairs(T):
    return {(g[:T.n], g[T.n:]) for g in points(T.graph)}


def compose_points(R, T):
    rp = pairs(R)
    return {(x, z) for x, y in pairs(T) for y2, z in rp if y == y2}


def as_pairs_relation(pts, n, m, field):
    return LinearRelation(n, m, span([x + y for x, y in pts], n + m, field))


@pytest.fixture
def f2():
    return F2


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE = {}


def report(criterion, passed, detail):
    """Record one acceptance line; printed at the end of the run."""
    ACCEPTANCE[criterion] = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}"
    print(ACCEPTANCE[criterion])
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(str(k).rstrip("abcdefgh")), str(k))):
        terminalreporter.write_line(ACCEPTANCE[key])
