import pytest
from hypothesis import given
from hypothesis import strategies as st

from tamelog.errors import InvalidModel, NotApplicable
from tamelog.fan import FanPoint, KatoFan, classify
from tamelog.model import (
    LogModel,
    StratumData,
    ZetaFunction,
    check_degeneration_restrictions,
    check_prop_vanishing,
    m_prime,
    stratum_violations,
    tame_euler,
    tame_point_exists,
    tame_zeta,
    theorem1_verdict,
)


def mk(p, rows, specs=(), claimed=False, generic_chi=None):
    points = [FanPoint("eta", 0, 1)]
    strata = {"eta": StratumData("eta", generic_chi, 1)}
    for row in rows:
        pid, codim, msharp, chi, dim = row[:5]
        genus = row[5] if len(row) > 5 else None
        points.append(FanPoint(pid, codim, msharp))
        strata[pid] = StratumData(pid, chi, dim, genus)
    return LogModel(KatoFan(tuple(points), tuple(specs)), strata, p, claimed)


def multiple_fibre(p, claimed=True):
    return mk(p, [("E", 1, p, 0, 1, 1)], claimed=claimed)


GENUS0 = mk(3, [("A", 1, 1, 1, 1, 0), ("B", 1, 1, 1, 1, 0), ("x", 2, 1, 1, 0)], [("A", "x"), ("B", "x")], True)


@pytest.mark.parametrize("m, p, expected", [(12, 2, 3), (5, 5, 1), (45, 3, 5), (7, 2, 7), (1, 3, 1)])
def test_m_prime(m, p, expected):
    assert m_prime(m, p) == expected


def test_zeta_canonical_form():
    z = ZetaFunction(((1, -2), (2, 2), (1, -2), (3, 0)))
    assert z.factors == ((2, 2), (1, -4))
    assert str(z) == "(t^2-1)^2 (t^1-1)^-4"
    assert z.as_list() == [[2, 2], [1, -4]]
    assert z.degree == 0
    assert ZetaFunction(((2, 1),)) * ZetaFunction(((2, -1),)) == ZetaFunction()
    assert str(ZetaFunction()) == "1"
    with pytest.raises(ValueError):
        ZetaFunction(((0, 1),))


def test_tame_zeta_examples():
    assert tame_zeta(mk(5, [("E", 1, 1, 0, 1, 1)])) == ZetaFunction()
    for p in (2, 3, 5):
        assert tame_zeta(multiple_fibre(p)) == ZetaFunction()


def test_tame_euler_examples():
    assert tame_euler(GENUS0) == 2
    assert tame_euler(multiple_fibre(3)) == 0


def test_tame_point_examples():
    assert tame_point_exists(mk(5, [("E", 1, 1, 0, 1, 1)]))
    assert not tame_point_exists(multiple_fibre(3))
    p = 3
    rows = [(f"x{i}", 1, m, 0, 1) for i, m in enumerate([p, p * p, 3 * p, 2])]
    assert tame_point_exists(mk(p, rows))


def test_model_invariants():
    with pytest.raises(InvalidModel):
        mk(4, [("E", 1, 1, 0, 1)])
    with pytest.raises(InvalidModel):
        mk(2, [("E", 1, 1, None, 1)])
    fan = KatoFan((FanPoint("eta", 0, 1), FanPoint("E", 1, 1)))
    with pytest.raises(InvalidModel):
        LogModel(fan, {"eta": StratumData("eta", None, 1)}, 2)
    with pytest.raises(InvalidModel):
        StratumData("x", 1, -1)


def test_stratum_violations():
    assert stratum_violations(GENUS0) == []
    bad = mk(2, [("x", 1, 1, 2, 0), ("C", 1, 1, 0, 1, 0)])
    assert [v.points for v in stratum_violations(bad)] == [("x",), ("C",)]


def test_vanishing_examples():
    assert check_prop_vanishing(multiple_fibre(2)) == []
    bad = mk(2, [("E", 1, 2, -1, 1, 0), ("F", 1, 1, 2, 1, 0)], claimed=True)
    out = check_prop_vanishing(bad)
    assert [v.points for v in out] == [("E",), ()]
    assert check_prop_vanishing(GENUS0) == []
    with pytest.raises(NotApplicable):
        check_prop_vanishing(multiple_fibre(2, claimed=False))


def test_restrictions_examples():
    assert check_degeneration_restrictions(multiple_fibre(3)).violations == ()
    zero_dim = mk(2, [("E", 1, 2, 0, 1, 1), ("x", 2, 2, 0, 0)], [("E", "x")], True)
    assert len(check_degeneration_restrictions(zero_dim).violations) == 1
    genus2 = mk(2, [("E", 1, 2, 0, 1, 2)], claimed=True)
    assert len(check_degeneration_restrictions(genus2).violations) == 1
    nogenus = mk(2, [("E", 1, 2, 0, 1)], claimed=True)
    rep = check_degeneration_restrictions(nogenus)
    assert rep.violations == () and len(rep.advisories) == 1
    surface = mk(2, [("S", 1, 2, 0, 2)], claimed=True)
    assert len(check_degeneration_restrictions(surface).advisories) == 1
    with pytest.raises(NotApplicable):
        check_degeneration_restrictions(GENUS0)
    with pytest.raises(NotApplicable):
        check_degeneration_restrictions(multiple_fibre(3, claimed=False))


def test_theorem1_examples():
    assert theorem1_verdict(GENUS0).status == "CONSISTENT"
    silent = theorem1_verdict(multiple_fibre(5))
    assert silent.status == "SILENT" and silent.chi_tame == 0
    fab = mk(2, [("E", 1, 2, 1, 1)], claimed=True)
    assert theorem1_verdict(fab).status == "INCONSISTENT_INPUT"
    with pytest.raises(NotApplicable):
        theorem1_verdict(multiple_fibre(5, claimed=False))


rows = st.lists(st.tuples(st.integers(1, 2), st.integers(1, 40), st.integers(-6, 6)), min_size=1, max_size=7)
primes = st.sampled_from([2, 3, 5, 7])


def build(p, data, claimed=False):
    return mk(p, [(f"x{i}", c, m, chi, 2 - c) for i, (c, m, chi) in enumerate(data)], claimed=claimed)


@given(primes, rows)
def test_degree_identity(p, data):
    model = build(p, data)
    assert -tame_zeta(model).degree == tame_euler(model)


@given(primes, rows)
def test_zeta_ignores_chi_zero_p_locus(p, data):
    model = build(p, data)
    extended = build(p, list(data) + [(1, p * 3, 0)])
    assert tame_zeta(extended) == tame_zeta(model)


@given(primes, rows)
def test_tame_point_matches_classify(p, data):
    model = build(p, data)
    part = classify(model.fan, p)
    assert tame_point_exists(model) == any(pt.id in part.pprime_locus for pt in model.fan.non_generic())


@given(primes, rows)
def test_zeta_with_no_p_divisible_multiplicity(p, data):
    data = [(c, m * p + 1, chi) for c, m, chi in data]
    model = build(p, data)
    plain = ZetaFunction.product((pt.msharp, -model.chi(pt.id)) for pt in model.codim_one())
    assert tame_zeta(model) == plain


@given(primes, st.lists(st.integers(1, 6), min_size=1, max_size=5))
def test_vanishing_and_no_tame_point_force_zero_euler(p, mults):
    model = build(p, [(1, m * p, 0) for m in mults], claimed=True)
    assert not tame_point_exists(model)
    assert check_prop_vanishing(model) == []
    assert tame_euler(model) == 0


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(-5, 5)), max_size=6))
def test_zeta_order_independent(factors):
    assert ZetaFunction(tuple(factors)) == ZetaFunction(tuple(reversed(factors)))

