import itertools

import numpy as np
import pytest

from flagrank import bk
from flagrank.errors import InputError, PreconditionError
from flagrank.lie import chevalley_algebra
from flagrank.roots import levi_roots, longest_element, parse_type, weyl_element
from flagrank.schubert import variety_point_coefficient


def W(rs, *words):
    return [weyl_element(rs, w) for w in words]


A2 = parse_type("A2")


def test_chi_examples():
    assert bk.chi_character(A2.identity, {1}) == (0, 0)
    assert bk.chi_character(weyl_element(A2, "1")) == (1, 0)
    assert bk.chi_character(longest_element(A2)) == (2, 2)


def test_exact_fullflag_examples():
    assert bk.is_levi_movable_exact_fullflag(W(A2, "1 2 1", "1 2", "1"), A2)
    assert not bk.is_levi_movable_exact_fullflag(W(A2, "1 2", "1 2", "2 1"), A2)
    for tag in ("B3", "G2"):
        rs = parse_type(tag)
        w0 = longest_element(rs)
        assert bk.is_levi_movable_exact_fullflag([w0, w0, rs.identity], rs)
    with pytest.raises(InputError, match="codimension"):
        bk.is_levi_movable_exact_fullflag(W(A2, "1", "1", "1"), A2)


def test_randomized_examples():
    assert bk.is_levi_movable_randomized(W(A2, "1 2 1", "1 2", "1"), A2, (), seed=5)
    assert not bk.is_levi_movable_randomized(W(A2, "1 2", "1 2", "2 1"), A2, (), seed=5)
    assert bk.is_levi_movable_randomized([A2.identity], A2, {1, 2}, seed=0)


def test_randomized_rejects_small_prime():
    with pytest.raises(InputError, match="prime"):
        bk.is_levi_movable_randomized(W(A2, "1 2 1", "1 2", "1"), A2, (), seed=0, prime=5)
    with pytest.raises(InputError):
        bk.is_levi_movable_randomized(W(A2, "1 2 1", "1 2", "1"), A2, (), seed=0, prime=65536)


def test_randomized_is_seed_deterministic():
    c3 = parse_type("C3")
    tup = next(t for t in bk.admissible_tuples(c3, {1}) if variety_point_coefficient(t, {1}))
    runs = {bk._movability_witness(tup, c3, frozenset({1}), 11, 20, 65537) for _ in range(3)}
    assert len(runs) == 1


def test_report_examples():
    rep = bk.bk_multi_constant(W(A2, "1 2 1", "1 2", "1"), A2)
    assert (rep.cup_constant, rep.levi_movable, rep.bk_constant, rep.method) == (1, True, 1, "exact")
    rep = bk.bk_multi_constant(W(A2, "1 2", "1 2", "2 1"), A2)
    assert (rep.cup_constant, rep.levi_movable, rep.bk_constant) == (1, False, 0)
    rep = bk.bk_multi_constant(W(A2, "1 2", "2", "2"), A2, {1}, seed=1)
    assert rep.method == "randomized" and rep.prime == 65537 and rep.trials >= 1


def test_report_invariant_enforced():
    with pytest.raises(AssertionError):
        bk.BKReport(2, True, 0, "exact")


def test_levi_sample_preserves_levi():
    rs = parse_type("B3")
    p = frozenset({1, 2})
    alg = chevalley_algebra(rs)
    import random

    m = bk._levi_sample(alg, levi_roots(rs, p), random.Random(0), 65537)
    lset = set(levi_roots(rs, p))
    lcols = [k for k, r in enumerate(alg.roots) if tuple(abs(x) for x in r) in lset or tuple(-x for x in r) in lset]
    lcols += list(range(2 * alg.npos, alg.dim))
    outside = [k for k in range(alg.dim) if k not in lcols]
    assert not m[np.ix_(outside, lcols)].any()
    from flagrank import kernels

    assert kernels.rank_mod_p(m, 65537) == alg.dim


@pytest.mark.parametrize("tag", ["A2", "C2", "G2"])
def test_exact_and_randomized_agree(tag):
    rs = parse_type(tag)
    for tup in bk.admissible_tuples(rs, ()):
        assert bk.is_levi_movable_exact_fullflag(tup, rs) == bk.is_levi_movable_randomized(tup, rs, (), seed=2)


@pytest.mark.parametrize("tag,p", [("A3", {1, 3}), ("C3", {1, 2}), ("B3", {2, 3}), ("A4", {1, 2, 4})])
def test_cominuscule_movability_is_nonvanishing(tag, p):
    # on cominuscule G/P the deformed product is the cup product
    rs = parse_type(tag)
    for tup in bk.admissible_tuples(rs, p):
        c = variety_point_coefficient(tup, p)
        assert bk.is_levi_movable_randomized(tup, rs, p, seed=0) == (c != 0)


def test_character_calibration_and_gate():
    bk._CALIBRATION["calibrated"] = False
    with pytest.raises(PreconditionError):
        bk.bk_multi_constant(W(A2, "1 2 1", "1 2", "1"), A2, method="character")
    summary = bk.calibrate_character_criterion(types=("A2", "C2", "G2"))
    assert summary["calibrated"] and not summary["disagreements"]
    rep = bk.bk_multi_constant(W(A2, "1 2 1", "1 2", "1"), A2, method="character")
    assert rep.bk_constant == 1


def test_levi_representative_examples():
    w = weyl_element(A2, "2 1")
    assert str(bk.levi_representative(w, {1})) == "1"
    assert bk.levi_representative(weyl_element(A2, "2"), {1}).is_identity()
    s1 = weyl_element(A2, "1")
    assert str(bk.levi_representative(s1, {1})) == "1"


def test_theorem4_examples():
    rep = bk.theorem4_check(A2, (), {1}, W(A2, "1 2 1", "1 2", "1"))
    assert (rep.c_GQ, rep.c_GP, rep.c_L) == (1, 1, 1) and rep.passed
    # Q = P: the Levi factor is a point
    rep = bk.theorem4_check(A2, {1}, {1}, W(A2, "1 2", "2", "2"), seed=3)
    assert rep.c_L == 1 and rep.c_GQ == rep.c_GP and rep.passed


def test_theorem4_errors():
    with pytest.raises(InputError, match="not contained"):
        bk.theorem4_check(A2, {1}, {2}, W(A2, "1 2", "2", "2"))
    with pytest.raises(PreconditionError, match="not Levi-movable"):
        bk.theorem4_check(A2, (), {1}, W(A2, "1 2", "1 2", "2 1"))


def test_admissible_tuple_counts():
    assert sum(1 for _ in bk.admissible_tuples(A2, ())) == 35
    for tup in bk.admissible_tuples(parse_type("C2"), {2}):
        assert bk.codimension_sum(tup, {2}) == 3
