import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagrank import kernels
from flagrank.lie import ChevalleyLieAlgebra
from flagrank.roots import enumerate_weyl, parse_type

BACKENDS = sorted(kernels.BACKENDS)
PRIMES = [2, 3, 101, 65537, 2147483629]


def matrices(max_rows=6, max_cols=6):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols), st.integers(0, 2**31)).map(
        lambda t: np.random.default_rng(t[2]).integers(0, 7, size=(t[0], t[1]))
    )


def _rank_fraction(a, p):
    # plain Python elimination over F_p
    m = [list(map(int, row)) for row in a]
    rank = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((r for r in range(rank, len(m)) if m[r][c] % p), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] % p:
                f = m[r][c]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def test_compiled_backend_present():
    assert "python" in kernels.BACKENDS
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=80, deadline=None)
@given(a=matrices(), p=st.sampled_from(PRIMES))
def test_rank_and_nullspace(backend, a, p):
    impl = kernels.BACKENDS[backend]
    r = impl.rank_mod_p(a, p)
    assert r == _rank_fraction(a, p)
    null = impl.nullspace_mod_p(a, p)
    assert null.shape == (a.shape[1] - r, a.shape[1])
    assert not (kernels.matmul_mod(a, null.T, p)).any()
    red, piv = impl.rref_mod_p(a, p)
    assert len(piv) == r


@settings(max_examples=60, deadline=None)
@given(a=matrices(), p=st.sampled_from(PRIMES))
def test_backends_agree(a, p):
    outs = [kernels.BACKENDS[b].rref_mod_p(a, p) for b in BACKENDS]
    for m, piv in outs[1:]:
        assert piv == outs[0][1]
        assert np.array_equal(m, outs[0][0])


@pytest.mark.parametrize("backend", BACKENDS)
def test_inverse(backend):
    impl = kernels.BACKENDS[backend]
    rng = np.random.default_rng(3)
    p = 65537
    for _ in range(20):
        a = rng.integers(0, p, size=(5, 5))
        if impl.rank_mod_p(a, p) < 5:
            continue
        inv = impl.inverse_mod_p(a, p)
        assert np.array_equal(kernels.matmul_mod(a, inv, p), np.eye(5, dtype=np.int64))
    with pytest.raises(ZeroDivisionError):
        impl.inverse_mod_p(np.zeros((2, 2), dtype=np.int64), p)


def test_matmul_mod_no_overflow():
    p = 2147483629
    rng = np.random.default_rng(0)
    a = rng.integers(0, p, size=(9, 11))
    b = rng.integers(0, p, size=(11, 4))
    exact = (a.astype(object) @ b.astype(object)) % p
    assert np.array_equal(kernels.matmul_mod(a, b, p), exact.astype(np.int64))


@pytest.mark.parametrize("tag", ["A1", "A3", "B3", "C3", "D4", "G2"])
def test_chevalley_algebra(tag):
    rs = parse_type(tag)
    alg = ChevalleyLieAlgebra(rs)  # Jacobi checked at construction
    assert alg.dim == 2 * len(rs.positive_roots) + rs.rank
    n2 = 2 * alg.npos
    # [h_i, e_beta] = <beta, alpha_i^vee> e_beta
    for k, beta in enumerate(alg.roots):
        for i in range(rs.rank):
            assert alg.bracket_basis(n2 + i, k) == ({k: rs.pairing(beta, i + 1)} if rs.pairing(beta, i + 1) else {})
    # N_{a,b} = +-(p+1)
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                assert abs(alg.structure_constant(a, b)) == alg._string_p(a, b) + 1


@pytest.mark.parametrize("tag", ["A2", "C2", "G2", "B3"])
def test_weyl_lift_permutes_root_spaces(tag):
    rs = parse_type(tag)
    alg = ChevalleyLieAlgebra(rs)
    for w in enumerate_weyl(rs, (), "full"):
        m = alg.weyl_lift(w)
        minv = alg.weyl_lift(w, inverse=True)
        assert np.array_equal(m @ minv, np.eye(alg.dim, dtype=np.int64))
        for k, beta in enumerate(alg.roots):
            col = m[:, k]
            target = alg.index[w(beta)]
            assert abs(col[target]) == 1 and np.count_nonzero(col) == 1
