"""Chevalley basis of a semisimple Lie algebra and its adjoint matrices.

Basis order: ``e_beta`` for the positive roots, then ``e_{-beta}`` in the
same order, then the simple coroots ``h_1..h_r``.  Structure constants
``N(alpha, beta)`` follow the extraspecial-pair recursion with every
extraspecial sign set to +1; the Jacobi identity is checked at construction.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import cached_property
from math import factorial

import numpy as np

from .roots import RootSystem, WeylElement


class ChevalleyLieAlgebra:
    def __init__(self, rs: RootSystem, check: bool = True):
        self.rs = rs
        self.npos = len(rs.positive_roots)
        self.roots = rs.all_roots
        self.index = {r: k for k, r in enumerate(self.roots)}
        self.dim = 2 * self.npos + rs.rank
        self._n_memo: dict[tuple, Fraction] = {}
        self._extraspecial = self._extraspecial_pairs()
        self.ad = self._build_ad()
        if check:
            self.check_jacobi()

    # structure constants

    def _extraspecial_pairs(self) -> dict:
        rs = self.rs
        out = {}
        for xi in rs.positive_roots:
            if sum(xi) == 1:
                continue
            for a in rs.positive_roots:
                b = tuple(x - y for x, y in zip(xi, a))
                if b in rs.root_index:
                    out[xi] = (a, b)
                    break
        return out

    def _string_p(self, a, b) -> int:
        """Largest ``p`` with ``b - p a`` a root."""
        p = 0
        while self.rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
            p += 1
        return p

    def _norm(self, v) -> Fraction:
        return self.rs.inner(v, v)

    def structure_constant(self, a, b) -> int:
        val = self._n(tuple(a), tuple(b))
        assert val.denominator == 1
        return int(val)

    def _n(self, a, b) -> Fraction:
        key = (a, b)
        hit = self._n_memo.get(key)
        if hit is not None:
            return hit
        val = self._n_compute(a, b)
        self._n_memo[key] = val
        return val

    def _n_compute(self, a, b) -> Fraction:
        rs = self.rs
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s) or not rs.is_root(s):
            return Fraction(0)
        pos_a, pos_b = rs.is_positive(a), rs.is_positive(b)
        neg = lambda v: tuple(-x for x in v)
        if pos_a and pos_b:
            if rs.root_index[a] > rs.root_index[b]:
                return -self._n(b, a)
            a1, b1 = self._extraspecial[s]
            if (a, b) == (a1, b1):
                return Fraction(self._string_p(a, b) + 1)
            terms = Fraction(0)
            d1 = tuple(x - y for x, y in zip(b, a1))
            if rs.is_root(d1):
                terms += self._n(b, neg(a1)) * self._n(a, neg(b1)) / self._norm(d1)
            d2 = tuple(x - y for x, y in zip(a, a1))
            if any(d2) and rs.is_root(d2):
                terms += self._n(neg(a1), a) * self._n(b, neg(b1)) / self._norm(d2)
            return -self._norm(s) * terms / self._n(neg(a1), neg(b1))
        if not pos_a and not pos_b:
            return -self._n(neg(a), neg(b))
        # mixed signs: a + b + c = 0 and N_ab/(c,c) = N_bc/(a,a) = N_ca/(b,b)
        c = neg(s)
        if pos_a:
            if rs.is_positive(c):
                return self._norm(c) / self._norm(b) * self._n(c, a)
            return self._norm(c) / self._norm(a) * self._n(b, c)
        if rs.is_positive(c):
            return self._norm(c) / self._norm(a) * self._n(b, c)
        return self._norm(c) / self._norm(b) * self._n(c, a)

    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        """``[b_i, b_j]`` as a sparse coordinate vector."""
        rs, n2 = self.rs, 2 * self.npos
        if i >= n2 and j >= n2:
            return {}
        if i >= n2:
            beta = self.roots[j]
            c = rs.pairing(beta, i - n2 + 1)
            return {j: c} if c else {}
        if j >= n2:
            return {k: -v for k, v in self.bracket_basis(j, i).items()}
        a, b = self.roots[i], self.roots[j]
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s):
            # [e_a, e_-a] = h_a
            cor = rs.coroot(a) if rs.is_positive(a) else tuple(-x for x in rs.coroot(b))
            return {n2 + k: c for k, c in enumerate(cor) if c}
        if not rs.is_root(s):
            return {}
        return {self.index[s]: self.structure_constant(a, b)}

    def _build_ad(self) -> list[np.ndarray]:
        mats = []
        for i in range(self.dim):
            m = np.zeros((self.dim, self.dim), dtype=np.int64)
            for j in range(self.dim):
                for k, c in self.bracket_basis(i, j).items():
                    m[k, j] = c
            mats.append(m)
        return mats

    def check_jacobi(self) -> None:
        """ad is a homomorphism: ``ad[x, y] = [ad x, ad y]`` on all basis pairs."""
        for i in range(self.dim):
            for j in range(i, self.dim):
                br = self.bracket_basis(i, j)
                if br != {k: -v for k, v in self.bracket_basis(j, i).items()}:
                    raise AssertionError(f"antisymmetry fails on ({i}, {j})")
                lhs = np.zeros((self.dim, self.dim), dtype=np.int64)
                for k, c in br.items():
                    lhs += c * self.ad[k]
                rhs = self.ad[i] @ self.ad[j] - self.ad[j] @ self.ad[i]
                if not np.array_equal(lhs, rhs):
                    raise AssertionError(f"Jacobi identity fails on basis pair ({i}, {j})")

    # group elements in the adjoint representation

    @cached_property
    def _divided_powers(self) -> list[list[np.ndarray]]:
        out = []
        for k in range(2 * self.npos):
            x = self.ad[k]
            powers = [np.eye(self.dim, dtype=np.int64)]
            cur = np.eye(self.dim, dtype=np.int64)
            m = 1
            while True:
                cur = cur @ x
                if not cur.any():
                    break
                if (cur % factorial(m)).any():
                    raise AssertionError("ad(e)^m / m! is not integral")
                powers.append(cur // factorial(m))
                m += 1
            out.append(powers)
        return out

    def root_exp(self, root, t: int, prime: int | None = None) -> np.ndarray:
        """``exp(t ad e_root)``; reduced mod ``prime`` when given."""
        powers = self._divided_powers[self.index[tuple(root)]]
        if prime is None:
            out = np.zeros((self.dim, self.dim), dtype=object)
            for m, pw in enumerate(powers):
                out = out + (t**m) * pw.astype(object)
            return out
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        tm = 1
        for pw in powers:
            out = (out + tm * (pw % prime)) % prime
            tm = tm * t % prime
        return out

    def torus(self, values, prime: int) -> np.ndarray:
        """Adjoint action of the torus element acting on e_beta by prod t_i^{beta_i}."""
        diag = np.ones(self.dim, dtype=np.int64)
        for k, r in enumerate(self.roots):
            v = 1
            for t, c in zip(values, r):
                v = v * pow(int(t), int(c) % (prime - 1), prime) % prime
            diag[k] = v
        return np.diag(diag)

    @cached_property
    def _reflection_lifts(self) -> list[tuple[np.ndarray, np.ndarray]]:
        out = []
        for i in range(self.rs.rank):
            a = self.rs.simple_root(i + 1)
            e = self.root_exp(a, 1)
            f = self.root_exp(tuple(-x for x in a), -1)
            ei = self.root_exp(a, -1)
            fi = self.root_exp(tuple(-x for x in a), 1)
            n = (e @ f @ e).astype(np.int64)
            ninv = (ei @ fi @ ei).astype(np.int64)
            assert np.array_equal(n @ ninv, np.eye(self.dim, dtype=np.int64))
            out.append((n, ninv))
        return out

    def weyl_lift(self, w: WeylElement, inverse: bool = False) -> np.ndarray:
        """Integer matrix of ``Ad(w_dot)`` (or of its inverse)."""
        m = np.eye(self.dim, dtype=np.int64)
        lifts = self._reflection_lifts
        if inverse:
            for i in reversed(w.word):
                m = m @ lifts[i - 1][1]
        else:
            for i in w.word:
                m = m @ lifts[i - 1][0]
        return m


_ALGEBRAS: dict[RootSystem, ChevalleyLieAlgebra] = {}
_LOCK = threading.Lock()


def chevalley_algebra(rs: RootSystem) -> ChevalleyLieAlgebra:
    with _LOCK:
        alg = _ALGEBRAS.get(rs)
        if alg is None:
            alg = _ALGEBRAS[rs] = ChevalleyLieAlgebra(rs)
        return alg
