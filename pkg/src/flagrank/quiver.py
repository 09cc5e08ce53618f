"""Quiver representations: Ringel form, Hom/Ext, subrepresentation and
filtration counts.

Generic counts (``circ`` and ``generic_filtration_count``) are computed in
characteristic zero by torus localization on the variety of flags of
subspaces: for a generic representation the filtrations are the zeros of a
section of a vector bundle whose rank equals the dimension of the flag
variety when ``delta = 0``, so their number is the integral of its top
Chern class.  The explicit enumeration over F_p (``count_subreps``,
``count_filtrations``) is kept as an independent check on representations
whose relevant points are all rational.
"""

from __future__ import annotations

import graphlib
import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import InputError, InstabilityError, PreconditionError, ResourceError

DEFAULT_CAP = 10**7
DEFAULT_PRIME = 65537
SAMPLING_PRIMES = (32003, 65537, 131071)


def enumeration_cap() -> int:
    raw = os.environ.get("FLAGRANK_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"FLAGRANK_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError("FLAGRANK_CAP must be positive")
    return cap


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(str(x) for x in a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex name")
        names = set()
        for name, src, dst in self.arrows:
            if name in names:
                raise InputError(f"duplicate arrow name {name!r}")
            names.add(name)
            for v in (src, dst):
                if v not in self.vertices:
                    raise InputError(f"arrow {name!r} uses undeclared vertex {v!r}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    @property
    def arrow_indices(self) -> list[tuple[str, int, int]]:
        """``(name, ia, ta)`` with vertex positions."""
        return [(name, self.index(s), self.index(t)) for name, s, t in self.arrows]

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """Equioriented A_n: 1 -> 2 -> ... -> n."""
        return cls(tuple(str(i) for i in range(1, n + 1)), tuple((f"a{i}", str(i), str(i + 1)) for i in range(1, n)))

    @classmethod
    def kronecker(cls, arrows: int = 2) -> "Quiver":
        return cls(("1", "2"), tuple((f"a{k}", "1", "2") for k in range(1, arrows + 1)))

    @classmethod
    def star(cls, arms: int = 3) -> "Quiver":
        """Subspace quiver: arms 1..k each pointing into the centre ``0``."""
        return cls(("0",) + tuple(str(i) for i in range(1, arms + 1)), tuple((f"a{i}", str(i), "0") for i in range(1, arms + 1)))

    def describe(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}


class DimVector:
    """Non-negative integer per vertex, stored in vertex order."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int]):
        vals = tuple(int(v) for v in values)
        if any(v < 0 for v in vals):
            raise InputError(f"dimension vector has a negative entry: {vals}")
        self.values = vals

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __eq__(self, other):
        if isinstance(other, DimVector):
            return self.values == other.values
        if isinstance(other, tuple):
            return self.values == other
        return NotImplemented

    def __hash__(self):
        return hash(self.values)

    def _check(self, other: "DimVector"):
        if len(other) != len(self):
            raise InputError("dimension vectors of different lengths")

    def __add__(self, other):
        other = DimVector(other)
        self._check(other)
        return DimVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        other = DimVector(other)
        self._check(other)
        diff = [a - b for a, b in zip(self, other)]
        if any(d < 0 for d in diff):
            raise InputError(f"{self} - {other} has a negative entry")
        return DimVector(diff)

    def __le__(self, other):
        other = DimVector(other)
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def is_zero(self) -> bool:
        return not any(self.values)

    def __repr__(self):
        return "(" + ",".join(map(str, self.values)) + ")"

    __str__ = __repr__


def dimvec(q: Quiver, a) -> DimVector:
    """Coerce a sequence or a ``{vertex: dim}`` mapping to a DimVector of ``q``."""
    if isinstance(a, Mapping):
        unknown = set(map(str, a)) - set(q.vertices)
        if unknown:
            raise InputError(f"unknown vertices {sorted(unknown)}")
        a = [int(a.get(v, 0)) for v in q.vertices]
    v = a if isinstance(a, DimVector) else DimVector(a)
    if len(v) != q.n:
        raise InputError(f"dimension vector {v} does not match the {q.n} vertices of the quiver")
    return v


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[DimVector, ...]

    def __post_init__(self):
        parts = tuple(p if isinstance(p, DimVector) else DimVector(p) for p in self.parts)
        if not parts:
            raise InputError("a decomposition needs at least one part")
        if any(p.is_zero() for p in parts):
            raise InputError("decomposition parts must be nonzero")
        if len({len(p) for p in parts}) != 1:
            raise InputError("decomposition parts have different lengths")
        object.__setattr__(self, "parts", parts)

    @property
    def total(self) -> DimVector:
        out = self.parts[0]
        for p in self.parts[1:]:
            out = out + p
        return out

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return " + ".join(str(p) for p in self.parts)


@dataclass
class QuiverRep:
    """Matrices ``u(a)`` of shape ``dim(ta) x dim(ia)``.

    Over F_p when ``prime`` is set (int64 arrays reduced mod p), otherwise
    over the rationals (nested tuples of Fractions).
    """

    quiver: Quiver
    dims: DimVector
    maps: dict[str, object]
    prime: int | None = DEFAULT_PRIME

    def __post_init__(self):
        self.dims = dimvec(self.quiver, self.dims)
        names = {a[0] for a in self.quiver.arrows}
        if set(self.maps) != names:
            raise InputError(f"representation maps {sorted(self.maps)} do not match arrows {sorted(names)}")
        clean = {}
        for name, i, t in self.quiver.arrow_indices:
            shape = (self.dims[t], self.dims[i])
            if self.prime is None:
                m = tuple(tuple(Fraction(x) for x in row) for row in self.maps[name])
                got = (len(m), len(m[0]) if m else shape[1])
                if m and any(len(row) != got[1] for row in m):
                    raise InputError(f"map {name!r} has ragged rows")
            else:
                m = np.array(self.maps[name], dtype=np.int64) % self.prime
                if m.size == 0:
                    m = m.reshape(shape)
                got = m.shape
            if tuple(got) != shape:
                raise InputError(f"map {name!r} has shape {tuple(got)}, expected {shape}")
            clean[name] = m
        self.maps = clean

    @classmethod
    def random(cls, q: Quiver, dims, rng: random.Random, prime: int = DEFAULT_PRIME) -> "QuiverRep":
        dims = dimvec(q, dims)
        maps = {}
        for name, i, t in q.arrow_indices:
            maps[name] = np.array(
                [[rng.randrange(prime) for _ in range(dims[i])] for _ in range(dims[t])], dtype=np.int64
            ).reshape(dims[t], dims[i])
        return cls(q, dims, maps, prime)

    def matrix(self, name: str):
        return self.maps[name]


@dataclass(frozen=True)
class HomExtReport:
    hom: int
    ext: int
    euler: int

    def __post_init__(self):
        if self.hom - self.ext != self.euler:
            raise AssertionError(f"hom - ext = {self.hom - self.ext} but <a,b> = {self.euler}")

    def to_dict(self) -> dict:
        return {"hom": self.hom, "ext": self.ext, "euler": self.euler}


# ---------------------------------------------------------------- forms


def ringel_form(q: Quiver, a, b) -> int:
    """``<a,b> = sum_s a(s)b(s) - sum_arrows a(ia)b(ta)``."""
    a, b = dimvec(q, a), dimvec(q, b)
    return sum(x * y for x, y in zip(a, b)) - sum(a[i] * b[t] for _, i, t in q.arrow_indices)


def _codimension_sums(q: Quiver, parts: Sequence[DimVector]) -> tuple[int, int]:
    arrows = vertices = 0
    for i, j in itertools.combinations(range(len(parts)), 2):
        bi, bj = parts[i], parts[j]
        arrows += sum(bi[s] * bj[t] for _, s, t in q.arrow_indices)
        vertices += sum(x * y for x, y in zip(bi, bj))
    return arrows, vertices


def delta_of_decomposition(q: Quiver, d: Decomposition) -> int:
    """Expected codimension ``-sum_{i<j} <b_i, b_j>`` of the filtration locus."""
    parts = [dimvec(q, p) for p in d.parts]
    delta = -sum(ringel_form(q, parts[i], parts[j]) for i, j in itertools.combinations(range(len(parts)), 2))
    arrows, vertices = _codimension_sums(q, parts)
    if delta != arrows - vertices:
        raise AssertionError("delta disagrees with the arrow/vertex codimension sums")
    return delta


def is_acyclic(q: Quiver) -> bool:
    graph = {v: set() for v in q.vertices}
    for _, s, t in q.arrows:
        graph[t].add(s)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


# ---------------------------------------------------------------- Hom / Ext


def _rank_exact(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def hom_ext_matrix(u: QuiverRep, v: QuiverRep):
    """Matrix of ``phi -> (v(a) phi(ia) - phi(ta) u(a))_a`` in row-major coordinates."""
    q = u.quiver
    a, b = u.dims, v.dims
    col_off = np.cumsum([0] + [b[s] * a[s] for s in range(q.n)])
    arrows = q.arrow_indices
    row_off = np.cumsum([0] + [b[t] * a[i] for _, i, t in arrows])
    exact = u.prime is None
    if exact:
        mat = np.zeros((int(row_off[-1]), int(col_off[-1])), dtype=object)
        mat[:] = Fraction(0)
    else:
        mat = np.zeros((int(row_off[-1]), int(col_off[-1])), dtype=np.int64)
    for k, (name, i, t) in enumerate(arrows):
        ua = np.array(u.maps[name], dtype=object if exact else np.int64).reshape(a[t], a[i])
        va = np.array(v.maps[name], dtype=object if exact else np.int64).reshape(b[t], b[i])
        r0, r1 = row_off[k], row_off[k + 1]
        # vec(v phi_i) = (v (x) I) vec(phi_i);  vec(phi_t u) = (I (x) u^T) vec(phi_t)
        mat[r0:r1, col_off[i]:col_off[i + 1]] += np.kron(va, np.eye(a[i], dtype=int))
        mat[r0:r1, col_off[t]:col_off[t + 1]] -= np.kron(np.eye(b[t], dtype=int), ua.T)
    if not exact:
        mat %= u.prime
    return mat


def hom_ext(q: Quiver, u: QuiverRep, v: QuiverRep) -> HomExtReport:
    if u.quiver != q or v.quiver != q:
        raise InputError("representations belong to a different quiver")
    if u.prime != v.prime:
        raise InputError("representations are over different fields")
    mat = hom_ext_matrix(u, v)
    rows, cols = mat.shape
    if rows == 0 or cols == 0:
        rank = 0
    elif u.prime is None:
        rank = _rank_exact(mat.tolist())
    else:
        rank = kernels.rank_mod_p(mat, u.prime)
    return HomExtReport(cols - rank, rows - rank, ringel_form(q, u.dims, v.dims))


def generic_hom_ext(q: Quiver, a, b, seed: int, trials: int = 3, prime: int = DEFAULT_PRIME) -> HomExtReport:
    """Minimum of (hom, ext) over random pairs; the generic value by semicontinuity."""
    if trials < 1:
        raise InputError("trials must be positive")
    a, b = dimvec(q, a), dimvec(q, b)
    rng = random.Random(seed)
    best = None
    for _ in range(trials):
        r = hom_ext(q, QuiverRep.random(q, a, rng, prime), QuiverRep.random(q, b, rng, prime))
        if best is None or r.hom < best.hom:
            best = r
    return best


# ---------------------------------------------------------------- enumeration over F_p


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def _rref_matrices(k: int, m: int, p: int):
    """All k x m reduced row echelon matrices of rank k over F_p."""
    for pivots in itertools.combinations(range(m), k):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, m) if c not in pivots]
        base = np.zeros((k, m), dtype=np.int64)
        for r, pc in enumerate(pivots):
            base[r, pc] = 1
        for vals in itertools.product(range(p), repeat=len(free)):
            mat = base.copy()
            for (r, c), x in zip(free, vals):
                mat[r, c] = x
            yield mat


def _row_basis(m: np.ndarray, p: int) -> np.ndarray:
    r, piv = kernels.rref_mod_p(m, p)
    return r[: len(piv)]


class _Budget:
    def __init__(self, cap: int, projected: int):
        self.cap = cap
        self.projected = projected
        self.used = 0

    def charge(self, n: int):
        self.used += n
        if self.used > self.cap:
            raise ResourceError(
                f"enumeration exceeds cap {self.cap} (projected naive size {self.projected})"
            )


def _search_order(q: Quiver, dims, a) -> list[int]:
    """Vertices ordered so each new one is constrained by as many chosen ones as possible."""
    left = [s for s in range(q.n) if a[s] not in (0, dims[s])]
    done = [s for s in range(q.n) if a[s] in (0, dims[s])]
    order = []
    while left:
        def score(s):
            links = sum(1 for _, i, t in q.arrow_indices if (i == s and t in done) or (t == s and i in done))
            return (-links, gaussian_binomial(dims[s], a[s], 2), s)

        s = min(left, key=score)
        left.remove(s)
        done.append(s)
        order.append(s)
    return order


def _fixed_subspaces(dims, a, n) -> dict[int, np.ndarray]:
    out = {}
    for s in range(n):
        if a[s] == 0:
            out[s] = np.zeros((0, dims[s]), dtype=np.int64)
        elif a[s] == dims[s]:
            out[s] = np.eye(dims[s], dtype=np.int64)
    return out


def _bounds(r: QuiverRep, s: int, chosen: dict[int, np.ndarray]):
    """Lower bound L (span of images) and upper bound U (common preimage) for S_s."""
    p = r.prime
    n = r.dims[s]
    images, constraints = [], []
    for name, i, t in r.quiver.arrow_indices:
        u = r.maps[name]
        if t == s and i in chosen and i != s and chosen[i].shape[0]:
            images.append(kernels.matmul_mod(chosen[i], u.T, p))
        if i == s and t in chosen and t != s:
            ann = kernels.nullspace_mod_p(chosen[t], p) if chosen[t].shape[0] else np.eye(r.dims[t], dtype=np.int64)
            if ann.shape[0]:
                constraints.append(kernels.matmul_mod(ann, u, p))
    if images:
        lower = _row_basis(np.concatenate(images, axis=0), p)
    else:
        lower = np.zeros((0, n), dtype=np.int64)
    if constraints:
        cmat = np.concatenate(constraints, axis=0)
        upper = kernels.nullspace_mod_p(cmat, p)
    else:
        cmat = None
        upper = np.eye(n, dtype=np.int64)
    if cmat is not None and lower.shape[0] and kernels.matmul_mod(cmat, lower.T, p).any():
        return None
    return lower, upper


def _complement(lower: np.ndarray, upper: np.ndarray, p: int) -> np.ndarray:
    rows = list(lower)
    rank = len(rows)
    comp = []
    for v in upper:
        trial = np.array(rows + [v], dtype=np.int64)
        if kernels.rank_mod_p(trial, p) > rank:
            rows.append(v)
            comp.append(v)
            rank += 1
    n = upper.shape[1]
    return np.array(comp, dtype=np.int64).reshape(len(comp), n)


def _loops_ok(r: QuiverRep, s: int, sub: np.ndarray) -> bool:
    p = r.prime
    for name, i, t in r.quiver.arrow_indices:
        if i == s == t and sub.shape[0]:
            ann = kernels.nullspace_mod_p(sub, p)
            if ann.shape[0] and kernels.matmul_mod(kernels.matmul_mod(ann, r.maps[name], p), sub.T, p).any():
                return False
    return True


def _subrep_search(r: QuiverRep, a: DimVector, budget: _Budget, emit):
    """Count (``emit=None``) or yield every subrepresentation of dimension ``a``."""
    q, p = r.quiver, r.prime
    order = _search_order(q, r.dims, a)
    base = _fixed_subspaces(r.dims, a, q.n)
    loops = {i for _, i, t in q.arrow_indices if i == t}

    # fixed parts (0 or everything) must already be compatible
    for name, i, t in q.arrow_indices:
        if i in base and t in base and base[i].shape[0]:
            img = kernels.matmul_mod(base[i], r.maps[name].T, p)
            ann = kernels.nullspace_mod_p(base[t], p) if base[t].shape[0] else np.eye(r.dims[t], dtype=np.int64)
            if ann.shape[0] and kernels.matmul_mod(ann, img.T, p).any():
                return 0 if emit is None else iter(())

    def rec(idx: int, chosen: dict[int, np.ndarray]):
        if idx == len(order):
            if emit is None:
                return 1
            emit(dict(chosen))
            return 1
        s = order[idx]
        b = _bounds(r, s, chosen)
        if b is None:
            return 0
        lower, upper = b
        k = a[s] - lower.shape[0]
        m = upper.shape[0] - lower.shape[0]
        if k < 0 or k > m:
            return 0
        if emit is None and idx == len(order) - 1 and s not in loops:
            budget.charge(1)
            return gaussian_binomial(m, k, p)
        budget.charge(gaussian_binomial(m, k, p))
        comp = _complement(lower, upper, p)
        total = 0
        for coeffs in _rref_matrices(k, m, p):
            sub = np.concatenate([lower, kernels.matmul_mod(coeffs, comp, p)], axis=0) if k else lower
            sub = _row_basis(sub, p) if sub.shape[0] else sub
            if s in loops and not _loops_ok(r, s, sub):
                continue
            chosen[s] = sub
            total += rec(idx + 1, chosen)
            del chosen[s]
        return total

    return rec(0, dict(base))


def _projected_size(r: QuiverRep, a: DimVector) -> int:
    return prod(gaussian_binomial(r.dims[s], a[s], r.prime) for s in range(r.quiver.n))


def count_subreps(q: Quiver, r: QuiverRep, a, cap: int | None = None) -> int:
    """Exact number of subrepresentations of ``r`` with dimension vector ``a`` over F_p."""
    if r.quiver != q:
        raise InputError("representation belongs to a different quiver")
    if r.prime is None:
        raise InputError("subrepresentation enumeration needs a prime field")
    a = dimvec(q, a)
    if not a <= r.dims:
        raise InputError(f"{a} is not bounded by dim r = {r.dims}")
    budget = _Budget(enumeration_cap() if cap is None else cap, _projected_size(r, a))
    return _subrep_search(r, a, budget, None)


def quotient_rep(r: QuiverRep, sub: Mapping[int, np.ndarray]) -> QuiverRep:
    """``r / sub`` in the coordinates given by the non-pivot positions of each subspace."""
    q, p = r.quiver, r.prime
    proj, lift = {}, {}
    for s in range(q.n):
        n = r.dims[s]
        basis = sub[s]
        red, piv = kernels.rref_mod_p(basis, p) if basis.shape[0] else (basis, ())
        nonpiv = [c for c in range(n) if c not in piv]
        pm = np.zeros((len(nonpiv), n), dtype=np.int64)
        for k, c in enumerate(nonpiv):
            pm[k, c] = 1
        for i, pc in enumerate(piv):
            # x -> x - x[pc] * row_i kills the pivot coordinates
            for k, c in enumerate(nonpiv):
                pm[k, pc] = (pm[k, pc] - red[i, c]) % p
        lm = np.zeros((n, len(nonpiv)), dtype=np.int64)
        for k, c in enumerate(nonpiv):
            lm[c, k] = 1
        proj[s], lift[s] = pm, lm
    maps = {}
    for name, i, t in q.arrow_indices:
        maps[name] = kernels.matmul_mod(kernels.matmul_mod(proj[t], r.maps[name], p), lift[i], p)
    dims = DimVector(r.dims[s] - sub[s].shape[0] for s in range(q.n))
    return QuiverRep(q, dims, maps, p)


def count_filtrations(q: Quiver, r: QuiverRep, d: Decomposition, cap: int | None = None) -> int:
    """Chains ``0 = R_0 < R_1 < ... < R_s = r`` with ``dim R_k / R_{k-1} = beta_k``."""
    if r.quiver != q:
        raise InputError("representation belongs to a different quiver")
    if r.prime is None:
        raise InputError("filtration enumeration needs a prime field")
    parts = [dimvec(q, b) for b in d.parts]
    if d.total != r.dims:
        raise InputError(f"decomposition total {d.total} != dim r = {r.dims}")
    budget = _Budget(enumeration_cap() if cap is None else cap, _projected_size(r, parts[0]))
    return _count_filtrations(r, parts, budget)


def _count_filtrations(r: QuiverRep, parts: list[DimVector], budget: _Budget) -> int:
    if len(parts) == 1:
        return 1
    if len(parts) == 2:
        return _subrep_search(r, parts[0], budget, None)
    subs: list[dict] = []
    _subrep_search(r, parts[0], budget, subs.append)
    return sum(_count_filtrations(quotient_rep(r, s), parts[1:], budget) for s in subs)


# ---------------------------------------------------------------- localization


def _labelings(n: int, sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Block labels ``lab[x]`` for ordered set partitions of range(n) with given block sizes."""
    out = []
    counts = list(sizes)

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for b, c in enumerate(counts):
            if c:
                counts[b] -= 1
                prefix.append(b)
                rec(prefix)
                prefix.pop()
                counts[b] += 1

    rec([])
    return out


def _eliminate(domains: list[int], factors: list[tuple[tuple[int, ...], dict]], cap: int) -> Fraction:
    """Sum over all assignments of the product of factors (variable elimination)."""
    remaining = set(range(len(domains)))
    while remaining:
        def width(v):
            scope = set()
            for sc, _ in factors:
                if v in sc:
                    scope |= set(sc)
            return (prod(domains[u] for u in scope), v)

        v = min(remaining, key=width)
        involved = [f for f in factors if v in f[0]]
        others = [f for f in factors if v not in f[0]]
        scope = sorted(set(itertools.chain.from_iterable(sc for sc, _ in involved)) - {v})
        size = prod(domains[u] for u in scope) * domains[v]
        if size > cap:
            raise ResourceError(f"localization table of size {size} exceeds cap {cap}")
        table = {}
        for assign in itertools.product(*(range(domains[u]) for u in scope)):
            env = dict(zip(scope, assign))
            total = Fraction(0)
            for k in range(domains[v]):
                env[v] = k
                term = Fraction(1)
                for sc, tab in involved:
                    term *= tab[tuple(env[u] for u in sc)]
                    if not term:
                        break
                total += term
            table[assign] = total
        factors = others + [(tuple(scope), table)]
        remaining.discard(v)
    result = Fraction(1)
    for _, tab in factors:
        result *= tab[()]
    return result


def _localization_sum(q: Quiver, parts: list[DimVector], weights: list[list[int]], cap: int) -> Fraction:
    total = parts[0]
    for b in parts[1:]:
        total = total + b
    labs = [_labelings(total[s], [b[s] for b in parts]) for s in range(q.n)]
    factors = []
    for s in range(q.n):
        w = weights[s]
        tab = {}
        for k, lab in enumerate(labs[s]):
            den = 1
            for x in range(len(lab)):
                for y in range(len(lab)):
                    if lab[x] < lab[y]:
                        den *= w[y] - w[x]
            tab[(k,)] = Fraction(1, den)
        factors.append(((s,), tab))
    for _, i, t in q.arrow_indices:
        wi, wt = weights[i], weights[t]
        if i == t:
            tab = {}
            for k, lab in enumerate(labs[i]):
                num = 1
                for x in range(len(lab)):
                    for y in range(len(lab)):
                        if lab[x] < lab[y]:
                            num *= wt[y] - wi[x]
                tab[(k,)] = Fraction(num)
            factors.append(((i,), tab))
            continue
        tab = {}
        for k1, l1 in enumerate(labs[i]):
            for k2, l2 in enumerate(labs[t]):
                num = 1
                for x in range(len(l1)):
                    for y in range(len(l2)):
                        if l1[x] < l2[y]:
                            num *= wt[y] - wi[x]
                tab[(k1, k2)] = Fraction(num)
        factors.append(((i, t), tab))
    return _eliminate([len(x) for x in labs], factors, cap)


def generic_filtration_count(q: Quiver, d: Decomposition, seed: int = 0, draws: int = 3, cap: int | None = None) -> int:
    """Number of filtrations of type ``d`` of a general representation (char 0).

    Zero when ``delta != 0``: the generic fibre is then empty or positive
    dimensional.  Otherwise each of ``draws`` random torus weightings must
    give the same non-negative integer.
    """
    parts = [dimvec(q, b) for b in d.parts]
    if len(parts) == 1:
        return 1
    if delta_of_decomposition(q, d) != 0:
        return 0
    if draws < 1:
        raise InputError("draws must be positive")
    cap = enumeration_cap() if cap is None else cap
    total = d.total
    rng = random.Random(seed)
    values = []
    for _ in range(draws):
        pool = rng.sample(range(1, 10**6), sum(total))
        weights, pos = [], 0
        for s in range(q.n):
            weights.append(pool[pos : pos + total[s]])
            pos += total[s]
        values.append(_localization_sum(q, parts, weights, cap))
    if len(set(values)) != 1 or values[0].denominator != 1 or values[0] < 0:
        raise InstabilityError(f"localization values disagree across weightings: {[str(v) for v in values]}")
    return int(values[0])


def circ(q: Quiver, a, b, seed: int = 0, method: str = "localization", samples: int = 3) -> int:
    """``a o b``: number of ``a``-dimensional subrepresentations of a general
    representation of dimension ``a + b`` when finite, else 0.

    ``method="enumeration"`` instead counts over F_p for random
    representations at several primes and requires all counts to agree.
    """
    a, b = dimvec(q, a), dimvec(q, b)
    if a.is_zero() or b.is_zero():
        return 1
    if ringel_form(q, a, b) != 0:
        return 0
    if method == "localization":
        return generic_filtration_count(q, Decomposition((a, b)), seed)
    if method == "enumeration":
        rng = random.Random(seed)
        counts = []
        for k in range(max(samples, 3)):
            prime = SAMPLING_PRIMES[k % len(SAMPLING_PRIMES)]
            r = QuiverRep.random(q, a + b, rng, prime)
            counts.append((prime, count_subreps(q, r, a)))
        if len({c for _, c in counts}) != 1:
            raise InstabilityError(f"subrepresentation counts disagree across samples: {counts}")
        return counts[0][1]
    raise InputError(f"unknown method {method!r}")


# ---------------------------------------------------------------- checks


@dataclass
class CheckReport:
    name: str
    values: dict
    hypotheses: dict = field(default_factory=dict)
    passed: bool = False

    def to_dict(self) -> dict:
        return {"check": self.name, "hypotheses": self.hypotheses, "values": self.values, "passed": self.passed}


def _fmt(v: DimVector) -> list[int]:
    return list(v.values)


def theorem5_check(q: Quiver, d: Decomposition, seed: int = 0) -> CheckReport:
    """Filtration count against the forward and backward products of ``o``."""
    parts = [dimvec(q, b) for b in d.parts]
    bad = [(i + 1, j + 1) for i, j in itertools.combinations(range(len(parts)), 2) if ringel_form(q, parts[i], parts[j])]
    if bad:
        raise PreconditionError(f"<b_i, b_j> != 0 for pairs {bad}")
    s = len(parts)
    delta = delta_of_decomposition(q, d)
    count = generic_filtration_count(q, d, seed)
    forward, backward = 1, 1
    fwd_terms, bwd_terms = [], []
    for i in range(s - 1):
        rest = parts[i + 1]
        for b in parts[i + 2 :]:
            rest = rest + b
        c = circ(q, parts[i], rest, seed)
        fwd_terms.append(c)
        forward *= c
    for i in range(s - 1, 0, -1):
        head = parts[0]
        for b in parts[1:i]:
            head = head + b
        c = circ(q, head, parts[i], seed)
        bwd_terms.append(c)
        backward *= c
    return CheckReport(
        "theorem5",
        {
            "decomposition": [_fmt(b) for b in parts],
            "delta": delta,
            "filtrations": count,
            "forward": forward,
            "forward_terms": fwd_terms,
            "backward": backward,
            "backward_terms": bwd_terms,
        },
        {"pairwise_orthogonal": True},
        delta == 0 and count == forward == backward,
    )


def theoremB_check(q: Quiver, a, b, c, seed: int = 0) -> CheckReport:
    """``((a+b) o c) (a o b) = (a o (b+c)) (b o c)``."""
    a, b, c = dimvec(q, a), dimvec(q, b), dimvec(q, c)
    forms = {"<a,b>": ringel_form(q, a, b), "<a,c>": ringel_form(q, a, c), "<b,c>": ringel_form(q, b, c)}
    bad = [k for k, v in forms.items() if v]
    if bad:
        raise PreconditionError(f"hypothesis fails: {', '.join(bad)} nonzero")
    ab_c = circ(q, a + b, c, seed)
    a_b = circ(q, a, b, seed)
    a_bc = circ(q, a, b + c, seed)
    b_c = circ(q, b, c, seed)
    return CheckReport(
        "theoremB",
        {"a": _fmt(a), "b": _fmt(b), "c": _fmt(c), "(a+b)oc": ab_c, "aob": a_b, "ao(b+c)": a_bc, "boc": b_c,
         "lhs": ab_c * a_b, "rhs": a_bc * b_c},
        forms,
        ab_c * a_b == a_bc * b_c,
    )


def corollary3_check(q: Quiver, a, b, c, seed: int = 0) -> CheckReport:
    """``a o (b+c) = (a o b)(a o c)`` when ``b o c = 1`` on an acyclic quiver."""
    a, b, c = dimvec(q, a), dimvec(q, b), dimvec(q, c)
    if not is_acyclic(q):
        raise PreconditionError("quiver has an oriented cycle")
    ab, ac = ringel_form(q, a, b), ringel_form(q, a, c)
    if ab or ac:
        raise PreconditionError(f"hypothesis fails: <a,b> = {ab}, <a,c> = {ac}")
    b_c = circ(q, b, c, seed)
    if b_c != 1:
        raise PreconditionError(f"hypothesis fails: b o c = {b_c}, expected 1")
    a_bc = circ(q, a, b + c, seed)
    a_b = circ(q, a, b, seed)
    a_c = circ(q, a, c, seed)
    return CheckReport(
        "corollary3",
        {"a": _fmt(a), "b": _fmt(b), "c": _fmt(c), "ao(b+c)": a_bc, "aob": a_b, "aoc": a_c, "boc": b_c,
         "lhs": a_bc, "rhs": a_b * a_c},
        {"acyclic": True, "<a,b>": ab, "<a,c>": ac, "<b,c>": ringel_form(q, b, c)},
        a_bc == a_b * a_c,
    )
