"""Root systems, Weyl groups and parabolic combinatorics.

Roots live in simple-root coordinates as integer tuples.  The Cartan table
uses ``cartan[i][j] = <alpha_i^vee, alpha_j>`` so that the simple reflection
``s_i`` sends ``alpha_j`` to ``alpha_j - cartan[i][j] * alpha_i``.  Simple
indices are 1-based in every public interface (words, parabolic subsets).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError, ResourceError

DEFAULT_GROUP_CAP = 50_000

Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def _cartan_for(series: str, rank: int) -> list[list[int]]:
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if series == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif series == "B":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n short
        link(n - 2, n - 1, -1, -2)
    elif series == "C":
        for i in range(n - 2):
            link(i, i + 1)
        # alpha_n long
        link(n - 2, n - 1, -2, -1)
    elif series == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif series == "E":
        # Bourbaki labelling: 1-3-4-5-6 chain, 2 attached to 4
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            link(i, j)
    elif series == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif series == "G":
        # alpha_1 short
        link(0, 1, -3, -1)
    return a


_VALID = {
    "A": lambda n: 1 <= n <= 6,
    "B": lambda n: 2 <= n <= 6,
    "C": lambda n: 2 <= n <= 6,
    "D": lambda n: 3 <= n <= 6,
    "E": lambda n: n == 6,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: 36,
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def _closure(cartan: Sequence[Sequence[int]]) -> list[Root]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * beta[j] for j in range(n))
                image = list(beta)
                image[i] -= pairing
                image = tuple(image)
                if all(c >= 0 for c in image) and any(image) and image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))


@dataclass(frozen=True)
class RootSystem:
    """Cartan data plus the ordered list of positive roots.

    ``ambient`` maps the simple indices of this system to simple indices of
    the system it was cut out of (identity for a top-level system).
    """

    series: str
    rank: int
    cartan: Matrix
    positive_roots: tuple[Root, ...] = field(compare=False)
    ambient: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def from_cartan(cls, cartan, series="", name="", ambient=None) -> "RootSystem":
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(cartan)
        for i, row in enumerate(cartan):
            if len(row) != n or row[i] != 2:
                raise InputError("cartan matrix must be square with 2 on the diagonal")
            if any(row[j] > 0 for j in range(n) if j != i):
                raise InputError("off-diagonal cartan entries must be non-positive")
        roots = tuple(_closure(cartan))
        amb = tuple(ambient) if ambient is not None else tuple(range(1, n + 1))
        return cls(series, n, cartan, roots, amb, name or f"{series}{n}")

    @property
    def simple_indices(self) -> tuple[int, ...]:
        return tuple(range(1, self.rank + 1))

    @cached_property
    def root_index(self) -> dict[Root, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def all_roots(self) -> tuple[Root, ...]:
        neg = tuple(tuple(-c for c in r) for r in self.positive_roots)
        return self.positive_roots + neg

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if v in self.root_index:
            return True
        return tuple(-c for c in v) in self.root_index

    @staticmethod
    def is_positive(v: Sequence[int]) -> bool:
        return any(v) and all(c >= 0 for c in v)

    def simple_root(self, i: int) -> Root:
        return tuple(int(j == i - 1) for j in range(self.rank))

    def height(self, v: Sequence[int]) -> int:
        return sum(v)

    @cached_property
    def max_height(self) -> int:
        return max((sum(r) for r in self.positive_roots), default=0)

    @cached_property
    def symmetrizer(self) -> tuple[Fraction, ...]:
        """Squared lengths ``(alpha_i, alpha_i)``; shortest root of each component has length 2."""
        n = self.rank
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            comp = [start]
            d[start] = Fraction(1)
            k = 0
            while k < len(comp):
                i = comp[k]
                k += 1
                for j in range(n):
                    if j != i and self.cartan[i][j] != 0 and d[j] is None:
                        # d_i a_ij = d_j a_ji
                        d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        comp.append(j)
            low = min(d[i] for i in comp)
            for i in comp:
                d[i] = d[i] / low * 2
        return tuple(d)

    def inner(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        d = self.symmetrizer
        total = Fraction(0)
        for i in range(self.rank):
            if u[i] == 0:
                continue
            for j in range(self.rank):
                if v[j]:
                    total += u[i] * v[j] * d[i] * self.cartan[i][j] / 2
        return total

    def pairing(self, v: Sequence[int], i: int) -> int:
        """``<v, alpha_i^vee>`` for 1-based ``i``."""
        row = self.cartan[i - 1]
        return sum(row[j] * v[j] for j in range(self.rank))

    def coroot(self, beta: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of ``beta^vee`` in the simple coroots."""
        nb = self.inner(beta, beta)
        d = self.symmetrizer
        out = []
        for i in range(self.rank):
            c = beta[i] * d[i] / nb
            if c.denominator != 1:
                raise AssertionError("non-integral coroot")
            out.append(int(c))
        return tuple(out)

    def reflect(self, i: int, v: Sequence[int]) -> tuple:
        out = list(v)
        out[i - 1] -= self.pairing(v, i)
        return tuple(out)

    @cached_property
    def simple_matrices(self) -> tuple[Matrix, ...]:
        mats = []
        n = self.rank
        for i in range(n):
            cols = []
            for j in range(n):
                col = [int(k == j) for k in range(n)]
                col[i] -= self.cartan[i][j]
                cols.append(col)
            mats.append(tuple(tuple(cols[j][k] for j in range(n)) for k in range(n)))
        return tuple(mats)

    @cached_property
    def identity(self) -> "WeylElement":
        n = self.rank
        return WeylElement(self, (), tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tag(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"RootSystem({self.name!r})"


def build_root_system(series: str, rank: int) -> RootSystem:
    """Root system of simple type ``series``/``rank`` (rank at most 6)."""
    series = str(series).upper()
    if series not in _VALID or not isinstance(rank, int) or not _VALID[series](rank):
        raise InputError(f"unsupported root system {series}{rank}")
    rs = RootSystem.from_cartan(_cartan_for(series, rank), series=series)
    assert len(rs.positive_roots) == _POSITIVE_COUNT[series](rank)
    return rs


def parse_type(tag: str) -> RootSystem:
    """Parse a tag such as ``"A2"`` or ``"C3"``."""
    tag = tag.strip()
    if len(tag) < 2 or not tag[1:].isdigit():
        raise InputError(f"bad root system tag {tag!r}")
    return build_root_system(tag[0], int(tag[1:]))


def parse_parabolic(rs: RootSystem, text: str | Iterable[int] | None) -> frozenset[int]:
    """Parabolic subset from ``"1,3"``; empty string or None is the Borel."""
    if text is None:
        return frozenset()
    if isinstance(text, str):
        items = [t for t in text.replace(" ", ",").split(",") if t.strip()]
        try:
            idx = [int(t) for t in items]
        except ValueError:
            raise InputError(f"bad parabolic subset {text!r}") from None
    else:
        idx = list(text)
    bad = [i for i in idx if not 1 <= i <= rs.rank]
    if bad:
        raise InputError(f"parabolic indices {bad} outside 1..{rs.rank}")
    return frozenset(idx)


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _apply(m: Matrix, v: Sequence[int]) -> tuple:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: canonical reduced word and its matrix.

    The word is the lexicographically smallest reduced word; ``matrix`` is the
    action on simple-root coordinates (column ``j`` is ``w(alpha_j)``).
    """

    rs: RootSystem
    word: tuple[int, ...]
    matrix: Matrix

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    @property
    def length(self) -> int:
        return len(self.word)

    def __len__(self):
        return len(self.word)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return weyl_element(self.rs, self.word + other.word)

    def inverse(self) -> "WeylElement":
        return weyl_element(self.rs, tuple(reversed(self.word)))

    def __call__(self, v):
        return act(self, v)

    def is_identity(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        return format_word(self.word)

    def __repr__(self) -> str:
        return f"WeylElement({self.rs.name}, {format_word(self.word)!r})"


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(i) for i in word) if word else "e"


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(t) for t in text.split())
    except ValueError:
        raise InputError(f"bad Weyl word {text!r}") from None


def weyl_element(rs: RootSystem, word: Iterable[int] | str) -> WeylElement:
    """Element represented by ``word`` (any word; it is reduced here)."""
    if isinstance(word, str):
        word = parse_word(word)
    word = tuple(word)
    for i in word:
        if not 1 <= i <= rs.rank:
            raise InputError(f"reflection index {i} outside 1..{rs.rank}")
    mats = rs.simple_matrices
    m = rs.identity.matrix
    minv = m
    for i in word:
        m = _matmul(m, mats[i - 1])
    for i in reversed(word):
        minv = _matmul(minv, mats[i - 1])
    # lexicographically smallest reduced word: peel the smallest left descent
    out = []
    cur, curinv = m, minv
    n = rs.rank
    while True:
        for i in range(n):
            if any(curinv[k][i] < 0 for k in range(n)):
                break
        else:
            break
        out.append(i + 1)
        cur = _matmul(mats[i], cur)
        curinv = _matmul(curinv, mats[i])
    return WeylElement(rs, tuple(out), m)


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    return len(weyl_element(rs, word).word) == len(word)


def act(w: WeylElement, v: Sequence[int]) -> tuple:
    """Apply ``w`` to a weight given in simple-root coordinates."""
    if len(v) != w.rs.rank:
        raise InputError(f"weight {tuple(v)} does not have {w.rs.rank} coordinates")
    return _apply(w.matrix, v)


def inversion_set(w: WeylElement) -> frozenset[Root]:
    """``{beta > 0 : w(beta) < 0}``."""
    return frozenset(
        beta for beta in w.rs.positive_roots if not RootSystem.is_positive(_apply(w.matrix, beta))
    )


def levi_roots(rs: RootSystem, p: Iterable[int]) -> tuple[Root, ...]:
    """Positive roots supported on the simple roots in ``p``."""
    p = set(p)
    return tuple(r for r in rs.positive_roots if all(c == 0 or (i + 1) in p for i, c in enumerate(r)))


def flag_dimension(rs: RootSystem, p: Iterable[int]) -> int:
    """``dim G/P = |R+| - |R_L+|``."""
    return len(rs.positive_roots) - len(levi_roots(rs, p))


def weyl_group_order(rs: RootSystem) -> int:
    """``|W|`` as the product of ``e + 1`` over the exponents.

    The exponents are read off the root heights: the number of exponents
    ``>= k`` equals the number of positive roots of height ``k``.
    """
    counts = [0] * (rs.max_height + 1)
    for r in rs.positive_roots:
        counts[rs.height(r)] += 1
    order = 1
    for k in range(1, len(counts)):
        above = counts[k + 1] if k + 1 < len(counts) else 0
        order *= (k + 1) ** (counts[k] - above)
    return order


def is_minimal(w: WeylElement, p: Iterable[int]) -> bool:
    """True when ``w(alpha_i) > 0`` for every ``i`` in ``p``."""
    return all(all(w.matrix[k][i - 1] >= 0 for k in range(w.rs.rank)) for i in p)


def enumerate_weyl(
    rs: RootSystem,
    p: Iterable[int] = (),
    mode: str = "full",
    cap: int = DEFAULT_GROUP_CAP,
) -> list[WeylElement]:
    """Elements of W, W_P or W^P sorted by (length, word)."""
    p = frozenset(p)
    if mode not in ("full", "parabolic", "minimal_coset_reps"):
        raise InputError(f"unknown enumeration mode {mode!r}")
    gens = sorted(p) if mode == "parabolic" else list(rs.simple_indices)
    mats = rs.simple_matrices
    layer = [rs.identity]
    seen = {rs.identity.matrix}
    out = [rs.identity]
    while layer:
        nxt = []
        for u in layer:
            for i in gens:
                # right multiplication by s_i lengthens u iff u(alpha_i) > 0
                if any(u.matrix[k][i - 1] < 0 for k in range(rs.rank)):
                    continue
                m = _matmul(u.matrix, mats[i - 1])
                if m in seen:
                    continue
                seen.add(m)
                if len(seen) > cap:
                    raise ResourceError(f"Weyl group of {rs.name} exceeds cap {cap}")
                nxt.append(WeylElement(rs, u.word + (i,), m))
        nxt.sort(key=lambda x: x.word)
        out.extend(nxt)
        layer = nxt
    if mode == "minimal_coset_reps":
        out = [w for w in out if is_minimal(w, p)]
    return out


def longest_element(rs: RootSystem, p: Iterable[int] | None = None) -> WeylElement:
    """Longest element of W (``p is None``) or of W_P."""
    gens = list(rs.simple_indices) if p is None else sorted(p)
    w = rs.identity
    mats = rs.simple_matrices
    # keep multiplying by any s_i that lengthens w
    while True:
        for i in gens:
            if all(w.matrix[k][i - 1] >= 0 for k in range(rs.rank)):
                w = WeylElement(rs, w.word + (i,), _matmul(w.matrix, mats[i - 1]))
                break
        else:
            break
    return weyl_element(rs, w.word)


def coset_factorize(w: WeylElement, p: Iterable[int]) -> tuple[WeylElement, WeylElement]:
    """Split ``w = w_min * w_par`` with ``w_min`` in W^P and ``w_par`` in W_P."""
    rs = w.rs
    p = frozenset(p)
    u = w
    collected: list[int] = []
    while True:
        desc = [i for i in sorted(p) if any(u.matrix[k][i - 1] < 0 for k in range(rs.rank))]
        if not desc:
            break
        i = desc[0]
        u = WeylElement(rs, (), _matmul(u.matrix, rs.simple_matrices[i - 1]))
        collected.append(i)
    w_min = weyl_element(rs, _word_of_matrix(rs, u.matrix))
    w_par = weyl_element(rs, tuple(reversed(collected)))
    if w_min.length + w_par.length != w.length:
        raise AssertionError("coset factorization is not length additive")
    lroots = levi_roots(rs, p)
    inv_par = {g for g in lroots if not RootSystem.is_positive(_apply(w_par.matrix, g))}
    pulled = {g for g in lroots if not RootSystem.is_positive(_apply(w.matrix, g))}
    if inv_par != pulled:
        raise AssertionError("parabolic part does not match w^-1 B w on the Levi")
    return w_min, w_par


def _word_of_matrix(rs: RootSystem, m: Matrix) -> tuple[int, ...]:
    # reduced word built from right descents
    word: list[int] = []
    mats = rs.simple_matrices
    while True:
        for i in range(rs.rank):
            if any(m[k][i] < 0 for k in range(rs.rank)):
                break
        else:
            break
        word.append(i + 1)
        m = _matmul(m, mats[i])
    return tuple(reversed(word))


def minimal_representative(w: WeylElement, p: Iterable[int]) -> WeylElement:
    return coset_factorize(w, p)[0]


def dual_label(w: WeylElement, p: Iterable[int]) -> WeylElement:
    """``w0 * w * w0_P``; an involution on W^P reversing the grading."""
    p = frozenset(p)
    if not is_minimal(w, p):
        raise InputError(f"{w} is not a minimal coset representative for {sorted(p)}")
    rs = w.rs
    out = longest_element(rs) * w * longest_element(rs, p)
    assert is_minimal(out, p)
    assert out.length == flag_dimension(rs, p) - w.length
    return out


def levi_subsystem(rs: RootSystem, p: Iterable[int]) -> RootSystem:
    """Root subsystem generated by the simple roots in ``p`` (possibly reducible)."""
    idx = sorted(set(p))
    sub = [[rs.cartan[i - 1][j - 1] for j in idx] for i in idx]
    name = f"{rs.name}[{','.join(map(str, idx))}]"
    ambient = tuple(rs.ambient[i - 1] for i in idx) if rs.ambient else tuple(idx)
    lv = RootSystem.from_cartan(sub, series="", name=name, ambient=ambient)
    object.__setattr__(lv, "_parent_indices", tuple(idx))
    return lv


def parent_indices(levi: RootSystem) -> tuple[int, ...]:
    """Indices in the immediate parent system of the Levi's simple roots."""
    return getattr(levi, "_parent_indices", tuple(range(1, levi.rank + 1)))


def to_levi(w: WeylElement, levi: RootSystem) -> WeylElement:
    """Re-express an element of W_P in the Levi subsystem's own indices."""
    back = {a: k + 1 for k, a in enumerate(parent_indices(levi))}
    try:
        word = tuple(back[i] for i in w.word)
    except KeyError:
        raise InputError(f"{w} does not lie in the Levi Weyl group") from None
    return weyl_element(levi, word)


def embed_root(levi: RootSystem, root: Sequence[int], parent_rank: int) -> tuple:
    out = [0] * parent_rank
    for k, a in enumerate(parent_indices(levi)):
        out[a - 1] = root[k]
    return tuple(out)
