"""Levi-movability and the Belkale-Kumar deformed product.

Tuples are given by the Schubert-variety labels ``w_i`` (``dim X(w) = l(w)``).
Levi-movability is tested through the linear map
``g/p -> (+)_i g/(p + Ad(l_i w_i^-1) b)``: the tuple is Levi-movable exactly
when that map is invertible for generic ``l_i`` in the Levi subgroup.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import InputError, PreconditionError
from .lie import chevalley_algebra
from .roots import (
    RootSystem,
    WeylElement,
    coset_factorize,
    enumerate_weyl,
    flag_dimension,
    inversion_set,
    levi_roots,
    levi_subsystem,
    parent_indices,
    to_levi,
)
from .schubert import variety_point_coefficient

DEFAULT_PRIME = 65537
DEFAULT_TRIALS = 20

CONVENTIONS = {
    "inversion_set": "Inv(w) = {beta > 0 : w(beta) < 0}",
    "labels": "tuples use Schubert-variety labels w with dim X(w) = l(w); sigma_u has degree l(u) and [X(w)] = sigma_{w0 w w0_P}",
    "chi": "chi_w = sum of beta in Inv(w) outside the Levi roots",
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _minimal(words: Sequence[WeylElement], p: frozenset[int]) -> list[WeylElement]:
    return [coset_factorize(w, p)[0] for w in words]


def codimension_sum(words: Sequence[WeylElement], p: Iterable[int]) -> int:
    p = frozenset(p)
    if not words:
        return 0
    dim = flag_dimension(words[0].rs, p)
    return sum(dim - w.length for w in _minimal(words, p))


def _check_codim(words, rs, p) -> None:
    total = codimension_sum(words, p)
    dim = flag_dimension(rs, p)
    if total != dim:
        raise InputError(f"codimension mismatch: sum of codimensions {total} != dim G/P {dim}")


def chi_character(w: WeylElement, p: Iterable[int] = ()) -> tuple[int, ...]:
    """Sum of the inversions of ``w`` that are not Levi roots."""
    lr = set(levi_roots(w.rs, p))
    out = [0] * w.rs.rank
    for beta in inversion_set(w):
        if beta not in lr:
            for k, c in enumerate(beta):
                out[k] += c
    return tuple(out)


def is_levi_movable_exact_fullflag(words: Sequence[WeylElement], rs: RootSystem) -> bool:
    """Full-flag test: every positive root is an inversion of exactly s-1 of the w_i."""
    s = len(words)
    n = len(rs.positive_roots)
    total = sum(w.length for w in words)
    if total != (s - 1) * n:
        raise InputError(
            f"codimension mismatch: sum of lengths {total} != (s-1)|R+| = {(s - 1) * n}"
        )
    counts = dict.fromkeys(rs.positive_roots, 0)
    for w in words:
        for beta in inversion_set(w):
            counts[beta] += 1
    return all(c == s - 1 for c in counts.values())


def _levi_sample(alg, lroots, rng: random.Random, prime: int) -> np.ndarray:
    """Ad(l) for l = t * prod U_alpha * prod U_-alpha over the Levi roots."""
    m = alg.torus([rng.randrange(1, prime) for _ in range(alg.rs.rank)], prime)
    for sign in (1, -1):
        for a in lroots:
            root = tuple(sign * c for c in a)
            m = kernels.matmul_mod(m, alg.root_exp(root, rng.randrange(prime), prime), prime)
    return m


def _movability_witness(words, rs, p, seed, trials, prime) -> tuple[bool, int]:
    p = frozenset(p)
    if trials < 1:
        raise InputError("trials must be positive")
    if not _is_prime(prime) or prime <= 2 * rs.max_height + 1:
        raise InputError(f"prime {prime} must be a prime larger than {2 * rs.max_height + 1}")
    _check_codim(words, rs, p)
    dim = flag_dimension(rs, p)
    if dim == 0:
        return True, 0
    alg = chevalley_algebra(rs)
    npos = alg.npos
    lroots = levi_roots(rs, p)
    lset = set(lroots)
    b_cols = list(range(npos)) + list(range(2 * npos, alg.dim))
    p_cols = b_cols + [npos + k for k, r in enumerate(rs.positive_roots) if r in lset]
    comp = [npos + k for k, r in enumerate(rs.positive_roots) if r not in lset]
    p_basis = np.zeros((alg.dim, len(p_cols)), dtype=np.int64)
    for j, c in enumerate(p_cols):
        p_basis[c, j] = 1
    lifted = [alg.weyl_lift(w, inverse=True)[:, b_cols] % prime for w in _minimal(words, p)]
    rng = random.Random(seed)
    for trial in range(1, trials + 1):
        blocks = []
        for borel in lifted:
            lmat = _levi_sample(alg, lroots, rng, prime)
            span = np.concatenate([kernels.matmul_mod(lmat, borel, prime), p_basis], axis=1)
            ann = kernels.nullspace_mod_p(span.T, prime)
            blocks.append(ann[:, comp])
        stacked = np.concatenate(blocks, axis=0)
        assert stacked.shape == (dim, dim)
        if kernels.rank_mod_p(stacked, prime) == dim:
            return True, trial
    return False, trials


def is_levi_movable_randomized(
    words: Sequence[WeylElement],
    rs: RootSystem,
    p: Iterable[int],
    seed: int,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
) -> bool:
    """Monte Carlo Levi-movability test over F_prime (true answers are certificates)."""
    return _movability_witness(words, rs, p, seed, trials, prime)[0]


def character_criterion(words: Sequence[WeylElement], rs: RootSystem, p: Iterable[int]) -> bool:
    """Nonzero cup constant and ``sum chi_{w_i} = (s-1) 2 rho`` off the Levi."""
    p = frozenset(p)
    _check_codim(words, rs, p)
    if variety_point_coefficient(words, p) == 0:
        return False
    s = len(words)
    mins = _minimal(words, p)
    total = [0] * rs.rank
    for w in mins:
        for k, c in enumerate(chi_character(w, p)):
            total[k] += c
    two_rho = [sum(r[k] for r in rs.positive_roots) for k in range(rs.rank)]
    return all(total[j - 1] == (s - 1) * two_rho[j - 1] for j in rs.simple_indices if j not in p)


@dataclass
class BKReport:
    cup_constant: int
    levi_movable: bool
    bk_constant: int
    method: str
    trials: int | None = None
    prime: int | None = None
    seed: int | None = None
    character_movable: bool | None = None

    def __post_init__(self):
        expected = self.cup_constant if self.levi_movable else 0
        if self.bk_constant != expected:
            raise AssertionError("bk constant must equal the cup constant exactly when movable")

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


_CALIBRATION = {"calibrated": False, "report": None}
CALIBRATION_TYPES = ("A2", "C2", "A3")


def calibrate_character_criterion(types: Sequence[str] = CALIBRATION_TYPES, seed: int = 0) -> dict:
    """Compare the character criterion with the randomized test on every
    admissible triple of every parabolic of the given types.

    The criterion is marked calibrated only when there are no disagreements.
    """
    import itertools

    from .roots import parse_type

    summary = {"types": list(types), "seed": seed, "tuples": 0, "disagreements": []}
    for tag in types:
        rs = parse_type(tag)
        for r in range(rs.rank + 1):
            for p in itertools.combinations(rs.simple_indices, r):
                for tup in admissible_tuples(rs, p):
                    summary["tuples"] += 1
                    ref = is_levi_movable_randomized(tup, rs, p, seed) and variety_point_coefficient(tup, p) != 0
                    if character_criterion(tup, rs, p) != ref:
                        summary["disagreements"].append(
                            {"type": tag, "p": list(p), "words": [str(w) for w in tup]}
                        )
    summary["calibrated"] = not summary["disagreements"]
    _CALIBRATION["calibrated"] = summary["calibrated"]
    _CALIBRATION["report"] = summary
    return summary


def character_calibrated() -> bool:
    return _CALIBRATION["calibrated"]


def bk_multi_constant(
    words: Sequence[WeylElement],
    rs: RootSystem,
    p: Iterable[int] = (),
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
    method: str = "auto",
    character: bool = False,
) -> BKReport:
    """Point coefficient of the deformed product for the tuple ``X(w_i)``.

    ``method="auto"`` uses the exact test on G/B and the randomized test
    otherwise.  ``method="character"`` needs a successful calibration first;
    ``character=True`` only cross-runs it and records the answer.
    """
    p = frozenset(p)
    _check_codim(words, rs, p)
    cup = variety_point_coefficient(words, p)
    if method == "auto":
        method = "exact" if not p else "randomized"
    if method == "exact":
        if p:
            raise InputError("the exact test only applies to the full flag variety")
        movable = is_levi_movable_exact_fullflag(list(words), rs)
        report = BKReport(cup, movable, cup if movable else 0, "exact")
    elif method == "randomized":
        movable, used = _movability_witness(words, rs, p, seed, trials, prime)
        report = BKReport(cup, movable, cup if movable else 0, "randomized", used, prime, seed)
    elif method == "character":
        if not character_calibrated():
            raise PreconditionError("character criterion is not calibrated")
        movable = character_criterion(words, rs, p)
        report = BKReport(cup, movable, cup if movable else 0, "character")
    else:
        raise InputError(f"unknown method {method!r}")
    if character:
        report.character_movable = character_criterion(words, rs, p)
    return report


@lru_cache(maxsize=None)
def _levi(rs: RootSystem, p: frozenset[int]) -> RootSystem:
    return levi_subsystem(rs, p)


def levi_representative(w: WeylElement, p: Iterable[int]) -> WeylElement:
    """The unique ``w_bar`` in W_P with ``w_bar^-1 (B cap L) w_bar = w^-1 B w cap L``.

    Returned in the Levi subsystem's own simple indices.
    """
    p = frozenset(p)
    rs = w.rs
    _, w_par = coset_factorize(w, p)
    lv = _levi(rs, p)
    w_bar = to_levi(w_par, lv)
    # postcondition: inversions of w_bar inside R_L are the Levi roots that w sends negative
    back = parent_indices(lv)
    inv_bar = set()
    for g in inversion_set(w_bar):
        full = [0] * rs.rank
        for k, c in enumerate(g):
            full[back[k] - 1] = c
        inv_bar.add(tuple(full))
    pulled = {g for g in levi_roots(rs, p) if g in inversion_set(w)}
    if inv_bar != pulled:
        raise AssertionError("levi representative does not match w^-1 B w cap L")
    return w_bar


def _levi_parabolic(rs: RootSystem, p: frozenset[int], q: frozenset[int]) -> frozenset[int]:
    back = parent_indices(_levi(rs, p))
    return frozenset(k + 1 for k, a in enumerate(back) if a in q)


@dataclass
class Theorem4Report:
    q: list[int]
    p: list[int]
    words: list[str]
    c_GQ: int
    c_GP: int
    c_L: int
    labels_GP: list[str]
    labels_L: list[str]
    codim_GP_holds: bool
    codim_L_holds: bool
    movable_GP: bool
    movable_L: bool
    product_holds: bool
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.codim_GP_holds and self.codim_L_holds and self.movable_GP and self.movable_L and self.product_holds

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def is_levi_movable(words, rs, p, seed=0, trials=DEFAULT_TRIALS, prime=DEFAULT_PRIME) -> bool:
    """Exact test for the full flag variety, randomized otherwise."""
    p = frozenset(p)
    if not p:
        return is_levi_movable_exact_fullflag(list(words), rs)
    return is_levi_movable_randomized(words, rs, p, seed, trials, prime)


def theorem4_check(
    rs: RootSystem,
    q: Iterable[int],
    p: Iterable[int],
    words: Sequence[WeylElement],
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    prime: int = DEFAULT_PRIME,
) -> Theorem4Report:
    """Check ``c^{G/Q} = c^{G/P} * c^{L/L cap Q}`` on a Levi-movable tuple."""
    q, p = frozenset(q), frozenset(p)
    if not q <= p:
        raise InputError(f"parabolic Q={sorted(q)} is not contained in P={sorted(p)}")
    words = _minimal(words, q)
    _check_codim(words, rs, q)
    if not is_levi_movable(words, rs, q, seed, trials, prime):
        raise PreconditionError("tuple is not Levi-movable on G/Q (movability test failed)")
    c_gq = variety_point_coefficient(words, q)

    gp_words = _minimal(words, p)
    codim_gp = codimension_sum(gp_words, p) == flag_dimension(rs, p)

    lv = _levi(rs, p)
    ql = _levi_parabolic(rs, p, q)
    l_words = [coset_factorize(levi_representative(w, p), ql)[0] for w in words]
    codim_l = codimension_sum(l_words, ql) == flag_dimension(lv, ql)

    movable_gp = codim_gp and is_levi_movable(gp_words, rs, p, seed + 1, trials, prime)
    movable_l = codim_l and is_levi_movable(l_words, lv, ql, seed + 2, trials, prime)
    c_gp = variety_point_coefficient(gp_words, p) if codim_gp else 0
    c_l = variety_point_coefficient(l_words, ql) if codim_l else 0
    return Theorem4Report(
        q=sorted(q),
        p=sorted(p),
        words=[str(w) for w in words],
        c_GQ=c_gq,
        c_GP=c_gp,
        c_L=c_l,
        labels_GP=[str(w) for w in gp_words],
        labels_L=[str(w) for w in l_words],
        codim_GP_holds=codim_gp,
        codim_L_holds=codim_l,
        movable_GP=movable_gp,
        movable_L=movable_l,
        product_holds=c_gq == c_gp * c_l,
    )


def admissible_tuples(rs: RootSystem, p: Iterable[int] = (), s: int = 3):
    """Ordered s-tuples of W^P labels whose codimensions add up to dim G/P."""
    p = frozenset(p)
    reps = enumerate_weyl(rs, p, "minimal_coset_reps")
    dim = flag_dimension(rs, p)
    by_codim: dict[int, list[WeylElement]] = {}
    for w in reps:
        by_codim.setdefault(dim - w.length, []).append(w)

    def rec(prefix, remaining, left):
        if left == 1:
            for w in by_codim.get(remaining, []):
                yield prefix + (w,)
            return
        for c in range(remaining + 1):
            for w in by_codim.get(c, []):
                yield from rec(prefix + (w,), remaining - c, left - 1)

    yield from rec((), dim, s)
