"""Schubert structure constants via divided differences.

Classes are labelled in the codimension grading: ``sigma_u`` has degree
``l(u)``.  The class of the Schubert variety ``X(w)`` (dimension
``l(w)``) is ``sigma_{dual_label(w)}``.

Polynomials are written in the simple roots ``x_i = alpha_i``.  ``S_u`` is
obtained from the top class ``prod(beta > 0) / |W|`` by divided differences,
and the coefficient of ``sigma_w`` in a product ``f`` is ``eps(d_w f)``
(evaluation at 0), which is well defined on representatives because the
operators are linear over invariants.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .poly import ExactPolynomial
from .roots import (
    RootSystem,
    WeylElement,
    dual_label,
    enumerate_weyl,
    flag_dimension,
    is_minimal,
    longest_element,
    weyl_element,
)


def reflect_polynomial(rs: RootSystem, i: int, f: ExactPolynomial) -> ExactPolynomial:
    """Apply ``s_i`` to ``f``: ``x_j -> x_j - a_ij x_i``."""
    images = []
    for j in range(rs.rank):
        img = {j: 1}
        a = rs.cartan[i - 1][j]
        if a:
            img[i - 1] = img.get(i - 1, 0) - a
        images.append(img)
    return f.substitute_linear(images)


def divided_difference(rs: RootSystem, i: int, f: ExactPolynomial) -> ExactPolynomial:
    """``d_i f = (f - s_i f) / alpha_i``."""
    if not 1 <= i <= rs.rank:
        raise InputError(f"simple index {i} outside 1..{rs.rank}")
    diff = f - reflect_polynomial(rs, i, f)
    try:
        return diff.divide_by_variable(i - 1)
    except ArithmeticError as exc:  # pragma: no cover - invariant violation
        raise AssertionError(f"divided difference d_{i} was not exact") from exc


def apply_word(rs: RootSystem, word: Sequence[int], f: ExactPolynomial) -> ExactPolynomial:
    """``d_{i1} d_{i2} ... d_{ik} f`` (rightmost operator first)."""
    for i in reversed(word):
        f = divided_difference(rs, i, f)
    return f


class _Engine:
    """Per-root-system memo tables; fills are guarded by a lock."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.lock = threading.RLock()
        self.polys: dict[WeylElement, ExactPolynomial] = {}
        self.functional: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        self.coset_reps: dict[frozenset[int], list[WeylElement]] = {}
        self.top: ExactPolynomial | None = None
        self.w0 = longest_element(rs)

    def top_class(self) -> ExactPolynomial:
        with self.lock:
            if self.top is None:
                rs = self.rs
                prod = ExactPolynomial.constant(rs.rank, 1)
                for beta in rs.positive_roots:
                    prod = prod * ExactPolynomial.linear(beta)
                order = self.order()
                self.top = prod * Fraction(1, order)
            return self.top

    def order(self) -> int:
        # |W| = eps(d_{w0} prod beta)
        rs = self.rs
        prod = ExactPolynomial.constant(rs.rank, 1)
        for beta in rs.positive_roots:
            prod = prod * ExactPolynomial.linear(beta)
        val = apply_word(rs, self.w0.word, prod).constant_term()
        assert val.denominator == 1
        return int(val)

    def schubert(self, u: WeylElement) -> ExactPolynomial:
        with self.lock:
            hit = self.polys.get(u)
            if hit is not None:
                return hit
            if u == self.w0:
                out = self.top_class()
            else:
                # S_u = d_i S_{u s_i} for any i with l(u s_i) > l(u)
                rs = self.rs
                i = next(
                    i
                    for i in rs.simple_indices
                    if all(u.matrix[k][i - 1] >= 0 for k in range(rs.rank))
                )
                out = divided_difference(rs, i, self.schubert(weyl_element(rs, u.word + (i,))))
            self.polys[u] = out
            return out

    def extract(self, w: WeylElement, f: ExactPolynomial) -> Fraction:
        """``eps(d_w f)`` using a per-monomial memo of the functional."""
        d = w.length
        total = Fraction(0)
        with self.lock:
            for e, c in f.terms.items():
                if sum(e) != d:
                    continue
                total += c * self._monomial_value(w.word, e)
        return total

    def _monomial_value(self, word: tuple[int, ...], e: tuple[int, ...]) -> Fraction:
        if not word:
            return Fraction(int(not any(e)))
        key = (word, e)
        hit = self.functional.get(key)
        if hit is not None:
            return hit
        step = divided_difference(self.rs, word[-1], ExactPolynomial(self.rs.rank, {e: 1}))
        val = Fraction(0)
        for e2, c in step.terms.items():
            val += c * self._monomial_value(word[:-1], e2)
        self.functional[key] = val
        return val

    def minimal_reps(self, p: frozenset[int]) -> list[WeylElement]:
        with self.lock:
            if p not in self.coset_reps:
                self.coset_reps[p] = enumerate_weyl(self.rs, p, "minimal_coset_reps")
            return self.coset_reps[p]


_ENGINES: dict[RootSystem, _Engine] = {}
_ENGINES_LOCK = threading.Lock()


def _engine(rs: RootSystem) -> _Engine:
    with _ENGINES_LOCK:
        eng = _ENGINES.get(rs)
        if eng is None:
            eng = _ENGINES[rs] = _Engine(rs)
        return eng


def weyl_order(rs: RootSystem) -> int:
    return _engine(rs).order()


def schubert_polynomial(rs: RootSystem, u: WeylElement) -> ExactPolynomial:
    """Representative ``S_u`` of ``sigma_u``, homogeneous of degree ``l(u)``."""
    return _engine(rs).schubert(u)


def extract_coefficient(rs: RootSystem, w: WeylElement, f: ExactPolynomial) -> Fraction:
    """Coefficient of ``sigma_w`` in the class represented by ``f``."""
    return _engine(rs).extract(w, f)


@dataclass(frozen=True)
class SchubertClass:
    """``sigma_label`` in H*(G/P), ``label`` a minimal coset representative."""

    label: WeylElement
    parabolic: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "parabolic", frozenset(self.parabolic))
        if not is_minimal(self.label, self.parabolic):
            raise InputError(
                f"{self.label} is not minimal for parabolic {sorted(self.parabolic)}"
            )

    @property
    def rs(self) -> RootSystem:
        return self.label.rs

    @property
    def degree(self) -> int:
        return self.label.length

    @classmethod
    def of_variety(cls, w: WeylElement, parabolic: Iterable[int] = ()) -> "SchubertClass":
        """Class ``[X(w)]`` of the Schubert variety of dimension ``l(w)``."""
        p = frozenset(parabolic)
        return cls(dual_label(w, p), p)


@dataclass
class CohomologyElement:
    """Integer combination of Schubert classes on one G/P."""

    rs: RootSystem
    parabolic: frozenset[int]
    coeffs: dict[WeylElement, int] = field(default_factory=dict)

    def __getitem__(self, w: WeylElement) -> int:
        return self.coeffs.get(w, 0)

    def nonzero(self) -> dict[WeylElement, int]:
        return {w: c for w, c in self.coeffs.items() if c}

    def as_words(self) -> dict[str, int]:
        return {str(w): c for w, c in sorted(self.nonzero().items(), key=lambda t: (t[0].length, t[0].word))}


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise AssertionError(f"{what} is not an integer: {x}")
    return int(x)


def cup_constants(u: SchubertClass, v: SchubertClass) -> CohomologyElement:
    """Expansion of ``sigma_u * sigma_v`` in the Schubert basis of H*(G/P)."""
    if u.rs != v.rs or u.parabolic != v.parabolic:
        raise InputError("classes live on different flag varieties")
    rs, p = u.rs, u.parabolic
    eng = _engine(rs)
    prod = eng.schubert(u.label) * eng.schubert(v.label)
    target = u.degree + v.degree
    out = CohomologyElement(rs, p)
    for w in eng.minimal_reps(p):
        if w.length == target:
            c = _as_int(eng.extract(w, prod), "structure constant")
            if c < 0:
                raise AssertionError(f"negative structure constant {c}")
            if c:
                out.coeffs[w] = c
    return out


def point_label(rs: RootSystem, parabolic: Iterable[int]) -> WeylElement:
    """Label of the point class: the longest element of W^P."""
    p = frozenset(parabolic)
    return dual_label(rs.identity, p)


def multi_point_coefficient(classes: Sequence[SchubertClass]) -> int:
    """Coefficient of the point class in ``prod sigma_{u_i}``."""
    if not classes:
        raise InputError("need at least one class")
    rs, p = classes[0].rs, classes[0].parabolic
    for c in classes:
        if c.rs != rs or c.parabolic != p:
            raise InputError("classes live on different flag varieties")
    total = sum(c.degree for c in classes)
    dim = flag_dimension(rs, p)
    if total != dim:
        raise InputError(f"degree mismatch: sum of degrees {total} != dim G/P {dim}")
    eng = _engine(rs)
    prod = ExactPolynomial.constant(rs.rank, 1)
    for c in sorted(classes, key=lambda c: -c.degree):
        prod = prod * eng.schubert(c.label)
    val = _as_int(eng.extract(point_label(rs, p), prod), "point coefficient")
    if val < 0:
        raise AssertionError(f"negative point coefficient {val}")
    return val


def variety_point_coefficient(words: Sequence[WeylElement], parabolic: Iterable[int] = ()) -> int:
    """``c`` with ``[X(w_1)] ... [X(w_s)] = c [pt]``; labels are reduced to W^P."""
    from .roots import minimal_representative

    p = frozenset(parabolic)
    classes = [SchubertClass.of_variety(minimal_representative(w, p), p) for w in words]
    return multi_point_coefficient(classes)
