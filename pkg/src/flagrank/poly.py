"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class ExactPolynomial:
    """Polynomial in ``nvars`` variables stored as ``{exponent: Fraction}``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "ExactPolynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, nvars: int, c) -> "ExactPolynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "ExactPolynomial":
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "ExactPolynomial":
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ExactPolynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> "ExactPolynomial":
        if isinstance(other, ExactPolynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return ExactPolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return ExactPolynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ExactPolynomial(self.nvars)
            return ExactPolynomial._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        n = self.nvars
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(e1[k] + e2[k] for k in range(n))
                out[e] = out.get(e, 0) + c1 * c2
        return ExactPolynomial._raw(n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = ExactPolynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def substitute_linear(self, images: Sequence[Mapping[int, int]]) -> "ExactPolynomial":
        """Replace ``x_j`` by the linear form ``sum_k images[j][k] x_k``.

        Variables whose image is exactly ``x_j`` are left alone, which keeps
        simple-reflection substitutions cheap.
        """
        n = self.nvars
        moved = [j for j in range(n) if dict(images[j]) != {j: 1}]
        power_cache: dict[tuple[int, int], dict[Exponent, Fraction]] = {}

        def power(j: int, k: int) -> dict[Exponent, Fraction]:
            key = (j, k)
            if key not in power_cache:
                form = [(v, c) for v, c in images[j].items() if c]
                power_cache[key] = _linear_power(n, form, k)
            return power_cache[key]

        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            partial = {tuple(0 if j in moved else e[j] for j in range(n)): c}
            for j in moved:
                if e[j] == 0:
                    continue
                pw = power(j, e[j])
                nxt: dict[Exponent, Fraction] = {}
                for e1, c1 in partial.items():
                    for e2, c2 in pw.items():
                        ee = tuple(e1[k] + e2[k] for k in range(n))
                        nxt[ee] = nxt.get(ee, 0) + c1 * c2
                partial = nxt
            for ee, cc in partial.items():
                out[ee] = out.get(ee, 0) + cc
        return ExactPolynomial._raw(n, {e: c for e, c in out.items() if c})

    def divide_by_variable(self, i: int) -> "ExactPolynomial":
        """Exact division by ``x_i``; raises if some term is not divisible."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                raise ArithmeticError(f"division by x_{i} leaves a remainder")
            ee = list(e)
            ee[i] -= 1
            out[tuple(ee)] = c
        return ExactPolynomial._raw(self.nvars, out)

    def homogeneous_part(self, d: int) -> "ExactPolynomial":
        return ExactPolynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= Fraction(x) ** k
            total += term
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts)


def _linear_power(n: int, form: list[tuple[int, int]], k: int) -> dict[Exponent, Fraction]:
    """Expand ``(sum c_v x_v)^k`` by the multinomial theorem."""
    out: dict[Exponent, Fraction] = {}
    for parts in _compositions(k, len(form)):
        coef = 1
        rest = k
        e = [0] * n
        for (v, c), m in zip(form, parts):
            coef *= comb(rest, m) * c**m
            rest -= m
            e[v] += m
        if coef:
            out[tuple(e)] = out.get(tuple(e), 0) + Fraction(coef)
    return out


def _compositions(k: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 0:
        if k == 0:
            yield ()
        return
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest
