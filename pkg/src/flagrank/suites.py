"""Exhaustive scans and random instance generators used by the CLI and the
acceptance suite.  Every function is deterministic given its seed and
returns plain JSON-ready data (no timings)."""

from __future__ import annotations

import itertools
import random
from collections import Counter

from . import bk, quiver
from .errors import InstabilityError, PreconditionError
from .quiver import Decomposition, DimVector, Quiver, QuiverRep
from .roots import (
    RootSystem,
    build_root_system,
    dual_label,
    enumerate_weyl,
    parse_type,
)


def _parabolic_subsets(rs: RootSystem):
    for r in range(rs.rank + 1):
        yield from (frozenset(c) for c in itertools.combinations(rs.simple_indices, r))


# ---------------------------------------------------------------- Lie side


def corollary2_scan(n: int, seed: int = 0) -> dict:
    """All admissible triples on Sp(2n)/B; every nonzero deformed constant should be 1."""
    rs = build_root_system("C", n)
    values = Counter()
    tuples = movable = 0
    offenders = []
    for tup in bk.admissible_tuples(rs, ()):
        tuples += 1
        rep = bk.bk_multi_constant(tup, rs, (), seed)
        movable += rep.levi_movable
        if rep.bk_constant:
            values[rep.bk_constant] += 1
            if rep.bk_constant != 1:
                offenders.append([str(w) for w in tup])
    return {
        "type": rs.tag(),
        "rank": n,
        "tuples": tuples,
        "levi_movable": movable,
        "nonzero_bk_values": {str(k): v for k, v in sorted(values.items())},
        "offenders": offenders,
        "passed": not offenders and movable > 0,
    }


def bk_structure_table(rs: RootSystem, p=(), seed: int = 0) -> dict:
    """Binary deformed constants ``c[(u, v)][w]`` on Schubert class labels.

    ``sigma_u . sigma_v`` pairs with the dual of ``sigma_w``, so the constant
    is the point coefficient of the varieties labelled
    ``(dual u, dual v, w)``.
    """
    p = frozenset(p)
    reps = enumerate_weyl(rs, p, "minimal_coset_reps")
    dual = {w: dual_label(w, p) for w in reps}
    table: dict = {}
    for u in reps:
        for v in reps:
            row = {}
            for w in reps:
                if w.length != u.length + v.length:
                    continue
                c = bk.bk_multi_constant([dual[u], dual[v], w], rs, p, seed).bk_constant
                if c:
                    row[w] = c
            table[(u, v)] = row
    return table


def ring_axioms(rs: RootSystem, p=(), seed: int = 0) -> dict:
    """Commutativity and associativity of the deformed product, exhaustively."""
    p = frozenset(p)
    reps = enumerate_weyl(rs, p, "minimal_coset_reps")
    table = bk_structure_table(rs, p, seed)
    comm_fail = [(str(u), str(v)) for u in reps for v in reps if table[(u, v)] != table[(v, u)]]
    assoc_checked = 0
    assoc_fail = []
    for u, v, w in itertools.product(reps, repeat=3):
        left: Counter = Counter()
        for x, c in table[(u, v)].items():
            for t, d in table[(x, w)].items():
                left[t] += c * d
        right: Counter = Counter()
        for x, c in table[(v, w)].items():
            for t, d in table[(u, x)].items():
                right[t] += c * d
        assoc_checked += 1
        if +left != +right:
            assoc_fail.append((str(u), str(v), str(w)))
    return {
        "type": rs.tag(),
        "parabolic": sorted(p),
        "classes": len(reps),
        "nonzero_constants": sum(len(r) for r in table.values()),
        "commutativity_failures": comm_fail,
        "associativity_triples": assoc_checked,
        "associativity_failures": assoc_fail,
        "passed": not comm_fail and not assoc_fail,
    }


def theorem4_scan(rs: RootSystem, q, p, seed: int = 0) -> dict:
    """Run the factorization check on every Levi-movable admissible triple of G/Q."""
    q, p = frozenset(q), frozenset(p)
    checked = 0
    failures = []
    skipped = 0
    for tup in bk.admissible_tuples(rs, q):
        if not bk.is_levi_movable(tup, rs, q, seed):
            skipped += 1
            continue
        rep = bk.theorem4_check(rs, q, p, tup, seed)
        checked += 1
        if not rep.passed:
            failures.append(rep.to_dict())
    return {
        "type": rs.tag(),
        "q": sorted(q),
        "p": sorted(p),
        "movable_tuples": checked,
        "non_movable_tuples": skipped,
        "failures": failures,
        "passed": not failures,
    }


def theorem4_suite(seed: int = 0) -> list[dict]:
    """SL3 over all nestings Q <= P and Sp4 with Q = B and both maximal P."""
    out = []
    a2 = parse_type("A2")
    for q in _parabolic_subsets(a2):
        for p in _parabolic_subsets(a2):
            if q <= p:
                out.append(theorem4_scan(a2, q, p, seed))
    c2 = parse_type("C2")
    for p in ({1}, {2}):
        out.append(theorem4_scan(c2, (), p, seed))
    return out


def movability_agreement(tag: str, seeds=range(5), trials: int = bk.DEFAULT_TRIALS, prime: int = bk.DEFAULT_PRIME) -> dict:
    """Exact full-flag test against the randomized test on every admissible triple."""
    rs = parse_type(tag)
    disagreements = []
    tuples = movable = 0
    for tup in bk.admissible_tuples(rs, ()):
        tuples += 1
        exact = bk.is_levi_movable_exact_fullflag(tup, rs)
        movable += exact
        for seed in seeds:
            rand = bk.is_levi_movable_randomized(tup, rs, (), seed, trials, prime)
            if rand != exact:
                disagreements.append({"words": [str(w) for w in tup], "seed": seed, "exact": exact})
    return {
        "type": rs.tag(),
        "tuples": tuples,
        "movable": movable,
        "seeds": list(seeds),
        "trials": trials,
        "prime": prime,
        "disagreements": disagreements,
        "passed": not disagreements,
    }


# ---------------------------------------------------------------- quiver side


def random_quiver(rng: random.Random, max_vertices: int = 4, max_arrows: int = 4) -> Quiver:
    n = rng.randint(1, max_vertices)
    k = rng.randint(0, max_arrows)
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple((f"a{j}", rng.choice(verts), rng.choice(verts)) for j in range(1, k + 1))
    return Quiver(verts, arrows)


def homext_suite(seed: int = 0, quivers: int = 20, pairs: int = 1000, max_dim: int = 3) -> dict:
    """``hom - ext = <dim u, dim v>`` on random representation pairs."""
    rng = random.Random(seed)
    qs = [random_quiver(rng) for _ in range(quivers)]
    primes = (2, 3, 5, 65537)
    failures = []
    hom_hist: Counter = Counter()
    for k in range(pairs):
        q = qs[k % quivers]
        prime = primes[rng.randrange(len(primes))]
        a = [rng.randint(0, max_dim) for _ in q.vertices]
        b = [rng.randint(0, max_dim) for _ in q.vertices]
        u = QuiverRep.random(q, a, rng, prime)
        v = QuiverRep.random(q, b, rng, prime)
        try:
            r = quiver.hom_ext(q, u, v)
        except AssertionError as exc:
            failures.append({"pair": k, "error": str(exc)})
            continue
        hom_hist[r.hom] += 1
        if r.hom - r.ext != quiver.ringel_form(q, a, b):
            failures.append({"pair": k})
    return {
        "quivers": quivers,
        "pairs": pairs,
        "hom_histogram": {str(h): c for h, c in sorted(hom_hist.items())},
        "failures": failures,
        "passed": not failures,
    }


def standard_quivers() -> dict[str, Quiver]:
    return {
        "A2": Quiver.linear(2),
        "A3": Quiver.linear(3),
        "Kronecker": Quiver.kronecker(),
        "star3": Quiver.star(3),
    }


def _vectors(q: Quiver, max_entry: int):
    for v in itertools.product(range(max_entry + 1), repeat=q.n):
        if any(v):
            yield DimVector(v)


def orthogonal_decompositions(q: Quiver, max_entry: int = 2, parts: int = 3) -> list[Decomposition]:
    """Every decomposition with ``parts`` parts, entries <= max_entry, pairwise ``<b_i,b_j> = 0``."""
    vecs = list(_vectors(q, max_entry))
    out = []

    def rec(prefix):
        if len(prefix) == parts:
            out.append(Decomposition(tuple(prefix)))
            return
        for v in vecs:
            if all(quiver.ringel_form(q, b, v) == 0 for b in prefix):
                rec(prefix + [v])

    rec([])
    return out


def sample_decompositions(seed: int = 0, count: int = 24, max_entry: int = 2) -> list[tuple[str, Decomposition]]:
    """Orthogonal decompositions drawn from the four standard quivers, with at
    least one having a nonzero count when one exists."""
    rng = random.Random(seed)
    qs = standard_quivers()
    pools = {}
    for name, q in qs.items():
        pools[name] = orthogonal_decompositions(q, max_entry, 2) + orthogonal_decompositions(q, max_entry, 3)
    names = sorted(pools)
    out = []
    for k in range(count):
        name = names[k % len(names)]
        pool = pools[name]
        out.append((name, pool[rng.randrange(len(pool))]))
    return out


def theorem5_suite(seed: int = 0, count: int = 24) -> dict:
    qs = standard_quivers()
    results = [quiver.theorem5_check(qs["Kronecker"], Decomposition(((1, 1),) * 3), seed).to_dict()]
    results[0]["quiver"] = "Kronecker"
    errors = []
    for name, d in sample_decompositions(seed, count):
        try:
            rep = quiver.theorem5_check(qs[name], d, seed).to_dict()
        except InstabilityError as exc:
            errors.append({"quiver": name, "decomposition": str(d), "error": str(exc)})
            continue
        rep["quiver"] = name
        results.append(rep)
    return {
        "instances": results,
        "errors": errors,
        "nonzero_counts": sum(1 for r in results if r["values"]["filtrations"]),
        "passed": not errors and all(r["passed"] for r in results),
    }


def orthogonal_triples(q: Quiver, max_entry: int = 2) -> list[tuple[DimVector, DimVector, DimVector]]:
    vecs = list(_vectors(q, max_entry))
    out = []
    for a, b, c in itertools.product(vecs, repeat=3):
        if quiver.ringel_form(q, a, b) == quiver.ringel_form(q, a, c) == quiver.ringel_form(q, b, c) == 0:
            out.append((a, b, c))
    return out


def theoremB_suite(seed: int = 0, count: int = 24) -> dict:
    rng = random.Random(seed)
    qs = standard_quivers()
    cases = [("Kronecker", (DimVector((1, 1)),) * 3), ("A3", (DimVector((1, 1, 1)), DimVector((0, 0, 1)), DimVector((0, 1, 0))))]
    pools = {name: orthogonal_triples(qs[name]) for name in sorted(qs)}
    names = [name for name in sorted(qs) if pools[name]]
    for k in range(count):
        name = names[k % len(names)]
        pool = pools[name]
        cases.append((name, pool[rng.randrange(len(pool))]))
    results, errors = [], []
    for name, (a, b, c) in cases:
        try:
            rep = quiver.theoremB_check(qs[name], a, b, c, seed).to_dict()
        except InstabilityError as exc:
            errors.append({"quiver": name, "triple": [str(a), str(b), str(c)], "error": str(exc)})
            continue
        rep["quiver"] = name
        results.append(rep)
    return {"instances": results, "errors": errors, "passed": not errors and all(r["passed"] for r in results)}


def corollary3_suite(seed: int = 0, count: int = 12) -> dict:
    """Instances on acyclic quivers where the hypotheses hold (``b o c = 1``)."""
    rng = random.Random(seed)
    qs = standard_quivers()
    cases = [("A3", (DimVector((1, 1, 1)), DimVector((0, 0, 1)), DimVector((0, 1, 0))))]
    names = sorted(qs)
    pools = {}
    for name in names:
        q = qs[name]
        vecs = list(_vectors(q, 2))
        pool = []
        for a, b, c in itertools.product(vecs, repeat=3):
            if quiver.ringel_form(q, a, b) or quiver.ringel_form(q, a, c):
                continue
            if quiver.circ(q, b, c, seed) == 1:
                pool.append((a, b, c))
        pools[name] = pool
    names = [name for name in names if pools[name]]
    for k in range(count):
        name = names[k % len(names)]
        pool = pools[name]
        cases.append((name, pool[rng.randrange(len(pool))]))
    results, errors = [], []
    for name, (a, b, c) in cases:
        try:
            rep = quiver.corollary3_check(qs[name], a, b, c, seed).to_dict()
        except (InstabilityError, PreconditionError) as exc:
            errors.append({"quiver": name, "triple": [str(a), str(b), str(c)], "error": str(exc)})
            continue
        rep["quiver"] = name
        results.append(rep)
    return {"instances": results, "errors": errors, "passed": not errors and all(r["passed"] for r in results)}
