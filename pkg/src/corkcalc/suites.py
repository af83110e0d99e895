"""Named verification suites behind the CLI ``verify`` command.

Every suite expands a parameter grid into independent pure cases; results
are sorted before aggregation so worker-pool execution is order-free.
Suite ids are stable interface strings; each also has a descriptive alias.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import families, scripts, sequences, stein
from .datum import CorkPair, validate_cork_pair
from .invariants import (boundary_h1, char_numbers_from_datum,
                         connected_sum, cp2, cp2_bar, homology, intersection_form)
from .isomorphism import datum_isomorphic
from .linalg import is_diag_minus_one
from .moves import blow_down, minus_one_sphere_present
from .presentations import pi1_presentation, tietze_simplify


@dataclass(frozen=True)
class CaseResult:
    case: str
    ok: bool
    details: str = ""

    def to_dict(self):
        return {"case": self.case, "ok": self.ok, "details": self.details}


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    cases: tuple[CaseResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> tuple[CaseResult, ...]:
        return tuple(c for c in self.cases if not c.ok)

    def to_dict(self):
        return {"suite": self.suite, "passed": self.passed,
                "total": len(self.cases),
                "failed": len(self.failures),
                "cases": [c.to_dict() for c in self.cases]}


def _grid_value(grid: dict, key: str, default):
    value = grid.get(key)
    return default if value is None else value


# --- contractibility sweep ---------------------------------------------------

def _cases_contractibility(grid):
    n_max = _grid_value(grid, "n_max", 6)
    m_max = _grid_value(grid, "m_max", 3)
    budget = _grid_value(grid, "budget", 10_000)
    return [(n, m, x, budget)
            for n in range(1, n_max + 1)
            for m in range(1, m_max + 1)
            for x in sequences.all_sequences(n)]


def _run_contractibility(case):
    n, m, x, budget = case
    cid = f"X({n},{m},{x})"
    d = families.build_X(n, m, x)
    profile = homology(d)
    if not profile.is_contractible_homology:
        return CaseResult(cid, False, f"homology profile {profile}")
    _, certified = tietze_simplify(pi1_presentation(d), budget)
    if not certified:
        return CaseResult(cid, False, "fundamental group not certified trivial")
    return CaseResult(cid, True)


# --- cork-order tables ---------------------------------------------------------

def _cases_cork_order(grid):
    n_max = _grid_value(grid, "n_max", 8)
    cases = [("seq", x) for n in range(1, n_max + 1) for x in sequences.all_sequences(n)]
    cases.append(("head", n_max))
    cases.append(("alternating", 0))
    return cases


def _run_cork_order(case):
    kind, arg = case
    if kind == "seq":
        x = arg
        n = len(x)
        p = sequences.period(x)
        if n % p:
            return CaseResult(f"period({x})", False, f"period {p} does not divide {n}")
        order = sequences.cork_order(x)
        if sequences.is_constant(x):
            ok = order is None
            return CaseResult(f"order({x})", ok,
                              "" if ok else f"constant sequence reported order {order}")
        ok = order == p > 1
        return CaseResult(f"order({x})", ok, "" if ok else f"order {order}, period {p}")
    if kind == "head":
        bad = [n for n in range(1, arg + 1)
               if sequences.period(families.c_sequence(n)) != n]
        return CaseResult("period(*0^{n-1}) = n", not bad, f"failures at n={bad}" if bad else "")
    # the alternating length-4 pattern: cork order two, rotation map order four
    p = sequences.period("*0*0")
    map_order = sequences.rotation_map_order(4)
    ok = p == 2 and map_order == 4 and sequences.cork_order("*0*0") == 2
    return CaseResult("alternating *0*0: order 2, map order 4", ok,
                      "" if ok else f"period {p}, map order {map_order}")


# --- small-family equalities ----------------------------------------------------

def _cases_family_equality(grid):
    m_max = _grid_value(grid, "m_max", 3)
    e_n_max = _grid_value(grid, "n_max", 6)
    cases = [("equal2", m) for m in range(1, m_max + 1)]
    cases += [("distinct3", m) for m in range(1, m_max + 1)]
    cases += [("e-contractible", (n, m))
              for n in range(1, e_n_max + 1) for m in range(1, m_max + 1)]
    cases += [("e-pairs", (n, m))
              for n in range(1, e_n_max + 1) for m in range(1, m_max + 1)]
    return cases


def _run_family_equality(case):
    kind, arg = case
    if kind == "equal2":
        m = arg
        c2 = families.build_C(2, m)
        exchanged = families.dot_zero_exchange(families.build_D(2, m))
        ok = datum_isomorphic(c2, exchanged) is not None
        return CaseResult(f"C(2,{m}) == dot-zero-exchange(D(2,{m}))", ok)
    if kind == "distinct3":
        m = arg
        witness = datum_isomorphic(families.build_C(3, m), families.build_D(3, m))
        return CaseResult(f"C(3,{m}) vs D(3,{m}) has no wheel isomorphism",
                          witness is None)
    if kind == "e-contractible":
        n, m = arg
        d = families.build_E(n, m)
        profile = homology(d)
        _, certified = tietze_simplify(pi1_presentation(d), 10_000)
        ok = profile.is_contractible_homology and certified
        return CaseResult(f"E({n},{m}) contractible", ok)
    n, m = arg
    d = families.build_E(n, m)
    seq = d.meta_map.get("sequence", "")
    problems = []
    for j, sym in enumerate(seq):
        dotted, framed = (f"a{j}", f"b{j}") if sym == "*" else (f"b{j}", f"a{j}")
        problems += validate_cork_pair(d, CorkPair(dotted, framed, m))
    return CaseResult(f"E({n},{m}) pairs are separated cork pairs",
                      not problems, "; ".join(problems))


# --- deletion scripts -------------------------------------------------------------

def _cases_deletion(grid):
    n_max = _grid_value(grid, "n_max", 5)
    m_max = _grid_value(grid, "m_max", 2)
    cases = []
    for n in range(2, n_max + 1):
        for m in range(1, m_max + 1):
            for x in sequences.all_sequences(n):
                if sequences.is_constant(x):
                    continue
                for i in range(n):
                    cases.append(("step", n, m, x, i))
                cases.append(("chain", n, m, x, -1))
    return cases


def _run_deletion(case):
    kind, n, m, x, i = case
    if kind == "step":
        ok = scripts.verify_deletion(n, m, x, i)
        return CaseResult(f"delete({x},{i}) m={m}", ok)
    ok = scripts.verify_chain(n, m, x)
    return CaseResult(f"chain({x}) m={m}", ok)


# --- decorated wheel family ---------------------------------------------------------

def _cases_w_family(grid):
    n_max = _grid_value(grid, "n_max", 6)
    m_max = _grid_value(grid, "m_max", 2)
    cases = []
    for n in range(2, n_max + 1):
        for m in range(1, m_max + 1):
            cases.append(("base", n, m, 0))
            for i in range(1, n):
                cases.append(("twisted", n, m, i))
                cases.append(("obstruction", n, m, i))
    return cases


def _run_w_family(case):
    kind, n, m, i = case
    expected_b2 = n * (n - 1) // 2
    if kind == "base":
        d = families.build_W(n, m)
        prof = homology(d)
        if prof.b2 != expected_b2 or prof.h1_invariants:
            return CaseResult(f"W({n},{m})", False, f"profile {prof}")
        bh = boundary_h1(d)
        if not bh.is_homology_sphere:
            return CaseResult(f"W({n},{m})", False, f"boundary {bh.invariant_factors}")
        verdict = is_diag_minus_one(intersection_form(d))
        ok = verdict.verdict is True
        return CaseResult(f"W({n},{m})", ok, "" if ok else verdict.reason)
    if kind == "twisted":
        d = families.build_W_twisted(n, m, i)
        blown = d
        for k in range(i):
            target = next(h.id for h in blown.two_handles
                          if not h.word and h.framing == -1)
            blown = blow_down(blown, target)
        prof = homology(blown)
        bh = boundary_h1(blown)
        ok = (prof.b2 == expected_b2 - i and not prof.h1_invariants
              and bh.is_homology_sphere)
        return CaseResult(f"W({n},{m}) twist {i} + {i} blow-downs", ok,
                          "" if ok else f"b2={prof.b2}, boundary={bh.invariant_factors}")
    z = families.build_Z(n, m, i)
    if homology(z).b2 != 1:
        return CaseResult(f"Z({n},{m},{i})", False, "b2 != 1")
    twisted = families.build_Z_twisted(n, m, i)
    if not minus_one_sphere_present(twisted):
        return CaseResult(f"Z({n},{m},{i})", False, "no -1-sphere after twist")
    blown = blow_down(twisted, "z")
    prof = homology(blown)
    bh = boundary_h1(blown)
    ok = prof.b2 == 0 and bh.is_homology_sphere
    return CaseResult(f"Z({n},{m},{i})", ok,
                      "" if ok else f"b2={prof.b2}, boundary={bh.invariant_factors}")


# --- framing checks -------------------------------------------------------------------

def _cases_stein(grid):
    n_max = _grid_value(grid, "n_max", 4)
    m_max = _grid_value(grid, "m_max", 3)
    cases = [("front", n, m) for n in range(1, n_max + 1) for m in range(1, m_max + 1)]
    cases.append(("reference", 0, 0))
    return cases


def _run_stein(case):
    kind, n, m = case
    if kind == "reference":
        doc = stein.load_front_file(families.data_dir() / "fronts" / "trefoil.front")
        comp = doc.front.components[0]
        value = stein.tb(doc.front, comp)
        return CaseResult("max-tb reference front has tb = 1", value == 1,
                          "" if value == 1 else f"tb = {value}")
    d = families.build_C(n, m)
    doc = stein.load_front_file(families.data_dir() / "fronts" / f"C_{n}_{m}.front")
    report = stein.stein_check(d, doc.front, doc.correspondence_dict)
    detail = "" if report.passed else "; ".join(
        f"{r.handle}: framing {r.framing}, tb {r.tb}" for r in report.rows if not r.ok)
    return CaseResult(f"framing = tb - 1 on C({n},{m})", report.passed, detail)


# --- characteristic-number arithmetic ---------------------------------------------------

def surface_sum_precondition(l: int, n: int) -> bool:
    return l >= math.ceil((2 * n + 1) / 3)


def _cases_surface_sum(grid):
    ls = [grid["l"]] if grid.get("l") else list(range(1, 5))
    ns = [grid["n"]] if grid.get("n") else list(range(1, 6))
    return [("pair", l, n) for l in ls for n in ns]


def _run_surface_sum(case):
    _, l, n = case
    pre = surface_sum_precondition(l, n)
    surface = char_numbers_from_datum(families.load_elliptic_surface(l))
    lhs = connected_sum(surface, cp2_bar(n))
    rhs = connected_sum(cp2(2 * l - 1), cp2_bar(10 * l + n - 1))
    ok = (lhs.b2, lhs.signature) == (rhs.b2, rhs.signature)
    detail = (f"b2 {lhs.b2} vs {rhs.b2}, sigma {lhs.signature} vs {rhs.signature}; "
              f"embedding precondition l >= ceil((2n+1)/3) {'holds' if pre else 'fails'}")
    return CaseResult(f"surface-sum arithmetic l={l} n={n}", ok, detail)


# --- registry ----------------------------------------------------------------------------

_SUITES = {
    "lemma-2-2": (_cases_contractibility, _run_contractibility),
    "cork-order": (_cases_cork_order, _run_cork_order),
    "prop-2-6": (_cases_family_equality, _run_family_equality),
    "lemma-3-4-scripts": (_cases_deletion, _run_deletion),
    "w-family": (_cases_w_family, _run_w_family),
    "stein-framings": (_cases_stein, _run_stein),
    "thm-1-7-arith": (_cases_surface_sum, _run_surface_sum),
}

ALIASES = {
    "contractibility": "lemma-2-2",
    "family-equality": "prop-2-6",
    "deletion-scripts": "lemma-3-4-scripts",
    "surface-sum-arith": "thm-1-7-arith",
}

SUITE_NAMES = tuple(_SUITES)


def resolve_suite(name: str) -> str:
    resolved = ALIASES.get(name, name)
    if resolved not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    return resolved


def iter_cases(name: str, grid: dict) -> list:
    builder, _ = _SUITES[resolve_suite(name)]
    return builder(grid)


def run_case(name: str, case) -> CaseResult:
    _, runner = _SUITES[resolve_suite(name)]
    return runner(case)


def run_suite(name: str, grid: dict | None = None, jobs: int = 1) -> SuiteResult:
    resolved = resolve_suite(name)
    grid = grid or {}
    cases = iter_cases(resolved, grid)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_pool_runner, [(resolved, c) for c in cases]))
    else:
        results = [run_case(resolved, c) for c in cases]
    results.sort(key=lambda r: r.case)
    return SuiteResult(resolved, tuple(results))


def _pool_runner(item):
    name, case = item
    return run_case(name, case)
