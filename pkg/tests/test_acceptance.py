"""Acceptance criteria 1-8, one test each.

Every criterion runs all of its sub-checks, prints a single ``PASS``/``FAIL``
line naming any failed sub-checks, then asserts. The lines are repeated in the
pytest terminal summary (see conftest) and when this file is run directly.
"""

from __future__ import annotations

import json
import sys
import traceback
from fractions import Fraction
from itertools import combinations

from conftest import FIXTURES, build
from oracles import naive_rank
from supergen.cli import fixture_document, main
from supergen.core import ODD, bracket_span, check_axioms, even_part, generated_subalgebra
from supergen.families import ACCEPTANCE_MATRIX
from supergen.generate import candidate
from supergen.weights import decompose, irreducible_summands, standard_cartan

RESULTS: dict[int, str] = {}

MATRIX = ["A 1 0", "A 2 1", "A 1 1", "B 0 1", "B 1 1", "C 2", "D 2 1", "P 2", "P 3", "Q 2", "Q 3",
          "W 3", "W 4", "S 4", "St 4", "H 5", "H 6"]
CLASSICAL = MATRIX[:11]
CARTAN = MATRIX[11:]


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failed: list[str] = []

    def check(self, name: str, fn, *args) -> None:
        try:
            ok = fn(*args)
        except Exception as exc:  # a crashing sub-check counts as a failure, not an error
            ok = False
            first = str(exc).splitlines()[0] if str(exc) else ""
            name = f"{name} ({type(exc).__name__}: {first})"
            traceback.print_exc()
        if ok is False:
            self.failed.append(name)

    def finish(self) -> None:
        verdict = "FAIL" if self.failed else "PASS"
        line = f"{verdict} criterion {self.number}: {self.title}"
        if self.failed:
            line += " -- failed: " + "; ".join(self.failed)
        RESULTS[self.number] = line
        print(line)
        assert not self.failed, line


def _suite_json() -> tuple[int, str]:
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["suite", "--json"])
    return code, buf.getvalue()


# --- 1 ----------------------------------------------------------------------

def test_criterion_1_certification_matrix():
    c = Criterion(1, "suite certifies all 17 families with final_dim == target_dim")
    code, out = _suite_json()
    doc = json.loads(out)
    by_name = {e["selector"]: e for e in doc["families"]}
    c.check("suite exit code 0", lambda: code == 0)
    c.check("matrix membership", lambda: sorted(by_name) == sorted(f.selector for f in ACCEPTANCE_MATRIX)
            and len(by_name) == 17)
    for sel in MATRIX:
        def ok(sel=sel):
            e = by_name[sel]
            cert = e["certificate"]
            return e["status"] == "generated" and cert["final_dim"] == cert["target_dim"] == build(sel).dim
        c.check(sel, ok)
    c.finish()


# --- 2 ----------------------------------------------------------------------

def test_criterion_2_axioms():
    c = Criterion(2, "axioms hold on all basis triples; an injected sign fault is caught")
    for sel in MATRIX:
        c.check(f"axioms {sel}", lambda sel=sel: check_axioms(build(sel)).ok)

    def fault(sel):
        a = build(sel)
        table = a.table()
        key = next(k for k in sorted(table) if k[0] != k[1])
        table[key] = {i: -v for i, v in table[key].items()}
        return not check_axioms(a.with_table(table, name="faulty")).ok

    for sel in ("A 1 1", "P 3", "W 3"):
        c.check(f"sign fault {sel}", fault, sel)
    c.finish()


# --- 3 ----------------------------------------------------------------------

def _as_sets(doc):
    return (
        frozenset(doc["frame"]),
        frozenset(doc["even_cartan"]),
        frozenset(doc["even_roots"]),
        frozenset(frozenset(s) for s in doc["odd_summands"]),
        frozenset((tuple(e["weight"]), frozenset(e["vectors"])) for e in doc["odd_weights"]),
    )


def test_criterion_3_table_regression():
    c = Criterion(3, "basis labels and weight tables of A(1,1), P(3), Q(2) match the fixtures as sets")
    for sel, name in (("A 1 1", "A11"), ("P 3", "P3"), ("Q 2", "Q2")):
        def ok(sel=sel, name=name):
            want = json.loads((FIXTURES / f"{name}.json").read_text())
            got = fixture_document(build(sel))
            labels = set(want["even_cartan"]) | set(want["even_roots"]) | \
                {v for e in want["odd_weights"] for v in e["vectors"]}
            return _as_sets(got) == _as_sets(want) and set(build(sel).labels) == labels
        c.check(name, ok)
    c.finish()


# --- 4 ----------------------------------------------------------------------

def test_criterion_4_bracket_fixtures():
    import test_classical as tc

    c = Criterion(4, "displayed P(3), A(1,1) and Q(n) bracket identities hold exactly")
    p3, a11 = build("P 3"), build("A 1 1")
    for lhs, x, y in tc.P3_IDENTITIES:
        c.check(f"P(3) {lhs}", lambda lhs=lhs, x=x, y=y:
                tc.from_matrix(p3, lhs) == tc.from_matrix(p3, x).bracket(tc.from_matrix(p3, y)))
    for lhs, x, y in tc.A11_IDENTITIES:
        c.check(f"A(1,1) {lhs}", lambda lhs=lhs, x=x, y=y:
                tc.from_matrix(a11, lhs) == tc.from_matrix(a11, x).bracket(tc.from_matrix(a11, y)) * Fraction(1, 2))
    for n in (2, 3):
        def literal(n=n):
            tc.test_q_delta_formula_as_displayed(n)
            return True
        c.check(f"Q({n}) delta formula as displayed", literal)
    c.finish()


# --- 5 ----------------------------------------------------------------------

def test_criterion_5_structural_lemmas():
    c = Criterion(5, "structural lemmas on root spaces, odd brackets, local parts and layer-one modules")
    special = {"A 1 1", "P 3", "Q 2", "Q 3"}
    for sel in CLASSICAL:
        def mult(sel=sel):
            dec = decompose(standard_cartan(build(sel)))
            return any(dec.multiplicity(w) > 1 for w in dec.roots) == (sel in special)

        def zero_odd(sel=sel):
            dec = decompose(standard_cartan(build(sel)), parity=ODD)
            return (tuple([Fraction(0)] * dec.frame.rank) in dec.members) == sel.startswith("Q")
        c.check(f"root multiplicity {sel}", mult)
        c.check(f"zero odd weight {sel}", zero_odd)
    for sel in MATRIX:
        c.check(f"[odd, odd] = even {sel}",
                lambda sel=sel: bracket_span(build(sel), build(sel).odd_indices, build(sel).odd_indices)
                == even_part(build(sel)))

    def weights(sel, k):
        return set(decompose(standard_cartan(build(sel)), degree=k).weights)

    splits = {"W 3": 2, "W 4": 2, "S 4": 1, "St 4": 1, "H 5": 1, "H 6": 2}
    for sel in CARTAN:
        a = build(sel)
        c.check(f"local part generates {sel}", lambda a=a: generated_subalgebra(
            [a.basis(i) for k in (-1, 0, 1) for i in a.layer(k)]).dim == a.dim)
        if sel.startswith("H"):
            c.check(f"weights differ {sel}", lambda sel=sel: weights(sel, -1) != weights(sel, 1))
        else:
            c.check(f"weights disjoint {sel}", lambda sel=sel: not (weights(sel, -1) & weights(sel, 1)))

        def square_zero(a=a):
            xs = [i for i in candidate(a).ingredients if i.role.startswith("x_1")]
            return all(set(x.element.support) <= set(a.layer(1)) and x.element.bracket(x.element).is_zero()
                       for x in xs) and bool(xs)
        c.check(f"square-zero layer-one vector {sel}", square_zero)

        def split_count(a=a, sel=sel):
            s = irreducible_summands(standard_cartan(a), a.layer(0), a.layer(1))
            return s.complete and s.count == splits[sel]
        c.check(f"layer-one summands {sel}", split_count)
    c.finish()


# --- 6 ----------------------------------------------------------------------

def test_criterion_6_oracle_equivalence():
    import test_core
    import test_weights

    c = Criterion(6, "closure and Vandermonde extraction agree with naive oracles on 50 cases each")

    def closure():
        test_core.test_closure_matches_naive_oracle_50_cases()
        return True

    def vandermonde():
        test_weights.test_vandermonde_matches_projection_50_cases()
        return True
    c.check("closure vs re-span oracle", closure)
    c.check("vandermonde vs projection", vandermonde)
    c.finish()


# --- 7 ----------------------------------------------------------------------

def _mat_row(m: dict, size: int) -> list:
    return [m.get((i, j), 0) for i in range(1, size + 1) for j in range(1, size + 1)]


def _p_spanning(n):
    """Block matrices [[a, b], [c, -a^t]] with tr a = 0, b symmetric, c skew, size N = n + 1."""
    N = n + 1
    rows = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                rows.append(_mat_row({(i, j): 1, (N + j, N + i): -1}, 2 * N))
            elif i > 1:
                rows.append(_mat_row({(1, 1): 1, (N + 1, N + 1): -1, (i, i): -1, (N + i, N + i): 1}, 2 * N))
            if i <= j:
                rows.append(_mat_row({(i, N + j): 1, (j, N + i): 1} if i != j else {(i, N + i): 2}, 2 * N))
            if i < j:
                rows.append(_mat_row({(N + i, j): 1, (N + j, i): -1}, 2 * N))
    return rows


def _q_tilde_spanning(n):
    """Block matrices [[a, b], [b, a]] with tr b = 0."""
    N = n + 1
    rows = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            rows.append(_mat_row({(i, j): 1, (N + i, N + j): 1}, 2 * N))
            if i != j:
                rows.append(_mat_row({(i, N + j): 1, (N + i, j): 1}, 2 * N))
            elif i > 1:
                rows.append(_mat_row({(1, N + 1): 1, (N + 1, 1): 1, (i, N + i): -1, (N + i, i): -1}, 2 * N))
    return rows


def test_criterion_7_dimension_formulas():
    import test_cartan as tcn

    from supergen.cartan import D_H, mask_of, s_spanning_set, w_keys

    c = Criterion(7, "W, S, H, P, Q dimensions match their formulas by independent rank")

    def keys(n):
        return {k: t for t, k in enumerate(w_keys(n))}

    for n in (3, 4, 5):
        c.check(f"W({n})", lambda n=n: naive_rank([tcn._dense({k: 1}, keys(n)) for k in keys(n)]) == n * 2 ** n)
    for n in (4, 5):
        c.check(f"S({n})", lambda n=n: naive_rank([tcn._dense(v, keys(n)) for _, _, v in s_spanning_set(n)])
                == (n - 1) * 2 ** n + 1)
    for n in (5, 6):
        def h(n=n):
            rows = [tcn._dense(D_H({mask_of(idx): Fraction(1)}, n), keys(n))
                    for k in range(1, n) for idx in combinations(range(1, n + 1), k)]
            return naive_rank(rows) == 2 ** n - 2
        c.check(f"H({n})", h)
    for n in (2, 3):
        N = n + 1
        c.check(f"P({n})", lambda n=n, N=N: naive_rank(_p_spanning(n)) == 2 * N ** 2 - 1 == build(f"P {n}").dim)

        def q(n=n, N=N):
            eye = _mat_row({(i, i): 1 for i in range(1, 2 * N + 1)}, 2 * N)
            span = _q_tilde_spanning(n)
            # quotient by the scalars: dim Q = rank(Q~) - 1, and the identity must lie in Q~
            return (naive_rank(span + [eye]) == naive_rank(span)
                    and naive_rank(span) - 1 == 2 * N ** 2 - 2 == build(f"Q {n}").dim)
        c.check(f"Q({n})", q)
    c.finish()


# --- 8 ----------------------------------------------------------------------

def test_criterion_8_determinism():
    c = Criterion(8, "two consecutive suite --json runs are byte-identical")
    first, second = _suite_json(), _suite_json()
    c.check("identical bytes", lambda: first == second)
    c.check("exit code 0", lambda: first[0] == 0)
    c.finish()


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    bad = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
