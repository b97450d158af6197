import json
import random
from fractions import Fraction

import pytest

from conftest import FIXTURES, build
from supergen.cli import fixture_document
from supergen.core import EVEN, ODD, StructuralError, SuperAlgebra, UsageError
from supergen.weights import (
    CartanFrame,
    cartan_recovered,
    decompose,
    evaluate,
    irreducible_summands,
    omega_coords,
    omega_element,
    separates,
    standard_cartan,
    vandermonde_extract,
)

CLASSICAL = ["A 1 0", "A 2 1", "A 1 1", "B 0 1", "B 1 1", "C 2", "D 2 1", "P 2", "P 3", "Q 2", "Q 3"]
SPECIAL = {"A 1 1", "P 3", "Q 2", "Q 3"}


def W(*xs):
    return tuple(Fraction(x) for x in xs)


def test_standard_frames():
    assert standard_cartan(build("A 1 1")).labels == ("e11+e33", "e11+e44")
    assert standard_cartan(build("W 3")).labels == ("x1d1", "x2d2", "x3d3")
    assert standard_cartan(build("H 6")).labels == ("x1d1-x4d4", "x2d2-x5d5", "x3d3-x6d6")
    assert standard_cartan(build("S 4")).labels == ("x1d1-x2d2", "x1d1-x3d3", "x1d1-x4d4")


def test_frame_rejects_bad_input():
    a = build("A 1 1")
    with pytest.raises(UsageError):
        CartanFrame(a, (a.basis("e13"),))
    with pytest.raises(StructuralError):
        CartanFrame(a, (a.basis("e12") + a.basis("e21"),))
    with pytest.raises(UsageError):
        standard_cartan(SuperAlgebra("bare", ["a"], [EVEN], {}))


def test_a11_odd_decomposition():
    dec = decompose(standard_cartan(build("A 1 1")), parity=ODD)
    assert set(dec.weights) == {W(1, 0), W(-1, 0), W(0, 1), W(0, -1)}
    assert all(dec.multiplicity(w) == 2 for w in dec.weights)
    a = build("A 1 1")
    assert {a.labels[i] for i in dec.members[W(0, 1)]} == {"e13", "e42"}


def test_q_zero_odd_weight_has_n_vectors():
    for n in (2, 3):
        a = build(f"Q {n}")
        dec = decompose(standard_cartan(a), parity=ODD)
        assert dec.multiplicity(W(*[0] * n)) == n


def test_w_minus_one_weights():
    dec = decompose(standard_cartan(build("W 3")), degree=-1)
    assert set(dec.weights) == {W(-1, 0, 0), W(0, -1, 0), W(0, 0, -1)}
    assert all(dec.multiplicity(w) == 1 for w in dec.weights)


@pytest.mark.parametrize("sel", CLASSICAL + ["W 3", "H 5"])
def test_decomposition_partitions_basis(sel):
    a = build(sel)
    dec = decompose(standard_cartan(a))
    assert sorted(dec.indices) == list(range(a.dim))
    zero = W(*[0] * dec.frame.rank)
    assert dec.frame.span() <= dec.space(zero)


@pytest.mark.parametrize("sel", ["A 1 1", "P 3", "B 1 1", "W 3"])
def test_weight_additivity(sel):
    a = build(sel)
    f = standard_cartan(a)
    for i in range(a.dim):
        for j in range(a.dim):
            br = a.basis(i).bracket(a.basis(j))
            if not br.is_zero():
                want = tuple(x + y for x, y in zip(f.weight_of(i), f.weight_of(j)))
                assert f.weight_of_element(br) == want


@pytest.mark.parametrize("sel", CLASSICAL)
def test_root_spaces_one_dimensional_outside_special(sel):
    a = build(sel)
    dec = decompose(standard_cartan(a))
    multi = [w for w in dec.roots if dec.multiplicity(w) > 1]
    if sel in SPECIAL:
        assert multi
    else:
        assert not multi


@pytest.mark.parametrize("sel", CLASSICAL)
def test_zero_odd_weight_only_for_q(sel):
    a = build(sel)
    dec = decompose(standard_cartan(a), parity=ODD)
    zero = W(*[0] * dec.frame.rank)
    assert (zero in dec.members) == sel.startswith("Q")


@pytest.mark.parametrize("sel", ["A 1 1", "P 3", "Q 2", "Q 3"])
def test_cartan_recovered_from_even_roots(sel):
    assert cartan_recovered(standard_cartan(build(sel)))


def test_separating_examples():
    f = standard_cartan(build("A 1 1"))
    odd = decompose(f, parity=ODD).weights
    assert separates(odd, (1, 3))
    assert not separates(odd, (1, 1))
    coords = omega_coords(f, odd)
    vals = [evaluate(w, coords) for w in odd]
    assert len(set(vals)) == len(vals) and 0 not in vals
    assert separates([W(1), W(-1)], (1,))


def test_q2_omega_keeps_zero_weight_at_zero():
    f = standard_cartan(build("Q 2"))
    odd = decompose(f, parity=ODD).weights
    coords = omega_coords(f, odd)
    vals = {w: evaluate(w, coords) for w in odd}
    assert vals[W(0, 0)] == 0
    nz = [v for w, v in vals.items() if any(w)]
    assert 0 not in nz and len(set(nz)) == len(nz)


def test_omega_element_in_frame_span():
    f = standard_cartan(build("P 3"))
    h = omega_element(f, decompose(f, parity=ODD).weights)
    assert h.coeffs in f.span()


def test_vandermonde_a11_pairs():
    a = build("A 1 1")
    f = standard_cartan(a)
    odd = decompose(f, parity=ODD)
    h = omega_element(f, odd.weights)
    x = a.element({i: 1 for i in a.odd_indices})
    lams = [evaluate(w, omega_coords(f, odd.weights)) for w in odd.weights]
    comps = vandermonde_extract(h, x, lams)
    got = {frozenset(a.labels[i] for i in c.support) for c in comps}
    assert got == {frozenset(p) for p in (("e13", "e42"), ("e14", "e32"), ("e23", "e41"), ("e31", "e24"))}


def test_vandermonde_single_and_errors():
    a = build("A 1 1")
    h = a.basis("e11+e33")
    x = a.basis("e13")
    lam = h.bracket(x).coeffs[a.index("e13")]
    assert vandermonde_extract(h, x, [lam]) == [x]
    with pytest.raises(UsageError):
        vandermonde_extract(h, x, [1, 1])
    with pytest.raises(UsageError):
        vandermonde_extract(h, a.basis("e14") + a.basis("e41"), [1])


def test_vandermonde_matches_projection_50_cases():
    rng = random.Random(7)
    pool = ["W 3", "A 1 1", "P 3", "Q 2", "B 1 1"]
    for case in range(50):
        a = build(pool[case % len(pool)])
        f = standard_cartan(a)
        dec = decompose(f)
        ws = rng.sample(dec.weights, min(3, len(dec.weights)))
        coords = omega_coords(f, ws)
        h = f.element(coords)
        x = a.zero()
        for w in ws:
            for i in dec.members[w]:
                x = x + a.basis(i) * rng.choice([1, 2, -1, Fraction(1, 2)])
        lams = [evaluate(w, coords) for w in ws]
        comps = vandermonde_extract(h, x, lams)
        assert comps == [dec.component(x, w) for w in ws]


def test_weight_table_json_and_digest():
    a = build("A 1 1")
    dec = decompose(standard_cartan(a))
    doc = dec.to_json()
    assert doc["frame_labels"] == ["e11+e33", "e11+e44"]
    assert sum(len(e["basis_labels"]) for e in doc["entries"]) == a.dim
    assert dec.digest() == decompose(standard_cartan(build("A 1 1"))).digest()


@pytest.mark.parametrize("sel,dims", [("A 1 1", (4, 4)), ("P 3", (10, 6)), ("Q 2", (8,))])
def test_odd_part_summands(sel, dims):
    a = build(sel)
    split = irreducible_summands(standard_cartan(a), a.even_indices, a.odd_indices)
    assert split.complete and split.dims == dims


def _as_sets(doc):
    return {
        "frame": frozenset(doc["frame"]),
        "even_cartan": frozenset(doc["even_cartan"]),
        "even_roots": frozenset(doc["even_roots"]),
        "odd_summands": frozenset(frozenset(s) for s in doc["odd_summands"]),
        "odd_weights": frozenset((tuple(e["weight"]), frozenset(e["vectors"])) for e in doc["odd_weights"]),
    }


@pytest.mark.parametrize("sel,name", [("A 1 1", "A11"), ("P 3", "P3"), ("Q 2", "Q2")])
def test_table_fixtures(sel, name):
    want = json.loads((FIXTURES / f"{name}.json").read_text())
    got = fixture_document(build(sel))
    assert got["family"] == want["family"]
    assert _as_sets(got) == _as_sets(want)
