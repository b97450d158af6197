from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import build
from oracles import naive_rank
from supergen.cartan import (
    D,
    D_H,
    apply_derivation,
    build_H,
    build_S,
    build_S_tilde,
    build_W,
    cartan_dimension,
    derivation_bracket,
    divergence,
    grassmann_mul,
    involution,
    mask_of,
    monomial,
    partial,
    popcount,
    realization,
    s_spanning_set,
    w_keys,
)
from supergen.core import UsageError, check_axioms, generated_subalgebra, generated_submodule
from supergen.exact import Subspace
from supergen.weights import decompose, irreducible_summands, standard_cartan

CARTAN = ["W 3", "W 4", "S 4", "St 4", "H 5", "H 6"]


def xi(*idx):
    return monomial(*idx)


def dd(i, f=None):
    """``f d_i`` (``f`` defaults to 1)."""
    f = f if f is not None else {0: Fraction(1)}
    return {(u, i): c for u, c in f.items()}


# --- Grassmann algebra ------------------------------------------------------

def test_grassmann_examples():
    assert grassmann_mul(xi(1), xi(2)) == xi(1, 2)
    assert grassmann_mul(xi(2), xi(1)) == {mask_of([1, 2]): -1}
    assert grassmann_mul(xi(1), xi(1)) == {}
    assert grassmann_mul(xi(1, 3), xi(2)) == {mask_of([1, 2, 3]): -1}


def test_partial_examples():
    assert partial(1, xi(1, 2)) == xi(2)
    assert partial(2, xi(1, 2)) == {mask_of([1]): -1}
    assert apply_derivation(dd(2, xi(1)), xi(2, 3)) == xi(1, 3)


def _poly(draw, n):
    return {u: Fraction(draw(st.integers(-2, 2))) for u in range(1 << n)}


@given(st.data())
def test_grassmann_associative(data):
    n = 4
    f, g, h = (_poly(data.draw, n) for _ in range(3))
    assert grassmann_mul(grassmann_mul(f, g), h) == grassmann_mul(f, grassmann_mul(g, h))


@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 15), st.integers(1, 4))
def test_leibniz_rule(u, v, w, i):
    """d(fg) = d(f) g + (-1)^{|d||f|} f d(g) for a homogeneous derivation d = xi_w d_i."""
    d = {(w, i): Fraction(1)}
    f, g = {u: Fraction(1)}, {v: Fraction(1)}
    pd = (popcount(w) + 1) % 2
    pf = popcount(u) % 2
    lhs = apply_derivation(d, grassmann_mul(f, g))
    rhs = grassmann_mul(apply_derivation(d, f), g)
    second = grassmann_mul(f, apply_derivation(d, g))
    s = -1 if pd and pf else 1
    for m, c in second.items():
        rhs[m] = rhs.get(m, 0) + s * c
    assert {k: c for k, c in lhs.items() if c} == {k: c for k, c in rhs.items() if c}


def test_w_bracket_example():
    br = derivation_bracket(dd(2, xi(1)), dd(1, xi(2)), 3)
    assert br == {(mask_of([1]), 1): 1, (mask_of([2]), 2): -1}


def test_s_tilde_minus_one_action():
    top = mask_of([1, 2, 3, 4])
    d = {(0, 1): Fraction(1), (top, 1): Fraction(1)}
    assert apply_derivation(d, xi(1)) == {0: 1, top: 1}


def test_d_ij_is_degree_one_and_divergence_free():
    d = D(1, 2, xi(1, 2, 3))
    assert d and all(popcount(u) - 1 == 1 for u, _ in d)
    assert divergence(d) == {}
    assert derivation_bracket(d, d, 4) == {}


def test_h_involution():
    assert involution(6) == {1: 4, 2: 5, 3: 6, 4: 1, 5: 2, 6: 3}
    assert involution(5) == {1: 3, 2: 4, 3: 1, 4: 2, 5: 5}


def test_d_h_kernel_is_constants_only():
    for n in (5, 6):
        assert D_H({0: Fraction(1)}, n) == {}
        top = (1 << n) - 1
        assert D_H({top: Fraction(1)}, n) != {}
        # D_H is injective on all non-constant monomials
        keys = {k: t for t, k in enumerate(w_keys(n))}
        rows = []
        for u in range(1, 1 << n):
            row = [0] * len(keys)
            for k, c in D_H({u: Fraction(1)}, n).items():
                row[keys[k]] = c
            rows.append(row)
        assert naive_rank(rows) == (1 << n) - 1


def test_lemma_square_zero_displays():
    n = 4
    wvec = dd(1, xi(2, 3))
    assert derivation_bracket(wvec, wvec, n) == {}
    s = D(1, 2, xi(1, 2, 3))
    assert derivation_bracket(s, s, n) == {}
    h = D_H(xi(1, 2, 3), 6)
    assert derivation_bracket(h, h, 6) == {}


# --- builders ---------------------------------------------------------------

def _dense(d, keys):
    row = [0] * len(keys)
    for k, c in d.items():
        row[keys[k]] = c
    return row


@pytest.mark.parametrize("n", [3, 4, 5])
def test_w_dimension_by_rank(n):
    keys = {k: t for t, k in enumerate(w_keys(n))}
    rows = [_dense({k: 1}, keys) for k in keys]
    assert naive_rank(rows) == n * 2 ** n == cartan_dimension("W", n)


@pytest.mark.parametrize("n", [4, 5])
def test_s_dimension_by_rank(n):
    keys = {k: t for t, k in enumerate(w_keys(n))}
    rows = [_dense(v, keys) for _, _, v in s_spanning_set(n)]
    assert naive_rank(rows) == (n - 1) * 2 ** n + 1 == cartan_dimension("S", n)


@pytest.mark.parametrize("n", [5, 6])
def test_h_dimension_by_rank(n):
    keys = {k: t for t, k in enumerate(w_keys(n))}
    rows = []
    for k in range(1, n):
        for idx in combinations(range(1, n + 1), k):
            rows.append(_dense(D_H({mask_of(idx): Fraction(1)}, n), keys))
    assert naive_rank(rows) == 2 ** n - 2 == cartan_dimension("H", n)


def test_built_dimensions():
    assert build_W(3).dim == 24
    assert build("S 4").dim == 49 and build("St 4").dim == 49
    assert build("H 5").dim == 30 and build("H 6").dim == 62


def test_builder_preconditions():
    for f, n in [(build_W, 2), (build_S, 3), (build_S_tilde, 5), (build_H, 4)]:
        with pytest.raises(UsageError):
            f(n)


@pytest.mark.parametrize("n", [4, 5])
def test_s_is_kernel_of_divergence(n):
    a = build(f"S {n}")
    keys = {k: t for t, k in enumerate(w_keys(n))}
    div_rows = []
    for k in keys:
        # column k of the divergence map, as a row over monomials
        dv = divergence({k: Fraction(1)})
        div_rows.append([dv.get(m, 0) for m in range(1 << n)])
    kernel_dim = len(keys) - naive_rank(div_rows)
    assert kernel_dim == a.dim
    for v in a.meta["realization"]:
        assert divergence(v) == {}


@pytest.mark.parametrize("sel", CARTAN)
def test_axioms(sel):
    assert check_axioms(build(sel)).ok


@pytest.mark.parametrize("sel,layer0", [("W 3", 9), ("W 4", 16), ("S 4", 15), ("St 4", 15),
                                        ("H 5", 10), ("H 6", 15)])
def test_null_layer_dimension(sel, layer0):
    assert len(build(sel).layer(0)) == layer0


def _grading_failures(a):
    bad = set()
    z = a.z_degree
    for (i, j), ent in a.table().items():
        for k in ent:
            if z[k] != z[i] + z[j]:
                bad.add(tuple(sorted((z[i], z[j]))))
    return bad


@pytest.mark.parametrize("sel", ["W 3", "W 4", "S 4", "H 5", "H 6"])
def test_graded(sel):
    assert _grading_failures(build(sel)) == set()


def test_s_tilde_not_graded_only_at_minus_one():
    a = build("St 4")
    assert _grading_failures(a) == {(-1, -1)}
    assert a.meta["graded"] is False
    d1, d2 = a.basis("(1+x1234)d1"), a.basis("(1+x1234)d2")
    br = d1.bracket(d2)
    assert not br.is_zero()
    assert all(a.z_degree[k] == 2 for k in br.support)


@pytest.mark.parametrize("sel", CARTAN)
def test_local_part_generates(sel):
    a = build(sel)
    local = [a.basis(i) for k in (-1, 0, 1) for i in a.layer(k)]
    assert generated_subalgebra(local).dim == a.dim


@pytest.mark.parametrize("sel", CARTAN)
def test_minus_one_layer_irreducible(sel):
    a = build(sel)
    acting = [a.basis(i) for i in a.layer(0)]
    target = Subspace.coordinate(a.layer(-1), a.dim)
    for i in a.layer(-1):
        assert generated_submodule(acting, [a.basis(i)]) == target


@pytest.mark.parametrize("sel,count", [("W 3", 2), ("W 4", 2), ("S 4", 1), ("St 4", 1),
                                       ("H 5", 1), ("H 6", 2)])
def test_layer_one_summands(sel, count):
    a = build(sel)
    split = irreducible_summands(standard_cartan(a), a.layer(0), a.layer(1))
    assert split.complete
    assert split.count == count


@pytest.mark.parametrize("sel", CARTAN)
def test_square_zero_weight_vector_in_layer_one(sel):
    a = build(sel)
    frame = standard_cartan(a)
    found = [i for i in a.layer(1) if a.basis(i).bracket(a.basis(i)).is_zero()]
    assert found
    assert frame.weight_of_element(a.basis(found[0])) is not None


def test_realization_round_trip():
    a = build("H 5")
    x = a.basis("DH(x123)") + a.basis("DH(x1)") * 3
    y = a.basis("DH(x12)")
    assert realization(a, x.bracket(y)) == derivation_bracket(realization(a, x), realization(a, y), 5)


# --- weight sets ----------------------------------------------------------

def _weights(sel, k):
    a = build(sel)
    return set(decompose(standard_cartan(a), degree=k).weights)


def _unit(r, i, s=1):
    return tuple(Fraction(s if t == i else 0) for t in range(r))


def _add(*ws):
    return tuple(sum(c) for c in zip(*ws))


def _neg(w):
    return tuple(-x for x in w)


@pytest.mark.parametrize("n", [3, 4])
def test_w_weight_sets(n):
    e = [None] + [_unit(n, i) for i in range(n)]
    assert _weights(f"W {n}", -1) == {_neg(e[j]) for j in range(1, n + 1)}
    assert _weights(f"W {n}", 1) == {_add(e[k], e[l], _neg(e[j])) for k in range(1, n + 1)
                                     for l in range(1, n + 1) for j in range(1, n + 1) if k != l}


@pytest.mark.parametrize("sel", ["S 4", "S 5", "St 4"])
def test_s_weight_sets(sel):
    """Weights read as restrictions psi_j of the W functionals: psi_1 = sum, psi_j = -e_j."""
    n = int(sel.split()[1])
    r = n - 1
    psi = [None, tuple(Fraction(1) for _ in range(r))] + [_unit(r, j - 2, -1) for j in range(2, n + 1)]
    assert _weights(sel, -1) == {_neg(psi[j]) for j in range(1, n + 1)}
    assert _weights(sel, 1) == {_add(psi[k], psi[l], _neg(psi[j])) for k in range(1, n + 1)
                                for l in range(1, n + 1) for j in range(1, n + 1) if k != l}


def _h_sets(m, odd):
    e = [_unit(m, i) for i in range(m)]
    zero = tuple(Fraction(0) for _ in range(m))
    minus = {w for i in range(m) for w in (e[i], _neg(e[i]))}
    one = set(minus)
    for i, j, k in combinations(range(m), 3):
        for s1 in (1, -1):
            for s2 in (1, -1):
                for s3 in (1, -1):
                    one.add(_add(_unit(m, i, s1), _unit(m, j, s2), _unit(m, k, s3)))
    if odd:
        minus.add(zero)
        one.add(zero)
        for i, j in combinations(range(m), 2):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    one.add(_add(_unit(m, i, s1), _unit(m, j, s2)))
    return minus, one


@pytest.mark.parametrize("n", [5, 6])
def test_h_weight_sets(n):
    minus, one = _h_sets(n // 2, n % 2 == 1)
    assert _weights(f"H {n}", -1) == minus
    assert _weights(f"H {n}", 1) == one


@pytest.mark.parametrize("sel", ["W 3", "W 4", "S 4", "St 4"])
def test_minus_one_and_one_weights_disjoint(sel):
    assert not (_weights(sel, -1) & _weights(sel, 1))


@pytest.mark.parametrize("sel", ["H 5", "H 6"])
def test_h_weight_sets_differ(sel):
    assert _weights(sel, -1) != _weights(sel, 1)


@pytest.mark.parametrize("sel", ["W 3", "W 4", "H 6"])
def test_split_pieces_have_distinct_nonzero_weights(sel):
    a = build(sel)
    frame = standard_cartan(a)
    split = irreducible_summands(frame, a.layer(0), a.layer(1))
    from supergen.weights import subspace_weights

    w1 = [w for w in subspace_weights(frame, split.summands[0]) if any(w)]
    w2 = [w for w in subspace_weights(frame, split.summands[1]) if any(w)]
    assert w1 and w2
    assert any(x != y for x in w1 for y in w2)
