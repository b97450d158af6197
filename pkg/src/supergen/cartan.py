"""Cartan-type superalgebras as derivations of a Grassmann algebra.

Grassmann monomials ``xi_u`` are bitmasks: bit ``i-1`` stands for ``xi_i``.
A derivation is a dict ``{(mask, i): c}`` meaning ``sum c * xi_u d_i``.
Brackets are computed through the action on the generators ``xi_i``: a
derivation is determined by its values there.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .core import StructuralError, SuperAlgebra, UsageError
from .exact import ONE, ZERO, CoordinateMap, IntEchelon, to_int_vector

Poly = dict[int, Fraction]
Deriv = dict[tuple[int, int], Fraction]


def popcount(m: int) -> int:
    return bin(m).count("1")


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if m >> (i - 1) & 1:
            raise UsageError(f"repeated Grassmann generator {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(m: int) -> tuple[int, ...]:
    out, i = [], 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def monomial(*indices: int) -> Poly:
    """The ordered product ``xi_{i1} ... xi_{ik}``, reordered to increasing indices with its sign."""
    sign, m = 1, 0
    for i in indices:
        bit = 1 << (i - 1)
        if m & bit:
            return {}
        if popcount(m & ~(bit - 1) & ~bit) % 2:
            sign = -sign
        m |= bit
    return {m: Fraction(sign)}


def mono_mul(u: int, v: int) -> tuple[int, int]:
    """``xi_u * xi_v = sign * xi_{u|v}``; returns ``(sign, mask)`` with sign 0 when they overlap."""
    if u & v:
        return 0, 0
    s, w = 0, v
    while w:
        low = w & -w
        s += popcount(u & ~(low | (low - 1)))
        w ^= low
    return (-1 if s % 2 else 1), u | v


def grassmann_mul(f: Poly, g: Poly) -> Poly:
    out: Poly = {}
    for u, a in f.items():
        for v, b in g.items():
            s, m = mono_mul(u, v)
            if s:
                out[m] = out.get(m, ZERO) + s * a * b
    return {k: c for k, c in out.items() if c}


def partial(i: int, f: Poly) -> Poly:
    """Left derivative: ``d_i(xi_u) = (-1)^{#(u below i)} xi_{u - i}``."""
    bit = 1 << (i - 1)
    out: Poly = {}
    for u, c in f.items():
        if u & bit:
            s = -1 if popcount(u & (bit - 1)) % 2 else 1
            out[u ^ bit] = out.get(u ^ bit, ZERO) + s * c
    return out


def apply_derivation(d: Deriv, f: Poly) -> Poly:
    out: Poly = {}
    for (u, i), c in d.items():
        df = partial(i, f)
        if df:
            for m, v in grassmann_mul({u: c}, df).items():
                out[m] = out.get(m, ZERO) + v
    return {k: v for k, v in out.items() if v}


def deriv_parity_of_key(key: tuple[int, int]) -> int:
    return (popcount(key[0]) + 1) % 2


def deriv_degree_of_key(key: tuple[int, int]) -> int:
    return popcount(key[0]) - 1


def _split(d: Deriv) -> list[tuple[int, Deriv]]:
    parts: dict[int, Deriv] = {}
    for k, c in d.items():
        parts.setdefault(deriv_parity_of_key(k), {})[k] = c
    return sorted(parts.items())


def derivation_bracket(d1: Deriv, d2: Deriv, n: int) -> Deriv:
    """Supercommutator, extended bilinearly to inhomogeneous arguments."""
    out: Deriv = {}
    for p, a in _split(d1):
        for q, b in _split(d2):
            s = -1 if (p and q) else 1
            for i in range(1, n + 1):
                gen = {1 << (i - 1): ONE}
                ab = apply_derivation(a, apply_derivation(b, gen))
                ba = apply_derivation(b, apply_derivation(a, gen))
                for m, c in ab.items():
                    out[(m, i)] = out.get((m, i), ZERO) + c
                for m, c in ba.items():
                    out[(m, i)] = out.get((m, i), ZERO) - s * c
    return {k: c for k, c in out.items() if c}


def deriv_times(f: Poly, i: int) -> Deriv:
    """``f * d_i`` as a derivation."""
    return {(u, i): c for u, c in f.items() if c}


def deriv_add(*ds: Deriv, coeffs: Sequence | None = None) -> Deriv:
    out: Deriv = {}
    for t, d in enumerate(ds):
        s = Fraction(coeffs[t]) if coeffs else ONE
        for k, c in d.items():
            out[k] = out.get(k, ZERO) + s * c
    return {k: c for k, c in out.items() if c}


def D(i: int, j: int, f: Poly) -> Deriv:
    """``D_ij(f) = d_i(f) d_j + d_j(f) d_i``; lies in the special algebra."""
    return deriv_add(deriv_times(partial(i, f), j), deriv_times(partial(j, f), i))


def involution(n: int) -> dict[int, int]:
    """``i -> i'`` pairing used by the Hamiltonian family; ``n`` is fixed when odd."""
    h = n // 2
    pair = {}
    for i in range(1, h + 1):
        pair[i] = i + h
        pair[i + h] = i
    if n % 2:
        pair[n] = n
    return pair


def D_H(f: Poly, n: int) -> Deriv:
    """``D_H(f) = (-1)^{p(f)} sum_i d_i(f) d_{i'}`` for homogeneous ``f``."""
    degs = {popcount(u) % 2 for u in f}
    if len(degs) > 1:
        raise UsageError("D_H needs a parity-homogeneous argument")
    s = -1 if degs and degs.pop() else 1
    pair = involution(n)
    parts = [deriv_times(partial(i, f), pair[i]) for i in range(1, n + 1)]
    return deriv_add(*parts, coeffs=[s] * n)


def divergence(d: Deriv) -> Poly:
    """``sum_i d_i(f_i)`` for ``d = sum f_i d_i``."""
    out: Poly = {}
    for (u, i), c in d.items():
        for m, v in partial(i, {u: c}).items():
            out[m] = out.get(m, ZERO) + v
    return {k: v for k, v in out.items() if v}


# -- labels ----------------------------------------------------------------

def mono_label(u: int) -> str:
    idx = indices_of(u)
    if not idx:
        return "1"
    sep = "," if any(i >= 10 for i in idx) else ""
    return "x" + sep.join(str(i) for i in idx)


def w_label(u: int, i: int) -> str:
    return f"d{i}" if u == 0 else f"{mono_label(u)}d{i}"


def deriv_str(d: Deriv) -> str:
    if not d:
        return "0"
    out = []
    for (u, i) in sorted(d, key=lambda k: (popcount(k[0]), indices_of(k[0]), k[1])):
        c = d[(u, i)]
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}"
        out.append(f"{sign}{mag}{w_label(u, i)}")
    s = "".join(out)
    return s[1:] if s[0] == "+" else s


def w_keys(n: int) -> list[tuple[int, int]]:
    """W(n) basis order: by degree, then monomial (lex), then derivative index."""
    keys = []
    for k in range(n + 1):
        for idx in combinations(range(1, n + 1), k):
            m = mask_of(idx)
            for i in range(1, n + 1):
                keys.append((m, i))
    return keys


# -- generic assembly --------------------------------------------------------

def _weight(key: tuple[int, int], frame_diag: Sequence[Sequence[Fraction]]) -> tuple:
    u, i = key
    idx = indices_of(u)
    return tuple(sum((lam[a - 1] for a in idx), ZERO) - lam[i - 1] for lam in frame_diag)


def _frame_vector(lam: Sequence) -> Deriv:
    return {(1 << (a - 1), a): Fraction(c) for a, c in enumerate(lam, start=1) if c}


class _WeightCoords:
    """Coordinates of derivations in a basis of weight vectors, one small solve per weight."""

    def __init__(self, n: int, vectors: Sequence[Deriv], frame_diag):
        self.frame = [tuple(Fraction(x) for x in lam) for lam in frame_diag]
        self.amb: dict[tuple, list[tuple[int, int]]] = {}
        for k in w_keys(n):
            self.amb.setdefault(_weight(k, self.frame), []).append(k)
        self.pos = {w: {k: t for t, k in enumerate(ks)} for w, ks in self.amb.items()}
        self.members: dict[tuple, list[int]] = {}
        for idx, v in enumerate(vectors):
            ws = {_weight(k, self.frame) for k in v}
            if len(ws) != 1:
                raise StructuralError(f"basis derivation {deriv_str(v)} is not a weight vector")
            self.members.setdefault(ws.pop(), []).append(idx)
        self.maps = {}
        for w, idxs in self.members.items():
            pos = self.pos[w]
            rows = []
            for t in idxs:
                row = [ZERO] * len(pos)
                for k, c in vectors[t].items():
                    row[pos[k]] = c
                rows.append(row)
            self.maps[w] = CoordinateMap(rows, len(pos))

    def coords(self, d: Deriv) -> dict[int, Fraction] | None:
        parts: dict[tuple, dict] = {}
        for k, c in d.items():
            parts.setdefault(_weight(k, self.frame), {})[k] = c
        out: dict[int, Fraction] = {}
        for w, part in parts.items():
            if w not in self.maps:
                return None
            pos = self.pos[w]
            v = [ZERO] * len(pos)
            for k, c in part.items():
                v[pos[k]] = c
            co = self.maps[w].coords(v)
            if co is None:
                return None
            for t, c in zip(self.members[w], co):
                if c:
                    out[t] = out.get(t, ZERO) + c
        return out


def _greedy(n: int, spanning: Sequence[Deriv], frame_diag) -> list[int]:
    """Indices of the first independent vectors of ``spanning``, per weight space."""
    frame = [tuple(Fraction(x) for x in lam) for lam in frame_diag]
    keys = w_keys(n)
    kpos = {k: t for t, k in enumerate(keys)}
    echs: dict[tuple, IntEchelon] = {}
    keep = []
    for t, v in enumerate(spanning):
        if not v:
            continue
        ws = {_weight(k, frame) for k in v}
        if len(ws) != 1:
            raise StructuralError(f"spanning derivation {deriv_str(v)} is not a weight vector")
        w = ws.pop()
        ech = echs.setdefault(w, IntEchelon(len(keys)))
        dense = [ZERO] * len(keys)
        for k, c in v.items():
            dense[kpos[k]] = c
        if ech.add(to_int_vector(dense)) is not None:
            keep.append(t)
    return keep


def derivation_algebra(name: str, n: int, vectors: Sequence[Deriv], labels: Sequence[str],
                       z_degree: Sequence[int], frame_diag, frame_labels: Sequence[str],
                       grouping_diag=None, family: tuple | None = None,
                       meta: dict | None = None) -> SuperAlgebra:
    """Structure constants for a bracket-closed span of derivations.

    ``frame_diag`` lists the standard Cartan elements as diagonal vectors
    ``(lam_1..lam_n)`` meaning ``sum lam_a xi_a d_a``.  ``grouping_diag`` (by
    default ``frame_diag``) only has to make every basis vector a weight vector.
    """
    parity = []
    for v in vectors:
        ps = {deriv_parity_of_key(k) for k in v}
        if len(ps) != 1:
            raise StructuralError(f"{deriv_str(v)} is not parity-homogeneous")
        parity.append(ps.pop())
    wc = _WeightCoords(n, vectors, grouping_diag or frame_diag)
    table = {}
    for a in range(len(vectors)):
        for b in range(a, len(vectors)):
            br = derivation_bracket(vectors[a], vectors[b], n)
            if not br:
                continue
            co = wc.coords(br)
            if co is None:
                raise StructuralError(f"{name}: [{labels[a]}, {labels[b]}] leaves the span")
            table[(a, b)] = co
    cartan = []
    for lab, lam in zip(frame_labels, frame_diag):
        co = wc.coords(_frame_vector(lam))
        if co is None:
            raise StructuralError(f"{name}: Cartan element {lab} is not in the algebra")
        cartan.append((lab, tuple(co.get(t, ZERO) for t in range(len(vectors)))))
    m = {"kind": "cartan", "n": n, "realization": [dict(v) for v in vectors],
         "cartan": cartan, "graded": True}
    m.update(meta or {})
    return SuperAlgebra(name, labels, parity, table, z_degree, family=family, meta=m)


def _unit_diag(n: int, a: int) -> list[Fraction]:
    lam = [ZERO] * n
    lam[a - 1] = ONE
    return lam


def build_W(n: int) -> SuperAlgebra:
    """All superderivations of the Grassmann algebra on ``n`` generators."""
    if n < 3:
        raise UsageError("W(n) needs n >= 3")
    keys = w_keys(n)
    vectors = [{k: ONE} for k in keys]
    labels = [w_label(*k) for k in keys]
    z = [deriv_degree_of_key(k) for k in keys]
    frame = [_unit_diag(n, a) for a in range(1, n + 1)]
    return derivation_algebra(f"W({n})", n, vectors, labels, z, frame,
                              [w_label(1 << (a - 1), a) for a in range(1, n + 1)],
                              family=("W", n), meta={"type": "W"})


def _sl_frame(n: int) -> tuple[list[list[Fraction]], list[str]]:
    frame, labels = [], []
    for j in range(2, n + 1):
        lam = [ZERO] * n
        lam[0], lam[j - 1] = ONE, -ONE
        frame.append(lam)
        labels.append(f"x1d1-x{j}d{j}")
    return frame, labels


def s_spanning_set(n: int) -> list[tuple[str, int, Deriv]]:
    """``d_j`` for layer -1, then ``D_ij(xi_u)`` for ``|u| >= 2``; duplicates allowed."""
    out = [(f"d{j}", -1, {(0, j): ONE}) for j in range(1, n + 1)]
    for k in range(2, n + 1):
        for idx in combinations(range(1, n + 1), k):
            f = {mask_of(idx): ONE}
            tag = mono_label(mask_of(idx))
            for i in range(1, n + 1):
                for j in range(i, n + 1):
                    d = D(i, j, f)
                    if d:
                        out.append((f"D{i}{j}({tag})" if n < 10 else f"D{i},{j}({tag})", k - 2, d))
    return out


def s_basis(n: int) -> list[tuple[str, int, Deriv]]:
    span = s_spanning_set(n)
    frame = [_unit_diag(n, a) for a in range(1, n + 1)]
    keep = _greedy(n, [v for _, _, v in span], frame)
    return [span[t] for t in keep]


def build_S(n: int) -> SuperAlgebra:
    """Divergence-free derivations."""
    if n < 4:
        raise UsageError("S(n) needs n >= 4")
    basis = s_basis(n)
    frame, flabels = _sl_frame(n)
    return derivation_algebra(
        f"S({n})", n, [v for _, _, v in basis], [lab for lab, _, _ in basis],
        [k for _, k, _ in basis], frame, flabels,
        grouping_diag=[_unit_diag(n, a) for a in range(1, n + 1)],
        family=("S", n), meta={"type": "S"})


def build_S_tilde(n: int) -> SuperAlgebra:
    """Layer -1 is ``(1 + xi_1...xi_n) d_j``; higher layers as in ``S(n)``.  ``n`` must be even."""
    if n < 4 or n % 2:
        raise UsageError("S~(n) needs an even n >= 4")
    top = (1 << n) - 1
    omega = mono_label(top)
    basis = []
    for lab, k, v in s_basis(n):
        if k == -1:
            (j,) = [i for (_, i) in v]
            v = {(0, j): ONE, (top, j): ONE}
            lab = f"(1+{omega})d{j}"
        basis.append((lab, k, v))
    frame, flabels = _sl_frame(n)
    return derivation_algebra(
        f"St({n})", n, [v for _, _, v in basis], [lab for lab, _, _ in basis],
        [k for _, k, _ in basis], frame, flabels,
        family=("St", n), meta={"type": "St", "graded": False})


def build_H(n: int) -> SuperAlgebra:
    """Span of ``D_H(xi_u)`` for ``1 <= |u| <= n-1``."""
    if n < 5:
        raise UsageError("H(n) needs n >= 5")
    vectors, labels, z = [], [], []
    for k in range(1, n):
        for idx in combinations(range(1, n + 1), k):
            u = mask_of(idx)
            vectors.append(D_H({u: ONE}, n))
            labels.append(f"DH({mono_label(u)})")
            z.append(k - 2)
    pair = involution(n)
    frame, flabels = [], []
    for i in range(1, n // 2 + 1):
        lam = [ZERO] * n
        lam[i - 1], lam[pair[i] - 1] = ONE, -ONE
        frame.append(lam)
        flabels.append(f"x{i}d{i}-x{pair[i]}d{pair[i]}")
    return derivation_algebra(f"H({n})", n, vectors, labels, z, frame, flabels,
                              family=("H", n), meta={"type": "H"})


def cartan_dimension(kind: str, n: int) -> int:
    return {"W": n * 2 ** n, "S": (n - 1) * 2 ** n + 1, "St": (n - 1) * 2 ** n + 1,
            "H": 2 ** n - 2}[kind]


def realization(a: SuperAlgebra, x) -> Deriv:
    """The derivation represented by an element of a Cartan-type algebra."""
    real = a.meta["realization"]
    out = deriv_add(*[real[i] for i, c in enumerate(x.coeffs) if c],
                    coeffs=[c for c in x.coeffs if c])
    return out
