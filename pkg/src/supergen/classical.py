"""Classical Lie superalgebras as concrete matrix superalgebras.

Everything is realized inside gl(r|s) on matrix units ``e_ij`` (1-based).  A
unit is even iff both indices fall in the same diagonal block.  Each builder
lists its basis as sparse matrices; structure constants come from the
supercommutator followed by a coordinate solve.

Basis order for every family: standard Cartan elements, then even root
vectors, then odd vectors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import EVEN, ODD, StructuralError, Subspace, SuperAlgebra, UsageError, quotient_by_ideal
from .exact import ONE, ZERO, CoordinateMap, Matrix, nullspace, vec

Mat = dict[tuple[int, int], Fraction]


def _e(i: int, j: int) -> str:
    return f"e{i}{j}" if i < 10 and j < 10 else f"e{i},{j}"


def matrix_label(m: Mat) -> str:
    """``e12-e43`` style label; terms in row-major order."""
    out = []
    for (i, j) in sorted(m):
        c = m[(i, j)]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        coef = "" if mag == 1 else f"{mag}"
        out.append(f"{sign}{coef}{_e(i, j)}")
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def _mk(*terms) -> Mat:
    """``_mk((1, i, j), (-1, k, l), ...)``"""
    m: Mat = {}
    for c, i, j in terms:
        m[(i, j)] = m.get((i, j), ZERO) + Fraction(c)
    return {k: v for k, v in m.items() if v}


def unit_parity(i: int, j: int, r: int) -> int:
    return int((i <= r) != (j <= r))


def mat_parity(m: Mat, r: int) -> int:
    ps = {unit_parity(i, j, r) for (i, j) in m}
    if len(ps) != 1:
        raise StructuralError(f"matrix {matrix_label(m)} is not homogeneous")
    return ps.pop()


def matmul(x: Mat, y: Mat) -> Mat:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, l), c in y.items():
        rows.setdefault(k, []).append((l, c))
    out: Mat = {}
    for (i, k), a in x.items():
        for l, b in rows.get(k, ()):
            out[(i, l)] = out.get((i, l), ZERO) + a * b
    return {k: v for k, v in out.items() if v}


def supercommutator(x: Mat, y: Mat, r: int) -> Mat:
    p, q = mat_parity(x, r), mat_parity(y, r)
    xy, yx = matmul(x, y), matmul(y, x)
    s = -1 if (p and q) else 1
    out = dict(xy)
    for k, v in yx.items():
        out[k] = out.get(k, ZERO) - s * v
    return {k: v for k, v in out.items() if v}


def supertrace(m: Mat, r: int) -> Fraction:
    return sum((c if i <= r else -c for (i, j), c in m.items() if i == j), ZERO)


def _matrix_algebra(name: str, r: int, size: int, mats: Sequence[Mat], labels: Sequence[str],
                    cartan: int, family: tuple | None) -> SuperAlgebra:
    """Structure constants for the span of ``mats`` inside gl(r|size-r).

    ``cartan`` is the number of leading basis elements forming the standard
    Cartan subalgebra.  Raises ``StructuralError`` when the span is not closed.
    """
    keys = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1)]
    pos = {k: n for n, k in enumerate(keys)}
    dense = [[m.get(k, ZERO) for k in keys] for m in mats]
    cmap = CoordinateMap(dense, len(keys))
    parity = [mat_parity(m, r) for m in mats]
    table = {}
    for a in range(len(mats)):
        for b in range(a, len(mats)):
            br = supercommutator(mats[a], mats[b], r)
            if not br:
                continue
            v = [ZERO] * len(keys)
            for k, c in br.items():
                v[pos[k]] = c
            co = cmap.coords(v)
            if co is None:
                raise StructuralError(
                    f"{name}: [{labels[a]}, {labels[b]}] = {matrix_label(br)} leaves the span")
            table[(a, b)] = {t: c for t, c in enumerate(co) if c}
    meta = {
        "kind": "classical",
        "block": r,
        "size": size,
        "matrices": [dict(m) for m in mats],
        "cartan": [(labels[i], tuple(ONE if t == i else ZERO for t in range(len(mats))))
                   for i in range(cartan)],
    }
    return SuperAlgebra(name, labels, parity, table, family=family, meta=meta)


def build_gl(r: int, s: int) -> SuperAlgebra:
    """gl(r|s) on matrix units, row-major."""
    if r < 0 or s < 0 or r + s < 1:
        raise UsageError("gl(r|s) needs r, s >= 0 and r + s >= 1")
    n = r + s
    mats, labels = [], []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            mats.append({(i, j): ONE})
            labels.append(_e(i, j))
    a = _matrix_algebra(f"gl({r}|{s})", r, n, mats, labels, 0, ("gl", r, s))
    a.meta["cartan"] = [(_e(i, i), a.basis(_e(i, i)).coeffs) for i in range(1, n + 1)]
    return a


def _sl_basis(r: int, s: int) -> tuple[list[Mat], list[str], int]:
    n = r + s
    mats, labels = [], []
    for j in range(1, s + 1):
        mats.append(_mk((1, 1, 1), (1, r + j, r + j)))
    for i in range(2, r + 1):
        mats.append(_mk((1, 1, 1), (-1, i, i)))
    h = len(mats)
    even = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if i != j and unit_parity(i, j, r) == EVEN]
    odd = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if unit_parity(i, j, r) == ODD]
    for i, j in even + odd:
        mats.append({(i, j): ONE})
    labels = [matrix_label(m) for m in mats]
    return mats, labels, h


def build_sl(r: int, s: int) -> SuperAlgebra:
    """Supertrace-zero part of gl(r|s)."""
    if r < 1 or s < 1:
        raise UsageError("sl(r|s) here needs r, s >= 1")
    mats, labels, h = _sl_basis(r, s)
    return _matrix_algebra(f"sl({r}|{s})", r, r + s, mats, labels, h, ("sl", r, s))


def _identity(n: int) -> Mat:
    return {(i, i): ONE for i in range(1, n + 1)}


def _quotient_by_identity(a: SuperAlgebra, name: str, family: tuple) -> SuperAlgebra:
    mats = a.meta["matrices"]
    ident = _identity(a.meta["size"])
    keys = sorted({k for m in mats for k in m} | set(ident))
    cmap = CoordinateMap([[m.get(k, ZERO) for k in keys] for m in mats], len(keys))
    coords = cmap.coords([ident.get(k, ZERO) for k in keys])
    if coords is None:
        raise StructuralError(f"identity matrix is not in {a.name}")
    center = Subspace.span([coords], a.dim)
    qm = quotient_by_ideal(a, center, name=name, family=family)
    q = qm.quotient
    keep = set(qm.section)
    cartan_parent = {lab for lab, _ in a.meta["cartan"]}
    q.meta.update(
        kind="classical",
        block=a.meta["block"],
        size=a.meta["size"],
        matrices=[mats[i] for i in qm.section],
        cartan=[(lab, q.basis(lab).coeffs) for lab in q.labels if lab in cartan_parent],
        center_quotient=True,
        parent=a,
        quotient_map=qm,
    )
    assert all(a.index(lab) in keep for lab, _ in q.meta["cartan"])
    return q


def build_A(m: int, n: int) -> SuperAlgebra:
    """A(m, n) = sl(m+1|n+1), divided by the identity when m == n."""
    if m < 0 or n < 0 or (m == n == 0):
        raise UsageError("A(m,n) needs m, n >= 0, not both 0")
    a = build_sl(m + 1, n + 1)
    if m != n:
        a.name = f"A({m},{n})"
        a.family = ("A", m, n)
        return a
    return _quotient_by_identity(a, f"A({m},{n})", ("A", m, n))


# ---------------------------------------------------------------------------
# orthosymplectic
# ---------------------------------------------------------------------------

def osp_form(M: int, N2: int) -> dict[tuple[int, int], int]:
    """Even block: anti-diagonal ones.  Odd block: anti-diagonal, +1 above, -1 below."""
    if N2 % 2:
        raise UsageError("odd block of osp must have even size")
    N = N2 // 2
    B = {}
    for i in range(1, M + 1):
        B[(i, M + 1 - i)] = 1
    for i in range(1, N2 + 1):
        B[(M + i, M + N2 + 1 - i)] = 1 if i <= N else -1
    return B


def build_osp(M: int, N2: int, name: str | None = None, family: tuple | None = None) -> SuperAlgebra:
    """osp(M|N2): matrices X with B(Xu, v) + (-1)^{|X||u|} B(u, Xv) = 0."""
    if M < 1 or N2 < 2 or N2 % 2:
        raise UsageError("osp(M|2N) needs M >= 1 and N >= 1")
    size = M + N2
    B = osp_form(M, N2)
    Brows: dict[int, list[tuple[int, int]]] = {}
    for (a, b), v in B.items():
        Brows.setdefault(a, []).append((b, v))
    blk = lambda i: 0 if i <= M else 1  # noqa: E731

    # standard Cartan: diagonal, opposite entries on paired indices
    cartan: list[Mat] = []
    for i in range(1, M // 2 + 1):
        cartan.append(_mk((1, i, i), (-1, M + 1 - i, M + 1 - i)))
    for i in range(1, N2 // 2 + 1):
        cartan.append(_mk((1, M + i, M + i), (-1, size + 1 - i, size + 1 - i)))
    lam = [[m.get((t, t), ZERO) for t in range(1, size + 1)] for m in cartan]

    def weight(i, j):
        return tuple(l[i - 1] - l[j - 1] for l in lam)

    def conditions(cols: list[tuple[int, int]], p: int) -> Matrix:
        col = {k: n for n, k in enumerate(cols)}
        rows = []
        for a in range(1, size + 1):
            for b in range(1, size + 1):
                row = [ZERO] * len(cols)
                # sum_c X_ca B_cb
                for c in range(1, size + 1):
                    v = B.get((c, b))
                    if v and (c, a) in col:
                        row[col[(c, a)]] += v
                sgn = -1 if (p and blk(a)) else 1
                for c, v in Brows.get(a, ()):
                    if (c, b) in col:
                        row[col[(c, b)]] += sgn * v
                if any(row):
                    rows.append(row)
        return Matrix.from_rows(rows, len(cols)) if rows else Matrix((), len(cols))

    groups: dict[tuple[int, tuple], list[tuple[int, int]]] = {}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            p = int(blk(i) != blk(j))
            groups.setdefault((p, weight(i, j)), []).append((i, j))

    zero_w = tuple(ZERO for _ in lam)
    roots: dict[int, list[Mat]] = {EVEN: [], ODD: []}
    for (p, w), cols in groups.items():
        sol = nullspace(conditions(cols, p))
        if not sol:
            continue
        if p == EVEN and w == zero_w:
            if len(sol) != len(cartan):
                raise StructuralError(f"osp({M}|{N2}): zero-weight space is not the diagonal torus")
            continue
        red = Subspace.span(sol, len(cols))
        for row in red.basis.rows:
            roots[p].append({cols[t]: c for t, c in enumerate(row) if c})
    lead = lambda m: min(m)  # noqa: E731
    mats = cartan + sorted(roots[EVEN], key=lead) + sorted(roots[ODD], key=lead)
    labels = [matrix_label(m) for m in mats]
    a = _matrix_algebra(name or f"osp({M}|{N2})", M, size, mats, labels, len(cartan), family)
    a.meta["form"] = B
    return a


def osp_dimension(M: int, N2: int) -> int:
    N = N2 // 2
    return M * (M - 1) // 2 + N * (2 * N + 1) + M * N2


def build_B(m: int, n: int) -> SuperAlgebra:
    if m < 0 or n < 1:
        raise UsageError("B(m,n) needs m >= 0, n > 0")
    return build_osp(2 * m + 1, 2 * n, f"B({m},{n})", ("B", m, n))


def build_C(n: int) -> SuperAlgebra:
    if n < 2:
        raise UsageError("C(n) needs n >= 2")
    return build_osp(2, 2 * (n - 1), f"C({n})", ("C", n))


def build_D(m: int, n: int) -> SuperAlgebra:
    if m < 2 or n < 1:
        raise UsageError("D(m,n) needs m >= 2, n > 0")
    return build_osp(2 * m, 2 * n, f"D({m},{n})", ("D", m, n))


# ---------------------------------------------------------------------------
# strange families
# ---------------------------------------------------------------------------

def build_P(n: int) -> SuperAlgebra:
    """P(n): block matrices (a b; c -a^T), tr a = 0, b symmetric, c skew."""
    if n < 2:
        raise UsageError("P(n) needs n >= 2")
    N = n + 1
    mats: list[Mat] = []
    for j in range(1, N):
        mats.append(_mk((1, 1, 1), (-1, 1 + j, 1 + j), (-1, N + 1, N + 1), (1, N + 1 + j, N + 1 + j)))
    h = len(mats)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                mats.append(_mk((1, i, j), (-1, N + j, N + i)))
    labels = [matrix_label(m) for m in mats]
    # b symmetric, then c skew-symmetric
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            if i == j:
                m = _mk((1, i, N + i))
                lab = _e(i, N + i)
            else:
                m = _mk((1, i, N + j), (1, j, N + i))
                lab = f"{_e(i, N + j)}+{_e(j, N + i)}"
            mats.append(m)
            labels.append(lab)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            mats.append(_mk((1, N + i, j), (-1, N + j, i)))
            labels.append(f"{_e(N + i, j)}-{_e(N + j, i)}")
    a = _matrix_algebra(f"P({n})", N, 2 * N, mats, labels, h, ("P", n))
    return a


def build_Q_tilde(n: int) -> SuperAlgebra:
    """Matrices (a b; b a) with tr b = 0 inside gl(n+1|n+1)."""
    if n < 1:
        raise UsageError("Q~(n) needs n >= 1")
    N = n + 1
    mats: list[Mat] = []
    labels: list[str] = []
    for i in range(1, N + 1):
        mats.append(_mk((1, i, i), (1, N + i, N + i)))
        labels.append(f"{_e(i, i)}+{_e(N + i, N + i)}")
    h = len(mats)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i != j:
                mats.append(_mk((1, i, j), (1, N + i, N + j)))
                labels.append(f"{_e(i, j)}+{_e(N + i, N + j)}")
    for i in range(2, N + 1):
        mats.append(_mk((1, 1, N + 1), (1, N + 1, 1), (-1, i, N + i), (-1, N + i, i)))
        labels.append(f"{_e(1, N + 1)}+{_e(N + 1, 1)}-{_e(i, N + i)}-{_e(N + i, i)}")
    for j in range(1, N + 1):
        for k in range(1, N + 1):
            if j != k:
                mats.append(_mk((1, j, N + k), (1, N + j, k)))
                labels.append(f"{_e(j, N + k)}+{_e(N + j, k)}")
    return _matrix_algebra(f"Q~({n})", N, 2 * N, mats, labels, h, ("Q~", n))


def build_Q(n: int) -> SuperAlgebra:
    """Q(n) = Q~(n) modulo the identity matrix."""
    if n < 2:
        raise UsageError("Q(n) needs n >= 2")
    return _quotient_by_identity(build_Q_tilde(n), f"Q({n})", ("Q", n))


def q_zero_sum(a: SuperAlgebra) -> "object":
    """Sum of the odd zero-weight basis vectors of Q(n) (the element called Z in the proof)."""
    n = a.family[1]
    N = n + 1
    spec = {f"{_e(1, N + 1)}+{_e(N + 1, 1)}-{_e(i, N + i)}-{_e(N + i, i)}": 1 for i in range(2, N + 1)}
    return a.element(spec)
