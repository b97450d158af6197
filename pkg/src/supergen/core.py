"""Finite-dimensional Lie superalgebras given by structure constants.

A ``SuperAlgebra`` stores ``[b_i, b_j]`` for ``i <= j`` only; the ``(j, i)``
entry follows from super anticommutativity.  Closure computations
(``generated_subalgebra``, ``generated_ideal``, ``generated_submodule``) run on
an integer-scaled copy of the table through ``exact.IntEchelon``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .exact import (
    ZERO,
    CoordinateMap,
    DimensionError,
    IntEchelon,
    Subspace,
    frac,
    primitive,
    to_int_vector,
    unit_vec,
    zero_vec,
)

EVEN, ODD = 0, 1


class UsageError(ValueError):
    """Caller violated an operation's precondition."""


class StructuralError(RuntimeError):
    """A construction failed one of its structural invariants."""


Entry = tuple[tuple[int, Fraction], ...]


def _sign(p: int, q: int) -> int:
    return -1 if (p & q) else 1


class SuperAlgebra:
    """Z2-graded algebra with a named basis and bracket structure constants.

    ``table`` maps ``(i, j)`` with ``i <= j`` to ``{k: c}`` meaning
    ``[b_i, b_j] = sum_k c b_k``.  ``meta`` carries builder data (standard
    Cartan frame, layer info, realization) and is not part of the algebra's
    identity.
    """

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        parity: Sequence[int],
        table: Mapping[tuple[int, int], Mapping[int, object] | Iterable[tuple[int, object]]],
        z_degree: Sequence[int] | None = None,
        *,
        family: tuple | None = None,
        meta: dict | None = None,
    ):
        self.name = name
        self.labels = tuple(labels)
        self.parity = tuple(int(p) % 2 for p in parity)
        self.dim = len(self.labels)
        if len(self.parity) != self.dim:
            raise DimensionError("parity list does not match the basis")
        if len(set(self.labels)) != self.dim:
            raise UsageError("basis labels must be distinct")
        self.z_degree = tuple(z_degree) if z_degree is not None else None
        if self.z_degree is not None and len(self.z_degree) != self.dim:
            raise DimensionError("z_degree list does not match the basis")
        self.family = family
        self.meta = dict(meta or {})
        self._index = {lab: i for i, lab in enumerate(self.labels)}

        upper: dict[tuple[int, int], Entry] = {}
        for (i, j), val in table.items():
            if not (0 <= i <= j < self.dim):
                raise UsageError(f"table key {(i, j)} must satisfy 0 <= i <= j < dim")
            items = val.items() if isinstance(val, Mapping) else val
            acc: dict[int, Fraction] = {}
            for k, c in items:
                if not 0 <= k < self.dim:
                    raise DimensionError(f"structure constant index {k} out of range")
                acc[k] = acc.get(k, ZERO) + frac(c)
            ent = tuple(sorted((k, c) for k, c in acc.items() if c))
            if ent:
                upper[(i, j)] = ent
        self._upper = upper

        d = self.dim
        full: list[list[Entry]] = [[() for _ in range(d)] for _ in range(d)]
        for (i, j), ent in upper.items():
            full[i][j] = ent
            if i != j:
                s = -_sign(self.parity[i], self.parity[j])
                full[j][i] = tuple((k, s * c) for k, c in ent)
        self._full = full

        den = 1
        for ent in upper.values():
            for _, c in ent:
                den = den * c.denominator // gcd(den, c.denominator)
        self._scale = den
        self._itable = [[tuple((k, int(c * den)) for k, c in e) for e in row] for row in full]

    # -- basis access -------------------------------------------------------
    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UsageError(f"{self.name} has no basis element {label!r}") from None

    def basis(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.index(i)
        return Element(self, unit_vec(self.dim, i))

    def element(self, spec: Mapping[str | int, object] | Sequence | None = None) -> "Element":
        """Build an element from ``{label_or_index: coeff}`` or a full coefficient list."""
        if spec is None:
            return self.zero()
        if isinstance(spec, Mapping):
            c = [ZERO] * self.dim
            for key, x in spec.items():
                i = self.index(key) if isinstance(key, str) else key
                c[i] += frac(x)
            return Element(self, tuple(c))
        if len(spec) != self.dim:
            raise DimensionError(f"expected {self.dim} coefficients, got {len(spec)}")
        return Element(self, tuple(frac(x) for x in spec))

    def zero(self) -> "Element":
        return Element(self, zero_vec(self.dim))

    @property
    def even_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == EVEN)

    @property
    def odd_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parity) if p == ODD)

    def layer(self, k: int) -> tuple[int, ...]:
        if self.z_degree is None:
            raise UsageError(f"{self.name} carries no Z-grading")
        return tuple(i for i, z in enumerate(self.z_degree) if z == k)

    def entry(self, i: int, j: int) -> Entry:
        """``[b_i, b_j]`` as ``((k, c), ...)``."""
        return self._full[i][j]

    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Copy of the stored upper-triangular table."""
        return {key: dict(ent) for key, ent in self._upper.items()}

    def with_table(self, table, name: str | None = None) -> "SuperAlgebra":
        return SuperAlgebra(name or self.name, self.labels, self.parity, table, self.z_degree,
                            family=self.family, meta=self.meta)

    # -- brackets -----------------------------------------------------------
    def _bracket(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        T = self._full
        vs = [(j, y) for j, y in enumerate(v) if y]
        for i, x in enumerate(u):
            if not x:
                continue
            Ti = T[i]
            for j, y in vs:
                e = Ti[j]
                if e:
                    c = x * y
                    for k, s in e:
                        out[k] += c * s
        return tuple(out)

    def _ibracket(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        T = self._itable
        vs = list(v.items())
        for i, x in u.items():
            Ti = T[i]
            for j, y in vs:
                e = Ti[j]
                if e:
                    c = x * y
                    for k, s in e:
                        out[k] = out.get(k, 0) + c * s
        return {k: x for k, x in out.items() if x}

    def _iad_basis(self, i: int, v: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        Ti = self._itable[i]
        for j, y in v.items():
            for k, s in Ti[j]:
                out[k] = out.get(k, 0) + y * s
        return {k: x for k, x in out.items() if x}

    def _split_parity(self, v: dict[int, int]) -> list[dict[int, int]]:
        ev = {k: x for k, x in v.items() if self.parity[k] == EVEN}
        od = {k: x for k, x in v.items() if self.parity[k] == ODD}
        return [w for w in (ev, od) if w]

    def __repr__(self) -> str:
        return f"SuperAlgebra({self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Element:
    algebra: SuperAlgebra
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise DimensionError(f"element has {len(self.coeffs)} coefficients, algebra dim {self.algebra.dim}")

    def _same(self, other: "Element"):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            raise UsageError("elements belong to different algebras")

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and other.algebra is self.algebra and other.coeffs == self.coeffs

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.coeffs))

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, c) -> "Element":
        c = frac(c)
        return Element(self.algebra, tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def part(self, parity: int) -> "Element":
        par = self.algebra.parity
        return Element(self.algebra, tuple(c if par[i] == parity else ZERO for i, c in enumerate(self.coeffs)))

    def even(self) -> "Element":
        return self.part(EVEN)

    def odd(self) -> "Element":
        return self.part(ODD)

    @property
    def parity(self) -> int | None:
        """Parity of a homogeneous nonzero element, else None."""
        ps = {self.algebra.parity[i] for i in self.support}
        return ps.pop() if len(ps) == 1 else None

    def bracket(self, other: "Element") -> "Element":
        return bracket(self, other)

    def terms(self) -> list[tuple[str, Fraction]]:
        return [(self.algebra.labels[i], c) for i, c in enumerate(self.coeffs) if c]

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for lab, c in self.terms():
            if c == 1:
                parts.append(f"+ {lab}")
            elif c == -1:
                parts.append(f"- {lab}")
            elif c < 0:
                parts.append(f"- {-c}*{lab}")
            else:
                parts.append(f"+ {c}*{lab}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}: {self})"


def bracket(x: Element, y: Element) -> Element:
    """Bilinear extension of the structure table."""
    x._same(y)
    return Element(x.algebra, x.algebra._bracket(x.coeffs, y.coeffs))


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    kind: str | None = None
    triple: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_axioms(a: SuperAlgebra) -> AxiomReport:
    """Anticommutativity, parity compatibility and the super Jacobi identity.

    Jacobi is evaluated on index triples ``i <= j <= k``; given
    anticommutativity, the identity for any permutation of a triple is
    ± the identity for the sorted triple.
    """
    par = a.parity
    for i in range(a.dim):
        if par[i] == EVEN and a.entry(i, i):
            return AxiomReport(False, "anticommutativity", (i, i),
                               f"[{a.labels[i]}, {a.labels[i]}] != 0 for an even basis element")
    for (i, j), ent in sorted(a._upper.items()):
        for k, _ in ent:
            if par[k] != par[i] ^ par[j]:
                return AxiomReport(False, "parity", (i, j, k),
                                   f"[{a.labels[i]}, {a.labels[j]}] has a component on {a.labels[k]}")
    T = a._itable
    d = a.dim

    def dbl(i: int, ent) -> dict[int, int]:
        out: dict[int, int] = {}
        Ti = T[i]
        for m, c in ent:
            for k, s in Ti[m]:
                out[k] = out.get(k, 0) + c * s
        return out

    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                acc: dict[int, int] = {}
                for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = T[y][z]
                    if not inner:
                        continue
                    s = _sign(par[x], par[z])
                    for m, c in dbl(x, inner).items():
                        acc[m] = acc.get(m, 0) + s * c
                if any(acc.values()):
                    labs = (a.labels[i], a.labels[j], a.labels[k])
                    return AxiomReport(False, "jacobi", (i, j, k), f"super Jacobi fails on {labs}")
    return AxiomReport(True)


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClosureTrace:
    """Result of a fixpoint closure.

    ``dims`` starts with the dimension of the seed span, has one entry per
    round, and ends with the repeated (stable) dimension.
    """

    subspace: Subspace
    dims: tuple[int, ...]
    rounds: int

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _seed_vectors(a: SuperAlgebra, seeds: Iterable[Element]) -> list[dict[int, int]]:
    out = []
    for s in seeds:
        if s.algebra is not a:
            raise UsageError("seeds belong to different algebras")
        out.append(to_int_vector(s.coeffs))
    return out


def _fixpoint(
    a: SuperAlgebra,
    seeds: list[dict[int, int]],
    step: Callable[[dict[int, int], list[dict[int, int]]], Iterator[dict[int, int]]],
    graded: bool,
) -> ClosureTrace:
    d = a.dim
    ech = IntEchelon(d)
    rows: list[dict[int, int]] = []
    new: list[dict[int, int]] = []

    def push(v: dict[int, int], sink: list):
        parts = a._split_parity(v) if graded else [v]
        for w in parts:
            r = ech.add(w)
            if r is not None:
                rows.append(r)
                sink.append(r)

    for s in seeds:
        if s:
            push(s, new)
    dims = [ech.dim]
    rounds = 0
    while new and ech.dim < d:
        snapshot = list(rows)
        added: list[dict[int, int]] = []
        for u in new:
            for w in step(u, snapshot):
                if w:
                    push(w, added)
                if ech.dim == d:
                    break
            if ech.dim == d:
                break
        dims.append(ech.dim)
        if added:
            rounds += 1
        new = added
    if dims[-1] == d or len(dims) == 1:
        # full space (or nothing to do): the next round cannot enlarge
        dims.append(dims[-1])
    return ClosureTrace(ech.to_subspace(), tuple(dims), rounds)


def closure(seeds: Sequence[Element], graded: bool = False) -> ClosureTrace:
    """Bracket closure of ``span(seeds)`` with its round-by-round trace.

    Each round brackets the rows added in the previous round against every
    row present at the start of the round.  With ``graded=True`` every new
    vector is split into even and odd parts first, which yields the least
    Z2-graded subalgebra containing the seeds.
    """
    seeds = list(seeds)
    if not seeds:
        raise UsageError("closure needs at least one seed")
    a = seeds[0].algebra

    def step(u, snapshot):
        for v in snapshot:
            yield a._ibracket(u, v)

    return _fixpoint(a, _seed_vectors(a, seeds), step, graded)


def generated_subalgebra(seeds: Sequence[Element], graded: bool = False) -> Subspace:
    return closure(seeds, graded).subspace


def generated_ideal(seeds: Sequence[Element]) -> Subspace:
    """Least subspace containing the seeds and stable under ad of every basis element."""
    seeds = list(seeds)
    if not seeds:
        raise UsageError("ideal generation needs at least one seed")
    a = seeds[0].algebra

    def step(u, snapshot):
        for i in range(a.dim):
            yield a._iad_basis(i, u)

    return _fixpoint(a, _seed_vectors(a, seeds), step, graded=False).subspace


def generated_submodule(acting: Sequence[Element], seeds: Sequence[Element]) -> Subspace:
    """Least subspace containing the seeds and stable under ad(x) for x in ``acting``."""
    seeds = list(seeds)
    if not seeds:
        raise UsageError("submodule generation needs at least one seed")
    a = seeds[0].algebra
    ops = _seed_vectors(a, acting)

    def step(u, snapshot):
        for x in ops:
            yield a._ibracket(x, u)

    return _fixpoint(a, _seed_vectors(a, seeds), step, graded=False).subspace


def bracket_span(a: SuperAlgebra, left: Iterable[int], right: Iterable[int]) -> Subspace:
    """Span of ``[b_i, b_j]`` over ``i in left``, ``j in right``."""
    ech = IntEchelon(a.dim)
    right = list(right)
    for i in left:
        for j in right:
            ent = a._itable[i][j]
            if ent:
                ech.add(primitive(dict(ent)))
    return ech.to_subspace()


def even_part(a: SuperAlgebra) -> Subspace:
    return Subspace.coordinate(a.even_indices, a.dim)


def odd_part(a: SuperAlgebra) -> Subspace:
    return Subspace.coordinate(a.odd_indices, a.dim)


def elements_of(a: SuperAlgebra, s: Subspace) -> list[Element]:
    return [Element(a, r) for r in s.basis.rows]


def is_subalgebra(a: SuperAlgebra, s: Subspace) -> bool:
    rows = s.basis.rows
    for x in range(len(rows)):
        for y in range(x, len(rows)):
            if not s.contains(a._bracket(rows[x], rows[y])):
                return False
    return True


def is_ideal(a: SuperAlgebra, k: Subspace) -> bool:
    for r in k.basis.rows:
        for i in range(a.dim):
            if not k.contains(a._bracket(unit_vec(a.dim, i), r)):
                return False
    return True


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientMap:
    parent: SuperAlgebra
    kernel: Subspace
    section: tuple[int, ...]
    quotient: SuperAlgebra
    _coords: CoordinateMap = field(repr=False, compare=False)

    def project(self, x: Element) -> Element:
        if x.algebra is not self.parent:
            raise UsageError("element is not in the parent algebra")
        c = self._coords.coords(x.coeffs)
        return Element(self.quotient, c[: len(self.section)])

    def lift(self, y: Element) -> Element:
        if y.algebra is not self.quotient:
            raise UsageError("element is not in the quotient algebra")
        c = [ZERO] * self.parent.dim
        for i, x in zip(self.section, y.coeffs):
            c[i] = x
        return Element(self.parent, tuple(c))


def quotient_by_ideal(a: SuperAlgebra, k: Subspace, name: str | None = None,
                      family: tuple | None = None, meta: dict | None = None) -> QuotientMap:
    """Quotient ``a / k`` on the lexicographically first complement of standard basis elements."""
    if k.ambient_dim != a.dim:
        raise DimensionError("kernel lives in a different ambient space")
    if not is_ideal(a, k):
        raise UsageError("subspace is not an ideal")
    for r in k.basis.rows:
        ev = tuple(x if a.parity[i] == EVEN else ZERO for i, x in enumerate(r))
        if not k.contains(ev):
            raise UsageError("ideal is not Z2-graded; quotient parity would be ill-defined")
    ech = IntEchelon(a.dim)
    for r in k.basis.rows:
        ech.add(to_int_vector(r))
    section = []
    for i in range(a.dim):
        if ech.add({i: 1}) is not None:
            section.append(i)
    q = len(section)
    cmap = CoordinateMap([unit_vec(a.dim, i) for i in section] + list(k.basis.rows), a.dim)
    table = {}
    for x in range(q):
        for y in range(x, q):
            ent = a.entry(section[x], section[y])
            if not ent:
                continue
            v = [ZERO] * a.dim
            for m, c in ent:
                v[m] = c
            coords = cmap.coords(v)
            table[(x, y)] = {t: c for t, c in enumerate(coords[:q]) if c}
    zq = [a.z_degree[i] for i in section] if a.z_degree is not None else None
    quot = SuperAlgebra(name or f"{a.name}/ideal", [a.labels[i] for i in section],
                        [a.parity[i] for i in section], table, zq, family=family, meta=meta)
    return QuotientMap(a, k, tuple(section), quot, cmap)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def to_json(a: SuperAlgebra) -> dict:
    entries = []
    for (i, j), ent in sorted(a._upper.items()):
        entries.append([i, j, [[k, c.numerator, c.denominator] for k, c in ent]])
    doc = {
        "name": a.name,
        "dim": a.dim,
        "parity": list(a.parity),
        "labels": list(a.labels),
        "entries": entries,
    }
    if a.z_degree is not None:
        doc["z_degree"] = list(a.z_degree)
    return doc


def from_json(doc: Mapping) -> SuperAlgebra:
    """Rebuild an algebra from ``to_json`` output; all axioms are re-checked."""
    try:
        dim = int(doc["dim"])
        labels, parity = list(doc["labels"]), [int(p) for p in doc["parity"]]
        raw = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed structure-table document: {exc}") from None
    if len(labels) != dim or len(parity) != dim:
        raise UsageError("labels/parity length does not match dim")
    if any(p not in (0, 1) for p in parity):
        raise UsageError("parity values must be 0 or 1")
    table = {}
    for i, j, terms in raw:
        if i > j:
            raise UsageError(f"entry ({i}, {j}) violates i <= j")
        if (i, j) in table:
            raise UsageError(f"duplicate entry ({i}, {j})")
        table[(i, j)] = [(k, Fraction(num, den)) for k, num, den in terms]
    a = SuperAlgebra(doc.get("name", "imported"), labels, parity, table, doc.get("z_degree"))
    rep = check_axioms(a)
    if not rep.ok:
        raise StructuralError(f"imported table fails {rep.kind}: {rep.detail}")
    return a
