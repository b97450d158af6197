"""Weight decompositions relative to a diagonal Cartan frame.

A ``CartanFrame`` is a tuple of commuting even elements acting diagonally on
the basis in the adjoint representation; a weight is the tuple of
eigenvalues, one per frame element.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence

from .core import EVEN, Element, StructuralError, SuperAlgebra, UsageError, generated_submodule
from .exact import ONE, ZERO, Matrix, Subspace, frac, nullspace, solve

Weight = tuple[Fraction, ...]


def weight_str(w: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in w) + ")"


@dataclass(frozen=True, eq=False)
class CartanFrame:
    """Commuting even elements acting diagonally on the standard basis."""

    algebra: SuperAlgebra
    elements: tuple[Element, ...]
    labels: tuple[str, ...] = ()
    basis_weights: tuple[Weight, ...] = field(init=False, repr=False)

    def __post_init__(self):
        a = self.algebra
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(h) for h in self.elements))
        for h in self.elements:
            if h.algebra is not a:
                raise UsageError("frame element belongs to another algebra")
            if h.parity != EVEN:
                raise UsageError(f"frame element {h} is not even")
        for s, h in enumerate(self.elements):
            for g in self.elements[s + 1:]:
                if not h.bracket(g).is_zero():
                    raise UsageError(f"frame elements {h} and {g} do not commute")
        ws = []
        for k in range(a.dim):
            w = []
            for h in self.elements:
                br = h.bracket(a.basis(k)).coeffs
                off = [t for t, c in enumerate(br) if c and t != k]
                if off:
                    raise StructuralError(
                        f"ad({h}) is not diagonal on {a.labels[k]}")
                w.append(br[k])
            ws.append(tuple(w))
        object.__setattr__(self, "basis_weights", tuple(ws))

    @property
    def rank(self) -> int:
        return len(self.elements)

    def weight_of(self, i: int | str) -> Weight:
        if isinstance(i, str):
            i = self.algebra.index(i)
        return self.basis_weights[i]

    def weight_of_element(self, x: Element) -> Weight | None:
        """Common weight of the support of ``x``; ``None`` if ``x`` is not a weight vector."""
        ws = {self.basis_weights[i] for i in x.support}
        if len(ws) == 1:
            return ws.pop()
        return None

    def element(self, coords: Sequence) -> Element:
        """``sum coords[s] * h_s``."""
        if len(coords) != self.rank:
            raise UsageError(f"expected {self.rank} frame coordinates")
        x = self.algebra.zero()
        for c, h in zip(coords, self.elements):
            if c:
                x = x + h * frac(c)
        return x

    def span(self) -> Subspace:
        return Subspace.span([h.coeffs for h in self.elements], self.algebra.dim)


def evaluate(weight: Sequence[Fraction], coords: Sequence) -> Fraction:
    return sum((w * frac(c) for w, c in zip(weight, coords)), ZERO)


def standard_cartan(a: SuperAlgebra) -> CartanFrame:
    frame = a.meta.get("cartan")
    if not frame:
        raise UsageError(f"{a.name} carries no standard Cartan frame")
    return CartanFrame(a, tuple(Element(a, tuple(c)) for _, c in frame),
                       tuple(lab for lab, _ in frame))


@dataclass(frozen=True)
class WeightDecomposition:
    frame: CartanFrame
    members: dict  # Weight -> tuple of basis indices
    parity: int | None = None
    degree: int | None = None

    @property
    def weights(self) -> list[Weight]:
        return sorted(self.members)

    @property
    def roots(self) -> list[Weight]:
        """Nonzero weights."""
        return [w for w in self.weights if any(w)]

    def multiplicity(self, w: Weight) -> int:
        return len(self.members.get(tuple(w), ()))

    def space(self, w: Weight) -> Subspace:
        return Subspace.coordinate(self.members.get(tuple(w), ()), self.frame.algebra.dim)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(i for idx in self.members.values() for i in idx))

    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.members.values())

    def component(self, x: Element, w: Weight) -> Element:
        idx = set(self.members.get(tuple(w), ()))
        return Element(x.algebra, tuple(c if i in idx else ZERO for i, c in enumerate(x.coeffs)))

    @property
    def spaces(self) -> dict:
        return {w: self.space(w) for w in self.weights}

    def to_json(self) -> dict:
        """``{frame_labels, entries: [{weight, parity, z_degree?, basis_labels}]}``."""
        a = self.frame.algebra
        entries = []
        for w in self.weights:
            groups: dict[tuple, list[str]] = {}
            for i in self.members[w]:
                key = (a.parity[i], a.z_degree[i] if a.z_degree is not None else None)
                groups.setdefault(key, []).append(a.labels[i])
            for (p, z), labs in sorted(groups.items(), key=lambda t: (t[0][0], t[0][1] or 0)):
                e = {"weight": [str(x) for x in w], "parity": p}
                if z is not None:
                    e["z_degree"] = z
                e["basis_labels"] = labs
                entries.append(e)
        return {"frame_labels": list(self.frame.labels), "entries": entries}

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def decompose(frame: CartanFrame, parity: int | None = None, degree: int | None = None,
              indices: Iterable[int] | None = None) -> WeightDecomposition:
    """Group basis indices by weight; optionally restrict by parity or Z-degree."""
    a = frame.algebra
    if degree is not None and a.z_degree is None:
        raise UsageError(f"{a.name} has no Z-grading")
    pool = range(a.dim) if indices is None else indices
    members: dict[Weight, list[int]] = {}
    for i in pool:
        if parity is not None and a.parity[i] != parity:
            continue
        if degree is not None and a.z_degree[i] != degree:
            continue
        members.setdefault(frame.basis_weights[i], []).append(i)
    return WeightDecomposition(frame, {w: tuple(v) for w, v in members.items()}, parity, degree)


# ---------------------------------------------------------------------------
# separating elements
# ---------------------------------------------------------------------------

def _box(rank: int) -> Iterator[tuple[int, ...]]:
    """Integer tuples ordered by max-norm, then lexicographically."""
    if rank == 0:
        yield ()
        return
    r = 0
    while True:
        for t in product(range(-r, r + 1), repeat=rank):
            if max(abs(x) for x in t) == r:
                yield t
        r += 1


def separates(funcs: Sequence[Weight], coords: Sequence) -> bool:
    """Distinct values on distinct functionals, nonzero on nonzero ones."""
    vals = [evaluate(f, coords) for f in funcs]
    for f, v in zip(funcs, vals):
        if any(f) and v == 0:
            return False
    seen: dict[Fraction, Weight] = {}
    for f, v in zip(funcs, vals):
        if v in seen and seen[v] != tuple(f):
            return False
        seen[v] = tuple(f)
    return True


def omega_candidates(frame: CartanFrame, funcs: Iterable[Weight]) -> Iterator[tuple[int, ...]]:
    """Every separating integer coordinate tuple, in a fixed deterministic order."""
    fs = sorted(set(tuple(f) for f in funcs))
    for t in _box(frame.rank):
        if separates(fs, t):
            yield t


def omega_coords(frame: CartanFrame, funcs: Iterable[Weight]) -> tuple[int, ...]:
    fs = sorted(set(tuple(f) for f in funcs))
    if not frame.rank:
        if any(any(f) for f in fs) or len(fs) > 1:
            raise UsageError("no Cartan coordinates to separate weights with")
        return ()
    return next(omega_candidates(frame, fs))


def omega_element(frame: CartanFrame, funcs: Iterable[Weight]) -> Element:
    """The first separating element: pairwise-distinct values, nonzero on nonzero functionals."""
    return frame.element(omega_coords(frame, funcs))


# ---------------------------------------------------------------------------
# eigencomponent extraction
# ---------------------------------------------------------------------------

def vandermonde_extract(h: Element, x: Element, eigenvalues: Sequence) -> list[Element]:
    """Split ``x`` into ad(h)-eigencomponents using only ``x, [h,x], [h,[h,x]], ...``.

    ``eigenvalues`` must be distinct and must cover every eigenvalue present in
    ``x``.  The components come back in the order of ``eigenvalues``.
    """
    lams = [frac(v) for v in eigenvalues]
    k = len(lams)
    if len(set(lams)) != k:
        raise UsageError("eigenvalues must be distinct")
    iterates = [x]
    for _ in range(k - 1):
        iterates.append(h.bracket(iterates[-1]))
    # iterates[p] = sum_j lam_j^p x_j ; invert the Vandermonde system
    V = Matrix.from_rows([[lam ** p for lam in lams] for p in range(k)], k)
    a = x.algebra
    comps = [[ZERO] * a.dim for _ in range(k)]
    for coord in range(a.dim):
        rhs = [it.coeffs[coord] for it in iterates]
        if not any(rhs):
            continue
        sol = solve(V, rhs)
        if sol is None:
            raise StructuralError("Vandermonde system is singular")
        for j in range(k):
            comps[j][coord] = sol[j]
    out = [Element(a, tuple(c)) for c in comps]
    if any(h.bracket(c) != c * lam for c, lam in zip(out, lams)):
        raise UsageError("x has eigencomponents outside the supplied eigenvalues")
    return out


# ---------------------------------------------------------------------------
# Cartan recovery and module structure
# ---------------------------------------------------------------------------

def root_bracket_span(frame: CartanFrame, indices: Iterable[int] | None = None) -> Subspace:
    """Span of ``[L^a, L^-a]`` over the roots of the given (default: even) part."""
    a = frame.algebra
    dec = decompose(frame, parity=None if indices is not None else EVEN, indices=indices)
    vecs = []
    for w in dec.roots:
        neg = tuple(-x for x in w)
        if neg not in dec.members:
            continue
        for i in dec.members[w]:
            for j in dec.members[neg]:
                br = a.basis(i).bracket(a.basis(j))
                if not br.is_zero():
                    vecs.append(br.coeffs)
    return Subspace.span(vecs, a.dim)


def cartan_recovered(frame: CartanFrame, indices: Iterable[int] | None = None) -> bool:
    """Whether the frame span lies in the span of ``[L^a, L^-a]``."""
    return frame.span() <= root_bracket_span(frame, indices)


def positive(w: Weight) -> bool:
    """Lexicographic positivity."""
    for x in w:
        if x:
            return x > 0
    return False


@dataclass(frozen=True)
class ModuleSplit:
    """Decomposition of a module into submodules generated by primitive vectors."""

    summands: tuple[Subspace, ...]
    highest: tuple[Element, ...]
    complete: bool

    @property
    def count(self) -> int:
        return len(self.summands)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.summands)


def primitive_vectors(frame: CartanFrame, acting: Sequence[int], module: Sequence[int]) -> list[Element]:
    """Vectors of ``module`` killed by every positive-weight element of ``acting``, per weight."""
    a = frame.algebra
    raising = [i for i in acting if positive(frame.basis_weights[i])]
    dec = decompose(frame, indices=module)
    out = []
    for w in sorted(dec.members, reverse=True):
        cols = dec.members[w]
        rows = []
        for e in raising:
            images = [a.basis(e).bracket(a.basis(c)).coeffs for c in cols]
            for k in range(a.dim):
                row = [img[k] for img in images]
                if any(row):
                    rows.append(row)
        if rows:
            sol = nullspace(Matrix.from_rows(rows, len(cols)))
        else:
            sol = [tuple(ONE if t == s else ZERO for t in range(len(cols))) for s in range(len(cols))]
        for v in Subspace.span(sol, len(cols)).basis.rows:
            c = [ZERO] * a.dim
            for t, x in zip(cols, v):
                c[t] = x
            out.append(Element(a, tuple(c)))
    return out


def irreducible_summands(frame: CartanFrame, acting: Sequence[int], module: Sequence[int]) -> ModuleSplit:
    """Split ``module`` (a span of basis vectors stable under ``acting``) into cyclic pieces.

    Each piece is generated by a primitive vector.  ``complete`` says the
    pieces form a direct sum equal to the whole module, which for a
    semisimple even part certifies that each piece is irreducible.
    """
    a = frame.algebra
    mod = Subspace.coordinate(module, a.dim)
    act = [a.basis(i) for i in acting]
    for x in act:
        for m in module:
            if not mod.contains(x.bracket(a.basis(m)).coeffs):
                raise UsageError(f"span is not stable under {x}")
    highs = primitive_vectors(frame, acting, module)
    pieces = [generated_submodule(act, [v]) for v in highs]
    total = Subspace.zero(a.dim)
    for p in pieces:
        total = total + p
    complete = total.dim == mod.dim and sum(p.dim for p in pieces) == mod.dim
    order = sorted(range(len(pieces)), key=lambda t: (min(pieces[t].pivots, default=a.dim), t))
    return ModuleSplit(tuple(pieces[t] for t in order), tuple(highs[t] for t in order), complete)


def subspace_weights(frame: CartanFrame, s: Subspace) -> list[Weight]:
    """Weights ``w`` with ``s`` meeting the weight space of ``w`` nontrivially."""
    dec = decompose(frame)
    return [w for w in dec.weights if (s & dec.space(w)).dim > 0]


def weight_vectors(frame: CartanFrame, s: Subspace) -> list[tuple[Weight, Element]]:
    """A weight-vector basis of a frame-stable subspace."""
    a = frame.algebra
    dec = decompose(frame)
    out = []
    for w in dec.weights:
        for v in (s & dec.space(w)).basis.rows:
            out.append((w, Element(a, v)))
    if len(out) != s.dim:
        raise UsageError("subspace is not stable under the frame")
    return out
