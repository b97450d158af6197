"""One-element generator candidates and closure certificates.

Classical families use ``x + h``: ``x`` collects odd weight vectors and ``h``
is a Cartan element separating the odd weights.  Cartan-type families use
``x_-1 + x_0 + h + x_1`` (plus the split and central terms for W and H(6)).
``certify`` runs the closure fixpoint on the single element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .core import EVEN, ODD, ClosureTrace, Element, StructuralError, SuperAlgebra, UsageError, closure
from .exact import ZERO
from .weights import (
    CartanFrame,
    Weight,
    decompose,
    irreducible_summands,
    omega_candidates,
    omega_coords,
    positive,
    standard_cartan,
    weight_vectors,
)

RECIPES = ("classical-case1", "classical-A11", "classical-P3", "classical-Qn",
           "cartan-single", "cartan-split")


class IngredientSearchError(StructuralError):
    """No choice of standard weight vectors meets the side conditions."""


@dataclass(frozen=True)
class Ingredient:
    role: str
    element: Element
    weight: Weight | None

    def to_json(self) -> dict:
        return {
            "role": self.role,
            "weight": None if self.weight is None else [str(x) for x in self.weight],
            "terms": [[lab, str(c)] for lab, c in self.element.terms()],
        }


@dataclass(frozen=True)
class GeneratorCandidate:
    algebra: SuperAlgebra
    element: Element
    recipe: str
    ingredients: tuple[Ingredient, ...]
    h_coords: tuple[int, ...]
    separated: tuple[Weight, ...] = field(repr=False)
    frame: CartanFrame = field(repr=False)
    conjugator: "Conjugator | None" = field(default=None, repr=False)

    def ingredient(self, role: str) -> Ingredient:
        for ing in self.ingredients:
            if ing.role == role:
                return ing
        raise KeyError(role)

    def with_h(self, coords: Sequence[int]) -> "GeneratorCandidate":
        """Same ingredients with the Cartan summand rebuilt from new frame coordinates."""
        old = self.ingredient("h")
        new = self.frame.element(coords)
        if self.conjugator is not None:
            new = self.conjugator.inverse(new)
        ings = tuple(Ingredient("h", new, old.weight) if i.role == "h" else i
                     for i in self.ingredients)
        return GeneratorCandidate(self.algebra, self.element - old.element + new, self.recipe, ings,
                                  tuple(coords), self.separated, self.frame, self.conjugator)


@dataclass(frozen=True)
class Certificate:
    family: str
    params: tuple[int, ...]
    candidate: GeneratorCandidate
    closure_rounds: int
    dims_per_round: tuple[int, ...]
    final_dim: int
    target_dim: int
    verdict: str
    attempts: int = 1
    graded: bool = False
    balanced: bool | None = None

    @property
    def generated(self) -> bool:
        return self.verdict == "generated"

    def to_json(self) -> dict:
        c = self.candidate
        return {
            "family": self.family,
            "params": list(self.params),
            "recipe": c.recipe,
            "ingredients": [i.to_json() for i in c.ingredients],
            "h_coords": list(c.h_coords),
            "conjugator": None if c.conjugator is None else list(c.conjugator.coeffs),
            "closure": "graded" if self.graded else "ungraded",
            "rounds": self.closure_rounds,
            "dims": list(self.dims_per_round),
            "final_dim": self.final_dim,
            "target_dim": self.target_dim,
            "verdict": self.verdict,
            "attempts": self.attempts,
            "x0_balanced": self.balanced,
        }


def _zero_weight(frame: CartanFrame) -> Weight:
    return tuple(ZERO for _ in range(frame.rank))


def _sum(a: SuperAlgebra, xs) -> Element:
    acc = a.zero()
    for x in xs:
        acc = acc + x
    return acc


# ---------------------------------------------------------------------------
# classical
# ---------------------------------------------------------------------------

def classical_candidate(a: SuperAlgebra) -> GeneratorCandidate:
    """``x + h`` with ``x`` summing odd weight vectors and ``h`` separating the odd weights."""
    if a.meta.get("kind") != "classical":
        raise UsageError(f"{a.name} is not a classical family build")
    frame = standard_cartan(a)
    odd = decompose(frame, parity=ODD)
    fam = a.family or ()
    if fam[:1] == ("A",) and fam[1:] == (1, 1):
        recipe = "classical-A11"
    elif fam == ("P", 3):
        recipe = "classical-P3"
    elif fam[:1] == ("Q",):
        recipe = "classical-Qn"
    else:
        recipe = "classical-case1"
        multi = [w for w in odd.weights if odd.multiplicity(w) > 1]
        if multi:
            raise StructuralError(f"{a.name}: odd weight spaces of dimension > 1 at {multi}")
    ings = []
    for w in odd.weights:
        ings.append(Ingredient("x_odd", _sum(a, (a.basis(i) for i in odd.members[w])), w))
    funcs = tuple(odd.weights)
    coords = omega_coords(frame, funcs)
    h = frame.element(coords)
    ings.append(Ingredient("h", h, _zero_weight(frame)))
    x = _sum(a, (i.element for i in ings))
    return GeneratorCandidate(a, x, recipe, tuple(ings), coords, funcs, frame)


# ---------------------------------------------------------------------------
# Cartan type
# ---------------------------------------------------------------------------

def _layer_vectors(a: SuperAlgebra, frame: CartanFrame, k: int) -> list[tuple[Element, Weight]]:
    return [(a.basis(i), frame.basis_weights[i]) for i in a.layer(k)]


def _sorted_weight_vectors(frame: CartanFrame, s) -> list[tuple[Element, Weight]]:
    pairs = [(x, w) for w, x in weight_vectors(frame, s)]
    return sorted(pairs, key=lambda p: (p[0].support, [str(c) for c in p[0].coeffs if c]))


def _single_search(a, frame) -> tuple[Element, Weight, Element, Weight]:
    for xm, am in _layer_vectors(a, frame, -1):
        for x1, a1 in _layer_vectors(a, frame, 1):
            if am == a1:
                continue
            if not x1.bracket(x1).is_zero():
                continue
            if xm.bracket(x1).is_zero():
                continue
            return xm, am, x1, a1
    raise IngredientSearchError(f"{a.name}: no x_-1, x_1 with distinct weights, [x_1,x_1] = 0, [x_-1,x_1] != 0")


def _split_search(a, frame, pieces) -> tuple:
    zero = _zero_weight(frame)
    m1 = _sorted_weight_vectors(frame, pieces[0])
    m2 = _sorted_weight_vectors(frame, pieces[1])
    for xm, am in _layer_vectors(a, frame, -1):
        for y1, b1 in m1:
            for y2, b2 in m2:
                ws = (am, b1, b2)
                if zero in ws or len(set(ws)) < 3:
                    continue
                s = y1 + y2
                if not s.bracket(s).is_zero():
                    continue
                if xm.bracket(s).is_zero():
                    continue
                return xm, am, y1, b1, y2, b2
    raise IngredientSearchError(f"{a.name}: no split ingredients meet the side conditions")


def exp_ad(n: Element, v: Element) -> Element:
    """``exp(ad n)(v)`` for an ad-nilpotent even ``n``."""
    out, term, k = v, v, 0
    while not term.is_zero():
        k += 1
        if k > n.algebra.dim + 1:
            raise StructuralError(f"ad({n}) is not nilpotent")
        term = n.bracket(term) * Fraction(1, k)
        out = out + term
    return out


@dataclass(frozen=True)
class Conjugator:
    """The inner automorphism ``psi = exp(ad A) exp(ad B)`` with ``A``, ``B`` in opposite root cones.

    ``psi^-1`` carries the standard Cartan subalgebra to the one relative to
    which ``x_0`` is balanced.
    """

    A: Element
    B: Element
    coeffs: tuple[int, int]

    def forward(self, v: Element) -> Element:
        return exp_ad(self.A, exp_ad(self.B, v))

    def inverse(self, v: Element) -> Element:
        return exp_ad(self.B * -1, exp_ad(self.A * -1, v))


def _coefficient_pairs(limit: int = 4) -> Iterator[tuple[int, int]]:
    for r in range(1, limit + 1):
        vals = [v for k in range(1, r + 1) for v in (k, -k)]
        for c1 in vals:
            for c2 in vals:
                if max(abs(c1), abs(c2)) == r:
                    yield c1, c2


def balancing_conjugator(frame: CartanFrame, x0: Element, degree: int = 0) -> Conjugator:
    """First ``psi`` (in a fixed order) making ``psi(x0)`` balanced for the standard frame."""
    a = frame.algebra
    dec = decompose(frame, degree=degree)
    pos = _sum(a, (a.basis(i) for w in dec.roots if positive(w) for i in dec.members[w]))
    neg = _sum(a, (a.basis(i) for w in dec.roots if not positive(w) for i in dec.members[w]))
    for c1, c2 in _coefficient_pairs():
        psi = Conjugator(pos * c1, neg * c2, (c1, c2))
        if is_balanced(psi.forward(x0), frame, degree=degree):
            return psi
    raise IngredientSearchError(f"{a.name}: no conjugate of x_0 is balanced in the searched range")


def cartan_candidate(a: SuperAlgebra) -> GeneratorCandidate:
    """``x_-1 + x_0 + h' + x_1`` (with ``x_1 = x_1^1 + x_1^2`` and ``+ z`` where needed).

    ``h' = psi^-1(h)`` for a separating standard ``h``; ``x_0`` is balanced
    relative to the Cartan subalgebra ``psi^-1(standard)``.
    """
    if a.meta.get("kind") != "cartan":
        raise UsageError(f"{a.name} is not a Cartan-type family build")
    frame = standard_cartan(a)
    zero = _zero_weight(frame)
    split = irreducible_summands(frame, a.layer(0), a.layer(1))
    if not split.complete:
        raise StructuralError(f"{a.name}: L_1 is not a direct sum of primitive-generated submodules")
    ings = []
    if split.count == 1:
        recipe = "cartan-single"
        xm, am, x1, a1 = _single_search(a, frame)
        odd_sum = xm + x1
        ings += [Ingredient("x_-1", xm, am), Ingredient("x_1", x1, a1)]
    elif split.count == 2:
        recipe = "cartan-split"
        xm, am, y1, b1, y2, b2 = _split_search(a, frame, split.summands)
        odd_sum = xm + y1 + y2
        ings += [Ingredient("x_-1", xm, am), Ingredient("x_1^1", y1, b1), Ingredient("x_1^2", y2, b2)]
    else:
        raise StructuralError(f"{a.name}: L_1 has {split.count} summands")
    x0 = (xm.bracket(odd_sum - xm)) * 2
    ings.append(Ingredient("x_0", x0, frame.weight_of_element(x0)))
    if a.meta.get("type") == "W":
        ings.append(Ingredient("z", _sum(a, frame.elements), zero))
    psi = balancing_conjugator(frame, x0)
    funcs = tuple(decompose(frame, degree=0).weights)
    coords = omega_coords(frame, funcs)
    ings.append(Ingredient("h", psi.inverse(frame.element(coords)), None))
    x = _sum(a, (i.element for i in ings))
    return GeneratorCandidate(a, x, recipe, tuple(ings), coords, funcs, frame, psi)


def candidate(a: SuperAlgebra) -> GeneratorCandidate:
    kind = a.meta.get("kind")
    if kind == "classical":
        return classical_candidate(a)
    if kind == "cartan":
        return cartan_candidate(a)
    raise UsageError(f"{a.name} was not produced by a family builder")


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def is_balanced(x: Element, frame: CartanFrame, degree: int | None = None) -> bool:
    """Every nonzero-weight component of ``x`` in the even part (or a layer) is nonzero."""
    a = frame.algebra
    dec = decompose(frame, parity=None if degree is not None else EVEN, degree=degree)
    inside = set(dec.indices)
    if any(i not in inside for i in x.support):
        raise UsageError("x does not lie in the decomposed part")
    for w in dec.roots:
        if not any(x.coeffs[i] for i in dec.members[w]):
            return False
    return True


def _family_of(a: SuperAlgebra) -> tuple[str, tuple[int, ...]]:
    fam = a.family or (a.name,)
    return str(fam[0]), tuple(int(p) for p in fam[1:])


def certify(c: GeneratorCandidate, graded: bool = False, attempts: int = 1) -> Certificate:
    a = c.algebra
    tr: ClosureTrace = closure([c.element], graded=graded)
    kind, params = _family_of(a)
    balanced = None
    if c.recipe.startswith("cartan"):
        x0 = c.ingredient("x_0").element
        if c.conjugator is not None:
            x0 = c.conjugator.forward(x0)
        balanced = is_balanced(x0, c.frame, degree=0)
    return Certificate(
        family=a.name, params=params, candidate=c, closure_rounds=tr.rounds,
        dims_per_round=tr.dims, final_dim=tr.dim, target_dim=a.dim,
        verdict="generated" if tr.dim == a.dim else "not-generated",
        attempts=attempts, graded=graded, balanced=balanced)


def search_fallback(a: SuperAlgebra, base: GeneratorCandidate, budget: int = 8,
                    graded: bool = False) -> Certificate:
    """Certify ``base``; on failure retry with other separating ``h`` until ``budget`` attempts."""
    if budget < 1:
        raise UsageError("budget must be at least 1")
    if base.algebra is not a:
        raise UsageError("candidate belongs to another algebra")
    cert = certify(base, graded)
    tried = 1
    if cert.generated:
        return cert
    for coords in _alternatives(base):
        if tried >= budget:
            break
        tried += 1
        cert = certify(base.with_h(coords), graded, attempts=tried)
        if cert.generated:
            return cert
    return cert


def _alternatives(base: GeneratorCandidate) -> Iterator[tuple[int, ...]]:
    for coords in omega_candidates(base.frame, base.separated):
        if tuple(coords) != tuple(base.h_coords):
            yield coords


def certify_algebra(a: SuperAlgebra, budget: int = 8, graded: bool = False) -> Certificate:
    return search_fallback(a, candidate(a), budget, graded)
