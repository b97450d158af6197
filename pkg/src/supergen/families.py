"""Family selectors, parameter constraints, catalog and the default certification matrix."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from . import cartan, classical
from .core import SuperAlgebra, UsageError

DIM_CAP = 400


@dataclass(frozen=True)
class FamilyInfo:
    kind: str
    arity: int
    klass: str
    constraint: str
    check: Callable[..., bool]
    builder: Callable[..., SuperAlgebra]
    dimension: Callable[..., int]
    names: tuple[str, ...] = ("n",)


def _a_dim(m: int, n: int) -> int:
    return (m + n + 2) ** 2 - 1 - (1 if m == n else 0)


CATALOG: dict[str, FamilyInfo] = {
    "A": FamilyInfo("A", 2, "classical", "m, n >= 0, not both 0; A(n,n) is taken modulo the identity",
                    lambda m, n: m >= 0 and n >= 0 and m + n > 0, classical.build_A, _a_dim, ("m", "n")),
    "B": FamilyInfo("B", 2, "classical", "m >= 0, n > 0", lambda m, n: m >= 0 and n > 0,
                    classical.build_B, lambda m, n: classical.osp_dimension(2 * m + 1, 2 * n), ("m", "n")),
    "C": FamilyInfo("C", 1, "classical", "n >= 2", lambda n: n >= 2,
                    classical.build_C, lambda n: classical.osp_dimension(2, 2 * n - 2)),
    "D": FamilyInfo("D", 2, "classical", "m >= 2, n > 0", lambda m, n: m >= 2 and n > 0,
                    classical.build_D, lambda m, n: classical.osp_dimension(2 * m, 2 * n), ("m", "n")),
    "P": FamilyInfo("P", 1, "classical", "n >= 2", lambda n: n >= 2,
                    classical.build_P, lambda n: 2 * (n + 1) ** 2 - 1),
    "Q": FamilyInfo("Q", 1, "classical", "n >= 2", lambda n: n >= 2,
                    classical.build_Q, lambda n: 2 * (n + 1) ** 2 - 2),
    "W": FamilyInfo("W", 1, "cartan", "n >= 3", lambda n: n >= 3,
                    cartan.build_W, lambda n: cartan.cartan_dimension("W", n)),
    "S": FamilyInfo("S", 1, "cartan", "n >= 4", lambda n: n >= 4,
                    cartan.build_S, lambda n: cartan.cartan_dimension("S", n)),
    "St": FamilyInfo("St", 1, "cartan", "m >= 2", lambda n: n >= 4 and n % 2 == 0,
                     cartan.build_S_tilde, lambda n: cartan.cartan_dimension("St", n), ("2m",)),
    "H": FamilyInfo("H", 1, "cartan", "n >= 5", lambda n: n >= 5,
                    cartan.build_H, lambda n: cartan.cartan_dimension("H", n)),
}

OUT_OF_SCOPE = ("D(2,1;alpha)", "G(3)", "F(4)")


@dataclass(frozen=True, order=True)
class Family:
    kind: str
    params: tuple[int, ...]

    @property
    def info(self) -> FamilyInfo:
        return CATALOG[self.kind]

    @property
    def selector(self) -> str:
        return " ".join([self.kind, *map(str, self.params)])

    @property
    def label(self) -> str:
        return f"{self.kind}({','.join(map(str, self.params))})"

    @property
    def klass(self) -> str:
        return self.info.klass

    def expected_dim(self) -> int:
        return self.info.dimension(*self.params)

    def build(self) -> SuperAlgebra:
        return _build(self)


def parse_family(tokens: Sequence[str] | str) -> Family:
    """``"A 1 1"`` or ``["A", "1", "1"]`` -> ``Family``; raises ``UsageError`` on bad input."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    if not tokens:
        raise UsageError("missing family selector")
    kind, *rest = tokens
    if kind not in CATALOG:
        raise UsageError(f"unknown family {kind!r}; expected one of {', '.join(CATALOG)}")
    info = CATALOG[kind]
    if len(rest) != info.arity:
        raise UsageError(f"{kind} takes {info.arity} parameter(s), got {len(rest)}")
    try:
        params = tuple(int(t) for t in rest)
    except ValueError:
        raise UsageError(f"parameters must be decimal integers, got {rest}") from None
    if not info.check(*params):
        raise UsageError(f"{kind} {' '.join(rest)}: constraint violated ({info.constraint})")
    return Family(kind, params)


def check_size(fam: Family, allow_large: bool = False) -> None:
    d = fam.expected_dim()
    if d > DIM_CAP and not allow_large:
        raise UsageError(f"{fam.label} has dimension {d} > {DIM_CAP}; pass --allow-large to run it")


@lru_cache(maxsize=None)
def _build(fam: Family) -> SuperAlgebra:
    return fam.info.builder(*fam.params)


ACCEPTANCE_MATRIX: tuple[Family, ...] = tuple(parse_family(s) for s in (
    "A 1 0", "A 2 1", "A 1 1", "B 0 1", "B 1 1", "C 2", "D 2 1", "P 2", "P 3", "Q 2", "Q 3",
    "W 3", "W 4", "S 4", "St 4", "H 5", "H 6",
))


def select(only: str | None) -> list[Family]:
    """Filter the acceptance matrix by ``classical``, ``cartan`` or a family letter."""
    fams = list(ACCEPTANCE_MATRIX)
    if only is None:
        pass
    elif only in ("classical", "cartan"):
        fams = [f for f in fams if f.klass == only]
    elif only in CATALOG:
        fams = [f for f in fams if f.kind == only]
    else:
        raise UsageError(f"--only expects classical, cartan or a family letter, got {only!r}")
    return sorted(fams)


def catalog_entries() -> list[dict]:
    return [{"family": k, "class": v.klass, "selector": " ".join((k, *v.names)),
             "constraint": v.constraint} for k, v in CATALOG.items()]
