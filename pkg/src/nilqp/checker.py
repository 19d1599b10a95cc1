"""Decision pipeline for quasi-projectivity of non-compact nilmanifolds.

For a rational nilpotent Lie algebra (so the group admits a lattice) and a
Euclidean factor dimension m, `check` applies the necessary conditions in
order: nilpotency class at most two, then evenness of b1 of the canonical
abelian-factor-free core, then the bounded bigrading search.  Verdicts are
Obstructed (with reasons), PassesNecessaryConditions (search exhausted), or
BigradingExhibited (with a verified grading).  Verdicts are never exceptions.

m is echoed but does not branch the logic for m > 0; m = 0 is the compact
case, where quasi-projectivity is equivalent to the algebra being abelian.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bigrading import Bigrading, SearchBounds, search_bigrading
from .errors import NotLatticeAdmissible
from .liealg import LieAlgebra, commutator_ideal, lower_central_series

__all__ = [
    "NilmanifoldSpec",
    "Verdict",
    "Reason",
    "check",
    "reproduce_classification",
    "diagonal_h1_check",
    "OBSTRUCTED",
    "PASSES_NECESSARY",
    "EXHIBITED",
]

OBSTRUCTED = "Obstructed"
PASSES_NECESSARY = "PassesNecessaryConditions"
EXHIBITED = "BigradingExhibited"


@dataclass(frozen=True)
class NilmanifoldSpec:
    algebra: LieAlgebra
    m: int = 1

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("Euclidean factor dimension must be >= 0")
        if self.algebra.field != "Q":
            raise NotLatticeAdmissible(
                f"{self.algebra.name}: rational structure constants are required "
                "for a lattice to exist"
            )


@dataclass(frozen=True)
class Reason:
    test: str
    witness: dict


@dataclass
class Verdict:
    status: str
    b1: int
    reasons: list[Reason] = field(default_factory=list)
    bigrading: Bigrading | None = None

    @property
    def obstructed(self) -> bool:
        return self.status == OBSTRUCTED


def check(
    spec: NilmanifoldSpec | LieAlgebra,
    m: int | None = None,
    bounds: SearchBounds | None = None,
) -> Verdict:
    """Run the full decision pipeline on a rational nilpotent Lie algebra."""
    if isinstance(spec, LieAlgebra):
        spec = NilmanifoldSpec(algebra=spec, m=1 if m is None else m)
    L = spec.algebra
    series = lower_central_series(L)  # raises NotNilpotent
    b1 = L.dim - commutator_ideal(L).dim
    reasons: list[Reason] = []

    if spec.m == 0:
        # Compact case: quasi-projective iff the group is abelian (a torus).
        if L.is_abelian():
            reasons.append(
                Reason("compact_abelian_criterion", {"abelian": True, "m": 0})
            )
            grading = _diagonal_grading(L)
            return Verdict(EXHIBITED, b1, reasons, grading)
        reasons.append(
            Reason(
                "compact_abelian_criterion",
                {"abelian": False, "nilpotency_class": series.nilpotency_class},
            )
        )
        return Verdict(OBSTRUCTED, b1, reasons)

    if series.nilpotency_class > 2:
        reasons.append(
            Reason(
                "nilpotency_class",
                {
                    "nilpotency_class": series.nilpotency_class,
                    "series_dims": [s.dim for s in series.terms],
                },
            )
        )
        return Verdict(OBSTRUCTED, b1, reasons)
    reasons.append(
        Reason("nilpotency_class", {"nilpotency_class": series.nilpotency_class})
    )

    outcome = search_bigrading(L, bounds)
    witness = outcome.witness or {}
    k = witness.get("abelian_factor", 0)
    b1_core = witness.get("b1_core", b1)
    reasons.append(Reason("abelian_factor", {"k": k, "core_dim": L.dim - k}))
    if outcome.status == "obstructed" and outcome.reason == "b1_parity":
        reasons.append(Reason("b1_parity", {"b1_core": b1_core, "parity": "odd"}))
        return Verdict(OBSTRUCTED, b1, reasons)
    reasons.append(Reason("b1_parity", {"b1_core": b1_core, "parity": "even"}))

    if outcome.found:
        reasons.append(
            Reason(
                "bigrading_search",
                {"outcome": "found", "shape": outcome.report.shape},
            )
        )
        return Verdict(EXHIBITED, b1, reasons, outcome.bigrading)
    search_bounds = outcome.bounds or SearchBounds()
    reasons.append(
        Reason(
            "bigrading_search",
            {
                "outcome": "not_found_within_bounds",
                "coefficients": list(search_bounds.coefficients),
                "depth": search_bounds.depth,
                "max_nodes": search_bounds.max_nodes,
            },
        )
    )
    return Verdict(PASSES_NECESSARY, b1, reasons)


def _diagonal_grading(L: LieAlgebra) -> Bigrading | None:
    """The everything-at-(-1,-1) grading of an abelian algebra."""
    if L.dim == 0:
        return None
    from .scalars import Q0, Q1

    gens = []
    for i in range(L.dim):
        v = [Q0] * L.dim
        v[i] = Q1
        gens.append(tuple(v))
    return Bigrading.build([(-1, -1, gens)])


@dataclass(frozen=True)
class ClassificationRow:
    b1: int
    keys: tuple[str, ...]


@dataclass(frozen=True)
class ClassificationTable:
    dim: int
    rows: tuple[ClassificationRow, ...]  # BigradingExhibited entries grouped by b1
    obstructed: tuple[tuple[str, str], ...]  # (key, first obstruction test)
    passes_only: tuple[str, ...]  # PassesNecessaryConditions entries


def reproduce_classification(dim: int, bounds: SearchBounds | None = None) -> ClassificationTable:
    """Run `check` over all rational catalog entries of one dimension."""
    from .catalog import catalog_keys, get

    if not 1 <= dim <= 8:
        raise ValueError("dimension must be between 1 and 8")
    exhibited: dict[int, list[str]] = {}
    obstructed: list[tuple[str, str]] = []
    passes: list[str] = []
    for key in catalog_keys():
        entry = get(key)
        if entry.algebra.dim != dim or entry.algebra.field != "Q":
            continue
        verdict = check(NilmanifoldSpec(entry.algebra, m=1), bounds=bounds)
        if verdict.status == EXHIBITED:
            exhibited.setdefault(verdict.b1, []).append(key)
        elif verdict.status == OBSTRUCTED:
            first = next(
                (
                    r.test
                    for r in verdict.reasons
                    if r.test in ("nilpotency_class", "b1_parity")
                    and (
                        r.test != "nilpotency_class"
                        or r.witness["nilpotency_class"] > 2
                    )
                    and (r.test != "b1_parity" or r.witness["parity"] == "odd")
                ),
                "unknown",
            )
            obstructed.append((key, first))
        else:
            passes.append(key)
    rows = tuple(
        ClassificationRow(b1=b, keys=tuple(sorted(ks)))
        for b, ks in sorted(exhibited.items())
    )
    return ClassificationTable(
        dim=dim,
        rows=rows,
        obstructed=tuple(sorted(obstructed)),
        passes_only=tuple(sorted(passes)),
    )


def diagonal_h1_check(L: LieAlgebra, g: Bigrading) -> bool:
    """Executable form of the weight-counting argument for diagonal gradings.

    For a verified grading with all components at (p, p) the top cohomology
    class forces sum((-p - 1) * dim) = 0, which kills every component below
    (-1,-1); the algebra is then abelian.  Returns that conclusion, checking
    it against the algebra.
    """
    from .cohomology import top_class_bidegree
    from .errors import GradingNotDiagonal

    if not g.is_diagonal():
        raise GradingNotDiagonal(
            f"components at {g.bidegrees()} are not all diagonal"
        )
    from .bigrading import _complex_carrier

    Lc = _complex_carrier(L)
    n = Lc.dim
    if n == 0:
        return True
    s, t = top_class_bidegree(Lc, g)
    deficit = s - n  # = sum over components of (-p - 1) * dim, each term >= 0
    forced_abelian = deficit == 0 and s <= n
    actually_abelian = Lc.is_abelian()
    return forced_abelian and actually_abelian
