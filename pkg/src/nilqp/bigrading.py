"""Bigradings of complexified nilpotent Lie algebras.

A bigrading assigns basis vectors to integer bidegrees (p, q) with p, q <= 0
and p + q <= -1.  Verification checks four things: the generators span as a
direct sum, the bracket is additive on bidegrees, conjugation exchanges (p, q)
and (q, p) (exactly, or modulo lower total weight), and the induced bigraded
cohomology in degree j is supported in I_j = {j <= p+q <= 2j, 0 <= p,q <= j}.

The same data can be packaged as a pair of filtrations (increasing weight W,
decreasing F) and recovered from them by the standard splitting formula; both
directions are implemented and round-trip on every stored grading.

The bounded search looks for a restricted-shape grading

    g = U + conj(U) + Z(g),   [U, U] = 0,  U + conj(U) a complement of Z

by exact linear algebra: a symplectic pairing argument when the commutator
ideal is a line, an exterior-square kernel argument when dim U = 2, and a
depth-first search over exactly solved commutation constraint spaces in
general.  Every hit is re-verified before being returned; exhaustion yields
NotFoundWithinBounds, never a nonexistence claim.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cohomology import bigraded_cohomology
from .errors import (
    GradingNotCompatible,
    MissingRealStructure,
    NotAFiltration,
)
from .exact import ExactMatrix, Subspace, Vector, kernel_basis
from .liealg import (
    LieAlgebra,
    center,
    commutator_ideal,
    complexify,
    lower_central_series,
)
from .scalars import Gaussian, Q0, Q1, Rational, Scalar, conj

__all__ = [
    "Bigrading",
    "BigradingComponent",
    "GradingReport",
    "FiltrationPair",
    "SearchBounds",
    "SearchOutcome",
    "verify_bigrading",
    "filtrations_from_bigrading",
    "bigrading_from_filtrations",
    "search_bigrading",
]


def _coerce(x) -> Scalar:
    if isinstance(x, (Rational, Gaussian)):
        return x
    if isinstance(x, int):
        return Rational(x)
    raise TypeError(f"not a scalar: {x!r}")


@dataclass(frozen=True)
class BigradingComponent:
    p: int
    q: int
    generators: tuple[Vector, ...]

    def subspace(self, ambient: int) -> Subspace:
        return Subspace.from_spanning(self.generators, ambient_dim=ambient)


@dataclass(frozen=True)
class Bigrading:
    components: tuple[BigradingComponent, ...]

    @classmethod
    def build(cls, components) -> "Bigrading":
        comps = []
        seen = set()
        for p, q, gens in components:
            if p > 0 or q > 0 or p + q > -1:
                raise GradingNotCompatible(
                    f"bidegree ({p}, {q}) violates p, q <= 0 and p + q <= -1"
                )
            if (p, q) in seen:
                raise GradingNotCompatible(f"duplicate bidegree ({p}, {q})")
            seen.add((p, q))
            gen_vecs = tuple(tuple(_coerce(x) for x in g) for g in gens)
            if not gen_vecs:
                continue
            comps.append(BigradingComponent(p=p, q=q, generators=gen_vecs))
        comps.sort(key=lambda c: (-(c.p + c.q), -c.q))
        return cls(components=tuple(comps))

    @property
    def ambient_dim(self) -> int:
        for c in self.components:
            return len(c.generators[0])
        return 0

    @property
    def total_generators(self) -> int:
        return sum(len(c.generators) for c in self.components)

    def bidegrees(self) -> tuple[tuple[int, int], ...]:
        return tuple((c.p, c.q) for c in self.components)

    def component(self, p: int, q: int) -> BigradingComponent | None:
        for c in self.components:
            if (c.p, c.q) == (p, q):
                return c
        return None

    def canonical(self) -> "Bigrading":
        """Same decomposition with each component's canonical (RREF) basis."""
        n = self.ambient_dim
        return Bigrading.build(
            (c.p, c.q, c.subspace(n).vectors()) for c in self.components
        )

    def is_restricted_shape(self) -> bool:
        return set(self.bidegrees()) <= {(-1, 0), (0, -1), (-1, -1)}

    def is_diagonal(self) -> bool:
        return all(c.p == c.q for c in self.components)


@dataclass
class GradingReport:
    """Outcome of verify_bigrading.

    cohomology_support_ok is the weight-band condition j <= p+q <= 2j on every
    nonzero H^j_{p,q}; support_box_ok additionally requires 0 <= p, q <= j.
    Validity uses the band: general-shape gradings of higher-step algebras can
    satisfy every structural axiom and the band while exceeding the box, and
    the box never fails for restricted-shape gradings.
    """

    mode: str
    spans: bool
    bracket_compatible: bool
    conjugation: str  # "exact" | "mod_lower_weight" | "fails"
    shape: str  # "restricted" | "general"
    cohomology_support_ok: bool
    support_box_ok: bool = True
    failures: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        conj_ok = (
            self.conjugation == "exact"
            if self.mode == "strict"
            else self.conjugation != "fails"
        )
        return (
            self.spans
            and self.bracket_compatible
            and conj_ok
            and self.cohomology_support_ok
        )


def _complex_carrier(L: LieAlgebra) -> LieAlgebra:
    """The algebra a grading lives on: L itself over Q(i), else complexified."""
    if L.field == "Qi":
        if L.real_structure is None:
            raise MissingRealStructure(
                f"{L.name}: conjugation checks need a real structure"
            )
        return L
    return complexify(L)


def verify_bigrading(L: LieAlgebra, g: Bigrading, mode: str = "strict") -> GradingReport:
    """Check all bigrading axioms; failures are reported, not raised."""
    if mode not in ("strict", "lax"):
        raise ValueError(f"mode must be 'strict' or 'lax', not {mode!r}")
    Lc = _complex_carrier(L)
    n = Lc.dim
    failures: list = []

    all_gens = [v for c in g.components for v in c.generators]
    count_ok = g.total_generators == n and all(len(v) == n for v in all_gens)
    span = Subspace.from_spanning(all_gens, ambient_dim=n) if count_ok else None
    spans = bool(count_ok and span is not None and span.dim == n)
    if not spans:
        failures.append(
            {
                "check": "spans",
                "detail": f"{g.total_generators} generators of rank "
                f"{span.dim if span else 'n/a'} in dimension {n}",
            }
        )

    comp_spaces = {(c.p, c.q): c.subspace(n) for c in g.components}

    bracket_ok = True
    if spans:
        comps = list(g.components)
        for a in range(len(comps)):
            for b in range(a, len(comps)):
                ca, cb = comps[a], comps[b]
                target = (ca.p + cb.p, ca.q + cb.q)
                tspace = comp_spaces.get(target)
                pairs = (
                    combinations(ca.generators, 2)
                    if a == b
                    else ((u, v) for u in ca.generators for v in cb.generators)
                )
                for u, v in pairs:
                    w = Lc.bracket(u, v)
                    if not any(w):
                        continue
                    if tspace is None:
                        bracket_ok = False
                        failures.append(
                            {
                                "check": "bracket",
                                "detail": f"[{ca.p},{ca.q}] x [{cb.p},{cb.q}] hits "
                                f"absent bidegree {target}",
                            }
                        )
                    elif not tspace.contains(w):
                        bracket_ok = False
                        failures.append(
                            {
                                "check": "bracket",
                                "detail": f"bracket of ({ca.p},{ca.q}) and "
                                f"({cb.p},{cb.q}) generators leaves the "
                                f"{target} component",
                            }
                        )

    conjugation = "exact"
    if spans:
        exact_all = True
        lax_all = True
        for c in g.components:
            img = Subspace.from_spanning(
                [Lc.conj_vector(v) for v in c.generators], ambient_dim=n
            )
            mirror = comp_spaces.get((c.q, c.p), Subspace.zero(n))
            if img != mirror:
                exact_all = False
                lower = [
                    v
                    for (p, q), sp in comp_spaces.items()
                    if p + q < c.p + c.q
                    for v in sp.vectors()
                ]
                allowed = Subspace.from_spanning(
                    list(mirror.vectors()) + lower, ambient_dim=n
                )
                if not img.is_subspace_of(allowed):
                    lax_all = False
                    failures.append(
                        {
                            "check": "conjugation",
                            "detail": f"conj of ({c.p},{c.q}) not inside "
                            f"({c.q},{c.p}) + lower weight",
                        }
                    )
                else:
                    failures.append(
                        {
                            "check": "conjugation",
                            "detail": f"conj of ({c.p},{c.q}) equals ({c.q},{c.p}) "
                            "only modulo lower weight",
                        }
                    )
        conjugation = "exact" if exact_all else ("mod_lower_weight" if lax_all else "fails")
    else:
        conjugation = "fails"

    support_ok = False
    box_ok = False
    if spans and bracket_ok and g.is_restricted_shape():
        # Dual generators carry bidegrees (1,0), (0,1), (1,1); a degree-j
        # monomial with a + b + c = j of them sits at (a+c, b+c), which obeys
        # j <= p+q <= 2j and 0 <= p,q <= j outright.  No computation needed.
        support_ok = True
        box_ok = True
    elif spans and bracket_ok:
        try:
            table = bigraded_cohomology(Lc, g)
        except GradingNotCompatible as exc:  # defensive; bracket check should catch
            failures.append({"check": "support", "detail": str(exc)})
        else:
            support_ok = True
            box_ok = True
            for (j, p, q, d) in table.by_bidegree or ():
                if not j <= p + q <= 2 * j:
                    support_ok = False
                    failures.append(
                        {
                            "check": "support",
                            "detail": f"H^{j} has dimension {d} at ({p},{q}) "
                            f"outside the weight band [{j}, {2 * j}]",
                        }
                    )
                elif not (0 <= p <= j and 0 <= q <= j):
                    box_ok = False
                    failures.append(
                        {
                            "check": "support_box",
                            "detail": f"H^{j} has dimension {d} at ({p},{q}) "
                            f"outside the box 0 <= p, q <= {j}",
                        }
                    )
    elif spans:
        failures.append(
            {"check": "support", "detail": "skipped: bracket incompatible"}
        )

    shape = "restricted" if g.is_restricted_shape() else "general"
    return GradingReport(
        mode=mode,
        spans=spans,
        bracket_compatible=bracket_ok,
        conjugation=conjugation,
        shape=shape,
        cohomology_support_ok=support_ok,
        support_box_ok=box_ok,
        failures=failures,
    )


# -- filtrations -------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationPair:
    """Increasing weight filtration W and decreasing filtration F."""

    ambient_dim: int
    weight: tuple[tuple[int, Subspace], ...]  # sorted by k, increasing spaces
    hodge: tuple[tuple[int, Subspace], ...]  # sorted by p, decreasing spaces

    @classmethod
    def build(cls, ambient_dim: int, weight: dict, hodge: dict) -> "FiltrationPair":
        w = tuple(sorted(weight.items()))
        f = tuple(sorted(hodge.items()))
        for (k1, s1), (k2, s2) in zip(w, w[1:]):
            if not s1.is_subspace_of(s2):
                raise NotAFiltration(f"W_{k1} is not contained in W_{k2}")
        for (p1, s1), (p2, s2) in zip(f, f[1:]):
            if not s2.is_subspace_of(s1):
                raise NotAFiltration(f"F^{p2} is not contained in F^{p1}")
        return cls(ambient_dim=ambient_dim, weight=w, hodge=f)

    def w(self, k: int) -> Subspace:
        """W_k, extended by zero below and stabilized above the stored range."""
        out = Subspace.zero(self.ambient_dim)
        for kk, s in self.weight:
            if kk <= k:
                out = s
            else:
                break
        return out

    def f(self, p: int) -> Subspace:
        """F^p: the entry at the smallest stored index >= p (decreasing)."""
        if not self.hodge:
            return Subspace.zero(self.ambient_dim)
        if p <= self.hodge[0][0]:
            return self.hodge[0][1]
        for pp, s in self.hodge:
            if pp >= p:
                return s
        return Subspace.zero(self.ambient_dim)


def filtrations_from_bigrading(g: Bigrading) -> FiltrationPair:
    """W_k = sum of components with p + q <= k; F^p = sum with first index >= p."""
    n = g.ambient_dim
    if n == 0:
        raise GradingNotCompatible("empty bigrading has no ambient space")
    weights = sorted({c.p + c.q for c in g.components})
    ps = sorted({c.p for c in g.components})
    weight: dict[int, Subspace] = {}
    lo = weights[0]
    for k in range(lo - 1, 1):
        vecs = [
            v for c in g.components if c.p + c.q <= k for v in c.generators
        ]
        weight[k] = Subspace.from_spanning(vecs, ambient_dim=n)
        if weight[k].dim == n:
            break
    hodge: dict[int, Subspace] = {}
    for p in range(ps[0], 1):
        vecs = [v for c in g.components if c.p >= p for v in c.generators]
        hodge[p] = Subspace.from_spanning(vecs, ambient_dim=n)
    hodge[1] = Subspace.zero(n)
    return FiltrationPair.build(n, weight, hodge)


def _conj_subspace(s: Subspace, conj_vec) -> Subspace:
    return Subspace.from_spanning(
        [conj_vec(v) for v in s.vectors()], ambient_dim=s.ambient_dim
    )


def bigrading_from_filtrations(
    fp: FiltrationPair, real_structure: ExactMatrix
) -> Bigrading:
    """Recover the bigrading by the standard splitting of a mixed structure.

    V_{p,q} = F^p n W_{p+q} n ( conj(F^q) n W_{p+q}
                                + sum_{i>=2} conj(F^{q-i+1}) n W_{p+q-i} ).
    """
    n = fp.ambient_dim

    def conj_vec(v):
        return real_structure.matvec([conj(_coerce(x)) for x in v])

    comps = []
    for p in range(-n, 1):
        for q in range(-n, 1):
            if p + q > -1:
                continue
            w_pq = fp.w(p + q)
            if w_pq.dim == 0:
                continue
            first = fp.f(p).intersect(w_pq)
            if first.dim == 0:
                continue
            second = _conj_subspace(fp.f(q), conj_vec).intersect(w_pq)
            lowest = fp.weight[0][0] if fp.weight else p + q
            i = 2
            while p + q - i >= lowest:
                term = _conj_subspace(fp.f(q - i + 1), conj_vec).intersect(
                    fp.w(p + q - i)
                )
                second = second.sum(term)
                i += 1
            v_pq = first.intersect(second)
            if v_pq.dim:
                comps.append((p, q, v_pq.vectors()))
    return Bigrading.build(comps)


# -- bounded search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    coefficients: tuple[int, ...] = (-1, 0, 1)
    depth: int = 2
    max_nodes: int = 20000


@dataclass
class SearchOutcome:
    status: str  # "obstructed" | "found" | "not_found_within_bounds"
    reason: str | None = None
    witness: dict | None = None
    bigrading: Bigrading | None = None
    report: GradingReport | None = None
    bounds: SearchBounds | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def _real_form_basis(Lc: LieAlgebra) -> ExactMatrix:
    """Basis of the conjugation-fixed rational form of a Q(i) algebra.

    Solves S * conj(x) = x as a rational linear system on (Re x, Im x).
    """
    n = Lc.dim
    s = Lc.real_structure
    if s is None:
        raise MissingRealStructure(f"{Lc.name}: no real structure")
    # Rows of the 2n x 2n realified system (S_re + i S_im)(a - i b) = a + i b.
    rows = []
    for out in range(n):
        row_re = [Q0] * (2 * n)
        row_im = [Q0] * (2 * n)
        for j in range(n):
            e = s.entries[out][j]
            re = e.re if isinstance(e, Gaussian) else e
            im = e.im if isinstance(e, Gaussian) else Q0
            row_re[j] = row_re[j] + re
            row_re[n + j] = row_re[n + j] + im
            row_im[j] = row_im[j] + im
            row_im[n + j] = row_im[n + j] - re
        row_re[out] = row_re[out] - Q1
        row_im[n + out] = row_im[n + out] - Q1
        rows.append(row_re)
        rows.append(row_im)
    fixed = kernel_basis(ExactMatrix(rows, cols=2 * n))
    vectors = []
    for w in fixed.vectors():
        vec = tuple(
            Gaussian(w[j], w[n + j]) if isinstance(w[j], Rational) else w[j]
            for j in range(n)
        )
        vectors.append(vec)
    if len(vectors) != n:
        raise MissingRealStructure(
            f"{Lc.name}: fixed space of conjugation has dimension "
            f"{len(vectors)}, expected {n}"
        )
    return ExactMatrix(vectors, cols=n)


def _realified(L: LieAlgebra) -> tuple[LieAlgebra, LieAlgebra, ExactMatrix]:
    """(complex carrier, rational form, basis matrix of the rational form)."""
    from .liealg import apply_basis_change

    Lc = _complex_carrier(L)
    if L.field == "Q":
        return Lc, L, ExactMatrix.identity(L.dim)
    t_real = _real_form_basis(Lc)
    moved = apply_basis_change(Lc, t_real, name=f"{L.name}.real")
    brackets: dict[tuple[int, int], dict[int, Scalar]] = {}
    for (i, j), coeffs in moved.brackets:
        row = {}
        for k, c in coeffs:
            if isinstance(c, Gaussian):
                if c.im:
                    raise MissingRealStructure(
                        f"{L.name}: rational form has non-real constants"
                    )
                c = c.re
            row[k] = c
        brackets[(i, j)] = row
    real_alg = LieAlgebra.from_brackets(
        name=f"{L.name}.real",
        dim=L.dim,
        brackets=brackets,
        field="Q",
        basis_names=moved.basis_names,
        check=False,
    )
    return Lc, real_alg, t_real


def _sqrt_rational(r: Rational):
    """Exact square root in Q, or None."""
    from math import isqrt

    if r.num < 0:
        return None
    a = isqrt(r.num)
    b = isqrt(r.den)
    if a * a == r.num and b * b == r.den:
        return Rational(a, b)
    return None


def _sqrt_gaussian_of_rational(w: Rational):
    """Exact square root of a rational inside Q(i), or None."""
    if w.num >= 0:
        root = _sqrt_rational(w)
        return Gaussian(root) if root is not None else None
    root = _sqrt_rational(-w)
    return Gaussian(0, root) if root is not None else None


class _TwoStepFrame:
    """Quotient V = L / Z of a rational 2-step algebra, with lifts and pairing."""

    def __init__(self, R: LieAlgebra):
        self.R = R
        self.n = R.dim
        self.z = center(R)
        pivots = set()
        for row in self.z.basis.entries:
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is not None:
                pivots.add(lead)
        self.free = [j for j in range(self.n) if j not in pivots]
        self.v = len(self.free)
        self.c1 = commutator_ideal(R)

    def lift(self, u) -> Vector:
        """Section of the quotient: coordinates on the free columns."""
        vec = [Q0] * self.n
        for coord, f in zip(u, self.free):
            vec[f] = vec[f] + coord
        return tuple(vec)

    def beta(self, u, w) -> Vector:
        return self.R.bracket(self.lift(u), self.lift(w))

    def std_basis(self):
        out = []
        for a in range(self.v):
            e = [Q0] * self.v
            e[a] = Q1
            out.append(tuple(e))
        return out


def _darboux_u(frame: _TwoStepFrame) -> list[Vector] | None:
    """U generators for a one-dimensional commutator ideal (symplectic case)."""
    if frame.c1.dim != 1:
        return None
    w0 = frame.c1.basis.entries[0]
    pivot_col = next(j for j, x in enumerate(w0) if x)

    def pairing(x, y) -> Scalar:
        return frame.beta(x, y)[pivot_col]

    remaining = frame.std_basis()
    pairs = []
    while remaining:
        x = remaining.pop(0)
        partner = None
        for idx, y in enumerate(remaining):
            if pairing(x, y):
                partner = idx
                break
        if partner is None:
            return None  # degenerate; cannot happen for V = L/Z
        y = remaining.pop(partner)
        lam = pairing(x, y)
        y = tuple(t / lam for t in y)
        reduced = []
        for vv in remaining:
            a = pairing(x, vv)
            b = pairing(y, vv)
            if a or b:
                vv = tuple(t - a * yy + b * xx for t, yy, xx in zip(vv, y, x))
            reduced.append(vv)
        remaining = reduced
        pairs.append((x, y))
    iu = Gaussian(0, 1)
    return [tuple(a - iu * b for a, b in zip(x, y)) for (x, y) in pairs]


_PAIR_IDX = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def _pf_quadratic(z) -> Scalar:
    """z01*z23 - z02*z13 + z03*z12: vanishing = decomposability in dim 4."""
    return z[0] * z[5] - z[1] * z[4] + z[2] * z[3]


def _pf_bilinear(z, w) -> Scalar:
    s = (
        z[0] * w[5]
        + w[0] * z[5]
        - z[1] * w[4]
        - w[1] * z[4]
        + z[2] * w[3]
        + w[2] * z[3]
    )
    return s / 2


def _plucker_u(frame: _TwoStepFrame, bounds: SearchBounds) -> list[Vector] | None:
    """U generators for dim U = 2 via decomposable kernel bivectors."""
    if frame.v != 4:
        return None
    std = frame.std_basis()
    cols = []
    for (a, b) in _PAIR_IDX:
        cols.append(frame.beta(std[a], std[b]))
    bhat = ExactMatrix(
        [[cols[c][r] for c in range(6)] for r in range(frame.n)], cols=6
    )
    kspace = kernel_basis(bhat)
    if kspace.dim == 0:
        return None
    basis = [tuple(x for x in vec) for vec in kspace.vectors()]
    candidates: list[tuple] = []

    def push(z):
        if any(z) and not _pf_quadratic(z):
            candidates.append(tuple(z))

    for b in basis:
        push(b)
    # Diagonalize the quadratic on the kernel; isotropic leftovers surface above.
    diag = []
    work = [list(b) for b in basis]
    for vec in work:
        v = list(vec)
        for o, d in diag:
            coef = _pf_bilinear(v, o) / d
            if coef:
                v = [x - coef * y for x, y in zip(v, o)]
        qv = _pf_quadratic(v)
        if qv:
            diag.append((tuple(v), qv))
        else:
            push(v)
    for (o1, d1), (o2, d2) in combinations(diag, 2):
        t = _sqrt_gaussian_of_rational(_as_rational_scalar(-d1 / d2))
        if t is not None:
            push(tuple(a + t * b for a, b in zip(o1, o2)))
    # Small-grid completion and expansion through found points.
    pool = [o for o, _ in diag] + basis
    coeffs = [c for c in bounds.coefficients if c]
    grid_scalars = [Rational(c) for c in coeffs] + [Gaussian(0, c) for c in coeffs]
    for za, zb in combinations(pool, 2):
        for s in grid_scalars:
            push(tuple(a + s * b for a, b in zip(za, zb)))
    expanded = list(candidates)
    for z0 in candidates[:8]:
        for w in pool:
            qw = _pf_quadratic(w)
            bw = _pf_bilinear(z0, w)
            if qw:
                tau = (Rational(-2) * bw) / qw
                expanded.append(tuple(a + tau * b for a, b in zip(z0, w)))
            elif not bw:
                expanded.append(tuple(a + b for a, b in zip(z0, w)))
    for z in expanded:
        if not any(z) or _pf_quadratic(z):
            continue
        u = _bivector_support(z)
        if u is None:
            continue
        both = list(u) + [tuple(conj(x) for x in vec) for vec in u]
        if Subspace.from_spanning(both, ambient_dim=4).dim == 4:
            return u
    return None


def _as_rational_scalar(x: Scalar) -> Rational:
    if isinstance(x, Gaussian):
        if x.im:
            raise ValueError("expected a rational value")
        return x.re
    return x


def _bivector_support(z) -> list[Vector] | None:
    """For decomposable z in Lambda^2 C^4: the 2-plane {x : z ^ x = 0}."""
    triples = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
    pair_pos = {pair: idx for idx, pair in enumerate(_PAIR_IDX)}
    rows = []
    for (a, b, c) in triples:
        row = [Gaussian(0)] * 4
        # coefficient of x_t in (z ^ x)_{abc}
        row[a] = _g(z[pair_pos[(b, c)]])
        row[b] = -_g(z[pair_pos[(a, c)]])
        row[c] = _g(z[pair_pos[(a, b)]])
        rows.append(row)
    null = kernel_basis(ExactMatrix(rows, cols=4))
    if null.dim != 2:
        return None
    return [tuple(v) for v in null.vectors()]


def _g(x: Scalar) -> Gaussian:
    return x if isinstance(x, Gaussian) else Gaussian(x)


def _pencil_components(frame: _TwoStepFrame) -> list[list[list[Scalar]]]:
    """Per commutator coordinate, the v x v alternating form of the bracket."""
    std = frame.std_basis()
    piv = []
    for row in frame.c1.basis.entries:
        piv.append(next(j for j, x in enumerate(row) if x))
    comps = []
    for _ in range(frame.c1.dim):
        comps.append([[Q0] * frame.v for _ in range(frame.v)])
    for a in range(frame.v):
        for b in range(a + 1, frame.v):
            w = frame.beta(std[a], std[b])
            coords = _solve_against(frame.c1.basis.entries, w, piv)
            for t, val in enumerate(coords):
                comps[t][a][b] = val
                comps[t][b][a] = -val
    return comps


def _poly_mul(p, q):
    out = [Q0] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        if not x:
            continue
        for b, y in enumerate(q):
            if y:
                out[a + b] = out[a + b] + x * y
    return out


def _pfaffian_poly(m1, m2, v: int):
    """Coefficients of Pf(lambda*M1 + M2) by perfect-matching expansion."""

    def entry(i, j):
        return [m2[i][j], m1[i][j]]  # constant, then lambda coefficient

    def rec(indices):
        if not indices:
            return [Q1]
        out = [Q0]
        first = indices[0]
        for pos in range(1, len(indices)):
            partner = indices[pos]
            rest = indices[1:pos] + indices[pos + 1 :]
            term = _poly_mul(entry(first, partner), rec(rest))
            sign = 1 if pos % 2 == 1 else -1
            width = max(len(out), len(term))
            out = [
                (out[k] if k < len(out) else Q0)
                + (term[k] if k < len(term) else Q0) * sign
                for k in range(width)
            ]
        return out

    coeffs = rec(tuple(range(v)))
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _isqrt_exact(n: int):
    from math import isqrt

    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def _integer_roots_monic_cubic(b2: int, b1: int, b0: int) -> list[int]:
    """Integer roots of y^3 + b2 y^2 + b1 y + b0 by exact sign bisection."""

    def val(y: int) -> int:
        return ((y + b2) * y + b1) * y + b0

    # Stationary points of the cubic lie between integer brackets derived
    # from the derivative 3y^2 + 2b2 y + b1.
    disc = 4 * b2 * b2 - 12 * b1
    bound = 1 + max(abs(b2), abs(b1), abs(b0))
    cut_points = [-bound, bound]
    if disc > 0:
        from math import isqrt

        r = isqrt(disc)
        for sign in (-1, 1):
            num = -2 * b2 + sign * r
            cut_points.append(num // 6)
            cut_points.append(num // 6 + 1)
    cuts = sorted(set(max(-bound, min(bound, c)) for c in cut_points))
    roots = []
    for lo, hi in zip(cuts, cuts[1:]):
        flo, fhi = val(lo), val(hi)
        if flo == 0:
            roots.append(lo)
        if fhi == 0:
            roots.append(hi)
        if (flo < 0 < fhi) or (fhi < 0 < flo):
            a, b = lo, hi
            fa = flo
            while b - a > 1:
                mid = (a + b) // 2
                fm = val(mid)
                if fm == 0:
                    roots.append(mid)
                    break
                if (fa < 0) == (fm < 0):
                    a, fa = mid, fm
                else:
                    b = mid
    return sorted(set(roots))


def _rational_roots(coeffs) -> list[Rational]:
    """All rational roots of a polynomial of degree <= 3 over Q."""
    while coeffs and not coeffs[-1]:
        coeffs = coeffs[:-1]
    if not coeffs:
        return []
    roots: list[Rational] = []
    # Factor out powers of lambda.
    while coeffs and not coeffs[0]:
        coeffs = coeffs[1:]
        if Q0 not in [r for r in roots]:
            roots.append(Q0)
    if len(coeffs) <= 1:
        return roots
    from math import gcd

    denom = 1
    for c in coeffs:
        denom = denom * c.den // gcd(denom, c.den)
    ints = [c.num * (denom // c.den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    deg = len(ints) - 1
    if deg == 1:
        roots.append(Rational(-ints[0], ints[1]))
    elif deg == 2:
        c0, c1, c2 = ints
        disc = c1 * c1 - 4 * c2 * c0
        r = _isqrt_exact(disc)
        if r is not None:
            roots.append(Rational(-c1 + r, 2 * c2))
            roots.append(Rational(-c1 - r, 2 * c2))
    elif deg == 3:
        c0, c1, c2, c3 = ints
        # y = c3 * lambda turns the cubic monic with integer coefficients.
        for y in _integer_roots_monic_cubic(c2, c1 * c3, c0 * c3 * c3):
            roots.append(Rational(y, c3))
    out = []
    for r in roots:
        if r not in out:
            out.append(r)
    return out


def _pencil_structure(frame: _TwoStepFrame):
    """Covariant pencil data for a 2-dim commutator: (seeds, operator W).

    Seeds are kernel bases of the degenerate pencil members, located exactly
    as rational roots of the Pfaffian polynomial (for a singular pencil every
    member contributes).  W = M_g^{-1} M_o for an invertible member M_g is
    self-adjoint for the member pairing, so W-cyclic subspaces commute; its
    orbit vectors make strong search candidates.
    """
    v = frame.v
    comps = _pencil_components(frame)
    m1, m2 = comps[0], comps[1]
    groups: list[list[Vector]] = []
    seen = set()

    def member(lam: Rational, mu: Rational):
        return [
            [lam * m1[r][s] + mu * m2[r][s] for s in range(v)] for r in range(v)
        ]

    def add_kernel(lam, mu):
        m = ExactMatrix(member(lam, mu), cols=v)
        null = kernel_basis(m)
        if 0 < null.dim < v:
            fresh = [vec for vec in null.vectors() if vec not in seen]
            if fresh:
                seen.update(fresh)
                groups.append(list(null.vectors()))
        return null.dim

    pf = _pfaffian_poly(m1, m2, v) if v % 2 == 0 and v <= 8 else [Q1]
    singular = all(not c for c in pf)
    w_matrix = None
    if singular:
        for lam, mu in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2)):
            add_kernel(Rational(lam), Rational(mu))
    else:
        # Degenerate members: finite rational roots mu with Pf(mu*M1+M2)=0
        # read off the polynomial in the M1 direction, plus (1:0) itself.
        for root in _rational_roots(list(pf)):
            add_kernel(root, Q1)
        if not pf[-1] or len(pf) - 1 < v // 2:
            add_kernel(Q1, Q0)
        # Invertible member for the pencil operator.
        for lam, mu in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (1, -2)):
            mg = ExactMatrix(member(Rational(lam), Rational(mu)), cols=v)
            try:
                mg_inv = mg.inverse()
            except ValueError:
                continue
            other = (Rational(mu), Rational(-lam))
            mo = ExactMatrix(member(other[0], other[1]), cols=v)
            w_matrix = mg_inv.matmul(mo)
            break
    return groups, w_matrix


def _solve_against(basis_rows, w, pivots) -> list:
    """Coordinates of w against RREF rows with known pivot columns."""
    vec = list(w)
    coords = []
    for row, p in zip(basis_rows, pivots):
        coef = vec[p]
        coords.append(coef)
        if coef:
            vec = [x - coef * y for x, y in zip(vec, row)]
    if any(vec):
        raise ValueError("vector outside commutator ideal")
    return coords


def _generic_seeds(frame: _TwoStepFrame) -> list[list[Vector]]:
    """Degenerate-combination kernel groups for commutator dimension >= 3."""
    c = frame.c1.dim
    v = frame.v
    comps = _pencil_components(frame)
    groups: list[list[Vector]] = []
    seen = set()
    combos: list[tuple[int, ...]] = []
    for t in range(c):
        kappa = [0] * c
        kappa[t] = 1
        combos.append(tuple(kappa))
    for t1 in range(c):
        for t2 in range(t1 + 1, c):
            for s in (1, -1):
                kappa = [0] * c
                kappa[t1] = 1
                kappa[t2] = s
                combos.append(tuple(kappa))
    for kappa in combos:
        member = [
            [
                sum(
                    (Rational(kk) * comps[t][r][s2] for t, kk in enumerate(kappa)),
                    Q0,
                )
                for s2 in range(v)
            ]
            for r in range(v)
        ]
        null = kernel_basis(ExactMatrix(member, cols=v))
        if 0 < null.dim < v:
            fresh = [vec for vec in null.vectors() if vec not in seen]
            if fresh:
                seen.update(fresh)
                groups.append(list(null.vectors()))
        if sum(len(g) for g in groups) >= 4 * v:
            break
    return groups


def _compatible_complex_structures(frame: _TwoStepFrame):
    """Basis of {A : beta_t(Ax, y) + beta_t(x, Ay) = 0 for every component}.

    A solution with A^2 = -I is exactly a complex structure J whose graph
    U = {x - iJx} commutes for every bracket component; mu in A^2 = mu I is
    invariant under basis change, so rational solutions transport.
    """
    v = frame.v
    comps = _pencil_components(frame)
    rows = []
    # Unknowns: A[r][s] flattened; equations: (A^T M + M A)[p][q] = 0, p < q.
    for m in comps:
        for p in range(v):
            for q in range(p + 1, v):
                row = [Q0] * (v * v)
                for r in range(v):
                    # d/dA[r][p] of (A^T M)[p][q] = M[r][q]; transpose picks A[r][p]
                    row[r * v + p] = row[r * v + p] + m[r][q]
                    # d/dA[q][s]? (M A)[p][q] = sum_s M[p][s] A[s][q]
                for s in range(v):
                    row[s * v + q] = row[s * v + q] + m[p][s]
                if any(row):
                    rows.append(row)
    if not rows:
        return []
    null = kernel_basis(ExactMatrix(rows, cols=v * v))
    out = []
    for flat in null.vectors():
        out.append(
            ExactMatrix(
                [[flat[r * v + s] for s in range(v)] for r in range(v)], cols=v
            )
        )
    return out


def _scaled_complex_structure(a: ExactMatrix):
    """J = A / sqrt(-mu) when A^2 = mu I with -mu a rational square."""
    v = a.rows
    sq = a.matmul(a)
    mu = sq.entries[0][0]
    if isinstance(mu, Gaussian):
        if mu.im:
            return None
        mu = mu.re
    expected = ExactMatrix(
        [[mu if r == s else Q0 for s in range(v)] for r in range(v)], cols=v
    )
    if sq != expected:
        return None
    if mu.num >= 0:
        return None
    root = _sqrt_rational(Rational(-mu.num, mu.den))
    if root is None:
        return None
    inv = Rational(root.den, root.num)
    return a.scale(inv)


def _rays_with_square_condition(a1: ExactMatrix, a2: ExactMatrix):
    """Rational rays x*A1 + y*A2 with (xA1+yA2)^2 scalar, found exactly.

    The entrywise conditions are homogeneous binary quadratics; the rational
    roots of the first nontrivial one are checked against the rest.
    """
    v = a1.rows
    sq11 = a1.matmul(a1)
    sq22 = a2.matmul(a2)
    mix = a1.matmul(a2).add(a2.matmul(a1))

    def quad(entry_r, entry_s, diag_ref):
        # coefficient triple (x^2, xy, y^2) of entry minus scalar reference
        def pick(m):
            val = m.entries[entry_r][entry_s]
            if (entry_r == entry_s) and diag_ref:
                val = val - m.entries[0][0]
            return val

        return (pick(sq11), pick(mix), pick(sq22))

    quads = []
    for r in range(v):
        for s in range(v):
            if r == 0 and s == 0:
                continue
            coeffs = quad(r, s, r == s)
            if any(coeffs):
                quads.append(coeffs)
    if not quads:
        # every combination already works; try the two axes
        return [a1, a2]
    qa, qb, qc = quads[0]
    rays = []

    def as_rat(x):
        if isinstance(x, Gaussian):
            if x.im:
                raise ValueError("complex coefficient in a real pencil")
            return x.re
        return x

    qa, qb, qc = as_rat(qa), as_rat(qb), as_rat(qc)
    candidates = []
    if not qa:
        candidates.append((Q1, Q0))
    if not qc:
        candidates.append((Q0, Q1))
    if qa:
        # roots of qa t^2 + qb t + qc for t = x/y
        from math import gcd as _gcd

        den = qa.den * qb.den * qc.den
        ia = qa.num * (den // qa.den)
        ib = qb.num * (den // qb.den)
        ic = qc.num * (den // qc.den)
        disc = ib * ib - 4 * ia * ic
        root = _isqrt_exact(disc)
        if root is not None:
            for sign in (1, -1):
                candidates.append((Rational(-ib + sign * root, 2 * ia), Q1))
    for x, y in candidates:
        cand = a1.scale(x).add(a2.scale(y))
        ok = True
        for (ca, cb, cc) in quads:
            value = ca * x * x + cb * x * y + cc * y * y
            if value:
                ok = False
                break
        if ok and not cand.is_zero():
            rays.append(cand)
    return rays


def _scalar_square(a: ExactMatrix):
    """mu with A^2 = mu I, or None."""
    v = a.rows
    sq = a.matmul(a)
    mu = sq.entries[0][0]
    if isinstance(mu, Gaussian):
        if mu.im:
            return None
        mu = mu.re
    for r in range(v):
        for s in range(v):
            want = mu if r == s else Q0
            if sq.entries[r][s] != want:
                return None
    return mu


def _anticommutator_scalar(a: ExactMatrix, b: ExactMatrix):
    """beta with AB + BA = beta*I, or None."""
    v = a.rows
    anti = a.matmul(b).add(b.matmul(a))
    beta = anti.entries[0][0]
    if isinstance(beta, Gaussian):
        if beta.im:
            return None
        beta = beta.re
    for r in range(v):
        for s in range(v):
            want = beta if r == s else Q0
            if anti.entries[r][s] != want:
                return None
    return beta


def _nilpotent_via_conic(space: list[ExactMatrix]):
    """Nonzero nilpotent in a 3-dim quaternion-like space, found exactly.

    The squares define a ternary quadratic form on the space; a rational
    isotropic vector (Legendre reduction in nilqp._arith) is a nilpotent.
    """
    from ._arith import solve_ternary

    if len(space) != 3:
        return None
    gram = [[None] * 3 for _ in range(3)]
    for i in range(3):
        mu = _scalar_square(space[i])
        if mu is None:
            return None
        gram[i][i] = mu
        for j in range(i + 1, 3):
            beta = _anticommutator_scalar(space[i], space[j])
            if beta is None:
                return None
            gram[i][j] = gram[j][i] = beta / 2
    # Congruence diagonalization over Q, tracking the combination vectors.
    basis = [space[0], space[1], space[2]]
    combos = [gram[i][:] for i in range(3)]  # bilinear form rows

    def form(x, y):  # B(sum x_i A_i, sum y_j A_j)
        total = Rational(0)
        for i in range(3):
            if not x[i]:
                continue
            for j in range(3):
                if y[j]:
                    total = total + x[i] * gram[i][j] * y[j]
        return total

    vecs = [
        (Q1, Q0, Q0),
        (Q0, Q1, Q0),
        (Q0, Q0, Q1),
    ]
    ortho = []
    rest = list(vecs)
    for _ in range(3):
        pivot = None
        for idx, w in enumerate(rest):
            if form(w, w):
                pivot = idx
                break
        if pivot is None:
            # every remaining vector is isotropic
            for w in rest:
                if any(w):
                    return _combine(space, w)
            return None
        w = rest.pop(pivot)
        ortho.append(w)
        d = form(w, w)
        rest = [
            tuple(x - (form(xv, w) / d) * y for x, y in zip(xv, w))
            for xv in rest
        ]
    ds = [form(w, w) for w in ortho]
    for idx, d in enumerate(ds):
        if not d:
            return _combine(space, ortho[idx])
    sol = solve_ternary(ds[0], ds[1], ds[2])
    if sol is None:
        return None
    coords = tuple(
        sum((Rational(sol[t]) * ortho[t][i] for t in range(3)), Rational(0))
        for i in range(3)
    )
    return _combine(space, coords)


def _combine(space, coords):
    out = None
    for a, c in zip(space, coords):
        term = a.scale(c)
        out = term if out is None else out.add(term)
    if out is None or out.is_zero():
        return None
    return out


def _split_structure_candidates(space: list[ExactMatrix]) -> list[ExactMatrix]:
    """Complex structures via nilpotents of a quaternion-like solution space.

    When every A in the space squares to a scalar, a nonzero nilpotent N and
    any B with NB + BN = beta*I (beta != 0), B^2 = b*I combine to
    J = ((-1 - b)/beta) N + B, which squares to -I exactly.
    """
    if not space:
        return []
    v = space[0].rows
    mus = [_scalar_square(a) for a in space]
    nilpotents = [a for a, mu in zip(space, mus) if mu is not None and not mu]
    if not nilpotents and len(space) == 3:
        conic = _nilpotent_via_conic(space)
        if conic is not None and _scalar_square(conic) == Rational(0):
            nilpotents.append(conic)
    # Rational nilpotent rays inside pairs: mu(A_i + t A_j) = 0.
    for i in range(len(space)):
        for j in range(len(space)):
            if i == j or mus[i] is None or mus[j] is None or not mus[j]:
                continue
            anti = space[i].matmul(space[j]).add(space[j].matmul(space[i]))
            beta = anti.entries[0][0]
            if any(
                anti.entries[r][s] != (beta if r == s else 0)
                for r in range(v)
                for s in range(v)
            ):
                continue
            if isinstance(beta, Gaussian):
                if beta.im:
                    continue
                beta = beta.re
            # mu(A_i) + t*beta + t^2 mu(A_j) = 0
            mi, mj = mus[i], mus[j]
            den = mi.den * beta.den * mj.den
            c0 = mi.num * (den // mi.den)
            c1 = beta.num * (den // beta.den)
            c2 = mj.num * (den // mj.den)
            disc = c1 * c1 - 4 * c2 * c0
            root = _isqrt_exact(disc)
            if root is None:
                continue
            for sign in (1, -1):
                t = Rational(-c1 + sign * root, 2 * c2)
                cand = space[i].add(space[j].scale(t))
                if not cand.is_zero():
                    nilpotents.append(cand)
    out = []
    for n_mat in nilpotents[:8]:
        for b_mat in space:
            mu_b = _scalar_square(b_mat)
            if mu_b is None:
                continue
            anti = n_mat.matmul(b_mat).add(b_mat.matmul(n_mat))
            beta = anti.entries[0][0]
            if isinstance(beta, Gaussian):
                if beta.im:
                    continue
                beta = beta.re
            if not beta:
                continue
            if any(
                anti.entries[r][s] != (beta if r == s else 0)
                for r in range(v)
                for s in range(v)
            ):
                continue
            x = (Rational(-1) - mu_b) / beta
            out.append(n_mat.scale(x).add(b_mat))
    return out


def _jspace_u(frame: _TwoStepFrame, h: int):
    """U from a bracket-compatible complex structure (any commutator size)."""
    if frame.v != 2 * h or frame.v == 0:
        return None
    space = _compatible_complex_structures(frame)
    if not space:
        return None
    candidates: list[ExactMatrix] = list(space)
    candidates.extend(_split_structure_candidates(space))
    for a in range(len(space)):
        for b in range(a + 1, len(space)):
            for c in (1, -1, 2, -2):
                candidates.append(space[a].add(space[b].scale(c)))
            candidates.extend(_rays_with_square_condition(space[a], space[b]))
    iu = Gaussian(0, 1)
    for a in candidates:
        j = _scaled_complex_structure(a)
        if j is None:
            continue
        # U = {x - i J x}: automatically transverse to its conjugate.
        u_vecs = []
        span = Subspace.zero(frame.v)
        for x in frame.std_basis():
            jx = j.matvec(x)
            u = tuple(xx - iu * yy for xx, yy in zip(x, jx))
            if not span.contains(u):
                u_vecs.append(u)
                span = Subspace.from_spanning(u_vecs, ambient_dim=frame.v)
            if len(u_vecs) == h:
                break
        if len(u_vecs) == h and _bi_isotropic(frame, u_vecs) and _transversal(
            u_vecs, frame.v
        ):
            return u_vecs
    return None


def _krylov_span(w_matrix: ExactMatrix, u, h: int):
    """Basis of span{u, Wu, W^2 u, ...} truncated at h vectors."""
    from .exact import RowReducer

    vecs = []
    span = RowReducer(len(u))
    vec = u
    for _ in range(h + 1):
        if not any(vec) or not span.add(vec):
            break
        vecs.append(vec)
        if len(vecs) > h:
            break
        vec = w_matrix.matvec(vec)
    return vecs, span


def _bi_isotropic(frame: _TwoStepFrame, vectors) -> bool:
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            if any(frame.beta(vectors[a], vectors[b])):
                return False
    return True


def _transversal(vectors, v: int) -> bool:
    from .exact import RowReducer

    red = RowReducer(v)
    for w in vectors:
        if not red.add(w):
            return False
        if not red.add(tuple(conj(x) for x in w)):
            return False
    return True


def _regular_pencil_u(frame: _TwoStepFrame, groups, w_matrix, h: int):
    """Direct construction of U for a regular two-form pencil.

    The operator W = M_g^{-1} M_o satisfies beta_g(u, Wv) = -beta_g(v, Wu),
    so W-cyclic subspaces commute for every member of the pencil.  A cyclic
    vector of minimal-polynomial degree h yields U directly; when the cyclic
    depth falls one short, the last generator is completed from the exact
    commutant intersected with the eigenvector seeds.
    """
    v = frame.v
    std = frame.std_basis()
    iu = Gaussian(0, 1)
    candidates: list[Vector] = []
    # One transverse component per root of the pencil, drawn from the full
    # generalized eigenspace: the Krylov span of such a sum reaches every
    # Jordan chain, and kernel vectors alone would miss nilpotent parts.
    gen_groups = []
    for grp in groups:
        k_vec = grp[0]
        img = w_matrix.matvec(k_vec)
        lead = next((j for j, x in enumerate(k_vec) if x), None)
        t = img[lead] / k_vec[lead] if lead is not None else Q0
        shifted = ExactMatrix(
            [
                [
                    w_matrix.entries[r][s] - (t if r == s else Q0)
                    for s in range(v)
                ]
                for r in range(v)
            ],
            cols=v,
        )
        power = shifted
        for _ in range(v // 2 - 1):
            power = power.matmul(shifted)
        gen = kernel_basis(power)
        gen_groups.append(list(gen.vectors()) if gen.dim >= len(grp) else list(grp))
    if len(gen_groups) >= 2 and all(len(g) >= 2 for g in gen_groups):
        variants = ((0, 1, 1), (1, 0, 1), (0, 1, -1), (1, 0, -1))

        def group_vec(grp, variant):
            a, b, s = variant
            a = min(a, len(grp) - 1)
            b = min(b, len(grp) - 1)
            return tuple(
                x + Gaussian(0, s) * y for x, y in zip(grp[a], grp[b])
            )

        from itertools import product

        pools = []
        for grp in gen_groups:
            per_group = []
            for variant in variants:
                per_group.append(group_vec(grp, variant))
            if len(grp) > 2:
                # generic vectors reaching the top of each Jordan chain
                total = grp[0]
                for extra in grp[1:]:
                    total = tuple(x + y for x, y in zip(total, extra))
                per_group.insert(
                    0, tuple(x + Gaussian(0, 1) * y for x, y in zip(total, grp[1]))
                )
                per_group.insert(1, tuple(
                    x + Gaussian(0, 1) * y for x, y in zip(grp[0], total)
                ))
            pools.append(per_group)
        for combo in list(product(*[range(len(p)) for p in pools]))[:48]:
            u = None
            for pool_vecs, vidx in zip(pools, combo):
                term = pool_vecs[vidx]
                u = term if u is None else tuple(
                    x + y for x, y in zip(u, term)
                )
            candidates.append(u)
    # Generic vectors next: they are cyclic whenever anything is.
    pool: list[Vector] = list(std)
    for grp in groups:
        for vec in grp:
            if vec not in pool:
                pool.append(vec)
    for a in range(len(pool)):
        for b in range(len(pool)):
            if a != b:
                candidates.append(
                    tuple(x + iu * y for x, y in zip(pool[a], pool[b]))
                )
    partials = []
    spans_seen: list[Subspace] = []
    for u in candidates[:200]:
        vecs, span = _krylov_span(w_matrix, u, h)
        if len(vecs) == h:
            if _transversal(vecs, v) and _bi_isotropic(frame, vecs):
                return vecs
        elif len(vecs) == h - 1 and len(partials) < 16:
            if span not in spans_seen and _bi_isotropic(frame, vecs):
                spans_seen.append(span)
                partials.append(vecs)
    null_w = kernel_basis(w_matrix)
    for vecs in partials:
        # Complete with an eigenvector from the exact commutant of the
        # cyclic part (W fixes its line, so invariance is preserved).
        rows = []
        for u in vecs:
            images = [frame.beta(e, u) for e in std]
            for coord in range(frame.n):
                row = [images[a][coord] for a in range(v)]
                if any(row):
                    rows.append(row)
        commutant = (
            kernel_basis(ExactMatrix(rows, cols=v)) if rows else Subspace.full(v)
        )
        eigen_pool: list[Vector] = []
        for grp in groups:
            meet = Subspace.from_spanning(grp, ambient_dim=v).intersect(commutant)
            for vec in meet.vectors():
                if vec not in eigen_pool:
                    eigen_pool.append(vec)
        for vec in null_w.intersect(commutant).vectors():
            if vec not in eigen_pool:
                eigen_pool.append(vec)
        mixers = [iu, -iu, Gaussian(0, 2), Gaussian(1, 1), Gaussian(1, -1)]
        finals: list[Vector] = []
        for a in range(len(eigen_pool)):
            for b in range(len(eigen_pool)):
                if a != b:
                    for m in mixers:
                        finals.append(
                            tuple(
                                x + m * y
                                for x, y in zip(eigen_pool[a], eigen_pool[b])
                            )
                        )
            finals.append(eigen_pool[a])
        for w in finals[:200]:
            if not any(w):
                continue
            full = vecs + [w]
            from .exact import RowReducer

            red = RowReducer(v)
            if not all(red.add(x) for x in full):
                continue
            if _transversal(full, v) and _bi_isotropic(frame, full):
                return full
    return None


def _dfs_u(frame: _TwoStepFrame, h: int, bounds: SearchBounds, structure=None):
    """Depth-first search for h commuting generators transverse to conjugates.

    The commutation constraints against already-chosen generators are linear,
    so each level enumerates bounded combinations of exactly computed
    constraint spaces.  Candidates are drawn first from intersections with
    covariant invariant subspaces (degenerate pencil-member kernels and
    kernels/images of powers of the pencil operator), which keeps the search
    effective under arbitrary rational changes of basis.  Since every later
    generator must commute with every earlier one, the whole subspace U lies
    inside each constraint space, so branches whose constraint space drops
    below dimension h are pruned.
    """
    v = frame.v
    std = frame.std_basis()
    groups: list[list[Vector]] = []
    w_matrix = None
    if structure is not None:
        groups, w_matrix = structure
    elif frame.c1.dim >= 3:
        groups = _generic_seeds(frame)
    seeds = [vec for grp in groups for vec in grp]
    invariant: list[Subspace] = []
    for grp in groups:
        if 0 < len(grp) < v:
            invariant.append(Subspace.from_spanning(grp, ambient_dim=v))
    if w_matrix is not None:
        power = w_matrix
        for _ in range(h):
            null = kernel_basis(power)
            if 0 < null.dim < v:
                invariant.append(null)
            image = Subspace.from_spanning(
                power.transpose().entries, ambient_dim=v
            )
            if 0 < image.dim < v:
                invariant.append(image)
            power = power.matmul(w_matrix)
        orbit: list[Vector] = []
        for base in seeds + std:
            vec = base
            for _ in range(h - 1):
                vec = w_matrix.matvec(vec)
                if not any(vec):
                    break
                if vec not in orbit and vec not in seeds:
                    orbit.append(vec)
        seeds = seeds + orbit[: 4 * v]
    dedup_invariant: list[Subspace] = []
    for s in invariant:
        if s not in dedup_invariant:
            dedup_invariant.append(s)
    # Small invariant subspaces are the strongest anchors: any commuting
    # family is forced to meet the pencil radical, so explore those first.
    invariant = sorted(dedup_invariant, key=lambda s: s.dim)[:8]
    budget = [bounds.max_nodes]
    coeffs = [c for c in bounds.coefficients if c]

    def complex_candidates(space: Subspace, chosen):
        pool: list[Vector] = []

        def push(vec):
            if any(vec):
                g = tuple(_g(x) for x in vec)
                if g not in pool:
                    pool.append(g)

        if w_matrix is not None:
            for u in chosen:
                img = w_matrix.matvec(u)
                if any(img) and space.contains(img):
                    push(img)
        for inv in invariant:
            meet = inv.intersect(space)
            if 0 < meet.dim < space.dim:
                for vec in meet.vectors():
                    push(vec)
        for s in seeds:
            if space.contains(s):
                push(s)
        for b in space.vectors():
            push(b)
        yield from pool
        if bounds.depth >= 2:
            for a in range(len(pool)):
                for b in range(len(pool)):
                    if a == b:
                        continue
                    for cc in coeffs:
                        yield tuple(
                            x + Rational(cc) * y for x, y in zip(pool[a], pool[b])
                        )
                        yield tuple(
                            x + Gaussian(0, cc) * y for x, y in zip(pool[a], pool[b])
                        )
        if bounds.depth >= 3:
            for a in range(len(pool)):
                for b in range(a + 1, len(pool)):
                    for c2 in range(b + 1, len(pool)):
                        for c_b in coeffs:
                            for c_c in coeffs:
                                yield tuple(
                                    x + Gaussian(0, c_b) * y + Gaussian(c_c) * w
                                    for x, y, w in zip(pool[a], pool[b], pool[c2])
                                )
                                yield tuple(
                                    x + Gaussian(0, c_b) * y + Gaussian(0, c_c) * w
                                    for x, y, w in zip(pool[a], pool[b], pool[c2])
                                )

    def constraint_space(chosen) -> Subspace:
        """Vectors commuting (mod center) with every chosen generator."""
        if not chosen:
            return Subspace.full(v)
        rows = []
        for u in chosen:
            images = [frame.beta(e, u) for e in std]
            for coord in range(frame.n):
                row = [images[a][coord] for a in range(v)]
                if any(row):
                    rows.append(row)
        if not rows:
            return Subspace.full(v)
        return kernel_basis(ExactMatrix(rows, cols=v))

    def independent(chosen, u) -> bool:
        from .exact import RowReducer

        red = RowReducer(v)
        for x in chosen + [u]:
            if not red.add(x):
                return False
            if not red.add(tuple(conj(t) for t in x)):
                return False
        return True

    def rec(chosen):
        if len(chosen) == h:
            return list(chosen)
        space = constraint_space(chosen)
        if space.dim < h:
            return None
        for cand in complex_candidates(space, chosen):
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            if not any(cand):
                continue
            if not independent(chosen, cand):
                continue
            if not space.contains(cand):
                continue
            result = rec(chosen + [cand])
            if result is not None:
                return result
        return None

    return rec([])


def search_bigrading(
    L: LieAlgebra, bounds: SearchBounds | None = None
) -> SearchOutcome:
    """Bounded search for a restricted-shape mixed-structure bigrading."""
    bounds = bounds or SearchBounds()
    Lc, R, t_real = _realified(L)
    series = lower_central_series(R)
    if series.nilpotency_class > 2:
        return SearchOutcome(
            status="obstructed",
            reason="nilpotency_class",
            witness={"nilpotency_class": series.nilpotency_class},
            bounds=bounds,
        )
    frame = _TwoStepFrame(R)
    # For class <= 2 the commutator sits inside the center, so the canonical
    # core has b1 = dim - dim Z and the abelian factor has dim Z - dim C1.
    b1_core = frame.v
    k = frame.z.dim - frame.c1.dim
    necessary = {
        "nilpotency_class": series.nilpotency_class,
        "abelian_factor": k,
        "b1_core": b1_core,
    }
    if b1_core % 2 == 1:
        return SearchOutcome(
            status="obstructed",
            reason="b1_parity",
            witness=necessary,
            bounds=bounds,
        )
    h = frame.v // 2
    u_gens = None
    if frame.v == 0:
        u_gens = []
    structure = None
    dfs_tried = False
    if u_gens is None and frame.c1.dim == 1:
        u_gens = _darboux_u(frame)
    if u_gens is None and frame.c1.dim == 2:
        structure = _pencil_structure(frame)
        if structure[1] is not None:
            u_gens = _regular_pencil_u(frame, structure[0], structure[1], h)
        else:
            # Singular pencil: every member is degenerate and the seeded
            # depth-first search over the kernel strips is cheap and robust.
            u_gens = _dfs_u(frame, h, bounds, structure=structure)
            dfs_tried = True
    if u_gens is None and frame.c1.dim >= 2:
        u_gens = _jspace_u(frame, h)
    if u_gens is None and h == 2:
        u_gens = _plucker_u(frame, bounds)
    if u_gens is None and not dfs_tried:
        u_gens = _dfs_u(frame, h, bounds, structure=structure)
    if u_gens is None:
        return SearchOutcome(
            status="not_found_within_bounds", witness=necessary, bounds=bounds
        )
    t_back = t_real.transpose()
    z_c = center(Lc)
    u_orig = [t_back.matvec(frame.lift(u)) for u in u_gens]
    ubar_orig = [Lc.conj_vector(u) for u in u_orig]
    comps = []
    if u_orig:
        comps.append((-1, 0, u_orig))
        comps.append((0, -1, ubar_orig))
    if z_c.dim:
        comps.append((-1, -1, z_c.vectors()))
    grading = Bigrading.build(comps)
    report = verify_bigrading(L, grading, mode="strict")
    if not report.valid:
        report = verify_bigrading(L, grading, mode="lax")
        if not report.valid:
            return SearchOutcome(
                status="not_found_within_bounds", witness=necessary, bounds=bounds
            )
    return SearchOutcome(
        status="found",
        witness=necessary,
        bigrading=grading,
        report=report,
        bounds=bounds,
    )
