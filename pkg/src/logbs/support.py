"""Zero loci of Bernstein-Sato ideals and their images under Exp.

A hyperplane a.s + c = 0 maps under Exp(alpha) = exp(-2 pi i alpha) into the
coset {lambda : lambda^a = exp(2 pi i c)}; only the class of c mod 1 matters.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import (IntMatrix, MultiPoly, as_rational, divide_exact, format_rational,
                    hermite_normal_form, nullspace, rational_roots, rref, smith_normal_form)


class NonSplitError(ValueError):
    """A generator does not factor into linear forms over Q."""

    def __init__(self, generator: MultiPoly, residual: MultiPoly):
        super().__init__(f"generator {generator} leaves the non-linear residual {residual}")
        self.generator = generator
        self.residual = residual


def _primitive_int(vec: Sequence[Fraction]) -> Tuple[List[int], Fraction]:
    """Scale a rational vector to a primitive integer one; returns (vector, factor)."""
    den = reduce(lcm, (Fraction(x).denominator for x in vec), 1)
    ints = [int(Fraction(x) * den) for x in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return ints, Fraction(1)
    return [x // g for x in ints], Fraction(den, g)


@dataclass(frozen=True)
class LinearForm:
    """The hyperplane slope . s + constant = 0 with a primitive slope, first nonzero entry positive."""

    slope: Tuple[int, ...]
    constant: Fraction

    def __post_init__(self):
        slope = tuple(int(a) for a in self.slope)
        if not any(slope):
            raise ValueError("a linear form needs a non-zero slope")
        ints, k = _primitive_int(slope)
        c = as_rational(self.constant) * k
        if next(a for a in ints if a) < 0:
            ints, c = [-a for a in ints], -c
        object.__setattr__(self, "slope", tuple(ints))
        object.__setattr__(self, "constant", c)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Fraction], constant) -> "LinearForm":
        ints, k = _primitive_int(coeffs)
        return cls(tuple(ints), as_rational(constant) * k)

    @property
    def r(self) -> int:
        return len(self.slope)

    def poly(self, svars: Sequence[str]) -> MultiPoly:
        out = MultiPoly.constant(svars, self.constant)
        for a, v in zip(self.slope, svars):
            if a:
                out = out + MultiPoly.var(svars, v) * a
        return out

    def natural(self) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
        """The representative with slope in N^r, if the slope is sign-coherent."""
        if all(a >= 0 for a in self.slope):
            return self.slope, self.constant
        if all(a <= 0 for a in self.slope):
            return tuple(-a for a in self.slope), -self.constant
        return None

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * Fraction(p) for a, p in zip(self.slope, point)), Fraction(0)) + self.constant

    def to_str(self, svars: Optional[Sequence[str]] = None) -> str:
        svars = svars or _default_names(self.r)
        return str(self.poly(svars))

    def __str__(self):
        return self.to_str()


def _default_names(r: int) -> Tuple[str, ...]:
    return ("s",) if r == 1 else tuple(f"s{i + 1}" for i in range(r))


# ---------------------------------------------------------------------------
# linear factors

def _top_form(p: MultiPoly) -> MultiPoly:
    d = p.total_degree()
    return MultiPoly(p.vars, {m: c for m, c in p.terms.items() if sum(m) == d})


def _restrict_line(p: MultiPoly, base: Sequence[Fraction], j: int) -> MultiPoly:
    """p(base + z e_j) as a polynomial in z."""
    z = MultiPoly.var(("z",), "z")
    mapping = {}
    for i, v in enumerate(p.vars):
        mapping[v] = (z + base[i]) if i == j else MultiPoly.constant(("z",), base[i])
    return p.substitute(mapping, ("z",))


def _binary_ratios(H: MultiPoly, i: int, j: int) -> Optional[List[Fraction]]:
    """Ratios a_j/a_i of linear factors a_i s_i + a_j s_j of H restricted to the (i, j) plane.

    None when the restriction vanishes identically.
    """
    r = len(H.vars)
    z = MultiPoly.var(("z",), "z")
    mapping = {}
    for k, v in enumerate(H.vars):
        if k == i:
            mapping[v] = MultiPoly.constant(("z",), 1)
        elif k == j:
            mapping[v] = z
        else:
            mapping[v] = MultiPoly.constant(("z",), 0)
    g = H.substitute(mapping, ("z",))
    if g.is_zero():
        return None
    # a_i + a_j z vanishes at z = -a_i/a_j, so a_j/a_i = -1/z; a_j = 0 leaves no root
    ratios = [Fraction(0)]
    for root, _ in rational_roots(g) if not g.is_constant() else []:
        if root != 0:
            ratios.append(-1 / root)
    return ratios


def _candidate_slopes(H: MultiPoly, brute_force: bool = False) -> List[Tuple[int, ...]]:
    """Primitive slopes a (first nonzero entry positive) with a.s dividing the homogeneous H."""
    r = len(H.vars)
    D = H.total_degree()
    cands = set()
    if brute_force or r > 1 and any(_binary_ratios(H, 0, j) is None for j in range(1, r)):
        rng = range(-D, D + 1)
        for a in itertools.product(rng, repeat=r):
            if any(a) and next(x for x in a if x) > 0 and reduce(gcd, a, 0) == 1:
                cands.add(a)
        return sorted(cands)
    if r == 1:
        return [(1,)]
    # factors with a_0 > 0: collect ratios a_j/a_0 per coordinate plane
    per = [_binary_ratios(H, 0, j) for j in range(1, r)]
    for combo in itertools.product(*per):
        ints, _ = _primitive_int((Fraction(1),) + tuple(combo))
        cands.add(tuple(ints))
    # factors with a_0 = 0 live in the remaining coordinates
    rest = MultiPoly(H.vars[1:], {m[1:]: c for m, c in H.terms.items() if m[0] == 0})
    if not rest.is_zero() and rest.total_degree() > 0:
        for a in _candidate_slopes(rest, brute_force):
            cands.add((0,) + a)
    elif rest.is_zero():
        # s_0 divides H and the slice s_0 = 0 tells nothing about the others
        for a in itertools.product(range(-D, D + 1), repeat=r - 1):
            if any(a) and next(x for x in a if x) > 0 and reduce(gcd, a, 0) == 1:
                cands.add((0,) + a)
    return sorted(cands)


def _constants_for(p: MultiPoly, slope: Tuple[int, ...], rng: random.Random) -> List[Fraction]:
    j = next(i for i, a in enumerate(slope) if a)
    r = len(slope)
    bases = [[Fraction(0)] * r] + [[Fraction(rng.randint(-7, 7)) for _ in range(r)] for _ in range(6)]
    for base in bases:
        g = _restrict_line(p, base, j)
        if g.is_zero():
            continue
        if g.is_constant():
            return []
        ab = sum((a * b for a, b in zip(slope, base)), Fraction(0))
        return [-ab - slope[j] * z0 for z0, _ in rational_roots(g)]
    return []


def factor_linear(p: MultiPoly, *, brute_force: bool = False) -> Tuple[List[Tuple[LinearForm, int]], MultiPoly]:
    """Split off every linear factor a.s + c (a primitive integral, c rational).

    Returns (factors with multiplicities, residual) with
    p = residual * prod (a.s + c)^mult exactly.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(0)
    factors: List[Tuple[LinearForm, int]] = []
    rest = p
    if rest.total_degree() <= 0:
        return factors, rest
    H = _top_form(rest)
    for slope in _candidate_slopes(H, brute_force):
        if rest.total_degree() <= 0:
            break
        Lh = LinearForm(slope, 0).poly(p.vars)
        if divide_exact(_top_form(rest), Lh) is None:
            continue
        for c in _constants_for(rest, slope, rng):
            L = LinearForm(slope, c)
            Lp = L.poly(p.vars)
            mult = 0
            while True:
                q = divide_exact(rest, Lp)
                if q is None:
                    break
                rest, mult = q, mult + 1
            if mult:
                factors.append((L, mult))
    factors.sort(key=lambda fm: (fm[0].slope, fm[0].constant), reverse=True)
    return factors, rest


def splits(p: MultiPoly) -> bool:
    return factor_linear(p)[1].is_constant()


# ---------------------------------------------------------------------------
# affine flats

@dataclass(frozen=True)
class AffineFlat:
    """Solution set of a consistent rational linear system, stored in reduced row echelon form.

    ``rows`` hold (a_1, ..., a_r, c) meaning a.s + c = 0.
    """

    r: int
    rows: Tuple[Tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        R, piv = rref([list(map(as_rational, row)) for row in self.rows]) if self.rows else ([], [])
        if any(p == self.r for p in piv):
            raise ValueError("inconsistent linear system: the flat is empty")
        object.__setattr__(self, "rows", tuple(tuple(row) for row in R))

    @classmethod
    def full(cls, r: int) -> "AffineFlat":
        return cls(r, ())

    @classmethod
    def from_forms(cls, forms: Sequence[LinearForm], r: Optional[int] = None) -> "AffineFlat":
        r = r if r is not None else forms[0].r
        return cls(r, tuple(tuple(Fraction(a) for a in L.slope) + (L.constant,) for L in forms))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def dimension(self) -> int:
        return self.r - self.rank

    @property
    def normals(self) -> List[LinearForm]:
        return [LinearForm.from_coefficients(row[:-1], row[-1]) for row in self.rows]

    def intersect(self, other: "AffineFlat") -> Optional["AffineFlat"]:
        try:
            return AffineFlat(self.r, self.rows + other.rows)
        except ValueError:
            return None

    def contains(self, other: "AffineFlat") -> bool:
        """other is a subset of self."""
        if self.rank > other.rank:
            return False
        both = other.intersect(self)
        return both is not None and both.rows == other.rows

    def point(self) -> Tuple[Fraction, ...]:
        """A particular solution (free coordinates set to zero)."""
        p = [Fraction(0)] * self.r
        for row in self.rows:
            piv = next(i for i, a in enumerate(row[:-1]) if a)
            p[piv] = -row[-1] / row[piv]
        return tuple(p)

    def directions(self) -> List[List[Fraction]]:
        return nullspace([list(row[:-1]) for row in self.rows], self.r) if self.rows else \
            [[Fraction(int(i == j)) for j in range(self.r)] for i in range(self.r)]

    def sample(self, rng: random.Random, spread: int = 9) -> Tuple[Fraction, ...]:
        p = list(self.point())
        for d in self.directions():
            u = Fraction(rng.randint(-spread, spread), rng.randint(1, 5))
            p = [a + u * b for a, b in zip(p, d)]
        return tuple(p)

    def translate(self, z: Sequence[int]) -> "AffineFlat":
        """The flat V + z."""
        rows = []
        for row in self.rows:
            shift = sum((a * Fraction(zi) for a, zi in zip(row[:-1], z)), Fraction(0))
            rows.append(row[:-1] + (row[-1] - shift,))
        return AffineFlat(self.r, tuple(rows))

    def to_str(self, svars: Optional[Sequence[str]] = None) -> str:
        if not self.rows:
            return f"C^{self.r}"
        return "{" + ", ".join(f"{L.to_str(svars)} = 0" for L in self.normals) + "}"

    def __str__(self):
        return self.to_str()


@dataclass
class LinearLocus:
    r: int
    components: List[AffineFlat] = field(default_factory=list)

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    @property
    def is_empty(self) -> bool:
        return not self.components


def _minimal_flats(flats: List[AffineFlat]) -> List[AffineFlat]:
    """Drop flats contained in others (keep the maximal ones), deduplicated."""
    uniq = list(dict.fromkeys(flats))
    uniq.sort(key=lambda F: (F.rank, F.rows))
    kept: List[AffineFlat] = []
    for F in uniq:
        if not any(K.contains(F) for K in kept):
            kept.append(F)
    return kept


def decompose_locus(gens: Sequence[MultiPoly], r: Optional[int] = None) -> LinearLocus:
    """Irreducible components of the common zero set of products of linear forms."""
    gens = [g for g in gens if not g.is_zero()]
    if r is None:
        if not gens:
            raise ValueError("pass r when there are no generators")
        r = len(gens[0].vars)
    comps = [AffineFlat.full(r)]
    for g in gens:
        if g.is_constant():
            return LinearLocus(r, [])
        factors, residual = factor_linear(g)
        if not residual.is_constant():
            raise NonSplitError(g, residual)
        hyper = [AffineFlat.from_forms([L], r) for L, _ in factors]
        nxt = []
        for C in comps:
            for Hp in hyper:
                X = C.intersect(Hp)
                if X is not None:
                    nxt.append(X)
        comps = _minimal_flats(nxt)
    comps.sort(key=lambda F: (F.rank, F.rows))
    return LinearLocus(r, comps)


def locus_contains_point(gens: Sequence[MultiPoly], point: Sequence[Fraction]) -> bool:
    return all(g.evaluate(dict(zip(g.vars, point))) == 0 for g in gens)


# ---------------------------------------------------------------------------
# torsion cosets in (C*)^r

def _mod1(q: Fraction) -> Fraction:
    q = Fraction(q)
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class TorsionCoset:
    """{lambda : lambda^{row_i} = exp(2 pi i phase_i) for all i}, canonical via Hermite form.

    ``empty`` marks inconsistent data.  No rows means the whole torus.
    """

    r: int
    lattice: Tuple[Tuple[int, ...], ...] = ()
    phases: Tuple[Fraction, ...] = ()
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            object.__setattr__(self, "lattice", ())
            object.__setattr__(self, "phases", ())
            return
        if len(self.lattice) != len(self.phases):
            raise ValueError("one phase per lattice row is required")
        if not self.lattice:
            return
        A = IntMatrix.from_rows([list(row) for row in self.lattice], self.r)
        W, H = hermite_normal_form(A)
        Wr = W.to_rows()
        phases = [_mod1(sum((w * Fraction(p) for w, p in zip(wrow, self.phases)), Fraction(0))) for wrow in Wr]
        rows, ph = [], []
        for hrow, p in zip(H.to_rows(), phases):
            if any(hrow):
                rows.append(tuple(hrow))
                ph.append(p)
            elif p != 0:
                object.__setattr__(self, "empty", True)
                object.__setattr__(self, "lattice", ())
                object.__setattr__(self, "phases", ())
                return
        object.__setattr__(self, "lattice", tuple(rows))
        object.__setattr__(self, "phases", tuple(ph))

    @property
    def rank(self) -> int:
        return len(self.lattice)

    @property
    def dimension(self) -> int:
        return self.r - self.rank

    def is_saturated(self) -> bool:
        if not self.lattice:
            return True
        _, D, _ = smith_normal_form(IntMatrix.from_rows([list(x) for x in self.lattice], self.r))
        return all(D[i, i] == 1 for i in range(self.rank))

    def is_torsion(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.phases)

    def phase_of(self, chi: Sequence[int]) -> Optional[Fraction]:
        """Value of the character chi on the coset (as a phase mod 1), if chi lies in the lattice."""
        coeffs = _lattice_coords(self.lattice, tuple(chi))
        if coeffs is None:
            return None
        return _mod1(sum((c * p for c, p in zip(coeffs, self.phases)), Fraction(0)))

    def contains_point(self, phases: Sequence[Fraction]) -> bool:
        """Whether the torsion point lambda_k = exp(2 pi i phases_k) lies in the coset."""
        if self.empty:
            return False
        for row, p in zip(self.lattice, self.phases):
            val = sum((a * Fraction(x) for a, x in zip(row, phases)), Fraction(0))
            if _mod1(val - p) != 0:
                return False
        return True

    def to_str(self) -> str:
        if self.empty:
            return "empty"
        if not self.lattice:
            return f"(C*)^{self.r}"
        names = ("l",) if self.r == 1 else tuple(f"l{i + 1}" for i in range(self.r))
        eqs = []
        for row, p in zip(self.lattice, self.phases):
            lhs = " * ".join(f"{n}^{a}" if a != 1 else n for n, a in zip(names, row) if a) or "1"
            rhs = "1" if p == 0 else f"exp(2 pi i {format_rational(p)})"
            eqs.append(f"{lhs} = {rhs}")
        return "{" + ", ".join(eqs) + "}"

    def __str__(self):
        return self.to_str()


def _lattice_coords(basis: Sequence[Tuple[int, ...]], v: Tuple[int, ...]) -> Optional[List[int]]:
    """Integer coordinates of v in an echelon (Hermite) basis, or None."""
    v = list(v)
    coeffs = []
    for row in basis:
        piv = next(i for i, a in enumerate(row) if a)
        if v[piv] % row[piv]:
            return None
        c = v[piv] // row[piv]
        coeffs.append(c)
        v = [x - c * y for x, y in zip(v, row)]
    return coeffs if not any(v) else None


def exp_image(V) -> TorsionCoset:
    """Exp(V) for a rational flat (or a single LinearForm): the saturated character lattice
    Z^r intersected with the row space, with phase -chi.p mod 1 for a point p of V."""
    if isinstance(V, LinearForm):
        V = AffineFlat.from_forms([V])
    r = V.r
    if not V.rows:
        return TorsionCoset(r)
    dirs = V.directions()
    if not dirs:
        lattice = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    else:
        B = IntMatrix.from_rows([_primitive_int(d)[0] for d in dirs], r)
        _, D, Vm = smith_normal_form(B)
        rank = sum(1 for i in range(min(D.rows, D.cols)) if D[i, i])
        Vr = Vm.to_rows()
        lattice = [tuple(Vr[i][k] for i in range(r)) for k in range(rank, r)]
    p = V.point()
    phases = [_mod1(-sum((a * x for a, x in zip(chi, p)), Fraction(0))) for chi in lattice]
    return TorsionCoset(r, tuple(lattice), tuple(phases))


def coset_equal(A: TorsionCoset, B: TorsionCoset) -> bool:
    if A.r != B.r:
        raise ValueError("cosets live in tori of different rank")
    return (A.empty, A.lattice, A.phases) == (B.empty, B.lattice, B.phases)


def coset_contains(A: TorsionCoset, B: TorsionCoset) -> bool:
    """B is a subset of A."""
    if B.empty:
        return True
    if A.empty:
        return False
    for chi, p in zip(A.lattice, A.phases):
        q = B.phase_of(chi)
        if q is None or q != p:
            return False
    return True


def irredundant_cosets(cosets: Sequence[TorsionCoset]) -> List[TorsionCoset]:
    uniq = list(dict.fromkeys(c for c in cosets if not c.empty))
    uniq.sort(key=lambda c: (c.rank, c.lattice, c.phases))
    kept: List[TorsionCoset] = []
    for c in uniq:
        if not any(coset_contains(k, c) for k in kept):
            kept.append(c)
    return kept


def exp_image_of_locus(locus: LinearLocus) -> List[TorsionCoset]:
    return irredundant_cosets([exp_image(V) for V in locus.components])


def exp_images_equal(A: Sequence[TorsionCoset], B: Sequence[TorsionCoset]) -> bool:
    """Equality of finite unions of saturated cosets (each is irreducible, so covers are componentwise)."""
    A, B = irredundant_cosets(A), irredundant_cosets(B)
    return all(any(coset_contains(b, a) for b in B) for a in A) and \
        all(any(coset_contains(a, b) for a in A) for b in B)


# ---------------------------------------------------------------------------
# structural checks

@dataclass
class CheckOutcome:
    name: str
    status: str  # "pass", "fail" or "n/a"
    detail: str = ""
    witnesses: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {"status": self.status, "detail": self.detail, "witnesses": list(self.witnesses)}


@dataclass
class StructuralReport:
    checks: Dict[str, CheckOutcome]
    components: List[AffineFlat] = field(default_factory=list)
    exp_components: List[TorsionCoset] = field(default_factory=list)
    factorizations: List[Tuple[MultiPoly, List[Tuple[LinearForm, int]], MultiPoly]] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __getitem__(self, name):
        return self.checks[name]


def _commutative_proper(F: Sequence[MultiPoly]) -> bool:
    from .groebner import central_gb
    gb = central_gb(list(F), F[0].vars)
    return not any(g.is_constant() for g in gb)


def structural_check(result) -> StructuralReport:
    """Check a BSResult (or any object with F, K, m, svars, generators, flags) against
    the shape, properness, torsion, localization and slope statements."""
    gens = [g for g in result.generators if not g.is_zero()]
    svars = tuple(result.svars)
    r = len(svars)
    m = tuple(getattr(result, "m", (0,) * r))
    localized = any(m)
    checks: Dict[str, CheckOutcome] = {}
    unit = any(g.is_constant() for g in gens)

    # properness
    F = getattr(result, "F", None)
    if localized:
        checks["nonzero-proper"] = CheckOutcome("nonzero-proper", "n/a", "localized ideal")
    elif F is None or not _commutative_proper(F):
        checks["nonzero-proper"] = CheckOutcome("nonzero-proper", "n/a", "<f_1, ..., f_r> is the unit ideal")
    else:
        ok = bool(gens) and not unit
        checks["nonzero-proper"] = CheckOutcome(
            "nonzero-proper", "pass" if ok else "fail",
            "non-zero and proper" if ok else ("zero ideal" if not gens else "unit ideal"))

    # factorizations
    facts = []
    for g in gens:
        fl, res = factor_linear(g)
        facts.append((g, fl, res))
    split = [(g, fl) for g, fl, res in facts if res.is_constant()]
    if unit:
        checks["shape"] = CheckOutcome("shape", "n/a", "unit ideal (empty locus)")
    elif split:
        g, fl = split[0]
        checks["shape"] = CheckOutcome("shape", "pass", f"{g} splits into linear forms",
                                       [f"({L.to_str(svars)})^{k}" for L, k in fl])
    else:
        checks["shape"] = CheckOutcome("shape", "fail", "no generator splits into linear forms",
                                       [f"residual {res}" for _, _, res in facts])

    # conjecture shape: slopes in N^r, constants > 0
    if unit or not split:
        checks["conjecture-shape"] = CheckOutcome("conjecture-shape", "n/a" if unit else "fail",
                                                  "" if unit else "no split generator")
    else:
        best = None
        for g, fl in split:
            reps = [L.natural() for L, _ in fl]
            good = all(rep is not None and rep[1] > 0 for rep in reps)
            wit = [f"slope {rep[0]}, c0 = {format_rational(rep[1])}" if rep else f"mixed-sign slope {L.slope}"
                   for rep, (L, _) in zip(reps, fl)]
            if good:
                best = ("pass", str(g), wit)
                break
            best = best or ("fail", str(g), wit)
        checks["conjecture-shape"] = CheckOutcome("conjecture-shape", best[0], best[1], best[2])

    # locus and exp images
    components, exp_components = [], []
    if unit:
        checks["torsion"] = CheckOutcome("torsion", "n/a", "empty locus")
    else:
        try:
            locus = decompose_locus(gens, r)
            components = locus.components
            exp_components = exp_image_of_locus(locus)
            ok = all(c.is_torsion() for c in exp_components)
            checks["torsion"] = CheckOutcome("torsion", "pass" if ok else "fail",
                                             f"{len(exp_components)} torsion translated subtori",
                                             [c.to_str() for c in exp_components])
        except NonSplitError as exc:
            checks["torsion"] = CheckOutcome("torsion", "fail", "locus is not a union of rational flats",
                                             [f"generator {exc.generator} residual {exc.residual}"])

    # localization independence
    if not localized:
        checks["localize-independence"] = CheckOutcome("localize-independence", "n/a", "m = 0")
    else:
        bad = [svars[i] for i in range(r) if m[i] and any(g.degree(svars[i]) > 0 for g in gens)]
        checks["localize-independence"] = CheckOutcome(
            "localize-independence", "fail" if bad else "pass",
            f"generators involve {bad}" if bad else "no s_i with i in supp(m)", bad)

    # slope condition for a principal (localized) K = <v>
    K = getattr(result, "K", None)
    vgen = None
    if K is not None:
        proj = {tuple(0 if m[i] else v[i] for i in range(r)) for v in K.generators}
        from .monoid import _minimalize
        proj = [p for p in _minimalize(proj)] if all(any(p) for p in proj) else []
        if len(proj) == 1:
            vgen = proj[0]
    if unit or vgen is None or not components:
        checks["slope-condition"] = CheckOutcome("slope-condition", "n/a",
                                                 "needs a principal (localized) K and a non-empty locus")
    else:
        bad, wit = [], []
        for C in components:
            if C.rank != 1:
                continue
            L = C.normals[0]
            rep = L.natural()
            slope = rep[0] if rep else L.slope
            dot = sum(a * b for a, b in zip(slope, vgen))
            wit.append(f"v = {list(vgen)}, a = {list(slope)}, v.a = {dot}")
            if rep is None or dot == 0:
                bad.append(str(L))
        checks["slope-condition"] = CheckOutcome("slope-condition", "fail" if bad else "pass",
                                                 f"hyperplanes violating: {bad}" if bad else "v.a != 0 on every hyperplane",
                                                 wit)
    return StructuralReport(checks, components, exp_components, facts)
