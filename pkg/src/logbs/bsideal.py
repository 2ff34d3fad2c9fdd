"""Annihilators of F^s and Bernstein-Sato ideals along monoid ideals.

All operators act on O[1/f, s]F^s with F^s = f_1^{s_1}...f_r^{s_r}; the
graph embedding identifies s_i with -dt_i*t_i.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import MultiPoly
from .groebner import (DEFAULT_DEGREE_CAP, CappedError, GroebnerError, LeftIdeal, buchberger,
                       central_contains, central_equal, central_gb, colon_central, eliminate,
                       normal_form, tracked_normal_form)
from .monoid import MonoidIdeal, localize, minimal_generators, power, scaled
from .weyl import (CONVENTION, AlgebraProfile, DegRevLex, TwistedContext, TwistedElement,
                   WeylElement, act_on_twisted, s_names, t_names)

log = logging.getLogger(__name__)


class BSError(ValueError):
    pass


class AnnihilatorError(BSError):
    """A computed generator fails to kill F^s (an internal consistency failure)."""


def _fresh(base: Sequence[str], taken: Sequence[str]) -> Tuple[str, ...]:
    taken = set(taken)
    names = tuple(base)
    while taken & set(names):
        names = tuple("_" + v for v in names)
    return names


def svars_for(F: Sequence[MultiPoly]) -> Tuple[str, ...]:
    """Names of the s-parameters, avoiding clashes with the x-variables."""
    return _fresh(s_names(len(F)), F[0].vars)


def _check_F(F: Sequence[MultiPoly]) -> Tuple[MultiPoly, ...]:
    F = tuple(F)
    if not F:
        raise BSError("F must be non-empty")
    if any(f.is_zero() for f in F):
        raise BSError("entries of F must be non-zero")
    if any(f.vars != F[0].vars for f in F):
        raise BSError("entries of F must share one variable list")
    return F


# ---------------------------------------------------------------------------
# Ann F^s

@dataclass
class AnnResult:
    F: Tuple[MultiPoly, ...]
    generators: List[WeylElement]
    svars: Tuple[str, ...]
    malgrange_basis: List[WeylElement] = field(default_factory=list)
    trace: List[Tuple[Tuple[int, ...], str, str]] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        ctx = self.context
        unit = TwistedElement.unit(ctx)
        for g in self.generators:
            if not act_on_twisted(g, unit).is_zero():
                raise AnnihilatorError(f"{g} does not annihilate F^s")

    @property
    def context(self) -> TwistedContext:
        return TwistedContext(self.F, self.svars)

    @property
    def profile(self) -> AlgebraProfile:
        return self.context.operator_profile()

    def shifted(self, v: Sequence[int]) -> List[WeylElement]:
        """Generators of Ann(f^v F^s): substitute s -> s + v."""
        mapping = {}
        for name, e in zip(self.svars, v):
            p = MultiPoly.var(self.svars, name)
            mapping[name] = p + e
        return [g.substitute_central(mapping) for g in self.generators]


def _theta_product(a: int, s: MultiPoly) -> MultiPoly:
    """t^a dt^a = (-1)^a (s+1)(s+2)...(s+a) under s = -dt*t."""
    out = MultiPoly.constant(s.vars, (-1) ** a)
    for k in range(1, a + 1):
        out = out * (s + k)
    return out


def _to_s_operator(P: WeylElement, src: AlgebraProfile, dst: AlgebraProfile) -> WeylElement:
    """Rewrite a weight-zero element of D_{n+r} (every term t_i^a dt_i^a) into D_n[s]."""
    n, r, p = src.n, src.r, src.npairs
    svars = dst.central
    spolys = [MultiPoly.var(svars, v) for v in svars]
    out = WeylElement.zero(dst)
    for m, c in P.terms.items():
        tpart = m[n:n + r]
        dtpart = m[p + n:p + n + r]
        if tpart != dtpart:
            raise BSError("element is not of weight zero")
        spoly = MultiPoly.constant(svars, c)
        for i, a in enumerate(tpart):
            if a:
                spoly = spoly * _theta_product(a, spolys[i])
        xm = m[:n] + m[p:p + n]
        for sm, sc in spoly.terms.items():
            out = out + WeylElement(dst, {xm + sm: sc})
    return out


def ann_fs(F: Sequence[MultiPoly], *, degree_cap: int = DEFAULT_DEGREE_CAP, cache=None) -> AnnResult:
    """Generators of Ann_{D_n[s]}(F^s).

    Elimination of u, v from <t_i - u_i f_i, dx_j + sum_i u_i (df_i/dx_j) dt_i,
    u_i v_i - 1> leaves the V-homogeneous part of the graph ideal.  Each
    homogeneous element is moved to weight zero by a power of t_i or dt_i
    and rewritten in s via t^a dt^a = (-1)^a (s+1)...(s+a).
    """
    F = _check_F(F)
    xvars = F[0].vars
    r = len(F)
    svars = svars_for(F)
    ctx = TwistedContext(F, svars)
    dst = ctx.operator_profile()
    if all(f.is_constant() for f in F):
        gens = [WeylElement.var(dst, "d" + x) for x in xvars]
        return AnnResult(F, gens, svars, trace=[((0,) * r, "constant F", "dx")])
    tv = _fresh(t_names(r), xvars + svars)
    uv = _fresh(tuple(f"u{i + 1}" for i in range(r)) + tuple(f"v{i + 1}" for i in range(r)),
                xvars + tv + tuple("d" + v for v in xvars + tv))
    prof = AlgebraProfile(xvars, tv, uv)
    n = len(xvars)
    U = [WeylElement.var(prof, uv[i]) for i in range(r)]
    V = [WeylElement.var(prof, uv[r + i]) for i in range(r)]
    T = [WeylElement.var(prof, v) for v in tv]
    DT = [WeylElement.var(prof, "d" + v) for v in tv]
    gens = []
    for i, f in enumerate(F):
        gens.append(T[i] - U[i] * WeylElement.from_poly(f, prof))
    for x in xvars:
        g = WeylElement.var(prof, "d" + x)
        for i, f in enumerate(F):
            df = f.diff(x)
            if not df.is_zero():
                g = g + U[i] * WeylElement.from_poly(df, prof) * DT[i]
        gens.append(g)
    for i in range(r):
        gens.append(U[i] * V[i] - 1)
    keep = [v for v in prof.names if v not in uv]
    J = eliminate(LeftIdeal(gens), keep, degree_cap, cache=cache)
    trace = []
    converted = []
    for P in J.basis:
        # split into multi-homogeneous parts (each part lies in the ideal)
        parts: Dict[Tuple[int, ...], Dict] = {}
        for m, c in P.terms.items():
            d = tuple(m[prof.npairs + n + i] - m[n + i] for i in range(r))
            parts.setdefault(d, {})[m] = c
        for d, terms in sorted(parts.items()):
            Q = WeylElement(prof, terms)
            for i, di in enumerate(d):
                if di > 0:
                    Q = T[i] ** di * Q
                elif di < 0:
                    Q = DT[i] ** (-di) * Q
            S = _to_s_operator(Q, prof, dst)
            if not S.is_zero():
                converted.append(S)
                trace.append((d, str(P), str(S)))
    if not converted:
        raise BSError("elimination produced no annihilating operators")
    G = buchberger(LeftIdeal(converted, DegRevLex()), degree_cap, cache=cache)
    if G.capped:
        raise CappedError("annihilator basis hit the degree cap")
    stats = {"malgrange_basis": len(J.basis), "ann_basis": len(G.basis)}
    stats.update({f"elim_{k}": v for k, v in J.stats.items()})
    return AnnResult(F, list(G.basis), svars, list(J.basis), trace, stats)


# ---------------------------------------------------------------------------
# certification

def certify(b: MultiPoly, witnesses: Sequence[Tuple[WeylElement, Sequence[int]]], F: Sequence[MultiPoly],
            *, shift: Optional[Sequence[int]] = None, svars: Optional[Sequence[str]] = None) -> bool:
    """Check b(s + shift) f^shift F^s = sum_j P_j (f^{v_j} F^s) exactly.

    With no shift this is the functional equation b F^s = sum_j P_j f^{v_j} F^s.
    """
    F = _check_F(F)
    svars = tuple(svars) if svars is not None else svars_for(F)
    ctx = TwistedContext(F, svars)
    r = len(F)
    shift = tuple(shift) if shift is not None else (0,) * r
    bb = b.extend(svars) if set(b.vars) <= set(svars) else None
    if bb is None:
        raise BSError(f"b must be a polynomial in {svars}")
    bb = bb.shift({s: k for s, k in zip(svars, shift) if k})
    lhs = TwistedElement(bb.extend(ctx.ring) * ctx.f_power(shift), 0, ctx)
    rhs = TwistedElement(MultiPoly.zero(ctx.ring), 0, ctx)
    for P, v in witnesses:
        rhs = rhs + act_on_twisted(P, TwistedElement.shifted(ctx, v))
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# Bernstein-Sato ideals

@dataclass
class Certificate:
    generator: MultiPoly
    witnesses: List[Tuple[WeylElement, Tuple[int, ...]]]
    shift: Tuple[int, ...]
    verified: bool

    def to_dict(self) -> dict:
        return {
            "generator": str(self.generator),
            "shift": list(self.shift),
            "witnesses": [{"operator": str(P), "v": list(v)} for P, v in self.witnesses],
            "identity": self.identity(),
            "verified": self.verified,
        }

    def identity(self) -> str:
        b = str(self.generator)
        if any(self.shift):
            lhs = f"({b})[s -> s + {list(self.shift)}] * f^{list(self.shift)} * F^s"
        else:
            lhs = f"({b}) * F^s"
        rhs = " + ".join(f"({P}) . (f^{list(v)} * F^s)" for P, v in self.witnesses) or "0"
        return f"{lhs} = {rhs}"


@dataclass
class ChainStep:
    k: int
    generators: List[MultiPoly]
    contains_previous: bool
    colon_flags: List[str]


@dataclass
class BSResult:
    F: Tuple[MultiPoly, ...]
    K: MonoidIdeal
    m: Tuple[int, ...]
    svars: Tuple[str, ...]
    generators: List[MultiPoly]
    certificates: List[Certificate] = field(default_factory=list)
    chain: List[ChainStep] = field(default_factory=list)
    flags: List[str] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    k_star: Optional[int] = None
    window: Optional[int] = None

    @property
    def r(self) -> int:
        return len(self.F)

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def flagged(self) -> bool:
        return any(f in ("capped", "heuristic-stabilization", "partial") for f in self.flags)

    def principal(self) -> Optional[MultiPoly]:
        return self.generators[0] if len(self.generators) == 1 else None


def _monic(p: MultiPoly) -> Tuple[MultiPoly, Fraction]:
    if p.is_zero():
        return p, Fraction(1)
    inv = 1 / p.lead()[1]
    return p * inv, inv


def _as_monoid(K, r: int) -> MonoidIdeal:
    if isinstance(K, MonoidIdeal):
        if K.r != r:
            raise BSError(f"K lives in N^{K.r} but F has {r} entries")
        return K
    return minimal_generators([tuple(v) for v in K])


@dataclass
class _Presentation:
    """Ann(F^s) + sum_j D[s] f^{v_j}, with the tracked f^{v_j} generators last."""

    ann: AnnResult
    K: MonoidIdeal
    generators: List[WeylElement]
    track: List[Optional[int]]


def _presentation(F, K: MonoidIdeal, ann: Optional[AnnResult], degree_cap, cache) -> _Presentation:
    ann = ann or ann_fs(F, degree_cap=degree_cap, cache=cache)
    prof = ann.profile
    ctx = ann.context
    gens = list(ann.generators)
    track: List[Optional[int]] = [None] * len(gens)
    for j, v in enumerate(K.generators):
        gens.append(WeylElement.from_poly(ctx.f_power(v), prof))
        track.append(j)
    return _Presentation(ann, K, gens, track)


def _minimize_witness(R: WeylElement, ann: AnnResult, v, cache, degree_cap) -> WeylElement:
    """Normal form of R modulo Ann(f^v F^s), which does not change R . f^v F^s."""
    if R.is_zero():
        return R
    shifted = ann.shifted(v)
    G = buchberger(LeftIdeal(shifted, DegRevLex()), degree_cap, cache=cache)
    if G.capped:
        return R
    return normal_form(R, G)


def bs_ideal(F: Sequence[MultiPoly], K, *, degree_cap: int = DEFAULT_DEGREE_CAP, cache=None,
             ann: Optional[AnnResult] = None, certificates: bool = True) -> BSResult:
    """B^K_F = (Ann F^s + sum_j D[s] f^{v_j}) intersected with C[s], with certificates."""
    F = _check_F(F)
    K = _as_monoid(K, len(F))
    pres = _presentation(F, K, ann, degree_cap, cache)
    ann = pres.ann
    svars = ann.svars
    E = eliminate(LeftIdeal(pres.generators), list(svars), degree_cap, track=pres.track, cache=cache)
    flags: List[str] = []
    gens: List[MultiPoly] = []
    certs: List[Certificate] = []
    for i, b in enumerate(E.basis):
        poly = b.central_poly(svars)
        poly, scale = _monic(poly)
        gens.append(poly)
        if certificates and E.cofactors is not None:
            wit = []
            for j, v in enumerate(K.generators):
                R = E.cofactors[i][j] * scale
                R = _minimize_witness(R, ann, v, cache, degree_cap)
                if not R.is_zero():
                    wit.append((R, tuple(v)))
            ok = certify(poly, wit, F, svars=svars)
            if not ok:
                raise BSError(f"certificate for {poly} failed the functional-equation check")
            certs.append(Certificate(poly, wit, (0,) * len(F), ok))
    if any(g.is_constant() for g in gens):
        flags.append("empty-locus")
        gens = [MultiPoly.constant(svars, 1)]
        certs = [c for c in certs if c.generator.is_constant()][:1]
    stats = dict(ann.stats)
    stats.update({f"bs_{k}": v for k, v in E.stats.items()})
    return BSResult(F, K, (0,) * len(F), svars, gens, certs, [], flags, stats)


def b_function(f: MultiPoly, **kw) -> MultiPoly:
    """Monic generator of the classical Bernstein-Sato ideal of f."""
    if f.is_zero() or f.is_constant():
        raise BSError("the b-function needs a non-constant polynomial")
    res = bs_ideal((f,), minimal_generators([(1,)]), **kw)
    if len(res.generators) != 1:
        raise BSError(f"expected a principal ideal, got {len(res.generators)} generators")
    return res.generators[0]


# ---------------------------------------------------------------------------
# localized ideals

def _shift_polys(polys: Sequence[MultiPoly], svars, delta: Sequence[int]) -> List[MultiPoly]:
    """Substitute s -> s + delta."""
    off = {s: d for s, d in zip(svars, delta) if d}
    return [p.shift(off) if off else p for p in polys]


def bs_ideal_localized(F: Sequence[MultiPoly], K, m: Sequence[int], W: int = 3, *, kmax: int = 8,
                       degree_cap: int = DEFAULT_DEGREE_CAP, colon_degree: int = 12, cache=None,
                       ann: Optional[AnnResult] = None, certificates: bool = True) -> BSResult:
    """B^{K_m}_F via the chain J_k = {b : b(s + k m) f^{k m} in I}.

    The chain is ascending; it is declared stable once W consecutive steps
    agree, which is a heuristic and always flagged.
    """
    F = _check_F(F)
    K = _as_monoid(K, len(F))
    m = tuple(int(e) for e in m)
    if len(m) != len(F):
        raise BSError("m must have one entry per element of F")
    if any(e < 0 for e in m):
        raise BSError("m must lie in N^r")
    if not any(m):
        return bs_ideal(F, K, degree_cap=degree_cap, cache=cache, ann=ann, certificates=certificates)
    if W < 1:
        raise BSError("the stabilization window must be at least 1")
    base = bs_ideal(F, K, degree_cap=degree_cap, cache=cache, ann=ann, certificates=False)
    pres = _presentation(F, K, ann, degree_cap, cache)
    ann = pres.ann
    svars = ann.svars
    ctx = ann.context
    I = buchberger(LeftIdeal(pres.generators, DegRevLex()), degree_cap, track=pres.track, cache=cache)
    if I.capped:
        raise CappedError("presentation basis hit the degree cap")
    flags: List[str] = ["heuristic-stabilization"]
    chain = [ChainStep(0, list(base.generators), True, ["k=0"])]
    colons: Dict[int, List[MultiPoly]] = {0: list(base.generators)}
    k_star = None
    run = 0
    for k in range(1, kmax + 1):
        km = tuple(k * e for e in m)
        h = ctx.f_power(km)
        prev = chain[-1].generators
        # J_{k-1} shifted into the k-th colon coordinates is a valid starting base
        seed = _shift_polys(prev, svars, km) if prev else []
        res = colon_central(I, h, base=seed or None, degree_cap=colon_degree)
        colons[k] = res.generators
        Jk = central_gb(_shift_polys(res.generators, svars, [-e for e in km]), svars) if res.generators else []
        asc = central_contains(Jk, prev) if prev else True
        if not asc:
            raise BSError(f"chain is not ascending at k = {k}")
        chain.append(ChainStep(k, Jk, asc, list(res.flags)))
        if "partial" in res.flags:
            flags.append("partial")
        if central_equal(Jk, prev):
            run += 1
        else:
            run = 0
        if any(g.is_constant() for g in Jk):
            k_star = k
            break
        if run >= W:
            k_star = k - W
            break
    final = chain[-1].generators
    if k_star is None:
        flags.append("partial")
        k_star_out = None
    else:
        k_star_out = k_star
    gens = [(_monic(g)[0]) for g in final]
    if any(g.is_constant() for g in gens):
        flags.append("empty-locus")
        gens = [MultiPoly.constant(svars, 1)]
    certs: List[Certificate] = []
    if certificates and k_star is not None:
        kc = next(st.k for st in chain if central_equal(st.generators, final))
        km = tuple(kc * e for e in m)
        for g in gens:
            c = g.shift({s: d for s, d in zip(svars, km) if d})
            P = WeylElement.from_poly(c.extend(ctx.ring) * ctx.f_power(km), ann.profile)
            rem, mults = tracked_normal_form(P, I)
            if not rem.is_zero():
                continue
            wit = []
            for j, v in enumerate(K.generators):
                R = _minimize_witness(mults[j], ann, v, cache, degree_cap)
                if not R.is_zero():
                    wit.append((R, tuple(v)))
            ok = certify(g, wit, F, shift=km, svars=svars)
            if not ok:
                raise BSError(f"localized certificate for {g} failed the check")
            certs.append(Certificate(g, wit, km, ok))
    stats = dict(base.stats)
    stats["chain_length"] = len(chain) - 1
    return BSResult(F, K, m, svars, gens, certs, chain, flags, stats, k_star_out, W)


# ---------------------------------------------------------------------------
# towers

@dataclass
class TowerLevel:
    j: int
    K: MonoidIdeal
    result: BSResult
    exp_image: list


@dataclass
class Tower:
    levels: List[TowerLevel]
    mode: str
    coincide: bool
    aux_levels: List[TowerLevel] = field(default_factory=list)
    aux_coincide: Optional[bool] = None
    flags: List[str] = field(default_factory=list)

    def __iter__(self):
        return (lv.result for lv in self.levels)

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i].result


def _level_exp(res: BSResult):
    from .support import decompose_locus, exp_image_of_locus
    if res.is_unit:
        return []
    locus = decompose_locus(res.generators, res.r)
    return exp_image_of_locus(locus)


def _run_levels(F, K, m, jmax, ideal_for_level, **kw) -> List[TowerLevel]:
    levels = []
    ann = kw.pop("ann", None) or ann_fs(F, degree_cap=kw.get("degree_cap", DEFAULT_DEGREE_CAP), cache=kw.get("cache"))
    for j in range(1, jmax + 1):
        Kj = ideal_for_level(K, j)
        if any(m):
            res = bs_ideal_localized(F, Kj, m, ann=ann, **kw)
        else:
            kw2 = {k: v for k, v in kw.items() if k in ("degree_cap", "cache", "certificates")}
            res = bs_ideal(F, Kj, ann=ann, **kw2)
        levels.append(TowerLevel(j, Kj, res, _level_exp(res)))
    return levels


def _all_equal(levels: List[TowerLevel]) -> bool:
    from .support import exp_images_equal
    return all(exp_images_equal(levels[0].exp_image, lv.exp_image) for lv in levels[1:])


def support_tower(F: Sequence[MultiPoly], K, m: Optional[Sequence[int]] = None, jmax: int = 3, *,
                  mode: str = "generators", **kw) -> Tower:
    """B-S ideals for the levels K^(j) = <j v_1, ..., j v_p> (mode "generators"),
    K^j (mode "powers"), or both (mode "both", disagreement is flagged)."""
    F = _check_F(F)
    K = _as_monoid(K, len(F))
    m = tuple(m) if m is not None else (0,) * len(F)
    if jmax < 1:
        raise BSError("jmax must be at least 1")
    if mode not in ("generators", "powers", "both"):
        raise BSError(f"unknown tower mode {mode!r}")
    kw.setdefault("ann", ann_fs(F, degree_cap=kw.get("degree_cap", DEFAULT_DEGREE_CAP), cache=kw.get("cache")))
    primary = power if mode == "powers" else scaled
    levels = _run_levels(F, K, m, jmax, primary, **dict(kw))
    tower = Tower(levels, "powers" if mode == "powers" else "generators", _all_equal(levels))
    if mode == "both":
        tower.aux_levels = _run_levels(F, K, m, jmax, power, **dict(kw))
        tower.aux_coincide = _all_equal(tower.aux_levels)
        from .support import exp_images_equal
        if not all(exp_images_equal(a.exp_image, b.exp_image) for a, b in zip(levels, tower.aux_levels)):
            tower.flags.append("tower-modes-disagree")
    if not tower.coincide:
        tower.flags.append("exp-images-vary")
    for lv in levels + tower.aux_levels:
        for fl in lv.result.flags:
            if fl not in tower.flags and fl != "empty-locus":
                tower.flags.append(fl)
    return tower


__all__ = [
    "AnnResult", "BSResult", "Certificate", "ChainStep", "Tower", "TowerLevel", "BSError",
    "AnnihilatorError", "ann_fs", "bs_ideal", "b_function", "bs_ideal_localized", "support_tower",
    "certify", "svars_for", "CONVENTION", "localize",
]
