"""Left Groebner bases in (homogenized) Weyl algebras.

Internally elements are integer-coefficient term maps kept primitive;
public values are :class:`~logbs.weyl.WeylElement` with monic leading
coefficient.  Any monomial order works for the plain Weyl algebra (the
commutator terms divide the product monomial); weight orders with negative
entries are run in the homogenized algebra.
"""
from __future__ import annotations

import hashlib
import heapq
import logging
import os
import random
import tempfile
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import MultiPoly, monomials_up_to, nullspace
from .weyl import (AlgebraProfile, BlockOrder, DegRevLex, TermOrder, WeightOrder,
                   WeylElement, dehomogenize, homogenize, mono_mul, parse_operator)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 40

Monomial = Tuple[int, ...]


class GroebnerError(RuntimeError):
    pass


class CappedError(GroebnerError):
    """A computation hit its degree cap; the partial basis is not a Groebner basis."""


class BasisMissing(GroebnerError):
    pass


class ComputationTimeout(GroebnerError):
    pass


_deadline: Optional[float] = None


@contextmanager
def deadline(seconds: Optional[float]):
    """Abort Groebner computations that run past ``seconds`` from now."""
    global _deadline
    saved = _deadline
    _deadline = None if seconds is None else time.monotonic() + seconds
    try:
        yield
    finally:
        _deadline = saved


def _check_deadline():
    if _deadline is not None and time.monotonic() > _deadline:
        raise ComputationTimeout("time budget exhausted during Groebner completion")


@dataclass
class LeftIdeal:
    generators: List[WeylElement]
    order: TermOrder = field(default_factory=DegRevLex)
    basis: Optional[List[WeylElement]] = None
    stats: Dict[str, int] = field(default_factory=dict)
    capped: bool = False
    # cofactors[i][j]: left multiplier of tracked generator j in basis[i]
    cofactors: Optional[List[List[WeylElement]]] = None

    @property
    def profile(self) -> AlgebraProfile:
        return self.generators[0].profile if self.generators else self.basis[0].profile

    def require_basis(self) -> List[WeylElement]:
        if self.basis is None:
            raise BasisMissing("Groebner basis has not been computed")
        if self.capped:
            raise CappedError("basis is capped (partial); refusing to use it")
        return self.basis


# ---------------------------------------------------------------------------
# integer term maps

def _to_int_terms(P: WeylElement) -> Tuple[Dict[Monomial, int], int]:
    den = 1
    for c in P.terms.values():
        den = lcm(den, c.denominator)
    return {m: int(c * den) for m, c in P.terms.items()}, den


def _content(terms: Dict[Monomial, int]) -> int:
    g = 0
    for c in terms.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


class _Elt:
    __slots__ = ("terms", "lead", "lc", "cof", "support", "degree", "sugar")

    def __init__(self, terms, order, cof=None):
        self.terms = terms
        self.lead = max(terms, key=order.key)
        self.lc = terms[self.lead]
        self.cof = cof
        used = set()
        for m in terms:
            used.update(i for i, e in enumerate(m) if e)
        self.support = frozenset(used)
        self.degree = max(sum(m) for m in terms)
        self.sugar = self.degree


def _mul_mono_terms(shift: Monomial, terms: Dict[Monomial, object], profile: AlgebraProfile) -> Dict[Monomial, object]:
    """shift * terms with shift a monomial (left multiplication)."""
    out: Dict[Monomial, object] = {}
    npairs, hidx = profile.npairs, profile.h_index
    for m, c in terms.items():
        for mm, k in mono_mul(shift, m, npairs, hidx):
            v = out.get(mm, 0) + c * k
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
    return out


def _axpy(a, X: Dict, b, Y: Dict) -> Dict:
    """a*X - b*Y on term maps."""
    out = {m: a * c for m, c in X.items()} if a != 1 else dict(X)
    for m, c in Y.items():
        v = out.get(m, 0) - b * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Engine:
    def __init__(self, profile: AlgebraProfile, order: TermOrder, ntracked: int = 0):
        self.profile = profile
        self.order = order
        self.ntracked = ntracked
        self.key = order.key
        self._neg: Dict[Monomial, tuple] = {}

    # cofactor helpers (Fraction coefficients)
    def _cof_combine(self, a, cofX, b, shift, cofY):
        if cofX is None:
            return None
        return [_axpy(a, x, b, _mul_mono_terms(shift, y, self.profile)) for x, y in zip(cofX, cofY)]

    def _cof_scale(self, cof, s):
        if cof is None:
            return None
        return [{m: c * s for m, c in x.items()} for x in cof]

    def negkey(self, m: Monomial) -> tuple:
        k = self._neg.get(m)
        if k is None:
            k = self._neg[m] = tuple(-x for x in self.key(m))
        return k

    def reduce(self, terms: Dict[Monomial, int], cof, G: List[_Elt], full: bool = True):
        """Reduce; returns (terms, cof, scale) with terms = scale*(input - element of ideal)."""
        negkey = self.negkey
        profile = self.profile
        terms = dict(terms)
        heap = [(negkey(m), m) for m in terms]
        heapq.heapify(heap)
        # done[m] = (value, multiplier at insertion); true value = value * mult // inserted
        done: Dict[Monomial, Tuple[int, int]] = {}
        mult = 1
        scale = Fraction(1)
        steps = 0
        while heap:
            _, lm = heapq.heappop(heap)
            c = terms.get(lm)
            if c is None:
                continue
            red = None
            for g in G:
                if _divides(g.lead, lm):
                    red = g
                    break
            if red is None:
                if not full:
                    break
                done[lm] = (terms.pop(lm), mult)
                continue
            shift = tuple(x - y for x, y in zip(lm, red.lead))
            gg = gcd(c, red.lc)
            a, b = red.lc // gg, c // gg
            if a < 0:
                a, b = -a, -b
            prod = _mul_mono_terms(shift, red.terms, profile)
            if a != 1:
                for m in terms:
                    terms[m] *= a
                mult *= a
            for m, v in prod.items():
                old = terms.get(m)
                if old is None:
                    terms[m] = -b * v
                    heapq.heappush(heap, (negkey(m), m))
                else:
                    nv = old - b * v
                    if nv:
                        terms[m] = nv
                    else:
                        del terms[m]
            cof = self._cof_combine(a, cof, b, shift, red.cof) if cof is not None else None
            scale *= a
            steps += 1
            if steps % 16 == 0:
                _check_deadline()
                if done:
                    done = {m: (v * (mult // ins), 1) for m, (v, ins) in done.items()}
                    mult = 1
                cg = _content(terms)
                if done and cg != 1:
                    cg = gcd(cg, _content({m: v for m, (v, _) in done.items()}))
                if cg > 1:
                    for m in terms:
                        terms[m] //= cg
                    done = {m: (v // cg, 1) for m, (v, _) in done.items()}
                    cof = self._cof_scale(cof, Fraction(1, cg))
                    scale /= cg
        out = {m: v * (mult // ins) for m, (v, ins) in done.items()}
        out.update(terms)
        cg = _content(out)
        if cg > 1:
            out = {m: v // cg for m, v in out.items()}
            cof = self._cof_scale(cof, Fraction(1, cg))
            scale /= cg
        return out, cof, scale

    def make(self, terms, cof) -> _Elt:
        e = _Elt(terms, self.order, cof)
        if e.lc < 0:
            e.terms = {m: -c for m, c in terms.items()}
            e.lc = -e.lc
            e.cof = self._cof_scale(cof, -1)
        return e

    def commuting(self, f: _Elt, g: _Elt) -> bool:
        for i in f.support:
            j = self.profile.pair_of(i)
            if j is not None and j in g.support:
                return False
        if self.profile.homogenized and self.profile.h_index in f.support | g.support:
            # h-commutators still arise through partners only; supports already checked
            pass
        return True

    def spoly(self, f: _Elt, g: _Elt):
        L = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
        sf = tuple(x - y for x, y in zip(L, f.lead))
        sg = tuple(x - y for x, y in zip(L, g.lead))
        gg = gcd(f.lc, g.lc)
        a, b = g.lc // gg, f.lc // gg
        pf = _mul_mono_terms(sf, f.terms, self.profile)
        pg = _mul_mono_terms(sg, g.terms, self.profile)
        terms = _axpy(a, pf, b, pg)
        cof = None
        if f.cof is not None:
            cof = [_axpy(a, _mul_mono_terms(sf, x, self.profile), b, _mul_mono_terms(sg, y, self.profile))
                   for x, y in zip(f.cof, g.cof)]
        return terms, cof


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def buchberger(I: LeftIdeal, degree_cap: int = DEFAULT_DEGREE_CAP, *, track: Optional[Sequence[Optional[int]]] = None,
               cache: Optional["BasisCache"] = None) -> LeftIdeal:
    """Reduced left Groebner basis of I under I.order.

    ``track`` assigns to each generator a component index (or None); the
    result then carries cofactors expressing every basis element as a left
    combination of the tracked generators modulo the untracked ones.
    """
    gens = [g for g in I.generators]
    if not gens:
        raise GroebnerError("ideal needs at least one generator")
    profile = gens[0].profile
    if not I.order.is_admissible(profile):
        raise GroebnerError(f"order {I.order.descriptor()} is not admissible for {profile.descriptor()}")
    if cache is not None:
        hit = cache.load(I, degree_cap, track)
        if hit is not None:
            return hit
    ntracked = 0
    if track is not None:
        ntracked = 1 + max((t for t in track if t is not None), default=-1)
    eng = _Engine(profile, I.order, ntracked)
    stats = {"spairs": 0, "reductions_to_zero": 0, "max_degree": 0, "product_criterion": 0, "chain_criterion": 0}

    G: List[_Elt] = []
    # live pairs -> lcm of leads; the heap holds (sugar, degree, order key, i, j)
    pairs: Dict[Tuple[int, int], Monomial] = {}
    queue: list = []
    capped = False

    def add(e: _Elt):
        k = len(G)
        h_lead = e.lead
        for (i, j), L in list(pairs.items()):
            if _divides(h_lead, L) and _lcm(G[i].lead, h_lead) != L and _lcm(G[j].lead, h_lead) != L:
                stats["chain_criterion"] += 1
                del pairs[(i, j)]
        G.append(e)
        for i in range(k):
            g = G[i]
            if all(a == 0 or b == 0 for a, b in zip(g.lead, h_lead)) and eng.commuting(g, e):
                stats["product_criterion"] += 1
                continue
            L = _lcm(g.lead, h_lead)
            pairs[(i, k)] = L
            dL = sum(L)
            # sugar strategy: keeps block-order completions close to degree order
            sugar = max(g.sugar + dL - sum(g.lead), e.sugar + dL - sum(h_lead))
            heapq.heappush(queue, (sugar, dL, eng.key(L), i, k))
        stats["max_degree"] = max(stats["max_degree"], e.degree)

    for idx, g in enumerate(gens):
        if g.profile != profile:
            raise GroebnerError("generators live in different algebras")
        if g.is_zero():
            continue
        terms, den = _to_int_terms(g)
        cof = None
        if ntracked:
            cof = [dict() for _ in range(ntracked)]
            if track[idx] is not None:
                cof[track[idx]] = {(0,) * profile.nvars: Fraction(den)}
        terms, cof, _ = eng.reduce(terms, cof, G)
        if terms:
            e = eng.make(terms, cof)
            if e.degree > degree_cap:
                capped = True
                G.append(e)
                break
            add(e)

    while queue and not capped:
        _check_deadline()
        sugar, _, _, i, j = heapq.heappop(queue)
        if pairs.pop((i, j), None) is None:
            continue
        stats["spairs"] += 1
        terms, cof = eng.spoly(G[i], G[j])
        if not terms:
            stats["reductions_to_zero"] += 1
            continue
        terms, cof, _ = eng.reduce(terms, cof, G)
        if not terms:
            stats["reductions_to_zero"] += 1
            continue
        e = eng.make(terms, cof)
        e.sugar = max(e.degree, sugar)
        if e.degree > degree_cap:
            capped = True
            G.append(e)
            stats["max_degree"] = max(stats["max_degree"], e.degree)
            break
        add(e)

    basis_elts = G if capped else _interreduce(eng, G)
    basis, cofactors = [], ([] if ntracked else None)
    for e in basis_elts:
        inv = Fraction(1, e.lc)
        basis.append(WeylElement(profile, {m: c * inv for m, c in e.terms.items()}))
        if ntracked:
            cofactors.append([WeylElement(profile, {m: c * inv for m, c in x.items()}) for x in e.cof])
    stats["basis_size"] = len(basis)
    result = replace(I, basis=basis, stats=stats, capped=capped, cofactors=cofactors)
    if cache is not None and not capped:
        cache.store(result, degree_cap, track)
    return result


def _interreduce(eng: _Engine, G: List[_Elt]) -> List[_Elt]:
    key = eng.key
    elts = sorted(G, key=lambda e: key(e.lead))
    minimal: List[_Elt] = []
    for e in elts:
        if any(_divides(m.lead, e.lead) for m in minimal):
            continue
        minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        # leads are pairwise non-divisible, so only the tail reduces
        terms, cof, _ = eng.reduce(e.terms, e.cof, others)
        out.append(eng.make(terms, cof))
    return out


def groebner_basis(generators: Sequence[WeylElement], order: Optional[TermOrder] = None,
                   degree_cap: int = DEFAULT_DEGREE_CAP, **kw) -> LeftIdeal:
    return buchberger(LeftIdeal(list(generators), order or DegRevLex()), degree_cap, **kw)


def normal_form(P: WeylElement, I: LeftIdeal) -> WeylElement:
    """Fully reduced remainder of P modulo the basis of I (P - remainder lies in I)."""
    basis = I.require_basis()
    if P.is_zero():
        return P
    if isinstance(I.order, WeightOrder) and any(w < 0 for w in I.order.weights):
        raise GroebnerError("normal forms need a well-order; weight bases are for initial-form selection")
    eng = _Engine(P.profile, I.order)
    G = []
    for b in basis:
        t, _ = _to_int_terms(b)
        G.append(eng.make(t, None))
    terms, den = _to_int_terms(P)
    red, _, scale = eng.reduce(terms, None, G)
    return WeylElement(P.profile, {m: Fraction(c) / (scale * den) for m, c in red.items()})


def tracked_normal_form(P: WeylElement, I: LeftIdeal) -> Tuple[WeylElement, List[WeylElement]]:
    """Remainder of P and left multipliers R_j of the tracked generators.

    P - remainder = sum_j R_j * tracked_j modulo the untracked generators.
    Requires a basis computed with ``track``.
    """
    basis = I.require_basis()
    if I.cofactors is None:
        raise GroebnerError("basis was computed without cofactor tracking")
    prof = P.profile
    ntracked = len(I.cofactors[0]) if I.cofactors else 0
    eng = _Engine(prof, I.order, ntracked)
    G = []
    for b, cofs in zip(basis, I.cofactors):
        t, den = _to_int_terms(b)
        G.append(eng.make(t, [{m: c * den for m, c in x.terms.items()} for x in cofs]))
    terms, den = _to_int_terms(P)
    red, cof, scale = eng.reduce(terms, [dict() for _ in range(ntracked)], G)
    denom = scale * den
    rem = WeylElement(prof, {m: Fraction(c) / denom for m, c in red.items()})
    mults = [WeylElement(prof, {m: -Fraction(c) / denom for m, c in x.items()}) for x in cof]
    return rem, mults


def _elimination_order(profile: AlgebraProfile, keep: Sequence[str]) -> BlockOrder:
    names = profile.names
    keep_idx = [names.index(k) for k in keep]
    drop_idx = [i for i in range(profile.nvars) if i not in keep_idx and names[i] != "h"]
    return BlockOrder([drop_idx, keep_idx], profile.nvars)


def eliminate(I: LeftIdeal, keep: Sequence[str], degree_cap: int = DEFAULT_DEGREE_CAP, **kw) -> LeftIdeal:
    """Generators of I intersected with the subalgebra on the ``keep`` variables."""
    profile = I.profile
    names = profile.names
    keep = list(keep)
    for k in keep:
        if k not in names:
            raise GroebnerError(f"unknown variable {k!r}")
    for i, name in enumerate(names):
        j = profile.pair_of(i)
        if j is not None and (name in keep) != (names[j] in keep):
            raise GroebnerError(f"cannot eliminate {names[j]!r} while keeping its partner {name!r} (or vice versa)")
    order = _elimination_order(profile, keep)
    G = buchberger(LeftIdeal(list(I.generators), order), degree_cap, **kw)
    if G.capped:
        raise CappedError("elimination basis hit the degree cap")
    keep_set = set(keep)
    selected, cofs = [], []
    for idx, b in enumerate(G.basis):
        if set(b.support()) <= keep_set:
            selected.append(b)
            if G.cofactors is not None:
                cofs.append(G.cofactors[idx])
    out = LeftIdeal(selected if selected else [WeylElement.zero(profile)], order,
                    basis=selected, stats=G.stats, cofactors=cofs if G.cofactors is not None else None)
    return out


def weight_gb(I: LeftIdeal, w: Sequence[int], degree_cap: int = DEFAULT_DEGREE_CAP) -> LeftIdeal:
    """Groebner basis for the weight vector w refined by degrevlex, via homogenization."""
    profile = I.profile
    if len(w) != profile.nvars:
        raise GroebnerError(f"weight vector needs {profile.nvars} entries")
    if profile.homogenized:
        raise GroebnerError("pass a non-homogenized ideal")
    p = profile.npairs
    if any(w[i] + w[i + p] < 0 for i in range(p)):
        raise GroebnerError("weight vector is not admissible: w(x) + w(dx) < 0")
    hgens = [homogenize(g) for g in I.generators if not g.is_zero()]
    horder = WeightOrder(tuple(w) + (0,), DegRevLex())
    HG = buchberger(LeftIdeal(hgens, horder), degree_cap)
    if HG.capped:
        raise CappedError("homogenized weight basis hit the degree cap")
    seen, basis = set(), []
    for b in HG.basis:
        d = dehomogenize(b)
        key = d.monic(WeightOrder(tuple(w), DegRevLex()))
        if key not in seen:
            seen.add(key)
            basis.append(key)
    stats = dict(HG.stats)
    return LeftIdeal(list(I.generators), WeightOrder(tuple(w), DegRevLex()), basis=basis, stats=stats)


def initial_form(P: WeylElement, w: Sequence[int]) -> WeylElement:
    """Terms of P of maximal w-weight."""
    if P.is_zero():
        return P
    weights = {m: sum(a * b for a, b in zip(w, m)) for m in P.terms}
    top = max(weights.values())
    return WeylElement(P.profile, {m: c for m, c in P.terms.items() if weights[m] == top})


def weight_of(P: WeylElement, w: Sequence[int]) -> Optional[int]:
    """Common w-weight of all terms, or None when P is not w-homogeneous."""
    ws = {sum(a * b for a, b in zip(w, m)) for m in P.terms}
    return ws.pop() if len(ws) == 1 else None


# ---------------------------------------------------------------------------
# central (commutative) ideals in the s-variables

def central_profile(names: Sequence[str]) -> AlgebraProfile:
    return AlgebraProfile((), (), tuple(names))


def central_gb(polys: Sequence[MultiPoly], names: Optional[Sequence[str]] = None) -> List[MultiPoly]:
    """Reduced degrevlex Groebner basis of a commutative ideal, monic generators."""
    names = tuple(names) if names is not None else polys[0].vars
    prof = central_profile(names)
    gens = [WeylElement.from_poly(p.extend(names), prof) for p in polys if not p.is_zero()]
    if not gens:
        return []
    G = buchberger(LeftIdeal(gens, DegRevLex()), degree_cap=10**6)
    return [b.central_poly() for b in G.basis]


def central_reduce(p: MultiPoly, basis: Sequence[MultiPoly]) -> MultiPoly:
    if not basis:
        return p
    names = basis[0].vars
    prof = central_profile(names)
    I = LeftIdeal([WeylElement.from_poly(b, prof) for b in basis], DegRevLex(),
                  basis=[WeylElement.from_poly(b, prof) for b in basis])
    return normal_form(WeylElement.from_poly(p.extend(names), prof), I).central_poly()


def central_contains(big: Sequence[MultiPoly], small: Sequence[MultiPoly]) -> bool:
    """Whether the ideal generated by ``small`` lies inside the one generated by ``big``."""
    if not small or all(p.is_zero() for p in small):
        return True
    if not big:
        return False
    gb = central_gb(big)
    return all(central_reduce(p.extend(gb[0].vars), gb).is_zero() for p in small if not p.is_zero())


def central_equal(a: Sequence[MultiPoly], b: Sequence[MultiPoly]) -> bool:
    return central_contains(a, b) and central_contains(b, a)


@dataclass
class ColonResult:
    generators: List[MultiPoly]
    degree: int
    stabilized: bool
    flags: List[str]


def colon_central(I: LeftIdeal, hpoly: MultiPoly, *, base: Optional[Sequence[MultiPoly]] = None,
                  degree_cap: int = 12, window: int = 2) -> ColonResult:
    """{c in Q[s] : c*hpoly in I} by degree-truncated kernels of c -> NF(c*hpoly).

    The truncation is raised until the generated ideal is unchanged over
    ``window`` consecutive degrees (and at least to the degree of ``base``).
    """
    basis = I.require_basis()
    profile = I.profile
    snames = profile.central
    h_el = WeylElement.from_poly(hpoly, profile)
    if not snames:
        raise GroebnerError("the ideal has no central variables")
    base = [b.extend(snames) for b in (base or []) if not b.is_zero()]
    # unit ideal shortcut
    if any(b.is_constant() for b in basis) or (base and any(b.is_constant() for b in base)):
        return ColonResult([MultiPoly.constant(snames, 1)], 0, True, ["unit"])
    min_degree = max((b.total_degree() for b in base), default=0)
    lim = 2 * profile.npairs
    nf_cache: Dict[Monomial, WeylElement] = {}
    current: List[MultiPoly] = central_gb(base, snames) if base else []
    history = []
    for d in range(0, degree_cap + 1):
        monos = monomials_up_to(len(snames), d)
        for mono in monos:
            if mono not in nf_cache:
                full = [0] * profile.nvars
                full[lim:lim + len(snames)] = mono
                s_el = WeylElement(profile, {tuple(full): 1})
                nf_cache[mono] = normal_form(s_el * h_el, I)
        support = sorted({m for mono in monos for m in nf_cache[mono].terms})
        rows = [[nf_cache[mono].terms.get(m, Fraction(0)) for mono in monos] for m in support]
        kernel = nullspace(rows, len(monos)) if rows else [[Fraction(int(i == j)) for j in range(len(monos))] for i in range(len(monos))]
        new = [MultiPoly(snames, {mono: c for mono, c in zip(monos, vec) if c}) for vec in kernel]
        gens = current + [p for p in new if not p.is_zero()]
        gb = central_gb(gens, snames) if gens else []
        history.append(gb)
        current = gb
        if any(g.is_constant() for g in gb):
            return ColonResult([MultiPoly.constant(snames, 1)], d, True, ["unit"])
        if d >= min_degree and len(history) > window and all(h == gb for h in history[-window - 1:]) and gb:
            return ColonResult(gb, d, True, ["degree-stabilized"])
    return ColonResult(current, degree_cap, False, ["degree-stabilized", "partial"])


# ---------------------------------------------------------------------------
# content-addressed basis cache

class BasisCache:
    """Stores completed bases as text files keyed by a content hash.

    Writes go through a temporary file and ``os.replace`` so concurrent
    writers leave one complete file (last writer wins).
    """

    VERSION = "logbs-basis v1"

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def key(self, I: LeftIdeal, degree_cap: int, track) -> str:
        h = hashlib.sha256()
        h.update(self.VERSION.encode())
        h.update(I.profile.descriptor().encode())
        h.update(I.order.descriptor().encode())
        h.update(str(degree_cap).encode())
        h.update(repr(list(track) if track is not None else None).encode())
        for g in I.generators:
            h.update(b"\n" + str(g).encode())
        return h.hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".gb")

    def store(self, G: LeftIdeal, degree_cap: int, track) -> None:
        key = self.key(G, degree_cap, track)
        lines = [f"# {self.VERSION}", f"# order: {G.order.descriptor()}", f"# profile: {G.profile.descriptor()}"]
        for k in sorted(G.stats):
            lines.append(f"# {k}: {G.stats[k]}")
        for i, b in enumerate(G.basis):
            parts = [str(b)]
            if G.cofactors is not None:
                parts += [str(c) for c in G.cofactors[i]]
            lines.append(" ;; ".join(parts))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, self._path(key))

    def load(self, I: LeftIdeal, degree_cap: int, track) -> Optional[LeftIdeal]:
        key = self.key(I, degree_cap, track)
        path = self._path(key)
        if not os.path.exists(path):
            self.misses += 1
            return None
        profile = I.profile
        try:
            stats, basis, cofs = {}, [], []
            with open(path) as fh:
                header = fh.readline().strip()
                if header != f"# {self.VERSION}":
                    raise ValueError("version mismatch")
                for line in fh:
                    line = line.rstrip("\n")
                    if line.startswith("# "):
                        k, _, v = line[2:].partition(": ")
                        if v.lstrip("-").isdigit():
                            stats[k] = int(v)
                        continue
                    parts = line.split(" ;; ")
                    basis.append(parse_operator(parts[0], profile))
                    if track is not None:
                        cofs.append([parse_operator(p, profile) for p in parts[1:]])
            if not basis:
                raise ValueError("empty basis")
            result = LeftIdeal(list(I.generators), I.order, basis=basis, stats=stats,
                               cofactors=cofs if track is not None else None)
            # spot check: one generator, chosen deterministically from the key, must reduce to zero
            rng = random.Random(key)
            probe = rng.choice([g for g in I.generators if not g.is_zero()])
            if isinstance(I.order, WeightOrder):
                pass
            elif not normal_form(probe, result).is_zero():
                raise ValueError("cached basis fails re-verification")
        except Exception as exc:  # corrupt entry: recompute
            log.warning("discarding cache entry %s: %s", path, exc)
            self.misses += 1
            return None
        self.hits += 1
        return result
