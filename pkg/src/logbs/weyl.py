"""The Weyl algebra D_{n+r} with central parameters and optional homogenization.

Monomials are normally ordered ``x^a t^b dx^c dt^d s^e h^g`` and stored as
flat exponent tuples in exactly that layout.  Central variables (``s``
and friends) commute with everything; with ``h`` present the commutation
relation becomes ``dx*x = x*dx + h^2``.

Convention: ``s_i = -dt_i*t_i = -t_i*dt_i - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, perm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .arith import (ArithmeticError_, MultiPoly, ProfileMismatch, as_rational,
                    degrevlex_key, divide_exact, format_terms)

Monomial = Tuple[int, ...]

CONVENTION = "s_i = -dt_i*t_i (equivalently -t_i*dt_i - 1)"


def s_names(r: int) -> Tuple[str, ...]:
    return ("s",) if r == 1 else tuple(f"s{i + 1}" for i in range(r))


def t_names(r: int) -> Tuple[str, ...]:
    return ("t",) if r == 1 else tuple(f"t{i + 1}" for i in range(r))


@dataclass(frozen=True)
class AlgebraProfile:
    """Variable layout of a (possibly homogenized) Weyl algebra."""

    xvars: Tuple[str, ...]
    tvars: Tuple[str, ...] = ()
    central: Tuple[str, ...] = ()
    homogenized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "xvars", tuple(self.xvars))
        object.__setattr__(self, "tvars", tuple(self.tvars))
        object.__setattr__(self, "central", tuple(self.central))
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError(f"variable names collide: {names}")

    @classmethod
    def standard(cls, n: int, r: int = 0, *, with_s: bool = False, homogenized: bool = False) -> "AlgebraProfile":
        xs = ("x",) if n == 1 else tuple(f"x{i + 1}" for i in range(n))
        return cls(xs, t_names(r) if r else (), s_names(r) if with_s and r else (), homogenized)

    @property
    def n(self) -> int:
        return len(self.xvars)

    @property
    def r(self) -> int:
        return len(self.tvars)

    @property
    def npairs(self) -> int:
        return len(self.xvars) + len(self.tvars)

    @property
    def has_s(self) -> bool:
        return bool(self.central)

    @property
    def nvars(self) -> int:
        return 2 * self.npairs + len(self.central) + (1 if self.homogenized else 0)

    @property
    def h_index(self) -> int:
        return self.nvars - 1 if self.homogenized else -1

    @property
    def names(self) -> Tuple[str, ...]:
        pos = self.xvars + self.tvars
        out = pos + tuple("d" + v for v in pos) + self.central
        return out + (("h",) if self.homogenized else ())

    def index(self, name: str) -> int:
        return self.names.index(name)

    def pair_of(self, i: int) -> Optional[int]:
        """Index of the commutation partner of variable ``i``, if any."""
        p = self.npairs
        if i < p:
            return i + p
        if i < 2 * p:
            return i - p
        return None

    def with_homogenization(self, flag: bool) -> "AlgebraProfile":
        return AlgebraProfile(self.xvars, self.tvars, self.central, flag)

    def descriptor(self) -> str:
        return f"x={','.join(self.xvars)};t={','.join(self.tvars)};c={','.join(self.central)};h={int(self.homogenized)}"


@lru_cache(maxsize=1 << 20)
def mono_mul(m1: Monomial, m2: Monomial, npairs: int, h_index: int) -> Tuple[Tuple[Monomial, int], ...]:
    """Normally ordered expansion of m1*m2 with integer coefficients.

    Per pair: dx^c * x^b = sum_k C(c,k) b!/(b-k)! x^(b-k) dx^(c-k) (times h^2k).
    """
    base = [a + b for a, b in zip(m1, m2)]
    results: List[Tuple[List[int], int]] = [(base, 1)]
    for i in range(npairs):
        c = m1[npairs + i]
        b = m2[i]
        if not (c and b):
            continue
        expanded = []
        for k in range(min(c, b) + 1):
            coef = comb(c, k) * perm(b, k)
            for mono, cf in results:
                if k:
                    mono = list(mono)
                    mono[i] -= k
                    mono[npairs + i] -= k
                    if h_index >= 0:
                        mono[h_index] += 2 * k
                expanded.append((mono, cf * coef))
        results = expanded
    return tuple((tuple(m), c) for m, c in results)


def mul_terms(a: Mapping[Monomial, object], b: Mapping[Monomial, object], profile: AlgebraProfile) -> Dict[Monomial, object]:
    """Product of two term maps (coefficients int or Fraction)."""
    out: Dict[Monomial, object] = {}
    npairs, hidx = profile.npairs, profile.h_index
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c12 = c1 * c2
            for m, k in mono_mul(m1, m2, npairs, hidx):
                v = out.get(m, 0) + c12 * k
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
    return out


class WeylElement:
    """Normally ordered element of a Weyl algebra with exact rational coefficients."""

    __slots__ = ("profile", "terms", "_hash")

    def __init__(self, profile: AlgebraProfile, terms: Optional[Mapping[Monomial, object]] = None):
        self.profile = profile
        nv = profile.nvars
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != nv or any(e < 0 for e in m):
                    raise ProfileMismatch(f"bad monomial {m} for profile {profile.names}")
                c = as_rational(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
        ordered = sorted((m for m, c in clean.items() if c), key=degrevlex_key, reverse=True)
        self.terms: Dict[Monomial, Fraction] = {m: clean[m] for m in ordered}
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, profile) -> "WeylElement":
        return cls(profile)

    @classmethod
    def one(cls, profile) -> "WeylElement":
        return cls(profile, {(0,) * profile.nvars: 1})

    @classmethod
    def constant(cls, profile, c) -> "WeylElement":
        return cls(profile, {(0,) * profile.nvars: c})

    @classmethod
    def var(cls, profile, name: str) -> "WeylElement":
        i = profile.index(name)
        m = [0] * profile.nvars
        m[i] = 1
        return cls(profile, {tuple(m): 1})

    @classmethod
    def monomial(cls, profile, exps: Sequence[int], coeff=1) -> "WeylElement":
        return cls(profile, {tuple(exps): coeff})

    @classmethod
    def from_poly(cls, poly: MultiPoly, profile: AlgebraProfile) -> "WeylElement":
        """Embed a commutative polynomial whose variables are position or central variables of ``profile``."""
        idx = []
        for v in poly.vars:
            j = profile.names.index(v) if v in profile.names else None
            idx.append(j)
        out = {}
        for m, c in poly.terms.items():
            mm = [0] * profile.nvars
            for i, e in enumerate(m):
                if e:
                    j = idx[i]
                    if j is None:
                        raise ProfileMismatch(f"variable {poly.vars[i]} not in {profile.names}")
                    if profile.npairs <= j < 2 * profile.npairs:
                        raise ProfileMismatch("derivations cannot be embedded from a commutative polynomial")
                    mm[j] = e
            out[tuple(mm)] = c
        return cls(profile, out)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def support(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(v for i, v in enumerate(self.profile.names) if i in used)

    def lead(self, order=None) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ArithmeticError_("zero element has no leading term")
        if order is None:
            m = next(iter(self.terms))
        else:
            m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def is_central(self) -> bool:
        """True when only central variables (and no h) occur."""
        lim = 2 * self.profile.npairs
        top = lim + len(self.profile.central)
        return all(not any(m[:lim]) and not any(m[top:]) for m in self.terms)

    def central_poly(self, names: Optional[Sequence[str]] = None) -> MultiPoly:
        """View a purely central element as a commutative polynomial in the central names."""
        if not self.is_central():
            raise ArithmeticError_(f"{self} is not central")
        lim = 2 * self.profile.npairs
        k = len(self.profile.central)
        poly = MultiPoly(self.profile.central, {m[lim:lim + k]: c for m, c in self.terms.items()})
        return poly if names is None else poly.extend(names)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "WeylElement":
        if isinstance(other, WeylElement):
            if other.profile != self.profile:
                raise ProfileMismatch(f"profiles differ: {self.profile} vs {other.profile}")
            return other
        return WeylElement.constant(self.profile, as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return WeylElement(self.profile, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.profile, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            c = as_rational(other)
            return WeylElement(self.profile, {m: c * v for m, v in self.terms.items()})
        return weyl_mul(self, other)

    def __rmul__(self, other):
        c = as_rational(other)
        return WeylElement(self.profile, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, k: int):
        out = WeylElement.one(self.profile)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.profile == other.profile and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == WeylElement.constant(self.profile, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.profile, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_terms(self.profile.names, self.terms)

    def __repr__(self):
        return f"WeylElement({str(self)!r})"

    def monic(self, order=None) -> "WeylElement":
        if not self.terms:
            return self
        return self * (1 / self.lead(order)[1])

    def substitute_central(self, mapping: Mapping[str, MultiPoly]) -> "WeylElement":
        """Apply a substitution to the central variables (e.g. ``s -> s + v``)."""
        prof = self.profile
        lim = 2 * prof.npairs
        k = len(prof.central)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            cpoly = MultiPoly(prof.central, {m[lim:lim + k]: c}).substitute(mapping)
            for cm, cc in cpoly.terms.items():
                mm = m[:lim] + cm + m[lim + k:]
                out[mm] = out.get(mm, 0) + cc
        return WeylElement(prof, out)


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Exact normally ordered product a*b."""
    if a.profile != b.profile:
        raise ProfileMismatch(f"profiles differ: {a.profile} vs {b.profile}")
    return WeylElement(a.profile, mul_terms(a.terms, b.terms, a.profile))


def parse_operator(text: str, profile: AlgebraProfile) -> WeylElement:
    """Read back the printed normally ordered form ``c * x^a * dx^c * s^e``."""
    from .frontend import parse_poly

    poly = parse_poly(text, profile.names)
    return WeylElement(profile, poly.terms)


# ---------------------------------------------------------------------------
# term orders

class TermOrder:
    """Monomial order given by a sort key; larger key means larger monomial."""

    kind = "abstract"

    def __init__(self):
        self._cache: Dict[Monomial, tuple] = {}

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._cache[m] = self._key(m)
        return k

    def _key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def is_admissible(self, profile: AlgebraProfile) -> bool:
        return True

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor()})"


class DegRevLex(TermOrder):
    kind = "degrevlex"

    def _key(self, m):
        return degrevlex_key(m)

    def descriptor(self):
        return "degrevlex"


class BlockOrder(TermOrder):
    """Block elimination order: degrevlex inside each block, earlier blocks dominate.

    Indices not named in any block form a final block.
    """

    kind = "block"

    def __init__(self, blocks: Sequence[Sequence[int]], nvars: int):
        super().__init__()
        named = [tuple(b) for b in blocks if len(b)]
        seen = {i for b in named for i in b}
        rest = tuple(i for i in range(nvars) if i not in seen)
        self.blocks = tuple(named) + ((rest,) if rest else ())
        self.nvars = nvars

    def _key(self, m):
        out = ()
        for b in self.blocks:
            out += degrevlex_key(tuple(m[i] for i in b))
        return out

    def descriptor(self):
        return "block" + "|".join(",".join(map(str, b)) for b in self.blocks)


class WeightOrder(TermOrder):
    """Weight vector refined by a tie-breaking order."""

    kind = "weight"

    def __init__(self, weights: Sequence[int], tiebreak: Optional[TermOrder] = None):
        super().__init__()
        self.weights = tuple(weights)
        self.tiebreak = tiebreak or DegRevLex()

    def _key(self, m):
        return (sum(w * e for w, e in zip(self.weights, m)),) + self.tiebreak.key(m)

    def descriptor(self):
        return f"weight{list(self.weights)}>{self.tiebreak.descriptor()}"

    def is_admissible(self, profile: AlgebraProfile) -> bool:
        p = profile.npairs
        if len(self.weights) != profile.nvars:
            return False
        if any(self.weights[i] + self.weights[i + p] < 0 for i in range(p)):
            return False
        if profile.homogenized:
            return True
        # without h the weight order must itself be a well-order
        return all(w >= 0 for w in self.weights)


# ---------------------------------------------------------------------------
# homogenization

def homogenize(P: WeylElement) -> WeylElement:
    """Pad every term with h to the top total degree (all variables weigh 1)."""
    prof = P.profile
    if prof.homogenized:
        raise ValueError("element is already homogenized")
    hp = prof.with_homogenization(True)
    if not P.terms:
        return WeylElement(hp)
    top = P.total_degree()
    return WeylElement(hp, {m + (top - sum(m),): c for m, c in P.terms.items()})


def dehomogenize(P: WeylElement) -> WeylElement:
    prof = P.profile
    if not prof.homogenized:
        raise ValueError("element carries no homogenizing variable")
    dp = prof.with_homogenization(False)
    out: Dict[Monomial, Fraction] = {}
    for m, c in P.terms.items():
        out[m[:-1]] = out.get(m[:-1], 0) + c
    return WeylElement(dp, out)


def is_h_homogeneous(P: WeylElement) -> bool:
    return len({sum(m) for m in P.terms}) <= 1


# ---------------------------------------------------------------------------
# log subalgebra

class TransporterError(ArithmeticError_):
    """P*t^gamma is not left-divisible by t^gamma in the polynomial Weyl algebra."""


def t_monomial(profile: AlgebraProfile, gamma: Sequence[int]) -> WeylElement:
    if len(gamma) != profile.r:
        raise ProfileMismatch(f"shift {tuple(gamma)} needs {profile.r} entries")
    m = [0] * profile.nvars
    for i, g in enumerate(gamma):
        m[profile.n + i] = g
    return WeylElement(profile, {tuple(m): 1})


def right_transporter(P: WeylElement, gamma: Sequence[int]) -> WeylElement:
    """Q with P*t^gamma = t^gamma*Q."""
    prof = P.profile
    L = weyl_mul(P, t_monomial(prof, gamma))
    out = {}
    for m, c in L.terms.items():
        mm = list(m)
        for i, g in enumerate(gamma):
            mm[prof.n + i] -= g
            if mm[prof.n + i] < 0:
                raise TransporterError(f"P*t^{tuple(gamma)} has the term {c}*{m} not divisible by t^{tuple(gamma)}")
        out[tuple(mm)] = c
    return WeylElement(prof, out)


def is_log_element(P: WeylElement) -> bool:
    """True when every dt_i occurs together with at least as many t_i."""
    prof = P.profile
    n, p = prof.n, prof.npairs
    for m in P.terms:
        for i in range(prof.r):
            if m[p + n + i] > m[n + i]:
                return False
    return True


# ---------------------------------------------------------------------------
# the twisted module O[1/f, s] F^s

class TwistedContext:
    """Data for S_F = O[1/f, s]F^s: the tuple F, the x and s names, f = prod F."""

    def __init__(self, F: Sequence[MultiPoly], svars: Optional[Sequence[str]] = None):
        F = tuple(F)
        if not F:
            raise ValueError("F must be non-empty")
        xvars = F[0].vars
        if any(f.vars != xvars for f in F):
            raise ProfileMismatch("all entries of F must share a variable profile")
        if any(f.is_zero() for f in F):
            raise ValueError("entries of F must be non-zero")
        self.F = F
        self.xvars = tuple(xvars)
        self.svars = tuple(svars) if svars is not None else s_names(len(F))
        if len(self.svars) != len(F):
            raise ValueError("need one s-variable per entry of F")
        self.ring = self.xvars + self.svars
        self.F_ext = tuple(f.extend(self.ring) for f in F)
        f = MultiPoly.constant(self.ring, 1)
        for fi in self.F_ext:
            f = f * fi
        self.f = f
        self.cofactors = []
        for i in range(len(F)):
            c = MultiPoly.constant(self.ring, 1)
            for k, fk in enumerate(self.F_ext):
                if k != i:
                    c = c * fk
            self.cofactors.append(c)
        self.s_polys = tuple(MultiPoly.var(self.ring, s) for s in self.svars)
        # log-derivative numerators: sum_i s_i * d_j f_i * prod_{k != i} f_k
        self.log_num = {}
        for x in self.xvars:
            acc = MultiPoly.zero(self.ring)
            for si, fi, cof in zip(self.s_polys, self.F_ext, self.cofactors):
                acc = acc + si * fi.diff(x) * cof
            self.log_num[x] = acc
        self.df = {x: self.f.diff(x) for x in self.xvars}

    def __eq__(self, other):
        return isinstance(other, TwistedContext) and (self.F, self.svars) == (other.F, other.svars)

    def __hash__(self):
        return hash((self.F, self.svars))

    def operator_profile(self) -> AlgebraProfile:
        return AlgebraProfile(self.xvars, (), self.svars)

    def f_power(self, v: Sequence[int]) -> MultiPoly:
        out = MultiPoly.constant(self.ring, 1)
        for fi, e in zip(self.F_ext, v):
            if e:
                out = out * fi ** e
        return out


class TwistedElement:
    """(numerator / f^N) * F^s with numerator in Q[x, s]."""

    __slots__ = ("numerator", "N", "ctx")

    def __init__(self, numerator: MultiPoly, N: int, ctx: TwistedContext):
        if numerator.vars != ctx.ring:
            numerator = numerator.extend(ctx.ring)
        if N < 0:
            raise ValueError("denominator exponent must be non-negative")
        if ctx.f.is_constant():
            numerator = numerator * (1 / ctx.f.constant_term()) ** N
            N = 0
        while N > 0 and not numerator.is_zero():
            q = divide_exact(numerator, ctx.f)
            if q is None:
                break
            numerator, N = q, N - 1
        if numerator.is_zero():
            N = 0
        self.numerator = numerator
        self.N = N
        self.ctx = ctx

    @classmethod
    def unit(cls, ctx: TwistedContext) -> "TwistedElement":
        """F^s itself."""
        return cls(MultiPoly.constant(ctx.ring, 1), 0, ctx)

    @classmethod
    def shifted(cls, ctx: TwistedContext, v: Sequence[int]) -> "TwistedElement":
        """f^v * F^s."""
        return cls(ctx.f_power(v), 0, ctx)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        N = max(self.N, other.N)
        a = self.numerator * self.ctx.f ** (N - self.N)
        b = other.numerator * self.ctx.f ** (N - other.N)
        return TwistedElement(a + b, N, self.ctx)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "TwistedElement":
        if isinstance(c, MultiPoly):
            return TwistedElement(self.numerator * c.extend(self.ctx.ring), self.N, self.ctx)
        return TwistedElement(self.numerator * as_rational(c), self.N, self.ctx)

    def __eq__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash((self.numerator, self.N))

    def __str__(self):
        num = str(self.numerator)
        if self.N == 0:
            return f"({num}) * F^s"
        return f"({num}) / f^{self.N} * F^s"

    def derivative(self, x: str) -> "TwistedElement":
        ctx = self.ctx
        a, N = self.numerator, self.N
        num = a.diff(x) * ctx.f + a * ctx.log_num[x]
        if N:
            num = num - a * ctx.df[x] * N
        return TwistedElement(num, N + 1, ctx)


def act_on_twisted(P: WeylElement, v: TwistedElement) -> TwistedElement:
    """Action of an operator in D_n[s] on O[1/f, s]F^s; the certification oracle."""
    ctx = v.ctx
    prof = P.profile
    if prof.r:
        if any(any(m[prof.n:prof.n + prof.r]) or any(m[prof.npairs + prof.n:2 * prof.npairs]) for m in P.terms):
            raise ValueError("operator involves t or dt; only D_n[s] acts on F^s")
    if prof.homogenized:
        raise ValueError("dehomogenize before acting")
    if prof.xvars != ctx.xvars:
        raise ProfileMismatch(f"operator variables {prof.xvars} differ from {ctx.xvars}")
    unknown = [c for c in prof.central if c not in ctx.svars]
    if unknown:
        raise ProfileMismatch(f"central variables {unknown} are not s-parameters of the module")
    n, p = prof.n, prof.npairs
    cidx = [ctx.ring.index(c) for c in prof.central]
    deriv_cache: Dict[Tuple[int, ...], TwistedElement] = {(0,) * n: v}

    def apply_d(c: Tuple[int, ...]) -> TwistedElement:
        if c in deriv_cache:
            return deriv_cache[c]
        j = next(i for i, e in enumerate(c) if e)
        prev = list(c)
        prev[j] -= 1
        out = apply_d(tuple(prev)).derivative(ctx.xvars[j])
        deriv_cache[c] = out
        return out

    total = TwistedElement(MultiPoly.zero(ctx.ring), 0, ctx)
    groups: Dict[Tuple[int, ...], Dict[Monomial, Fraction]] = {}
    for m, c in P.terms.items():
        d = m[p:p + n]
        mult = [0] * len(ctx.ring)
        for i in range(n):
            mult[i] = m[i]
        for k, ci in enumerate(cidx):
            mult[ci] += m[2 * p + k]
        groups.setdefault(d, {})
        key = tuple(mult)
        groups[d][key] = groups[d].get(key, 0) + c
    for d, mult in groups.items():
        total = total + apply_d(d).scale(MultiPoly(ctx.ring, mult))
    return total


def t_shift_action(gamma: Sequence[int], v: TwistedElement) -> TwistedElement:
    """t^gamma * (a(x,s) F^s) = a(x, s + gamma) f^gamma F^s."""
    ctx = v.ctx
    if len(gamma) != len(ctx.F):
        raise ProfileMismatch("shift length must equal the length of F")
    shifted = v.numerator.shift({s: g for s, g in zip(ctx.svars, gamma)})
    return TwistedElement(shifted * ctx.f_power(gamma), v.N, ctx)
