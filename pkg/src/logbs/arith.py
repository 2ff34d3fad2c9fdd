"""Exact rational arithmetic, commutative polynomials over Q and integer lattices.

Rationals are :class:`fractions.Fraction`.  Polynomials are immutable
:class:`MultiPoly` values over a named variable profile; integer matrices
are plain :class:`IntMatrix` values with Smith and Hermite normal forms.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Rational = Fraction
Monomial = Tuple[int, ...]

# exponents stay machine-word sized; anything bigger is a runaway computation
MAX_EXPONENT = 2**31 - 1


class ArithmeticError_(ValueError):
    """Raised for malformed arithmetic requests (profile mismatch, zero input)."""


class ProfileMismatch(ArithmeticError_):
    pass


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """``"p/q"`` or ``"p"``; the serialized form used in reports."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _check_exponent(e: int) -> int:
    if e < 0 or e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} outside the supported range")
    return e


def degrevlex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


class MultiPoly:
    """Commutative polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one slot per entry of ``vars``) to
    non-zero Fractions, kept in descending degrevlex order.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Optional[Mapping[Monomial, object]] = None):
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if len(mono) != nv:
                    raise ProfileMismatch(f"exponent vector {mono} does not match profile {self.vars}")
                c = as_rational(c)
                if c:
                    for e in mono:
                        _check_exponent(e)
                    clean[mono] = clean.get(mono, 0) + c
        ordered = sorted((m for m in clean if clean[m]), key=degrevlex_key, reverse=True)
        self.terms: Dict[Monomial, Fraction] = {m: clean[m] for m in ordered}
        self._hash = None

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls, vars) -> "MultiPoly":
        return cls(vars)

    @classmethod
    def constant(cls, vars, c) -> "MultiPoly":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars, name: str) -> "MultiPoly":
        vars = tuple(vars)
        if name not in vars:
            raise ProfileMismatch(f"unknown variable {name!r}")
        mono = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {mono: 1})

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree(self, name: str) -> int:
        i = self.vars.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def lead(self) -> Tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) under degrevlex."""
        if not self.terms:
            raise ArithmeticError_("zero polynomial has no leading term")
        m = next(iter(self.terms))
        return m, self.terms[m]

    def used_vars(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return tuple(v for i, v in enumerate(self.vars) if i in used)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ProfileMismatch(f"profiles differ: {self.vars} vs {other.vars}")
            return other
        return MultiPoly.constant(self.vars, as_rational(other))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_rational(other)
            return MultiPoly(self.vars, {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MultiPoly.constant(self.vars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------
    def diff(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly(self.vars, out)

    def substitute(self, mapping: Mapping[str, "MultiPoly"], target_vars: Optional[Sequence[str]] = None) -> "MultiPoly":
        """Replace variables by polynomials over ``target_vars``.

        Variables absent from ``mapping`` must exist in ``target_vars``.
        """
        target_vars = tuple(target_vars) if target_vars is not None else self.vars
        images = []
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.constant(target_vars, img)
                if img.vars != target_vars:
                    raise ProfileMismatch(f"image of {v} lives over {img.vars}, expected {target_vars}")
                images.append(img)
            else:
                images.append(MultiPoly.var(target_vars, v))
        result = MultiPoly.zero(target_vars)
        power_cache: Dict[Tuple[int, int], MultiPoly] = {}
        for m, c in self.terms.items():
            t = MultiPoly.constant(target_vars, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in power_cache:
                        power_cache[key] = images[i] ** e
                    t = t * power_cache[key]
            result = result + t
        return result

    def shift(self, offsets: Mapping[str, object]) -> "MultiPoly":
        """Substitute ``v -> v + offsets[v]``."""
        mapping = {v: MultiPoly.var(self.vars, v) + as_rational(c) for v, c in offsets.items() if as_rational(c)}
        if not mapping:
            return self
        return self.substitute(mapping)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t *= as_rational(point[v]) ** e
            total += t
        return total

    def extend(self, new_vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a larger (or reordered) profile containing the used variables."""
        new_vars = tuple(new_vars)
        idx = []
        for v in self.vars:
            idx.append(new_vars.index(v) if v in new_vars else None)
        out = {}
        for m, c in self.terms.items():
            mm = [0] * len(new_vars)
            for i, e in enumerate(m):
                if e:
                    if idx[i] is None:
                        raise ProfileMismatch(f"variable {self.vars[i]} missing from {new_vars}")
                    mm[idx[i]] = e
            out[tuple(mm)] = c
        return MultiPoly(new_vars, out)

    # -- normalization -------------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        return self * (1 / self.lead()[1])

    def primitive(self) -> "MultiPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.lead()[1] < 0:
            c = -c
        return self * (1 / c)

    # -- printing ------------------------------------------------------
    def __str__(self):
        return format_terms(self.vars, self.terms)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars})"


def format_monomial(vars: Sequence[str], mono: Monomial) -> str:
    parts = []
    for v, e in zip(vars, mono):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return " * ".join(parts)


def format_terms(vars: Sequence[str], terms: Mapping[Monomial, Fraction]) -> str:
    """Canonical ``c * x^a * y^b`` printing, reparsable by the frontend."""
    if not terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(terms.items()):
        mon = format_monomial(vars, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mon and a == 1:
            body = mon
        elif mon:
            body = f"{format_rational(a)} * {mon}"
        else:
            body = format_rational(a)
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if a.vars != b.vars:
        raise ProfileMismatch(f"profiles differ: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def divide_exact(p: MultiPoly, q: MultiPoly) -> Optional[MultiPoly]:
    """Return p/q when q divides p exactly, else None."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.vars != q.vars:
        raise ProfileMismatch("profiles differ")
    lm_q, lc_q = q.lead()
    rest = dict(p.terms)
    quotient: Dict[Monomial, Fraction] = {}
    q_terms = list(q.terms.items())
    while rest:
        lm = max(rest, key=degrevlex_key)
        if any(a < b for a, b in zip(lm, lm_q)):
            return None
        c = rest[lm] / lc_q
        shift = tuple(a - b for a, b in zip(lm, lm_q))
        quotient[shift] = quotient.get(shift, 0) + c
        for m, d in q_terms:
            mm = tuple(a + b for a, b in zip(m, shift))
            v = rest.get(mm, 0) - c * d
            if v:
                rest[mm] = v
            else:
                rest.pop(mm, None)
    return MultiPoly(p.vars, quotient)


def divmod_univariate_in(p: MultiPoly, q: MultiPoly, name: str) -> Tuple[MultiPoly, MultiPoly]:
    """Divide p by q viewed as polynomials in ``name``; q's leading coefficient in it must be constant."""
    i = p.vars.index(name)
    dq = q.degree(name)
    if dq < 0:
        raise ZeroDivisionError("division by zero polynomial")
    lead_coeff = {m: c for m, c in q.terms.items() if m[i] == dq}
    if len(lead_coeff) != 1 or any(e for j, e in enumerate(next(iter(lead_coeff))) if j != i):
        raise ArithmeticError_("leading coefficient in the main variable must be a constant")
    lc = next(iter(lead_coeff.values()))
    rest = dict(p.terms)
    quot: Dict[Monomial, Fraction] = {}
    while True:
        top = max((m[i] for m in rest), default=-1)
        if top < dq:
            break
        for m in [m for m in rest if m[i] == top]:
            c = rest.pop(m) / lc
            shift = list(m)
            shift[i] -= dq
            shift = tuple(shift)
            quot[shift] = quot.get(shift, 0) + c
            for mq, d in q.terms.items():
                if mq[i] == dq:
                    continue
                mm = tuple(a + b for a, b in zip(mq, shift))
                v = rest.get(mm, 0) - c * d
                if v:
                    rest[mm] = v
                else:
                    rest.pop(mm, None)
    return MultiPoly(p.vars, quot), MultiPoly(p.vars, rest)


# ---------------------------------------------------------------------------
# univariate root extraction

def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _univariate_coeffs(p: MultiPoly) -> List[Fraction]:
    used = p.used_vars()
    if len(used) > 1:
        raise ArithmeticError_(f"expected a univariate polynomial, got variables {used}")
    if not used:
        return [p.constant_term()]
    i = p.vars.index(used[0])
    deg = p.degree(used[0])
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        coeffs[m[i]] = c
    return coeffs


def _eval_coeffs(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: List[Fraction], root: Fraction) -> List[Fraction]:
    # synthetic division by (x - root), remainder assumed zero
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * root + coeffs[k]
        out[k - 1] = acc
    return out


def rational_roots(p: MultiPoly) -> List[Tuple[Fraction, int]]:
    """All rational roots of a univariate polynomial with multiplicities, sorted by value."""
    if p.is_zero():
        raise ArithmeticError_("the zero polynomial has every number as a root")
    coeffs = _univariate_coeffs(p)
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    coeffs = [c * den for c in coeffs]
    roots: Dict[Fraction, int] = {}
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    if len(coeffs) > 1:
        a0 = int(coeffs[0])
        an = int(coeffs[-1])
        candidates = sorted({Fraction(sg * num, q) for num in _divisors(a0) for q in _divisors(an) for sg in (1, -1)})
        for cand in candidates:
            while len(coeffs) > 1 and _eval_coeffs(coeffs, cand) == 0:
                coeffs = _deflate(coeffs, cand)
                roots[cand] = roots.get(cand, 0) + 1
    return sorted(roots.items())


# ---------------------------------------------------------------------------
# integer matrices

class IntMatrix:
    """Dense integer matrix, row-major, immutable by convention."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        self.rows, self.cols, self.entries = rows, cols, entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def to_rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self.to_rows(), other.to_rows()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(c) for c in zip(*self.to_rows())], self.rows) if self.rows else IntMatrix(self.cols, 0, [])

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        # Bareiss fraction-free elimination
        m = self.to_rows()
        sign, prev = 1, 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()})"


def smith_normal_form(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V) with U·A·V = D, U and V unimodular, D diagonal with d1 | d2 | ... >= 0."""
    m, n = A.rows, A.cols
    D = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in D:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i0, j0 = min(nonzero)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                done = False
            if not done:
                nonzero = [(abs(D[i][t]), i, 'r') for i in range(t, m) if D[i][t]]
                nonzero += [(abs(D[t][j]), j, 'c') for j in range(t, n) if D[t][j]]
                _, k, kind = min(nonzero)
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return IntMatrix.from_rows(U, m), IntMatrix.from_rows(D, n), IntMatrix.from_rows(V, n)


def hermite_normal_form(A: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite form: returns (W, H) with W unimodular and W·A = H.

    H is upper echelon with positive pivots, entries above each pivot reduced
    into [0, pivot); zero rows sit at the bottom.
    """
    m, n = A.rows, A.cols
    H = A.to_rows()
    W = IntMatrix.identity(m).to_rows()
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nz = [i for i in range(row, m) if H[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            H[row], H[piv] = H[piv], H[row]
            W[row], W[piv] = W[piv], W[row]
            clean = True
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[row][col]
                    H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                    W[i] = [a - q * b for a, b in zip(W[i], W[row])]
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if not H[row][col]:
            continue
        if H[row][col] < 0:
            H[row] = [-a for a in H[row]]
            W[row] = [-a for a in W[row]]
        for i in range(row):
            q = H[i][col] // H[row][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                W[i] = [a - q * b for a, b in zip(W[i], W[row])]
        row += 1
    return IntMatrix.from_rows(W, m), IntMatrix.from_rows(H, n)


def is_smith_form(D: IntMatrix) -> bool:
    diag = []
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D[i, j]:
                return False
    diag = [D[i, i] for i in range(min(D.rows, D.cols))]
    if any(d < 0 for d in diag):
        return False
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


# ---------------------------------------------------------------------------
# exact linear algebra over Q

def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    M = [[as_rational(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : rows·v = 0} over Q."""
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def monomials_up_to(nvars: int, degree: int) -> List[Monomial]:
    """All exponent vectors of total degree <= degree, ascending degrevlex."""
    out = [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return sorted(out, key=degrevlex_key)
