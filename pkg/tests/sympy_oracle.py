"""Second route for functional equations: apply operators with sympy.diff."""

import sympy


def _sym(names):
    return {n: sympy.Symbol(n) for n in names}


def to_sympy(p, syms):
    return sum(sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[syms[v] ** e for v, e in zip(p.vars, m)])
               for m, c in p.terms.items())


def apply_operator(P, expr, syms):
    """P = sum c x^a dx^b s^e acting on a sympy expression."""
    prof = P.profile
    n = prof.n
    names = prof.names
    out = 0
    for m, c in P.terms.items():
        term = expr
        for i in range(n):
            if m[n + i]:
                term = sympy.diff(term, syms[names[i]], m[n + i])
        coef = sympy.Rational(c.numerator, c.denominator)
        for i in range(n):
            coef *= syms[names[i]] ** m[i]
        for k, s in enumerate(prof.central):
            coef *= syms[s] ** m[2 * n + k]
        out += coef * term
    return out


def certificate_holds(F, svars, b, witnesses, shift=None):
    """b(s + shift) f^shift F^s == sum_j P_j f^{v_j} F^s, checked after dividing by F^s."""
    xvars = F[0].vars
    syms = _sym(tuple(xvars) + tuple(svars))
    fs = [to_sympy(f, syms) for f in F]
    s = [syms[v] for v in svars]
    Fs = sympy.Mul(*[f ** si for f, si in zip(fs, s)])
    shift = shift or (0,) * len(F)
    bb = to_sympy(b, syms).subs({si: si + k for si, k in zip(s, shift)}, simultaneous=True)
    lhs = bb * sympy.Mul(*[f ** k for f, k in zip(fs, shift)])
    rhs = 0
    for P, v in witnesses:
        fv = sympy.Mul(*[f ** k for f, k in zip(fs, v)])
        rhs += apply_operator(P, fv * Fs, syms)
    return sympy.simplify(sympy.powsimp(sympy.expand(rhs / Fs), force=True) - lhs) == 0
