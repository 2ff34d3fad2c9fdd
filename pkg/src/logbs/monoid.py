"""Monoid ideals of N^r: Dickson-minimal generators, powers and localization."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, List, Sequence, Tuple

Vector = Tuple[int, ...]


class MonoidError(ValueError):
    pass


def _dominates(a: Vector, b: Vector) -> bool:
    """a >= b coordinatewise."""
    return all(x >= y for x, y in zip(a, b))


def _minimalize(vs: Iterable[Vector]) -> Tuple[Vector, ...]:
    uniq = sorted(set(tuple(v) for v in vs), key=lambda v: (sum(v), v))
    kept: List[Vector] = []
    for v in uniq:
        if not any(_dominates(v, k) for k in kept):
            kept.append(v)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonoidIdeal:
    r: int
    generators: Tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(e) for e in v) for v in self.generators)
        for v in gens:
            if len(v) != self.r:
                raise MonoidError(f"generator {v} does not lie in N^{self.r}")
            if any(e < 0 for e in v):
                raise MonoidError(f"generator {v} has a negative entry")
            if not any(v):
                raise MonoidError("the zero vector generates all of N^r")
        if not gens:
            raise MonoidError("a monoid ideal needs at least one generator")
        object.__setattr__(self, "generators", _minimalize(gens))

    def __contains__(self, v) -> bool:
        return membership(self, v)

    def __str__(self):
        return "<" + ", ".join(str(v) if self.r > 1 else str(v[0]) for v in self.generators) + ">"


def minimal_generators(vs: Sequence[Sequence[int]]) -> MonoidIdeal:
    vs = [tuple(v) for v in vs]
    if not vs:
        raise MonoidError("no generators given")
    return MonoidIdeal(len(vs[0]), tuple(vs))


def membership(K: MonoidIdeal, v: Sequence[int]) -> bool:
    v = tuple(v)
    return any(_dominates(v, g) for g in K.generators)


def power(K: MonoidIdeal, j: int) -> MonoidIdeal:
    """K^j: all sums of j generators, minimalized."""
    if j < 1:
        raise MonoidError("powers start at 1")
    sums = [tuple(map(sum, zip(*combo))) for combo in combinations_with_replacement(K.generators, j)]
    return MonoidIdeal(K.r, tuple(sums))


def scaled(K: MonoidIdeal, j: int) -> MonoidIdeal:
    """The ideal generated by j*v for each generator v (the finite levels of the nearby tower)."""
    if j < 1:
        raise MonoidError("levels start at 1")
    return MonoidIdeal(K.r, tuple(tuple(j * e for e in v) for v in K.generators))


def ideal_contains(big: MonoidIdeal, small: MonoidIdeal) -> bool:
    return all(membership(big, v) for v in small.generators)


@dataclass(frozen=True)
class LocalizedIdeal:
    """Image of a monoid ideal after inverting the coordinates in ``support``.

    ``generators`` are vectors over the complementary coordinates; the unit
    ideal is represented by the single zero vector.
    """

    r: int
    support: Tuple[int, ...]
    generators: Tuple[Vector, ...]

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.r) if i not in self.support)

    @property
    def is_unit(self) -> bool:
        return any(not any(g) for g in self.generators)

    def contains(self, v: Sequence[int]) -> bool:
        """Membership for a vector over the complementary coordinates."""
        return any(_dominates(tuple(v), g) for g in self.generators)

    def localize(self, m: Sequence[int]) -> "LocalizedIdeal":
        """Further localization at m (given in the full N^r coordinates)."""
        if len(m) != self.r:
            raise MonoidError(f"localization vector must have {self.r} entries")
        support = tuple(sorted(set(self.support) | {i for i, e in enumerate(m) if e}))
        comp = self.complement
        keep = [k for k, i in enumerate(comp) if i not in support]
        gens = [tuple(g[k] for k in keep) for g in self.generators]
        return LocalizedIdeal(self.r, support, _localized_min(gens))

    def __str__(self):
        if self.is_unit:
            return "<unit>"
        return "<" + ", ".join(map(str, self.generators)) + f"> on coordinates {[i + 1 for i in self.complement]}"


def _localized_min(gens: List[Vector]) -> Tuple[Vector, ...]:
    if any(not any(g) for g in gens):
        return (gens[0].__class__(0 for _ in gens[0]),) if gens[0] else ((),)
    return _minimalize(gens)


def localize(K, m: Sequence[int]) -> LocalizedIdeal:
    """K_m: drop the coordinates in supp(m) and minimalize the projections."""
    if isinstance(K, LocalizedIdeal):
        return K.localize(m)
    if len(m) != K.r:
        raise MonoidError(f"localization vector must have {K.r} entries")
    support = tuple(i for i, e in enumerate(m) if e)
    comp = [i for i in range(K.r) if i not in support]
    gens = [tuple(v[i] for i in comp) for v in K.generators]
    return LocalizedIdeal(K.r, support, _localized_min(gens))


@dataclass(frozen=True)
class LogStratum:
    """Stratum of X x A^r where exactly the t_i with i in ``vanishing`` are zero."""

    r: int
    vanishing: Tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.vanishing)

    @property
    def closure(self) -> str:
        if not self.vanishing:
            return f"X x A^{self.r}"
        eqs = ", ".join(f"t{i + 1} = 0" for i in self.vanishing)
        return f"X x A^{self.r} cut by {eqs}"

    @property
    def divisor(self) -> Tuple[int, ...]:
        """Indices i whose hyperplanes t_i = 0 restrict to the boundary divisor of the closure."""
        return tuple(i for i in range(self.r) if i not in self.vanishing)

    @property
    def codimension(self) -> int:
        return self.rank


def log_stratum(I: Iterable[int], r: int) -> LogStratum:
    I = tuple(sorted(set(I)))
    if any(i < 0 or i >= r for i in I):
        raise MonoidError(f"stratum indices must lie in 0..{r - 1}")
    return LogStratum(r, I)
