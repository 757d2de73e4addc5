"""Construction matrices, exact RREF, spectra and minimum realizable orders.

Everything here is exact: entries are ``int`` or ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Iterator, Sequence

from .errors import DegreesOfFreedomError
from .pot import Pot, net_count


@dataclass(frozen=True)
class ConstructionMatrix:
    """Net-count rows (one per symbol, ascending) followed by the all-ones row."""

    symbols: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def augmented(self, total: int = 1) -> list[list[Fraction]]:
        """``[M | rhs]`` with the totals row equal to ``total`` (1 or an order k)."""
        out = []
        for i, row in enumerate(self.rows):
            b = total if i == len(self.rows) - 1 else 0
            out.append([Fraction(x) for x in row] + [Fraction(b)])
        return out

    def to_json(self) -> dict:
        return {"symbols": list(self.symbols), "rows": [list(r) for r in self.rows],
                "rhs": list(self.rhs)}


def construction_matrix(pot: Pot) -> ConstructionMatrix:
    syms = tuple(pot.symbols)
    rows = [tuple(net_count(t, s) for t in pot.tiles) for s in syms]
    rows.append(tuple(1 for _ in pot.tiles))
    return ConstructionMatrix(syms, tuple(rows), tuple([0] * len(syms) + [1]))


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over the rationals and its pivot columns.

    Zero rows are kept at the bottom, so the shape never changes.
    """
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


@dataclass(frozen=True)
class SpectrumSolution:
    """Solutions of ``M(P) r = (0, ..., 0, 1)`` as ``constants + sum t_f basis_f``.

    Free variables are the non-pivot coordinates of ``r`` themselves, so
    ``basis[k]`` has a 1 at ``free_columns[k]``. ``consistent`` is False when
    the system has no rational solution at all.
    """

    constants: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    free_columns: tuple[int, ...]
    pivot_columns: tuple[int, ...]
    consistent: bool = True

    @property
    def free_count(self) -> int:
        return len(self.free_columns)

    @property
    def unique(self) -> bool:
        return self.consistent and not self.free_columns

    def point(self, free_values: Sequence = ()) -> tuple[Fraction, ...]:
        if len(free_values) != self.free_count:
            raise ValueError(f"expected {self.free_count} free values")
        r = list(self.constants)
        for t, vec in zip(free_values, self.basis):
            t = Fraction(t)
            for i, x in enumerate(vec):
                r[i] += t * x
        return tuple(r)

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "free_count": self.free_count,
            "free_columns": list(self.free_columns),
            "constants": [str(x) for x in self.constants],
            "basis": [[str(x) for x in v] for v in self.basis],
        }


def solve_parametric(aug: list[list[Fraction]], ncols: int) -> SpectrumSolution:
    red, pivots = rref(aug)
    if ncols in pivots:
        return SpectrumSolution((), (), (), tuple(pivots), consistent=False)
    free = [c for c in range(ncols) if c not in pivots]
    consts = [Fraction(0)] * ncols
    basis = [[Fraction(0)] * ncols for _ in free]
    for k, f in enumerate(free):
        basis[k][f] = Fraction(1)
    for i, p in enumerate(pivots):
        consts[p] = red[i][ncols]
        for k, f in enumerate(free):
            basis[k][p] = -red[i][f]
    return SpectrumSolution(tuple(consts), tuple(tuple(b) for b in basis), tuple(free), tuple(pivots))


def spectrum(pot: Pot) -> SpectrumSolution:
    cm = construction_matrix(pot)
    return solve_parametric(cm.augmented(), len(pot))


@dataclass(frozen=True, order=True)
class OrderWitness:
    order: int
    counts: tuple[int, ...]

    def proportions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.order) for c in self.counts)

    def to_json(self) -> dict:
        return {"order": self.order, "counts": list(self.counts)}


def balanced(pot: Pot, counts: Sequence[int]) -> bool:
    """Every symbol's net count summed over the counts is zero."""
    cm = construction_matrix(pot)
    return all(sum(z * c for z, c in zip(row, counts)) == 0 for row in cm.rows[:-1])


class _Integeriser:
    """Turns a spectrum into integer count vectors at a given order.

    With ``R = n r``, free coordinates are integers in ``0..n`` and each
    pivot coordinate is ``n c_p + sum_f a_pf R_f``, which must be a
    nonnegative integer. Scaling by a common denominator keeps the inner
    loop in integer arithmetic.
    """

    def __init__(self, sol: SpectrumSolution):
        self.sol = sol
        ncols = len(sol.constants)
        den = 1
        for x in sol.constants:
            den = lcm(den, x.denominator)
        for v in sol.basis:
            for x in v:
                den = lcm(den, x.denominator)
        self.den = den
        self.ncols = ncols
        self.pivot_terms = [
            (p, int(sol.constants[p] * den), [int(v[p] * den) for v in sol.basis])
            for p in sol.pivot_columns
        ]

    def at(self, n: int) -> Iterator[tuple[int, ...]]:
        """Count vectors of total ``n``, in lexicographic order."""
        free = self.sol.free_columns
        f = len(free)
        found = []
        for vals in _bounded_tuples(f, n):
            R = [0] * self.ncols
            for c, v in zip(free, vals):
                R[c] = v
            ok = True
            for p, c0, coeffs in self.pivot_terms:
                num = n * c0 + sum(a * v for a, v in zip(coeffs, vals))
                if num < 0 or num % self.den:
                    ok = False
                    break
                R[p] = num // self.den
            if ok:
                found.append(tuple(R))
        found.sort()
        yield from found


def _bounded_tuples(f: int, n: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer f-tuples with sum at most n."""
    if f == 0:
        yield ()
        return
    if f <= 2:
        for t in product(range(n + 1), repeat=f):
            if sum(t) <= n:
                yield t
        return

    def rec(prefix, left, k):
        if k == 0:
            yield tuple(prefix)
            return
        for v in range(left + 1):
            prefix.append(v)
            yield from rec(prefix, left - v, k - 1)
            prefix.pop()

    yield from rec([], n, f)


def iter_count_vectors(pot: Pot, n: int) -> Iterator[tuple[int, ...]]:
    """All nonnegative integer count vectors of total ``n`` that balance every symbol."""
    sol = spectrum(pot)
    if not sol.consistent:
        return iter(())
    return _Integeriser(sol).at(n)


def min_order(pot: Pot, max_order: int, fallback: bool = False) -> list[OrderWitness]:
    """Integer witnesses ``(n, R)`` with ``n <= max_order``, smallest ``n`` first.

    A unique spectrum point yields just its least integer scaling (when it
    fits under ``max_order``). With one or two free variables every order up
    to ``max_order`` is scanned and all witnesses are returned. Three or
    more free variables raise ``DegreesOfFreedomError`` unless ``fallback``
    is set, in which case the same scan runs (exponential in the number of
    free variables). An empty list means no admissible point exists in range.
    """
    if max_order < 1:
        raise ValueError("max_order must be positive")
    sol = spectrum(pot)
    if not sol.consistent:
        return []
    if sol.free_count == 0:
        if any(x < 0 for x in sol.constants):
            return []
        n = 1
        for x in sol.constants:
            n = lcm(n, x.denominator)
        if n > max_order:
            return []
        return [OrderWitness(n, tuple(int(x * n) for x in sol.constants))]
    if sol.free_count >= 3 and not fallback:
        raise DegreesOfFreedomError(sol.free_count)
    ints = _Integeriser(sol)
    return [OrderWitness(n, R) for n in range(1, max_order + 1) for R in ints.at(n)]


def smallest_order(pot: Pot, max_order: int, fallback: bool = False) -> OrderWitness | None:
    """Least-order witness up to ``max_order``, stopping at the first order found."""
    sol = spectrum(pot)
    if not sol.consistent:
        return None
    if sol.free_count == 0:
        ws = min_order(pot, max_order)
        return ws[0] if ws else None
    if sol.free_count >= 3 and not fallback:
        raise DegreesOfFreedomError(sol.free_count)
    ints = _Integeriser(sol)
    for n in range(1, max_order + 1):
        for R in ints.at(n):
            return OrderWitness(n, R)
    return None


def integer_feasible_at(pot: Pot, k: int) -> OrderWitness | None:
    """Some balanced count vector summing to ``k`` (lexicographically least), or None."""
    if k < 1:
        raise ValueError("k must be positive")
    for R in iter_count_vectors(pot, k):
        return OrderWitness(k, R)
    return None
