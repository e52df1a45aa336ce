"""
Exact feasibility testing for sparse linear systems.

Systems have the form ``A x = b``, ``C x >= d``, ``x >= 0`` with per-variable
marks that either fix a variable to zero or require it to be at least one.
Feasibility is decided by a dual simplex method with a zero objective (so
every basis is dual feasible) on a fraction-free tableau: each row is kept
as a primitive integer vector over a positive integer denominator.  The
tableau starts in ``int64``; any operation whose operands could overflow
promotes the whole tableau to Python integers.

Leaving rows follow Dantzig's rule (most negative basic value).  Brent's
algorithm watches the sequence of bases and, when a repeat is found, the
solver switches to Bland's rule for the rest of the call.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

__all__ = [
    "Mark", "ConstraintSystem", "FeasibilityResult", "LPSolver", "feasible",
    "push_mark", "pop_mark", "brute_force_feasible", "PivotLimitExceeded",
]

_LIMIT = 1 << 62


class Mark(enum.Enum):
    FREE = "free"
    ZERO = "zero"
    AT_LEAST_ONE = "ge1"


def _fmt(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _norm_row(row):
    if isinstance(row, dict):
        items = row.items()
    else:
        items = row
    merged = {}
    for v, c in items:
        merged[int(v)] = merged.get(int(v), 0) + Fraction(c)
    return tuple(sorted((v, c) for v, c in merged.items() if c != 0))


class ConstraintSystem:
    """
    Linear constraints over ``nvars`` non-negative variables plus a stack of
    variable marks.

    ``equalities`` and ``inequalities`` are sequences of ``(row, rhs)`` where
    ``row`` maps variable indices to coefficients; inequalities read
    ``row . x >= rhs``.
    """

    def __init__(self, nvars, equalities=(), inequalities=()):
        self.nvars = int(nvars)
        self.equalities = tuple((_norm_row(r), Fraction(b)) for r, b in equalities)
        self.inequalities = tuple((_norm_row(r), Fraction(b)) for r, b in inequalities)
        for row, _ in self.equalities + self.inequalities:
            for v, _c in row:
                if not 0 <= v < self.nvars:
                    raise ValueError(f"variable {v} out of range")
        self._marks = []

    @classmethod
    def for_surfaces(cls, matching, chi):
        """``x >= 0``, ``A x = 0`` and ``chi(x) >= 1``."""
        return cls(matching.nvars,
                   equalities=[(row, 0) for row in matching.rows],
                   inequalities=[(chi.as_dict(), 1)])

    @property
    def marks(self):
        return tuple(self._marks)

    def push_mark(self, var, mark):
        if not 0 <= var < self.nvars:
            raise ValueError(f"variable {var} out of range")
        mark = Mark(mark)
        if mark is Mark.FREE:
            raise ValueError("FREE is the default domain and cannot be pushed")
        self._marks.append((var, mark))

    def pop_mark(self):
        if not self._marks:
            raise IndexError("pop from an empty mark stack")
        return self._marks.pop()

    def domain(self, var):
        return {m for v, m in self._marks if v == var} or {Mark.FREE}

    def copy(self):
        other = ConstraintSystem.__new__(ConstraintSystem)
        other.nvars = self.nvars
        other.equalities = self.equalities
        other.inequalities = self.inequalities
        other._marks = list(self._marks)
        return other

    def is_satisfied_by(self, x):
        if len(x) != self.nvars or any(xi < 0 for xi in x):
            return False
        for row, b in self.equalities:
            if sum(c * x[v] for v, c in row) != b:
                return False
        for row, b in self.inequalities:
            if sum(c * x[v] for v, c in row) < b:
                return False
        for v, m in self._marks:
            if m is Mark.ZERO and x[v] != 0:
                return False
            if m is Mark.AT_LEAST_ONE and x[v] < 1:
                return False
        return True

    def dump(self):
        """Deterministic text form, rows sorted."""
        def row_text(row):
            return " ".join(f"{_fmt(c)}*x{v}" for v, c in row) or "0"
        lines = [f"vars {self.nvars}"]
        lines += sorted(f"eq {row_text(r)} = {_fmt(b)}" for r, b in self.equalities)
        lines += sorted(f"ge {row_text(r)} >= {_fmt(b)}" for r, b in self.inequalities)
        lines += sorted({f"mark x{v} {m.value}" for v, m in self._marks})
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"<ConstraintSystem vars={self.nvars} eq={len(self.equalities)} "
                f"ge={len(self.inequalities)} marks={len(self._marks)}>")


def push_mark(system, var, mark):
    system.push_mark(var, mark)


def pop_mark(system):
    return system.pop_mark()


class PivotLimitExceeded(RuntimeError):
    pass


@dataclass
class FeasibilityResult:
    feasible: bool
    witness: tuple | None = None
    pivots: int = 0
    promotions: int = 0
    exact_mode: bool = False
    cycling_detected: bool = False

    def __bool__(self):
        return self.feasible


@dataclass
class _State:
    T: np.ndarray          # rows: [basis-inverse numerators | rhs numerator]
    den: np.ndarray
    basis: list
    dead: np.ndarray       # column fixed at zero
    shift: np.ndarray      # column substituted as 1 + y
    infeasible: bool = False

    def copy(self):
        return _State(self.T.copy(), self.den.copy(), list(self.basis),
                      self.dead.copy(), self.shift.copy(), self.infeasible)


@dataclass
class SolverStats:
    feasibility_tests: int = 0
    pivots: int = 0
    promotions: int = 0
    cycles: int = 0
    extra: dict = field(default_factory=dict)


class LPSolver:
    """
    Incremental feasibility solver bound to one ``ConstraintSystem``.

    ``push`` adds a mark to the system and updates the tableau in place,
    saving the previous tableau; ``pop`` restores it.  The basis reached by
    one ``feasible`` call is the warm start for the next.
    """

    def __init__(self, system, exact=False):
        self.system = system
        self.exact = bool(exact)
        self.stats = SolverStats()
        self._saved = []
        self._call_pivots = self._call_promotions = 0
        self._build()
        for var, mark in system.marks:
            self._apply(var, mark)

    # construction -----------------------------------------------------------

    def _build(self):
        sysm = self.system
        nslack = len(sysm.inequalities)
        self.ncols = sysm.nvars + nslack
        rows, rhs = [], []
        for k, (row, b) in enumerate(sysm.equalities + sysm.inequalities):
            scale = lcm(b.denominator, *(c.denominator for _, c in row))
            dense = [0] * self.ncols
            for v, c in row:
                dense[v] = int(c * scale)
            if k >= len(sysm.equalities):
                dense[sysm.nvars + k - len(sysm.equalities)] = -scale
            rows.append(dense)
            rhs.append(int(b * scale))
        self.m0 = len(rows)
        M = np.array(rows, dtype=object).reshape(self.m0, self.ncols)
        self._colsum = [int(sum(abs(v) for v in M[:, j])) for j in range(self.ncols)]
        self._colsum_max = max(self._colsum, default=0)

        # Fraction-free Gauss-Jordan elimination on [M | b | I] for a first basis.
        aug = [list(rows[i]) + [rhs[i]] + [int(i == k) for k in range(self.m0)]
               for i in range(self.m0)]
        basis, r = [], 0
        for j in range(self.ncols):
            if r == len(aug):
                break
            piv = next((i for i in range(r, len(aug)) if aug[i][j] != 0), None)
            if piv is None:
                continue
            aug[r], aug[piv] = aug[piv], aug[r]
            pr = aug[r]
            for i in range(len(aug)):
                if i != r and aug[i][j] != 0:
                    a, c = pr[j], aug[i][j]
                    aug[i] = _primitive([a * x - c * y for x, y in zip(aug[i], pr)])
            basis.append(j)
            r += 1
        infeasible = any(aug[i][self.ncols] != 0 for i in range(r, len(aug)))
        aug = aug[:r]
        T, den = [], []
        for i, j in enumerate(basis):
            row = aug[i]
            sgn = 1 if row[j] > 0 else -1
            vec = [sgn * x for x in row[self.ncols + 1:]] + [sgn * row[self.ncols]]
            d = abs(row[j])
            g = np.gcd.reduce(np.array(vec + [d], dtype=object))
            T.append([x // g for x in vec])
            den.append(d // g)
        T = np.array(T, dtype=object).reshape(len(basis), self.m0 + 1)
        den = np.array(den, dtype=object)
        self._M_obj = M
        self._M64 = None
        self._state = _State(T, den, basis, np.zeros(self.ncols, dtype=bool),
                             np.zeros(self.ncols, dtype=bool), infeasible)
        self._big = True
        if not self.exact and self._fits(T, den) and self._colsum_max < _LIMIT:
            self._to_native()

    def _fits(self, *arrays):
        return all(a.size == 0 or max(abs(int(v)) for v in a.flat) < _LIMIT for a in arrays)

    def _to_native(self):
        st = self._state
        st.T = st.T.astype(np.int64)
        st.den = st.den.astype(np.int64)
        if self._M64 is None:
            self._M64 = self._M_obj.astype(np.int64)
        self._big = False

    def _promote(self):
        st = self._state
        st.T = st.T.astype(object)
        st.den = st.den.astype(object)
        self._big = True
        self.stats.promotions += 1
        self._call_promotions += 1

    @property
    def _M(self):
        return self._M_obj if self._big else self._M64

    # tableau access -----------------------------------------------------------

    def _maxabs(self, a):
        if a.size == 0:
            return 0
        return int(np.abs(a).max())

    def _row(self, r):
        """Row ``r`` of the tableau over all columns (numerators over den[r])."""
        st = self._state
        if not self._big and self._maxabs(st.T[r, :self.m0]) * self._colsum_max >= _LIMIT:
            self._promote()
        return st.T[r, :self.m0] @ self._M

    def _column(self, j):
        st = self._state
        if not self._big and self._maxabs(st.T[:, :self.m0]) * self._colsum[j] >= _LIMIT:
            self._promote()
        return st.T[:, :self.m0] @ self._M[:, j]

    def _pivot(self, r, j):
        st = self._state
        col = self._column(j)
        p = col[r]
        sgn = 1 if p > 0 else -1
        ap = abs(int(p))
        if not self._big:
            R = sgn * st.T[r]
            bound = ap * self._maxabs(st.T) + self._maxabs(col) * self._maxabs(R)
            if bound >= _LIMIT or self._maxabs(st.den) * ap >= _LIMIT:
                self._promote()
                col = col.astype(object)
        R = sgn * st.T[r]
        T = ap * st.T - np.outer(col, R)
        T[r] = R
        den = st.den * ap
        den[r] = ap
        g = np.gcd.reduce(np.concatenate([T, den[:, None]], axis=1), axis=1)
        st.T = T // g[:, None]
        st.den = den // g
        st.basis[r] = j
        self.stats.pivots += 1
        self._call_pivots += 1

    # marks ----------------------------------------------------------------------

    def _apply(self, var, mark):
        st = self._state
        mark = Mark(mark)
        if mark is Mark.AT_LEAST_ONE:
            if st.dead[var]:
                st.infeasible = True
            elif not st.shift[var]:
                st.shift[var] = True
                if st.T.shape[0]:
                    col = self._column(var)
                    if not self._big and self._maxabs(col) + self._maxabs(st.T[:, -1]) >= _LIMIT:
                        self._promote()
                        col = col.astype(object)
                    st.T[:, -1] = st.T[:, -1] - col
                    self._renormalise()
                elif any(self._M_obj[:, var]):
                    st.infeasible = True
        elif mark is Mark.ZERO:
            if st.shift[var]:
                st.infeasible = True
            elif not st.dead[var]:
                st.dead[var] = True
                if var in st.basis:
                    self._evict(st.basis.index(var))

    def _renormalise(self):
        st = self._state
        g = np.gcd.reduce(np.concatenate([st.T, st.den[:, None]], axis=1), axis=1)
        st.T = st.T // g[:, None]
        st.den = st.den // g

    def _evict(self, r):
        """Pivot the dead basic variable of row ``r`` out, or drop the row."""
        st = self._state
        alpha = self._row(r)
        basic = set(st.basis)
        for j in range(self.ncols):
            if not st.dead[j] and j not in basic and alpha[j] != 0:
                self._pivot(r, j)
                return
        # The row only involves the dead variable: it must be zero.
        if st.T[r, -1] != 0:
            st.infeasible = True
        keep = [i for i in range(st.T.shape[0]) if i != r]
        st.T = st.T[keep]
        st.den = st.den[keep]
        del st.basis[r]

    def push(self, var, mark):
        self.system.push_mark(var, mark)
        self._saved.append((self._state.copy(), self._big))
        self._call_pivots = self._call_promotions = 0
        self._apply(var, mark)

    def pop(self):
        self.system.pop_mark()
        self._state, self._big = self._saved.pop()
        if not self._big and self._state.T.dtype == object:
            self._big = True

    # solving --------------------------------------------------------------------

    def _leaving_row(self, bland):
        st = self._state
        rhs = st.T[:, -1]
        neg = [i for i in range(len(st.basis)) if rhs[i] < 0]
        if not neg:
            return None
        if bland:
            return min(neg, key=lambda i: st.basis[i])
        return min(neg, key=lambda i: (Fraction(int(rhs[i]), int(st.den[i])), st.basis[i]))

    def feasible(self, detect_cycles=True, max_pivots=None, trace=None):
        """
        Decide feasibility of the current system; returns a ``FeasibilityResult``.

        ``detect_cycles=False`` keeps Dantzig's rule throughout, which can
        loop forever, so it should be combined with ``max_pivots``.  A list
        passed as ``trace`` receives the sorted basis after every pivot.
        """
        self.stats.feasibility_tests += 1
        self._call_pivots = 0
        self._call_promotions = 0
        st = self._state
        if st.infeasible:
            return FeasibilityResult(False, None, 0, 0, self._big)
        bland = False
        cycled = False
        # Brent's cycle finding over the sequence of basis sets.
        power = lam = 1
        tortoise = tuple(sorted(st.basis))
        while True:
            r = self._leaving_row(bland)
            if r is None:
                break
            alpha = self._row(r)
            basic = set(st.basis)
            j = next((j for j in range(self.ncols)
                      if alpha[j] < 0 and not st.dead[j] and j not in basic), None)
            if j is None:
                return FeasibilityResult(False, None, self._call_pivots,
                                         self._call_promotions, self._big, cycled)
            self._pivot(r, j)
            if trace is not None:
                trace.append(tuple(sorted(st.basis)))
            if max_pivots is not None and self._call_pivots > max_pivots:
                raise PivotLimitExceeded(f"more than {max_pivots} pivots")
            if detect_cycles and not bland:
                key = tuple(sorted(st.basis))
                if key == tortoise:
                    bland = cycled = True
                    self.stats.cycles += 1
                else:
                    if power == lam:
                        tortoise, power, lam = key, power * 2, 0
                    lam += 1
        witness = self._witness()
        if not self.system.is_satisfied_by(witness):
            raise AssertionError("simplex witness does not satisfy the system")
        return FeasibilityResult(True, witness, self._call_pivots,
                                 self._call_promotions, self._big, cycled)

    def _witness(self):
        st = self._state
        y = [Fraction(0)] * self.ncols
        for i, j in enumerate(st.basis):
            y[j] = Fraction(int(st.T[i, -1]), int(st.den[i]))
        return tuple(y[v] + (1 if st.shift[v] else 0) for v in range(self.system.nvars))


def _primitive(vec):
    g = gcd(*vec)
    return [v // g for v in vec] if g > 1 else vec


def feasible(system, exact=False):
    """One-shot feasibility test of ``system`` including all its marks."""
    return LPSolver(system, exact=exact).feasible()


# ---------------------------------------------------------------------------
# independent oracle

def _solve_exact(cols, b):
    """Solve ``cols @ y = b`` for linearly independent columns; None if impossible."""
    m = len(b)
    k = len(cols)
    A = [[Fraction(cols[c][i]) for c in range(k)] + [Fraction(b[i])] for i in range(m)]
    row = 0
    pivcols = []
    for c in range(k):
        p = next((i for i in range(row, m) if A[i][c] != 0), None)
        if p is None:
            return None     # dependent columns
        A[row], A[p] = A[p], A[row]
        pv = A[row][c]
        A[row] = [x / pv for x in A[row]]
        for i in range(m):
            if i != row and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[row])]
        pivcols.append(c)
        row += 1
    if any(A[i][k] != 0 for i in range(row, m)):
        return None
    return [A[i][k] for i in range(k)]


def brute_force_feasible(system, max_columns=24):
    """
    Decide feasibility by enumerating candidate basic solutions.

    A feasible system in standard form has a basic feasible solution whose
    support columns are linearly independent, so it suffices to try every
    independent column subset.
    """
    zero = {v for v, m in system.marks if m is Mark.ZERO}
    ge1 = {v for v, m in system.marks if m is Mark.AT_LEAST_ONE}
    if zero & ge1:
        return False
    rows = [(dict(r), b, None) for r, b in system.equalities]
    rows += [(dict(r), b, k) for k, (r, b) in enumerate(system.inequalities)]
    names = [v for v in range(system.nvars) if v not in zero]
    names += [("s", k) for k in range(len(system.inequalities))]
    if len(names) > max_columns:
        raise ValueError(f"too many columns for enumeration ({len(names)})")
    cols = {nm: [] for nm in names}
    rhs = []
    for r, b, k in rows:
        b = Fraction(b) - sum(Fraction(c) for v, c in r.items() if v in ge1)
        rhs.append(b)
        for nm in names:
            if isinstance(nm, tuple):
                cols[nm].append(-1 if nm[1] == k else 0)
            else:
                cols[nm].append(Fraction(r.get(nm, 0)))
    if not rows:
        return True
    m = len(rows)
    for size in range(0, min(m, len(names)) + 1):
        for subset in itertools.combinations(names, size):
            sol = _solve_exact([cols[nm] for nm in subset], rhs)
            if sol is not None and all(s >= 0 for s in sol):
                return True
    return False
