"""Exact arithmetic over Q: rationals, polynomials in one and two variables,
and sparse exact linear algebra (kernel, membership, quotient bases).

Everything here is pure and immutable-after-construction.  Rationals are
``fractions.Fraction`` (canonical reduced form, arbitrary precision); they
serialize as "num/den" strings with the denominator omitted when it is 1.
"""

from __future__ import annotations

import heapq
from fractions import Fraction

Rational = Fraction

Q0 = Fraction(0)
Q1 = Fraction(1)


def rat(x) -> Fraction:
    """Coerce an int, string, or Fraction to an exact rational."""
    return Fraction(x)


def rat_to_str(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def rat_from_str(s: str) -> Fraction:
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError("zero denominator in %r" % (s,))


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

class Poly1:
    """Polynomial in one variable t over Q; coefficients indexed by degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(q) -> "Poly1":
        return Poly1((Fraction(q),))

    @staticmethod
    def t() -> "Poly1":
        return Poly1((Q0, Q1))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly1.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly1):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly1.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [Q0] * (n - len(self.coeffs))
        for i, c in enumerate(o.coeffs):
            a[i] += c
        return Poly1(a)

    __radd__ = __add__

    def __neg__(self):
        return Poly1(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly1()
        out = [Q0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly1(out)

    __rmul__ = __mul__

    def diff(self) -> "Poly1":
        return Poly1(tuple(Fraction(i + 1) * c
                           for i, c in enumerate(self.coeffs[1:])))

    def integrate01(self) -> Fraction:
        """Definite integral over [0, 1], exact."""
        return sum((c / (i + 1) for i, c in enumerate(self.coeffs)), Q0)

    def eval(self, x) -> Fraction:
        x = Fraction(x)
        acc = Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def subs(self, other: "Poly1") -> "Poly1":
        """Substitute another polynomial for the variable (Horner)."""
        acc = Poly1()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly1.const(c)
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(rat_to_str(c) if i == 0
                             else ("%s*t^%d" % (rat_to_str(c), i)))
        return " + ".join(parts)


class Poly2:
    """Polynomial in two commuting variables s, t over Q.

    Coefficients are a sparse map (deg_s, deg_t) -> Fraction with no stored
    zeros.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cs = {}
        if coeffs:
            for (i, j), c in (coeffs.items() if isinstance(coeffs, dict)
                              else coeffs):
                c = Fraction(c)
                if c:
                    cs[(i, j)] = cs.get((i, j), Q0) + c
            for k in [k for k, v in cs.items() if v == 0]:
                del cs[k]
        self.coeffs = cs

    @staticmethod
    def const(q) -> "Poly2":
        return Poly2({(0, 0): Fraction(q)})

    @staticmethod
    def s() -> "Poly2":
        return Poly2({(1, 0): Q1})

    @staticmethod
    def t() -> "Poly2":
        return Poly2({(0, 1): Q1})

    @staticmethod
    def from_t(p: Poly1) -> "Poly2":
        return Poly2({(0, j): c for j, c in enumerate(p.coeffs)})

    @staticmethod
    def from_s(p: Poly1) -> "Poly2":
        return Poly2({(j, 0): c for j, c in enumerate(p.coeffs)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly2.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def _coerce(self, other):
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly2.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            v = out.get(k, Q0) + c
            if v:
                out[k] = v
            elif k in out:
                del out[k]
        r = Poly2()
        r.coeffs = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = Poly2()
        r.coeffs = {k: -c for k, c in self.coeffs.items()}
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in o.coeffs.items():
                k = (i1 + i2, j1 + j2)
                v = out.get(k, Q0) + a * b
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
        r = Poly2()
        r.coeffs = out
        return r

    __rmul__ = __mul__

    def diff_s(self) -> "Poly2":
        return Poly2({(i - 1, j): Fraction(i) * c
                      for (i, j), c in self.coeffs.items() if i > 0})

    def diff_t(self) -> "Poly2":
        return Poly2({(i, j - 1): Fraction(j) * c
                      for (i, j), c in self.coeffs.items() if j > 0})

    def integrate_s01(self) -> Poly1:
        """Integrate s over [0, 1]; the result is a Poly1 in t."""
        out = {}
        for (i, j), c in self.coeffs.items():
            out[j] = out.get(j, Q0) + c / (i + 1)
        n = 1 + max(out) if out else 0
        return Poly1([out.get(j, Q0) for j in range(n)])

    def integrate_t01(self) -> Poly1:
        """Integrate t over [0, 1]; the result is a Poly1 in s."""
        out = {}
        for (i, j), c in self.coeffs.items():
            out[i] = out.get(i, Q0) + c / (j + 1)
        n = 1 + max(out) if out else 0
        return Poly1([out.get(i, Q0) for i in range(n)])

    def subs_s(self, x) -> Poly1:
        """Evaluate s = x; the result is a Poly1 in t."""
        x = Fraction(x)
        out = {}
        for (i, j), c in self.coeffs.items():
            out[j] = out.get(j, Q0) + c * x ** i
        n = 1 + max(out) if out else 0
        return Poly1([out.get(j, Q0) for j in range(n)])

    def subs_t(self, x) -> Poly1:
        """Evaluate t = x; the result is a Poly1 in s."""
        x = Fraction(x)
        out = {}
        for (i, j), c in self.coeffs.items():
            out[i] = out.get(i, Q0) + c * x ** j
        n = 1 + max(out) if out else 0
        return Poly1([out.get(i, Q0) for i in range(n)])

    def eval(self, s, t) -> Fraction:
        return self.subs_s(s).eval(t)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs):
            c = self.coeffs[(i, j)]
            mono = "".join((["s^%d" % i] if i else []) +
                           (["t^%d" % j] if j else []))
            parts.append(rat_to_str(c) + ("*" + mono if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Sparse exact linear algebra
# ---------------------------------------------------------------------------

class RatMatrix:
    """Sparse rational matrix; entries stored as (row, col) -> Fraction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in (entries.items() if isinstance(entries, dict)
                              else entries):
                v = Fraction(v)
                if v:
                    if not (0 <= r < rows and 0 <= c < cols):
                        raise ValueError("entry out of range")
                    self.entries[(r, c)] = v

    def column(self, c: int) -> dict:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list:
        cols = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def apply(self, x: list) -> list:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Q0] * self.rows
        for (r, c), v in self.entries.items():
            if x[c]:
                out[r] += v * x[c]
        return out


class Echelon:
    """Forward-only sparse echelon form with min-index pivots.

    Each stored row is normalized (pivot coefficient 1) and its pivot is its
    minimal nonzero index, so reducing a vector by increasing index yields the
    canonical residual supported on non-pivot indices.  Deterministic: pivots
    are always the first nonzero coordinate in index order.
    """

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        """Canonical residual of vec modulo the current row space.

        Values may live in any commutative ring containing Q (Fraction, Poly1,
        Poly2); pivot rows always have Fraction entries.
        """
        work = dict(vec)
        out = {}
        heap = list(work)
        heapq.heapify(heap)
        while heap:
            i = heapq.heappop(heap)
            c = work.get(i)
            if c is None or not c:
                work.pop(i, None)
                continue
            del work[i]
            row = self.pivots.get(i)
            if row is None:
                out[i] = c
                continue
            for j, v in row.items():
                if j == i:
                    continue
                if j in work:
                    work[j] = work[j] - c * v
                else:
                    work[j] = -(c * v)
                    heapq.heappush(heap, j)
        return out

    def add(self, vec: dict) -> bool:
        """Insert a vector; returns True iff it enlarged the row space."""
        r = self.reduce(vec)
        if not r:
            return False
        i = min(r)
        inv = Q1 / r[i]
        self.pivots[i] = {j: v * inv for j, v in r.items()}
        return True


class TrackedEchelon:
    """Echelon over a list of columns, tracking combinations for solves."""

    __slots__ = ("ech_rows", "count")

    def __init__(self):
        self.ech_rows = {}   # pivot index -> (row dict, comb dict)
        self.count = 0

    def reduce(self, vec: dict):
        work = dict(vec)
        comb = {}
        out = {}
        heap = list(work)
        heapq.heapify(heap)
        while heap:
            i = heapq.heappop(heap)
            c = work.get(i)
            if c is None or not c:
                work.pop(i, None)
                continue
            del work[i]
            pair = self.ech_rows.get(i)
            if pair is None:
                out[i] = c
                continue
            row, rcomb = pair
            for j, v in row.items():
                if j == i:
                    continue
                if j in work:
                    work[j] = work[j] - c * v
                else:
                    work[j] = -(c * v)
                    heapq.heappush(heap, j)
            for j, v in rcomb.items():
                comb[j] = comb.get(j, Q0) - c * v
        return out, comb

    def add(self, vec: dict, tag):
        """Insert column `vec` labeled `tag`.

        Returns None if independent of the current columns, else the
        dependency combination {tag: coeff} with vec = sum coeff * column.
        """
        r, comb = self.reduce(vec)
        self.count += 1
        if not r:
            return {k: -v for k, v in comb.items()}
        i = min(r)
        inv = Q1 / r[i]
        row = {j: v * inv for j, v in r.items()}
        rc = {j: v * inv for j, v in comb.items()}
        rc[tag] = rc.get(tag, Q0) + inv
        self.ech_rows[i] = (row, rc)
        return None

    def solve(self, b: dict):
        """Solve sum x_tag * column_tag = b; None if b is outside the span."""
        r, comb = self.reduce(b)
        if r:
            return None
        return {k: -v for k, v in comb.items() if v}


def kernel_basis(m: RatMatrix) -> list:
    """Q-basis of the kernel of m, as dense coefficient vectors.

    Deterministic: columns are inserted in index order and each dependent
    column contributes one basis vector.
    """
    ech = TrackedEchelon()
    basis = []
    for c, col in enumerate(m.columns()):
        dep = ech.add(col, c)
        if dep is not None:
            vec = [Q0] * m.cols
            vec[c] = Q1
            for j, v in dep.items():
                vec[j] -= v
            basis.append(vec)
    return basis


def solve_membership(m: RatMatrix, b: list):
    """Some x with m*x = b, or None; deterministic (first-pivot solution)."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    ech = TrackedEchelon()
    for c, col in enumerate(m.columns()):
        ech.add(col, c)
    bb = {i: Fraction(v) for i, v in enumerate(b) if v}
    sol = ech.solve(bb)
    if sol is None:
        return None
    x = [Q0] * m.cols
    for c, v in sol.items():
        x[c] = v
    return x


def quotient_basis(ambient_dim: int, subspace: list):
    """Quotient of Q^ambient_dim by span(subspace).

    Returns (selected coordinate indices, projection RatMatrix) where the
    projection maps ambient coordinates onto quotient coordinates (indexed by
    the selected, non-pivot, ambient coordinates) and kills the subspace.
    """
    ech = Echelon()
    for v in subspace:
        if len(v) != ambient_dim:
            raise ValueError("vector length mismatch")
        ech.add({i: Fraction(c) for i, c in enumerate(v) if c})
    selected = [i for i in range(ambient_dim) if i not in ech.pivots]
    pos = {i: k for k, i in enumerate(selected)}
    entries = {}
    for i in range(ambient_dim):
        res = ech.reduce({i: Q1})
        for j, v in res.items():
            entries[(pos[j], i)] = v
    return selected, RatMatrix(len(selected), ambient_dim, entries)
