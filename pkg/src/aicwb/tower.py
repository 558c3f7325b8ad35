"""Triangular towers of monic root adjunctions with dynamic evaluation.

A :class:`Tower` is a list of branches; each branch is a triangular set
``m_1(t_1), m_2(t_1, t_2), ...`` of monic moduli over a base field (``QQ``,
``GF(p)`` or ``k(Y)``).  Nothing is factored up front: when an inversion
runs into a zero divisor, the offending modulus is split along the gcd that
exposed it and the computation is replayed on both halves (the D5 scheme).
Branches therefore realize an orthogonal idempotent decomposition of the
algebra presented by the original triangular set.

Residues are nested tuples: a depth-0 residue is a field element, a depth-L
residue is a tuple of ``deg(m_L)`` depth-(L-1) residues.  Towers are
persistent; every operation that may split returns a new tower.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BudgetExceeded,
    DegenerateInputError,
    PreconditionError,
    UnsupportedError,
)
from .exact_arith import FractionField

DEFAULT_MAX_DIMENSION = 64
DEFAULT_MAX_BRANCHES = 64


class _Split(Exception):
    """Raised inside branch arithmetic when a modulus must be split."""

    def __init__(self, level, factor):
        super().__init__(level)
        self.level = level
        self.factor = factor


class Branch:
    """One triangular set.  Identity matters: elements key residues by branch object."""

    __slots__ = ("key", "moduli", "parent", "_arith")

    def __init__(self, key, moduli, parent=None):
        self.key = key
        self.moduli = moduli
        self.parent = parent
        self._arith = None

    @property
    def depth(self):
        return len(self.moduli)

    @property
    def degrees(self):
        return tuple(len(m) - 1 for m in self.moduli)

    @property
    def dimension(self):
        d = 1
        for k in self.degrees:
            d *= k
        return d

    def __repr__(self):
        return f"Branch(key={self.key}, degrees={self.degrees})"


class _Arith:
    """Residue arithmetic for a fixed triangular set."""

    def __init__(self, field, moduli):
        self.field = field
        self.moduli = moduli
        self.degrees = [len(m) - 1 for m in moduli]
        self._zero = [field.zero]
        self._one = [field.one]
        for d in self.degrees:
            self._zero.append(tuple([self._zero[-1]] * d))
            self._one.append((self._one[-1],) + tuple([self._zero[-2]] * (d - 1)))

    def zero(self, depth):
        return self._zero[depth]

    def one(self, depth):
        return self._one[depth]

    def scalar(self, c, depth):
        x = c
        for L in range(1, depth + 1):
            x = (x,) + tuple([self._zero[L - 1]] * (self.degrees[L - 1] - 1))
        return x

    def is_zero(self, a, depth):
        if depth == 0:
            return not a
        return all(self.is_zero(c, depth - 1) for c in a)

    def add(self, a, b, depth):
        if depth == 0:
            return a + b
        return tuple(self.add(x, y, depth - 1) for x, y in zip(a, b))

    def sub(self, a, b, depth):
        if depth == 0:
            return a - b
        return tuple(self.sub(x, y, depth - 1) for x, y in zip(a, b))

    def neg(self, a, depth):
        if depth == 0:
            return -a
        return tuple(self.neg(x, depth - 1) for x in a)

    def mul(self, a, b, depth):
        if depth == 0:
            return a * b
        lower = depth - 1
        out = [self._zero[lower]] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.is_zero(x, lower):
                continue
            for j, y in enumerate(b):
                if self.is_zero(y, lower):
                    continue
                out[i + j] = self.add(out[i + j], self.mul(x, y, lower), lower)
        return self.reduce(out, depth)

    def reduce(self, poly, depth):
        """Reduce a list of depth-(L-1) residues modulo the monic ``m_L``."""
        m = self.moduli[depth - 1]
        d = len(m) - 1
        lower = depth - 1
        poly = list(poly)
        for k in range(len(poly) - 1, d - 1, -1):
            c = poly[k]
            if self.is_zero(c, lower):
                continue
            for i in range(d):
                if not self.is_zero(m[i], lower):
                    poly[k - d + i] = self.sub(poly[k - d + i], self.mul(c, m[i], lower), lower)
        poly = poly[:d]
        while len(poly) < d:
            poly.append(self._zero[lower])
        return tuple(poly)

    def normalize(self, x, depth):
        """Re-reduce a residue that may come from a coarser branch."""
        if depth == 0:
            return x
        return self.reduce([self.normalize(c, depth - 1) for c in x], depth)

    def embed(self, x, from_depth, to_depth):
        for L in range(from_depth + 1, to_depth + 1):
            x = (x,) + tuple([self._zero[L - 1]] * (self.degrees[L - 1] - 1))
        return x

    def inv(self, a, depth):
        if depth == 0:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return self.field.one / a
        lower = depth - 1
        r0 = list(self.moduli[depth - 1])
        r1 = self.p_strip(list(a), lower)
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        s0, s1 = [], [self._one[lower]]
        while len(r1) > 1:
            q, r = self.p_divmod(r0, r1, lower)
            r0, r1 = r1, r
            s0, s1 = s1, self.p_sub(s0, self.p_mul(q, s1, lower), lower)
        if not r1:
            raise _Split(depth, self.p_monic(r0, lower))
        c = self.inv(r1[0], lower)
        return self.reduce([self.mul(x, c, lower) for x in s1] or [self._zero[lower]], depth)

    # dense polynomials whose coefficients are residues of a given depth

    def p_strip(self, a, depth):
        while a and self.is_zero(a[-1], depth):
            a.pop()
        return a

    def p_sub(self, a, b, depth):
        n = max(len(a), len(b))
        z = self._zero[depth]
        out = [
            self.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z, depth)
            for i in range(n)
        ]
        return self.p_strip(out, depth)

    def p_mul(self, a, b, depth):
        if not a or not b:
            return []
        out = [self._zero[depth]] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = self.add(out[i + j], self.mul(x, y, depth), depth)
        return self.p_strip(out, depth)

    def p_monic(self, a, depth):
        lc = a[-1]
        if lc == self._one[depth]:
            return list(a)
        inv = self.inv(lc, depth)
        return [self.mul(c, inv, depth) for c in a]

    def p_divmod(self, a, b, depth):
        a = self.p_strip(list(a), depth)
        b = self.p_strip(list(b), depth)
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        lc = b[-1]
        inv = self._one[depth] if lc == self._one[depth] else self.inv(lc, depth)
        q = [self._zero[depth]] * max(len(a) - len(b) + 1, 0)
        while len(a) >= len(b) and a:
            k = len(a) - len(b)
            c = self.mul(a[-1], inv, depth)
            q[k] = c
            for i, y in enumerate(b):
                a[i + k] = self.sub(a[i + k], self.mul(c, y, depth), depth)
            a.pop()
            self.p_strip(a, depth)
        return q, a

    def p_gcd(self, a, b, depth):
        a = self.p_strip(list(a), depth)
        b = self.p_strip(list(b), depth)
        while b:
            _, r = self.p_divmod(a, b, depth)
            a, b = b, r
        return self.p_monic(a, depth) if a else a

    def flatten(self, x, depth):
        if depth == 0:
            return [x]
        out = []
        for c in x:
            out.extend(self.flatten(c, depth - 1))
        return out


def _arith(field, branch):
    if branch._arith is None:
        branch._arith = _Arith(field, branch.moduli)
    return branch._arith


class TowerElement:
    """Per-branch residues; lifted lazily into refined branches."""

    __slots__ = ("residues", "depth", "label")

    def __init__(self, residues, depth, label=None):
        self.residues = residues
        self.depth = depth
        self.label = label

    def __repr__(self):
        return f"TowerElement(depth={self.depth}, branches={len(self.residues)})"


@dataclass(frozen=True)
class ZeroVerdict:
    branch: Branch
    is_zero: bool
    inverse: TowerElement | None


class Tower:
    """Persistent triangular tower over ``field``."""

    def __init__(self, field, branches=None, names=(), max_dimension=DEFAULT_MAX_DIMENSION,
                 max_branches=DEFAULT_MAX_BRANCHES):
        self.field = field
        self.branches = tuple(branches) if branches else (Branch((), ()),)
        self.names = tuple(names)
        self.max_dimension = max_dimension
        self.max_branches = max_branches
        depths = {b.depth for b in self.branches}
        if len(depths) != 1:
            raise PreconditionError("branches of one tower must share their depth")

    def _derive(self, branches, names=None):
        return Tower(self.field, branches, self.names if names is None else names,
                     self.max_dimension, self.max_branches)

    @property
    def depth(self):
        return self.branches[0].depth

    def branch(self, key):
        for b in self.branches:
            if b.key == key:
                return b
        raise KeyError(key)

    def arith(self, branch):
        return _arith(self.field, branch)

    # ------------------------------------------------------------ elements

    def lift(self, e, branch):
        """Residue of ``e`` on ``branch`` (walking up the branch lineage)."""
        res = e.residues.get(branch)
        if res is not None:
            return res
        ancestor = branch
        while ancestor is not None and ancestor not in e.residues:
            ancestor = ancestor.parent
        if ancestor is None:
            raise PreconditionError("element does not belong to this tower")
        ar = self.arith(branch)
        x = ar.embed(e.residues[ancestor], ancestor.depth, branch.depth)
        x = ar.normalize(x, branch.depth)
        e.residues[branch] = x
        return x

    def _coerce(self, x):
        if isinstance(x, TowerElement):
            return x
        return self.scalar(x)

    def scalar(self, c):
        c = self.field(c)
        return TowerElement(
            {b: self.arith(b).scalar(c, b.depth) for b in self.branches}, self.depth
        )

    def zero(self):
        return self.scalar(self.field.zero)

    def one(self):
        return self.scalar(self.field.one)

    def generator(self, level):
        """The adjoined root ``t_level`` (1-based)."""
        if not 1 <= level <= self.depth:
            raise PreconditionError(f"no level {level}")
        out = {}
        for b in self.branches:
            ar = self.arith(b)
            x = ar.reduce([ar.zero(level - 1), ar.one(level - 1)], level)
            out[b] = ar.embed(x, level, b.depth)
        return TowerElement(out, self.depth, self.names[level - 1])

    def _pointwise(self, op, *elements):
        elements = [self._coerce(e) for e in elements]
        out = {}
        for b in self.branches:
            ar = self.arith(b)
            out[b] = getattr(ar, op)(*[self.lift(e, b) for e in elements], b.depth)
        return TowerElement(out, self.depth)

    def add(self, a, b):
        return self._pointwise("add", a, b)

    def sub(self, a, b):
        return self._pointwise("sub", a, b)

    def neg(self, a):
        return self._pointwise("neg", a)

    def mul(self, a, b):
        return self._pointwise("mul", a, b)

    def pow(self, a, n):
        result = self.one()
        base = self._coerce(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero_on(self, e, branch):
        return self.arith(branch).is_zero(self.lift(self._coerce(e), branch), branch.depth)

    def is_zero(self, e):
        """Literal zero test on every branch (no splitting)."""
        return all(self.is_zero_on(e, b) for b in self.branches)

    def equal(self, a, b):
        return self.is_zero(self.sub(a, b))

    def evaluate(self, coeffs, x):
        """Horner evaluation of ``sum coeffs[i] x^i``."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # ------------------------------------------------------------ splitting

    def _split_branch(self, branch, split):
        L = split.level
        ar = self.arith(branch)
        m = list(branch.moduli[L - 1])
        g = list(split.factor)
        h, r = ar.p_divmod(m, g, L - 1)
        if r or len(g) < 2 or len(h) < 2:
            raise AssertionError("split factor does not properly divide the modulus")
        children = []
        for idx, factor in enumerate((g, h)):
            moduli = branch.moduli[: L - 1] + (tuple(factor),)
            for level in range(L + 1, branch.depth + 1):
                tmp = _Arith(self.field, moduli)
                moduli = moduli + (
                    tuple(tmp.normalize(c, level - 1) for c in branch.moduli[level - 1]),
                )
            children.append(Branch(branch.key + (idx,), moduli, branch))
        return children

    def _run(self, fn, *elements):
        """Apply ``fn(arith, branch, *residues)`` on every branch, splitting on demand."""
        elements = [self._coerce(e) for e in elements]
        queue = list(self.branches)
        done = []
        while queue:
            b = queue.pop(0)
            try:
                result = fn(self.arith(b), b, *[self.lift(e, b) for e in elements])
            except _Split as s:
                queue[0:0] = self._split_branch(b, s)
                if len(queue) + len(done) > self.max_branches:
                    raise BudgetExceeded(
                        f"branch count exceeds the cap of {self.max_branches}"
                    ) from None
                continue
            done.append((b, result))
        return done

    def zero_test_split(self, e):
        """Split until ``e`` is zero or a unit on every branch.

        Returns ``(tower, verdicts)``; each verdict carries the inverse where
        ``e`` is invertible.
        """
        def fn(ar, b, x):
            if ar.is_zero(x, b.depth):
                return None
            return ar.inv(x, b.depth)

        done = self._run(fn, e)
        tower = self._derive([b for b, _ in done])
        verdicts = [
            ZeroVerdict(b, inv is None, None if inv is None else TowerElement({b: inv}, b.depth))
            for b, inv in done
        ]
        return tower, verdicts

    def invert(self, e):
        """``(tower, {branch key: inverse or None})``; None marks the zero part."""
        tower, verdicts = self.zero_test_split(e)
        return tower, {v.branch.key: v.inverse for v in verdicts}

    def restrict(self, key):
        """Keep a single branch."""
        return self._derive([self.branch(key)])

    # ------------------------------------------------------------ adjunction

    def adjoin_root(self, coeffs, name=None):
        """Adjoin a root of the monic polynomial ``sum coeffs[i] Z^i``.

        The new modulus is the squarefree part of the polynomial (computed by
        dynamic evaluation, so the tower may split on the way).
        """
        coeffs = [self._coerce(c) for c in coeffs]
        p = self.field.characteristic

        def fn(ar, b, *f):
            D = b.depth
            f = ar.p_strip(list(f), D)
            n = len(f) - 1
            if n < 1:
                raise DegenerateInputError("cannot adjoin a root of a constant")
            if f[-1] != ar.one(D):
                raise PreconditionError("polynomial is not monic")
            df = [ar.mul(f[i], ar.scalar(self.field(i), D), D) for i in range(1, n + 1)]
            df = ar.p_strip(df, D)
            if p and n >= p and not df:
                raise UnsupportedError(f"inseparable polynomial of degree {n} in characteristic {p}")
            g = ar.p_gcd(f, df, D) if df else f
            if len(g) > 1:
                if p and n >= p:
                    raise UnsupportedError(
                        f"repeated roots in degree {n} >= characteristic {p} are not supported"
                    )
                f, _ = ar.p_divmod(f, g, D)
            return tuple(f)

        done = self._run(fn, *coeffs)
        name = name or f"t{self.depth + 1}"
        branches = []
        root = {}
        for b, modulus in done:
            nb = Branch(b.key, b.moduli + (modulus,), b)
            if nb.dimension > self.max_dimension:
                raise BudgetExceeded(
                    f"tower dimension {nb.dimension} exceeds the cap of {self.max_dimension}"
                )
            ar = self.arith(nb)
            root[nb] = ar.reduce([ar.zero(b.depth), ar.one(b.depth)], nb.depth)
            branches.append(nb)
        tower = self._derive(branches, self.names + (name,))
        return tower, TowerElement(root, tower.depth, name)

    # ------------------------------------------------------------ linear algebra

    def coordinates(self, e, branch):
        return self.arith(branch).flatten(self.lift(self._coerce(e), branch), branch.depth)

    def minimal_polynomial(self, e, branch):
        """Monic minimal polynomial (coefficients low to high) of ``e`` over the base field on ``branch``."""
        if not isinstance(branch, Branch):
            branch = self.branch(branch)
        e = self._coerce(e)
        ar = self.arith(branch)
        x = self.lift(e, branch)
        field = self.field
        basis = []
        power = ar.one(branch.depth)
        for k in range(branch.dimension + 1):
            v = ar.flatten(power, branch.depth)
            combo = [field.zero] * k + [field.one]
            for piv, bv, bc in basis:
                c = v[piv]
                if c:
                    v = [vi - c * bi for vi, bi in zip(v, bv)]
                    combo = [ci - c * (bc[i] if i < len(bc) else field.zero) for i, ci in enumerate(combo)]
            nz = next((i for i, vi in enumerate(v) if vi), None)
            if nz is None:
                return combo
            inv = field.one / v[nz]
            basis.append((nz, [vi * inv for vi in v], [ci * inv for ci in combo]))
            power = ar.mul(power, x, branch.depth)
        raise AssertionError("no linear dependency among dimension+1 powers")

    def is_integral_over_base(self, e, branch):
        """True iff the minimal polynomial has coefficients in the base ring (``k[Y]`` or ``k``)."""
        coeffs = self.minimal_polynomial(e, branch)
        if isinstance(self.field, FractionField):
            return all(c.is_polynomial() for c in coeffs)
        return True

    # ------------------------------------------------------------ printing

    def format(self, e, branch=None):
        branch = branch or self.branches[0]
        return _format(self.lift(self._coerce(e), branch), branch.depth, self.names)

    def describe(self):
        """Deterministic structural description (used for presentation equality)."""
        out = []
        for b in self.branches:
            levels = []
            for L, m in enumerate(b.moduli, start=1):
                levels.append(_format(m + (), L - 1, self.names, poly_var=self.names[L - 1]))
            out.append({"key": list(b.key), "dimension": b.dimension, "moduli": levels})
        return out


def _format(x, depth, names, poly_var=None):
    """Render a residue (or, with ``poly_var``, a coefficient list) as text."""
    if poly_var is not None:
        return _format_poly(list(x), depth, names, poly_var)
    if depth == 0:
        return str(x)
    return _format_poly(list(x), depth - 1, names, names[depth - 1])


def _format_poly(coeffs, depth, names, var):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        text = _format(c, depth, names)
        if text == "0":
            continue
        if i == 0:
            terms.append(text)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if text == "1":
            terms.append(mono)
        elif text == "-1":
            terms.append(f"-{mono}")
        else:
            if " " in text:
                text = f"({text})"
            terms.append(f"{text}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out
