"""Truncated absolute integral closures of reduced rings.

:class:`AicApprox` holds one tower per minimal prime ``p`` of ``R``.  The
tower lives over the fraction field of ``R/p`` (``k(v)`` or ``k``) and is a
finite piece of ``(R/p)^+``; the approximation is a finite piece of the
universal aic ``T = prod_p (R/p)^+``.  Every tower is kept on a single branch:
when dynamic evaluation splits a component, one branch is kept (the first,
unless a pullback installs a compatibility rule), which amounts to choosing
an embedding into an algebraic closure.

:class:`Pullback` realizes ``T0 = {t : phi(t_p) = psi(t_q)}`` for two
non-comaximal minimal primes, with ``phi`` and ``psi`` landing in a shared
tower over the residue field of a common maximal ideal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    DegenerateInputError,
    MatchingError,
    PreconditionError,
    SpecializationError,
    UnsupportedError,
)
from .exact_arith import FractionField, Polynomial, RationalFunction, rational_roots
from .rings import (
    component_quotient,
    intersection,
    is_regular,
    localize,
    minimal_primes,
)
from .tower import DEFAULT_MAX_BRANCHES, DEFAULT_MAX_DIMENSION, Tower, TowerElement

ZVAR = "Z"


def _dense(poly, var):
    """Scalar coefficients (low to high) of a univariate polynomial; constants allowed."""
    if poly.is_zero():
        return []
    if var not in poly.used_variables():
        return [poly.constant_value()]
    return poly.compact().dense(var)


def _zpoly(coeffs, names, field):
    """``sum coeffs[i] Z^i`` with coefficients in ``k[names]``."""
    Z = Polynomial.var(ZVAR, field)
    out = Polynomial.zero(field)
    power = Polynomial.one(field)
    for c in coeffs:
        out = out + c * power
        power = power * Z
    return out


# ---------------------------------------------------------------- elements


class TElement:
    """An element of the approximation: one tower element per component."""

    __slots__ = ("approx", "parts", "preimage")

    def __init__(self, approx, parts, preimage=None):
        self.approx = approx
        self.parts = tuple(parts)
        self.preimage = preimage

    def _other(self, other):
        if isinstance(other, TElement):
            return other
        return self.approx.embed(other)

    def _combine(self, other, op, pre):
        other = self._other(other)
        parts = [getattr(T, op)(a, b) for T, a, b in zip(self.approx.towers, self.parts, other.parts)]
        preimage = None
        if self.preimage is not None and other.preimage is not None:
            preimage = pre(self.preimage, other.preimage)
        return TElement(self.approx, parts, preimage)

    def __add__(self, other):
        return self._combine(other, "add", lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, "sub", lambda a, b: a - b)

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        return self._combine(other, "mul", lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        pre = None if self.preimage is None else -self.preimage
        return TElement(self.approx, [T.neg(a) for T, a in zip(self.approx.towers, self.parts)], pre)

    def __pow__(self, n):
        out = self.approx.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self):
        return self.approx.format(self)

    def __repr__(self):
        return f"TElement({self})"


@dataclass
class AdjunctionRecord:
    poly: str
    roots: list  # per component: list of TowerElement


# ---------------------------------------------------------------- approximation


class AicApprox:
    """Finite truncation of ``T = prod_p (R/p)^+``."""

    def __init__(self, R, max_dimension=DEFAULT_MAX_DIMENSION, max_branches=DEFAULT_MAX_BRANCHES):
        if R.kind != "subdirect":
            raise UnsupportedError("aic approximations need a subdirect presentation")
        self.R = R
        self.field = R.field
        self.tags = minimal_primes(R)
        self.bases = [FractionField(R.field, c.var) if c.var else R.field for c in R.components]
        self.towers = [Tower(b, max_dimension=max_dimension, max_branches=max_branches) for b in self.bases]
        self.log = []
        self.chooser = None
        self.max_dimension = max_dimension
        self.max_branches = max_branches

    def copy(self):
        other = AicApprox.__new__(AicApprox)
        other.__dict__.update(self.__dict__)
        other.towers = list(self.towers)
        other.log = list(self.log)
        other.chooser = None
        return other

    def __len__(self):
        return len(self.towers)

    # elements

    def _scalar(self, i, value):
        return self.towers[i].scalar(self.bases[i](value))

    def embed(self, r):
        r = self.R.element(r) if isinstance(r, str) else r
        if not isinstance(r, Polynomial):
            r = Polynomial.constant(r, self.field)
        parts = [self._scalar(i, self.R.image(r, i)) for i in range(len(self))]
        return TElement(self, parts, r)

    def zero(self):
        return self.embed(0)

    def one(self):
        return self.embed(1)

    def vector(self, bits):
        """The 0/1 component vector (an idempotent of T)."""
        return TElement(self, [T.scalar(b) for T, b in zip(self.towers, bits)])

    def from_parts(self, parts):
        return TElement(self, parts)

    def format(self, t):
        texts = [T.format(x) for T, x in zip(self.towers, t.parts)]
        return "(" + ", ".join(texts) + ")"

    # splitting policy

    def _install(self, i, tower):
        if len(tower.branches) > 1:
            key = self.chooser(i, tower) if self.chooser else None
            tower = tower.restrict(key if key is not None else tower.branches[0].key)
        self.towers[i] = tower

    def component_is_zero(self, t, i):
        part = t.parts[i] if isinstance(t, TElement) else t
        tower, verdicts = self.towers[i].zero_test_split(part)
        self._install(i, tower)
        return self.towers[i].is_zero_on(part, self.towers[i].branches[0])

    def is_zero(self, t):
        return all(self.component_is_zero(t, i) for i in range(len(self)))

    def equal(self, a, b):
        return self.is_zero(a - b)

    # root extraction

    def _scalar_coefficients(self, i, coeffs):
        """Coefficients as elements of ``k`` when all of them are constants, else ``None``."""
        T = self.towers[i]
        branch = T.branches[0]
        out = []
        for c in coeffs:
            coords = T.coordinates(c, branch)
            if any(x for x in coords[1:]):
                return None
            x = coords[0]
            if isinstance(x, RationalFunction):
                if not x.is_constant():
                    return None
                x = x.num.constant_value() if not x.num.is_zero() else self.field.zero
            out.append(x)
        return out

    def component_roots(self, i, coeffs, label=""):
        """All roots (with multiplicity) of a monic polynomial over component ``i``."""
        coeffs = list(coeffs)
        if len(coeffs) < 2:
            raise DegenerateInputError("polynomial of degree 0 has no roots")
        roots = []
        try:
            while len(coeffs) > 2:
                T = self.towers[i]
                if self.component_is_zero(coeffs[0], i):
                    root = self.towers[i].zero()
                else:
                    scalars = self._scalar_coefficients(i, coeffs)
                    found = rational_roots(scalars, self.field) if scalars else []
                    if found:
                        root = self.towers[i].scalar(found[0])
                    else:
                        T, root = self.towers[i].adjoin_root(coeffs)
                        self._install(i, T)
                coeffs = self._deflate(i, coeffs, root)
                roots.append(root)
        except BudgetExceeded as exc:
            raise BudgetExceeded(f"{label or 'polynomial'} in component {self.tags[i]}: {exc}") from None
        roots.append(self.towers[i].neg(coeffs[0]))
        return roots

    def _deflate(self, i, coeffs, root):
        T = self.towers[i]
        n = len(coeffs) - 1
        q = [None] * n
        q[n - 1] = coeffs[n]
        for k in range(n - 1, 0, -1):
            q[k - 1] = T.add(coeffs[k], T.mul(root, q[k]))
        rem = T.add(coeffs[0], T.mul(root, q[0]))
        if not T.is_zero(rem):
            raise AssertionError("deflation left a nonzero remainder")
        return q

    def coefficient_parts(self, f):
        """Per-component coefficient lists of a monic ``f`` in ``R[Z]`` (or a list of TElements)."""
        if isinstance(f, (list, tuple)):
            elems = [c if isinstance(c, TElement) else self.embed(c) for c in f]
        else:
            if isinstance(f, str):
                from .parsing import parse_poly_expr

                f = parse_poly_expr(f, self.field, set(self.R.generators) | {ZVAR})
            if ZVAR not in f.used_variables():
                raise DegenerateInputError(f"{f} has degree 0 in {ZVAR}")
            elems = [self.embed(c) for c in f.coefficients(ZVAR)]
        if not self.is_zero(elems[-1] - 1):
            raise PreconditionError("polynomial is not monic")
        return elems

    def adjoin_all_roots(self, f, label=None):
        """Adjoin every root of ``f`` on every component; returns the T-roots."""
        elems = self.coefficient_parts(f)
        label = label or str(f)
        per = [
            self.component_roots(i, [c.parts[i] for c in elems], label) for i in range(len(self))
        ]
        self.log.append(AdjunctionRecord(label, per))
        return [TElement(self, parts) for parts in zip(*per)]

    # census

    def idempotent_vectors(self):
        h = len(self)
        return [tuple((m >> i) & 1 for i in range(h)) for m in range(2 ** h)]


def build_universal_aic_approx(R, polys=(), max_dimension=DEFAULT_MAX_DIMENSION,
                               max_branches=DEFAULT_MAX_BRANCHES):
    """Adjoin all roots of each monic ``f`` in ``polys`` on every component."""
    A = AicApprox(R, max_dimension, max_branches)
    for f in polys:
        A.adjoin_all_roots(f, str(f))
    return A


def reconstruct(approx, roots, coeffs):
    """``prod (Z - root)`` equals the polynomial with TElement coefficients ``coeffs``."""
    prod = [approx.one()]
    for r in roots:
        nxt = [approx.zero() for _ in range(len(prod) + 1)]
        for k, c in enumerate(prod):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - r * c
        prod = nxt
    return len(prod) == len(coeffs) and all(approx.equal(a, b) for a, b in zip(prod, coeffs))


def splits_on_component(approx, f, i, roots):
    """``prod (Z - root)`` equals the image of ``f`` on component ``i``."""
    T = approx.towers[i]
    coeffs = [c.parts[i] for c in approx.coefficient_parts(f)]
    prod = [T.one()]
    for r in roots:
        nxt = [T.zero() for _ in range(len(prod) + 1)]
        for k, c in enumerate(prod):
            nxt[k + 1] = T.add(nxt[k + 1], c)
            nxt[k] = T.sub(nxt[k], T.mul(r, c))
        prod = nxt
    return len(prod) == len(coeffs) and all(T.equal(a, b) for a, b in zip(prod, coeffs))


@dataclass
class Factorization:
    poly: str
    roots: list
    reconstructs: bool
    matching: list = field(default_factory=list)  # (phi value, psi value) per root
    multisets_equal: bool | None = None


def factor_in_T(approx, f):
    coeffs = approx.coefficient_parts(f)
    roots = approx.adjoin_all_roots(coeffs, str(f))
    return Factorization(str(f), roots, reconstruct(approx, roots, coeffs))


# ---------------------------------------------------------------- pullback


@dataclass(frozen=True)
class PullbackSpec:
    p: int
    q: int
    point_index: int = 0


class Pullback:
    """``T0 = {t in T : phi(t_p) = psi(t_q)}`` for non-comaximal minimal primes ``p, q``.

    The common point is a root of the intersection polynomial of the two
    components; ``phi`` and ``psi`` specialize the component parameter to the
    point and send each tower level to the first available root of its
    specialized modulus in a shared tower ``kbar`` over ``k``.
    """

    def __init__(self, approx, spec):
        R = approx.R
        if spec.p == spec.q:
            raise PreconditionError("pullback needs two distinct minimal primes")
        self.approx = approx
        self.spec = spec
        self.sides = (spec.p, spec.q)
        k = R.field
        H, par_p, par_q = intersection(R, spec.p, spec.q)
        if H.is_zero():
            raise DegenerateInputError("components coincide")
        if H.is_constant():
            raise PreconditionError(
                f"{approx.tags[spec.p]} and {approx.tags[spec.q]} are comaximal; no shared maximal ideal"
            )
        self.intersection = H
        self.kbar = Tower(k, max_dimension=approx.max_dimension, max_branches=approx.max_branches)
        self.known = []
        coeffs = _dense(H, "W")
        lead = coeffs[-1]
        coeffs = [c / lead for c in coeffs]
        found = rational_roots(coeffs, k)
        if len(found) > spec.point_index:
            w0 = self.kbar.scalar(found[spec.point_index])
        else:
            w0 = self._kbar_root([self.kbar.scalar(c) for c in coeffs])
        self.point_parameter = w0
        self.params = {
            spec.p: self.kbar.evaluate([self.kbar.scalar(c) for c in _dense(par_p, "W")], w0),
            spec.q: self.kbar.evaluate([self.kbar.scalar(c) for c in _dense(par_q, "W")], w0),
        }
        self.choices = {spec.p: {}, spec.q: {}}
        self.diagonal_roots = []
        approx.chooser = self._choose

    # kbar helpers

    def _kbar_zero(self, e, prefer_zero=True):
        tower, verdicts = self.kbar.zero_test_split(e)
        pick = next((v for v in verdicts if v.is_zero == prefer_zero), verdicts[0])
        self.kbar = tower.restrict(pick.branch.key) if len(verdicts) > 1 else tower
        return pick.is_zero, pick.inverse

    def _kbar_root(self, coeffs):
        """First root of a monic polynomial over ``kbar``: 0, a root in ``k``, a known root, or a new level."""
        K = self.kbar
        if self._kbar_zero(coeffs[0])[0]:
            return K.zero()
        scalars = []
        for c in coeffs:
            coords = K.coordinates(c, K.branches[0])
            if any(coords[1:]):
                scalars = None
                break
            scalars.append(coords[0])
        if scalars:
            found = rational_roots(scalars, K.field)
            if found:
                return K.scalar(found[0])
        for cand in self.known:
            if self._kbar_zero(self.kbar.evaluate(coeffs, cand))[0]:
                return cand
        tower, root = self.kbar.adjoin_root(coeffs, name=f"s{self.kbar.depth + 1}")
        self.kbar = tower.restrict(tower.branches[0].key) if len(tower.branches) > 1 else tower
        self.known.append(root)
        return root

    # specialization

    def _base_value(self, side, x):
        K = self.kbar
        if not isinstance(x, RationalFunction):
            return K.scalar(x)
        v0 = self.params[side]
        num = K.evaluate([K.scalar(c) for c in _dense(x.num, x.var)], v0)
        den = K.evaluate([K.scalar(c) for c in _dense(x.den, x.var)], v0)
        is_zero, inv = self._kbar_zero(den, prefer_zero=False)
        if is_zero:
            raise SpecializationError(f"denominator {x.den} vanishes at the chosen point")
        return self.kbar.mul(num, inv)

    def _value(self, side, x, depth):
        if depth == 0:
            return self._base_value(side, x)
        a = self._level_root(side, depth)
        acc = self.kbar.zero()
        for c in reversed(x):
            acc = self.kbar.add(self.kbar.mul(acc, a), self._value(side, c, depth - 1))
        return acc

    def _level_root(self, side, level, branch=None):
        chosen = self.choices[side]
        if level not in chosen:
            T = self.approx.towers[side]
            modulus = (branch or T.branches[0]).moduli[level - 1]
            coeffs = [self._value(side, c, level - 1) for c in modulus]
            chosen[level] = self._kbar_root(coeffs)
        return chosen[level]

    def _choose(self, side, tower):
        if side not in self.choices or not self.choices[side]:
            return None
        for b in tower.branches:
            ok = True
            for level in sorted(self.choices[side]):
                modulus = b.moduli[level - 1]
                coeffs = [self._value(side, c, level - 1) for c in modulus]
                value = self.kbar.evaluate(coeffs, self.choices[side][level])
                if not self._kbar_zero(value)[0]:
                    ok = False
                    break
            if ok:
                return b.key
        raise SpecializationError("no branch is compatible with the chosen roots")

    def phi(self, t):
        return self._side_value(self.spec.p, t)

    def psi(self, t):
        return self._side_value(self.spec.q, t)

    def _side_value(self, side, t):
        T = self.approx.towers[side]
        b = T.branches[0]
        part = t.parts[side] if isinstance(t, TElement) else t
        return self._value(side, T.lift(part, b), b.depth)

    def format_value(self, v):
        return self.kbar.format(v)

    def contains(self, t):
        return self._kbar_zero(self.kbar.sub(self.phi(t), self.psi(t)))[0]

    def validate(self):
        """``phi`` and ``psi`` agree on every generator of R (the image of R lies in T0)."""
        out = {}
        for name in sorted(self.approx.R.generators):
            g = self.approx.embed(Polynomial.var(name, self.approx.field))
            out[name] = self.contains(g)
        return out


def build_pullback_aic(approx, spec):
    """A pullback on a copy of ``approx`` (the copy's splitting policy follows the root choices)."""
    return Pullback(approx.copy(), spec)


def factor_in_T0(pb, f):
    """Linear factorization over T0 by matching component roots through ``phi`` and ``psi``."""
    A = pb.approx
    coeffs = A.coefficient_parts(f)
    per = [A.component_roots(i, [c.parts[i] for c in coeffs], str(f)) for i in range(len(A))]
    A.log.append(AdjunctionRecord(str(f), per))
    p, q = pb.sides
    phis = [pb._side_value(p, a) for a in per[p]]
    psis = [pb._side_value(q, b) for b in per[q]]
    K = pb
    equal = _symmetric_functions_agree(pb, phis, psis)
    if not equal:
        raise MatchingError(f"root images of {f} differ as multisets")
    used = set()
    order = []
    for a in phis:
        for j, b in enumerate(psis):
            if j not in used and K._kbar_zero(K.kbar.sub(a, b))[0]:
                used.add(j)
                order.append(j)
                break
        else:
            raise MatchingError(f"no partner for a root of {f}")
    roots, matching = [], []
    for idx, j in enumerate(order):
        parts = [per[i][idx] for i in range(len(A))]
        parts[q] = per[q][j]
        roots.append(TElement(A, parts))
        matching.append((pb.format_value(phis[idx]), pb.format_value(psis[j])))
    ok = reconstruct(A, roots, coeffs) and all(pb.contains(r) for r in roots)
    pb.diagonal_roots.extend(roots)
    return Factorization(str(f), roots, ok, matching, equal)


def _symmetric_functions_agree(pb, xs, ys):
    if len(xs) != len(ys):
        return False
    K = pb.kbar

    def expand(vals):
        prod = [K.one()]
        for v in vals:
            nxt = [K.zero() for _ in range(len(prod) + 1)]
            for k, c in enumerate(prod):
                nxt[k + 1] = K.add(nxt[k + 1], c)
                nxt[k] = K.sub(nxt[k], K.mul(v, c))
            prod = nxt
        return prod

    return all(pb._kbar_zero(K.sub(a, b))[0] for a, b in zip(expand(xs), expand(ys)))


def factor_monic_into_linears(ambient, f):
    """Dispatch on the ambient: an :class:`AicApprox` (T) or a :class:`Pullback` (T0)."""
    if isinstance(ambient, Pullback):
        return factor_in_T0(ambient, f)
    return factor_in_T(ambient, f)


# ---------------------------------------------------------------- censuses


@dataclass
class Census:
    ambient: str
    components: int
    members: list
    rejected: list

    @property
    def count(self):
        return len(self.members)


def idempotent_census(ambient):
    """Idempotents of T (all 0/1 vectors) or of T0 (vectors with ``phi = psi``)."""
    if isinstance(ambient, Pullback):
        A = ambient.approx
        members, rejected = [], []
        for bits in A.idempotent_vectors():
            e = A.vector(bits)
            if ambient.contains(e):
                members.append(bits)
            else:
                rejected.append({
                    "element": bits,
                    "phi": ambient.format_value(ambient.phi(e)),
                    "psi": ambient.format_value(ambient.psi(e)),
                })
        return Census("T0", len(A), members, rejected)
    A = ambient
    members = []
    for bits in A.idempotent_vectors():
        e = A.vector(bits)
        if A.equal(e * e, e):
            members.append(bits)
    return Census("T", len(A), members, [])


@dataclass
class Verdict:
    count: int
    connected_components: int
    verdict: str


def aic_discriminator(census, min_count=None):
    """Compare an idempotent census with ``2^|min(R)|``."""
    expected = 2 ** census.components if min_count is None else min_count
    n = census.count
    if n == 0 or n & (n - 1):
        return Verdict(n, 0, "undecided")
    parts = n.bit_length() - 1
    return Verdict(n, parts, "universal-class" if n == expected else "deficient-class")


# ---------------------------------------------------------------- tightness


@dataclass
class TightnessCertificate:
    element: TElement
    tag: str
    h: Polynomial
    witness: Polynomial
    cofactor: TElement
    checks: dict

    @property
    def valid(self):
        return all(self.checks.values())


def tightness_witness(approx, t, pullback=None):
    """``h`` over R with ``h(t) = 0`` and ``h(0) = t*s`` nonzero in R."""
    R = approx.R
    k = approx.field
    if approx.is_zero(t):
        raise PreconditionError("tightness witness requested for zero")
    Z = Polynomial.var(ZVAR, k)
    if t.preimage is not None and is_regular(R, t.preimage):
        index = None
        h = Z - t.preimage
    else:
        index = next(i for i in range(len(approx)) if not approx.component_is_zero(t, i))
        T = approx.towers[index]
        coeffs = T.minimal_polynomial(t.parts[index], T.branches[0])
        lifted = []
        for c in coeffs:
            if isinstance(c, RationalFunction):
                if not c.is_polynomial():
                    raise PreconditionError("element is not integral over R")
                c = c.num
            lifted.append(R.lift_from_component(Polynomial.constant(c, k) if not isinstance(c, Polynomial) else c, index))
        while lifted and R.image(lifted[0], index).is_zero():
            lifted = lifted[1:]  # f(0) in p: f = Z*g, keep g
        if not lifted:
            raise PreconditionError("annihilating polynomial exhausted; input is not reduced")
        h = R.separator(index) * _zpoly(lifted, sorted(R.generators), k)
    hc = h.coefficients(ZVAR)
    h0 = hc[0]
    g = hc[1:]
    gt = approx.zero()
    for c in reversed(g):
        gt = gt * t + approx.embed(c)
    s = -gt
    ht = approx.zero()
    for c in reversed(hc):
        ht = ht * t + approx.embed(c)
    checks = {
        "h(t)=0": approx.is_zero(ht),
        "h(0)!=0": not R.is_zero(h0),
        "h(0)=t*s": approx.equal(t * s, approx.embed(h0)),
    }
    if pullback is not None:
        checks["s in T0"] = pullback.contains(s)
    tag = "R" if index is None else str(approx.tags[index])
    return TightnessCertificate(t, tag, h.compact(), h0.compact(), s, checks)


def localized_certificate(approx, cert, r):
    """Transport a certificate for ``t`` to ``t/r`` in ``F^-1 T`` with ``F`` generated by ``r``."""
    R = approx.R
    L = localize(R, [r])
    rr = approx.embed(r)
    t = cert.element
    return {
        "witness nonzero in F^-1 R": not L.is_zero(cert.witness, Polynomial.one(approx.field)),
        "(t/r)*(r*s) = h(0)": approx.equal(t * (rr * cert.cofactor), approx.embed(cert.witness) * rr),
        "r*t != 0": not approx.is_zero(rr * t),
    }


# ---------------------------------------------------------------- structure checks


def integral_filter(approx, elements):
    """Elements whose components are integral over the component domains."""
    out = []
    for t in elements:
        if all(T.is_integral_over_base(x, T.branches[0]) for T, x in zip(approx.towers, t.parts)):
            out.append(t)
    return out


def projection_check(approx, polys, index):
    """Component ``index`` of ``approx`` equals the approximation built over ``R/p`` directly."""
    R = approx.R
    direct = build_universal_aic_approx(
        component_quotient(R, approx.tags[index]), polys, approx.max_dimension, approx.max_branches
    )
    mine = approx.towers[index].describe()
    theirs = direct.towers[0].describe()
    return mine == theirs, mine, theirs


def sample_elements(ambient, rng, count, include_idempotents=True):
    """Seeded nonzero elements built from R, adjoined roots and (T only) idempotents."""
    if isinstance(ambient, Pullback):
        A, member = ambient.approx, ambient.contains
        pool = [A.embed(Polynomial.var(n, A.field)) for n in sorted(A.R.generators)]
        pool += [A.vector(b) for b in idempotent_census(ambient).members if any(b)]
        pool += ambient.diagonal_roots
    else:
        A, member = ambient, None
        pool = [A.embed(Polynomial.var(n, A.field)) for n in sorted(A.R.generators)]
        for rec in A.log:
            pool += [A.from_parts(parts) for parts in zip(*rec.roots)]
            for i, roots in enumerate(rec.roots):
                for root in roots:
                    parts = [T.zero() for T in A.towers]
                    parts[i] = root
                    pool.append(A.from_parts(parts))
        if include_idempotents:
            pool += [A.vector(b) for b in A.idempotent_vectors() if any(b)]
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 50 * count:
            raise AssertionError("could not sample enough nonzero elements")
        t = A.embed(rng.randint(-2, 2))
        for _ in range(rng.randint(1, 3)):
            term = A.embed(rng.choice([-2, -1, 1, 2, 3]))
            for _ in range(rng.randint(1, 2)):
                term = term * rng.choice(pool)
            t = t + term
        if A.is_zero(t):
            continue
        if member is not None and not member(t):
            raise AssertionError("T0 is not closed under ring operations")
        out.append(t)
    return out


def make_rng(seed):
    return random.Random(seed)
