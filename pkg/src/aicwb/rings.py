"""Reduced rings with finite minimal spectrum, presented as subdirect products.

Supported shapes:

* finite rings (``Z/n``, ``GF(p^k)`` and products), handled by brute force;
* subdirect products of at most eight domains ``k[v]`` (or ``k``) with named
  generators given by their image in every component;
* ``k[X,Y]/(f_1 ... f_m)`` with the irreducible factors supplied, each factor
  linear in one variable so that ``k[X,Y]/(f_i)`` is a polynomial ring in the
  other.  Pairwise distinctness is certified by nonzero resultants.

Elements of a subdirect presentation are polynomials in the generator names;
their component images are obtained by substitution.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    DegenerateInputError,
    PreconditionError,
    RegularityError,
    UnsupportedError,
)
from .exact_arith import (
    FractionField,
    Polynomial,
    monomials,
    resultant,
    solve_linear,
    squarefree_part,
)
from .finite import FiniteRing

MAX_COMPONENTS = 8
DEFAULT_SEARCH_DEGREE = 4


@dataclass(frozen=True)
class Component:
    tag: str
    var: str | None
    factor: Polynomial | None = None

    def describe(self, field):
        return f"{field!r}[{self.var}]" if self.var else repr(field)


@dataclass(frozen=True)
class MinimalPrimeTag:
    index: int
    description: str
    generator: object = None

    def __str__(self):
        return self.description


class RingPresentation:
    """A reduced ring with finitely many minimal primes.

    Use the constructors :meth:`from_factors`, :meth:`subdirect`,
    :meth:`domain`, :meth:`field_ring` and :meth:`finite`.
    """

    def __init__(self, kind, field=None, components=(), generators=None, factors=None,
                 finite_ring=None, prime_elements=None):
        self.kind = kind
        self.field = field
        self.components = tuple(components)
        self.generators = dict(generators or {})
        self.factors = tuple(factors) if factors else None
        self.finite_ring = finite_ring
        self._prime_elements = prime_elements
        if kind == "subdirect":
            self._validate()

    # ------------------------------------------------------------ constructors

    @classmethod
    def finite(cls, ring):
        return cls("finite", finite_ring=ring)

    @classmethod
    def domain(cls, field, var="Y"):
        comp = Component("(0)", var)
        return cls("subdirect", field, [comp], {var: (Polynomial.var(var, field),)},
                   prime_elements=[None])

    @classmethod
    def field_ring(cls, field):
        return cls("subdirect", field, [Component("(0)", None)], {}, prime_elements=[None])

    @classmethod
    def subdirect(cls, field, components, generators):
        """``components``: list of ``(tag, var)``; ``generators``: name -> per-component images."""
        comps = [Component(tag, var) for tag, var in components]
        gens = {}
        for name, images in generators.items():
            if len(images) != len(comps):
                raise PreconditionError(f"generator {name} needs {len(comps)} images")
            gens[name] = tuple(_as_poly(img, field) for img in images)
        return cls("subdirect", field, comps, gens)

    @classmethod
    def from_factors(cls, field, factors, variables=("X", "Y")):
        """``k[X,Y]/(f_1 ... f_m)`` from its irreducible factors."""
        factors = [_as_poly(f, field) for f in factors]
        if not factors:
            raise DegenerateInputError("at least one factor is required")
        x, y = variables
        for i, f in enumerate(factors):
            for g in factors[i + 1:]:
                var = x if x in f.used_variables() or x in g.used_variables() else y
                if resultant(f, g, var).is_zero():
                    raise PreconditionError(f"factors {f} and {g} share a component")
        entries = []
        for f in factors:
            solved = _solve_graph(f, x, y)
            if solved is None:
                raise UnsupportedError(
                    f"factor {f} is not linear with scalar coefficient in {x} or {y}"
                )
            entries.append((f, solved))
        entries.sort(key=lambda item: str(item[0]))
        comps = []
        images = {x: [], y: []}
        for f, (solved_var, expr, param) in entries:
            comps.append(Component(f"({f})", param, f))
            pv = Polynomial.var(param, field)
            if solved_var == x:
                images[x].append(expr)
                images[y].append(pv)
            else:
                images[x].append(pv)
                images[y].append(expr)
        gens = {name: tuple(imgs) for name, imgs in images.items()}
        return cls("subdirect", field, comps, gens, factors=[f for f, _ in entries],
                   prime_elements=[f for f, _ in entries])

    @classmethod
    def product(cls, first, second, idempotent_name="E"):
        """Direct product of two subdirect presentations (adds the idempotent ``E``)."""
        if first.field != second.field:
            raise PreconditionError("factors must share the coefficient field")
        clash = set(first.generators) & set(second.generators)
        if clash or idempotent_name in first.generators or idempotent_name in second.generators:
            raise PreconditionError(f"generator names collide: {sorted(clash)}")
        k = first.field
        n1, n2 = len(first.components), len(second.components)
        zero = Polynomial.zero(k)
        gens = {}
        for name, imgs in first.generators.items():
            gens[name] = tuple(imgs) + (zero,) * n2
        for name, imgs in second.generators.items():
            gens[name] = (zero,) * n1 + tuple(imgs)
        gens[idempotent_name] = (Polynomial.one(k),) * n1 + (zero,) * n2
        comps = list(first.components) + list(second.components)
        return cls("subdirect", k, comps, gens)

    # ------------------------------------------------------------ structure

    def _validate(self):
        if not 1 <= len(self.components) <= MAX_COMPONENTS:
            raise UnsupportedError(f"between 1 and {MAX_COMPONENTS} components are supported")
        for name in self.generators:
            if len(name) != 1 or not name.isupper() or name == "Z":
                raise PreconditionError(f"generator names are single capitals other than Z: {name!r}")
        for i, comp in enumerate(self.components):
            for name, imgs in self.generators.items():
                extra = set(imgs[i].used_variables()) - ({comp.var} if comp.var else set())
                if extra:
                    raise PreconditionError(f"image of {name} in {comp.tag} uses {sorted(extra)}")
        if self._prime_elements is None:
            self._prime_elements = self._default_prime_elements()

    def _default_prime_elements(self):
        out = []
        for i in range(len(self.components)):
            pick = None
            for name in sorted(self.generators):
                imgs = self.generators[name]
                if imgs[i].is_zero() and any(not imgs[j].is_zero() for j in range(len(imgs)) if j != i):
                    pick = Polynomial.var(name, self.field)
                    break
            out.append(pick)
        return out

    def __len__(self):
        return len(self.components) if self.kind == "subdirect" else len(self.minimal_prime_ideals())

    def element(self, expr):
        """Parse or coerce ``expr`` into an element (polynomial in generator names)."""
        from .parsing import parse_poly_expr

        if self.kind != "subdirect":
            raise UnsupportedError("use finite_ring elements directly")
        if isinstance(expr, str):
            return parse_poly_expr(expr, self.field, set(self.generators))
        return _as_poly(expr, self.field)

    def image(self, r, index):
        """Image of ``r`` in the component domain ``k[var]``."""
        r = _as_poly(r, self.field)
        mapping = {name: imgs[index] for name, imgs in self.generators.items()}
        missing = set(r.used_variables()) - set(mapping)
        if missing:
            raise PreconditionError(f"unknown generators {sorted(missing)}")
        return r.substitute(mapping).compact()

    def images(self, r):
        return tuple(self.image(r, i) for i in range(len(self.components)))

    def equal(self, a, b):
        return all(self.image(a, i) == self.image(b, i) for i in range(len(self.components)))

    def is_zero(self, r):
        return all(img.is_zero() for img in self.images(r))

    def separator(self, index):
        """An element in every minimal prime except the one at ``index``."""
        c = Polynomial.one(self.field)
        for j, g in enumerate(self._prime_elements):
            if j == index:
                continue
            if g is None:
                raise UnsupportedError(f"no supplied generator for {self.components[j].tag}")
            c = c * g
        if self.image(c, index).is_zero():
            raise UnsupportedError(f"separator lies in {self.components[index].tag}")
        return c

    def lift_parameter(self, index):
        """An element of R whose image in component ``index`` is its parameter variable."""
        comp = self.components[index]
        if comp.var is None:
            return None
        v = Polynomial.var(comp.var, self.field)
        for name in sorted(self.generators):
            if self.generators[name][index] == v:
                return Polynomial.var(name, self.field)
        targets = [None] * len(self.components)
        targets[index] = v
        found = find_preimage(self, targets)
        if found is None:
            raise UnsupportedError(f"parameter of {comp.tag} not reachable from the generators")
        return found

    def lift_from_component(self, poly, index):
        """Lift a polynomial in the component parameter to R."""
        comp = self.components[index]
        poly = _as_poly(poly, self.field)
        if comp.var is None or comp.var not in poly.used_variables():
            return poly.compact()
        return poly.substitute({comp.var: self.lift_parameter(index)})

    def random_element(self, rng, degree=2, bound=3):
        names = sorted(self.generators)
        r = Polynomial.zero(self.field)
        for exps in monomials(names, degree):
            c = rng.randint(-bound, bound)
            if c:
                r = r + Polynomial({exps: c}, names, self.field)
        return r

    def describe(self):
        if self.kind == "finite":
            return {"kind": "finite", "ring": self.finite_ring.name}
        return {
            "kind": "subdirect",
            "field": repr(self.field),
            "components": [
                {"tag": c.tag, "domain": c.describe(self.field)} for c in self.components
            ],
            "generators": {
                name: [str(img) for img in imgs] for name, imgs in sorted(self.generators.items())
            },
        }

    def minimal_prime_ideals(self):
        return self.finite_ring.minimal_prime_ideals()


def _as_poly(x, field):
    if isinstance(x, Polynomial):
        if x.domain != field:
            raise PreconditionError(f"polynomial over {x.domain!r}, expected {field!r}")
        return x
    if isinstance(x, str):
        from .parsing import parse_poly_expr

        return parse_poly_expr(x, field)
    return Polynomial.constant(x, field)


def _solve_graph(f, x, y):
    """Write ``f = 0`` as ``var = expr(other)``; prefers solving for ``y``."""
    for solved, other in ((y, x), (x, y)):
        if f.degree(solved) != 1:
            continue
        coeffs = f.coefficients(solved)
        lead = coeffs[1]
        if not lead.is_constant() or lead.is_zero():
            continue
        if set(coeffs[0].used_variables()) - {other}:
            continue
        expr = (-coeffs[0]).scale(f.domain.one / lead.constant_value())
        return solved, expr.compact(), other
    return None


# ---------------------------------------------------------------- operations


def minimal_primes(R):
    """One tag per minimal prime, canonically ordered."""
    if R.kind == "finite":
        ring = R.finite_ring
        out = []
        for i, P in enumerate(ring.minimal_prime_ideals()):
            gens = sorted(P, key=ring.index)
            out.append(MinimalPrimeTag(i, "{" + ", ".join(map(str, gens)) + "}", frozenset(P)))
        return out
    if R.kind != "subdirect":
        raise UnsupportedError(f"unsupported presentation kind {R.kind!r}")
    return [
        MinimalPrimeTag(i, c.tag, R._prime_elements[i]) for i, c in enumerate(R.components)
    ]


@dataclass
class IdempotentCensus:
    members: list
    undecided: list = field(default_factory=list)

    @property
    def count(self):
        return len(self.members)

    @property
    def decided(self):
        return not self.undecided


def idempotents(R, search_degree=DEFAULT_SEARCH_DEGREE):
    """All idempotents (finite rings) or all 0/1 component vectors lying in R."""
    if R.kind == "finite":
        return IdempotentCensus(R.finite_ring.idempotents())
    n = len(R.components)
    vectors = [tuple((mask >> i) & 1 for i in range(n)) for mask in range(2 ** n)]
    if R.factors is not None:
        groups = linked_groups(R)
        members = [v for v in vectors if all(len({v[i] for i in g}) == 1 for g in groups)]
        return IdempotentCensus(members)
    members, undecided = [], []
    for v in vectors:
        if len(set(v)) == 1:
            members.append(v)
            continue
        targets = [Polynomial.constant(b, R.field) for b in v]
        if find_preimage(R, targets, search_degree) is not None:
            members.append(v)
        else:
            undecided.append(v)
    return IdempotentCensus(members, undecided)


def find_preimage(R, targets, degree=DEFAULT_SEARCH_DEGREE):
    """Bounded search for ``r`` with ``image(r, i) == targets[i]`` (``None`` = unconstrained)."""
    names = sorted(R.generators)
    monos = monomials(names, degree)
    mono_polys = [Polynomial({e: 1}, names, R.field) for e in monos]
    rows, rhs = [], []
    for i, target in enumerate(targets):
        if target is None:
            continue
        var = R.components[i].var
        imgs = [R.image(m, i) for m in mono_polys]
        top = max([0] + [p.degree(var) if var else 0 for p in imgs + [target] if not p.is_zero()])
        for j in range(int(top) + 1):
            rows.append([_coeff(p, var, j, R.field) for p in imgs])
            rhs.append(_coeff(target, var, j, R.field))
    if not rows:
        return Polynomial.zero(R.field)
    sol = solve_linear(rows, rhs, R.field)
    if sol is None:
        return None
    r = Polynomial.zero(R.field)
    for c, m in zip(sol, mono_polys):
        if c:
            r = r + m.scale(c)
    return r


def _coeff(p, var, j, field):
    if p.is_zero():
        return field.zero
    if var is None:
        return p.constant_value() if j == 0 else field.zero
    coeffs = p.coefficients(var)
    if j >= len(coeffs):
        return field.zero
    return coeffs[j].constant_value()


def intersection(R, i, j):
    """Common points of components ``i`` and ``j`` of a factored presentation.

    Returns ``(H, param_i, param_j)``: a univariate polynomial ``H(W)`` whose
    roots index the common points over the algebraic closure, and the values
    of both component parameters as polynomials in ``W``.  ``H`` constant and
    nonzero means the two minimal primes are comaximal.
    """
    if R.factors is None:
        raise UnsupportedError("intersections need a factored presentation")
    k = R.field
    (x, y) = sorted(R.generators)
    W = Polynomial.var("W", k)
    ci, cj = R.components[i], R.components[j]
    xi, yi = R.generators[x][i], R.generators[y][i]
    xj, yj = R.generators[x][j], R.generators[y][j]
    if ci.var == cj.var:
        v = ci.var
        other_i = xi if v == y else yi
        other_j = xj if v == y else yj
        H = (other_i - other_j).substitute({v: W})
        return H.compact(), W, W
    # component i is parametrized by one coordinate, j by the other
    if ci.var == y:
        # i: (xi(v), v), j: (u, yj(u)); u = xi(yj(u))
        H = W - xi.substitute({y: yj.substitute({x: W})})
        return H.compact(), yj.substitute({x: W}).compact(), W
    H = W - yi.substitute({x: xj.substitute({y: W})})
    return H.compact(), W, xj.substitute({y: W}).compact()


def comaximal(R, i, j):
    H, _, _ = intersection(R, i, j)
    return not H.is_zero() and H.is_constant()


def linked_groups(R):
    """Connected groups of components under 'share a point' (exact for factored input)."""
    n = len(R.components)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if not comaximal(R, i, j):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def non_comaximal_pair(R):
    """First pair of distinct minimal primes that are not comaximal, or ``None``."""
    if R.kind != "subdirect" or len(R.components) < 2:
        return None
    if R.factors is None:
        raise UnsupportedError("comaximality is decided only for factored presentations")
    for i in range(len(R.components)):
        for j in range(i + 1, len(R.components)):
            if not comaximal(R, i, j):
                return i, j
    return None


def is_regular(R, r):
    """``r`` avoids every minimal prime (is a non-zero-divisor)."""
    if R.kind == "finite":
        return not R.finite_ring.is_zero_divisor(r)
    return all(not img.is_zero() for img in R.images(r))


@dataclass(frozen=True)
class ProductOfFields:
    fields: tuple
    generator_images: dict

    def describe(self):
        return {
            "fields": [repr(f) for f in self.fields],
            "generators": {n: [str(i) for i in imgs] for n, imgs in sorted(self.generator_images.items())},
        }


def total_quotient_ring(R):
    """``Q(R)`` as the product of the component fraction fields."""
    if isinstance(R, LocalizedPresentation):
        R = R.base
    if R.kind == "finite":
        ring = R.finite_ring
        if not ring.is_reduced():
            raise UnsupportedError("total quotient ring of a non-reduced finite ring")
        fields = tuple(ring.quotient(P).name for P in ring.minimal_prime_ideals())
        return ProductOfFields(fields, {})
    fields = tuple(
        FractionField(R.field, c.var) if c.var else R.field for c in R.components
    )
    return ProductOfFields(fields, {n: tuple(imgs) for n, imgs in R.generators.items()})


ALL_REGULAR = object()


@dataclass(frozen=True)
class LocalizedPresentation:
    base: RingPresentation
    inverted: tuple  # per component: tuple of monic squarefree denominators
    generators_of_F: tuple

    def describe(self):
        comps = []
        for c, inv in zip(self.base.components, self.inverted):
            if not inv:
                comps.append(c.describe(self.base.field))
            else:
                comps.append(f"{self.base.field!r}[{c.var}, " + ", ".join(f"1/({d})" if " " in str(d) else f"1/{d}" for d in inv) + "]")
        return {"components": comps, "inverted": [str(f) for f in self.generators_of_F]}

    def image(self, num, den, index):
        """Image of ``num/den`` in the component fraction field."""
        from .exact_arith import RationalFunction

        var = self.base.components[index].var or "Y"
        return RationalFunction(self.base.image(num, index), self.base.image(den, index), var)

    def is_zero(self, num, den):
        return all(self.image(num, den, i).is_zero() for i in range(len(self.base.components)))


def localize(R, F):
    """``F^-1 R`` for the multiplicative set generated by the regular elements ``F``."""
    if F is ALL_REGULAR:
        return total_quotient_ring(R)
    if R.kind != "subdirect":
        raise UnsupportedError("localization is implemented for subdirect presentations")
    F = [R.element(f) for f in F]
    inverted = [set() for _ in R.components]
    for f in F:
        for i, img in enumerate(R.images(f)):
            if img.is_zero():
                raise RegularityError(f"{f} vanishes in component {R.components[i].tag}")
            if not img.is_constant():
                inverted[i].add(squarefree_part(img))
    return LocalizedPresentation(
        R, tuple(tuple(sorted(s, key=str)) for s in inverted), tuple(F)
    )


def component_quotient(R, tag):
    """The domain ``R/p`` with the projected generator images."""
    index = tag.index if isinstance(tag, MinimalPrimeTag) else int(tag)
    if R.kind == "finite":
        P = minimal_primes(R)[index].generator
        return R.finite_ring.quotient(P)
    comp = R.components[index]
    gens = {name: (imgs[index],) for name, imgs in R.generators.items()}
    return RingPresentation(
        "subdirect", R.field, [Component(comp.tag, comp.var, comp.factor)], gens,
        prime_elements=[None],
    )


def reducedness_audit(R, samples, bound=4):
    """``r^n = 0`` for some ``n <= bound`` implies ``r = 0`` on the sampled elements."""
    for r in samples:
        power = r
        for _ in range(bound):
            if R.is_zero(power) and not R.is_zero(r):
                return False
            power = power * r
    return True


def sample_regular(R, rng, count, degree=2, bound=3):
    out = []
    while len(out) < count:
        r = R.random_element(rng, degree, bound)
        if is_regular(R, r):
            out.append(r)
    return out


def make_rng(seed):
    return random.Random(seed)
