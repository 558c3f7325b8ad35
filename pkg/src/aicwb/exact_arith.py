"""Exact scalars, sparse polynomials and univariate rational functions.

Coefficient fields are ``QQ`` (``fractions.Fraction`` elements) and ``GF(p)``
(:class:`ModP` elements).  Polynomials are sparse maps from exponent vectors
to nonzero coefficients over a sorted tuple of variable names.  Nothing in
here ever touches floating point.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction

from .errors import DegenerateInputError, DomainMismatchError, UnsupportedError

NEG_INF = float("-inf")


# ---------------------------------------------------------------- scalars


class ModP:
    """Residue class modulo a prime ``p``, always reduced to ``[0, p)``."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = int(value) % p
        self.p = p

    def _other(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DomainMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.value, self.p)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return ModP(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return ModP(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.value == o % self.p

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __lt__(self, other):
        return self.value < self._other(other)

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n ** 0.5) + 1):
        if n % d == 0:
            return False
    return True


class RationalField:
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, ModP):
            raise DomainMismatchError("GF(p) residue used over QQ")
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def contains(self, x):
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def elements(self):
        raise UnsupportedError("QQ is infinite")

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField:
    def __init__(self, p):
        if not _is_prime(p):
            raise DegenerateInputError(f"{p} is not prime")
        self.characteristic = p
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, ModP):
            if x.p != p:
                raise DomainMismatchError(f"GF({x.p}) residue used over GF({p})")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes in GF({p})")
            return ModP(x.numerator * pow(x.denominator, -1, p), p)
        return ModP(x, p)

    def contains(self, x):
        return isinstance(x, ModP) and x.p == self.characteristic

    def elements(self):
        return [ModP(i, self.characteristic) for i in range(self.characteristic)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


@functools.lru_cache(maxsize=None)
def GF(p):
    """The prime field with ``p`` elements (cached, so fields compare by identity too)."""
    return PrimeField(p)


def field_from_name(name):
    """``"QQ"`` or ``"GF(p)"`` -> field object."""
    text = name.strip().replace(" ", "")
    if text in ("QQ", "Q"):
        return QQ
    if text.startswith("GF(") and text.endswith(")"):
        return GF(int(text[3:-1]))
    if text.startswith("F_"):
        return GF(int(text[2:]))
    raise UnsupportedError(f"unknown coefficient field {name!r}")


def _coerce_scalar(domain, c):
    if isinstance(c, Polynomial):
        raise TypeError("expected a scalar")
    return domain(c)


# ------------------------------------------------------------ polynomials


class Polynomial:
    """Sparse multivariate polynomial over ``QQ`` or ``GF(p)``.

    ``terms`` maps exponent tuples (aligned with the sorted ``variables``) to
    nonzero coefficients.  Instances are treated as immutable.
    """

    __slots__ = ("domain", "variables", "terms", "_hash")

    def __init__(self, terms=None, variables=(), domain=QQ):
        variables = tuple(variables)
        if list(variables) != sorted(set(variables)):
            order = sorted(set(variables))
            index = [variables.index(v) for v in order]
            terms = {tuple(e[i] for i in index): c for e, c in (terms or {}).items()}
            variables = tuple(order)
        clean = {}
        for exps, c in (terms or {}).items():
            c = domain(c)
            if c:
                exps = tuple(exps)
                if exps in clean:
                    c = clean[exps] + c
                    if not c:
                        del clean[exps]
                        continue
                clean[exps] = c
        self.domain = domain
        self.variables = variables
        self.terms = clean
        self._hash = None

    # constructors

    @classmethod
    def constant(cls, c, domain=QQ):
        return cls({(): c}, (), domain)

    @classmethod
    def var(cls, name, domain=QQ):
        return cls({(1,): 1}, (name,), domain)

    @classmethod
    def from_coefficients(cls, coeffs, var, domain=QQ):
        """Build ``sum coeffs[i] * var**i``; coefficients may be scalars or polynomials."""
        x = cls.var(var, domain)
        result = cls.zero(domain)
        power = cls.one(domain)
        for c in coeffs:
            if isinstance(c, Polynomial):
                result = result + c * power
            else:
                result = result + power.scale(c)
            power = power * x
        return result

    @classmethod
    def zero(cls, domain=QQ):
        return cls({}, (), domain)

    @classmethod
    def one(cls, domain=QQ):
        return cls({(): 1}, (), domain)

    # structure

    def _check_domain(self, other):
        if other.domain != self.domain:
            raise DomainMismatchError(f"{self.domain!r} vs {other.domain!r}")

    def _embed(self, variables):
        if variables == self.variables:
            return self.terms
        index = [variables.index(v) for v in self.variables]
        out = {}
        for exps, c in self.terms.items():
            e = [0] * len(variables)
            for i, k in zip(index, exps):
                e[i] = k
            out[tuple(e)] = c
        return out

    def _align(self, other):
        self._check_domain(other)
        if self.variables == other.variables:
            return self.variables, self.terms, other.terms
        variables = tuple(sorted(set(self.variables) | set(other.variables)))
        return variables, self._embed(variables), other._embed(variables)

    def _lift(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return Polynomial.constant(other, self.domain)
        return None

    def used_variables(self):
        used = set()
        for exps in self.terms:
            used.update(v for v, e in zip(self.variables, exps) if e)
        return tuple(sorted(used))

    def compact(self):
        """Drop variables that do not occur."""
        used = self.used_variables()
        if used == self.variables:
            return self
        index = [self.variables.index(v) for v in used]
        return Polynomial({tuple(e[i] for i in index): c for e, c in self.terms.items()}, used, self.domain)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        for exps, c in self.terms.items():
            if not any(exps):
                return c
        return self.domain.zero

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        variables, a, b = self._align(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(out, variables, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self.terms.items()}, self.variables, self.domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        variables, a, b = self._align(other)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw({e: c for e, c in out.items() if c}, variables, self.domain)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DegenerateInputError("polynomial exponent must be a natural number")
        result = Polynomial.one(self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = self.domain(c)
        if not c:
            return Polynomial.zero(self.domain)
        return Polynomial._raw({e: v * c for e, v in self.terms.items()}, self.variables, self.domain)

    @classmethod
    def _raw(cls, terms, variables, domain):
        p = cls.__new__(cls)
        p.domain = domain
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    def __eq__(self, other):
        other = self._lift(other) if not isinstance(other, Polynomial) else other
        if other is None:
            return NotImplemented
        if other.domain != self.domain:
            return False
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            c = self.compact()
            self._hash = hash((c.variables, frozenset(c.terms.items())))
        return self._hash

    # univariate views

    def _main_var(self, var):
        if var is not None:
            return var
        used = self.used_variables()
        if len(used) > 1:
            raise DegenerateInputError(f"polynomial in {used} is not univariate; name the variable")
        return used[0] if used else None

    def degree(self, var=None):
        """Degree in ``var`` (the sole variable if omitted); ``-inf`` for zero."""
        if not self.terms:
            return NEG_INF
        var = self._main_var(var)
        if var is None or var not in self.variables:
            return 0
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def coefficients(self, var=None):
        """Coefficient list (low to high) in ``var``; entries are polynomials in the other variables."""
        var = self._main_var(var)
        if var is None or var not in self.variables:
            return [self] if self.terms else []
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1:]
        buckets = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        n = max(buckets)
        return [Polynomial._raw(buckets.get(k, {}), rest, self.domain) for k in range(n + 1)]

    def dense(self, var=None):
        """Scalar coefficient list for a univariate polynomial."""
        out = []
        for c in self.coefficients(var):
            if c.used_variables():
                raise DegenerateInputError("coefficient is not a scalar")
            out.append(c.constant_value())
        return out

    def leading_coefficient(self, var=None):
        coeffs = self.coefficients(var)
        return coeffs[-1] if coeffs else Polynomial.zero(self.domain)

    def is_monic(self, var=None):
        lc = self.leading_coefficient(var)
        return lc.is_constant() and lc.constant_value() == self.domain.one

    def monic(self, var=None):
        lc = self.leading_coefficient(var)
        if not lc.is_constant() or lc.is_zero():
            raise UnsupportedError("leading coefficient is not a nonzero scalar")
        return self.scale(self.domain.one / lc.constant_value())

    def derivative(self, var=None):
        var = self._main_var(var)
        if var is None or var not in self.variables:
            return Polynomial.zero(self.domain)
        i = self.variables.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = c * e[i]
        return Polynomial(out, self.variables, self.domain)

    def substitute(self, mapping):
        """Replace variables by polynomials or scalars; returns a polynomial."""
        result = Polynomial.zero(self.domain)
        powers = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(c, self.domain)
            rest = {}
            for v, k in zip(self.variables, e):
                if not k:
                    continue
                if v in mapping:
                    key = (v, k)
                    if key not in powers:
                        val = self._lift(mapping[v])
                        powers[key] = val ** k
                    term = term * powers[key]
                else:
                    rest[v] = k
            if rest:
                names = tuple(sorted(rest))
                term = term * Polynomial({tuple(rest[n] for n in names): 1}, names, self.domain)
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at scalars for every variable; ``point`` maps names to values."""
        total = self.domain.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.variables, e):
                if k:
                    term = term * self.domain(point[v]) ** k
            total = total + term
        return total

    def __call__(self, x):
        """Horner evaluation of a univariate polynomial at any ring element."""
        coeffs = self.dense()
        if not coeffs:
            return self.domain.zero
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = acc * x + c
        return acc

    # printing

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exps) if k
            )
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            if mono:
                text = mono if mag == 1 else f"{mag}*{mono}"
            else:
                text = str(mag)
            pieces.append(("-" if negative else "+", text))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.domain!r})"


# ---------------------------------------------------- univariate routines


def _strip(a):
    while a and not a[-1]:
        a.pop()
    return a


def dense_divmod(a, b):
    """Quotient and remainder of scalar coefficient lists over a field."""
    a = list(a)
    _strip(a)
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = 1 / b[-1] if not isinstance(b[-1], Fraction) else Fraction(1) / b[-1]
    q = [b[-1] * 0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] * inv
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = a[i + k] - c * bc
        a.pop()
        _strip(a)
    return q, a


def dense_gcd(a, b):
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        _, r = dense_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def _univariate_pair(f, g):
    f._check_domain(g)
    used = sorted(set(f.used_variables()) | set(g.used_variables()))
    if len(used) > 1:
        raise DegenerateInputError(f"expected univariate inputs, got variables {used}")
    return (used[0] if used else "X")


def poly_divmod(f, g, var=None):
    """Divide ``f`` by ``g`` in ``var``: returns ``(q, r)`` with ``f = q*g + r``.

    Over a field (univariate inputs) any nonzero divisor works.  When the
    coefficients are polynomials in further variables, ``g`` must be monic.
    """
    f._check_domain(g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    used = set(f.used_variables()) | set(g.used_variables())
    if var is None:
        if len(used) > 1:
            raise DegenerateInputError("name the division variable for multivariate input")
        var = next(iter(used), "X")
    if used <= {var}:
        q, r = dense_divmod(
            f.dense(var) if f.terms else [], g.dense(var)
        )
        return (
            Polynomial.from_coefficients(q, var, f.domain),
            Polynomial.from_coefficients(r, var, f.domain),
        )
    if not g.is_monic(var):
        raise UnsupportedError("non-monic divisor over a polynomial coefficient ring")
    x = Polynomial.var(var, f.domain)
    n = g.degree(var)
    q = Polynomial.zero(f.domain)
    r = f
    while r.terms and r.degree(var) >= n:
        k = r.degree(var) - n
        lc = r.leading_coefficient(var)
        term = lc * x ** k
        q = q + term
        r = r - term * g
    return q, r


def poly_gcd(f, g):
    """Monic gcd of univariate polynomials over a field; ``gcd(f, 0) = f / lc(f)``."""
    var = _univariate_pair(f, g)
    a = f.dense(var) if f.terms else []
    b = g.dense(var) if g.terms else []
    return Polynomial.from_coefficients(dense_gcd(a, b), var, f.domain)


def squarefree_part(f):
    """``f / gcd(f, f')`` made monic; same roots, each with multiplicity one."""
    if f.is_zero():
        raise DegenerateInputError("squarefree part of the zero polynomial")
    var = _univariate_pair(f, f)
    p = f.domain.characteristic
    df = f.derivative(var)
    g = poly_gcd(f, df)
    if p and f.degree(var) >= p and (df.is_zero() or g.degree(var) > 0):
        raise UnsupportedError(
            f"inseparable input of degree {f.degree(var)} >= characteristic {p}"
        )
    q, _ = poly_divmod(f, g, var)
    return q.monic(var) if q.degree(var) > 0 else Polynomial.one(f.domain)


def determinant(matrix):
    """Exact determinant by memoized Laplace expansion (no divisions needed)."""
    n = len(matrix)
    if n == 0:
        return 1

    @functools.lru_cache(maxsize=None)
    def minor(col, rows):
        if col == n:
            return 1
        total = 0
        for pos, i in enumerate(rows):
            entry = matrix[i][col]
            if isinstance(entry, Polynomial) and entry.is_zero():
                continue
            if not isinstance(entry, Polynomial) and not entry:
                continue
            sub = minor(col + 1, rows[:pos] + rows[pos + 1:])
            term = entry * sub
            total = total + term if pos % 2 == 0 else total - term
        return total

    return minor(0, tuple(range(n)))


def resultant(f, g, var):
    """Sylvester resultant of ``f`` and ``g`` with respect to ``var``."""
    f._check_domain(g)
    m, n = f.degree(var), g.degree(var)
    if f.is_zero() or g.is_zero():
        return Polynomial.zero(f.domain)
    if var not in f.used_variables() and var not in g.used_variables():
        raise DegenerateInputError(f"variable {var} occurs in neither input")
    fc = f.coefficients(var)
    gc = g.coefficients(var)
    size = m + n
    zero = Polynomial.zero(f.domain)
    rows = []
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    det = determinant(rows)
    if not isinstance(det, Polynomial):
        det = Polynomial.constant(det, f.domain)
    return det.compact()


# ---------------------------------------------------- rational functions


class RationalFunction:
    """Element of ``k(var)``: reduced fraction with monic denominator."""

    __slots__ = ("num", "den", "var", "domain")

    def __init__(self, num, den=None, var="Y", domain=None):
        if not isinstance(num, Polynomial):
            domain = domain or QQ
            num = Polynomial.constant(num, domain)
        domain = num.domain
        if den is None:
            den = Polynomial.one(domain)
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den, domain)
        num._check_domain(den)
        for p in (num, den):
            extra = set(p.used_variables()) - {var}
            if extra:
                raise DomainMismatchError(f"variables {sorted(extra)} outside k({var})")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.one(domain)
        elif den.degree(var) > 0:
            g = poly_gcd(num.compact() if num.used_variables() else num, den)
            if g.degree() > 0:
                num = poly_divmod(num, g, var)[0]
                den = poly_divmod(den, g, var)[0]
        lc = den.leading_coefficient(var).constant_value()
        if lc != domain.one:
            num = num.scale(domain.one / lc)
            den = den.scale(domain.one / lc)
        self.num = num.compact()
        self.den = den.compact()
        self.var = var
        self.domain = domain

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.var != self.var or other.domain != self.domain:
                raise DomainMismatchError(f"k({self.var}) vs k({other.var})")
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, None, self.var)
        if isinstance(other, (int, Fraction, ModP)):
            return RationalFunction(Polynomial.constant(other, self.domain), None, self.var)
        return None

    def _make(self, num, den):
        return RationalFunction(num, den, self.var)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self._make(self.num + o.num, self.den)
        return self._make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num, r.den, r.var, r.domain = -self.num, self.den, self.var, self.domain
        return r

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self._make(Polynomial.zero(self.domain), None)
        return self._make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return self._make(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return self._make(self.num ** n, self.den ** n)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self):
        return not self.den.used_variables()

    def is_constant(self):
        return not self.num.used_variables() and not self.den.used_variables()

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, value, one=None):
        """Evaluate numerator and denominator at ``value`` (any ring element); returns the pair."""
        return _horner(self.num, self.var, value, one), _horner(self.den, self.var, value, one)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"


def _horner(p, var, value, one=None):
    coeffs = p.dense(var) if p.terms else []
    if not coeffs:
        return value * 0 if one is None else one * 0
    acc = (one if one is not None else 1) * coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * value + c
    return acc


class FractionField:
    """The rational function field ``k(var)`` as a coefficient field."""

    def __init__(self, base, var):
        self.base = base
        self.var = var
        self.characteristic = base.characteristic
        self.zero = RationalFunction(Polynomial.zero(base), None, var)
        self.one = RationalFunction(Polynomial.one(base), None, var)

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            if x.var != self.var or x.domain != self.base:
                raise DomainMismatchError(f"{x!r} not in {self!r}")
            return x
        if isinstance(x, Polynomial):
            return RationalFunction(x, None, self.var)
        return RationalFunction(Polynomial.constant(self.base(x), self.base), None, self.var)

    def contains(self, x):
        return isinstance(x, RationalFunction) and x.var == self.var and x.domain == self.base

    def generator(self):
        return self(Polynomial.var(self.var, self.base))

    def __eq__(self, other):
        return isinstance(other, FractionField) and (other.base, other.var) == (self.base, self.var)

    def __hash__(self):
        return hash(("Frac", self.base, self.var))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


def rational_roots(coeffs, domain):
    """Roots in the prime-field-level domain of a univariate scalar polynomial, ascending, no repeats.

    Over GF(p) this is exhaustive search (p <= 10007); over QQ the rational
    root test on the denominator-cleared integer polynomial.
    """
    coeffs = _strip(list(coeffs))
    if len(coeffs) <= 1:
        return []
    p = domain.characteristic
    if p:
        if p > 10007:
            return []
        out = []
        for x in domain.elements():
            acc = domain.zero
            for c in reversed(coeffs):
                acc = acc * x + c
            if not acc:
                out.append(x)
        return out
    roots = []
    # strip zero roots first
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
        if 0 not in roots:
            roots.append(Fraction(0))
    if len(coeffs) > 1:
        lcm = 1
        for c in coeffs:
            lcm = lcm * c.denominator // _gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in coeffs]
        a0, an = abs(ints[0]), abs(ints[-1])
        if a0 <= 10 ** 12 and an <= 10 ** 12:
            seen = set()
            for num in _divisors(a0):
                for den in _divisors(an):
                    for cand in (Fraction(num, den), Fraction(-num, den)):
                        if cand in seen:
                            continue
                        seen.add(cand)
                        acc = Fraction(0)
                        for c in reversed(coeffs):
                            acc = acc * cand + c
                        if acc == 0:
                            roots.append(cand)
    return sorted(set(roots))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def monomials(variables, max_degree):
    """Exponent vectors of total degree <= ``max_degree`` in graded order."""
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(len(variables)), d):
            e = [0] * len(variables)
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def solve_linear(rows, rhs, field):
    """One solution of ``rows * x = rhs`` over ``field`` (exact Gaussian elimination), or None."""
    n = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.one / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                c = aug[i][col]
                aug[i] = [a - c * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    for i in range(r, len(aug)):
        if aug[i][n]:
            return None
    x = [field.zero] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][n]
    return x
