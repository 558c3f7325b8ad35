"""Explicit finite commutative rings: Z/n, GF(p^k) and finite products."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import DegenerateInputError, UnsupportedError


class FiniteRing:
    """A finite commutative unital ring with an explicit, ordered carrier.

    ``factors`` records the direct-product structure when the ring was built
    by :func:`product`; a ring built any other way counts as one factor.
    """

    def __init__(self, name, elements, add, mul, zero, one, factors=None):
        self.name = name
        self.elements = list(elements)
        if len(self.elements) > 256:
            raise UnsupportedError(f"{name} has {len(self.elements)} elements; the cap is 256")
        self.add = add
        self.mul = mul
        self.zero = zero
        self.one = one
        self.factors = tuple(factors) if factors else (self,)
        self._index = {x: i for i, x in enumerate(self.elements)}
        self._tables = None

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return self.name

    def index(self, x):
        return self._index[x]

    def neg(self, x):
        for y in self.elements:
            if self.add(x, y) == self.zero:
                return y
        raise AssertionError("no additive inverse")

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def from_int(self, n):
        x = self.zero
        step = self.one if n >= 0 else self.neg(self.one)
        for _ in range(abs(n)):
            x = self.add(x, step)
        return x

    def tables(self):
        """``(add, mul)`` as integer index tables (numpy arrays)."""
        if self._tables is None:
            n = len(self.elements)
            add = np.empty((n, n), dtype=np.int64)
            mul = np.empty((n, n), dtype=np.int64)
            for i, x in enumerate(self.elements):
                for j, y in enumerate(self.elements):
                    add[i, j] = self._index[self.add(x, y)]
                    mul[i, j] = self._index[self.mul(x, y)]
            self._tables = (add, mul)
        return self._tables

    # ideal-theoretic brute force

    def ideal_generated(self, gens):
        ideal = {self.zero}
        frontier = [self.mul(r, g) for g in gens for r in self.elements]
        ideal.update(frontier)
        changed = True
        while changed:
            changed = False
            for a, b in itertools.product(list(ideal), repeat=2):
                s = self.add(a, b)
                if s not in ideal:
                    ideal.add(s)
                    changed = True
        return frozenset(ideal)

    def ideals(self):
        principal = {self.ideal_generated([x]) for x in self.elements}
        found = set(principal)
        frontier = list(principal)
        while frontier:
            new = []
            for a in frontier:
                for b in principal:
                    s = frozenset(self.add(x, y) for x in a for y in b)
                    if s not in found:
                        found.add(s)
                        new.append(s)
            frontier = new
        return sorted(found, key=lambda I: (len(I), sorted(self._index[x] for x in I)))

    def is_prime_ideal(self, ideal):
        if self.one in ideal:
            return False
        outside = [x for x in self.elements if x not in ideal]
        return all(self.mul(a, b) not in ideal for a in outside for b in outside)

    def prime_ideals(self):
        return [I for I in self.ideals() if self.is_prime_ideal(I)]

    def minimal_prime_ideals(self):
        primes = self.prime_ideals()
        return [P for P in primes if not any(Q < P for Q in primes)]

    def idempotents(self):
        return [x for x in self.elements if self.mul(x, x) == x]

    def primitive_idempotents(self):
        idem = [e for e in self.idempotents() if e != self.zero]
        return [
            e for e in idem
            if not any(f != e and self.mul(e, f) == f for f in idem)
        ]

    def is_zero_divisor(self, x):
        return any(y != self.zero and self.mul(x, y) == self.zero for y in self.elements)

    def is_reduced(self):
        for x in self.elements:
            y = x
            for _ in range(len(self.elements)):
                y = self.mul(y, x)
                if y == self.zero:
                    if x != self.zero:
                        return False
                    break
        return True

    def quotient(self, ideal):
        """``R / ideal`` with cosets represented by their first element in carrier order."""
        ideal = frozenset(ideal)
        rep = {}
        reps = []
        for x in self.elements:
            if x in rep:
                continue
            reps.append(x)
            for i in ideal:
                rep[self.add(x, i)] = x
        return FiniteRing(
            f"{self.name}/I",
            reps,
            lambda a, b: rep[self.add(a, b)],
            lambda a, b: rep[self.mul(a, b)],
            rep[self.zero],
            rep[self.one],
        )


def zmod(n):
    if n < 1:
        raise DegenerateInputError("modulus must be positive")
    return FiniteRing(
        f"Z/{n}", range(n), lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, 0, 1 % n
    )


def _first_irreducible(p, k):
    for tail in itertools.product(range(p), repeat=k):
        coeffs = list(tail) + [1]  # low to high, monic
        if coeffs[0] == 0:
            continue
        if not any(_has_factor(coeffs, d, p) for d in range(1, k // 2 + 1)):
            return coeffs
    raise AssertionError("no irreducible polynomial found")


def _has_factor(f, d, p):
    for tail in itertools.product(range(p), repeat=d):
        g = list(tail) + [1]
        r = list(f)
        while len(r) >= len(g):
            c = r[-1]
            shift = len(r) - len(g)
            for i, gc in enumerate(g):
                r[i + shift] = (r[i + shift] - c * gc) % p
            r.pop()
        if not any(r):
            return True
    return False


def galois_field(p, k=1):
    """GF(p^k) with elements as coefficient tuples modulo the first monic irreducible."""
    if k == 1:
        ring = zmod(p)
        ring.name = f"GF({p})"
        return ring
    modulus = _first_irreducible(p, k)

    def mul(a, b):
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                for i in range(k + 1):
                    prod[top - k + i] = (prod[top - k + i] - c * modulus[i]) % p
        return tuple(prod[:k])

    elements = [tuple(t) for t in itertools.product(range(p), repeat=k)]
    elements.sort(key=lambda t: t[::-1])
    zero = tuple([0] * k)
    one = (1,) + tuple([0] * (k - 1))
    return FiniteRing(
        f"GF({p}^{k})", elements, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)), mul, zero, one
    )


def product(*rings):
    """Direct product; elements are tuples with one entry per factor ring."""
    if not rings:
        return FiniteRing("1", [()], lambda a, b: (), lambda a, b: (), (), ())
    elements = list(itertools.product(*[r.elements for r in rings]))
    factors = [f for r in rings for f in r.factors] if all(len(r.factors) == 1 for r in rings) else rings
    return FiniteRing(
        " x ".join(r.name if " x " not in r.name else f"({r.name})" for r in rings),
        elements,
        lambda a, b: tuple(r.add(x, y) for r, x, y in zip(rings, a, b)),
        lambda a, b: tuple(r.mul(x, y) for r, x, y in zip(rings, a, b)),
        tuple(r.zero for r in rings),
        tuple(r.one for r in rings),
        factors=factors,
    )


def diagonal(ring):
    """``(R x R, r -> (r, r))``."""
    square = product(ring, ring)
    return square, (lambda r: (r, r))


def parse_finite_ring(text):
    """``"Z/4"``, ``"GF(4)"``, ``"Z/2 x Z/2"`` and similar."""
    parts = [p.strip() for p in text.replace("×", "x").split(" x ")]
    rings = [_parse_factor(p) for p in parts]
    return rings[0] if len(rings) == 1 else product(*rings)


def _parse_factor(text):
    t = text.replace(" ", "")
    if t.startswith("Z/"):
        return zmod(int(t[2:]))
    if t.startswith("GF(") and t.endswith(")"):
        q = int(t[3:-1])
        for p in range(2, q + 1):
            if q % p == 0:
                k, r = 0, q
                while r % p == 0:
                    r //= p
                    k += 1
                if r != 1:
                    raise UnsupportedError(f"GF({q}): {q} is not a prime power")
                return galois_field(p, k)
    raise UnsupportedError(f"unknown finite ring {text!r}")
