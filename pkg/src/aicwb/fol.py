"""First-order formulas over the ring language with constants, and finite models.

Formulas are immutable ASTs.  Evaluation over a :class:`FiniteModel` is
exhaustive quantifier expansion with short-circuiting; inside
``forall v (A_1 & ... & A_k -> C)`` the conjuncts and the conclusion that do
not mention ``v`` are evaluated once, outside the loop over ``v``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, EvaluationError, PreconditionError, UnsupportedError
from .finite import FiniteRing

# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: object
    label: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Or:
    parts: tuple


@dataclass(frozen=True)
class Implies:
    ante: object
    concl: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


def free_vars(node):
    if isinstance(node, Var):
        return frozenset([node.name])
    if isinstance(node, Const):
        return frozenset()
    if isinstance(node, (Add, Mul, Eq)):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, Not):
        return free_vars(node.body)
    if isinstance(node, (And, Or)):
        return frozenset().union(*[free_vars(p) for p in node.parts])
    if isinstance(node, Implies):
        return free_vars(node.ante) | free_vars(node.concl)
    if isinstance(node, (Forall, Exists)):
        return free_vars(node.body) - {node.var}
    raise TypeError(f"not a formula node: {node!r}")


def to_text(node):
    """Deterministic, fully parenthesized rendering."""
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Const):
        return node.label
    if isinstance(node, Add):
        return f"({to_text(node.left)} + {to_text(node.right)})"
    if isinstance(node, Mul):
        return f"({to_text(node.left)} * {to_text(node.right)})"
    if isinstance(node, Eq):
        return f"{to_text(node.left)} = {to_text(node.right)}"
    if isinstance(node, Not):
        if isinstance(node.body, Eq):
            return f"{to_text(node.body.left)} != {to_text(node.body.right)}"
        return f"~({to_text(node.body)})"
    if isinstance(node, And):
        return "(" + " & ".join(to_text(p) for p in node.parts) + ")" if node.parts else "true"
    if isinstance(node, Or):
        return "(" + " | ".join(to_text(p) for p in node.parts) + ")" if node.parts else "false"
    if isinstance(node, Implies):
        return f"({to_text(node.ante)} -> {to_text(node.concl)})"
    if isinstance(node, Forall):
        return f"forall {node.var}. {to_text(node.body)}"
    if isinstance(node, Exists):
        return f"exists {node.var}. {to_text(node.body)}"
    raise TypeError(f"not a formula node: {node!r}")


# ---------------------------------------------------------------- models


def _label(ring, value):
    text = str(value).replace(" ", "")
    return f"[{text}]"


class FiniteModel:
    """A finite commutative ring ``S`` with an embedding of the constant ring ``R``."""

    def __init__(self, ring, base=None, embed=None, name=None):
        self.ring = ring
        self.base = base or ring
        self.embed = embed or (lambda r: r)
        self.name = name or ring.name
        add, mul = ring.tables()
        self.size = len(ring)
        self.add_table = add.tolist()
        self.mul_table = mul.tolist()
        self._validate(add, mul)
        self._consts = {}

    def _validate(self, add, mul):
        S = self.ring
        n = self.size
        A = add.astype(np.int32)
        M = mul.astype(np.int32)
        z, o = S.index(S.zero), S.index(S.one)
        ident = np.arange(n)
        checks = {
            "addition commutative": (A == A.T).all(),
            "multiplication commutative": (M == M.T).all(),
            "addition associative": (A[A] == A[:, A]).all(),
            "multiplication associative": (M[M] == M[:, M]).all(),
            "distributive": (M[:, A] == A[M[:, :, None], M[:, None, :]]).all(),
            "zero": (A[z] == ident).all(),
            "one": (M[o] == ident).all(),
            "negatives": all((A[i] == z).any() for i in range(n)),
        }
        bad = [k for k, v in checks.items() if not v]
        if bad:
            raise PreconditionError(f"{self.name} is not a commutative unital ring: {bad}")
        R = self.base
        image = [self.embed(r) for r in R.elements]
        if len({S.index(x) for x in image}) != len(image):
            raise PreconditionError("constant map is not injective")
        if self.embed(R.one) != S.one:
            raise PreconditionError("constant map does not preserve 1")
        for a, b in itertools.product(R.elements, repeat=2):
            if self.embed(R.add(a, b)) != S.add(self.embed(a), self.embed(b)) or \
                    self.embed(R.mul(a, b)) != S.mul(self.embed(a), self.embed(b)):
                raise PreconditionError("constant map is not a ring homomorphism")

    def const_index(self, value):
        idx = self._consts.get(value)
        if idx is None:
            idx = self._consts[value] = self.ring.index(self.embed(value))
        return idx

    def element(self, index):
        return self.ring.elements[index]


# ---------------------------------------------------------------- evaluation


def compile_formula(node, model):
    """Closure ``env -> bool`` (formulas) or ``env -> index`` (terms); ``env`` maps names to indices."""
    if isinstance(node, Var):
        name = node.name

        def var(env):
            try:
                return env[name]
            except KeyError:
                raise EvaluationError(f"unbound variable {name}") from None
        return var
    if isinstance(node, Const):
        idx = model.const_index(node.value)
        return lambda env: idx
    if isinstance(node, (Add, Mul)):
        a, b = compile_formula(node.left, model), compile_formula(node.right, model)
        table = model.add_table if isinstance(node, Add) else model.mul_table
        return lambda env: table[a(env)][b(env)]
    if isinstance(node, Eq):
        a, b = compile_formula(node.left, model), compile_formula(node.right, model)
        return lambda env: a(env) == b(env)
    if isinstance(node, Not):
        f = compile_formula(node.body, model)
        return lambda env: not f(env)
    if isinstance(node, And):
        parts = [compile_formula(p, model) for p in node.parts]
        return lambda env: all(p(env) for p in parts)
    if isinstance(node, Or):
        parts = [compile_formula(p, model) for p in node.parts]
        return lambda env: any(p(env) for p in parts)
    if isinstance(node, Implies):
        a, c = compile_formula(node.ante, model), compile_formula(node.concl, model)
        return lambda env: (not a(env)) or c(env)
    if isinstance(node, Forall):
        return _compile_forall(node, model)
    if isinstance(node, Exists):
        return _compile_quantifier(node.var, compile_formula(node.body, model), model, any)
    raise TypeError(f"not a formula node: {node!r}")


def _compile_quantifier(v, body, model, combine):
    n = model.size

    def quant(env):
        saved = env.get(v)
        try:
            return combine(_bind(env, v, i, body) for i in range(n))
        finally:
            if saved is None:
                env.pop(v, None)
            else:
                env[v] = saved
    return quant


def _bind(env, v, i, body):
    env[v] = i
    return body(env)


def _compile_forall(node, model):
    v, body = node.var, node.body
    if not isinstance(body, Implies):
        return _compile_quantifier(v, compile_formula(body, model), model, all)
    parts = body.ante.parts if isinstance(body.ante, And) else (body.ante,)
    outer = [compile_formula(p, model) for p in parts if v not in free_vars(p)]
    inner = [compile_formula(p, model) for p in parts if v in free_vars(p)]
    concl = compile_formula(body.concl, model)
    concl_outer = v not in free_vars(body.concl)
    n = model.size

    def forall(env):
        if concl_outer and concl(env):
            return True
        if not all(p(env) for p in outer):
            return True
        saved = env.get(v)
        try:
            for i in range(n):
                env[v] = i
                if all(p(env) for p in inner) and not concl(env):
                    return False
            return True
        finally:
            if saved is None:
                env.pop(v, None)
            else:
                env[v] = saved
    return forall


def evaluate_formula(model, formula, assignment=None):
    """Truth of ``formula`` in ``model``; ``assignment`` maps free variables to carrier elements."""
    assignment = assignment or {}
    missing = free_vars(formula) - set(assignment)
    if missing:
        raise EvaluationError(f"unbound free variables: {sorted(missing)}")
    env = {name: model.ring.index(value) for name, value in assignment.items()}
    return bool(compile_formula(formula, model)(env))


# ---------------------------------------------------------------- builders

X, Y, ZV = Var("x"), Var("y"), Var("z")


def const(R, value):
    return Const(value, _label(R, value))


def _add_all(terms, R):
    if not terms:
        return const(R, R.zero)
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def _power(x, k):
    out = x
    for _ in range(k - 1):
        out = Mul(out, x)
    return out


def poly_term(R, coeffs_high_to_low, x, monic=False):
    """``r_n x^n + ... + r_0`` (with ``monic``, the leading term is ``x^n`` and ``r_n`` is unused)."""
    n = len(coeffs_high_to_low) - 1
    terms = []
    for i, c in enumerate(coeffs_high_to_low):
        k = n - i
        if monic and k == n:
            terms.append(_power(x, k))
            continue
        if k == 0:
            terms.append(const(R, c))
        else:
            terms.append(Mul(const(R, c), _power(x, k)))
    return _add_all(terms, R)


def sigma1_formula(R, r):
    """``r_n x^n + ... + r_0 = 0 -> r_n = 0`` for ``r = (r_n, ..., r_0)``."""
    r = tuple(r)
    if len(r) < 2:
        raise DegenerateInputError("the coefficient vector needs length n+1 with n >= 1")
    zero = const(R, R.zero)
    return Implies(Eq(poly_term(R, r, X), zero), Eq(const(R, r[0]), zero))


def theta_formula(R, r, var):
    """``var^n + r_{n-1} var^{n-1} + ... + r_0 = 0``; ``r_n`` is not referenced."""
    return Eq(poly_term(R, tuple(r), var, monic=True), const(R, R.zero))


def component_idempotents(R):
    if not isinstance(R, FiniteRing):
        raise UnsupportedError("formula families need a finite ring given as a product of connected rings")
    return R.primitive_idempotents()


def delta_formula(R, x=X):
    """``x`` differs from every idempotent of ``R``."""
    return And(tuple(Not(Eq(x, const(R, d))) for d in R.idempotents()))


def one_minus(R, x):
    return Add(const(R, R.one), Mul(const(R, R.neg(R.one)), x))


def psi_formula(R, r, rp):
    """The member of the second type indexed by ``r = (r_n..r_0)`` and ``rp = (r'_m..r'_0)``."""
    r, rp = tuple(r), tuple(rp)
    if len(r) < 2 or len(rp) < 2:
        raise DegenerateInputError("n, m >= 1 required")
    zero = const(R, R.zero)
    rn, rm = r[0], rp[0]
    ante = And((
        theta_formula(R, r, Y),
        theta_formula(R, rp, ZV),
        Eq(Mul(X, Y), const(R, rn)),
        Eq(Mul(one_minus(R, X), ZV), const(R, rm)),
    ))
    concl = And(tuple(
        Or((Eq(Mul(const(R, rn), const(R, e)), zero), Eq(Mul(const(R, rm), const(R, e)), zero)))
        for e in component_idempotents(R)
    ))
    return And((delta_formula(R), Forall("y", Forall("z", Implies(ante, concl)))))


def gamma_domains(R):
    """``delta(x) & x^2 = x``."""
    return And((delta_formula(R), Eq(Mul(X, X), X)))


def gamma_finite(R):
    """``delta(x)`` and: no ``y, z`` with ``xy = r`` and ``(1-x)z = r'`` for nonzero ``r, r'``."""
    nonzero = [a for a in R.elements if a != R.zero]
    parts = [delta_formula(R)]
    for a, b in itertools.product(nonzero, repeat=2):
        parts.append(Forall("y", Forall("z", Or((
            Not(Eq(Mul(X, Y), const(R, a))),
            Not(Eq(Mul(one_minus(R, X), ZV), const(R, b))),
        )))))
    return And(tuple(parts))


def sigma_extra(R):
    """Some idempotent lies outside ``R``."""
    return Exists("x", gamma_domains(R))


def disjunctive_formula(R, r2, r, rp):
    """``phi_{r''}(x) | psi_{r,r'}(x)`` (the combined type used with a single omitted type)."""
    return Or((sigma1_formula(R, r2), psi_formula(R, r, rp)))


def coefficient_vectors(R, n):
    return itertools.product(R.elements, repeat=n + 1)


def sigma1_truncation(R, max_n):
    return [(r, sigma1_formula(R, r)) for n in range(1, max_n + 1) for r in coefficient_vectors(R, n)]


def sigma2_truncation(R, max_n, max_m):
    """All ``psi_{r,r'}`` with ``1 <= n <= max_n``, ``1 <= m <= max_m``."""
    out = []
    for n in range(1, max_n + 1):
        for m in range(1, max_m + 1):
            for r in coefficient_vectors(R, n):
                for rp in coefficient_vectors(R, m):
                    out.append(((r, rp), psi_formula(R, r, rp)))
    return out


# ---------------------------------------------------------------- checks


@dataclass
class OmissionResult:
    omits: bool
    witness: object = None
    failing: dict = None  # element -> index of the first formula it fails

    @property
    def verdict(self):
        return "omits" if self.omits else "realized"


def check_type_omission(model, truncation, var="x"):
    """Exhaustively look for an element satisfying every formula of the truncation."""
    formulas = [f for _, f in truncation] if truncation and isinstance(truncation[0], tuple) else list(truncation)
    if not formulas:
        raise DegenerateInputError("empty truncation")
    compiled = [compile_formula(f, model) for f in formulas]
    failing = {}
    for i in range(model.size):
        env = {var: i}
        first_fail = next((j for j, f in enumerate(compiled) if not f(env)), None)
        if first_fail is None:
            return OmissionResult(False, model.element(i), failing)
        failing[model.element(i)] = first_fail
    return OmissionResult(True, None, failing)


@dataclass
class ScanRow:
    model: str
    consistency_witness: object
    gamma_realizers: list
    implications_checked: int
    counterexamples: list

    @property
    def holds(self):
        return not self.counterexamples


def local_realization_scan(gamma, truncation, models, var="x", max_reported=5):
    """Per model: a realizer of ``gamma`` and every ``forall x (gamma -> psi)`` over the truncation."""
    rows = []
    for model in models:
        g = compile_formula(gamma, model)
        realizers = [i for i in range(model.size) if g({var: i})]
        counter = []
        for key, psi in truncation:
            f = compile_formula(psi, model)
            for i in realizers:
                if not f({var: i}):
                    counter.append((key, model.element(i)))
                    break
            if len(counter) >= max_reported:
                break
        rows.append(ScanRow(
            model.name,
            model.element(realizers[0]) if realizers else None,
            [model.element(i) for i in realizers],
            len(truncation),
            counter,
        ))
    return rows
