"""The category of elements: morphisms (u, σ) with composition and closure.

A morphism of arity n is a sparse element of the n-th tensor power paired
with a permutation of {1..n}.  Composition follows the product formula
``(u, σ)·(v, τ) = (τ⁻¹_*(u)·v, στ)`` — in :func:`compose`, the right argument
is applied first, matching bottom-to-top stacking of diagrams.

The braiding and twist families are generated from (R, (12)) and (nu, id) by
the standard recursions, and :func:`open_close` / :func:`traced_close`
implement the partial-closure contraction that eats one closed slot at a
time (rightmost first), multiplying x_{last}·kappa onto the slot that feeds
it; a slot that feeds itself is a closed loop, which only the traced variant
can consume (as the scalar factor tr(kappa·x)).
"""

from __future__ import annotations

from .algebra import Permutation, StructureAlgebra, TensorElement
from .scalars import ONE, Scalar
from .xc import XCError, XCStructure, classical_ribbon_inverse, mu_all
from .algebra import embed_pair

__all__ = [
    "ElementMorphism",
    "ElementsError",
    "braiding",
    "braiding_inv",
    "compose",
    "crossing",
    "crossing_inv",
    "is_admissible",
    "monoidal",
    "open_close",
    "traced_close",
    "twist",
    "twist_inv",
]


class ElementsError(ValueError):
    """Raised on arity mismatches and inadmissible closures."""


class ElementMorphism:
    """A pair (u, sigma): sparse tensor content plus a strand permutation."""

    __slots__ = ("u", "sigma")

    def __init__(self, u: TensorElement, sigma: Permutation):
        if u.arity != sigma.size:
            raise ElementsError(f"arity {u.arity} != permutation size {sigma.size}")
        self.u = u
        self.sigma = sigma

    @property
    def arity(self) -> int:
        return self.u.arity

    @property
    def algebra(self) -> StructureAlgebra:
        return self.u.algebra

    @classmethod
    def identity(cls, algebra: StructureAlgebra, n: int) -> "ElementMorphism":
        return cls(TensorElement.unit(algebra, n), Permutation.identity(n))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementMorphism):
            return NotImplemented
        return self.sigma == other.sigma and self.u == other.u

    def __repr__(self) -> str:
        return f"ElementMorphism(arity={self.arity}, {len(self.u.terms)} terms)"

    def __str__(self) -> str:
        if self.arity == 0:
            return f"{self.u.scalar_value()} ; sigma=[]"
        return f"{self.u} ; sigma={list(self.sigma.image)}"


def compose(f: ElementMorphism, g: ElementMorphism) -> ElementMorphism:
    """f after g: (u, σ)·(v, τ) = (τ⁻¹_*(u)·v, στ)."""
    if f.arity != g.arity:
        raise ElementsError(f"arity mismatch: {f.arity} != {g.arity}")
    moved = f.u.permute(g.sigma.inverse())
    return ElementMorphism(moved.mul(g.u), f.sigma * g.sigma)


def monoidal(f: ElementMorphism, g: ElementMorphism) -> ElementMorphism:
    """Side-by-side product: (u⊗v, σ⊗ξ)."""
    return ElementMorphism(f.u.tensor(g.u), f.sigma.block(g.sigma))


def is_admissible(sigma: Permutation, n: int, m: int) -> bool:
    """No cycle of sigma may lie entirely inside the closed block {n+1..n+m}."""
    if n + m != sigma.size:
        raise ElementsError(f"block sizes {n}+{m} != permutation size {sigma.size}")
    for cyc in sigma.cycles():
        if all(i > n for i in cyc):
            return False
    return True


def _close_one(X: XCStructure, f: ElementMorphism, traced: bool) -> ElementMorphism:
    """Contract the last slot: its content times kappa lands on its feeder slot."""
    alg = f.algebra
    t = f.arity
    if t == 0:
        raise ElementsError("no slot to close")
    sig = f.sigma
    if sig(t) == t:
        if not traced:
            raise ElementsError(
                "closed loop (slot feeds itself) without a trace; "
                "the closure is inadmissible for the open variant"
            )
        if not X.is_traced:
            raise XCError(f"{X.name} carries no trace")
        out_terms: dict[tuple[int, ...], Scalar] = {}
        for idx, c in f.u.terms.items():
            factor = X.trace_of(alg.vec_mul(X.kappa, {idx[t - 1]: ONE}))
            cc = c * factor
            if not cc:
                continue
            key = idx[: t - 1]
            acc = out_terms.get(key)
            acc = cc if acc is None else acc + cc
            if acc:
                out_terms[key] = acc
            elif key in out_terms:
                del out_terms[key]
        new_image = tuple(sig(i) for i in range(1, t))
        return ElementMorphism(TensorElement(alg, t - 1, out_terms), Permutation(new_image))
    j = sig.inverse()(t)
    out_terms = {}
    for idx, c in f.u.terms.items():
        vec = alg.vec_mul(alg.vec_mul({idx[t - 1]: ONE}, X.kappa), {idx[j - 1]: ONE})
        base = list(idx[: t - 1])
        for k, cv in vec.items():
            base[j - 1] = k
            key = tuple(base)
            cc = c * cv
            acc = out_terms.get(key)
            acc = cc if acc is None else acc + cc
            if acc:
                out_terms[key] = acc
            elif key in out_terms:
                del out_terms[key]
    image = []
    for i in range(1, t):
        image.append(sig(t) if i == j else sig(i))
    return ElementMorphism(TensorElement(alg, t - 1, out_terms), Permutation(image))


def open_close(X: XCStructure, f: ElementMorphism, m: int) -> ElementMorphism:
    """Close the rightmost m slots of f, open-trace style (no self-loops allowed)."""
    if m < 0 or m > f.arity:
        raise ElementsError(f"cannot close {m} of {f.arity} slots")
    if m and not is_admissible(f.sigma, f.arity - m, m):
        raise ElementsError("inadmissible closure: a cycle lies inside the closed block")
    out = f
    for _ in range(m):
        out = _close_one(X, out, traced=False)
    return out


def traced_close(X: XCStructure, f: ElementMorphism, m: int) -> ElementMorphism:
    """Close the rightmost m slots, consuming closed loops with the trace."""
    if m < 0 or m > f.arity:
        raise ElementsError(f"cannot close {m} of {f.arity} slots")
    out = f
    for _ in range(m):
        out = _close_one(X, out, traced=True)
    return out


# -- braiding and twist families ----------------------------------------------


def crossing(X: XCStructure) -> ElementMorphism:
    """The positive crossing morphism (R, (12))."""
    return ElementMorphism(X.R, Permutation((2, 1)))


def crossing_inv(X: XCStructure) -> ElementMorphism:
    """The negative crossing morphism (flip(R⁻¹), (12)); inverse to crossing."""
    return ElementMorphism(X.R_inv.permute(Permutation((2, 1))), Permutation((2, 1)))


def braiding(X: XCStructure, n: int, m: int) -> ElementMorphism:
    """The braiding morphism moving a block of n strands over a block of m."""
    if n < 0 or m < 0:
        raise ElementsError("block sizes must be nonnegative")
    return _braiding(X, n, m, crossing(X))


def braiding_inv(X: XCStructure, n: int, m: int) -> ElementMorphism:
    """Exact inverse of braiding(X, n, m)."""
    if n < 0 or m < 0:
        raise ElementsError("block sizes must be nonnegative")
    return _braiding_rev(X, n, m, crossing_inv(X))


def _braiding(X: XCStructure, n: int, m: int, tau11: ElementMorphism) -> ElementMorphism:
    alg = X.algebra
    if n == 0 or m == 0:
        return ElementMorphism.identity(alg, n + m)
    if n == 1 and m == 1:
        return tau11
    if n == 1:
        lower = monoidal(_braiding(X, 1, m - 1, tau11), ElementMorphism.identity(alg, 1))
        upper = monoidal(ElementMorphism.identity(alg, m - 1), tau11)
        return compose(upper, lower)
    lower = monoidal(ElementMorphism.identity(alg, 1), _braiding(X, n - 1, m, tau11))
    upper = monoidal(_braiding(X, 1, m, tau11), ElementMorphism.identity(alg, n - 1))
    return compose(upper, lower)


def _braiding_rev(X: XCStructure, n: int, m: int, tau11_inv: ElementMorphism) -> ElementMorphism:
    # mirror of _braiding with all compositions reversed
    alg = X.algebra
    if n == 0 or m == 0:
        return ElementMorphism.identity(alg, n + m)
    if n == 1 and m == 1:
        return tau11_inv
    if n == 1:
        lower = monoidal(ElementMorphism.identity(alg, m - 1), tau11_inv)
        upper = monoidal(_braiding_rev(X, 1, m - 1, tau11_inv), ElementMorphism.identity(alg, 1))
        return compose(upper, lower)
    lower = monoidal(_braiding_rev(X, 1, m, tau11_inv), ElementMorphism.identity(alg, n - 1))
    upper = monoidal(ElementMorphism.identity(alg, 1), _braiding_rev(X, n - 1, m, tau11_inv))
    return compose(upper, lower)


def twist(X: XCStructure, n: int) -> ElementMorphism:
    """The twist morphism (nu^{⊗…} pattern): θ_1 = (nu, id), extended recursively."""
    if n < 0:
        raise ElementsError("twist arity must be nonnegative")
    alg = X.algebra
    if n == 0:
        return ElementMorphism.identity(alg, 0)
    theta1 = ElementMorphism(
        TensorElement.from_vector(alg, classical_ribbon_inverse(X)), Permutation.identity(1)
    )
    out = theta1
    for k in range(2, n + 1):
        top = monoidal(out, theta1)
        out = compose(top, compose(braiding(X, 1, k - 1), braiding(X, k - 1, 1)))
    return out


def twist_inv(X: XCStructure, n: int) -> ElementMorphism:
    """Exact inverse of twist(X, n); θ_1⁻¹ is the closure of the negative kink."""
    if n < 0:
        raise ElementsError("twist arity must be nonnegative")
    alg = X.algebra
    if n == 0:
        return ElementMorphism.identity(alg, 0)
    # Close the negative crossing: Σ ᾱ·kappa·β̄ (slot 2 feeds slot 1).
    vec = mu_all(embed_pair(X.R_inv, 1, 3, 3).lmul_at(X.kappa, 2))
    theta1_inv = ElementMorphism(TensorElement.from_vector(alg, vec), Permutation.identity(1))
    out = theta1_inv
    for k in range(2, n + 1):
        bottom = monoidal(out, theta1_inv)
        out = compose(compose(braiding_inv(X, k - 1, 1), braiding_inv(X, 1, k - 1)), bottom)
    return out
