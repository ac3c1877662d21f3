"""Structure-constant algebras and sparse tensor-power arithmetic.

The substrate for everything else in the package:

* :class:`Permutation` — bijections of {1..n} with block products;
* :class:`StructureAlgebra` — a finite-dimensional unital algebra given by a
  basis and sparse structure constants, validated at construction;
* :class:`TensorElement` — a sparse element of the n-th tensor power, the
  coefficients of which are exact :class:`~tangleuniv.scalars.Scalar` values.

Basis indices are 1-based everywhere (keys of structure constants, keys of
tensor terms, slot positions), matching the printed subscript conventions;
Python-internal lists are indexed with ``[i - 1]``.

All values are immutable after construction and all operations are pure, so
everything here is safe to share across threads.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .scalars import ONE, Scalar

__all__ = [
    "AlgebraError",
    "CheckReport",
    "Permutation",
    "StructureAlgebra",
    "TensorElement",
    "Vector",
    "embed_pair",
    "sigma_star",
    "tensor_mul",
    "verify_algebra",
    "vec_equal",
]

# A sparse vector in the algebra: 1-based basis index -> nonzero coefficient.
Vector = dict[int, Scalar]


class AlgebraError(ValueError):
    """Raised when algebra data violates a structural law."""


class Permutation:
    """A bijection of {1, ..., n}, stored by its image tuple.

    ``image[i - 1] == sigma(i)``.  Products follow the usual function
    composition convention: ``(sigma * tau)(x) == sigma(tau(x))``.
    """

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        img = tuple(image)
        if sorted(img) != list(range(1, len(img) + 1)):
            raise ValueError(f"not a bijection of 1..{len(img)}: {img}")
        object.__setattr__(self, "image", img)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def adjacent(cls, n: int, p: int) -> "Permutation":
        """The transposition (p, p+1) in S_n."""
        img = list(range(1, n + 1))
        img[p - 1], img[p] = img[p], img[p - 1]
        return cls(img)

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.size != other.size:
            raise ValueError("size mismatch in permutation product")
        return Permutation(tuple(self.image[other.image[i] - 1] for i in range(self.size)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.image):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def block(self, other: "Permutation") -> "Permutation":
        """Block product: self acts on 1..n, other on n+1..n+m."""
        n = self.size
        return Permutation(self.image + tuple(v + n for v in other.image))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.image))

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, including fixed points as 1-cycles."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"


class StructureAlgebra:
    """A finite-dimensional unital algebra over Q or Q(i).

    Multiplication is given sparsely: ``mul[(i, j)]`` is the sparse vector of
    e_i * e_j.  Pairs that multiply to zero may be omitted.  Alternatively a
    ``rule`` callable computes products on demand (used for matrix-unit
    endomorphism algebras where a full table would be quadratic in a large
    dimension); computed products are cached.

    Associativity and the unit laws are checked exhaustively at construction
    for dim <= 32; beyond that, on a deterministic sample (rule-backed
    algebras at that size are constructed, not user-entered).
    """

    #: dimension above which construction-time validation switches to sampling
    EXHAUSTIVE_LIMIT = 32

    def __init__(
        self,
        name: str,
        scalars: str,
        basis: Sequence[str],
        unit: Vector,
        mul: Mapping[tuple[int, int], Vector] | None = None,
        rule: Callable[[int, int], Vector] | None = None,
        validate: bool = True,
    ):
        if scalars not in ("Q", "Q(i)"):
            raise AlgebraError(f"unknown scalar field {scalars!r}")
        if (mul is None) == (rule is None):
            raise AlgebraError("exactly one of mul table / rule required")
        if len(set(basis)) != len(basis):
            raise AlgebraError("duplicate basis labels")
        self.name = name
        self.scalars = scalars
        self.basis = tuple(basis)
        self.dim = len(self.basis)
        self.unit: Vector = {i: c for i, c in unit.items() if c}
        self._rule = rule
        self._cache: dict[tuple[int, int], Vector] = {}
        if mul is not None:
            for (i, j), vec in mul.items():
                if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                    raise AlgebraError(f"structure constant index out of range: ({i}, {j})")
                self._cache[(i, j)] = {k: c for k, c in vec.items() if c}
        for i in self.unit:
            if not 1 <= i <= self.dim:
                raise AlgebraError(f"unit index out of range: {i}")
        if validate:
            report = verify_algebra(self)
            if not report.ok:
                raise AlgebraError(f"invalid algebra {name!r}: {report.failures[0]}")

    # -- products -----------------------------------------------------------

    def product(self, i: int, j: int) -> Vector:
        """Sparse vector of e_i * e_j."""
        got = self._cache.get((i, j))
        if got is None:
            if self._rule is None:
                return {}
            got = {k: c for k, c in self._rule(i, j).items() if c}
            self._cache[(i, j)] = got
        return got

    def vec_mul(self, x: Vector, y: Vector) -> Vector:
        """Product of two sparse vectors."""
        out: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                ab = a * b
                for k, c in self.product(i, j).items():
                    acc = out.get(k)
                    acc = ab * c if acc is None else acc + ab * c
                    if acc:
                        out[k] = acc
                    elif k in out:
                        del out[k]
        return out

    def vec_scale(self, x: Vector, s: Scalar) -> Vector:
        if not s:
            return {}
        return {i: s * c for i, c in x.items()}

    def vec_add(self, x: Vector, y: Vector) -> Vector:
        out = dict(x)
        for i, c in y.items():
            acc = out.get(i)
            acc = c if acc is None else acc + c
            if acc:
                out[i] = acc
            elif i in out:
                del out[i]
        return out

    def basis_vec(self, i: int) -> Vector:
        return {i: ONE}

    def label(self, i: int) -> str:
        return self.basis[i - 1]

    def index_of(self, label: str) -> int:
        try:
            return self.basis.index(label) + 1
        except ValueError:
            raise AlgebraError(f"no basis element {label!r} in {self.name}") from None

    def vec_from_labels(self, terms: Mapping[str, Scalar]) -> Vector:
        return {self.index_of(lbl): c for lbl, c in terms.items() if c}

    def vec_str(self, x: Vector) -> str:
        if not x:
            return "0"
        parts = [f"{self.label(i)}*{c}" for i, c in sorted(x.items())]
        return " + ".join(parts)

    def mul_items(self) -> Iterator[tuple[int, int, int, Scalar]]:
        """Iterate all nonzero structure constants (i, j, k, c).

        Forces evaluation of the rule on all pairs — intended for
        serialization of table-sized algebras only.
        """
        for i in range(1, self.dim + 1):
            for j in range(1, self.dim + 1):
                for k, c in sorted(self.product(i, j).items()):
                    yield i, j, k, c

    def __repr__(self) -> str:
        return f"StructureAlgebra({self.name!r}, dim={self.dim})"


class CheckReport:
    """Outcome of a structural check: ok flag plus failure descriptions."""

    def __init__(self, name: str):
        self.name = name
        self.failures: list[str] = []

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def __repr__(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"<check {self.name}: {state}>"


def verify_algebra(alg: StructureAlgebra, sample_seed: int = 0) -> CheckReport:
    """Check the unit laws and associativity of an algebra.

    Exhaustive over all basis triples for dim <= EXHAUSTIVE_LIMIT; above that
    a deterministic pseudo-random sample of triples is used.  Failure is
    reported with the first witness triple, not raised.
    """
    report = CheckReport(f"algebra {alg.name}")
    d = alg.dim
    for i in range(1, d + 1):
        e = alg.basis_vec(i)
        left = alg.vec_mul(alg.unit, e)
        right = alg.vec_mul(e, alg.unit)
        if not vec_equal(left, e):
            report.fail(f"unit law fails on the left of {alg.label(i)}: got {alg.vec_str(left)}")
            return report
        if not vec_equal(right, e):
            report.fail(f"unit law fails on the right of {alg.label(i)}: got {alg.vec_str(right)}")
            return report
    if d <= StructureAlgebra.EXHAUSTIVE_LIMIT:
        triples: Iterable[tuple[int, int, int]] = (
            (i, j, k)
            for i in range(1, d + 1)
            for j in range(1, d + 1)
            for k in range(1, d + 1)
        )
    else:
        import random

        rng = random.Random(sample_seed)
        triples = ((rng.randint(1, d), rng.randint(1, d), rng.randint(1, d)) for _ in range(2000))
    for i, j, k in triples:
        lhs = alg.vec_mul(alg.product(i, j), alg.basis_vec(k))
        rhs = alg.vec_mul(alg.basis_vec(i), alg.product(j, k))
        if not vec_equal(lhs, rhs):
            report.fail(
                f"associativity fails at ({alg.label(i)}, {alg.label(j)}, {alg.label(k)}): "
                f"(ab)c = {alg.vec_str(lhs)} but a(bc) = {alg.vec_str(rhs)}"
            )
            return report
    return report


def vec_equal(x: Vector, y: Vector) -> bool:
    """Exact equality of sparse vectors (zero-stripped on construction)."""
    return x == y


class TensorElement:
    """A sparse element of the n-th tensor power of a structure algebra.

    ``terms`` maps basis multi-indices (1-based, length == arity) to nonzero
    scalars; zero coefficients are stripped on construction, so equality is
    plain structural equality of the maps.  Arity 0 is a bare scalar with the
    empty tuple as its only possible key.
    """

    __slots__ = ("algebra", "arity", "terms")

    def __init__(
        self,
        algebra: StructureAlgebra,
        arity: int,
        terms: Mapping[tuple[int, ...], Scalar],
    ):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        clean: dict[tuple[int, ...], Scalar] = {}
        for idx, c in terms.items():
            if len(idx) != arity:
                raise ValueError(f"index {idx} has wrong length for arity {arity}")
            if c:
                clean[idx] = c
        self.algebra = algebra
        self.arity = arity
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, algebra: StructureAlgebra, arity: int) -> "TensorElement":
        return cls(algebra, arity, {})

    @classmethod
    def unit(cls, algebra: StructureAlgebra, arity: int) -> "TensorElement":
        """1 tensored with itself `arity` times, expanded sparsely."""
        terms: dict[tuple[int, ...], Scalar] = {(): ONE}
        for _ in range(arity):
            terms = {
                idx + (i,): c * u for idx, c in terms.items() for i, u in algebra.unit.items()
            }
        return cls(algebra, arity, terms)

    @classmethod
    def scalar(cls, algebra: StructureAlgebra, value: Scalar) -> "TensorElement":
        return cls(algebra, 0, {(): value})

    @classmethod
    def from_vector(cls, algebra: StructureAlgebra, vec: Vector) -> "TensorElement":
        return cls(algebra, 1, {(i,): c for i, c in vec.items()})

    def to_vector(self) -> Vector:
        if self.arity != 1:
            raise ValueError("to_vector needs arity 1")
        return {idx[0]: c for idx, c in self.terms.items()}

    def scalar_value(self) -> Scalar:
        if self.arity != 0:
            raise ValueError("scalar_value needs arity 0")
        return self.terms.get((), Scalar(0))

    # -- linear structure ----------------------------------------------------

    def _require_compatible(self, other: "TensorElement") -> None:
        if self.algebra.dim != other.algebra.dim or self.algebra.basis != other.algebra.basis:
            raise AlgebraError("mismatched algebras")
        if self.arity != other.arity:
            raise AlgebraError(f"arity mismatch: {self.arity} != {other.arity}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_compatible(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            acc = out.get(idx)
            acc = c if acc is None else acc + c
            if acc:
                out[idx] = acc
            elif idx in out:
                del out[idx]
        return TensorElement(self.algebra, self.arity, out)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.algebra, self.arity, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, s: Scalar) -> "TensorElement":
        if not s:
            return TensorElement.zero(self.algebra, self.arity)
        return TensorElement(self.algebra, self.arity, {i: s * c for i, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    # -- multiplicative structure ---------------------------------------------

    def mul(self, other: "TensorElement") -> "TensorElement":
        """Componentwise (slotwise) product in the tensor-power algebra."""
        self._require_compatible(other)
        alg = self.algebra
        out: dict[tuple[int, ...], Scalar] = {}
        for idx_a, ca in self.terms.items():
            for idx_b, cb in other.terms.items():
                coeff = ca * cb
                partial: list[tuple[tuple[int, ...], Scalar]] = [((), coeff)]
                for t in range(self.arity):
                    prod = alg.product(idx_a[t], idx_b[t])
                    if not prod:
                        partial = []
                        break
                    partial = [
                        (pref + (k,), pc * c) for pref, pc in partial for k, c in prod.items()
                    ]
                for idx, c in partial:
                    acc = out.get(idx)
                    acc = c if acc is None else acc + c
                    if acc:
                        out[idx] = acc
                    elif idx in out:
                        del out[idx]
        return TensorElement(alg, self.arity, out)

    def lmul_pair(self, r: "TensorElement", i: int, j: int) -> "TensorElement":
        """``embed_pair(r, i, j, arity).mul(self)`` without building the embedding.

        Because the embedded element is the unit away from slots i and j,
        left multiplication only touches those two slots.
        """
        if r.arity != 2:
            raise AlgebraError("lmul_pair needs an arity-2 left factor")
        if i == j or not (1 <= i <= self.arity) or not (1 <= j <= self.arity):
            raise AlgebraError(f"bad slots ({i}, {j}) for arity {self.arity}")
        alg = self.algebra
        out: dict[tuple[int, ...], Scalar] = {}
        for (a, b), c_r in r.terms.items():
            for idx, c_x in self.terms.items():
                vi = alg.product(a, idx[i - 1])
                if not vi:
                    continue
                vj = alg.product(b, idx[j - 1])
                if not vj:
                    continue
                coeff = c_r * c_x
                base = list(idx)
                for ki, ci in vi.items():
                    base[i - 1] = ki
                    for kj, cj in vj.items():
                        base[j - 1] = kj
                        key = tuple(base)
                        c = coeff * ci * cj
                        acc = out.get(key)
                        acc = c if acc is None else acc + c
                        if acc:
                            out[key] = acc
                        elif key in out:
                            del out[key]
        return TensorElement(alg, self.arity, out)

    def lmul_at(self, vec: Vector, i: int) -> "TensorElement":
        """Left-multiply slot i by a sparse algebra vector (units elsewhere)."""
        if not (1 <= i <= self.arity):
            raise AlgebraError(f"bad slot {i} for arity {self.arity}")
        alg = self.algebra
        out: dict[tuple[int, ...], Scalar] = {}
        for a, c_v in vec.items():
            for idx, c_x in self.terms.items():
                prod = alg.product(a, idx[i - 1])
                if not prod:
                    continue
                coeff = c_v * c_x
                base = list(idx)
                for k, c in prod.items():
                    base[i - 1] = k
                    key = tuple(base)
                    cc = coeff * c
                    acc = out.get(key)
                    acc = cc if acc is None else acc + cc
                    if acc:
                        out[key] = acc
                    elif key in out:
                        del out[key]
        return TensorElement(alg, self.arity, out)

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Outer tensor product, arity adds."""
        if self.algebra.basis != other.algebra.basis:
            raise AlgebraError("mismatched algebras")
        out = {
            ia + ib: ca * cb
            for ia, ca in self.terms.items()
            for ib, cb in other.terms.items()
        }
        return TensorElement(self.algebra, self.arity + other.arity, out)

    def permute(self, sigma: Permutation) -> "TensorElement":
        """Apply the slot permutation: slot sigma(t) of the result holds slot t."""
        if sigma.size != self.arity:
            raise AlgebraError(f"permutation size {sigma.size} != arity {self.arity}")
        out: dict[tuple[int, ...], Scalar] = {}
        img = sigma.image
        for idx, c in self.terms.items():
            new = [0] * self.arity
            for t in range(self.arity):
                new[img[t] - 1] = idx[t]
            out[tuple(new)] = c
        return TensorElement(self.algebra, self.arity, out)

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.algebra.basis == other.algebra.basis
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        return f"TensorElement(arity={self.arity}, {len(self.terms)} terms)"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        labels = self.algebra.label
        parts = []
        for idx in sorted(self.terms):
            body = "⊗".join(labels(i) for i in idx) if idx else "()"
            parts.append(f"({body})·{self.terms[idx]}")
        return " + ".join(parts)


# -- module-level operation spellings ----------------------------------------


def tensor_mul(a: TensorElement, b: TensorElement) -> TensorElement:
    """Slotwise product of two same-arity sparse tensors."""
    return a.mul(b)


def embed_pair(r: TensorElement, i: int, j: int, n: int) -> TensorElement:
    """Place an arity-2 element's legs in slots i and j of an arity-n tensor.

    Leg 1 lands in slot i, leg 2 in slot j, units fill every other slot; for
    i > j this is the flipped element placed at the sorted positions, which
    comes to the same thing.
    """
    if r.arity != 2:
        raise AlgebraError("embed_pair needs an arity-2 element")
    if i == j:
        raise AlgebraError("embed_pair slots must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise AlgebraError(f"slots ({i}, {j}) out of range for arity {n}")
    alg = r.algebra
    rest = [t for t in range(1, n + 1) if t != i and t != j]
    out: dict[tuple[int, ...], Scalar] = {}
    for (a, b), c in r.terms.items():
        partial: list[tuple[dict[int, int], Scalar]] = [({i: a, j: b}, c)]
        for t in rest:
            partial = [
                ({**slots, t: u}, pc * cu)
                for slots, pc in partial
                for u, cu in alg.unit.items()
            ]
        for slots, pc in partial:
            key = tuple(slots[t] for t in range(1, n + 1))
            acc = out.get(key)
            acc = pc if acc is None else acc + pc
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return TensorElement(alg, n, out)


def sigma_star(sigma: Permutation, u: TensorElement) -> TensorElement:
    """The slot-permutation action; an algebra automorphism of the tensor power."""
    return u.permute(sigma)
