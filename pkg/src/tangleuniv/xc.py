"""R-matrix/balance packages, their axioms, and ribbon-derived elements.

An :class:`XCStructure` equips a structure algebra with an invertible
``R ∈ A⊗A``, an invertible ``kappa ∈ A``, and optionally a trace functional.
:func:`check_xc_axioms` evaluates the five defining identities exactly;
:func:`classical_ribbon_inverse` extracts the distinguished element ``nu``.

A :class:`HopfData` package (comultiplication, counit, antipode) is validated
on construction, and :func:`derive_ribbon` turns a ribbon Hopf triple
``(H, R, kappa)`` into an :class:`XCStructure`, verifying the quasitriangular
and ribbon identities along the way and computing the Drinfeld element and
its relatives.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import (
    AlgebraError,
    Permutation,
    StructureAlgebra,
    TensorElement,
    Vector,
    embed_pair,
)
from .scalars import ONE, Scalar

__all__ = [
    "AxiomReport",
    "HopfData",
    "RibbonDerived",
    "XCError",
    "XCStructure",
    "apply_columns",
    "check_xc_axioms",
    "classical_ribbon_inverse",
    "comul_leg",
    "derive_ribbon",
    "embed_at",
    "invert_columns",
    "mu_groups",
]


class XCError(ValueError):
    """Raised when structure data violates a named axiom."""


class AxiomReport:
    """Per-axiom pass/fail table for a structure check."""

    def __init__(self, subject: str):
        self.subject = subject
        self.entries: list[tuple[str, bool, str | None]] = []

    def add(self, tag: str, ok: bool, witness: str | None = None) -> None:
        self.entries.append((tag, ok, None if ok else witness))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failed_tags(self) -> list[str]:
        return [tag for tag, ok, _ in self.entries if not ok]

    def lines(self) -> list[str]:
        width = max((len(tag) for tag, _, _ in self.entries), default=4)
        out = []
        for tag, ok, witness in self.entries:
            row = f"{tag:<{width}}  {'pass' if ok else 'FAIL'}"
            if witness:
                row += f"  {witness}"
            out.append(row)
        return out

    def __repr__(self) -> str:
        state = "ok" if self.ok else "FAIL " + ",".join(self.failed_tags())
        return f"<axioms {self.subject}: {state}>"


# -- small tensor helpers -----------------------------------------------------


def embed_at(alg: StructureAlgebra, vec: Vector, slot: int, n: int) -> TensorElement:
    """Embed an algebra element at one slot of A^{⊗n}, units elsewhere."""
    if not 1 <= slot <= n:
        raise AlgebraError(f"slot {slot} out of range for arity {n}")
    out = TensorElement.from_vector(alg, vec)
    left = TensorElement.unit(alg, slot - 1)
    right = TensorElement.unit(alg, n - slot)
    return left.tensor(out).tensor(right)


def mu_groups(x: TensorElement, groups: Sequence[int]) -> TensorElement:
    """Multiply consecutive slot groups down to one slot each.

    ``groups`` are positive lengths summing to the arity; group g of the
    result is the ordered product of its slots (left-nested, which is
    immaterial by associativity).
    """
    if any(g < 1 for g in groups) or sum(groups) != x.arity:
        raise AlgebraError(f"bad grouping {groups} for arity {x.arity}")
    alg = x.algebra
    out: dict[tuple[int, ...], Scalar] = {}
    for idx, c in x.terms.items():
        vecs: list[Vector] = []
        pos = 0
        for g in groups:
            vec: Vector = {idx[pos]: ONE}
            for t in range(pos + 1, pos + g):
                vec = alg.vec_mul(vec, {idx[t]: ONE})
                if not vec:
                    break
            pos += g
            if not vec:
                vecs = []
                break
            vecs.append(vec)
        if not vecs:
            continue
        partial: list[tuple[tuple[int, ...], Scalar]] = [((), c)]
        for vec in vecs:
            partial = [(key + (k,), pc * cv) for key, pc in partial for k, cv in vec.items()]
        for key, pc in partial:
            acc = out.get(key)
            acc = pc if acc is None else acc + pc
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return TensorElement(alg, len(groups), out)


def mu_all(x: TensorElement) -> Vector:
    """Multiply all slots together: the n-fold multiplication map."""
    if x.arity == 0:
        return x.algebra.vec_scale(x.algebra.unit, x.scalar_value())
    return mu_groups(x, [x.arity]).to_vector()


def _witness(lhs: TensorElement, rhs: TensorElement) -> str:
    diff = lhs - rhs
    text = str(diff)
    if len(text) > 160:
        text = text[:157] + "..."
    return f"difference {text}"


def _vec_witness(alg: StructureAlgebra, lhs: Vector, rhs: Vector) -> str:
    diff = alg.vec_add(lhs, alg.vec_scale(rhs, -ONE))
    text = alg.vec_str(diff)
    if len(text) > 160:
        text = text[:157] + "..."
    return f"difference {text}"


# -- XC structures ------------------------------------------------------------


class XCStructure:
    """An invertible R ∈ A⊗A and invertible kappa ∈ A, optionally traced.

    Inverses and (when present) trace cyclicity are verified eagerly at
    construction; the five main axioms are evaluated by
    :func:`check_xc_axioms`, which reports rather than raises.
    """

    def __init__(
        self,
        algebra: StructureAlgebra,
        R: TensorElement,
        R_inv: TensorElement,
        kappa: Vector,
        kappa_inv: Vector,
        trace: Vector | None = None,
        name: str | None = None,
        hopf: "HopfData | None" = None,
    ):
        if R.arity != 2 or R_inv.arity != 2:
            raise XCError("R and R_inv must have arity 2")
        if R.algebra.basis != algebra.basis or R_inv.algebra.basis != algebra.basis:
            raise XCError("R defined over a different algebra")
        self.algebra = algebra
        self.R = R
        self.R_inv = R_inv
        self.kappa: Vector = {i: c for i, c in kappa.items() if c}
        self.kappa_inv: Vector = {i: c for i, c in kappa_inv.items() if c}
        self.trace: Vector | None = (
            None if trace is None else {i: c for i, c in trace.items() if c}
        )
        self.name = name if name is not None else algebra.name
        self.hopf = hopf
        unit2 = TensorElement.unit(algebra, 2)
        if R.mul(R_inv) != unit2 or R_inv.mul(R) != unit2:
            raise XCError(f"{self.name}: R_inv is not a two-sided inverse of R")
        if algebra.vec_mul(self.kappa, self.kappa_inv) != algebra.unit or algebra.vec_mul(
            self.kappa_inv, self.kappa
        ) != algebra.unit:
            raise XCError(f"{self.name}: kappa_inv is not a two-sided inverse of kappa")
        if self.trace is not None:
            for i in range(1, algebra.dim + 1):
                for j in range(i + 1, algebra.dim + 1):
                    fwd = self.trace_of(algebra.product(i, j))
                    bwd = self.trace_of(algebra.product(j, i))
                    if fwd != bwd:
                        raise XCError(
                            f"{self.name}: trace is not cyclic at "
                            f"({algebra.label(i)}, {algebra.label(j)}): {fwd} vs {bwd}"
                        )

    @property
    def is_traced(self) -> bool:
        return self.trace is not None

    def trace_of(self, vec: Vector) -> Scalar:
        if self.trace is None:
            raise XCError(f"{self.name} carries no trace")
        total = Scalar(0)
        for i, c in vec.items():
            t = self.trace.get(i)
            if t is not None:
                total = total + t * c
        return total

    def __repr__(self) -> str:
        traced = ", traced" if self.is_traced else ""
        return f"XCStructure({self.name!r}, dim={self.algebra.dim}{traced})"


def check_xc_axioms(X: XCStructure) -> AxiomReport:
    """Evaluate the five defining identities exactly; report per axiom."""
    alg = X.algebra
    report = AxiomReport(X.name)

    kk = TensorElement.from_vector(alg, X.kappa).tensor(TensorElement.from_vector(alg, X.kappa))
    kki = TensorElement.from_vector(alg, X.kappa_inv).tensor(
        TensorElement.from_vector(alg, X.kappa_inv)
    )
    ok, witness = True, None
    for sign, r in (("+1", X.R), ("-1", X.R_inv)):
        conj = kk.mul(r).mul(kki)
        if conj != r:
            ok, witness = False, f"sign {sign}: {_witness(conj, r)}"
            break
    report.add("XC0", ok, witness)

    lhs = mu_all(embed_pair(X.R, 3, 1, 3).lmul_at(X.kappa, 2))
    rhs = mu_all(embed_pair(X.R, 1, 3, 3).lmul_at(X.kappa_inv, 2))
    report.add("XC1f", lhs == rhs, _vec_witness(alg, lhs, rhs))

    big = embed_at(alg, X.kappa_inv, 4, 5)
    big = big.lmul_pair(X.R_inv, 2, 3)
    big = big.lmul_pair(X.R, 1, 5)
    got = mu_groups(big, [2, 3])
    want = TensorElement.unit(alg, 1).tensor(TensorElement.from_vector(alg, X.kappa_inv))
    report.add("XC2c", got == want, _witness(got, want))

    big = embed_at(alg, X.kappa, 2, 5)
    big = big.lmul_pair(X.R, 3, 4)
    big = big.lmul_pair(X.R_inv, 1, 5)
    got = mu_groups(big, [3, 2])
    want = TensorElement.from_vector(alg, X.kappa).tensor(TensorElement.unit(alg, 1))
    report.add("XC2d", got == want, _witness(got, want))

    r23 = embed_pair(X.R, 2, 3, 3)
    lhs3 = r23.lmul_pair(X.R, 1, 3).lmul_pair(X.R, 1, 2)
    r12 = embed_pair(X.R, 1, 2, 3)
    rhs3 = r12.lmul_pair(X.R, 1, 3).lmul_pair(X.R, 2, 3)
    report.add("XC3", lhs3 == rhs3, _witness(lhs3, rhs3))
    return report


def classical_ribbon_inverse(X: XCStructure) -> Vector:
    """The element nu, computed from both sides of the defining identity.

    nu is the arity-0 closure seed: closing a single positive kink produces
    it (see the category module).  Raises if the two evaluations disagree.
    """
    alg = X.algebra
    nu = mu_all(embed_pair(X.R, 1, 3, 3).lmul_at(X.kappa_inv, 2))
    other = mu_all(embed_pair(X.R, 3, 1, 3).lmul_at(X.kappa, 2))
    if nu != other:
        raise XCError(f"{X.name}: the two evaluations of nu disagree")
    return nu


# -- Hopf data and ribbon derivation ------------------------------------------


def apply_columns(cols: Sequence[Vector], vec: Vector) -> Vector:
    """Apply a linear map given by its columns (cols[i-1] = image of e_i)."""
    out: Vector = {}
    for i, c in vec.items():
        for k, m in cols[i - 1].items():
            acc = out.get(k)
            acc = c * m if acc is None else acc + c * m
            if acc:
                out[k] = acc
            elif k in out:
                del out[k]
    return out


def invert_columns(cols: Sequence[Vector], dim: int) -> list[Vector]:
    """Invert a linear map given by sparse columns, by exact Gauss–Jordan."""
    a = [[cols[j].get(i + 1, Scalar(0)) for j in range(dim)] for i in range(dim)]
    inv = [[ONE if i == j else Scalar(0) for j in range(dim)] for i in range(dim)]
    for col in range(dim):
        pivot = next((r for r in range(col, dim) if a[r][col]), None)
        if pivot is None:
            raise XCError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = a[col][col].inverse()
        a[col] = [x * scale for x in a[col]]
        inv[col] = [x * scale for x in inv[col]]
        for r in range(dim):
            if r == col or not a[r][col]:
                continue
            factor = a[r][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
    return [
        {i + 1: inv[i][j] for i in range(dim) if inv[i][j]} for j in range(dim)
    ]


class HopfData:
    """Comultiplication, counit, and antipode over a structure algebra.

    ``comul[i-1]`` is the arity-2 image of e_i; ``counit`` is a sparse row;
    ``antipode[i-1]`` is the sparse column S(e_i).  The inverse antipode is
    computed by exact matrix inversion when not supplied.  All Hopf axioms
    are verified on basis vectors at construction.
    """

    def __init__(
        self,
        algebra: StructureAlgebra,
        comul: Sequence[TensorElement],
        counit: Vector,
        antipode: Sequence[Vector],
        antipode_inv: Sequence[Vector] | None = None,
    ):
        d = algebra.dim
        if len(comul) != d or len(antipode) != d:
            raise XCError("comul/antipode must give one image per basis element")
        for x in comul:
            if x.arity != 2 or x.algebra.basis != algebra.basis:
                raise XCError("comul images must be arity-2 over the same algebra")
        self.algebra = algebra
        self.comul = tuple(comul)
        self.counit: Vector = {i: c for i, c in counit.items() if c}
        self.antipode = tuple({k: c for k, c in col.items() if c} for col in antipode)
        if antipode_inv is None:
            self.antipode_inv = tuple(invert_columns(self.antipode, d))
        else:
            self.antipode_inv = tuple({k: c for k, c in col.items() if c} for col in antipode_inv)
        self._validate()

    # application helpers ------------------------------------------------

    def comul_of(self, vec: Vector) -> TensorElement:
        out = TensorElement.zero(self.algebra, 2)
        for i, c in vec.items():
            out = out + self.comul[i - 1].scale(c)
        return out

    def comul_op_of(self, vec: Vector) -> TensorElement:
        return self.comul_of(vec).permute(Permutation((2, 1)))

    def counit_of(self, vec: Vector) -> Scalar:
        total = Scalar(0)
        for i, c in vec.items():
            e = self.counit.get(i)
            if e is not None:
                total = total + e * c
        return total

    def antipode_of(self, vec: Vector) -> Vector:
        return apply_columns(self.antipode, vec)

    def antipode_inv_of(self, vec: Vector) -> Vector:
        return apply_columns(self.antipode_inv, vec)

    def _validate(self) -> None:
        alg = self.algebra
        d = alg.dim
        unit2 = TensorElement.unit(alg, 2)
        if self.comul_of(alg.unit) != unit2:
            raise XCError("comul(1) != 1⊗1")
        if self.counit_of(alg.unit) != ONE:
            raise XCError("counit(1) != 1")
        for i in range(1, d + 1):
            e = alg.basis_vec(i)
            lbl = alg.label(i)
            dx = self.comul[i - 1]
            # coassociativity
            lhs = _leg_map(dx, 1, lambda v: self.comul_of(v))
            rhs = _leg_map(dx, 2, lambda v: self.comul_of(v))
            if lhs != rhs:
                raise XCError(f"comul not coassociative at {lbl}")
            # counit law
            left = _leg_scalar(dx, 1, self.counit_of)
            right = _leg_scalar(dx, 2, self.counit_of)
            if left != e or right != e:
                raise XCError(f"counit law fails at {lbl}")
            # antipode law
            s_left = mu_all(_leg_map(dx, 1, lambda v: TensorElement.from_vector(alg, self.antipode_of(v))))
            s_right = mu_all(_leg_map(dx, 2, lambda v: TensorElement.from_vector(alg, self.antipode_of(v))))
            target = alg.vec_scale(alg.unit, self.counit_of(e))
            if s_left != target or s_right != target:
                raise XCError(f"antipode law fails at {lbl}")
            # antipode inverse
            if self.antipode_inv_of(self.antipode_of(e)) != e or self.antipode_of(
                self.antipode_inv_of(e)
            ) != e:
                raise XCError(f"antipode_inv is not inverse to antipode at {lbl}")
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                prod = alg.product(i, j)
                if self.comul_of(prod) != self.comul[i - 1].mul(self.comul[j - 1]):
                    raise XCError(
                        f"comul is not an algebra map at ({alg.label(i)}, {alg.label(j)})"
                    )
                if self.counit_of(prod) != self.counit_of(alg.basis_vec(i)) * self.counit_of(
                    alg.basis_vec(j)
                ):
                    raise XCError(
                        f"counit is not an algebra map at ({alg.label(i)}, {alg.label(j)})"
                    )

    def __repr__(self) -> str:
        return f"HopfData({self.algebra.name!r})"


def _leg_map(x: TensorElement, leg: int, f) -> TensorElement:
    """Apply a Vector -> TensorElement map to one leg of an arity-2 element."""
    alg = x.algebra
    out: TensorElement | None = None
    for (a, b), c in x.terms.items():
        if leg == 1:
            piece = f({a: ONE}).tensor(TensorElement(alg, 1, {(b,): c}))
        else:
            piece = TensorElement(alg, 1, {(a,): c}).tensor(f({b: ONE}))
        out = piece if out is None else out + piece
    if out is None:
        return TensorElement.zero(alg, 1 + x.arity)
    return out


def _leg_scalar(x: TensorElement, leg: int, f) -> Vector:
    """Contract one leg of an arity-2 element with a scalar-valued functional."""
    alg = x.algebra
    out: Vector = {}
    for (a, b), c in x.terms.items():
        keep, gone = (b, a) if leg == 1 else (a, b)
        s = f({gone: ONE}) * c
        if not s:
            continue
        acc = out.get(keep)
        acc = s if acc is None else acc + s
        if acc:
            out[keep] = acc
        elif keep in out:
            del out[keep]
    return out


def comul_leg(H: HopfData, r: TensorElement, leg: int) -> TensorElement:
    """Apply comultiplication to one leg of an arity-2 element (result arity 3)."""
    return _leg_map(r, leg, lambda v: H.comul_of(v))


class RibbonDerived:
    """The derived elements of a ribbon Hopf triple, plus the induced XCStructure."""

    def __init__(
        self,
        xc: XCStructure,
        u: Vector,
        u_inv: Vector,
        v: Vector,
        v_inv: Vector,
        nu: Vector,
    ):
        self.xc = xc
        self.u = u
        self.u_inv = u_inv
        self.v = v
        self.v_inv = v_inv
        self.nu = nu

    def __repr__(self) -> str:
        return f"RibbonDerived({self.xc.name!r})"


def derive_ribbon(
    H: HopfData,
    R: TensorElement,
    kappa: Vector,
    kappa_inv: Vector | None = None,
    trace: Vector | None = None,
    name: str | None = None,
) -> RibbonDerived:
    """Verify a ribbon Hopf triple and package it as an XCStructure.

    Checks, in order: invertibility of R via the antipode identity,
    the three quasitriangularity identities, the three balance identities,
    centrality and the standard identities for the ribbon element, the
    antipode symmetries of R, and agreement of nu with the inverse ribbon
    element.  Raises XCError naming the first failed identity.
    """
    alg = H.algebra
    display = name if name is not None else alg.name
    if R.arity != 2 or R.algebra.basis != alg.basis:
        raise XCError("R must be arity 2 over the Hopf algebra")
    kappa = {i: c for i, c in kappa.items() if c}
    if kappa_inv is None:
        cols = [alg.vec_mul(kappa, alg.basis_vec(i)) for i in range(1, alg.dim + 1)]
        kappa_inv = apply_columns(invert_columns(cols, alg.dim), alg.unit)

    # (S⊗Id)(R) = R^{-1}, which also establishes invertibility.
    r_inv = TensorElement.zero(alg, 2)
    for (a, b), c in R.terms.items():
        r_inv = r_inv + TensorElement.from_vector(alg, H.antipode_of({a: c})).tensor(
            TensorElement(alg, 1, {(b,): ONE})
        )
    unit2 = TensorElement.unit(alg, 2)
    if R.mul(r_inv) != unit2 or r_inv.mul(R) != unit2:
        raise XCError(f"{display}: (S⊗Id)(R) is not a two-sided inverse of R")

    # quasitriangularity
    lhs = comul_leg(H, R, 1)
    rhs = embed_pair(R, 2, 3, 3).lmul_pair(R, 1, 3)
    if lhs != rhs:
        raise XCError(f"{display}: comultiplication of leg 1 of R fails (QT1)")
    lhs = comul_leg(H, R, 2)
    rhs = embed_pair(R, 1, 2, 3).lmul_pair(R, 1, 3)
    if lhs != rhs:
        raise XCError(f"{display}: comultiplication of leg 2 of R fails (QT2)")
    for i in range(1, alg.dim + 1):
        e = alg.basis_vec(i)
        if R.mul(H.comul_of(e)) != H.comul_op_of(e).mul(R):
            raise XCError(f"{display}: R does not intertwine comul at {alg.label(i)} (QT3)")

    # Drinfeld element and inverse
    u: Vector = {}
    u_inv: Vector = {}
    for (a, b), c in R.terms.items():
        u = alg.vec_add(u, alg.vec_scale(alg.vec_mul(H.antipode_of({b: ONE}), {a: ONE}), c))
        s2a = H.antipode_of(H.antipode_of({a: ONE}))
        u_inv = alg.vec_add(u_inv, alg.vec_scale(alg.vec_mul({b: ONE}, s2a), c))
    if alg.vec_mul(u, u_inv) != alg.unit or alg.vec_mul(u_inv, u) != alg.unit:
        raise XCError(f"{display}: the Drinfeld element inverse formula fails")

    # balance identities
    if alg.vec_mul(kappa, kappa) != alg.vec_mul(u, H.antipode_of(u_inv)):
        raise XCError(f"{display}: kappa² != u·S(u⁻¹) (R1)")
    if H.comul_of(kappa) != TensorElement.from_vector(alg, kappa).tensor(
        TensorElement.from_vector(alg, kappa)
    ):
        raise XCError(f"{display}: kappa is not grouplike (R2)")
    for i in range(1, alg.dim + 1):
        e = alg.basis_vec(i)
        conj = alg.vec_mul(alg.vec_mul(kappa, e), kappa_inv)
        if H.antipode_of(H.antipode_of(e)) != conj:
            raise XCError(f"{display}: S² is not conjugation by kappa at {alg.label(i)} (R3)")

    # ribbon element
    v = alg.vec_mul(kappa_inv, u)
    v_inv = alg.vec_mul(u_inv, kappa)
    if alg.vec_mul(v, v_inv) != alg.unit or alg.vec_mul(v_inv, v) != alg.unit:
        raise XCError(f"{display}: ribbon element inverse fails")
    for i in range(1, alg.dim + 1):
        e = alg.basis_vec(i)
        if alg.vec_mul(v, e) != alg.vec_mul(e, v):
            raise XCError(f"{display}: ribbon element is not central at {alg.label(i)}")
    if alg.vec_mul(v, v) != alg.vec_mul(u, H.antipode_of(u)):
        raise XCError(f"{display}: v² != u·S(u)")
    if H.counit_of(v) != ONE:
        raise XCError(f"{display}: counit of the ribbon element is not 1")
    if H.antipode_of(v) != v:
        raise XCError(f"{display}: the ribbon element is not antipode-fixed")
    r21r = embed_pair(R, 2, 1, 2).mul(R)
    if r21r.mul(H.comul_of(v)) != TensorElement.from_vector(alg, v).tensor(
        TensorElement.from_vector(alg, v)
    ):
        raise XCError(f"{display}: (R₂₁R)·comul(v) != v⊗v")

    # antipode symmetries of R
    for r in (R, r_inv):
        ss = TensorElement.zero(alg, 2)
        for (a, b), c in r.terms.items():
            ss = ss + TensorElement.from_vector(alg, H.antipode_of({a: c})).tensor(
                TensorElement.from_vector(alg, H.antipode_of({b: ONE}))
            )
        if ss != r:
            raise XCError(f"{display}: (S⊗S) does not fix R^{{±1}}")

    xc = XCStructure(alg, R, r_inv, kappa, kappa_inv, trace=trace, name=display, hopf=H)
    nu = classical_ribbon_inverse(xc)
    if nu != v_inv:
        raise XCError(f"{display}: nu does not equal the inverse ribbon element")
    report = check_xc_axioms(xc)
    if not report.ok:
        raise XCError(f"{display}: induced structure fails {', '.join(report.failed_tags())}")
    return RibbonDerived(xc, u, u_inv, v, v_inv, nu)
