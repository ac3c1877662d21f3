"""The builtin example algebras with their R-matrix/balance packages.

* ``trivial()`` — the group algebra of Z/2 × Z/2 with R = 1⊗1 and kappa = 1;
* ``sweedler(tr1=...)`` — the 4-dimensional algebra ⟨s, w | s²=1, w²=0,
  sw=−ws⟩ with its ribbon package, optionally traced (the trace value on 1 is
  a free choice and therefore a required parameter of the traced variant);
* ``double_sweedler()`` — the 32-dimensional double with generators
  s, σ, c, w, ω, built programmatically from its rewrite rules;
* ``matrix2(lam)`` — 2×2 matrices over the Gaussian rationals with the
  one-parameter R-matrix family and kappa = i·diag(1, −1), matrix-traced.

The Hopf-algebra cases are constructed through :func:`~tangleuniv.xc.derive_ribbon`,
so every builtin is fully re-verified each time it is first built (results
are cached per process).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .algebra import StructureAlgebra, TensorElement, Vector
from .scalars import HALF, I, ONE, Scalar, as_scalar
from .xc import HopfData, RibbonDerived, XCError, XCStructure, derive_ribbon

__all__ = [
    "builtin",
    "builtin_names",
    "double_sweedler",
    "matrix2",
    "sweedler",
    "trivial",
    "trivial_structure",
]

MINUS_ONE = Scalar(-1)


def trivial_structure(algebra: StructureAlgebra, trace: Vector | None = None) -> XCStructure:
    """R = 1⊗1 and kappa = 1 on any algebra; every axiom collapses to units."""
    unit2 = TensorElement.unit(algebra, 2)
    return XCStructure(
        algebra,
        unit2,
        unit2,
        dict(algebra.unit),
        dict(algebra.unit),
        trace=trace,
        name=f"trivial[{algebra.name}]",
    )


# -- trivial: group algebra of Z/2 x Z/2 --------------------------------------


@lru_cache(maxsize=None)
def _klein_algebra() -> StructureAlgebra:
    # elements (x, y) of Z/2 x Z/2, labelled 1, a, b, ab
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    labels = ["1", "a", "b", "ab"]
    idx = {e: i + 1 for i, e in enumerate(elems)}
    mul = {}
    for (x1, y1), (x2, y2) in itertools.product(elems, repeat=2):
        prod = ((x1 + x2) % 2, (y1 + y2) % 2)
        mul[(idx[(x1, y1)], idx[(x2, y2)])] = {idx[prod]: ONE}
    return StructureAlgebra("klein", "Q", labels, {1: ONE}, mul=mul)


@lru_cache(maxsize=None)
def trivial() -> RibbonDerived:
    """Group algebra of Z/2 × Z/2 with the unit R-matrix and balance."""
    alg = _klein_algebra()
    comul = [
        TensorElement(alg, 2, {(i, i): ONE}) for i in range(1, 5)
    ]  # every group element is grouplike
    counit = {i: ONE for i in range(1, 5)}
    antipode = [alg.basis_vec(i) for i in range(1, 5)]  # every element is its own inverse
    hopf = HopfData(alg, comul, counit, antipode)
    return derive_ribbon(hopf, TensorElement.unit(alg, 2), dict(alg.unit), name="trivial")


# -- Sweedler ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _sweedler_parts() -> tuple[StructureAlgebra, HopfData, TensorElement, Vector, Vector]:
    labels = ["1", "s", "w", "sw"]
    one, s, w, sw = 1, 2, 3, 4
    mul: dict[tuple[int, int], Vector] = {}
    for i in range(1, 5):
        mul[(one, i)] = {i: ONE}
        if i != one:
            mul[(i, one)] = {i: ONE}
    mul[(s, s)] = {one: ONE}
    mul[(s, w)] = {sw: ONE}
    mul[(s, sw)] = {w: ONE}
    mul[(w, s)] = {sw: MINUS_ONE}
    mul[(w, w)] = {}
    mul[(w, sw)] = {}
    mul[(sw, s)] = {w: MINUS_ONE}
    mul[(sw, w)] = {}
    mul[(sw, sw)] = {}
    alg = StructureAlgebra("sweedler", "Q", labels, {one: ONE}, mul=mul)

    comul = [
        TensorElement(alg, 2, {(one, one): ONE}),
        TensorElement(alg, 2, {(s, s): ONE}),
        TensorElement(alg, 2, {(w, one): ONE, (s, w): ONE}),
        TensorElement(alg, 2, {(sw, s): ONE, (one, sw): ONE}),
    ]
    counit: Vector = {one: ONE, s: ONE}
    antipode: list[Vector] = [
        {one: ONE},
        {s: ONE},
        {sw: MINUS_ONE},
        {w: ONE},
    ]
    hopf = HopfData(alg, comul, counit, antipode)

    r_terms: dict[tuple[int, int], Scalar] = {
        (one, one): HALF,
        (one, s): HALF,
        (s, one): HALF,
        (s, s): -HALF,
        (w, w): HALF,
        (w, sw): -HALF,
        (sw, w): HALF,
        (sw, sw): HALF,
    }
    R = TensorElement(alg, 2, r_terms)
    kappa: Vector = {s: ONE}
    kappa_inv: Vector = {s: ONE}
    return alg, hopf, R, kappa, kappa_inv


def sweedler(tr1: Scalar | int | str | None = None) -> RibbonDerived:
    """The 4-dimensional ribbon package; pass ``tr1`` to attach the trace.

    The trace sends s ↦ 1 and w, sw ↦ 0; its value on 1 is not pinned down
    by anything (the commutator subspace is spanned by w and sw), so the
    traced variant requires it explicitly.
    """
    alg, hopf, R, kappa, kappa_inv = _sweedler_parts()
    trace: Vector | None = None
    if tr1 is not None:
        trace = {1: as_scalar(tr1), 2: ONE}
    return derive_ribbon(hopf, R, kappa, kappa_inv, trace=trace, name="sweedler")


# -- the 32-dimensional double --------------------------------------------------

# letters in normal order; s, sig, c are bosonic, w, om fermionic
_DSW_LETTERS = ("s", "sig", "c", "w", "om")
_DSW_RANK = {x: r for r, x in enumerate(_DSW_LETTERS)}
_DSW_BOSONS = frozenset(("s", "sig", "c"))


def _dsw_normalize(word: tuple[str, ...]) -> dict[tuple[int, ...], int]:
    """Rewrite a word in the generators to a sum of normal-form monomials.

    Normal form: letters in the fixed order with exponents 0/1.  Rules:
    equal bosons square to 1 except c² = s·sig; fermions square to zero;
    bosons commute with each other and anticommute with fermions;
    om·w = w·om − s + sig.
    """
    out: dict[tuple[int, ...], int] = {}
    stack: list[tuple[list[str], int]] = [(list(word), 1)]
    while stack:
        w, coeff = stack.pop()
        pos = 0
        dead = False
        while pos < len(w) - 1:
            x, y = w[pos], w[pos + 1]
            if x == y:
                if x in ("w", "om"):
                    dead = True
                    break
                if x == "c":
                    w[pos : pos + 2] = ["s", "sig"]
                else:
                    del w[pos : pos + 2]
                pos = max(pos - 1, 0)
                continue
            if _DSW_RANK[y] < _DSW_RANK[x]:
                if x == "om" and y == "w":
                    stack.append((w[:pos] + ["s"] + w[pos + 2 :], -coeff))
                    stack.append((w[:pos] + ["sig"] + w[pos + 2 :], coeff))
                    w[pos : pos + 2] = ["w", "om"]
                    # the swapped word keeps the current coefficient
                    pos = max(pos - 1, 0)
                    continue
                w[pos], w[pos + 1] = y, x
                if not (x in _DSW_BOSONS and y in _DSW_BOSONS):
                    coeff = -coeff
                pos = max(pos - 1, 0)
                continue
            pos += 1
        if dead:
            continue
        bits = tuple(1 if letter in w else 0 for letter in _DSW_LETTERS)
        out[bits] = out.get(bits, 0) + coeff
        if out[bits] == 0:
            del out[bits]
    return out


def _dsw_label(bits: tuple[int, ...]) -> str:
    parts = [letter for letter, b in zip(_DSW_LETTERS, bits) if b]
    return "*".join(parts) if parts else "1"


def _dsw_letters(bits: tuple[int, ...]) -> tuple[str, ...]:
    return tuple(letter for letter, b in zip(_DSW_LETTERS, bits) if b)


@lru_cache(maxsize=None)
def _dsw_parts() -> tuple[StructureAlgebra, HopfData, TensorElement, Vector, Vector]:
    monomials = list(itertools.product((0, 1), repeat=5))
    index = {bits: i + 1 for i, bits in enumerate(monomials)}
    labels = [_dsw_label(bits) for bits in monomials]
    mul: dict[tuple[int, int], Vector] = {}
    for b1 in monomials:
        for b2 in monomials:
            normal = _dsw_normalize(_dsw_letters(b1) + _dsw_letters(b2))
            mul[(index[b1], index[b2])] = {
                index[bits]: Scalar(c) for bits, c in normal.items()
            }
    alg = StructureAlgebra("double_sweedler", "Q", labels, {index[(0, 0, 0, 0, 0)]: ONE}, mul=mul)

    def vec(expr: dict[tuple[int, ...], Scalar]) -> Vector:
        return {index[bits]: c for bits, c in expr.items() if c}

    def elem2(expr: dict[tuple[tuple[int, ...], tuple[int, ...]], Scalar]) -> TensorElement:
        return TensorElement(
            alg, 2, {(index[a], index[b]): c for (a, b), c in expr.items() if c}
        )

    one_b = (0, 0, 0, 0, 0)
    s_b = (1, 0, 0, 0, 0)
    sig_b = (0, 1, 0, 0, 0)
    c_b = (0, 0, 1, 0, 0)
    w_b = (0, 0, 0, 1, 0)
    om_b = (0, 0, 0, 0, 1)
    sw_b = (1, 0, 0, 1, 0)
    sigom_b = (0, 1, 0, 0, 1)
    csig_s_b = (1, 1, 1, 0, 0)  # c·s·sig, the inverse of c

    # Generator images; everything else follows by multiplicativity.  The
    # duality identification is pinned by the R-matrix below: of the two
    # mirror-image comultiplication conventions on the fermionic generators,
    # only this one makes that R quasitriangular (the other leaves the exact
    # defect 2·w⊗om in (S⊗Id)(R)·R).
    gen_comul = {
        s_b: elem2({(s_b, s_b): ONE}),
        sig_b: elem2({(sig_b, sig_b): ONE}),
        c_b: elem2({(c_b, c_b): ONE}),
        w_b: elem2({(one_b, w_b): ONE, (w_b, s_b): ONE}),
        om_b: elem2({(sig_b, om_b): ONE, (om_b, one_b): ONE}),
    }
    gen_counit = {s_b: ONE, sig_b: ONE, c_b: ONE, w_b: Scalar(0), om_b: Scalar(0)}
    gen_antipode = {
        s_b: vec({s_b: ONE}),
        sig_b: vec({sig_b: ONE}),
        c_b: vec({csig_s_b: ONE}),
        w_b: vec({sw_b: ONE}),
        om_b: vec({sigom_b: MINUS_ONE}),
    }

    comul_images: list[TensorElement] = []
    counit_row: Vector = {}
    antipode_cols: list[Vector] = []
    for bits in monomials:
        letters = _dsw_letters(bits)
        dx = TensorElement.unit(alg, 2)
        eps = ONE
        sx: Vector = dict(alg.unit)
        for letter in letters:
            gbits = tuple(1 if g == letter else 0 for g in _DSW_LETTERS)
            dx = dx.mul(gen_comul[gbits])
            eps = eps * gen_counit[gbits]
            # antipode is an anti-homomorphism: multiply on the left
            sx = alg.vec_mul(gen_antipode[gbits], sx)
        comul_images.append(dx)
        if eps:
            counit_row[index[bits]] = eps
        antipode_cols.append(sx)
    hopf = HopfData(alg, comul_images, counit_row, antipode_cols)

    R = elem2(
        {
            (one_b, one_b): HALF,
            (one_b, sig_b): HALF,
            (s_b, one_b): HALF,
            (s_b, sig_b): -HALF,
            (w_b, om_b): HALF,
            (w_b, sigom_b): HALF,
            (sw_b, om_b): HALF,
            (sw_b, sigom_b): -HALF,
        }
    )
    kappa = vec({c_b: ONE})
    kappa_inv = vec({csig_s_b: ONE})
    return alg, hopf, R, kappa, kappa_inv


@lru_cache(maxsize=None)
def double_sweedler() -> RibbonDerived:
    """The 32-dimensional double of the 4-dimensional algebra, unit-traced nowhere."""
    alg, hopf, R, kappa, kappa_inv = _dsw_parts()
    return derive_ribbon(hopf, R, kappa, kappa_inv, name="double_sweedler")


# -- 2x2 matrices ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _m2_algebra() -> StructureAlgebra:
    labels = ["E11", "E12", "E21", "E22"]
    pos = {(a, b): 2 * (a - 1) + b for a in (1, 2) for b in (1, 2)}
    mul: dict[tuple[int, int], Vector] = {}
    for (a, b), i in pos.items():
        for (c, d), j in pos.items():
            mul[(i, j)] = {pos[(a, d)]: ONE} if b == c else {}
    return StructureAlgebra("matrix2", "Q(i)", labels, {pos[(1, 1)]: ONE, pos[(2, 2)]: ONE}, mul=mul)


def _m2_r(lam: Scalar) -> TensorElement:
    alg = _m2_algebra()
    e11, e12, e21, e22 = 1, 2, 3, 4
    return TensorElement(
        alg,
        2,
        {
            (e11, e11): ONE,
            (e11, e22): lam,
            (e22, e11): -lam.inverse(),
            (e22, e22): ONE,
            (e12, e21): Scalar(2),
        },
    )


def matrix2(lam: Scalar | int | str = 1) -> XCStructure:
    """The one-parameter matrix family: R_lam with kappa = i·diag(1, −1).

    ``lam`` must be a nonzero Gaussian rational; the inverse R-matrix is
    R at the inverse parameter (verified two-sidedly at construction).
    Matrix-traced; carries no comultiplication.
    """
    lam = as_scalar(lam)
    if not lam:
        raise XCError("matrix2 parameter must be nonzero")
    alg = _m2_algebra()
    e11, e22 = 1, 4
    kappa: Vector = {e11: I, e22: -I}
    kappa_inv: Vector = {e11: -I, e22: I}
    trace: Vector = {e11: ONE, e22: ONE}
    suffix = "" if lam == ONE else f"[lam={lam}]"
    return XCStructure(
        alg,
        _m2_r(lam),
        _m2_r(lam.inverse()),
        kappa,
        kappa_inv,
        trace=trace,
        name=f"matrix2{suffix}",
    )


# -- dispatcher -------------------------------------------------------------------


def builtin_names() -> list[str]:
    return ["trivial", "sweedler", "double_sweedler", "matrix2"]


def builtin(name: str, **params) -> XCStructure:
    """Look up a builtin structure by name.

    ``sweedler`` takes optional ``tr1`` (attaching the trace); ``matrix2``
    takes optional ``lam`` (default 1).  Unknown names and unknown or
    malformed parameters raise XCError.
    """
    if name == "trivial":
        if params:
            raise XCError("trivial takes no parameters")
        return trivial().xc
    if name == "sweedler":
        extra = set(params) - {"tr1"}
        if extra:
            raise XCError(f"unknown sweedler parameters: {sorted(extra)}")
        return sweedler(params.get("tr1")).xc
    if name == "double_sweedler":
        if params:
            raise XCError("double_sweedler takes no parameters")
        return double_sweedler().xc
    if name == "matrix2":
        extra = set(params) - {"lam"}
        if extra:
            raise XCError(f"unknown matrix2 parameters: {sorted(extra)}")
        return matrix2(params.get("lam", 1))
    raise XCError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
