"""Quasihomogeneous boundary singularities: weights, spectrum, residue and
monodromy eigenvalues, and exact normal-form coordinates of volume forms.

A germ f is quasihomogeneous when positive rational weights w give every
monomial of f weighted degree 1; equivalently the Euler identity
sum_i w_i x_i df/dx_i = f holds, which places f inside its own boundary
Jacobian ideal J = (x df/dx, df/dy_1, ..., df/dy_n).

Over a monomial basis {e_m} of the quotient Q = O/J, the top-degree form
classes omega_m = e_m dx^dy^n form a basis of the module of volume forms
modulo df^d(forms vanishing on the boundary).  The logarithmic derivative
t d/dt acts diagonally on them with eigenvalue alpha(m) - 1, where

    alpha(m) = sum_i w_i (m_i + 1),

so the spectrum {alpha(m)}, the residue diagonal {alpha(m) - 1} and the
monodromy eigenvalues {exp(-2 pi i alpha(m))} are all exact rationals (or
roots of unity) and are computed here without any floating point.

The reduction of an arbitrary class g dx^dy^n onto the basis uses, per
weighted-homogeneous part of degree d, the exact rewrite

    r * omega == (1/s) f (div V) * omega   with  s = d + |w| - 1,

valid whenever r = V(f) for a weighted-homogeneous vector field
V = a_0 x d/dx + sum a_i d/dy_i tangent to the boundary.  The rewrite is
the Cartan identity df ^ d(i_E i_V omega) = s*r*omega - f(div V)*omega for
the Euler field E (the contracted (n-1)-form vanishes on the boundary, so
its image is zero in the quotient); it is exercised against the
eigenvalue relation and confluence checks in the test suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .boundary import BoundarySingularity, NonIsolatedError, jacobian_ideal, jacobian_ideal_boundary
from .polyring import (
    Monomial,
    Polynomial,
    Rat,
    check_weights,
    monomial_divides,
    monomial_key,
    quasihomogeneous_components,
    weighted_degree,
)
from .standard_basis import (
    INFINITE,
    LocalOrder,
    leading_term,
    quotient_basis,
    standard_basis,
)


class NotQuasihomogeneousError(ValueError):
    """The operation requires a quasihomogeneous germ."""


class DegenerateDegreeError(ArithmeticError):
    """The rewrite step hit s = d + |w| - 1 = 0 (not reachable for germs
    with positive weights, but checked loudly)."""


# -- weights -------------------------------------------------------------------


def detect_weights(f: Polynomial) -> tuple[Fraction, ...]:
    """Positive rational weights giving every monomial of f degree 1.

    Solves the linear system {sum_i w_i m_i = 1 for m in support(f)}.
    Raises :class:`NotQuasihomogeneousError` when the system is
    inconsistent, underdetermined, or has a non-positive solution.
    """
    if f.is_zero():
        raise NotQuasihomogeneousError("zero germ has no weights")
    if f.constant_term() != 0:
        raise NotQuasihomogeneousError("germ must vanish at the origin")
    arity = f.context.arity
    rows = [[Fraction(e) for e in m] + [Fraction(1)] for m in f.support()]
    # Gaussian elimination on the augmented matrix
    pivot_cols: list[int] = []
    r = 0
    for col in range(arity):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][arity] != 0:
            raise NotQuasihomogeneousError(
                "not quasihomogeneous in these coordinates (no weight solution)"
            )
    if len(pivot_cols) < arity:
        raise NotQuasihomogeneousError(
            "weights are underdetermined by the support of f"
        )
    w = [Fraction(0)] * arity
    for i, col in enumerate(pivot_cols):
        w[col] = rows[i][arity]
    if any(x <= 0 for x in w):
        raise NotQuasihomogeneousError(
            f"weight solution {tuple(map(str, w))} is not positive"
        )
    return tuple(w)


def euler_check(f: Polynomial, weights: Sequence[Rat]) -> bool:
    """Exact verification of the Euler identity
    sum_i w_i x_i df/dx_i == f."""
    w = check_weights(weights, f.context.arity)
    acc = Polynomial.zero(f.context)
    for i in range(f.context.arity):
        acc = acc + (Polynomial.variable(f.context, i) * f.partial_derivative(i)).scale(w[i])
    return acc == f


# -- spectrum and monodromy ------------------------------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    monomial: Monomial
    alpha: Fraction


@dataclass(frozen=True)
class Spectrum:
    """Exact spectrum {alpha(m)} over a monomial basis of the local algebra,
    sorted by alpha and then by monomial."""

    entries: tuple[SpectrumEntry, ...]
    weights: tuple[Fraction, ...]
    names: tuple[str, ...]

    def __post_init__(self):
        keys = [(e.alpha, monomial_key(e.monomial)) for e in self.entries]
        if keys != sorted(keys):
            raise ValueError("spectrum entries must be sorted")
        if any(e.alpha <= 0 for e in self.entries):
            raise ValueError("spectrum values are positive for positive weights")

    def __len__(self) -> int:
        return len(self.entries)

    def alphas(self) -> list[Fraction]:
        return [e.alpha for e in self.entries]

    def residue_diagonal(self) -> list[Fraction]:
        return [e.alpha - 1 for e in self.entries]

    def rotations(self) -> list[Fraction]:
        return [e.alpha % 1 for e in self.entries]


@dataclass(frozen=True)
class RootOfUnity:
    """exp(-2 pi i * rotation) for an exact rotation in [0, 1)."""

    rotation: Fraction

    def __post_init__(self):
        if not 0 <= self.rotation < 1:
            raise ValueError("rotation must lie in [0, 1)")

    def __str__(self) -> str:
        if self.rotation == 0:
            return "1"
        if self.rotation == Fraction(1, 2):
            return "-1"
        return f"e^(-2pi*i*{self.rotation})"


@dataclass(frozen=True)
class ResidueMatrix:
    """Diagonal of the (semisimple) residue operator, indexed like the
    spectrum: entries alpha(m) - 1."""

    diagonal: tuple[Fraction, ...]

    @classmethod
    def from_spectrum(cls, spec: Spectrum) -> "ResidueMatrix":
        return cls(tuple(spec.residue_diagonal()))


def _alpha(m: Monomial, w: tuple[Fraction, ...]) -> Fraction:
    return sum((wi * (e + 1) for wi, e in zip(w, m)), Fraction(0))


def _staircase_spectrum(
    gens: list[Polynomial], w: tuple[Fraction, ...], names: tuple[str, ...]
) -> Spectrum:
    live = [g for g in gens if not g.is_zero()]
    if not live:
        raise NonIsolatedError("zero Jacobian ideal")
    sb = standard_basis(live, LocalOrder(w))
    alg = quotient_basis(sb)
    if alg.dimension == INFINITE:
        raise NonIsolatedError("staircase complement is infinite")
    entries = sorted(
        (SpectrumEntry(m, _alpha(m, w)) for m in alg.basis_monomials),
        key=lambda e: (e.alpha, monomial_key(e.monomial)),
    )
    return Spectrum(tuple(entries), w, names)


def spectrum(bs: BoundarySingularity, weights: Sequence[Rat]) -> Spectrum:
    """Spectrum of the boundary singularity over the staircase basis of
    its boundary Jacobian quotient."""
    w = check_weights(weights, bs.ctx.arity)
    if not euler_check(bs.f, w):
        raise NotQuasihomogeneousError(
            "requires quasihomogeneous f (Euler identity fails for these weights)"
        )
    if bs.mu_boundary == INFINITE:
        raise NonIsolatedError("boundary Milnor number is infinite")
    spec = _staircase_spectrum(jacobian_ideal_boundary(bs.f), w, bs.ctx.names)
    assert len(spec) == bs.mu_boundary
    return spec


def ordinary_spectrum(g: Polynomial, weights: Sequence[Rat]) -> Spectrum:
    """Spectrum of an ordinary (no-boundary) isolated quasihomogeneous
    germ, over the staircase of its full Jacobian ideal."""
    if g.context.arity < 1:
        raise ValueError("ordinary spectrum needs at least one variable")
    w = check_weights(weights, g.context.arity)
    if not euler_check(g, w):
        raise NotQuasihomogeneousError(
            "requires quasihomogeneous germ (Euler identity fails)"
        )
    return _staircase_spectrum(jacobian_ideal(g), w, g.context.names)


def spectrum_splitting_check(
    bs: BoundarySingularity, weights: Sequence[Rat]
) -> bool:
    """Multiset identity spectrum(f,H) = spectrum(f) + (spectrum(f|H) + 1).

    The +1 shift is where the restriction's classes land after wedging
    with df: a class of weighted degree e on the boundary maps to one of
    degree e + (1 - w_x), whose boundary alpha is e + |w'| + 1 with w' the
    boundary weights.
    """
    w = check_weights(weights, bs.ctx.arity)
    rel = Counter(spectrum(bs, w).alphas())
    amb = Counter(ordinary_spectrum(bs.f, w).alphas())
    b = bs.ctx.boundary_index
    w_rest = w[:b] + w[b + 1 :]
    if bs.restriction.is_zero() or not w_rest:
        raise NotQuasihomogeneousError("splitting needs a boundary restriction in >= 1 variable")
    res = Counter(a + 1 for a in ordinary_spectrum(bs.restriction, w_rest).alphas())
    return rel == amb + res


def monodromy_eigenvalues(spec: Spectrum) -> list[RootOfUnity]:
    """Monodromy eigenvalues exp(-2 pi i alpha(m)) as exact rotations."""
    return [RootOfUnity(r) for r in sorted(spec.rotations())]


def residue_matrix(spec: Spectrum) -> ResidueMatrix:
    return ResidueMatrix.from_spectrum(spec)


# -- Brieskorn-module normal forms ----------------------------------------------


class BrieskornClass:
    """A volume-form class written over the basis {omega_m}: coordinate i
    carries an exact polynomial in t (power -1 flags a first-order pole,
    produced only by the connection operator)."""

    __slots__ = ("coords",)

    def __init__(self, coords: dict[int, dict[int, Fraction]]):
        clean: dict[int, dict[int, Fraction]] = {}
        for i, powers in coords.items():
            entry = {}
            for j, c in powers.items():
                if j < -1:
                    raise ValueError("poles of order > 1 are not representable")
                c = Fraction(c)
                if c != 0:
                    entry[j] = c
            if entry:
                clean[i] = entry
        self.coords = clean

    @classmethod
    def zero(cls) -> "BrieskornClass":
        return cls({})

    @classmethod
    def basis(cls, i: int) -> "BrieskornClass":
        return cls({i: {0: Fraction(1)}})

    @property
    def has_pole(self) -> bool:
        return any(-1 in powers for powers in self.coords.values())

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "BrieskornClass") -> "BrieskornClass":
        out = {i: dict(p) for i, p in self.coords.items()}
        for i, powers in other.coords.items():
            tgt = out.setdefault(i, {})
            for j, c in powers.items():
                tgt[j] = tgt.get(j, Fraction(0)) + c
        return BrieskornClass(out)

    def scale(self, c: Rat) -> "BrieskornClass":
        c = Fraction(c)
        return BrieskornClass(
            {i: {j: c * v for j, v in p.items()} for i, p in self.coords.items()}
        )

    def mul_t(self) -> "BrieskornClass":
        """Multiply by t (module structure: t acts as multiplication by f)."""
        return BrieskornClass(
            {i: {j + 1: v for j, v in p.items()} for i, p in self.coords.items()}
        )

    def coordinate(self, i: int) -> dict[int, Fraction]:
        return dict(self.coords.get(i, {}))

    def __eq__(self, other) -> bool:
        return isinstance(other, BrieskornClass) and self.coords == other.coords

    def __repr__(self) -> str:
        return f"BrieskornClass({self.coords})"


def format_t_polynomial(powers: dict[int, Fraction]) -> str:
    """Render {power: coeff} as an exact polynomial in t (t^-1 allowed)."""
    if not powers:
        return "0"
    pieces = []
    for j in sorted(powers):
        c = powers[j]
        if j == 0:
            body = str(abs(c))
        else:
            tpart = "t" if j == 1 else f"t^{j}"
            body = tpart if abs(c) == 1 else f"{abs(c)}*{tpart}"
        pieces.append(("-" if c < 0 else "+", body))
    sign, first = pieces[0]
    text = ("-" if sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


class _GradedStructure:
    """Shared machinery for one quasihomogeneous boundary singularity:
    weighted standard basis, staircase indexed in spectrum order, and
    exact decomposition of homogeneous parts into staircase + Jacobian
    cofactors (cofactors taken against the original Jacobian generators)."""

    def __init__(
        self,
        bs: BoundarySingularity,
        weights: Sequence[Rat],
        generator_order: Sequence[int] | None = None,
    ):
        self.w = check_weights(weights, bs.ctx.arity)
        if not euler_check(bs.f, self.w):
            raise NotQuasihomogeneousError(
                "requires quasihomogeneous f (Euler identity fails for these weights)"
            )
        self.ctx = bs.ctx
        self.f = bs.f
        self.order = LocalOrder(self.w)
        self.jac = jacobian_ideal_boundary(bs.f)
        n = len(self.jac)
        perm = list(generator_order) if generator_order is not None else list(range(n))
        if sorted(perm) != list(range(n)):
            raise ValueError("generator_order must be a permutation")
        self.perm = perm
        used = [self.jac[p] for p in perm]
        self.sb = standard_basis(used, self.order, track_representations=True)
        alg = quotient_basis(self.sb)
        if alg.dimension == INFINITE:
            raise NonIsolatedError("staircase complement is infinite")
        entries = sorted(
            ((_alpha(m, self.w), m) for m in alg.basis_monomials),
            key=lambda am: (am[0], monomial_key(am[1])),
        )
        self.basis: list[Monomial] = [m for _, m in entries]
        self.alphas: list[Fraction] = [a for a, _ in entries]
        self.slot = {m: i for i, (_, m) in enumerate(entries)}
        self.staircase = set(self.basis)

        # homogeneous representations of the basis elements in the
        # *canonical* Jacobian generators: sb gen i == sum_j reps[i][j]*jac[j]
        gen_deg = [
            None if g.is_zero() else weighted_degree(g, self.w) for g in self.jac
        ]
        self.reps: list[list[Polynomial]] = []
        assert self.sb.representations is not None
        for gi, rep in zip(self.sb.generators, self.sb.representations):
            d_g = weighted_degree(gi, self.w)
            assert d_g is not None, "standard basis element is not homogeneous"
            row = [Polynomial.zero(self.ctx) for _ in range(n)]
            for used_idx, cof in enumerate(rep):
                j = perm[used_idx]
                if cof.is_zero() or gen_deg[j] is None:
                    continue
                target = d_g - gen_deg[j]
                keep = {
                    m: c
                    for m, c in cof.terms.items()
                    if sum((wi * e for wi, e in zip(self.w, m)), Fraction(0)) == target
                }
                row[j] = Polynomial(self.ctx, keep)
            check = Polynomial.zero(self.ctx)
            for j in range(n):
                check = check + row[j] * self.jac[j]
            assert check == gi, "homogenized representation lost exactness"
            self.reps.append(row)

    def alpha_of(self, m: Monomial) -> Fraction:
        return _alpha(m, self.w)

    def graded_decompose(
        self, part: Polynomial
    ) -> tuple[dict[Monomial, Fraction], list[Polynomial]]:
        """part == sum(rem) + sum_j cof[j]*jac[j], with rem supported on the
        staircase and every cof[j] weighted-homogeneous.  Plain division
        within a fixed weighted degree always terminates."""
        rem: dict[Monomial, Fraction] = {}
        cof_sb = [Polynomial.zero(self.ctx) for _ in self.sb.generators]
        work = part
        while not work.is_zero():
            lm, lc = leading_term(work, self.order)
            for k, g in enumerate(self.sb.generators):
                lm_g, lc_g = leading_term(g, self.order)
                if monomial_divides(lm_g, lm):
                    factor = Polynomial.monomial(
                        self.ctx, tuple(a - b for a, b in zip(lm, lm_g)), lc / lc_g
                    )
                    work = work - factor * g
                    cof_sb[k] = cof_sb[k] + factor
                    break
            else:
                assert lm in self.staircase, "non-staircase monomial escaped division"
                rem[lm] = rem.get(lm, Fraction(0)) + lc
                work = work - Polynomial.monomial(self.ctx, lm, lc)
        cof = [Polynomial.zero(self.ctx) for _ in self.jac]
        for k, a in enumerate(cof_sb):
            if a.is_zero():
                continue
            for j in range(len(self.jac)):
                if not self.reps[k][j].is_zero():
                    cof[j] = cof[j] + a * self.reps[k][j]
        rem = {m: c for m, c in rem.items() if c != 0}
        recomposed = Polynomial(self.ctx, rem)
        for j, g in enumerate(self.jac):
            recomposed = recomposed + cof[j] * g
        assert recomposed == part, "graded decomposition lost exactness"
        return rem, cof

    def spectrum(self) -> Spectrum:
        return Spectrum(
            tuple(SpectrumEntry(m, a) for m, a in zip(self.basis, self.alphas)),
            self.w,
            self.ctx.names,
        )


def quotient_coordinates(
    g: Polynomial, bs: BoundarySingularity, weights: Sequence[Rat]
) -> dict[Monomial, Fraction]:
    """Coordinates of g in the staircase basis of Q = O/J_{f,H} (the exact
    residue of g modulo the boundary Jacobian ideal)."""
    st = _GradedStructure(bs, weights)
    out: dict[Monomial, Fraction] = {}
    if g.is_zero():
        return out
    for _, part in quasihomogeneous_components(g, st.w):
        rem, _ = st.graded_decompose(part)
        for m, c in rem.items():
            out[m] = out.get(m, Fraction(0)) + c
    return {m: c for m, c in out.items() if c != 0}


def brieskorn_reduce(
    g: Polynomial,
    bs: BoundarySingularity,
    weights: Sequence[Rat],
    generator_order: Sequence[int] | None = None,
) -> BrieskornClass:
    """Exact coordinates c_i(t) with g dx^dy^n == sum_i c_i(f) omega_i in
    the volume-form module.

    Per weighted-homogeneous part of degree d: split off the staircase
    residue, write the Jacobian part as V(f) for a boundary-tangent
    homogeneous vector field V built from the cofactors, and trade it for
    t * (div V)/s with s = d + |w| - 1, recursing on the strictly smaller
    degree d - 1.
    """
    st = _GradedStructure(bs, weights, generator_order)
    total_w = sum(st.w, Fraction(0))
    b = st.ctx.boundary_index
    ys = [i for i in range(st.ctx.arity) if i != b]
    x = Polynomial.variable(st.ctx, b)

    coords: dict[int, dict[int, Fraction]] = {}
    queue: list[tuple[int, Polynomial]] = [(0, g)]
    while queue:
        tpow, h = queue.pop()
        if h.is_zero():
            continue
        for d, part in quasihomogeneous_components(h, st.w):
            rem, cof = st.graded_decompose(part)
            for m, c in rem.items():
                slot = coords.setdefault(st.slot[m], {})
                slot[tpow] = slot.get(tpow, Fraction(0)) + c
            rem_poly = Polynomial(st.ctx, rem)
            if part == rem_poly:
                continue
            s = d + total_w - 1
            if s == 0:
                raise DegenerateDegreeError(
                    f"rewrite degree s = 0 at weighted degree {d}"
                )
            div = (cof[0] * x).partial_derivative(b)
            for k, yi in enumerate(ys):
                div = div + cof[1 + k].partial_derivative(yi)
            if not div.is_zero():
                queue.append((tpow + 1, div.scale(1 / s)))
    return BrieskornClass(coords)


def gauss_manin_apply(cls: BrieskornClass, spec: Spectrum) -> BrieskornClass:
    """Apply the connection operator coordinatewise:
    D(t^j omega_m) = (j + alpha(m) - 1) t^{j-1} omega_m.

    Input classes must be pole-free; a j = 0 coordinate with alpha != 1
    produces the explicit first-order pole flag t^-1.
    """
    out: dict[int, dict[int, Fraction]] = {}
    for i, powers in cls.coords.items():
        alpha = spec.entries[i].alpha
        for j, c in powers.items():
            if j < 0:
                raise ValueError("class already has a pole")
            factor = j + alpha - 1
            if factor == 0:
                continue
            slot = out.setdefault(i, {})
            slot[j - 1] = slot.get(j - 1, Fraction(0)) + c * factor
    return BrieskornClass(out)
