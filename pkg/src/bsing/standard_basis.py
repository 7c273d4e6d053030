"""Standard bases of ideals in the local ring at the origin.

The ring is the localization of the polynomial ring at the maximal ideal of
the origin; computations use a local monomial ordering (1 is the largest
monomial) together with Mora's ecart-driven division, which terminates
where naive division would loop.  The division certificate is exact:

    unit * p = sum(cofactor_i * G_i) + remainder

with ``unit`` a polynomial of nonzero constant term.

Division is a weak normal form: the guarantee is that the *leading*
monomial of the remainder lies outside the leading ideal of the divisors.
A remainder all of whose terms avoid the leading ideal does not exist with
polynomial data in general (for G = {x + x^2} no polynomial unit turns the
tail of 1 + x into staircase monomials), so full tail reduction is only
offered by the graded engine in :mod:`bsing.quasihomog`.  Weak normal
forms decide ideal membership against a standard basis, which is all the
Milnor-number layer needs.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import (
    Monomial,
    Polynomial,
    check_weights,
    monomial_div,
    monomial_divides,
    monomial_key,
    monomial_lcm,
    monomial_mul,
)

INFINITE = math.inf


@dataclass(frozen=True)
class LocalOrder:
    """Negative-degree reverse-lexicographic order, optionally weighted.

    Smaller (weighted) total degree means a *larger* monomial, so 1 is the
    largest monomial; ties are broken reverse-lexicographically with
    earlier variables larger (for all-1 weights, LT(x + y) = x).
    """

    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.weights is not None:
            w = tuple(Fraction(x) for x in self.weights)
            if any(x <= 0 for x in w):
                raise ValueError("order weights must be positive")
            object.__setattr__(self, "weights", w)

    def for_arity(self, arity: int) -> tuple[Fraction, ...]:
        if self.weights is None:
            return (Fraction(1),) * arity
        return check_weights(self.weights, arity)

    def key(self, m: Monomial):
        """Sort key; the largest monomial has the smallest key."""
        return (self.degree(m), tuple(reversed(m)))

    def degree(self, m: Monomial) -> Fraction:
        if self.weights is None:
            return Fraction(sum(m))
        return sum((w * e for w, e in zip(self.weights, m)), Fraction(0))


def leading_term(p: Polynomial, order: LocalOrder) -> tuple[Monomial, Fraction]:
    if p.is_zero():
        raise ValueError("zero polynomial has no leading term")
    m = min(p._terms, key=order.key)
    return m, p._terms[m]


def ecart(p: Polynomial, order: LocalOrder) -> Fraction:
    """Spread between the largest term degree and the leading-term degree."""
    lm, _ = leading_term(p, order)
    top = max(order.degree(m) for m in p._terms)
    return top - order.degree(lm)


def _truncate(p: Polynomial, cap: int) -> Polynomial:
    """Drop terms of total degree >= cap (sound when working modulo the
    cap-degree power of the maximal ideal)."""
    return Polynomial(
        p.context, {m: c for m, c in p._terms.items() if sum(m) < cap}
    )


def _mora_core(
    p: Polynomial,
    gens: Sequence[Polynomial],
    order: LocalOrder,
    certificate: bool,
    degree_cap: int | None = None,
) -> tuple[Polynomial, list[Polynomial] | None, Polynomial | None]:
    """Shared Mora division loop.  With ``certificate`` the exact identity
    unit*p == sum(cofactors[i]*gens[i]) + remainder is tracked; without
    it the remainder is only guaranteed up to a nonzero rational multiple
    (intermediate results are rescaled to keep coefficients small), which
    is what the Buchberger loop needs.  ``degree_cap`` truncates tails, a
    sound shortcut only when the divisor set spans every monomial of the
    cap degree (certificate-free use)."""
    ctx = p.context
    one = Polynomial.constant(ctx, 1)
    zero = Polynomial.zero(ctx)

    # a divisor with nonzero constant term is a unit of the local ring:
    # (g_i/c) * p == (p/c) * g_i + 0 is an exact certificate, and naive
    # division by such a divisor would wander for a very long time
    for i, g in enumerate(gens):
        c0 = g.constant_term()
        if c0 != 0:
            if not certificate:
                return Polynomial.zero(ctx), None, None
            cofs = [zero] * len(gens)
            cofs[i] = p.scale(1 / c0)
            return Polynomial.zero(ctx), cofs, g.scale(1 / c0)

    h = p
    if degree_cap is not None:
        h = _truncate(h, degree_cap)
    # every tracked value v satisfies v == rep_u * p - sum(rep_c[i] * gens[i])
    h_u = one if certificate else None
    h_c = [zero] * len(gens) if certificate else None
    reducers: list[tuple] = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        lm, lc = leading_term(g, order)
        if certificate:
            cof = [zero] * len(gens)
            cof[i] = Polynomial.constant(ctx, -1)
        else:
            cof = None
        reducers.append((g, lm, lc, ecart(g, order), zero, cof, i))

    while not h.is_zero():
        lm_h, lc_h = leading_term(h, order)
        usable = [r for r in reducers if monomial_divides(r[1], lm_h)]
        if not usable:
            break
        e_h = ecart(h, order)
        t = min(usable, key=lambda r: (r[3], 1 if r[6] < 0 else 0, abs(r[6])))
        if t[3] > e_h:
            reducers.append(
                (h, lm_h, lc_h, e_h, h_u, list(h_c) if certificate else None,
                 -1 - len(reducers))
            )
        g, lm_g, lc_g, _, g_u, g_c, _ = t
        factor = Polynomial.monomial(ctx, monomial_div(lm_h, lm_g), lc_h / lc_g)
        h = h - factor * g
        if certificate:
            h_u = h_u - factor * g_u
            h_c = [a - factor * b for a, b in zip(h_c, g_c)]
        elif not h.is_zero():
            if degree_cap is not None:
                h = _truncate(h, degree_cap)
            if not h.is_zero():
                scale = _primitive_scale(h, order)
                if scale != 1:
                    h = h.scale(scale)

    # with certificate: v == u*p - sum(c_i g_i) throughout, so at the end
    # h_u * p == sum(h_c[i] * gens[i]) + h
    return h, h_c, h_u


def mora_normal_form(
    p: Polynomial, divisors: Sequence[Polynomial], order: LocalOrder | None = None
) -> tuple[Polynomial, list[Polynomial], Polynomial]:
    """Mora weak normal form of ``p`` against ``divisors``.

    Returns ``(remainder, cofactors, unit)`` with the exact identity
    ``unit * p == sum(cofactors[i] * divisors[i]) + remainder`` and
    ``unit(0) != 0``.  The remainder is zero or has leading monomial
    outside the leading ideal of the divisors; against a standard basis
    this decides membership in the localized ideal.

    Selection rule: among dividing reducers pick minimal ecart (ties:
    original divisors first, then by index).  When the chosen reducer has
    larger ecart than the current partial result, the partial result
    itself joins the reducer set; that is what forces termination in the
    local ring.
    """
    order = order or LocalOrder()
    if not list(divisors):
        raise ValueError("divisor list must be nonempty")
    r, cofs, unit = _mora_core(p, list(divisors), order, certificate=True)
    return r, cofs, unit


def _spoly(
    f: Polynomial, g: Polynomial, order: LocalOrder
) -> Polynomial:
    lm_f, lc_f = leading_term(f, order)
    lm_g, lc_g = leading_term(g, order)
    lcm = monomial_lcm(lm_f, lm_g)
    a = f.mul_monomial(monomial_div(lcm, lm_f), 1 / lc_f)
    b = g.mul_monomial(monomial_div(lcm, lm_g), 1 / lc_g)
    return a - b


def _primitive_scale(p: Polynomial, order: LocalOrder) -> Fraction:
    """Factor lambda such that lambda*p has coprime integer coefficients
    and positive leading coefficient (keeps Buchberger arithmetic small)."""
    coeffs = list(p._terms.values())
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    num_gcd = 0
    for c in coeffs:
        num_gcd = math.gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
    scale = Fraction(den_lcm, num_gcd)
    if leading_term(p, order)[1] < 0:
        scale = -scale
    return scale


@dataclass(frozen=True)
class StandardBasis:
    """Standard basis of a local ideal with its leading-term staircase.

    ``representations``, when tracked, expresses each basis element in the
    original generators: generators[i] == sum_j representations[i][j] * inputs[j].
    """

    generators: tuple[Polynomial, ...]
    order: LocalOrder
    leading_monomials: tuple[Monomial, ...]
    inputs: tuple[Polynomial, ...] = ()
    representations: tuple[tuple[Polynomial, ...], ...] | None = None

    def reduce(self, p: Polynomial) -> tuple[Polynomial, list[Polynomial], Polynomial]:
        return mora_normal_form(p, self.generators, self.order)

    def contains(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        r, _, _ = self.reduce(p)
        return r.is_zero()


def standard_basis(
    gens: Sequence[Polynomial],
    order: LocalOrder | None = None,
    track_representations: bool = False,
    degree_cap: int | None = None,
) -> StandardBasis:
    """Buchberger-Mora completion of ``gens`` to a standard basis.

    All S-polynomials of the result reduce to zero; the leading monomials
    are minimalized (none divides another).  The product and chain
    criteria prune the pair queue.

    ``degree_cap`` truncates all tails at the given total degree.  That is
    only sound when ``gens`` spans every monomial of the cap degree (see
    :func:`staircase_quotient`, which certifies such caps); it cannot be
    combined with representation tracking.
    """
    order = order or LocalOrder()
    if degree_cap is not None and track_representations:
        raise ValueError("degree_cap would corrupt tracked representations")
    inputs = tuple(gens)
    work = [g for g in gens if not g.is_zero()]
    if not work:
        raise ValueError("standard basis of the zero ideal is not supported here")
    ctx = work[0].context
    zero = Polynomial.zero(ctx)

    def unit_basis(rep: list[Polynomial] | None) -> StandardBasis:
        return StandardBasis(
            generators=(Polynomial.constant(ctx, 1),),
            order=order,
            leading_monomials=((0,) * ctx.arity,),
            inputs=inputs,
            representations=(tuple(rep),) if rep is not None else None,
        )

    def as_unit(p: Polynomial, rep: list[Polynomial] | None) -> StandardBasis | None:
        """The ideal is everything once an element with nonzero constant
        term shows up; {1} is then a standard basis.  With representation
        tracking this is only expressible when the element is a pure
        constant (true for homogeneous generators, the tracked use case)."""
        c0 = p.constant_term()
        if c0 == 0:
            return None
        if not track_representations:
            return unit_basis(None)
        if p.total_degree() == 0:
            return unit_basis([c.scale(1 / c0) for c in rep])
        return None

    basis: list[Polynomial] = []
    reps: list[list[Polynomial]] = []

    def push(p: Polynomial, rep: list[Polynomial] | None):
        scale = _primitive_scale(p, order)
        basis.append(p.scale(scale) if scale != 1 else p)
        if track_representations:
            reps.append([c.scale(scale) for c in rep] if scale != 1 else rep)

    for i, g in enumerate(inputs):
        if g.is_zero():
            continue
        rep = [zero] * len(inputs)
        rep[i] = Polynomial.constant(ctx, 1)
        shortcut = as_unit(g, rep)
        if shortcut is not None:
            return shortcut
        push(g, rep)

    lms = [leading_term(g, order)[0] for g in basis]

    def pair_key(i: int, j: int):
        return order.key(monomial_lcm(lms[i], lms[j]))

    queue = [
        (pair_key(i, j), i, j)
        for i in range(len(basis))
        for j in range(i + 1, len(basis))
    ]
    heapq.heapify(queue)
    done: set[frozenset[int]] = set()
    while queue:
        _, i, j = heapq.heappop(queue)
        done.add(frozenset((i, j)))
        lcm_ij = monomial_lcm(lms[i], lms[j])
        if monomial_mul(lms[i], lms[j]) == lcm_ij:
            continue  # product criterion
        # chain criterion: the pair is redundant once some third element
        # divides the lcm and both cross pairs were already handled
        if any(
            k != i
            and k != j
            and monomial_divides(lms[k], lcm_ij)
            and frozenset((i, k)) in done
            and frozenset((k, j)) in done
            for k in range(len(basis))
        ):
            continue
        sp = _spoly(basis[i], basis[j], order)
        if degree_cap is not None:
            sp = _truncate(sp, degree_cap)
        if sp.is_zero():
            continue
        r, cofs, unit = _mora_core(
            sp, basis, order, certificate=track_representations,
            degree_cap=degree_cap,
        )
        if r.is_zero():
            continue
        r_rep = None
        if track_representations:
            lc_i = basis[i].coefficient(lms[i])
            lc_j = basis[j].coefficient(lms[j])
            fa = Polynomial.monomial(ctx, monomial_div(lcm_ij, lms[i]), 1 / lc_i)
            fb = Polynomial.monomial(ctx, monomial_div(lcm_ij, lms[j]), 1 / lc_j)
            sp_rep = [fa * a - fb * b for a, b in zip(reps[i], reps[j])]
            # r == unit * sp - sum(cofs[k] * basis[k])
            r_rep = []
            for t in range(len(inputs)):
                acc = unit * sp_rep[t]
                for k in range(len(basis)):
                    if not cofs[k].is_zero():
                        acc = acc - cofs[k] * reps[k][t]
                r_rep.append(acc)
        shortcut = as_unit(r, r_rep)
        if shortcut is not None:
            return shortcut
        k = len(basis)
        push(r, r_rep)
        lms.append(leading_term(basis[k], order)[0])
        for t in range(k):
            heapq.heappush(queue, (pair_key(t, k), t, k))

    # minimalize: drop elements whose leading monomial is divisible by
    # another's (the leading ideal, hence the staircase, is unchanged)
    lms = [leading_term(g, order)[0] for g in basis]
    keep = []
    for i, lm in enumerate(lms):
        dominated = any(
            monomial_divides(lms[j], lm) and (lms[j] != lm or j < i)
            for j in range(len(basis))
            if j != i
        )
        if not dominated:
            keep.append(i)
    keep.sort(key=lambda i: monomial_key(lms[i]))
    kept = [basis[i] for i in keep]
    kept_lms = [lms[i] for i in keep]
    kept_reps = tuple(tuple(reps[i]) for i in keep) if track_representations else None
    return StandardBasis(
        generators=tuple(kept),
        order=order,
        leading_monomials=tuple(kept_lms),
        inputs=inputs,
        representations=kept_reps,
    )


def _monomials_of_degree(arity: int, degree: int) -> list[Monomial]:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, arity)
    return out


def _cap_schedule(arity: int) -> list[int]:
    # staircases in one or two variables can be long chains (mu up to the
    # corpus bound), so the schedule reaches further there
    if arity <= 2:
        return [4, 6, 8, 10, 12, 14, 16, 20, 26, 34, 44, 54]
    return [4, 6, 8, 10, 12, 14, 16, 18]


def staircase_quotient(
    gens: Sequence[Polynomial], order: LocalOrder | None = None
) -> tuple["StandardBasis", "LocalAlgebra"]:
    """Standard basis and staircase of the localized ideal, using certified
    degree caps.

    For a rising schedule of caps D the basis of (I + m^D) is computed
    with all tails truncated, which keeps Mora division from chasing
    degrees upward.  Once two caps D < D' give the same quotient
    dimension, Nakayama's lemma yields m^D inside I, so the capped result
    is exactly the answer for I.  Ideals where no cap stabilizes (e.g.
    non-isolated singularities) fall back to the uncapped computation.
    """
    order = order or LocalOrder()
    live = [g for g in gens if not g.is_zero()]
    if not live:
        raise ValueError("standard basis of the zero ideal is not supported here")
    ctx = live[0].context
    arity = ctx.arity
    if arity == 0:
        sb = standard_basis(live, order)
        return sb, quotient_basis(sb)
    prev: tuple[StandardBasis, LocalAlgebra] | None = None
    for cap in _cap_schedule(arity):
        cap_gens = [Polynomial.monomial(ctx, m) for m in _monomials_of_degree(arity, cap)]
        sb = standard_basis(live + cap_gens, order, degree_cap=cap)
        sb = StandardBasis(
            generators=sb.generators,
            order=order,
            leading_monomials=sb.leading_monomials,
            inputs=tuple(gens),
        )
        alg = quotient_basis(sb)
        if prev is not None and alg.dimension == prev[1].dimension:
            return prev
        prev = (sb, alg)
    sb = standard_basis(live, order)
    return sb, quotient_basis(sb)


@dataclass(frozen=True)
class LocalAlgebra:
    """Monomial basis (staircase complement) of a local quotient ring."""

    basis_monomials: tuple[Monomial, ...]
    dimension: int | float  # math.inf marks a non-isolated (infinite) quotient

    @property
    def is_finite(self) -> bool:
        return self.dimension != INFINITE


def quotient_basis(sb: StandardBasis) -> LocalAlgebra:
    """Monomials outside the leading ideal, or an infinite marker.

    The complement is finite iff every variable has a pure power among the
    leading monomials.
    """
    lms = sb.leading_monomials
    if not lms:
        return LocalAlgebra((), INFINITE)
    arity = len(lms[0])
    if arity == 0:
        # a leading monomial in zero variables is a unit: quotient is 0
        return LocalAlgebra((), 0)
    bounds = []
    for i in range(arity):
        pures = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pures:
            return LocalAlgebra((), INFINITE)
        bounds.append(min(pures))
    basis = []
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(monomial_divides(lm, m) for lm in lms):
            basis.append(m)
    basis.sort(key=monomial_key)
    return LocalAlgebra(tuple(basis), len(basis))


# -- brute-force jet-space oracle ----------------------------------------------


def _monomials_below(arity: int, degree: int) -> list[Monomial]:
    out = []
    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)
    rec([], degree - 1, arity)
    return sorted(out, key=monomial_key)


def _rank_of_rows(rows: list[dict[int, Fraction]]) -> int:
    """Rank over Q of sparse rows, by incremental elimination."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead in pivots:
                piv = pivots[lead]
                factor = row[lead]
                for col, val in piv.items():
                    nv = row.get(col, Fraction(0)) - factor * val
                    if nv == 0:
                        row.pop(col, None)
                    else:
                        row[col] = nv
            else:
                inv = 1 / row[lead]
                pivots[lead] = {c: v * inv for c, v in row.items()}
                rank += 1
                break
    return rank


def _jet_rows(
    gens: Sequence[Polynomial], monos: list[Monomial], N: int
) -> list[dict[int, Fraction]]:
    """Rows spanning {g * m truncated below degree N} in the monomial basis."""
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in gens:
        for m in monos:
            row: dict[int, Fraction] = {}
            for gm, c in g._terms.items():
                prod = monomial_mul(gm, m)
                if sum(prod) < N:
                    col = index[prod]
                    row[col] = row.get(col, Fraction(0)) + c
            row = {k: v for k, v in row.items() if v != 0}
            if row:
                rows.append(row)
    return rows


def jet_dimension_oracle(
    gens: Sequence[Polynomial], max_jet: int = 16
) -> int | float:
    """Brute-force quotient dimension, independent of standard bases.

    For N = 2, 3, ...: spans all generator multiples truncated below total
    degree N inside the space of monomials of degree < N and takes the
    codimension; returns the value once it repeats for two consecutive N
    (at that point m^N lies in the ideal, so the value is exact), or the
    infinite marker if it has not stabilized by ``max_jet``.
    """
    if max_jet < 1:
        raise ValueError("max_jet must be >= 1")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return INFINITE
    arity = gens[0].context.arity
    if arity == 0:
        return 0  # a nonzero constant generates everything
    prev = None
    for N in range(2, max_jet + 1):
        monos = _monomials_below(arity, N)
        codim = len(monos) - _rank_of_rows(_jet_rows(gens, monos, N))
        if prev is not None and codim == prev:
            return codim
        prev = codim
    return INFINITE


def jet_membership_oracle(
    p: Polynomial, gens: Sequence[Polynomial], max_jet: int = 16
) -> bool:
    """Brute-force membership of ``p`` in the localized ideal.

    Valid once the jet dimension has stabilized at N (then m^N is inside
    the ideal): membership is a rank comparison in the degree-< N jet space.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return p.is_zero()
    arity = gens[0].context.arity
    prev = None
    for N in range(2, max_jet + 1):
        monos = _monomials_below(arity, N)
        rows = _jet_rows(gens, monos, N)
        base_rank = _rank_of_rows(rows)
        codim = len(monos) - base_rank
        if prev is not None and codim == prev:
            index = {m: i for i, m in enumerate(monos)}
            p_row = {
                index[m]: c for m, c in p._terms.items() if sum(m) < N and c != 0
            }
            return _rank_of_rows(rows + [p_row]) == base_rank
        prev = codim
    raise ValueError("jet oracle did not stabilize; raise max_jet")
