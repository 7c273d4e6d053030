"""Boundary singularities: a function germ f with f(0) = 0 together with
the marked hyperplane {x = 0} of its variable context.

Three local algebras are attached to the pair: the ambient quotient by
(df), the quotient of the restriction f|_{x=0} by its own Jacobian ideal,
and the quotient by the boundary Jacobian ideal (x*df/dx, df/dy_1, ...).
Their dimensions are the three Milnor numbers, and the boundary one is
always the sum of the other two when all are finite.
"""

from __future__ import annotations

import warnings
from functools import cached_property

from .polyring import Polynomial, VarContext
from .standard_basis import (
    INFINITE,
    LocalAlgebra,
    LocalOrder,
    StandardBasis,
    staircase_quotient,
)


class InvalidGermError(ValueError):
    """The input is not a germ vanishing at the origin (or is zero)."""


class NonIsolatedError(ValueError):
    """The boundary singularity has infinite Milnor number."""


def jacobian_ideal_boundary(f: Polynomial) -> list[Polynomial]:
    """Generators [x*df/dx, df/dy_1, ..., df/dy_n] of the boundary
    Jacobian ideal, with x the boundary variable of f's context."""
    ctx = f.context
    if ctx.boundary_index is None:
        raise ValueError("context has no boundary variable")
    if f.constant_term() != 0:
        raise InvalidGermError("f must vanish at the origin")
    b = ctx.boundary_index
    x = Polynomial.variable(ctx, b)
    gens = [x * f.partial_derivative(b)]
    gens.extend(
        f.partial_derivative(i) for i in range(ctx.arity) if i != b
    )
    return gens


def jacobian_ideal(f: Polynomial) -> list[Polynomial]:
    """Generators (all partial derivatives) of the ordinary Jacobian ideal."""
    return [f.partial_derivative(i) for i in range(f.context.arity)]


def restrict_to_boundary(f: Polynomial) -> Polynomial:
    """Substitute x = 0 and drop the boundary variable from the context."""
    b = f.context.boundary_index
    if b is None:
        raise ValueError("context has no boundary variable")
    return f.substitute_zero(b)


def _quotient_of(gens: list[Polynomial], order: LocalOrder) -> tuple[StandardBasis | None, LocalAlgebra]:
    live = [g for g in gens if not g.is_zero()]
    if not live:
        ctx_arity = gens[0].context.arity if gens else 0
        if ctx_arity == 0:
            return None, LocalAlgebra(((),), 1)
        return None, LocalAlgebra((), INFINITE)
    if live[0].context.arity == 0:
        # nonzero constants generate the unit ideal
        return None, LocalAlgebra((), 0)
    return staircase_quotient(live, order)


class BoundarySingularity:
    """A germ f with a marked boundary hyperplane, with its standard bases
    and local algebras computed eagerly.

    Immutable after construction; rejects non-isolated input (infinite
    boundary Milnor number) unless ``allow_non_isolated`` is set.
    """

    def __init__(self, f: Polynomial, allow_non_isolated: bool = False):
        if f.is_zero():
            raise InvalidGermError("f must be nonzero")
        if f.constant_term() != 0:
            raise InvalidGermError("f must vanish at the origin")
        if f.context.boundary_index is None:
            raise ValueError("context has no boundary variable")
        self.f = f
        self.ctx: VarContext = f.context
        order = LocalOrder()

        self.boundary_gens = jacobian_ideal_boundary(f)
        self.sb_boundary, self.algebra_boundary = _quotient_of(
            self.boundary_gens, order
        )
        self.ambient_gens = jacobian_ideal(f)
        self.sb_ambient, self.algebra_ambient = _quotient_of(
            self.ambient_gens, order
        )
        self.restriction = restrict_to_boundary(f)
        if self.restriction.is_zero():
            self.restriction_gens = []
            self.sb_restriction = None
            arity = self.restriction.context.arity
            self.algebra_restriction = (
                LocalAlgebra(((),), 1) if arity == 0 else LocalAlgebra((), INFINITE)
            )
        else:
            self.restriction_gens = jacobian_ideal(self.restriction)
            self.sb_restriction, self.algebra_restriction = _quotient_of(
                self.restriction_gens, order
            )

        if not allow_non_isolated and self.algebra_boundary.dimension == INFINITE:
            raise NonIsolatedError(
                "boundary Milnor number is infinite; "
                "pass allow_non_isolated=True to inspect anyway"
            )

    @cached_property
    def mu_ambient(self) -> int | float:
        return self.algebra_ambient.dimension

    @cached_property
    def mu_restriction(self) -> int | float:
        return self.algebra_restriction.dimension

    @cached_property
    def mu_boundary(self) -> int | float:
        return self.algebra_boundary.dimension

    def __repr__(self) -> str:
        return f"BoundarySingularity({self.f}, boundary={self.ctx.names[self.ctx.boundary_index]})"


def milnor_numbers(
    bs: BoundarySingularity,
) -> tuple[int | float, int | float, int | float]:
    """(mu_f, mu_{f|H}, mu_{f,H}); infinite dimensions appear as math.inf."""
    return bs.mu_ambient, bs.mu_restriction, bs.mu_boundary


def check_additivity(bs: BoundarySingularity) -> bool:
    """Whether mu_{f,H} = mu_f + mu_{f|H}.  This is a theorem, so False
    means an implementation bug; a warning is emitted in that case."""
    a, r, b = milnor_numbers(bs)
    if INFINITE in (a, r, b):
        raise NonIsolatedError("additivity needs all three Milnor numbers finite")
    ok = b == a + r
    if not ok:
        warnings.warn(
            f"Milnor additivity violated for f = {bs.f}: {b} != {a} + {r}; "
            "this indicates a bug in the standard-basis layer",
            RuntimeWarning,
            stacklevel=2,
        )
    return ok
