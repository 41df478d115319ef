"""Quadratic character sums over GF(3^n) and the five classifier polynomials.

For a parameter u with chi(u+1) != chi(u-1) and u outside GF(3), the element
1 - u^2 is a square; write r for its canonical root (chi(r) = 1) and
phi = 1 + r.  The classifier family in one variable z is

    g1(z) = -(u+1) z
    g2(z) = z (z - 1 - u)
    g3(z) = z (z - 1 + u)
    g4(z) = z^2 - z + u^2        (roots -1 +- r)
    g5(z) = -phi (z + 1 - r)

The signs chi(g_i(z)) at z = a*b classify how many x solve the derivative
equation of the Ness-Helleseth function at (a, b); sums of chi over products
of the g_i reduce the differential spectrum to two character sums.  This
module evaluates all such sums exactly (by brute force over the field) and
checks them against their known closed forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .field import FieldCtx

G_IDS = (1, 2, 3, 4, 5)


def in_theorem_scope(ctx: FieldCtx, u: int) -> bool:
    """True when u is outside GF(3) and chi(u+1) != chi(u-1)."""
    if u in (0, 1, 2):
        return False
    return ctx.chi(ctx.add(u, 1)) != ctx.chi(ctx.sub(u, 1))


def require_scope(ctx: FieldCtx, u: int) -> None:
    if not in_theorem_scope(ctx, u):
        raise ValueError(
            f"u = {ctx.format_element(u)} needs chi(u+1) != chi(u-1) and u outside GF(3)"
        )


def sqrt_term(ctx: FieldCtx, u: int) -> int:
    """Canonical root of 1 - u^2 (a square whenever u is in scope)."""
    require_scope(ctx, u)
    return ctx.sqrt_canonical(ctx.sub(1, ctx.mul(u, u)))


def phi_value(ctx: FieldCtx, u: int) -> int:
    """phi = 1 + sqrt(1 - u^2); never zero, and chi((u+1) * phi) == -1."""
    return ctx.add(1, sqrt_term(ctx, u))


# ---------------------------------------------------------------------------
# generic character sums
# ---------------------------------------------------------------------------


def char_sum(ctx: FieldCtx, coeffs: Sequence[int]) -> int:
    """Exact sum of chi(poly(z)) over all z; coeffs lowest degree first."""
    if not any(coeffs):
        raise ValueError("character sum of the zero polynomial is not defined")
    zs = np.arange(ctx.q, dtype=np.int64)
    acc = np.full(ctx.q, coeffs[-1], dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc = ctx.add_vec(ctx.mul_vec(acc, zs), np.int64(c))
    return int(ctx.chi_vec(acc).sum())


def quadratic_char_sum(ctx: FieldCtx, a2: int, a1: int, a0: int) -> int:
    """Closed form for sum of chi(a2 z^2 + a1 z + a0): -chi(a2) when the
    discriminant a1^2 - 4 a0 a2 is nonzero, else (q-1) chi(a2)."""
    if a2 == 0:
        raise ValueError("leading coefficient must be nonzero")
    d = ctx.sub(ctx.mul(a1, a1), ctx.mul(a0, a2))  # 4 == 1 in characteristic 3
    if d != 0:
        return -ctx.chi(a2)
    return (ctx.q - 1) * ctx.chi(a2)


# ---------------------------------------------------------------------------
# the g family
# ---------------------------------------------------------------------------


def g_eval(ctx: FieldCtx, u: int, gid: int, z: int) -> int:
    require_scope(ctx, u)
    if gid == 1:
        return ctx.mul(ctx.neg(ctx.add(u, 1)), z)
    if gid == 2:
        return ctx.mul(z, ctx.sub(z, ctx.add(1, u)))
    if gid == 3:
        return ctx.mul(z, ctx.sub(z, ctx.sub(1, u)))
    if gid == 4:
        return ctx.add(ctx.sub(ctx.mul(z, z), z), ctx.mul(u, u))
    if gid == 5:
        r = sqrt_term(ctx, u)
        return ctx.mul(ctx.neg(ctx.add(1, r)), ctx.sub(ctx.add(z, 1), r))
    raise ValueError(f"gid must be 1..5, got {gid}")


def g_values(ctx: FieldCtx, u: int, gid: int) -> np.ndarray:
    """g_gid(z) for every z in the field, as one index array."""
    require_scope(ctx, u)
    z = np.arange(ctx.q, dtype=np.int64)
    if gid == 1:
        return ctx.mul_vec(np.int64(ctx.neg(ctx.add(u, 1))), z)
    if gid == 2:
        return ctx.mul_vec(z, ctx.sub_vec(z, np.int64(ctx.add(1, u))))
    if gid == 3:
        return ctx.mul_vec(z, ctx.sub_vec(z, np.int64(ctx.sub(1, u))))
    if gid == 4:
        return ctx.add_vec(ctx.sub_vec(ctx.mul_vec(z, z), z), np.int64(ctx.mul(u, u)))
    if gid == 5:
        r = sqrt_term(ctx, u)
        return ctx.mul_vec(
            np.int64(ctx.neg(ctx.add(1, r))), ctx.sub_vec(ctx.add_vec(z, np.int64(1)), np.int64(r))
        )
    raise ValueError(f"gid must be 1..5, got {gid}")


def g_product_sum(ctx: FieldCtx, u: int, gids: Iterable[int]) -> int:
    """Exact sum over z of chi of the product of the selected g polynomials."""
    gids = tuple(gids)
    if not gids:
        raise ValueError("need at least one polynomial id")
    prod = g_values(ctx, u, gids[0])
    for gid in gids[1:]:
        prod = ctx.mul_vec(prod, g_values(ctx, u, gid))
    return int(ctx.chi_vec(prod).sum())


# ---------------------------------------------------------------------------
# the five-point set A and the sign table on it
# ---------------------------------------------------------------------------


def set_a_points(ctx: FieldCtx, u: int) -> tuple[int, int, int, int, int]:
    """A = {0, 1+u, 1-u, -1+r, -1-r}: all zeros of the g family."""
    r = sqrt_term(ctx, u)
    return (
        0,
        ctx.add(1, u),
        ctx.sub(1, u),
        ctx.add(ctx.neg(1), r),
        ctx.sub(ctx.neg(1), r),
    )


def table_a_chi(ctx: FieldCtx, u: int) -> list[list[int]]:
    """chi(g_i(x)) for x in A (rows) and i = 1..5 (columns), by evaluation."""
    return [[ctx.chi(g_eval(ctx, u, gid, x)) for gid in G_IDS] for x in set_a_points(ctx, u)]


def table_a_expected(ctx: FieldCtx, u: int) -> list[list[int]]:
    """The same grid from its closed-form entries in terms of u and r."""
    chi, mul, add, sub, neg = ctx.chi, ctx.mul, ctx.add, ctx.sub, ctx.neg
    r = sqrt_term(ctx, u)
    u2 = mul(u, u)
    up1, um1 = add(u, 1), sub(u, 1)
    chi_u2pu = chi(add(u2, u))      # chi(u^2 + u)
    chi_umu2 = chi(sub(u, u2))      # chi(u - u^2)
    row_0 = [0, 0, 0, 1, -1]
    row_1pu = [
        -1,
        0,
        -chi_u2pu,
        chi_umu2,
        -chi(add(mul(up1, r), mul(um1, um1))),
    ]
    row_1mu = [
        -1,
        chi_umu2,
        0,
        -chi_u2pu,
        -chi(add(mul(sub(1, u), r), mul(up1, up1))),
    ]
    row_m1pr = [
        -1,
        -chi(u) * chi(add(sub(u, 1), r)),
        chi(u) * chi(add(neg(add(1, u)), r)),
        0,
        0,
    ]
    row_m1mr = [
        -1,
        chi(u) * chi(add(sub(1, u), r)),
        -chi(u) * chi(add(add(1, u), r)),
        0,
        chi(sub(sub(u2, 1), r)),
    ]
    return [row_0, row_1pu, row_1mu, row_m1pr, row_m1mr]


# ---------------------------------------------------------------------------
# the identity suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityReport:
    """One verified character-sum identity: brute-force lhs vs closed-form rhs."""

    name: str
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json_dict(self) -> dict:
        return {"identity": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


def section2_identities(ctx: FieldCtx, u: int) -> list[IdentityReport]:
    """All 18 closed-form identities for the g-family character sums.

    Single-product sums come first, then the paired sums whose individual
    values depend on u but whose totals do not (or collapse to one chi).
    """
    require_scope(ctx, u)
    r = sqrt_term(ctx, u)
    phi = ctx.add(1, r)
    chi_phi = ctx.chi(phi)
    chi_r1pu = ctx.chi(ctx.add(ctx.add(r, 1), u))  # chi(r + 1 + u)
    chi_r1mu = ctx.chi(ctx.sub(ctx.add(r, 1), u))  # chi(r + 1 - u)

    def s(*gids: int) -> int:
        return g_product_sum(ctx, u, gids)

    checks: list[tuple[str, int, int]] = [
        ("g1g2", s(1, 2), -1),
        ("g1g3", s(1, 3), -1),
        ("g1g5", s(1, 5), 1),
        ("g2g3", s(2, 3), -2),
        ("g1g2g5", s(1, 2, 5), 2),
        ("g1g3g5", s(1, 3, 5), 2),
        ("g4g5", s(4, 5), -chi_phi),
        ("g1g4g5", s(1, 4, 5), 1 + chi_phi),
        ("g1g3g4g5", s(1, 3, 4, 5), 2 - chi_r1pu),
        ("g1g2g4g5", s(1, 2, 4, 5), 2 - chi_r1mu),
        ("g2g3g4", s(2, 3, 4), -2),
        ("g1g4+g1g2g3", s(1, 4) + s(1, 2, 3), 0),
        ("g2g4+g1g2g4", s(2, 4) + s(1, 2, 4), -2),
        ("g3g4+g1g3g4", s(3, 4) + s(1, 3, 4), -2),
        ("g2g3g5+g1g2g3g5", s(2, 3, 5) + s(1, 2, 3, 5), 2),
        ("g2g3g4g5+g1g2g3g4g5", s(2, 3, 4, 5) + s(1, 2, 3, 4, 5), 2),
        ("g2g5+g3g4g5", s(2, 5) + s(3, 4, 5), chi_r1pu),
        ("g3g5+g2g4g5", s(3, 5) + s(2, 4, 5), chi_r1mu),
    ]
    return [IdentityReport(name, lhs, rhs) for name, lhs, rhs in checks]
