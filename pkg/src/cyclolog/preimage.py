"""Constructive preimages of the logarithm on the unit annulus.

A target y with digits 0 and 1 zero has exactly p - 1 preimages among the
units whose leading digit a1 is nonzero.  Fixing a1 determines digit a2 in
closed form; every later digit a_j is the unique solution of a one-digit
congruence, because appending a_j*pi^j to a partial unit shifts digit j of
its logarithm by exactly a_j.
"""

from __future__ import annotations

from .errors import BranchZero, NotInMSquared
from .ring import Context, PiElement, PrincipalUnit
from .series import plog


def digit2_for_branch(y2: int, a1: int, ctx: Context) -> int:
    """The unique digit a2 with (a2 - a1^2/2) mod p equal to y2."""
    p = ctx.p
    if not 0 <= y2 < p:
        raise ValueError("y2 must lie in [0, p)")
    if not 1 <= a1 < p:
        raise BranchZero(f"branch a1 must lie in [1, {p}), got {a1}")
    return (y2 + a1 * a1 * pow(2, -1, p)) % p


def qr_pair_enumeration(y2: int, ctx: Context) -> set[tuple[int, int]]:
    """All branch pairs (a1, a2), counted the quadratic-residue way.

    For each a2, the value -2*y2 + 2*a2 must be a nonzero quadratic residue
    a1^2; each of the (p-1)/2 admissible a2 contributes both square roots,
    giving p - 1 pairs in total.  A brute-force square table stands in for
    Euler's criterion at these sizes.
    """
    p = ctx.p
    if not 0 <= y2 < p:
        raise ValueError("y2 must lie in [0, p)")
    roots_of: dict[int, list[int]] = {}
    for r in range(1, p):
        roots_of.setdefault(r * r % p, []).append(r)
    pairs = set()
    for a2 in range(p):
        t = (2 * a2 - 2 * y2) % p
        if t == 0:
            continue
        for a1 in roots_of.get(t, ()):
            pairs.add((a1, a2))
    return pairs


def preimage(y: PiElement, branch: int) -> PrincipalUnit:
    """The unit with leading digit `branch` whose logarithm is y.

    Digits are found inductively: after digits a1..a_{j-1} are fixed, the
    partial unit's log already matches y below position j, and digit j moves
    by exactly a_j when a_j*pi^j is appended, so a_j = y_j - (current digit j)
    mod p.  The result satisfies plog(result) == y digitwise.
    """
    ctx = y.ctx
    p, N = ctx.p, ctx.precision
    if y.digits[0] != 0 or y.digits[1] != 0:
        raise NotInMSquared("target digits 0 and 1 must be zero")
    if not 1 <= branch < p:
        raise BranchZero(f"branch must lie in [1, {p}), got {branch}")
    digits = [0] * N
    digits[0] = 1
    digits[1] = branch
    digits[2] = digit2_for_branch(y.digits[2], branch, ctx)
    for j in range(3, N):
        partial = PiElement._make(tuple(digits), ctx)
        current = plog(partial)
        digits[j] = (y.digits[j] - current.digits[j]) % p
    return PrincipalUnit(tuple(digits), ctx)


def preimage_all(y: PiElement) -> list[PrincipalUnit]:
    """One preimage per branch, ordered by leading digit 1..p-1."""
    return [preimage(y, a1) for a1 in range(1, y.ctx.p)]


def roots_of_unity(ctx: Context) -> list[PrincipalUnit]:
    """The p - 1 nontrivial p-th roots of unity, as the log fiber over zero.

    The branch-1 root is congruent to 1 + pi mod pi^2, the root attached to
    the uniformizer normalization pi^(p-1) = -p.
    """
    return preimage_all(ctx.zero())
