"""Transforms in truncation arithmetic: modulo 2**alpha with no modulo ops.

Arithmetic is kept exact by masking to alpha bits, which is what integer
overflow wrap-around does for free in fixed-width machine words.  There
is no multiplicative inverse of the length in this ring, so the inverse
transform divides by N with a right shift instead, which is only exact
when enough spare bits (headroom) keep unnormalized values from
wrapping.

Not every (root, length) pair yields an invertible transform here: plans
are therefore built through a mandatory orthogonality check and carry a
validated/rejected verdict with a concrete witness on rejection.
"""

from dataclasses import dataclass

from .errors import (
    BadInput,
    HeadroomViolation,
    InputOutOfRange,
    LengthMismatch,
    NormalizationWrap,
)
from .modular import is_power_of_two

VALIDATED = "validated"
REJECTED = "rejected"


def verify_carmichael_dyadic(a: int, alpha: int) -> bool:
    """Executable witness that a**(2**(alpha-2)) == 1 (mod 2**alpha).

    Holds for every odd a and alpha >= 3; this check exists so the
    property backing the whole module can be exercised directly.
    """
    if alpha < 3:
        raise BadInput(f"need alpha >= 3, got {alpha}")
    if a % 2 == 0:
        raise BadInput(f"root must be odd, got {a}")
    return pow(a, 1 << (alpha - 2), 1 << alpha) == 1


@dataclass(frozen=True)
class DyadicPlan:
    """A (root, length) pair over 2**alpha words with a validation verdict.

    ``root_powers[j]`` is root**j truncated to alpha bits.  Transforms
    accept only validated plans; a rejected plan keeps the failing
    (k, sum) witness in ``witness`` for inspection.
    """

    alpha: int
    length: int
    root: int
    data_bits: int
    status: str
    reason: str | None
    witness: tuple[int, int] | None
    root_powers: tuple[int, ...]

    @property
    def validated(self) -> bool:
        return self.status == VALIDATED

    @property
    def mask(self) -> int:
        return (1 << self.alpha) - 1


def build_dyadic_plan(length: int, alpha: int, beta: int, root: int) -> DyadicPlan:
    """Construct a plan, validating order and orthogonality by brute force.

    Preconditions: alpha >= 3, root odd, and the headroom condition
    alpha >= beta + length (HeadroomViolation otherwise).  The plan
    comes back validated only if root has exact order ``length`` and
    every off-axis power sum vanishes: sum_u root**(u*k) == 0
    (mod 2**alpha) for 0 < k < length.
    """
    if alpha < 3:
        raise BadInput(f"need alpha >= 3, got {alpha}")
    if root % 2 == 0:
        raise BadInput(f"root must be odd, got {root}")
    if length < 1:
        raise BadInput(f"length must be >= 1, got {length}")
    if beta < 0:
        raise BadInput(f"data bit depth must be >= 0, got {beta}")
    if alpha < beta + length:
        raise HeadroomViolation(
            f"alpha {alpha} < data bits {beta} + length {length}: "
            "shift normalization would be inexact"
        )
    mask = (1 << alpha) - 1
    root &= mask

    def rejected(reason, witness=None):
        return DyadicPlan(
            alpha, length, root, beta, REJECTED, reason, witness, tuple(powers)
        )

    powers = [1]
    w = 1
    for j in range(1, length):
        w = (w * root) & mask
        if w == 1:
            return rejected(f"root order {j} is below the requested length")
        powers.append(w)
    if (w * root) & mask != 1:
        return rejected(f"root**{length} != 1 mod 2**{alpha}")
    if not is_power_of_two(length):
        # cannot happen for a true order in this group, but a defensive
        # verdict beats an impossible shift-division later
        return rejected(f"length {length} is not a power of two")

    for k in range(1, length):
        total = 0
        for u in range(length):
            total = (total + powers[u * k % length]) & mask
        if total != 0:
            return rejected(
                f"orthogonality fails at k={k}: sum == {total} != 0",
                witness=(k, total),
            )
    return DyadicPlan(alpha, length, root, beta, VALIDATED, None, None, tuple(powers))


def _require_validated(plan: DyadicPlan) -> None:
    if not plan.validated:
        raise BadInput(f"plan was rejected: {plan.reason}")


def _check_data(x, plan: DyadicPlan) -> list[int]:
    x = list(x)
    if len(x) != plan.length:
        raise LengthMismatch(f"sequence length {len(x)} != plan length {plan.length}")
    limit = 1 << plan.data_bits
    for v in x:
        if v < 0 or v >= limit:
            raise InputOutOfRange(f"value {v} outside [0, 2**{plan.data_bits})")
    return x


def dyadic_forward(x, plan: DyadicPlan) -> list[int]:
    """X(u) = sum_t x(t) * root**(u*t), truncated to alpha bits.

    The kernel uses only masking (truncation), additions and
    multiplications; no modulo instruction.
    """
    _require_validated(plan)
    x = _check_data(x, plan)
    n, mask, powers = plan.length, plan.mask, plan.root_powers
    out = []
    for u in range(n):
        acc = 0
        for t in range(n):
            acc = (acc + x[t] * powers[u * t % n]) & mask
        out.append(acc)
    return out


def dyadic_inverse(X, plan: DyadicPlan) -> list[int]:
    """Invert dyadic_forward; division by N is a right shift.

    Inverse twiddles use root**(N - k) rather than a multiplicative
    inverse (none exists mod a power of two).  Each unnormalized value
    must be divisible by N; if not, an intermediate wrapped and the
    result would be wrong, so NormalizationWrap is raised.
    """
    _require_validated(plan)
    X = list(X)
    if len(X) != plan.length:
        raise LengthMismatch(f"sequence length {len(X)} != plan length {plan.length}")
    n, mask, powers = plan.length, plan.mask, plan.root_powers
    for v in X:
        if v < 0 or v > mask:
            raise InputOutOfRange(f"value {v} outside [0, 2**{plan.alpha})")
    shift = n.bit_length() - 1
    out = []
    for t in range(n):
        acc = 0
        for u in range(n):
            acc = (acc + X[u] * powers[(n - (u * t % n)) % n]) & mask
        if acc & (n - 1):
            raise NormalizationWrap(
                f"unnormalized value {acc} at t={t} is not divisible by {n}"
            )
        out.append(acc >> shift)
    return out


def dyadic_convolve(f, g, plan: DyadicPlan) -> list[int]:
    """Exact cyclic convolution through the truncation-arithmetic transform.

    Beyond the per-input range check, the unnormalized convolution
    coefficients (at most N**2 * max(f) * max(g)) must fit below
    2**alpha, otherwise the shifted division would silently lose bits.
    """
    _require_validated(plan)
    f = _check_data(f, plan)
    g = _check_data(g, plan)
    n, mask = plan.length, plan.mask
    worst = n * n * max(f, default=0) * max(g, default=0)
    if worst > mask:
        raise InputOutOfRange(
            f"convolution headroom exceeded: N^2*Bf*Bg = {worst} > 2**{plan.alpha} - 1"
        )
    F = dyadic_forward(f, plan)
    G = dyadic_forward(g, plan)
    product = [(a * b) & mask for a, b in zip(F, G)]
    return dyadic_inverse(product, plan)
