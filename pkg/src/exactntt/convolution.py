"""Exact circular convolution, spectral filtering, and big-integer products.

The transform-based paths recover plain integers, not residues: a bound
check guarantees every true coefficient is identifiable inside the
residue range, so results equal the direct formula exactly.  When one
prime is too small, work is spread over several and recombined by the
Chinese Remainder Theorem.
"""

import sys
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import modular
from .errors import (
    BadInput,
    BoundExceeded,
    InvalidLength,
    LengthMismatch,
    ModuliNotCoprime,
    NotInvertible,
)
from .registry import RaderModulus, builtin_rader_primes
from .transform import (
    ResidueSequence,
    build_plan,
    forward_fast,
    inverse_fast,
)

# Python >= 3.11 caps int<->str conversion length by default; big-digit
# operands here legitimately run to thousands of digits.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000)

_NP_EXACT_LIMIT = 2**62


@lru_cache(maxsize=32)
def _plan(length: int, modulus, kernel: str):
    return build_plan(length, modulus, kernel)


def _magnitude_bound(seq) -> int:
    return max((abs(v) for v in seq), default=0)


def convolve_direct(f, g) -> list[int]:
    """Cyclic convolution by direct summation: h(j) = sum_k f(k) g(j-k).

    Exact integers in, exact integers out; this is the reference the
    transform paths are measured against.  Uses a C-speed linear
    convolution when the coefficient bound provably fits int64, else a
    plain arbitrary-precision loop.
    """
    f, g = list(f), list(g)
    if len(f) != len(g):
        raise LengthMismatch(f"lengths differ: {len(f)} vs {len(g)}")
    n = len(f)
    if n == 0:
        return []
    bf, bg = _magnitude_bound(f), _magnitude_bound(g)
    if max(bf, bg, n * bf * bg) < _NP_EXACT_LIMIT:
        lin = np.convolve(
            np.array(f, dtype=np.int64), np.array(g, dtype=np.int64)
        )
        out = lin[:n].copy()
        out[: n - 1] += lin[n:]
        return out.tolist()
    out = []
    for j in range(n):
        acc = 0
        for k in range(n):
            acc += f[k] * g[(j - k) % n]
        out.append(acc)
    return out


def _signed_lift(value: int, modulus: int) -> int:
    # representative in (-modulus/2, modulus/2]
    return value - modulus if 2 * value > modulus else value


def _pointwise_product(F: ResidueSequence, G: ResidueSequence) -> ResidueSequence:
    m = F.modulus
    return ResidueSequence(tuple(a * b % m for a, b in zip(F, G)), m)


def convolve_ntt(f, g, modulus, kernel: str = "mul") -> list[int]:
    """Exact cyclic convolution through a single-prime transform.

    Equals convolve_direct (as plain integers, not merely mod m)
    provided the recovery bound holds: N*Bf*Bg < m for nonnegative
    input, 2*N*Bf*Bg < m when either input has negative entries (the
    result is then lifted symmetrically).  Raises BoundExceeded
    otherwise; use convolve_crt to spread over more primes.
    """
    f, g = list(f), list(g)
    if len(f) != len(g):
        raise LengthMismatch(f"lengths differ: {len(f)} vs {len(g)}")
    n = len(f)
    plan = _plan(n, modulus, kernel)
    m = plan.modulus
    bf, bg = _magnitude_bound(f), _magnitude_bound(g)
    signed = any(v < 0 for v in f) or any(v < 0 for v in g)
    need = (2 if signed else 1) * n * bf * bg
    if need >= m:
        raise BoundExceeded(
            f"recovery bound {need} >= modulus {m}; coefficients would alias "
            "(use convolve_crt with more primes)"
        )
    F = forward_fast(ResidueSequence.reduce(f, m), plan)
    G = forward_fast(ResidueSequence.reduce(g, m), plan)
    h = inverse_fast(_pointwise_product(F, G), plan)
    if signed:
        return [_signed_lift(v, m) for v in h]
    return list(h.values)


class _CrtBasis:
    """Precomputed mixed-radix coefficients for repeated combination."""

    def __init__(self, moduli: list[int]):
        for i, mi in enumerate(moduli):
            for mj in moduli[i + 1 :]:
                shared = gcd(mi, mj)
                if shared != 1:
                    raise ModuliNotCoprime(
                        f"moduli {mi} and {mj} share factor {shared}"
                    )
        self.product = 1
        for mi in moduli:
            self.product *= mi
        self.terms = []
        for mi in moduli:
            rest = self.product // mi
            self.terms.append(rest * modular.mod_inverse(rest % mi, mi))

    def combine(self, residues) -> int:
        return sum(r * t for r, t in zip(residues, self.terms)) % self.product


def convolve_crt(f, g, moduli) -> list[int]:
    """Exact cyclic convolution reconstructed from several prime moduli.

    Requires prod(m_i) > 2*N*Bf*Bg; each output coefficient is combined
    from its per-prime residues and lifted to (-prod/2, prod/2].
    """
    moduli = list(moduli)
    if not moduli:
        raise BadInput("convolve_crt needs at least one modulus")
    f, g = list(f), list(g)
    if len(f) != len(g):
        raise LengthMismatch(f"lengths differ: {len(f)} vs {len(g)}")
    n = len(f)
    primes = [mod.prime if isinstance(mod, RaderModulus) else int(mod) for mod in moduli]
    basis = _CrtBasis(primes)
    bound = 2 * n * _magnitude_bound(f) * _magnitude_bound(g)
    if basis.product <= bound:
        raise BoundExceeded(
            f"product of moduli {basis.product} <= 2*N*Bf*Bg = {bound}; "
            "add moduli or lower the data bound"
        )
    per_prime = []
    for mod in moduli:
        plan = _plan(n, mod, "mul")
        m = plan.modulus
        F = forward_fast(ResidueSequence.reduce(f, m), plan)
        G = forward_fast(ResidueSequence.reduce(g, m), plan)
        per_prime.append(inverse_fast(_pointwise_product(F, G), plan).values)
    return [
        _signed_lift(basis.combine(res_j), basis.product)
        for res_j in zip(*per_prime)
    ]


def deconvolve(h, g, modulus, kernel: str = "mul") -> list[int]:
    """Spectral division: recover f (mod m) with f * g == h (mod m).

    Every spectral bin of g must be invertible; the first zero bin
    raises NotInvertible carrying its index (the filter has a null at
    that digital frequency, so division is impossible there).
    Output is the canonical residue sequence of f.
    """
    h, g = list(h), list(g)
    if len(h) != len(g):
        raise LengthMismatch(f"lengths differ: {len(h)} vs {len(g)}")
    plan = _plan(len(h), modulus, kernel)
    m = plan.modulus
    H = forward_fast(ResidueSequence.reduce(h, m), plan)
    G = forward_fast(ResidueSequence.reduce(g, m), plan)
    quotient = []
    for u, (hu, gu) in enumerate(zip(H, G)):
        if gu == 0:
            raise NotInvertible(
                f"filter spectrum vanishes at bin {u}; cannot deconvolve",
                bin_index=u,
            )
        quotient.append(hu * pow(gu, m - 2, m) % m)
    out = inverse_fast(ResidueSequence(tuple(quotient), m), plan)
    return list(out.values)


# -- big-integer multiplication ----------------------------------------

DEFAULT_BASE = 256


@dataclass(frozen=True)
class BigDigits:
    """Arbitrary-precision integer as little-endian digits in [0, base).

    Canonical form: no trailing zero digits except the single-digit
    zero, which is nonnegative.
    """

    digits: tuple[int, ...]
    base: int = DEFAULT_BASE
    negative: bool = False

    def __post_init__(self):
        if self.base < 2:
            raise BadInput(f"digit base must be >= 2, got {self.base}")
        if not self.digits:
            raise BadInput("digit vector must not be empty (zero is (0,))")
        if any(d < 0 or d >= self.base for d in self.digits):
            raise BadInput(f"digits must lie in [0, {self.base})")
        if len(self.digits) > 1 and self.digits[-1] == 0:
            raise BadInput("non-canonical digit vector: trailing zero digit")
        if self.is_zero() and self.negative:
            raise BadInput("zero must be nonnegative")

    def is_zero(self) -> bool:
        return self.digits == (0,)

    @classmethod
    def from_int(cls, value: int, base: int = DEFAULT_BASE) -> "BigDigits":
        negative = value < 0
        value = abs(value)
        digits = []
        while True:
            value, d = divmod(value, base)
            digits.append(d)
            if value == 0:
                break
        return cls(tuple(digits), base, negative and digits != [0])

    def to_int(self) -> int:
        value = 0
        for d in reversed(self.digits):
            value = value * self.base + d
        return -value if self.negative else value

    @classmethod
    def from_decimal(cls, text: str, base: int = DEFAULT_BASE) -> "BigDigits":
        text = text.strip()
        sign = 1
        if text.startswith(("+", "-")):
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        if not text.isdigit():
            raise BadInput(f"not a decimal integer: {text!r}")
        return cls.from_int(sign * int(text), base)

    def to_decimal(self) -> str:
        return str(self.to_int())


def _carry_propagate(raw, base: int) -> tuple[int, ...]:
    digits = []
    carry = 0
    for coeff in raw:
        carry, d = divmod(coeff + carry, base)
        digits.append(d)
    while carry:
        carry, d = divmod(carry, base)
        digits.append(d)
    while len(digits) > 1 and digits[-1] == 0:
        digits.pop()
    return tuple(digits)


def schoolbook_multiply(a: BigDigits, b: BigDigits) -> BigDigits:
    """Positional digit-product multiplication: the independent oracle.

    Every digit pair is multiplied and accumulated at its position
    (O(n^2) work), then carries are resolved; no transform is involved.
    """
    if a.base != b.base:
        raise BadInput("operands must share a digit base")
    if a.is_zero() or b.is_zero():
        return BigDigits((0,), a.base)
    bound = min(len(a.digits), len(b.digits)) * (a.base - 1) ** 2
    if bound < _NP_EXACT_LIMIT:
        raw = np.convolve(
            np.array(a.digits, dtype=np.int64), np.array(b.digits, dtype=np.int64)
        ).tolist()
    else:
        raw = [0] * (len(a.digits) + len(b.digits) - 1)
        for i, da in enumerate(a.digits):
            for j, db in enumerate(b.digits):
                raw[i + j] += da * db
    return BigDigits(
        _carry_propagate(raw, a.base), a.base, a.negative != b.negative
    )


def select_moduli(length: int, bound: int, registry=None) -> list[RaderModulus]:
    """Registry primes admitting ``length`` whose product exceeds ``bound``.

    Prefers the single smallest adequate prime; otherwise accumulates
    primes smallest-first.  Raises BoundExceeded when the whole registry
    is not enough.
    """
    candidates = sorted(
        (entry for entry in (registry or builtin_rader_primes()) if entry.admits_length(length)),
        key=lambda entry: entry.prime,
    )
    for entry in candidates:
        if entry.prime > bound:
            return [entry]
    chosen: list[RaderModulus] = []
    product = 1
    for entry in candidates:
        chosen.append(entry)
        product *= entry.prime
        if product > bound:
            return chosen
    raise BoundExceeded(
        f"registry primes admitting length {length} reach only {product} "
        f"<= required {bound}; use a smaller digit base or supply more moduli"
    )


def bigint_multiply(a: BigDigits, b: BigDigits, moduli=None, registry=None) -> BigDigits:
    """Exact product via transform convolution of the digit vectors.

    Digits are zero-padded to a power of two at least len(a)+len(b) so
    the cyclic convolution equals the linear one, convolved over enough
    primes to recover every coefficient, then carried back to canonical
    digits.
    """
    if a.base != b.base:
        raise BadInput("operands must share a digit base")
    if a.is_zero() or b.is_zero():
        return BigDigits((0,), a.base)
    n = modular.next_power_of_two(len(a.digits) + len(b.digits))
    if moduli is None:
        worst = n * (a.base - 1) ** 2
        moduli = select_moduli(n, 2 * worst, registry)
    fa = list(a.digits) + [0] * (n - len(a.digits))
    fb = list(b.digits) + [0] * (n - len(b.digits))
    raw = convolve_crt(fa, fb, moduli)
    return BigDigits(
        _carry_propagate(raw, a.base), a.base, a.negative != b.negative
    )
