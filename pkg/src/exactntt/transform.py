"""Forward/inverse transforms over a root-2 prime modulus.

Two evaluation paths: a direct O(N^2) sum straight off the defining
formula (the reference the fast path is checked against) and a radix-2
decimation-in-time fast path for power-of-two lengths.  Each path runs
under one of two multiplication kernels selected per plan:

  "mul"    products computed as ordinary multiplication; vectorized with
           int64 numpy arrays.  Exact for moduli below 2**31 because a
           residue product stays under 2**62 and sums are reduced before
           they can reach 2**63.
  "shift"  every twiddle product goes through shift_mul, a bit-serial
           double-and-subtract loop: the hardware-style kernel that uses
           no general multiplication.  Slow, exact, and required to be
           bit-identical to "mul".
"""

from dataclasses import dataclass, field

import numpy as np

from . import modular
from .errors import (
    BadInput,
    InvalidLength,
    LengthMismatch,
    ModulusMismatch,
    ModulusTooSmall,
    VerificationFailed,
)
from .registry import MAX_MODULUS, RaderModulus

# Largest length for which the direct path caches a dense twiddle matrix;
# beyond this it streams row by row to bound memory.
DENSE_LIMIT = 4096

KERNELS = ("mul", "shift")


def shift_mul(x: int, alpha: int, m: int) -> int:
    """x * 2**alpha mod m via alpha doubling steps.

    Each step doubles and conditionally subtracts m, the bit-serial form
    a shift-register implementation would use; no multiplication
    instruction is involved.  Cost is O(alpha), so reduce exponents by
    the root-2 order of m before calling in bulk.
    """
    if m < 2:
        raise ModulusTooSmall(f"modulus must be >= 2, got {m}")
    if alpha < 0:
        raise BadInput("negative shift")
    for _ in range(alpha):
        x += x
        if x >= m:
            x -= m
    return x


@dataclass(frozen=True)
class ResidueSequence:
    """Fixed-length sequence of canonical residues sharing one modulus."""

    values: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ModulusTooSmall(f"modulus must be >= 2, got {self.modulus}")
        if self.values and not (0 <= min(self.values) and max(self.values) < self.modulus):
            raise BadInput("sequence values must be canonical residues in [0, m)")

    @classmethod
    def reduce(cls, values, modulus: int) -> "ResidueSequence":
        """Build from arbitrary signed integers, reducing each mod m."""
        if modulus < 2:
            raise ModulusTooSmall(f"modulus must be >= 2, got {modulus}")
        return cls(tuple(v % modulus for v in values), modulus)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class TransformPlan:
    """Validated (length, modulus, root) triple with precomputed tables.

    The working root is 2**root_step where root_step = order // length;
    twiddles[j] = 2**(root_step * j) mod modulus.  n_inverse undoes the
    length factor in the inverse transform.  Plans are immutable and safe
    to share across threads; the private cache only memoizes derived
    arrays whose recomputation is idempotent.
    """

    length: int
    modulus: int
    order: int
    root_step: int
    kernel: str
    twiddles: tuple[int, ...]
    inverse_twiddles: tuple[int, ...]
    n_inverse: int
    source: RaderModulus | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def root(self) -> int:
        return self.twiddles[1] if self.length > 1 else 1

    # -- derived arrays ------------------------------------------------

    def _tw_array(self) -> np.ndarray:
        arr = self._cache.get("tw")
        if arr is None:
            arr = np.fromiter(self.twiddles, dtype=np.int64, count=self.length)
            self._cache["tw"] = arr
        return arr

    def _itw_array(self) -> np.ndarray:
        arr = self._cache.get("itw")
        if arr is None:
            arr = np.fromiter(self.inverse_twiddles, dtype=np.int64, count=self.length)
            self._cache["itw"] = arr
        return arr

    def _bitrev(self) -> np.ndarray:
        perm = self._cache.get("bitrev")
        if perm is None:
            perm = _bit_reverse_indices(self.length)
            self._cache["bitrev"] = perm
        return perm

    def _dense(self, inverse: bool) -> np.ndarray:
        key = "dense_inv" if inverse else "dense_fwd"
        mat = self._cache.get(key)
        if mat is None:
            tw = self._itw_array() if inverse else self._tw_array()
            n = self.length
            mat = np.empty((n, n), dtype=np.int64)
            t = np.arange(n, dtype=np.int64)
            for u0 in range(0, n, 512):
                u = np.arange(u0, min(u0 + 512, n), dtype=np.int64)[:, None]
                mat[u0 : u0 + u.shape[0]] = tw[(u * t) % n]
            self._cache[key] = mat
        return mat

    def _matmul_safe(self) -> bool:
        # accumulating N unreduced residue products must stay below 2**63
        return self.length * (self.modulus - 1) ** 2 < 2**63


def _bit_reverse_indices(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    bits = n.bit_length() - 1
    rev = np.arange(n, dtype=np.uint32)
    rev = ((rev & 0x55555555) << 1) | ((rev & 0xAAAAAAAA) >> 1)
    rev = ((rev & 0x33333333) << 2) | ((rev & 0xCCCCCCCC) >> 2)
    rev = ((rev & 0x0F0F0F0F) << 4) | ((rev & 0xF0F0F0F0) >> 4)
    rev = ((rev & 0x00FF00FF) << 8) | ((rev & 0xFF00FF00) >> 8)
    rev = (rev << 16) | (rev >> 16)
    rev >>= np.uint32(32 - bits)
    return rev.astype(np.int64)


def _resolve_modulus(modulus) -> tuple[int, int, RaderModulus | None]:
    """Accept a RaderModulus or a plain odd prime; return (m, order, source)."""
    if isinstance(modulus, RaderModulus):
        m, order, source = modulus.prime, modulus.n_max, modulus
    else:
        m, order, source = int(modulus), None, None
    if m < 3:
        raise ModulusTooSmall(f"transform modulus must be an odd prime >= 3, got {m}")
    if m >= MAX_MODULUS:
        raise BadInput(f"modulus {m} >= 2^31 outside the exactness-audited range")
    if not modular.is_prime(m):
        raise BadInput(
            f"modulus {m} is not prime; spectra would not be invertible"
        )
    if order is None:
        order = modular.multiplicative_order(2, m)
    return m, order, source


def build_plan(length: int, modulus, kernel: str = "mul") -> TransformPlan:
    """Construct a verified transform plan.

    ``modulus`` is a RaderModulus or a plain odd prime (its root-2 order
    is computed on the spot).  ``length`` must divide that order, else
    InvalidLength: the cycle of root powers cannot close at length N.
    Construction rebuilds the twiddle cycle and confirms the root has
    exact order N before the plan is handed out.
    """
    if kernel not in KERNELS:
        raise BadInput(f"kernel must be one of {KERNELS}, got {kernel!r}")
    m, order, source = _resolve_modulus(modulus)
    if length < 1:
        raise InvalidLength(f"length must be >= 1, got {length}")
    if order % length != 0:
        raise InvalidLength(
            f"length {length} does not divide the root-2 order {order} of {m}"
        )
    step = order // length
    root = pow(2, step, m)

    if length <= 1 << 14:
        twiddles = [1] * length
        w = 1
        for j in range(1, length):
            w = w * root % m
            if w == 1:
                raise VerificationFailed(
                    f"root 2^{step} has order {j} < {length} mod {m}", clause="order"
                )
            twiddles[j] = w
        closes = w * root % m if length > 1 else 1
    else:
        arr = np.ones(length, dtype=np.int64)
        arr[1] = root
        filled = 2
        while filled < length:
            chunk = min(filled, length - filled)
            # arr[filled + i] = arr[i] * root**filled; multiplier < m so
            # products stay under 2**62
            mult = int(arr[filled - 1]) * root % m
            arr[filled : filled + chunk] = arr[:chunk] * mult % m
            filled += chunk
        if np.any(arr[1:] == 1):
            j = int(np.nonzero(arr[1:] == 1)[0][0]) + 1
            raise VerificationFailed(
                f"root 2^{step} has order {j} < {length} mod {m}", clause="order"
            )
        twiddles = arr.tolist()
        closes = int(arr[length - 1]) * root % m
    if closes != 1:
        raise VerificationFailed(
            f"root 2^{step} does not return to 1 after {length} steps mod {m}",
            clause="order",
        )

    inverse_twiddles = [twiddles[0]] + twiddles[:0:-1]
    n_inverse = modular.mod_inverse(length % m, m)
    assert length * n_inverse % m == 1
    return TransformPlan(
        length=length,
        modulus=m,
        order=order,
        root_step=step,
        kernel=kernel,
        twiddles=tuple(twiddles),
        inverse_twiddles=tuple(inverse_twiddles),
        n_inverse=n_inverse,
        source=source,
    )


def _check_input(x: ResidueSequence, plan: TransformPlan) -> None:
    if len(x) != plan.length:
        raise LengthMismatch(f"sequence length {len(x)} != plan length {plan.length}")
    if x.modulus != plan.modulus:
        raise ModulusMismatch(f"sequence modulus {x.modulus} != plan modulus {plan.modulus}")


# -- direct path -------------------------------------------------------


def _direct_mul(x: ResidueSequence, plan: TransformPlan, inverse: bool) -> list[int]:
    n, m = plan.length, plan.modulus
    vec = np.fromiter(x.values, dtype=np.int64, count=n)
    if n <= DENSE_LIMIT:
        mat = plan._dense(inverse)
        if plan._matmul_safe():
            out = (mat @ vec) % m
        else:
            out = np.empty(n, dtype=np.int64)
            for u in range(n):
                out[u] = ((mat[u] * vec) % m).sum() % m
    else:
        tw = plan._itw_array() if inverse else plan._tw_array()
        t = np.arange(n, dtype=np.int64)
        out = np.empty(n, dtype=np.int64)
        for u in range(n):
            out[u] = ((tw[(u * t) % n] * vec) % m).sum() % m
    if inverse:
        out = (out * plan.n_inverse) % m
    return out.tolist()


def _direct_shift(x: ResidueSequence, plan: TransformPlan, inverse: bool) -> list[int]:
    n, m, s = plan.length, plan.modulus, plan.root_step
    # exponent for twiddle index j is s*j, already below the root-2 order
    exps = [s * ((n - j) % n) for j in range(n)] if inverse else [s * j for j in range(n)]
    vals = x.values
    out = []
    for u in range(n):
        acc = 0
        for t in range(n):
            acc += shift_mul(vals[t], exps[u * t % n], m)
        acc %= m
        if inverse:
            acc = _normalize_shift(acc, plan)
        out.append(acc)
    return out


def _normalize_shift(v: int, plan: TransformPlan) -> int:
    # 1/N is itself a power of two when N is: 2**(order - log2 N)
    if modular.is_power_of_two(plan.length):
        return shift_mul(v, plan.order - (plan.length.bit_length() - 1), plan.modulus)
    return v * plan.n_inverse % plan.modulus


def forward_direct(x: ResidueSequence, plan: TransformPlan) -> ResidueSequence:
    """Direct O(N^2) forward transform: X(u) = sum_t x(t) * root**(u*t)."""
    _check_input(x, plan)
    if plan.kernel == "shift":
        out = _direct_shift(x, plan, inverse=False)
    else:
        out = _direct_mul(x, plan, inverse=False)
    return ResidueSequence(tuple(out), plan.modulus)


def inverse_direct(X: ResidueSequence, plan: TransformPlan) -> ResidueSequence:
    """Direct inverse: x(t) = (1/N) sum_u X(u) * root**(-u*t)."""
    _check_input(X, plan)
    if plan.kernel == "shift":
        out = _direct_shift(X, plan, inverse=True)
    else:
        out = _direct_mul(X, plan, inverse=True)
    return ResidueSequence(tuple(out), plan.modulus)


# -- fast path ---------------------------------------------------------


def _fast_mul(x: ResidueSequence, plan: TransformPlan, inverse: bool) -> list[int]:
    n, m = plan.length, plan.modulus
    a = np.fromiter(x.values, dtype=np.int64, count=n)[plan._bitrev()]
    tw = plan._itw_array() if inverse else plan._tw_array()
    size = 2
    while size <= n:
        half = size // 2
        step = n // size
        w = tw[0 : half * step : step]
        blocks = a.reshape(n // size, size)
        hi = (blocks[:, half:] * w) % m
        lo = blocks[:, :half]
        u = lo + hi
        v = lo - hi
        blocks[:, :half] = np.where(u >= m, u - m, u)
        blocks[:, half:] = np.where(v < 0, v + m, v)
        size <<= 1
    if inverse:
        a = (a * plan.n_inverse) % m
    return a.tolist()


def _fast_shift(x: ResidueSequence, plan: TransformPlan, inverse: bool) -> list[int]:
    n, m, s = plan.length, plan.modulus, plan.root_step
    perm = plan._bitrev()
    a = [x.values[int(p)] for p in perm]
    size = 2
    while size <= n:
        half = size // 2
        step = n // size
        for start in range(0, n, size):
            for j in range(half):
                e = s * j * step
                if inverse and e:
                    e = plan.order - e
                hi = shift_mul(a[start + half + j], e, m)
                lo = a[start + j]
                u = lo + hi
                if u >= m:
                    u -= m
                v = lo - hi
                if v < 0:
                    v += m
                a[start + j] = u
                a[start + half + j] = v
        size <<= 1
    if inverse:
        a = [_normalize_shift(v, plan) for v in a]
    return a


def forward_fast(x: ResidueSequence, plan: TransformPlan) -> ResidueSequence:
    """Radix-2 fast forward transform; bit-exact equal to forward_direct.

    Lengths that are not powers of two fall back to the direct path.
    """
    _check_input(x, plan)
    if not modular.is_power_of_two(plan.length):
        return forward_direct(x, plan)
    if plan.kernel == "shift":
        out = _fast_shift(x, plan, inverse=False)
    else:
        out = _fast_mul(x, plan, inverse=False)
    return ResidueSequence(tuple(out), plan.modulus)


def inverse_fast(X: ResidueSequence, plan: TransformPlan) -> ResidueSequence:
    """Radix-2 fast inverse transform; bit-exact equal to inverse_direct."""
    _check_input(X, plan)
    if not modular.is_power_of_two(plan.length):
        return inverse_direct(X, plan)
    if plan.kernel == "shift":
        out = _fast_shift(X, plan, inverse=True)
    else:
        out = _fast_mul(X, plan, inverse=True)
    return ResidueSequence(tuple(out), plan.modulus)
