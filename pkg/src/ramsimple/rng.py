"""Deterministic counter-based random streams.

Every random decision in the package is a pure function of a 64-bit seed and
a draw index: draw ``k`` of the stream keyed by ``seed`` is
``mix64(seed + (k+1) * GOLDEN mod 2^64)`` where ``mix64`` is the SplitMix64
finaliser.  There is no hidden generator state, so trials and sampled subsets
can be recomputed, reordered, or split across workers and still produce
bit-identical results on every platform.

Seeds are plain unsigned 64-bit integers.  The stream for logical task ``k``
(a Monte-Carlo trial, a sampled subset, a colouring stream) is keyed by
``derive(base, k)``; distinct purposes inside one operation use distinct salt
indices via :func:`derive` so streams never collide.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C85
_DERIVE_SALT = 0xD1B54A32D192ED03

# Integer Bernoulli thresholds live on a 53-bit lattice so the accept test is
# exact integer arithmetic (no platform-dependent float comparisons).
P53 = 1 << 53


def mix64(x: int) -> int:
    """SplitMix64 finaliser: a fixed bijective scramble of a 64-bit word."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def draw(seed: int, k: int) -> int:
    """The ``k``-th 64-bit value of the stream keyed by ``seed``."""
    return mix64((seed + (k + 1) * GOLDEN) & MASK64)


def derive(base: int, index: int) -> int:
    """Child seed for logical task ``index`` of the stream keyed by ``base``."""
    child = mix64(((index + 1) * _DERIVE_SALT) & MASK64)
    return mix64((base ^ child) & MASK64)


def bernoulli_threshold(p: float) -> int:
    """Integer threshold ``T`` such that ``draw >> 11 < T`` holds with
    probability ``T / 2^53`` (within ``2^-53`` of ``p``)."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie strictly in (0,1), got {p}")
    return round(p * P53)


def uniform_below(seed: int, k: int, bound: int) -> int:
    """Draw ``k`` reduced modulo ``bound`` (bias below ``bound / 2^64``)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return draw(seed, k) % bound


def sample_subset(seed: int, size: int, universe: int) -> tuple[int, ...]:
    """A uniform ``size``-subset of ``range(universe)`` as a sorted tuple.

    Partial Fisher-Yates driven by the stream keyed by ``seed``.
    """
    if not 0 <= size <= universe:
        raise ValueError(f"cannot pick {size} elements from {universe}")
    pool = list(range(universe))
    for j in range(size):
        i = j + uniform_below(seed, j, universe - j)
        pool[j], pool[i] = pool[i], pool[j]
    return tuple(sorted(pool[:size]))


def shuffled(seed: int, universe: int) -> list[int]:
    """Seeded Fisher-Yates permutation of ``range(universe)``."""
    pool = list(range(universe))
    for j in range(universe - 1):
        i = j + uniform_below(seed, j, universe - j)
        pool[j], pool[i] = pool[i], pool[j]
    return pool
