"""Counter-based Gaussian streams keyed by 64-bit seeds.

Each trial seed expands into its own short stream of standard normals, so a
batch of trials can be drawn in one vectorized call and every trial's noise
is independent of how the batch is split or ordered.

Seed derivation for Monte Carlo trial ``t`` at grid point ``i`` under master
seed ``s``::

    trial_seed = mix64(mix64(mix64(s) ^ i) ^ t)

where ``mix64`` is the SplitMix64 finalizer (add golden-ratio increment,
then xor-shift-multiply by 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
"""
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _u64(x):
    if isinstance(x, (int, np.integer)):
        # negative and >= 2**63 seeds both reduce onto 64 bits
        return np.uint64(int(x) % (1 << 64))
    return np.asarray(x).astype(np.uint64)


def mix64(x):
    z = np.atleast_1d(_u64(x)) + _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def trial_seeds(master, grid_index, trials):
    """Seeds for trials ``0..trials-1`` at one grid point (uint64 array)."""
    base = mix64(mix64(master) ^ np.uint64(grid_index))
    return mix64(base ^ np.arange(trials, dtype=np.uint64))


def standard_normals(seeds, count):
    """``count`` independent N(0, 1) draws per seed; shape ``(len(seeds), count)``."""
    seeds = np.atleast_1d(_u64(seeds))
    n_uniform = count + (count % 2)
    ctr = np.arange(n_uniform, dtype=np.uint64)
    bits = mix64((seeds[:, None] + ctr[None, :] * _GOLDEN).ravel()).reshape(seeds.size, n_uniform)
    u = ((bits >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0 ** -53  # (0, 1]
    u1, u2 = u[:, 0::2], u[:, 1::2]
    radius = np.sqrt(-2.0 * np.log(u1))
    z = np.empty((seeds.size, n_uniform))
    z[:, 0::2] = radius * np.cos(2.0 * np.pi * u2)
    z[:, 1::2] = radius * np.sin(2.0 * np.pi * u2)
    return z[:, :count]
