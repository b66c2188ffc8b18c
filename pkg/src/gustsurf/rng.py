"""Portable seeded random stream (xoshiro256** seeded through splitmix64).

The generator is written out from its published update rule so that designs
of experiments and fold assignments are reproducible bit for bit in any
language, independently of numpy's bit generators.
"""

_MASK = (1 << 64) - 1


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & _MASK


def splitmix64(state):
    """Advance a splitmix64 state; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** pseudo-random generator.

    Parameters
    ----------
    seed : int
        Any integer; reduced modulo 2**64 and expanded into the 256-bit
        state with splitmix64.
    """

    def __init__(self, seed):
        sm = int(seed) & _MASK
        s = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            s.append(out)
        self._s = s

    def next_u64(self):
        s = self._s
        result = (_rotl((s[1] * 5) & _MASK, 7) * 9) & _MASK
        t = (s[1] << 17) & _MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self):
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound):
        """Unbiased integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def permutation(self, n):
        """Fisher-Yates shuffle of ``range(n)``, drawing from the top index down."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return perm


def latin_hypercube(n, bounds, seed):
    """Latin-hypercube design over a box.

    Column by column, a permutation of the ``n`` strata is drawn, followed
    by ``n`` uniform jitters; point ``i`` of column ``c`` is placed at
    ``lo + (perm[i] + u_i) / n * (hi - lo)``.

    Parameters
    ----------
    n : int
        Number of points.
    bounds : sequence of (lo, hi)
        One pair per dimension.
    seed : int

    Returns
    -------
    list of lists
        ``n`` rows of ``len(bounds)`` floats.
    """
    gen = Xoshiro256StarStar(seed)
    cols = []
    for lo, hi in bounds:
        perm = gen.permutation(n)
        jitter = [gen.random() for _ in range(n)]
        width = hi - lo
        cols.append([lo + (perm[i] + jitter[i]) / n * width for i in range(n)])
    return [list(row) for row in zip(*cols)]
