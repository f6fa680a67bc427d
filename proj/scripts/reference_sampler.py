#!/usr/bin/env python3
"""Reference reimplementation of the seeded sampler (xorshift64* seeded through
splitmix64, partial Fisher-Yates) for cross-language reproducibility checks.

    python3 scripts/reference_sampler.py fixed N M SEED
    python3 scripts/reference_sampler.py independent N P SEED
"""
import sys

MASK = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


class Xorshift64Star:
    def __init__(self, seed):
        self.s = splitmix64(seed) or 0x9E3779B97F4A7C15

    def next(self):
        s = self.s
        s ^= s >> 12
        s ^= (s << 25) & MASK
        s ^= s >> 27
        self.s = s
        return (s * 0x2545F4914F6CDD1D) & MASK

    def below(self, bound):
        threshold = ((1 << 64) - bound) % bound
        while True:
            r = self.next()
            if r >= threshold:
                return r % bound

    def unit(self):
        return (self.next() >> 11) * 2.0 ** -53


def fixed(n, m, seed):
    rng = Xorshift64Star(seed)
    idx = list(range(n))
    for i in range(m):
        j = i + rng.below(n - i)
        idx[i], idx[j] = idx[j], idx[i]
    return sorted(idx[:m])


def independent(n, p, seed):
    rng = Xorshift64Star(seed)
    return [i for i in range(n) if rng.unit() < p]


if __name__ == "__main__":
    kind, n = sys.argv[1], int(sys.argv[2])
    seed = int(sys.argv[4])
    idx = fixed(n, int(sys.argv[3]), seed) if kind == "fixed" else independent(n, float(sys.argv[3]), seed)
    # Ground set [n]: index i holds element i + 1.
    print(" ".join(str(i + 1) for i in idx))
