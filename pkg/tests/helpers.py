import numpy as np


def planted_sparse(seed, n=500, D=50, k=5, sigma=0.01):
    """Gaussian design with a k-sparse coefficient vector of magnitudes in [1, 2]."""
    rng = np.random.default_rng(seed)
    phi = rng.normal(size=(n, D))
    support = np.sort(rng.choice(D, k, replace=False))
    beta = np.zeros(D)
    beta[support] = rng.choice([-1.0, 1.0], k) * rng.uniform(1.0, 2.0, k)
    y = phi @ beta + sigma * rng.normal(size=n)
    return phi, y, set(int(i) for i in support), beta
