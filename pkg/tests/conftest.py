import numpy as np
import pytest

from rggbetween.experiment import ExperimentConfig, convergence_study
from rggbetween.geometry import Disk
from rggbetween.rgg import Graph

ACCEPTANCE_LINES = []

# three-density convergence run shared by the acceptance and experiment tests
FIG3_CONFIG = ExperimentConfig(
    domain=Disk(1.0), densities=(10, 50, 500), realizations=300, bins=50, master_seed=0, min_count=50
)


@pytest.fixture(scope="session")
def fig3_table():
    import os
    import time

    t0 = time.perf_counter()
    table = convergence_study(FIG3_CONFIG, workers=os.cpu_count() or 1)
    return table, time.perf_counter() - t0


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Erdos-Renyi graph on random positions in the unit square."""
    i, j = np.triu_indices(n, 1)
    keep = rng.random(len(i)) < p
    return Graph(rng.random((n, 2)), np.stack([i[keep], j[keep]], axis=1))


def bisect_threshold(i, j, betas, n, rel=1e-13):
    """Connectivity threshold by bisection on the coupled realization (test oracle)."""
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    def connected(beta):
        keep = betas >= beta
        a = coo_matrix((np.ones(keep.sum()), (i[keep], j[keep])), shape=(n, n))
        return connected_components(a, directed=False)[0] == 1

    finite = betas[np.isfinite(betas)]
    lo, hi = 0.0, float(finite.max()) * 2 + 1.0
    assert connected(lo) and not connected(hi)
    while hi - lo > rel * hi:
        mid = 0.5 * (lo + hi)
        if connected(mid):
            lo = mid
        else:
            hi = mid
    return lo
