import numpy as np
import pytest

from sepcert import BipartiteOperator

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    if rep.failed or (rep.when == "call" and n not in _criteria):
        _criteria[n] = (title, "FAIL" if rep.failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, status = _criteria[n]
        terminalreporter.write_line(f"criterion {n} ({title}): {status}")


# random matrix helpers


def rand_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rand_herm(rng, d):
    x = rand_complex(rng, d, d)
    return (x + x.conj().T) / 2


def rand_psd(rng, d, rank=None):
    rank = d if rank is None else rank
    x = rand_complex(rng, d, rank)
    return x @ x.conj().T


def rand_unitary(rng, d):
    q, r = np.linalg.qr(rand_complex(rng, d, d))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def compress(rng, h, basis):
    """Hermitian matrix supported on the column span of ``basis``."""
    return basis @ h @ basis.conj().T


def rand_rank2_psd(rng, k, m):
    """Random PSD matrix of tensor rank two, drawn from three regimes."""
    kind = rng.integers(3)
    if kind == 0:
        c1, c2 = rand_psd(rng, k, rng.integers(1, k + 1)), rand_psd(rng, k, rng.integers(1, k + 1))
        d1, d2 = rand_psd(rng, m, rng.integers(1, m + 1)), rand_psd(rng, m, rng.integers(1, m + 1))
        mat = np.kron(c1, d1) + np.kron(c2, d2)
    elif kind == 1:
        # dominant PSD product plus a small indefinite term inside its image
        rk, rm = rng.integers(2, k + 1), rng.integers(2, m + 1)
        bk = np.linalg.qr(rand_complex(rng, k, rk))[0]
        bm = np.linalg.qr(rand_complex(rng, m, rm))[0]
        c1 = compress(rng, rand_psd(rng, rk) + np.eye(rk), bk)
        d1 = compress(rng, rand_psd(rng, rm) + np.eye(rm), bm)
        c2 = compress(rng, rand_herm(rng, rk), bk)
        d2 = compress(rng, rand_herm(rng, rm), bm)
        lo_c = np.linalg.eigvalsh(bk.conj().T @ c1 @ bk)[0]
        lo_d = np.linalg.eigvalsh(bm.conj().T @ d1 @ bm)[0]
        eps = 0.5 * lo_c * lo_d / max(np.linalg.norm(c2, 2) * np.linalg.norm(d2, 2), 1e-12)
        mat = np.kron(c1, d1) + eps * np.kron(c2, d2)
    else:
        # two products with orthogonal supports on the left factor
        j = int(rng.integers(1, k)) if k > 1 else 1
        u = rand_unitary(rng, k)
        c1 = compress(rng, rand_psd(rng, j), u[:, :j])
        c2 = compress(rng, rand_psd(rng, k - j), u[:, j:]) if k > j else rand_psd(rng, k, 1)
        mat = np.kron(c1, rand_psd(rng, m)) + np.kron(c2, rand_psd(rng, m))
    mat = (mat + mat.conj().T) / 2
    return BipartiteOperator(mat / np.linalg.norm(mat), k, m)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
