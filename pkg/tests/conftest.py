import numpy as np
import pytest
from fastapi.testclient import TestClient

from jordanlens.config import Settings, get_settings
from jordanlens.exchange import write_matrix_file
from jordanlens.main import app
from jordanlens.models import Subspace


def line(n: int, *entries) -> Subspace:
    vector = np.zeros(n, dtype=complex)
    vector[: len(entries)] = entries
    return Subspace(n, (vector / np.linalg.norm(vector)).reshape(-1, 1))


@pytest.fixture
def settings():
    return Settings(tol=1e-8, samples=360, workers=1)


@pytest.fixture(scope="function")
def client(settings):
    app.dependency_overrides[get_settings] = lambda: settings
    with TestClient(app) as test_client:
        yield test_client
    app.dependency_overrides.clear()


@pytest.fixture
def quarter_pair():
    """Two lines in C^2 at angle π/4"""
    return line(2, 1), line(2, 1, 1)


@pytest.fixture
def third_pair():
    """Two lines in C^2 at angle π/3"""
    return line(2, 1), line(2, np.cos(np.pi / 3), np.sin(np.pi / 3))


@pytest.fixture
def write_pair(tmp_path):
    def write(M: Subspace, N: Subspace, stem: str = "pair"):
        m_path = write_matrix_file(M.basis, tmp_path / f"{stem}_M.mat")
        n_path = write_matrix_file(N.basis, tmp_path / f"{stem}_N.mat")
        return str(m_path), str(n_path)

    return write
