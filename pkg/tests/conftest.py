import pytest

from linkknot import primitives


@pytest.fixture
def tetra():
    return primitives.tetrahedron()


@pytest.fixture
def cube():
    return primitives.cube()


def all_twists(mesh, t):
    return mesh.with_twists({k: t for k in mesh.edges}, replace=True)


@pytest.fixture
def uniform():
    return all_twists


def random_test_mesh(rng):
    """Small random mesh: a triangulated sphere, a book, or a two-sided polygon."""
    kind = rng.integers(0, 4)
    if kind == 0:
        return primitives.random_sphere(int(rng.integers(0, 10 ** 6)),
                                        n_points=int(rng.integers(6, 28)))
    if kind == 1:
        return primitives.book(int(rng.integers(1, 9)))
    if kind == 2:
        return primitives.two_sided_polygon(int(rng.integers(3, 9)))
    return primitives.strip()


def random_twists(mesh, rng, lo=-4, hi=4):
    return {k: int(rng.integers(lo, hi + 1)) for k in mesh.edges}
