"""Hand-built spheres shared across test modules."""

from __future__ import annotations

from fliptet.sphere import SphereTriangulation


def tetrahedron() -> SphereTriangulation:
    return SphereTriangulation.of(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def octahedron() -> SphereTriangulation:
    # apexes 0 and 5 over the square 1,2,3,4
    return SphereTriangulation.of(
        6,
        [
            (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 1, 4),
            (5, 1, 2), (5, 2, 3), (5, 3, 4), (5, 1, 4),
        ],
    )


def icosahedron() -> SphereTriangulation:
    # apexes 0 and 11, upper ring 1..5, lower ring 6..10
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces.append((0, 1 + i, 1 + j))
        faces.append((11, 6 + i, 6 + j))
        faces.append((1 + i, 1 + j, 6 + i))
        faces.append((6 + i, 6 + j, 1 + j))
    return SphereTriangulation.of(12, faces)


def bipyramid(k: int) -> SphereTriangulation:
    # apexes 0 and 1 over the cycle 2..k+1
    faces = []
    for i in range(k):
        a, b = 2 + i, 2 + (i + 1) % k
        faces.append((0, a, b))
        faces.append((1, a, b))
    return SphereTriangulation.of(k + 2, faces)
