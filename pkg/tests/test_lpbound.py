from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fliptet.family import (
    bottom_triangulation,
    explicit_flip_path,
    top_triangulation,
)
from fliptet.flipdist import BudgetExceeded
from fliptet.lpbound import (
    chain_boundary,
    decomposition_chain,
    l1_min,
    orient_sphere,
    verify_chain,
)
from fliptet.polygon import random_triangulation
from fliptet.sphere import cone_decomposition, glue
from fliptet.tetdecomp import from_flip_path, min_tet

from fixtures import bipyramid, octahedron, tetrahedron


def glued_family(n):
    return glue(top_triangulation(n), bottom_triangulation(n))


def test_orient_tetrahedron_is_a_tet_boundary():
    assert orient_sphere(tetrahedron()) == {
        (0, 1, 2): 1,
        (0, 1, 3): -1,
        (0, 2, 3): 1,
        (1, 2, 3): -1,
    }


def test_orientation_cancels_on_every_edge():
    for tau in (octahedron(), glued_family(2)):
        induced = {}
        for (a, b, c), s in orient_sphere(tau).items():
            for e, d in (((a, b), s), ((b, c), s), ((a, c), -s)):
                induced.setdefault(e, []).append(d)
        assert all(sorted(ds) == [-1, 1] for ds in induced.values())


def test_l1_min_tetrahedron():
    sol = l1_min(tetrahedron())
    assert sol.value == 1
    assert sol.status == "optimal"
    assert sol.chain == {(0, 1, 2, 3): Fraction(-1)}
    assert verify_chain(tetrahedron(), sol.chain)


def test_l1_min_octahedron_meets_the_minimum():
    sol = l1_min(octahedron())
    best = min_tet(octahedron())
    assert sol.value == best.size == 4


def test_l1_min_glued_families():
    assert l1_min(glued_family(2)).value == 7
    assert l1_min(glued_family(3)).value == 9


def test_l1_min_pentagonal_bipyramid():
    assert l1_min(bipyramid(5)).value == 5


def test_dual_value_certifies():
    for tau in (tetrahedron(), octahedron(), glued_family(2)):
        sol = l1_min(tau)
        assert sol.dual_value == sol.value


def test_orientation_flip_leaves_value_unchanged():
    for tau in (octahedron(), glued_family(2)):
        flipped = {f: -s for f, s in orient_sphere(tau).items()}
        assert l1_min(tau, orientation=flipped).value == l1_min(tau).value


def test_bland_rule_agrees():
    assert l1_min(tetrahedron(), rule="bland").value == 1
    assert l1_min(octahedron(), rule="bland").value == 4


def test_unknown_rule_rejected():
    with pytest.raises(ValueError, match="pivot rule"):
        l1_min(tetrahedron(), rule="steepest")


def test_vertex_guard():
    with pytest.raises(BudgetExceeded, match="at most 30"):
        l1_min(bipyramid(29))


def test_bad_orientation_keys_rejected():
    with pytest.raises(ValueError, match="not a triangle"):
        l1_min(tetrahedron(), orientation={(0, 1, 9): 1})


def test_incoherent_orientation_rejected():
    all_plus = {f: 1 for f in tetrahedron().triangles}
    with pytest.raises(ValueError, match="not the boundary"):
        l1_min(tetrahedron(), orientation=all_plus)


def test_verify_chain_rejects_zero_chain():
    assert not verify_chain(tetrahedron(), {})
    assert not verify_chain(tetrahedron(), {(0, 1, 2, 3): Fraction(0)})


def test_verify_chain_rejects_malformed_and_scaled():
    tau = tetrahedron()
    good = l1_min(tau).chain
    assert not verify_chain(tau, {(0, 1, 2, 2): Fraction(1)})
    assert not verify_chain(tau, {t: c / 2 for t, c in good.items()})


def test_decompositions_are_feasible_integral_points():
    tau = glued_family(2)
    stack = from_flip_path(
        top_triangulation(2), bottom_triangulation(2), explicit_flip_path(2)
    )
    for d in (stack, min_tet(tau).witness, cone_decomposition(tau, 0)):
        chain = decomposition_chain(tau, d)
        assert verify_chain(tau, chain)
        assert sum(abs(c) for c in chain.values()) == len(d)
        assert all(abs(c) == 1 for c in chain.values())


def test_chain_boundary_of_unsorted_tet():
    # odd permutations flip the sign, so both spellings agree
    assert chain_boundary({(1, 0, 2, 3): Fraction(1)}) == chain_boundary(
        {(0, 1, 2, 3): Fraction(-1)}
    )


def test_l1_bounds_min_tet_on_random_spheres():
    rng = random.Random(21)
    for _ in range(6):
        n = rng.randrange(6, 9)
        while True:
            a = random_triangulation(n, rng)
            b = random_triangulation(n, rng)
            if not (a.diagonals & b.diagonals):
                break
        tau = glue(a, b)
        sol = l1_min(tau)
        assert verify_chain(tau, sol.chain)
        assert sol.value <= min_tet(tau).size
