"""Exact rational lower bound from the minimum 1-norm chain problem.

A coherently oriented sphere is the boundary target of a linear program
over signed tetrahedron coefficients: minimize the 1-norm of a 3-chain
on the sphere's vertices whose boundary is the oriented sphere.  Every
decomposition into tetrahedra is a feasible integral point, so the exact
optimum is a lower bound for the minimal decomposition size.  The solver
is a dense two-phase simplex over exact rationals; no floating point is
involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .flipdist import BudgetExceeded
from .sphere import (
    SphereTriangulation,
    Triangle,
    cone_decomposition,
    oriented_faces,
)

try:
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as _rat

Tet = tuple[int, int, int, int]

# All C(V,4) vertex 4-subsets become variables, so the tableau grows
# steeply; past this many vertices the solve is refused outright.
MAX_VERTICES = 30

# Dantzig pivoting switches to Bland's rule after this many degenerate
# pivots in a row, so the search cannot cycle.
_STALL_LIMIT = 500


def _sort_sign(seq) -> tuple[tuple, int]:
    """Ascending copy of distinct integers with the permutation sign."""
    items = tuple(seq)
    inversions = sum(
        a > b for i, a in enumerate(items) for b in items[i + 1 :]
    )
    return tuple(sorted(items)), 1 if inversions % 2 == 0 else -1


def _tet_boundary(t: Tet) -> list[tuple[Triangle, int]]:
    """Faces of an ascending tet with the alternating boundary signs."""
    return [(t[:i] + t[i + 1 :], 1 if i % 2 == 0 else -1) for i in range(4)]


def orient_sphere(tau: SphereTriangulation) -> dict[Triangle, int]:
    """Coherent orientation of the sphere, as triangle -> sign.

    A sign of +1 means the triangle is traversed in ascending vertex
    order.  Every edge is induced once in each direction by its two
    triangles, so the result is a 2-cycle usable as a boundary target.
    The overall sign is a convention (the smallest triangle is taken
    ascending); flipping it globally changes nothing measured here.
    """
    out: dict[Triangle, int] = {}
    for f in oriented_faces(tau):
        key, sign = _sort_sign(f)
        out[key] = sign
    return out


def chain_boundary(chain) -> dict[Triangle, Fraction]:
    """Boundary of a tet chain by direct summation, zeros dropped."""
    acc: dict[Triangle, Fraction] = {}
    for t, coeff in chain.items():
        coeff = Fraction(coeff)
        if not coeff:
            continue
        key, sign = _sort_sign(t)
        if len(set(key)) != 4:
            raise ValueError(f"chain entry {t} is not four distinct vertices")
        for f, s in _tet_boundary(key):
            acc[f] = acc.get(f, Fraction(0)) + coeff * sign * s
    return {f: v for f, v in acc.items() if v}


def verify_chain(tau: SphereTriangulation, chain) -> bool:
    """Does the chain's boundary equal the oriented sphere exactly?"""
    target = {f: Fraction(s) for f, s in orient_sphere(tau).items()}
    try:
        return chain_boundary(chain) == target
    except ValueError:
        return False


def decomposition_chain(tau: SphereTriangulation, decomposition) -> dict[Tet, Fraction]:
    """Coefficients of +-1 making a decomposition bound the oriented sphere.

    Signs propagate across interior triangles (the two tetrahedra on a
    shared triangle must induce it oppositely) and the boundary fixes the
    global choice, so a validated ball yields a feasible integral point
    of the 1-norm problem with norm equal to its size.
    """
    tets = sorted(decomposition.tets)
    face_tets: dict[Triangle, list[tuple[Tet, int]]] = {}
    for t in tets:
        for f, s in _tet_boundary(t):
            face_tets.setdefault(f, []).append((t, s))
    sign = {tets[0]: 1}
    stack = [tets[0]]
    while stack:
        t = stack.pop()
        for f, s in _tet_boundary(t):
            for u, su in face_tets[f]:
                if u not in sign:
                    sign[u] = -sign[t] * s * su
                    stack.append(u)
    chain = {t: Fraction(s) for t, s in sign.items()}
    want = {f: Fraction(s) for f, s in orient_sphere(tau).items()}
    got = chain_boundary(chain)
    if got == want:
        return chain
    if got == {f: -v for f, v in want.items()}:
        return {t: -c for t, c in chain.items()}
    raise ValueError("the decomposition does not bound the oriented sphere")


@dataclass(frozen=True)
class LPSolution:
    """Exact optimum of the 1-norm chain problem.

    `chain` maps ascending tets to their nonzero signed coefficients.
    `dual_value` is the dual objective recomputed from the final
    tableau's multipliers; it equals `value` by strong duality, so the
    pair is a self-contained optimality certificate.  `status` is
    "optimal" on every solve that returns: infeasibility cannot occur
    for a valid sphere and oversized inputs raise instead.
    """

    value: Fraction
    chain: dict[Tet, Fraction]
    status: str
    dual_value: Fraction


def l1_min(
    tau: SphereTriangulation,
    rule: str = "dantzig",
    orientation: dict[Triangle, int] | None = None,
) -> LPSolution:
    """Minimize the 1-norm of a 3-chain whose boundary is the sphere.

    Variables are a positive and a negative part for every vertex
    4-subset; each 3-subset contributes one exact linear equation.  The
    dependent equations are eliminated first, a cone over the sphere is
    pivoted in as the starting basis (it is always feasible), and a
    two-phase simplex finishes the job.  `rule` picks the pivot column:
    "dantzig" (largest reduced cost, switching to Bland's rule after a
    long degenerate stall) or "bland" (first improving column).
    `orientation` overrides the boundary target; it must be a coherent
    orientation of the sphere's triangles.
    """
    tau.require_valid()
    v_count = tau.vertex_count
    if v_count > MAX_VERTICES:
        raise BudgetExceeded(
            f"the 1-norm solve handles at most {MAX_VERTICES} vertices, got {v_count}"
        )
    if rule not in ("dantzig", "bland"):
        raise ValueError(f"unknown pivot rule {rule!r}")
    target = orient_sphere(tau) if orientation is None else dict(orientation)
    target_frac = {f: Fraction(s) for f, s in target.items()}

    zero, one = _rat(0), _rat(1)
    faces = sorted(combinations(range(v_count), 3))
    fid = {f: i for i, f in enumerate(faces)}
    tets = sorted(combinations(range(v_count), 4))
    tid = {t: j for j, t in enumerate(tets)}
    n_t = len(tets)
    m = len(faces)

    # positive-part half of the constraint matrix, target appended; the
    # negative-part half is its negation and is materialized only in the
    # tableau
    rows = [[zero] * (n_t + 1) for _ in range(m)]
    for j, t in enumerate(tets):
        for f, s in _tet_boundary(t):
            rows[fid[f]][j] = _rat(s)
    for f, s in target.items():
        if f not in fid:
            raise ValueError(f"orientation names {f}, which is not a triangle")
        rows[fid[f]][n_t] = _rat(s)

    # row reduce to a full-rank equation system
    r = 0
    for col in range(n_t):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        if pr[col] != one:
            inv = one / pr[col]
            rows[r] = pr = [x * inv for x in pr]
        for i in range(m):
            if i != r and rows[i][col]:
                fct = rows[i][col]
                rows[i] = [a - fct * b for a, b in zip(rows[i], pr)]
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(rows[i]):
            raise ValueError("the target is not the boundary of any chain")
    rank = r
    reduced = [rows[i][:n_t] for i in range(rank)]
    b2 = [rows[i][n_t] for i in range(rank)]
    for i in range(rank):
        if b2[i] < 0:
            reduced[i] = [-x for x in reduced[i]]
            b2[i] = -b2[i]

    nv = 2 * n_t
    nall = nv + rank
    tableau = []
    basis = []
    for i in range(rank):
        plus = reduced[i]
        row = plus + [-x for x in plus]
        row += [one if k == i else zero for k in range(rank)]
        row.append(b2[i])
        tableau.append(row)
        basis.append(nv + i)

    # phase 1 reduced costs: unit cost on every artificial variable
    zrow = [zero] * (nall + 1)
    for row in tableau:
        zrow = [a + b for a, b in zip(zrow, row)]

    def pivot(pr_i: int, pc: int) -> None:
        nonlocal zrow
        prow = tableau[pr_i]
        if prow[pc] != one:
            inv = one / prow[pc]
            tableau[pr_i] = prow = [x * inv for x in prow]
        for i in range(rank):
            if i != pr_i and tableau[i][pc]:
                fct = tableau[i][pc]
                tableau[i] = [a - fct * b for a, b in zip(tableau[i], prow)]
        if zrow[pc]:
            fct = zrow[pc]
            zrow = [a - fct * b for a, b in zip(zrow, prow)]
        basis[pr_i] = pc

    # crash the cone chain in as the starting basis: it solves the
    # system, its columns are independent, and it leaves every
    # artificial variable at zero, so phase 1 ends before it starts
    deg = tau.degrees()
    apex = min(w for w in range(v_count) if deg[w] == max(deg.values()))
    warm = decomposition_chain(tau, cone_decomposition(tau, apex))
    warm_bd = chain_boundary(warm)
    if warm_bd != target_frac:
        if {f: -c for f, c in warm_bd.items()} == target_frac:
            warm = {t: -c for t, c in warm.items()}
        else:
            warm = None
    if warm is not None:
        for t in sorted(warm):
            pc = tid[t] if warm[t] > 0 else n_t + tid[t]
            pr_i = next(
                (i for i in range(rank) if basis[i] >= nv and tableau[i][pc]),
                None,
            )
            if pr_i is None:
                raise RuntimeError("the starting chain is linearly dependent")
            pivot(pr_i, pc)
        if zrow[nall] != 0:
            raise RuntimeError("the starting chain does not solve the system")

    pivots = 0

    def run_phase() -> None:
        nonlocal pivots
        bland = rule == "bland"
        stall = 0
        while True:
            pc = None
            if bland:
                for j in range(nv):
                    if zrow[j] > 0:
                        pc = j
                        break
            else:
                best = zero
                for j in range(nv):
                    if zrow[j] > best:
                        best, pc = zrow[j], j
            if pc is None:
                return
            pr_i, best_ratio = None, None
            for i in range(rank):
                a = tableau[i][pc]
                if a > 0:
                    ratio = tableau[i][nall] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[pr_i])
                    ):
                        best_ratio, pr_i = ratio, i
            if pr_i is None:
                raise RuntimeError("the 1-norm program came out unbounded")
            before = zrow[nall]
            pivot(pr_i, pc)
            pivots += 1
            if zrow[nall] == before:
                stall += 1
                if stall >= _STALL_LIMIT:
                    bland = True
            else:
                stall = 0

    if warm is None:
        run_phase()
        if zrow[nall] != 0:
            raise RuntimeError("phase 1 ended short of feasibility")

    # leave no artificial variable basic, then rebuild the cost row for
    # the real objective
    for i in range(rank):
        if basis[i] >= nv:
            pc = next((j for j in range(nv) if tableau[i][j]), None)
            if pc is None:
                raise RuntimeError("a dependent row survived the reduction")
            pivot(i, pc)
    zrow = [zero] * (nall + 1)
    for i in range(rank):
        if basis[i] < nv:
            zrow = [a + b for a, b in zip(zrow, tableau[i])]
    for j in range(nv):
        zrow[j] = zrow[j] - one
    run_phase()

    objective = zero
    coeff: dict[Tet, object] = {}
    for i in range(rank):
        bi, val = basis[i], tableau[i][nall]
        if bi < nv and val:
            if zrow[bi] != 0:
                raise RuntimeError("complementary slackness failed at the optimum")
            objective += val
            t = tets[bi % n_t]
            delta = val if bi < n_t else -val
            coeff[t] = coeff.get(t, zero) + delta
    chain = {t: Fraction(c) for t, c in coeff.items() if c}

    # optimality certificate, recomputed from scratch in rationals: the
    # multipliers price every column at or below its cost and reproduce
    # the objective from the right-hand side
    for j in range(nv):
        if zrow[j] > 0:
            raise RuntimeError("a positive reduced cost survived the solve")
    dual = [zrow[nv + i] for i in range(rank)]
    dual_value = sum((y * b for y, b in zip(dual, b2)), zero)
    if dual_value != objective:
        raise RuntimeError("the dual certificate does not match the optimum")
    if chain_boundary(chain) != target_frac:
        raise RuntimeError("the optimal chain does not bound the target")

    return LPSolution(
        value=Fraction(objective),
        chain=chain,
        status="optimal",
        dual_value=Fraction(dual_value),
    )
