"""Systems of n subspaces: direct sums, permutations, Hom spaces, defect,
intersection diagrams, structural predicates, operator-system recognition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BackendMismatch, DimensionMismatch, InvariantViolation
from .matrix import DEFAULT_TOL, EXACT, Matrix
from .subspace import (
    Subspace,
    image_under,
    intersect,
    orthoprojection,
    principal_angles,
    sum_,
)


class SubspaceSystem:
    """An ambient dimension with an ordered tuple of subspaces of C^d."""

    __slots__ = ("ambient_dim", "subspaces", "field")

    def __init__(self, ambient_dim: int, subspaces):
        subspaces = tuple(subspaces)
        if not subspaces:
            raise DimensionMismatch("a system needs at least one subspace")
        field = subspaces[0].field
        for s in subspaces:
            if s.ambient_dim != ambient_dim:
                raise DimensionMismatch("subspace ambient dimension differs from system")
            if s.field != field:
                raise BackendMismatch("subspaces with mixed backends")
        self.ambient_dim = ambient_dim
        self.subspaces = subspaces
        self.field = field

    @property
    def n(self) -> int:
        return len(self.subspaces)

    def dims(self):
        return tuple(s.dim for s in self.subspaces)

    def __eq__(self, other):
        if not isinstance(other, SubspaceSystem):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.field == other.field
            and self.subspaces == other.subspaces
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.subspaces))

    def __repr__(self):
        return f"SubspaceSystem(d={self.ambient_dim}, dims={self.dims()}, {self.field})"

    def is_zero(self) -> bool:
        return self.ambient_dim == 0

    def to_float(self, tol=DEFAULT_TOL) -> "SubspaceSystem":
        return SubspaceSystem(self.ambient_dim, [s.to_float(tol) for s in self.subspaces])

    def orthocomplement(self) -> "SubspaceSystem":
        return SubspaceSystem(self.ambient_dim, [s.orthocomplement() for s in self.subspaces])

    def apply(self, t: Matrix) -> "SubspaceSystem":
        """Image system under an invertible map."""
        return SubspaceSystem(t.rows, [image_under(t, s) for s in self.subspaces])


def zero_system(n: int, field=EXACT) -> SubspaceSystem:
    return SubspaceSystem(0, [Subspace.zero(0, field) for _ in range(n)])


def direct_sum(s: SubspaceSystem, t: SubspaceSystem) -> SubspaceSystem:
    """Block-diagonal embedding of each pair of subspaces."""
    if s.n != t.n:
        raise DimensionMismatch("direct_sum: systems have different arity")
    if s.field != t.field:
        raise BackendMismatch("direct_sum: backends differ")
    d = s.ambient_dim + t.ambient_dim
    subs = []
    for a, b in zip(s.subspaces, t.subspaces):
        blocks = Matrix.block_diag([a.basis, b.basis])
        subs.append(Subspace.span(blocks))
    return SubspaceSystem(d, subs)


def direct_sum_many(systems) -> SubspaceSystem:
    systems = list(systems)
    out = systems[0]
    for s in systems[1:]:
        out = direct_sum(out, s)
    return out


def permute(s: SubspaceSystem, sigma) -> SubspaceSystem:
    """Reorder subspaces: position i receives old subspace sigma(i) (1-based)."""
    perm = tuple(sigma)
    if sorted(perm) != list(range(1, s.n + 1)):
        raise DimensionMismatch(f"not a permutation of 1..{s.n}: {perm}")
    return SubspaceSystem(s.ambient_dim, [s.subspaces[i - 1] for i in perm])


def transposition(n: int, i: int, j: int):
    """The transposition (i j) as a permutation tuple for `permute`."""
    perm = list(range(1, n + 1))
    perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
    return tuple(perm)


@dataclass
class HomBasis:
    """Basis of {A : A E_i <= F_i for all i} as d_T x d_S matrices."""

    source: SubspaceSystem
    target: SubspaceSystem
    basis: list

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(s: SubspaceSystem, t: SubspaceSystem) -> HomBasis:
    """Intertwiner space via one stacked nullspace over the matrix entries.

    Each containment A E_i <= F_i contributes C_i A B_i = 0 with C_i the left
    annihilator of the target basis; rows stack Kronecker-style over vec(A)
    (column-major).
    """
    if s.n != t.n:
        raise DimensionMismatch("hom_space: systems have different arity")
    if s.field != t.field:
        raise BackendMismatch("hom_space: backends differ")
    ds, dt = s.ambient_dim, t.ambient_dim
    if ds == 0 or dt == 0:
        return HomBasis(s, t, [])
    blocks = []
    for e_i, f_i in zip(s.subspaces, t.subspaces):
        if e_i.dim == 0:
            continue
        c_i = f_i.basis.transpose().nullspace().transpose()
        if c_i.rows == 0:
            continue
        blocks.append(e_i.basis.transpose().kron(c_i))
    if not blocks:
        constraints = Matrix.zeros(0, dt * ds, s.field)
    else:
        constraints = Matrix.vstack(blocks)
    ker = constraints.nullspace()
    basis = [Matrix.unvec(ker.column(j), dt, ds) for j in range(ker.cols)]
    return HomBasis(s, t, basis)


def end_basis(s: SubspaceSystem):
    return hom_space(s, s).basis


def hom_dim(s: SubspaceSystem, t: SubspaceSystem) -> int:
    return hom_space(s, t).dim


@dataclass
class DefectReport:
    """Pairwise intersection/complement dimensions and both defect formulas."""

    dims: tuple
    ambient_dim: int
    m: dict
    nperp: dict
    defect: Fraction
    consistency: bool


def defect(s: SubspaceSystem) -> DefectReport:
    """Gelfand-Ponomarev defect of a four-subspace system, both formulas."""
    if s.n != 4:
        raise DimensionMismatch("defect is defined for four-subspace systems")
    m = {}
    nperp = {}
    total = Fraction(0)
    for i in range(4):
        for j in range(i + 1, 4):
            mij = intersect(s.subspaces[i], s.subspaces[j]).dim
            nij = s.ambient_dim - sum_(s.subspaces[i], s.subspaces[j]).dim
            m[(i + 1, j + 1)] = mij
            nperp[(i + 1, j + 1)] = nij
            total += mij - nij
    pair_form = total / 3
    direct_form = Fraction(sum(s.dims()) - 2 * s.ambient_dim)
    if pair_form != direct_form:
        raise InvariantViolation(
            f"defect formulas disagree: pairwise {pair_form} vs dimension count {direct_form}"
        )
    return DefectReport(
        dims=s.dims(),
        ambient_dim=s.ambient_dim,
        m=m,
        nperp=nperp,
        defect=direct_form,
        consistency=True,
    )


@dataclass
class IntersectionDiagram:
    """Undirected graph on subspace indices; edge i-j iff E_i ∩ E_j = 0."""

    n: int
    edges: frozenset
    connected: bool
    threshold: float | None = None

    def has_edge(self, i, j) -> bool:
        return frozenset((i, j)) in self.edges

    def isolated(self, i) -> bool:
        return not any(i in e for e in self.edges)


def _connected(n, edges) -> bool:
    if n == 0:
        return True
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for e in edges:
            if v in e:
                (w,) = set(e) - {v}
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == n


def intersection_diagram(s: SubspaceSystem, tol: float | None = None) -> IntersectionDiagram:
    """Exact zero-intersection test per pair; float backend uses the smallest
    principal angle > threshold as the zero surrogate and records it."""
    edges = set()
    threshold = None
    for i in range(s.n):
        for j in range(i + 1, s.n):
            a, b = s.subspaces[i], s.subspaces[j]
            if s.field == EXACT and tol is None:
                empty = intersect(a, b).is_zero()
            else:
                threshold = tol if tol is not None else 1e-6
                if a.dim == 0 or b.dim == 0:
                    empty = True
                else:
                    ang = principal_angles(a, b)
                    empty = bool(ang[0] > threshold)
            if empty:
                edges.add(frozenset((i + 1, j + 1)))
    edges = frozenset(edges)
    return IntersectionDiagram(s.n, edges, _connected(s.n, edges), threshold)


@dataclass
class SystemPredicates:
    reduced_above: bool
    reduced_below: bool
    nondegenerate: bool
    projection_sum_invertible: bool
    n_minus_1_property: bool


def predicates(s: SubspaceSystem) -> SystemPredicates:
    d = s.ambient_dim
    n = s.n
    subs = s.subspaces
    perps = [e.orthocomplement() for e in subs]

    def total(parts):
        acc = Subspace.zero(d, s.field)
        for p in parts:
            acc = sum_(acc, p)
        return acc

    reduced_above = all(
        total(subs[:k] + subs[k + 1 :]).is_full() for k in range(n)
    )
    reduced_below = all(
        total(perps[:k] + perps[k + 1 :]).is_full() for k in range(n)
    )
    nondegenerate = all(
        sum_(subs[i], subs[j]).is_full() and intersect(subs[i], subs[j]).is_zero()
        for i in range(n)
        for j in range(i + 1, n)
    )
    proj_sum = Matrix.zeros(d, d, s.field)
    for e in subs:
        proj_sum = proj_sum + orthoprojection(e)
    projection_sum_invertible = proj_sum.is_invertible()
    nm1 = True
    for k in range(n):
        rest = subs[:k] + subs[k + 1 :]
        cap = Subspace.full(d, s.field) if not rest else rest[0]
        for e in rest[1:]:
            cap = intersect(cap, e)
        if not cap.is_zero() or not total(rest).is_full():
            nm1 = False
            break
    return SystemPredicates(
        reduced_above=reduced_above,
        reduced_below=reduced_below,
        nondegenerate=nondegenerate,
        projection_sum_invertible=projection_sum_invertible,
        n_minus_1_property=nm1,
    )


@dataclass
class OperatorRealization:
    """Witness that a system is a bounded operator system S_{T,S}.

    change_of_basis W maps the input onto the realization
    (C^{k1+k2}; C^{k1}+0, 0+C^{k2}, graph T, cograph S) subspace-by-subspace.
    """

    T: Matrix
    S: Matrix
    change_of_basis: Matrix
    k1: int
    k2: int


def _graph_matrix(sub: Subspace, k1: int):
    """Split a graph-positioned subspace into T with graph T = sub, or None."""
    b = sub.basis
    d = b.rows
    x = b.take_rows(range(k1))
    y = b.take_rows(range(k1, d))
    if not x.is_invertible():
        return None
    return y @ x.inverse()


def is_bounded_operator_system(s: SubspaceSystem):
    """Recognize E1+E2 = H with the (1,2),(2,3),(4,1) pair conditions and
    reconstruct T, S with a change-of-basis witness; None when the criterion
    fails."""
    if s.n != 4:
        raise DimensionMismatch("operator-system test is for four-subspace systems")
    e1, e2, e3, e4 = s.subspaces
    d = s.ambient_dim
    for (a, b) in ((e1, e2), (e2, e3), (e4, e1)):
        if not intersect(a, b).is_zero() or not sum_(a, b).is_full():
            return None
    k1 = e1.dim
    k2 = e2.dim
    # coordinates in which E1 = first block, E2 = second block
    w = Matrix.hstack([e1.basis, e2.basis]).inverse()
    sys2 = s.apply(w)
    f1, f2, f3, f4 = sys2.subspaces
    t = _graph_matrix(f3, k1)
    if t is None:
        return None
    # cograph: swap the block order so E4 reads as a graph over E2
    swap_rows = list(range(k1, d)) + list(range(k1))
    f4_swapped = Subspace.span(f4.basis.take_rows(swap_rows))
    smat = _graph_matrix(f4_swapped, k2)
    if smat is None:
        return None
    return OperatorRealization(T=t, S=smat, change_of_basis=w, k1=k1, k2=k2)
