"""Mutation networks, Neumann-Zagier matrices and the block matrices alpha, L, X."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cluster import (
    MutationSequence,
    inverse_permutation,
    matrix_trajectory,
)
from .errors import (
    EmptySequence,
    InvariantViolation,
    LengthMismatch,
    NotFullyMutated,
    NotNilpotent,
    NotSkewSymmetric,
)
from .linalg import add, det_int, identity, matmul, perm_matrix, sub, to_tuple, transpose, zeros
from .tropical import f_matrix, parse_signs

IntMatrix = tuple[tuple[int, ...], ...]
Vertex = tuple[int, int]  # (i, t), 1 <= i <= n, 0 <= t <= T


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _canonical(v: Vertex) -> tuple[int, int]:
    i, t = v
    return (t, i)


@dataclass(frozen=True)
class VertexClass:
    members: tuple[Vertex, ...]

    @property
    def representative(self) -> Vertex:
        return min(self.members, key=_canonical)

    def __contains__(self, v) -> bool:
        return v in self.members


@dataclass(frozen=True)
class MutationNetwork:
    gamma: MutationSequence
    classes: tuple[VertexClass, ...]
    N0: IntMatrix
    Nplus: IntMatrix
    Nminus: IntMatrix
    row_order: str  # "mutation-point" or "canonical"

    @property
    def fully_mutated(self) -> bool:
        return self.row_order == "mutation-point"

    def class_index(self, v: Vertex) -> int:
        """0-based row of the class containing ``v``."""
        i, t = v
        if t == self.gamma.T:
            v = (i, 0)
        for r, c in enumerate(self.classes):
            if v in c.members:
                return r
        raise KeyError(v)


@dataclass(frozen=True)
class NZMatrices:
    Aplus: IntMatrix
    Aminus: IntMatrix
    A0: IntMatrix

    def signed(self, eps: Sequence) -> IntMatrix:
        eps = parse_signs(eps)
        T = len(self.A0[0]) if self.A0 else 0
        if len(eps) != T:
            raise LengthMismatch(f"{len(eps)} signs for {T} mutations")
        src = {"+": self.Aplus, "-": self.Aminus, "0": self.A0}
        return tuple(
            tuple(src[eps[t]][r][t] for t in range(T)) for r in range(len(self.A0))
        )


def _classes(gamma: MutationSequence) -> tuple[_UnionFind, list[list[Vertex]]]:
    n, T = gamma.n, gamma.T
    uf = _UnionFind()
    for t in range(T + 1):
        for i in range(1, n + 1):
            uf.find((i, t))
    for t in range(1, T + 1):
        k, s = gamma.m[t - 1], gamma.sigma[t - 1]
        for i in range(1, n + 1):
            if i != k:
                uf.union((i, t - 1), (s[i - 1], t))
    for i in range(1, n + 1):
        uf.union((i, T), (i, 0))
    groups: dict = {}
    for t in range(T + 1):
        for i in range(1, n + 1):
            groups.setdefault(uf.find((i, t)), []).append((i, t))
    return uf, list(groups.values())


def _direct_adjacency(gamma, bs, index_of) -> tuple[list, list, list]:
    rows = len(set(index_of.values()))
    T = gamma.T
    n0, npl, nmi = zeros(rows, T), zeros(rows, T), zeros(rows, T)
    for t in range(1, T + 1):
        k, s = gamma.m[t - 1], gamma.sigma[t - 1]
        n0[index_of[(k, t - 1)]][t - 1] += 1
        n0[index_of[(s[k - 1], t)]][t - 1] += 1
        for i in range(1, gamma.n + 1):
            b = bs[t - 1][k, i]
            if b > 0:
                npl[index_of[(i, t - 1)]][t - 1] += b
            elif b < 0:
                nmi[index_of[(i, t - 1)]][t - 1] -= b
    return n0, npl, nmi


def _formula_adjacency(gamma, bs, classes) -> tuple[list, list, list]:
    T = gamma.T
    n0, npl, nmi, npl2, nmi2 = (zeros(len(classes), T) for _ in range(5))
    for r, members in enumerate(classes):
        for t in range(1, T + 1):
            k, s = gamma.m[t - 1], gamma.sigma[t - 1]
            inv = inverse_permutation(s)
            b = bs[t - 1]
            for i, u in members + tuple((i, T) for i, u in members if u == 0):
                n0[r][t - 1] += (i == k and u == t - 1) + (i == s[k - 1] and u == t)
                if u == t - 1:
                    npl[r][t - 1] += max(b[k, i], 0)
                    nmi[r][t - 1] += max(-b[k, i], 0)
                if u == t:
                    npl2[r][t - 1] += max(b[k, inv[i - 1]], 0)
                    nmi2[r][t - 1] += max(-b[k, inv[i - 1]], 0)
    if npl != npl2 or nmi != nmi2:
        raise InvariantViolation("the two adjacency formulas for N+/N- disagree")
    return n0, npl, nmi


def build_network(gamma: MutationSequence, check: bool = True) -> MutationNetwork:
    if gamma.T == 0:
        raise EmptySequence("a mutation network needs at least one mutation")
    bs = matrix_trajectory(gamma)
    _, groups = _classes(gamma)
    # classes containing (i, T) also contain (i, 0); drop the duplicate layer
    groups = [sorted((v for v in g if v[1] != gamma.T), key=_canonical) for g in groups]
    points = [(gamma.m[t - 1], t - 1) for t in range(1, gamma.T + 1)]
    cls_of = {v: tuple(g) for g in groups for v in g}
    fully = len(groups) == gamma.T and len({cls_of[p] for p in points}) == gamma.T
    if fully:
        ordered = [cls_of[p] for p in points]
        order = "mutation-point"
    else:
        ordered = [tuple(g) for g in sorted(groups, key=lambda g: _canonical(g[0]))]
        order = "canonical"
    index_of = {}
    for r, g in enumerate(ordered):
        for v in g:
            index_of[v] = r
    for i in range(1, gamma.n + 1):
        index_of[(i, gamma.T)] = index_of[(i, 0)]
    n0, npl, nmi = _direct_adjacency(gamma, bs, index_of)
    if check:
        if (n0, npl, nmi) != _formula_adjacency(gamma, bs, ordered):
            raise InvariantViolation("direct and formula-based adjacency matrices disagree")
        if any(sum(n0[r][t] for r in range(len(ordered))) != 2 for t in range(gamma.T)):
            raise InvariantViolation("a column of N0 does not sum to 2")
    classes = tuple(VertexClass(g) for g in ordered)
    return MutationNetwork(gamma, classes, to_tuple(n0), to_tuple(npl), to_tuple(nmi), order)


def nz_matrices(net: MutationNetwork | MutationSequence) -> NZMatrices:
    if isinstance(net, MutationSequence):
        net = build_network(net)
    return NZMatrices(
        to_tuple(sub(net.N0, net.Nplus)), to_tuple(sub(net.N0, net.Nminus)), net.N0
    )


def signed_nz(net: MutationNetwork | MutationSequence, eps) -> IntMatrix:
    return nz_matrices(net).signed(eps)


# ----------------------------------------------------------------------
# block matrices


def _block(t: int, T: int) -> int:
    """0-based block position of block t (block 0 is block T)."""
    return (t - 1) % T


def _place(big, blk, row_block: int, col_block: int, n: int):
    for i in range(n):
        for j in range(n):
            if blk[i][j]:
                big[row_block * n + i][col_block * n + j] = blk[i][j]


def _h(k: int, n: int):
    h = identity(n)
    h[k - 1][k - 1] = 0
    return h


def alpha_matrix(gamma: MutationSequence) -> IntMatrix:
    n, T = gamma.n, gamma.T
    if T == 0:
        raise EmptySequence("alpha needs at least one mutation")
    a = zeros(T * n, T * n)
    for t in range(1, T + 1):
        blk = matmul(perm_matrix(gamma.sigma[t - 1]), _h(gamma.m[t - 1], n))
        _place(a, blk, _block(t, T), _block(t - 1, T), n)
    return to_tuple(a)


def l_matrix(gamma: MutationSequence, eps, bs=None) -> IntMatrix:
    n, T = gamma.n, gamma.T
    eps = parse_signs(eps)
    if len(eps) != T:
        raise LengthMismatch(f"{len(eps)} signs for {T} mutations")
    bs = bs or matrix_trajectory(gamma)
    a = zeros(T * n, T * n)
    for t in range(1, T + 1):
        ft = transpose(f_matrix(bs[t - 1], gamma.m[t - 1], eps[t - 1]))
        blk = matmul(perm_matrix(gamma.sigma[t - 1]), ft)
        _place(a, blk, _block(t, T), _block(t - 1, T), n)
    return to_tuple(a)


def neumann_inverse(alpha: IntMatrix) -> IntMatrix:
    """(I - alpha)^-1 as the finite sum of powers; raises NotNilpotent otherwise."""
    size = len(alpha)
    total = identity(size)
    power = [list(r) for r in alpha]
    for _ in range(size):
        if not any(any(r) for r in power):
            return to_tuple(total)
        total = add(total, power)
        power = matmul(power, alpha)
    if any(any(r) for r in power):
        raise NotNilpotent("alpha is not nilpotent; the sequence is not fully mutated")
    return to_tuple(total)


def x_matrix(gamma: MutationSequence, eps, _inv=None, _bs=None) -> IntMatrix:
    inv = _inv or neumann_inverse(alpha_matrix(gamma))
    return to_tuple(matmul(inv, sub(identity(len(inv)), l_matrix(gamma, eps, _bs))))


def x_position(gamma: MutationSequence, i: int, t: int) -> int:
    """0-based index of (i, t) in a block matrix."""
    return _block(t, gamma.T) * gamma.n + (i - 1)


def nz_from_x(gamma: MutationSequence, x: IntMatrix) -> IntMatrix:
    """Restrict X to the rows and columns (m_s, s-1)."""
    pos = [x_position(gamma, gamma.m[s - 1], s - 1) for s in range(1, gamma.T + 1)]
    return tuple(tuple(x[p][q] for q in pos) for p in pos)


# ----------------------------------------------------------------------
# fully mutated detection


def _alpha_graph(gamma: MutationSequence) -> dict[Vertex, Vertex]:
    """Arrows of G_alpha: (sigma_t(j), t) -> (j, t-1) for j != m_t, with block 0 = block T."""
    T = gamma.T
    succ = {}
    for t in range(1, T + 1):
        k, s = gamma.m[t - 1], gamma.sigma[t - 1]
        src_t = T if t == T else t
        dst_t = T if t - 1 == 0 else t - 1
        for j in range(1, gamma.n + 1):
            if j != k:
                succ[(s[j - 1], src_t)] = (j, dst_t)
    return succ


def _has_cycle(succ: dict) -> bool:
    state: dict = {}
    for start in succ:
        path = []
        v = start
        while v in succ and v not in state:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if v in state and state[v] == 1:
            return True
        for p in path:
            state[p] = 2
    return False


def fully_mutated_conditions(gamma: MutationSequence) -> dict[str, bool]:
    if gamma.T == 0:
        return {"mutation_points": gamma.n == 0, "class_count": gamma.n == 0,
                "nilpotent": True, "acyclic": True}
    _, groups = _classes(gamma)
    points = {(gamma.m[t - 1], t - 1) for t in range(1, gamma.T + 1)}
    alpha = alpha_matrix(gamma)
    try:
        neumann_inverse(alpha)
        nilpotent = True
    except NotNilpotent:
        nilpotent = False
    return {
        "mutation_points": all(any(v in points for v in g) for g in groups),
        "class_count": len(groups) == gamma.T,
        "nilpotent": nilpotent,
        "acyclic": not _has_cycle(_alpha_graph(gamma)),
    }


def is_fully_mutated(gamma: MutationSequence) -> bool:
    cond = fully_mutated_conditions(gamma)
    values = set(cond.values())
    if len(values) != 1:
        raise InvariantViolation(f"fully-mutated criteria disagree: {cond}")
    return values.pop()


def require_fully_mutated(gamma: MutationSequence):
    if gamma.T == 0 or not is_fully_mutated(gamma):
        raise NotFullyMutated("mutation sequence is not fully mutated")


def check_symplectic(gamma: MutationSequence) -> bool:
    """Whether A+ A-^T is symmetric."""
    require_fully_mutated(gamma)
    b = gamma.B.entries
    if any(b[i][j] != -b[j][i] for i in range(gamma.n) for j in range(gamma.n)):
        raise NotSkewSymmetric("symplectic check needs skew-symmetric B")
    nz = nz_matrices(gamma)
    prod = matmul(nz.Aplus, transpose(nz.Aminus))
    return all(prod[i][j] == prod[j][i] for i in range(len(prod)) for j in range(i))


def det_signed(gamma: MutationSequence, eps) -> int:
    return det_int(signed_nz(gamma, eps))


# ----------------------------------------------------------------------
# export


def to_dot(net: MutationNetwork) -> str:
    """Graphviz rendering: broken edges dashed, arrows with multiplicity labels."""
    g = net.gamma
    lines = ["digraph mutation_network {"]
    for r, c in enumerate(net.classes, start=1):
        i, t = c.representative
        lines.append(f'  e{r} [shape=circle, style=filled, label="({i},{t})"];')
    for t in range(1, g.T + 1):
        lines.append(f'  t{t} [shape=square, label="{t}"];')
    for r in range(len(net.classes)):
        for t in range(g.T):
            for _ in range(net.N0[r][t]):
                lines.append(f"  e{r + 1} -> t{t + 1} [style=dashed, arrowhead=none];")
            if net.Nplus[r][t]:
                lines.append(f'  t{t + 1} -> e{r + 1} [label="{net.Nplus[r][t]}"];')
            if net.Nminus[r][t]:
                lines.append(f'  e{r + 1} -> t{t + 1} [label="{net.Nminus[r][t]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
