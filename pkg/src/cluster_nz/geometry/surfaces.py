"""Exchange matrices of ideal triangulations of punctured surfaces."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from ..cluster import ExchangeMatrix, validate_exchange_matrix
from ..errors import BadIncidence, SelfFoldedEdge


@dataclass(frozen=True)
class Triangulation:
    num_edges: int
    triangles: tuple[tuple[int, int, int], ...]
    """Edge labels of each triangle, listed clockwise."""

    @classmethod
    def from_json(cls, text: str) -> Triangulation:
        data = json.loads(text)
        return cls(int(data["edges"]), tuple(tuple(int(x) for x in t) for t in data["triangles"]))


def validate_triangulation(tri: Triangulation):
    slots = Counter()
    for tr in tri.triangles:
        if len(tr) != 3:
            raise BadIncidence(f"triangle {tr} does not have three sides")
        if len(set(tr)) < 3:
            raise SelfFoldedEdge(f"triangle {tr} repeats an edge")
        for e in tr:
            if not 1 <= e <= tri.num_edges:
                raise BadIncidence(f"edge {e} outside 1..{tri.num_edges}")
            slots[e] += 1
    for e in range(1, tri.num_edges + 1):
        if slots[e] != 2:
            raise BadIncidence(f"edge {e} appears in {slots[e]} triangle sides, expected 2")


def b_from_triangulation(tri: Triangulation) -> ExchangeMatrix:
    """B_Gamma: each triangle (a, b, c) adds +1 on a->b, b->c, c->a and -1 on the reverses."""
    validate_triangulation(tri)
    n = tri.num_edges
    b = [[0] * n for _ in range(n)]
    for tr in tri.triangles:
        for i, j in zip(tr, tr[1:] + tr[:1]):
            b[i - 1][j - 1] += 1
            b[j - 1][i - 1] -= 1
    return validate_exchange_matrix(b)


ONCE_PUNCTURED_TORUS = Triangulation(3, ((1, 2, 3), (1, 2, 3)))
