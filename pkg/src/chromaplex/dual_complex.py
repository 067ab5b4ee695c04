"""The 0/1-skeleton of the complex dual to a colored graph.

Points are the D-bubbles (one color deleted), colored by the missing color;
1-simplices come from the (D-1)-bubbles (two colors deleted), each joining
the two points that contain it.  Parallel edges are collapsed for the graph
metric but their multiplicity is retained.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import colored_graph as cg


@dataclass(frozen=True)
class DualComplex:
    n_points: int
    point_colors: tuple[int, ...]          # color of each point
    point_sizes: tuple[int, ...]           # graph vertices inside each bubble
    adjacency: tuple[tuple[int, ...], ...]  # deduplicated neighbor lists
    edge_multiplicity: dict[tuple[int, int], int]
    point_by_color_vertex: tuple[tuple[int, ...], ...]  # [color][vertex] -> point id
    simplex_counts: Optional[dict[int, int]] = None

    @property
    def n_edges(self) -> int:
        return len(self.edge_multiplicity)


def build_dual_complex(G: cg.ColoredGraph, with_simplex_counts: bool = False) -> DualComplex:
    """Points from per-color bubble labels, edges from color-pair bubbles.

    Disconnected graphs are allowed; the complex splits accordingly.
    """
    D, p = G.D, G.p
    n2 = 2 * p
    point_colors: list[int] = []
    point_sizes: list[int] = []
    point_of: list[list[int]] = []
    for i in range(D + 1):
        colors = [c for c in range(D + 1) if c != i]
        labels, n_bubbles = cg.component_labels(G, colors)
        offset = len(point_colors)
        sizes = [0] * n_bubbles
        for v in range(n2):
            sizes[labels[v]] += 1
        point_colors.extend([i] * n_bubbles)
        point_sizes.extend(sizes)
        point_of.append([offset + lab for lab in labels])

    multiplicity: dict[tuple[int, int], int] = {}
    for i, j in itertools.combinations(range(D + 1), 2):
        colors = [c for c in range(D + 1) if c != i and c != j]
        if colors:
            labels, n_bubbles = cg.component_labels(G, colors)
            reps = [-1] * n_bubbles
            for v in range(n2):
                if reps[labels[v]] < 0:
                    reps[labels[v]] = v
            rep_vertices = reps
        else:
            rep_vertices = range(n2)  # D = 1: the vertices themselves
        for v in rep_vertices:
            u_pt, v_pt = point_of[i][v], point_of[j][v]
            key = (u_pt, v_pt) if u_pt < v_pt else (v_pt, u_pt)
            multiplicity[key] = multiplicity.get(key, 0) + 1

    adj: list[set[int]] = [set() for _ in range(len(point_colors))]
    for (u, v) in multiplicity:
        adj[u].add(v)
        adj[v].add(u)

    counts = None
    if with_simplex_counts:
        census = cg.bubble_census(G)
        counts = {d: census[D - d] for d in range(D + 1)}

    return DualComplex(
        n_points=len(point_colors),
        point_colors=tuple(point_colors),
        point_sizes=tuple(point_sizes),
        adjacency=tuple(tuple(sorted(s)) for s in adj),
        edge_multiplicity=multiplicity,
        point_by_color_vertex=tuple(tuple(col) for col in point_of),
        simplex_counts=counts,
    )


def distance(cx: DualComplex, u: int, v: int) -> Optional[int]:
    """Graph distance in the 1-skeleton; None when unreachable.

    Distances 0..2 are resolved from the adjacency sets, longer ones by
    breadth-first search.
    """
    n = cx.n_points
    if not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"point id outside 0..{n - 1}")
    if u == v:
        return 0
    adj_u, adj_v = cx.adjacency[u], cx.adjacency[v]
    if len(adj_v) < len(adj_u):
        adj_u, adj_v = adj_v, adj_u
        small_is_u = False
    else:
        small_is_u = True
    target = v if small_is_u else u
    if target in adj_u:
        return 1
    v_set = set(adj_v)
    if any(w in v_set for w in adj_u):
        return 2
    seen = bytearray(n)
    seen[u] = 1
    frontier = deque([(u, 0)])
    while frontier:
        node, d = frontier.popleft()
        for w in cx.adjacency[node]:
            if w == v:
                return d + 1
            if not seen[w]:
                seen[w] = 1
                frontier.append((w, d + 1))
    return None


def sample_pair_distance(cx: DualComplex, rng: np.random.Generator) -> Optional[int]:
    """Distance between two independent uniform points (with replacement)."""
    if cx.n_points < 1:
        raise ValueError("empty complex")
    u = int(rng.integers(cx.n_points))
    v = int(rng.integers(cx.n_points))
    return distance(cx, u, v)


def point_color_census(cx: DualComplex) -> dict[int, int]:
    census: dict[int, int] = {}
    for c in cx.point_colors:
        census[c] = census.get(c, 0) + 1
    return census


def export_text(cx: DualComplex) -> str:
    """One line per point: "point_id color : neighbor ids...". """
    lines = []
    for pid in range(cx.n_points):
        nbrs = " ".join(str(w) for w in cx.adjacency[pid])
        lines.append(f"{pid} {cx.point_colors[pid]} :" + (f" {nbrs}" if nbrs else ""))
    return "\n".join(lines) + "\n"
