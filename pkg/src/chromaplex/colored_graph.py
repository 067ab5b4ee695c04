"""Bipartite (D+1)-edge-colored graphs encoded as permutation tuples.

A graph on 2p labelled vertices (black 1..p, white 1..p) is a tuple
(alpha_0, ..., alpha_D) of permutations of {1..p}: color i joins black k to
white alpha_i(k).  Faces (bicolored cycles), bubbles (components of
color-restricted subgraphs), jackets (regular embeddings induced by a cyclic
color order) and the degree derived from jacket genera are all computed here.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation, product_cycles
from .unionfind import UnionFind


@dataclass(frozen=True)
class ColoredGraph:
    D: int
    p: int
    alphas: tuple[Permutation, ...]

    @property
    def colors(self) -> range:
        return range(self.D + 1)

    @property
    def n_vertices(self) -> int:
        return 2 * self.p


@dataclass(frozen=True)
class Bubble:
    """A connected component of the subgraph retaining only `colors`."""

    colors: frozenset[int]
    black_vertices: tuple[int, ...]  # 1-based, sorted
    white_vertices: tuple[int, ...]


@dataclass(frozen=True)
class JacketSpec:
    """A (D+1)-cycle on the color set, stored as a successor map."""

    tau: tuple[int, ...]  # tau[i] = color following i

    def __post_init__(self):
        n = len(self.tau)
        if sorted(self.tau) != list(range(n)):
            raise ValueError("successor map is not a permutation of the colors")
        seen = 1
        c = self.tau[0]
        while c != 0:
            c = self.tau[c]
            seen += 1
        if seen != n:
            raise ValueError("successor map is not a single (D+1)-cycle")


def build(D: int, p: int, alphas: Sequence[Permutation]) -> ColoredGraph:
    if D < 1:
        raise ValueError("need at least two colors (D >= 1)")
    if p < 1:
        raise ValueError("need p >= 1")
    if len(alphas) != D + 1:
        raise ValueError(f"expected {D + 1} permutations, got {len(alphas)}")
    for i, a in enumerate(alphas):
        if a.n != p:
            raise ValueError(f"alpha_{i} has size {a.n}, expected {p}")
    return ColoredGraph(D=D, p=p, alphas=tuple(alphas))


def _check_colors(G: ColoredGraph, colors: Iterable[int]) -> tuple[int, ...]:
    cs = tuple(sorted(set(colors)))
    for c in cs:
        if not 0 <= c <= G.D:
            raise ValueError(f"color {c} outside {{0..{G.D}}}")
    return cs


def _subgraph_uf(G: ColoredGraph, colors: Sequence[int]) -> UnionFind:
    """Union-find over the 2p vertices (blacks 0..p-1, whites p..2p-1) with
    one union per retained edge."""
    p = G.p
    uf = UnionFind(2 * p)
    union = uf.union
    for c in colors:
        img = G.alphas[c].images.tolist()
        for k in range(p):
            union(k, p + img[k])
    return uf


def bubbles(G: ColoredGraph, colors: Iterable[int]) -> list[Bubble]:
    """Connected components of the color-restricted subgraph, in canonical
    order (smallest black vertex first, pure-white components after)."""
    cs = _check_colors(G, colors)
    p = G.p
    uf = _subgraph_uf(G, cs)
    members: dict[int, tuple[list[int], list[int]]] = {}
    for v in range(2 * p):
        root = uf.find(v)
        blk, wht = members.setdefault(root, ([], []))
        (blk if v < p else wht).append(v % p + 1)
    fro = frozenset(cs)
    out = [
        Bubble(colors=fro, black_vertices=tuple(blk), white_vertices=tuple(wht))
        for blk, wht in members.values()
    ]
    out.sort(key=lambda b: (not b.black_vertices, (b.black_vertices or b.white_vertices)[0]))
    return out


def count_bubbles(G: ColoredGraph, colors: Iterable[int]) -> int:
    cs = _check_colors(G, colors)
    if not cs:
        return 2 * G.p
    return _subgraph_uf(G, cs).n_components


def component_labels(G: ColoredGraph, colors: Iterable[int]) -> tuple[list[int], int]:
    """Per-vertex component label of the color-restricted subgraph, labels
    numbered by first appearance over blacks 0..p-1 then whites p..2p-1."""
    uf = _subgraph_uf(G, _check_colors(G, colors))
    return uf.labels(), uf.n_components


def face_count(G: ColoredGraph, i: int, j: int) -> int:
    """Number of {i,j}-faces: cycles of alpha_i o alpha_j^{-1}."""
    _check_colors(G, (i, j))
    if i == j:
        raise ValueError("a face needs two distinct colors")
    return product_cycles(G.alphas[i], G.alphas[j])


def bubble_census(G: ColoredGraph) -> dict[int, int]:
    """b_k(G) for k = 0..D+1, bubble counts summed over color subsets of
    size k.  b_2 goes through permutation products, the rest through
    union-find."""
    D, p = G.D, G.p
    census = {0: 2 * p, 1: (D + 1) * p}
    census[2] = sum(
        face_count(G, i, j) for i, j in itertools.combinations(range(D + 1), 2)
    )
    for k in range(3, D + 2):
        census[k] = sum(
            count_bubbles(G, subset)
            for subset in itertools.combinations(range(D + 1), k)
        )
    return census


def component_count(G: ColoredGraph) -> int:
    return _subgraph_uf(G, range(G.D + 1)).n_components


def is_connected(G: ColoredGraph) -> bool:
    return component_count(G) == 1


def canonical_jacket(D: int) -> JacketSpec:
    """The cyclic color order (0 1 ... D)."""
    return JacketSpec(tau=tuple(list(range(1, D + 1)) + [0]))


def all_jackets(D: int) -> Iterable[JacketSpec]:
    """All D! distinct (D+1)-cycles on {0..D}, inverses included."""
    for rest in itertools.permutations(range(1, D + 1)):
        cycle = (0,) + rest
        tau = [0] * (D + 1)
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            tau[a] = b
        yield JacketSpec(tau=tuple(tau))


def jacket_faces(G: ColoredGraph, spec: JacketSpec) -> int:
    """Face count of the regular embedding induced by the color cycle:
    sum over i of the {i, tau(i)} face counts."""
    if len(spec.tau) != G.D + 1:
        raise ValueError("jacket cycle length does not match the color count")
    return sum(product_cycles(G.alphas[i], G.alphas[spec.tau[i]]) for i in G.colors)


def jacket_genus(G: ColoredGraph, spec: JacketSpec) -> Fraction:
    """Genus of the embedding from Euler's relation
    2 - 2g = F - (D+1)p + 2p; integral for connected graphs."""
    F = jacket_faces(G, spec)
    return Fraction(2 - F + (G.D - 1) * G.p, 2)


def gurau_degree_via_faces(G: ColoredGraph) -> Fraction:
    """(D-1)!/2 * (D(D-1)/2 * p + D - b_2(G)), exact arithmetic."""
    D = G.D
    if D < 2:
        raise ValueError("degree is defined for D >= 2")
    b2 = sum(face_count(G, i, j) for i, j in itertools.combinations(range(D + 1), 2))
    fact = 1
    for m in range(2, D):
        fact *= m
    return Fraction(fact, 2) * (Fraction(D * (D - 1), 2) * G.p + D - b2)


def gurau_degree_via_jackets(G: ColoredGraph) -> Fraction:
    """Half the sum of jacket genera over all D! color cycles.

    Refuses disconnected input: Euler's relation only pins the genus of a
    connected embedding.
    """
    if G.D < 2:
        raise ValueError("degree is defined for D >= 2")
    if not is_connected(G):
        raise ValueError("degree via jackets needs a connected graph")
    total = Fraction(0)
    for spec in all_jackets(G.D):
        total += jacket_genus(G, spec)
    return total / 2


def to_text(G: ColoredGraph) -> str:
    """Header "D p", then the D+1 permutation lines, color 0 first."""
    lines = [f"{G.D} {G.p}"]
    lines.extend(a.serialize() for a in G.alphas)
    return "\n".join(lines) + "\n"


def from_text(text: str) -> ColoredGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty graph text")
    try:
        D, p = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    if len(lines) != D + 2:
        raise ValueError(f"expected {D + 1} permutation lines, got {len(lines) - 1}")
    alphas = [Permutation.deserialize(ln) for ln in lines[1:]]
    return build(D, p, alphas)
