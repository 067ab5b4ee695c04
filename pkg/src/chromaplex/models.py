"""Samplers for the random graph models and uniform ribbon maps.

Three colored-graph ensembles (uniform tuple, quartic, recolored-copies) plus
the uniform ribbon map, its Euler genus, and the dangling-half-edge trim.
All samplers are pure functions of their RNG stream; the draw order is fixed
so results are reproducible from (seed, trial index).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import colored_graph as cg
from .perm import (
    Permutation,
    count_cycles,
    product_cycles,
    sample_fixed_point_free_involution,
    sample_uniform_permutation,
)
from .unionfind import UnionFind


@dataclass(frozen=True)
class QuarticWitness:
    """Per-bubble distinguished color, 1-based entries in {1..D}."""

    distinguished_colors: tuple[int, ...]


@dataclass(frozen=True)
class BaseGraph:
    """A fixed connected D-colored bipartite graph on 2t vertices; color j
    joins black k to white pis[j-1](k)."""

    D: int
    t: int
    pis: tuple[Permutation, ...]


@dataclass(frozen=True)
class RibbonMap:
    """Combinatorial map on 2p half-edges: delta pairs them into edges,
    psi walks the faces, delta o psi^{-1} walks the vertices."""

    p: int
    delta: Optional[Permutation]
    psi: Optional[Permutation]

    def __post_init__(self):
        if self.p == 0:
            if self.delta is not None or self.psi is not None:
                raise ValueError("the empty map carries no permutations")
            return
        n = 2 * self.p
        if self.delta.n != n or self.psi.n != n:
            raise ValueError("delta and psi must act on the 2p half-edges")
        img = self.delta.images
        idx = np.arange(n)
        if np.any(img == idx) or np.any(img[img] != idx):
            raise ValueError("delta must be a fixed-point-free involution")

    @property
    def is_empty(self) -> bool:
        return self.p == 0


EMPTY_RIBBON_MAP = RibbonMap(p=0, delta=None, psi=None)


def sample_uniform_model(D: int, p: int, rng: np.random.Generator) -> cg.ColoredGraph:
    """D+1 independent uniform permutations of {1..p}."""
    if D < 1 or p < 1:
        raise ValueError("uniform model needs D >= 1 and p >= 1")
    alphas = [sample_uniform_permutation(p, rng) for _ in range(D + 1)]
    return cg.build(D, p, alphas)


def sample_quartic_model(
    D: int, p: int, rng: np.random.Generator
) -> tuple[cg.ColoredGraph, QuarticWitness]:
    """Graph on 2*(2p) vertices: p four-vertex interaction bubbles, each with
    a uniformly distinguished color carrying the crossing pair, glued by a
    uniform alpha_0 on S_{2p}.

    Draw order: alpha_0, then the p distinguished colors.
    """
    if D < 2:
        raise ValueError("quartic model needs D >= 2")
    if p < 1:
        raise ValueError("quartic model needs p >= 1")
    size = 2 * p
    alpha0 = sample_uniform_permutation(size, rng)
    colors = rng.integers(1, D + 1, size=p)
    alphas = [alpha0]
    for i in range(1, D + 1):
        img = np.arange(size, dtype=np.int64)
        sel = 2 * np.flatnonzero(colors == i)  # 0-based index of vertex 2k-1
        img[sel] = sel + 1
        img[sel + 1] = sel
        alphas.append(Permutation(img, _trusted=True))
    witness = QuarticWitness(distinguished_colors=tuple(int(c) for c in colors))
    return cg.build(D, size, alphas), witness


def quartic_base(D: int) -> BaseGraph:
    """The four-vertex interaction bubble as a base graph (t = 2), with
    color 1 distinguished."""
    if D < 2:
        raise ValueError("quartic base needs D >= 2")
    swap = Permutation.from_one_line([2, 1])
    ident = Permutation.identity(2)
    return BaseGraph(D=D, t=2, pis=(swap,) + (ident,) * (D - 1))


def base_components(base: BaseGraph) -> list[list[int]]:
    """Connected components of the base graph; vertices listed 1-based as
    blacks 1..t then whites t+1..2t."""
    t = base.t
    uf = UnionFind(2 * t)
    for pi in base.pis:
        for k in range(t):
            uf.union(k, t + int(pi.images[k]))
    comps: dict[int, list[int]] = {}
    for v in range(2 * t):
        comps.setdefault(uf.find(v), []).append(v + 1)
    return list(comps.values())


def make_base_graph(D: int, t: int, pis: Sequence[Permutation]) -> BaseGraph:
    if D < 2:
        raise ValueError("base graph needs D >= 2")
    if t < 2:
        raise ValueError("base graph needs t >= 2")
    if len(pis) != D:
        raise ValueError(f"expected {D} permutations, got {len(pis)}")
    for j, pi in enumerate(pis, start=1):
        if pi.n != t:
            raise ValueError(f"pi_{j} has size {pi.n}, expected {t}")
    base = BaseGraph(D=D, t=t, pis=tuple(pis))
    comps = base_components(base)
    if len(comps) != 1:
        raise ValueError(
            f"base graph is disconnected: components {comps}"
        )
    return base


def base_to_text(base: BaseGraph) -> str:
    lines = [f"{base.D} {base.t}"]
    lines.extend(pi.serialize() for pi in base.pis)
    return "\n".join(lines) + "\n"


def base_from_text(text: str) -> BaseGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty base-graph text")
    try:
        D, t = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header line {lines[0]!r}") from exc
    if len(lines) != D + 1:
        raise ValueError(f"expected {D} permutation lines, got {len(lines) - 1}")
    pis = [Permutation.deserialize(ln) for ln in lines[1:]]
    return make_base_graph(D, t, pis)


def load_base_graph(path: str) -> BaseGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return base_from_text(fh.read())


def sample_uncolored_model(
    base: BaseGraph, p: int, rng: np.random.Generator
) -> cg.ColoredGraph:
    """p copies of the base graph, each with its colors permuted by an
    independent uniform element of S_D, glued by a uniform alpha_0.

    Copy k owns black/white labels (k-1)t+1 .. kt.  Draw order: alpha_0,
    then the color permutations for copies 1..p.
    """
    if p < 1:
        raise ValueError("need p >= 1")
    D, t = base.D, base.t
    size = t * p
    alpha0 = sample_uniform_permutation(size, rng)
    images = [np.empty(size, dtype=np.int64) for _ in range(D)]
    for k in range(p):
        gamma = rng.permutation(D)  # gamma[j-1] + 1 is the new color of base color j
        off = k * t
        for j in range(D):
            images[gamma[j]][off : off + t] = base.pis[j].images + off
    alphas = [alpha0] + [Permutation(img, _trusted=True) for img in images]
    return cg.build(D, size, alphas)


def sample_ribbon_map(p: int, rng: np.random.Generator) -> RibbonMap:
    """Uniform map with p edges: delta uniform fixed-point-free involution,
    psi uniform permutation, independent.  Draw order: delta, then psi."""
    if p < 1:
        raise ValueError("ribbon map needs p >= 1")
    delta = sample_fixed_point_free_involution(2 * p, rng)
    psi = sample_uniform_permutation(2 * p, rng)
    return RibbonMap(p=p, delta=delta, psi=psi)


def ribbon_genus(m: RibbonMap) -> int:
    """Global Euler genus g = 1 + (p - O(psi) - O(delta o psi^{-1})) / 2.

    Defined through chi = F - E + V even for disconnected maps (then g can
    be negative); always an integer because O(psi) + O(delta psi^{-1}) has
    the parity of p.
    """
    if m.is_empty:
        raise ValueError("empty ribbon map has no genus")
    faces = count_cycles(m.psi.images)
    vertices = product_cycles(m.delta, m.psi)
    num = m.p - faces - vertices
    if num % 2:
        raise AssertionError("parity violation: delta is not a pairing?")
    return 1 + num // 2


def ribbon_component_count(m: RibbonMap) -> int:
    """Components of the underlying map: orbits of the group generated by
    delta and psi on the half-edges."""
    if m.is_empty:
        raise ValueError("empty ribbon map")
    n = 2 * m.p
    uf = UnionFind(n)
    d = m.delta.images.tolist()
    s = m.psi.images.tolist()
    for k in range(n):
        uf.union(k, d[k])
        uf.union(k, s[k])
    return uf.n_components


def ribbon_is_connected(m: RibbonMap) -> bool:
    return ribbon_component_count(m) == 1


def ribbon_trim(alpha: Permutation, phi: Permutation) -> RibbonMap:
    """Erase the fixed points of the pairing `alpha` from the ground set.

    The 2b fixed points are deleted, the surviving 2(p-b) points relabelled
    order-preservingly; delta is alpha restricted and psi is phi with the
    deleted points spliced out of its cycles.  Returns the empty sentinel
    when alpha is the identity (b = p).
    """
    n = alpha.n
    if phi.n != n:
        raise ValueError(f"size mismatch: {alpha.n} vs {phi.n}")
    if n % 2:
        raise ValueError("ground set must have even size")
    a = alpha.images.tolist()
    for k in range(n):
        if a[a[k]] != k:
            raise ValueError("alpha is not an involution")
    f = phi.images.tolist()
    fixed = [a[k] == k for k in range(n)]
    keep = [k for k in range(n) if not fixed[k]]
    if not keep:
        return EMPTY_RIBBON_MAP
    rank = {v: i for i, v in enumerate(keep)}
    delta = np.fromiter((rank[a[v]] for v in keep), dtype=np.int64, count=len(keep))
    psi = np.empty(len(keep), dtype=np.int64)
    for i, v in enumerate(keep):
        w = f[v]
        while fixed[w]:
            w = f[w]
        psi[i] = rank[w]
    return RibbonMap(
        p=len(keep) // 2,
        delta=Permutation(delta, _trusted=True),
        psi=Permutation(psi, _trusted=True),
    )
