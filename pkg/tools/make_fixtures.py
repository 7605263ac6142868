#!/usr/bin/env python3
"""Regenerate the bundled fixture graphs in src/peelbc/data/.

Each fixture is a deterministic synthetic stand-in for a well-known
public network: it matches that network's node count, edge count,
one-round peeling survivor fraction, and 2-core fraction (the last two
to two decimals).  The construction is a circulant 2-core plus hanging
chains, standalone stars, and direct pendants, sized per fixture below.

Run from the repository root:  python tools/make_fixtures.py
"""

from __future__ import annotations

import sys
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "peelbc" / "data"


class Builder:
    """Incremental edge-list builder with sequential node ids."""

    def __init__(self):
        self.edges: list[tuple[int, int]] = []
        self.n = 0

    def new_node(self) -> int:
        node = self.n
        self.n += 1
        return node

    def add_edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def circulant_core(self, size: int, m_core: int) -> list[int]:
        """Cycle plus stride chords: `size` nodes, exactly m_core edges.

        Every node keeps degree >= 2, so the block is its own 2-core.
        """
        if m_core < size:
            raise ValueError("a 2-core needs at least one edge per node")
        nodes = [self.new_node() for _ in range(size)]
        budget = m_core
        stride = 1
        while budget > 0:
            if stride >= size // 2:
                raise ValueError(f"cannot fit {m_core} edges on {size} nodes")
            count = min(size, budget)
            for i in range(count):
                self.add_edge(nodes[i], nodes[(i + stride) % size])
            budget -= count
            stride += 1
        return nodes

    def pendants(self, hosts: list[int], count: int) -> None:
        """Attach `count` degree-1 nodes round-robin over hosts."""
        for i in range(count):
            self.add_edge(hosts[i % len(hosts)], self.new_node())

    def chains(self, hosts: list[int], count: int) -> None:
        """Attach `count` two-node chains (mid + leaf) round-robin."""
        for i in range(count):
            mid = self.new_node()
            leaf = self.new_node()
            self.add_edge(hosts[i % len(hosts)], mid)
            self.add_edge(mid, leaf)

    def stars(self, sizes: list[int]) -> None:
        """Standalone star components, one per entry (leaf counts)."""
        for leaves in sizes:
            center = self.new_node()
            for _ in range(leaves):
                self.add_edge(center, self.new_node())


def build_soc_dolphins() -> Builder:
    # n=62 m=159: core 53/150, 9 pendants
    b = Builder()
    core = b.circulant_core(53, 150)
    b.pendants(core, 9)
    return b


def build_ca_csphd() -> Builder:
    # n=1882 m=1740: core 150/150, 273 chains, stars 50x8 + 92x7
    b = Builder()
    core = b.circulant_core(150, 150)
    b.chains(core, 273)
    b.stars([8] * 50 + [7] * 92)
    return b


def build_rt_obama() -> Builder:
    # n=3212 m=3423: core 350/711, 140 chains, stars 100x15 + 50x14, 232 pendants
    b = Builder()
    core = b.circulant_core(350, 711)
    b.chains(core, 140)
    b.stars([15] * 100 + [14] * 50)
    b.pendants(core, 232)
    return b


def build_soc_wiki_vote() -> Builder:
    # n=889 m=2914: core 675/2708, 10 chains, stars 8x12, 90 pendants
    b = Builder()
    core = b.circulant_core(675, 2708)
    b.chains(core, 10)
    b.stars([12] * 8)
    b.pendants(core, 90)
    return b


def build_email_univ() -> Builder:
    # n=1133 m=5451: core 975/5293, 158 pendants
    b = Builder()
    core = b.circulant_core(975, 5293)
    b.pendants(core, 158)
    return b


def write_edges(b: Builder, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in b.edges:
            fh.write(f"{u} {v}\n")


def write_mtx(b: Builder, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("%%MatrixMarket matrix coordinate pattern symmetric\n")
        fh.write(f"{b.n} {b.n} {len(b.edges)}\n")
        for u, v in b.edges:
            fh.write(f"{u + 1} {v + 1}\n")


FIXTURES = {
    "soc-dolphins.edges": (build_soc_dolphins, write_edges),
    "ca-CSphd.edges": (build_ca_csphd, write_edges),
    "rt_obama.edges": (build_rt_obama, write_edges),
    "soc-wiki-Vote.mtx": (build_soc_wiki_vote, write_mtx),
    "email-univ.edges": (build_email_univ, write_edges),
}


def main() -> int:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    for fname, (build, write) in FIXTURES.items():
        builder = build()
        write(builder, DATA_DIR / fname)
        print(f"wrote {fname}: n={builder.n} m={len(builder.edges)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
