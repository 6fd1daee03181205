"""Tree decompositions: heuristic construction, nice normalization, validation.

A decomposition is a tree of bags covering all vertices (condition 1), covering
every edge inside some bag (condition 2), with each vertex's bags forming a
connected subtree (condition 3). The nice form additionally types every node:
Leaf (single-vertex bag), Introduce, Forget, or Join with equal child bags.
Decompositions serialize to the PACE-style .td text format.
"""

from __future__ import annotations

from dataclasses import dataclass


class StructuralError(ValueError):
    """A decomposition violates its structural contract."""


@dataclass(frozen=True)
class TreeDecomposition:
    """Raw decomposition: bags plus undirected tree edges between bag indices."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: frozenset[int]
    vertex: int | None
    children: tuple[int, ...]


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in an order where children precede parents; the last node is the root."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    condition: str | None = None
    node: int | None = None
    message: str = ""


def heuristic_decomposition(g) -> TreeDecomposition:
    """Min-fill elimination; ties by min degree, then smallest id.

    Disconnected graphs get one subtree per component stitched under a
    synthetic empty root bag.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition((), ())

    adj: dict[int, set[int]] = {v: set(g.adjacency[v]) for v in range(n)}
    bags: list[frozenset[int]] = []
    position: dict[int, int] = {}
    elim_neighbors: list[set[int]] = []

    for step in range(n):
        best_v = -1
        best_key: tuple[int, int, int] | None = None
        for v, nbrs in adj.items():
            nb = sorted(nbrs)
            fill = 0
            for i, a in enumerate(nb):
                for b in nb[i + 1:]:
                    if b not in adj[a]:
                        fill += 1
            key = (fill, len(nb), v)
            if best_key is None or key < best_key:
                best_key = key
                best_v = v
        v = best_v
        nbrs = set(adj[v])
        bags.append(frozenset({v} | nbrs))
        position[v] = step
        elim_neighbors.append(nbrs)
        for a in nbrs:
            for b in nbrs:
                if a < b and b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
            adj[a].discard(v)
        del adj[v]

    edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for step, nbrs in enumerate(elim_neighbors):
        if nbrs:
            parent_vertex = min(nbrs, key=lambda u: position[u])
            edges.append((step, position[parent_vertex]))
        else:
            roots.append(step)

    bag_list = list(bags)
    if len(roots) > 1:
        hub = len(bag_list)
        bag_list.append(frozenset())
        edges.extend((hub, r) for r in roots)
    return TreeDecomposition(tuple(bag_list), tuple(edges))


def validate_decomposition(g, td: TreeDecomposition) -> ValidationReport:
    """Conditions 1-3 plus tree shape, for raw decompositions."""
    if g.n == 0:
        if td.bags:
            return ValidationReport(False, "shape", None, "bags present for empty graph")
        return ValidationReport(True)
    if not td.bags:
        return ValidationReport(False, "1", None, "no bags")
    shape = _check_tree_shape(len(td.bags), td.tree_edges)
    if shape is not None:
        return ValidationReport(False, "shape", None, shape)
    covered: set[int] = set()
    for b in td.bags:
        covered |= b
    if covered != set(range(g.n)):
        return ValidationReport(False, "1", None, "bags do not cover the vertex set")
    for u, v in g.edges:
        if not any(u in b and v in b for b in td.bags):
            return ValidationReport(False, "2", None, f"edge ({u},{v}) in no bag")
    msg = _check_running_intersection(
        g.n, [set(b) for b in td.bags], td.tree_edges
    )
    if msg is not None:
        return ValidationReport(False, "3", None, msg)
    return ValidationReport(True)


def _check_tree_shape(count: int, edges: tuple[tuple[int, int], ...]) -> str | None:
    if count == 0:
        return None
    if len(edges) != count - 1:
        return f"{len(edges)} tree edges for {count} bags"
    parent = list(range(count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        if not (0 <= a < count and 0 <= b < count):
            return f"tree edge ({a},{b}) out of range"
        ra, rb = find(a), find(b)
        if ra == rb:
            return "tree edges contain a cycle"
        parent[ra] = rb
    return None


def _check_running_intersection(
    n: int, bags: list[set[int]], edges: tuple[tuple[int, int], ...]
) -> str | None:
    for v in range(n):
        holding = [i for i, b in enumerate(bags) if v in b]
        if not holding:
            continue
        idx = {i: j for j, i in enumerate(holding)}
        parent = list(range(len(holding)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in edges:
            if a in idx and b in idx:
                ra, rb = find(idx[a]), find(idx[b])
                if ra != rb:
                    parent[ra] = rb
        roots = {find(i) for i in range(len(holding))}
        if len(roots) != 1:
            return f"bags holding vertex {v} are not connected in the tree"
    return None


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    """Normalize to Leaf/Introduce/Forget/Join nodes, ending in an empty root bag.

    Width is preserved exactly; the node count is O(width * bags).
    """
    bags = [set(b) for b in td.bags]
    adjacency = {i: set() for i in range(len(bags))}
    for a, b in td.tree_edges:
        adjacency[a].add(b)
        adjacency[b].add(a)

    _splice_empty_bags(bags, adjacency)
    live = [i for i in sorted(adjacency) if bags[i]]
    if not live:
        return NiceTreeDecomposition(())
    root = live[0]

    nodes: list[NiceNode] = []

    def emit(kind: str, bag: set[int], vertex: int | None, children: tuple[int, ...]) -> int:
        nodes.append(NiceNode(kind, frozenset(bag), vertex, children))
        return len(nodes) - 1

    def leaf_chain(bag: set[int]) -> int:
        vs = sorted(bag)
        top = emit("leaf", {vs[0]}, vs[0], ())
        cur = {vs[0]}
        for v in vs[1:]:
            cur = cur | {v}
            top = emit("introduce", cur, v, (top,))
        return top

    def pad(top: int, have: set[int], want: set[int]) -> int:
        cur = set(have)
        for v in sorted(have - want):
            cur = cur - {v}
            top = emit("forget", cur, v, (top,))
        for v in sorted(want - have):
            cur = cur | {v}
            top = emit("introduce", cur, v, (top,))
        return top

    # Iterative post-order over the bag tree.
    order: list[tuple[int, int]] = []
    stack = [(root, -1)]
    while stack:
        node, parent = stack.pop()
        order.append((node, parent))
        for nb in sorted(adjacency[node]):
            if nb != parent:
                stack.append((nb, node))

    built: dict[int, int] = {}
    for node, parent in reversed(order):
        children = [nb for nb in sorted(adjacency[node]) if nb != parent]
        tops = [pad(built[c], bags[c], bags[node]) for c in children]
        if not tops:
            built[node] = leaf_chain(bags[node])
        else:
            acc = tops[0]
            for nxt in tops[1:]:
                acc = emit("join", bags[node], None, (acc, nxt))
            built[node] = acc

    # Forget everything above the root bag so the root is empty.
    top = built[root]
    cur = set(bags[root])
    for v in sorted(bags[root]):
        cur = cur - {v}
        top = emit("forget", cur, v, (top,))
    return NiceTreeDecomposition(tuple(nodes))


def _splice_empty_bags(bags: list[set[int]], adjacency: dict[int, set[int]]) -> None:
    for i in list(adjacency):
        if bags[i]:
            continue
        nbrs = sorted(adjacency[i])
        for nb in nbrs:
            adjacency[nb].discard(i)
        if len(nbrs) >= 2:
            hub = nbrs[0]
            for other in nbrs[1:]:
                adjacency[hub].add(other)
                adjacency[other].add(hub)
        del adjacency[i]


def validate_nice(g, ntd: NiceTreeDecomposition) -> ValidationReport:
    """Conditions 1-3 plus the per-kind structure of every node."""
    nodes = ntd.nodes
    if g.n == 0:
        if nodes:
            return ValidationReport(False, "shape", None, "nodes present for empty graph")
        return ValidationReport(True)
    if not nodes:
        return ValidationReport(False, "1", None, "no nodes")

    seen_as_child: set[int] = set()
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if not (0 <= c < i):
                return ValidationReport(False, "shape", i, "child does not precede parent")
            if c in seen_as_child:
                return ValidationReport(False, "shape", i, f"node {c} has two parents")
            seen_as_child.add(c)
    if len(seen_as_child) != len(nodes) - 1 or ntd.root in seen_as_child:
        return ValidationReport(False, "shape", None, "not a single-rooted tree")

    for i, nd in enumerate(nodes):
        if nd.kind == "leaf":
            if nd.children or len(nd.bag) != 1:
                return ValidationReport(False, "4", i, "leaf must have a single-vertex bag")
        elif nd.kind == "introduce":
            if len(nd.children) != 1 or nd.vertex is None:
                return ValidationReport(False, "4", i, "introduce needs one child and a vertex")
            child = nodes[nd.children[0]]
            if nd.vertex in child.bag or nd.bag != child.bag | {nd.vertex}:
                return ValidationReport(False, "4", i, "introduce bag mismatch")
        elif nd.kind == "forget":
            if len(nd.children) != 1 or nd.vertex is None:
                return ValidationReport(False, "4", i, "forget needs one child and a vertex")
            child = nodes[nd.children[0]]
            if nd.vertex not in child.bag or nd.bag != child.bag - {nd.vertex}:
                return ValidationReport(False, "4", i, "forget bag mismatch")
        elif nd.kind == "join":
            if len(nd.children) != 2:
                return ValidationReport(False, "4", i, "join needs two children")
            left, right = (nodes[c] for c in nd.children)
            if nd.bag != left.bag or nd.bag != right.bag:
                return ValidationReport(False, "4", i, "join bags must match both children")
        else:
            return ValidationReport(False, "4", i, f"unknown kind {nd.kind!r}")

    covered: set[int] = set()
    for nd in nodes:
        covered |= nd.bag
    if covered != set(range(g.n)):
        return ValidationReport(False, "1", None, "bags do not cover the vertex set")
    for u, v in g.edges:
        if not any(u in nd.bag and v in nd.bag for nd in nodes):
            return ValidationReport(False, "2", None, f"edge ({u},{v}) in no bag")
    tree_edges = tuple(
        (i, c) for i, nd in enumerate(nodes) for c in nd.children
    )
    msg = _check_running_intersection(
        g.n, [set(nd.bag) for nd in nodes], tree_edges
    )
    if msg is not None:
        return ValidationReport(False, "3", None, msg)
    return ValidationReport(True)


def serialize_td(td: TreeDecomposition, n_graph: int) -> str:
    """PACE-style text: s-line header, b-lines, then tree edges. 1-indexed."""
    width_plus = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {width_plus} {n_graph}"]
    for i, bag in enumerate(td.bags):
        parts = " ".join(str(v + 1) for v in sorted(bag))
        lines.append(f"b {i + 1} {parts}".rstrip())
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


def nice_annotations(ntd: NiceTreeDecomposition) -> str:
    """Comment lines describing the nice typing, appendable to a .td file."""
    lines = []
    for i, nd in enumerate(ntd.nodes):
        if nd.vertex is not None and nd.kind in ("introduce", "forget"):
            lines.append(f"c nice {i + 1} {nd.kind} {nd.vertex + 1}")
        else:
            lines.append(f"c nice {i + 1} {nd.kind}")
    lines.append(f"c nice-root {ntd.root + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> tuple[TreeDecomposition, int]:
    """Parse the PACE-style format; returns (decomposition, declared n)."""
    header: tuple[int, int, int] | None = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise StructuralError(f"line {lineno}: duplicate s-line")
            if len(parts) != 5 or parts[1] != "td":
                raise StructuralError(f"line {lineno}: malformed s-line")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            if header is None:
                raise StructuralError(f"line {lineno}: b-line before s-line")
            idx = int(parts[1]) - 1
            if idx in bags:
                raise StructuralError(f"line {lineno}: duplicate bag {idx + 1}")
            verts = [int(p) - 1 for p in parts[2:]]
            if any(not (0 <= v < header[2]) for v in verts):
                raise StructuralError(f"line {lineno}: bag vertex out of range")
            bags[idx] = frozenset(verts)
        else:
            if header is None or len(parts) != 2:
                raise StructuralError(f"line {lineno}: malformed tree edge")
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if header is None:
        raise StructuralError("missing s-line")
    count = header[0]
    if set(bags) != set(range(count)):
        raise StructuralError(f"expected bags 1..{count}")
    ordered = tuple(bags[i] for i in range(count))
    for a, b in edges:
        if not (0 <= a < count and 0 <= b < count):
            raise StructuralError(f"tree edge ({a + 1},{b + 1}) out of range")
    return TreeDecomposition(ordered, tuple(edges)), header[2]
