"""Growing, shrinking, and enumerating the T-trees of a problem.

The state space of a structural problem is the set of conforming T-trees
connected by *unit extensions*: adding one leaf at a legal site.  Walking
that graph from the root-type leaf enumerates every solution shape;
restricting the walk to canonical trees enumerates exactly one
representative per isomorphism class, because every canonical tree can be
shrunk back to the root leaf through canonical trees by repeatedly
removing a well-chosen leaf (`canonical_removal`).

That removal map is deterministic, so reading it backwards assigns every
canonical tree a unique parent; `enumerate_canonical` follows only those
parent-to-child edges and therefore emits each canonical tree exactly
once without keeping a visited set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .core import StructuralProblem, TList, TTree, TypeSymbol
from .order import _compare, TreeOrdering, is_canonical

_GREATER = TreeOrdering.GREATER


@dataclass(frozen=True)
class ExtensionSite:
    """Where a unit extension inserts its leaf.

    `path` walks from the root to the receiving node: each step names a
    component type and an index into that T-list.  `leaf_type` selects the
    T-list of the receiving node; the new leaf always lands at its end.
    """

    path: tuple[tuple[TypeSymbol, int], ...]
    leaf_type: TypeSymbol


def extension_sites(
    tree: TTree,
    problem: StructuralProblem,
    *,
    max_height: int | None = None,
) -> list[ExtensionSite]:
    """All sites where a leaf may be added without violating a cardinality
    bound (or the height bound, when given)."""
    sites: list[ExtensionSite] = []

    def walk(node: TTree, path: tuple[tuple[TypeSymbol, int], ...]) -> None:
        if max_height is None or len(path) < max_height:
            for symbol in problem.component_types(node.label):
                schema = problem.schema(node.label, symbol)
                assert schema is not None
                if len(node.tlist(symbol)) < schema.max_cardinality:
                    sites.append(ExtensionSite(path, symbol))
        for symbol, members in node.groups:
            for index, member in enumerate(members):
                walk(member, path + ((symbol, index),))

    walk(tree, ())
    return sites


def _replace_tlist(node: TTree, symbol: TypeSymbol, members: TList) -> TTree:
    """Copy of `node` with the `symbol` T-list replaced (dropped if empty)."""
    groups = [(t, m) for t, m in node.groups if t != symbol]
    if members:
        groups.append((symbol, members))
        groups.sort(key=lambda pair: pair[0].rank)
    return TTree(node.label, tuple(groups))


def apply_extension(tree: TTree, site: ExtensionSite) -> TTree:
    """The unit extension of `tree` at `site`."""

    def rebuild(node: TTree, depth: int) -> TTree:
        if depth == len(site.path):
            members = node.tlist(site.leaf_type) + (TTree(site.leaf_type),)
            return _replace_tlist(node, site.leaf_type, members)
        symbol, index = site.path[depth]
        members = node.tlist(symbol)
        if index >= len(members):
            raise ValueError(f"site {site} does not address a node of this tree")
        grown = rebuild(members[index], depth + 1)
        return _replace_tlist(
            node, symbol, members[:index] + (grown,) + members[index + 1 :]
        )

    return rebuild(tree, 0)


def _extension_pairs(
    tree: TTree,
    problem: StructuralProblem,
    max_height: int | None = None,
) -> list[tuple[ExtensionSite, TTree]]:
    return [
        (site, apply_extension(tree, site))
        for site in extension_sites(tree, problem, max_height=max_height)
    ]


def unit_extensions(tree: TTree, problem: StructuralProblem) -> list[TTree]:
    """All distinct T-trees obtained by adding one leaf to `tree`."""
    grown = (extended for _, extended in _extension_pairs(tree, problem))
    return list(dict.fromkeys(grown))


def is_canonical_incremental(tree: TTree, site: ExtensionSite) -> bool:
    """Canonicity of a tree that grew by one leaf at `site`.

    Contract: the tree without that leaf was canonical.  Only the T-lists
    along the insertion path can then be out of order, and within each
    only at one boundary, so the check runs in path length times
    comparison cost instead of touching every node.  Equals
    `is_canonical(tree)` whenever the contract holds (violations are not
    detected).
    """
    node = tree
    for symbol, index in site.path:
        members = node.tlist(symbol)
        # The grown subtree moved up in the order, so only its right
        # neighbour can now be out of place.
        if index + 1 < len(members):
            if _compare(members[index], members[index + 1], None) is _GREATER:
                return False
        node = members[index]
    members = node.tlist(site.leaf_type)
    if len(members) >= 2:
        # The new leaf sits at the end and is minimal for its type, so the
        # list stays sorted only if its predecessor is also a leaf.
        if _compare(members[-2], members[-1], None) is _GREATER:
            return False
    return True


def canonical_unit_extensions(tree: TTree, problem: StructuralProblem) -> list[TTree]:
    """The canonical members of `unit_extensions(tree, problem)`.

    Requires `tree` itself to be canonical (ValueError otherwise); the
    per-extension test is then the incremental path check.  Whenever any
    canonical extension of a canonical tree exists, this returns it.
    """
    if not is_canonical(tree):
        raise ValueError("tree is not canonical")
    kept = (
        extended
        for site, extended in _extension_pairs(tree, problem)
        if is_canonical_incremental(extended, site)
    )
    return list(dict.fromkeys(kept))


def canonical_removal(tree: TTree) -> TTree:
    """Remove one leaf, deterministically, without leaving the canonical
    subspace.

    Descend into the first non-empty T-list; recurse into its first
    non-leaf member if one exists, otherwise drop the list's last leaf.
    The result always precedes the input in the tree order, and is
    canonical whenever the input is.
    """
    if tree.is_leaf:
        raise ValueError("cannot remove a node from a single-node tree")
    symbol, members = tree.groups[0]
    target = next((i for i, m in enumerate(members) if not m.is_leaf), None)
    if target is None:
        shrunk = members[:-1]
    else:
        shrunk = (
            members[:target]
            + (canonical_removal(members[target]),)
            + members[target + 1 :]
        )
    return _replace_tlist(tree, symbol, shrunk)


def _require_bounded(problem: StructuralProblem, max_height: int | None) -> None:
    if problem.is_cyclic and max_height is None:
        raise ValueError(
            "problem has a cyclic type graph; enumeration needs max_height"
        )


def enumerate_all(
    problem: StructuralProblem,
    *,
    max_height: int | None = None,
) -> Iterator[TTree]:
    """Every conforming T-tree exactly once, in discovery order.

    Breadth-first walk of the unit-extension graph from the root leaf,
    deduplicated by structural equality.  `max_height` bounds tree height
    and is mandatory for cyclic type graphs.
    """
    _require_bounded(problem, max_height)
    start = problem.root_leaf()
    seen = {start}
    queue = deque([start])
    yield start
    while queue:
        tree = queue.popleft()
        for _, extended in _extension_pairs(tree, problem, max_height):
            if extended not in seen:
                seen.add(extended)
                queue.append(extended)
                yield extended


def enumerate_canonical(
    problem: StructuralProblem,
    *,
    max_height: int | None = None,
) -> Iterator[TTree]:
    """Every canonical conforming T-tree exactly once.

    Generates constructively: from each canonical tree, grow only those
    canonical extensions whose `canonical_removal` leads straight back,
    i.e. follow the removal map in reverse.  Every canonical tree has
    exactly one such parent chain down to the root leaf, so nothing is
    emitted twice and nothing is missed; no visited set is kept.
    """
    _require_bounded(problem, max_height)
    start = problem.root_leaf()
    yield start
    stack = [start]
    while stack:
        tree = stack.pop()
        for site, extended in _extension_pairs(tree, problem, max_height):
            if is_canonical_incremental(extended, site) and canonical_removal(extended) == tree:
                yield extended
                stack.append(extended)
