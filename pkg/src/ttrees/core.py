"""Structural problems, T-trees, and object configurations.

A *structural problem* declares a root type, a totally ordered set of
component types, and binary composition relations with maximum
cardinalities.  Its solutions are trees of typed objects.  Because every
component object has exactly one composite (parent), a solution is fully
described up to isomorphism by its *T-tree*: the tree obtained by erasing
object identities and keeping only type labels, with each node's children
grouped per component type into *T-lists*.

This module defines those three shapes (`StructuralProblem`, `TTree`,
`ConfigTree`), the conversions between configurations and T-trees, and
plain-text formats for all of them.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class ProblemError(ValueError):
    """Raised for an ill-formed structural problem definition."""


class UnknownTypeError(ProblemError):
    """Raised when a type symbol does not belong to the problem at hand."""


class ParseError(ValueError):
    """Raised for malformed T-tree expressions.

    `position` is the 0-based offset into the input text.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ConfigError(ValueError):
    """Raised for an ill-formed object configuration."""


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class TypeSymbol:
    """A component type; `rank` is its position in the total type order."""

    name: str
    rank: int

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class RelationSchema:
    """A composition relation: objects of `composite` may hold up to
    `max_cardinality` components of type `component`."""

    composite: TypeSymbol
    component: TypeSymbol
    max_cardinality: int


class StructuralProblem:
    """A validated structural problem.

    Construction checks every well-formedness rule, so an instance that
    exists is usable: type names are unique identifiers, relations do not
    repeat an endpoint pair, the root type is never a component, and the
    type graph is acyclic unless `allow_cyclic` is set (in which case
    enumeration requires an explicit height bound).

    `types` order defines the total order on type symbols (rank =
    declaration index).
    """

    def __init__(
        self,
        root: str,
        types: Sequence[str],
        relations: Iterable[tuple[str, str, int]] = (),
        *,
        allow_cyclic: bool = False,
    ):
        by_name: dict[str, TypeSymbol] = {}
        for index, name in enumerate(types):
            if not _NAME.fullmatch(name):
                raise ProblemError(f"invalid type name {name!r}")
            if name in by_name:
                raise ProblemError(f"duplicate type {name!r}")
            by_name[name] = TypeSymbol(name, index)
        if root not in by_name:
            raise ProblemError(f"root type {root!r} is not declared")

        schemas: list[RelationSchema] = []
        seen_pairs: set[tuple[str, str]] = set()
        for composite, component, max_cardinality in relations:
            for endpoint in (composite, component):
                if endpoint not in by_name:
                    raise ProblemError(f"relation references unknown type {endpoint!r}")
            if component == root:
                raise ProblemError(f"root type {root!r} cannot be a component")
            if (composite, component) in seen_pairs:
                raise ProblemError(
                    f"duplicate relation between {composite!r} and {component!r}"
                )
            if max_cardinality < 1:
                raise ProblemError(
                    f"relation {composite!r}->{component!r} needs max cardinality >= 1"
                )
            seen_pairs.add((composite, component))
            schemas.append(
                RelationSchema(by_name[composite], by_name[component], max_cardinality)
            )

        self.root_type = by_name[root]
        self.types: tuple[TypeSymbol, ...] = tuple(by_name.values())
        self.relations: tuple[RelationSchema, ...] = tuple(schemas)
        self._by_name = by_name
        self._schemas = {(s.composite.name, s.component.name): s for s in schemas}
        components: dict[str, list[TypeSymbol]] = {t.name: [] for t in self.types}
        for s in schemas:
            components[s.composite.name].append(s.component)
        self._components = {
            name: tuple(sorted(cs, key=lambda t: t.rank))
            for name, cs in components.items()
        }
        self.is_cyclic = self._find_cycle()
        if self.is_cyclic and not allow_cyclic:
            raise ProblemError(
                "composition type graph is cyclic; pass allow_cyclic=True and "
                "enumerate with an explicit height bound"
            )

    def _find_cycle(self) -> bool:
        # colors: 0 unvisited, 1 on stack, 2 done
        color = {t.name: 0 for t in self.types}

        def visit(name: str) -> bool:
            color[name] = 1
            for child in self._components[name]:
                if color[child.name] == 1:
                    return True
                if color[child.name] == 0 and visit(child.name):
                    return True
            color[name] = 2
            return False

        return any(visit(t.name) for t in self.types if color[t.name] == 0)

    def type(self, name: str) -> TypeSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownTypeError(f"unknown type {name!r}") from None

    def has_type(self, name: str) -> bool:
        return name in self._by_name

    def symbol_of(self, symbol: TypeSymbol) -> TypeSymbol:
        """Return `symbol` if it is this problem's symbol, else raise."""
        own = self._by_name.get(symbol.name)
        if own is None:
            raise UnknownTypeError(f"unknown type {symbol.name!r}")
        if own != symbol:
            raise UnknownTypeError(
                f"type symbol {symbol.name!r} was built against a different problem"
            )
        return own

    def component_types(self, symbol: TypeSymbol) -> tuple[TypeSymbol, ...]:
        """Component types of `symbol`, in type order."""
        return self._components[self.symbol_of(symbol).name]

    def schema(self, composite: TypeSymbol, component: TypeSymbol) -> RelationSchema | None:
        return self._schemas.get((composite.name, component.name))

    def root_leaf(self) -> "TTree":
        """The single-node tree labeled with the root type."""
        return TTree(self.root_type)

    def __repr__(self) -> str:
        return (
            f"StructuralProblem(root={self.root_type.name!r}, "
            f"types={len(self.types)}, relations={len(self.relations)})"
        )


def parse_problem(text: str, *, allow_cyclic: bool = False) -> StructuralProblem:
    """Parse the line-based problem format.

    Directives (one per line, `#` starts a comment):
      root <TypeName>
      type <TypeName>          # declaration order defines the type order
      rel <Composite> <Component> max <positive-int>
    """
    root: str | None = None
    types: list[str] = []
    relations: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "root" and len(tokens) == 2:
            if root is not None:
                raise ProblemError(f"line {lineno}: root declared twice")
            root = tokens[1]
        elif tokens[0] == "type" and len(tokens) == 2:
            types.append(tokens[1])
        elif tokens[0] == "rel" and len(tokens) == 5 and tokens[3] == "max":
            try:
                max_cardinality = int(tokens[4])
            except ValueError:
                raise ProblemError(f"line {lineno}: bad cardinality {tokens[4]!r}") from None
            relations.append((tokens[1], tokens[2], max_cardinality))
        else:
            raise ProblemError(f"line {lineno}: unrecognized directive {line!r}")
    if root is None:
        raise ProblemError("missing root declaration")
    return StructuralProblem(root, types, relations, allow_cyclic=allow_cyclic)


def render_problem(problem: StructuralProblem) -> str:
    """Inverse of `parse_problem` (up to comments and blank lines)."""
    lines = [f"root {problem.root_type.name}"]
    lines += [f"type {t.name}" for t in problem.types]
    lines += [
        f"rel {r.composite.name} {r.component.name} max {r.max_cardinality}"
        for r in problem.relations
    ]
    return "\n".join(lines) + "\n"


TList = tuple["TTree", ...]
Groups = tuple[tuple[TypeSymbol, TList], ...]


@dataclass(frozen=True, eq=False)
class TTree:
    """A type-labeled rooted tree with children grouped into T-lists.

    `groups` holds one `(component type, T-list)` pair per component type
    that actually has children, in increasing type rank; empty T-lists are
    implicit.  Every member of a T-list is labeled with the group's type.
    Instances are immutable and compare structurally; the structural hash
    is computed once at construction (subtree hashes are reused, keeping
    tree-heavy workloads like enumeration cheap).

    Prefer `ttree()` (which groups arbitrary child sequences) or
    `parse_ttree()` to the raw constructor.
    """

    label: TypeSymbol
    groups: Groups = ()

    def __post_init__(self) -> None:
        last_rank = -1
        for symbol, members in self.groups:
            if symbol.rank <= last_rank:
                raise ValueError("T-lists must be in strictly increasing type order")
            last_rank = symbol.rank
            if not members:
                raise ValueError("empty T-lists must be omitted")
            for member in members:
                if member.label != symbol:
                    raise ValueError(
                        f"T-list of {symbol.name} contains a {member.label.name} subtree"
                    )
        object.__setattr__(self, "_hash", hash((self.label, self.groups)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, TTree):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.label == other.label
            and self.groups == other.groups
        )

    @property
    def is_leaf(self) -> bool:
        return not self.groups

    def tlist(self, symbol: TypeSymbol) -> TList:
        for t, members in self.groups:
            if t == symbol:
                return members
        return ()

    def children(self) -> Iterator["TTree"]:
        for _, members in self.groups:
            yield from members

    @cached_property
    def node_count(self) -> int:
        return 1 + sum(child.node_count for child in self.children())

    @cached_property
    def height(self) -> int:
        return 1 + max((child.height for child in self.children()), default=-1)

    def __str__(self) -> str:
        return render_ttree(self)

    def __repr__(self) -> str:
        return f"<TTree {render_ttree(self)}>"


def ttree(label: TypeSymbol, children: Iterable[TTree] = ()) -> TTree:
    """Build a T-tree, stably grouping `children` into T-lists by type.

    Children of the same type keep their relative order.  Raises
    ValueError when two child types carry clashing ranks, which happens
    only when trees from unrelated type universes are mixed.
    """
    buckets: dict[TypeSymbol, list[TTree]] = {}
    for child in children:
        buckets.setdefault(child.label, []).append(child)
    symbols = sorted(buckets, key=lambda t: (t.rank, t.name))
    for left, right in zip(symbols, symbols[1:]):
        if left.rank == right.rank:
            raise ValueError(
                f"types {left.name!r} and {right.name!r} share rank {left.rank}; "
                "trees come from incompatible type universes"
            )
    return TTree(label, tuple((t, tuple(buckets[t])) for t in symbols))


def render_ttree(tree: TTree) -> str:
    """Render as `TYPE` or `TYPE(child,...)`, children in type order."""
    if tree.is_leaf:
        return tree.label.name
    inner = ",".join(render_ttree(child) for child in tree.children())
    return f"{tree.label.name}({inner})"


# Parsed shape before type resolution: (name, children, position).
_Shape = tuple[str, list, int]


def _parse_shape(text: str, pos: int) -> tuple[_Shape, int]:
    pos = _skip_ws(text, pos)
    match = _NAME.match(text, pos)
    if not match:
        raise ParseError("expected a type name", pos)
    name, pos = match.group(), match.end()
    children: list[_Shape] = []
    after = _skip_ws(text, pos)
    if after < len(text) and text[after] == "(":
        pos = after + 1
        while True:
            child, pos = _parse_shape(text, pos)
            children.append(child)
            pos = _skip_ws(text, pos)
            if pos >= len(text):
                raise ParseError("unclosed '('", pos)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise ParseError("expected ',' or ')'", pos)
    return (name, children, match.start()), pos


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _shape_names(shape: _Shape, out: set[str]) -> None:
    name, children, _ = shape
    out.add(name)
    for child in children:
        _shape_names(child, out)


def parse_ttrees(texts: Sequence[str], problem: StructuralProblem | None = None) -> list[TTree]:
    """Parse several T-tree expressions against one shared type universe.

    With a `problem`, labels resolve to the problem's symbols and unknown
    names raise `UnknownTypeError`.  Without one, the type order defaults
    to name order over all names appearing in `texts`, so the resulting
    trees are mutually comparable.
    """
    shapes = []
    for text in texts:
        shape, pos = _parse_shape(text, 0)
        pos = _skip_ws(text, pos)
        if pos != len(text):
            raise ParseError("unexpected trailing input", pos)
        shapes.append(shape)
    if problem is not None:
        def resolve(name: str, pos: int) -> TypeSymbol:
            return problem.type(name)
    else:
        names: set[str] = set()
        for shape in shapes:
            _shape_names(shape, names)
        universe = {name: TypeSymbol(name, rank) for rank, name in enumerate(sorted(names))}

        def resolve(name: str, pos: int) -> TypeSymbol:
            return universe[name]

    def build(shape: _Shape) -> TTree:
        name, children, pos = shape
        return ttree(resolve(name, pos), [build(child) for child in children])

    return [build(shape) for shape in shapes]


def parse_ttree(text: str, problem: StructuralProblem | None = None) -> TTree:
    """Parse one T-tree expression; see `parse_ttrees`."""
    return parse_ttrees([text], problem)[0]


def ttree_conforms(tree: TTree, problem: StructuralProblem) -> bool:
    """True iff `tree` is a solution shape of `problem`.

    Checks the root label, that every edge realizes a declared relation,
    and that no T-list exceeds its maximum cardinality.  Labels that do
    not belong to the problem raise `UnknownTypeError` rather than
    returning False.
    """
    problem.symbol_of(tree.label)
    if tree.label != problem.root_type:
        return False
    return _subtree_conforms(tree, problem)


def _subtree_conforms(tree: TTree, problem: StructuralProblem) -> bool:
    for symbol, members in tree.groups:
        problem.symbol_of(symbol)
        schema = problem.schema(tree.label, symbol)
        if schema is None or len(members) > schema.max_cardinality:
            return False
        if not all(_subtree_conforms(member, problem) for member in members):
            return False
    return True


@dataclass(frozen=True)
class ConfigTree:
    """A configuration: a rooted tree of typed objects.

    `types` maps each object id to its type and `links` maps each object
    id to its children, both as sorted tuples so that equality and hashing
    are structural.  Children are ordered by (component type rank, object
    id).  Use `make_config` / `parse_config` to build validated instances.
    """

    root: int
    types: tuple[tuple[int, TypeSymbol], ...]
    links: tuple[tuple[int, tuple[int, ...]], ...]

    @cached_property
    def _type_map(self) -> dict[int, TypeSymbol]:
        return dict(self.types)

    @cached_property
    def _child_map(self) -> dict[int, tuple[int, ...]]:
        return dict(self.links)

    @property
    def objects(self) -> tuple[int, ...]:
        return tuple(obj for obj, _ in self.types)

    def node_type(self, obj: int) -> TypeSymbol:
        return self._type_map[obj]

    def children_of(self, obj: int) -> tuple[int, ...]:
        return self._child_map.get(obj, ())

    def __repr__(self) -> str:
        return f"<ConfigTree root={self.root} objects={len(self.types)}>"


def make_config(
    objects: Iterable[tuple[int, str]],
    links: Iterable[tuple[int, int]],
    problem: StructuralProblem | None = None,
) -> ConfigTree:
    """Validate and build a configuration from (id, type name) pairs and
    (parent, child) links.

    Requires a unique root (the one object that is nobody's component),
    a unique parent per other object and full reachability from the root.
    With a `problem`, types resolve against it and every edge must match a
    declared relation within its cardinality bound; without one, the type
    order defaults to name order and relation checks are skipped.
    """
    typed: dict[int, str] = {}
    for obj, name in objects:
        if obj < 0:
            raise ConfigError(f"object ids must be naturals, got {obj}")
        if obj in typed:
            raise ConfigError(f"object {obj} declared twice")
        typed[obj] = name
    if not typed:
        raise ConfigError("configuration has no objects")

    if problem is not None:
        def resolve(name: str) -> TypeSymbol:
            if not problem.has_type(name):
                raise ConfigError(f"unknown type {name!r}")
            return problem.type(name)
    else:
        universe = {
            name: TypeSymbol(name, rank)
            for rank, name in enumerate(sorted(set(typed.values())))
        }
        resolve = universe.__getitem__

    symbol_of = {obj: resolve(name) for obj, name in typed.items()}

    parent: dict[int, int] = {}
    children: dict[int, list[int]] = {obj: [] for obj in typed}
    for source, target in links:
        for end in (source, target):
            if end not in typed:
                raise ConfigError(f"link references undeclared object {end}")
        if target in parent:
            raise ConfigError(f"object {target} has two composites")
        parent[target] = source
        children[source].append(target)

    roots = [obj for obj in typed if obj not in parent]
    if len(roots) != 1:
        raise ConfigError(f"expected exactly one root object, found {len(roots)}")
    root = roots[0]

    reached = {root}
    frontier = [root]
    while frontier:
        obj = frontier.pop()
        for child in children[obj]:
            reached.add(child)
            frontier.append(child)
    if reached != set(typed):
        missing = sorted(set(typed) - reached)
        raise ConfigError(f"objects not reachable from the root: {missing}")

    if problem is not None:
        if symbol_of[root] != problem.root_type:
            raise ConfigError(
                f"root object must have type {problem.root_type.name!r}, "
                f"got {symbol_of[root].name!r}"
            )
        for obj, kids in children.items():
            per_type: dict[str, int] = {}
            for child in kids:
                schema = problem.schema(symbol_of[obj], symbol_of[child])
                if schema is None:
                    raise ConfigError(
                        f"no relation allows a {symbol_of[child].name} inside "
                        f"a {symbol_of[obj].name} (objects {obj} -> {child})"
                    )
                name = symbol_of[child].name
                per_type[name] = per_type.get(name, 0) + 1
                if per_type[name] > schema.max_cardinality:
                    raise ConfigError(
                        f"object {obj} exceeds max cardinality "
                        f"{schema.max_cardinality} for {name}"
                    )

    sorted_children = {
        obj: tuple(sorted(kids, key=lambda c: (symbol_of[c].rank, c)))
        for obj, kids in children.items()
    }
    return ConfigTree(
        root=root,
        types=tuple(sorted(symbol_of.items())),
        links=tuple(sorted((obj, sorted_children[obj]) for obj in typed)),
    )


def parse_config(text: str, problem: StructuralProblem | None = None) -> ConfigTree:
    """Parse the line-based configuration format.

    Lines (`#` starts a comment):
      obj <nat> <TypeName>
      link <parent-nat> <child-nat>
    """
    objects: list[tuple[int, str]] = []
    links: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        try:
            if tokens[0] == "obj" and len(tokens) == 3:
                objects.append((int(tokens[1]), tokens[2]))
                continue
            if tokens[0] == "link" and len(tokens) == 3:
                links.append((int(tokens[1]), int(tokens[2])))
                continue
        except ValueError:
            raise ConfigError(f"line {lineno}: bad object id in {line!r}") from None
        raise ConfigError(f"line {lineno}: unrecognized directive {line!r}")
    return make_config(objects, links, problem)


def config_to_ttree(config: ConfigTree) -> TTree:
    """Erase object identities, keeping types and child order."""

    def build(obj: int) -> TTree:
        return ttree(
            config.node_type(obj),
            [build(child) for child in config.children_of(obj)],
        )

    return build(config.root)


def ttree_to_config(tree: TTree) -> ConfigTree:
    """Materialize a T-tree as a configuration with breadth-first object
    ids: the root is 0 and children are numbered in type order then list
    order, so the result is the same for any two equal T-trees."""
    types: list[tuple[int, TypeSymbol]] = [(0, tree.label)]
    links: dict[int, list[int]] = {0: []}
    queue: deque[tuple[TTree, int]] = deque([(tree, 0)])
    next_id = 1
    while queue:
        node, obj = queue.popleft()
        for child in node.children():
            types.append((next_id, child.label))
            links[obj].append(next_id)
            links[next_id] = []
            queue.append((child, next_id))
            next_id += 1
    return ConfigTree(
        root=0,
        types=tuple(types),
        links=tuple(sorted((obj, tuple(kids)) for obj, kids in links.items())),
    )
