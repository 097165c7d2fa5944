"""Level partition of an access tree.

Level ``i`` (root = 1) holds every node at depth ``i``.  Its public
descriptor lists, per node, the id, parent id, sibling index, gate
threshold or leaf attribute; the descriptors of all levels together are
enough to rebuild the tree.
"""
import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Tuple

from core.exceptions import ArgumentError, DecodeError
from policy.tree import AccessNode, AccessTree


@dataclass(frozen=True)
class NodeSpec:
    node_id: int
    parent_id: Optional[int]
    index: int
    threshold: int = 0
    attribute: Optional[str] = None

    @property
    def is_leaf(self):
        return self.attribute is not None

    @classmethod
    def from_node(cls, node):
        return cls(node_id=node.node_id, parent_id=node.parent_id,
                   index=node.index, threshold=node.threshold,
                   attribute=node.attribute)

    def to_dict(self):
        data = {'id': self.node_id, 'parent': self.parent_id,
                'index': self.index}
        if self.is_leaf:
            data['attribute'] = self.attribute
        else:
            data['threshold'] = self.threshold
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(node_id=int(data['id']),
                       parent_id=data['parent'],
                       index=int(data['index']),
                       threshold=int(data.get('threshold', 0)),
                       attribute=data.get('attribute'))
        except (KeyError, TypeError, ValueError) as exc:
            raise DecodeError('malformed level descriptor entry') from exc


@dataclass(frozen=True)
class LevelDescriptor:
    level: int
    nodes: Tuple[NodeSpec, ...]

    def gates(self):
        return [spec for spec in self.nodes if not spec.is_leaf]

    def leaves(self):
        return [spec for spec in self.nodes if spec.is_leaf]

    def node(self, node_id):
        for spec in self.nodes:
            if spec.node_id == node_id:
                return spec
        return None

    def to_bytes(self):
        payload = {'level': self.level,
                   'nodes': [spec.to_dict() for spec in self.nodes]}
        return json.dumps(payload, sort_keys=True,
                          separators=(',', ':')).encode('utf-8')

    @classmethod
    def from_bytes(cls, data):
        try:
            payload = json.loads(bytes(data).decode('utf-8'))
            descriptor = cls(
                level=int(payload['level']),
                nodes=tuple(NodeSpec.from_dict(item)
                            for item in payload['nodes']),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise DecodeError('malformed level descriptor') from exc
        if descriptor.to_bytes() != bytes(data):
            raise DecodeError('level descriptor is not canonical')
        return descriptor


@dataclass(frozen=True)
class LevelSlice:
    level: int
    interior_nodes: Tuple[AccessNode, ...]
    leaf_nodes: Tuple[AccessNode, ...]

    @property
    def descriptor(self):
        nodes = sorted(self.interior_nodes + self.leaf_nodes,
                       key=lambda node: node.node_id)
        return LevelDescriptor(
            level=self.level,
            nodes=tuple(NodeSpec.from_node(node) for node in nodes),
        )


@dataclass(frozen=True)
class LevelPartition:
    levels: Tuple[LevelSlice, ...]

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def slice(self, level):
        return self.levels[level - 1]


def partition_levels(tree):
    by_depth = defaultdict(list)
    for node in tree.nodes():
        by_depth[node.depth].append(node)
    levels = []
    for depth in range(1, tree.depth + 1):
        nodes = sorted(by_depth[depth], key=lambda node: node.node_id)
        levels.append(LevelSlice(
            level=depth,
            interior_nodes=tuple(n for n in nodes if not n.is_leaf),
            leaf_nodes=tuple(n for n in nodes if n.is_leaf),
        ))
    return LevelPartition(levels=tuple(levels))


def rebuild_tree(descriptors):
    specs = {}
    depth_of = {}
    for descriptor in descriptors:
        for spec in descriptor.nodes:
            if spec.node_id in specs:
                raise DecodeError(f'node {spec.node_id} appears twice')
            specs[spec.node_id] = spec
            depth_of[spec.node_id] = descriptor.level
    children = defaultdict(list)
    roots = []
    for spec in specs.values():
        if spec.parent_id is None:
            roots.append(spec)
        elif spec.parent_id not in specs:
            raise DecodeError(f'node {spec.node_id} has an unknown parent')
        else:
            children[spec.parent_id].append(spec)
    if len(roots) != 1:
        raise DecodeError('descriptors must contain exactly one root')

    def build(spec):
        kids = sorted(children[spec.node_id], key=lambda item: item.index)
        return AccessNode(
            node_id=spec.node_id, index=spec.index,
            depth=depth_of[spec.node_id], attribute=spec.attribute,
            threshold=spec.threshold,
            children=tuple(build(kid) for kid in kids),
            parent_id=spec.parent_id,
        )

    try:
        return AccessTree(build(roots[0]))
    except ArgumentError as exc:
        raise DecodeError(f'inconsistent descriptors: {exc}') from exc
