"""Access trees of threshold gates over attribute leaves."""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Tuple

from core.exceptions import ArgumentError, ThresholdError

AttributeSet = FrozenSet[str]


@dataclass(frozen=True)
class AccessNode:
    node_id: int
    index: int
    depth: int
    attribute: Optional[str] = None
    threshold: int = 0
    children: Tuple['AccessNode', ...] = ()
    parent_id: Optional[int] = None

    def __post_init__(self):
        if self.is_leaf:
            if not self.attribute:
                raise ArgumentError('leaf attribute must be a non-empty string')
            return
        if not 1 <= self.threshold <= len(self.children):
            raise ThresholdError(
                f'threshold {self.threshold} out of range for '
                f'{len(self.children)} children'
            )
        indices = [child.index for child in self.children]
        if indices != list(range(1, len(self.children) + 1)):
            raise ArgumentError('child indices must be consecutive from 1')

    @property
    def is_leaf(self):
        return self.attribute is not None

    def walk(self) -> Iterator['AccessNode']:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class AccessTree:
    root: AccessNode
    _index: Dict[int, AccessNode] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.root.is_leaf:
            raise ArgumentError('the root of an access tree is a gate')
        index = {}
        for node in self.root.walk():
            if node.node_id in index:
                raise ArgumentError(f'duplicate node id {node.node_id}')
            index[node.node_id] = node
        object.__setattr__(self, '_index', index)

    @property
    def depth(self):
        return max(node.depth for node in self.nodes())

    def nodes(self):
        return tuple(self.root.walk())

    def node(self, node_id):
        return self._index[node_id]

    def leaves(self):
        return [node for node in self.nodes() if node.is_leaf]

    def attributes(self):
        return frozenset(node.attribute for node in self.leaves())


def satisfies(tree, attrs):
    attrs = frozenset(attrs)
    return _satisfied(tree.root, attrs)


def _satisfied(node, attrs):
    if node.is_leaf:
        return node.attribute in attrs
    count = 0
    for child in node.children:
        if _satisfied(child, attrs):
            count += 1
            if count >= node.threshold:
                return True
    return False


def policy_to_text(tree):
    root = tree.root if isinstance(tree, AccessTree) else tree
    if _is_wrapped_leaf(root):
        return root.children[0].attribute
    return _node_text(root)


def _is_wrapped_leaf(node):
    return (
        not node.is_leaf
        and len(node.children) == 1
        and node.children[0].is_leaf
        and node.children[0].depth == node.depth
    )


def _node_text(node):
    if node.is_leaf:
        return node.attribute
    parts = [_node_text(child) for child in node.children]
    width = len(parts)
    if width >= 2 and node.threshold == width:
        return '(' + ' AND '.join(parts) + ')'
    if width >= 2 and node.threshold == 1:
        return '(' + ' OR '.join(parts) + ')'
    return f'({node.threshold} of ({", ".join(parts)}))'


def parse_attributes(text):
    attrs = frozenset(
        item.strip() for item in text.split(',') if item.strip()
    )
    if not attrs:
        raise ArgumentError('attribute set must not be empty')
    return attrs
