"""Policy generators for benchmarks and property tests.

All generators return policy text; run it through ``parse_policy``.
"""
import itertools

from core.exceptions import ArgumentError
from policy.tree import AccessTree

LEAF_BIAS = 0.35


def layered_policy(levels, leaves, kind='and'):
    """Policy of ``levels`` levels whose ``leaves`` leaves fill levels 2..n.

    Every gate holds the leaves of the next level plus the gate of the
    level after it.  With levels=10 and leaves=100 this is the shape
    of the benchmark policy.
    """
    if levels < 1 or leaves < 1:
        raise ArgumentError('levels and leaves must be positive')
    if levels == 1:
        if leaves != 1:
            raise ArgumentError('a one-level policy holds a single leaf')
        return 'attr001'
    slots = levels - 1
    counts = [leaves // slots] * slots
    for position in range(leaves % slots):
        counts[slots - 1 - position] += 1
    names = (f'attr{number:03d}' for number in itertools.count(1))
    nested = None
    for count in reversed(counts):
        parts = [next(names) for _ in range(count)]
        if nested is not None:
            parts.append(nested)
        nested = _gate_text(parts, kind)
    return nested


def random_policy(rng, max_depth=6, max_leaves=40):
    """Random policy text with unique attribute names att0, att1, ..."""
    if max_depth < 1 or max_leaves < 1:
        raise ArgumentError('max_depth and max_leaves must be positive')
    names = (f'att{number}' for number in itertools.count())
    text, _ = _random_node(rng, 1, max_depth, max_leaves, names)
    return text


def _random_node(rng, depth, max_depth, limit, names):
    if (depth >= max_depth or limit < 2
            or (depth > 1 and rng.random() < LEAF_BIAS)):
        return next(names), 1
    width = rng.randint(2, min(4, limit))
    parts, used = [], 0
    for position in range(width):
        siblings_left = width - position - 1
        text, count = _random_node(rng, depth + 1, max_depth,
                                   limit - used - siblings_left, names)
        parts.append(text)
        used += count
    return _gate_text(parts, rng.randint(1, width)), used


def _gate_text(parts, kind):
    width = len(parts)
    if width == 1:
        return f'(1 of ({parts[0]}))'
    if kind == 'and' or kind == width:
        return '(' + ' AND '.join(parts) + ')'
    if kind == 'or' or kind == 1:
        return '(' + ' OR '.join(parts) + ')'
    return f'({kind} of ({", ".join(parts)}))'


def sample_satisfying(tree, rng):
    """Attributes of a random minimal-threshold witness for the tree."""
    root = tree.root if isinstance(tree, AccessTree) else tree
    chosen = set()
    _collect(root, rng, chosen, satisfy=True)
    return frozenset(chosen)


def sample_unsatisfying(tree, rng):
    """Attributes that make the root fail.

    Assumes attribute names are unique within the tree.
    """
    root = tree.root if isinstance(tree, AccessTree) else tree
    chosen = set()
    _collect(root, rng, chosen, satisfy=False)
    return frozenset(chosen)


def _collect(node, rng, chosen, satisfy):
    if node.is_leaf:
        if satisfy:
            chosen.add(node.attribute)
        return
    children = list(node.children)
    rng.shuffle(children)
    if satisfy:
        for child in children[:node.threshold]:
            _collect(child, rng, chosen, satisfy=True)
        return
    failing = len(children) - node.threshold + 1
    for child in children[:failing]:
        _collect(child, rng, chosen, satisfy=False)
    for child in children[failing:]:
        _collect(child, rng, chosen, satisfy=True)
