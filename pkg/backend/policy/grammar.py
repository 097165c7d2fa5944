"""Policy text grammar.

    expr := ATTRIBUTE
          | "(" expr ")"
          | "(" expr ("AND" expr)+ ")"
          | "(" expr ("OR" expr)+ ")"
          | "(" K "of" "(" expr ("," expr)* ")" ")"

AND is an n-of-n gate, OR a 1-of-n gate.  Sibling indices follow
document order.  A bare attribute becomes a 1-of-1 root gate whose leaf
lives on the root level.
"""
import itertools

from lark import Lark, Transformer
from lark.exceptions import UnexpectedEOF, UnexpectedInput, VisitError

from core.exceptions import OutsourcingError, PolicySyntaxError, ThresholdError
from policy.tree import AccessNode, AccessTree

POLICY_GRAMMAR = r'''
?start: expr

?expr: ATTRIBUTE -> leaf
     | "(" expr ")"
     | "(" expr (_AND expr)+ ")" -> and_gate
     | "(" expr (_OR expr)+ ")" -> or_gate
     | "(" THRESHOLD _OF "(" expr ("," expr)* ")" ")" -> threshold_gate

ATTRIBUTE: /[A-Za-z0-9_:\-]+/
THRESHOLD.2: /[0-9]+(?=\s+of\b)/
_AND: /AND\b/
_OR: /OR\b/
_OF: /of\b/

%import common.WS
%ignore WS
'''

_parser = Lark(POLICY_GRAMMAR, parser='lalr', maybe_placeholders=False)


class _ShapeBuilder(Transformer):

    def leaf(self, items):
        return ('leaf', str(items[0]))

    def and_gate(self, items):
        return ('gate', len(items), list(items))

    def or_gate(self, items):
        return ('gate', 1, list(items))

    def threshold_gate(self, items):
        threshold, children = int(items[0]), list(items[1:])
        if not 1 <= threshold <= len(children):
            raise ThresholdError(
                f'threshold {threshold} out of range for '
                f'{len(children)} children'
            )
        return ('gate', threshold, children)


def parse_policy(text):
    try:
        parsed = _parser.parse(text)
    except UnexpectedEOF as exc:
        raise PolicySyntaxError('unexpected end of policy', len(text)) from exc
    except UnexpectedInput as exc:
        raise PolicySyntaxError(
            'policy syntax error', getattr(exc, 'pos_in_stream', None)
        ) from exc
    try:
        shape = _ShapeBuilder().transform(parsed)
    except VisitError as exc:
        if isinstance(exc.orig_exc, OutsourcingError):
            raise exc.orig_exc from None
        raise
    if shape[0] == 'leaf':
        shape = ('gate', 1, [shape])
        return AccessTree(_build(shape, itertools.count(1), 1, 1, None,
                                 inline_leaves=True))
    return AccessTree(_build(shape, itertools.count(1), 1, 1, None))


def _build(shape, ids, index, depth, parent_id, inline_leaves=False):
    node_id = next(ids)
    if shape[0] == 'leaf':
        return AccessNode(node_id=node_id, index=index, depth=depth,
                          attribute=shape[1], parent_id=parent_id)
    _, threshold, children = shape
    child_depth = depth if inline_leaves else depth + 1
    built = tuple(
        _build(child, ids, position, child_depth, node_id)
        for position, child in enumerate(children, start=1)
    )
    return AccessNode(node_id=node_id, index=index, depth=depth,
                      threshold=threshold, children=built,
                      parent_id=parent_id)
