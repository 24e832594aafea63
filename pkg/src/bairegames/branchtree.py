"""The binary branching tree T used to schedule W-point bookkeeping.

Nodes are tuples of naturals. The root () has the single successor (0,);
every other node t has t⁻ (append 0) and t⁺ (increment the last digit).
A node t of length L lies on level L + sum(t).
"""

from __future__ import annotations

from typing import List, Tuple

from .errors import DomainError

Node = Tuple[int, ...]

ROOT: Node = ()


def node_level(t: Node) -> int:
    if any(not isinstance(d, int) or d < 0 for d in t):
        raise DomainError(f"{t!r} is not a node of T")
    if t and t[0] < 0:
        raise DomainError(f"{t!r} is not a node of T")
    return len(t) + sum(t)


def in_tree(t: Node) -> bool:
    try:
        node_level(tuple(t))
    except DomainError:
        return False
    return True


def minus(t: Node) -> Node:
    return tuple(t) + (0,)


def plus(t: Node) -> Node:
    return tuple(t[:-1]) + (t[-1] + 1,)


def successors(t: Node) -> Tuple[Node, Node]:
    """(t⁻, t⁺) for a non-root node."""
    t = tuple(t)
    if not in_tree(t):
        raise DomainError(f"{t!r} is not a node of T")
    if not t:
        raise DomainError("the root has the single successor (0,)")
    return minus(t), plus(t)


def level(n: int) -> List[Node]:
    """Level n of T in lexicographic order."""
    if n < 0:
        raise DomainError("levels are indexed by naturals")
    if n == 0:
        return [ROOT]
    nodes = [(0,)]
    for _ in range(n - 1):
        nodes = [c for t in nodes for c in successors(t)]
    return sorted(nodes)


def source(t: Node) -> Tuple[Node, int]:
    """(s_t, k): the last minus-branching before t, and the level of s_t."""
    t = tuple(t)
    if not in_tree(t):
        raise DomainError(f"{t!r} is not a node of T")
    if not t:
        raise DomainError("the root has no source")
    s = t[:-1]
    return s, node_level(s)


def source_by_replay(t: Node) -> Tuple[Node, int]:
    """Source found by walking the successor relation back from t.

    Independent of `source`: climbs through ⁺-parents (last digit - 1)
    until reaching a node created by a ⁻-step (last digit 0), whose parent
    is the branching point. The (0,) node is the root's only child.
    """
    t = tuple(t)
    if not t:
        raise DomainError("the root has no source")
    cur = t
    while cur[-1] > 0:
        cur = cur[:-1] + (cur[-1] - 1,)
    parent = cur[:-1]
    return parent, node_level(parent)


def encode_node(t: Node) -> list:
    return list(t)
