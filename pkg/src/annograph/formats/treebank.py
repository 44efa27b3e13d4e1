"""Penn-style labelled bracketings, aligned to an existing word strand.

The tree's terminal string and the word strand rarely match one for one:
the tree has empty elements (traces) and the transcription has breaths and
other non-lexical tokens.  Both kinds are skipped by configuration, then
the remaining tokens must match exactly, left to right.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Collection, Optional, Union

from ..errors import AlignmentMismatch, MalformedBracketing
from ..graph import AnnotationGraph, Arc, Record, topological_order

__all__ = ["Tree", "read_bracketed", "word_sequence", "align_terminals", "parse_treebank"]

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


@dataclass
class Tree:
    label: str
    children: list[Union[Tree, str]] = field(default_factory=list)

    def terminals(self) -> list[tuple[str, str]]:
        """``(token, parent label)`` pairs, left to right."""
        out = []
        for c in self.children:
            if isinstance(c, Tree):
                out.extend(c.terminals())
            else:
                out.append((c, self.label))
        return out

    def __str__(self) -> str:
        inner = " ".join(str(c) for c in self.children)
        return f"({self.label} {inner})" if self.label else f"( {inner})"


def read_bracketed(text: Union[bytes, str]) -> list[Tree]:
    """Parse one or more bracketed trees.

    An unlabelled outer bracket (``( (S ...) )``) is kept as a tree with an
    empty label.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    tokens = _TOKEN_RE.findall(text)
    trees: list[Tree] = []
    stack: list[Tree] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "(":
            label = ""
            if i + 1 < len(tokens) and tokens[i + 1] not in ("(", ")"):
                label = tokens[i + 1]
                i += 1
            node = Tree(label)
            if stack:
                stack[-1].children.append(node)
            stack.append(node)
        elif tok == ")":
            if not stack:
                raise MalformedBracketing(f"unbalanced ')' at token {i}")
            node = stack.pop()
            if not node.children:
                raise MalformedBracketing(f"empty constituent ({node.label})")
            if not stack:
                trees.append(node)
        else:
            if not stack:
                raise MalformedBracketing(f"token {tok!r} outside any bracket")
            stack[-1].children.append(tok)
        i += 1
    if stack:
        raise MalformedBracketing(f"{len(stack)} unclosed bracket(s)")
    return trees


def word_sequence(g: AnnotationGraph, type_tag: str = "W") -> list[Arc]:
    """The arcs of one type in temporal/structural order.

    Silence gaps break a word strand into several chains; the chains are
    ordered by the topological position of their nodes.
    """
    pos = {v: i for i, v in enumerate(topological_order(g))}
    words = [a for a in g.arcs if a.type == type_tag]
    return sorted(words, key=lambda a: (pos[a.src], pos[a.dst], a.label))


def align_terminals(
    terminals: list[tuple[str, str]],
    words: list[Arc],
    skip_terminals: Collection[str],
    skip_words: Collection[str],
) -> list[Optional[Arc]]:
    """Map each terminal to a word arc, or ``None`` for skipped terminals."""
    out: list[Optional[Arc]] = []
    j = 0
    for i, (tok, parent) in enumerate(terminals):
        if tok in skip_terminals or parent in skip_terminals:
            out.append(None)
            continue
        while j < len(words) and words[j].label in skip_words:
            j += 1
        if j >= len(words):
            raise AlignmentMismatch(
                f"position {i}: tree token {tok!r} has no word left to align with",
                position=i,
                tree_token=tok,
                word_token=None,
            )
        if words[j].label != tok:
            raise AlignmentMismatch(
                f"position {i}: tree token {tok!r} does not match word {words[j].label!r}",
                position=i,
                tree_token=tok,
                word_token=words[j].label,
            )
        out.append(words[j])
        j += 1
    while j < len(words) and words[j].label in skip_words:
        j += 1
    if j < len(words):
        raise AlignmentMismatch(
            f"position {len(terminals)}: word {words[j].label!r} has no tree token",
            position=len(terminals),
            tree_token=None,
            word_token=words[j].label,
        )
    return out


def parse_treebank(
    bracketed: Union[bytes, str],
    word_graph: AnnotationGraph,
    skip_terminals: Collection[str] = frozenset({"-NONE-"}),
    skip_words: Collection[str] = frozenset(),
    type_tag: str = "W",
) -> AnnotationGraph:
    """Add ``Syn/<category>`` arcs for every nonterminal of the trees.

    A nonterminal spans from the start node of its first aligned terminal
    to the end node of its last.  One that covers only skipped material is
    attached to the boundary nodes of the nearest enclosing constituent
    that does cover words.  Unlabelled wrapper brackets produce no arc.
    """
    trees = read_bracketed(bracketed)
    terminals = [t for tree in trees for t in tree.terminals()]
    aligned = align_terminals(terminals, word_sequence(word_graph, type_tag), skip_terminals, skip_words)

    arcs: set[Arc] = set(word_graph.arcs)
    cursor = 0

    def visit(tree: Tree, enclosing: Optional[tuple[str, str]]) -> None:
        nonlocal cursor
        n = len(tree.terminals())
        mine = [a for a in aligned[cursor:cursor + n] if a is not None]
        span = (mine[0].src, mine[-1].dst) if mine else enclosing
        for c in tree.children:
            if isinstance(c, Tree):
                visit(c, span)
            else:
                cursor += 1
        if tree.label and span is not None:
            arcs.add(Arc(span[0], Record("Syn", tree.label), span[1]))

    for tree in trees:
        visit(tree, None)
    return AnnotationGraph(word_graph.nodes.values(), arcs)
