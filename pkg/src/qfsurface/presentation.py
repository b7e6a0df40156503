"""Pants decomposition graphs and standard surface-group presentations.

A genus-g pants decomposition is a connected trivalent gluing graph with
2g-2 vertices (pairs of pants, each with cuffs 0, 1, 2) and 3g-3 edges
(decomposition curves).  ``build_presentation`` turns such a graph into the
standard one-relator presentation

    < a1, b1, ..., ag, bg | [a1,b1]...[ag,bg] >

together with, for every decomposition curve, an explicit word in the
standard generators representing it, and a dictionary expressing each
standard generator as a word in the "assembly" alphabet (two generators per
pants plus one stable letter per edge outside a spanning tree) that the
holonomy construction knows how to evaluate.

The reduction to the standard relator is the classical cut-and-paste
normalization done as tracked changes of free basis:

1.  Glue pants along a breadth-first spanning tree.  The partial surface is
    planar, and its based boundary loops, listed in order, multiply to the
    identity in the free group on the pants generators.
2.  Each leftover edge pairs two boundary loops through a stable letter;
    eliminating the paired loop words yields one relator of length 4g in 2g
    generators, with every generator appearing twice with opposite signs.
3.  Repeatedly pick an interleaved generator pair x ... y ... x' ... y' and
    change basis so a commutator block splits off; after g rounds the
    relator is a concatenation of commutator blocks, which is the standard
    relator after renaming.
"""

from __future__ import annotations

from collections import deque

from .words import (
    cyclic_reduce,
    invert_word,
    multiply,
    reduce_word,
    rotate,
    substitute,
)

__all__ = [
    "MalformedGraph",
    "GluingEdge",
    "PantsDecompositionGraph",
    "SurfaceGroupPresentation",
    "build_presentation",
]


class MalformedGraph(Exception):
    """Counts, cuff usage, or connectivity of the gluing graph are wrong."""


class GluingEdge:
    """A decomposition curve joining two distinct cuffs (same pants allowed)."""

    __slots__ = ("label", "end_a", "end_b")

    def __init__(self, label, end_a, end_b):
        self.label = str(label)
        self.end_a = (int(end_a[0]), int(end_a[1]))
        self.end_b = (int(end_b[0]), int(end_b[1]))
        if self.end_a == self.end_b:
            raise MalformedGraph(f"edge {label!r} glues a cuff to itself")

    def ends(self):
        return self.end_a, self.end_b

    def __repr__(self):
        return f"GluingEdge({self.label!r}, {self.end_a!r}, {self.end_b!r})"


class PantsDecompositionGraph:
    """Validated trivalent gluing graph of a genus-g pants decomposition."""

    def __init__(self, num_pants, gluings, pants_ids=None):
        self.num_pants = int(num_pants)
        self.pants_ids = list(pants_ids) if pants_ids is not None else [
            f"P{k}" for k in range(self.num_pants)
        ]
        if len(self.pants_ids) != self.num_pants:
            raise MalformedGraph("pants id list does not match pants count")
        self.edges = []
        for item in gluings:
            if isinstance(item, GluingEdge):
                self.edges.append(item)
            else:
                label, end_a, end_b = item
                self.edges.append(GluingEdge(label, end_a, end_b))
        self._validate()
        self.curve_labels = sorted(edge.label for edge in self.edges)
        self._plan = None

    @property
    def genus(self):
        return len(self.edges) - self.num_pants + 1

    @property
    def num_curves(self):
        return len(self.edges)

    def curve_index(self, label):
        return self.curve_labels.index(label)

    def _validate(self):
        labels = [edge.label for edge in self.edges]
        if len(set(labels)) != len(labels):
            raise MalformedGraph("duplicate curve labels")
        seen = {}
        for edge in self.edges:
            for end in edge.ends():
                vertex, cuff = end
                if not (0 <= vertex < self.num_pants):
                    raise MalformedGraph(f"edge {edge.label!r} references pants {vertex}")
                if cuff not in (0, 1, 2):
                    raise MalformedGraph(f"edge {edge.label!r} references cuff {cuff}")
                if end in seen:
                    raise MalformedGraph(
                        f"cuff {end} used by both {seen[end]!r} and {edge.label!r}"
                    )
                seen[end] = edge.label
        expected = 3 * self.num_pants
        if len(seen) != expected:
            missing = [
                (v, c)
                for v in range(self.num_pants)
                for c in (0, 1, 2)
                if (v, c) not in seen
            ]
            raise MalformedGraph(f"unglued cuffs: {missing}")
        genus = self.genus
        if genus < 2:
            raise MalformedGraph(f"graph has genus {genus}, need at least 2")
        if self.num_pants != 2 * genus - 2 or len(self.edges) != 3 * genus - 3:
            raise MalformedGraph(
                f"counts ({self.num_pants} pants, {len(self.edges)} curves) do not "
                f"match a closed genus-{genus} surface"
            )
        # connectivity
        adjacency = {v: set() for v in range(self.num_pants)}
        for edge in self.edges:
            (va, _), (vb, _) = edge.ends()
            adjacency[va].add(vb)
            adjacency[vb].add(va)
        seen_vertices = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in seen_vertices:
                    seen_vertices.add(w)
                    queue.append(w)
        if len(seen_vertices) != self.num_pants:
            raise MalformedGraph("gluing graph is not connected")

    # -- assembly symbols ------------------------------------------------
    def symbol_a(self, vertex):
        return 2 * vertex + 1

    def symbol_b(self, vertex):
        return 2 * vertex + 2

    def symbol_z(self, nontree_index):
        return 2 * self.num_pants + nontree_index + 1

    def plan(self):
        if self._plan is None:
            self._plan = _build_plan(self)
        return self._plan

    def presentation(self):
        return self.plan().presentation


class SurfaceGroupPresentation:
    """Standard presentation plus marking words for decomposition curves."""

    def __init__(self, genus, relator, marking, generator_assembly_words):
        self.genus = genus
        self.num_generators = 2 * genus
        self.generator_names = []
        for k in range(genus):
            self.generator_names.append(f"a{k + 1}")
            self.generator_names.append(f"b{k + 1}")
        self.relator = tuple(relator)
        self.marking = dict(marking)
        self.generator_assembly_words = dict(generator_assembly_words)

    def name_of(self, letter):
        base = self.generator_names[abs(letter) - 1]
        return base.upper() if letter < 0 else base

    def word_to_string(self, word):
        return "*".join(self.name_of(letter) for letter in word) or "1"

    def word_from_string(self, text):
        """Parse words like 'a1*b1*A1' (uppercase means inverse)."""
        text = text.strip()
        if text in ("", "1"):
            return ()
        letters = []
        for token in text.replace(",", " ").replace("*", " ").split():
            inverse = False
            name = token
            if name.endswith("^-1"):
                inverse = True
                name = name[:-3]
            if name[0].isupper():
                inverse = True
                name = name.lower()
            try:
                idx = self.generator_names.index(name) + 1
            except ValueError:
                raise KeyError(f"unknown generator {token!r}") from None
            letters.append(-idx if inverse else idx)
        return reduce_word(letters)


class _Node:
    """Boundary-list entry; replaced entries remember their two children."""

    __slots__ = ("word", "tag", "children", "c_index")

    def __init__(self, word, tag):
        self.word = tuple(word)
        self.tag = tag
        self.children = None
        self.c_index = None


class AssemblyPlan:
    """Everything the holonomy builder needs, computed once per graph."""

    def __init__(self, graph, root, tree_gluings, nontree_gluings, presentation,
                 curve_assembly_words):
        self.graph = graph
        self.root = root
        self.tree_gluings = tree_gluings        # (label, parent_end, child_end)
        self.nontree_gluings = nontree_gluings  # (label, s_end, t_end, z_symbol)
        self.presentation = presentation
        self.curve_assembly_words = curve_assembly_words


def _graph_center(graph):
    """Vertex of minimal BFS eccentricity (lowest index on ties).

    Rooting the spanning tree at a center keeps conjugator words short,
    which keeps holonomy matrix entries as small as the geometry allows.
    """
    adjacency = {v: set() for v in range(graph.num_pants)}
    for edge in graph.edges:
        (va, _), (vb, _) = edge.ends()
        adjacency[va].add(vb)
        adjacency[vb].add(va)
    best = (None, None)
    for start in range(graph.num_pants):
        dist = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        ecc = max(dist.values())
        if best[0] is None or ecc < best[0]:
            best = (ecc, start)
    return best[1]


def _spanning_tree(graph, root):
    """Breadth-first tree from the root, edges tried in label order."""
    incident = {v: [] for v in range(graph.num_pants)}
    for edge in sorted(graph.edges, key=lambda e: e.label):
        (va, ca), (vb, cb) = edge.ends()
        incident[va].append((edge, (va, ca), (vb, cb)))
        if va != vb:
            incident[vb].append((edge, (vb, cb), (va, ca)))
    visited = {root}
    queue = deque([root])
    tree = []
    tree_labels = set()
    while queue:
        v = queue.popleft()
        for edge, my_end, other_end in incident[v]:
            if edge.label in tree_labels:
                continue
            w = other_end[0]
            if w not in visited:
                tree.append((edge.label, my_end, other_end))
                tree_labels.add(edge.label)
                visited.add(w)
                queue.append(w)
    nontree = [e for e in sorted(graph.edges, key=lambda e: e.label)
               if e.label not in tree_labels]
    return tree, nontree


def _build_plan(graph):
    genus = graph.genus
    root = _graph_center(graph)
    tree, nontree = _spanning_tree(graph, root)

    # ---- stage 1: glue pants along the tree, tracking boundary loops ----
    nodes = []

    def make_node(word, tag):
        node = _Node(reduce_word(word), tag)
        nodes.append(node)
        return node

    sym_a, sym_b = graph.symbol_a, graph.symbol_b
    a0, b0 = sym_a(root), sym_b(root)
    root_nodes = [
        make_node((a0,), (root, 0)),
        make_node((b0,), (root, 1)),
        make_node((-b0, -a0), (root, 2)),
    ]
    entries = list(root_nodes)
    # per-symbol recipe over nodes: list of (node, sign)
    symbol_recipe = {a0: [(root_nodes[0], 1)], b0: [(root_nodes[1], 1)]}
    tree_curve_nodes = {}

    for label, parent_end, child_end in tree:
        position = next(
            k for k, node in enumerate(entries) if node.tag == parent_end
        )
        u_node = entries[position]
        u = u_node.word
        w, j = child_end
        aw, bw = sym_a(w), sym_b(w)
        if j == 0:
            # A_w := u^-1; boundary loops 1 and 2 of the child get inserted
            first = make_node((bw,), (w, 1))
            second = make_node(multiply((-bw,), u), (w, 2))
            symbol_recipe[aw] = [(u_node, -1)]
            symbol_recipe[bw] = [(first, 1)]
        elif j == 1:
            # B_w := u^-1
            first = make_node(multiply(u, (-aw,)), (w, 2))
            second = make_node((aw,), (w, 0))
            symbol_recipe[bw] = [(u_node, -1)]
            symbol_recipe[aw] = [(second, 1)]
        else:
            # (A_w B_w)^-1 = u^-1, so B_w := A_w^-1 u
            first = make_node((aw,), (w, 0))
            second = make_node(multiply((-aw,), u), (w, 1))
            symbol_recipe[aw] = [(first, 1)]
            symbol_recipe[bw] = [(first, -1), (u_node, 1)]
        u_node.children = (first, second)
        entries[position:position + 1] = [first, second]
        tree_curve_nodes[label] = u_node

    assert len(entries) == 2 * genus
    assert multiply(*(node.word for node in entries)) == ()

    for index, node in enumerate(entries):
        node.c_index = index + 1

    def expr_in_c(node):
        if node.c_index is not None:
            return (node.c_index,)
        left, right = node.children
        return multiply(expr_in_c(left), expr_in_c(right))

    # ---- stage 2: pair leftover boundary loops with stable letters ------
    tag_to_node = {node.tag: node for node in entries}
    nontree_gluings = []
    eliminated = {}   # c-index of the t side -> (z id in P1, c id of s side)
    p1_of_c = {}
    p1_names = {}
    next_p1 = 1
    for k, edge in enumerate(nontree):
        end_a, end_b = edge.ends()
        node_a, node_b = tag_to_node[end_a], tag_to_node[end_b]
        if node_a.c_index < node_b.c_index:
            s_end, t_end = end_a, end_b
            s_node, t_node = node_a, node_b
        else:
            s_end, t_end = end_b, end_a
            s_node, t_node = node_b, node_a
        c_id = next_p1
        z_id = next_p1 + 1
        next_p1 += 2
        p1_of_c[s_node.c_index] = c_id
        eliminated[t_node.c_index] = (z_id, c_id)
        p1_names[c_id] = ("cuff", s_node.c_index)
        p1_names[z_id] = ("stable", edge.label)
        nontree_gluings.append((edge.label, s_end, t_end, graph.symbol_z(k)))

    def c_word_to_p1(word):
        out = ()
        for letter in word:
            idx = abs(letter)
            if idx in p1_of_c:
                chunk = (p1_of_c[idx],)
            else:
                z_id, c_id = eliminated[idx]
                chunk = (z_id, -c_id, -z_id)
            if letter < 0:
                chunk = invert_word(chunk)
            out = multiply(out, chunk)
        return out

    planar_word = tuple(range(1, 2 * genus + 1))
    relator_p1 = c_word_to_p1(planar_word)
    num_p1 = next_p1 - 1
    assert num_p1 == 2 * genus
    assert len(relator_p1) == 4 * genus
    _assert_surface_word(relator_p1, num_p1)

    # ---- stage 3: collect commutators ------------------------------------
    word = relator_p1
    phi = {g: (g,) for g in range(1, num_p1 + 1)}   # P1 generator -> current
    psi = {g: (g,) for g in range(1, num_p1 + 1)}   # current generator -> P1
    collected = set()
    for _ in range(genus):
        pair = _find_interleaved_pair(word, collected)
        assert pair is not None, "no interleaved pair in a surface word"
        word = _collect_pair(word, pair, phi, psi)
        collected.update(pair)
    blocks = _parse_commutator_blocks(word, genus)
    assert blocks is not None, "collection did not reach commutator form"

    # ---- stage 4: rename block generators to a1, b1, ..., ag, bg --------
    rename = {}
    for k, (p, q) in enumerate(blocks):
        rename[abs(p)] = (2 * k + 1) * (1 if p > 0 else -1)
        rename[abs(q)] = (2 * k + 2) * (1 if q > 0 else -1)

    def apply_rename(w):
        out = []
        for letter in w:
            target = rename[abs(letter)]
            out.append(target if letter > 0 else -target)
        return tuple(out)

    final_psi = {}
    for old_id, image in psi.items():
        new_signed = rename[old_id]
        if new_signed > 0:
            final_psi[new_signed] = image
        else:
            final_psi[-new_signed] = invert_word(image)

    standard = []
    for k in range(genus):
        a, b = 2 * k + 1, 2 * k + 2
        standard.extend((a, b, -a, -b))
    standard = tuple(standard)
    renamed = apply_rename(word)
    assert any(rotate(renamed, r) == standard for r in range(len(renamed)))

    # phi and psi must be mutually inverse free-basis changes
    for p1_gen in range(1, num_p1 + 1):
        image = apply_rename(phi[p1_gen])
        assert _expand_via(final_psi, image) == (p1_gen,)

    # ---- marking words ---------------------------------------------------
    def to_final(p1_word):
        out = ()
        for letter in p1_word:
            chunk = phi[abs(letter)]
            if letter < 0:
                chunk = invert_word(chunk)
            out = multiply(out, chunk)
        return apply_rename(out)

    marking = {}
    curve_assembly_words = {}
    for label, node in tree_curve_nodes.items():
        marking[label] = to_final(c_word_to_p1(expr_in_c(node)))
        curve_assembly_words[label] = node.word
    for label, s_end, t_end, _z in nontree_gluings:
        s_node = tag_to_node[s_end]
        marking[label] = to_final((p1_of_c[s_node.c_index],))
        curve_assembly_words[label] = s_node.word
    for label in graph.curve_labels:
        assert marking[label], f"empty marking word for curve {label!r}"

    # ---- generators as assembly words ------------------------------------
    def recipe_word(symbol):
        out = ()
        for node, sign in symbol_recipe[symbol]:
            w = node.word
            if sign < 0:
                w = invert_word(w)
            out = multiply(out, w)
        return out

    z_symbol_of_p1 = {}
    for k, (label, s_end, t_end, z_symbol) in enumerate(nontree_gluings):
        for p1_id, meaning in p1_names.items():
            if meaning == ("stable", label):
                z_symbol_of_p1[p1_id] = z_symbol
    c_node_of_p1 = {}
    for c_idx, p1_id in p1_of_c.items():
        c_node_of_p1[p1_id] = entries[c_idx - 1]

    def p1_to_assembly(p1_word):
        out = ()
        for letter in p1_word:
            idx = abs(letter)
            if idx in z_symbol_of_p1:
                chunk = (z_symbol_of_p1[idx],)
            else:
                chunk = c_node_of_p1[idx].word
            if letter < 0:
                chunk = invert_word(chunk)
            out = multiply(out, chunk)
        return out

    generator_assembly_words = {
        gen: p1_to_assembly(image) for gen, image in final_psi.items()
    }

    presentation = SurfaceGroupPresentation(
        genus, standard, marking, generator_assembly_words
    )
    return AssemblyPlan(graph, root, tree, nontree_gluings, presentation,
                        curve_assembly_words)


def _assert_surface_word(word, num_generators):
    counts = {}
    for letter in word:
        counts.setdefault(abs(letter), []).append(letter > 0)
    assert sorted(counts) == list(range(1, num_generators + 1))
    for gen, signs in counts.items():
        assert len(signs) == 2 and signs[0] != signs[1], \
            f"generator {gen} does not appear twice with opposite signs"


def _find_interleaved_pair(word, excluded):
    positions = {}
    for idx, letter in enumerate(word):
        positions.setdefault(abs(letter), []).append(idx)
    for x in sorted(g for g in positions if g not in excluded):
        i1, i2 = positions[x]
        for y in sorted({abs(word[k]) for k in range(i1 + 1, i2)}):
            if y == x or y in excluded:
                continue
            j1, j2 = positions[y]
            if (i1 < j1 < i2) != (i1 < j2 < i2):
                return x, y
    return None


def _flip_generator(word, gen, phi, psi):
    flipped = tuple(-l if abs(l) == gen else l for l in word)
    for key in phi:
        phi[key] = tuple(-l if abs(l) == gen else l for l in phi[key])
    psi[gen] = invert_word(psi[gen])
    return flipped


def _expand_via(mapping, w):
    out = ()
    for letter in w:
        chunk = mapping[abs(letter)]
        if letter < 0:
            chunk = invert_word(chunk)
        out = multiply(out, chunk)
    return out


def _collect_pair(word, pair, phi, psi):
    x, y = pair
    # rotate the positive x occurrence to the front
    pos = word.index(x) if x in word else None
    assert pos is not None
    w = rotate(word, pos)
    px = w.index(-x)
    ys = [k for k, letter in enumerate(w) if abs(letter) == y]
    inside = [k for k in ys if 0 < k < px]
    outside = [k for k in ys if k > px]
    assert len(inside) == 1 and len(outside) == 1
    if w[inside[0]] < 0:
        w = _flip_generator(w, y, phi, psi)
    j_in, j_out = inside[0], outside[0]

    A = w[1:j_in]
    B = w[j_in + 1:px]
    C = w[px + 1:j_out]
    D = w[j_out + 1:]

    # basis change: old x = C B A x' A^-1, old y = y' A^-1 B^-1
    e_x = multiply(C, B, A, (x,), invert_word(A))
    e_y = multiply((y,), invert_word(A), invert_word(B))
    # new generators in terms of the old basis
    back_x = multiply(invert_word(A), invert_word(B), invert_word(C), (x,), A)
    back_y = multiply((y,), B, A)

    psi_x = _expand_via(psi, back_x)
    psi_y = _expand_via(psi, back_y)
    psi[x] = psi_x
    psi[y] = psi_y
    for key in phi:
        phi[key] = substitute(substitute(phi[key], x, e_x), y, e_y)

    new_word = substitute(substitute(w, x, e_x), y, e_y)
    new_word = cyclic_reduce(new_word)
    assert len(new_word) == len(word), "cancellation during collection"
    return new_word


def _parse_commutator_blocks(word, genus):
    length = 4 * genus
    if len(word) != length:
        return None
    for r in range(length):
        w = rotate(word, r)
        blocks = []
        ok = True
        for k in range(genus):
            p, q, pi, qi = w[4 * k:4 * k + 4]
            if pi != -p or qi != -q or abs(p) == abs(q):
                ok = False
                break
            blocks.append((p, q))
        if ok:
            seen = [abs(l) for pq in blocks for l in pq]
            if len(set(seen)) == 2 * genus:
                return blocks
    return None


def build_presentation(graph):
    """Standard presentation with marking words for the graph's curves."""
    return graph.presentation()
