'''
Two-dimensional complexes: coset graphs, their triangles and the
combinatorial checks run on them.

Vertices are numbered from 0.  Edges are sorted pairs and triangles sorted
triples.  A complex may carry two groups of vertex permutations: `action`,
which preserves every part (the right multiplication action of a coset
complex), and `symmetry`, which may also permute the parts.
'''
from collections import Counter, deque, namedtuple
from itertools import combinations

import networkx as nx

from .constants import CONVENTIONS, schema
from .groups import cross_polytope_facets, hyperoctahedral
from .perm import Permutation, PermGroup, coset_space


class ComplexError(ValueError):
    pass


CheckResult = namedtuple('CheckResult', 'ok witness')


class Complex2D:
    def __init__(self, n_vertices, edges=(), triangles=(), parts=None, part_names=None,
            action=None, symmetry=None):
        self._n = n_vertices
        if parts is None:
            parts = [0] * n_vertices
        if len(parts) != n_vertices:
            raise ComplexError('Part list has {} entries for {} vertices'.format(
                    len(parts), n_vertices))
        self._parts = tuple(parts)
        n_parts = max(self._parts) + 1 if self._parts else 0
        if part_names is None:
            part_names = ['P{}'.format(i + 1) for i in range(n_parts)]
        self._part_names = tuple(part_names)

        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ComplexError('Loop at vertex {}'.format(u))
            for w in (u, v):
                if not 0 <= w < n_vertices:
                    raise ComplexError('Vertex {} out of range'.format(w))
            edge_set.add((min(u, v), max(u, v)))
        self._edges = tuple(sorted(edge_set))
        self._edge_set = frozenset(edge_set)

        tri_set = set()
        for t in triangles:
            t = tuple(sorted(t))
            if len(t) != 3 or len(set(t)) != 3:
                raise ComplexError('Not a triangle: {}'.format(list(t)))
            for e in combinations(t, 2):
                if e not in edge_set:
                    raise ComplexError('Triangle {} has edge {} missing from the graph'.format(
                            list(t), list(e)))
            tri_set.add(t)
        self._triangles = tuple(sorted(tri_set))
        self._tri_set = frozenset(tri_set)

        adj = [set() for _ in range(n_vertices)]
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)
        self._graph = None

        if action is not None:
            self._check_group(action, preserve_parts=True)
        if symmetry is not None:
            self._check_group(symmetry, preserve_parts=False)
        self._action = action
        self._symmetry = symmetry

    def _check_group(self, group, preserve_parts):
        if group.degree != self._n:
            raise ComplexError('Group of degree {} cannot act on {} vertices'.format(
                    group.degree, self._n))
        for g in group.generators:
            if not self.is_automorphism(g):
                raise ComplexError('Group element does not preserve the complex')
            if preserve_parts and any(self._parts[g(v)] != self._parts[v] for v in range(self._n)):
                raise ComplexError('Group element does not preserve the parts')

    def is_automorphism(self, g):
        '''True iff g preserves adjacency and triangles and permutes the parts'''
        edges = self._edge_set
        for u, v in self._edges:
            a, b = g(u), g(v)
            if (min(a, b), max(a, b)) not in edges:
                return False
        tris = self._tri_set
        for t in self._triangles:
            if tuple(sorted(g(v) for v in t)) not in tris:
                return False
        blocks = {}
        for v in range(self._n):
            if blocks.setdefault(self._parts[v], self._parts[g(v)]) != self._parts[g(v)]:
                return False
        return len(set(blocks.values())) == len(blocks)

    ################################################################################
    # Accessors

    @property
    def n_vertices(self):
        return self._n

    @property
    def edges(self):
        return self._edges

    @property
    def triangles(self):
        return self._triangles

    @property
    def parts(self):
        return self._parts

    @property
    def part_names(self):
        return self._part_names

    @property
    def action(self):
        return self._action

    @property
    def symmetry(self):
        return self._symmetry

    def symmetry_group(self):
        '''The largest group known to act: symmetry if set, else action'''
        return self._symmetry if self._symmetry is not None else self._action

    def neighbors(self, v):
        return self._adj[v]

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_set

    def has_triangle(self, t):
        return tuple(sorted(t)) in self._tri_set

    def darts(self):
        '''Directed edges, sorted'''
        return [(u, v) for u in range(self._n) for v in sorted(self._adj[u])]

    def graph(self):
        '''The 1-skeleton as a networkx graph'''
        if self._graph is None:
            g = nx.Graph()
            g.add_nodes_from(range(self._n))
            g.add_edges_from(self._edges)
            self._graph = g
        return self._graph

    def with_symmetry(self, symmetry):
        return Complex2D(self._n, self._edges, self._triangles, self._parts,
                self._part_names, self._action, symmetry)

    def without_action(self):
        return Complex2D(self._n, self._edges, self._triangles, self._parts, self._part_names)

    ################################################################################
    # Serialization

    def to_dict(self):
        def gens(group):
            if group is None:
                return None
            return [list(g.images) for g in group.generators]

        return {
            'schema': schema('complex'),
            'conventions': dict(CONVENTIONS),
            'vertices': self._n,
            'part_names': list(self._part_names),
            'parts': list(self._parts),
            'edges': [list(e) for e in self._edges],
            'triangles': [list(t) for t in self._triangles],
            'action': gens(self._action),
            'symmetry': gens(self._symmetry),
        }

    @classmethod
    def from_dict(cls, data):
        if data.get('schema') != schema('complex'):
            raise ComplexError('Unsupported complex schema: {!r}'.format(data.get('schema')))
        n = data['vertices']

        def group(node):
            if node is None:
                return None
            return PermGroup([Permutation(images) for images in node], degree=n)

        return cls(n, [tuple(e) for e in data['edges']],
                [tuple(t) for t in data['triangles']],
                data['parts'], data['part_names'],
                group(data.get('action')), group(data.get('symmetry')))

    def __eq__(self, other):
        if not isinstance(other, Complex2D):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'Complex2D(vertices={}, edges={}, triangles={})'.format(
                self._n, len(self._edges), len(self._triangles))


################################################################################
# Construction

def from_facets(facets, n_vertices=None, action=None):
    '''A complex from facets of dimension at most 2'''
    facets = [tuple(sorted(set(f))) for f in facets]
    if n_vertices is None:
        n_vertices = max((v for f in facets for v in f), default=-1) + 1
    edges = set()
    triangles = []
    for f in facets:
        if len(f) > 3:
            raise ComplexError('Facet {} has dimension {}; complexes are 2-dimensional'.format(
                    list(f), len(f) - 1))
        if any(v < 0 for v in f):
            raise ComplexError('Negative vertex in facet {}'.format(list(f)))
        edges.update(combinations(f, 2))
        if len(f) == 3:
            triangles.append(f)
    if action is not None and not isinstance(action, PermGroup):
        action = PermGroup(action, degree=n_vertices)
    return Complex2D(n_vertices, edges, triangles, action=action)


def octahedron():
    '''Boundary of the 3-dimensional cross-polytope with its 48 symmetries'''
    return from_facets(cross_polytope_facets(3), action=hyperoctahedral(3))


# Minimal triangulation of the real projective plane
PROJECTIVE_PLANE_FACETS = (
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
    (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
)


def projective_plane():
    return from_facets(PROJECTIVE_PLANE_FACETS)


def cosets_meet(Hi, x, Hj, y):
    '''True iff the right cosets Hi*x and Hj*y intersect'''
    xi = x.inverse()
    return any(h * y * xi in Hi for h in Hj.elements())


def build_coset_complex(G, subgroups, part_names=None):
    '''The coset complex of G with respect to the given subgroups

    Vertices are the right cosets of each subgroup, part by part.  Two cosets
    of different subgroups are adjacent iff they intersect, which is read off
    by sweeping the elements of G: g lies in exactly one coset per part.
    Triangles are all 3-cliques; G acts by right multiplication.
    '''
    if len(subgroups) < 2:
        raise ComplexError('At least two subgroups are required, not {}'.format(len(subgroups)))
    for i, H in enumerate(subgroups):
        if not H.is_subgroup_of(G):
            raise ComplexError('Subgroup {} is not contained in the group'.format(i + 1))
    if part_names is None:
        part_names = ['V{}'.format(i + 1) for i in range(len(subgroups))]

    spaces = [coset_space(G, H) for H in subgroups]
    offsets = []
    parts = []
    for i, space in enumerate(spaces):
        offsets.append(len(parts))
        parts.extend([i] * len(space))
    n = len(parts)

    edges = set()
    for g in G.elements():
        vs = [offsets[i] + space.index_of(g) for i, space in enumerate(spaces)]
        edges.update(combinations(vs, 2))

    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    triangles = [(u, v, w) for u, v in sorted(edges) for w in sorted(adj[u] & adj[v]) if w > v]

    action_gens = []
    for s in G.generators:
        images = []
        for off, space in zip(offsets, spaces):
            images.extend(off + j for j in space.permutation(s).images)
        action_gens.append(Permutation(images))
    action = PermGroup(action_gens, degree=n)

    return Complex2D(n, edges, triangles, parts, part_names, action=action)


def coset_link(G, subgroups, i):
    '''The link of the base vertex Hi, computed inside Hi

    Its nodes are the cosets Hj*a (j != i, a in Hi); Hj*a and Hk*b are
    adjacent iff a*b^-1 lies in the product set Hj*Hk.
    '''
    Hi = subgroups[i]
    nodes = {}
    for j, Hj in enumerate(subgroups):
        if j == i:
            continue
        members = Hj.elements()
        for a in Hi.elements():
            key = min((h * a).images for h in members)
            nodes.setdefault((j, key), a)

    items = sorted(nodes.items())
    graph = nx.Graph()
    graph.add_nodes_from(k for k, _ in items)
    products = {}
    for (ka, a), (kb, b) in combinations(items, 2):
        j, k = ka[0], kb[0]
        if j == k:
            continue
        if (j, k) not in products:
            products[(j, k)] = frozenset((x * y).images
                    for x in subgroups[j].elements() for y in subgroups[k].elements())
        if (a * b.inverse()).images in products[(j, k)]:
            graph.add_edge(ka, kb)
    return graph


################################################################################
# Checks

def is_flag(c):
    '''True iff the triangles are the 3-cliques and there is no 4-clique'''
    adj = c._adj
    for u, v in c.edges:
        for w in sorted(adj[u] & adj[v]):
            if w > v and not c.has_triangle((u, v, w)):
                return CheckResult(False, (u, v, w))
    for a, b, d in c.triangles:
        common = adj[a] & adj[b] & adj[d]
        if common:
            return CheckResult(False, tuple(sorted((a, b, d, min(common)))))
    return CheckResult(True, None)


def every_edge_in_triangle(c):
    covered = set()
    for t in c.triangles:
        covered.update(combinations(t, 2))
    for e in c.edges:
        if e not in covered:
            return CheckResult(False, e)
    return CheckResult(True, None)


class DirectedEdgeOrbits:
    '''Orbits of a group on directed edges, with transport elements

    For each directed edge the table remembers one generator step back
    towards its orbit representative, so an element carrying the
    representative onto any edge can be rebuilt.
    '''

    def __init__(self, c, group):
        if group is None:
            raise ComplexError('No group action attached to the complex')
        if group.degree != c.n_vertices:
            raise ComplexError('Group of degree {} cannot act on {} vertices'.format(
                    group.degree, c.n_vertices))
        self.group = group
        self.darts = c.darts()
        index = {d: i for i, d in enumerate(self.darts)}
        self._index = index
        orbit_id = [-1] * len(self.darts)
        parent = [None] * len(self.darts)
        reps = []
        gens = group.generators
        for i in range(len(self.darts)):
            if orbit_id[i] >= 0:
                continue
            oid = len(reps)
            reps.append(i)
            orbit_id[i] = oid
            queue = deque([i])
            while queue:
                j = queue.popleft()
                u, v = self.darts[j]
                for k, g in enumerate(gens):
                    img = index[(g(u), g(v))]
                    if orbit_id[img] < 0:
                        orbit_id[img] = oid
                        parent[img] = (j, k)
                        queue.append(img)
        self._orbit_id = orbit_id
        self._parent = parent
        self._reps = reps

    @property
    def count(self):
        return len(self._reps)

    def orbit_of(self, dart):
        return self._orbit_id[self._index[dart]]

    def representative(self, oid):
        return self.darts[self._reps[oid]]

    def members(self, oid):
        return [d for d, o in zip(self.darts, self._orbit_id) if o == oid]

    def transport(self, dart):
        '''An element mapping the orbit representative onto dart'''
        steps = []
        j = self._index[dart]
        while self._parent[j] is not None:
            j, k = self._parent[j]
            steps.append(k)
        result = self.group.identity()
        gens = self.group.generators
        for k in reversed(steps):
            result = result * gens[k]
        return result


def _group_or_default(c, group):
    group = c.symmetry_group() if group is None else group
    if group is None:
        raise ComplexError('No group action attached to the complex')
    return group


def directed_edge_orbits(c, group=None):
    '''Number of orbits on directed edges; 1 means directed-edge transitive'''
    return DirectedEdgeOrbits(c, _group_or_default(c, group)).count


def check_edge_swap(c, group=None, table=None):
    '''For every directed edge (x, y): is there a triangle {x, y, z} and an
    element fixing z that maps x to y?

    That element exists iff (z, x) and (z, y) share an orbit.
    '''
    if table is None:
        table = DirectedEdgeOrbits(c, _group_or_default(c, group))
    adj = c._adj
    for x, y in table.darts:
        if not any(c.has_triangle((x, y, z)) and table.orbit_of((z, x)) == table.orbit_of((z, y))
                for z in sorted(adj[x] & adj[y])):
            return CheckResult(False, (x, y))
    return CheckResult(True, None)


def swap_witness(c, x, y, group=None, table=None):
    '''Returns (z, g) with g fixing z and mapping x to y, or None'''
    if table is None:
        table = DirectedEdgeOrbits(c, _group_or_default(c, group))
    for z in sorted(c.neighbors(x) & c.neighbors(y)):
        if c.has_triangle((x, y, z)) and table.orbit_of((z, x)) == table.orbit_of((z, y)):
            return z, table.transport((z, x)).inverse() * table.transport((z, y))
    return None


def triangle_orbits(c, group=None):
    '''Lexicographically least representative of each triangle orbit'''
    group = c.action if group is None else group
    if group is None:
        raise ComplexError('No group action attached to the complex')
    seen = set()
    reps = []
    for t in c.triangles:
        if t in seen:
            continue
        reps.append(t)
        seen.add(t)
        queue = deque([t])
        while queue:
            s = queue.popleft()
            for g in group.generators:
                img = tuple(sorted(g(v) for v in s))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return reps


################################################################################
# Symmetry beyond the supplied action

def _relabel(signatures):
    table = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [table[s] for s in signatures]


def _part_map(parts, pairs):
    sigma = {}
    for p, q in pairs:
        if sigma.setdefault(p, q) != q:
            return None
    if len(set(sigma.values())) != len(sigma):
        return None
    free_src = sorted(set(parts) - set(sigma))
    free_dst = sorted(set(parts) - set(sigma.values()))
    if len(free_src) == 1 and len(free_dst) == 1:
        sigma[free_src[0]] = free_dst[0]
    return sigma


def find_automorphism(c, source, target):
    '''A part-permuting automorphism mapping directed edge source onto target

    Both ends are individualized and colors are refined jointly on two copies
    of the 1-skeleton; the refined colors then seed a VF2++ search.  Returns a
    Permutation or None.
    '''
    (x, y), (x2, y2) = source, target
    if not (c.has_edge(x, y) and c.has_edge(x2, y2)):
        raise ComplexError('Both {} and {} must be edges'.format(source, target))
    parts = c.parts
    sigma = _part_map(parts, [(parts[x], parts[x2]), (parts[y], parts[y2])])
    if sigma is None:
        return None
    back = {q: p for p, q in sigma.items()}
    n = c.n_vertices

    def role(v, a, b):
        return 1 if v == a else (2 if v == b else 0)

    # a left vertex in part p may only go to part sigma[p]
    colors = _relabel([(sigma.get(parts[v], -1), role(v, x, y)) for v in range(n)]
            + [(parts[w] if parts[w] in back else -1, role(w, x2, y2)) for w in range(n)])
    adj = c._adj
    n_colors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)]
        sigs += [(colors[n + w], tuple(sorted(colors[n + u] for u in adj[w]))) for w in range(n)]
        refined = _relabel(sigs)
        count = len(set(refined))
        colors = refined
        if count == n_colors:
            break
        n_colors = count

    left, right = colors[:n], colors[n:]
    if Counter(left) != Counter(right):
        return None

    if len(set(left)) == n:
        where = {col: w for w, col in enumerate(right)}
        candidate = Permutation([where[col] for col in left])
    else:
        g1 = nx.Graph()
        g2 = nx.Graph()
        for v in range(n):
            g1.add_node(v, color=left[v])
            g2.add_node(v, color=right[v])
        g1.add_edges_from(c.edges)
        g2.add_edges_from(c.edges)
        mapping = nx.vf2pp_isomorphism(g1, g2, node_label='color')
        if mapping is None:
            return None
        candidate = Permutation([mapping[v] for v in range(n)])

    if candidate(x) != x2 or candidate(y) != y2 or not c.is_automorphism(candidate):
        return None
    return candidate


def extend_symmetry(c, group=None):
    '''Adds automorphisms until the directed edges form one orbit or no orbit
    can be merged further; returns the complex with its symmetry set
    '''
    base = _group_or_default(c, group)
    n = c.n_vertices
    gens = list(base.generators)
    failed = set()
    while True:
        table = DirectedEdgeOrbits(c, PermGroup(gens, degree=n))
        if table.count <= 1:
            break
        source = table.representative(0)
        for oid in range(1, table.count):
            target = table.representative(oid)
            if target in failed:
                continue
            f = find_automorphism(c, source, target)
            if f is not None:
                gens.append(f)
                break
            failed.update(table.members(oid))
        else:
            break
    return c.with_symmetry(PermGroup(gens, degree=n))
