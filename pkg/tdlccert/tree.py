'''
Finite balls in the (|X|, |Y|)-biregular tree, legal labelings and the
local actions of ball automorphisms.

Labels are 0-based: X = {0, ..., |X|-1} and Y = {0, ..., |Y|-1}.  The edge
(v, u) leaving a vertex v of side X carries a label in X, and all edges
into a vertex carry the same label.
'''
from collections import namedtuple

from .perm import Permutation

SIDES = ('X', 'Y')


class TreeError(ValueError):
    pass


class BoundaryVertexError(TreeError):
    '''A local action was requested where the star is cut off by the ball'''
    pass


CheckResult = namedtuple('CheckResult', 'ok witness')

# axiom is 1, 2 or 3; edges are the offending directed edges
LabelingViolation = namedtuple('LabelingViolation', 'axiom vertex edges')


class BiregularBall:
    '''The ball of a given radius around a root of side X or Y

    Vertices are numbered breadth-first, so the ball of any smaller radius
    is a prefix of the vertex list.
    '''

    def __init__(self, x, y, radius, root_side='X'):
        if x < 2 or y < 2:
            raise TreeError('Degrees must be at least 2, not ({}, {})'.format(x, y))
        if radius < 0:
            raise TreeError('Radius must be nonnegative, not {}'.format(radius))
        if root_side not in SIDES:
            raise TreeError('Root side must be X or Y, not {!r}'.format(root_side))
        self.x = x
        self.y = y
        self.radius = radius
        self.root = 0
        self.root_side = root_side
        self.side = [root_side]
        self.depth = [0]
        self.parent = [None]
        self.children = [[]]
        frontier = [0]
        for d in range(radius):
            nxt = []
            for v in frontier:
                n_children = self.degree(v) - (0 if v == self.root else 1)
                for _ in range(n_children):
                    u = len(self.side)
                    self.side.append('Y' if self.side[v] == 'X' else 'X')
                    self.depth.append(d + 1)
                    self.parent.append(v)
                    self.children.append([])
                    self.children[v].append(u)
                    nxt.append(u)
            frontier = nxt

    def __len__(self):
        return len(self.side)

    def degree(self, v):
        '''Degree in the tree, not in the ball'''
        return self.x if self.side[v] == 'X' else self.y

    def label_count(self, v):
        return self.degree(v)

    def neighbors(self, v):
        p = self.parent[v]
        return ([p] if p is not None else []) + self.children[v]

    def is_interior(self, v):
        return self.depth[v] < self.radius

    def out_edges(self, v):
        return [(v, u) for u in self.neighbors(v)]

    def in_edges(self, v):
        return [(u, v) for u in self.neighbors(v)]

    def directed_edges(self):
        return [e for v in range(len(self)) for e in self.out_edges(v)]

    def vertices_within(self, r):
        return [v for v in range(len(self)) if self.depth[v] <= r]

    @staticmethod
    def expected_size(x, y, radius, root_side='X'):
        '''Closed-form vertex count'''
        first, second = (x, y) if root_side == 'X' else (y, x)
        total = 1
        layer = 1
        for d in range(radius):
            if d == 0:
                layer = first
            else:
                layer *= (second if d % 2 else first) - 1
            total += layer
        return total


class LegalLabeling:
    '''A label for every directed edge of a ball'''

    def __init__(self, labels):
        self.labels = dict(labels)

    @classmethod
    def from_vertex_labels(cls, ball, lam):
        '''The labeling with every edge into u carrying lam[u]'''
        return cls({(v, u): lam[u] for v, u in ball.directed_edges()})

    def __call__(self, v, u):
        return self.labels[(v, u)]

    def relabel(self, perm_x, perm_y, ball):
        '''Applies a permutation of X to X labels and of Y to Y labels'''
        out = {}
        for (v, u), a in self.labels.items():
            out[(v, u)] = perm_x(a) if ball.side[v] == 'X' else perm_y(a)
        return LegalLabeling(out)

    def with_label(self, edge, label):
        labels = dict(self.labels)
        labels[edge] = label
        return LegalLabeling(labels)


def build_ball(x, y, radius, root_side='X'):
    return BiregularBall(x, y, radius, root_side)


def canonical_labeling(ball):
    '''Root edges in takes label 0; each vertex gives its children the labels
    left over by its parent edge, in increasing order
    '''
    lam = [None] * len(ball)
    lam[ball.root] = 0
    for v in range(len(ball)):
        taken = lam[ball.parent[v]] if ball.parent[v] is not None else None
        free = [a for a in range(ball.label_count(v)) if a != taken]
        for u, a in zip(ball.children[v], free):
            lam[u] = a
    return LegalLabeling.from_vertex_labels(ball, lam)


def validate_labeling(ball, labeling):
    '''First violated axiom in vertex order, or ok

    At an interior vertex the labels leaving it must biject onto its label
    set (axiom 1 on side X, 2 on side Y); at a boundary vertex they must be
    distinct labels from that set.  The labels arriving at any vertex must
    agree (axiom 3).
    '''
    for e in ball.directed_edges():
        if e not in labeling.labels:
            axiom = 1 if ball.side[e[0]] == 'X' else 2
            return CheckResult(False, LabelingViolation(axiom, e[0], [e]))
    for v in range(len(ball)):
        axiom = 1 if ball.side[v] == 'X' else 2
        out = ball.out_edges(v)
        labels = [labeling(*e) for e in out]
        n = ball.label_count(v)
        if ball.is_interior(v):
            good = sorted(labels) == list(range(n))
        else:
            good = len(set(labels)) == len(labels) and all(0 <= a < n for a in labels)
        if not good:
            return CheckResult(False, LabelingViolation(axiom, v, out))
        inc = ball.in_edges(v)
        if len({labeling(*e) for e in inc}) > 1:
            return CheckResult(False, LabelingViolation(3, v, inc))
    return CheckResult(True, None)


class BallMap:
    '''A map from the ball of some radius around the root into the ball'''
    __slots__ = ('images',)

    def __init__(self, images):
        self.images = tuple(images)

    def __call__(self, v):
        return self.images[v]

    def __len__(self):
        return len(self.images)

    def compose(self, other):
        '''self after other'''
        return BallMap(self.images[v] for v in other.images)

    def inverse(self):
        inv = [None] * len(self.images)
        for v, w in enumerate(self.images):
            inv[w] = v
        if None in inv:
            raise TreeError('Map is not a bijection of the ball')
        return BallMap(inv)

    def __eq__(self, other):
        if not isinstance(other, BallMap):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return 'BallMap({})'.format(list(self.images))


def identity_map(ball):
    return BallMap(range(len(ball)))


def is_isometry(ball, g):
    '''Side-preserving, adjacency-preserving and injective on its domain'''
    if len(set(g.images)) != len(g):
        return False
    for v in range(len(g)):
        if ball.side[g(v)] != ball.side[v]:
            return False
        p = ball.parent[v]
        if p is not None and g(p) not in ball.neighbors(g(v)):
            return False
    return True


def _has_star(ball, g, v):
    return all(u < len(g) for u in ball.neighbors(v)) and \
            len(ball.neighbors(v)) == ball.degree(v) and \
            len(ball.neighbors(g(v))) == ball.degree(g(v))


def local_action(ball, g, labeling, v):
    '''The permutation a -> l(g(v), g(u)) for l(v, u) = a'''
    if v >= len(g) or not _has_star(ball, g, v):
        raise BoundaryVertexError('Vertex {} or its image is not interior to the map'.format(v))
    images = [None] * ball.label_count(v)
    for u in ball.neighbors(v):
        images[labeling(v, u)] = labeling(g(v), g(u))
    return Permutation(images)


def _interior(ball, g):
    return [v for v in range(len(g)) if _has_star(ball, g, v)]


def is_universal_element(ball, g, labeling, M, N):
    '''Every defined local action lies in M (side X) or N (side Y)'''
    for v in _interior(ball, g):
        group = M if ball.side[v] == 'X' else N
        if local_action(ball, g, labeling, v) not in group:
            return False
    return True


def _check_groups(ball, M, N):
    if M.degree != ball.x or N.degree != ball.y:
        raise TreeError('Local groups of degrees ({}, {}) for a ({}, {}) tree'.format(
                M.degree, N.degree, ball.x, ball.y))


def enumerate_universal(ball, labeling, M, N, fix_root=True):
    '''All maps whose local actions lie in M and N

    With fix_root the maps are automorphisms of the ball fixing the root.
    Otherwise they are embeddings of the ball of radius r-2, sending the root
    to any vertex of its side within distance 2.  Maps are built depth-first:
    choosing the local action at a vertex places all of its children.
    '''
    _check_groups(ball, M, N)
    if ball.radius < 1:
        raise TreeError('Enumeration needs radius at least 1')
    if fix_root:
        domain = len(ball)
        root_images = [ball.root]
        inner = ball.radius
    else:
        if ball.radius < 2:
            raise TreeError('Root-moving maps need radius at least 2')
        domain = len(ball.vertices_within(ball.radius - 2))
        root_images = [w for w in ball.vertices_within(2)
                if ball.side[w] == ball.root_side and ball.depth[w] in (0, 2)]
        inner = ball.radius - 2
    interior = [v for v in range(domain) if ball.depth[v] < inner]
    groups = {'X': M.elements(), 'Y': N.elements()}

    results = []

    def extend(k, images):
        if k == len(interior):
            results.append(BallMap(images[:domain]))
            return
        v = interior[k]
        gv = images[v]
        by_label = {labeling(gv, w): w for w in ball.neighbors(gv)}
        p = ball.parent[v]
        for sigma in groups[ball.side[v]]:
            if p is not None and sigma(labeling(v, p)) != labeling(gv, images[p]):
                continue
            placed = list(images)
            for u in ball.children[v]:
                placed[u] = by_label[sigma(labeling(v, u))]
            extend(k + 1, placed)

    for w in root_images:
        start = [None] * domain
        start[ball.root] = w
        if not interior:
            results.append(BallMap(start))
            continue
        extend(0, start)
    return sorted(results, key=lambda g: g.images)


def root_local_action_image(ball, labeling, M, N):
    '''Local actions at the root of the root-fixing universal maps'''
    if ball.radius < 2:
        raise TreeError('Root local actions need radius at least 2')
    return {local_action(ball, g, labeling, ball.root)
            for g in enumerate_universal(ball, labeling, M, N, fix_root=True)}


def edge_fixator_size(ball, maps, edge):
    '''Number of maps fixing both ends of an edge'''
    u, v = edge
    return sum(1 for g in maps if g(u) == u and g(v) == v)


def edge_fixator_sizes(x, y, radii, M, N, root_side='X'):
    '''Size of the pointwise stabilizer of a root edge, per radius'''
    result = {}
    for r in radii:
        ball = build_ball(x, y, r, root_side)
        labeling = canonical_labeling(ball)
        maps = enumerate_universal(ball, labeling, M, N, fix_root=True)
        result[r] = edge_fixator_size(ball, maps, (ball.root, ball.children[ball.root][0]))
    return result
