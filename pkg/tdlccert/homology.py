'''
Integer simplicial homology.

Chains are oriented by increasing vertex order: the boundary of (v0, ..., vk)
is the alternating sum of its faces, the face without vi carrying (-1)**i.
'''
import heapq
from collections import namedtuple
from itertools import combinations

import networkx as nx


class IntMatrix:
    '''A sparse integer matrix stored by columns'''

    def __init__(self, rows, cols, entries=()):
        if rows < 0 or cols < 0:
            raise ValueError('Negative matrix dimensions {}x{}'.format(rows, cols))
        self.rows = rows
        self.cols = cols
        self._cols = [{} for _ in range(cols)]
        for (i, j), v in dict(entries).items():
            self[i, j] = v

    @classmethod
    def from_dense(cls, data, cols=None):
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError('Ragged matrix rows')
        m = cls(len(data), cols)
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                if v:
                    m._cols[j][i] = int(v)
        return m

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def _check(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError('Entry ({}, {}) outside a {}x{} matrix'.format(
                    i, j, self.rows, self.cols))

    def __getitem__(self, key):
        i, j = key
        self._check(i, j)
        return self._cols[j].get(i, 0)

    def __setitem__(self, key, value):
        i, j = key
        self._check(i, j)
        if value:
            self._cols[j][i] = int(value)
        else:
            self._cols[j].pop(i, None)

    def column(self, j):
        return dict(self._cols[j])

    def nonzeros(self):
        '''Yields (i, j, value) column by column, rows ascending'''
        for j, col in enumerate(self._cols):
            for i in sorted(col):
                yield i, j, col[i]

    def nnz(self):
        return sum(len(c) for c in self._cols)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.nonzeros():
            out[i][j] = v
        return out

    def transpose(self):
        t = IntMatrix(self.cols, self.rows)
        for i, j, v in self.nonzeros():
            t._cols[i][j] = v
        return t

    def delete_rows(self, indices):
        '''The matrix with the given rows removed, remaining rows renumbered'''
        drop = set(indices)
        keep = [i for i in range(self.rows) if i not in drop]
        renum = {old: new for new, old in enumerate(keep)}
        m = IntMatrix(len(keep), self.cols)
        for j, col in enumerate(self._cols):
            m._cols[j] = {renum[i]: v for i, v in col.items() if i in renum}
        return m

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError('Cannot multiply {}x{} by {}x{}'.format(
                    self.rows, self.cols, other.rows, other.cols))
        out = IntMatrix(self.rows, other.cols)
        for j, col in enumerate(other._cols):
            acc = {}
            for k, b in col.items():
                for i, a in self._cols[k].items():
                    acc[i] = acc.get(i, 0) + a * b
            out._cols[j] = {i: v for i, v in acc.items() if v}
        return out

    def is_zero(self):
        return not any(self._cols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._cols) == (other.rows, other.cols, other._cols)

    def __repr__(self):
        return 'IntMatrix({}x{}, nnz={})'.format(self.rows, self.cols, self.nnz())


SnfResult = namedtuple('SnfResult', 'factors rank U V')


################################################################################
# Smith normal form

def _eliminate_units(A):
    '''Removes unit pivots from a sparse copy of A

    Returns the number of pivots removed and the residual as a dense matrix.
    Rows and columns are visited by fewest nonzeros first; a singleton row
    or column is eliminated without fill.
    '''
    cols = {j: dict(c) for j, c in enumerate(A._cols) if c}
    rows = {}
    for j, col in cols.items():
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v

    heap = [(len(c), 0, j) for j, c in cols.items()] + [(len(r), 1, i) for i, r in rows.items()]
    heapq.heapify(heap)
    stuck = set()
    pivots = 0

    def touch(kind, idx, store):
        line = store.get(idx)
        if line is None:
            return
        if not line:
            del store[idx]
            return
        stuck.discard((kind, idx))
        heapq.heappush(heap, (len(line), kind, idx))

    while heap:
        length, kind, idx = heapq.heappop(heap)
        store = cols if kind == 0 else rows
        line = store.get(idx)
        if line is None or (kind, idx) in stuck:
            continue
        if len(line) != length:
            touch(kind, idx, store)
            continue
        other = rows if kind == 0 else cols
        units = [k for k, v in line.items() if v in (1, -1)]
        if not units:
            stuck.add((kind, idx))
            continue
        k = min(units, key=lambda k: (len(other[k]), k))
        i, j = (k, idx) if kind == 0 else (idx, k)

        u = rows[i][j]
        prow = rows.pop(i)
        touched_rows = set()
        touched_cols = set(prow)
        for r, a in list(cols[j].items()):
            if r == i:
                continue
            f = a * u
            target = rows[r]
            for c, b in prow.items():
                nv = target.get(c, 0) - f * b
                if nv:
                    target[c] = nv
                    cols[c][r] = nv
                else:
                    target.pop(c, None)
                    cols[c].pop(r, None)
            touched_rows.add(r)
        for c in prow:
            cols[c].pop(i, None)
        del cols[j]
        touched_cols.discard(j)
        pivots += 1
        for c in sorted(touched_cols):
            touch(0, c, cols)
        for r in sorted(touched_rows):
            touch(1, r, rows)

    live_rows = sorted(i for i, r in rows.items() if r)
    live_cols = sorted(j for j, c in cols.items() if c)
    rpos = {i: p for p, i in enumerate(live_rows)}
    cpos = {j: p for p, j in enumerate(live_cols)}
    residual = [[0] * len(live_cols) for _ in live_rows]
    for j in live_cols:
        for i, v in cols[j].items():
            residual[rpos[i]][cpos[j]] = v
    return pivots, residual


def _dense_snf(A, transforms=False):
    '''Smith normal form of a dense matrix, smallest pivot first

    With transforms, also returns unimodular U and V with U*A*V diagonal.
    '''
    A = [r[:] for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(a, b):
        A[a], A[b] = A[b], A[a]
        if U is not None:
            U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for r in A:
            r[a], r[b] = r[b], r[a]
        if V is not None:
            for r in V:
                r[a], r[b] = r[b], r[a]

    def add_row(dst, src, q):
        '''row dst -= q * row src'''
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for r in A:
            r[dst] -= q * r[src]
        if V is not None:
            for r in V:
                r[dst] -= q * r[src]

    factors = []
    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])

        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
            col_rest = [(abs(A[i][t]), i) for i in range(t + 1, m) if A[i][t]]
            row_rest = [(abs(A[t][j]), j) for j in range(t + 1, n) if A[t][j]]
            if col_rest or row_rest:
                # a remainder smaller than the pivot becomes the pivot
                if col_rest and (not row_rest or min(col_rest) <= min(row_rest)):
                    swap_rows(t, min(col_rest)[1])
                else:
                    swap_cols(t, min(row_rest)[1])
                continue
            bad = next((i for i in range(t + 1, m)
                    if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, -1)

        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        factors.append(A[t][t])
    return factors, U, V


def smith_normal_form(A, transforms=False):
    '''Invariant factors of A, each dividing the next

    Without transforms, unit pivots are first removed from the sparse
    matrix and only the residual block is reduced densely.
    '''
    if transforms:
        factors, U, V = _dense_snf(A.to_dense(), transforms=True)
        return SnfResult(factors, len(factors), IntMatrix.from_dense(U, A.rows),
                IntMatrix.from_dense(V, A.cols))
    pivots, residual = _eliminate_units(A)
    factors, _, _ = _dense_snf(residual)
    factors = [1] * pivots + factors
    return SnfResult(factors, len(factors), None, None)


################################################################################
# Chain complexes

def boundary_matrices(c):
    '''(d1, d2) for a Complex2D: d1 is vertices x edges, d2 is edges x triangles'''
    edge_index = {e: i for i, e in enumerate(c.edges)}
    d1 = IntMatrix(c.n_vertices, len(c.edges))
    for j, (u, v) in enumerate(c.edges):
        d1[u, j] = -1
        d1[v, j] = 1
    d2 = IntMatrix(len(c.edges), len(c.triangles))
    for j, (a, b, d) in enumerate(c.triangles):
        d2[edge_index[(b, d)], j] = 1
        d2[edge_index[(a, d)], j] = -1
        d2[edge_index[(a, b)], j] = 1
    return d1, d2


def _forest_edges(c):
    '''Indices of the edges of a BFS spanning forest'''
    index = {e: i for i, e in enumerate(c.edges)}
    graph = c.graph()
    forest = []
    for component in sorted(nx.connected_components(graph), key=min):
        for u, v in nx.bfs_edges(graph, min(component), sort_neighbors=sorted):
            forest.append(index[(min(u, v), max(u, v))])
    return forest


Homology = namedtuple('Homology', 'betti torsion')


def homology_groups(c):
    '''H0, H1 and H2 of a Complex2D with integer coefficients

    H1 is the cokernel of d2 with the rows of a spanning forest deleted,
    which is isomorphic to ker d1 / im d2.
    '''
    n_components = nx.number_connected_components(c.graph()) if c.n_vertices else 0
    rank_d1 = c.n_vertices - n_components
    _, d2 = boundary_matrices(c)
    forest = _forest_edges(c)
    snf = smith_normal_form(d2.delete_rows(forest))
    rank_d2 = snf.rank
    return [
        Homology(n_components, []),
        Homology(len(c.edges) - rank_d1 - rank_d2, [d for d in snf.factors if d > 1]),
        Homology(len(c.triangles) - rank_d2, []),
    ]


def homology_rank_and_torsion(c, k):
    '''(betti, torsion) of H_k(c; Z) for k in {0, 1, 2}'''
    if k not in (0, 1, 2):
        raise ValueError('Homology degree must be 0, 1 or 2, not {}'.format(k))
    if k == 0:
        n = nx.number_connected_components(c.graph()) if c.n_vertices else 0
        return Homology(n, [])
    return homology_groups(c)[k]


def _faces(facets):
    '''All faces of the complex generated by facets, by dimension'''
    faces = {}
    for f in facets:
        f = tuple(sorted(set(f)))
        for k in range(1, len(f) + 1):
            for s in combinations(f, k):
                faces.setdefault(k - 1, set()).add(s)
    return {d: sorted(s) for d, s in faces.items()}


def _boundary(lower, upper):
    index = {s: i for i, s in enumerate(lower)}
    d = IntMatrix(len(lower), len(upper))
    for j, s in enumerate(upper):
        for i in range(len(s)):
            d[index[s[:i] + s[i+1:]], j] = -1 if i % 2 else 1
    return d


def simplicial_homology(facets, k):
    '''H_k of the simplicial complex generated by facets of any dimension'''
    if k < 0:
        raise ValueError('Homology degree must be nonnegative, not {}'.format(k))
    faces = _faces(facets)
    chains = faces.get(k, [])
    if k > 0 and chains:
        rank_out = smith_normal_form(_boundary(faces[k - 1], chains)).rank
    else:
        rank_out = 0
    upper = faces.get(k + 1, [])
    if upper:
        snf = smith_normal_form(_boundary(chains, upper))
        rank_in, torsion = snf.rank, [d for d in snf.factors if d > 1]
    else:
        rank_in, torsion = 0, []
    return Homology(len(chains) - rank_out - rank_in, torsion)
