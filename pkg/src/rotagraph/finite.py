"""Finite permutation groups and finite graphs.

Covers orbit counting (Cauchy-Frobenius), the rotary-transitivity
predicates, exhaustive subgroup scans at desk scale, the bipartite test,
the conjugation-class graph recipe for finite groups, and a census of
small graphs up to isomorphism.
"""

from fractions import Fraction
from functools import lru_cache
import itertools
import re

import numpy as np

from .errors import (
    BoundExceededError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
)


class Permutation:
    """A bijection of [0, n), stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PreconditionError("images must be a permutation of 0..n-1")
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    @classmethod
    def identity(cls, n):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text, n):
        """Parse cycle notation like "(0 1 2)(3 4)"; "()" is the identity."""
        text = text.strip()
        if not re.fullmatch(r"(\(\s*(\d+[\s,]*)*\))+", text):
            raise ParseError(f"bad cycle notation: {text!r}")
        images = list(range(n))
        for cyc in re.findall(r"\(([^()]*)\)", text):
            idx = [int(t) for t in re.split(r"[\s,]+", cyc.strip()) if t]
            if any(i >= n for i in idx):
                raise ParseError("cycle index out of range")
            if len(set(idx)) != len(idx):
                raise ParseError("repeated index inside a cycle")
            for a, b in zip(idx, idx[1:] + idx[:1]):
                if images[a] != a:
                    raise ParseError("index repeated across cycles")
                images[a] = b
        return cls(images)

    def cycles(self):
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(%s)" % " ".join(map(str, c)) for c in cyc)

    def __mul__(self, other):
        """Composition: (p * q)(i) = p(q(i))."""
        if self.degree != other.degree:
            raise PreconditionError("degree mismatch")
        return Permutation(self.images[j] for j in other.images)

    def inverse(self):
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def fixed_count(self):
        return sum(1 for i, j in enumerate(self.images) if i == j)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"


class PermGroup:
    """The closure of a list of generating permutations of [0, n)."""

    __slots__ = ("degree", "generators", "_elements")

    def __init__(self, degree, generators):
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise PreconditionError("generator degree mismatch")
        self.degree = degree
        self.generators = generators
        self._elements = None

    def elements(self):
        """Full element list, sorted by image tuple (deterministic)."""
        if self._elements is None:
            seen = {Permutation.identity(self.degree)}
            frontier = list(seen)
            while frontier:
                nxt = []
                for p in frontier:
                    for g in self.generators:
                        q = g * p
                        if q not in seen:
                            seen.add(q)
                            nxt.append(q)
                frontier = nxt
            self._elements = tuple(sorted(seen))
        return self._elements

    @property
    def order(self):
        return len(self.elements())

    def orbits(self):
        parent = list(range(self.degree))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for g in self.generators:
            for i, j in enumerate(g.images):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
        groups = {}
        for i in range(self.degree):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def is_transitive(self):
        return self.degree > 0 and len(self.orbits()) == 1

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


class FiniteGraph:
    """A finite simple graph: vertex count and unordered index pairs."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        norm = set()
        for e in edges:
            i, j = e
            if i == j:
                raise PreconditionError("loops are not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise PreconditionError("edge index out of range")
            norm.add((min(i, j), max(i, j)))
        self.n = n
        self.edges = frozenset(norm)

    def to_json(self):
        return {"n": self.n, "edges": sorted(map(list, self.edges))}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], [tuple(e) for e in obj["edges"]])

    def __eq__(self, other):
        return (isinstance(other, FiniteGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"FiniteGraph(n={self.n}, edges={sorted(self.edges)})"


class FiniteGroup:
    """A finite group as a multiplication table over indices 0..n-1.

    Tables passed in are validated exhaustively (identity, inverses,
    associativity); groups built from permutation generators inherit
    associativity from composition and skip the cubic check.
    """

    __slots__ = ("table", "identity", "names", "_inv")

    _TABLE_BOUND = 128  # cubic associativity check above this is too slow

    def __init__(self, table, names=None, _trusted=False):
        table = tuple(tuple(row) for row in table)
        n = len(table)
        rng = list(range(n))
        if any(len(row) != n for row in table):
            raise PreconditionError("multiplication table must be square")
        if any(sorted(row) != rng for row in table):
            raise PreconditionError("a table row is not a permutation")
        if any(sorted(col) != rng for col in zip(*table)):
            raise PreconditionError("a table column is not a permutation")
        ident = None
        for e in range(n):
            if all(table[e][j] == j for j in range(n)) \
                    and all(table[i][e] == i for i in range(n)):
                ident = e
                break
        if ident is None:
            raise PreconditionError("table has no identity element")
        if not _trusted:
            if n > self._TABLE_BOUND:
                raise BoundExceededError(
                    "table too large for exhaustive associativity validation")
            t = np.array(table, dtype=np.int32)
            if not np.array_equal(t[t, :], t[:, t]):
                raise PreconditionError("table is not associative")
        self.table = table
        self.identity = ident
        self.names = tuple(names) if names else tuple(map(str, range(n)))
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if table[i][j] == ident:
                    inv[i] = j
                    break
        if any(v is None for v in inv):
            raise PreconditionError("table has an element without an inverse")
        self._inv = tuple(inv)

    @classmethod
    def from_permutations(cls, generators):
        grp = PermGroup(generators[0].degree if generators else 1,
                        generators)
        elems = grp.elements()
        index = {p: i for i, p in enumerate(elems)}
        table = [[index[a * b] for b in elems] for a in elems]
        names = [p.cycle_string() for p in elems]
        return cls(table, names, _trusted=True)

    @property
    def order(self):
        return len(self.table)

    def mul(self, i, j):
        return self.table[i][j]

    def inv(self, i):
        return self._inv[i]

    def conj(self, i, g):
        """g * i * g^-1."""
        return self.mul(self.mul(g, i), self.inv(g))

    def conjugacy_class(self, i):
        return tuple(sorted({self.conj(i, g) for g in range(self.order)}))

    def cyclic_subgroup(self, i):
        out = [self.identity]
        x = i
        while x != self.identity:
            out.append(x)
            x = self.mul(x, i)
        return tuple(sorted(out))


# -- constructors -------------------------------------------------------------

def symmetric_group(n):
    if n <= 1:
        return PermGroup(max(n, 1), [Permutation.identity(max(n, 1))])
    gens = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(Permutation(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def cyclic_group(n):
    return PermGroup(n, [Permutation(list(range(1, n)) + [0])])


def dihedral_group(n):
    """Dihedral group of order 2n, acting on the n-gon's vertices."""
    rot = Permutation(list(range(1, n)) + [0])
    ref = Permutation([(n - i) % n for i in range(n)])
    return PermGroup(n, [rot, ref])


def quaternion_group():
    """Q8 as a multiplication table; element order 1,-1,i,-i,j,-j,k,-k."""
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    idx = {s: n for n, s in enumerate(names)}

    def q_mul(a, b):
        sa, sb = (-1 if a.startswith("-") else 1), (-1 if b.startswith("-") else 1)
        ua, ub = a.lstrip("-"), b.lstrip("-")
        basic = {
            ("1", "1"): (1, "1"), ("i", "i"): (-1, "1"),
            ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
        }
        if ua == "1":
            s, u = 1, ub
        elif ub == "1":
            s, u = 1, ua
        else:
            s, u = basic[(ua, ub)]
        s *= sa * sb
        return idx[u if s == 1 else "-" + u]

    table = [[q_mul(a, b) for b in names] for a in names]
    return FiniteGroup(table, names)


# -- orbit counting -----------------------------------------------------------

def orbit_count(g):
    return len(g.orbits())


def cauchy_frobenius(g):
    """Average fixed-point count over the group, as an exact rational."""
    elems = g.elements()
    total = sum(p.fixed_count() for p in elems)
    return Fraction(total, len(elems))


def is_rotarily_transitive_action(g):
    """Transitive, and every element has at least one fixed point."""
    if not g.is_transitive():
        return False
    return all(p.fixed_count() >= 1 for p in g.elements())


def jordan_witness(g):
    """A fixed-point-free element of a transitive group of degree >= 2.
    Its existence is Jordan's theorem; the scan is exhaustive, so failure
    would be a counterexample and raises."""
    if not g.is_transitive() or g.degree < 2:
        raise PreconditionError("needs a transitive group of degree >= 2")
    for p in g.elements():
        if p.fixed_count() == 0:
            return p
    raise InternalConsistencyError(
        "transitive group of degree >= 2 with no derangement")


# -- subgroup enumeration -----------------------------------------------------

def _closure_grow(table, base, new_elem):
    """Closure of (closed set `base`) union {new_elem}: frontier products
    only, so extending a known subgroup skips re-multiplying it by itself."""
    cur = np.union1d(base, np.int32(new_elem))
    frontier = np.array([new_elem], dtype=np.int32)
    while len(frontier):
        prods = np.union1d(table[np.ix_(frontier, cur)].ravel(),
                           table[np.ix_(cur, frontier)].ravel())
        frontier = np.setdiff1d(prods, cur, assume_unique=False)
        cur = np.union1d(cur, frontier)
    return cur


def _conjugate_orbit(table, inv, sub):
    """All conjugates of the subgroup (element array) at once: rows of the
    result are the distinct conjugate element sets, paired with one
    conjugating element index each."""
    left = table[:, sub]                       # [g, t] = g * s_t
    conj = table[left, inv[:, None]]           # [g, t] = g * s_t * g^-1
    conj = np.sort(conj, axis=1)
    uniq, first = np.unique(conj, axis=0, return_index=True)
    return uniq, first


def all_subgroups(g, bound=200):
    """Every subgroup of g, as generator-listed PermGroups.

    Bottom-up closure up to conjugacy: one representative per conjugacy
    class of subgroups is extended by single elements (one per coset, and
    only elements of prime-power order, which always suffice to generate);
    each new class is then expanded to its full conjugate orbit.
    Deduplication is by element set; output sorted by (order, elements).
    """
    elems = g.elements()
    n = len(elems)
    if n > bound:
        raise BoundExceededError(f"group order {n} exceeds the bound {bound}")
    index = {p: i for i, p in enumerate(elems)}
    table = np.array([[index[a * b] for b in elems] for a in elems],
                     dtype=np.int32)
    ident = index[Permutation.identity(g.degree)]
    inv = np.array([index[p.inverse()] for p in elems], dtype=np.int32)

    def elem_order(i):
        k, x = 1, i
        while x != ident:
            x = table[x][i]
            k += 1
        return k

    def prime_power(k):
        if k < 2:
            return False
        for p in (2, 3, 5, 7, 11, 13):
            while k % p == 0:
                k //= p
            if k == 1:
                return True
        return False

    allowed = [i for i in range(n) if prime_power(elem_order(i))]

    subs = {}   # frozenset of element indices -> generator index list
    trivial = frozenset([ident])
    subs[trivial] = []
    queue = [(np.array([ident], dtype=np.int32), [])]
    while queue:
        hidx, gens = queue.pop()
        hset = frozenset(hidx.tolist())
        # one candidate per right coset H*g: the smallest allowed element
        coset_id = table[hidx, :].min(axis=0)
        chosen = {}
        for cand in allowed:
            if cand in hset:
                continue
            key = coset_id[cand]
            if key not in chosen or cand < chosen[key]:
                chosen[key] = cand
        for cand in sorted(chosen.values()):
            new = _closure_grow(table, hidx, cand)
            key = frozenset(new.tolist())
            if key in subs:
                continue
            ngens = gens + [cand]
            orbit, reps = _conjugate_orbit(table, inv, new)
            for row, by in zip(orbit, reps):
                rkey = frozenset(row.tolist())
                if rkey not in subs:
                    subs[rkey] = [table[table[by][x]][inv[by]] for x in ngens]
            queue.append((new, ngens))
    out = []
    for hset, gens in sorted(subs.items(),
                             key=lambda kv: (len(kv[0]), sorted(kv[0]))):
        gen_perms = [elems[i] for i in sorted(gens)] \
            or [Permutation.identity(g.degree)]
        sub = PermGroup(g.degree, gen_perms)
        sub._elements = tuple(sorted(elems[i] for i in hset))
        out.append(sub)
    return out


# -- finite graphs ------------------------------------------------------------

def graph_automorphisms(fg):
    """The full automorphism group, by brute force over all relabelings."""
    if fg.n > 8:
        raise BoundExceededError("automorphism brute force is limited to n <= 8")
    if fg.n == 0:
        raise PreconditionError("empty vertex set")
    edges = fg.edges
    autos = []
    for images in itertools.permutations(range(fg.n)):
        ok = True
        for i, j in edges:
            a, b = images[i], images[j]
            if (min(a, b), max(a, b)) not in edges:
                ok = False
                break
        if ok:
            autos.append(Permutation(images))
    grp = PermGroup(fg.n, autos)
    grp._elements = tuple(sorted(autos))
    return grp


def is_rotarily_transitive_graph(fg, bound=200):
    """Whether some subgroup of Aut acts transitively with every element
    fixing a vertex.  Honest check: exhaustive subgroup scan (no appeal to
    the theorem that forces the answer).  A graph whose automorphism group
    is intransitive fails immediately (no subgroup can be transitive)."""
    aut = graph_automorphisms(fg)
    if not aut.is_transitive():
        return False
    if fg.n == 1:
        return True
    for sub in all_subgroups(aut, bound=bound):
        if is_rotarily_transitive_action(sub):
            return True
    return False


def is_bipartite(fg):
    """A 2-coloring with no monochromatic edge, or None."""
    color = [None] * fg.n
    adj = [[] for _ in range(fg.n)]
    for i, j in fg.edges:
        adj[i].append(j)
        adj[j].append(i)
    for start in range(fg.n):
        if color[start] is not None:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if color[w] is None:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


# -- conjugation-class graphs -------------------------------------------------

def conjugation_graph(grp, g1, g3):
    """Graph on the conjugacy class of g1 with edges {g h g^-1, g h' g^-1}
    for h = g1, h' = g3 g1 g3^-1, plus the conjugation action and a
    diagnostics report.

    Preconditions: g1 is not the identity, and g3 lies outside the cyclic
    subgroup generated by g1.
    """
    if g1 == grp.identity:
        raise PreconditionError("g1 must not be the identity")
    if g3 in grp.cyclic_subgroup(g1):
        raise PreconditionError("g3 must lie outside the subgroup generated by g1")
    cls = grp.conjugacy_class(g1)
    pos = {c: i for i, c in enumerate(cls)}
    g2 = grp.conj(g1, g3)
    edges = set()
    for g in range(grp.order):
        h, h2 = grp.conj(g1, g), grp.conj(g2, g)
        if h != h2:
            edges.add((min(pos[h], pos[h2]), max(pos[h], pos[h2])))
    fg = FiniteGraph(len(cls), edges)
    perms = sorted({Permutation([pos[grp.conj(c, g)] for c in cls])
                    for g in range(grp.order)})
    action = PermGroup(len(cls), perms)
    action._elements = tuple(perms)

    is_aut = all(
        all((min(p.images[i], p.images[j]), max(p.images[i], p.images[j]))
            in fg.edges for i, j in fg.edges)
        for p in perms)
    fpf = [p for p in perms if p.fixed_count() == 0]
    diagnostics = {
        "class_size": len(cls),
        "class_names": [grp.names[c] for c in cls],
        "acts_by_automorphisms": is_aut,
        "transitive": action.is_transitive(),
        "by_rotations": not fpf,
        "fixed_point_free": [p.cycle_string() for p in fpf],
    }
    return fg, action, diagnostics


# -- census -------------------------------------------------------------------

def _edge_positions(n):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@lru_cache(maxsize=None)
def _iso_class_reps(n):
    """One labeled representative bitmask per isomorphism class of graphs
    on n vertices: the minimum edge-bitmask over all relabelings."""
    pos = _edge_positions(n)
    m = len(pos)
    pidx = {e: k for k, e in enumerate(pos)}
    perm_maps = []
    for images in itertools.permutations(range(n)):
        perm_maps.append([
            pidx[(min(images[i], images[j]), max(images[i], images[j]))]
            for i, j in pos])
    perm_maps = np.array(perm_maps, dtype=np.int64)  # n! x m
    masks = np.arange(1 << m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m)) & 1).astype(np.int8)  # 2^m x m
    weights = (np.int64(1) << np.arange(m))
    best = None
    for pm in perm_maps:
        vals = bits[:, pm].astype(np.int64) @ weights
        best = vals if best is None else np.minimum(best, vals)
    return tuple(sorted(set(np.unique(best).tolist())))


def _mask_to_graph(n, mask):
    pos = _edge_positions(n)
    return FiniteGraph(n, [pos[k] for k in range(len(pos)) if (mask >> k) & 1])


def census(n_max, subgroup_bound=200, allow_seven=False):
    """Exhaustive report over all graphs on up to n_max vertices (one per
    isomorphism class): transitivity, rotary transitivity (honest subgroup
    scan, or an `unverified` flag when Aut exceeds the subgroup bound and
    the graph is vertex-transitive), bipartiteness, and Cauchy-Frobenius
    integrality of every automorphism group encountered."""
    limit = 7 if allow_seven else 6
    if n_max > limit:
        raise BoundExceededError(
            f"census bound is {limit} (pass allow_seven for 7)")
    graphs = []
    counts = {"graphs": 0, "transitive": 0, "rotarily_transitive": 0,
              "unverified": 0}
    a_ok = b_ok = c_ok = True
    for n in range(1, n_max + 1):
        for mask in _iso_class_reps(n):
            fg = _mask_to_graph(n, mask)
            aut = graph_automorphisms(fg)
            transitive = aut.is_transitive()
            cf = cauchy_frobenius(aut)
            cf_integral = (cf.denominator == 1 and cf == orbit_count(aut))
            c_ok = c_ok and cf_integral
            unverified = False
            if not transitive:
                rot = False
            else:
                try:
                    rot = is_rotarily_transitive_graph(fg, bound=subgroup_bound)
                except BoundExceededError:
                    rot, unverified = None, True
            if rot is not None and rot != (n == 1):
                a_ok = False
            coloring = is_bipartite(fg)
            if (coloring is not None and transitive and n >= 2
                    and _is_connected(fg) and rot is True):
                b_ok = False
            counts["graphs"] += 1
            counts["transitive"] += int(transitive)
            counts["rotarily_transitive"] += int(bool(rot))
            counts["unverified"] += int(unverified)
            graphs.append({
                "n": n,
                "edges": sorted(map(list, fg.edges)),
                "aut_order": aut.order,
                "transitive": transitive,
                "rotarily_transitive": rot,
                "unverified": unverified,
                "bipartite": coloring is not None,
                "cf_integral": cf_integral,
            })
    return {
        "n_max": n_max,
        "counts": counts,
        "assertions": {
            "no_multi_vertex_rotarily_transitive": a_ok,
            "bipartite_transitive_not_rotary": b_ok,
            "cauchy_frobenius_integral": c_ok,
        },
        "graphs": graphs,
    }


def _is_connected(fg):
    if fg.n == 0:
        return False
    adj = [[] for _ in range(fg.n)]
    for i, j in fg.edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == fg.n
