"""Dense linear algebra over F_p on tuples of tuples.

Everything here is exact modular arithmetic on small matrices; the module is
the brute-force substrate for orbit counting and invariant-subspace work, so
clarity and canonical forms win over speed.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .qcombin import galois_number

SUBSPACE_GUARD = 10**6
GL_GUARD = 10**6


# ---------------------------------------------------------------------------
# matrices


def mat_identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: tuple, b: tuple, p: int) -> tuple:
    n, k, m = len(a), len(b), len(b[0])
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(ra[x] * cb[x] for x in range(k)) % p for cb in bt) for ra in a
    )


def mat_vec(a: tuple, v: tuple, p: int) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) % p for row in a)


def mat_pow(a: tuple, e: int, p: int) -> tuple:
    out = mat_identity(len(a))
    base = a
    while e:
        if e & 1:
            out = mat_mul(out, base, p)
        base = mat_mul(base, base, p)
        e >>= 1
    return out


def rref(rows: Iterable[Sequence[int]], p: int) -> tuple:
    """Reduced row echelon form; returns the nonzero rows as a canonical tuple."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        inv = pow(mat[pivot_row][col], -1, p)
        mat[pivot_row] = [(x * inv) % p for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] % p:
                c = mat[r][col] % p
                mat[r] = [(x - c * y) % p for x, y in zip(mat[r], mat[pivot_row])]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(r))


def mat_rank(a: Iterable[Sequence[int]], p: int) -> int:
    return len(rref(a, p))


def mat_inverse(a: tuple, p: int) -> tuple:
    n = len(a)
    aug = [list(a[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    red = rref(aug, p)
    if len(red) < n or any(red[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def is_invertible(a: tuple, p: int) -> bool:
    return mat_rank(a, p) == len(a)


def reduce_against(v: Sequence[int], rows: tuple, p: int) -> tuple:
    """Reduce a vector against RREF rows; zero result means membership."""
    w = list(x % p for x in v)
    for row in rows:
        piv = next(i for i, x in enumerate(row) if x)
        if w[piv]:
            c = w[piv]
            w = [(x - c * y) % p for x, y in zip(w, row)]
    return tuple(w)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class FpSubspace:
    """Subspace of F_p^m as its reduced-row-echelon basis (canonical)."""

    rows: tuple
    ambient_dim: int
    p: int

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(reduce_against(v, self.rows, self.p))

    def image(self, g: tuple) -> "FpSubspace":
        rows = rref([mat_vec(g, v, self.p) for v in self.rows], self.p)
        return FpSubspace(rows, self.ambient_dim, self.p)


def subspace_from_vectors(vecs: Iterable[Sequence[int]], m: int, p: int) -> FpSubspace:
    return FpSubspace(rref(vecs, p), m, p)


def enumerate_rref_rows(m: int, p: int, k: int) -> Iterator[tuple]:
    """All RREF bases of k-dimensional subspaces of F_p^m, each exactly once."""
    for pivots in itertools.combinations(range(m), k):
        free = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, m)
            if j not in pivots
        ]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * m for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(
    m: int, p: int, dim_filter: Optional[Iterable[int]] = None, guard: int = SUBSPACE_GUARD
) -> Iterator[FpSubspace]:
    """Every subspace of F_p^m exactly once, in canonical (dim, RREF) order."""
    if galois_number(m, p) > guard:
        raise ValueError(f"subspace count for m={m}, p={p} exceeds guard {guard}")
    dims = sorted(set(dim_filter)) if dim_filter is not None else range(m + 1)
    for k in dims:
        for rows in enumerate_rref_rows(m, p, k):
            yield FpSubspace(rows, m, p)


def gl_enumerate(d: int, p: int, guard: int = GL_GUARD) -> list:
    """All invertible d x d matrices over F_p, built row by row."""
    order = 1
    for i in range(d):
        order *= p**d - p**i
    if order > guard:
        raise ValueError(f"|GL({d},{p})| = {order} exceeds guard {guard}")
    vectors = list(itertools.product(range(p), repeat=d))
    out: list = []

    def extend(rows: list):
        if len(rows) == d:
            out.append(tuple(rows))
            return
        span = rref(rows, p) if rows else ()
        for v in vectors:
            if rows and not any(reduce_against(v, span, p)):
                continue
            if not rows and not any(v):
                continue
            extend(rows + [v])

    extend([])
    assert len(out) == order
    return out


def gl_order(d: int, p: int) -> int:
    order = 1
    for i in range(d):
        order *= p**d - p**i
    return order


def invariant_subspace_count(g: tuple, p: int, guard: int = SUBSPACE_GUARD) -> int:
    """Brute-force count of g-invariant subspaces of the natural module."""
    m = len(g)
    if not is_invertible(g, p):
        raise ValueError("matrix is singular")
    count = 0
    for s in enumerate_subspaces(m, p, guard=guard):
        if all(s.contains(mat_vec(g, v, p)) for v in s.rows):
            count += 1
    return count


# ---------------------------------------------------------------------------
# group actions


@dataclass(frozen=True)
class LinearAction:
    """A finite matrix group acting on F_p^dim; element list is the whole group."""

    elements: tuple
    p: int
    dim: int
    name: str = "action"
    notes: tuple = ()

    def __post_init__(self):
        ident = mat_identity(self.dim)
        if ident not in self.elements:
            raise ValueError("action must contain the identity")
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("duplicate elements in action")
        pairs: Iterable
        if len(self.elements) <= 200:
            pairs = itertools.product(self.elements, repeat=2)
        else:
            rng = random.Random(20107)
            pairs = (
                (rng.choice(self.elements), rng.choice(self.elements))
                for _ in range(200)
            )
        for a, b in pairs:
            if mat_mul(a, b, self.p) not in elems:
                raise ValueError("element set not closed under product")

    def __len__(self):
        return len(self.elements)


def natural_action(d: int, p: int, guard: int = GL_GUARD) -> LinearAction:
    return LinearAction(tuple(gl_enumerate(d, p, guard=guard)), p, d, name=f"GL({d},{p}) natural")


def wedge_pairs(d: int) -> list:
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def wedge_matrix(g: tuple, p: int) -> tuple:
    """Block matrix acting as g on V and as the induced map on the wedge square."""
    d = len(g)
    pairs = wedge_pairs(d)
    m = d + len(pairs)
    out = [[0] * m for _ in range(m)]
    for i in range(d):
        for j in range(d):
            out[i][j] = g[i][j] % p
    for col, (i, j) in enumerate(pairs):
        for row, (k, l) in enumerate(pairs):
            out[d + row][d + col] = (g[k][i] * g[l][j] - g[l][i] * g[k][j]) % p
    return tuple(tuple(r) for r in out)


def wedge_module(d: int, p: int, guard: int = GL_GUARD) -> LinearAction:
    """GL(d,p) acting on V + wedge(V,V); split direct-sum model.

    For p = 2 the flat sum is only a stand-in for the non-split module that
    actually occurs, so the action carries an explanatory note.
    """
    notes = ("split-model (non-split extension not constructed)",) if p == 2 else ()
    elems = tuple(wedge_matrix(g, p) for g in gl_enumerate(d, p, guard=guard))
    return LinearAction(elems, p, d + len(wedge_pairs(d)), name=f"GL({d},{p}) wedge", notes=notes)


def fixed_subspace_count(g: tuple, subspaces: Sequence[FpSubspace], p: int) -> int:
    count = 0
    for s in subspaces:
        if all(s.contains(mat_vec(g, v, p)) for v in s.rows):
            count += 1
    return count


def cauchy_frobenius(action: LinearAction) -> tuple:
    """Orbit count as the average number of fixed subspaces; exactness asserted."""
    subspaces = list(enumerate_subspaces(action.dim, action.p))
    fixed = [fixed_subspace_count(g, subspaces, action.p) for g in action.elements]
    total = sum(fixed)
    orbit_count, rem = divmod(total, len(action))
    if rem:
        raise ArithmeticError("fixed-point total not divisible by group order")
    return orbit_count, fixed


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class OrbitCensus:
    orbit_count: int
    regular_count: int
    orbits: tuple  # (size, stabilizer_order) per orbit, deterministic order


def regular_orbits(action: LinearAction) -> OrbitCensus:
    """Partition all subspaces into orbits and compute stabilizer orders."""
    subspaces = list(enumerate_subspaces(action.dim, action.p))
    index = {s.rows: i for i, s in enumerate(subspaces)}
    uf = UnionFind(len(subspaces))
    for i, s in enumerate(subspaces):
        for g in action.elements:
            uf.union(i, index[s.image(g).rows])
    reps: dict = {}
    for i in range(len(subspaces)):
        reps.setdefault(uf.find(i), []).append(i)
    order = len(action)
    orbits = []
    for root in sorted(reps):
        members = reps[root]
        rep = subspaces[root]
        stab = sum(1 for g in action.elements if rep.image(g).rows == rep.rows)
        if len(members) * stab != order:
            raise ArithmeticError("orbit-stabilizer identity violated")
        orbits.append((len(members), stab))
    regular = sum(1 for size, stab in orbits if stab == 1)
    return OrbitCensus(orbit_count=len(orbits), regular_count=regular, orbits=tuple(orbits))


# ---------------------------------------------------------------------------
# polynomials over F_p (shared by the canonical-form machinery)


def poly_trim(c: Sequence[int]) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return poly_trim(out)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple:
    a = list(x % p for x in a)
    b = poly_trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    quot = [0] * max(0, len(a) - len(b) + 1)
    while len(poly_trim(a)) >= len(b):
        a = list(poly_trim(a))
        shift = len(a) - len(b)
        c = (a[-1] * inv) % p
        quot[shift] = c
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
    return poly_trim(quot), poly_trim(a)


def poly_pow(a: Sequence[int], e: int, p: int) -> tuple:
    out: tuple = (1,)
    for _ in range(e):
        out = poly_mul(out, a, p)
    return out


@functools.lru_cache(maxsize=None)
def monic_irreducibles(p: int, max_deg: int) -> list:
    """Monic irreducible polynomials of degree 1..max_deg, by sieve."""
    irr: list = []
    for deg in range(1, max_deg + 1):
        for tail in itertools.product(range(p), repeat=deg):
            f = poly_trim(tuple(tail) + (1,))
            if len(f) != deg + 1:
                continue
            if any(
                len(g) - 1 <= deg // 2 and not poly_divmod(f, g, p)[1]
                for g in irr
            ):
                continue
            irr.append(f)
    return irr


def companion_matrix(f: Sequence[int], p: int) -> tuple:
    """Companion matrix of a monic polynomial, column convention."""
    f = poly_trim(f)
    k = len(f) - 1
    assert k >= 1 and f[-1] == 1
    out = [[0] * k for _ in range(k)]
    for j in range(k - 1):
        out[j + 1][j] = 1
    for i in range(k):
        out[i][k - 1] = (-f[i]) % p
    return tuple(tuple(r) for r in out)


def block_diag(mats: Sequence[tuple], p: int) -> tuple:
    n = sum(len(m) for m in mats)
    out = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                out[off + i][off + j] = x % p
        off += len(m)
    return tuple(tuple(r) for r in out)


def _partitions_of(n: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return

    def rec(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def gl_class_reps(d: int, p: int) -> list:
    """One representative per conjugacy class of GL(d,p), via canonical forms.

    A class corresponds to an assignment of a partition to each monic
    irreducible other than t, with total weighted size d; the representative
    is the block-diagonal of companion matrices of f^part.
    """
    irs = [f for f in monic_irreducibles(p, d) if f[0] != 0]
    reps: list = []

    def rec(idx: int, remaining: int, chosen: list):
        if remaining == 0:
            blocks = []
            for f, parts in chosen:
                for m in parts:
                    blocks.append(companion_matrix(poly_pow(f, m, p), p))
            reps.append(block_diag(blocks, p) if blocks else mat_identity(0))
            return
        if idx == len(irs):
            return
        f = irs[idx]
        deg = len(f) - 1
        rec(idx + 1, remaining, chosen)
        for total in range(1, remaining // deg + 1):
            for parts in _partitions_of(total):
                rec(idx + 1, remaining - total * deg, chosen + [(f, parts)])

    rec(0, d, [])
    return reps


# ---------------------------------------------------------------------------
# small prime-power fields (deterministic oracle substrate)

# fixed irreducible moduli per (p, degree); coefficients low-to-high
_FIELD_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 0, 1),
    (7, 2): (1, 0, 1),
}


class SmallField:
    """F_q as F_p[t]/(f) with precomputed add/mul/inv tables.

    Elements are integers 0..q-1 encoding base-p coefficient vectors.
    """

    def __init__(self, q: int):
        p, k = _prime_power(q)
        self.q, self.p, self.deg = q, p, k
        if k == 1:
            self.add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            f = _FIELD_MODULI[(p, k)]
            polys = [self._decode(e) for e in range(q)]
            self.add = [
                [self._encode([(x + y) % p for x, y in zip(polys[a], polys[b])]) for b in range(q)]
                for a in range(q)
            ]
            self.mul = [
                [
                    self._encode(poly_divmod(poly_mul(polys[a], polys[b], p), f, p)[1])
                    for b in range(q)
                ]
                for a in range(q)
            ]
        self.neg = [0] * q
        self.inv = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add[a][b] == 0:
                    self.neg[a] = b
                if a and self.mul[a][b] == 1:
                    self.inv[a] = b

    def _decode(self, e: int) -> list:
        return [(e // self.p**i) % self.p for i in range(self.deg)]

    def _encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(coeffs))


def _prime_power(q: int) -> tuple:
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise ValueError("q must be a prime power")
            return p, k
    raise ValueError("q must be a prime power with p <= 13")


def rref_field(rows: Iterable[Sequence[int]], field: SmallField) -> tuple:
    """RREF over a SmallField; same canonical-form contract as rref()."""
    mat = [list(r) for r in rows]
    if not mat:
        return ()
    ncols = len(mat[0])
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, len(mat)) if mat[r][col]), None)
        if sel is None:
            continue
        mat[pivot_row], mat[sel] = mat[sel], mat[pivot_row]
        c = inv[mat[pivot_row][col]]
        mat[pivot_row] = [mul[c][x] for x in mat[pivot_row]]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col]:
                c = mat[r][col]
                mat[r] = [
                    add[x][neg[mul[c][y]]] for x, y in zip(mat[r], mat[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(mat):
            break
    return tuple(tuple(r) for r in mat[:pivot_row] if any(r))
