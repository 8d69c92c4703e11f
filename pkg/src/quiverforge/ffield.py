"""Exact linear algebra over finite fields F_{p^k}.

Field elements are plain integers in ``0..q-1``: the residue polynomial
``sum_i c_i x^i`` is encoded as the base-p integer ``sum_i c_i p^i``.  The
modulus is chosen deterministically (see :func:`smallest_irreducible`), so
serialized results are reproducible across runs and machines.

Prime fields use ordinary modular arithmetic.  Extension fields build q x q
add/mul lookup tables once per field (all in-scope fields are tiny); the
same tables back the vectorized bulk-enumeration engine in ``orbits``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, SingularMatrixError, ValidationError

TABLE_LIMIT = 512  # largest q for which lookup tables are precomputed


def is_prime(n: int) -> bool:
    """Trial division; exact and fast at this scale."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p; coefficient lists are low degree first


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_is_irreducible(f: list[int], p: int) -> bool:
    """f monic of degree >= 1: no monic factor of degree 1..deg//2."""
    deg = len(f) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            g = list(lower) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """The lexicographically smallest monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the word
    (c_{k-1}, ..., c_0), i.e. by the base-p integer built from the
    non-leading coefficients, highest degree most significant.
    """
    for word in itertools.product(range(p), repeat=k):
        f = list(reversed(word)) + [1]
        if _poly_is_irreducible(f, p):
            return tuple(f)
    raise ConsistencyError(f"no irreducible of degree {k} over F_{p}")  # pragma: no cover


class Field:
    """The field with q = p^k elements, with deterministic modulus."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if k < 1:
            raise ValidationError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = smallest_irreducible(p, k)
        self._mul_table: list[list[int]] | None = None
        self._add_table: list[list[int]] | None = None
        self._inv_table: list[int] | None = None
        if self.k > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Base-p digits of a: the residue polynomial's coefficients."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        a = 0
        for c in reversed(list(cs)):
            a = a * self.p + (c % self.p)
        return a

    def _build_tables(self) -> None:
        q, p = self.q, self.p
        mod = list(self.modulus)
        polys = [list(self.coeffs(a)) for a in range(q)]
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            pa = polys[a]
            for b in range(a, q):
                pb = polys[b]
                s = self.from_coeffs((x + y) % p for x, y in zip(pa, pb))
                add[a][b] = add[b][a] = s
                m = self.from_coeffs(_poly_mod(_poly_mul(pa, pb, p), mod, p) + [0] * self.k)
                mul[a][b] = mul[b][a] = m
        self._add_table = add
        self._mul_table = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    # -- arithmetic on encoded elements

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        return self.from_coeffs((x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.from_coeffs((-c) % self.p for c in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        prod = _poly_mul(list(self.coeffs(a)), list(self.coeffs(b)), self.p)
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.p) + [0] * self.k)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow_(a, self.q - 2)

    def pow_(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int) -> int:
        return self.pow_(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def primitive_element(self) -> int:
        """Smallest generator of the unit group (identity element for q = 2)."""
        if self.q == 2:
            return 1
        for a in range(2, self.q):
            x, order = a, 1
            while x != 1:
                x = self.mul(x, a)
                order += 1
            if order == self.q - 1:
                return a
        raise ConsistencyError("no primitive element found")  # pragma: no cover

    def embed_into(self, other: "Field") -> list[int]:
        """Table of the canonical inclusion into F_{p^{km}}.

        The generator of this field is sent to the smallest root of this
        field's modulus inside ``other``; that pins the embedding down
        deterministically.
        """
        if other.p != self.p or other.k % self.k != 0:
            raise ValidationError(
                f"F_{self.q} does not embed into F_{other.q} as constructed"
            )
        if other.k == self.k:
            return list(range(self.q))
        root = None
        for b in other.elements():
            acc = 0
            for c in reversed(self.modulus):
                acc = other.add(other.mul(acc, b), c % self.p)
            if acc == 0:
                root = b
                break
        if root is None:  # pragma: no cover
            raise ConsistencyError("modulus has no root in the extension")
        table = []
        for a in range(self.q):
            img, power = 0, 1
            for c in self.coeffs(a):
                img = other.add(img, other.mul(c, power))
                power = other.mul(power, root)
            table.append(img)
        return table

    # -- numpy tables for the vectorized enumeration engine

    def np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(add, mul) tables as uint16 arrays; built on demand."""
        if self.k > 1 and self._mul_table is None:
            raise ValidationError(f"field too large for table arithmetic (q={self.q})")
        if self.k == 1:
            r = np.arange(self.q, dtype=np.int64)
            add = ((r[:, None] + r[None, :]) % self.p).astype(np.uint16)
            mul = ((r[:, None] * r[None, :]) % self.p).astype(np.uint16)
            return add, mul
        return (
            np.array(self._add_table, dtype=np.uint16),
            np.array(self._mul_table, dtype=np.uint16),
        )

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> Field:
    """Deterministic field constructor; caches so fields compare by identity too."""
    return Field(p, k)


# ---------------------------------------------------------------------------
# dense matrices


class FqMatrix:
    """Immutable dense matrix over a Field; entries are encoded integers."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries):
        self.field = field
        self.entries = tuple(tuple(row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "FqMatrix":
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m.entries = tuple((0,) * cols for _ in range(rows))
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "FqMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, field: Field, rows: int, cols: int, flat) -> "FqMatrix":
        flat = list(flat)
        if len(flat) != rows * cols:
            raise ValidationError("flat entry count does not match the shape")
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m.entries = tuple(tuple(flat[i * cols : (i + 1) * cols]) for i in range(rows))
        return m

    def flat(self) -> tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def add(self, other: "FqMatrix") -> "FqMatrix":
        f = self.field
        return FqMatrix(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def sub(self, other: "FqMatrix") -> "FqMatrix":
        f = self.field
        return FqMatrix(
            f,
            [
                [f.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def neg(self) -> "FqMatrix":
        f = self.field
        return FqMatrix(f, [[f.neg(a) for a in row] for row in self.entries])

    def scale(self, c: int) -> "FqMatrix":
        f = self.field
        return FqMatrix(f, [[f.mul(c, a) for a in row] for row in self.entries])

    def mul(self, other: "FqMatrix") -> "FqMatrix":
        if self.cols != other.rows:
            raise ValidationError("matrix shape mismatch in product")
        f = self.field
        ocols = other.cols
        oT = list(zip(*other.entries)) if ocols else []
        out = []
        for row in self.entries:
            new = []
            for col in oT:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = f.add(acc, f.mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        m = FqMatrix.__new__(FqMatrix)
        m.field = f
        m.rows = self.rows
        m.cols = ocols
        m.entries = tuple(out) if self.rows else ()
        return m

    def apply(self, vec) -> tuple[int, ...]:
        """Matrix times column vector."""
        f = self.field
        out = []
        for row in self.entries:
            acc = 0
            for a, b in zip(row, vec):
                if a and b:
                    acc = f.add(acc, f.mul(a, b))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "FqMatrix":
        if self.rows == 0 or self.cols == 0:
            return FqMatrix.zeros(self.field, self.cols, self.rows)
        return FqMatrix(self.field, list(zip(*self.entries)))

    def matpow(self, e: int) -> "FqMatrix":
        if not self.is_square():
            raise ValidationError("matrix power needs a square matrix")
        result = FqMatrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            base = base.mul(base)
            e >>= 1
        return result

    # -- Gaussian elimination

    def rref(self) -> tuple[list[list[int]], list[int]]:
        """Reduced row echelon form; returns (rows, pivot column indices)."""
        f = self.field
        m = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = f.inv(m[r][c])
            m[r] = [f.mul(inv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    factor = m[i][c]
                    m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Basis of {x : Mx = 0}, one vector per free column, in column order."""
        f = self.field
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [0] * self.cols
            v[free] = 1
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(rows[r][free])
            basis.append(tuple(v))
        return basis

    def det(self) -> int:
        if not self.is_square():
            raise ValidationError("determinant needs a square matrix")
        f = self.field
        m = [list(row) for row in self.entries]
        n = self.rows
        det = 1
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pivot_row is None:
                return 0
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = f.neg(det)
            det = f.mul(det, m[c][c])
            inv = f.inv(m[c][c])
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    factor = f.mul(inv, m[i][c])
                    m[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(m[i], m[c])]
        return det

    def is_invertible(self) -> bool:
        return self.is_square() and (self.rows == 0 or self.det() != 0)

    def inverse(self) -> "FqMatrix":
        if not self.is_square():
            raise SingularMatrixError("inverse needs a square matrix")
        f = self.field
        n = self.rows
        aug = FqMatrix(f, [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)]) if n else FqMatrix.zeros(f, 0, 0)
        rows, pivots = aug.rref()
        if pivots != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return FqMatrix(f, [row[n:] for row in rows]) if n else FqMatrix.zeros(f, 0, 0)

    def is_nilpotent(self) -> bool:
        if not self.is_square():
            raise ValidationError("nilpotency needs a square matrix")
        return self.matpow(self.rows).is_zero()

    def trace(self) -> int:
        f = self.field
        acc = 0
        for i in range(min(self.rows, self.cols)):
            acc = f.add(acc, self.entries[i][i])
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and self.entries == other.entries
            and (self.rows, self.cols) == (other.rows, other.cols)
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"FqMatrix(F{self.field.q}, {list(map(list, self.entries))})"


# ---------------------------------------------------------------------------
# group orders, GL enumeration, Grassmannians


def gl_order(d, q: int) -> int:
    """|GL_d(F_q)| for a tuple of block sizes d."""
    total = 1
    for n in d:
        qn = q**n
        for i in range(n):
            total *= qn - q**i
    return total


def g_order(d, q: int) -> int:
    """|G_d(F_q)| for G_d = GL_d / (diagonal scalars)."""
    order, rem = divmod(gl_order(d, q), q - 1)
    if rem:  # pragma: no cover - gl_order is always divisible by q-1 for d != 0
        raise ConsistencyError("gl_order not divisible by q-1")
    return order


def all_matrices(field: Field, rows: int, cols: int):
    """All rows x cols matrices, lexicographic in the flat entry tuple."""
    for flat in itertools.product(field.elements(), repeat=rows * cols):
        yield FqMatrix.from_flat(field, rows, cols, flat)


def enumerate_gl(field: Field, n: int):
    """All invertible n x n matrices, in lexicographic order."""
    if n == 0:
        yield FqMatrix.zeros(field, 0, 0)
        return
    for m in all_matrices(field, n, n):
        if m.det() != 0:
            yield m


def gl_generators(field: Field, n: int) -> list[FqMatrix]:
    """A generating set of GL_n(F_q): adjacent transpositions, one
    transvection, and diag(zeta, 1, ..., 1) for a primitive zeta."""
    if n == 0:
        return []
    gens: list[FqMatrix] = []
    zeta = field.primitive_element()
    if zeta != 1:
        diag = [[zeta if i == j == 0 else (1 if i == j else 0) for j in range(n)] for i in range(n)]
        gens.append(FqMatrix(field, diag))
    if n >= 2:
        for i in range(n - 1):
            perm = [[1 if (j == k and j not in (i, i + 1)) or {j, k} == {i, i + 1} else 0 for k in range(n)] for j in range(n)]
            gens.append(FqMatrix(field, perm))
        shear = [[1 if i == j else (1 if (i, j) == (0, 1) else 0) for j in range(n)] for i in range(n)]
        gens.append(FqMatrix(field, shear))
    return gens


def grassmannian(field: Field, n: int, k: int):
    """All k-dimensional subspaces of F_q^n as canonical RREF matrices.

    Pivot-column sets are walked in lexicographic order, free entries in
    counting order, so the stream is deterministic and duplicate-free.
    """
    if k < 0 or k > n:
        return
    for pivots in itertools.combinations(range(n), k):
        free_positions = [
            (r, c)
            for r in range(k)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for values in itertools.product(field.elements(), repeat=len(free_positions)):
            m = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                m[r][p] = 1
            for (r, c), v in zip(free_positions, values):
                m[r][c] = v
            yield FqMatrix(field, m)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def in_rowspace(vec, basis: FqMatrix) -> bool:
    """Whether vec lies in the row space of basis (basis rows independent)."""
    if all(x == 0 for x in vec):
        return True
    if basis.rows == 0:
        return False
    stacked = FqMatrix(basis.field, list(basis.entries) + [list(vec)])
    return stacked.rank() == basis.rows
