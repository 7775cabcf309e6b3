"""Element encodings and set/subgroup/family containers for Z_4^n and Z_2^m.

An element of Z_2^m is an m-bit int; an element of Z_4^n is an int in
[0, 4^n) whose digit j sits in bits (2j, 2j+1).  Coordinate 0 of a digit
string is the MOST significant position, so lexicographic order on digit
vectors coincides with numeric order on the encodings.

The doubling map x -> 2x on Z_4^n has image = kernel = the set of
elements with all digits in {0, 2}; that subgroup is identified with
Z_2^n by reading each digit 2 as a 1.  Under the canonical halving
section, the fibre decomposition of A over that subgroup is pure bit
surgery: the low bit-plane of x is the fibre index h, the high bit-plane
is the position inside the fibre.

All containers are immutable after construction and carry exact Fraction
densities; numpy masks back the O(1) membership tests used by the hot
kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapExceeded, DomainError

DEFAULT_SUBGROUP_CAP = 5


# ---------------------------------------------------------------------------
# scalar element helpers
# ---------------------------------------------------------------------------


def lo_mask(n: int) -> int:
    """0b0101..01 over n digits: the low bit of every base-4 digit."""
    return ((1 << (2 * n)) - 1) // 3


def add4(x: int, y: int, n: int) -> int:
    lo = lo_mask(n)
    return (x ^ y) ^ (((x & y) & lo) << 1)


def two4(x: int, n: int) -> int:
    return (x & lo_mask(n)) << 1


def neg4(x: int, n: int) -> int:
    lo = lo_mask(n)
    return add4(x ^ ((1 << (2 * n)) - 1), lo, n)


def dot2(x: int, y: int) -> int:
    """Mod-2 inner product of two Z_2^m elements."""
    return (x & y).bit_count() & 1


def z4_digits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> (2 * (n - 1 - c))) & 3 for c in range(n))


def z4_from_digits(digits) -> int:
    x = 0
    for d in digits:
        if not 0 <= d <= 3:
            raise DomainError(f"base-4 digit out of range: {d}")
        x = (x << 2) | d
    return x


def z2_bits(x: int, m: int) -> tuple[int, ...]:
    return tuple((x >> (m - 1 - c)) & 1 for c in range(m))


def z2_from_bits(bits) -> int:
    x = 0
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"bit out of range: {b}")
        x = (x << 1) | b
    return x


def in_doubling_image(y: int, n: int) -> bool:
    """True iff every digit of y is 0 or 2 (i.e. y is in Im 2 = ker 2)."""
    return 0 <= y < (1 << (2 * n)) and (y & lo_mask(n)) == 0


def doubling_section(y: int, n: int) -> int:
    """The canonical t with 2t = y: digitwise halving (2 -> 1, 0 -> 0)."""
    if not in_doubling_image(y, n):
        raise DomainError(f"{y} has an odd digit; not in the doubling image")
    return y >> 1


def _compress_even(x, n: int):
    """Gather bits 0, 2, 4, .. of x into a dense n-bit value (x may be an
    int or an int64 ndarray)."""
    h = x & 1
    for j in range(1, n):
        h = h | (((x >> (2 * j)) & 1) << j)
    return h


def _spread_even(h, n: int):
    """Inverse of _compress_even: place bit j of h at bit 2j."""
    x = h & 1
    for j in range(1, n):
        x = x | (((h >> j) & 1) << (2 * j))
    return x


# ---------------------------------------------------------------------------
# set containers
# ---------------------------------------------------------------------------


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def _build_members(indices, size: int, what: str) -> np.ndarray:
    members = np.array(sorted(indices), dtype=np.int64)
    if members.size:
        if members[0] < 0 or members[-1] >= size:
            raise DomainError(f"{what} element out of range")
        if np.any(members[1:] == members[:-1]):
            raise DomainError(f"duplicate {what} element")
    return _freeze(members)


def _mask_of(members: np.ndarray, size: int) -> np.ndarray:
    mask = np.zeros(size, dtype=np.uint8)
    mask[members] = 1
    return _freeze(mask)


@dataclass(frozen=True)
class Z4Set:
    """A subset of Z_4^n with exact density |A| / 4^n."""

    n: int
    members: np.ndarray
    mask: np.ndarray
    density: Fraction

    @classmethod
    def from_indices(cls, n: int, indices) -> "Z4Set":
        members = _build_members(indices, 1 << (2 * n), "Z4")
        return cls(n, members, _mask_of(members, 1 << (2 * n)),
                   Fraction(int(members.size), 1 << (2 * n)))

    @classmethod
    def from_digit_rows(cls, n: int, rows) -> "Z4Set":
        return cls.from_indices(n, (z4_from_digits(r) for r in rows))

    def __len__(self) -> int:
        return int(self.members.size)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Z4Set) and self.n == other.n
                and np.array_equal(self.members, other.members))

    def digit_strings(self) -> list[str]:
        return ["".join(str(d) for d in z4_digits(int(x), self.n)) for x in self.members]


@dataclass(frozen=True)
class Z2Set:
    """A subset of Z_2^m with exact density |B| / 2^m."""

    m: int
    members: np.ndarray
    mask: np.ndarray
    density: Fraction

    @classmethod
    def from_indices(cls, m: int, indices) -> "Z2Set":
        members = _build_members(indices, 1 << m, "Z2")
        return cls(m, members, _mask_of(members, 1 << m),
                   Fraction(int(members.size), 1 << m))

    @classmethod
    def empty(cls, m: int) -> "Z2Set":
        return cls.from_indices(m, ())

    @classmethod
    def full(cls, m: int) -> "Z2Set":
        return cls.from_indices(m, range(1 << m))

    def __len__(self) -> int:
        return int(self.members.size)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Z2Set) and self.m == other.m
                and np.array_equal(self.members, other.members))

    def bit_strings(self) -> list[str]:
        return [format(int(x), f"0{self.m}b") if self.m else "" for x in self.members]


# ---------------------------------------------------------------------------
# GF(2) linear algebra and subgroups
# ---------------------------------------------------------------------------


def rref2(vectors, m: int) -> tuple[int, ...]:
    """Reduced row echelon basis (as ints, pivots from the high bit down)
    of the span of the given Z_2^m vectors."""
    rows: list[int] = []
    for v in vectors:
        v = int(v)
        for r in rows:
            v = min(v, v ^ r)
        if v:
            rows = [min(r, r ^ v) for r in rows]
            rows.append(v)
            rows.sort(reverse=True)
    return tuple(rows)


def nullspace2(rows: tuple[int, ...], m: int) -> tuple[int, ...]:
    """RREF basis of {x : dot2(r, x) = 0 for all r in rows}."""
    pivots = [r.bit_length() - 1 for r in rows]
    pivot_set = set(pivots)
    free = [p for p in range(m - 1, -1, -1) if p not in pivot_set]
    out = []
    for f in free:
        x = 1 << f
        for r, p in zip(rows, pivots):
            if (r >> f) & 1:
                x |= 1 << p
        out.append(x)
    return rref2(out, m)


@dataclass(frozen=True)
class Subgroup2:
    """A subspace of Z_2^m: RREF basis plus the RREF basis of its
    annihilator {r : dot2(r, x) = 0 for all x in the subspace}."""

    m: int
    basis: tuple[int, ...]
    annihilator: tuple[int, ...]

    def __post_init__(self):
        if len(self.basis) + len(self.annihilator) != self.m:
            raise DomainError("basis and annihilator dimensions do not add up")
        for b in self.basis:
            for r in self.annihilator:
                if dot2(b, r):
                    raise DomainError("basis vector not orthogonal to annihilator")

    @classmethod
    def from_basis(cls, m: int, vectors) -> "Subgroup2":
        basis = rref2(vectors, m)
        return cls(m, basis, nullspace2(basis, m))

    @classmethod
    def from_annihilator(cls, m: int, vectors) -> "Subgroup2":
        ann = rref2(vectors, m)
        return cls(m, nullspace2(ann, m), ann)

    @classmethod
    def full(cls, m: int) -> "Subgroup2":
        return cls.from_basis(m, [1 << j for j in range(m)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return 1 << self.dim

    def index(self) -> int:
        return 1 << (self.m - self.dim)

    def contains(self, x: int) -> bool:
        return all(dot2(r, x) == 0 for r in self.annihilator)

    def members(self) -> np.ndarray:
        out = np.zeros(1, dtype=np.int64)
        for b in self.basis:
            out = np.concatenate([out, out ^ b])
        out.sort()
        return out

    def member_set(self) -> Z2Set:
        return Z2Set.from_indices(self.m, self.members())

    def coset_reps(self) -> list[int]:
        """Lexicographically least representative of each coset."""
        mask = np.zeros(1 << self.m, dtype=np.uint8)
        mem = self.members()
        reps = []
        for x in range(1 << self.m):
            if not mask[x]:
                reps.append(x)
                mask[mem ^ x] = 1
        return reps

    def coordinates(self, x: int) -> int:
        """Coefficients of x in the RREF basis, packed so that basis
        vector i (pivot order) maps to bit dim-1-i.  Raises if x is not
        a member."""
        coeffs = 0
        rest = x
        for i, b in enumerate(self.basis):
            p = b.bit_length() - 1
            if (rest >> p) & 1:
                coeffs |= 1 << (self.dim - 1 - i)
                rest ^= b
        if rest:
            raise DomainError(f"{x} is not in the subgroup")
        return coeffs

    def from_coordinates(self, c: int) -> int:
        x = 0
        for i, b in enumerate(self.basis):
            if (c >> (self.dim - 1 - i)) & 1:
                x ^= b
        return x

    def canonical_key(self):
        return (self.dim, self.basis)


def subgroup_from_character(gamma: int, m: int) -> Subgroup2:
    """The index-2 subgroup {x : dot2(gamma, x) = 0}, gamma != 0."""
    if gamma == 0:
        raise DomainError("the zero character has no proper annihilated subgroup")
    if not 0 < gamma < (1 << m):
        raise DomainError("character out of range")
    return Subgroup2.from_annihilator(m, [gamma])


def enumerate_subgroups(m: int, cap: int | None = None) -> list[Subgroup2]:
    """All subspaces of Z_2^m, ordered by dimension then RREF basis.

    Refuses m above the cap (default 5): the count is a sum of Gaussian
    binomials and explodes quickly.
    """
    if cap is None:
        cap = _env_cap("Z4AP_SUBGROUP_CAP", DEFAULT_SUBGROUP_CAP)
    if m > cap:
        raise CapExceeded(f"subgroup enumeration capped at m={cap}, got {m}")
    out = []
    for k in range(m + 1):
        for pivots in itertools.combinations(range(m - 1, -1, -1), k):
            # row i leads at bit pivots[i]; free positions are the
            # non-pivot bits strictly below it
            free = [[p for p in range(pivots[i]) if p not in pivots] for i in range(k)]
            nfree = sum(len(f) for f in free)
            for assign in range(1 << nfree):
                rows = []
                pos = 0
                for i in range(k):
                    v = 1 << pivots[i]
                    for p in free[i]:
                        if (assign >> pos) & 1:
                            v |= 1 << p
                        pos += 1
                    rows.append(v)
                basis = tuple(sorted(rows, reverse=True))
                out.append(Subgroup2(m, basis, nullspace2(basis, m)))
    out.sort(key=Subgroup2.canonical_key)
    return out


def _env_cap(name: str, default: int) -> int:
    import os

    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"bad value for {name}: {raw!r}") from exc


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    """A vector of subsets of Z_2^m indexed by Z_2^m, with the per-fibre
    density function cached exactly."""

    m: int
    fibres: tuple[Z2Set, ...]
    sizes: np.ndarray = field(compare=False)
    density: Fraction = field(compare=False)

    @classmethod
    def from_fibres(cls, m: int, fibres) -> "Family":
        fibres = tuple(fibres)
        if len(fibres) != (1 << m):
            raise DomainError(f"a family on Z_2^{m} needs {1 << m} fibres")
        for fb in fibres:
            if fb.m != m:
                raise DomainError("fibre ambient dimension mismatch")
        sizes = _freeze(np.array([len(fb) for fb in fibres], dtype=np.int64))
        density = Fraction(int(sizes.sum()), 1 << (2 * m))
        return cls(m, fibres, sizes, density)

    @classmethod
    def from_member_lists(cls, m: int, lists) -> "Family":
        return cls.from_fibres(m, (Z2Set.from_indices(m, lst) for lst in lists))

    def density_fn(self, h: int) -> Fraction:
        return self.fibres[h].density

    def f_values(self) -> list[Fraction]:
        return [fb.density for fb in self.fibres]

    def flat_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(concatenated members, offsets of length 2^m + 1, sizes)."""
        offsets = np.zeros((1 << self.m) + 1, dtype=np.int64)
        np.cumsum(self.sizes, out=offsets[1:])
        if int(offsets[-1]):
            flat = np.concatenate([fb.members for fb in self.fibres if len(fb)])
        else:
            flat = np.zeros(0, dtype=np.int64)
        return flat, offsets, self.sizes

    def indicator_matrix(self) -> np.ndarray:
        """int64 matrix M[h, x] = 1_{A_h}(x), writable copy."""
        mat = np.zeros((1 << self.m, 1 << self.m), dtype=np.int64)
        for h, fb in enumerate(self.fibres):
            mat[h, fb.members] = 1
        return mat

    def __eq__(self, other) -> bool:
        return (isinstance(other, Family) and self.m == other.m
                and all(a == b for a, b in zip(self.fibres, other.fibres)))


def fibre_decompose(a: Z4Set) -> Family:
    """Slice a Z_4^n set along the cosets of the doubling kernel.

    The fibre index h and the in-fibre position are the low and high
    bit-planes of the member encoding; the density function of the
    result is exactly u -> E_{2z = u} 1_A(z).
    """
    n = a.n
    xs = a.members
    hs = _compress_even(xs, n)
    zs = _compress_even(xs >> 1, n)
    lists: list[list[int]] = [[] for _ in range(1 << n)]
    for h, z in zip(hs.tolist(), zs.tolist()):
        lists[h].append(z)
    return Family.from_member_lists(n, lists)


def reconstruct_z4(family: Family) -> Z4Set:
    """Inverse of fibre_decompose under the canonical halving section."""
    n = family.m
    idx = []
    for h, fb in enumerate(family.fibres):
        if len(fb):
            base = _spread_even(h, n)
            idx.extend((base | (_spread_even(int(z), n) << 1)) for z in fb.members)
    return Z4Set.from_indices(n, idx)
