"""Tiny F2 linear algebra on bitmask vectors.

Vectors in F2^n are Python ints (bit i = coordinate i); addition is XOR.
Everything here is exact and deterministic; dimensions stay tiny (n <= 16),
so plain Gaussian elimination is all we need.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence


def echelon(vectors: Iterable[int]) -> list[int]:
    """Canonical reduced basis (descending leading bits) of the span."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    out: list[int] = []
    for b in sorted(basis, reverse=True):
        for o in out:
            if b & (1 << (o.bit_length() - 1)):
                b ^= o
        out.append(b)
    return sorted(out, reverse=True)


def rank(vectors: Iterable[int]) -> int:
    return len(echelon(vectors))


def in_span(vectors: Sequence[int], v: int) -> bool:
    for b in echelon(vectors):
        v = min(v, v ^ b)
    return v == 0


def span_elements(vectors: Sequence[int]) -> frozenset:
    out = {0}
    for b in vectors:
        out |= {x ^ b for x in out}
    return frozenset(out)


def express(basis: Sequence[int], v: int, n: int) -> Optional[list[int]]:
    """Coefficients x with XOR_j x_j basis_j = v, or None if v not in span."""
    k = len(basis)
    rows = []
    for coord in range(n):
        row = 0
        for j, b in enumerate(basis):
            if (b >> coord) & 1:
                row |= 1 << j
        if (v >> coord) & 1:
            row |= 1 << k
        rows.append(row)
    piv: dict[int, int] = {}
    for row in rows:
        col = 0
        while col < k and row:
            if (row >> col) & 1:
                if col in piv:
                    row ^= piv[col]
                else:
                    piv[col] = row
                    row = 0
            col += 1
        if row:  # all unknowns eliminated but rhs bit remains: 0 = 1
            return None
    coeffs = [0] * k
    for col in sorted(piv, reverse=True):
        row = piv[col]
        val = (row >> k) & 1
        for c2 in range(col + 1, k):
            if (row >> c2) & 1:
                val ^= coeffs[c2]
        coeffs[col] = val
    acc = 0
    for j, b in enumerate(basis):
        if coeffs[j]:
            acc ^= b
    return coeffs if acc == v else None


def nullspace(images: Sequence[int]) -> list[int]:
    """Basis of {x : XOR over set bits j of x of images[j] == 0}.

    ``images`` lists the images of the domain basis vectors; the returned
    bitmasks live in the domain F2^len(images).
    """
    basis: list[tuple[int, int]] = []  # (image vector, domain tag)
    null: list[int] = []
    for j, vec in enumerate(images):
        tag = 1 << j
        for bvec, btag in basis:
            if vec == 0:
                break
            if vec & (1 << (bvec.bit_length() - 1)):
                vec ^= bvec
                tag ^= btag
        if vec == 0:
            null.append(tag)
        else:
            basis.append((vec, tag))
            basis.sort(key=lambda p: p[0], reverse=True)
    return null


def fixed_space(
    endos: Sequence[Sequence[int]], space_basis: Sequence[int], n: int
) -> list[int]:
    """Common fixed vectors of endomorphisms of a subspace of F2^n.

    Each endo is given by its images of space_basis; endos must map the
    subspace into itself.  Returns an echelon basis of the fixed space,
    as vectors in F2^n.
    """
    k = len(space_basis)
    mats = []
    for endo in endos:
        cols = []
        for img in endo:
            coeff = express(space_basis, img, n)
            if coeff is None:
                raise ValueError("endomorphism does not preserve the subspace")
            cols.append(coeff)
        mats.append(cols)
    stacked: list[int] = []  # images of domain basis under x -> ((A_m - 1)x)_m
    for j in range(k):
        img = 0
        for m_idx, cols in enumerate(mats):
            for i in range(k):
                if cols[j][i] ^ (1 if i == j else 0):
                    img ^= 1 << (m_idx * k + i)
        stacked.append(img)
    out = []
    for tag in nullspace(stacked):
        vec = 0
        for j in range(k):
            if (tag >> j) & 1:
                vec ^= space_basis[j]
        out.append(vec)
    return echelon(out)


def all_subspaces(basis: Sequence[int], dim: int) -> Iterator[list[int]]:
    """All subspaces of the given dimension inside span(basis).

    Enumerated via deduplicated element sets; intended for tiny spaces.
    """
    space = echelon(basis)
    if dim > len(space):
        return
    all_vectors = sorted(span_elements(space) - {0})
    seen: set[frozenset] = set()

    def rec(chosen: list[int], start: int) -> Iterator[list[int]]:
        if len(chosen) == dim:
            key = span_elements(chosen)
            if key not in seen:
                seen.add(key)
                yield echelon(chosen)
            return
        for idx in range(start, len(all_vectors)):
            v = all_vectors[idx]
            if not in_span(chosen, v):
                yield from rec(chosen + [v], idx + 1)

    yield from rec([], 0)
