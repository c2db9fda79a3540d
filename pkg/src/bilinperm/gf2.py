"""GF(2) linear algebra on bit-packed vectors.

A GF(2)-linear map on GF(2^N) is given by the images of the basis vectors
1, t, t^2, ...; vectors are ints, so row operations are XORs.  Each
reduced vector carries a combination mask recording which inputs were
summed into it, which is what makes kernels and preimages cheap to read
off.
"""

from __future__ import annotations

from typing import Callable, Sequence


def basis_images(N: int, f: Callable[[int], int]) -> list[int]:
    return [f(1 << b) for b in range(N)]


def eliminate(vectors: Sequence[int]):
    """Return ``(pivots, kernel)``.

    ``pivots`` maps a leading bit to ``(vector, mask)``; ``kernel`` lists
    masks of input combinations summing to zero (a basis of the null space).
    """
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for i, v in enumerate(vectors):
        mask = 1 << i
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = (v, mask)
                break
            pv, pm = pivots[top]
            v ^= pv
            mask ^= pm
        else:
            kernel.append(mask)
    return pivots, kernel


def rank(vectors: Sequence[int]) -> int:
    return len(eliminate(vectors)[0])


def null_space(vectors: Sequence[int]) -> list[int]:
    return eliminate(vectors)[1]


def solve(vectors: Sequence[int], target: int, pivots=None) -> int | None:
    """A mask ``s`` with XOR of ``vectors[i]`` over set bits i equal to ``target``, or None."""
    if pivots is None:
        pivots = eliminate(vectors)[0]
    mask = 0
    while target:
        top = target.bit_length() - 1
        if top not in pivots:
            return None
        pv, pm = pivots[top]
        target ^= pv
        mask ^= pm
    return mask
