"""Finite Abelian group actions on complex signal space, in diagonal character form.

A group here is a product Z_{p_1} x ... x Z_{p_s} acting on C^N coordinate by
coordinate: generator i multiplies coordinate k by the unit phase
exp(2*pi*1j * exponents[i][k] / p_i).  Everything downstream (invariant
transforms, orbit metric, rational invariants) consumes this representation.
The 2D circular-shift action on images is reachable through shift_action_spec
plus the to_fourier / from_fourier bridge, which maps circular shifts onto the
diagonal action exactly.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError, DomainError

# Brute-force enumeration guard; orbit_distance walks the full group.
ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class GroupSpec:
    """A finite Abelian group acting diagonally on C^N.

    orders: per-generator orders (p_1, ..., p_s), each >= 1.
    exponents: s x N integer matrix, row i reduced mod p_i; entry [i][k] is
        the character exponent of generator i on coordinate k.
    """

    orders: tuple
    exponents: tuple

    @property
    def num_generators(self) -> int:
        return len(self.orders)

    @property
    def dim(self) -> int:
        return len(self.exponents[0])

    @property
    def group_order(self) -> int:
        return math.prod(self.orders)

    @property
    def phase_lcm(self) -> int:
        return math.lcm(*self.orders)


def make_group(orders, exponents) -> GroupSpec:
    """Validate and normalize (orders, exponents) into a GroupSpec.

    Exponent entries are reduced mod the matching order, so any integer
    matrix of the right shape is accepted.
    """
    orders = tuple(int(p) for p in orders)
    if not orders:
        raise ConfigError("at least one generator order is required")
    if any(p < 1 for p in orders):
        raise ConfigError(f"generator orders must be positive, got {orders}")
    rows = [tuple(int(e) for e in row) for row in exponents]
    if len(rows) != len(orders):
        raise ConfigError(
            f"exponent matrix has {len(rows)} rows for {len(orders)} generator orders"
        )
    if not rows[0]:
        raise ConfigError("exponent matrix must have at least one column")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ConfigError("exponent matrix is ragged")
    reduced = tuple(
        tuple(e % p for e in row) for row, p in zip(rows, orders)
    )
    return GroupSpec(orders=orders, exponents=reduced)


@functools.lru_cache(maxsize=None)
def phase_steps(group: GroupSpec) -> np.ndarray:
    """Integer phase increments, one row per generator, in units of 1/lcm turns.

    act() and the orbit metric accumulate these in exact integer arithmetic
    and apply a single complex exponential at the end, so repeated group
    operations cannot drift.
    """
    L = group.phase_lcm
    steps = [
        [(L // p) * a % L for a in row]
        for row, p in zip(group.exponents, group.orders)
    ]
    return np.array(steps, dtype=np.int64)


def _check_signal(group: GroupSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 1 or x.shape[0] != group.dim:
        raise DimensionError(
            f"signal has shape {x.shape}, expected length {group.dim}"
        )
    return x


def act(group: GroupSpec, element, x) -> np.ndarray:
    """Apply one group element to a signal.

    element: s integers (reduced mod the orders, so any ints are accepted).
    Unitary: moduli are preserved exactly.
    """
    x = _check_signal(group, x)
    element = tuple(element)
    if len(element) != group.num_generators:
        raise DimensionError(
            f"element has {len(element)} components, expected {group.num_generators}"
        )
    L = group.phase_lcm
    g = np.array(
        [int(e) % p for e, p in zip(element, group.orders)], dtype=np.int64
    )
    turns = g @ phase_steps(group) % L
    return np.exp((2j * np.pi / L) * turns) * x


def enumerate_group(group: GroupSpec, cap: int = ENUMERATION_CAP) -> list:
    """All group elements as tuples, in lexicographic order."""
    if group.group_order > cap:
        raise DomainError(
            f"group order {group.group_order} exceeds enumeration cap {cap}"
        )
    return list(itertools.product(*(range(p) for p in group.orders)))


def shift_action_spec(n: int, m: int) -> GroupSpec:
    """The Z_n x Z_m circular-shift action on n x m images, diagonalized.

    Coordinates are row-major over 1-based image frequencies (k, l); the
    character exponents are (k mod n, l mod m), so the trivial (DC) coordinate
    is the last one.
    """
    n, m = int(n), int(m)
    if n < 1 or m < 1:
        raise ConfigError(f"image sides must be positive, got {n}x{m}")
    row_n = []
    row_m = []
    for k in range(1, n + 1):
        for l in range(1, m + 1):
            row_n.append(k % n)
            row_m.append(l % m)
    return make_group([n, m], [row_n, row_m])


def cyclic_shift_spec(n: int) -> GroupSpec:
    """The cyclic shift action of Z_n on C^n (character exponents 1, 2, ..., n-1, 0)."""
    n = int(n)
    if n < 1:
        raise ConfigError(f"cyclic order must be positive, got {n}")
    return make_group([n], [[k % n for k in range(1, n + 1)]])


def shift_image(image, shift) -> np.ndarray:
    """Circularly shift an image: output[u, v] = image[(u+i) % n, (v+j) % m]."""
    image = np.asarray(image)
    if image.ndim != 2:
        raise DimensionError(f"image must be 2D, got shape {image.shape}")
    i, j = int(shift[0]), int(shift[1])
    return np.roll(image, (-i, -j), axis=(0, 1))


def to_fourier(image) -> np.ndarray:
    """Embed an n x m image as a length-nm signal on which shifts act diagonally.

    Unitary 2D DFT followed by an index shuffle that lines bin (u, v) up with
    the coordinate carrying character exponents (u, v); the DC bin lands at
    the last coordinate.  Satisfies
    to_fourier(shift_image(img, g)) == act(group, g, to_fourier(img)) for the
    matching shift_action_spec group.
    """
    image = np.asarray(image, dtype=complex)
    if image.ndim != 2:
        raise DimensionError(f"image must be 2D, got shape {image.shape}")
    n, m = image.shape
    spectrum = np.fft.fft2(image) / math.sqrt(n * m)
    return np.roll(spectrum, (-1, -1), axis=(0, 1)).reshape(n * m)


def from_fourier(signal, n: int, m: int) -> np.ndarray:
    """Invert to_fourier; round-trips within 1e-12 relative."""
    signal = np.asarray(signal, dtype=complex)
    n, m = int(n), int(m)
    if signal.ndim != 1 or signal.shape[0] != n * m:
        raise DimensionError(
            f"signal has shape {signal.shape}, expected length {n * m}"
        )
    spectrum = np.roll(signal.reshape(n, m), (1, 1), axis=(0, 1))
    return np.fft.ifft2(spectrum) * math.sqrt(n * m)
