"""Stochastic pivotal fitness functions over fixed-length bitstrings.

Two families are provided. A type 1 function rewards genomes whose bits at a
tuple of pivotal loci match a target pattern or its bitwise complement; a
type 2 function rewards odd parity of the pivotal bits. Both are built so
that, under uniform sampling of the domain, no single locus has a main
effect; ``exact_marginal`` computes the expected marginal of any locus
combination in exact rational arithmetic, which is what the sampling-based
baseline in :mod:`pivotalga.dmt` is checked against.

Genomes are 1-D ``uint8`` arrays of 0s and 1s. Locus indices are 1-based
everywhere in the public API.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product

import numpy as np

Array = np.ndarray
RNG = np.random.Generator


def _check_loci(loci: tuple[int, ...], order: int, span: int) -> None:
    if len(loci) != order:
        raise ValueError(f"expected {order} pivotal loci, got {len(loci)}")
    if any(not 1 <= k <= span for k in loci):
        raise ValueError(f"pivotal loci {loci} not all in [1, {span}]")
    if any(a >= b for a, b in zip(loci, loci[1:])):
        raise ValueError(f"pivotal loci {loci} must be strictly ascending")


@dataclass(frozen=True)
class Type1Descriptor:
    """Pattern-matching pivotal function: (order, sigma, delta, span, loci, values).

    Querying a genome draws from a normal with standard deviation ``sigma``
    whose mean is ``delta`` when the bits at ``loci`` equal ``values`` or its
    bitwise complement, and ``-2*delta / (2**order - 2)`` otherwise.
    """

    order: int
    sigma: float
    delta: float
    span: int
    loci: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        if self.order < 2:
            # the off-pattern mean -2*delta/(2**order - 2) is undefined at order 1
            raise ValueError("type 1 functions require order >= 2")
        if self.sigma < 0 or self.delta < 0:
            raise ValueError("sigma and delta must be non-negative")
        if self.span <= self.order:
            raise ValueError("span must exceed the order")
        object.__setattr__(self, "loci", tuple(int(k) for k in self.loci))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        _check_loci(self.loci, self.order, self.span)
        if len(self.values) != self.order:
            raise ValueError(f"expected {self.order} pivotal values")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("pivotal values must be bits")

    @property
    def kind(self) -> int:
        return 1

    def on_mean(self) -> float:
        return float(self.delta)

    def off_mean(self) -> float:
        return float(-2.0 * self.delta / (2.0 ** self.order - 2.0))


@dataclass(frozen=True)
class Type2Descriptor:
    """Parity pivotal function: (order, sigma, delta, span, loci).

    Querying a genome draws from a normal with mean ``+delta`` when the XOR
    of the bits at ``loci`` is 1 and ``-delta`` otherwise. The order must be
    even, so complementing a genome never changes the parity, and no bit
    pattern is singled out (there are no pivotal values).
    """

    order: int
    sigma: float
    delta: float
    span: int
    loci: tuple[int, ...]

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError("type 2 functions require a positive even order")
        if self.sigma < 0:
            raise ValueError("sigma must be non-negative")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.span <= self.order:
            raise ValueError("span must exceed the order")
        object.__setattr__(self, "loci", tuple(int(k) for k in self.loci))
        _check_loci(self.loci, self.order, self.span)

    @property
    def kind(self) -> int:
        return 2

    def on_mean(self) -> float:
        return float(self.delta)

    def off_mean(self) -> float:
        return float(-self.delta)


Descriptor = Type1Descriptor | Type2Descriptor


def basic_type1(order: int, delta: float, sigma: float) -> Type1Descriptor:
    """The canonical reduced layout: span order+1, loci 1..order, all-ones values."""
    return Type1Descriptor(order=order, sigma=sigma, delta=delta, span=order + 1,
                           loci=tuple(range(1, order + 1)), values=(1,) * order)


def basic_type2(order: int, delta: float, sigma: float) -> Type2Descriptor:
    return Type2Descriptor(order=order, sigma=sigma, delta=delta, span=order + 1,
                           loci=tuple(range(1, order + 1)))


def basic_form_type1(d: Type1Descriptor) -> Type1Descriptor:
    """Map a descriptor to its basic form; idempotent."""
    return basic_type1(d.order, d.delta, d.sigma)


def basic_form_type2(d: Type2Descriptor) -> Type2Descriptor:
    return basic_type2(d.order, d.delta, d.sigma)


def basic_form(d: Descriptor) -> Descriptor:
    return basic_form_type1(d) if d.kind == 1 else basic_form_type2(d)


# ---------------------------------------------------------------------------
# querying

def _as_matrix(genomes: Array, span: int) -> Array:
    g = np.asarray(genomes, dtype=np.uint8)
    if g.ndim == 1:
        g = g[None, :]
    if g.ndim != 2 or g.shape[1] != span:
        raise ValueError(f"genomes must have length {span}, got shape {g.shape}")
    return g

def conditional_means(d: Descriptor, genomes: Array) -> Array:
    """Noise-free mean of the output distribution for each genome (row)."""
    g = _as_matrix(genomes, d.span)
    cols = np.asarray(d.loci, dtype=np.int64) - 1
    piv = g[:, cols]
    if d.kind == 1:
        v = np.asarray(d.values, dtype=np.uint8)
        on = np.all(piv == v, axis=1) | np.all(piv == 1 - v, axis=1)
    else:
        on = (piv.sum(axis=1) & 1).astype(bool)
    return np.where(on, d.on_mean(), d.off_mean())


def conditional_mean(d: Descriptor, genome: Array) -> float:
    return float(conditional_means(d, genome)[0])


def query_batch(d: Descriptor, genomes: Array, rng: RNG) -> Array:
    """One stochastic fitness draw per genome row.

    Each row consumes exactly one standard normal from ``rng`` (also when
    sigma is 0, in which case the value is the conditional mean exactly).
    """
    means = conditional_means(d, genomes)
    return means + d.sigma * rng.standard_normal(means.shape[0])


def query(d: Descriptor, genome: Array, rng: RNG) -> float:
    """Single stochastic fitness evaluation."""
    return float(query_batch(d, genome, rng)[0])


def query_type1(d: Type1Descriptor, genome: Array, rng: RNG) -> float:
    if d.kind != 1:
        raise ValueError("query_type1 needs a type 1 descriptor")
    return query(d, genome, rng)


def query_type2(d: Type2Descriptor, genome: Array, rng: RNG) -> float:
    if d.kind != 2:
        raise ValueError("query_type2 needs a type 2 descriptor")
    return query(d, genome, rng)


# ---------------------------------------------------------------------------
# exact marginals

@dataclass(frozen=True)
class MarginalTable:
    """Expected marginal value for every bit-assignment of a locus combination.

    ``entries`` maps assignment strings (e.g. ``"010"``, ordered like
    ``combo``) to expected fitness under uniform sampling of all other loci.
    ``errors`` is None for exact tables and holds standard errors for
    sampled estimates.
    """

    combo: tuple[int, ...]
    entries: dict[str, float]
    errors: dict[str, float] | None = None

    def max_abs(self) -> float:
        return max(abs(v) for v in self.entries.values())


def _cell_keys(m: int):
    return ("".join(map(str, bits)) for bits in product((0, 1), repeat=m))


def exact_marginal(d: Descriptor, combo: tuple[int, ...]) -> MarginalTable:
    """Exact expected marginal of ``combo``, averaging over all other loci.

    Only the pivotal loci outside ``combo`` need enumerating, and for each
    cell the count of rewarded completions has a closed form, so the cost is
    O(2**len(combo)) regardless of span. Arithmetic is exact (rationals) and
    rounded to float once per cell; cells whose marginal cancels are exactly
    0.0.
    """
    combo = tuple(int(k) for k in combo)
    if not combo:
        raise ValueError("combo must be non-empty")
    if len(set(combo)) != len(combo):
        raise ValueError(f"duplicate loci in combo {combo}")
    if any(not 1 <= k <= d.span for k in combo):
        raise ValueError(f"combo {combo} not within [1, {d.span}]")

    delta = Fraction(d.delta)
    if d.kind == 1:
        off = Fraction(-2) * delta / (2 ** d.order - 2)
    else:
        off = -delta

    in_combo = {k: i for i, k in enumerate(combo)}
    fixed = [(i, in_combo[k]) for i, k in enumerate(d.loci) if k in in_combo]
    n_free = d.order - len(fixed)
    total = 2 ** n_free

    entries: dict[str, float] = {}
    for key in _cell_keys(len(combo)):
        bits = [int(c) for c in key]
        if d.kind == 1:
            # rewarded completions: all-match and all-complement, one each
            on = 0
            if all(bits[j] == d.values[i] for i, j in fixed):
                on += 1
            if all(bits[j] == 1 - d.values[i] for i, j in fixed):
                on += 1
        else:
            if n_free > 0:
                on = total // 2  # free parity is balanced
            else:
                on = sum(bits[j] for _, j in fixed) % 2
        mean = (on * delta + (total - on) * off) / total
        entries[key] = float(mean)
    return MarginalTable(combo=combo, entries=entries)


def population_mean(d: Descriptor) -> float:
    """Expected fitness of a uniformly drawn genome; zero by construction."""
    delta = Fraction(d.delta)
    if d.kind == 1:
        off = Fraction(-2) * delta / (2 ** d.order - 2)
        mean = (2 * delta + (2 ** d.order - 2) * off) / 2 ** d.order
    else:
        mean = (delta + (-delta)) / 2
    return float(mean)


# ---------------------------------------------------------------------------
# serialization (config-file schema)

def descriptor_to_dict(d: Descriptor) -> dict:
    out = {"type": d.kind, "o": d.order, "sigma": d.sigma, "delta": d.delta,
           "span": d.span, "loci": list(d.loci)}
    if d.kind == 1:
        out["values"] = list(d.values)
    return out


def descriptor_from_dict(spec: dict) -> Descriptor:
    spec = dict(spec)
    kind = int(spec.pop("type"))
    order = int(spec.pop("o"))
    sigma = float(spec.pop("sigma"))
    delta = float(spec.pop("delta"))
    span = int(spec.pop("span"))
    loci = spec.pop("loci", None)
    loci = tuple(range(1, order + 1)) if loci is None else tuple(int(k) for k in loci)
    if kind == 1:
        values = spec.pop("values", None)
        values = (1,) * order if values is None else tuple(int(v) for v in values)
        d = Type1Descriptor(order=order, sigma=sigma, delta=delta, span=span,
                            loci=loci, values=values)
    elif kind == 2:
        d = Type2Descriptor(order=order, sigma=sigma, delta=delta, span=span,
                            loci=loci)
    else:
        raise ValueError(f"unknown pivotal function type {kind}")
    if spec:
        raise ValueError(f"unrecognized descriptor fields: {sorted(spec)}")
    return d


def with_span(d: Descriptor, span: int) -> Descriptor:
    """Same function parameters embedded in a genome of a different length."""
    return replace(d, span=span)
