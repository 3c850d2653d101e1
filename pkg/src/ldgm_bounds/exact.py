"""Exact machinery for concrete small codes.

Everything here is combinatorially exact: codeword weight counts and
coefficient floors use arbitrary-precision integers, and the hypercube
distance transform assigns every source word its true distance to the
nearest codeword.  This is what lets the asymptotic bounds be checked
against brute-force optima on real instances.

Budgets keep runtimes at desk scale: index-word enumeration is capped at
2^24 words and the distance transform at 2^26 source words.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .bounds import counting_bound_distortion
from .degree import DegreeDistribution
from .numerics import bisect_monotone

__all__ = [
    "BLOCKLENGTH_LIMIT",
    "GENERATOR_LIMIT",
    "BudgetError",
    "CoverProfile",
    "LdgmCode",
    "VerificationReport",
    "WeightEnumerator",
    "code_from_text",
    "code_to_text",
    "coefficient_growth_exponent",
    "coefficient_lower_bound",
    "covered_fraction",
    "distance_transform",
    "distance_transform_naive",
    "encode",
    "generator_masks",
    "optimal_average_distortion",
    "read_code_file",
    "sample_code",
    "verify_code",
    "weight_enumerator",
    "weight_enumerator_naive",
    "write_code_file",
]

BLOCKLENGTH_LIMIT = 26
GENERATOR_LIMIT = 24


class BudgetError(ValueError):
    """An exact computation would exceed the enumeration budget."""


@dataclass(frozen=True)
class LdgmCode:
    """A sparse generator matrix: per-generator tuples of check indices.

    ``generators[g]`` lists, strictly ascending, the checks generator g is
    wired to.  Codewords are the XOR combinations of these check sets; the
    all-zero index word always maps to the all-zero codeword.
    """

    num_checks: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_checks < 1:
            raise ValueError(f"need at least one check node, got {self.num_checks!r}")
        for g, checks in enumerate(self.generators):
            prev = -1
            for index in checks:
                if not 0 <= index < self.num_checks:
                    raise ValueError(
                        f"generator {g}: check index {index} out of range "
                        f"[0, {self.num_checks})"
                    )
                if index <= prev:
                    raise ValueError(
                        f"generator {g}: check indices must be strictly ascending"
                    )
                prev = index

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def rate(self) -> float:
        return self.num_generators / self.num_checks

    def realized_distribution(self) -> DegreeDistribution:
        """Degree distribution actually present in this instance."""
        return DegreeDistribution.from_degrees([len(g) for g in self.generators])


def generator_masks(code: LdgmCode) -> tuple[int, ...]:
    """Each generator's check set as an integer bitmask."""
    masks = []
    for checks in code.generators:
        mask = 0
        for index in checks:
            mask |= 1 << index
        masks.append(mask)
    return tuple(masks)


def sample_code(
    num_checks: int, num_generators: int, dist: DegreeDistribution, seed: int
) -> LdgmCode:
    """Draw a code with the exact degree multiset implied by ``dist``.

    Requires every num_generators * fraction to be an integer.  Degrees are
    shuffled across generators and each generator picks its checks without
    replacement, all driven by ``seed`` for reproducibility.
    """
    if num_checks < 1:
        raise ValueError(f"need at least one check node, got {num_checks!r}")
    counts = _integral_degree_counts(dist, num_generators)
    degrees = [d for d, count in counts.items() for _ in range(count)]
    if degrees and max(degrees) > num_checks:
        raise ValueError(
            f"degree {max(degrees)} exceeds the number of checks {num_checks}"
        )
    rng = random.Random(seed)
    rng.shuffle(degrees)
    generators = tuple(
        tuple(sorted(rng.sample(range(num_checks), degree))) for degree in degrees
    )
    return LdgmCode(num_checks, generators)


def _integral_degree_counts(dist: DegreeDistribution, n: int) -> dict[int, int]:
    """n * L_i as exact integers; rejects distributions that do not divide n."""
    if n < 0:
        raise ValueError(f"negative generator count: {n!r}")
    counts: dict[int, int] = {}
    for degree, fraction in dist.entries:
        scaled = n * fraction
        count = round(scaled)
        if abs(scaled - count) > 1e-6:
            raise ValueError(
                f"{n} generators cannot realize fraction {fraction!r} "
                f"at degree {degree} exactly"
            )
        if count:
            counts[degree] = count
    if sum(counts.values()) != n:
        raise ValueError(f"degree counts {counts} do not sum to {n}")
    return counts


def encode(code: LdgmCode, index_bits) -> list[int]:
    """Map an index word (length n of 0/1) to its codeword (length m)."""
    if len(index_bits) != code.num_generators:
        raise ValueError(
            f"index word length {len(index_bits)} != {code.num_generators}"
        )
    word = [0] * code.num_checks
    for bit, checks in zip(index_bits, code.generators):
        if bit not in (0, 1):
            raise ValueError(f"index word entries must be 0/1, got {bit!r}")
        if bit:
            for index in checks:
                word[index] ^= 1
    return word


# ---------------------------------------------------------------------------
# weight enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightEnumerator:
    """Exact codeword-weight counts over all 2^n index words.

    ``counts[w]`` is the number of index words whose codeword has Hamming
    weight w, multiplicity included, so the counts sum to 2^n.
    """

    num_checks: int
    num_generators: int
    counts: tuple[int, ...]

    def cumulative(self) -> tuple[int, ...]:
        """Number of index words with codeword weight at most w, per w."""
        out = []
        running = 0
        for count in self.counts:
            running += count
            out.append(running)
        return tuple(out)


def _check_enumeration_budget(code: LdgmCode) -> None:
    if code.num_generators > GENERATOR_LIMIT:
        raise BudgetError(
            f"{code.num_generators} generators exceed the enumeration budget "
            f"of {GENERATOR_LIMIT}"
        )


def weight_enumerator(code: LdgmCode) -> WeightEnumerator:
    """Walk index words in Gray-code order, updating weight incrementally."""
    _check_enumeration_budget(code)
    masks = generator_masks(code)
    mask_bits = [mask.bit_count() for mask in masks]
    counts = [0] * (code.num_checks + 1)
    state = 0
    weight = 0
    counts[0] = 1
    for k in range(1, 1 << code.num_generators):
        g = (k & -k).bit_length() - 1
        mask = masks[g]
        weight += mask_bits[g] - 2 * (state & mask).bit_count()
        state ^= mask
        counts[weight] += 1
    return WeightEnumerator(code.num_checks, code.num_generators, tuple(counts))


def weight_enumerator_naive(code: LdgmCode) -> WeightEnumerator:
    """Reference enumerator: rebuild each codeword from scratch, no Gray walk."""
    _check_enumeration_budget(code)
    counts = [0] * (code.num_checks + 1)
    n = code.num_generators
    for k in range(1 << n):
        word = [0] * code.num_checks
        for g in range(n):
            if (k >> g) & 1:
                for index in code.generators[g]:
                    word[index] ^= 1
        counts[sum(word)] += 1
    return WeightEnumerator(code.num_checks, code.num_generators, tuple(counts))


# ---------------------------------------------------------------------------
# coefficient floor on cumulative weight counts
# ---------------------------------------------------------------------------


def coefficient_lower_bound(dist: DegreeDistribution, num_generators: int) -> tuple[int, ...]:
    """Prefix sums of the coefficients of prod_i (1 + x^i)^{n L_i}.

    Entry w floors the number of index words whose codeword weight is at
    most w, for any code realizing ``dist`` over ``num_generators``
    generators.  Exact integers; the last entry is 2^n.  Indices past the
    polynomial degree keep the terminal value 2^n.
    """
    counts = _integral_degree_counts(dist, num_generators)
    coefficients = [1]
    for degree, count in sorted(counts.items()):
        if degree == 0:
            # (1 + x^0) contributes a factor 2 per generator
            coefficients = [c << count for c in coefficients]
            continue
        for _ in range(count):
            extended = coefficients + [0] * degree
            for k in range(degree, len(extended)):
                extended[k] += coefficients[k - degree]
            coefficients = extended
    running = 0
    prefix = []
    for c in coefficients:
        running += c
        prefix.append(running)
    return tuple(prefix)


def coefficient_growth_exponent(dist: DegreeDistribution, omega: float) -> float:
    """Large-n growth rate (1/n) log2 of the coefficient floor at occupancy omega.

    omega must lie in (0, half the average degree]; the defining equation
    mean_occupancy(x) = omega is solved on (0, 1] and the exponent is
    log2_weight_gf(x) - omega * log2(x).
    """
    half_mean = dist.mean_occupancy(1.0)
    if not 0.0 < omega <= half_mean:
        raise ValueError(f"occupancy {omega!r} outside (0, {half_mean!r}]")
    if omega == half_mean:
        return dist.log2_weight_gf(1.0)
    x = bisect_monotone(dist.mean_occupancy, 0.0, 1.0, omega, tol=1e-15)
    return dist.log2_weight_gf(x) - omega * math.log2(x)


# ---------------------------------------------------------------------------
# hypercube distance transform
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverProfile:
    """Histogram over distances from source words to their nearest codeword."""

    num_checks: int
    histogram: tuple[int, ...]

    def __post_init__(self) -> None:
        if sum(self.histogram) != 1 << self.num_checks:
            raise ValueError("histogram must account for every source word")

    def average_distortion(self) -> float:
        """Mean nearest-codeword distance, normalized by blocklength."""
        weighted = sum(d * count for d, count in enumerate(self.histogram))
        return weighted / (self.num_checks * (1 << self.num_checks))


def _check_transform_budget(code: LdgmCode) -> None:
    if code.num_checks > BLOCKLENGTH_LIMIT:
        raise BudgetError(
            f"blocklength {code.num_checks} exceeds the transform budget "
            f"of {BLOCKLENGTH_LIMIT}"
        )
    _check_enumeration_budget(code)


def _codeword_array(code: LdgmCode) -> np.ndarray:
    """All distinct codewords as a sorted uint32 array (doubling construction)."""
    words = np.zeros(1, dtype=np.uint32)
    for mask in generator_masks(code):
        words = np.concatenate([words, words ^ np.uint32(mask)])
    return np.unique(words)


def distance_transform(code: LdgmCode) -> CoverProfile:
    """Exact nearest-codeword distance histogram over all 2^m source words.

    Runs m min-plus sweeps, one per coordinate: after sweeping bit b, every
    cell holds the cheapest way to reach a codeword flipping only bits
    swept so far.  Each sweep is a vectorized reshape of the 2^m table, so
    the whole transform costs O(m 2^m) with no frontier bookkeeping.
    """
    _check_transform_budget(code)
    m = code.num_checks
    table = np.full(1 << m, 100, dtype=np.int8)  # larger than any distance
    table[_codeword_array(code)] = 0
    for b in range(m):
        paired = table.reshape(-1, 2, 1 << b)
        flipped = paired[:, ::-1, :] + np.int8(1)
        np.minimum(paired, flipped, out=paired)
    histogram = np.bincount(table.astype(np.int64), minlength=m + 1)
    return CoverProfile(m, tuple(int(c) for c in histogram))


def distance_transform_naive(code: LdgmCode) -> CoverProfile:
    """Reference transform: per source word, scan the whole codeword set."""
    _check_transform_budget(code)
    m = code.num_checks
    codewords = [int(c) for c in _codeword_array(code)]
    histogram = [0] * (m + 1)
    for word in range(1 << m):
        nearest = min((word ^ c).bit_count() for c in codewords)
        histogram[nearest] += 1
    return CoverProfile(m, tuple(histogram))


def covered_fraction(profile: CoverProfile, distortion: float) -> float:
    """Fraction of source words within radius floor(distortion * m).

    The floor is taken with a 1e-9 guard so gridded distortion values that
    hit an integer radius up to rounding land on that radius.
    """
    if not 0.0 <= distortion <= 1.0:
        raise ValueError(f"distortion out of range: {distortion!r}")
    radius = int(math.floor(distortion * profile.num_checks + 1e-9))
    covered = sum(profile.histogram[: radius + 1])
    return covered / (1 << profile.num_checks)


def optimal_average_distortion(code: LdgmCode) -> float:
    """Distortion of the best possible encoder: mean nearest-codeword distance."""
    return distance_transform(code).average_distortion()


# ---------------------------------------------------------------------------
# verification of one instance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the three per-code checks, with literal margins.

    * chain: optimal distortion >= d * (1 - covered_fraction(d)) on the
      grid, compared in exact rational arithmetic (zero tolerance).
    * enumerator: cumulative weight counts >= coefficient floor, exact
      integers; ``enumerator_slack`` is the smallest difference.
    * bound: optimal distortion >= counting bound - 1e-9.
    """

    seed: int | None
    num_checks: int
    num_generators: int
    degrees: str
    optimal_distortion: float
    bound_distortion: float
    bound_margin: float
    chain_margin: float
    enumerator_slack: int
    covered: tuple[tuple[float, float], ...]
    chain_ok: bool
    enumerator_ok: bool
    bound_ok: bool

    @property
    def passed(self) -> bool:
        return self.chain_ok and self.enumerator_ok and self.bound_ok


def verify_code(
    code: LdgmCode,
    dist: DegreeDistribution,
    d_grid,
    seed: int | None = None,
) -> VerificationReport:
    """Run all exact checks of the counting bound against one instance."""
    profile = distance_transform(code)
    enumerator = weight_enumerator(code)
    floors = coefficient_lower_bound(dist, code.num_generators)

    m = code.num_checks
    total = 1 << m
    weighted = sum(d * count for d, count in enumerate(profile.histogram))
    optimal = profile.average_distortion()

    chain_ok = True
    worst_rhs = Fraction(0)
    covered_samples = []
    for d in d_grid:
        radius = int(math.floor(d * m + 1e-9))
        covered = sum(profile.histogram[: radius + 1])
        covered_samples.append((float(d), covered / total))
        rhs = Fraction(d) * (total - covered)  # times m 2^m, like `weighted`
        if rhs > worst_rhs:
            worst_rhs = rhs
        if Fraction(weighted) < rhs * m:
            chain_ok = False
    chain_margin = optimal - float(worst_rhs) / total

    cumulative = enumerator.cumulative()
    last = len(floors) - 1
    slacks = [
        cumulative[w] - floors[min(w, last)] for w in range(m + 1)
    ]
    enumerator_slack = min(slacks)
    enumerator_ok = enumerator_slack >= 0

    bound = counting_bound_distortion(dist, code.num_generators / m)
    bound_margin = optimal - bound
    bound_ok = bound_margin >= -1e-9

    return VerificationReport(
        seed=seed,
        num_checks=m,
        num_generators=code.num_generators,
        degrees=dist.to_literal(),
        optimal_distortion=optimal,
        bound_distortion=bound,
        bound_margin=bound_margin,
        chain_margin=chain_margin,
        enumerator_slack=enumerator_slack,
        covered=tuple(covered_samples),
        chain_ok=chain_ok,
        enumerator_ok=enumerator_ok,
        bound_ok=bound_ok,
    )


# ---------------------------------------------------------------------------
# code files
# ---------------------------------------------------------------------------


def code_to_text(code: LdgmCode) -> str:
    """Serialize: header "ldgm m n", then one ascending index line per generator."""
    lines = [f"ldgm {code.num_checks} {code.num_generators}"]
    for checks in code.generators:
        lines.append(" ".join(str(index) for index in checks))
    return "\n".join(lines) + "\n"


def code_from_text(text: str) -> LdgmCode:
    """Parse the code file format; errors cite 1-based line numbers."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("line 1: empty file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "ldgm":
        raise ValueError(f'line 1: expected "ldgm <checks> <generators>", got {lines[0]!r}')
    try:
        num_checks = int(header[1])
        num_generators = int(header[2])
    except ValueError as exc:
        raise ValueError(f"line 1: bad counts in {lines[0]!r}") from exc
    if len(lines) - 1 != num_generators:
        raise ValueError(
            f"line 1: header promises {num_generators} generator lines, "
            f"found {len(lines) - 1}"
        )
    if num_checks < 1:
        raise ValueError(f"line 1: need at least one check node, got {num_checks}")
    generators = []
    for offset, line in enumerate(lines[1:], start=2):
        try:
            checks = tuple(int(token) for token in line.split())
        except ValueError as exc:
            raise ValueError(f"line {offset}: non-integer check index in {line!r}") from exc
        prev = -1
        for index in checks:
            if not 0 <= index < num_checks:
                raise ValueError(
                    f"line {offset}: check index {index} out of range [0, {num_checks})"
                )
            if index <= prev:
                raise ValueError(f"line {offset}: check indices must be strictly ascending")
            prev = index
        generators.append(checks)
    return LdgmCode(num_checks, tuple(generators))


def write_code_file(code: LdgmCode, path) -> None:
    Path(path).write_text(code_to_text(code))


def read_code_file(path) -> LdgmCode:
    return code_from_text(Path(path).read_text())
