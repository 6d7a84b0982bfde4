"""Random matrix ensembles and randomized coefficient families.

Sampling is reproducible: every stochastic routine is keyed by a
(`seed`, `stream`) pair, and Monte Carlo drivers consume randomness in
fixed-size chunks with one child generator per chunk.  Chunking makes the
draw sequence a stable prefix in the trial count (so suprema are monotone
under nested seeds) and leaves the reduction order fixed, so results do not
depend on how chunks would be scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dual_data import DualDescriptor
from .fourier_core import FourierCoeffs

#: Uniform norm slack used by every contraction / unitarity contract here.
NORM_SLACK = 1e-9

#: Unitarity tolerance for flagging a family as unitary.
UNITARY_TOL = 1e-10


class ContractionError(ValueError):
    """Input exceeds the unit-ball precondition."""


class FamilyError(ValueError):
    """A matrix family is missing entries or fails its flag precondition."""


# ---------------------------------------------------------------------------
# seeding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RngSeed:
    """64-bit seed plus stream id; identical pairs reproduce identical draws."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,)))
        )

    def chunk_generator(self, chunk_index: int) -> np.random.Generator:
        """Independent child generator for one Monte Carlo chunk."""
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream, chunk_index))
        return np.random.Generator(np.random.PCG64(ss))

    def with_stream(self, stream: int) -> "RngSeed":
        return RngSeed(self.seed, stream)


def matrices_per_chunk(n: int) -> int:
    # keep chunks near 4M scalars, capped so tiny matrices do not overdraw
    return max(1, min(1024, 4_194_304 // max(1, n * n)))


def iter_chunks(total: int, chunk: int):
    """Yield (chunk_index, count) pairs covering `total` in fixed order."""
    index = 0
    done = 0
    while done < total:
        take = min(chunk, total - done)
        yield index, take
        index += 1
        done += take


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def gaussian_matrix_stack(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` i.i.d. real n x n matrices with entries N(0,1)/sqrt(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return rng.standard_normal((count, n, n)) / np.sqrt(n)


def gaussian_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    return gaussian_matrix_stack(n, 1, rng)[0]


def haar_unitary_stack(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` Haar-distributed n x n unitaries.

    Complex Ginibre -> QR -> multiply columns by the conjugate phases of R's
    diagonal; the phase correction removes the sign ambiguity of QR and makes
    the law exactly Haar.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    z = (
        rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    ) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    phase = diag.conj() / np.abs(diag)
    return q * phase[:, None, :]


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return haar_unitary_stack(n, 1, rng)[0]


@dataclass(frozen=True)
class NormEstimate:
    mean: float
    stderr: float
    trials: int


def expected_operator_norm(n: int, trials: int, seed: RngSeed) -> NormEstimate:
    """Monte Carlo mean and standard error of the spectral norm of G_n."""
    if trials < 2:
        raise ValueError(f"trials must be >= 2, got {trials}")
    chunk = matrices_per_chunk(n)
    acc = 0.0
    acc_sq = 0.0
    for index, take in iter_chunks(trials, chunk):
        g = gaussian_matrix_stack(n, chunk, seed.chunk_generator(index))[:take]
        norms = np.linalg.svd(g, compute_uv=False)[:, 0]
        acc += float(np.sum(norms))
        acc_sq += float(np.sum(norms * norms))
    mean = acc / trials
    var = max(0.0, (acc_sq - trials * mean * mean) / (trials - 1))
    return NormEstimate(mean=mean, stderr=float(np.sqrt(var / trials)), trials=trials)


# ---------------------------------------------------------------------------
# matrix families over a dual
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixFamily:
    """Finite family: irrep label -> complex n x n matrix (randomizer or multiplier)."""

    dual: DualDescriptor
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for label, mat in self.entries.items():
            irrep = self.dual.irrep(label)
            m = np.array(mat, dtype=complex)
            if m.shape != (irrep.n, irrep.n):
                raise ValueError(
                    f"family entry at {label!r} has shape {m.shape}, "
                    f"expected ({irrep.n}, {irrep.n})"
                )
            m.flags.writeable = False
            clean[label] = m
        object.__setattr__(self, "entries", clean)

    def __getitem__(self, label) -> np.ndarray:
        return self.entries[label]

    @property
    def is_unitary(self) -> bool:
        return all(
            np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), 2) <= UNITARY_TOL
            for m in self.entries.values()
        )

    def sup_norm(self) -> float:
        if not self.entries:
            return 0.0
        return max(float(np.linalg.norm(m, 2)) for m in self.entries.values())


def identity_family(dual: DualDescriptor, labels=None) -> MatrixFamily:
    labels = dual.labels() if labels is None else list(labels)
    return MatrixFamily(dual, {l: np.eye(dual.irrep(l).n, dtype=complex) for l in labels})


def haar_family(dual: DualDescriptor, rng: np.random.Generator, labels=None) -> MatrixFamily:
    labels = dual.labels() if labels is None else list(labels)
    return MatrixFamily(dual, {l: haar_unitary(dual.irrep(l).n, rng) for l in labels})


def gaussian_family(dual: DualDescriptor, rng: np.random.Generator, labels=None) -> MatrixFamily:
    """One normalized Gaussian matrix G_n per label."""
    labels = dual.labels() if labels is None else list(labels)
    return MatrixFamily(dual, {l: gaussian_matrix(dual.irrep(l).n, rng) for l in labels})


def random_coeffs(
    dual: DualDescriptor,
    rng: np.random.Generator,
    labels=None,
    real: bool = False,
    scale: float = 1.0,
) -> FourierCoeffs:
    """Random coefficient family with independent standard Gaussian entries."""
    labels = dual.labels() if labels is None else list(labels)
    support = {}
    for label in labels:
        n = dual.irrep(label).n
        if real:
            m = rng.standard_normal((n, n)).astype(complex)
        else:
            m = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
        support[label] = scale * m
    return FourierCoeffs(dual, support)


# ---------------------------------------------------------------------------
# randomization
# ---------------------------------------------------------------------------

def randomize(f: FourierCoeffs, family: MatrixFamily) -> FourierCoeffs:
    """Coefficient at alpha becomes U_alpha @ X_alpha; support unchanged."""
    if f.dual is not family.dual and f.dual.name != family.dual.name:
        raise FamilyError(f"duals differ: {f.dual.name!r} vs {family.dual.name!r}")
    missing = [l for l in f.support if l not in family.entries]
    if missing:
        raise FamilyError(f"family has no entry for labels {missing!r}")
    return FourierCoeffs(f.dual, {l: family.entries[l] @ m for l, m in f.support.items()})


def l2_invariance_check(f: FourierCoeffs, family: MatrixFamily) -> float:
    """|ell2(f_U) - ell2(f)| for a unitary family; tiny by unitary invariance."""
    from .fourier_core import ell2_norm

    if not family.is_unitary:
        raise FamilyError("randomizer family is not unitary within tolerance")
    return abs(ell2_norm(randomize(f, family)) - ell2_norm(f))


# ---------------------------------------------------------------------------
# four-unitary decomposition of a contraction
# ---------------------------------------------------------------------------

def _hermitian_unitary_pair(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For Hermitian h with ||h|| <= 1, returns h +/- i sqrt(I - h^2), both unitary."""
    w, v = np.linalg.eigh(h)
    # eigenvalues of a numerical contraction can exceed 1 by ~1e-15; clamp
    w = np.clip(w, -1.0, 1.0)
    root = (v * np.sqrt(1.0 - w * w)) @ v.conj().T
    return h + 1j * root, h - 1j * root


def four_unitary_decomposition(x) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a contraction X into four unitaries with X = (v1+v2+v3+v4)/2.

    X = h1 + i h2 with h1 = (X+X^*)/2, h2 = (X-X^*)/(2i); each Hermitian part
    contributes the unitary pair h +/- i sqrt(I - h^2), and the skew part is
    rotated by i:  v1,2 = h1 +/- i sqrt(I-h1^2),  v3,4 = i(h2 +/- i sqrt(I-h2^2)).
    """
    x = np.array(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    norm = float(np.linalg.norm(x, 2))
    if norm > 1.0 + NORM_SLACK:
        raise ContractionError(f"matrix norm {norm!r} exceeds 1 + {NORM_SLACK}")
    h1 = (x + x.conj().T) / 2.0
    h2 = (x - x.conj().T) / 2j
    v1, v2 = _hermitian_unitary_pair(h1)
    w1, w2 = _hermitian_unitary_pair(h2)
    return v1, v2, 1j * w1, 1j * w2


@dataclass(frozen=True)
class BallDecomposition:
    """B-randomization of f plus the four unitary families realizing it."""

    randomized: FourierCoeffs
    families: tuple[MatrixFamily, MatrixFamily, MatrixFamily, MatrixFamily]
    max_deviation: float


def randomize_ball(f: FourierCoeffs, family: MatrixFamily) -> BallDecomposition:
    """Randomize by a norm-<=1 family B and express the result as an average
    of four unitary randomizations: f_B = (sum_j f_{V_j}) / 2.
    """
    sup = family.sup_norm()
    if sup > 1.0 + NORM_SLACK:
        raise ContractionError(f"family sup norm {sup!r} exceeds 1 + {NORM_SLACK}")
    f_b = randomize(f, family)
    parts: list[dict] = [{}, {}, {}, {}]
    for label, b in family.entries.items():
        for slot, v in zip(parts, four_unitary_decomposition(b)):
            slot[label] = v
    families = tuple(MatrixFamily(f.dual, p) for p in parts)
    acc = {l: np.zeros_like(m) for l, m in f_b.support.items()}
    for fam in families:
        piece = randomize(f, fam)
        for label in acc:
            acc[label] = acc[label] + piece.support[label]
    deviation = 0.0
    for label, m in f_b.support.items():
        deviation = max(deviation, float(np.max(np.abs(acc[label] / 2.0 - m))) if m.size else 0.0)
    return BallDecomposition(randomized=f_b, families=families, max_deviation=deviation)
