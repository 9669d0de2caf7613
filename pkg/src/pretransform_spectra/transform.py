"""Upper-triangular pre-transforms ``T`` and encoding ``c = u T F_N``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Sequence

from . import prng
from .bits import BitVector, butterfly
from .monomial import CodeSpec, DomainError

DEFAULT_PAC_GENERATOR = "1011011"  # octal 133


def _check_power_of_two(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise DomainError(f"N={n} is not a power of two")
    return n.bit_length() - 1


@dataclass(frozen=True)
class TransformMatrix:
    """Unit upper-triangular ``N x N`` matrix; ``upper[r]`` packs row ``r + 1`` right of the diagonal.

    Bit ``c`` of ``upper[r]`` is ``T[r+1, c+1]``; only bits ``c > r`` may be set.
    """

    N: int
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_power_of_two(self.N)
        upper = tuple(int(x) for x in self.upper)
        object.__setattr__(self, "upper", upper)
        if len(upper) != self.N:
            raise DomainError(f"expected {self.N} rows, got {len(upper)}")
        for r, bits in enumerate(upper):
            if bits < 0 or bits >> self.N:
                raise DomainError(f"row {r + 1} has bits outside the matrix")
            if bits & ((1 << (r + 1)) - 1):
                raise DomainError(f"row {r + 1} has a nonzero entry on or below the diagonal")

    @property
    def m(self) -> int:
        return self.N.bit_length() - 1

    @classmethod
    def identity(cls, N: int) -> "TransformMatrix":
        return cls(N, (0,) * N)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "TransformMatrix":
        """Build from a full 0/1 matrix; the diagonal must be ones and the lower part zero."""
        n = len(rows)
        upper = []
        for r, row in enumerate(rows):
            if len(row) != n:
                raise DomainError(f"row {r + 1} has length {len(row)}, expected {n}")
            if any(v not in (0, 1) for v in row):
                raise DomainError(f"row {r + 1} contains a non-binary entry")
            if row[r] != 1:
                raise DomainError(f"zero diagonal entry at row {r + 1}")
            if any(row[:r]):
                raise DomainError(f"nonzero lower-triangular entry in row {r + 1}")
            upper.append(sum(1 << c for c in range(r + 1, n) if row[c]))
        return cls(n, tuple(upper))

    def row(self, i: int) -> int:
        """Row ``i`` (1-based) including the unit diagonal, packed."""
        return (1 << (i - 1)) | self.upper[i - 1]

    def entry(self, i: int, j: int) -> int:
        if i == j:
            return 1
        return self.upper[i - 1] >> (j - 1) & 1

    def to_rows(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(1, self.N + 1)] for i in range(1, self.N + 1)]


@dataclass(frozen=True)
class TransformEnsemble:
    """``kind`` is one of ``identity``, ``uniform_random``, ``pac_toeplitz`` or ``explicit``."""

    kind: str
    generator: tuple[int, ...] = ()
    matrix: TransformMatrix | None = None

    KINDS = ("identity", "uniform_random", "pac_toeplitz", "explicit")

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")
        if self.kind == "pac_toeplitz":
            if not self.generator or self.generator[0] != 1:
                raise DomainError("PAC generator must have leading coefficient 1")
        if self.kind == "explicit" and self.matrix is None:
            raise DomainError("explicit ensemble needs a matrix")

    @classmethod
    def identity(cls) -> "TransformEnsemble":
        return cls("identity")

    @classmethod
    def uniform_random(cls) -> "TransformEnsemble":
        return cls("uniform_random")

    @classmethod
    def pac(cls, generator: str | int | Sequence[int] = DEFAULT_PAC_GENERATOR) -> "TransformEnsemble":
        return cls("pac_toeplitz", generator=parse_generator(generator))

    @classmethod
    def explicit(cls, matrix: TransformMatrix) -> "TransformEnsemble":
        return cls("explicit", matrix=matrix)


def parse_generator(generator: str | int | Sequence[int]) -> tuple[int, ...]:
    """Convolution coefficients ``(c_0, c_1, ...)`` read most-significant digit first.

    ``"0b1011011"``, ``"1011011"``, ``0o133`` and ``[1, 0, 1, 1, 0, 1, 1]`` all give
    ``T[i, i + k] = c_k`` with ``c = (1, 0, 1, 1, 0, 1, 1)``.
    """
    if isinstance(generator, int):
        if generator <= 0:
            raise DomainError("PAC generator must be positive")
        digits = bin(generator)[2:]
    elif isinstance(generator, str):
        digits = generator.strip().lower()
        if digits.startswith("0b"):
            digits = digits[2:]
        elif digits.startswith("0o"):
            digits = bin(int(digits[2:], 8))[2:]
    else:
        digits = "".join(str(int(v)) for v in generator)
    if not digits or set(digits) - {"0", "1"}:
        raise DomainError(f"invalid PAC generator {generator!r}")
    coeffs = tuple(int(ch) for ch in digits)
    if coeffs[0] != 1:
        raise DomainError("PAC generator must have leading coefficient 1")
    return coeffs


def random_upper(N: int, seed: int) -> TransformMatrix:
    """Strictly-upper bits i.i.d. fair: ``T[i, j]`` is bit ``j - 1`` of stream ``i`` (see :mod:`prng`)."""
    upper = []
    for i in range(1, N + 1):
        row_bits = prng.bits(seed, i, N)
        upper.append(row_bits & ~((1 << i) - 1))
    return TransformMatrix(N, tuple(upper))


def sample_pretransform(N: int, ensemble: TransformEnsemble, seed: int = 0) -> TransformMatrix:
    _check_power_of_two(N)
    if ensemble.kind == "identity":
        return TransformMatrix.identity(N)
    if ensemble.kind == "uniform_random":
        return random_upper(N, seed)
    if ensemble.kind == "pac_toeplitz":
        coeffs = ensemble.generator
        upper = []
        for r in range(N):
            bits = 0
            for k in range(1, len(coeffs)):
                if coeffs[k] and r + k < N:
                    bits |= 1 << (r + k)
            upper.append(bits)
        return TransformMatrix(N, tuple(upper))
    assert ensemble.matrix is not None
    if ensemble.matrix.N != N:
        raise DomainError(f"explicit matrix has N={ensemble.matrix.N}, expected {N}")
    return ensemble.matrix


def info_word_to_u(spec: CodeSpec, info_bits: Sequence[int] | int) -> int:
    """Scatter a ``K``-bit message onto the information rows (packed, bit r = u_{r+1})."""
    if isinstance(info_bits, int):
        if info_bits < 0 or info_bits >> spec.K:
            raise DomainError(f"message does not fit in K={spec.K} bits")
        values = [info_bits >> j & 1 for j in range(spec.K)]
    else:
        values = list(info_bits)
        if len(values) != spec.K:
            raise DomainError(f"expected {spec.K} information bits, got {len(values)}")
    u = 0
    for row, v in zip(spec.info_rows, values):
        if v not in (0, 1):
            raise DomainError(f"information bit {v!r} is not binary")
        if v:
            u |= 1 << (row - 1)
    return u


def apply_transform(u: int, t: TransformMatrix) -> int:
    v = 0
    r = 0
    while u:
        if u & 1:
            v ^= (1 << r) | t.upper[r]
        u >>= 1
        r += 1
    return v


def encode(spec: CodeSpec, t: TransformMatrix, info_bits: Sequence[int] | int) -> BitVector:
    """Codeword ``(u T) F_N`` for a ``K``-bit message (list of bits, or int with bit j = j-th info bit)."""
    if t.N != spec.N:
        raise DomainError(f"transform has N={t.N}, code has N={spec.N}")
    u = info_word_to_u(spec, info_bits)
    return BitVector(spec.N, butterfly(apply_transform(u, t), spec.m))


def row_of_g(m: int, t: TransformMatrix, i: int) -> BitVector:
    """Row ``i`` of ``G_N = T F_N``."""
    n = 1 << m
    if t.N != n:
        raise DomainError(f"transform has N={t.N}, expected {n}")
    if not 1 <= i <= n:
        raise DomainError(f"row {i} out of range [1, {n}]")
    return BitVector(n, butterfly(t.row(i), m))


def generator_rows(spec: CodeSpec, t: TransformMatrix) -> list[int]:
    """Packed rows of ``G_N`` at the information positions, in row order."""
    return [butterfly(t.row(i), spec.m) for i in spec.info_rows]


def ensemble_from_json(obj: Mapping[str, Any]) -> tuple[TransformEnsemble, int]:
    """Parse ``{"kind": "identity" | "random" | "pac" | "explicit", ...}``; returns (ensemble, seed)."""
    if not isinstance(obj, Mapping):
        raise DomainError("transform spec must be a JSON object")
    kind = obj.get("kind")
    allowed = {
        "identity": {"kind"},
        "random": {"kind", "seed"},
        "pac": {"kind", "generator"},
        "explicit": {"kind", "rows"},
    }
    if kind not in allowed:
        raise DomainError(f"unknown transform kind {kind!r}")
    extra = set(obj) - allowed[kind]
    if extra:
        raise DomainError(f"unknown keys in transform spec: {sorted(extra)}")
    if kind == "identity":
        return TransformEnsemble.identity(), 0
    if kind == "random":
        seed = obj.get("seed", 0)
        if not isinstance(seed, int) or not 0 <= seed <= prng.MASK64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        return TransformEnsemble.uniform_random(), seed
    if kind == "pac":
        return TransformEnsemble.pac(obj.get("generator", DEFAULT_PAC_GENERATOR)), 0
    rows = obj.get("rows")
    if not isinstance(rows, list) or not rows:
        raise DomainError("explicit transform needs a non-empty 'rows' list")
    n = len(rows)
    if all(isinstance(row, list) and len(row) == n for row in rows):
        return TransformEnsemble.explicit(TransformMatrix.from_rows(rows)), 0
    # ragged form: row i lists only the N - i entries right of the diagonal
    full = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != n - i:
            raise DomainError(f"explicit row {i} must list {n - i} strictly-upper bits or {n} entries")
        full.append([0] * (i - 1) + [1] + list(row))
    return TransformEnsemble.explicit(TransformMatrix.from_rows(full)), 0


def ensemble_to_json(ensemble: TransformEnsemble, seed: int = 0) -> dict[str, Any]:
    if ensemble.kind == "identity":
        return {"kind": "identity"}
    if ensemble.kind == "uniform_random":
        return {"kind": "random", "seed": seed}
    if ensemble.kind == "pac_toeplitz":
        return {"kind": "pac", "generator": "0b" + "".join(map(str, ensemble.generator))}
    assert ensemble.matrix is not None
    return {"kind": "explicit", "rows": ensemble.matrix.to_rows()}
