"""
Molecular integrals and the FCIDUMP text format.

Two-electron integrals use chemist notation g[p, q, r, s] = (pq|rs), so
H = e_core + sum_{pq,sigma} h_pq p^dagger q
    + 1/2 sum_{pqrs,sigma,tau} g_pqrs p_sigma^dagger r_tau^dagger s_tau q_sigma.
FCIDUMP indices are 1-based; index 0 marks one-electron and core lines.
"""

import logging
import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Optional, Tuple, Union

import numpy as np

from ..core.exceptions import FCIDUMPError, ValidationError
from ..sim.pauli import PauliString, PauliSum
from ..symmetry.operators import ALPHA, BETA
from .fermion import FermionOp, jordan_wigner

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10


def _eightfold_images(p: int, q: int, r: int, s: int) -> Iterator[Tuple[int, int, int, int]]:
    for a, b, c, d in ((p, q, r, s), (r, s, p, q)):
        yield a, b, c, d
        yield b, a, c, d
        yield a, b, d, c
        yield b, a, d, c


def symmetrize_eightfold(g: np.ndarray) -> np.ndarray:
    """Average a 4-index tensor over the eight real chemist-notation symmetries."""
    return (
        g + g.transpose(1, 0, 2, 3) + g.transpose(0, 1, 3, 2) + g.transpose(1, 0, 3, 2)
        + g.transpose(2, 3, 0, 1) + g.transpose(3, 2, 0, 1) + g.transpose(2, 3, 1, 0)
        + g.transpose(3, 2, 1, 0)
    ) / 8.0


@dataclass
class IntegralSet:
    """One- and two-electron integrals of an active space."""
    M: int
    h: np.ndarray
    g: np.ndarray
    e_core: float = 0.0
    n_electrons: Optional[int] = None
    ms2: Optional[int] = None

    def __post_init__(self):
        self.h = np.asarray(self.h, dtype=float)
        self.g = np.asarray(self.g, dtype=float)
        self.e_core = float(self.e_core)
        self.validate()

    @classmethod
    def zeros(cls, M: int) -> "IntegralSet":
        return cls(M, np.zeros((M, M)), np.zeros((M, M, M, M)))

    def validate(self) -> None:
        """
        Raises:
            ValidationError: On shape or index-symmetry violations
        """
        M = self.M
        if M < 1:
            raise ValidationError(f"orbital count must be at least 1, got {M}")
        if self.h.shape != (M, M) or self.g.shape != (M, M, M, M):
            raise ValidationError(
                f"integral shapes {self.h.shape} / {self.g.shape} do not match M={M}"
            )
        if not (np.all(np.isfinite(self.h)) and np.all(np.isfinite(self.g))):
            raise ValidationError("integrals must be finite")
        if np.max(np.abs(self.h - self.h.T)) > SYMMETRY_TOL:
            raise ValidationError("one-electron integrals are not symmetric")
        if np.max(np.abs(self.g - symmetrize_eightfold(self.g))) > SYMMETRY_TOL:
            raise ValidationError("two-electron integrals lack the eightfold symmetry")

    def rotated(self, rotation: np.ndarray) -> "IntegralSet":
        """Integrals in the orbital basis phi'_i = sum_p phi_p R[p, i] for orthogonal R."""
        rotation = np.asarray(rotation, dtype=float)
        h = rotation.T @ self.h @ rotation
        g = np.einsum("pqrs,pi,qj,rk,sl->ijkl", self.g, rotation, rotation, rotation, rotation)
        return IntegralSet(self.M, h, g, self.e_core, self.n_electrons, self.ms2)


def to_fermion_op(ints: IntegralSet, tol: float = 1e-14) -> FermionOp:
    M = ints.M
    terms = []
    for spin in (ALPHA, BETA):
        for p, q in product(range(M), repeat=2):
            if abs(ints.h[p, q]) > tol:
                terms.append((ints.h[p, q], (((p, spin), True), ((q, spin), False))))
    for p, q, r, s in product(range(M), repeat=4):
        value = ints.g[p, q, r, s]
        if abs(value) <= tol:
            continue
        for sigma, tau in product((ALPHA, BETA), repeat=2):
            if sigma == tau and (p == r or q == s):
                continue
            terms.append((0.5 * value, (
                ((p, sigma), True), ((r, tau), True), ((s, tau), False), ((q, sigma), False),
            )))
    return FermionOp(terms)


def from_integrals(ints: IntegralSet) -> PauliSum:
    """
    Qubit Hamiltonian of an integral set; e_core becomes the identity coefficient.

    Raises:
        ValidationError: If the integrals violate their symmetries
    """
    ints.validate()
    hamiltonian = jordan_wigner(to_fermion_op(ints), ints.M)
    if ints.e_core:
        hamiltonian = hamiltonian + PauliSum([(ints.e_core, PauliString())])
    logger.debug(f"Hamiltonian for M={ints.M}: {len(hamiltonian)} Pauli terms")
    return hamiltonian


_HEADER_KEY = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=")


def _parse_header(text: str) -> dict:
    body = re.sub(r"&(FCI|END)", " ", text, flags=re.IGNORECASE).replace("/", " ")
    parts = _HEADER_KEY.split(body)
    # parts = [prefix, key1, value1, key2, value2, ...]
    return {
        key.upper(): value.strip().strip(",").strip()
        for key, value in zip(parts[1::2], parts[2::2])
    }


def read_fcidump(path: Union[str, Path]) -> IntegralSet:
    """
    Read an FCIDUMP file.

    The header namelist runs from &FCI to &END (or a lone '/'); NORB is
    required, NELEC and MS2 are kept when present. Symmetry-equivalent
    elements are filled in from the stored unique ones.

    Raises:
        FCIDUMPError: On malformed lines, indices beyond NORB or non-real values
    """
    lines = Path(path).read_text().splitlines()
    header_lines = []
    body_start = None
    for number, line in enumerate(lines):
        header_lines.append(line)
        stripped = line.strip().upper()
        if stripped.endswith("&END") or stripped == "/" or stripped.endswith("/"):
            body_start = number + 1
            break
    if body_start is None:
        raise FCIDUMPError("header is not terminated by &END or '/'")

    header = _parse_header(" ".join(header_lines))
    if "NORB" not in header:
        raise FCIDUMPError("header has no NORB entry")
    try:
        M = int(header["NORB"])
        n_electrons = int(header["NELEC"]) if "NELEC" in header else None
        ms2 = int(header["MS2"]) if "MS2" in header else None
    except ValueError as e:
        raise FCIDUMPError(f"invalid header value: {e}") from e

    h = np.zeros((M, M))
    g = np.zeros((M, M, M, M))
    e_core = 0.0
    for number, line in enumerate(lines[body_start:], start=body_start + 1):
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 5:
            raise FCIDUMPError(f"expected 'value i j k l', got {line.strip()!r}", number)
        if "(" in parts[0] or "j" in parts[0].lower():
            raise FCIDUMPError(f"non-real integral {parts[0]}", number)
        try:
            value = float(parts[0].replace("D", "E").replace("d", "e"))
            i, j, k, l = (int(part) for part in parts[1:])
        except ValueError as e:
            raise FCIDUMPError(f"cannot parse {line.strip()!r}", number) from e
        if any(index < 0 or index > M for index in (i, j, k, l)):
            raise FCIDUMPError(f"index out of range for NORB={M}", number)

        if i and j and k and l:
            for a, b, c, d in _eightfold_images(i - 1, j - 1, k - 1, l - 1):
                g[a, b, c, d] = value
        elif i and j and not (k or l):
            h[i - 1, j - 1] = h[j - 1, i - 1] = value
        elif not (i or j or k or l):
            e_core = value
        elif i and not (j or k or l):
            continue  # orbital energy
        else:
            raise FCIDUMPError(f"unsupported index pattern {i} {j} {k} {l}", number)

    logger.info(f"Read FCIDUMP {path}: NORB={M}, NELEC={n_electrons}, MS2={ms2}")
    return IntegralSet(M, h, g, e_core, n_electrons, ms2)


def write_fcidump(ints: IntegralSet, path: Union[str, Path], tol: float = 0.0) -> None:
    """Write the unique integral elements in FCIDUMP format."""
    ints.validate()
    M = ints.M
    n_electrons = ints.n_electrons if ints.n_electrons is not None else 0
    ms2 = ints.ms2 if ints.ms2 is not None else 0
    lines = [
        f" &FCI NORB={M},NELEC={n_electrons},MS2={ms2},",
        "  ORBSYM=" + "1," * M,
        "  ISYM=1,",
        " &END",
    ]
    for i in range(M):
        for j in range(i + 1):
            for k in range(M):
                for l in range(k + 1):
                    if i * (i + 1) // 2 + j < k * (k + 1) // 2 + l:
                        continue
                    value = ints.g[i, j, k, l]
                    if abs(value) > tol:
                        lines.append(f"{value:28.20E} {i + 1:4d} {j + 1:4d} {k + 1:4d} {l + 1:4d}")
    for i in range(M):
        for j in range(i + 1):
            if abs(ints.h[i, j]) > tol:
                lines.append(f"{ints.h[i, j]:28.20E} {i + 1:4d} {j + 1:4d} {0:4d} {0:4d}")
    lines.append(f"{ints.e_core:28.20E} {0:4d} {0:4d} {0:4d} {0:4d}")
    Path(path).write_text("\n".join(lines) + "\n")
    logger.info(f"Wrote FCIDUMP {path}")
