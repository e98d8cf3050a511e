"""
Fermionic operators and their Jordan-Wigner images.

Modes are (orbital, spin) pairs. The Jordan-Wigner order lists every alpha
mode before any beta mode, while the qubit layout interleaves them
(qubit 2p = p-alpha, qubit 2p+1 = p-beta). A creation operator on mode j
maps to (X - iY)/2 on its qubit times Z on the qubits of all modes before
j in Jordan-Wigner order.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from ..core.exceptions import ValidationError
from ..sim.pauli import PauliString, PauliSum
from ..symmetry.operators import ALPHA, BETA, spin_qubit

logger = logging.getLogger(__name__)

Mode = Tuple[int, str]
Ladder = Tuple[Mode, bool]  # (mode, is_creation)


def jw_position(mode: Mode, M: int) -> int:
    """Position of a mode in the alpha-then-beta Jordan-Wigner order."""
    orbital, spin = mode
    return orbital if spin == ALPHA else M + orbital


@dataclass
class FermionOp:
    """
    Real linear combination of products of ladder operators.

    Each term is (coefficient, ladders) with the ladders read left to right
    as an operator product, so ((p, True), (q, False)) is p^dagger q.
    """
    terms: List[Tuple[float, Tuple[Ladder, ...]]] = field(default_factory=list)

    def __post_init__(self):
        normalized = []
        for coefficient, ladders in self.terms:
            ladders = tuple(((int(orbital), spin), bool(dagger)) for (orbital, spin), dagger in ladders)
            normalized.append((float(coefficient), ladders))
        self.terms = normalized
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ValidationError: If a term changes the particle count of either spin
        """
        for coefficient, ladders in self.terms:
            for spin in (ALPHA, BETA):
                created = sum(1 for (_, s), dagger in ladders if s == spin and dagger)
                removed = sum(1 for (_, s), dagger in ladders if s == spin and not dagger)
                if created != removed:
                    raise ValidationError(f"term {ladders} does not conserve the {spin} count")
            for (_, spin), _ in ladders:
                if spin not in (ALPHA, BETA):
                    raise ValidationError(f"unknown spin {spin!r}")

    @classmethod
    def hopping(cls, p: int, q: int, spin: str, coefficient: float = 1.0) -> "FermionOp":
        """coefficient * p^dagger q on one spin."""
        return cls([(coefficient, (((p, spin), True), ((q, spin), False)))])

    @classmethod
    def number(cls, p: int, spin: str, coefficient: float = 1.0) -> "FermionOp":
        return cls.hopping(p, p, spin, coefficient)

    def max_orbital(self) -> int:
        return max((orbital for _, ladders in self.terms for (orbital, _), _ in ladders), default=-1)

    def __add__(self, other: "FermionOp") -> "FermionOp":
        return FermionOp(self.terms + other.terms)

    def __mul__(self, other: "FermionOp") -> "FermionOp":
        return FermionOp([
            (c1 * c2, l1 + l2) for c1, l1 in self.terms for c2, l2 in other.terms
        ])

    def scaled(self, factor: float) -> "FermionOp":
        return FermionOp([(factor * c, ladders) for c, ladders in self.terms])

    def __len__(self) -> int:
        return len(self.terms)


def _ladder_image(mode: Mode, creation: bool, M: int) -> List[Tuple[complex, PauliString]]:
    """Two-term Pauli image of one ladder operator."""
    orbital, spin = mode
    position = jw_position(mode, M)
    string = []
    for earlier in range(position):
        earlier_spin = ALPHA if earlier < M else BETA
        string.append((spin_qubit(earlier % M, earlier_spin), "Z"))
    qubit = spin_qubit(orbital, spin)
    y_phase = -0.5j if creation else 0.5j
    return [
        (0.5, PauliString(tuple(string + [(qubit, "X")]))),
        (y_phase, PauliString(tuple(string + [(qubit, "Y")]))),
    ]


def _multiply_out(ladders: Sequence[Ladder], M: int) -> Dict[PauliString, complex]:
    product: Dict[PauliString, complex] = {PauliString(): 1.0}
    for mode, creation in ladders:
        expanded: Dict[PauliString, complex] = defaultdict(complex)
        image = _ladder_image(mode, creation, M)
        for left, left_coefficient in product.items():
            for right_coefficient, right in image:
                phase, string = left.multiply(right)
                expanded[string] += left_coefficient * right_coefficient * phase
        product = expanded
    return product


def jordan_wigner(op: FermionOp, M: int, tol: float = 1e-12) -> PauliSum:
    """
    Map a real fermionic operator to a canonical PauliSum.

    Args:
        op: Operator whose total image is real
        M: Spatial orbital count
        tol: Drop threshold for merged coefficients

    Raises:
        ValidationError: If an orbital index is out of range or the image is not real
    """
    if op.max_orbital() >= M:
        raise ValidationError(f"orbital index {op.max_orbital()} out of range for M={M}")
    accumulated: Dict[PauliString, complex] = defaultdict(complex)
    for coefficient, ladders in op.terms:
        if coefficient == 0.0:
            continue
        for string, value in _multiply_out(ladders, M).items():
            accumulated[string] += coefficient * value
    result = PauliSum.from_complex(accumulated, tol)
    logger.debug(f"Jordan-Wigner image: {len(op)} fermionic terms -> {len(result)} Pauli terms")
    return result


def s_squared_fermion(M: int) -> FermionOp:
    """S^2 = S_- S_+ + S_z + S_z^2 from the spin raising and lowering sums."""
    # S_- and S_+ alone change the spin counts, only their product is a FermionOp
    lowering_raising = FermionOp([
        (1.0, (((p, BETA), True), ((p, ALPHA), False), ((q, ALPHA), True), ((q, BETA), False)))
        for p in range(M) for q in range(M)
    ])
    s_z = FermionOp(
        [(0.5, (((p, ALPHA), True), ((p, ALPHA), False))) for p in range(M)]
        + [(-0.5, (((p, BETA), True), ((p, BETA), False))) for p in range(M)]
    )
    return lowering_raising + s_z + s_z * s_z


def pair_creation(p: int) -> Tuple[Ladder, ...]:
    """Ladders of P_p^dagger = p_alpha^dagger p_beta^dagger."""
    return (((p, ALPHA), True), ((p, BETA), True))


def pair_annihilation(p: int) -> Tuple[Ladder, ...]:
    """Ladders of P_p = p_beta p_alpha."""
    return (((p, BETA), False), ((p, ALPHA), False))
