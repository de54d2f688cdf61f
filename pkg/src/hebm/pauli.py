"""Pauli strings and parametric Pauli-word Hamiltonians."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

PAULI_LABELS = "IXYZ"

_SPARSE_TOKEN = re.compile(r"^([IXYZ])([0-9]+)$")


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Pauli operators.

    ``axes[q]`` is the operator acting on qubit ``q`` (one of I, X, Y, Z).
    Every Pauli string squares to the identity, which the propagator's
    closed-form rotation relies on.
    """

    axes: str

    def __post_init__(self):
        if not self.axes:
            raise ValueError("Pauli string must act on at least one qubit")
        bad = sorted(set(self.axes) - set(PAULI_LABELS))
        if bad:
            raise ValueError(f"invalid Pauli labels {bad!r}; expected I/X/Y/Z")

    @property
    def n_qubits(self) -> int:
        return len(self.axes)

    @property
    def is_identity(self) -> bool:
        return set(self.axes) == {"I"}

    def support(self) -> tuple[int, ...]:
        """Qubits on which the string acts nontrivially."""
        return tuple(q for q, ax in enumerate(self.axes) if ax != "I")

    def sparse_label(self) -> str:
        """Sparse text form like ``"Z2 Z3"``; the identity renders as ``"I"``."""
        if self.is_identity:
            return "I"
        return " ".join(f"{self.axes[q]}{q}" for q in self.support())

    def __str__(self) -> str:
        return self.axes


def parse_pauli_string(text: str, n_qubits: int) -> PauliString:
    """Parse a dense (``"ZZII"``) or sparse (``"Z0 Z1"``) Pauli label.

    Sparse and dense forms of the same operator compare equal. The bare
    token ``"I"`` is accepted as the identity on ``n_qubits`` qubits.

    Raises:
        ValueError: on invalid characters, qubit indices >= ``n_qubits``,
            duplicate indices in sparse form, or a dense string whose
            length differs from ``n_qubits``.
    """
    if n_qubits < 1:
        raise ValueError("n_qubits must be positive")
    text = text.strip()
    if not text:
        raise ValueError("empty Pauli label")

    sparse = any(ch.isdigit() for ch in text) or " " in text
    if not sparse:
        if text == "I" and n_qubits > 1:
            return PauliString("I" * n_qubits)
        if len(text) != n_qubits:
            raise ValueError(
                f"dense Pauli label {text!r} has length {len(text)}, expected {n_qubits}"
            )
        return PauliString(text)

    axes = ["I"] * n_qubits
    seen: set[int] = set()
    for token in text.split():
        m = _SPARSE_TOKEN.match(token)
        if m is None:
            raise ValueError(f"invalid sparse Pauli token {token!r}")
        ax, q = m.group(1), int(m.group(2))
        if q >= n_qubits:
            raise ValueError(f"qubit index {q} out of range for {n_qubits} qubits")
        if q in seen:
            raise ValueError(f"duplicate qubit index {q} in sparse Pauli label")
        seen.add(q)
        axes[q] = ax
    return PauliString("".join(axes))


@dataclass
class ParametricHamiltonian:
    """An ordered list of (coefficient, Pauli string) terms on ``n_qubits``.

    The coefficient vector is the optimization variable; the Pauli strings
    and their order are fixed at construction. Duplicate strings are kept
    as distinct terms with their own coefficients.
    """

    paulis: tuple[PauliString, ...]
    coefficients: np.ndarray = field(repr=False)
    n_qubits: int = 0

    def __post_init__(self):
        self.paulis = tuple(self.paulis)
        if not self.paulis:
            raise ValueError("Hamiltonian must have at least one term")
        if self.n_qubits == 0:
            self.n_qubits = self.paulis[0].n_qubits
        for p in self.paulis:
            if p.n_qubits != self.n_qubits:
                raise ValueError(
                    f"term {p} acts on {p.n_qubits} qubits, expected {self.n_qubits}"
                )
        coeffs = np.asarray(self.coefficients, dtype=np.float64)
        if coeffs.shape != (len(self.paulis),):
            raise ValueError(
                f"coefficient vector has shape {coeffs.shape}, "
                f"expected ({len(self.paulis)},)"
            )
        self.coefficients = coeffs.copy()

    @classmethod
    def from_terms(
        cls, terms: list[tuple[float, PauliString]], n_qubits: int = 0
    ) -> "ParametricHamiltonian":
        coeffs = np.array([c for c, _ in terms], dtype=np.float64)
        paulis = tuple(p for _, p in terms)
        return cls(paulis, coeffs, n_qubits)

    @property
    def n_terms(self) -> int:
        return len(self.paulis)

    def terms(self):
        """Iterate over (coefficient, PauliString) pairs in term order."""
        return zip(self.coefficients.tolist(), self.paulis)

    def set_coefficients(self, theta) -> None:
        """Overwrite the coefficient vector (copied; exact readback)."""
        theta = np.asarray(theta, dtype=np.float64)
        if theta.shape != (self.n_terms,):
            raise ValueError(
                f"expected {self.n_terms} coefficients, got shape {theta.shape}"
            )
        self.coefficients = theta.copy()

    def copy(self) -> "ParametricHamiltonian":
        return ParametricHamiltonian(self.paulis, self.coefficients.copy(), self.n_qubits)


def _two_site(ax: str, i: int, j: int, n: int) -> PauliString:
    axes = ["I"] * n
    axes[i] = ax
    axes[j] = ax
    return PauliString("".join(axes))


def _single_site(ax: str, i: int, n: int) -> PauliString:
    axes = ["I"] * n
    axes[i] = ax
    return PauliString("".join(axes))


def build_bas_ansatz(n_qubits: int) -> ParametricHamiltonian:
    """Ring ansatz with XX, YY, ZZ couplings plus single-qubit Z terms.

    Term order is fixed: the XX ring (j = 0..n-1, sites j and j+1 mod n),
    then the YY ring, the ZZ ring, and finally the Z singles. 4n terms,
    all coefficients zero until an initialization policy fills them. On a
    2-qubit ring the j = 0 and j = 1 couplings act on the same pair and
    are kept as separate terms.
    """
    if n_qubits < 2:
        raise ValueError("ring ansatz needs at least 2 qubits")
    n = n_qubits
    paulis: list[PauliString] = []
    for ax in ("X", "Y", "Z"):
        for j in range(n):
            paulis.append(_two_site(ax, j, (j + 1) % n, n))
    for j in range(n):
        paulis.append(_single_site("Z", j, n))
    return ParametricHamiltonian(tuple(paulis), np.zeros(len(paulis)), n)


def build_parent_ansatz(n_qubits: int) -> ParametricHamiltonian:
    """Parent-Hamiltonian ansatz: ZZ ring, ZXZ ring, single-qubit X terms.

    Term j of the ZXZ ring acts on qubits (j-1 mod n, j, j+1 mod n). Term
    order is fixed as (ZZ ring, ZXZ ring, X singles), 3n terms total. The
    family contains the ferromagnetic ZZ ring whose Gibbs state is a
    standard learning target.
    """
    if n_qubits < 3:
        raise ValueError("ZXZ terms need at least 3 qubits")
    n = n_qubits
    paulis: list[PauliString] = []
    for j in range(n):
        paulis.append(_two_site("Z", j, (j + 1) % n, n))
    for j in range(n):
        axes = ["I"] * n
        axes[(j - 1) % n] = "Z"
        axes[j] = "X"
        axes[(j + 1) % n] = "Z"
        paulis.append(PauliString("".join(axes)))
    for j in range(n):
        paulis.append(_single_site("X", j, n))
    return ParametricHamiltonian(tuple(paulis), np.zeros(len(paulis)), n)


ANSATZ_BUILDERS = {
    "bas-ring": build_bas_ansatz,
    "parent": build_parent_ansatz,
}


def hamiltonian_to_text(h: ParametricHamiltonian) -> str:
    """Render one term per line as ``"<coefficient> <sparse-pauli>"``.

    A ``# qubits: N`` header makes the file self-describing, since sparse
    labels alone do not pin the qubit count.
    """
    lines = [f"# qubits: {h.n_qubits}"]
    for coeff, pauli in h.terms():
        lines.append(f"{coeff!r} {pauli.sparse_label()}")
    return "\n".join(lines) + "\n"


def hamiltonian_from_text(text: str, n_qubits: int | None = None) -> ParametricHamiltonian:
    """Parse the textual Hamiltonian format written by :func:`hamiltonian_to_text`.

    ``n_qubits`` may be omitted when the text carries the ``# qubits:``
    header. Blank lines and other ``#`` comments are ignored.
    """
    terms: list[tuple[float, str]] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.search(r"qubits\s*:\s*([0-9]+)", line)
            if m and n_qubits is None:
                n_qubits = int(m.group(1))
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise ValueError(f"malformed Hamiltonian line {line!r}")
        terms.append((float(parts[0]), parts[1]))
    if not terms:
        raise ValueError("no Hamiltonian terms found")
    if n_qubits is None:
        raise ValueError("qubit count unknown: pass n_qubits or include a '# qubits:' header")
    pairs = [(c, parse_pauli_string(label, n_qubits)) for c, label in terms]
    return ParametricHamiltonian.from_terms(pairs, n_qubits)
