"""Matrix models of the eight Real graded elementary algebra types.

A model is a *-subalgebra of M_N(C), given by a homogeneous spanning set,
with a grading operator Gamma (x has degree 1 iff Gamma x Gamma = -x) and a
Real structure sigma(x) = W conj(x) W^-1.  Odd models are core (x) Cl1,
realised on C^n (x) C^2 with odd generator e = 1 (x) Z and Gamma = gamma (x) X.

``classify_type`` works only from (algebra, Gamma, W): it finds an
irreducible module, solves for the conjugate-linear intertwiner J = U o bar
and reads the signs of J^2 and of J against the grading.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

TOL = 1e-6
SIGN_FLOOR = 0.5
MAX_DIM = 16

# descriptor (parity, first, sign) -> p
TABLE: Dict[Tuple[int, int, int], int] = {
    (0, 0, +1): 0, (1, 0, +1): 1, (0, 1, +1): 2, (1, 1, -1): 3,
    (0, 0, -1): 4, (1, 0, -1): 5, (0, 1, -1): 6, (1, 1, +1): 7,
}
DESCRIPTOR = {p: d for d, p in TABLE.items()}


class ModelError(ValueError):
    """Model data that is not an elementary Real graded algebra."""


@dataclass(frozen=True)
class TypeIndex:
    p: int
    parity: int
    first: int      # epsilon (even) or i (odd)
    sign: int       # eta (even) or epsilon (odd)

    @classmethod
    def from_descriptor(cls, parity: int, first: int, sign: int) -> "TypeIndex":
        return cls(TABLE[(parity, first, sign)], parity, first, sign)

    @classmethod
    def of(cls, p: int) -> "TypeIndex":
        return cls(p % 8, *DESCRIPTOR[p % 8])

    def __str__(self) -> str:
        return f"K{self.p} = [{self.parity};{self.first},{'+' if self.sign > 0 else '-'}]"


@dataclass
class GradedRealAlgebraModel:
    basis: List[np.ndarray]     # homogeneous spanning set of the algebra
    degrees: List[int]
    grading: np.ndarray         # Gamma
    U: np.ndarray               # W, with sigma(x) = W conj(x) W^-1
    parity: int
    label: str = ""

    @property
    def dim(self) -> int:
        return self.grading.shape[0]

    def sigma(self, x: np.ndarray) -> np.ndarray:
        return self.U @ x.conj() @ np.linalg.inv(self.U)

    def alpha(self, x: np.ndarray) -> np.ndarray:
        return self.grading @ x @ self.grading

    def check(self) -> None:
        """Verify grading, homogeneity of sigma and sigma^2 = id on the basis."""
        G = self.grading
        if not np.allclose(G @ G, np.eye(self.dim), atol=TOL):
            raise ModelError("grading operator does not square to 1")
        for x, d in zip(self.basis, self.degrees):
            if not np.allclose(self.alpha(x), (-1) ** d * x, atol=TOL):
                raise ModelError("basis element is not homogeneous of its degree")
            s = self.sigma(x)
            if not np.allclose(self.alpha(s), (-1) ** d * s, atol=TOL):
                raise ModelError("Real structure does not preserve the grading")
            if not np.allclose(self.sigma(s), x, atol=TOL):
                raise ModelError("Real structure is not involutive")


# reference models ---------------------------------------------------------

_J = np.array([[0, -1], [1, 0]], dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.diag([1, -1]).astype(complex)
_I2 = np.eye(2, dtype=complex)


def _full_algebra(gamma_diag: Sequence[int]):
    n = len(gamma_diag)
    basis, degrees = [], []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1
            basis.append(E)
            degrees.append(int(gamma_diag[i] != gamma_diag[j]))
    return basis, degrees


def even_model(gamma_diag: Sequence[int], U: np.ndarray, label: str = "") -> GradedRealAlgebraModel:
    basis, degrees = _full_algebra(gamma_diag)
    G = np.diag(gamma_diag).astype(complex)
    return GradedRealAlgebraModel(basis, degrees, G, np.asarray(U, dtype=complex), 0, label)


def odd_model(core_gamma: Sequence[int], core_U: np.ndarray, swap: int,
              label: str = "") -> GradedRealAlgebraModel:
    """core (x) Cl1; ``swap`` = 1 makes the Real structure send e to -e."""
    core, cdeg = _full_algebra(core_gamma)
    basis, degrees = [], []
    for x, d in zip(core, cdeg):
        basis.append(np.kron(x, _I2))
        degrees.append(d)
        basis.append(np.kron(x, _Z))
        degrees.append(1 - d)
    G = np.kron(np.diag(core_gamma).astype(complex), _X)
    W = np.kron(np.asarray(core_U, dtype=complex), _X if swap else _I2)
    return GradedRealAlgebraModel(basis, degrees, G, W, 1, label)


def reference_model(p: int) -> GradedRealAlgebraModel:
    """Minimal model of type p (mod 8)."""
    p %= 8
    label = f"K{p}"
    if p == 0:
        return even_model([1, -1], np.eye(2), label)
    if p == 2:
        return even_model([1, -1], _X, label)
    if p == 4:
        return even_model([1, 1, -1, -1], np.kron(_I2, _J), label)
    if p == 6:
        return even_model([1, 1, -1, -1], np.kron(_X, _J), label)
    core = {1: ([1], np.eye(1), 0), 5: ([1, 1], _J, 0),
            7: ([1], np.eye(1), 1), 3: ([1, 1], _J, 1)}[p]
    return odd_model(*core, label=label)


# graded tensor product ----------------------------------------------------

def graded_tensor(A: GradedRealAlgebraModel, B: GradedRealAlgebraModel,
                  max_dim: int = MAX_DIM) -> GradedRealAlgebraModel:
    """A (x)^ B realised by a (x)^ b -> a Gamma_A^deg(b) (x) b."""
    N = A.dim * B.dim
    if N > max_dim:
        raise ModelError(f"tensor space of dimension {N} exceeds the bound {max_dim}")
    basis, degrees = [], []
    for a, da in zip(A.basis, A.degrees):
        for b, db in zip(B.basis, B.degrees):
            left = a @ A.grading if db else a
            basis.append(np.kron(left, b))
            degrees.append((da + db) % 2)
    G = np.kron(A.grading, B.grading)
    # sigma_A(Gamma_A) = s Gamma_A; compensate the Koszul sign when s = -1
    s = _grading_sign(A)
    W = np.kron(A.U, B.U if s > 0 else B.grading @ B.U)
    return GradedRealAlgebraModel(basis, degrees, G, W, (A.parity + B.parity) % 2,
                                  f"{A.label}*{B.label}")


def _grading_sign(A: GradedRealAlgebraModel) -> int:
    S = A.U @ A.grading.conj() @ np.linalg.inv(A.U)
    if np.allclose(S, A.grading, atol=TOL):
        return 1
    if np.allclose(S, -A.grading, atol=TOL):
        return -1
    raise ModelError("Real structure does not map the grading operator to +-itself")


def conjugate_model(A: GradedRealAlgebraModel, V: np.ndarray) -> GradedRealAlgebraModel:
    """Transport a model along an even unitary V: x -> V x V*."""
    Vi = V.conj().T
    return GradedRealAlgebraModel([V @ x @ Vi for x in A.basis], list(A.degrees),
                                  V @ A.grading @ Vi, V @ A.U @ V.T, A.parity,
                                  A.label)


# classification -----------------------------------------------------------

def _nullspace(M: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the numerical nullspace of M."""
    if M.shape[0] == 0:
        return np.eye(M.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(M, full_matrices=M.shape[0] < M.shape[1])
    scale = max(1.0, s[0] if len(s) else 1.0)
    rank = int(np.sum(s > tol * scale))
    return vh[rank:].conj().T


def _range(vectors: np.ndarray, tol: float = TOL) -> np.ndarray:
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    scale = max(1.0, s[0] if len(s) else 1.0)
    return u[:, s > tol * scale]


def _orthonormal_algebra(basis: Sequence[np.ndarray]) -> List[np.ndarray]:
    N = basis[0].shape[0]
    flat = np.array([x.reshape(-1) for x in basis]).T
    Q = _range(flat)
    return [Q[:, i].reshape(N, N) for i in range(Q.shape[1])]


def _random_elements(basis: Sequence[np.ndarray], rng, count: int = 4) -> List[np.ndarray]:
    out = []
    for _ in range(count):
        c = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
        out.append(sum(ci * x for ci, x in zip(c, basis)))
    return out


def _center(basis: Sequence[np.ndarray], gens: Sequence[np.ndarray]) -> List[np.ndarray]:
    cols = []
    for x in basis:
        cols.append(np.concatenate([(x @ g - g @ x).reshape(-1) for g in gens]))
    null = _nullspace(np.array(cols).T)
    return [sum(c * x for c, x in zip(null[:, k], basis)) for k in range(null.shape[1])]


def _irreducible_module(basis, gens, rng, projection: Optional[np.ndarray] = None):
    """Orthonormal basis of A v for v in the range of a minimal projection."""
    x = gens[0]
    h = x + x.conj().T
    if projection is not None:
        Q1 = _range(projection)
        hb = Q1.conj().T @ h @ Q1
        _, vecs = np.linalg.eigh(hb)
        v = Q1 @ vecs[:, 0]
    else:
        _, vecs = np.linalg.eigh(h)
        v = vecs[:, 0]
    return _range(np.array([b @ v for b in basis]).T)


def _intertwiner(gens_V: Sequence[np.ndarray], targets_V: Sequence[np.ndarray]) -> np.ndarray:
    """The unique (up to scalar) U with U conj(a) = t(a) U for all generators."""
    k = gens_V[0].shape[0]
    I = np.eye(k)
    blocks = [np.kron(a.conj().T, I) - np.kron(I, t) for a, t in zip(gens_V, targets_V)]
    null = _nullspace(np.vstack(blocks))
    if null.shape[1] != 1:
        raise ModelError(f"expected a one-dimensional intertwiner space, got {null.shape[1]}")
    U = null[:, 0].reshape(k, k, order="F")
    return U * np.sqrt(k) / np.linalg.norm(U)


def _read_sign(value: complex, what: str) -> int:
    if abs(value.imag) > TOL or abs(value.real) < SIGN_FLOOR:
        raise ModelError(f"{what} is not a definite sign (value {value})")
    return 1 if value.real > 0 else -1


def _square_sign(U: np.ndarray) -> int:
    k = U.shape[0]
    S = U @ U.conj()
    lam = np.trace(S) / k
    if not np.allclose(S, lam * np.eye(k), atol=1e-5):
        raise ModelError("J^2 is not scalar")
    return _read_sign(lam, "J^2")


def _restrict(Q: np.ndarray, x: np.ndarray) -> np.ndarray:
    return Q.conj().T @ x @ Q


def classify_type(A: GradedRealAlgebraModel, seed: int = 0) -> TypeIndex:
    """Type index of a model, computed from its algebra, grading and W."""
    rng = np.random.default_rng(seed)
    basis = _orthonormal_algebra(A.basis)
    gens = _random_elements(basis, rng)
    center = _center(basis, gens[:2])
    if len(center) == 1:
        V = _irreducible_module(basis, gens, rng)
        if V.shape[1] ** 2 != len(basis):
            raise ModelError("algebra is not simple")
        gV = [_restrict(V, g) for g in gens]
        tV = [_restrict(V, A.sigma(g)) for g in gens]
        U = _intertwiner(gV, tV)
        # grading element on V: G a = alpha(a) G
        aV = [_restrict(V, A.alpha(g)) for g in gens]
        k = V.shape[1]
        I = np.eye(k)
        null = _nullspace(np.vstack([np.kron(a.T, I) - np.kron(I, t)
                                     for a, t in zip(gV, aV)]))
        if null.shape[1] != 1:
            raise ModelError("grading is not inner on the irreducible module")
        G = null[:, 0].reshape(k, k, order="F")
        G = G / np.sqrt(np.trace(G @ G) / k)
        R = U @ G.conj() @ np.linalg.inv(U)
        rel = np.trace(R @ np.linalg.inv(G)) / k
        eps = 0 if _read_sign(rel, "J g J^-1 / g") > 0 else 1
        return TypeIndex.from_descriptor(0, eps, _square_sign(U))
    if len(center) == 2:
        # central projections: the idempotents of the two-dimensional center
        traceless = [c - (np.trace(c) / A.dim) * np.eye(A.dim) for c in center]
        z = max(traceless, key=np.linalg.norm)
        ev = np.linalg.eigvals(z)
        lam = ev[np.argmax(np.abs(ev))]
        # z satisfies (z - a)(z - b) = 0 with a, b its two eigenvalues
        others = [e for e in ev if abs(e - lam) > 1e-4]
        if not others:
            raise ModelError("center does not split the algebra")
        mu = others[0]
        c1 = (z - mu * np.eye(A.dim)) / (lam - mu)
        c2 = np.eye(A.dim) - c1
        s1 = A.sigma(c1)
        if np.allclose(s1, c1, atol=1e-5):
            i, tau = 0, A.sigma
        elif np.allclose(s1, c2, atol=1e-5):
            i, tau = 1, (lambda x: A.alpha(A.sigma(x)))
        else:
            raise ModelError("Real structure does not permute the central projections")
        if not np.allclose(A.alpha(c1), c2, atol=1e-5):
            raise ModelError("grading does not swap the central projections")
        block = [c1 @ x @ c1 for x in basis]
        block = _orthonormal_algebra(block)
        bgens = _random_elements(block, rng)
        V = _irreducible_module(block, bgens, rng, projection=c1)
        if V.shape[1] ** 2 != len(block):
            raise ModelError("central block is not simple")
        gV = [_restrict(V, g) for g in bgens]
        tV = [_restrict(V, tau(g)) for g in bgens]
        U = _intertwiner(gV, tV)
        return TypeIndex.from_descriptor(1, i, _square_sign(U))
    raise ModelError(f"ungraded center has dimension {len(center)}; not elementary")


def type_table(seed: int = 0) -> List[List[int]]:
    """classify(ref(p) (x)^ ref(q)) for all p, q."""
    refs = [reference_model(p) for p in range(8)]
    return [[classify_type(graded_tensor(refs[p], refs[q]), seed).p for q in range(8)]
            for p in range(8)]


def random_even_unitary(A: GradedRealAlgebraModel, rng) -> np.ndarray:
    """Haar-like unitary commuting with the grading operator."""
    N = A.dim
    M = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    M = M + A.grading @ M @ A.grading     # even part
    w, V = np.linalg.eigh(A.grading)
    out = np.zeros((N, N), dtype=complex)
    for s in (-1, 1):
        idx = np.abs(w - s) < 0.5
        P = V[:, idx]
        if P.shape[1]:
            q, _ = np.linalg.qr(P.conj().T @ M @ P + np.eye(P.shape[1]))
            out += P @ q @ P.conj().T
    return out


# serialization -------------------------------------------------------------

def _enc(M: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M)]


def _dec(data) -> np.ndarray:
    try:
        return np.array([[complex(a, b) for a, b in row] for row in data], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ModelError(f"bad matrix encoding: {exc}") from None


def model_to_dict(A: GradedRealAlgebraModel) -> dict:
    return {"parity": A.parity, "label": A.label,
            "grading": _enc(A.grading), "U": _enc(A.U),
            "algebra": [{"degree": d, "matrix": _enc(x)} for x, d in zip(A.basis, A.degrees)]}


def model_from_dict(data: dict) -> GradedRealAlgebraModel:
    """Read a model; ``algebra`` may be "full" for the full matrix algebra."""
    try:
        G = _dec(data["grading"])
        U = _dec(data["U"])
        alg = data.get("algebra", "full")
    except KeyError as exc:
        raise ModelError(f"model is missing field {exc}") from None
    N = G.shape[0]
    if G.shape != (N, N) or U.shape != (N, N):
        raise ModelError("grading and U must be square of the same size")
    if N > MAX_DIM:
        raise ModelError(f"model dimension {N} exceeds the bound {MAX_DIM}")
    if alg == "full":
        diag = np.real(np.diag(G))
        if not np.allclose(G, np.diag(diag), atol=TOL):
            raise ModelError("the full algebra needs a diagonal grading")
        basis, degrees = _full_algebra([int(round(x)) for x in diag])
    else:
        basis = [_dec(e["matrix"]) for e in alg]
        degrees = [int(e["degree"]) for e in alg]
    A = GradedRealAlgebraModel(basis, degrees, G, U, int(data.get("parity", 0)),
                               data.get("label", ""))
    A.check()
    return A


def dumps_model(A: GradedRealAlgebraModel) -> str:
    return json.dumps(model_to_dict(A), sort_keys=True)
