"""Levi-Civita and semi-symmetric non-metric connections on a frame geometry.

Coefficients follow the convention nabla_{e_i} e_j = Gamma^k_ij e_k: the
first lower index is the differentiation direction. Under homogeneity the
metric-derivative terms of the Koszul formula vanish, leaving the three
bracket terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import SscurvError, ValenceError
from .geometry import DistinguishedField, FrameAlgebra, MetricFrame
from .rat import ZERO, rat
from .tensor import DOWN, UP, Tensor


class ConnectionKind(enum.Enum):
    LEVI_CIVITA = "levi-civita"
    SSNMC = "ssnmc"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Connection:
    gamma: Tensor  # (UP, DOWN, DOWN), gamma[k, i, j] = Gamma^k_ij
    kind: ConnectionKind

    def __post_init__(self):
        if self.gamma.variance != (UP, DOWN, DOWN):
            raise ValenceError("connection coefficients must form a (1,2) tensor")

    @property
    def dim(self) -> int:
        return self.gamma.dim


def levi_civita(frame: FrameAlgebra, metric: MetricFrame) -> Connection:
    """Koszul formula, constant-frame case.

    2 g(nabla_{e_i} e_j, e_k) = -g(e_i,[e_j,e_k]) - g(e_j,[e_i,e_k]) + g(e_k,[e_i,e_j])
    """
    n = frame.dim
    c, g, g_inv = frame.c, metric.g, metric.g_inv
    half = rat(1, 2)
    comps = []
    # koszul[i][j][k] = 2 g(nabla_i e_j, e_k)
    koszul = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                total = ZERO
                for m in range(n):
                    total = total + (-g[i, m] * c[m, j, k]
                                     - g[j, m] * c[m, i, k]
                                     + g[k, m] * c[m, i, j])
                koszul[i][j][k] = total
    for l in range(n):
        for i in range(n):
            for j in range(n):
                total = ZERO
                for k in range(n):
                    total = total + koszul[i][j][k] * g_inv[k, l]
                comps.append(half * total)
    conn = Connection(Tensor((UP, DOWN, DOWN), n, comps), ConnectionKind.LEVI_CIVITA)
    _check_levi_civita(conn, frame, metric)
    return conn


def _check_levi_civita(conn: Connection, frame: FrameAlgebra, metric: MetricFrame):
    # Construction-time invariants: torsion-free and metric.
    if not torsion(conn, frame).is_zero():
        raise SscurvError("Levi-Civita construction produced torsion")
    if not non_metricity(conn, metric).is_zero():
        raise SscurvError("Levi-Civita construction is not metric")


def ssnmc(lc: Connection, dist: DistinguishedField) -> Connection:
    """Gammahat^k_ij = Gamma^k_ij + psi_j delta^k_i."""
    if lc.kind is not ConnectionKind.LEVI_CIVITA:
        raise SscurvError("the semi-symmetric non-metric connection extends Levi-Civita")
    psi = dist.psi
    gamma = Tensor.build(
        (UP, DOWN, DOWN), lc.dim,
        lambda k, i, j: lc.gamma[k, i, j] + (psi[j] if k == i else ZERO))
    return Connection(gamma, ConnectionKind.SSNMC)


def torsion(conn: Connection, frame: FrameAlgebra) -> Tensor:
    """T^k_ij = Gamma^k_ij - Gamma^k_ji - C^k_ij."""
    g, c = conn.gamma, frame.c
    return Tensor.build((UP, DOWN, DOWN), conn.dim,
                        lambda k, i, j: g[k, i, j] - g[k, j, i] - c[k, i, j])


def is_semi_symmetric(t: Tensor, dist: DistinguishedField) -> bool:
    """True iff T^k_ij = psi_j delta^k_i - psi_i delta^k_j componentwise."""
    return t == semi_symmetric_torsion(dist)


def semi_symmetric_torsion(dist: DistinguishedField) -> Tensor:
    """The torsion shape psi(V)U - psi(U)V as a (1,2) tensor."""
    psi = dist.psi
    n = psi.dim
    return Tensor.build(
        (UP, DOWN, DOWN), n,
        lambda k, i, j: (psi[j] if k == i else ZERO) - (psi[i] if k == j else ZERO))


def non_metricity(conn: Connection, metric: MetricFrame) -> Tensor:
    """(nabla_{e_i} g)(e_j, e_k) = -Gamma^m_ij g_mk - Gamma^m_ik g_jm."""
    gam, g = conn.gamma, metric.g
    n = conn.dim

    def entry(i, j, k):
        total = ZERO
        for m in range(n):
            total = total - gam[m, i, j] * g[m, k] - gam[m, i, k] * g[j, m]
        return total

    return Tensor.build((DOWN, DOWN, DOWN), n, entry)


def is_parallel(lc: Connection, dist: DistinguishedField) -> bool:
    """True iff nabla_{e_i} xi = 0 for every i, i.e. Gamma^k_ij xi^j = 0."""
    xi = dist.xi
    n = lc.dim
    for k in range(n):
        for i in range(n):
            total = ZERO
            for j in range(n):
                total = total + lc.gamma[k, i, j] * xi[j]
            if total != 0:
                return False
    return True


def alpha_star(lc: Connection, dist: DistinguishedField) -> Tensor:
    """alpha*(e_i, e_j) = (nabla_{e_i} psi)(e_j) - psi_i psi_j.

    With constant psi components, (nabla_{e_i} psi)(e_j) = -psi(nabla_{e_i} e_j).
    """
    if lc.kind is not ConnectionKind.LEVI_CIVITA:
        raise SscurvError("alpha* is defined through the Levi-Civita connection")
    psi = dist.psi
    n = lc.dim

    def entry(i, j):
        total = -psi[i] * psi[j]
        for m in range(n):
            total = total - psi[m] * lc.gamma[m, i, j]
        return total

    return Tensor.build((DOWN, DOWN), n, entry)
