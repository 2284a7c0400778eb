"""Curvature of a frame connection and the derived tensors.

Slot convention for the (1,3) curvature tensor: R[l, k, i, j] is the l-th
component of R(e_i, e_j) e_k, so the value slot comes first, then the
argument Y, then the pair (U, V). With constant coefficients

    R(e_i, e_j) e_k = (Gamma^m_jk Gamma^l_im - Gamma^m_ik Gamma^l_jm
                       - C^m_ij Gamma^l_mk) e_l.

The Ricci convention is S(V, Y) = trace of U -> R(U, V) Y; hatted
quantities are always contracted from their own curvature tensor, never
substituted from a cross-relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .connection import Connection, ConnectionKind
from .errors import DegeneratePlaneError, UnsupportedDimensionError, ValenceError
from .geometry import FrameAlgebra, MetricFrame
from .rat import ZERO, Rat, rat
from .tensor import DOWN, UP, Tensor


@dataclass(frozen=True)
class CurvatureBundle:
    riemann: Tensor    # (UP, DOWN, DOWN, DOWN): R[l, k, i, j]
    ricci: Tensor      # (DOWN, DOWN): ricci[a, b] = S(e_a, e_b)
    scalar: Rat
    ricci_op: Tensor   # (UP, DOWN): ricci_op[l, a] = (Q e_a)^l, g(QU, V) = S(U, V)
    source: ConnectionKind

    @property
    def dim(self) -> int:
        return self.riemann.dim


def curvature(conn: Connection, frame: FrameAlgebra, metric: MetricFrame) -> CurvatureBundle:
    """Full curvature bundle of a connection on the frame geometry."""
    n = conn.dim
    gam = conn.gamma
    c = frame.c
    g_inv = metric.g_inv

    riemann = []
    for l in range(n):
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    total = ZERO
                    for m in range(n):
                        total = total + (gam[m, j, k] * gam[l, i, m]
                                         - gam[m, i, k] * gam[l, j, m]
                                         - c[m, i, j] * gam[l, m, k])
                    riemann.append(total)
    r = Tensor((UP, DOWN, DOWN, DOWN), n, riemann)

    ricci = Tensor.build((DOWN, DOWN), n,
                         lambda a, b: sum((r[i, b, i, a] for i in range(n)), ZERO))

    scalar = ZERO
    for a in range(n):
        for b in range(n):
            scalar = scalar + g_inv[a, b] * ricci[a, b]

    ricci_op = Tensor.build((UP, DOWN), n,
                            lambda l, a: sum((ricci[a, b] * g_inv[b, l] for b in range(n)), ZERO))

    return CurvatureBundle(r, ricci, scalar, ricci_op, conn.kind)


def sectional(bundle: CurvatureBundle, metric: MetricFrame, u: Tensor, v: Tensor) -> Rat:
    """kappa(u, v) = g(R(u,v)v, u) / (g(u,u) g(v,v) - g(u,v)^2)."""
    if u.variance != (UP,) or v.variance != (UP,):
        raise ValenceError("sectional curvature takes two vectors")
    denom = metric.inner(u, u) * metric.inner(v, v) - metric.inner(u, v) ** 2
    if denom == 0:
        raise DegeneratePlaneError("u and v do not span a nondegenerate plane")
    n = bundle.dim
    r, g = bundle.riemann, metric.g
    num = ZERO
    for l in range(n):
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    for m in range(n):
                        num = num + g[l, m] * r[l, k, i, j] * v[k] * u[i] * v[j] * u[m]
    return num / denom


def constant_sectional(bundle: CurvatureBundle, metric: MetricFrame) -> Optional[Rat]:
    """kappa if R^l_kij = kappa (g_jk delta^l_i - g_ik delta^l_j), else None."""
    n = bundle.dim
    g = metric.g
    basis = Tensor.build(
        (UP, DOWN, DOWN, DOWN), n,
        lambda l, k, i, j: (g[j, k] if l == i else ZERO) - (g[i, k] if l == j else ZERO))
    kappa = ZERO
    for br, rr in zip(basis.comps, bundle.riemann.comps):
        if br != 0:
            kappa = rr / br
            break
    if bundle.riemann == basis.scale(kappa):
        return kappa
    return None


def _require_dim3(bundle: CurvatureBundle):
    if bundle.dim != 3:
        raise UnsupportedDimensionError(
            f"defined with the dim-3 coefficients only, got dim {bundle.dim}")


def projective(bundle: CurvatureBundle) -> Tensor:
    """P = R - (1/2)[S(V,Y) U - S(U,Y) V]."""
    _require_dim3(bundle)
    r, s = bundle.riemann, bundle.ricci
    half = rat(1, 2)

    def entry(l, k, i, j):
        corr = (s[j, k] if l == i else ZERO) - (s[i, k] if l == j else ZERO)
        return r[l, k, i, j] - half * corr

    return Tensor.build((UP, DOWN, DOWN, DOWN), bundle.dim, entry)


def conformal(bundle: CurvatureBundle, metric: MetricFrame) -> Tensor:
    """C = R - [S(V,Y)U - S(U,Y)V + g(V,Y)QU - g(U,Y)QV] + (r/2)[g(V,Y)U - g(U,Y)V].

    For a Levi-Civita bundle in dimension 3 this vanishes identically.
    """
    _require_dim3(bundle)
    r, s, q = bundle.riemann, bundle.ricci, bundle.ricci_op
    g = metric.g
    half_r = bundle.scalar * rat(1, 2)

    def entry(l, k, i, j):
        corr = ((s[j, k] if l == i else ZERO) - (s[i, k] if l == j else ZERO)
                + g[j, k] * q[l, i] - g[i, k] * q[l, j])
        vol = (g[j, k] if l == i else ZERO) - (g[i, k] if l == j else ZERO)
        return r[l, k, i, j] - corr + half_r * vol

    return Tensor.build((UP, DOWN, DOWN, DOWN), bundle.dim, entry)
