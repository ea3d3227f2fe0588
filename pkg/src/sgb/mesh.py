"""Triangulated surfaces in S^3 in R^4: icosphere and product-torus
generators, manifold validation, cotangent stiffness / lumped mass assembly,
curvature and rolling-radius estimators, and a plain-text exchange format.

Triangle geometry is taken intrinsically from chordal R^4 edge lengths
(Heron areas, law-of-cosines angles); the O(h^2) error this makes against
geodesic lengths vanishes under refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import sparse

from .errors import (
    DomainError,
    FitError,
    GeometryError,
    OrientationError,
    ValidationError,
)

UNIT_TOL = 1e-12
MIN_ANGLE = 1e-6

INNER = "inner"
OUTER = "outer"


def _cross4(u: np.ndarray, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Generalized cross product in R^4: orthogonal to each of u, v, w.

    Arguments are stacked row vectors of shape (N, 4); the result is the
    cofactor expansion of det([e; u; v; w]) along the basis row e.
    """

    def minor(c0, c1, c2):
        a = np.stack([u[:, c0], u[:, c1], u[:, c2]], axis=1)
        b = np.stack([v[:, c0], v[:, c1], v[:, c2]], axis=1)
        c = np.stack([w[:, c0], w[:, c1], w[:, c2]], axis=1)
        return np.einsum("ij,ij->i", a, np.cross(b, c))

    return np.stack(
        [minor(1, 2, 3), -minor(0, 2, 3), minor(0, 1, 3), -minor(0, 1, 2)],
        axis=1,
    )


def _triangle_geometry(verts: np.ndarray, tris: np.ndarray):
    """Heron areas and per-corner cotangents from chordal edge lengths."""
    # L[:, c] is the length of the edge opposite corner c
    L = np.stack(
        [
            np.linalg.norm(verts[tris[:, (c + 1) % 3]] - verts[tris[:, (c + 2) % 3]], axis=1)
            for c in range(3)
        ],
        axis=1,
    )
    a, b, c = L[:, 0], L[:, 1], L[:, 2]
    s = 0.5 * (a + b + c)
    area_sq = s * (s - a) * (s - b) * (s - c)
    if np.any(area_sq <= 0.0):
        raise GeometryError("triangle with non-positive Heron area")
    area = np.sqrt(area_sq)
    cots = np.stack(
        [
            b * b + c * c - a * a,
            c * c + a * a - b * b,
            a * a + b * b - c * c,
        ],
        axis=1,
    ) / (4.0 * area[:, None])
    return L, area, cots


@dataclass(frozen=True, eq=False)
class TriMesh:
    """Closed oriented triangulated surface with all vertices on S^3.

    Invariants checked at construction: unit vertices (to 1e-12), every
    directed edge used exactly once with its reverse also present (closed,
    consistently oriented 2-manifold), and all triangle angles above 1e-6
    radians.
    """

    vertices: np.ndarray
    triangles: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.vertices, dtype=float))
        t = np.ascontiguousarray(np.asarray(self.triangles, dtype=np.int64))
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)
        if v.ndim != 2 or v.shape[1] != 4 or v.shape[0] < 4:
            raise ValidationError(f"vertices must be (V, 4) with V >= 4, got {v.shape}")
        if t.ndim != 2 or t.shape[1] != 3 or t.shape[0] < 4:
            raise ValidationError(f"triangles must be (F, 3) with F >= 4, got {t.shape}")
        if t.min() < 0 or t.max() >= v.shape[0]:
            raise ValidationError("triangle index out of range")

        err = np.abs(np.linalg.norm(v, axis=1) - 1.0).max()
        if err > UNIT_TOL:
            raise ValidationError(f"vertex off S^3 by {err:.3e} (tol {UNIT_TOL})")

        if (
            np.any(t[:, 0] == t[:, 1])
            or np.any(t[:, 1] == t[:, 2])
            or np.any(t[:, 2] == t[:, 0])
        ):
            raise ValidationError("triangle with repeated vertex")

        # Closed oriented manifold: every directed edge once, reverse present.
        V = v.shape[0]
        src = np.concatenate([t[:, 0], t[:, 1], t[:, 2]])
        dst = np.concatenate([t[:, 1], t[:, 2], t[:, 0]])
        keys = src.astype(np.int64) * V + dst
        uniq, counts = np.unique(keys, return_counts=True)
        if uniq.size != keys.size or np.any(counts != 1):
            raise ValidationError("directed edge reused: mesh not consistently oriented")
        rev = dst.astype(np.int64) * V + src
        if not np.array_equal(np.sort(rev), uniq):
            raise ValidationError("boundary edge found: mesh not closed")

        L, _, _ = _triangle_geometry(v, t)
        a, b, c = L[:, 0], L[:, 1], L[:, 2]
        cos_angles = np.stack(
            [
                (b * b + c * c - a * a) / (2 * b * c),
                (c * c + a * a - b * b) / (2 * c * a),
                (a * a + b * b - c * c) / (2 * a * b),
            ],
            axis=1,
        )
        min_angle = np.arccos(np.clip(cos_angles, -1.0, 1.0)).min()
        if min_angle <= MIN_ANGLE:
            raise ValidationError(f"degenerate triangle: min angle {min_angle:.3e} rad")

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def num_triangles(self) -> int:
        return self.triangles.shape[0]

    @property
    def num_edges(self) -> int:
        return 3 * self.num_triangles // 2

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_triangles

    @cached_property
    def one_ring(self):
        """(counts, offsets, neighbors): ring sizes and flattened one-rings.

        Neighbors of vertex i occupy neighbors[offsets[i]:offsets[i]+counts[i]].
        """
        t = self.triangles
        src = np.concatenate([t[:, 0], t[:, 1], t[:, 2]])
        dst = np.concatenate([t[:, 1], t[:, 2], t[:, 0]])
        order = np.lexsort((dst, src))
        counts = np.bincount(src, minlength=self.num_vertices)
        offsets = np.concatenate([[0], np.cumsum(counts)[:-1]])
        return counts, offsets, dst[order]

    @cached_property
    def max_edge_length(self) -> float:
        """Longest edge, measured as a great-circle arc on S^3."""
        t = self.triangles
        v = self.vertices
        chord = max(
            np.linalg.norm(v[t[:, (c + 1) % 3]] - v[t[:, (c + 2) % 3]], axis=1).max()
            for c in range(3)
        )
        return 2.0 * math.asin(min(chord / 2.0, 1.0))


@dataclass(frozen=True, eq=False)
class SparseSym:
    """Symmetric sparse operator (CSR)."""

    matrix: sparse.csr_matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class DiagMass:
    """Positive diagonal mass weights (lumped vertex areas)."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "weights", w)
        if w.ndim != 1 or np.any(w <= 0):
            raise ValidationError("mass weights must be a positive 1-D array")

    @property
    def dim(self) -> int:
        return self.weights.shape[0]


# ---------------------------------------------------------------------------
# generators

_ICO_R = (1.0 + math.sqrt(5.0)) / 2.0

_ICO_VERTS = np.array(
    [
        [-1.0, _ICO_R, 0.0],
        [1.0, _ICO_R, 0.0],
        [-1.0, -_ICO_R, 0.0],
        [1.0, -_ICO_R, 0.0],
        [0.0, -1.0, _ICO_R],
        [0.0, 1.0, _ICO_R],
        [0.0, -1.0, -_ICO_R],
        [0.0, 1.0, -_ICO_R],
        [_ICO_R, 0.0, -1.0],
        [_ICO_R, 0.0, 1.0],
        [-_ICO_R, 0.0, -1.0],
        [-_ICO_R, 0.0, 1.0],
    ]
)

_ICO_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (5, 4, 9), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def _icosphere(level: int):
    """Unit 2-sphere icosphere: 10*4^level + 2 vertices, 20*4^level faces."""
    verts = [tuple(row / np.linalg.norm(row)) for row in _ICO_VERTS]
    faces = list(_ICO_FACES)
    for _ in range(level):
        midpoint: dict[tuple[int, int], int] = {}

        def mid(i, j):
            key = (i, j) if i < j else (j, i)
            if key not in midpoint:
                p = np.array(verts[i]) + np.array(verts[j])
                p /= np.linalg.norm(p)
                midpoint[key] = len(verts)
                verts.append(tuple(p))
            return midpoint[key]

        new_faces = []
        for i, j, k in faces:
            a, b, c = mid(i, j), mid(j, k), mid(k, i)
            new_faces += [(i, a, c), (j, b, a), (k, c, b), (a, b, c)]
        faces = new_faces
    return np.array(verts), np.array(faces, dtype=np.int64)


def _orient_toward(verts: np.ndarray, tris: np.ndarray, inner_dirs: np.ndarray) -> np.ndarray:
    """Flip all windings if the triangle normals point away from inner_dirs."""
    p = verts[tris[:, 0]]
    n = _cross4(p, verts[tris[:, 1]] - p, verts[tris[:, 2]] - p)
    score = float(np.einsum("ij,ij->i", n, inner_dirs[tris[:, 0]]).sum())
    if score == 0.0:
        raise OrientationError("cannot calibrate mesh orientation")
    if score < 0.0:
        tris = tris[:, [0, 2, 1]]
    return tris


def mesh_geodesic_sphere(rho0: float, level: int) -> TriMesh:
    """Icosphere at latitude rho0: vertices (sin(rho0) w, cos(rho0)) with w on
    the unit 2-sphere.  Normals are oriented toward the inner side (the ball
    center at distance rho0)."""
    if not 0.0 < rho0 <= math.pi / 2:
        raise DomainError(f"rho0 must lie in (0, pi/2], got {rho0}")
    if int(level) != level or not 0 <= level <= 7:
        raise DomainError(f"level must be an integer in [0, 7], got {level}")
    omega, faces = _icosphere(int(level))
    s, c = math.sin(rho0), math.cos(rho0)
    verts = np.empty((omega.shape[0], 4))
    verts[:, :3] = s * omega
    verts[:, 3] = c
    inner = np.empty_like(verts)
    inner[:, :3] = -c * omega
    inner[:, 3] = s
    faces = _orient_toward(verts, faces, inner)
    return TriMesh(vertices=verts, triangles=faces)


def mesh_product_torus(a: float, Nu: int, Nv: int) -> TriMesh:
    """Product torus grid (a cos u, a sin u, b cos v, b sin v) with each quad
    split along a parity-fixed diagonal.  Normals are oriented toward the
    inner side (the radius-a core circle, at focal distance arccos(a))."""
    if not 0.0 < a < 1.0:
        raise DomainError(f"a must lie in (0, 1), got {a}")
    if Nu < 8 or Nv < 8 or int(Nu) != Nu or int(Nv) != Nv:
        raise DomainError(f"Nu, Nv must be integers >= 8, got {Nu}, {Nv}")
    Nu, Nv = int(Nu), int(Nv)
    b = math.sqrt(1.0 - a * a)
    u = 2.0 * math.pi * np.arange(Nu) / Nu
    v = 2.0 * math.pi * np.arange(Nv) / Nv
    uu, vv = np.meshgrid(u, v, indexing="ij")
    verts = np.stack(
        [a * np.cos(uu), a * np.sin(uu), b * np.cos(vv), b * np.sin(vv)], axis=-1
    ).reshape(-1, 4)

    # Same diagonal in every quad: keeps the vertex valence uniform at 6,
    # which the one-ring curvature fit needs (a parity-alternating diagonal
    # would leave half the vertices with only 4 neighbors).
    idx = lambda i, j: (i % Nu) * Nv + (j % Nv)
    tris = np.empty((2 * Nu * Nv, 3), dtype=np.int64)
    f = 0
    for i in range(Nu):
        for j in range(Nv):
            A, B = idx(i, j), idx(i + 1, j)
            C, D = idx(i + 1, j + 1), idx(i, j + 1)
            tris[f] = (A, B, C)
            tris[f + 1] = (A, C, D)
            f += 2

    inner = np.stack(
        [b * np.cos(uu), b * np.sin(uu), -a * np.cos(vv), -a * np.sin(vv)], axis=-1
    ).reshape(-1, 4)
    tris = _orient_toward(verts, tris, inner)
    return TriMesh(vertices=verts, triangles=tris)


# ---------------------------------------------------------------------------
# operators

def cotan_stiffness(mesh: TriMesh) -> SparseSym:
    """Cotangent stiffness: off-diagonal -(cot(alpha) + cot(beta))/2 per edge,
    diagonal the negated row sum.  Positive semidefinite with the constants in
    its kernel."""
    t = mesh.triangles
    _, _, cots = _triangle_geometry(mesh.vertices, t)
    V = mesh.num_vertices
    rows, cols, vals = [], [], []
    for c in range(3):
        i = t[:, (c + 1) % 3]
        j = t[:, (c + 2) % 3]
        w = 0.5 * cots[:, c]
        rows += [i, j]
        cols += [j, i]
        vals += [-w, -w]
    W = sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(V, V),
    ).tocsr()
    d = -np.asarray(W.sum(axis=1)).ravel()
    L = (W + sparse.diags(d)).tocsr()
    return SparseSym(matrix=L)


def lumped_mass(mesh: TriMesh) -> DiagMass:
    """Barycentric lumping: one third of the incident triangle areas per vertex."""
    _, area, _ = _triangle_geometry(mesh.vertices, mesh.triangles)
    w = np.zeros(mesh.num_vertices)
    for c in range(3):
        np.add.at(w, mesh.triangles[:, c], area / 3.0)
    return DiagMass(weights=w)


def surface_area(mesh: TriMesh) -> float:
    """Total Heron area from chordal edge lengths."""
    _, area, _ = _triangle_geometry(mesh.vertices, mesh.triangles)
    return float(area.sum())


def vertex_normals(mesh: TriMesh) -> np.ndarray:
    """Unit surface normals in the tangent space of S^3 at each vertex,
    accumulated from the (area-weighted) corner normals of incident triangles."""
    v, t = mesh.vertices, mesh.triangles
    out = np.zeros_like(v)
    for c in range(3):
        p = v[t[:, c]]
        n = _cross4(p, v[t[:, (c + 1) % 3]] - p, v[t[:, (c + 2) % 3]] - p)
        np.add.at(out, t[:, c], n)
    out -= np.einsum("ij,ij->i", out, v)[:, None] * v
    norms = np.linalg.norm(out, axis=1)
    if np.any(norms < 1e-14):
        raise OrientationError("vanishing vertex normal: inconsistent orientation")
    return out / norms[:, None]


# ---------------------------------------------------------------------------
# estimators

@dataclass(frozen=True, eq=False)
class CurvatureEstimate:
    """Per-vertex mean curvature (kappa1 + kappa2, signed toward the inner
    normal) and squared shape norm (kappa1^2 + kappa2^2)."""

    H: np.ndarray
    S: np.ndarray

    @property
    def H_max(self) -> float:
        return float(np.abs(self.H).max())

    @property
    def S_max(self) -> float:
        return float(self.S.max())


def estimate_curvature(mesh: TriMesh, iterations: int = 3) -> CurvatureEstimate:
    """Per-vertex principal curvatures by quadratic one-ring fits.

    Each one-ring is pulled to the tangent space of S^3 by the sphere log
    map; a quadric with linear terms is fit over the current tangent-plane
    estimate, the normal is realigned with the fitted gradient, and the fit
    repeats.  Principal curvatures are the eigenvalues of the final quadric's
    Hessian.
    """
    v = mesh.vertices
    counts, offsets, neighbors = mesh.one_ring
    if counts.min() < 5:
        raise FitError(f"one-ring with {counts.min()} < 5 neighbors")
    normals = vertex_normals(mesh)

    H = np.empty(mesh.num_vertices)
    S = np.empty(mesh.num_vertices)
    eye5 = np.eye(5)

    def unit(x):
        return x / np.linalg.norm(x, axis=1, keepdims=True)

    for m in np.unique(counts):
        sel = np.where(counts == m)[0]
        ring = neighbors[offsets[sel][:, None] + np.arange(m)[None, :]]
        P = v[sel]
        Q = v[ring]
        cos = np.clip(np.einsum("gmi,gi->gm", Q, P), -1.0, 1.0)
        theta = np.arccos(cos)
        W = Q - cos[..., None] * P[:, None, :]
        wn = np.linalg.norm(W, axis=2)
        W *= (theta / np.maximum(wn, 1e-300))[..., None]

        nu = normals[sel]
        e1 = W[:, 0, :].copy()
        e1 -= np.einsum("gi,gi->g", e1, nu)[:, None] * nu
        e1 -= np.einsum("gi,gi->g", e1, P)[:, None] * P
        e1 = unit(e1)
        e2 = unit(_cross4(P, nu, e1))

        coef = None
        for it in range(iterations):
            x = np.einsum("gmi,gi->gm", W, e1)
            y = np.einsum("gmi,gi->gm", W, e2)
            z = np.einsum("gmi,gi->gm", W, nu)
            A = np.stack([x, y, 0.5 * x * x, x * y, 0.5 * y * y], axis=2)
            G = np.einsum("gmi,gmj->gij", A, A)
            G += 1e-14 * np.einsum("gii->g", G)[:, None, None] * eye5
            rhs = np.einsum("gmi,gm->gi", A, z)
            coef = np.linalg.solve(G, rhs[:, :, None])[:, :, 0]
            if it < iterations - 1:
                nu = nu - coef[:, 0, None] * e1 - coef[:, 1, None] * e2
                nu -= np.einsum("gi,gi->g", nu, P)[:, None] * P
                nu = unit(nu)
                e1 -= np.einsum("gi,gi->g", e1, nu)[:, None] * nu
                e1 -= np.einsum("gi,gi->g", e1, P)[:, None] * P
                e1 = unit(e1)
                e2 = unit(_cross4(P, nu, e1))

        qa, qb, qc = coef[:, 2], coef[:, 3], coef[:, 4]
        mean = 0.5 * (qa + qc)
        disc = np.sqrt(0.25 * (qa - qc) ** 2 + qb * qb)
        k1, k2 = mean + disc, mean - disc
        H[sel] = k1 + k2
        S[sel] = k1 * k1 + k2 * k2
    return CurvatureEstimate(H=H, S=S)


def estimate_rolling_radius(
    mesh: TriMesh,
    side: str = INNER,
    samples: int = 64,
    scan_points: int = 96,
    bisect_tol: float = 1e-4,
) -> float:
    """Estimate the rolling radius on one side by flowing normal great circles.

    For each sampled vertex p with unit normal nu toward ``side``, the curve
    gamma(t) = cos(t) p + sin(t) nu is followed until its nearest-vertex
    distance to the mesh drops below t - tol_geo, with tol_geo twice the
    longest edge; the largest surviving t is bracketed by bisection.  Returns
    the minimum over samples.  Nearest-vertex distance makes the estimate a
    resolution-limited upper bracket, adequate for applicability checks but
    not for the bound values themselves.
    """
    if side not in (INNER, OUTER):
        raise DomainError(f"side must be '{INNER}' or '{OUTER}', got {side!r}")
    if samples < 32:
        raise DomainError(f"samples must be >= 32, got {samples}")
    v = mesh.vertices
    normals = vertex_normals(mesh)
    if side == OUTER:
        normals = -normals
    tol_geo = 2.0 * mesh.max_edge_length
    sel = np.unique(np.linspace(0, mesh.num_vertices - 1, samples).astype(int))
    ts = np.linspace(0.0, math.pi / 2, scan_points + 1)[1:]

    def dist_to_mesh(points):
        # arccos is decreasing: max the dots first, clip once
        best = (points @ v.T).max(axis=1)
        return np.arccos(np.clip(best, -1.0, 1.0))

    t_min = math.pi / 2
    for i in sel:
        p, nu = v[i], normals[i]
        gamma = np.cos(ts)[:, None] * p + np.sin(ts)[:, None] * nu
        ok = dist_to_mesh(gamma) >= ts - tol_geo
        if ok.all():
            continue
        last = int(np.max(np.nonzero(ok)[0])) if ok.any() else -1
        lo = ts[last] if last >= 0 else 0.0
        hi = ts[last + 1]
        while hi - lo > bisect_tol:
            mid = 0.5 * (lo + hi)
            g = math.cos(mid) * p + math.sin(mid) * nu
            if float(dist_to_mesh(g[None, :])[0]) >= mid - tol_geo:
                lo = mid
            else:
                hi = mid
        t_min = min(t_min, lo)
    return t_min


# ---------------------------------------------------------------------------
# exchange format

def save_mesh(mesh: TriMesh, path) -> None:
    """Write the S3MESH text format: header 'S3MESH V F', V coordinate lines,
    F index lines.  Coordinates round-trip exactly (17 significant digits)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"S3MESH {mesh.num_vertices} {mesh.num_triangles}\n")
        for row in mesh.vertices:
            fh.write("%.17g %.17g %.17g %.17g\n" % tuple(row))
        for i, j, k in mesh.triangles:
            fh.write("%d %d %d\n" % (i, j, k))


def load_mesh(path) -> TriMesh:
    """Read the S3MESH text format and validate all mesh invariants."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3 or header[0] != "S3MESH":
            raise ValidationError("not an S3MESH file")
        try:
            V, F = int(header[1]), int(header[2])
        except ValueError as exc:
            raise ValidationError(f"bad S3MESH header: {header}") from exc
        verts = np.empty((V, 4))
        for i in range(V):
            parts = fh.readline().split()
            if len(parts) != 4:
                raise ValidationError(f"bad vertex line {i}")
            verts[i] = [float(x) for x in parts]
        tris = np.empty((F, 3), dtype=np.int64)
        for i in range(F):
            parts = fh.readline().split()
            if len(parts) != 3:
                raise ValidationError(f"bad triangle line {i}")
            tris[i] = [int(x) for x in parts]
    return TriMesh(vertices=verts, triangles=tris)
