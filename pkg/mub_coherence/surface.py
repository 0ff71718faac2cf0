"""
Coherence landscapes of Bell-diagonal states as data files.

Two products:
  * a heightmap of the zz-basis l1 coherence over (c1, c2), which does not
    depend on c3
  * level surfaces of the coherence summed over the zz, xx and yy bases,
    extracted by marching cubes from a field sampled on [-1, 1]^3

Writers emit CSV for grids and Wavefront OBJ for meshes.
"""

import csv
import logging
from dataclasses import dataclass
from typing import TextIO, Tuple

import numpy as np

from .coherence import bell_closed_forms
from .errors import EmptyLevelSetError
from .linalg import batch_is_physical
from .mc_tables import CORNER_OFFSETS, EDGE_CORNERS, TRIANGLE_TABLE
from .mubcoh_config import FIELD_RESOLUTION, HEIGHTMAP_RESOLUTION, SIGNIFICANT_DIGITS, VALIDATION_TOL
from .states import bell_diagonal_matrices

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeightMap:
    """values[i2, i1] at (coords[i1], coords[i2]); c1 runs fastest in row-major order."""

    n: int
    coords: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class ScalarField3:
    """values[i3, i2, i1] at (coords[i1], coords[i2], coords[i3])."""

    n: int
    coords: np.ndarray
    values: np.ndarray

    @property
    def spacing(self) -> float:
        return 2.0 / (self.n - 1)

    @property
    def cell_diagonal(self) -> float:
        return float(np.sqrt(3.0) * self.spacing)


@dataclass(frozen=True)
class TriangleMesh:
    vertices: np.ndarray  # (m, 3) float, columns c1, c2, c3
    triangles: np.ndarray  # (t, 3) int, 0-based

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        """(lower, upper) corners of the axis-aligned box around all vertices."""
        if len(self.vertices) == 0:
            raise ValueError("Empty mesh has no bounding box")
        return self.vertices.min(axis=0), self.vertices.max(axis=0)


def _check_resolution(n: int) -> None:
    if n < 2:
        raise ValueError(f"Grid resolution must be at least 2, got {n}")


def symmetric_grid(n: int) -> np.ndarray:
    """n points on [-1, 1] with coords[i] == -coords[n-1-i] exactly."""
    _check_resolution(n)
    raw = np.linspace(-1.0, 1.0, n)
    return 0.5 * (raw - raw[::-1])


def coherence_heightmap(n: int = HEIGHTMAP_RESOLUTION) -> HeightMap:
    """zz-basis l1 coherence of Bell-diagonal states on an n x n grid of (c1, c2)."""
    coords = symmetric_grid(n)
    c2, c1 = np.meshgrid(coords, coords, indexing="ij")
    triples = np.stack([c1.ravel(), c2.ravel(), np.zeros(n * n)], axis=1)
    values = bell_closed_forms(triples)[:, 0].reshape(n, n)
    return HeightMap(n=n, coords=coords, values=values)


def coherence_field(n: int = FIELD_RESOLUTION) -> ScalarField3:
    """Summed l1 coherence over the three product bases on an n^3 grid."""
    coords = symmetric_grid(n)
    c3, c2, c1 = np.meshgrid(coords, coords, coords, indexing="ij")
    triples = np.stack([c1.ravel(), c2.ravel(), c3.ravel()], axis=1)
    values = bell_closed_forms(triples).sum(axis=1).reshape(n, n, n)
    logger.debug(f"Sampled coherence field on {n}^3 points, range [{values.min():.3g}, {values.max():.3g}]")
    return ScalarField3(n=n, coords=coords, values=values)


def isosurface(field: ScalarField3, level: float, physical: bool = False) -> TriangleMesh:
    """
    Marching-cubes mesh of {c : field(c) = level}.

    Vertices are interpolated linearly along cell edges and shared between
    neighbouring cells, so each grid edge yields at most one vertex.

    Args:
        field: sampled field
        level: iso value, strictly inside the field's range
        physical: drop triangles with a vertex whose Bell-diagonal matrix is
            not positive semidefinite

    Raises:
        EmptyLevelSetError: if level is outside (min, max) of the field
    """
    grid = np.transpose(field.values, (2, 1, 0))  # [i1, i2, i3]
    vmin, vmax = float(grid.min()), float(grid.max())
    if not (vmin < level < vmax):
        raise EmptyLevelSetError(level, vmin, vmax)
    n = field.n
    m = n - 1

    below = grid < level
    cube_index = np.zeros((m, m, m), dtype=np.int64)
    for k, (o1, o2, o3) in enumerate(CORNER_OFFSETS):
        cube_index |= below[o1:o1 + m, o2:o2 + m, o3:o3 + m].astype(np.int64) << k

    cells = np.argwhere((cube_index != 0) & (cube_index != 255))  # C order
    rows = TRIANGLE_TABLE[cube_index[cells[:, 0], cells[:, 1], cells[:, 2]]]
    edges = rows[:, :15].reshape(len(cells), 5, 3)
    cell_of_tri, slot = np.nonzero(edges[:, :, 0] >= 0)
    tri_edges = edges[cell_of_tri, slot]  # (t, 3)
    tri_cells = cells[cell_of_tri]  # (t, 3)

    # Global key of each edge: lower endpoint flat index * 3 + axis
    start = tri_cells[:, None, :] + CORNER_OFFSETS[EDGE_CORNERS[0][tri_edges]]
    end = tri_cells[:, None, :] + CORNER_OFFSETS[EDGE_CORNERS[1][tri_edges]]
    lower = np.minimum(start, end)
    axis = np.argmax(start != end, axis=-1)
    flat = (lower[..., 0] * n + lower[..., 1]) * n + lower[..., 2]
    keys, triangles = np.unique((flat * 3 + axis).ravel(), return_inverse=True)
    triangles = triangles.reshape(-1, 3)

    lo = np.stack(np.unravel_index(keys // 3, (n, n, n)), axis=1)
    ax = keys % 3
    hi = lo.copy()
    hi[np.arange(len(hi)), ax] += 1
    v_lo = grid[lo[:, 0], lo[:, 1], lo[:, 2]]
    v_hi = grid[hi[:, 0], hi[:, 1], hi[:, 2]]
    mu = (level - v_lo) / (v_hi - v_lo)
    idx = np.arange(len(lo))
    vertices = field.coords[lo].astype(float)
    vertices[idx, ax] += mu * (field.coords[hi[idx, ax]] - field.coords[lo[idx, ax]])

    if physical:
        ok = batch_is_physical(bell_diagonal_matrices(vertices), VALIDATION_TOL)
        keep = ok[triangles].all(axis=1)
        triangles = triangles[keep]
        used, triangles = np.unique(triangles.ravel(), return_inverse=True)
        vertices = vertices[used]
        triangles = triangles.reshape(-1, 3)
        if len(triangles) == 0:
            logger.warning(f"No part of the level-{level} surface lies inside the physical region")

    mesh = TriangleMesh(vertices=vertices, triangles=triangles.astype(np.int64))
    logger.debug(f"Level {level}: {len(mesh.vertices)} vertices, {len(mesh.triangles)} triangles")
    return mesh


def _fmt(value: float) -> str:
    return f"{value:.{SIGNIFICANT_DIGITS}g}"


def write_heightmap_csv(hm: HeightMap, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["c1", "c2", "value"])
    for i2, c2 in enumerate(hm.coords):
        for i1, c1 in enumerate(hm.coords):
            writer.writerow([_fmt(c1), _fmt(c2), _fmt(hm.values[i2, i1])])


def write_field_csv(field: ScalarField3, out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["c1", "c2", "c3", "value"])
    for i3, c3 in enumerate(field.coords):
        for i2, c2 in enumerate(field.coords):
            for i1, c1 in enumerate(field.coords):
                writer.writerow([_fmt(c1), _fmt(c2), _fmt(c3), _fmt(field.values[i3, i2, i1])])


def write_obj(mesh: TriangleMesh, out: TextIO, comment: str = "") -> None:
    """Wavefront OBJ with 1-based face indices."""
    if comment:
        out.write(f"# {comment}\n")
    for x, y, z in mesh.vertices:
        out.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for i, j, k in mesh.triangles:
        out.write(f"f {i + 1} {j + 1} {k + 1}\n")

