"""
Tests for the Bell-diagonal coherence heightmap and level surfaces.
"""

import csv
import io

import numpy as np
import pytest

from mub_coherence.coherence import bell_sum_max_form
from mub_coherence.errors import EmptyLevelSetError
from mub_coherence.linalg import batch_is_physical
from mub_coherence.states import bell_diagonal_matrices
from mub_coherence.surface import (
    coherence_field,
    coherence_heightmap,
    isosurface,
    symmetric_grid,
    write_field_csv,
    write_heightmap_csv,
    write_obj,
)


def read_obj(stream):
    """Vertices and 0-based faces from the OBJ subset write_obj emits."""
    vertices, triangles = [], []
    for line in stream:
        parts = line.split()
        if parts and parts[0] == "v":
            vertices.append([float(p) for p in parts[1:4]])
        elif parts and parts[0] == "f":
            triangles.append([int(p) - 1 for p in parts[1:4]])
    return np.array(vertices).reshape(-1, 3), np.array(triangles, dtype=np.int64).reshape(-1, 3)


@pytest.fixture(scope="module")
def field41():
    return coherence_field(41)


@pytest.fixture(scope="module")
def meshes41(field41):
    return {level: isosurface(field41, level) for level in (0.5, 1.0, 2.0)}


def test_symmetric_grid():
    coords = symmetric_grid(21)
    np.testing.assert_array_equal(coords, -coords[::-1])
    assert coords[10] == 0.0
    assert coords[0] == -1.0 and coords[-1] == 1.0
    with pytest.raises(ValueError):
        symmetric_grid(1)


def test_heightmap_values():
    hm = coherence_heightmap(201)
    assert hm.values.shape == (201, 201)
    assert hm.values[100, 100] == 0.0
    # any point with |c1| = 1 or |c2| = 1 sits at full coherence
    np.testing.assert_array_equal(hm.values[0], 1.0)
    np.testing.assert_array_equal(hm.values[:, -1], 1.0)
    i1 = int(np.argmin(np.abs(hm.coords - 0.3)))
    assert hm.values[-1, i1] == 1.0
    assert hm.values[i1, -1] == 1.0
    np.testing.assert_allclose(hm.values, np.maximum.outer(np.abs(hm.coords), np.abs(hm.coords)), atol=1e-15)


def test_field_values():
    field = coherence_field(21)
    v = field.values
    assert v[10, 10, 10] == 0.0
    assert v[20, 20, 20] == pytest.approx(3.0)
    assert v[10, 10, 20] == pytest.approx(2.0)
    assert v.min() == 0.0
    assert v.max() == pytest.approx(3.0)
    for axis in range(3):
        np.testing.assert_array_equal(v, np.flip(v, axis=axis))
    for perm in [(1, 0, 2), (0, 2, 1), (2, 1, 0)]:
        np.testing.assert_allclose(v, np.transpose(v, perm), atol=1e-15)


@pytest.mark.parametrize("level", [3.5, -0.1, 0.0, 3.0])
def test_empty_level_set(field41, level):
    with pytest.raises(EmptyLevelSetError) as excinfo:
        isosurface(field41, level)
    assert excinfo.value.level == level


@pytest.mark.parametrize("level", [0.5, 1.0, 2.0])
def test_mesh_is_well_formed(field41, meshes41, level):
    mesh = meshes41[level]
    assert len(mesh.triangles) > 0
    assert mesh.triangles.min() >= 0
    assert mesh.triangles.max() < len(mesh.vertices)
    t = mesh.triangles
    assert np.all((t[:, 0] != t[:, 1]) & (t[:, 1] != t[:, 2]) & (t[:, 0] != t[:, 2]))
    residual = np.abs(bell_sum_max_form(mesh.vertices) - level)
    assert residual.max() <= 3 * field41.cell_diagonal


def test_level_boxes_nest(meshes41):
    boxes = [meshes41[level].bounding_box() for level in (0.5, 1.0, 2.0)]
    for (lo_in, hi_in), (lo_out, hi_out) in zip(boxes, boxes[1:]):
        assert np.all(lo_out <= lo_in + 1e-12)
        assert np.all(hi_in <= hi_out + 1e-12)
    for level, (lo, hi) in zip((0.5, 1.0, 2.0), boxes):
        assert np.all(np.abs(lo) <= level / 2 + 1e-12)
        assert np.all(np.abs(hi) <= level / 2 + 1e-12)


def test_level_two_reaches_axis_points():
    field = coherence_field(101)
    mesh = isosurface(field, 2.0)
    for axis in range(3):
        for sign in (1.0, -1.0):
            target = np.zeros(3)
            target[axis] = sign
            distance = np.linalg.norm(mesh.vertices - target, axis=1).min()
            assert distance <= field.cell_diagonal
    inner = isosurface(field, 0.5)
    lo, hi = inner.bounding_box()
    assert np.all(lo < 0) and np.all(hi > 0)


def test_physical_clip(field41, meshes41):
    full = meshes41[2.0]
    clipped = isosurface(field41, 2.0, physical=True)
    assert 0 < len(clipped.triangles) < len(full.triangles)
    assert batch_is_physical(bell_diagonal_matrices(clipped.vertices)).all()
    assert clipped.triangles.max() < len(clipped.vertices)


def test_obj_round_trip(meshes41):
    mesh = meshes41[1.0]
    buffer = io.StringIO()
    write_obj(mesh, buffer, comment="level 1.0")
    text = buffer.getvalue()
    assert text.startswith("# level 1.0\n")
    faces = [line for line in text.splitlines() if line.startswith("f ")]
    assert len(faces) == len(mesh.triangles)
    assert min(int(i) for line in faces for i in line.split()[1:]) == 1
    vertices, triangles = read_obj(io.StringIO(text))
    np.testing.assert_array_equal(vertices, mesh.vertices)
    np.testing.assert_array_equal(triangles, mesh.triangles)


def test_heightmap_csv():
    hm = coherence_heightmap(11)
    buffer = io.StringIO()
    write_heightmap_csv(hm, buffer)
    rows = list(csv.reader(io.StringIO(buffer.getvalue())))
    assert rows[0] == ["c1", "c2", "value"]
    assert len(rows) == 1 + 11 * 11
    # c1 runs fastest
    assert float(rows[1][0]) == -1.0 and float(rows[2][0]) == pytest.approx(-0.8)
    assert float(rows[1][1]) == float(rows[2][1]) == -1.0
    assert float(rows[61][2]) == 0.0


def test_field_csv():
    field = coherence_field(5)
    buffer = io.StringIO()
    write_field_csv(field, buffer)
    rows = list(csv.reader(io.StringIO(buffer.getvalue())))
    assert rows[0] == ["c1", "c2", "c3", "value"]
    assert len(rows) == 1 + 125
    assert float(rows[-1][3]) == pytest.approx(3.0)
