#ifndef CURRENTLAB_MESHES_H_
#define CURRENTLAB_MESHES_H_

#include <array>
#include <cstdint>
#include <vector>

#include "currentlab/current.h"

namespace currentlab {

// A complex together with its positively oriented fundamental chain.
struct Mesh {
  ComplexPtr complex;
  SimplicialCurrent current;
};

// Triangles given by vertex triples, oriented counterclockwise in the plane or
// with outward normals on a sphere around the origin.
struct TriangleSoup {
  std::vector<double> coords;  // stride 2 or 3
  std::vector<std::array<int, 3>> triangles;
  // Triangles are already listed with their orientation.
  bool oriented = false;
};

// Builds the complex. Unless the soup is oriented, each triangle is oriented
// by the sign of its area (2D) or of det[a, b, c] (3D, outward for
// star-shaped surfaces).
Mesh MeshFromSoup(const TriangleSoup& soup, const Metric& metric);

// [x0, x1] x [y0, y1] split into nx * ny cells, two triangles each.
TriangleSoup RectangleSoup(double x0, double x1, double y0, double y1, int nx, int ny);
Mesh UnitSquare(int n = 1);

// Disk of the given radius around the origin: the center plus rings at radii
// i * h with 6i points each, i = 1..round(radius / h). Vertex 0 is the center.
TriangleSoup DiskSoup(double radius, double h);
Mesh Disk(double radius, double h);

// Nested family: the disk with h = h0 subdivided `level` times by edge
// midpoints, new boundary midpoints moving onto the circle. Optionally
// only the first push_levels subdivisions push (all of them when negative), so
// RefinedDiskSoup(R, h0, l + 1, l) is a geometric subdivision of level l.
TriangleSoup RefinedDiskSoup(double radius, double h0, int level, int push_levels = -1);

// Geodesic icosphere: each icosahedron face cut into frequency^2 triangles
// and projected to the sphere, with vertex 0 at the north pole (0, 0, R).
TriangleSoup IcosphereSoup(int frequency, double radius = 1.0);
// With the great-circle metric.
Mesh Icosphere(int frequency, double radius = 1.0);

// Box [lo, hi] in R^3 with n[a] cells per axis, each cube cut into 6
// tetrahedra around its main diagonal. An axis with periodic[a] set wraps with
// period hi[a] - lo[a] (needs at least 3 cells).
Mesh KuhnBox(std::array<double, 3> lo, std::array<double, 3> hi, std::array<int, 3> n,
             std::array<bool, 3> periodic = {false, false, false});
// Index of the grid vertex (i, j, k) of a KuhnBox.
int KuhnVertex(std::array<int, 3> n, std::array<bool, 3> periodic, int i, int j, int k);

// The flat 3-torus S^1 x S^1 x S^1_eps with circumferences 2pi, 2pi, 2eps.
Mesh ThinTorus(double eps, int cells_xy, int cells_z);

// The part of the thin torus within distance half_width of a point, as a box
// [-a, a]^2 x [-a, a] (or the full eps-circle when it is shorter than 2a,
// then periodic). The chosen point is returned as `center`.
struct TorusChart {
  Mesh mesh;
  int center = -1;
};
TorusChart ThinTorusChart(double eps, double half_width, int cells_per_half_width);

// Sphere with spikes: each chosen vertex is moved radially to `height` above
// the sphere after cutting its incident edges at distance width / 2 (or using
// its whole star when width / 2 reaches the shortest incident edge).
struct SpikedSphere {
  Mesh mesh;
  std::vector<int> tips;
  std::vector<int> bases;
  double spike_area = 0.0;
};
SpikedSphere SphereWithSpikes(int frequency, int spikes, double height, double width,
                              uint64_t seed);

}  // namespace currentlab

#endif  // CURRENTLAB_MESHES_H_
