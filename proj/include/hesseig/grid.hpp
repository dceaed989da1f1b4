// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Structured 2-D grids on rectangles and disks. Rectangles carry boundary
// nodes on their edges; curved boundaries are handled by cut cells: stencil
// arms that would leave the disk are shortened to the circle crossing, where
// the Dirichlet value 0 is pinned. Finite-difference Hessians, the discrete
// Laplace ground eigenvalue, the exponential barrier field, and strict
// Gamma-convexity checks of domains live here.

#ifndef HESSEIG_GRID_HPP
#define HESSEIG_GRID_HPP

#include <array>
#include <string>
#include <vector>

#include "hesseig/operators.hpp"

namespace hesseig {

struct DomainSpec {
  enum class Shape { rectangle, disk };
  Shape shape = Shape::rectangle;
  double width = 1.0;   // rectangle
  double height = 1.0;  // rectangle
  double radius = 1.0;  // disk

  static DomainSpec rectangle(double w, double h);
  static DomainSpec disk(double r);

  // "rectangle:w=W,h=H" / "disk:r=R"
  std::string token() const;
  static DomainSpec parse(const std::string& token);

  double diameter() const;
  // Exact distance from an inside point to the boundary (0 outside).
  double boundary_distance(double x, double y) const;

  bool operator==(const DomainSpec&) const = default;
};

enum class NodeClass : unsigned char { interior, boundary, exterior };

// One stencil arm: either a full step to a lattice node (`neighbor` >= 0,
// theta == 1) or a cut step of fraction `theta` to the circle, where the
// field value is pinned to 0 (`neighbor` == -1).
struct Arm {
  int neighbor = -1;
  double theta = 1.0;
};

enum ArmDir { ARM_E = 0, ARM_W, ARM_N, ARM_S, ARM_NE, ARM_NW, ARM_SE, ARM_SW };

class Grid {
 public:
  DomainSpec domain;
  double hx = 0.0, hy = 0.0;
  int nx = 0, ny = 0;  // nodes are (nx+1) x (ny+1)
  double x0 = 0.0, y0 = 0.0;

  std::vector<NodeClass> cls;          // per node
  std::vector<int> interior_index;     // per node; -1 if not interior
  std::vector<int> interior_nodes;     // node ids, row-major order
  std::vector<std::array<Arm, 8>> arms;  // per interior node (interior order)

  int node_id(int i, int j) const { return j * (nx + 1) + i; }
  int num_nodes() const { return (nx + 1) * (ny + 1); }
  int num_interior() const { return static_cast<int>(interior_nodes.size()); }
  double x_of(int node) const { return x0 + hx * (node % (nx + 1)); }
  double y_of(int node) const { return y0 + hy * (node / (nx + 1)); }
  bool is_interior(int node) const { return cls[node] == NodeClass::interior; }
  double boundary_distance(int node) const {
    return domain.boundary_distance(x_of(node), y_of(node));
  }
};

// Nodal scalar field; one value per lattice node. Boundary values stay 0 for
// solver fields; tests may sample arbitrary functions.
struct GridField {
  const Grid* grid = nullptr;
  std::vector<double> values;

  GridField() = default;
  explicit GridField(const Grid& g) : grid(&g), values(g.num_nodes(), 0.0) {}

  double sup_norm() const;
  double max_value() const;
  // Sampled from a callable f(x, y) over interior + boundary nodes.
  template <typename Fn>
  static GridField sample(const Grid& g, Fn&& f) {
    GridField u(g);
    for (int node = 0; node < g.num_nodes(); ++node) {
      if (g.cls[node] == NodeClass::exterior) continue;
      u.values[node] = f(g.x_of(node), g.y_of(node));
    }
    return u;
  }
};

Grid build_grid(const DomainSpec& domain, double h);

// Per-node linear stencil: hessian entries are weighted sums of the node's
// own value and its (up to 8) neighbor values. Cut arms contribute nothing
// (their pinned value is 0).
struct HessianStencil {
  // weight triples (w_xx, w_yy, w_xy) for the center and the 8 arm targets;
  // target < 0 means the arm is cut (no contribution).
  std::array<double, 3> center{};
  std::array<int, 8> target{};
  std::array<std::array<double, 3>, 8> weight{};
};

HessianStencil hessian_stencil(const Grid& grid, int node);

// Discrete Hessian [[u_xx, u_xy], [u_xy, u_yy]] at an interior node.
Eigen::Matrix2d hessian_at(const GridField& field, int node);

// First Dirichlet eigenvalue of the 5-point discrete Laplacian by inverse
// power iteration (relative change < 1e-10, cap 1e4 iterations).
double laplace_mu1(const Grid& grid);

struct GammaConvexityReport {
  bool convex = false;
  double required_R = 0.0;
  bool warning = false;  // flat sides / corners accepted numerically
};

GammaConvexityReport check_strict_gamma_convexity(const DomainSpec& domain,
                                                  const HessianOperator& op);

// The exponential barrier v = (exp(-R d) - 1) / R with d the exact distance
// to the boundary; 0 on the boundary, negative inside.
GridField barrier_subsolution(const Grid& grid, double R_param);

// CSV dump "x,y,value" over interior + boundary nodes, plus a JSON metadata
// sidecar {domain, h, counts} at csv_path + ".meta.json".
void dump_field_csv(const GridField& field, const std::string& csv_path);

}  // namespace hesseig

#endif  // HESSEIG_GRID_HPP
