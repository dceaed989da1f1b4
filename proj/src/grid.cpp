// Copyright (c) the hesseig contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hesseig/grid.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hesseig/errors.hpp"

namespace hesseig {

DomainSpec DomainSpec::rectangle(double w, double h) {
  if (!(w > 0.0) || !(h > 0.0)) throw ContractViolation("rectangle sides must be positive");
  DomainSpec d;
  d.shape = Shape::rectangle;
  d.width = w;
  d.height = h;
  d.radius = 0.0;
  return d;
}

DomainSpec DomainSpec::disk(double r) {
  if (!(r > 0.0)) throw ContractViolation("disk radius must be positive");
  DomainSpec d;
  d.shape = Shape::disk;
  d.radius = r;
  d.width = d.height = 0.0;
  return d;
}

std::string DomainSpec::token() const {
  char buf[96];
  if (shape == Shape::rectangle) {
    std::snprintf(buf, sizeof buf, "rectangle:w=%.17g,h=%.17g", width, height);
  } else {
    std::snprintf(buf, sizeof buf, "disk:r=%.17g", radius);
  }
  return buf;
}

DomainSpec DomainSpec::parse(const std::string& token) {
  double a = 0.0, b = 0.0;
  if (token.rfind("rectangle:", 0) == 0) {
    if (std::sscanf(token.c_str(), "rectangle:w=%lf,h=%lf", &a, &b) != 2) {
      throw ContractViolation("bad rectangle token '" + token + "'");
    }
    return rectangle(a, b);
  }
  if (token.rfind("disk:", 0) == 0) {
    if (std::sscanf(token.c_str(), "disk:r=%lf", &a) != 1) {
      throw ContractViolation("bad disk token '" + token + "'");
    }
    return disk(a);
  }
  throw ContractViolation("unrecognized domain token '" + token +
                          "' (expected rectangle:w=W,h=H or disk:r=R)");
}

double DomainSpec::diameter() const {
  if (shape == Shape::rectangle) return std::hypot(width, height);
  return 2.0 * radius;
}

double DomainSpec::boundary_distance(double x, double y) const {
  if (shape == Shape::rectangle) {
    const double d = std::min(std::min(x, width - x), std::min(y, height - y));
    return std::max(0.0, d);
  }
  return std::max(0.0, radius - std::hypot(x, y));
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double GridField::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (int node : grid->interior_nodes) m = std::max(m, values[node]);
  return m;
}

namespace {

constexpr int kDirDx[8] = {1, -1, 0, 0, 1, -1, 1, -1};
constexpr int kDirDy[8] = {0, 0, 1, -1, 1, 1, -1, -1};

// Fraction theta in (0, 1] of the step (dx, dy) from (x, y) at which the
// circle |p| = R is crossed. Caller guarantees (x, y) is strictly inside.
double circle_cut_fraction(double x, double y, double dx, double dy, double R) {
  const double a = dx * dx + dy * dy;
  const double b = 2.0 * (x * dx + y * dy);
  const double c = x * x + y * y - R * R;  // < 0 inside
  const double disc = b * b - 4.0 * a * c;
  const double t = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * a);
  return std::clamp(t, 1e-12, 1.0);
}

}  // namespace

Grid build_grid(const DomainSpec& domain, double h) {
  if (!(h > 0.0)) throw ConfigurationError("grid spacing h must be positive");
  Grid g;
  g.domain = domain;
  if (domain.shape == DomainSpec::Shape::rectangle) {
    g.nx = static_cast<int>(std::lround(domain.width / h));
    g.ny = static_cast<int>(std::lround(domain.height / h));
    if (g.nx < 5 || g.ny < 5) {
      throw ConfigurationError("grid too coarse: need at least 4 interior nodes per axis");
    }
    g.hx = domain.width / g.nx;
    g.hy = domain.height / g.ny;
    g.x0 = 0.0;
    g.y0 = 0.0;
    g.cls.assign(g.num_nodes(), NodeClass::interior);
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        if (i == 0 || j == 0 || i == g.nx || j == g.ny) {
          g.cls[g.node_id(i, j)] = NodeClass::boundary;
        }
      }
    }
  } else {
    const double R = domain.radius;
    g.nx = g.ny = static_cast<int>(std::lround(2.0 * R / h));
    if (g.nx < 10) {
      throw ConfigurationError("grid too coarse: need at least 4 interior nodes per axis");
    }
    g.hx = g.hy = 2.0 * R / g.nx;
    g.x0 = -R;
    g.y0 = -R;
    g.cls.assign(g.num_nodes(), NodeClass::exterior);
    const double on_circle_tol = 1e-12 * R;
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        const int node = g.node_id(i, j);
        const double r = std::hypot(g.x_of(node), g.y_of(node));
        if (std::abs(r - R) <= on_circle_tol) {
          g.cls[node] = NodeClass::boundary;
        } else if (r < R) {
          g.cls[node] = NodeClass::interior;
        }
      }
    }
    // ring: exterior nodes adjacent to an interior node (their Dirichlet
    // point is projected onto the circle by the cut arms)
    std::vector<int> ring;
    for (int j = 0; j <= g.ny; ++j) {
      for (int i = 0; i <= g.nx; ++i) {
        const int node = g.node_id(i, j);
        if (g.cls[node] != NodeClass::exterior) continue;
        for (int d = 0; d < 8; ++d) {
          const int ii = i + kDirDx[d], jj = j + kDirDy[d];
          if (ii < 0 || jj < 0 || ii > g.nx || jj > g.ny) continue;
          if (g.cls[g.node_id(ii, jj)] == NodeClass::interior) {
            ring.push_back(node);
            break;
          }
        }
      }
    }
    for (int node : ring) g.cls[node] = NodeClass::boundary;
  }

  g.interior_index.assign(g.num_nodes(), -1);
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      const int node = g.node_id(i, j);
      if (g.cls[node] == NodeClass::interior) {
        g.interior_index[node] = static_cast<int>(g.interior_nodes.size());
        g.interior_nodes.push_back(node);
      }
    }
  }

  g.arms.resize(g.num_interior());
  const bool is_disk = domain.shape == DomainSpec::Shape::disk;
  const double R = domain.radius;
  for (int idx = 0; idx < g.num_interior(); ++idx) {
    const int node = g.interior_nodes[idx];
    const int i = node % (g.nx + 1), j = node / (g.nx + 1);
    const double x = g.x_of(node), y = g.y_of(node);
    for (int d = 0; d < 8; ++d) {
      const int ii = i + kDirDx[d], jj = j + kDirDy[d];
      Arm arm;
      const bool in_lattice = (ii >= 0 && jj >= 0 && ii <= g.nx && jj <= g.ny);
      const int nb = in_lattice ? g.node_id(ii, jj) : -1;
      const bool nb_real =
          in_lattice && g.cls[nb] != NodeClass::exterior &&
          (!is_disk || g.cls[nb] == NodeClass::interior ||
           std::abs(std::hypot(g.x_of(nb), g.y_of(nb)) - R) <= 1e-12 * R);
      if (nb_real) {
        arm.neighbor = nb;
        arm.theta = 1.0;
      } else {
        if (!is_disk) {
          throw ContractViolation("rectangle stencil left the lattice");
        }
        arm.neighbor = -1;
        arm.theta = circle_cut_fraction(x, y, kDirDx[d] * g.hx, kDirDy[d] * g.hy, R);
      }
      g.arms[idx][d] = arm;
    }
  }
  return g;
}

HessianStencil hessian_stencil(const Grid& grid, int node) {
  if (node < 0 || node >= grid.num_nodes() || !grid.is_interior(node)) {
    throw ContractViolation("hessian stencil requested at a non-interior node");
  }
  const auto& arms = grid.arms[grid.interior_index[node]];
  HessianStencil st;
  for (int d = 0; d < 8; ++d) st.target[d] = arms[d].neighbor;

  const double hx = grid.hx, hy = grid.hy;
  // u_xx, u_yy: 3-point second differences with (possibly) unequal arms.
  {
    const double te = arms[ARM_E].theta, tw = arms[ARM_W].theta;
    const double c = 2.0 / (hx * hx);
    st.weight[ARM_E][0] = c / (te * (te + tw));
    st.weight[ARM_W][0] = c / (tw * (te + tw));
    st.center[0] = -c / (te * tw);
  }
  {
    const double tn = arms[ARM_N].theta, ts = arms[ARM_S].theta;
    const double c = 2.0 / (hy * hy);
    st.weight[ARM_N][1] = c / (tn * (tn + ts));
    st.weight[ARM_S][1] = c / (ts * (tn + ts));
    st.center[1] = -c / (tn * ts);
  }
  // u_xy from the difference of second differences along the two lattice
  // diagonals; exact for quadratics, first order at cut arms.
  {
    const double scale = 0.5 / (hx * hy);
    const double a = arms[ARM_NE].theta, b = arms[ARM_SW].theta;
    const double c = arms[ARM_SE].theta, d = arms[ARM_NW].theta;
    st.weight[ARM_NE][2] = scale / (a * (a + b));
    st.weight[ARM_SW][2] = scale / (b * (a + b));
    st.weight[ARM_SE][2] = -scale / (c * (c + d));
    st.weight[ARM_NW][2] = -scale / (d * (c + d));
    st.center[2] = scale * (1.0 / (c * d) - 1.0 / (a * b));
  }
  return st;
}

Eigen::Matrix2d hessian_at(const GridField& field, int node) {
  const Grid& g = *field.grid;
  const HessianStencil st = hessian_stencil(g, node);
  double uxx = st.center[0] * field.values[node];
  double uyy = st.center[1] * field.values[node];
  double uxy = st.center[2] * field.values[node];
  for (int d = 0; d < 8; ++d) {
    if (st.target[d] < 0) continue;
    const double v = field.values[st.target[d]];
    uxx += st.weight[d][0] * v;
    uyy += st.weight[d][1] * v;
    uxy += st.weight[d][2] * v;
  }
  Eigen::Matrix2d H;
  H << uxx, uxy, uxy, uyy;
  return H;
}

double laplace_mu1(const Grid& grid) {
  const int n = grid.num_interior();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 5);
  for (int row = 0; row < n; ++row) {
    const int node = grid.interior_nodes[row];
    const HessianStencil st = hessian_stencil(grid, node);
    // -Laplace: negate the u_xx + u_yy weights
    trip.emplace_back(row, row, -(st.center[0] + st.center[1]));
    for (int d = 0; d < 4; ++d) {  // axis arms only
      const int t = st.target[d];
      if (t < 0) continue;
      const int col = grid.interior_index[t];
      if (col < 0) continue;  // boundary: Dirichlet 0
      trip.emplace_back(row, col, -(st.weight[d][0] + st.weight[d][1]));
    }
  }
  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) {
    throw ConvergenceError("LU factorization of the discrete Laplacian failed", 0, 0.0);
  }

  Eigen::VectorXd y = Eigen::VectorXd::Ones(n);
  y.normalize();
  double mu = 0.0;
  for (int it = 1; it <= 10000; ++it) {
    Eigen::VectorXd z = lu.solve(y);
    const double mu_next = 1.0 / y.dot(z);
    z.normalize();
    y = z;
    if (it > 1 && std::abs(mu_next - mu) < 1e-10 * std::abs(mu_next)) {
      return mu_next;
    }
    mu = mu_next;
  }
  throw ConvergenceError("inverse power iteration for mu_1 exceeded 1e4 iterations",
                         10000, mu);
}

GammaConvexityReport check_strict_gamma_convexity(const DomainSpec& domain,
                                                  const HessianOperator& op) {
  GammaConvexityReport rep;
  const double kappa = (domain.shape == DomainSpec::Shape::disk)
                           ? 1.0 / domain.radius
                           : 0.0;  // flat sides; corners have no curvature
  rep.warning = (domain.shape == DomainSpec::Shape::rectangle);
  // n = 2: the Gamma-convexity datum is the 2-vector (kappa, R). Scan a
  // decade grid for the smallest R that stays in (the closure of) the cone.
  std::vector<double> slacks;
  for (double R = 1e-3; R <= 1e6; R *= 10.0) {
    const double pt[2] = {kappa, R};
    cone_slacks(op, std::span<const double>(pt, 2), slacks);
    bool strict = true, closure = true;
    for (double s : slacks) {
      if (!(s > 0.0)) strict = false;
      if (s < -1e-15 * (1.0 + R)) closure = false;
    }
    if (strict || closure) {
      rep.convex = true;
      rep.required_R = R;
      if (!strict) rep.warning = true;
      return rep;
    }
  }
  rep.convex = false;
  rep.required_R = std::numeric_limits<double>::infinity();
  return rep;
}

GridField barrier_subsolution(const Grid& grid, double R_param) {
  if (!(R_param > 0.0)) throw ContractViolation("barrier parameter R must be positive");
  GridField v(grid);
  for (int node = 0; node < grid.num_nodes(); ++node) {
    if (grid.cls[node] == NodeClass::exterior) continue;
    const double d = grid.boundary_distance(node);
    v.values[node] = (std::exp(-R_param * d) - 1.0) / R_param;
  }
  return v;
}

void dump_field_csv(const GridField& field, const std::string& csv_path) {
  const Grid& g = *field.grid;
  std::ofstream out(csv_path);
  if (!out) throw ConfigurationError("cannot open '" + csv_path + "' for writing");
  out << "x,y,value\n";
  char line[128];
  int interior = 0, boundary = 0;
  for (int node = 0; node < g.num_nodes(); ++node) {
    if (g.cls[node] == NodeClass::exterior) continue;
    if (g.cls[node] == NodeClass::interior) {
      ++interior;
    } else {
      ++boundary;
    }
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", g.x_of(node),
                  g.y_of(node), field.values[node]);
    out << line;
  }
  std::ofstream meta(csv_path + ".meta.json");
  meta << "{\n  \"domain\": \"" << g.domain.token() << "\",\n";
  std::snprintf(line, sizeof line, "  \"h\": %.17g,\n", g.hx);
  meta << line;
  meta << "  \"counts\": {\"interior\": " << interior << ", \"boundary\": " << boundary
       << "}\n}\n";
}

}  // namespace hesseig
