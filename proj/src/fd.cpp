#include "nncross/fd.hpp"

#include <cmath>

namespace nncross {

namespace {

int interior_dir_x(SubdomainId s) {
    return (s == SubdomainId::Omega2 || s == SubdomainId::Omega3) ? +1 : -1;
}

int interior_dir_y(SubdomainId s) {
    return (s == SubdomainId::Omega3 || s == SubdomainId::Omega4) ? +1 : -1;
}

}  // namespace

SubField::SubField(const Grid& grid, SubdomainId sub)
    : grid_(grid),
      sub_(sub),
      region_(grid.region(sub)),
      v_(static_cast<size_t>((grid.n() + 1) * (grid.n() + 1)), 0.0) {}

Trace Trace::dirichlet(InterfaceId iface, std::vector<double> values) {
    return Trace(iface, TraceKind::DirichletValue, std::move(values));
}

Trace Trace::normal_flux(InterfaceId iface, std::vector<double> values) {
    return Trace(iface, TraceKind::NormalFlux, std::move(values));
}

double Trace::at_position(int pos) const {
    const int k = pos - first_position();
    if (k < 0 || k >= size()) throw std::out_of_range("Trace::at_position");
    return v_[static_cast<size_t>(k)];
}

double& Trace::at_position(int pos) {
    const int k = pos - first_position();
    if (k < 0 || k >= size()) throw std::out_of_range("Trace::at_position");
    return v_[static_cast<size_t>(k)];
}

SubdomainSolver::SubdomainSolver(const Grid& grid, SubdomainId sub, TraceKind vertical_kind,
                                 TraceKind horizontal_kind)
    : grid_(grid),
      sub_(sub),
      region_(grid.region(sub)),
      vkind_(vertical_kind),
      hkind_(horizontal_kind),
      vface_(vertical_interface(sub)),
      hface_(horizontal_interface(sub)),
      din_x_(interior_dir_x(sub)),
      din_y_(interior_dir_y(sub)),
      fact_(build_matrix(grid, sub, vertical_kind, horizontal_kind, unknown_of_node_,
                         unknown_nodes_)) {}

bool SubdomainSolver::is_unknown(Node p) const {
    const int n = grid_.n();
    if (std::abs(p.i) == n || std::abs(p.j) == n) return false;  // outer Dirichlet ring
    if (p.i == 0 && p.j == 0)
        return vkind_ == TraceKind::NormalFlux && hkind_ == TraceKind::NormalFlux;
    if (p.i == 0) return vkind_ == TraceKind::NormalFlux;
    if (p.j == 0) return hkind_ == TraceKind::NormalFlux;
    return true;
}

SubdomainSolver::RowKind SubdomainSolver::row_kind(Node p) const {
    if (p.i == 0 && p.j == 0) return RowKind::NeumannCorner;
    if (p.i == 0) return RowKind::VerticalEdge;
    if (p.j == 0) return RowKind::HorizontalEdge;
    return RowKind::Interior;
}

Factorization SubdomainSolver::build_matrix(const Grid& grid, SubdomainId sub, TraceKind vkind,
                                            TraceKind hkind, std::vector<int>& unknown_of_node,
                                            std::vector<Node>& unknown_nodes) {
    const SubRegion reg = grid.region(sub);
    const int n = grid.n();
    const int dx = interior_dir_x(sub);
    const int dy = interior_dir_y(sub);
    const bool v_neumann = vkind == TraceKind::NormalFlux;
    const bool h_neumann = hkind == TraceKind::NormalFlux;

    auto unknown = [&](Node p) {
        if (std::abs(p.i) == n || std::abs(p.j) == n) return false;
        if (p.i == 0 && p.j == 0) return v_neumann && h_neumann;
        if (p.i == 0) return v_neumann;
        if (p.j == 0) return h_neumann;
        return true;
    };

    unknown_of_node.assign(static_cast<size_t>(grid.node_count()), -1);
    unknown_nodes.clear();
    for (int j = reg.j0; j <= reg.j1; ++j)
        for (int i = reg.i0; i <= reg.i1; ++i) {
            Node p{i, j};
            if (unknown(p)) {
                unknown_of_node[static_cast<size_t>(grid.index(p))] =
                    static_cast<int>(unknown_nodes.size());
                unknown_nodes.push_back(p);
            }
        }

    const double s = 1.0 / (grid.h() * grid.h());
    SparseMatrix a(static_cast<int>(unknown_nodes.size()), static_cast<int>(unknown_nodes.size()));
    auto add_if_unknown = [&](int row, Node q, double coef) {
        const int col = unknown_of_node[static_cast<size_t>(grid.index(q))];
        if (col >= 0) a.add(row, col, coef);
    };
    for (int row = 0; row < static_cast<int>(unknown_nodes.size()); ++row) {
        const Node p = unknown_nodes[static_cast<size_t>(row)];
        if (p.i == 0 && p.j == 0) {  // Neumann corner, scaled by 1/4
            a.add(row, row, s);
            add_if_unknown(row, Node{dx, 0}, -0.5 * s);
            add_if_unknown(row, Node{0, dy}, -0.5 * s);
        } else if (p.i == 0 && v_neumann) {  // ghost-eliminated row, scaled by 1/2
            a.add(row, row, 2.0 * s);
            add_if_unknown(row, Node{0, p.j - 1}, -0.5 * s);
            add_if_unknown(row, Node{0, p.j + 1}, -0.5 * s);
            add_if_unknown(row, Node{dx, p.j}, -s);
        } else if (p.j == 0 && h_neumann) {
            a.add(row, row, 2.0 * s);
            add_if_unknown(row, Node{p.i - 1, 0}, -0.5 * s);
            add_if_unknown(row, Node{p.i + 1, 0}, -0.5 * s);
            add_if_unknown(row, Node{p.i, dy}, -s);
        } else {  // interior five-point row
            a.add(row, row, 4.0 * s);
            add_if_unknown(row, Node{p.i - 1, p.j}, -s);
            add_if_unknown(row, Node{p.i + 1, p.j}, -s);
            add_if_unknown(row, Node{p.i, p.j - 1}, -s);
            add_if_unknown(row, Node{p.i, p.j + 1}, -s);
        }
    }
    a.finalize();
    return Factorization(a);
}

double SubdomainSolver::dirichlet_value(Node p, const GlobalField& g, const EdgeBc& vbc,
                                        const EdgeBc& hbc, const CornerPolicy& policy) const {
    const int n = grid_.n();
    if (std::abs(p.i) == n || std::abs(p.j) == n) return g.at(p);
    if (p.i == 0 && p.j == 0) {
        const bool vd = vkind_ == TraceKind::DirichletValue;
        const bool hd = hkind_ == TraceKind::DirichletValue;
        if (vd && hd) {
            (void)policy;  // TwoDirichlet::AverageValues
            return 0.5 * (vbc.at_position(n) + hbc.at_position(n));
        }
        if (vd) return vbc.at_position(n);  // DirichletNeumann::DirichletWins
        return hbc.at_position(n);
    }
    if (p.i == 0) return vbc.at_position(grid_.interface_position(vface_, p));
    return hbc.at_position(grid_.interface_position(hface_, p));
}

SubField SubdomainSolver::solve(const GlobalField& f, const GlobalField& g,
                                const EdgeBc& vertical_bc, const EdgeBc& horizontal_bc,
                                const CornerPolicy& policy) const {
    if (vertical_bc.kind() != vkind_ || horizontal_bc.kind() != hkind_)
        throw std::invalid_argument("SubdomainSolver::solve: trace kind mismatch");
    if (vertical_bc.iface() != vface_ || horizontal_bc.iface() != hface_)
        throw std::invalid_argument("SubdomainSolver::solve: trace interface mismatch");
    const int n = grid_.n();
    if (vertical_bc.size() != n + 1 - vertical_bc.first_position() ||
        horizontal_bc.size() != n + 1 - horizontal_bc.first_position())
        throw std::invalid_argument("SubdomainSolver::solve: trace length mismatch");

    const double h = grid_.h();
    const double s = 1.0 / (h * h);
    std::vector<double> rhs(unknown_nodes_.size(), 0.0);

    auto known_contrib = [&](int row, Node q, double coef) {
        if (unknown_of_node_[static_cast<size_t>(grid_.index(q))] < 0)
            rhs[static_cast<size_t>(row)] -=
                coef * dirichlet_value(q, g, vertical_bc, horizontal_bc, policy);
    };

    for (int row = 0; row < static_cast<int>(unknown_nodes_.size()); ++row) {
        const Node p = unknown_nodes_[static_cast<size_t>(row)];
        switch (row_kind(p)) {
            case RowKind::Interior:
                rhs[static_cast<size_t>(row)] = f.at(p);
                known_contrib(row, Node{p.i - 1, p.j}, -s);
                known_contrib(row, Node{p.i + 1, p.j}, -s);
                known_contrib(row, Node{p.i, p.j - 1}, -s);
                known_contrib(row, Node{p.i, p.j + 1}, -s);
                break;
            case RowKind::VerticalEdge: {
                const int pos = grid_.interface_position(vface_, p);
                rhs[static_cast<size_t>(row)] =
                    0.5 * f.at(p) + vertical_bc.at_position(pos) / h;
                known_contrib(row, Node{0, p.j - 1}, -0.5 * s);
                known_contrib(row, Node{0, p.j + 1}, -0.5 * s);
                known_contrib(row, Node{din_x_, p.j}, -s);
                break;
            }
            case RowKind::HorizontalEdge: {
                const int pos = grid_.interface_position(hface_, p);
                rhs[static_cast<size_t>(row)] =
                    0.5 * f.at(p) + horizontal_bc.at_position(pos) / h;
                known_contrib(row, Node{p.i - 1, 0}, -0.5 * s);
                known_contrib(row, Node{p.i + 1, 0}, -0.5 * s);
                known_contrib(row, Node{p.i, din_y_}, -s);
                break;
            }
            case RowKind::NeumannCorner:
                rhs[static_cast<size_t>(row)] =
                    0.25 * f.at(p) +
                    (vertical_bc.at_position(n) + horizontal_bc.at_position(n)) / (2.0 * h);
                known_contrib(row, Node{din_x_, 0}, -0.5 * s);
                known_contrib(row, Node{0, din_y_}, -0.5 * s);
                break;
        }
    }

    const std::vector<double> x = fact_.solve(rhs);
    SubField out(grid_, sub_);
    for (int j = region_.j0; j <= region_.j1; ++j)
        for (int i = region_.i0; i <= region_.i1; ++i) {
            Node p{i, j};
            const int id = unknown_of_node_[static_cast<size_t>(grid_.index(p))];
            out.at(p) = id >= 0 ? x[static_cast<size_t>(id)]
                                : dirichlet_value(p, g, vertical_bc, horizontal_bc, policy);
        }
    return out;
}

SubField solve_subdomain(const Grid& grid, SubdomainId sub, const GlobalField& f,
                         const GlobalField& g, const EdgeBc& vertical_bc,
                         const EdgeBc& horizontal_bc, const CornerPolicy& policy) {
    SubdomainSolver solver(grid, sub, vertical_bc.kind(), horizontal_bc.kind());
    return solver.solve(f, g, vertical_bc, horizontal_bc, policy);
}

Trace extract_flux(const Grid& grid, SubdomainId sub, const SubField& field,
                   const GlobalField& f, InterfaceId edge) {
    if (edge != vertical_interface(sub) && edge != horizontal_interface(sub))
        throw std::invalid_argument("extract_flux: edge not adjacent to subdomain");
    const int n = grid.n();
    const double h = grid.h();
    const double s = 1.0 / (h * h);
    const bool vertical = edge == vertical_interface(sub);
    const int dx = interior_dir_x(sub);
    const int dy = interior_dir_y(sub);

    std::vector<double> values(static_cast<size_t>(n), 0.0);
    for (int pos = 1; pos < n; ++pos) {
        const Node p = grid.interface_node(edge, pos);
        const Node left = grid.interface_node(edge, pos - 1);
        const Node right = grid.interface_node(edge, pos + 1);
        const Node in = vertical ? Node{dx, p.j} : Node{p.i, dy};
        const double stencil =
            (4.0 * field.at(p) - field.at(left) - field.at(right) - 2.0 * field.at(in)) * s;
        values[static_cast<size_t>(pos - 1)] = 0.5 * h * (stencil - f.at(p));
    }
    // corner residual, split half per adjacent arm
    const Node c{0, 0};
    const double corner_stencil =
        (4.0 * field.at(c) - 2.0 * field.at(Node{dx, 0}) - 2.0 * field.at(Node{0, dy})) * s;
    values[static_cast<size_t>(n - 1)] = 0.25 * h * (corner_stencil - f.at(c));
    return Trace::normal_flux(edge, std::move(values));
}

MonolithicSolver::MonolithicSolver(const Grid& grid)
    : grid_(grid), fact_([&grid] {
          const int n = grid.n();
          const int m = 2 * n - 1;  // interior nodes per side
          const double s = 1.0 / (grid.h() * grid.h());
          auto id_of = [&](Node p) -> int {
              if (std::abs(p.i) == n || std::abs(p.j) == n) return -1;
              return (p.i + n - 1) + m * (p.j + n - 1);
          };
          SparseMatrix a(m * m, m * m);
          for (int j = -n + 1; j <= n - 1; ++j)
              for (int i = -n + 1; i <= n - 1; ++i) {
                  const int row = id_of(Node{i, j});
                  a.add(row, row, 4.0 * s);
                  for (Node q : {Node{i - 1, j}, Node{i + 1, j}, Node{i, j - 1}, Node{i, j + 1}}) {
                      const int col = id_of(q);
                      if (col >= 0) a.add(row, col, -s);
                  }
              }
          a.finalize();
          return Factorization(a);
      }()) {}

GlobalField MonolithicSolver::solve(const GlobalField& f, const GlobalField& g) const {
    const int n = grid_.n();
    const int m = 2 * n - 1;
    const double s = 1.0 / (grid_.h() * grid_.h());
    std::vector<double> rhs(static_cast<size_t>(m) * static_cast<size_t>(m), 0.0);
    for (int j = -n + 1; j <= n - 1; ++j)
        for (int i = -n + 1; i <= n - 1; ++i) {
            const size_t row = static_cast<size_t>((i + n - 1) + m * (j + n - 1));
            double b = f.at(Node{i, j});
            for (Node q : {Node{i - 1, j}, Node{i + 1, j}, Node{i, j - 1}, Node{i, j + 1}})
                if (std::abs(q.i) == n || std::abs(q.j) == n) b += s * g.at(q);
            rhs[row] = b;
        }
    const std::vector<double> x = fact_.solve(rhs);
    GlobalField out(grid_);
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            Node p{i, j};
            if (std::abs(i) == n || std::abs(j) == n)
                out.at(p) = g.at(p);
            else
                out.at(p) = x[static_cast<size_t>((i + n - 1) + m * (j + n - 1))];
        }
    return out;
}

GlobalField monolithic_solve(const Grid& grid, const GlobalField& f, const GlobalField& g) {
    return MonolithicSolver(grid).solve(f, g);
}

double l2_norm(const GlobalField& field) {
    double acc = 0.0;
    for (double v : field.values()) acc += v * v;
    return field.grid().h() * std::sqrt(acc);
}

double l2_norm(const SubField& field) {
    double acc = 0.0;
    for (double v : field.values()) acc += v * v;
    return field.grid().h() * std::sqrt(acc);
}

double broken_h1_norm(const std::array<SubField, 4>& fields) {
    double total = 0.0;
    for (const SubField& u : fields) {
        const SubRegion& reg = u.region();
        const double h = u.grid().h();
        double l2sq = 0.0;
        for (double v : u.values()) l2sq += v * v;
        l2sq *= h * h;
        double gradsq = 0.0;
        for (int j = reg.j0; j <= reg.j1; ++j)
            for (int i = reg.i0; i <= reg.i1; ++i) {
                if (i < reg.i1) {
                    const double d = u.at(Node{i + 1, j}) - u.at(Node{i, j});
                    gradsq += d * d;
                }
                if (j < reg.j1) {
                    const double d = u.at(Node{i, j + 1}) - u.at(Node{i, j});
                    gradsq += d * d;
                }
            }
        total += std::sqrt(l2sq + gradsq);
    }
    return total;
}

GlobalField recombine(const Grid& grid, const std::array<SubField, 4>& fields) {
    GlobalField sum(grid);
    std::vector<int> count(static_cast<size_t>(grid.node_count()), 0);
    for (const SubField& u : fields) {
        const SubRegion& reg = u.region();
        for (int j = reg.j0; j <= reg.j1; ++j)
            for (int i = reg.i0; i <= reg.i1; ++i) {
                Node p{i, j};
                sum.at(p) += u.at(p);
                ++count[static_cast<size_t>(grid.index(p))];
            }
    }
    for (int idx = 0; idx < grid.node_count(); ++idx)
        sum.values()[static_cast<size_t>(idx)] /= count[static_cast<size_t>(idx)];
    return sum;
}

}  // namespace nncross
