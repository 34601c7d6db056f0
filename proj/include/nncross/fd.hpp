#pragma once

#include <array>
#include <vector>

#include "nncross/field.hpp"
#include "nncross/grid.hpp"
#include "nncross/linsolve.hpp"

namespace nncross {

// Nodal values on one closed subdomain (interior, its two interface arms,
// its outer boundary); (n+1)^2 nodes addressed by global node.
class SubField {
public:
    SubField(const Grid& grid, SubdomainId sub);

    const Grid& grid() const { return grid_; }
    SubdomainId sub() const { return sub_; }
    const SubRegion& region() const { return region_; }

    bool contains(Node p) const { return region_.contains(p); }
    double at(Node p) const { return v_[local_index(p)]; }
    double& at(Node p) { return v_[local_index(p)]; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

private:
    size_t local_index(Node p) const {
        const int a = p.i - region_.i0;
        const int b = p.j - region_.j0;
        return static_cast<size_t>(a) + static_cast<size_t>(grid_.n() + 1) * static_cast<size_t>(b);
    }

    Grid grid_;
    SubdomainId sub_;
    SubRegion region_;
    std::vector<double> v_;
};

enum class TraceKind { DirichletValue, NormalFlux };

// Ordered data along one interface arm. Dirichlet traces carry all n+1
// positions (0 = outer endpoint .. n = cross-point); normal-flux traces carry
// positions 1..n (the outer endpoint always belongs to the outer Dirichlet
// condition).
class Trace {
public:
    static Trace dirichlet(InterfaceId iface, std::vector<double> values);
    static Trace normal_flux(InterfaceId iface, std::vector<double> values);

    InterfaceId iface() const { return iface_; }
    TraceKind kind() const { return kind_; }
    int first_position() const { return kind_ == TraceKind::DirichletValue ? 0 : 1; }
    int size() const { return static_cast<int>(v_.size()); }

    double at_position(int pos) const;
    double& at_position(int pos);

private:
    Trace(InterfaceId iface, TraceKind kind, std::vector<double> values)
        : iface_(iface), kind_(kind), v_(std::move(values)) {}

    InterfaceId iface_;
    TraceKind kind_;
    std::vector<double> v_;
};

// One boundary condition per interface arm of a subdomain; the trace kind is
// the condition kind.
using EdgeBc = Trace;

// Rules for nodes where two conditions meet: at the interior cross-point two
// Dirichlet arms average their values and Dirichlet wins over Neumann; outer
// endpoints always take the outer Dirichlet datum.
struct CornerPolicy {
    enum class TwoDirichlet { AverageValues };
    enum class DirichletNeumann { DirichletWins };
    TwoDirichlet dd_rule = TwoDirichlet::AverageValues;
    DirichletNeumann dn_rule = DirichletNeumann::DirichletWins;
};

// Five-point solver on one closed subdomain with a fixed Dirichlet/Neumann
// pattern on its two interface arms. The matrix is assembled and factorized
// once; solve() may be called with many data sets.
//
// Rows, before symmetric rescaling:
//   interior:      (4u0 - uW - uE - uS - uN)/h^2            = f0
//   Neumann edge:  (4u0 - uL - uR - 2u_in)/h^2              = f0 + (2/h) gN
//   Neumann corner:(4u0 - 2u_in1 - 2u_in2)/h^2              = f0 + (2/h)(gN1 + gN2)
// Edge and corner rows are scaled by 1/2 and 1/4 so the system stays symmetric.
class SubdomainSolver {
public:
    SubdomainSolver(const Grid& grid, SubdomainId sub, TraceKind vertical_kind,
                    TraceKind horizontal_kind);

    // f is sampled at nodes; outer Dirichlet values are read from g on the
    // outer boundary. The traces must match the kinds fixed at construction.
    SubField solve(const GlobalField& f, const GlobalField& g, const EdgeBc& vertical_bc,
                   const EdgeBc& horizontal_bc, const CornerPolicy& policy = {}) const;

    SubdomainId sub() const { return sub_; }
    TraceKind vertical_kind() const { return vkind_; }
    TraceKind horizontal_kind() const { return hkind_; }

private:
    enum class RowKind { Interior, VerticalEdge, HorizontalEdge, NeumannCorner };

    bool is_unknown(Node p) const;
    RowKind row_kind(Node p) const;
    double dirichlet_value(Node p, const GlobalField& g, const EdgeBc& vbc, const EdgeBc& hbc,
                           const CornerPolicy& policy) const;

    Grid grid_;
    SubdomainId sub_;
    SubRegion region_;
    TraceKind vkind_, hkind_;
    InterfaceId vface_, hface_;
    int din_x_, din_y_;  // direction from an interface arm into the subdomain
    std::vector<int> unknown_of_node_;  // global node index -> unknown id or -1
    std::vector<Node> unknown_nodes_;
    Factorization fact_;

    static Factorization build_matrix(const Grid& grid, SubdomainId sub, TraceKind vkind,
                                      TraceKind hkind, std::vector<int>& unknown_of_node,
                                      std::vector<Node>& unknown_nodes);
};

// One-shot variant of SubdomainSolver for ad-hoc use.
SubField solve_subdomain(const Grid& grid, SubdomainId sub, const GlobalField& f,
                         const GlobalField& g, const EdgeBc& vertical_bc,
                         const EdgeBc& horizontal_bc, const CornerPolicy& policy = {});

// Residual-based (mimetic) normal flux of a subdomain field along one of its
// arms: the exact algebraic inverse of the Neumann rows above, so feeding the
// extracted trace back into a Neumann solve reproduces the field. At the
// cross-point the corner residual is split half per adjacent arm.
Trace extract_flux(const Grid& grid, SubdomainId sub, const SubField& field,
                   const GlobalField& f, InterfaceId edge);

// Five-point solve on the undecomposed grid; the reference all iteration
// errors are measured against.
class MonolithicSolver {
public:
    explicit MonolithicSolver(const Grid& grid);
    GlobalField solve(const GlobalField& f, const GlobalField& g) const;

private:
    Grid grid_;
    Factorization fact_;
};

GlobalField monolithic_solve(const Grid& grid, const GlobalField& f, const GlobalField& g);

// h * sqrt(sum of squared nodal values) over the field's node set.
double l2_norm(const GlobalField& field);
double l2_norm(const SubField& field);

// Sum over subdomains of sqrt(l2^2 + sum of squared forward differences),
// differences taken strictly inside each closed subdomain.
double broken_h1_norm(const std::array<SubField, 4>& fields);

// Nodal average of the subdomain fields (plain value at single-owner nodes,
// mean of the adjacent fields on interfaces and at the cross-point).
GlobalField recombine(const Grid& grid, const std::array<SubField, 4>& fields);

}  // namespace nncross
