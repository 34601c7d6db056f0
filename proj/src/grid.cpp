#include "nncross/grid.hpp"

#include <cstdlib>

namespace nncross {

Grid::Grid(int n) : n_(n), h_(1.0 / n) {
    if (n < 2) throw std::invalid_argument("Grid: n must be >= 2");
}

Node Grid::reflect(Node p, Reflection r) const {
    if (!contains(p)) throw std::out_of_range("Grid::reflect: node outside grid");
    switch (r) {
        case Reflection::X: return Node{-p.i, p.j};
        case Reflection::Y: return Node{p.i, -p.j};
        case Reflection::XY: return Node{-p.i, -p.j};
    }
    throw std::invalid_argument("Grid::reflect: bad reflection kind");
}

NodeClass Grid::classify(Node p) const {
    if (!contains(p)) throw std::out_of_range("Grid::classify: node outside grid");
    const bool on_outer = std::abs(p.i) == n_ || std::abs(p.j) == n_;
    if (on_outer) {
        const bool axis = p.i == 0 || p.j == 0;
        return NodeClass{axis ? NodeClass::Kind::BoundaryCrossPoint
                              : NodeClass::Kind::OuterBoundary,
                         SubdomainId::Omega1, InterfaceId::G12};
    }
    if (p.i == 0 && p.j == 0)
        return NodeClass{NodeClass::Kind::CrossPoint, SubdomainId::Omega1, InterfaceId::G12};
    if (p.i == 0) {
        return NodeClass{NodeClass::Kind::Interface, SubdomainId::Omega1,
                         p.j < 0 ? InterfaceId::G12 : InterfaceId::G34};
    }
    if (p.j == 0) {
        return NodeClass{NodeClass::Kind::Interface, SubdomainId::Omega1,
                         p.i < 0 ? InterfaceId::G41 : InterfaceId::G23};
    }
    SubdomainId s;
    if (p.i < 0)
        s = p.j < 0 ? SubdomainId::Omega1 : SubdomainId::Omega4;
    else
        s = p.j < 0 ? SubdomainId::Omega2 : SubdomainId::Omega3;
    return NodeClass{NodeClass::Kind::Interior, s, InterfaceId::G12};
}

Node Grid::interface_node(InterfaceId e, int pos) const {
    if (pos < 0 || pos > n_) throw std::out_of_range("Grid::interface_node: bad position");
    switch (e) {
        case InterfaceId::G12: return Node{0, -n_ + pos};
        case InterfaceId::G23: return Node{n_ - pos, 0};
        case InterfaceId::G34: return Node{0, n_ - pos};
        case InterfaceId::G41: return Node{-n_ + pos, 0};
    }
    throw std::invalid_argument("Grid::interface_node: bad interface");
}

int Grid::interface_position(InterfaceId e, Node p) const {
    int pos = -1;
    switch (e) {
        case InterfaceId::G12: pos = (p.i == 0 && p.j <= 0) ? p.j + n_ : -1; break;
        case InterfaceId::G23: pos = (p.j == 0 && p.i >= 0) ? n_ - p.i : -1; break;
        case InterfaceId::G34: pos = (p.i == 0 && p.j >= 0) ? n_ - p.j : -1; break;
        case InterfaceId::G41: pos = (p.j == 0 && p.i <= 0) ? p.i + n_ : -1; break;
    }
    if (pos < 0 || pos > n_)
        throw std::invalid_argument("Grid::interface_position: node not on interface");
    return pos;
}

SubRegion Grid::region(SubdomainId s) const {
    switch (s) {
        case SubdomainId::Omega1: return SubRegion{-n_, 0, -n_, 0};
        case SubdomainId::Omega2: return SubRegion{0, n_, -n_, 0};
        case SubdomainId::Omega3: return SubRegion{0, n_, 0, n_};
        case SubdomainId::Omega4: return SubRegion{-n_, 0, 0, n_};
    }
    throw std::invalid_argument("Grid::region: bad subdomain");
}

std::pair<SubdomainId, SubdomainId> interface_pair(InterfaceId e) {
    switch (e) {
        case InterfaceId::G12: return {SubdomainId::Omega1, SubdomainId::Omega2};
        case InterfaceId::G23: return {SubdomainId::Omega2, SubdomainId::Omega3};
        case InterfaceId::G34: return {SubdomainId::Omega3, SubdomainId::Omega4};
        case InterfaceId::G41: return {SubdomainId::Omega4, SubdomainId::Omega1};
    }
    throw std::invalid_argument("interface_pair: bad interface");
}

SubdomainId neighbor_across(SubdomainId s, InterfaceId e) {
    auto [a, b] = interface_pair(e);
    if (s == a) return b;
    if (s == b) return a;
    throw std::invalid_argument("neighbor_across: subdomain not adjacent to interface");
}

InterfaceId vertical_interface(SubdomainId s) {
    return (s == SubdomainId::Omega1 || s == SubdomainId::Omega2) ? InterfaceId::G12
                                                                  : InterfaceId::G34;
}

InterfaceId horizontal_interface(SubdomainId s) {
    return (s == SubdomainId::Omega2 || s == SubdomainId::Omega3) ? InterfaceId::G23
                                                                  : InterfaceId::G41;
}

SubdomainId odd_member(InterfaceId e) {
    auto [a, b] = interface_pair(e);
    return mixed_sign(a) < 0 ? a : b;
}

Grid build_grid(int n) { return Grid(n); }

NodeClass classify_node(const Grid& grid, Node p) { return grid.classify(p); }

Node reflect(const Grid& grid, Node p, Reflection r) { return grid.reflect(p, r); }

}  // namespace nncross
