#pragma once

#include <array>
#include <stdexcept>
#include <utility>

namespace nncross {

// Lattice node (i, j) in {-n..n}^2 at coordinates (i*h, j*h), h = 1/n.
// Reflections act on the integer indices, so symmetry relations are exact.
struct Node {
    int i = 0;
    int j = 0;
    friend bool operator==(Node a, Node b) { return a.i == b.i && a.j == b.j; }
};

// Subdomain numbering, counter-clockwise from bottom-left:
//   Omega1 = (-1,0)^2, Omega2 = (0,1)x(-1,0), Omega3 = (0,1)^2, Omega4 = (-1,0)x(0,1).
enum class SubdomainId : int { Omega1 = 1, Omega2 = 2, Omega3 = 3, Omega4 = 4 };

// Interface arms of the skeleton, named by the subdomain pair they separate:
//   G12 = {0}x(-1,0), G23 = (0,1)x{0}, G34 = {0}x(0,1), G41 = (-1,0)x{0}.
// The node list of an arm runs from the outer-boundary endpoint (position 0)
// to the interior cross-point (position n).
enum class InterfaceId : int { G12 = 0, G23 = 1, G34 = 2, G41 = 3 };

enum class Reflection { X, Y, XY };

struct NodeClass {
    enum class Kind { Interior, Interface, CrossPoint, OuterBoundary, BoundaryCrossPoint };
    Kind kind = Kind::Interior;
    SubdomainId sub = SubdomainId::Omega1;  // meaningful for Kind::Interior
    InterfaceId iface = InterfaceId::G12;   // meaningful for Kind::Interface
};

inline int sub_index(SubdomainId s) { return static_cast<int>(s) - 1; }
inline SubdomainId subdomain_from_index(int idx) { return static_cast<SubdomainId>(idx + 1); }
inline int iface_index(InterfaceId e) { return static_cast<int>(e); }

// Sign (-1)^i used by the mixed method: -1 for Omega1/Omega3, +1 for Omega2/Omega4.
inline int mixed_sign(SubdomainId s) { return (static_cast<int>(s) % 2 == 0) ? +1 : -1; }

// Closed index range [i0,i1]x[j0,j1] of one subdomain ((n+1)^2 nodes).
struct SubRegion {
    int i0, i1, j0, j1;
    bool contains(Node p) const { return p.i >= i0 && p.i <= i1 && p.j >= j0 && p.j <= j1; }
};

// Symmetric Cartesian mesh on (-1,1)^2 with the four-subdomain topology.
// Immutable after construction; cheap to copy.
class Grid {
public:
    explicit Grid(int n);

    int n() const { return n_; }
    double h() const { return h_; }
    int side() const { return 2 * n_ + 1; }
    int node_count() const { return side() * side(); }

    bool contains(Node p) const {
        return p.i >= -n_ && p.i <= n_ && p.j >= -n_ && p.j <= n_;
    }
    int index(Node p) const { return (p.i + n_) + side() * (p.j + n_); }
    Node node_at(int idx) const {
        return Node{idx % side() - n_, idx / side() - n_};
    }
    double x(Node p) const { return p.i * h_; }
    double y(Node p) const { return p.j * h_; }

    Node reflect(Node p, Reflection r) const;
    NodeClass classify(Node p) const;

    // One arm has n+1 nodes; position 0 is the outer endpoint, position n the cross-point.
    Node interface_node(InterfaceId e, int pos) const;
    int interface_position(InterfaceId e, Node p) const;

    SubRegion region(SubdomainId s) const;

    friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

private:
    int n_;
    double h_;
};

// Topology helpers (independent of the mesh size).
std::pair<SubdomainId, SubdomainId> interface_pair(InterfaceId e);
SubdomainId neighbor_across(SubdomainId s, InterfaceId e);
// The arm on the line x = 0 touching subdomain s (G12 or G34).
InterfaceId vertical_interface(SubdomainId s);
// The arm on the line y = 0 touching subdomain s (G23 or G41).
InterfaceId horizontal_interface(SubdomainId s);
// Odd-numbered member of the pair adjacent to e (Omega1 or Omega3).
SubdomainId odd_member(InterfaceId e);

// Spec-level entry points.
Grid build_grid(int n);
NodeClass classify_node(const Grid& grid, Node p);
Node reflect(const Grid& grid, Node p, Reflection r);

}  // namespace nncross
