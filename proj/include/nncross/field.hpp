#pragma once

#include <utility>
#include <vector>

#include "nncross/grid.hpp"

namespace nncross {

// Nodal scalar field on the whole grid.
class GlobalField {
public:
    explicit GlobalField(const Grid& grid)
        : grid_(grid), v_(static_cast<size_t>(grid.node_count()), 0.0) {}

    template <class F>
    static GlobalField sample(const Grid& grid, F&& f) {
        GlobalField out(grid);
        const int n = grid.n();
        for (int j = -n; j <= n; ++j)
            for (int i = -n; i <= n; ++i) {
                Node p{i, j};
                out.at(p) = f(grid.x(p), grid.y(p));
            }
        return out;
    }

    const Grid& grid() const { return grid_; }
    double at(Node p) const { return v_[static_cast<size_t>(grid_.index(p))]; }
    double& at(Node p) { return v_[static_cast<size_t>(grid_.index(p))]; }
    const std::vector<double>& values() const { return v_; }
    std::vector<double>& values() { return v_; }

private:
    Grid grid_;
    std::vector<double> v_;
};

enum class SymmetryKind { Even, Odd };

// Split into the part invariant under (x,y) -> (-x,-y) and the anti-invariant part:
//   even(p) = (f(p) + f(-p)) / 2,  odd(p) = (f(p) - f(-p)) / 2.
// Both parts are exactly symmetric/antisymmetric because the reflection is an
// index permutation and the two formulas see the same operands at p and -p.
std::pair<GlobalField, GlobalField> decompose_even_odd(const GlobalField& field);

// Pointwise sum; throws on grid mismatch.
GlobalField recompose(const GlobalField& even, const GlobalField& odd);

// max over nodes of |f(p) - f(-p)| (Even) or |f(p) + f(-p)| (Odd);
// zero iff the field has the stated symmetry.
double symmetry_defect(const GlobalField& field, SymmetryKind kind);

}  // namespace nncross
