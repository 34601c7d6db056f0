#include "nncross/field.hpp"

#include <cmath>

namespace nncross {

std::pair<GlobalField, GlobalField> decompose_even_odd(const GlobalField& field) {
    const Grid& g = field.grid();
    GlobalField even(g), odd(g);
    const int n = g.n();
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            Node p{i, j};
            const double a = field.at(p);
            const double b = field.at(g.reflect(p, Reflection::XY));
            even.at(p) = (a + b) / 2.0;
            odd.at(p) = (a - b) / 2.0;
        }
    return {std::move(even), std::move(odd)};
}

GlobalField recompose(const GlobalField& even, const GlobalField& odd) {
    if (!(even.grid() == odd.grid()))
        throw std::invalid_argument("recompose: grid mismatch");
    GlobalField out(even.grid());
    for (size_t k = 0; k < out.values().size(); ++k)
        out.values()[k] = even.values()[k] + odd.values()[k];
    return out;
}

double symmetry_defect(const GlobalField& field, SymmetryKind kind) {
    const Grid& g = field.grid();
    const int n = g.n();
    double defect = 0.0;
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            Node p{i, j};
            const double a = field.at(p);
            const double b = field.at(g.reflect(p, Reflection::XY));
            const double d = (kind == SymmetryKind::Even) ? std::abs(a - b) : std::abs(a + b);
            if (d > defect) defect = d;
        }
    return defect;
}

}  // namespace nncross
