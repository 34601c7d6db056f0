#include "nncross/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <tuple>

namespace nncross {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::pair<GlobalField, GlobalField> build_example1(const Grid& grid) {
    GlobalField f = GlobalField::sample(grid, [](double, double) { return 1.0; });
    GlobalField g(grid);
    return {std::move(f), std::move(g)};
}

std::pair<GlobalField, GlobalField> build_example2(const Grid& grid) {
    GlobalField f(grid);
    const int n = grid.n();
    // Linear part; y + x at the mirror node is the exact negation of x + y.
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            Node p{i, j};
            f.at(p) = grid.x(p) + grid.y(p);
        }
    // Angular part, assigned pairwise so oddness is exact: h = sin(2 phi) on
    // the open lower-left quadrant, -sin(2 phi) on the upper-right, 0 on the
    // axes and in the other two quadrants.
    for (int j = -n; j <= -1; ++j)
        for (int i = -n; i <= -1; ++i) {
            Node p{i, j};
            const double v = std::sin(2.0 * std::atan2(grid.y(p), grid.x(p)));
            f.at(p) += v;
            f.at(Node{-i, -j}) -= v;
        }
    GlobalField g(grid);
    return {std::move(f), std::move(g)};
}

void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const GlobalField& field) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_field_csv: cannot open " + path.string());
    out << "x,y,value\n";
    const int n = grid.n();
    for (int j = -n; j <= n; ++j)
        for (int i = -n; i <= n; ++i) {
            Node p{i, j};
            out << fmt17(grid.x(p)) << ',' << fmt17(grid.y(p)) << ',' << fmt17(field.at(p))
                << '\n';
        }
    if (!out) throw std::runtime_error("write_field_csv: write failed for " + path.string());
}

GlobalField read_field_csv(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,value", 0) != 0)
        throw std::runtime_error("read_field_csv: missing x,y,value header in " + path.string());

    GlobalField field(grid);
    const int n = grid.n();
    const double tol = 1e-9 * grid.h();
    long line_no = 1;
    int count = 0;
    const int expected = grid.node_count();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        double x = 0.0, y = 0.0, v = 0.0;
        if (std::sscanf(line.c_str(), "%lf , %lf , %lf", &x, &y, &v) != 3)
            throw std::runtime_error("read_field_csv: malformed row at line " +
                                     std::to_string(line_no) + " of " + path.string());
        if (count >= expected)
            throw std::runtime_error("read_field_csv: expected " + std::to_string(expected) +
                                     " rows, found more (line " + std::to_string(line_no) + ")");
        const Node p{count % grid.side() - n, count / grid.side() - n};
        if (std::abs(x - grid.x(p)) > tol || std::abs(y - grid.y(p)) > tol)
            throw std::runtime_error("read_field_csv: node (" + fmt17(x) + ", " + fmt17(y) +
                                     ") at line " + std::to_string(line_no) +
                                     " does not match the lattice");
        field.at(p) = v;
        ++count;
    }
    if (count != expected)
        throw std::runtime_error("read_field_csv: expected " + std::to_string(expected) +
                                 " rows, found " + std::to_string(count) + " in " + path.string());
    return field;
}

namespace {

void write_history_csv(const std::filesystem::path& path, const RunHistory& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run_experiment: cannot open " + path.string());
    out << "iter,l2_error,broken_h1_error,subdomain_sum_l2,ratio,psi_crosspoint_max,status\n";
    for (size_t r = 0; r < history.records.size(); ++r) {
        const IterationRecord& rec = history.records[r];
        const bool last = r + 1 == history.records.size();
        out << rec.k << ',' << fmt17(rec.l2_error) << ',' << fmt17(rec.broken_h1_error) << ','
            << fmt17(rec.subdomain_sum_l2) << ',';
        if (std::isfinite(rec.ratio)) out << fmt17(rec.ratio);
        out << ',' << fmt17(rec.psi_crosspoint_max) << ','
            << (last ? to_string(history.status) : "running") << '\n';
    }
    if (!out) throw std::runtime_error("run_experiment: write failed for " + path.string());
}

}  // namespace

const char* to_string(MethodKind method) {
    switch (method) {
        case MethodKind::Standard: return "standard";
        case MethodKind::Mixed: return "mixed";
        case MethodKind::New: return "new";
    }
    return "unknown";
}

bool parse_method(const std::string& name, MethodKind& out) {
    if (name == "standard") out = MethodKind::Standard;
    else if (name == "mixed") out = MethodKind::Mixed;
    else if (name == "new") out = MethodKind::New;
    else return false;
    return true;
}

int run_experiment(const RunConfig& config) {
    if (config.n < 2) {
        std::cerr << "error: --n must be >= 2\n";
        return kExitUsage;
    }
    if (config.max_iter < 1) {
        std::cerr << "error: --max-iter must be >= 1\n";
        return kExitUsage;
    }
    if (!(config.tol > 0.0)) {
        std::cerr << "error: --tol must be positive\n";
        return kExitUsage;
    }
    if (config.example != 1 && config.example != 2 && config.example != 0) {
        std::cerr << "error: --example must be 1, 2 or custom\n";
        return kExitUsage;
    }
    if (config.example == 0 && config.f_file.empty()) {
        std::cerr << "error: custom data requires --f-file\n";
        return kExitUsage;
    }
    if (!(config.theta > 0.0 && config.theta < 0.5))
        std::cerr << "warning: theta = " << config.theta
                  << " is outside (0, 0.5); convergence is only guaranteed inside\n";

    const Grid grid = build_grid(config.n);
    GlobalField f(grid), g(grid);
    try {
        if (config.example == 1) {
            std::tie(f, g) = build_example1(grid);
        } else if (config.example == 2) {
            std::tie(f, g) = build_example2(grid);
        } else {
            f = read_field_csv(config.f_file, grid);
            if (!config.g_file.empty()) g = read_field_csv(config.g_file, grid);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const RunResult result =
            run(grid, f, g, config.method, config.theta, config.max_iter, config.tol);

        std::filesystem::create_directories(config.output_dir);
        write_history_csv(config.output_dir / "history.csv", result.history);
        if (config.emit_fields) {
            write_field_csv(config.output_dir / "solution.csv", grid, result.solution);
            write_field_csv(config.output_dir / "error.csv", grid, result.error);
            write_field_csv(config.output_dir / "psi.csv", grid, result.psi);
        }

        double measured = std::numeric_limits<double>::quiet_NaN();
        for (const IterationRecord& rec : result.history.records)
            if (std::isfinite(rec.ratio)) measured = rec.ratio;
        const double expected = std::abs(1.0 - 4.0 * config.theta);
        std::cout << "method=" << to_string(config.method) << " n=" << config.n
                  << " theta=" << config.theta << " status=" << to_string(result.history.status)
                  << " iterations=" << result.history.records.back().k << '\n';
        std::cout << "final_l2_error=" << fmt17(result.history.records.back().l2_error)
                  << " measured_ratio=" << fmt17(measured) << " expected_ratio=" << fmt17(expected)
                  << '\n';

        switch (result.history.status) {
            case RunStatus::Converged: return kExitConverged;
            case RunStatus::MaxIterations: return kExitMaxIterations;
            case RunStatus::Diverged: return kExitDiverged;
            case RunStatus::SolverFailure: return kExitFailure;
        }
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace nncross
