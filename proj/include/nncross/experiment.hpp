#pragma once

#include <filesystem>
#include <string>
#include <utility>

#include "nncross/nnm.hpp"

namespace nncross {

// Exit codes of run_experiment (and of the CLI).
inline constexpr int kExitConverged = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMaxIterations = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitUsage = 64;

struct RunConfig {
    MethodKind method = MethodKind::New;
    int example = 1;  // 1, 2, or 0 for custom data from f_file/g_file
    double theta = 0.25;
    int n = 100;
    int max_iter = 50;
    double tol = 1e-10;
    std::filesystem::path output_dir = "out";
    bool emit_fields = false;
    std::filesystem::path f_file;
    std::filesystem::path g_file;  // optional; zero boundary data when empty
};

// f = 1, g = 0 (even-symmetric benchmark).
std::pair<GlobalField, GlobalField> build_example1(const Grid& grid);

// f = x + y + h with h = sin(2 phi) in the lower-left quadrant, -sin(2 phi) in
// the upper-right one and 0 elsewhere (phi the polar angle); g = 0. The h part
// is assigned pairwise over mirrored nodes so f is odd-symmetric exactly.
std::pair<GlobalField, GlobalField> build_example2(const Grid& grid);

// Node-value CSV with header "x,y,value", one row per node in row-major order
// (y outer, x inner), 17 significant digits.
GlobalField read_field_csv(const std::filesystem::path& path, const Grid& grid);
void write_field_csv(const std::filesystem::path& path, const Grid& grid,
                     const GlobalField& field);

// Runs one configuration, writes <output_dir>/history.csv (and field
// snapshots when emit_fields), prints the final status and the measured
// asymptotic contraction ratio next to |1 - 4 theta|. Returns the exit code.
int run_experiment(const RunConfig& config);

const char* to_string(MethodKind method);
bool parse_method(const std::string& name, MethodKind& out);

}  // namespace nncross
