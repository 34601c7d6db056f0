// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nncross/experiment.hpp"
#include "nncross/nnm.hpp"

using namespace nncross;

namespace {

int g_failures = 0;

void report(int id, const std::string& what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double lcg_unit(uint64_t& s) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return 2.0 * (static_cast<double>(s >> 11) / 9007199254740992.0) - 1.0;
}

std::pair<GlobalField, GlobalField> example_data(const Grid& g, int example) {
    return example == 1 ? build_example1(g) : build_example2(g);
}

std::array<SubField, 4> negated(const std::array<SubField, 4>& a) {
    std::array<SubField, 4> out = a;
    for (SubField& s : out)
        for (double& v : s.values()) v = -v;
    return out;
}

double max_abs(const std::array<SubField, 4>& a) {
    double m = 0.0;
    for (const SubField& s : a)
        for (double v : s.values()) m = std::max(m, std::abs(v));
    return m;
}

double pair_defect(const std::array<SubField, 4>& a, const std::array<SubField, 4>& b,
                   double scale_b) {
    double worst = 0.0;
    for (int s = 0; s < 4; ++s) {
        const SubRegion& reg = a[static_cast<size_t>(s)].region();
        for (int j = reg.j0; j <= reg.j1; ++j)
            for (int i = reg.i0; i <= reg.i1; ++i) {
                const Node p{i, j};
                worst = std::max(worst, std::abs(a[static_cast<size_t>(s)].at(p) -
                                               scale_b * b[static_cast<size_t>(s)].at(p)));
            }
    }
    return worst;
}

double reflection_defect(const Grid& g, const SubField& other, const SubField& e1, Reflection r,
                         double sign) {
    double worst = 0.0;
    const SubRegion& reg = other.region();
    for (int j = reg.j0; j <= reg.j1; ++j)
        for (int i = reg.i0; i <= reg.i1; ++i) {
            const Node p{i, j};
            worst = std::max(worst, std::abs(other.at(p) - sign * e1.at(g.reflect(p, r))));
        }
    return worst;
}

double field_l2_diff(const GlobalField& a, const GlobalField& b) {
    GlobalField d = a;
    for (size_t k = 0; k < d.values().size(); ++k) d.values()[k] -= b.values()[k];
    return l2_norm(d);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// 1. Direct solver at theta = 1/4: relative L2 error <= 1e-9 at iteration 2,
//    under 5 s per example, n = 40.
void criterion1() {
    bool ok = true;
    std::ostringstream detail;
    for (int example : {1, 2}) {
        const auto t0 = std::chrono::steady_clock::now();
        const Grid g = build_grid(40);
        auto [f, gb] = example_data(g, example);
        const RunResult r = run(g, f, gb, MethodKind::New, 0.25, 2, 1e-30);
        const GlobalField mono = monolithic_solve(g, f, gb);
        const double rel = field_l2_diff(r.solution, mono) / l2_norm(mono);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ok = ok && rel <= 1e-9 && seconds < 5.0;
        detail << "example " << example << ": rel_err(k=2)=" << rel << ", " << seconds << " s; ";
    }
    report(1, "new method is a direct solver at theta=1/4 (n=40)", ok, detail.str());
}

// 2. Measured contraction ratios match |1-4theta| within 1e-6 relative for
//    k in 3..8, theta sweep, both examples, n = 40.
void criterion2() {
    bool ok = true;
    double worst = 0.0;
    for (double theta : {0.1, 0.2, 0.23, 0.3, 0.4}) {
        for (int example : {1, 2}) {
            const Grid g = build_grid(40);
            auto [f, gb] = example_data(g, example);
            const RunResult r = run(g, f, gb, MethodKind::New, theta, 9, 1e-30);
            const double expected = std::abs(1.0 - 4.0 * theta);
            if (r.history.records.size() < 9) {
                ok = false;
                continue;
            }
            for (int k = 3; k <= 8; ++k) {
                const double ratio = r.history.records[static_cast<size_t>(k)].ratio;
                const double dev = std::abs(ratio / expected - 1.0);
                worst = std::max(worst, dev);
                ok = ok && dev <= 1e-6;
            }
        }
    }
    std::ostringstream detail;
    detail << "worst relative deviation " << worst;
    report(2, "contraction ratio equals |1-4theta| to 1e-6 (k=3..8, n=40)", ok, detail.str());
}

// 3. Proof identities: psi^1 = -2 e^1, reflection relations, nodewise
//    e^k = (1-4theta) e^{k-1} for k in 2..6.
void criterion3() {
    bool ok = true;
    std::ostringstream detail;
    const double theta = 0.3;
    const Grid g = build_grid(40);
    const GlobalField zeros(g);

    struct Setup {
        const char* name;
        MethodKind method;
        int example;
        double s2, s3, s4;  // reflection signs for e_2, e_3, e_4 vs e_1
    };
    for (const Setup& setup : {Setup{"even/standard", MethodKind::Standard, 1, +1, +1, +1},
                               Setup{"odd/mixed", MethodKind::Mixed, 2, -1, -1, +1}}) {
        auto [f, gb] = example_data(g, setup.example);
        const GlobalField u_ref = monolithic_solve(g, f, gb);
        const StepSolvers solvers = make_step_solvers(g, setup.method);
        IterState state = init_deviation_state(g, gb, u_ref, theta);
        advance(state, zeros, zeros, solvers);
        const std::array<SubField, 4> e1 = negated(state.u);

        const double psi_defect = pair_defect(state.psi, e1, -2.0);
        ok = ok && psi_defect <= 1e-9;

        const double refl =
            std::max({reflection_defect(g, e1[1], e1[0], Reflection::X, setup.s2),
                      reflection_defect(g, e1[2], e1[0], Reflection::XY, setup.s3),
                      reflection_defect(g, e1[3], e1[0], Reflection::Y, setup.s4)});
        ok = ok && refl <= 1e-9;

        double recurrence = 0.0;
        std::array<SubField, 4> prev = e1;
        for (int k = 2; k <= 6; ++k) {
            advance(state, zeros, zeros, solvers);
            const std::array<SubField, 4> cur = negated(state.u);
            const double defect = pair_defect(cur, prev, 1.0 - 4.0 * theta);
            recurrence = std::max(recurrence, defect / max_abs(prev));
            prev = cur;
        }
        ok = ok && recurrence <= 1e-8;
        detail << setup.name << ": |psi+2e|=" << psi_defect << ", refl=" << refl
               << ", recur_rel=" << recurrence << "; ";
    }
    report(3, "proof identities hold discretely (psi^1=-2e^1, reflections, e^k recurrence)", ok,
           detail.str());
}

// 4. Standard method on the odd example: non-contracting history and a
//    cross-point diagnostic that grows under refinement at fixed k = 2.
void criterion4() {
    bool ok = true;
    std::ostringstream detail;

    const Grid g = build_grid(40);
    auto [f, gb] = example_data(g, 2);
    const RunResult r = run(g, f, gb, MethodKind::Standard, 0.25, 10, 1e-30);
    const auto& rec = r.history.records;
    const bool diverged = r.history.status == RunStatus::Diverged;
    const bool non_contracting = rec.size() > 10 && rec[10].l2_error > rec[2].l2_error;
    ok = ok && (diverged || non_contracting);
    detail << "status=" << to_string(r.history.status);
    if (rec.size() > 10) detail << ", l2(10)/l2(2)=" << rec[10].l2_error / rec[2].l2_error;
    detail << "; psi_cross(k=2): ";

    double prev_diag = -1.0;
    bool growing = true;
    for (int n : {20, 40, 80}) {
        const Grid gn = build_grid(n);
        auto [fn, gn_b] = example_data(gn, 2);
        const RunResult rn = run(gn, fn, gn_b, MethodKind::Standard, 0.25, 2, 1e-30);
        const double diag = rn.history.records.at(2).psi_crosspoint_max;
        growing = growing && diag > prev_diag;
        prev_diag = diag;
        detail << diag << " ";
    }
    ok = ok && growing;
    report(4, "standard method on odd data is non-contracting with growing cross-point psi", ok,
           detail.str());
}

// 5. O(h^2) convergence of the monolithic solver on a manufactured solution.
void criterion5() {
    auto err = [](int n) {
        const Grid g = build_grid(n);
        const double pi = std::acos(-1.0);
        const GlobalField f = GlobalField::sample(g, [pi](double x, double y) {
            return 2.0 * pi * pi * std::sin(pi * x) * std::sin(pi * y);
        });
        const GlobalField exact = GlobalField::sample(
            g, [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); });
        const GlobalField u = monolithic_solve(g, f, GlobalField(g));
        return field_l2_diff(u, exact);
    };
    const double ratio = err(20) / err(40);
    const bool ok = ratio >= 3.2 && ratio <= 4.8;
    std::ostringstream detail;
    detail << "error ratio n=20 vs n=40: " << ratio;
    report(5, "monolithic solver converges at second order", ok, detail.str());
}

// 6. Flux duality: Dirichlet solve -> extract_flux -> Neumann re-solve
//    reproduces the field on 200 randomized instances, n = 20.
void criterion6() {
    const Grid g = build_grid(20);
    uint64_t seed = 31337;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const SubdomainId sub = subdomain_from_index(trial % 4);
        const InterfaceId ve = vertical_interface(sub);
        const InterfaceId he = horizontal_interface(sub);
        GlobalField f(g), bc(g);
        for (double& v : f.values()) v = lcg_unit(seed);
        for (double& v : bc.values()) v = lcg_unit(seed);
        std::vector<double> dv(static_cast<size_t>(g.n()) + 1), dh(static_cast<size_t>(g.n()) + 1);
        for (double& v : dv) v = lcg_unit(seed);
        for (double& v : dh) v = lcg_unit(seed);

        const SubField first =
            solve_subdomain(g, sub, f, bc, Trace::dirichlet(ve, dv), Trace::dirichlet(he, dh));
        const Trace fv = extract_flux(g, sub, first, f, ve);
        const Trace fh = extract_flux(g, sub, first, f, he);
        const SubField second = solve_subdomain(g, sub, f, bc, fv, fh);

        const SubRegion& reg = first.region();
        for (int j = reg.j0; j <= reg.j1; ++j)
            for (int i = reg.i0; i <= reg.i1; ++i)
                worst = std::max(worst,
                                 std::abs(first.at(Node{i, j}) - second.at(Node{i, j})));
    }
    std::ostringstream detail;
    detail << "worst nodewise round-trip error " << worst << " over 200 instances";
    report(6, "flux extraction inverts the Neumann solve (<= 1e-10)", worst <= 1e-10,
           detail.str());
}

// 7. Determinism: identical configurations give byte-identical histories.
void criterion7() {
    RunConfig config;
    config.method = MethodKind::New;
    config.example = 2;
    config.theta = 0.23;
    config.n = 20;
    config.max_iter = 8;
    config.tol = 1e-12;

    const auto base = std::filesystem::temp_directory_path() / "nncross_acceptance";
    std::filesystem::remove_all(base);
    config.output_dir = base / "a";
    const int code_a = run_experiment(config);
    const std::string first = slurp(config.output_dir / "history.csv");
    config.output_dir = base / "b";
    const int code_b = run_experiment(config);
    const std::string second = slurp(config.output_dir / "history.csv");

    const bool ok = code_a == code_b && !first.empty() && first == second;
    std::ostringstream detail;
    detail << "exit=" << code_a << ", " << first.size() << " bytes"
           << (first == second ? ", identical" : ", DIFFER");
    report(7, "identical configs produce byte-identical history.csv", ok, detail.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
