#pragma once

#include <array>
#include <vector>

#include "nncross/fd.hpp"

namespace nncross {

// Standard: all-Dirichlet u-step, all-Neumann psi-step.
// Mixed: u-step takes Dirichlet data on the horizontal arms (G23, G41) and
//        Neumann data on the vertical arms (G12, G34); the psi-step swaps them.
// New: even/odd decomposition, Standard on the even part, Mixed on the odd part.
enum class MethodKind { Standard, Mixed, New };

std::array<SubField, 4> zero_subfields(const Grid& grid);

// Per-subdomain pair (u_i^k, psi_i^k) plus the iteration counter.
struct IterState {
    int k = 0;
    double theta = 0.25;
    std::array<SubField, 4> u;
    std::array<SubField, 4> psi;
};

// u^0 is the boundary lift (g on the outer boundary, zero elsewhere); psi^0 = 0.
IterState init_state(const Grid& grid, const GlobalField& f, const GlobalField& g, double theta);

// State whose u-components hold the deviation of the boundary lift from a
// reference field. Advancing it with f = g = 0 follows, by linearity, the
// same trajectory as the plain state shifted by the reference; this keeps
// late iterates at full relative precision once the error is tiny.
IterState init_deviation_state(const Grid& grid, const GlobalField& g,
                               const GlobalField& reference, double theta);

// Factorizations for the two half-steps of one method on one grid, built once
// per run and reused every iteration.
struct StepSolvers {
    MethodKind method;
    std::vector<SubdomainSolver> first;   // u-step, indexed by sub_index
    std::vector<SubdomainSolver> second;  // psi-step
    GlobalField zeros;                    // shared homogeneous data
};

StepSolvers make_step_solvers(const Grid& grid, MethodKind method);  // Standard or Mixed

// u-step of the standard method: Dirichlet traces u_i - theta (psi_i + psi_j)
// on both arms, averaged at the cross-point.
std::array<SubField, 4> dirichlet_step_standard(const IterState& state, const GlobalField& f,
                                                const GlobalField& g, const StepSolvers& solvers);

// psi-step of the standard method: Neumann data given by the two-sided flux
// jump of the fresh u iterates, zero outer data.
std::array<SubField, 4> neumann_step_standard(const std::array<SubField, 4>& u,
                                              const GlobalField& f, const StepSolvers& solvers);

// u-step of the mixed method: Dirichlet traces on the horizontal arms as in
// the standard method; on the vertical arms Neumann data
//   (flux_i(u) - flux_j(u))/2 + (-1)^i theta (flux_odd(psi) - flux_even(psi)),
// where fluxes are the mimetic one-sided extractions and odd/even name the
// odd- and even-numbered member of the pair. The antisymmetrised u-part
// equals the plain one-sided flux whenever u comes from a previous iterate,
// and keeps the datum single-valued for the initial lift.
std::array<SubField, 4> first_step_mixed(const IterState& state, const GlobalField& f,
                                         const GlobalField& g, const StepSolvers& solvers);

// psi-step of the mixed method: Dirichlet jump traces u_i - u_j on the
// vertical arms, Neumann flux jumps on the horizontal arms.
std::array<SubField, 4> second_step_mixed(const std::array<SubField, 4>& u, const GlobalField& f,
                                          const StepSolvers& solvers);

// One full iteration of a Standard or Mixed solver set, in place.
void advance(IterState& state, const GlobalField& f, const GlobalField& g,
             const StepSolvers& solvers);

// max |psi| over all nodes within distance 2h of the cross-point.
double crosspoint_diagnostic(const std::array<SubField, 4>& psi, const Grid& grid);

enum class RunStatus { Converged, MaxIterations, Diverged, SolverFailure };
const char* to_string(RunStatus status);

struct IterationRecord {
    int k = 0;
    double l2_error = 0.0;           // global L2 of the recombined error
    double broken_h1_error = 0.0;
    double subdomain_sum_l2 = 0.0;   // sum of per-subdomain L2 norms
    double ratio = 0.0;              // NaN when undefined (k < 2 or zero predecessor)
    double psi_crosspoint_max = 0.0;
};

struct RunHistory {
    std::vector<IterationRecord> records;
    RunStatus status = RunStatus::MaxIterations;
    int converged_at = -1;
};

struct RunResult {
    RunHistory history;
    GlobalField solution;  // recombined final iterate
    GlobalField error;     // solution minus the monolithic reference
    GlobalField psi;       // recombined final correction
};

// Iterates until l2_error(k) <= tol * l2_error(0) or max_iter; errors are
// measured against the discrete monolithic solution. Declares divergence when
// l2_error(k) > 1e3 * l2_error(1). The New method decomposes the data, runs
// Standard on the even part and Mixed on the odd part, and recomposes each
// iteration for reporting.
RunResult run(const Grid& grid, const GlobalField& f, const GlobalField& g, MethodKind method,
              double theta, int max_iter, double tol);

}  // namespace nncross
