#ifndef IPALG_GUARDS_HPP
#define IPALG_GUARDS_HPP

#include <cstdint>

namespace ipalg {

// Desk-scale limits. Exceeding one raises guard_error with the guard's
// name; nothing is ever truncated silently. The CLI may lower (never
// raise) these per run.
struct GuardConfig {
    std::uint64_t max_cells = 1u << 24;      // cells of the full product space
    int max_vertex_dim = 12;                 // enumerate_vertices dimension
    int max_vertex_constraints = 64;         // enumerate_vertices constraint rows
    int max_fm_eliminated = 16;              // variables eliminated per project_cone call
    std::uint64_t max_fm_rows = 20000;       // intermediate row blowup during elimination
    std::uint64_t max_rays = 4096;           // rays held by double description
};

GuardConfig& guards();

// Running tallies for query reports. Reset per query; deterministic
// because every kernel algorithm is deterministic.
struct KernelStats {
    std::uint64_t lp_pivots = 0;
    std::uint64_t rays_enumerated = 0;
};

KernelStats& kernel_stats();
void reset_kernel_stats();

}  // namespace ipalg

#endif
