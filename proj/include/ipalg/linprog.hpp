#ifndef IPALG_LINPROG_HPP
#define IPALG_LINPROG_HPP

#include <cstddef>
#include <vector>

#include "ipalg/rational.hpp"

namespace ipalg {

enum class Rel { Le, Eq, Ge };

struct Constraint {
    RatVec coeffs;
    Rel rel = Rel::Ge;
    Rat rhs = Rat(0);
};

// Maximization program over exact rationals. Every variable is either
// nonnegative or free; there is no floating point anywhere.
struct LinearProgram {
    size_t num_vars = 0;
    RatVec objective;
    std::vector<Constraint> constraints;
    std::vector<bool> nonneg;  // per variable: true = x >= 0, false = free
};

struct LpOutcome {
    enum class Kind { Infeasible, Unbounded, Optimal };
    Kind kind = Kind::Infeasible;
    Rat value;       // Optimal
    RatVec witness;  // Optimal: a maximizer, constraints satisfied exactly
    RatVec ray;      // Unbounded: improving feasible direction

    bool optimal() const { return kind == Kind::Optimal; }
    bool unbounded() const { return kind == Kind::Unbounded; }
    bool infeasible() const { return kind == Kind::Infeasible; }
};

// Two-phase primal simplex with Bland's rule; deterministic and exact.
LpOutcome solve(const LinearProgram& lp);

// All vertices of a bounded polytope given by inequality rows, exact and
// lexicographically sorted. Throws std::invalid_argument for unbounded
// input and guard_error past desk scale.
std::vector<RatVec> enumerate_vertices(const std::vector<Constraint>& constraints,
                                       size_t dim);

// Fourier-Motzkin elimination of the variables not listed in `keep` from a
// homogeneous system (all rhs zero), with redundancy removal. The result
// is an H-representation over the kept variables, in `keep` order.
std::vector<Constraint> project_cone(const std::vector<Constraint>& constraints,
                                     size_t dim, const std::vector<size_t>& keep);

// Minimal V-representation of a homogeneous cone: a basis of the lineality
// space contributes +/- pairs, the pointed remainder its extreme rays.
// Rays are scaled so the first nonzero entry has absolute value one, and
// sorted lexicographically.
std::vector<RatVec> extreme_rays(const std::vector<Constraint>& constraints, size_t dim);

namespace detail {
// Same computation without the public dimension guard, for internal dual
// cones whose row structure keeps the ray count small. The ray-count
// guard still applies.
std::vector<RatVec> extreme_rays_unguarded(const std::vector<Constraint>& constraints,
                                           size_t dim);
}  // namespace detail

}  // namespace ipalg

#endif
