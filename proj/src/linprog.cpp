#include "ipalg/linprog.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ipalg/errors.hpp"
#include "ipalg/guards.hpp"

namespace ipalg {

namespace {

void validate(const LinearProgram& lp) {
    if (lp.num_vars == 0) throw std::invalid_argument("program needs at least one variable");
    if (lp.objective.size() != lp.num_vars)
        throw std::invalid_argument("objective length does not match variable count");
    if (lp.nonneg.size() != lp.num_vars)
        throw std::invalid_argument("bound flags do not match variable count");
    for (const Constraint& c : lp.constraints)
        if (c.coeffs.size() != lp.num_vars)
            throw std::invalid_argument("constraint length does not match variable count");
}

// Dense simplex tableau over rationals. Columns: structural variables
// (free originals split into a +/- pair), then slacks, then artificials.
class Tableau {
public:
    explicit Tableau(const LinearProgram& lp) : lp_(lp) {
        plus_col_.resize(lp.num_vars);
        minus_col_.assign(lp.num_vars, SIZE_MAX);
        size_t col = 0;
        for (size_t j = 0; j < lp.num_vars; ++j) {
            plus_col_[j] = col++;
            if (!lp.nonneg[j]) minus_col_[j] = col++;
        }
        num_structural_ = col;

        size_t m = lp.constraints.size();
        rows_.assign(m, RatVec());
        rhs_.assign(m, Rat(0));
        std::vector<Rel> rel(m);
        for (size_t i = 0; i < m; ++i) {
            RatVec row(num_structural_, Rat(0));
            for (size_t j = 0; j < lp.num_vars; ++j) {
                row[plus_col_[j]] = lp.constraints[i].coeffs[j];
                if (minus_col_[j] != SIZE_MAX)
                    row[minus_col_[j]] = -lp.constraints[i].coeffs[j];
            }
            Rat b = lp.constraints[i].rhs;
            Rel r = lp.constraints[i].rel;
            if (b < 0) {  // keep rhs nonnegative
                for (Rat& x : row) x = -x;
                b = -b;
                if (r == Rel::Le)
                    r = Rel::Ge;
                else if (r == Rel::Ge)
                    r = Rel::Le;
            }
            rows_[i] = std::move(row);
            rhs_[i] = b;
            rel[i] = r;
        }

        // Slack / surplus columns.
        num_cols_ = num_structural_;
        slack_col_.assign(m, SIZE_MAX);
        for (size_t i = 0; i < m; ++i)
            if (rel[i] != Rel::Eq) slack_col_[i] = num_cols_++;
        for (size_t i = 0; i < m; ++i) {
            rows_[i].resize(num_cols_, Rat(0));
            if (slack_col_[i] != SIZE_MAX)
                rows_[i][slack_col_[i]] = (rel[i] == Rel::Le) ? Rat(1) : Rat(-1);
        }

        // Basis: slacks of Le rows start basic, everything else gets an
        // artificial variable.
        basis_.assign(m, SIZE_MAX);
        first_artificial_ = num_cols_;
        for (size_t i = 0; i < m; ++i) {
            if (rel[i] == Rel::Le) {
                basis_[i] = slack_col_[i];
            } else {
                size_t art = num_cols_++;
                basis_[i] = art;
                for (size_t k = 0; k < m; ++k) rows_[k].resize(num_cols_, Rat(0));
                rows_[i][art] = Rat(1);
            }
        }
    }

    // Phase 1: drive the artificial variables to zero. Returns false if
    // the program is infeasible.
    bool phase_one() {
        if (first_artificial_ == num_cols_) return true;
        RatVec cost(num_cols_, Rat(0));
        for (size_t j = first_artificial_; j < num_cols_; ++j) cost[j] = Rat(-1);
        run_simplex(cost, nullptr);
        for (size_t i = 0; i < rows_.size(); ++i)
            if (basis_[i] >= first_artificial_ && rhs_[i] != 0) return false;
        // Pivot leftover zero-level artificials out, or drop their rows.
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < first_artificial_) continue;
            size_t pivot_col = SIZE_MAX;
            for (size_t j = 0; j < first_artificial_; ++j)
                if (rows_[i][j] != 0) {
                    pivot_col = j;
                    break;
                }
            if (pivot_col != SIZE_MAX) {
                pivot(i, pivot_col);
            } else {
                rows_.erase(rows_.begin() + i);
                rhs_.erase(rhs_.begin() + i);
                basis_.erase(basis_.begin() + i);
                --i;
            }
        }
        trim_artificials();
        return true;
    }

    // Phase 2. Returns true when optimal, false when unbounded (with the
    // improving ray written to *ray, in structural-column space).
    bool phase_two(RatVec* ray) {
        RatVec cost(num_cols_, Rat(0));
        for (size_t j = 0; j < lp_.num_vars; ++j) {
            cost[plus_col_[j]] = lp_.objective[j];
            if (minus_col_[j] != SIZE_MAX) cost[minus_col_[j]] = -lp_.objective[j];
        }
        return run_simplex(cost, ray);
    }

    RatVec structural_solution() const {
        RatVec x(lp_.num_vars, Rat(0));
        RatVec col_val(num_cols_, Rat(0));
        for (size_t i = 0; i < rows_.size(); ++i) col_val[basis_[i]] = rhs_[i];
        for (size_t j = 0; j < lp_.num_vars; ++j) {
            x[j] = col_val[plus_col_[j]];
            if (minus_col_[j] != SIZE_MAX) x[j] -= col_val[minus_col_[j]];
        }
        return x;
    }

    RatVec to_original(const RatVec& structural) const {
        RatVec x(lp_.num_vars, Rat(0));
        for (size_t j = 0; j < lp_.num_vars; ++j) {
            x[j] = structural[plus_col_[j]];
            if (minus_col_[j] != SIZE_MAX) x[j] -= structural[minus_col_[j]];
        }
        return x;
    }

private:
    void trim_artificials() {
        for (size_t i = 0; i < rows_.size(); ++i) rows_[i].resize(first_artificial_);
        num_cols_ = first_artificial_;
    }

    void pivot(size_t row, size_t col) {
        Rat p = rows_[row][col];
        for (Rat& v : rows_[row]) v /= p;
        rhs_[row] /= p;
        for (size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            Rat factor = rows_[i][col];
            for (size_t j = 0; j < num_cols_; ++j) rows_[i][j] -= factor * rows_[row][j];
            rhs_[i] -= factor * rhs_[row];
        }
        basis_[row] = col;
        ++kernel_stats().lp_pivots;
    }

    // Bland's rule: entering = lowest-index column with positive reduced
    // cost, leaving = lowest-index basic column among the ratio-test ties.
    bool run_simplex(const RatVec& cost, RatVec* ray) {
        for (;;) {
            RatVec dual(rows_.size());
            std::vector<bool> is_basic(num_cols_, false);
            for (size_t i = 0; i < rows_.size(); ++i) {
                dual[i] = cost[basis_[i]];
                is_basic[basis_[i]] = true;
            }
            size_t entering = SIZE_MAX;
            for (size_t j = 0; j < num_cols_ && entering == SIZE_MAX; ++j) {
                if (is_basic[j]) continue;
                Rat reduced = cost[j];
                for (size_t i = 0; i < rows_.size(); ++i)
                    if (dual[i] != 0 && rows_[i][j] != 0) reduced -= dual[i] * rows_[i][j];
                if (reduced > 0) entering = j;
            }
            if (entering == SIZE_MAX) return true;

            size_t leave = SIZE_MAX;
            Rat best_ratio;
            for (size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][entering] <= 0) continue;
                Rat ratio = rhs_[i] / rows_[i][entering];
                if (leave == SIZE_MAX || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == SIZE_MAX) {
                if (ray) {
                    ray->assign(num_cols_, Rat(0));
                    (*ray)[entering] = Rat(1);
                    for (size_t i = 0; i < rows_.size(); ++i)
                        (*ray)[basis_[i]] = -rows_[i][entering];
                }
                return false;
            }
            pivot(leave, entering);
        }
    }

    const LinearProgram& lp_;
    std::vector<RatVec> rows_;
    RatVec rhs_;
    std::vector<size_t> basis_;
    std::vector<size_t> plus_col_, minus_col_, slack_col_;
    size_t num_structural_ = 0;
    size_t num_cols_ = 0;
    size_t first_artificial_ = 0;
};

void verify_witness(const LinearProgram& lp, const RatVec& x) {
    for (const Constraint& c : lp.constraints) {
        Rat lhs(0);
        for (size_t j = 0; j < lp.num_vars; ++j) lhs += c.coeffs[j] * x[j];
        bool ok = (c.rel == Rel::Le)   ? lhs <= c.rhs
                  : (c.rel == Rel::Ge) ? lhs >= c.rhs
                                       : lhs == c.rhs;
        if (!ok) throw internal_error("simplex witness violates a constraint");
    }
    for (size_t j = 0; j < lp.num_vars; ++j)
        if (lp.nonneg[j] && x[j] < 0) throw internal_error("simplex witness violates a bound");
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
    validate(lp);
    Tableau tableau(lp);
    LpOutcome out;
    if (!tableau.phase_one()) {
        out.kind = LpOutcome::Kind::Infeasible;
        return out;
    }
    RatVec structural_ray;
    if (!tableau.phase_two(&structural_ray)) {
        out.kind = LpOutcome::Kind::Unbounded;
        out.ray = tableau.to_original(structural_ray);
        return out;
    }
    out.kind = LpOutcome::Kind::Optimal;
    out.witness = tableau.structural_solution();
    out.value = Rat(0);
    for (size_t j = 0; j < lp.num_vars; ++j) out.value += lp.objective[j] * out.witness[j];
    verify_witness(lp, out.witness);
    return out;
}

// ---------------------------------------------------------------------------
// Polyhedral kernel: exact Gaussian elimination helpers.

namespace {

// Row-reduces `rows` in place; returns pivot column per reduced row.
std::vector<size_t> row_reduce(std::vector<RatVec>& rows, size_t dim) {
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t col = 0; col < dim && rank < rows.size(); ++col) {
        size_t sel = SIZE_MAX;
        for (size_t i = rank; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel == SIZE_MAX) continue;
        std::swap(rows[rank], rows[sel]);
        Rat p = rows[rank][col];
        for (Rat& v : rows[rank]) v /= p;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rat f = rows[i][col];
            for (size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

// Basis of {x : rows * x = 0}.
std::vector<RatVec> kernel_basis(std::vector<RatVec> rows, size_t dim) {
    std::vector<size_t> pivots = row_reduce(rows, dim);
    std::vector<bool> is_pivot(dim, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (size_t free_col = 0; free_col < dim; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(dim, Rat(0));
        v[free_col] = Rat(1);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

void scale_canonical(RatVec& v) {
    for (const Rat& x : v) {
        if (x != 0) {
            Rat a = x < 0 ? Rat(-x) : x;
            for (Rat& y : v) y /= a;
            return;
        }
    }
}

void sort_dedupe(std::vector<RatVec>& vecs) {
    std::sort(vecs.begin(), vecs.end(), lex_less);
    vecs.erase(std::unique(vecs.begin(), vecs.end()), vecs.end());
}

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

std::vector<RatVec> homogeneous_ge_rows(const std::vector<Constraint>& constraints,
                                        size_t dim) {
    std::vector<RatVec> rows;
    for (const Constraint& c : constraints) {
        if (c.coeffs.size() != dim)
            throw std::invalid_argument("constraint length does not match dimension");
        if (c.rhs != 0) throw std::invalid_argument("cone constraints must be homogeneous");
        if (is_zero_vec(c.coeffs)) continue;
        if (c.rel == Rel::Ge || c.rel == Rel::Eq) rows.push_back(c.coeffs);
        if (c.rel == Rel::Le || c.rel == Rel::Eq) {
            RatVec neg = c.coeffs;
            for (Rat& v : neg) v = -v;
            rows.push_back(std::move(neg));
        }
    }
    for (RatVec& r : rows) scale_canonical(r);
    sort_dedupe(rows);
    return rows;
}

// Double description for a pointed cone {y : rows * y >= 0}. `rows` must
// have full column rank.
std::vector<RatVec> pointed_extreme_rays(const std::vector<RatVec>& rows, size_t dim) {
    if (dim == 0) return {};
    // Pick dim independent rows for the initial simplicial cone.
    std::vector<RatVec> reduced;
    std::vector<size_t> chosen;
    for (size_t i = 0; i < rows.size() && chosen.size() < dim; ++i) {
        std::vector<RatVec> trial = reduced;
        trial.push_back(rows[i]);
        std::vector<RatVec> copy = trial;
        if (row_reduce(copy, dim).size() == trial.size()) {
            reduced = std::move(trial);
            chosen.push_back(i);
        }
    }
    if (chosen.size() != dim) throw internal_error("pointed cone without full-rank rows");

    // Rays of {y : B y >= 0} with B square invertible are the columns of
    // B^{-1}: invert by Gauss-Jordan on [B | I].
    std::vector<RatVec> aug(dim, RatVec(2 * dim, Rat(0)));
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < dim; ++j) aug[i][j] = rows[chosen[i]][j];
        aug[i][dim + i] = Rat(1);
    }
    row_reduce(aug, 2 * dim);
    std::vector<RatVec> rays;
    for (size_t col = 0; col < dim; ++col) {
        RatVec r(dim);
        for (size_t i = 0; i < dim; ++i) r[i] = aug[i][dim + col];
        scale_canonical(r);
        rays.push_back(std::move(r));
    }
    sort_dedupe(rays);

    std::set<size_t> done(chosen.begin(), chosen.end());
    std::vector<RatVec> processed;
    for (size_t i : chosen) processed.push_back(rows[i]);

    auto active_set = [&](const RatVec& ray) {
        std::vector<bool> z(processed.size());
        for (size_t k = 0; k < processed.size(); ++k) z[k] = dot(processed[k], ray) == 0;
        return z;
    };

    for (size_t i = 0; i < rows.size(); ++i) {
        if (done.count(i)) continue;
        const RatVec& a = rows[i];
        std::vector<RatVec> keep, plus, minus;
        std::vector<Rat> plus_val, minus_val;
        for (const RatVec& r : rays) {
            Rat v = dot(a, r);
            if (v > 0) {
                plus.push_back(r);
                plus_val.push_back(v);
                keep.push_back(r);
            } else if (v == 0) {
                keep.push_back(r);
            } else {
                minus.push_back(r);
                minus_val.push_back(v);
            }
        }
        if (!minus.empty()) {
            std::vector<std::vector<bool>> zsets;
            zsets.reserve(rays.size());
            for (const RatVec& r : rays) zsets.push_back(active_set(r));
            auto index_of = [&](const RatVec& r) {
                return std::lower_bound(rays.begin(), rays.end(), r, lex_less) - rays.begin();
            };
            for (size_t pi = 0; pi < plus.size(); ++pi) {
                for (size_t ni = 0; ni < minus.size(); ++ni) {
                    size_t ip = index_of(plus[pi]), in = index_of(minus[ni]);
                    // Combinatorial adjacency: no third ray whose active
                    // set contains the common active set of the pair.
                    bool adjacent = true;
                    for (size_t t = 0; t < rays.size() && adjacent; ++t) {
                        if (t == ip || t == in) continue;
                        bool covers = true;
                        for (size_t k = 0; k < processed.size(); ++k) {
                            if (zsets[ip][k] && zsets[in][k] && !zsets[t][k]) {
                                covers = false;
                                break;
                            }
                        }
                        if (covers) adjacent = false;
                    }
                    if (!adjacent) continue;
                    RatVec fresh(dim);
                    for (size_t j = 0; j < dim; ++j)
                        fresh[j] = plus_val[pi] * minus[ni][j] - minus_val[ni] * plus[pi][j];
                    if (is_zero_vec(fresh)) continue;
                    scale_canonical(fresh);
                    keep.push_back(std::move(fresh));
                }
            }
        }
        sort_dedupe(keep);
        rays = std::move(keep);
        if (rays.size() > guards().max_rays)
            throw guard_error("max-rays", "double description exceeded the ray guard");
        processed.push_back(a);
        done.insert(i);
        if (rays.empty()) break;
    }
    kernel_stats().rays_enumerated += rays.size();
    return rays;
}

}  // namespace

std::vector<RatVec> extreme_rays(const std::vector<Constraint>& constraints, size_t dim) {
    if (dim == 0) return {};
    if (static_cast<int>(dim) > guards().max_vertex_dim)
        throw guard_error("vertex-dim", "extreme_rays dimension exceeds the guard");
    // Guard on effective rows: duplicates and scalings collapse first.
    if (static_cast<int>(homogeneous_ge_rows(constraints, dim).size()) >
        2 * guards().max_vertex_constraints)
        throw guard_error("vertex-constraints", "extreme_rays row count exceeds the guard");
    return detail::extreme_rays_unguarded(constraints, dim);
}

std::vector<RatVec> detail::extreme_rays_unguarded(const std::vector<Constraint>& constraints,
                                                   size_t dim) {
    if (dim == 0) return {};
    std::vector<RatVec> rows = homogeneous_ge_rows(constraints, dim);

    std::vector<RatVec> lineality = kernel_basis(rows, dim);
    std::vector<RatVec> out;
    for (const RatVec& l : lineality) {
        RatVec a = l, b = l;
        for (Rat& v : b) v = -v;
        scale_canonical(a);
        scale_canonical(b);
        out.push_back(std::move(a));
        out.push_back(std::move(b));
    }

    size_t pointed_dim = dim - lineality.size();
    if (pointed_dim > 0) {
        // Complement of the lineality space spanned by the standard basis
        // vectors at the non-pivot columns of the lineality basis.
        std::vector<RatVec> lin_copy = lineality;
        std::vector<size_t> pivots = row_reduce(lin_copy, dim);
        std::vector<bool> is_pivot(dim, false);
        for (size_t c : pivots) is_pivot[c] = true;
        std::vector<size_t> complement_cols;
        for (size_t j = 0; j < dim; ++j)
            if (!is_pivot[j]) complement_cols.push_back(j);

        std::vector<RatVec> projected;
        for (const RatVec& row : rows) {
            RatVec p(pointed_dim);
            for (size_t k = 0; k < pointed_dim; ++k) p[k] = row[complement_cols[k]];
            if (!is_zero_vec(p)) projected.push_back(std::move(p));
        }
        for (RatVec& r : projected) scale_canonical(r);
        sort_dedupe(projected);

        std::vector<RatVec> pointed =
            projected.empty() ? std::vector<RatVec>() : pointed_extreme_rays(projected, pointed_dim);
        if (projected.empty() && pointed_dim > 0)
            throw internal_error("no rows left for a nontrivial pointed part");
        for (const RatVec& y : pointed) {
            RatVec x(dim, Rat(0));
            for (size_t k = 0; k < pointed_dim; ++k) x[complement_cols[k]] = y[k];
            scale_canonical(x);
            out.push_back(std::move(x));
        }
    }
    sort_dedupe(out);
    return out;
}

std::vector<RatVec> enumerate_vertices(const std::vector<Constraint>& constraints,
                                       size_t dim) {
    if (static_cast<int>(dim) > guards().max_vertex_dim)
        throw guard_error("vertex-dim", "enumerate_vertices dimension exceeds the guard");
    if (static_cast<int>(constraints.size()) > guards().max_vertex_constraints)
        throw guard_error("vertex-constraints",
                          "enumerate_vertices constraint count exceeds the guard");
    // Homogenize: (x, t) with a.x <= b becoming b t - a.x >= 0 and t >= 0.
    std::vector<Constraint> cone;
    for (const Constraint& c : constraints) {
        if (c.coeffs.size() != dim)
            throw std::invalid_argument("constraint length does not match dimension");
        RatVec row(dim + 1);
        for (size_t j = 0; j < dim; ++j) row[j] = c.coeffs[j];
        row[dim] = -c.rhs;
        cone.push_back(Constraint{std::move(row), c.rel, Rat(0)});
    }
    RatVec trow(dim + 1, Rat(0));
    trow[dim] = Rat(1);
    cone.push_back(Constraint{std::move(trow), Rel::Ge, Rat(0)});

    std::vector<RatVec> rays = extreme_rays(cone, dim + 1);
    std::vector<RatVec> vertices;
    for (const RatVec& r : rays) {
        if (r[dim] == 0)
            throw std::invalid_argument("enumerate_vertices requires a bounded polytope");
        RatVec x(dim);
        for (size_t j = 0; j < dim; ++j) x[j] = r[j] / r[dim];
        vertices.push_back(std::move(x));
    }
    sort_dedupe(vertices);
    return vertices;
}

namespace {

void fm_normalize(std::vector<RatVec>& rows) {
    for (RatVec& r : rows) scale_canonical(r);
    sort_dedupe(rows);
    rows.erase(std::remove_if(rows.begin(), rows.end(), is_zero_vec), rows.end());
}

// A homogeneous row is redundant iff it is a nonnegative combination of
// the others (conic Farkas), decided exactly by a feasibility LP.
void lp_redundancy_prune(std::vector<RatVec>& rows, size_t dim) {
    for (size_t i = rows.size(); i-- > 0;) {
        if (rows.size() <= 1) break;
        LinearProgram lp;
        lp.num_vars = rows.size() - 1;
        lp.objective.assign(lp.num_vars, Rat(0));
        lp.nonneg.assign(lp.num_vars, true);
        for (size_t d = 0; d < dim; ++d) {
            Constraint c;
            c.rel = Rel::Eq;
            c.rhs = rows[i][d];
            c.coeffs.reserve(lp.num_vars);
            for (size_t k = 0; k < rows.size(); ++k)
                if (k != i) c.coeffs.push_back(rows[k][d]);
            lp.constraints.push_back(std::move(c));
        }
        if (solve(lp).optimal()) rows.erase(rows.begin() + i);
    }
}

}  // namespace

std::vector<Constraint> project_cone(const std::vector<Constraint>& constraints,
                                     size_t dim, const std::vector<size_t>& keep) {
    std::vector<bool> keep_mask(dim, false);
    for (size_t k : keep) {
        if (k >= dim) throw std::invalid_argument("keep index out of range");
        keep_mask[k] = true;
    }
    std::vector<size_t> eliminate;
    for (size_t j = 0; j < dim; ++j)
        if (!keep_mask[j]) eliminate.push_back(j);
    if (static_cast<int>(eliminate.size()) > guards().max_fm_eliminated)
        throw guard_error("fm-eliminated",
                          "project_cone eliminates more variables than the guard allows");

    std::vector<RatVec> rows = homogeneous_ge_rows(constraints, dim);

    size_t eliminated_so_far = 0;
    std::vector<bool> remaining(dim, false);
    for (size_t j : eliminate) remaining[j] = true;
    while (eliminated_so_far < eliminate.size()) {
        // Deterministic pick: the remaining variable with the smallest
        // positive*negative row product, ties to the smallest index.
        size_t var = SIZE_MAX;
        size_t best_cost = 0;
        for (size_t j = 0; j < dim; ++j) {
            if (!remaining[j]) continue;
            size_t pos = 0, neg = 0;
            for (const RatVec& r : rows) {
                if (r[j] > 0) ++pos;
                if (r[j] < 0) ++neg;
            }
            size_t cost = pos * neg;
            if (var == SIZE_MAX || cost < best_cost) {
                var = j;
                best_cost = cost;
            }
        }
        remaining[var] = false;
        ++eliminated_so_far;

        std::vector<RatVec> zero, pos, neg;
        for (RatVec& r : rows) {
            if (r[var] > 0)
                pos.push_back(std::move(r));
            else if (r[var] < 0)
                neg.push_back(std::move(r));
            else
                zero.push_back(std::move(r));
        }
        for (const RatVec& p : pos) {
            for (const RatVec& n : neg) {
                RatVec combined(dim);
                for (size_t j = 0; j < dim; ++j) combined[j] = p[var] * n[j] - n[var] * p[j];
                if (is_zero_vec(combined)) continue;
                zero.push_back(std::move(combined));
            }
        }
        rows = std::move(zero);
        fm_normalize(rows);
        if (rows.size() > guards().max_fm_rows)
            throw guard_error("fm-rows", "Fourier-Motzkin intermediate rows exceed the guard");
        if (rows.size() > 48) lp_redundancy_prune(rows, dim);
    }

    if (rows.size() > 2) lp_redundancy_prune(rows, dim);
    std::vector<Constraint> out;
    out.reserve(rows.size());
    for (const RatVec& r : rows) {
        RatVec c(keep.size());
        for (size_t k = 0; k < keep.size(); ++k) c[k] = r[keep[k]];
        if (is_zero_vec(c)) continue;
        out.push_back(Constraint{std::move(c), Rel::Ge, Rat(0)});
    }
    std::sort(out.begin(), out.end(),
              [](const Constraint& a, const Constraint& b) { return lex_less(a.coeffs, b.coeffs); });
    return out;
}

}  // namespace ipalg
