#include "ipalg/prevision.hpp"

#include <algorithm>
#include <stdexcept>

#include "ipalg/errors.hpp"
#include "ipalg/linprog.hpp"

namespace ipalg {

namespace {

Gamble to_full(const SpacePtr& space, const Gamble& f) {
    if (!same_space(space, f.space))
        throw std::invalid_argument("gamble is on a different space");
    Scope full = space->full_scope();
    return f.scope == full ? f : lift(f, full);
}

void scale_canonical_gamble(Gamble& g) {
    for (const Rat& v : g.values) {
        if (v != 0) {
            Rat a = v < 0 ? Rat(-v) : v;
            if (a != 1)
                for (Rat& x : g.values) x /= a;
            return;
        }
    }
}

// Zero and nonnegative gambles never cut the credal set; dropping them
// keeps assessments small and serialization deterministic.
std::vector<Gamble> canonical_assessment(const SpacePtr& space, std::vector<Gamble> gens) {
    std::vector<Gamble> out;
    for (Gamble& g : gens) {
        Gamble f = to_full(space, g);
        if (is_zero_vec(f.values) || is_nonneg_nonzero(f.values)) continue;
        scale_canonical_gamble(f);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(),
              [](const Gamble& a, const Gamble& b) { return lex_less(a.values, b.values); });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Gamble& a, const Gamble& b) { return a.values == b.values; }),
              out.end());
    return out;
}

// maximize mu s.t. sum lambda g + mu <= f, lambda >= 0, mu free.
LpOutcome prevision_lp(const SpacePtr& space, const std::vector<Gamble>& gens,
                       const RatVec& f) {
    size_t cells = static_cast<size_t>(space->full_cell_count());
    size_t m = gens.size();
    LinearProgram lp;
    lp.num_vars = m + 1;
    lp.objective.assign(m + 1, Rat(0));
    lp.objective[m] = Rat(1);
    lp.nonneg.assign(m + 1, true);
    lp.nonneg[m] = false;
    for (size_t w = 0; w < cells; ++w) {
        Constraint c;
        c.rel = Rel::Le;
        c.rhs = f[w];
        c.coeffs.assign(m + 1, Rat(0));
        for (size_t j = 0; j < m; ++j) c.coeffs[j] = gens[j].values[w];
        c.coeffs[m] = Rat(1);
        lp.constraints.push_back(std::move(c));
    }
    return solve(lp);
}

}  // namespace

MassFunction make_mass_function(SpacePtr space, RatVec probs) {
    if (probs.size() != space->full_cell_count())
        throw std::invalid_argument("mass function length does not match cell count");
    Rat total(0);
    for (const Rat& p : probs) {
        if (p < 0) throw std::invalid_argument("mass function has a negative entry");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("mass function does not sum to one");
    return MassFunction{std::move(space), std::move(probs)};
}

MassFunction mass_marginal(const MassFunction& p, const std::vector<std::string>& names) {
    Scope s = p.space->scope_of(names);
    SpacePtr sub = subspace(p.space, s);
    Scope full = p.space->full_scope();
    RatVec probs(static_cast<size_t>(p.space->cell_count(s)), Rat(0));
    for (size_t w = 0; w < p.probs.size(); ++w) {
        Cell cell = cell_at(p.space, full, w);
        probs[cell_index(p.space, s, restrict_cell(p.space, full, cell, s))] += p.probs[w];
    }
    return MassFunction{sub, std::move(probs)};
}

bool mass_equal(const MassFunction& a, const MassFunction& b) {
    return same_space(a.space, b.space) && a.probs == b.probs;
}

LowerPrevision LowerPrevision::null_prevision(SpacePtr space) {
    return LowerPrevision(true, std::move(space), {});
}

LowerPrevision LowerPrevision::coherent(SpacePtr space, std::vector<Gamble> assessment) {
    std::vector<Gamble> canon = canonical_assessment(space, std::move(assessment));
    return LowerPrevision(false, std::move(space), std::move(canon));
}

const std::vector<Gamble>& LowerPrevision::assessment() const {
    if (null_) throw unsupported_error("the null prevision has no assessment");
    return assessment_;
}

bool incurs_sure_loss(const SpacePtr& space, const std::vector<Gamble>& gambles) {
    std::vector<Gamble> gens = canonical_assessment(space, gambles);
    if (gens.empty()) return false;
    RatVec zero(static_cast<size_t>(space->full_cell_count()), Rat(0));
    LpOutcome out = prevision_lp(space, gens, zero);
    if (out.unbounded()) return true;
    if (!out.optimal() || out.value != 0)
        throw internal_error("sure-loss probe must be optimal at zero or unbounded");
    return false;
}

LowerPrevision sigma(const ConePiece& piece) {
    if (!piece.coherent()) return LowerPrevision::null_prevision(piece.space());
    return LowerPrevision::coherent(piece.space(), closure_generators(piece));
}

std::optional<Rat> prevision(const LowerPrevision& p, const Gamble& gamble) {
    if (p.is_null()) return std::nullopt;
    Gamble f = to_full(p.space(), gamble);
    LpOutcome out = prevision_lp(p.space(), p.assessment(), f.values);
    if (!out.optimal())
        throw internal_error("prevision LP unbounded on a sure-loss-free assessment");
    return out.value;
}

std::optional<Rat> upper_prevision(const LowerPrevision& p, const Gamble& gamble) {
    if (p.is_null()) return std::nullopt;  // the documented sentinel
    Gamble f = to_full(p.space(), gamble);
    std::optional<Rat> lower = prevision(p, gamble_neg(f));
    return Rat(-*lower);
}

LowerPrevision combine(const LowerPrevision& a, const LowerPrevision& b) {
    if (!same_space(a.space(), b.space()))
        throw std::invalid_argument("previsions live on different spaces");
    if (a.is_null() || b.is_null()) return LowerPrevision::null_prevision(a.space());
    std::vector<Gamble> joined = a.assessment();
    joined.insert(joined.end(), b.assessment().begin(), b.assessment().end());
    if (incurs_sure_loss(a.space(), joined))
        return LowerPrevision::null_prevision(a.space());
    return LowerPrevision::coherent(a.space(), std::move(joined));
}

LowerPrevision extract(const LowerPrevision& p, const Scope& s) {
    if (p.is_null()) return p;
    if (s == p.space()->full_scope()) return p;
    std::vector<Gamble> rays = marginal_cone_rays(p.space(), p.assessment(), s);
    std::vector<Gamble> lifted;
    lifted.reserve(rays.size());
    Scope full = p.space()->full_scope();
    for (const Gamble& r : rays) lifted.push_back(lift(r, full));
    return LowerPrevision::coherent(p.space(), std::move(lifted));
}

bool dominates(const LowerPrevision& p, const LowerPrevision& q) {
    if (!same_space(p.space(), q.space()))
        throw std::invalid_argument("previsions live on different spaces");
    if (q.is_null()) return true;
    if (p.is_null()) return false;
    // q's value on every assessment generator of p must be nonnegative;
    // equivalently credal(q) is contained in credal(p).
    for (const Gamble& g : p.assessment()) {
        std::optional<Rat> value = prevision(q, g);
        if (*value < 0) return false;
    }
    return true;
}

bool equals(const LowerPrevision& a, const LowerPrevision& b) {
    return dominates(a, b) && dominates(b, a);
}

CredalSet credal_vertices(const LowerPrevision& p) {
    if (p.is_null()) throw unsupported_error("the null prevision has no credal set");
    size_t cells = static_cast<size_t>(p.space()->full_cell_count());
    std::vector<Constraint> rows;
    for (size_t w = 0; w < cells; ++w) {
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(cells, Rat(0));
        c.coeffs[w] = Rat(1);
        rows.push_back(std::move(c));
    }
    Constraint sum_one;
    sum_one.rel = Rel::Eq;
    sum_one.rhs = Rat(1);
    sum_one.coeffs.assign(cells, Rat(1));
    rows.push_back(std::move(sum_one));
    for (const Gamble& g : p.assessment())
        rows.push_back(Constraint{g.values, Rel::Ge, Rat(0)});
    std::vector<RatVec> vertices = enumerate_vertices(rows, cells);
    CredalSet out;
    out.reserve(vertices.size());
    for (RatVec& v : vertices) out.push_back(make_mass_function(p.space(), std::move(v)));
    return out;
}

bool is_linear(const LowerPrevision& p) { return credal_vertices(p).size() == 1; }

LowerPrevision natural_extension_from_bounds(
    SpacePtr space, const std::vector<std::pair<Gamble, Rat>>& assessments) {
    std::vector<Gamble> gens;
    gens.reserve(assessments.size());
    Scope full = space->full_scope();
    for (const auto& [f, bound] : assessments) {
        Gamble lifted = to_full(space, f);
        gens.push_back(gamble_sub(lifted, constant_gamble(space, full, bound)));
    }
    if (incurs_sure_loss(space, gens)) return LowerPrevision::null_prevision(space);
    return LowerPrevision::coherent(std::move(space), std::move(gens));
}

bool tau_strict_contains(const LowerPrevision& p, const Gamble& f) {
    Gamble g = to_full(p.space(), f);
    if (is_nonneg_nonzero(g.values)) return true;
    if (p.is_null()) return true;
    return *prevision(p, g) > 0;
}

bool tau_bar_contains(const LowerPrevision& p, const Gamble& f) {
    if (p.is_null()) return true;
    return *prevision(p, f) >= 0;
}

bool in_closure(const ConePiece& piece, const Gamble& f) {
    if (!piece.coherent()) return true;
    return tau_bar_contains(sigma(piece), f);
}

bool natural_join_membership(const MassFunction& p, const std::vector<MassFunction>& r1,
                             const std::vector<MassFunction>& r2) {
    if (r1.empty() || r2.empty()) return false;
    std::vector<std::string> s_names = r1.front().space->scope_names(r1.front().space->full_scope());
    std::vector<std::string> t_names = r2.front().space->scope_names(r2.front().space->full_scope());
    for (const MassFunction& q : r1)
        if (!same_space(q.space, r1.front().space))
            throw std::invalid_argument("relation members live on different spaces");
    for (const MassFunction& q : r2)
        if (!same_space(q.space, r2.front().space))
            throw std::invalid_argument("relation members live on different spaces");
    // The joint must cover exactly the union of the two label sets.
    std::vector<std::string> all = s_names;
    all.insert(all.end(), t_names.begin(), t_names.end());
    Scope joint = p.space->scope_of(all);
    if (joint != p.space->full_scope())
        throw std::invalid_argument("joint mass function does not cover the union scope");

    MassFunction ms = mass_marginal(p, s_names);
    MassFunction mt = mass_marginal(p, t_names);
    bool in1 = false, in2 = false;
    for (const MassFunction& q : r1) in1 = in1 || mass_equal(ms, q);
    for (const MassFunction& q : r2) in2 = in2 || mass_equal(mt, q);
    return in1 && in2;
}

}  // namespace ipalg
