#include "ipalg/cone.hpp"

#include <algorithm>
#include <stdexcept>

#include "ipalg/errors.hpp"
#include "ipalg/guards.hpp"
#include "ipalg/linprog.hpp"

namespace ipalg {

namespace {

constexpr size_t kPruneThreshold = 8;

Gamble to_full_scope(const ConePiece& piece, const Gamble& f) {
    if (!same_space(piece.space(), f.space))
        throw std::invalid_argument("gamble is on a different space");
    Scope full = piece.space()->full_scope();
    return f.scope == full ? f : lift(f, full);
}

void scale_gamble_canonical(Gamble& g) {
    for (const Rat& v : g.values) {
        if (v != 0) {
            Rat a = v < 0 ? Rat(-v) : v;
            if (a != 1)
                for (Rat& x : g.values) x /= a;
            return;
        }
    }
}

// Drop zero and nonnegative (already vacuous) gambles, scale the first
// nonzero entry to absolute value one, sort, dedupe.
std::vector<Gamble> canonical_generators(const SpacePtr& space, std::vector<Gamble> gens) {
    Scope full = space->full_scope();
    std::vector<Gamble> out;
    for (Gamble& g : gens) {
        if (!same_space(g.space, space))
            throw std::invalid_argument("generator is on a different space");
        Gamble f = g.scope == full ? std::move(g) : lift(g, full);
        if (is_zero_vec(f.values) || is_nonneg_nonzero(f.values)) continue;
        scale_gamble_canonical(f);
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(),
              [](const Gamble& a, const Gamble& b) { return lex_less(a.values, b.values); });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Gamble& a, const Gamble& b) { return a.values == b.values; }),
              out.end());
    return out;
}

// Feasibility of { lambda >= 0 : sum lambda_j g_j <= f }, decided by the
// "maximize sum lambda" program. Any non-infeasible outcome certifies
// membership of a nonzero f in the generated cone.
LpOutcome domination_lp(const SpacePtr& space, const std::vector<Gamble>& gens,
                        const RatVec& f) {
    size_t cells = static_cast<size_t>(space->full_cell_count());
    LinearProgram lp;
    lp.num_vars = gens.size();
    lp.objective.assign(gens.size(), Rat(1));
    lp.nonneg.assign(gens.size(), true);
    for (size_t w = 0; w < cells; ++w) {
        Constraint c;
        c.rel = Rel::Le;
        c.rhs = f[w];
        c.coeffs.resize(gens.size());
        for (size_t j = 0; j < gens.size(); ++j) c.coeffs[j] = gens[j].values[w];
        lp.constraints.push_back(std::move(c));
    }
    return solve(lp);
}

bool generated_member(const SpacePtr& space, const std::vector<Gamble>& gens,
                      const Gamble& f) {
    if (is_zero_vec(f.values)) return false;
    if (gens.empty()) return is_nonneg_nonzero(f.values);
    return !domination_lp(space, gens, f.values).infeasible();
}

// Drop generators already implied by the others; exact, so the piece's
// semantic set is unchanged. Keeps later Fourier-Motzkin runs inside the
// elimination guard.
void prune_redundant(const SpacePtr& space, std::vector<Gamble>& gens) {
    for (size_t i = gens.size(); i-- > 0 && gens.size() > 1;) {
        std::vector<Gamble> rest;
        rest.reserve(gens.size() - 1);
        for (size_t k = 0; k < gens.size(); ++k)
            if (k != i) rest.push_back(gens[k]);
        if (generated_member(space, rest, gens[i])) gens.erase(gens.begin() + i);
    }
}

std::vector<Gamble> event_hull_generators(const EventSet& a) {
    const SpacePtr& space = a.space();
    Scope full = space->full_scope();
    size_t cells = a.members().size();
    std::vector<Gamble> gens;
    for (size_t w = 0; w < cells; ++w) {
        RatVec unit(cells, Rat(0));
        unit[w] = Rat(1);
        gens.push_back(make_gamble(space, full, unit));
        if (!a.members()[w]) {
            RatVec neg(cells, Rat(0));
            neg[w] = Rat(-1);
            gens.push_back(make_gamble(space, full, std::move(neg)));
        }
    }
    return gens;
}

// Strict-event branch of Mixed membership: maximize the margin epsilon of
// an auxiliary gamble u that must clear epsilon on A, with
// f - sum lambda g - u >= 0 pointwise. Membership via the strict part iff
// the optimum is positive or unbounded.
bool mixed_strict_branch(const SpacePtr& space, const EventSet& a,
                         const std::vector<Gamble>& gens, const RatVec& f) {
    size_t cells = static_cast<size_t>(space->full_cell_count());
    size_t m = gens.size();
    // Variables: lambda_0..m-1 (>=0), u_0..cells-1 (free), epsilon (free).
    LinearProgram lp;
    lp.num_vars = m + cells + 1;
    lp.objective.assign(lp.num_vars, Rat(0));
    lp.objective[m + cells] = Rat(1);
    lp.nonneg.assign(lp.num_vars, false);
    for (size_t j = 0; j < m; ++j) lp.nonneg[j] = true;
    for (size_t w = 0; w < cells; ++w) {
        Constraint c;
        c.rel = Rel::Le;
        c.rhs = f[w];
        c.coeffs.assign(lp.num_vars, Rat(0));
        for (size_t j = 0; j < m; ++j) c.coeffs[j] = gens[j].values[w];
        c.coeffs[m + w] = Rat(1);
        lp.constraints.push_back(std::move(c));
    }
    for (size_t w = 0; w < cells; ++w) {
        if (!a.members()[w]) continue;
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(lp.num_vars, Rat(0));
        c.coeffs[m + w] = Rat(1);
        c.coeffs[m + cells] = Rat(-1);
        lp.constraints.push_back(std::move(c));
    }
    LpOutcome out = solve(lp);
    if (out.unbounded()) return true;
    return out.optimal() && out.value > 0;
}

}  // namespace

ConePiece::ConePiece(ConeKind kind, SpacePtr space, std::vector<Gamble> generators,
                     std::vector<bool> event_bits)
    : kind_(kind),
      space_(std::move(space)),
      generators_(std::move(generators)),
      event_bits_(std::move(event_bits)) {}

ConePiece ConePiece::vacuous(SpacePtr space) {
    return ConePiece(ConeKind::Vacuous, std::move(space), {}, {});
}

ConePiece ConePiece::contradiction(SpacePtr space) {
    return ConePiece(ConeKind::Contradiction, std::move(space), {}, {});
}

ConePiece ConePiece::from_assessments(SpacePtr space, std::vector<Gamble> gambles) {
    std::vector<Gamble> gens = canonical_generators(space, std::move(gambles));
    if (gens.empty()) return vacuous(std::move(space));
    if (!avoids_partial_loss(space, gens)) return contradiction(std::move(space));
    if (gens.size() > kPruneThreshold) prune_redundant(space, gens);
    return ConePiece(ConeKind::Generated, std::move(space), std::move(gens), {});
}

ConePiece ConePiece::mixed(const EventSet& a, std::vector<Gamble> gambles) {
    SpacePtr space = a.space();
    if (a.is_empty()) return contradiction(std::move(space));
    std::vector<Gamble> gens = canonical_generators(space, std::move(gambles));
    if (a.is_all()) return from_assessments(std::move(space), std::move(gens));
    if (gens.empty()) return embed(a);
    if (!avoids_partial_loss(space, gens)) return contradiction(std::move(space));
    // 0 reachable through the strict event part collapses the piece too.
    RatVec zero(a.members().size(), Rat(0));
    if (mixed_strict_branch(space, a, gens, zero)) return contradiction(std::move(space));
    if (gens.size() > kPruneThreshold) prune_redundant(space, gens);
    return ConePiece(ConeKind::Mixed, std::move(space), std::move(gens), a.members());
}

const std::vector<Gamble>& ConePiece::generators() const {
    if (kind_ != ConeKind::Generated && kind_ != ConeKind::Mixed)
        throw unsupported_error("piece has no generators");
    return generators_;
}

EventSet ConePiece::event() const {
    if (kind_ != ConeKind::Event && kind_ != ConeKind::Mixed)
        throw unsupported_error("piece has no event part");
    return EventSet(space_, event_bits_);
}

bool avoids_partial_loss(const SpacePtr& space, const std::vector<Gamble>& gambles) {
    std::vector<Gamble> gens;
    Scope full = space->full_scope();
    for (const Gamble& g : gambles) gens.push_back(g.scope == full ? g : lift(g, full));
    if (gens.empty()) return true;
    RatVec zero(static_cast<size_t>(space->full_cell_count()), Rat(0));
    LpOutcome out = domination_lp(space, gens, zero);
    return out.optimal() && out.value == 0;
}

ConePiece embed(const EventSet& a) {
    if (a.is_empty()) return ConePiece::contradiction(a.space());
    if (a.is_all()) return ConePiece::vacuous(a.space());
    return ConePiece(ConeKind::Event, a.space(), {}, a.members());
}

bool contains(const ConePiece& piece, const Gamble& gamble) {
    Gamble f = to_full_scope(piece, gamble);
    switch (piece.kind()) {
        case ConeKind::Contradiction:
            return true;
        case ConeKind::Vacuous:
            return is_nonneg_nonzero(f.values);
        case ConeKind::Generated:
            return generated_member(piece.space(), piece.generators(), f);
        case ConeKind::Event: {
            if (is_nonneg_nonzero(f.values)) return true;
            EventSet a = piece.event();
            Rat lowest;
            bool first = true;
            for (size_t w = 0; w < a.members().size(); ++w) {
                if (!a.members()[w]) continue;
                if (first || f.values[w] < lowest) lowest = f.values[w];
                first = false;
            }
            return !first && lowest > 0;
        }
        case ConeKind::Mixed: {
            if (is_zero_vec(f.values)) return false;
            if (generated_member(piece.space(), piece.generators(), f)) return true;
            EventSet a = piece.event();
            return mixed_strict_branch(piece.space(), a, piece.generators(), f.values);
        }
    }
    throw internal_error("unreachable cone kind");
}

namespace {

void check_same_space(const ConePiece& a, const ConePiece& b) {
    if (!same_space(a.space(), b.space()))
        throw std::invalid_argument("cone pieces live on different spaces");
}

std::vector<Gamble> concat(const std::vector<Gamble>& a, const std::vector<Gamble>& b) {
    std::vector<Gamble> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

ConePiece combine(const ConePiece& a, const ConePiece& b) {
    check_same_space(a, b);
    if (a.kind() == ConeKind::Contradiction || b.kind() == ConeKind::Contradiction)
        return ConePiece::contradiction(a.space());
    if (a.kind() == ConeKind::Vacuous) return b;
    if (b.kind() == ConeKind::Vacuous) return a;

    bool a_event = a.kind() == ConeKind::Event || a.kind() == ConeKind::Mixed;
    bool b_event = b.kind() == ConeKind::Event || b.kind() == ConeKind::Mixed;
    bool a_gen = a.kind() == ConeKind::Generated || a.kind() == ConeKind::Mixed;
    bool b_gen = b.kind() == ConeKind::Generated || b.kind() == ConeKind::Mixed;

    std::vector<Gamble> gens;
    if (a_gen) gens = a.generators();
    if (b_gen) gens = concat(gens, b.generators());

    if (a_event && b_event) {
        return ConePiece::mixed(event_intersect(a.event(), b.event()), std::move(gens));
    } else if (a_event) {
        return ConePiece::mixed(a.event(), std::move(gens));
    } else if (b_event) {
        return ConePiece::mixed(b.event(), std::move(gens));
    }
    return ConePiece::from_assessments(a.space(), std::move(gens));
}

std::vector<Gamble> closure_generators(const ConePiece& piece) {
    switch (piece.kind()) {
        case ConeKind::Vacuous:
            return {};
        case ConeKind::Generated:
            return piece.generators();
        case ConeKind::Event:
            return event_hull_generators(piece.event());
        case ConeKind::Mixed:
            return concat(piece.generators(), event_hull_generators(piece.event()));
        case ConeKind::Contradiction:
            throw unsupported_error("the contradiction has no closure generators");
    }
    throw internal_error("unreachable cone kind");
}

namespace {

// H-representation of the closed cone spanned by the generators and the
// nonnegative orthant. Two routes compute the same rows: eliminating the
// multipliers by Fourier-Motzkin (cheap when there are few generators),
// or enumerating the extreme rays of the dual cone {a >= 0 : a.g >= 0}
// (cheap when the cell count is small).
std::vector<Constraint> closed_cone_h_rep(const SpacePtr& space,
                                          const std::vector<Gamble>& generators) {
    size_t cells = static_cast<size_t>(space->full_cell_count());
    // The facets are the extreme rays of the dual cone {a >= 0 : a.g >= 0},
    // which is pointed, so one double description run suffices.
    std::vector<Constraint> dual;
    for (size_t w = 0; w < cells; ++w) {
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(cells, Rat(0));
        c.coeffs[w] = Rat(1);
        dual.push_back(std::move(c));
    }
    for (const Gamble& g : generators)
        dual.push_back(Constraint{g.values, Rel::Ge, Rat(0)});
    std::vector<RatVec> rows = detail::extreme_rays_unguarded(dual, cells);
    std::vector<Constraint> out;
    out.reserve(rows.size());
    for (RatVec& r : rows) out.push_back(Constraint{std::move(r), Rel::Ge, Rat(0)});
    return out;
}

}  // namespace

std::vector<Gamble> marginal_cone_rays(const SpacePtr& space,
                                       const std::vector<Gamble>& generators,
                                       const Scope& s) {
    Scope full = space->full_scope();
    size_t cells = static_cast<size_t>(space->full_cell_count());
    size_t sub_cells = static_cast<size_t>(space->cell_count(s));
    // Compose the full-space H-representation with the lifting map: the
    // S-measurable part {y : lift(y) in cone} keeps one row per facet,
    // with coefficients summed over each S-block.
    if (static_cast<int>(sub_cells) > guards().max_vertex_dim)
        throw guard_error("vertex-dim", "marginal scope exceeds the ray-enumeration guard");
    std::vector<Constraint> shadow;
    for (const Constraint& row : closed_cone_h_rep(space, generators)) {
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(sub_cells, Rat(0));
        for (size_t w = 0; w < cells; ++w) {
            Cell cell = cell_at(space, full, w);
            size_t y_idx = cell_index(space, s, restrict_cell(space, full, cell, s));
            c.coeffs[y_idx] += row.coeffs[w];
        }
        if (!is_zero_vec(c.coeffs)) shadow.push_back(std::move(c));
    }
    std::vector<RatVec> rays = detail::extreme_rays_unguarded(shadow, sub_cells);
    std::vector<Gamble> out;
    out.reserve(rays.size());
    for (RatVec& r : rays) out.push_back(make_gamble(space, s, std::move(r)));
    return out;
}

ConePiece extract(const ConePiece& piece, const Scope& s) {
    const SpacePtr& space = piece.space();
    Scope full = space->full_scope();
    if (!s.subset_of(full)) throw std::invalid_argument("scope invalid for space");
    switch (piece.kind()) {
        case ConeKind::Contradiction:
            return piece;
        case ConeKind::Vacuous:
            return piece;
        case ConeKind::Event:
            return embed(cylindrify(piece.event(), s));
        case ConeKind::Generated:
        case ConeKind::Mixed: {
            if (s == full) return piece;
            std::vector<Gamble> rays =
                marginal_cone_rays(space, closure_generators(piece), s);
            std::vector<Gamble> lifted;
            lifted.reserve(rays.size());
            for (const Gamble& r : rays) lifted.push_back(lift(r, full));
            return ConePiece::from_assessments(space, std::move(lifted));
        }
    }
    throw internal_error("unreachable cone kind");
}

ConePiece meet(const ConePiece& a, const ConePiece& b) {
    check_same_space(a, b);
    auto supported = [](const ConePiece& p) {
        return p.kind() == ConeKind::Vacuous || p.kind() == ConeKind::Generated;
    };
    if (!supported(a) || !supported(b))
        throw unsupported_error("meet is only defined for vacuous and generated pieces");
    if (a.kind() == ConeKind::Vacuous || b.kind() == ConeKind::Vacuous)
        return ConePiece::vacuous(a.space());

    size_t cells = static_cast<size_t>(a.space()->full_cell_count());
    if (static_cast<int>(cells) > guards().max_vertex_dim)
        throw guard_error("vertex-dim", "meet space exceeds the ray-enumeration guard");
    std::vector<Constraint> rows = closed_cone_h_rep(a.space(), a.generators());
    std::vector<Constraint> rows_b = closed_cone_h_rep(b.space(), b.generators());
    rows.insert(rows.end(), rows_b.begin(), rows_b.end());
    std::vector<RatVec> rays = detail::extreme_rays_unguarded(rows, cells);
    std::vector<Gamble> gens;
    gens.reserve(rays.size());
    Scope full = a.space()->full_scope();
    for (RatVec& r : rays) gens.push_back(make_gamble(a.space(), full, std::move(r)));
    return ConePiece::from_assessments(a.space(), std::move(gens));
}

bool leq(const ConePiece& a, const ConePiece& b) {
    check_same_space(a, b);
    if (a.kind() == ConeKind::Vacuous) return true;
    if (b.kind() == ConeKind::Contradiction) return true;
    if (a.kind() == ConeKind::Contradiction) return false;
    if (b.kind() == ConeKind::Vacuous) return false;  // a is strictly larger than L+

    switch (a.kind()) {
        case ConeKind::Generated: {
            for (const Gamble& g : a.generators())
                if (!contains(b, g)) return false;
            return true;
        }
        case ConeKind::Event: {
            if (b.kind() == ConeKind::Event) {
                // Information order is the reverse of event inclusion.
                EventSet ea = a.event(), eb = b.event();
                for (size_t i = 0; i < ea.members().size(); ++i)
                    if (eb.members()[i] && !ea.members()[i]) return false;
                return true;
            }
            throw unsupported_error("ordering an event piece against this variant is not supported");
        }
        case ConeKind::Mixed: {
            if (b.kind() == ConeKind::Event || b.kind() == ConeKind::Mixed) {
                EventSet ea = a.event(), eb = b.event();
                bool b_subset_a = true;
                for (size_t i = 0; i < ea.members().size(); ++i)
                    if (eb.members()[i] && !ea.members()[i]) b_subset_a = false;
                if (!b_subset_a)
                    throw unsupported_error(
                        "ordering mixed pieces with incomparable events is not supported");
                for (const Gamble& g : a.generators())
                    if (!contains(b, g)) return false;
                return true;
            }
            throw unsupported_error("ordering a mixed piece against this variant is not supported");
        }
        default:
            throw internal_error("unreachable cone kind");
    }
}

bool equals(const ConePiece& a, const ConePiece& b) {
    check_same_space(a, b);
    if (a.kind() == ConeKind::Event && b.kind() == ConeKind::Event)
        return a.event() == b.event();  // embed is injective
    if (!leq(a, b)) return false;
    return leq(b, a);
}

Scope least_support(const ConePiece& piece) {
    const SpacePtr& space = piece.space();
    switch (piece.kind()) {
        case ConeKind::Vacuous:
            return space->empty_scope();
        case ConeKind::Contradiction:
        case ConeKind::Mixed:
            throw unsupported_error("least support is not defined for this variant");
        default:
            break;
    }
    // Greedy single-variable removal; valid because supports are closed
    // under intersection.
    Scope support = space->full_scope();
    for (size_t v = 0; v < space->num_vars(); ++v) {
        if (!support.contains(v)) continue;
        Scope smaller = scope_minus(support, Scope({v}));
        if (piece.kind() == ConeKind::Event) {
            if (cylindrify(piece.event(), smaller) == piece.event()) support = smaller;
        } else {
            if (equals(extract(piece, smaller), piece)) support = smaller;
        }
    }
    return support;
}

bool is_strictly_desirable(const ConePiece& piece) {
    if (piece.kind() == ConeKind::Vacuous) return true;
    if (piece.kind() != ConeKind::Generated)
        throw unsupported_error("strict desirability is decided for vacuous and generated pieces");
    const SpacePtr& space = piece.space();
    const std::vector<Gamble>& gens = piece.generators();
    size_t cells = static_cast<size_t>(space->full_cell_count());
    for (const Gamble& g : gens) {
        // maximize delta s.t. sum lambda g + delta <= g_i, lambda >= 0.
        LinearProgram lp;
        lp.num_vars = gens.size() + 1;
        lp.objective.assign(lp.num_vars, Rat(0));
        lp.objective[gens.size()] = Rat(1);
        lp.nonneg.assign(lp.num_vars, true);
        lp.nonneg[gens.size()] = false;
        for (size_t w = 0; w < cells; ++w) {
            Constraint c;
            c.rel = Rel::Le;
            c.rhs = g.values[w];
            c.coeffs.assign(lp.num_vars, Rat(0));
            for (size_t j = 0; j < gens.size(); ++j) c.coeffs[j] = gens[j].values[w];
            c.coeffs[gens.size()] = Rat(1);
            lp.constraints.push_back(std::move(c));
        }
        LpOutcome out = solve(lp);
        bool strict = out.unbounded() || (out.optimal() && out.value > 0);
        if (!strict) return false;
    }
    return true;
}

}  // namespace ipalg
