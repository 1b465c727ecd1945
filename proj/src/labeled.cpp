#include "ipalg/labeled.hpp"

#include <stdexcept>

#include "ipalg/errors.hpp"

namespace ipalg {

namespace {

void check_local_space(const SpacePtr& base, const Scope& label, const SpacePtr& local) {
    SpacePtr expected = subspace(base, label);
    if (!same_space(expected, local))
        throw std::invalid_argument("content space does not match the label's product space");
}

// Moves a full-scope gamble from one subspace into a larger one (by
// variable names), returning a full-scope gamble there.
Gamble lift_gamble_between(const Gamble& g, const SpacePtr& from, const SpacePtr& to) {
    Scope in_to = to->scope_of(from->scope_names(from->full_scope()));
    Gamble placed = make_gamble(to, in_to, g.values);
    return lift(placed, to->full_scope());
}

EventSet lift_event_between(const EventSet& a, const SpacePtr& from, const SpacePtr& to) {
    Scope in_to = to->scope_of(from->scope_names(from->full_scope()));
    Scope to_full = to->full_scope();
    std::vector<bool> bits(static_cast<size_t>(to->full_cell_count()), false);
    for (size_t w = 0; w < bits.size(); ++w) {
        Cell cell = cell_at(to, to_full, w);
        Cell down = restrict_cell(to, to_full, cell, in_to);
        bits[w] = a.contains(cell_index(from, from->full_scope(), down));
    }
    return EventSet(to, std::move(bits));
}

ConePiece lift_cone_between(const ConePiece& c, const SpacePtr& to) {
    const SpacePtr& from = c.space();
    switch (c.kind()) {
        case ConeKind::Vacuous:
            return ConePiece::vacuous(to);
        case ConeKind::Contradiction:
            return ConePiece::contradiction(to);
        case ConeKind::Generated: {
            std::vector<Gamble> gens;
            for (const Gamble& g : c.generators())
                gens.push_back(lift_gamble_between(g, from, to));
            return ConePiece::from_assessments(to, std::move(gens));
        }
        case ConeKind::Event:
            return embed(lift_event_between(c.event(), from, to));
        case ConeKind::Mixed: {
            std::vector<Gamble> gens;
            for (const Gamble& g : c.generators())
                gens.push_back(lift_gamble_between(g, from, to));
            return ConePiece::mixed(lift_event_between(c.event(), from, to), std::move(gens));
        }
    }
    throw internal_error("unreachable cone kind");
}

LowerPrevision lift_prevision_between(const LowerPrevision& p, const SpacePtr& to) {
    if (p.is_null()) return LowerPrevision::null_prevision(to);
    std::vector<Gamble> gens;
    for (const Gamble& g : p.assessment())
        gens.push_back(lift_gamble_between(g, p.space(), to));
    return LowerPrevision::coherent(to, std::move(gens));
}

// Moves a piece whose content is measurable on `scope` down to the
// subspace of that scope.
ConePiece lower_cone_to(const ConePiece& c, const Scope& scope, const SpacePtr& sub) {
    switch (c.kind()) {
        case ConeKind::Vacuous:
            return ConePiece::vacuous(sub);
        case ConeKind::Contradiction:
            return ConePiece::contradiction(sub);
        case ConeKind::Generated: {
            std::vector<Gamble> gens;
            for (const Gamble& g : c.generators())
                gens.push_back(to_subspace(project_measurable(g, scope), sub));
            return ConePiece::from_assessments(sub, std::move(gens));
        }
        case ConeKind::Event: {
            const SpacePtr& from = c.space();
            Scope from_full = from->full_scope();
            EventSet a = c.event();
            std::vector<bool> bits(static_cast<size_t>(from->cell_count(scope)), false);
            for (size_t w = 0; w < a.members().size(); ++w) {
                if (!a.members()[w]) continue;
                Cell cell = cell_at(from, from_full, w);
                bits[cell_index(from, scope, restrict_cell(from, from_full, cell, scope))] = true;
            }
            return embed(EventSet(sub, std::move(bits)));
        }
        case ConeKind::Mixed:
            throw unsupported_error("cannot lower a mixed piece exactly");
    }
    throw internal_error("unreachable cone kind");
}

LowerPrevision lower_prevision_to(const LowerPrevision& p, const Scope& scope,
                                  const SpacePtr& sub) {
    if (p.is_null()) return LowerPrevision::null_prevision(sub);
    std::vector<Gamble> gens;
    for (const Gamble& g : p.assessment())
        gens.push_back(to_subspace(project_measurable(g, scope), sub));
    return LowerPrevision::coherent(sub, std::move(gens));
}

}  // namespace

LabeledPiece::LabeledPiece(SpacePtr base_space, Scope label, ConePiece content)
    : base_(std::move(base_space)), label_(std::move(label)),
      local_(content.space()), content_(std::move(content)) {
    check_local_space(base_, label_, local_);
}

LabeledPiece::LabeledPiece(SpacePtr base_space, Scope label, LowerPrevision content)
    : base_(std::move(base_space)), label_(std::move(label)),
      local_(content.space()), content_(std::move(content)) {
    check_local_space(base_, label_, local_);
}

ContentKind LabeledPiece::content_kind() const {
    return std::holds_alternative<ConePiece>(content_) ? ContentKind::Cone
                                                       : ContentKind::Prevision;
}

const ConePiece& LabeledPiece::cone() const {
    if (content_kind() != ContentKind::Cone)
        throw unsupported_error("labeled piece does not hold a cone");
    return std::get<ConePiece>(content_);
}

const LowerPrevision& LabeledPiece::prevision_content() const {
    if (content_kind() != ContentKind::Prevision)
        throw unsupported_error("labeled piece does not hold a prevision");
    return std::get<LowerPrevision>(content_);
}

bool LabeledPiece::is_null() const {
    if (content_kind() == ContentKind::Cone) return !cone().coherent();
    return prevision_content().is_null();
}

Scope label(const LabeledPiece& piece) { return piece.label(); }

LabeledPiece vacuous_labeled(const SpacePtr& base, const Scope& lbl, ContentKind kind) {
    SpacePtr sub = subspace(base, lbl);
    if (kind == ContentKind::Cone) return LabeledPiece(base, lbl, ConePiece::vacuous(sub));
    return LabeledPiece(base, lbl, LowerPrevision::coherent(sub, {}));
}

LabeledPiece null_labeled(const SpacePtr& base, const Scope& lbl, ContentKind kind) {
    SpacePtr sub = subspace(base, lbl);
    if (kind == ContentKind::Cone) return LabeledPiece(base, lbl, ConePiece::contradiction(sub));
    return LabeledPiece(base, lbl, LowerPrevision::null_prevision(sub));
}

LabeledPiece combine_labeled(const LabeledPiece& a, const LabeledPiece& b) {
    if (!same_space(a.base_space(), b.base_space()))
        throw std::invalid_argument("labeled pieces live over different base spaces");
    if (a.content_kind() != b.content_kind())
        throw std::invalid_argument("labeled combination needs matching content kinds");
    Scope joint = scope_union(a.label(), b.label());
    SpacePtr sub = subspace(a.base_space(), joint);
    if (a.content_kind() == ContentKind::Cone) {
        ConePiece combined =
            combine(lift_cone_between(a.cone(), sub), lift_cone_between(b.cone(), sub));
        return LabeledPiece(a.base_space(), joint, std::move(combined));
    }
    LowerPrevision combined = combine(lift_prevision_between(a.prevision_content(), sub),
                                      lift_prevision_between(b.prevision_content(), sub));
    return LabeledPiece(a.base_space(), joint, std::move(combined));
}

LabeledPiece project_labeled(const LabeledPiece& piece, const Scope& t) {
    if (!t.subset_of(piece.label()))
        throw std::invalid_argument("projection target is not a subset of the label");
    if (t == piece.label()) return piece;
    Scope local_t = map_scope(piece.base_space(), t, piece.local_space());
    SpacePtr sub = subspace(piece.base_space(), t);
    if (piece.content_kind() == ContentKind::Cone) {
        ConePiece marginal = extract(piece.cone(), local_t);
        return LabeledPiece(piece.base_space(), t, lower_cone_to(marginal, local_t, sub));
    }
    LowerPrevision marginal = extract(piece.prevision_content(), local_t);
    return LabeledPiece(piece.base_space(), t, lower_prevision_to(marginal, local_t, sub));
}

bool labeled_equal(const LabeledPiece& a, const LabeledPiece& b) {
    if (!same_space(a.base_space(), b.base_space())) return false;
    if (a.content_kind() != b.content_kind()) return false;
    if (a.label() != b.label()) return false;
    if (a.content_kind() == ContentKind::Cone) return equals(a.cone(), b.cone());
    return equals(a.prevision_content(), b.prevision_content());
}

namespace {

bool cone_has_support(const ConePiece& c, const Scope& s) {
    switch (c.kind()) {
        case ConeKind::Vacuous:
        case ConeKind::Contradiction:
            return true;
        case ConeKind::Generated:
            return equals(extract(c, s), c);
        case ConeKind::Event:
            return cylindrify(c.event(), s) == c.event();
        case ConeKind::Mixed: {
            // Sufficient condition: cylindrical event and measurable
            // generators. A mixed piece failing it is rejected rather
            // than risking a wrong answer.
            if (!(cylindrify(c.event(), s) == c.event())) return false;
            for (const Gamble& g : c.generators())
                if (!is_measurable(g, s)) return false;
            return true;
        }
    }
    throw internal_error("unreachable cone kind");
}

bool prevision_has_support(const LowerPrevision& p, const Scope& s) {
    if (p.is_null()) return true;
    return equals(extract(p, s), p);
}

}  // namespace

GlobalLabeled::GlobalLabeled(ConePiece content, Scope support)
    : space_(content.space()), support_(std::move(support)), content_(std::move(content)) {
    if (!cone_has_support(std::get<ConePiece>(content_), support_))
        throw std::invalid_argument("scope is not a support of the content");
}

GlobalLabeled::GlobalLabeled(LowerPrevision content, Scope support)
    : space_(content.space()), support_(std::move(support)), content_(std::move(content)) {
    if (!prevision_has_support(std::get<LowerPrevision>(content_), support_))
        throw std::invalid_argument("scope is not a support of the content");
}

ContentKind GlobalLabeled::content_kind() const {
    return std::holds_alternative<ConePiece>(content_) ? ContentKind::Cone
                                                       : ContentKind::Prevision;
}

const ConePiece& GlobalLabeled::cone() const { return std::get<ConePiece>(content_); }

const LowerPrevision& GlobalLabeled::prevision_content() const {
    return std::get<LowerPrevision>(content_);
}

GlobalLabeled combine_global(const GlobalLabeled& a, const GlobalLabeled& b) {
    if (a.content_kind() != b.content_kind())
        throw std::invalid_argument("global combination needs matching content kinds");
    Scope joint = scope_union(a.support(), b.support());
    if (a.content_kind() == ContentKind::Cone)
        return GlobalLabeled(combine(a.cone(), b.cone()), joint);
    return GlobalLabeled(combine(a.prevision_content(), b.prevision_content()), joint);
}

GlobalLabeled project_global(const GlobalLabeled& g, const Scope& t) {
    if (!t.subset_of(g.support()))
        throw std::invalid_argument("projection target is not a subset of the support");
    if (g.content_kind() == ContentKind::Cone)
        return GlobalLabeled(extract(g.cone(), t), t);
    return GlobalLabeled(extract(g.prevision_content(), t), t);
}

bool global_equal(const GlobalLabeled& a, const GlobalLabeled& b) {
    if (a.content_kind() != b.content_kind()) return false;
    if (a.support() != b.support()) return false;
    if (a.content_kind() == ContentKind::Cone) return equals(a.cone(), b.cone());
    return equals(a.prevision_content(), b.prevision_content());
}

LabeledPiece h(const GlobalLabeled& g) {
    const SpacePtr& base = g.space();
    const Scope& s = g.support();
    SpacePtr sub = subspace(base, s);
    if (g.content_kind() == ContentKind::Cone) {
        // Extraction is the identity here (s supports the content); it
        // also rewrites generated pieces with s-measurable generators.
        ConePiece canonical = g.cone().kind() == ConeKind::Generated
                                  ? extract(g.cone(), s)
                                  : g.cone();
        return LabeledPiece(base, s, lower_cone_to(canonical, s, sub));
    }
    return LabeledPiece(base, s, lower_prevision_to(
                                     g.prevision_content().is_null()
                                         ? g.prevision_content()
                                         : extract(g.prevision_content(), s),
                                     s, sub));
}

GlobalLabeled h_inverse(const LabeledPiece& piece) {
    const SpacePtr& base = piece.base_space();
    if (piece.content_kind() == ContentKind::Cone)
        return GlobalLabeled(lift_cone_between(piece.cone(), base), piece.label());
    return GlobalLabeled(lift_prevision_between(piece.prevision_content(), base),
                         piece.label());
}

}  // namespace ipalg
