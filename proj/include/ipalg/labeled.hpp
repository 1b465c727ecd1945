#ifndef IPALG_LABELED_HPP
#define IPALG_LABELED_HPP

#include <variant>

#include "ipalg/cone.hpp"
#include "ipalg/prevision.hpp"
#include "ipalg/space.hpp"

namespace ipalg {

enum class ContentKind { Cone, Prevision };

// Element of the labeled algebra: a pair (content, S) where the content
// lives on the product space of the label's variables. This is the
// storage-efficient view; contents never materialize cells outside the
// label.
class LabeledPiece {
public:
    LabeledPiece(SpacePtr base_space, Scope label, ConePiece content);
    LabeledPiece(SpacePtr base_space, Scope label, LowerPrevision content);

    const SpacePtr& base_space() const { return base_; }
    const Scope& label() const { return label_; }
    ContentKind content_kind() const;
    const SpacePtr& local_space() const { return local_; }
    const ConePiece& cone() const;
    const LowerPrevision& prevision_content() const;
    bool is_null() const;

private:
    SpacePtr base_;
    Scope label_;
    SpacePtr local_;
    std::variant<ConePiece, LowerPrevision> content_;
};

Scope label(const LabeledPiece& piece);
LabeledPiece vacuous_labeled(const SpacePtr& base, const Scope& label, ContentKind kind);
LabeledPiece null_labeled(const SpacePtr& base, const Scope& label, ContentKind kind);

// Label union; contents are lifted to the union space and combined there.
LabeledPiece combine_labeled(const LabeledPiece& a, const LabeledPiece& b);

// Marginalization to t, a subset of the label.
LabeledPiece project_labeled(const LabeledPiece& piece, const Scope& t);

bool labeled_equal(const LabeledPiece& a, const LabeledPiece& b);

// Full-space content together with a verified support: the Psi view,
// kept around to exercise the isomorphism with the labeled view.
class GlobalLabeled {
public:
    GlobalLabeled(ConePiece content, Scope support);
    GlobalLabeled(LowerPrevision content, Scope support);

    const SpacePtr& space() const { return space_; }
    const Scope& support() const { return support_; }
    ContentKind content_kind() const;
    const ConePiece& cone() const;
    const LowerPrevision& prevision_content() const;

private:
    SpacePtr space_;
    Scope support_;
    std::variant<ConePiece, LowerPrevision> content_;
};

GlobalLabeled combine_global(const GlobalLabeled& a, const GlobalLabeled& b);
GlobalLabeled project_global(const GlobalLabeled& g, const Scope& t);
bool global_equal(const GlobalLabeled& a, const GlobalLabeled& b);

// The isomorphism between the two labeled views: h restricts the content
// to its support's product space, h_inverse lifts it back.
LabeledPiece h(const GlobalLabeled& g);
GlobalLabeled h_inverse(const LabeledPiece& piece);

}  // namespace ipalg

#endif
