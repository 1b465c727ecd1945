#ifndef IPALG_PREVISION_HPP
#define IPALG_PREVISION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ipalg/cone.hpp"
#include "ipalg/space.hpp"

namespace ipalg {

// Exact probability mass function over the cells of a space's full scope.
struct MassFunction {
    SpacePtr space;
    RatVec probs;
};

MassFunction make_mass_function(SpacePtr space, RatVec probs);
MassFunction mass_marginal(const MassFunction& p, const std::vector<std::string>& names);
bool mass_equal(const MassFunction& a, const MassFunction& b);

// Vertex-minimal list of the mass functions dominating a prevision.
using CredalSet = std::vector<MassFunction>;

// Coherent lower prevision represented by an assessment: a finite list of
// gambles whose dominating mass functions form the credal set. Every query
// is an exact LP. Null is the everywhere +infinity prevision.
//
// The assessment cone may avoid sure loss without avoiding partial loss;
// previsions only see the closed side, so this is the faithful carrier of
// natural extension for previsions (combining two coherent previsions can
// stay coherent even when the corresponding gamble cones are mutually
// inconsistent).
class LowerPrevision {
public:
    static LowerPrevision null_prevision(SpacePtr space);
    // Assumes the assessment avoids sure loss; callers check first.
    static LowerPrevision coherent(SpacePtr space, std::vector<Gamble> assessment);

    bool is_null() const { return null_; }
    const SpacePtr& space() const { return space_; }
    const std::vector<Gamble>& assessment() const;

private:
    LowerPrevision(bool null, SpacePtr space, std::vector<Gamble> assessment)
        : null_(null), space_(std::move(space)), assessment_(std::move(assessment)) {}

    bool null_;
    SpacePtr space_;
    std::vector<Gamble> assessment_;
};

// True iff some nonnegative combination of the gambles is uniformly
// negative, i.e. no dominating coherent prevision exists.
bool incurs_sure_loss(const SpacePtr& space, const std::vector<Gamble>& gambles);

LowerPrevision sigma(const ConePiece& piece);

// Lower prevision value; nullopt encodes +infinity (Null prevision).
std::optional<Rat> prevision(const LowerPrevision& p, const Gamble& f);
// Conjugate upper prevision; nullopt is the sentinel for Null.
std::optional<Rat> upper_prevision(const LowerPrevision& p, const Gamble& f);

LowerPrevision combine(const LowerPrevision& a, const LowerPrevision& b);
LowerPrevision extract(const LowerPrevision& p, const Scope& s);

// dominates(p, q) decides p <= q in the information order (q dominates p).
bool dominates(const LowerPrevision& p, const LowerPrevision& q);
bool equals(const LowerPrevision& a, const LowerPrevision& b);

CredalSet credal_vertices(const LowerPrevision& p);
bool is_linear(const LowerPrevision& p);

LowerPrevision natural_extension_from_bounds(
    SpacePtr space, const std::vector<std::pair<Gamble, Rat>>& assessments);

bool tau_strict_contains(const LowerPrevision& p, const Gamble& f);
bool tau_bar_contains(const LowerPrevision& p, const Gamble& f);

// Membership in the natural join of two finite relations of mass
// functions: the marginals of p must appear in each relation.
bool natural_join_membership(const MassFunction& p, const std::vector<MassFunction>& r1,
                             const std::vector<MassFunction>& r2);

}  // namespace ipalg

#endif
