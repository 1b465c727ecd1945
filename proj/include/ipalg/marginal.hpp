#ifndef IPALG_MARGINAL_HPP
#define IPALG_MARGINAL_HPP

#include <optional>
#include <variant>
#include <vector>

#include "ipalg/labeled.hpp"

namespace ipalg {

// Ordered family of labeled pieces of one content kind over one base space.
struct KnowledgeBase {
    std::vector<LabeledPiece> pieces;
};

void validate_knowledge_base(const KnowledgeBase& kb);

// For each i < n-1, the index p(i) > i whose scope covers S_i's
// intersection with everything after i.
struct RipCertificate {
    std::vector<size_t> parent;  // parent[i] = p(i), 0-based
};

struct RipFailure {
    size_t first_violating;  // 0-based index of the first i without a valid p(i)
};

using RipResult = std::variant<RipCertificate, RipFailure>;

RipResult satisfies_rip(const std::vector<Scope>& scopes);
bool rip_certificate_valid(const std::vector<Scope>& scopes, const RipCertificate& cert);

bool pairwise_compatible(const LabeledPiece& a, const LabeledPiece& b);

struct CompatibilityVerdict {
    enum class Kind { Compatible, Inconsistent, Incompatible };
    Kind kind;
    std::optional<LabeledPiece> witness;  // Compatible via the direct route
    std::vector<size_t> failing;          // Incompatible
};

// Direct route: combine everything on the union scope, then compare the
// projections with the inputs.
CompatibilityVerdict check_compatibility(const KnowledgeBase& kb);

// Join-tree route, for consistent pairwise-compatible families whose
// scopes satisfy RIP. Must come back Compatible; anything else is an
// internal invariant violation. Precondition failures throw
// std::invalid_argument with a distinct message per precondition.
CompatibilityVerdict rip_theorem_check(const KnowledgeBase& kb, const RipCertificate& cert);

// Collect/distribute message passing along the certificate's tree. The
// i-th output is the marginal of the total combination on S_i; no content
// is ever materialized beyond a node's own label.
std::vector<LabeledPiece> join_tree_marginals(const KnowledgeBase& kb,
                                              const RipCertificate& cert);

}  // namespace ipalg

#endif
