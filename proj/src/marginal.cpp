#include "ipalg/marginal.hpp"

#include <stdexcept>

#include "ipalg/errors.hpp"

namespace ipalg {

void validate_knowledge_base(const KnowledgeBase& kb) {
    if (kb.pieces.empty())
        throw std::invalid_argument("knowledge base needs at least one piece");
    for (const LabeledPiece& piece : kb.pieces) {
        if (!same_space(piece.base_space(), kb.pieces.front().base_space()))
            throw std::invalid_argument("knowledge base mixes base spaces");
        if (piece.content_kind() != kb.pieces.front().content_kind())
            throw std::invalid_argument("knowledge base mixes content kinds");
    }
}

RipResult satisfies_rip(const std::vector<Scope>& scopes) {
    if (scopes.empty()) throw std::invalid_argument("need at least one scope");
    size_t n = scopes.size();
    RipCertificate cert;
    if (n == 1) return cert;
    cert.parent.resize(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        Scope tail;
        for (size_t j = i + 1; j < n; ++j) tail = scope_union(tail, scopes[j]);
        Scope needed = scope_intersect(scopes[i], tail);
        size_t pick = SIZE_MAX;
        for (size_t j = i + 1; j < n && pick == SIZE_MAX; ++j)
            if (needed.subset_of(scopes[j])) pick = j;  // ties to the smallest index
        if (pick == SIZE_MAX) return RipFailure{i};
        cert.parent[i] = pick;
    }
    return cert;
}

bool rip_certificate_valid(const std::vector<Scope>& scopes, const RipCertificate& cert) {
    size_t n = scopes.size();
    if (n == 0) return false;
    if (cert.parent.size() != n - 1) return false;
    for (size_t i = 0; i + 1 < n; ++i) {
        size_t p = cert.parent[i];
        if (p <= i || p >= n) return false;
        Scope tail;
        for (size_t j = i + 1; j < n; ++j) tail = scope_union(tail, scopes[j]);
        if (scope_intersect(scopes[i], scopes[p]) != scope_intersect(scopes[i], tail))
            return false;
    }
    return true;
}

bool pairwise_compatible(const LabeledPiece& a, const LabeledPiece& b) {
    if (a.content_kind() != b.content_kind())
        throw std::invalid_argument("pairwise compatibility needs matching content kinds");
    Scope overlap = scope_intersect(a.label(), b.label());
    return labeled_equal(project_labeled(a, overlap), project_labeled(b, overlap));
}

CompatibilityVerdict check_compatibility(const KnowledgeBase& kb) {
    validate_knowledge_base(kb);
    LabeledPiece total = kb.pieces.front();
    for (size_t i = 1; i < kb.pieces.size(); ++i)
        total = combine_labeled(total, kb.pieces[i]);
    if (total.is_null())
        return CompatibilityVerdict{CompatibilityVerdict::Kind::Inconsistent, {}, {}};
    std::vector<size_t> failing;
    for (size_t i = 0; i < kb.pieces.size(); ++i) {
        LabeledPiece marginal = project_labeled(total, kb.pieces[i].label());
        if (!labeled_equal(marginal, kb.pieces[i])) failing.push_back(i);
    }
    if (!failing.empty())
        return CompatibilityVerdict{CompatibilityVerdict::Kind::Incompatible, {},
                                    std::move(failing)};
    return CompatibilityVerdict{CompatibilityVerdict::Kind::Compatible, std::move(total), {}};
}

std::vector<LabeledPiece> join_tree_marginals(const KnowledgeBase& kb,
                                              const RipCertificate& cert) {
    validate_knowledge_base(kb);
    size_t n = kb.pieces.size();
    std::vector<Scope> scopes;
    scopes.reserve(n);
    for (const LabeledPiece& piece : kb.pieces) scopes.push_back(piece.label());
    if (!rip_certificate_valid(scopes, cert))
        throw std::invalid_argument("invalid running-intersection certificate");
    if (n == 1) return {kb.pieces.front()};

    // Collect toward the last node. parent[i] > i, so ascending order is a
    // valid schedule: every child sends before its parent collects.
    std::vector<LabeledPiece> gathered = kb.pieces;
    for (size_t i = 0; i + 1 < n; ++i) {
        Scope sep = scope_intersect(scopes[i], scopes[cert.parent[i]]);
        LabeledPiece message = project_labeled(gathered[i], sep);
        gathered[cert.parent[i]] = combine_labeled(gathered[cert.parent[i]], message);
    }

    // Distribute back; idempotency makes re-absorbing a node's own upward
    // message harmless.
    std::vector<LabeledPiece> result = gathered;
    for (size_t i = n - 1; i-- > 0;) {
        Scope sep = scope_intersect(scopes[i], scopes[cert.parent[i]]);
        LabeledPiece message = project_labeled(result[cert.parent[i]], sep);
        result[i] = combine_labeled(gathered[i], message);
    }
    return result;
}

CompatibilityVerdict rip_theorem_check(const KnowledgeBase& kb, const RipCertificate& cert) {
    validate_knowledge_base(kb);
    std::vector<Scope> scopes;
    for (const LabeledPiece& piece : kb.pieces) scopes.push_back(piece.label());
    if (!rip_certificate_valid(scopes, cert))
        throw std::invalid_argument("rip_theorem_check: invalid certificate");
    for (size_t i = 0; i < kb.pieces.size(); ++i)
        for (size_t j = i + 1; j < kb.pieces.size(); ++j)
            if (!pairwise_compatible(kb.pieces[i], kb.pieces[j]))
                throw std::invalid_argument("rip_theorem_check: family is not pairwise compatible");

    std::vector<LabeledPiece> marginals = join_tree_marginals(kb, cert);
    // The root's result is null exactly when the total combination is null.
    if (marginals.back().is_null())
        throw std::invalid_argument("rip_theorem_check: family is inconsistent");
    for (size_t i = 0; i < kb.pieces.size(); ++i) {
        if (marginals[i].is_null() || !labeled_equal(marginals[i], kb.pieces[i]))
            throw internal_error(
                "RIP theorem violated: a join-tree marginal differs from its input");
    }
    return CompatibilityVerdict{CompatibilityVerdict::Kind::Compatible, {}, {}};
}

}  // namespace ipalg
