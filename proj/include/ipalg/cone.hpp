#ifndef IPALG_CONE_HPP
#define IPALG_CONE_HPP

#include <vector>

#include "ipalg/event.hpp"
#include "ipalg/space.hpp"

namespace ipalg {

enum class ConeKind { Vacuous, Generated, Event, Mixed, Contradiction };

// One element of the algebra of coherent sets of desirable gambles plus
// the contradiction:
//   Vacuous        all nonnegative nonzero gambles
//   Generated(G)   the natural extension of finitely many assessments
//   Event(A)       gambles positive everywhere on A, plus the vacuous part
//   Mixed(A, G)    closure of the union of the two kinds above
//   Contradiction  every gamble
// Generated and Mixed pieces are canonicalized on construction and
// collapse to Contradiction when the zero gamble becomes reachable.
class ConePiece {
public:
    static ConePiece vacuous(SpacePtr space);
    static ConePiece contradiction(SpacePtr space);
    static ConePiece from_assessments(SpacePtr space, std::vector<Gamble> gambles);
    static ConePiece mixed(const EventSet& event, std::vector<Gamble> gambles);

    ConeKind kind() const { return kind_; }
    const SpacePtr& space() const { return space_; }
    bool coherent() const { return kind_ != ConeKind::Contradiction; }

    const std::vector<Gamble>& generators() const;  // Generated / Mixed
    EventSet event() const;                         // Event / Mixed

private:
    ConePiece(ConeKind kind, SpacePtr space, std::vector<Gamble> generators,
              std::vector<bool> event_bits);
    friend ConePiece embed(const EventSet& a);

    ConeKind kind_;
    SpacePtr space_;
    std::vector<Gamble> generators_;
    std::vector<bool> event_bits_;
};

// True iff no nonnegative, nonzero combination of the gambles is
// dominated by zero.
bool avoids_partial_loss(const SpacePtr& space, const std::vector<Gamble>& gambles);

// D_A: Contradiction for the empty event, Vacuous for the full one.
ConePiece embed(const EventSet& a);

bool contains(const ConePiece& piece, const Gamble& f);
ConePiece combine(const ConePiece& a, const ConePiece& b);
ConePiece extract(const ConePiece& piece, const Scope& s);
ConePiece meet(const ConePiece& a, const ConePiece& b);
bool leq(const ConePiece& a, const ConePiece& b);
bool equals(const ConePiece& a, const ConePiece& b);
Scope least_support(const ConePiece& piece);
bool is_strictly_desirable(const ConePiece& piece);

// f in the closure (almost-desirable counterpart) of the piece; decided
// through the associated lower prevision.
bool in_closure(const ConePiece& piece, const Gamble& f);

// Generators of the topological closure of the piece's cone, used by
// extraction and by every prevision query. For Event and Mixed pieces the
// event part is relaxed to its closed hull {f : f >= 0 on A}; suprema, and
// hence all prevision values, are unaffected.
std::vector<Gamble> closure_generators(const ConePiece& piece);

// Extreme rays of the S-measurable part of the closed cone spanned by the
// given full-scope gambles and the nonnegative orthant, as gambles over
// scope s. Shared by cone extraction and prevision extraction.
std::vector<Gamble> marginal_cone_rays(const SpacePtr& space,
                                       const std::vector<Gamble>& generators,
                                       const Scope& s);

}  // namespace ipalg

#endif
