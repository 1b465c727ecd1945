#ifndef IPALG_EVENT_HPP
#define IPALG_EVENT_HPP

#include <vector>

#include "ipalg/space.hpp"

namespace ipalg {

// Subset of the cells of a space's full scope, as a membership bitset in
// row-major cell order.
class EventSet {
public:
    EventSet(SpacePtr space, std::vector<bool> members);
    static EventSet empty(SpacePtr space);
    static EventSet all(SpacePtr space);
    static EventSet of_cells(SpacePtr space, const std::vector<Cell>& cells);

    const SpacePtr& space() const { return space_; }
    const std::vector<bool>& members() const { return members_; }
    bool contains(size_t cell_index) const { return members_.at(cell_index); }
    size_t count() const;
    bool is_empty() const { return count() == 0; }
    bool is_all() const { return count() == members_.size(); }

    std::vector<Cell> cells() const;

    bool operator==(const EventSet& other) const;
    bool operator!=(const EventSet& other) const { return !(*this == other); }

private:
    SpacePtr space_;
    std::vector<bool> members_;
};

EventSet event_intersect(const EventSet& a, const EventSet& b);
EventSet event_union(const EventSet& a, const EventSet& b);

// Saturation of `a` under "equal on s": all cells that agree on s with
// some member. cylindrify(a, full) = a; cylindrify(nonempty, {}) = all.
EventSet cylindrify(const EventSet& a, const Scope& s);

// Indicator gamble of the event on the full scope.
Gamble indicator(const EventSet& a);

}  // namespace ipalg

#endif
