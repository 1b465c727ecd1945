#include "ipalg/event.hpp"

#include <map>
#include <stdexcept>

namespace ipalg {

EventSet::EventSet(SpacePtr space, std::vector<bool> members)
    : space_(std::move(space)), members_(std::move(members)) {
    if (members_.size() != space_->full_cell_count())
        throw std::invalid_argument("event bitset length does not match cell count");
}

EventSet EventSet::empty(SpacePtr space) {
    size_t n = static_cast<size_t>(space->full_cell_count());
    return EventSet(std::move(space), std::vector<bool>(n, false));
}

EventSet EventSet::all(SpacePtr space) {
    size_t n = static_cast<size_t>(space->full_cell_count());
    return EventSet(std::move(space), std::vector<bool>(n, true));
}

EventSet EventSet::of_cells(SpacePtr space, const std::vector<Cell>& cells) {
    EventSet e = EventSet::empty(space);
    Scope full = e.space()->full_scope();
    for (const Cell& c : cells) e.members_[cell_index(e.space(), full, c)] = true;
    return e;
}

size_t EventSet::count() const {
    size_t n = 0;
    for (bool b : members_) n += b ? 1 : 0;
    return n;
}

std::vector<Cell> EventSet::cells() const {
    std::vector<Cell> out;
    Scope full = space_->full_scope();
    for (size_t i = 0; i < members_.size(); ++i)
        if (members_[i]) out.push_back(cell_at(space_, full, i));
    return out;
}

bool EventSet::operator==(const EventSet& other) const {
    return same_space(space_, other.space_) && members_ == other.members_;
}

namespace {

void check_pair(const EventSet& a, const EventSet& b) {
    if (!same_space(a.space(), b.space()))
        throw std::invalid_argument("event space mismatch");
}

}  // namespace

EventSet event_intersect(const EventSet& a, const EventSet& b) {
    check_pair(a, b);
    std::vector<bool> m(a.members().size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = a.members()[i] && b.members()[i];
    return EventSet(a.space(), std::move(m));
}

EventSet event_union(const EventSet& a, const EventSet& b) {
    check_pair(a, b);
    std::vector<bool> m(a.members().size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = a.members()[i] || b.members()[i];
    return EventSet(a.space(), std::move(m));
}

EventSet cylindrify(const EventSet& a, const Scope& s) {
    const SpacePtr& space = a.space();
    Scope full = space->full_scope();
    if (!s.subset_of(full)) throw std::invalid_argument("scope invalid for space");
    // Mark every s-block that meets the event, then fill those blocks.
    std::map<Cell, bool> hit;
    for (size_t i = 0; i < a.members().size(); ++i) {
        if (!a.members()[i]) continue;
        hit[restrict_cell(space, full, cell_at(space, full, i), s)] = true;
    }
    std::vector<bool> m(a.members().size(), false);
    for (size_t i = 0; i < m.size(); ++i) {
        Cell key = restrict_cell(space, full, cell_at(space, full, i), s);
        m[i] = hit.count(key) > 0;
    }
    return EventSet(space, std::move(m));
}

Gamble indicator(const EventSet& a) {
    RatVec values(a.members().size(), Rat(0));
    for (size_t i = 0; i < values.size(); ++i)
        if (a.members()[i]) values[i] = Rat(1);
    return make_gamble(a.space(), a.space()->full_scope(), std::move(values));
}

}  // namespace ipalg
