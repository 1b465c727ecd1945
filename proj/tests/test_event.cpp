#include <doctest.h>

#include "ipalg/cone.hpp"
#include "ipalg/event.hpp"
#include "testutil.hpp"

using namespace ipalg;
using testutil::binary_space;
using testutil::g_of;

namespace {

EventSet bits(const SpacePtr& space, std::vector<int> idx) {
    std::vector<bool> b(static_cast<size_t>(space->full_cell_count()), false);
    for (int i : idx) b[static_cast<size_t>(i)] = true;
    return EventSet(space, std::move(b));
}

std::vector<EventSet> all_subsets(const SpacePtr& space) {
    size_t n = static_cast<size_t>(space->full_cell_count());
    std::vector<EventSet> out;
    for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
        std::vector<bool> b(n, false);
        for (size_t i = 0; i < n; ++i) b[i] = (mask >> i) & 1;
        out.push_back(EventSet(space, std::move(b)));
    }
    return out;
}

}  // namespace

TEST_CASE("cylindrification unrolls the definition") {
    SpacePtr space = binary_space(2);
    // cell order: (0,0),(0,1),(1,0),(1,1)
    EventSet a = bits(space, {1});  // {(0,1)}
    EventSet cyl = cylindrify(a, space->scope_of({"X"}));
    CHECK(cyl == bits(space, {0, 1}));

    CHECK(cylindrify(EventSet::empty(space), space->scope_of({"Y"})) == EventSet::empty(space));
    CHECK(cylindrify(a, space->empty_scope()) == EventSet::all(space));
    CHECK(cylindrify(a, space->full_scope()) == a);
}

TEST_CASE("saturation laws hold exhaustively on small spaces") {
    for (int n : {1, 2}) {
        SpacePtr space = binary_space(n);
        std::vector<Scope> scopes;
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            std::vector<size_t> idx;
            for (size_t v = 0; v < static_cast<size_t>(n); ++v)
                if ((mask >> v) & 1) idx.push_back(v);
            scopes.push_back(Scope(std::move(idx)));
        }
        for (const EventSet& a : all_subsets(space)) {
            for (const Scope& s : scopes) {
                EventSet sat = cylindrify(a, s);
                // extensivity and idempotency
                for (size_t i = 0; i < a.members().size(); ++i)
                    CHECK((!a.members()[i] || sat.members()[i]));
                CHECK(cylindrify(sat, s) == sat);
                for (const Scope& t : scopes)
                    CHECK(cylindrify(sat, t) == cylindrify(a, scope_intersect(s, t)));
            }
        }
    }
}

TEST_CASE("event union and intersection") {
    SpacePtr space = Space::make({{"X", {"a", "b"}}});
    EventSet ea = bits(space, {0}), eb = bits(space, {1});
    CHECK(event_intersect(ea, eb) == EventSet::empty(space));
    CHECK(event_union(ea, eb) == EventSet::all(space));
    CHECK(event_intersect(ea, EventSet::all(space)) == ea);
    CHECK(event_intersect(ea, EventSet::empty(space)) == EventSet::empty(space));
    CHECK_THROWS_AS(event_union(ea, EventSet::all(binary_space(2))), std::invalid_argument);
}

TEST_CASE("embedding the lattice constants") {
    SpacePtr space = Space::make({{"X", {"a", "b"}}});
    CHECK(embed(EventSet::empty(space)).kind() == ConeKind::Contradiction);
    CHECK(embed(EventSet::all(space)).kind() == ConeKind::Vacuous);
    ConePiece da = embed(bits(space, {0}));
    CHECK(da.kind() == ConeKind::Event);
    CHECK(contains(da, g_of(space, {1, -5})));
    CHECK_FALSE(contains(da, g_of(space, {-1, 5})));
}

TEST_CASE("the embedding is injective, witnessed by membership probes") {
    SpacePtr space = binary_space(2);
    auto subsets = all_subsets(space);
    for (const EventSet& a : subsets) {
        if (a.is_empty() || a.is_all()) continue;
        for (const EventSet& b : subsets) {
            if (b.is_empty() || b.is_all()) continue;
            if (a == b) continue;
            // Some indicator-style gamble separates the two embeddings.
            Gamble fa = gamble_sub(gamble_scale(Rat(2), indicator(a)),
                                   constant_gamble(space, space->full_scope(), Rat(1)));
            Gamble fb = gamble_sub(gamble_scale(Rat(2), indicator(b)),
                                   constant_gamble(space, space->full_scope(), Rat(1)));
            bool separated = contains(embed(a), fa) != contains(embed(b), fa) ||
                             contains(embed(a), fb) != contains(embed(b), fb);
            CHECK(separated);
        }
    }
}

TEST_CASE("embedding homomorphism, exhaustively on small spaces") {
    for (int n : {1, 2}) {
        SpacePtr space = binary_space(n);
        auto subsets = all_subsets(space);
        std::vector<Scope> scopes;
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            std::vector<size_t> idx;
            for (size_t v = 0; v < static_cast<size_t>(n); ++v)
                if ((mask >> v) & 1) idx.push_back(v);
            scopes.push_back(Scope(std::move(idx)));
        }
        for (const EventSet& a : subsets) {
            for (const EventSet& b : subsets)
                CHECK(equals(combine(embed(a), embed(b)), embed(event_intersect(a, b))));
            for (const Scope& s : scopes)
                CHECK(equals(extract(embed(a), s), embed(cylindrify(a, s))));
        }
    }
}

TEST_CASE("intersection of embeddings is the embedding of the union, on samples") {
    testutil::Rng rng(77);
    SpacePtr space = binary_space(2);
    EventSet a = bits(space, {0, 3});
    EventSet b = bits(space, {1, 3});
    ConePiece du = embed(event_union(a, b));
    for (int round = 0; round < 60; ++round) {
        Gamble f = testutil::random_gamble(space, rng);
        bool both = contains(embed(a), f) && contains(embed(b), f);
        CHECK(both == contains(du, f));
    }
}
