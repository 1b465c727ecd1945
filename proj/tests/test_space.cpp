#include <doctest.h>

#include "ipalg/errors.hpp"
#include "testutil.hpp"

using namespace ipalg;
using testutil::binary_space;
using testutil::g_of;

TEST_CASE("cell enumeration is row-major with the first variable slowest") {
    SpacePtr one = Space::make({{"X", {"a", "b"}}});
    auto cells = enumerate_cells(one, one->full_scope());
    REQUIRE(cells.size() == 2);
    CHECK(cells[0] == Cell{0});
    CHECK(cells[1] == Cell{1});

    SpacePtr two = binary_space(2);
    auto xy = enumerate_cells(two, two->full_scope());
    REQUIRE(xy.size() == 4);
    CHECK(xy[0] == Cell{0, 0});
    CHECK(xy[1] == Cell{0, 1});
    CHECK(xy[2] == Cell{1, 0});
    CHECK(xy[3] == Cell{1, 1});

    auto empty = enumerate_cells(two, two->empty_scope());
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].empty());
}

TEST_CASE("cell enumeration is a bijection onto value-index tuples") {
    SpacePtr space = Space::make({{"X", {"a", "b", "c"}}, {"Y", {"0", "1"}}, {"Z", {"u", "v"}}});
    for (const Scope& scope :
         {space->full_scope(), space->scope_of({"X", "Z"}), space->empty_scope()}) {
        auto cells = enumerate_cells(space, scope);
        CHECK(cells.size() == space->cell_count(scope));
        for (size_t i = 0; i < cells.size(); ++i)
            CHECK(cell_index(space, scope, cells[i]) == i);
    }
}

TEST_CASE("space validation") {
    CHECK_THROWS_AS(Space::make({{"X", {"a"}}, {"X", {"b"}}}), std::invalid_argument);
    CHECK_THROWS_AS(Space::make({{"X", {}}}), std::invalid_argument);
    std::vector<Variable> big;
    for (int i = 0; i < 25; ++i) big.push_back({"v" + std::to_string(i), {"0", "1"}});
    CHECK_THROWS_AS(Space::make(big), guard_error);
    CHECK_THROWS(enumerate_cells(binary_space(2), binary_space(3)->full_scope()));
    CHECK_THROWS_AS(binary_space(2)->var_index("Q"), std::invalid_argument);
}

TEST_CASE("measurability") {
    SpacePtr space = binary_space(2);
    Scope x = space->scope_of({"X"});
    CHECK(is_measurable(g_of(space, {1, 1, -2, -2}), x));
    CHECK_FALSE(is_measurable(g_of(space, {1, -1, -1, 1}), x));
    Gamble any = g_of(space, {3, 1, -4, 1});
    CHECK(is_measurable(any, any.scope));
    Gamble on_x = make_gamble(space, x, {Rat(1), Rat(2)});
    CHECK_THROWS_AS(is_measurable(on_x, space->scope_of({"Y"})), std::invalid_argument);
}

TEST_CASE("lift and project") {
    SpacePtr space = binary_space(2);
    Scope x = space->scope_of({"X"});
    Gamble f = make_gamble(space, x, {Rat(2), Rat(-3)});
    Gamble lifted = lift(f, space->full_scope());
    CHECK(lifted.values == RatVec{Rat(2), Rat(2), Rat(-3), Rat(-3)});
    CHECK(lift(f, x) == f);

    Gamble c = constant_gamble(space, space->empty_scope(), Rat(5));
    Gamble up = lift(c, space->full_scope());
    for (const Rat& v : up.values) CHECK(v == 5);

    CHECK(project_measurable(lifted, x) == f);
    CHECK(project_measurable(f, f.scope) == f);
    CHECK_THROWS_AS(project_measurable(g_of(space, {1, -1, -1, 1}), x), std::invalid_argument);
    CHECK_THROWS_AS(lift(f, space->empty_scope()), std::invalid_argument);
}

TEST_CASE("a gamble is measurable on an intersection iff on both scopes") {
    testutil::Rng rng(11);
    for (int n = 1; n <= 3; ++n) {
        SpacePtr space = binary_space(n);
        for (int round = 0; round < 80; ++round) {
            Scope s = testutil::random_scope(space, rng);
            Scope t = testutil::random_scope(space, rng);
            // Random gambles rarely hit measurability, so also blend in
            // gambles built measurable on s or on t.
            Gamble f = testutil::random_gamble(space, rng);
            if (round % 3 == 1) f = testutil::squash_measurable(space, f, s);
            if (round % 3 == 2) f = testutil::squash_measurable(space, f, t);
            bool lhs = is_measurable(f, scope_intersect(s, t));
            bool rhs = is_measurable(f, s) && is_measurable(f, t);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("lift then project and project then lift are identities") {
    testutil::Rng rng(13);
    SpacePtr space = binary_space(3);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int round = 0; round < 40; ++round) {
        Scope s = testutil::random_scope(space, rng);
        RatVec vals(static_cast<size_t>(space->cell_count(s)));
        for (Rat& v : vals) v = Rat(dist(rng));
        Gamble f = make_gamble(space, s, vals);
        Gamble up = lift(f, space->full_scope());
        CHECK(is_measurable(up, s));
        CHECK(project_measurable(up, s) == f);
        CHECK(lift(project_measurable(up, s), space->full_scope()) == up);
    }
}

TEST_CASE("subspace moves gambles without data movement") {
    SpacePtr space = binary_space(3);
    Scope xz = space->scope_of({"X", "Z"});
    SpacePtr sub = subspace(space, xz);
    CHECK(sub->num_vars() == 2);
    CHECK(sub->var(0).name == "X");
    CHECK(sub->var(1).name == "Z");
    Gamble f = make_gamble(space, xz, {Rat(1), Rat(2), Rat(3), Rat(4)});
    Gamble inner = to_subspace(f, sub);
    CHECK(inner.values == f.values);
    CHECK(from_subspace(inner, space) == f);
}
