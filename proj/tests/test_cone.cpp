#include <doctest.h>

#include "ipalg/errors.hpp"
#include "ipalg/prevision.hpp"
#include "testutil.hpp"

using namespace ipalg;
using testutil::binary_space;
using testutil::g_of;

namespace {

SpacePtr two_worlds() { return Space::make({{"w", {"a", "b"}}}); }

}  // namespace

TEST_CASE("from_assessments classifies the inputs") {
    SpacePtr space = two_worlds();
    CHECK(ConePiece::from_assessments(space, {}).kind() == ConeKind::Vacuous);
    ConePiece ok = ConePiece::from_assessments(space, {g_of(space, {1, -1})});
    CHECK(ok.kind() == ConeKind::Generated);
    CHECK(ConePiece::from_assessments(space, {g_of(space, {-1, -1})}).kind() ==
          ConeKind::Contradiction);
    // nonnegative assessments add nothing beyond the vacuous piece
    CHECK(ConePiece::from_assessments(space, {g_of(space, {1, 0})}).kind() ==
          ConeKind::Vacuous);
    SpacePtr other = binary_space(2);
    CHECK_THROWS_AS(ConePiece::from_assessments(space, {g_of(other, {1, 1, 1, -1})}),
                    std::invalid_argument);
}

TEST_CASE("avoiding partial loss") {
    SpacePtr space = two_worlds();
    CHECK(avoids_partial_loss(space, {g_of(space, {1, -1})}));
    CHECK_FALSE(avoids_partial_loss(space, {g_of(space, {1, -2}), g_of(space, {-1, 2})}));
    CHECK(avoids_partial_loss(space, {}));
}

TEST_CASE("membership in the pinned pieces") {
    SpacePtr space = two_worlds();
    ConePiece vac = ConePiece::vacuous(space);
    CHECK(contains(vac, g_of(space, {1, 0})));
    CHECK_FALSE(contains(vac, g_of(space, {1, -1})));

    ConePiece d = ConePiece::from_assessments(space, {g_of(space, {1, -1})});
    CHECK_FALSE(contains(d, g_of(space, {0, -1})));
    CHECK(contains(d, g_of(space, {1, -1})));
    CHECK(contains(d, g_of(space, {2, -1})));
    CHECK_FALSE(contains(d, g_of(space, {0, 0})));

    CHECK(contains(ConePiece::contradiction(space), g_of(space, {0, 0})));
}

TEST_CASE("membership agrees with the brute-force oracle") {
    testutil::Rng rng(512);
    for (int n : {1, 2, 3}) {
        SpacePtr space = binary_space(n);
        for (int round = 0; round < 12; ++round) {
            ConePiece d = testutil::random_coherent(space, rng);
            if (d.kind() != ConeKind::Generated) continue;
            for (int probe = 0; probe < 25; ++probe) {
                Gamble f = testutil::random_gamble(space, rng);
                CHECK(contains(d, f) ==
                      testutil::oracle_generated_member(space, d.generators(), f));
            }
        }
    }
}

TEST_CASE("combination laws on the pinned examples") {
    SpacePtr space = two_worlds();
    ConePiece d1 = ConePiece::from_assessments(space, {g_of(space, {1, -2})});
    ConePiece d2 = ConePiece::from_assessments(space, {g_of(space, {-1, 2})});
    CHECK(combine(d1, d2).kind() == ConeKind::Contradiction);

    EventSet ea = EventSet::of_cells(space, {Cell{0}});
    EventSet eb = EventSet::of_cells(space, {Cell{1}});
    CHECK(combine(embed(ea), embed(eb)).kind() == ConeKind::Contradiction);

    CHECK(equals(combine(d1, ConePiece::vacuous(space)), d1));
    CHECK(equals(combine(ConePiece::vacuous(space), d1), d1));
    CHECK(combine(d1, ConePiece::contradiction(space)).kind() == ConeKind::Contradiction);
}

TEST_CASE("combination is a commutative idempotent semigroup operation") {
    testutil::Rng rng(513);
    SpacePtr space = binary_space(2);
    for (int round = 0; round < 12; ++round) {
        ConePiece a = testutil::random_coherent(space, rng);
        ConePiece b = testutil::random_coherent(space, rng);
        ConePiece c = testutil::random_coherent(space, rng);
        CHECK(equals(combine(a, b), combine(b, a)));
        CHECK(equals(combine(combine(a, b), c), combine(a, combine(b, c))));
        CHECK(equals(combine(a, a), a));
    }
}

TEST_CASE("extraction on the pinned examples") {
    SpacePtr space = binary_space(2);
    ConePiece parity = ConePiece::from_assessments(space, {g_of(space, {1, -1, -1, 1})});
    REQUIRE(parity.kind() == ConeKind::Generated);
    ConePiece marginal = extract(parity, space->scope_of({"X"}));
    CHECK(marginal.kind() == ConeKind::Vacuous);

    CHECK(equals(extract(parity, space->full_scope()), parity));
    CHECK(extract(ConePiece::contradiction(space), space->scope_of({"X"})).kind() ==
          ConeKind::Contradiction);
    CHECK(extract(ConePiece::vacuous(space), space->empty_scope()).kind() == ConeKind::Vacuous);
}

TEST_CASE("extraction axioms on random pieces") {
    testutil::Rng rng(514);
    SpacePtr space = binary_space(3);
    for (int round = 0; round < 8; ++round) {
        ConePiece d1 = testutil::random_coherent(space, rng);
        ConePiece d2 = testutil::random_coherent(space, rng);
        Scope s = testutil::random_scope(space, rng);
        Scope t = testutil::random_scope(space, rng);

        // E1
        CHECK(extract(ConePiece::contradiction(space), s).kind() == ConeKind::Contradiction);
        // E2
        CHECK(equals(combine(extract(d1, s), d1), d1));
        // E3
        CHECK(equals(extract(combine(extract(d1, s), d2), s),
                     combine(extract(d1, s), extract(d2, s))));
        // composition
        CHECK(equals(extract(extract(d1, s), t), extract(d1, scope_intersect(s, t))));
        CHECK(equals(extract(extract(d1, t), s), extract(d1, scope_intersect(s, t))));
        // identity
        CHECK(equals(extract(d1, space->full_scope()), d1));
    }
}

TEST_CASE("meet on the pinned examples") {
    SpacePtr space = two_worlds();
    ConePiece d = ConePiece::from_assessments(space, {g_of(space, {2, -1})});
    CHECK(equals(meet(d, d), d));
    CHECK(meet(d, ConePiece::vacuous(space)).kind() == ConeKind::Vacuous);
    ConePiece left = ConePiece::from_assessments(space, {g_of(space, {1, -1})});
    ConePiece right = ConePiece::from_assessments(space, {g_of(space, {-1, 1})});
    CHECK(meet(left, right).kind() == ConeKind::Vacuous);
    CHECK_THROWS_AS(meet(d, ConePiece::contradiction(space)), unsupported_error);
}

TEST_CASE("meet is membership-wise the intersection") {
    testutil::Rng rng(515);
    SpacePtr space = binary_space(2);
    for (int round = 0; round < 10; ++round) {
        ConePiece a = testutil::random_coherent(space, rng);
        ConePiece b = testutil::random_coherent(space, rng);
        ConePiece both = meet(a, b);
        for (int probe = 0; probe < 20; ++probe) {
            Gamble f = testutil::random_gamble(space, rng);
            CHECK(contains(both, f) == (contains(a, f) && contains(b, f)));
        }
    }
}

TEST_CASE("extraction distributes over meet") {
    testutil::Rng rng(516);
    SpacePtr space = binary_space(2);
    for (int round = 0; round < 8; ++round) {
        ConePiece a = testutil::random_coherent(space, rng);
        ConePiece b = testutil::random_coherent(space, rng);
        Scope s = testutil::random_scope(space, rng);
        CHECK(equals(extract(meet(a, b), s), meet(extract(a, s), extract(b, s))));
    }
}

TEST_CASE("order relations") {
    SpacePtr space = two_worlds();
    ConePiece d = ConePiece::from_assessments(space, {g_of(space, {1, -1})});
    CHECK(leq(ConePiece::vacuous(space), d));
    CHECK(leq(d, ConePiece::contradiction(space)));
    CHECK(equals(ConePiece::from_assessments(space, {g_of(space, {1, -1})}),
                 ConePiece::from_assessments(space, {g_of(space, {2, -2})})));
    CHECK_FALSE(equals(d, ConePiece::from_assessments(space, {g_of(space, {1, -2})})));

    // event ordering is reverse inclusion
    SpacePtr sp2 = binary_space(2);
    EventSet small = EventSet::of_cells(sp2, {Cell{0, 0}});
    EventSet large = EventSet::of_cells(sp2, {Cell{0, 0}, Cell{0, 1}});
    CHECK(leq(embed(large), embed(small)));
    CHECK_FALSE(leq(embed(small), embed(large)));
    CHECK_THROWS_AS(leq(embed(small), ConePiece::from_assessments(sp2, {g_of(sp2, {1, 1, 1, -1})})),
                    unsupported_error);
}

TEST_CASE("extraction is monotone") {
    testutil::Rng rng(517);
    SpacePtr space = binary_space(2);
    for (int round = 0; round < 10; ++round) {
        ConePiece a = testutil::random_coherent(space, rng);
        ConePiece ab = combine(a, testutil::random_coherent(space, rng));
        if (!ab.coherent()) continue;
        Scope s = testutil::random_scope(space, rng);
        CHECK(leq(a, ab));
        CHECK(leq(extract(a, s), extract(ab, s)));
    }
}

TEST_CASE("least support") {
    SpacePtr space = binary_space(2);
    CHECK(least_support(ConePiece::vacuous(space)) == space->empty_scope());

    ConePiece lifted = ConePiece::from_assessments(space, {g_of(space, {1, 1, -1, -1})});
    CHECK(least_support(lifted) == space->scope_of({"X"}));

    ConePiece parity = ConePiece::from_assessments(space, {g_of(space, {1, -1, -1, 1})});
    CHECK(least_support(parity) == space->full_scope());

    CHECK_THROWS_AS(least_support(ConePiece::contradiction(space)), unsupported_error);
}

TEST_CASE("strict desirability") {
    SpacePtr space = two_worlds();
    CHECK(is_strictly_desirable(ConePiece::vacuous(space)));
    CHECK_FALSE(is_strictly_desirable(ConePiece::from_assessments(space, {g_of(space, {1, -2})})));
    CHECK_THROWS_AS(is_strictly_desirable(embed(EventSet::of_cells(space, {Cell{0}}))),
                    unsupported_error);
}

TEST_CASE("closure membership") {
    SpacePtr space = two_worlds();
    ConePiece d = ConePiece::from_assessments(space, {g_of(space, {1, -2})});
    CHECK(in_closure(d, g_of(space, {0, 0})));
    CHECK(in_closure(d, g_of(space, {1, -2})));
    CHECK_FALSE(in_closure(d, g_of(space, {-1, -1})));
}

// The production extraction derives the marginal cone's facets from the
// dual cone; this oracle eliminates the multipliers by project_cone
// instead, as an independent route to the same rays.
static std::vector<Gamble> fm_marginal_rays(const SpacePtr& space,
                                            const std::vector<Gamble>& gens,
                                            const Scope& s) {
    Scope full = space->full_scope();
    size_t cells = static_cast<size_t>(space->full_cell_count());
    size_t sub_cells = static_cast<size_t>(space->cell_count(s));
    size_t m = gens.size();
    std::vector<Constraint> rows;
    for (size_t w = 0; w < cells; ++w) {
        Cell cell = cell_at(space, full, w);
        size_t y_idx = cell_index(space, s, restrict_cell(space, full, cell, s));
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(sub_cells + m, Rat(0));
        c.coeffs[y_idx] += Rat(1);
        for (size_t j = 0; j < m; ++j) c.coeffs[sub_cells + j] -= gens[j].values[w];
        rows.push_back(std::move(c));
    }
    for (size_t j = 0; j < m; ++j) {
        Constraint c;
        c.rel = Rel::Ge;
        c.rhs = Rat(0);
        c.coeffs.assign(sub_cells + m, Rat(0));
        c.coeffs[sub_cells + j] = Rat(1);
        rows.push_back(std::move(c));
    }
    std::vector<size_t> keep(sub_cells);
    for (size_t k = 0; k < sub_cells; ++k) keep[k] = k;
    std::vector<RatVec> rays = extreme_rays(project_cone(rows, sub_cells + m, keep), sub_cells);
    std::vector<Gamble> out;
    for (RatVec& r : rays) out.push_back(make_gamble(space, s, std::move(r)));
    return out;
}

TEST_CASE("extraction agrees with the multiplier-elimination route") {
    testutil::Rng rng(519);
    for (int n : {2, 3}) {
        SpacePtr space = binary_space(n);
        for (int round = 0; round < 8; ++round) {
            ConePiece d = testutil::random_coherent(space, rng);
            if (d.kind() != ConeKind::Generated) continue;
            Scope s = testutil::random_scope(space, rng);
            if (s == space->full_scope()) s = space->scope_of({"X"});
            std::vector<Gamble> direct = marginal_cone_rays(space, d.generators(), s);
            std::vector<Gamble> via_fm = fm_marginal_rays(space, d.generators(), s);
            REQUIRE(direct.size() == via_fm.size());
            for (size_t i = 0; i < direct.size(); ++i) CHECK(direct[i] == via_fm[i]);
        }
    }
}

TEST_CASE("mixed extraction keeps every prevision value") {
    testutil::Rng rng(520);
    SpacePtr space = binary_space(2);
    EventSet a = EventSet::of_cells(space, {Cell{0, 0}, Cell{0, 1}, Cell{1, 1}});
    ConePiece d = combine(embed(a), ConePiece::from_assessments(space, {g_of(space, {2, -1, 1, -2})}));
    REQUIRE(d.kind() == ConeKind::Mixed);
    Scope s = space->scope_of({"X"});
    LowerPrevision via_cone = sigma(extract(d, s));
    LowerPrevision via_prev = extract(sigma(d), s);
    for (int probe = 0; probe < 30; ++probe) {
        Gamble f = testutil::squash_measurable(space, testutil::random_gamble(space, rng), s);
        CHECK(*prevision(via_cone, f) == *prevision(via_prev, f));
        CHECK(*prevision(via_cone, f) == *prevision(sigma(d), f));
    }
}

TEST_CASE("mixed pieces decide membership through the margin program") {
    SpacePtr space = binary_space(2);
    EventSet a = EventSet::of_cells(space, {Cell{0, 0}, Cell{0, 1}});  // X = 0
    ConePiece d = combine(embed(a), ConePiece::from_assessments(space, {g_of(space, {1, 1, 1, -1})}));
    REQUIRE(d.kind() == ConeKind::Mixed);
    // strictly positive on A
    CHECK(contains(d, g_of(space, {1, 1, -5, -5})));
    // generator route
    CHECK(contains(d, g_of(space, {1, 1, 1, -1})));
    // sums of both routes
    CHECK(contains(d, g_of(space, {2, 2, 1, -6})));
    // not reachable
    CHECK_FALSE(contains(d, g_of(space, {-1, 1, 1, 1})));
    CHECK_FALSE(contains(d, g_of(space, {0, 0, 0, 0})));

    // combining an event with an assessment that forbids it collapses
    ConePiece clash = combine(embed(a), ConePiece::from_assessments(
                                            space, {g_of(space, {-1, -1, 0, 1})}));
    CHECK(clash.kind() == ConeKind::Contradiction);
}
